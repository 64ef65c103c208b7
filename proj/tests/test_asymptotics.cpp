// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jcorners/asymptotics.hpp"
#include "jcorners/moments.hpp"
#include "jcorners/sampler.hpp"

#include <cmath>
#include <numbers>

using namespace jc;

namespace {

struct Slice {
  double c1, c2;
};

Slice slice(double m, double a, double n) {
  const double s = n + a + m;
  return {(n * m + (n + a) * (m + a)) / (s * s), m * (m + a) * n * (n + a) / (s * s * s * s)};
}

// Chebyshev covariance, n1 >= n2 and N1 >= N2 (zero when n1 < n2).
double cheb_oracle(double m, double a, double th, int n1, double big1, int n2, double big2) {
  if (n1 < n2) return 0.0;
  auto fact = [](int k) { return std::tgamma(k + 1.0); };
  const double lead = fact(n1) / (4.0 * th * fact(n2 - 1) * fact(n1 - n2));
  const double u = (big2 - big1) / (big2 + a + m) * std::sqrt(m * (a + m) / (big1 * (a + big1)));
  const double v = (big1 + a + m) * std::sqrt(big2 * (a + big2)) / ((big2 + a + m) * std::sqrt(big1 * (a + big1)));
  return lead * std::pow(u, n1 - n2) * std::pow(v, n2);
}

const HatParams kSets[] = {{1.0, 1.0}, {0.5, 2.0}, {2.0, 0.3}};

}  // namespace

TEST_CASE("slice centre, width and frozen boundary") {
  for (const HatParams& hp : kSets)
    for (double n : {0.3, 1.0, 2.5}) {
      const Slice s = slice(hp.m_hat, hp.alpha_hat, n);
      CHECK(slice_c1(hp, n) == doctest::Approx(s.c1).epsilon(1e-14));
      CHECK(slice_c2(hp, n) == doctest::Approx(s.c2).epsilon(1e-14));
      const auto [l, r] = frozen_boundary(hp, n);
      CHECK(l == doctest::Approx(s.c1 - 2 * std::sqrt(s.c2)).epsilon(1e-12));
      CHECK(r == doctest::Approx(s.c1 + 2 * std::sqrt(s.c2)).epsilon(1e-12));
      CHECK(l >= -1e-12);
      CHECK(r <= 1 + 1e-12);
    }
  CHECK_THROWS_AS((HatParams{-1.0, 1.0}.validate()), DomainError);
}

TEST_CASE("variance limit equals C2 / theta") {
  for (const HatParams& hp : kSets)
    for (double th : {0.5, 2.0})
      for (double n : {0.5, 1.0, 1.7}) {
        const double v = limit_covariance_p(hp, th, {n, 1}, {n, 1});
        CHECK(v == doctest::Approx(slice(hp.m_hat, hp.alpha_hat, n).c2 / th).epsilon(1e-10));
      }
}

TEST_CASE("Chebyshev covariance: closed form, contour and orthogonality") {
  for (const HatParams& hp : kSets)
    for (auto [b1, b2] : {std::pair{1.0, 0.5}, std::pair{0.8, 0.8}, std::pair{2.0, 1.2}})
      for (int n1 = 1; n1 <= 4; ++n1)
        for (int n2 = 1; n2 <= 4; ++n2) {
          const double ref = cheb_oracle(hp.m_hat, hp.alpha_hat, 1.5, n1, b1, n2, b2);
          CHECK(chebyshev_cov(hp, 1.5, {n1, b1}, {n2, b2}) == doctest::Approx(ref).epsilon(1e-12).scale(1e-3));
          CHECK(std::fabs(chebyshev_contour_cov(hp, 1.5, {n1, b1}, {n2, b2}) - ref) < 1e-8);
          if (b1 == b2) CHECK(std::fabs(ref - (n1 == n2 ? n1 / 6.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("power-sum covariance by two paths") {
  const HatParams hp{1.0, 1.0};
  CHECK(limit_covariance_p(hp, 1.0, {1.0, 1}, {0.5, 1}) == doctest::Approx(0.032).epsilon(1e-10));
  for (int k1 = 1; k1 <= 4; ++k1)
    for (int k2 = 1; k2 <= 4; ++k2) {
      const double a = limit_covariance_p(hp, 2.0, {1.0, k1}, {0.5, k2});
      const double b = power_cov_via_chebyshev(hp, 2.0, {1.0, k1}, {0.5, k2});
      CHECK(std::fabs(a - b) < 1e-10);
      CHECK(limit_covariance_p(hp, 2.0, {0.5, k2}, {1.0, k1}) == doctest::Approx(a).epsilon(1e-10));
    }
}

TEST_CASE("finite-size exact covariance approaches the limit") {
  const HatParams hp{1.0, 1.0};
  const double lim = limit_covariance_p(hp, 1.0, {1.0, 1}, {0.5, 1});
  double prev = INFINITY;
  for (int L : {4, 8, 16}) {
    const ExactParams p{Rational(1), Rational(L), L};
    const double err = std::fabs(covariance_p(p, {L, 1}, {L / 2, 1}).value - lim);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev / lim < 0.05);
}

TEST_CASE("Chebyshev polynomials and monomial expansion") {
  for (double t : {0.1, 1.3, 2.9})
    for (int n = 0; n <= 6; ++n) CHECK(chebyshev_t(n, std::cos(t)).real() == doctest::Approx(std::cos(n * t)));
  const HatParams hp{0.5, 2.0};
  for (int m = 0; m <= 5; ++m) {
    const auto c = monomial_in_chebyshev(hp, 0.7, m);
    for (double x : {0.05, 0.3, 0.8}) {
      double s = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * chebyshev_hat(hp, 0.7, static_cast<int>(j), x).real();
      CHECK(s == doctest::Approx(std::pow(x, m)).epsilon(1e-11));
    }
  }
}

TEST_CASE("Omega solves its quadratic and maps the liquid region to the upper half-plane") {
  for (const HatParams& hp : kSets)
    for (double n : {0.4, 1.0, 1.8}) {
      const auto [l, r] = frozen_boundary(hp, n);
      for (double t : {0.1, 0.5, 0.9}) {
        const double x = l + t * (r - l);
        const cplx u = omega(hp, n, x);
        const double a = hp.alpha_hat, m = hp.m_hat;
        const cplx res = (x - 1) * u * u + (x * (n - a - m) + a) * u - x * n * (a + m);
        CHECK(std::abs(res) < 1e-10 * (1 + std::norm(u)));
        CHECK(u.imag() > 0);
        // f_limit(omega(x)) = x, and omega(x) lies on the level contour
        CHECK(std::abs(f_limit(hp, n, 1, u) - x) < 1e-12);
        const ContourSpec c = level_contour(hp, n);
        if (!c.is_line) CHECK(std::abs(std::abs(u - c.center) - c.radius) < 1e-10 * (1 + c.radius));
      }
      CHECK(std::fabs(omega(hp, n, l).imag()) < 1e-6);
      CHECK(std::fabs(omega(hp, n, r).imag()) < 1e-6);
      CHECK_THROWS_AS((omega(hp, n, r + 1e-3)), DomainError);
    }
}

TEST_CASE("contour of a level: f_limit is real there") {
  const HatParams hp{1.0, 1.0};
  for (double n : {0.5, 1.5}) {
    const ContourSpec c = level_contour(hp, n);
    REQUIRE_FALSE(c.is_line);
    for (double t : {0.2, 1.0, 2.5}) {
      const cplx u = c.center + c.radius * std::exp(cplx(0, t));
      const cplx f = f_limit(hp, n, 1, u);
      CHECK(std::fabs(f.imag()) < 1e-10 * std::abs(f));
    }
  }
}

TEST_CASE("GFF kernel") {
  const cplx z(0.3, 0.7), w(-0.2, 1.4);
  CHECK(gff_cov(z, w) == doctest::Approx(gff_cov(w, z)));
  CHECK(gff_cov(z, w) == doctest::Approx(-std::log(std::abs((z - w) / (z - std::conj(w)))) / (2 * std::numbers::pi)));
  CHECK(gff_cov(z, w) > 0);
}

TEST_CASE("height-function pullback matches the contour covariance and is theta free") {
  const HatParams hp{1.0, 1.0};
  for (auto [b1, b2] : {std::pair{1.0, 0.5}, std::pair{0.8, 0.8}})
    for (int m1 = 0; m1 <= 3; ++m1)
      for (int m2 = 0; m2 <= 3; ++m2) {
        const double h = height_cov(hp, 1.0, {b1, m1}, {b2, m2});
        for (double th : {0.5, 1.0, 2.0}) {
          const double lim = th * std::numbers::pi * limit_covariance_p(hp, th, {b1, m1 + 1}, {b2, m2 + 1}) /
                             ((m1 + 1.0) * (m2 + 1.0));
          CHECK(lim == doctest::Approx(h).epsilon(1e-4));
        }
      }
}

TEST_CASE("sampled support sits near the frozen boundary") {
  const int L = 20;
  const EnsembleParams p{1.0, static_cast<double>(L), L};
  SamplerConfig cfg;
  cfg.seed = 2;
  cfg.thin = 2;
  const auto s = sample_corners(p, L, cfg, 1500);
  const auto [lo, hi] = empirical_support(s, L, 0.05);
  const auto [l, r] = frozen_boundary({1.0, 1.0}, 1.0);
  CHECK(std::fabs(lo - l) < 0.1);
  CHECK(std::fabs(hi - r) < 0.1);
}
