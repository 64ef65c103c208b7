// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jcorners/beta_infinity.hpp"

#include <cmath>

using namespace jc;

namespace {

// Jacobi polynomial P_n^{(a,b)}(t) by the three-term recurrence.
double jacobi_p(int n, double a, double b, double t) {
  double p0 = 1.0, p1 = 0.5 * (a - b + (a + b + 2.0) * t);
  if (n == 0) return p0;
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + a + b;
    const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
    const double a2 = (c - 1.0) * (a * a - b * b);
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    const double p2 = ((a2 + a3 * t) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

TEST_CASE("roots are zeros of the Jacobi polynomial for weight x^{alpha-1}(1-x)^{|M-N|}") {
  for (auto [n, m, alpha] : {std::tuple{3, 3, 2.0}, std::tuple{2, 5, 0.7}, std::tuple{6, 4, 3.5}, std::tuple{1, 2, 1.0}}) {
    const RootTarget rt = jacobi_roots(n, m, alpha);
    const int k = std::min(n, m);
    REQUIRE(static_cast<int>(rt.roots.size()) == k);
    // x in (0,1) -> t = 1 - 2x carries (1-t)^{alpha-1}(1+t)^{|M-N|}
    const double a = alpha - 1.0, b = std::abs(m - n);
    double scale = 0.0;
    for (double t = -1.0; t <= 1.0; t += 0.01) scale = std::max(scale, std::fabs(jacobi_p(k, a, b, t)));
    for (std::size_t i = 0; i < rt.roots.size(); ++i) {
      CHECK(rt.roots[i] > 0.0);
      CHECK(rt.roots[i] < 1.0);
      if (i > 0) CHECK(rt.roots[i] > rt.roots[i - 1]);
      CHECK(std::fabs(jacobi_p(k, a, b, 1.0 - 2.0 * rt.roots[i])) < 1e-11 * scale);
    }
    CHECK(stationarity_residual(n, m, alpha, rt.roots) < 1e-9);
  }
  CHECK_THROWS_AS((jacobi_roots(0, 2, 1.0)), DomainError);
  CHECK_THROWS_AS((jacobi_roots(2, 2, -1.0)), DomainError);
}

TEST_CASE("stationarity residual is positive away from the roots") {
  Level z = jacobi_roots(3, 3, 2.0).roots;
  z[1] += 0.01;
  CHECK(stationarity_residual(3, 3, 2.0, z) > 1e-3);
}

TEST_CASE("elementary-symmetric Jacobian against finite differences") {
  const std::vector<double> x{0.15, 0.4, 0.85};
  const Eigen::MatrixXd j = esym_jacobian(x);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const auto ep = elementary_symmetric(xp, 3), em = elementary_symmetric(xm, 3);
    for (int k = 1; k <= 3; ++k) CHECK(j(k - 1, i) == doctest::Approx((ep[k] - em[k]) / (2 * h)).epsilon(1e-8));
  }
  const Eigen::MatrixXd phi = esym_jacobian_inverse(x);
  CHECK((phi * j - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  const Eigen::VectorXd rhs = Eigen::VectorXd::LinSpaced(3, 1.0, 3.0);
  CHECK((j * esym_jacobian_solve(x, rhs) - rhs).norm() < 1e-12);
  CHECK_THROWS_AS((esym_jacobian_inverse({0.2, 0.2})), DomainError);
}

TEST_CASE("theta-scaled covariance converges as theta grows") {
  const std::vector<Rational> grid{Rational(100), Rational(1000), Rational(10000), Rational(100000), Rational(1000000)};
  const auto seq = theta_scaled_cov_sequence(Rational(2), 3, {3, 1}, {3, 1}, grid);
  REQUIRE(seq.size() == 5);
  double prev = INFINITY;
  for (std::size_t j = 1; j < seq.size(); ++j) {
    REQUIRE(seq[j].is_exact);
    const double inc = std::fabs(seq[j].value - seq[j - 1].value);
    CHECK(inc < prev);
    prev = inc;
  }
  CHECK(prev / std::fabs(seq.back().value) < 1e-4);
  CHECK_THROWS_AS((theta_scaled_cov_sequence(Rational(2), 3, {3, 1}, {3, 1}, {Rational(10), Rational(5)})),
                  DomainError);
}

TEST_CASE("linearised covariance of e_1 matches the limit of the scaled sequence") {
  // sqrt(theta) dx ~ phi sqrt(theta) de: Var(e_1) = 1^T Cov(x) 1
  const EnsembleParams p{1e4, 2.0, 3};
  SamplerConfig cfg;
  cfg.seed = 17;
  const Eigen::MatrixXd f = fluctuation_samples(p, 3, cfg, 20000);
  const Eigen::VectorXd s = f.rowwise().sum();
  const double mean = s.mean();
  const double var = (s.array() - mean).square().sum() / (s.size() - 1);
  const auto seq = theta_scaled_cov_sequence(Rational(2), 3, {3, 1}, {3, 1}, {Rational(10000)});
  CHECK(var == doctest::Approx(seq[0].value).epsilon(0.1));
  CHECK(std::fabs(f.col(0).mean()) < 0.05);
}
