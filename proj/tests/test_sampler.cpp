// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jcorners/moments.hpp"
#include "jcorners/rng.hpp"
#include "jcorners/sampler.hpp"

#include <gsl/gsl_cdf.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

using namespace jc;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("generator streams") {
  Philox4x32 a(7, 0), b(7, 0), c(7, 1), d(8, 0);
  bool differ_c = false, differ_d = false;
  double sum = 0.0;
  bool in_range = true;
  for (int i = 0; i < 100000; ++i) {
    const auto x = a();
    in_range &= x == b();
    differ_c |= x != c();
    differ_d |= x != d();
    const double u = a.uniform01();
    b.uniform01();
    in_range &= u > 0.0 && u < 1.0;
    sum += u;
  }
  CHECK(in_range);
  CHECK(differ_c);
  CHECK(differ_d);
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("sampled states are valid and reproducible") {
  const EnsembleParams p{0.5, 1.0, 2};
  SamplerConfig cfg;
  cfg.seed = 3;
  cfg.burn_in = 10;
  const auto s1 = sample_corners(p, 4, cfg, 50);
  const auto s2 = sample_corners(p, 4, cfg, 50);
  REQUIRE(s1.size() == 50);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(is_valid_corners(s1[i], 2, 4));
    CHECK(s1[i].levels == s2[i].levels);
  }
  cfg.seed = 4;
  CHECK(sample_corners(p, 4, cfg, 1)[0].levels != s1[0].levels);
  cfg.thin = 0;
  CHECK_THROWS_AS((sample_corners(p, 4, cfg, 1)), DomainError);
}

TEST_CASE("single level matches Beta moments") {
  // N = 1 is Beta(theta alpha, theta M)
  const EnsembleParams p{0.5, 3.0, 2};
  SamplerConfig cfg;
  cfg.seed = 11;
  const auto series = observable_series(p, 1, cfg, 40000, {{ObsKind::power, 1, 1, true}});
  const MomentEstimate m = batch_mean(series[0]);
  const double a = 1.5, b = 1.0;
  CHECK(std::fabs(m.mean - a / (a + b)) < 4 * m.std_error);
  const MomentEstimate v = batch_covariance(series[0], series[0]);
  CHECK(std::fabs(v.mean - a * b / ((a + b) * (a + b) * (a + b + 1))) < 4 * v.std_error);
}

TEST_CASE("three-level chain agrees with exact moments") {
  const ExactParams ep{Rational(2), Rational(3), 2};
  const EnsembleParams p = ep.to_double();
  SamplerConfig cfg;
  cfg.seed = 5;
  cfg.burn_in = 200;
  std::vector<ObservableSpec> specs{{ObsKind::power, 1, 3, true}, {ObsKind::power, 2, 3, true},
                                    {ObsKind::power, 1, 2, true}, {ObsKind::elementary, 2, 2, true}};
  const auto series = observable_series(p, 3, cfg, 30000, specs);
  const ObservableEstimates est = estimate_observables(series);
  CHECK(std::fabs(est.means[0].mean - expectation_p(ep, {{3, 1}}).value) < 4 * est.means[0].std_error);
  CHECK(std::fabs(est.means[1].mean - expectation_p(ep, {{3, 2}}).value) < 4 * est.means[1].std_error);
  CHECK(std::fabs(est.means[3].mean - expectation_e(ep, {{2, 2}}).value) < 4 * est.means[3].std_error);
  const MomentEstimate& c = est.covariance[0][2];
  CHECK(std::fabs(c.mean - covariance_p(ep, {3, 1}, {2, 1}).value) < 4 * c.std_error);
}

TEST_CASE("series do not depend on the thread count") {
  const EnsembleParams p{1.0, 2.0, 3};
  SamplerConfig cfg;
  cfg.seed = 9;
  cfg.burn_in = 20;
  const std::vector<ObservableSpec> specs{{ObsKind::power, 1, 3, true}};
  setenv("JCORNERS_THREADS", "1", 1);
  const auto one = observable_series(p, 3, cfg, 400, specs, 4);
  setenv("JCORNERS_THREADS", "3", 1);
  const auto three = observable_series(p, 3, cfg, 400, specs, 4);
  unsetenv("JCORNERS_THREADS");
  CHECK(one == three);
}

namespace {

std::vector<double> normals(std::uint64_t seed, int n) {
  Philox4x32 g(seed);
  std::vector<double> out;
  while (static_cast<int>(out.size()) < n) {
    const double u = g.uniform01(), v = g.uniform01();
    out.push_back(std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v));
  }
  return out;
}

}  // namespace

TEST_CASE("batch means on an AR(1) series") {
  // x_t = phi x_{t-1} + z_t: Var(mean) ~ 1/((1-phi)^2 n)
  const double phi = 0.8;
  const int n = 200000;
  const auto z = normals(21, n);
  std::vector<double> x(n);
  x[0] = z[0] / std::sqrt(1 - phi * phi);
  for (int t = 1; t < n; ++t) x[t] = phi * x[t - 1] + z[t];
  const MomentEstimate m = batch_mean(x);
  const double se = 1.0 / ((1 - phi) * std::sqrt(static_cast<double>(n)));
  CHECK(m.std_error == doctest::Approx(se).epsilon(0.3));
  CHECK(m.n_effective < n / 5.0);
  CHECK(std::fabs(m.mean) < 4 * se);
}

TEST_CASE("cumulants detect Gaussian and non-Gaussian series") {
  const auto g = normals(5, 100000);
  std::vector<double> u;
  Philox4x32 r(6);
  for (int i = 0; i < 100000; ++i) u.push_back(r.uniform01());
  const auto k3 = empirical_cumulants({g, u}, 3);
  const auto k4 = empirical_cumulants({g, u}, 4);
  CHECK(std::fabs(k3[0].standardized) < 4 * k3[0].standardized_se);
  CHECK(std::fabs(k4[0].standardized) < 4 * k4[0].standardized_se);
  CHECK(std::fabs(k3[1].standardized) < 4 * k3[1].standardized_se);
  // uniform: excess kurtosis -6/5
  CHECK(k4[1].standardized == doctest::Approx(-1.2).epsilon(0.03));
  CHECK(std::fabs(k4[1].standardized + 1.2) < 4 * k4[1].standardized_se);
  const auto k2 = empirical_cumulants({u}, 2);
  CHECK(k2[0].value == doctest::Approx(1.0 / 12).epsilon(0.02));
}

TEST_CASE("empirical support") {
  // N = 1: the quantiles of a Beta(theta alpha, theta M) variable
  const EnsembleParams p{1.0, 2.0, 3};
  SamplerConfig cfg;
  cfg.seed = 1;
  const auto s = sample_corners(p, 1, cfg, 20000);
  const auto [lo, hi] = empirical_support(s, 1, 0.05);
  CHECK(lo == doctest::Approx(gsl_cdf_beta_Pinv(0.05, 2.0, 3.0)).epsilon(0.03));
  CHECK(hi == doctest::Approx(gsl_cdf_beta_Pinv(0.95, 2.0, 3.0)).epsilon(0.03));
  CHECK_THROWS_AS((empirical_support(s, 1, 0.6)), DomainError);
}
