// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jcorners/density.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>
#include <functional>

using namespace jc;

namespace {

// Adaptive QAGS on (lo, hi) with endpoint singularities allowed.
double qags(const std::function<double(double)>& f, double lo, double hi) {
  gsl_set_error_handler_off();
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(2000);
  gsl_function g;
  g.function = [](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); };
  g.params = const_cast<std::function<double(double)>*>(&f);
  double v = 0.0, err = 0.0;
  gsl_integration_qags(&g, lo, hi, 0.0, 1e-11, 2000, w, &v, &err);
  gsl_integration_workspace_free(w);
  return v;
}

}  // namespace

TEST_CASE("Selberg integral against Beta function and a numeric double integral") {
  CHECK(std::exp(log_selberg(1, 2.5, 1.5, 0.7)) == doctest::Approx(std::exp(gsl_sf_lnbeta(2.5, 1.5))).epsilon(1e-12));
  for (double g : {0.5, 1.0, 2.0}) {
    const double a0 = 1.5, a1 = 2.0;
    const double num = qags(
        [&](double s) {
          return qags([&](double t) { return std::pow(s * t, a0 - 1) * std::pow((1 - s) * (1 - t), a1 - 1) *
                                              std::pow(std::fabs(s - t), 2 * g); },
                      0.0, 1.0);
        },
        0.0, 1.0);
    CHECK(std::exp(log_selberg(2, a0, a1, g)) == doctest::Approx(num).epsilon(1e-8));
  }
}

TEST_CASE("level densities are normalized") {
  for (double th : {0.5, 1.0, 2.0}) {
    const EnsembleParams p{th, 1.5, 3};
    const double one = qags([&](double x) { return std::exp(log_level_density(p, 1, {x})); }, 0.0, 1.0);
    CHECK(one == doctest::Approx(1.0).epsilon(1e-9));
    const double two = qags(
        [&](double y) {
          return qags([&](double x) { return std::exp(log_level_density(p, 2, {x, y})); }, 0.0, y);
        },
        0.0, 1.0);
    CHECK(two == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("level 1 is Beta(theta alpha, theta M)") {
  const EnsembleParams p{0.7, 2.0, 3};
  const double a = p.theta * p.alpha, b = p.theta * p.m_param;
  for (double x : {0.1, 0.4, 0.9}) {
    const double ref = (a - 1) * std::log(x) + (b - 1) * std::log1p(-x) - gsl_sf_lnbeta(a, b);
    CHECK(log_level_density(p, 1, {x}) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("backward kernel integrates to one") {
  for (double th : {0.5, 1.0, 2.5}) {
    const EnsembleParams p{th, 1.2, 3};
    const Level y{0.2, 0.7};
    const double m = qags([&](double z) { return std::exp(log_backward_density(p, 2, y, {z})); }, y[0], y[1]);
    CHECK(m == doctest::Approx(1.0).epsilon(1e-9));
    // above M the lower level keeps M = 1 particle, one side unbounded by 1
    const EnsembleParams q{th, 1.2, 1};
    const double m1 = qags([&](double z) { return std::exp(log_backward_density(q, 2, {0.3}, {z})); }, 0.3, 1.0);
    CHECK(m1 == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("consistency: level density times backward kernel gives the lower level") {
  const EnsembleParams p{1.5, 2.0, 3};
  const double z = 0.37;
  // int_{y1<z<y2} P_2(y) K(y -> z) dy = P_1(z)
  const double v = qags(
      [&](double y1) {
        return qags([&](double y2) {
          return std::exp(log_level_density(p, 2, {y1, y2}) + log_backward_density(p, 2, {y1, y2}, {z}));
        }, z, 1.0);
      },
      0.0, z);
  CHECK(v == doctest::Approx(std::exp(log_level_density(p, 1, {z}))).epsilon(1e-7));
}

TEST_CASE("site conditional differences match the joint density") {
  const EnsembleParams p{0.5, 1.0, 2};
  CornersArray c;
  c.levels = {{0.5}, {0.4, 0.8}, {0.3, 0.7}, {0.2, 0.6}};
  REQUIRE(is_valid_corners(c, 2, 4));
  for (auto [n, i] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{3, 1}, std::pair{4, 2}}) {
    const auto [lo, hi] = site_interval(2, 4, c, n, i);
    const double x1 = lo + 0.3 * (hi - lo), x2 = lo + 0.8 * (hi - lo);
    CornersArray c1 = c, c2 = c;
    c1.level(n)[i - 1] = x1;
    c2.level(n)[i - 1] = x2;
    const double dj = log_joint_density(p, 4, c2) - log_joint_density(p, 4, c1);
    const double ds = log_site_conditional(p, 4, c, n, i, x2) - log_site_conditional(p, 4, c, n, i, x1);
    CHECK(ds == doctest::Approx(dj).epsilon(1e-10));
  }
}

TEST_CASE("Dixon-Anderson integral") {
  for (double b : {-0.5, 2.0}) {
    const auto r = dixon_check({0.7, 1.3}, {0.0, 1.0}, b);
    CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-8));
    const auto r3 = dixon_check({0.7, 1.3, 0.5}, {0.0, 0.4, 1.0}, b);
    CHECK(r3.lhs == doctest::Approx(r3.rhs).epsilon(1e-6));
  }
  const auto inf = dixon_check({0.7, 1.3}, {0.0, 1.0}, INFINITY);
  CHECK(inf.lhs == doctest::Approx(inf.rhs).epsilon(1e-8));
  CHECK_THROWS_AS((dixon_check({0.7, 1.3}, {0.0, 1.0}, 0.5)), DomainError);
}
