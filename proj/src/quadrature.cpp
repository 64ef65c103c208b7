// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/quadrature.hpp"

#include "jcorners/core.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace jc {

namespace {

GaussRule build_rule(int n, double a, double b) {
  // GSL weight on [lo,hi] is (hi-x)^alpha (x-lo)^beta.
  gsl_set_error_handler_off();
  gsl_integration_fixed_workspace* w =
      gsl_integration_fixed_alloc(gsl_integration_fixed_jacobi, static_cast<std::size_t>(n), 0.0, 1.0, b, a);
  if (w == nullptr) throw NumericError("Gauss-Jacobi rule construction failed");
  GaussRule r;
  const double* x = gsl_integration_fixed_nodes(w);
  const double* wt = gsl_integration_fixed_weights(w);
  r.nodes.assign(x, x + n);
  r.weights.assign(wt, wt + n);
  gsl_integration_fixed_free(w);
  return r;
}

}  // namespace

const GaussRule& gauss_jacobi01(int n, double a, double b) {
  if (n < 1) throw DomainError("quadrature order must be positive");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Jacobi exponents must exceed -1");
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, a, b);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<GaussRule>(build_rule(n, a, b))).first;
  return *it->second;
}

double integrate_1d(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  double err = 0.0;
  double l1 = 0.0;
  const double v = integrator.integrate(f, lo, hi, std::sqrt(rel_tol), &err, &l1);
  if (!std::isfinite(v)) throw NumericError("quadrature produced a non-finite value");
  return v;
}

}  // namespace jc
