// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// Fixed Gauss rules on [0,1] (cached) and small adaptive helpers.

#ifndef JCORNERS_QUADRATURE_HPP
#define JCORNERS_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace jc {

struct GaussRule {
  std::vector<double> nodes;    // in (0,1)
  std::vector<double> weights;  // include the weight function
};

// Gauss rule for weight t^a (1-t)^b on [0,1]; a, b > -1.  a = b = 0 gives
// Gauss-Legendre.  Rules are cached and shared between threads.
const GaussRule& gauss_jacobi01(int n, double a, double b);
inline const GaussRule& gauss_legendre01(int n) { return gauss_jacobi01(n, 0.0, 0.0); }

// Adaptive tanh-sinh on (lo, hi); tolerates integrable endpoint singularities.
double integrate_1d(const std::function<double(double)>& f, double lo, double hi, double rel_tol = 1e-12);

}  // namespace jc

#endif
