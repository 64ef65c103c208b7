// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// Level densities, Dixon-Anderson transition kernels and the joint law of
// the corners process, all in log space.

#ifndef JCORNERS_DENSITY_HPP
#define JCORNERS_DENSITY_HPP

#include "jcorners/core.hpp"

#include <utility>
#include <vector>

namespace jc {

// ln of S_n(a0, a1, gamma) = int_{[0,1]^n} prod t^{a0-1}(1-t)^{a1-1} prod|t_i-t_j|^{2 gamma}.
double log_selberg(int n, double a0, double a1, double gamma);

// Normalized density of r^n on the ordered simplex.
double log_level_density(const EnsembleParams& p, int n, const Level& z);

// Density of r^{n-1} = z given r^n = y.  n <= M: |z| = n-1; n > M: |z| = M.
double log_backward_density(const EnsembleParams& p, int n, const Level& y, const Level& z);

// Density of r^n = y given r^{n-1} = z for 1 <= n <= M (Bayes from the above).
double log_forward_density(const EnsembleParams& p, int n, const Level& z, const Level& y);

// Joint density of levels 1..big_n.  Built as level density of the top level
// times the backward kernels, so it is normalized.
double log_joint_density(const EnsembleParams& p, int big_n, const CornersArray& c);

// Terms of log_joint_density that depend on site (n, i) (1-based), with the
// site value replaced by x.  Differences in x agree with log_joint_density.
double log_site_conditional(const EnsembleParams& p, int big_n, const CornersArray& c, int n, int i, double x);

// Open interval allowed for site (n, i) by its neighbours.
std::pair<double, double> site_interval(int m_param, int big_n, const CornersArray& c, int n, int i);

// Dixon integral: a has length n+1, alphas length n+1, n <= 2.
// Finite b (outside [a_1, a_{n+1}]) uses the |b - t|^{-alpha} form;
// b = +-infinity uses the polynomial form.
struct DixonResult {
  double lhs;
  double rhs;
};
DixonResult dixon_check(const std::vector<double>& alphas, const std::vector<double>& a, double b);

}  // namespace jc

#endif
