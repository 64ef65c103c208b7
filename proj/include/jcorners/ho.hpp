// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// Heckman-Opdam hypergeometric functions F_r(y; theta) of type A for small N,
// from the interlacing branching integral, and checks of their identities.

#ifndef JCORNERS_HO_HPP
#define JCORNERS_HO_HPP

#include <utility>
#include <vector>

namespace jc {

struct HOPoint {
  std::vector<double> r;  // r_1 > ... > r_n > 0
  std::vector<double> y;  // length >= n
  double theta = 1.0;

  void validate() const;
};

enum class QuadScheme { gauss_legendre, gauss_jacobi_endpoint };

struct QuadSpec {
  int nodes_per_interval = 40;
  QuadScheme scheme = QuadScheme::gauss_jacobi_endpoint;

  void validate() const;
};

// Largest number of variables handled (integral dimension <= 3).
constexpr int kMaxHOVars = 3;

double ho_eval(const HOPoint& p, const QuadSpec& q = {});

// Gamma(theta)^{-n} prod_i (1 - e^{-r_i})^{theta-1} F_r(y)
double ho_dual_eval(const HOPoint& p, const QuadSpec& q = {});

// Closed form of F_r (or its dual) at y = (0, -theta, ..., (1-M) theta).
double ho_principal(const std::vector<double>& r, int m_vars, double theta, bool dual = false);

// (lhs, rhs) of int F~_r(a) F_r(b) dr = prod Gamma(-a_i-b_j)/Gamma(theta-a_i-b_j);
// r runs over min(len a, len b) <= 2 coordinates.
std::pair<double, double> cauchy_check(const std::vector<double>& a, const std::vector<double>& b, double theta,
                                       const QuadSpec& q = {});

// (sum_{|I|=k} B_I(y) F_r(y - 1_I), e_k(e^{-r}, 1^{N-n}) F_r(y)) with
// B_I = prod_{i in I, j not in I} (y_i - y_j - theta)/(y_i - y_j).
std::pair<double, double> eigen_check(const std::vector<double>& r, double theta, int n_vars, int k,
                                      const std::vector<double>& base_y, const QuadSpec& q = {});

// Relative residual of the Calogero-Sutherland eigenrelation for n = 2,
// from central differences with the given step.
double calogero_residual(const std::vector<double>& r, const std::vector<double>& y, double theta, double fd_step,
                         const QuadSpec& q = {});

}  // namespace jc

#endif
