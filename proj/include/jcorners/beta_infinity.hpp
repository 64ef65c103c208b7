// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// theta -> infinity: particles freeze at Jacobi polynomial roots and
// sqrt(theta)-fluctuations become Gaussian.

#ifndef JCORNERS_BETA_INFINITY_HPP
#define JCORNERS_BETA_INFINITY_HPP

#include "jcorners/core.hpp"
#include "jcorners/moments.hpp"
#include "jcorners/sampler.hpp"

#include <Eigen/Dense>

#include <vector>

namespace jc {

struct RootTarget {
  int level = 1;
  Level roots;  // increasing, length min(N, M)
};

// Roots of the degree-min(N,M) orthogonal polynomial for the weight
// x^{alpha-1} (1-x)^{|M-N|} on (0,1), by Golub-Welsch.
RootTarget jacobi_roots(int n_level, int m_param, double alpha);

// max_i |sum_{j!=i} 1/(z_i - z_j) + alpha/(2 z_i) - (|M-N|+1)/(2(1 - z_i))|
double stationarity_residual(int n_level, int m_param, double alpha, const Level& z);

// J(k,i) = de_k/dx_i = e_{k-1}(x without x_i), k = 1..K.
Eigen::MatrixXd esym_jacobian(const std::vector<double>& x);
// phi = J^{-1}; throws DomainError on tied entries.
Eigen::MatrixXd esym_jacobian_inverse(const std::vector<double>& x);
Eigen::VectorXd esym_jacobian_solve(const std::vector<double>& x, const Eigen::VectorXd& rhs);

// theta * Cov(f_{k1}(N1), f_{k2}(N2)) at each theta of an increasing grid,
// with f = e or p, from the exact-moments engine.
std::vector<ExactScalar> theta_scaled_cov_sequence(const Rational& alpha, int m_param, LevelDegree a, LevelDegree b,
                                                   const std::vector<Rational>& theta_grid, bool elementary = true,
                                                   const MomentOptions& opt = {});

// Rows sqrt(theta) (r^N_i - j^N_i) of sampled level-N particles.
Eigen::MatrixXd fluctuation_samples(const EnsembleParams& p, int big_n, const SamplerConfig& cfg, long long count);

}  // namespace jc

#endif
