// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/beta_infinity.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace jc {

RootTarget jacobi_roots(int n_level, int m_param, double alpha) {
  if (n_level < 1 || m_param < 1) throw DomainError("jacobi_roots: N and M must be >= 1");
  if (!(alpha > 0.0)) throw DomainError("jacobi_roots: alpha must be positive");
  const int k = level_length(n_level, m_param);
  // t = 2x - 1, weight (1-t)^a (1+t)^b
  const double a = std::abs(m_param - n_level);
  const double b = alpha - 1.0;
  Eigen::VectorXd diag(k);
  Eigen::VectorXd off(std::max(k - 1, 0));
  for (int n = 0; n < k; ++n) {
    const double s = 2.0 * n + a + b;
    const double an = (n == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    diag(n) = 0.5 * (an + 1.0);
    if (n + 1 < k) {
      const double m = n + 1;
      const double sm = 2.0 * m + a + b;
      const double beta = 4.0 * m * (m + a) * (m + b) * (m + a + b) / (sm * sm * (sm + 1.0) * (sm - 1.0));
      off(n) = 0.5 * std::sqrt(beta);
    }
  }
  RootTarget out;
  out.level = n_level;
  if (k == 1) {
    out.roots = {diag(0)};
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("jacobi_roots: tridiagonal eigensolver failed");
  out.roots.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

double stationarity_residual(int n_level, int m_param, double alpha, const Level& z) {
  const double c = std::abs(m_param - n_level) + 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double s = alpha / (2.0 * z[i]) - c / (2.0 * (1.0 - z[i]));
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) s += 1.0 / (z[i] - z[j]);
    worst = std::max(worst, std::fabs(s));
  }
  return worst;
}

Eigen::MatrixXd esym_jacobian(const std::vector<double>& x) {
  const int k = static_cast<int>(x.size());
  Eigen::MatrixXd jac(k, k);
  for (int i = 0; i < k; ++i) {
    std::vector<double> rest;
    for (int j = 0; j < k; ++j)
      if (j != i) rest.push_back(x[j]);
    const std::vector<double> e = elementary_symmetric(rest, k - 1);
    for (int row = 0; row < k; ++row) jac(row, i) = e[static_cast<std::size_t>(row)];
  }
  return jac;
}

namespace {

void require_distinct(const std::vector<double>& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (x[i] == x[j]) throw DomainError("esym_jacobian: entries must be distinct");
}

}  // namespace

Eigen::MatrixXd esym_jacobian_inverse(const std::vector<double>& x) {
  require_distinct(x);
  return esym_jacobian(x).partialPivLu().inverse();
}

Eigen::VectorXd esym_jacobian_solve(const std::vector<double>& x, const Eigen::VectorXd& rhs) {
  require_distinct(x);
  if (rhs.size() != static_cast<Eigen::Index>(x.size())) throw DomainError("esym_jacobian_solve: size mismatch");
  return esym_jacobian(x).partialPivLu().solve(rhs);
}

std::vector<ExactScalar> theta_scaled_cov_sequence(const Rational& alpha, int m_param, LevelDegree a, LevelDegree b,
                                                   const std::vector<Rational>& theta_grid, bool elementary,
                                                   const MomentOptions& opt) {
  for (std::size_t j = 0; j < theta_grid.size(); ++j) {
    if (theta_grid[j] <= 0) throw DomainError("theta grid must be positive");
    if (j > 0 && theta_grid[j] <= theta_grid[j - 1]) throw DomainError("theta grid must be increasing");
  }
  std::vector<ExactScalar> out;
  for (const Rational& th : theta_grid) {
    const ExactParams p{th, alpha, m_param};
    ExactScalar c = elementary ? covariance_e(p, a, b, opt) : covariance_p(p, a, b, opt);
    if (c.is_exact) c.exact *= th;
    c.value = c.is_exact ? c.exact.convert_to<double>() : c.value * th.convert_to<double>();
    out.push_back(c);
  }
  return out;
}

Eigen::MatrixXd fluctuation_samples(const EnsembleParams& p, int big_n, const SamplerConfig& cfg, long long count) {
  const Level target = jacobi_roots(big_n, p.m_param, p.alpha).roots;
  const auto k = static_cast<Eigen::Index>(target.size());
  Eigen::MatrixXd out(count, k);
  const double scale = std::sqrt(p.theta);
  stream_corners(p, big_n, cfg, count, [&](long long s, const CornersArray& c) {
    const Level& r = c.level(big_n);
    for (Eigen::Index i = 0; i < k; ++i) out(s, i) = scale * (r[static_cast<std::size_t>(i)] - target[static_cast<std::size_t>(i)]);
  });
  return out;
}

}  // namespace jc
