// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/density.hpp"

#include "jcorners/quadrature.hpp"

#include <cmath>
#include <numeric>

namespace jc {

namespace {

double sum_log_gaps(const Level& z) {
  double s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) s += std::log(z[j] - z[i]);
  return s;
}

double sum_log_cross(const Level& y, const Level& z) {
  double s = 0.0;
  for (double a : y)
    for (double b : z) s += std::log(std::fabs(a - b));
  return s;
}

double sum_log(const Level& z) {
  double s = 0.0;
  for (double v : z) s += std::log(v);
  return s;
}

double sum_log1m(const Level& z) {
  double s = 0.0;
  for (double v : z) s += std::log1p(-v);
  return s;
}

// sum_j ln|x - v_j| over j != skip, taking one log per block of 8 factors
double sum_log_dist(double x, const Level& v, std::size_t skip) {
  double s = 0.0;
  double prod = 1.0;
  int count = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j == skip) continue;
    prod *= std::fabs(x - v[j]);
    if (++count == 8) {
      s += std::log(prod);
      prod = 1.0;
      count = 0;
    }
  }
  return s + std::log(prod);
}

void check_params(const EnsembleParams& p) { p.validate(); }

}  // namespace

double log_selberg(int n, double a0, double a1, double gamma) {
  if (n < 1) throw DomainError("log_selberg: n must be >= 1");
  if (!(a0 > 0.0) || !(a1 > 0.0)) throw DomainError("log_selberg: a0 and a1 must be positive");
  if (!(gamma >= 0.0)) throw DomainError("log_selberg: gamma must be nonnegative");
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    s += std::lgamma(a0 + j * gamma) + std::lgamma(a1 + j * gamma) + std::lgamma(1.0 + (j + 1) * gamma);
    s -= std::lgamma(a0 + a1 + (n + j - 1) * gamma) + std::lgamma(1.0 + gamma);
  }
  return s;
}

double log_level_density(const EnsembleParams& p, int n, const Level& z) {
  check_params(p);
  if (n < 1) throw DomainError("level must be >= 1");
  const int k = level_length(n, p.m_param);
  validate_level(z, k);
  const double th = p.theta;
  const double a0 = th * p.alpha;
  const double a1 = th * std::abs(p.m_param - n) + th;
  double s = std::lgamma(k + 1.0) - log_selberg(k, a0, a1, th);
  s += 2.0 * th * sum_log_gaps(z);
  if (a0 != 1.0) s += (a0 - 1.0) * sum_log(z);
  if (a1 != 1.0) s += (a1 - 1.0) * sum_log1m(z);
  return s;
}

double log_backward_density(const EnsembleParams& p, int n, const Level& y, const Level& z) {
  check_params(p);
  if (n < 2) throw DomainError("backward transition needs n >= 2");
  const int m = p.m_param;
  const double th = p.theta;
  validate_level(y, level_length(n, m));
  validate_level(z, level_length(n - 1, m));
  validate_interlacing(z, y);
  if (n <= m) {
    double s = std::lgamma(n * th) - n * std::lgamma(th);
    s += (n - 1) * th * sum_log(y);
    s += sum_log_gaps(z);
    if (th != 0.5) s += (1.0 - 2.0 * th) * sum_log_gaps(y);
    if (th != 1.0) s += (th - 1.0) * sum_log_cross(y, z);
    s -= n * th * sum_log(z);
    return s;
  }
  double s = std::lgamma(n * th) - m * std::lgamma(th) - std::lgamma(n * th - m * th);
  s += sum_log_gaps(z);
  if (th != 0.5) s += (1.0 - 2.0 * th) * sum_log_gaps(y);
  s += (n - 1) * th * sum_log(y);
  const double ey = th * (m - n - 1) + 1.0;
  if (ey != 0.0) s += ey * sum_log1m(y);
  if (th != 1.0) s += (th - 1.0) * sum_log_cross(y, z);
  const double ez = th * (n - m) - 1.0;
  if (ez != 0.0) s += ez * sum_log1m(z);
  s -= n * th * sum_log(z);
  return s;
}

double log_forward_density(const EnsembleParams& p, int n, const Level& z, const Level& y) {
  check_params(p);
  if (n < 1 || n > p.m_param) throw DomainError("forward transition defined for 1 <= n <= M");
  if (n == 1) {
    if (!z.empty()) throw DomainError("level 0 is empty");
    return log_level_density(p, 1, y);
  }
  return log_backward_density(p, n, y, z) + log_level_density(p, n, y) - log_level_density(p, n - 1, z);
}

double log_joint_density(const EnsembleParams& p, int big_n, const CornersArray& c) {
  check_params(p);
  validate_corners(c, p.m_param, big_n);
  double s = log_level_density(p, big_n, c.level(big_n));
  for (int n = 2; n <= big_n; ++n) s += log_backward_density(p, n, c.level(n), c.level(n - 1));
  return s;
}

std::pair<double, double> site_interval(int m_param, int big_n, const CornersArray& c, int n, int i) {
  const Level& cur = c.level(n);
  double lo = 0.0;
  double hi = 1.0;
  const std::size_t idx = static_cast<std::size_t>(i - 1);
  if (idx > 0) lo = cur[idx - 1];
  if (idx + 1 < cur.size()) hi = cur[idx + 1];
  if (n < big_n) {
    const Level& up = c.level(n + 1);
    lo = std::max(lo, up[idx]);
    if (idx + 1 < up.size()) hi = std::min(hi, up[idx + 1]);
  }
  if (n > 1) {
    const Level& down = c.level(n - 1);
    if (idx > 0) lo = std::max(lo, down[idx - 1]);
    if (idx < down.size()) hi = std::min(hi, down[idx]);
  }
  (void)m_param;
  return {lo, hi};
}

double log_site_conditional(const EnsembleParams& p, int big_n, const CornersArray& c, int n, int i, double x) {
  const int m = p.m_param;
  const double th = p.theta;
  const std::size_t idx = static_cast<std::size_t>(i - 1);
  const double lx = std::log(x);
  const double l1x = std::log1p(-x);
  double s = 0.0;
  double same_coef = 0.0;

  if (n == big_n) {
    same_coef += 2.0 * th;
    s += (th * p.alpha - 1.0) * lx;
    const double e = th * std::abs(m - n) + th - 1.0;
    if (e != 0.0) s += e * l1x;
  }
  if (n >= 2) {
    // site plays the role of y in the level-n kernel
    s += (n - 1) * th * lx;
    same_coef += 1.0 - 2.0 * th;
    if (n > m) {
      const double e = th * (m - n - 1) + 1.0;
      if (e != 0.0) s += e * l1x;
    }
    if (th != 1.0) s += (th - 1.0) * sum_log_dist(x, c.level(n - 1), c.level(n - 1).size());
  }
  if (n < big_n) {
    // site plays the role of z in the level-(n+1) kernel
    const int up = n + 1;
    same_coef += 1.0;
    s -= up * th * lx;
    if (up > m) {
      const double e = th * (up - m) - 1.0;
      if (e != 0.0) s += e * l1x;
    }
    if (th != 1.0) s += (th - 1.0) * sum_log_dist(x, c.level(up), c.level(up).size());
  }
  if (same_coef != 0.0) s += same_coef * sum_log_dist(x, c.level(n), idx);
  return s;
}

DixonResult dixon_check(const std::vector<double>& alphas, const std::vector<double>& a, double b) {
  const std::size_t np1 = a.size();
  if (alphas.size() != np1 || np1 < 2 || np1 > 3) throw DomainError("dixon_check: need n+1 = 2 or 3 points");
  for (double al : alphas)
    if (!(al > 0.0)) throw DomainError("dixon_check: alphas must be positive");
  for (std::size_t i = 1; i < np1; ++i)
    if (!(a[i] > a[i - 1])) throw DomainError("dixon_check: a must be increasing");
  const bool finite_b = std::isfinite(b);
  if (finite_b && b >= a.front() && b <= a.back()) throw DomainError("dixon_check: b inside [a_1, a_{n+1}]");
  const std::size_t n = np1 - 1;
  const double asum = std::accumulate(alphas.begin(), alphas.end(), 0.0);

  auto log_point = [&](double t) {
    double s = 0.0;
    for (std::size_t j = 0; j < np1; ++j) {
      s += (alphas[j] - 1.0) * std::log(std::fabs(t - a[j]));
      if (finite_b) s -= alphas[j] * std::log(std::fabs(b - t));
    }
    return s;
  };

  double lhs = 0.0;
  if (n == 1) {
    lhs = integrate_1d([&](double t) { return std::exp(log_point(t)); }, a[0], a[1], 1e-14);
  } else {
    lhs = integrate_1d(
        [&](double t1) {
          const double w1 = std::exp(log_point(t1));
          return w1 * integrate_1d([&](double t2) { return std::fabs(t2 - t1) * std::exp(log_point(t2)); }, a[1],
                                   a[2], 1e-14);
        },
        a[0], a[1], 1e-14);
  }

  double lr = -std::lgamma(asum);
  for (double al : alphas) lr += std::lgamma(al);
  for (std::size_t j = 0; j < np1; ++j)
    for (std::size_t i = 0; i < j; ++i) lr += (alphas[i] + alphas[j] - 1.0) * std::log(a[j] - a[i]);
  if (finite_b)
    for (std::size_t i = 0; i < np1; ++i) lr += (alphas[i] - asum) * std::log(std::fabs(b - a[i]));
  return {lhs, std::exp(lr)};
}

}  // namespace jc
