// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/ho.hpp"

#include "jcorners/core.hpp"
#include "jcorners/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace jc {

void HOPoint::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("HOPoint: theta must be positive");
  if (r.empty()) throw DomainError("HOPoint: r must be non-empty");
  if (y.size() < r.size()) throw DomainError("HOPoint: need at least len(r) variables");
  if (static_cast<int>(y.size()) > kMaxHOVars)
    throw DomainError("HOPoint: at most " + std::to_string(kMaxHOVars) + " variables are supported");
  for (double v : y)
    if (!std::isfinite(v)) throw DomainError("HOPoint: y must be finite");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i])) throw DomainError("HOPoint: r must be finite");
    const double next = (i + 1 < r.size()) ? r[i + 1] : 0.0;
    if (!(r[i] > next)) throw DomainError("HOPoint: r must be strictly decreasing and positive");
  }
}

void QuadSpec::validate() const {
  if (nodes_per_interval < 8) throw DomainError("QuadSpec: at least 8 nodes per interval");
}

namespace {

// 1 - e^{-d}
double om(double d) { return -std::expm1(-d); }

class Branching {
 public:
  Branching(double theta, const QuadSpec& q)
      : theta_(theta),
        jacobi_(q.scheme == QuadScheme::gauss_jacobi_endpoint),
        nodes_(q.nodes_per_interval),
        lgam_(std::lgamma(theta)) {}

  // F_r(y_1..y_v)
  double eval(const std::vector<double>& r, const double* y, int v) const {
    const int n = static_cast<int>(r.size());
    if (v == 1) return std::exp(y[0] * r[0]);
    std::vector<double> rr = r;
    if (v > n) rr.push_back(0.0);
    const int dims = static_cast<int>(rr.size()) - 1;
    const int q = nodes_;

    std::vector<double> lo(dims), width(dims);
    for (int i = 0; i < dims; ++i) {
      lo[i] = rr[i + 1];
      width[i] = rr[i] - rr[i + 1];
    }
    // Per-coordinate node values and weights (including the Jacobian and,
    // for the Jacobi scheme, the division by the rule's weight function).
    // Near 0 the padded coordinate also carries the inner function's
    // (1 - e^{-m})^{theta (v-1-n)} decay.
    std::vector<std::vector<double>> node(dims, std::vector<double>(q));
    std::vector<std::vector<double>> wt(dims, std::vector<double>(q));
    for (int i = 0; i < dims; ++i) {
      const double ea = (v > n && i == dims - 1) ? theta_ * (v - 1 - n) : 0.0;
      const double a = jacobi_ ? theta_ - 1.0 + ea : 0.0;
      const double b = jacobi_ ? theta_ - 1.0 : 0.0;
      const GaussRule& rule = gauss_jacobi01(q, a, b);
      for (int j = 0; j < q; ++j) {
        const double t = rule.nodes[j];
        node[i][j] = lo[i] + width[i] * t;
        double w = rule.weights[j] * width[i];
        if (jacobi_) w *= std::pow(t, -a) * std::pow(1.0 - t, -b);
        wt[i][j] = w;
      }
    }

    const double sum_r = std::accumulate(rr.begin(), rr.end(), 0.0);
    std::vector<int> idx(dims, 0);
    std::vector<double> m(dims);
    double total = 0.0;
    while (true) {
      double w = 1.0;
      for (int i = 0; i < dims; ++i) {
        m[i] = node[i][idx[i]];
        w *= wt[i][idx[i]];
      }
      const double sum_m = std::accumulate(m.begin(), m.end(), 0.0);
      total += w * kernel(rr, m, y[v - 1], sum_r - sum_m) * eval(m, y, v - 1);
      int d = 0;
      while (d < dims && ++idx[d] == q) idx[d++] = 0;
      if (d == dims) break;
    }
    return total;
  }

 private:
  // g_{rr/m}(y) with |rr| - |m| = shift
  double kernel(const std::vector<double>& rr, const std::vector<double>& m, double y, double shift) const {
    const int k = static_cast<int>(m.size());
    double lp = 0.0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) lp += std::log(om(m[i] - m[j]));
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j)
        lp += std::log(om(rr[i] - rr[j + 1])) - std::log(om(m[i] - rr[j + 1])) - std::log(om(rr[i] - m[j]));
    return std::exp(y * shift + (1.0 - theta_) * lp - k * lgam_);
  }

  double theta_;
  bool jacobi_;
  int nodes_;
  double lgam_;
};

double checked(double v) {
  if (!std::isfinite(v)) throw NumericError("ho_eval: quadrature produced a non-finite value");
  return v;
}

double dual_factor(const std::vector<double>& r, double theta) {
  double l = -static_cast<double>(r.size()) * std::lgamma(theta);
  for (double x : r) l += (theta - 1.0) * std::log(om(x));
  return std::exp(l);
}

}  // namespace

double ho_eval(const HOPoint& p, const QuadSpec& q) {
  p.validate();
  q.validate();
  if (p.theta < 1.0 && q.scheme == QuadScheme::gauss_legendre && p.y.size() > 1)
    throw NumericError("ho_eval: Gauss-Legendre cannot resolve the endpoint singularities for theta < 1");
  const Branching b(p.theta, q);
  return checked(b.eval(p.r, p.y.data(), static_cast<int>(p.y.size())));
}

double ho_dual_eval(const HOPoint& p, const QuadSpec& q) { return ho_eval(p, q) * dual_factor(p.r, p.theta); }

double ho_principal(const std::vector<double>& r, int m_vars, double theta, bool dual) {
  const int n = static_cast<int>(r.size());
  if (n < 1 || m_vars < n) throw DomainError("ho_principal: need 1 <= len(r) <= M");
  if (!(theta > 0.0)) throw DomainError("ho_principal: theta must be positive");
  double l = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= m_vars; ++j) l += std::lgamma(theta * (j - i)) - std::lgamma(theta * (j - i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = std::exp(-r[j]) - std::exp(-r[i]);
      if (!(d > 0.0)) throw DomainError("ho_principal: r must be strictly decreasing");
      l += theta * std::log(d);
    }
  double ex = theta * (m_vars - n);
  if (dual) {
    ex += theta - 1.0;
    l -= n * std::lgamma(theta);
  }
  for (double x : r) {
    if (!(x > 0.0)) throw DomainError("ho_principal: r must be positive");
    l += ex * std::log(om(x));
  }
  return std::exp(l);
}

std::pair<double, double> cauchy_check(const std::vector<double>& a, const std::vector<double>& b, double theta,
                                       const QuadSpec& q) {
  if (a.empty() || b.empty()) throw DomainError("cauchy_check: empty argument");
  if (!(theta > 0.0)) throw DomainError("cauchy_check: theta must be positive");
  double rhs_log = 0.0;
  for (double ai : a)
    for (double bj : b) {
      if (!(ai + bj < 0.0)) throw DomainError("cauchy_check: need a_i + b_j < 0");
      rhs_log += std::lgamma(-ai - bj) - std::lgamma(theta - ai - bj);
    }
  const int n = static_cast<int>(std::min(a.size(), b.size()));
  if (n > 2) throw DomainError("cauchy_check: at most two integration coordinates");
  const double amax = *std::max_element(a.begin(), a.end());
  const double bmax = *std::max_element(b.begin(), b.end());
  const double rate = -(amax + bmax);
  if (!(rate > 0.0)) throw DomainError("cauchy_check: need a_i + b_j < 0");

  auto integrand = [&](const std::vector<double>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double next = (i + 1 < r.size()) ? r[i + 1] : 0.0;
      if (!(r[i] > next)) return 0.0;
    }
    return ho_dual_eval(HOPoint{r, a, theta}, q) * ho_eval(HOPoint{r, b, theta}, q);
  };

  // Truncate once the integrand has fallen below 1e-14 of its peak.
  double cut = 36.0 / rate;
  auto tail_ok = [&](double big) {
    double peak = 0.0;
    for (int j = 1; j <= 64; ++j) {
      const double x = big * j / 64.0;
      std::vector<double> r = (n == 1) ? std::vector<double>{x} : std::vector<double>{x, 0.5 * x};
      peak = std::max(peak, std::fabs(integrand(r)));
    }
    std::vector<double> r_end = (n == 1) ? std::vector<double>{big} : std::vector<double>{big, 0.5 * big};
    return std::fabs(integrand(r_end)) <= 1e-14 * peak;
  };
  int grow = 0;
  while (!tail_ok(cut)) {
    if (++grow > 6) throw NumericError("cauchy_check: truncation did not converge");
    cut *= 1.5;
  }

  double lhs = 0.0;
  if (n == 1) {
    lhs = integrate_1d([&](double x) { return integrand({x}); }, 0.0, cut, 1e-20);
  } else {
    lhs = integrate_1d(
        [&](double r2) {
          return integrate_1d([&](double r1) { return integrand({r1, r2}); }, r2, cut, 1e-16);
        },
        0.0, cut, 1e-16);
  }
  return {lhs, std::exp(rhs_log)};
}

std::pair<double, double> eigen_check(const std::vector<double>& r, double theta, int n_vars, int k,
                                      const std::vector<double>& base_y, const QuadSpec& q) {
  if (static_cast<int>(base_y.size()) != n_vars) throw DomainError("eigen_check: base_y must have n_vars entries");
  if (k < 1 || k > n_vars) throw DomainError("eigen_check: need 1 <= k <= n_vars");
  const HOPoint base{r, base_y, theta};
  base.validate();
  for (int i = 0; i < n_vars; ++i)
    for (int j = 0; j < i; ++j)
      if (base_y[i] == base_y[j]) throw DomainError("eigen_check: base_y entries must be distinct");

  double applied = 0.0;
  for (unsigned mask = 0; mask < (1u << n_vars); ++mask) {
    if (std::popcount(mask) != k) continue;
    double coef = 1.0;
    std::vector<double> y = base_y;
    for (int i = 0; i < n_vars; ++i) {
      if (!(mask >> i & 1u)) continue;
      y[i] -= 1.0;
      for (int j = 0; j < n_vars; ++j)
        if (!(mask >> j & 1u)) coef *= (base_y[i] - base_y[j] - theta) / (base_y[i] - base_y[j]);
    }
    applied += coef * ho_eval(HOPoint{r, y, theta}, q);
  }
  std::vector<double> x;
  for (double v : r) x.push_back(std::exp(-v));
  x.resize(static_cast<std::size_t>(n_vars), 1.0);
  const double ek = elementary_symmetric(x, k)[static_cast<std::size_t>(k)];
  return {applied, ek * ho_eval(base, q)};
}

double calogero_residual(const std::vector<double>& r, const std::vector<double>& y, double theta, double fd_step,
                         const QuadSpec& q) {
  if (r.size() != 2 || y.size() != 2) throw DomainError("calogero_residual: needs two coordinates and two variables");
  if (!(r[0] - r[1] > 0.1)) throw DomainError("calogero_residual: r must be well separated");
  if (!(fd_step > 0.0) || !(r[1] - fd_step > 0.0) || !(r[0] - r[1] - 2.0 * fd_step > 0.0))
    throw DomainError("calogero_residual: step too large for r");
  auto f = [&](double a, double b) { return ho_eval(HOPoint{{a, b}, y, theta}, q); };
  const double f0 = f(r[0], r[1]);
  const double h2 = fd_step * fd_step;
  const double d1 = (f(r[0] + fd_step, r[1]) - 2.0 * f0 + f(r[0] - fd_step, r[1])) / h2;
  const double d2 = (f(r[0], r[1] + fd_step) - 2.0 * f0 + f(r[0], r[1] - fd_step)) / h2;
  const double sh = std::sinh(0.5 * (r[0] - r[1]));
  const double pot = theta * (1.0 - theta) / (2.0 * sh * sh);
  const double res = d1 + d2 + pot * f0 - (y[0] * y[0] + y[1] * y[1]) * f0;
  if (f0 == 0.0) throw NumericError("calogero_residual: function vanishes at r");
  return std::fabs(res / f0);
}

}  // namespace jc
