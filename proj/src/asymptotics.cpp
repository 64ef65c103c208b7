// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/asymptotics.hpp"

#include "jcorners/core.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <algorithm>
#include <cmath>

namespace jc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_level(double n_hat) {
  if (!(n_hat > 0.0) || !std::isfinite(n_hat)) throw DomainError("level height must be positive");
}

void check_theta(double theta) {
  if (!(theta > 0.0)) throw DomainError("theta must be positive");
}

double binom(int n, int k) { return boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(k)); }

struct Circle {
  double center;
  double radius;
};

// Concentric circles around -(N1+N2)/2: both contain -N1 and -N2, neither
// reaches alphahat+Mhat, and the u2 circle lies inside the u1 circle.
std::pair<Circle, Circle> covariance_circles(const HatParams& hp, double n1, double n2) {
  const double c0 = -0.5 * (n1 + n2);
  const double h = 0.5 * (n1 - n2);
  const double a = hp.alpha_hat + hp.m_hat + 0.5 * (n1 + n2);
  const double lo = std::log(std::max(h, 0.1 * a));
  const double hi = std::log(a);
  return {Circle{c0, std::exp(lo + 2.0 * (hi - lo) / 3.0)}, Circle{c0, std::exp(lo + (hi - lo) / 3.0)}};
}

// Trapezoid samples on a circle: values phi(f(u_j)) times (R/n) e^{i t_j}.
void circle_samples(const HatParams& hp, double n_hat, const SliceFn& phi, const Circle& c, int n,
                    std::vector<cplx>& u, std::vector<cplx>& w) {
  u.resize(n);
  w.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    const cplx e(std::cos(t), std::sin(t));
    u[j] = c.center + c.radius * e;
    w[j] = phi(f_limit(hp, n_hat, 1, u[j])) * (c.radius / n) * e;
  }
}

struct CovValue {
  double value;
  double scale;  // sum of |terms|, bounds the rounding error
};

CovValue covariance_once(const HatParams& hp, double theta, double n1, const SliceFn& phi1, double n2,
                         const SliceFn& phi2, int n) {
  const auto [outer, inner] = covariance_circles(hp, n1, n2);
  std::vector<cplx> u1, w1, u2, w2;
  circle_samples(hp, n1, phi1, outer, n, u1, w1);
  circle_samples(hp, n2, phi2, inner, n, u2, w2);
  cplx sum = 0.0;
  double mag = 0.0;
  for (int a = 0; a < n; ++a) {
    cplx row = 0.0;
    for (int b = 0; b < n; ++b) {
      const cplx d = u1[a] - u2[b];
      row += w2[b] / (d * d);
    }
    sum += w1[a] * row;
    mag += std::abs(w1[a] * row);
  }
  // (2 pi i)^{-2} times the circle measure already folded into w
  const cplx value = sum / theta;
  if (std::fabs(value.imag()) > 1e-10 * std::max(1.0, mag / theta))
    throw NumericError("limit covariance: imaginary residue above 1e-10");
  return {value.real(), mag / theta};
}

// gff_cov without the half-plane checks; odd under conjugating either point.
double green(cplx z, cplx w) { return -std::log(std::abs((z - w) / (z - std::conj(w)))) / (2.0 * kPi); }

// Kussmaul-Martensen weight for ln|2 sin(d/2)| with n equispaced nodes.
double km_weight(double d, int n) {
  double s = 0.0;
  for (int m = 1; m < n / 2; ++m) s += std::cos(m * d) / m;
  s += std::cos(0.5 * n * d) / n;
  return -(2.0 * kPi / n) * s;
}

struct SliceNodes {
  std::vector<double> phi;
  std::vector<cplx> z;     // Omega along the slice, conjugated for phi < 0
  std::vector<double> g;   // x^m dx/dphi
  std::vector<double> rm;  // smooth remainder on the diagonal
};

SliceNodes slice_nodes(const HatParams& hp, double n_hat, int m, int n) {
  const double c1 = slice_c1(hp, n_hat);
  const double s2 = 2.0 * std::sqrt(slice_c2(hp, n_hat));
  const double a = hp.alpha_hat;
  const double mm = hp.m_hat;
  SliceNodes s;
  for (int j = 0; j < n; ++j) {
    const double ph = -kPi + (j + 0.5) * 2.0 * kPi / n;
    const double sn = std::sin(ph);
    const double x = c1 - s2 * std::cos(ph);
    cplx z = omega(hp, n_hat, std::clamp(x, c1 - s2, c1 + s2));
    if (ph < 0.0) z = std::conj(z);
    // dOmega/dphi = -P_x/P_u dx/dphi
    const cplx px = z * z + (n_hat - a - mm) * z - n_hat * (a + mm);
    const cplx pu = 2.0 * (x - 1.0) * z + x * (n_hat - a - mm) + a;
    const cplx dz = -px / pu * (s2 * sn);
    s.phi.push_back(ph);
    s.z.push_back(z);
    s.g.push_back(std::pow(x, m) * s2 * sn);
    s.rm.push_back((std::log(2.0 * std::fabs(z.imag())) - std::log(std::fabs(2.0 * sn)) - std::log(std::abs(dz))) /
                   (2.0 * kPi));
  }
  return s;
}

double height_once(const HatParams& hp, double n1, int m1, double n2, int m2, int n) {
  const SliceNodes s1 = slice_nodes(hp, n1, m1, n);
  const SliceNodes s2 = slice_nodes(hp, n2, m2, n);
  const double h = 2.0 * kPi / n;
  double total = 0.0;
  if (n1 != n2) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) total += green(s1.z[a], s2.z[b]) * s1.g[a] * s2.g[b];
    return 0.25 * total * h * h;
  }
  std::vector<double> w_minus(n), w_plus(2 * n);
  for (int d = 0; d < n; ++d) w_minus[d] = km_weight(d * h, n);
  const double shift = 2.0 * (-kPi + 0.5 * h);
  for (int d = 0; d < 2 * n; ++d) w_plus[d] = km_weight(shift + d * h, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      // singular part -(1/2pi)[ln|2 sin((p1-p2)/2)| - ln|2 sin((p1+p2)/2)|]
      const double sing = -(w_minus[static_cast<std::size_t>(std::abs(a - b))] - w_plus[static_cast<std::size_t>(a + b)]) /
                          (2.0 * kPi);
      double rem;
      if (a == b) {
        rem = s1.rm[a];
      } else if (a + b == n - 1) {
        rem = -s1.rm[a];
      } else {
        const double d1 = std::log(std::fabs(2.0 * std::sin(0.5 * (s1.phi[a] - s1.phi[b]))));
        const double d2 = std::log(std::fabs(2.0 * std::sin(0.5 * (s1.phi[a] + s1.phi[b]))));
        rem = green(s1.z[a], s2.z[b]) + (d1 - d2) / (2.0 * kPi);
      }
      total += (sing + rem * h) * s1.g[a] * s2.g[b];
    }
  }
  return 0.25 * total * h;
}

}  // namespace

void HatParams::validate() const {
  if (!(m_hat > 0.0) || !(alpha_hat > 0.0)) throw DomainError("Mhat and alphahat must be positive");
}

cplx f_limit(const HatParams& hp, double n_hat, int k, cplx u) {
  hp.validate();
  check_level(n_hat);
  if (k < 0) throw DomainError("f_limit: k must be >= 0");
  const cplx d1 = u + n_hat;
  const cplx d2 = u - hp.alpha_hat - hp.m_hat;
  if (d1 == 0.0 || d2 == 0.0) throw DomainError("f_limit: pole");
  const cplx f = u / d1 * (u - hp.alpha_hat) / d2;
  cplx r = 1.0;
  for (int j = 0; j < k; ++j) r *= f;
  return r;
}

ContourSpec level_contour(const HatParams& hp, double n_hat, int nodes) {
  hp.validate();
  check_level(n_hat);
  if (nodes < 64) throw DomainError("level_contour: at least 64 nodes");
  ContourSpec c;
  c.nodes = nodes;
  const double a = hp.alpha_hat;
  const double m = hp.m_hat;
  if (n_hat == m) {
    c.is_line = true;
    c.line_x = 0.5 * a;
    c.truncation = 1e14 * (1.0 + a + m);
    return c;
  }
  c.center = n_hat * (a + m) / (n_hat - m);
  c.radius = std::sqrt(m * (m + a) * n_hat * (n_hat + a)) / std::fabs(n_hat - m);
  return c;
}

double slice_c1(const HatParams& hp, double n_hat) {
  hp.validate();
  check_level(n_hat);
  const double s = n_hat + hp.alpha_hat + hp.m_hat;
  return (n_hat * hp.m_hat + (n_hat + hp.alpha_hat) * (hp.m_hat + hp.alpha_hat)) / (s * s);
}

double slice_c2(const HatParams& hp, double n_hat) {
  hp.validate();
  check_level(n_hat);
  const double s = n_hat + hp.alpha_hat + hp.m_hat;
  return hp.m_hat * (hp.m_hat + hp.alpha_hat) * n_hat * (n_hat + hp.alpha_hat) / (s * s * s * s);
}

std::pair<double, double> frozen_boundary(const HatParams& hp, double n_hat) {
  const double c1 = slice_c1(hp, n_hat);
  const double r = 2.0 * std::sqrt(slice_c2(hp, n_hat));
  return {std::max(0.0, c1 - r), std::min(1.0, c1 + r)};
}

cplx omega(const HatParams& hp, double n_hat, double x) {
  const auto [l, r] = frozen_boundary(hp, n_hat);
  const double slack = 1e-12 * std::max(1.0, r - l);
  if (x < l - slack || x > r + slack) throw DomainError("omega: x outside the frozen-boundary slice");
  const double a = hp.alpha_hat;
  const double m = hp.m_hat;
  const double qa = x - 1.0;
  const double qb = x * (n_hat - a - m) + a;
  const double qc = -x * n_hat * (a + m);
  if (qa == 0.0) return cplx(-qc / qb, 0.0);
  const double disc = qb * qb - 4.0 * qa * qc;
  // the endpoints are double roots; absorb rounding there
  if (disc >= -1e-13 * (qb * qb + std::fabs(4.0 * qa * qc)) || x <= l || x >= r) return cplx(-qb / (2.0 * qa), 0.0);
  const double im = std::sqrt(-disc) / (2.0 * std::fabs(qa));
  return cplx(-qb / (2.0 * qa), im);
}

double gff_cov(cplx z, cplx w) {
  if (!(z.imag() > 0.0) || !(w.imag() > 0.0)) throw DomainError("gff_cov: points must lie in the open upper half-plane");
  if (z == w) throw DomainError("gff_cov: coincident points");
  return green(z, w);
}

double limit_covariance_fn(const HatParams& hp, double theta, double n1_hat, const SliceFn& phi1, double n2_hat,
                           const SliceFn& phi2, const ContourOptions& opt) {
  hp.validate();
  check_theta(theta);
  check_level(n1_hat);
  check_level(n2_hat);
  if (n1_hat < n2_hat) throw DomainError("limit covariance needs n1_hat >= n2_hat");
  if (opt.fixed_nodes > 0) return covariance_once(hp, theta, n1_hat, phi1, n2_hat, phi2, opt.fixed_nodes).value;
  int n = opt.min_nodes;
  CovValue prev = covariance_once(hp, theta, n1_hat, phi1, n2_hat, phi2, n);
  while (n < opt.max_nodes) {
    n *= 2;
    const CovValue cur = covariance_once(hp, theta, n1_hat, phi1, n2_hat, phi2, n);
    if (std::fabs(cur.value - prev.value) <= opt.rel_tol * std::fabs(cur.value) + 1e-13 * cur.scale) return cur.value;
    prev = cur;
  }
  throw NumericError("limit covariance: node doubling did not stabilise");
}

double limit_covariance_p(const HatParams& hp, double theta, std::pair<double, int> a, std::pair<double, int> b,
                          const ContourOptions& opt) {
  if (a.second < 1 || b.second < 1) throw DomainError("power-sum degree must be >= 1");
  if (a.first < b.first) std::swap(a, b);
  auto power = [](int k) {
    return [k](cplx x) {
      cplx r = 1.0;
      for (int j = 0; j < k; ++j) r *= x;
      return r;
    };
  };
  return limit_covariance_fn(hp, theta, a.first, power(a.second), b.first, power(b.second), opt);
}

cplx chebyshev_t(int n, cplx t) {
  if (n < 0) throw DomainError("chebyshev_t: n must be >= 0");
  if (n == 0) return 1.0;
  cplx prev = 1.0, cur = t;
  for (int j = 1; j < n; ++j) {
    const cplx next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx chebyshev_hat(const HatParams& hp, double n_hat, int n, cplx x) {
  const double c1 = slice_c1(hp, n_hat);
  const double s2 = 2.0 * std::sqrt(slice_c2(hp, n_hat));
  return chebyshev_t(n, (x - c1) / s2);
}

double chebyshev_cov(const HatParams& hp, double theta, std::pair<int, double> a, std::pair<int, double> b) {
  hp.validate();
  check_theta(theta);
  check_level(a.second);
  check_level(b.second);
  if (a.first < 1 || b.first < 1) throw DomainError("chebyshev_cov: degrees must be >= 1");
  if (a.second < b.second) std::swap(a, b);
  const auto [n1, h1] = a;
  const auto [n2, h2] = b;
  if (n1 < n2) return 0.0;
  const double al = hp.alpha_hat;
  const double m = hp.m_hat;
  const double lead = boost::math::factorial<double>(static_cast<unsigned>(n1)) /
                      (4.0 * theta * boost::math::factorial<double>(static_cast<unsigned>(n2 - 1)) *
                       boost::math::factorial<double>(static_cast<unsigned>(n1 - n2)));
  const double q1 = (h2 - h1) / (h2 + al + m) * std::sqrt(m * (al + m) / (h1 * (al + h1)));
  const double q2 = (h1 + al + m) * std::sqrt(h2 * (al + h2)) / ((h2 + al + m) * std::sqrt(h1 * (al + h1)));
  return lead * std::pow(q1, n1 - n2) * std::pow(q2, n2);
}

double chebyshev_contour_cov(const HatParams& hp, double theta, std::pair<int, double> a, std::pair<int, double> b,
                             const ContourOptions& opt) {
  if (a.second < b.second) std::swap(a, b);
  const auto [n1, h1] = a;
  const auto [n2, h2] = b;
  return limit_covariance_fn(
      hp, theta, h1, [&, n = n1, h = h1](cplx x) { return chebyshev_hat(hp, h, n, x); }, h2,
      [&, n = n2, h = h2](cplx x) { return chebyshev_hat(hp, h, n, x); }, opt);
}

std::vector<double> monomial_in_chebyshev(const HatParams& hp, double n_hat, int m) {
  if (m < 0) throw DomainError("monomial_in_chebyshev: m must be >= 0");
  const double c1 = slice_c1(hp, n_hat);
  const double s2 = 2.0 * std::sqrt(slice_c2(hp, n_hat));
  std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
  // x^m = sum_k C(m,k) c1^{m-k} s2^k t^k and t^k = 2^{-k} sum_i C(k,i) T_{|k-2i|}
  for (int k = 0; k <= m; ++k) {
    const double coef = binom(m, k) * std::pow(c1, m - k) * std::pow(s2, k) * std::ldexp(1.0, -k);
    for (int i = 0; i <= k; ++i) c[static_cast<std::size_t>(std::abs(k - 2 * i))] += coef * binom(k, i);
  }
  return c;
}

double power_cov_via_chebyshev(const HatParams& hp, double theta, std::pair<double, int> a, std::pair<double, int> b) {
  const std::vector<double> ca = monomial_in_chebyshev(hp, a.first, a.second);
  const std::vector<double> cb = monomial_in_chebyshev(hp, b.first, b.second);
  double s = 0.0;
  for (int i = 1; i <= a.second; ++i)
    for (int j = 1; j <= b.second; ++j)
      s += ca[static_cast<std::size_t>(i)] * cb[static_cast<std::size_t>(j)] *
           chebyshev_cov(hp, theta, {i, a.first}, {j, b.first});
  return s;
}

double height_cov(const HatParams& hp, double theta, std::pair<double, int> a, std::pair<double, int> b,
                  const SliceQuadOptions& opt) {
  hp.validate();
  check_theta(theta);
  check_level(a.first);
  check_level(b.first);
  if (a.second < 0 || b.second < 0) throw DomainError("height_cov: monomial degrees must be >= 0");
  int n = opt.min_nodes + (opt.min_nodes % 2);
  double prev = height_once(hp, a.first, a.second, b.first, b.second, n);
  while (n < opt.max_nodes) {
    n *= 2;
    const double cur = height_once(hp, a.first, a.second, b.first, b.second, n);
    if (std::fabs(cur - prev) <= opt.rel_tol * std::fabs(cur)) return cur;
    prev = cur;
  }
  throw NumericError("height_cov: node doubling did not stabilise");
}

}  // namespace jc
