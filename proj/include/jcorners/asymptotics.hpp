// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// Limit objects as M ~ L Mhat, alpha ~ L alphahat, N ~ L Nhat: the
// double-contour covariance, the map Omega onto the upper half-plane, the
// frozen boundary, the Gaussian Free Field pullback and Chebyshev statistics.

#ifndef JCORNERS_ASYMPTOTICS_HPP
#define JCORNERS_ASYMPTOTICS_HPP

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace jc {

using cplx = std::complex<double>;

struct HatParams {
  double m_hat = 1.0;
  double alpha_hat = 1.0;

  void validate() const;
};

struct ContourSpec {
  double center = 0.0;
  double radius = 0.0;
  int nodes = 512;
  bool is_line = false;
  double line_x = 0.0;       // abscissa when is_line
  double truncation = 0.0;   // |Im u| cut-off when is_line
};

// (u/(u+Nhat) * (u-alphahat)/(u-alphahat-Mhat))^k
cplx f_limit(const HatParams& hp, double n_hat, int k, cplx u);

// Circle on which f_limit(., 1) is real; a vertical line when Nhat = Mhat.
ContourSpec level_contour(const HatParams& hp, double n_hat, int nodes = 512);

double slice_c1(const HatParams& hp, double n_hat);
double slice_c2(const HatParams& hp, double n_hat);

// (C1 - 2 sqrt(C2), C1 + 2 sqrt(C2))
std::pair<double, double> frozen_boundary(const HatParams& hp, double n_hat);

// Root u of (x-1)u^2 + (x(N-a-M)+a)u - xN(a+M) = 0 with Im u >= 0.
cplx omega(const HatParams& hp, double n_hat, double x);

// -(1/2pi) ln|(z-w)/(z-conj w)|
double gff_cov(cplx z, cplx w);

struct ContourOptions {
  int min_nodes = 256;
  int max_nodes = 8192;
  double rel_tol = 1e-12;
  int fixed_nodes = 0;  // > 0: single evaluation with this many nodes per circle
};

using SliceFn = std::function<cplx(cplx)>;

// theta^{-1} (2 pi i)^{-2} oint oint phi1(f1(u1)) phi2(f2(u2)) du1 du2 / (u1-u2)^2,
// f_r = f_limit(., Nhat_r, 1), u2 on the inner contour.  Requires n1_hat >= n2_hat.
double limit_covariance_fn(const HatParams& hp, double theta, double n1_hat, const SliceFn& phi1, double n2_hat,
                           const SliceFn& phi2, const ContourOptions& opt = {});

// Limit of Cov(p_k1(L N1), p_k2(L N2)); arguments are (Nhat, k).
double limit_covariance_p(const HatParams& hp, double theta, std::pair<double, int> a, std::pair<double, int> b,
                          const ContourOptions& opt = {});

cplx chebyshev_t(int n, cplx t);

// T_n((x - C1)/(2 sqrt(C2))) for the slice at height Nhat.
cplx chebyshev_hat(const HatParams& hp, double n_hat, int n, cplx x);

// Closed form covariance of Chebyshev statistics; arguments are (n, Nhat).
double chebyshev_cov(const HatParams& hp, double theta, std::pair<int, double> a, std::pair<int, double> b);

// Same covariance from the contour integral with T-hat integrands.
double chebyshev_contour_cov(const HatParams& hp, double theta, std::pair<int, double> a, std::pair<int, double> b,
                             const ContourOptions& opt = {});

// c_0..c_m with x^m = sum_j c_j That_j(x) on the slice.
std::vector<double> monomial_in_chebyshev(const HatParams& hp, double n_hat, int m);

// limit Cov(p_k1, p_k2) assembled from chebyshev_cov via monomial_in_chebyshev.
double power_cov_via_chebyshev(const HatParams& hp, double theta, std::pair<double, int> a, std::pair<double, int> b);

struct SliceQuadOptions {
  int min_nodes = 64;
  int max_nodes = 4096;
  double rel_tol = 1e-10;
};

// Double slice integral of gff_cov(Omega(x1,N1), Omega(x2,N2)) x1^m1 x2^m2;
// arguments are (Nhat, m).  The result does not depend on theta.
double height_cov(const HatParams& hp, double theta, std::pair<double, int> a, std::pair<double, int> b,
                  const SliceQuadOptions& opt = {});

}  // namespace jc

#endif
