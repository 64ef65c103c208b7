// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "commands.hpp"

#include "jcorners/asymptotics.hpp"
#include "jcorners/beta_infinity.hpp"
#include "jcorners/core.hpp"
#include "jcorners/ho.hpp"
#include "jcorners/moments.hpp"
#include "jcorners/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#ifndef JCORNERS_BUILD_ID
#define JCORNERS_BUILD_ID "unknown"
#endif

namespace jc::cli {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// configuration

void RunConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field " + field + ": " + why);
  };
  try {
    ExactParams{parse_rational(ensemble.theta), parse_rational(ensemble.alpha), ensemble.m_param}.validate();
  } catch (const std::exception& e) {
    fail("ensemble", e.what());
  }
  if (ensemble.levels < 1) fail("ensemble.N", "must be >= 1");
  if (sampler.samples < 1) fail("sampler.samples", "must be >= 1");
  if (sampler.burn_in < 0) fail("sampler.burn_in", "must be >= 0");
  if (sampler.thin < 1) fail("sampler.thin", "must be >= 1");
  if (sampler.chains < 1) fail("sampler.chains", "must be >= 1");
  if (sampler.batches < 2) fail("sampler.batches", "must be >= 2");
  try {
    HatParams{hat.m_hat, hat.alpha_hat}.validate();
  } catch (const std::exception& e) {
    fail("hat", e.what());
  }
  if (!(hat.theta > 0.0)) fail("hat.theta", "must be positive");
  if (hat.n_hats.empty()) fail("hat.n_hats", "must be non-empty");
  for (double v : hat.n_hats)
    if (!(v > 0.0)) fail("hat.n_hats", "entries must be positive");
  if (hat.max_degree < 1 || hat.max_degree > 6) fail("hat.max_degree", "must lie in 1..6");
  if (!(hat.boundary_max > 0.0) || hat.boundary_points < 1) fail("hat.boundary", "need positive range and points");
  if (hat.exact_scale < 0) fail("hat.exact_scale", "must be >= 0");
  if (!(beta_infinity.theta > 0.0)) fail("beta_infinity.theta", "must be positive");
  if (beta_infinity.samples < 200) fail("beta_infinity.samples", "must be >= 200");
  for (const auto& t : beta_infinity.theta_grid) {
    try {
      if (parse_rational(t) <= 0) fail("beta_infinity.theta_grid", "entries must be positive");
    } catch (const DomainError& e) {
      fail("beta_infinity.theta_grid", e.what());
    }
  }
  if (!(ho.theta > 0.0)) fail("ho.theta", "must be positive");
  if (ho.nodes < 8) fail("ho.nodes", "must be >= 8");
  if (!(tol.z > 0.0)) fail("tolerances.z", "must be positive");
}

namespace {

std::string rational_field(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  throw std::invalid_argument("config field " + field + ": expected a number or a rational string");
}

template <class T>
void read(const json& obj, const char* key, T& dst, const std::string& prefix) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("config field " + prefix + key + ": wrong type");
  }
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  RunConfig c;
  read(j, "seed", c.seed, "");
  read(j, "out", c.out, "");
  if (j.contains("format")) {
    const std::string f = j.at("format").get<std::string>();
    if (f == "csv") c.format = Format::csv;
    else if (f == "json") c.format = Format::json;
    else throw std::invalid_argument("config field format: expected csv or json");
  }
  if (j.contains("ensemble")) {
    const json& e = j.at("ensemble");
    if (e.contains("theta")) c.ensemble.theta = rational_field(e.at("theta"), "ensemble.theta");
    if (e.contains("alpha")) c.ensemble.alpha = rational_field(e.at("alpha"), "ensemble.alpha");
    read(e, "M", c.ensemble.m_param, "ensemble.");
    read(e, "N", c.ensemble.levels, "ensemble.");
  }
  if (j.contains("sampler")) {
    const json& s = j.at("sampler");
    read(s, "samples", c.sampler.samples, "sampler.");
    read(s, "burn_in", c.sampler.burn_in, "sampler.");
    read(s, "thin", c.sampler.thin, "sampler.");
    read(s, "chains", c.sampler.chains, "sampler.");
    read(s, "batches", c.sampler.batches, "sampler.");
  }
  if (j.contains("hat")) {
    const json& h = j.at("hat");
    read(h, "m_hat", c.hat.m_hat, "hat.");
    read(h, "alpha_hat", c.hat.alpha_hat, "hat.");
    read(h, "theta", c.hat.theta, "hat.");
    read(h, "n_hats", c.hat.n_hats, "hat.");
    read(h, "max_degree", c.hat.max_degree, "hat.");
    read(h, "boundary_max", c.hat.boundary_max, "hat.");
    read(h, "boundary_points", c.hat.boundary_points, "hat.");
    read(h, "exact_scale", c.hat.exact_scale, "hat.");
  }
  if (j.contains("beta_infinity")) {
    const json& b = j.at("beta_infinity");
    read(b, "theta", c.beta_infinity.theta, "beta_infinity.");
    read(b, "samples", c.beta_infinity.samples, "beta_infinity.");
    if (b.contains("theta_grid")) {
      c.beta_infinity.theta_grid.clear();
      for (const auto& v : b.at("theta_grid"))
        c.beta_infinity.theta_grid.push_back(rational_field(v, "beta_infinity.theta_grid"));
    }
  }
  if (j.contains("ho")) {
    read(j.at("ho"), "theta", c.ho.theta, "ho.");
    read(j.at("ho"), "nodes", c.ho.nodes, "ho.");
  }
  if (j.contains("tolerances")) read(j.at("tolerances"), "z", c.tol.z, "tolerances.");
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["format"] = c.format == Format::csv ? "csv" : "json";
  j["ensemble"] = {{"theta", c.ensemble.theta}, {"alpha", c.ensemble.alpha}, {"M", c.ensemble.m_param},
                   {"N", c.ensemble.levels}};
  j["sampler"] = {{"samples", c.sampler.samples}, {"burn_in", c.sampler.burn_in}, {"thin", c.sampler.thin},
                  {"chains", c.sampler.chains}, {"batches", c.sampler.batches}};
  j["hat"] = {{"m_hat", c.hat.m_hat},
              {"alpha_hat", c.hat.alpha_hat},
              {"theta", c.hat.theta},
              {"n_hats", c.hat.n_hats},
              {"max_degree", c.hat.max_degree},
              {"boundary_max", c.hat.boundary_max},
              {"boundary_points", c.hat.boundary_points},
              {"exact_scale", c.hat.exact_scale}};
  j["beta_infinity"] = {{"theta", c.beta_infinity.theta},
                        {"samples", c.beta_infinity.samples},
                        {"theta_grid", c.beta_infinity.theta_grid}};
  j["ho"] = {{"theta", c.ho.theta}, {"nodes", c.ho.nodes}};
  j["tolerances"] = {{"z", c.tol.z}};
  return j;
}

// ---------------------------------------------------------------------------
// commands

namespace {

ExactParams exact_params(const RunConfig& c) {
  return ExactParams{parse_rational(c.ensemble.theta), parse_rational(c.ensemble.alpha), c.ensemble.m_param};
}

SamplerConfig sampler_config(const RunConfig& c) {
  SamplerConfig s;
  s.seed = c.seed;
  s.burn_in = c.sampler.burn_in;
  s.thin = c.sampler.thin;
  return s;
}

CheckRow z_check(std::string name, double z, double tol) {
  return CheckRow{std::move(name), z, 0.0, tol, std::isfinite(z) && std::fabs(z) <= tol};
}

CheckRow rel_check(std::string name, double value, double ref, double tol) {
  const double err = std::fabs(value - ref) / std::max(std::fabs(ref), 1e-300);
  return CheckRow{std::move(name), value, ref, tol, std::isfinite(value) && err <= tol};
}

CheckRow abs_check(std::string name, double value, double ref, double tol) {
  return CheckRow{std::move(name), value, ref, tol, std::isfinite(value) && std::fabs(value - ref) <= tol};
}

CheckRow exact_check(std::string name, const ExactScalar& v, const Rational& ref) {
  return CheckRow{std::move(name), v.value, to_double(ref), 0.0, v.is_exact && v.exact == ref};
}

std::string lvl(int n) { return "level=" + std::to_string(n); }

// Short numeric label for check names.
std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Outputs run_sample(const RunConfig& c) {
  const EnsembleParams p = exact_params(c).to_double();
  Table t{"samples", {"sample_id", "level", "index", "value"}, {}};
  stream_corners(p, c.ensemble.levels, sampler_config(c), c.sampler.samples,
                 [&](long long s, const CornersArray& arr) {
                   for (int n = 1; n <= arr.depth(); ++n) {
                     const Level& z = arr.level(n);
                     for (std::size_t i = 0; i < z.size(); ++i)
                       t.rows.push_back({s, static_cast<long long>(n), static_cast<long long>(i + 1), z[i]});
                   }
                 });
  Outputs o;
  o.tables.push_back(std::move(t));
  return o;
}

Outputs run_moments(const RunConfig& c) {
  const ExactParams ep = exact_params(c);
  const EnsembleParams p = ep.to_double();
  const int big_n = c.ensemble.levels;
  std::vector<ObservableSpec> specs;
  for (int n = 1; n <= big_n; ++n)
    for (int k = 1; k <= 2; ++k) specs.push_back(ObservableSpec{ObsKind::power, k, n, true});
  const auto series = observable_series(p, big_n, sampler_config(c), c.sampler.samples, specs, c.sampler.chains);
  const ObservableEstimates est = estimate_observables(series, c.sampler.batches);
  auto col = [](int n, int k) { return static_cast<std::size_t>(2 * (n - 1) + (k - 1)); };

  Outputs o;
  Table t{"moments", {"observable", "level", "degree", "exact_value", "mc_mean", "mc_se", "z_score"}, {}};
  auto row = [&](const std::string& obs, int n, int k, double exact, const MomentEstimate& mc) {
    const double z = (mc.mean - exact) / mc.std_error;
    t.add({obs, static_cast<long long>(n), static_cast<long long>(k), exact, mc.mean, mc.std_error, z});
    o.checks.push_back(z_check("moments/" + obs + "/" + lvl(n) + "/degree=" + std::to_string(k), z, c.tol.z));
  };
  for (int n = 1; n <= big_n; ++n) {
    for (int k = 1; k <= 2; ++k) row("mean_p", n, k, expectation_p(ep, {{n, k}}).value, est.means[col(n, k)]);
    row("var_p", n, 1, covariance_p(ep, {n, 1}, {n, 1}).value, est.covariance[col(n, 1)][col(n, 1)]);
    if (n > 1)
      row("cov_p_prev", n, 1, covariance_p(ep, {n, 1}, {n - 1, 1}).value, est.covariance[col(n, 1)][col(n - 1, 1)]);
  }
  const Rational anchor = ep.alpha / (ep.alpha + ep.m_param);
  o.checks.push_back(exact_check("moments/exact_mean_p1_level1", expectation_p(ep, {{1, 1}}), anchor));
  o.tables.push_back(std::move(t));
  return o;
}

Outputs run_asymptotics(const RunConfig& c) {
  const HatParams hp{c.hat.m_hat, c.hat.alpha_hat};
  const double th = c.hat.theta;
  const auto& nh = c.hat.n_hats;
  const int kmax = c.hat.max_degree;
  Outputs o;

  Table pw{"power_cov", {"k1", "n1_hat", "k2", "n2_hat", "contour", "chebyshev_path", "abs_diff"}, {}};
  Table ch{"chebyshev_cov", {"n1", "n1_hat", "n2", "n2_hat", "closed_form", "contour", "abs_diff", "diagonal_ref"}, {}};
  Table gf{"gff", {"m1", "n1_hat", "m2", "n2_hat", "scaled_limit", "height_integral", "rel_diff"}, {}};
  for (std::size_t a = 0; a < nh.size(); ++a)
    for (std::size_t b = a; b < nh.size(); ++b) {
      const std::string pair = "/n_hat=" + label(nh[a]) + "," + label(nh[b]);
      for (int k1 = 1; k1 <= kmax; ++k1)
        for (int k2 = 1; k2 <= kmax; ++k2) {
          const double v1 = limit_covariance_p(hp, th, {nh[a], k1}, {nh[b], k2});
          const double v2 = power_cov_via_chebyshev(hp, th, {nh[a], k1}, {nh[b], k2});
          pw.add({static_cast<long long>(k1), nh[a], static_cast<long long>(k2), nh[b], v1, v2, std::fabs(v1 - v2)});
          o.checks.push_back(abs_check("asymptotics/power_paths/k=" + std::to_string(k1) + "," + std::to_string(k2) + pair,
                                       v1, v2, 1e-6));
        }
      for (int n1 = 1; n1 <= kmax; ++n1)
        for (int n2 = 1; n2 <= kmax; ++n2) {
          const double closed = chebyshev_cov(hp, th, {n1, nh[a]}, {n2, nh[b]});
          const double contour = chebyshev_contour_cov(hp, th, {n1, nh[a]}, {n2, nh[b]});
          const bool same = nh[a] == nh[b];
          const double diag = (same && n1 == n2) ? n1 / (4.0 * th) : 0.0;
          ch.add({static_cast<long long>(n1), nh[a], static_cast<long long>(n2), nh[b], closed, contour,
                  std::fabs(closed - contour), same ? Cell{diag} : Cell{std::string("")}});
          const std::string nm = "/n=" + std::to_string(n1) + "," + std::to_string(n2) + pair;
          o.checks.push_back(abs_check("asymptotics/chebyshev_contour" + nm, contour, closed, 1e-8));
          if (same) o.checks.push_back(abs_check("asymptotics/chebyshev_diagonal" + nm, closed, diag, 1e-10));
        }
      for (int m1 = 0; m1 <= 3; ++m1)
        for (int m2 = 0; m2 <= 3; ++m2) {
          const double lim = th * std::numbers::pi * limit_covariance_p(hp, th, {nh[a], m1 + 1}, {nh[b], m2 + 1}) /
                             ((m1 + 1.0) * (m2 + 1.0));
          const double h = height_cov(hp, th, {nh[a], m1}, {nh[b], m2});
          gf.add({static_cast<long long>(m1), nh[a], static_cast<long long>(m2), nh[b], lim, h,
                  std::fabs(lim - h) / std::fabs(h)});
          o.checks.push_back(rel_check("asymptotics/gff/m=" + std::to_string(m1) + "," + std::to_string(m2) + pair, lim,
                                       h, 1e-4));
        }
    }
  // theta enters only as an overall 1/theta
  {
    const double base = limit_covariance_p(hp, 1.0, {nh.front(), 2}, {nh.back(), 2});
    for (double t2 : {0.5, 2.0}) {
      const double v = t2 * limit_covariance_p(hp, t2, {nh.front(), 2}, {nh.back(), 2});
      o.checks.push_back(abs_check("asymptotics/theta_free/theta=" + label(t2), v, base, 1e-10));
    }
  }

  Table fb{"frozen_boundary", {"n_hat", "l", "r"}, {}};
  for (int j = 1; j <= c.hat.boundary_points; ++j) {
    const double n = c.hat.boundary_max * j / c.hat.boundary_points;
    const auto [l, r] = frozen_boundary(hp, n);
    fb.add({n, l, r});
  }

  if (c.hat.exact_scale > 0 && nh.size() >= 2) {
    const int L = c.hat.exact_scale;
    auto integral = [&](double v, const char* what) {
      const double s = v * L;
      if (std::fabs(s - std::round(s)) > 1e-9 || std::round(s) < 1)
        throw std::invalid_argument(std::string("hat.exact_scale: L*") + what + " must be a positive integer");
      return static_cast<int>(std::round(s));
    };
    const int m = integral(hp.m_hat, "m_hat");
    const int n1 = integral(nh[0], "n_hat");
    const int n2 = integral(nh[1], "n_hat");
    const Rational alpha = parse_rational(format_double(hp.alpha_hat)) * L;
    const Rational theta = parse_rational(format_double(th));
    Table fs{"finite_scale_cov", {"L", "k", "theta_cov_exact", "limit", "rel_err"}, {}};
    for (int k = 1; k <= 2; ++k) {
      const ExactScalar cv = covariance_p(ExactParams{theta, alpha, m}, {n1, k}, {n2, k});
      const double v = cv.value * th;
      const double lim = th * limit_covariance_p(hp, th, {nh[0], k}, {nh[1], k});
      fs.add({static_cast<long long>(L), static_cast<long long>(k), v, lim, std::fabs(v - lim) / std::fabs(lim)});
      o.checks.push_back(rel_check("asymptotics/finite_scale/L=" + std::to_string(L) + "/k=" + std::to_string(k), v,
                                   lim, 0.05));
    }
    o.tables.push_back(std::move(fs));
  }
  o.tables.push_back(std::move(pw));
  o.tables.push_back(std::move(ch));
  o.tables.push_back(std::move(gf));
  o.tables.push_back(std::move(fb));
  return o;
}

Outputs run_beta_infinity(const RunConfig& c) {
  const ExactParams ep = exact_params(c);
  const int big_n = c.ensemble.levels;
  const int m = ep.m_param;
  const double alpha = to_double(ep.alpha);
  const double th = c.beta_infinity.theta;
  Outputs o;

  Table rt{"roots", {"level", "index", "root", "stationarity_residual"}, {}};
  std::vector<Level> roots(static_cast<std::size_t>(big_n));
  for (int n = 1; n <= big_n; ++n) {
    roots[n - 1] = jacobi_roots(n, m, alpha).roots;
    const double res = stationarity_residual(n, m, alpha, roots[n - 1]);
    bool increasing = true;
    for (std::size_t i = 0; i < roots[n - 1].size(); ++i) {
      rt.add({static_cast<long long>(n), static_cast<long long>(i + 1), roots[n - 1][i], res});
      if (i > 0 && !(roots[n - 1][i] > roots[n - 1][i - 1])) increasing = false;
    }
    o.checks.push_back(abs_check("beta_infinity/stationarity/" + lvl(n), res, 0.0, 1e-8));
    o.checks.push_back(CheckRow{"beta_infinity/roots_increasing/" + lvl(n), increasing ? 1.0 : 0.0, 1.0, 0.0, increasing});
  }

  // Sampled fluctuations at the top level.
  const EnsembleParams p{th, alpha, m};
  SamplerConfig sc = sampler_config(c);
  const Level& top = roots[big_n - 1];
  const std::size_t k = top.size();
  const double sq = std::sqrt(th);
  const long long count = c.beta_infinity.samples;
  std::vector<std::vector<double>> dx(k, std::vector<double>(count)), de(k, std::vector<double>(count));
  const std::vector<double> e_root = elementary_symmetric(top, static_cast<int>(k));
  long long inside = 0;
  stream_corners(p, big_n, sc, count, [&](long long s, const CornersArray& arr) {
    bool ok = true;
    for (int n = 1; n <= big_n; ++n)
      for (std::size_t i = 0; i < arr.level(n).size(); ++i)
        if (std::fabs(arr.level(n)[i] - roots[n - 1][i]) > 5.0 / sq) ok = false;
    if (ok) ++inside;
    const Level& x = arr.level(big_n);
    const std::vector<double> e = elementary_symmetric(x, static_cast<int>(k));
    for (std::size_t i = 0; i < k; ++i) {
      dx[i][s] = sq * (x[i] - top[i]);
      de[i][s] = sq * (e[i + 1] - e_root[i + 1]);
    }
  });
  const double frac = static_cast<double>(inside) / static_cast<double>(count);
  o.checks.push_back(CheckRow{"beta_infinity/within_5_over_sqrt_theta", frac, 0.99, 0.0, frac >= 0.99});

  const int batches = c.sampler.batches;
  const auto skew = empirical_cumulants(dx, 3, batches);
  const ObservableEstimates ex = estimate_observables(dx, batches);
  const ObservableEstimates ee = estimate_observables(de, batches);
  Table ft{"fluctuations", {"index", "root", "mean", "sd", "skewness", "skewness_se"}, {}};
  for (std::size_t i = 0; i < k; ++i) {
    ft.add({static_cast<long long>(i + 1), top[i], ex.means[i].mean, std::sqrt(ex.covariance[i][i].mean),
            skew[i].standardized, skew[i].standardized_se});
    o.checks.push_back(z_check("beta_infinity/skewness/index=" + std::to_string(i + 1),
                               skew[i].standardized / skew[i].standardized_se, c.tol.z));
  }
  const Eigen::MatrixXd phi = esym_jacobian_inverse(top);
  Eigen::MatrixXd ce(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) ce(i, j) = ee.covariance[i][j].mean;
  const Eigen::MatrixXd lin = phi * ce * phi.transpose();
  Table ct{"fluctuation_cov", {"i", "j", "cov_x", "cov_x_se", "cov_linearized", "z_score"}, {}};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const MomentEstimate& cx = ex.covariance[i][j];
      const double z = (cx.mean - lin(i, j)) / cx.std_error;
      ct.add({static_cast<long long>(i + 1), static_cast<long long>(j + 1), cx.mean, cx.std_error, lin(i, j), z});
      o.checks.push_back(
          z_check("beta_infinity/linearized_cov/" + std::to_string(i + 1) + "," + std::to_string(j + 1), z, c.tol.z));
    }

  std::vector<Rational> grid;
  for (const auto& g : c.beta_infinity.theta_grid) grid.push_back(parse_rational(g));
  const auto seq = theta_scaled_cov_sequence(ep.alpha, m, {big_n, 1}, {big_n, 1}, grid, true);
  Table st{"theta_cov", {"theta", "theta_cov_e1", "rel_increment"}, {}};
  double last_inc = 0.0;
  bool shrinking = true;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    double inc = 0.0;
    if (j > 0) {
      inc = std::fabs(seq[j].value - seq[j - 1].value) / std::fabs(seq[j].value);
      if (j > 1 && inc > last_inc) shrinking = false;
      last_inc = inc;
    }
    st.add({to_double(grid[j]), seq[j].value, j > 0 ? Cell{inc} : Cell{std::string("")}});
  }
  if (seq.size() >= 2) {
    o.checks.push_back(CheckRow{"beta_infinity/theta_cov_final_increment", last_inc, 0.0, 1e-4,
                                shrinking && last_inc < 1e-4});
  }
  o.tables.push_back(std::move(rt));
  o.tables.push_back(std::move(ft));
  o.tables.push_back(std::move(ct));
  o.tables.push_back(std::move(st));
  return o;
}

Outputs run_ho(const RunConfig& c) {
  const double th = c.ho.theta;
  const QuadSpec q{c.ho.nodes, QuadScheme::gauss_jacobi_endpoint};
  Outputs o;
  const std::vector<double> r2{1.7, 0.6};
  const std::vector<std::pair<int, int>> nm{{1, 1}, {1, 2}, {2, 2}, {2, 3}};
  for (auto [n, mv] : nm) {
    const std::vector<double> r(r2.begin(), r2.begin() + n);
    std::vector<double> y;
    for (int i = 0; i < mv; ++i) y.push_back(-i * th);
    const std::string tag = "/N=" + std::to_string(n) + ",M=" + std::to_string(mv);
    o.checks.push_back(rel_check("ho/principal" + tag, ho_eval(HOPoint{r, y, th}, q), ho_principal(r, mv, th), 1e-6));
    o.checks.push_back(
        rel_check("ho/principal_dual" + tag, ho_dual_eval(HOPoint{r, y, th}, q), ho_principal(r, mv, th, true), 1e-6));
  }
  const std::vector<std::pair<double, double>> ab{{-0.7, -0.4}, {0.3, -1.1}, {-2.0, 0.5}};
  for (auto [a, b] : ab) {
    const auto [lhs, rhs] = cauchy_check({a}, {b}, th, q);
    o.checks.push_back(rel_check("ho/cauchy/a=" + label(a) + ",b=" + label(b), lhs, rhs, 1e-8));
  }
  const std::vector<double> ybase{0.3, -0.45};
  for (int n = 1; n <= 2; ++n)
    for (int k = 1; k <= n; ++k) {
      const std::vector<double> r(r2.begin(), r2.begin() + n);
      const std::vector<double> y(ybase.begin(), ybase.begin() + n);
      const auto [applied, expected] = eigen_check(r, th, n, k, y, q);
      o.checks.push_back(
          rel_check("ho/eigen/N=" + std::to_string(n) + ",k=" + std::to_string(k), applied, expected, 1e-6));
    }
  {
    const std::vector<double> y{0.3, -0.8};
    const QuadSpec fine{std::max(c.ho.nodes, 60), QuadScheme::gauss_jacobi_endpoint};
    const double e1 = calogero_residual(r2, y, th, 1e-2, fine);
    const double e2 = calogero_residual(r2, y, th, 5e-3, fine);
    o.checks.push_back(abs_check("ho/calogero_step_ratio", e1 / e2, 4.0, 0.5));
    o.checks.push_back(abs_check("ho/calogero_residual/step=5e-3", e2, 0.0, 1e-4));
  }
  {
    const std::vector<double> y{0.3, -0.8, 0.1};
    const double f = ho_eval(HOPoint{r2, y, th}, q);
    const double g = ho_eval(HOPoint{r2, {y[2], y[0], y[1]}, th}, q);
    o.checks.push_back(rel_check("ho/symmetry", g, f, 1e-8));
    const double shift = 0.4;
    const double h = ho_eval(HOPoint{r2, {y[0] + shift, y[1] + shift, y[2] + shift}, th}, q);
    o.checks.push_back(rel_check("ho/homogeneity", h, f * std::exp(shift * (r2[0] + r2[1])), 1e-8));
  }
  return o;
}

Outputs run_all_checks(const RunConfig& c) {
  Outputs all;
  auto take = [&](const Outputs& o) { all.checks.insert(all.checks.end(), o.checks.begin(), o.checks.end()); };

  // Closed-form anchors, including a theta = 1/2 case.
  const std::vector<ExactParams> anchors{{Rational(1), Rational(2), 3}, {Rational(1, 2), Rational(3, 2), 2},
                                         {Rational(7, 3), Rational(5, 4), 4}};
  for (const ExactParams& ep : anchors) {
    const std::string tag = "/theta=" + to_string(ep.theta) + ",alpha=" + to_string(ep.alpha) + ",M=" +
                            std::to_string(ep.m_param);
    const Rational a = ep.theta * ep.alpha;
    const Rational b = ep.theta * ep.m_param;
    all.checks.push_back(exact_check("anchors/mean_p1" + tag, expectation_p(ep, {{1, 1}}), ep.alpha / (ep.alpha + ep.m_param)));
    all.checks.push_back(exact_check("anchors/var_p1" + tag, covariance_p(ep, {1, 1}, {1, 1}),
                                     a * b / ((a + b) * (a + b) * (a + b + 1))));
    const int n = ep.m_param;
    Rational prod(1);
    for (int j = 0; j < n; ++j) prod *= (ep.alpha + j) / (ep.alpha + ep.m_param + j);
    all.checks.push_back(exact_check("anchors/mean_eN" + tag, expectation_e(ep, {{n, n}}), prod));
  }
  take(run_moments(c));
  take(run_asymptotics(c));
  take(run_beta_infinity(c));
  take(run_ho(c));
  return all;
}

int write_outputs(const std::string& command, const RunConfig& c, const Outputs& o) {
  const std::filesystem::path dir(c.out);
  ensure_dir(dir);
  for (const Table& t : o.tables) write_table(t, dir, c.format);
  bool ok = true;
  if (!o.checks.empty()) {
    Table t{"checks", {"check", "value", "reference", "tolerance", "pass"}, {}};
    for (const CheckRow& r : o.checks) {
      t.add({r.check, r.value, r.reference, r.tolerance, r.pass});
      ok = ok && r.pass;
    }
    write_table(t, dir, c.format);
  }
  json meta;
  meta["command"] = command;
  meta["seed"] = c.seed;
  meta["build_id"] = JCORNERS_BUILD_ID;
  meta["config"] = config_to_json(c);
  std::vector<std::string> files;
  for (const Table& t : o.tables) files.push_back(t.name);
  if (!o.checks.empty()) files.push_back("checks");
  meta["tables"] = files;
  meta["checks_total"] = o.checks.size();
  meta["checks_failed"] = std::count_if(o.checks.begin(), o.checks.end(), [](const CheckRow& r) { return !r.pass; });
  write_json(meta, dir / "metadata.json");
  return ok ? 0 : 1;
}

}  // namespace jc::cli
