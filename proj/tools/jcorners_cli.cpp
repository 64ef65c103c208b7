// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// jcorners: command-line front end.  Exit status 0 when every internal check
// passes, 1 when some check fails, 2 on invalid input or runtime errors.

#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
  using namespace jc::cli;
  CLI::App app{
      "Toolkit for the beta-Jacobi corners process: Gibbs sampling, exact moments through difference operators, "
      "large-scale covariance limits, beta -> infinity freezing and Heckman-Opdam function identities."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> theta, alpha;
  std::optional<int> m_param, levels, burn_in, thin, chains;
  std::optional<long long> samples;

  app.add_option("--config", config_path, "JSON run configuration (blocks: ensemble, sampler, hat, beta_infinity, ho, tolerances)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Philox4x32 key for every random stream (chain c uses stream c)");
  app.add_option("--out", out, "Output directory (default: out)");
  app.add_option("--format", format, "Table format: csv (17 significant digits) or json (same rows)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--theta", theta, "theta = beta/2 of the corners process, rational such as 1/2 (weight exponent 2 theta)");
  app.add_option("--alpha", alpha, "alpha > 0: level-N weight x^{theta alpha - 1}");
  app.add_option("--M", m_param, "M >= 1: weight (1-x)^{theta |M-N| + theta - 1}; level N has min(N,M) particles");
  app.add_option("--N", levels, "Number of levels of the corners array");
  app.add_option("--samples", samples, "Retained Gibbs sweeps (total over chains)");
  app.add_option("--burn-in", burn_in, "Sweeps discarded after the Jacobi-root initial state");
  app.add_option("--thin", thin, "Sweeps per retained sample");
  app.add_option("--chains", chains, "Independent chains for moment estimates");

  auto* sample = app.add_subcommand("sample", "Gibbs-sample the corners array; writes samples (sample_id,level,index,value)");
  auto* moments = app.add_subcommand(
      "moments", "Exact E p_k, Var p_1 and Cov(p_1(n), p_1(n-1)) from the difference operators beside Monte Carlo");
  auto* asym = app.add_subcommand(
      "asymptotics", "Limit covariance by double contour and by Chebyshev expansion, GFF pullback through Omega, frozen boundary");
  auto* binf = app.add_subcommand(
      "beta-infinity", "Jacobi-root freezing, sqrt(theta) fluctuations and linearisation through e_k, theta * Cov sequence");
  auto* ho = app.add_subcommand(
      "ho", "Heckman-Opdam function identities: principal specialization, Cauchy, difference and Calogero eigenrelations");
  auto* all = app.add_subcommand("all-checks", "Fast run of every module's checks; writes checks and metadata");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (out) cfg.out = *out;
    if (format) cfg.format = *format == "json" ? Format::json : Format::csv;
    if (theta) cfg.ensemble.theta = *theta;
    if (alpha) cfg.ensemble.alpha = *alpha;
    if (m_param) cfg.ensemble.m_param = *m_param;
    if (levels) cfg.ensemble.levels = *levels;
    if (samples) cfg.sampler.samples = *samples;
    if (burn_in) cfg.sampler.burn_in = *burn_in;
    if (thin) cfg.sampler.thin = *thin;
    if (chains) cfg.sampler.chains = *chains;
    cfg.validate();

    std::string name;
    Outputs o;
    if (sample->parsed()) {
      name = "sample";
      o = run_sample(cfg);
    } else if (moments->parsed()) {
      name = "moments";
      o = run_moments(cfg);
    } else if (asym->parsed()) {
      name = "asymptotics";
      o = run_asymptotics(cfg);
    } else if (binf->parsed()) {
      name = "beta-infinity";
      o = run_beta_infinity(cfg);
    } else if (ho->parsed()) {
      name = "ho";
      o = run_ho(cfg);
    } else if (all->parsed()) {
      name = "all-checks";
      o = run_all_checks(cfg);
    }
    const int rc = write_outputs(name, cfg, o);
    long failed = 0;
    for (const auto& c : o.checks)
      if (!c.pass) {
        ++failed;
        std::cerr << "FAIL " << c.check << ": value " << format_double(c.value) << ", reference "
                  << format_double(c.reference) << ", tolerance " << format_double(c.tolerance) << '\n';
      }
    std::cout << name << ": " << o.checks.size() - failed << "/" << o.checks.size() << " checks passed, outputs in "
              << cfg.out << '\n';
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
