// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#ifndef JCORNERS_TOOLS_COMMANDS_HPP
#define JCORNERS_TOOLS_COMMANDS_HPP

#include "output.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace jc::cli {

struct EnsembleBlock {
  std::string theta = "1";
  std::string alpha = "2";
  int m_param = 3;
  int levels = 3;  // N
};

struct SamplerBlock {
  long long samples = 20000;
  int burn_in = 1000;
  int thin = 2;
  int chains = 1;
  int batches = 50;
};

struct HatBlock {
  double m_hat = 1.0;
  double alpha_hat = 1.0;
  double theta = 1.0;
  std::vector<double> n_hats{1.0, 0.5};
  int max_degree = 4;
  double boundary_max = 2.0;
  int boundary_points = 101;
  int exact_scale = 16;  // L for the finite-size comparison; 0 disables it
};

struct BetaInfBlock {
  double theta = 1e4;
  long long samples = 20000;
  std::vector<std::string> theta_grid{"100", "1000", "10000", "100000", "1000000"};
};

struct HOBlock {
  double theta = 0.5;
  int nodes = 40;
};

struct Tolerances {
  double z = 4.0;  // |z| bound for Monte Carlo comparisons
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::string out = "out";
  Format format = Format::csv;
  EnsembleBlock ensemble;
  SamplerBlock sampler;
  HatBlock hat;
  BetaInfBlock beta_infinity;
  HOBlock ho;
  Tolerances tol;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Fields present in the JSON file replace the defaults.
RunConfig load_config(const std::string& path);
nlohmann::ordered_json config_to_json(const RunConfig& c);

struct CheckRow {
  std::string check;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Outputs {
  std::vector<Table> tables;
  std::vector<CheckRow> checks;
};

Outputs run_sample(const RunConfig& c);
Outputs run_moments(const RunConfig& c);
Outputs run_asymptotics(const RunConfig& c);
Outputs run_beta_infinity(const RunConfig& c);
Outputs run_ho(const RunConfig& c);
Outputs run_all_checks(const RunConfig& c);

// Writes every table, checks.{csv,json} when there are checks, and
// metadata.json; returns 0 iff every check passed.
int write_outputs(const std::string& command, const RunConfig& c, const Outputs& o);

}  // namespace jc::cli

#endif
