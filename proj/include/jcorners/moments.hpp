// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// Exact finite-size moments of e_k(N) and p_k(N) through the difference
// operators D^k_N acting on prod H(y_i), evaluated at y_i = theta (1 - i).

#ifndef JCORNERS_MOMENTS_HPP
#define JCORNERS_MOMENTS_HPP

#include "jcorners/core.hpp"

#include <map>
#include <utility>
#include <vector>

namespace jc {

struct OperatorEntry {
  int level = 1;   // N_j
  int degree = 1;  // k_j
};

// entries[0] is applied first and must carry the largest level.
using OperatorChain = std::vector<OperatorEntry>;

void validate_chain(const OperatorChain& chain);

enum class Arithmetic { automatic, exact, binary64, mp256 };

struct MomentOptions {
  Arithmetic mode = Arithmetic::automatic;
  int exact_max_level = 12;                  // automatic: exact up to this N_1
  Arithmetic float_mode = Arithmetic::mp256;  // automatic: used above it
  std::vector<long> direction;               // perturbation direction u_i; empty means u_i = i^2
  int max_series_order = 24;
};

// Evaluated right-hand side.  value is always set; exact is set in exact mode.
struct ExactScalar {
  double value = 0.0;
  bool is_exact = false;
  Rational exact{0};
  bool perturbed = false;  // the epsilon expansion was needed
  int series_order = 1;    // number of epsilon coefficients carried
};

// H(y-1)/H(y) = (y - theta alpha)/(y - theta alpha - M theta).
Rational h_ratio(const ExactParams& p, const Rational& y);
double h_ratio(const EnsembleParams& p, double y);

ExactScalar apply_operator_chain(const ExactParams& p, const OperatorChain& chain, const MomentOptions& opt = {});
ExactScalar apply_operator_chain(const EnsembleParams& p, const OperatorChain& chain, const MomentOptions& opt = {});

// Specs are (N_i, k_i); any order.
using LevelDegree = std::pair<int, int>;

ExactScalar expectation_e(const ExactParams& p, const std::vector<LevelDegree>& specs, const MomentOptions& opt = {});
ExactScalar expectation_e(const EnsembleParams& p, const std::vector<LevelDegree>& specs,
                          const MomentOptions& opt = {});

// Partitions are stored in nonincreasing order.
using Partition = std::vector<int>;
std::map<Partition, long long> pe_coefficients(int k);

ExactScalar expectation_p(const ExactParams& p, const std::vector<LevelDegree>& specs, const MomentOptions& opt = {});
ExactScalar expectation_p(const EnsembleParams& p, const std::vector<LevelDegree>& specs,
                          const MomentOptions& opt = {});

ExactScalar covariance_p(const ExactParams& p, LevelDegree a, LevelDegree b, const MomentOptions& opt = {});
ExactScalar covariance_p(const EnsembleParams& p, LevelDegree a, LevelDegree b, const MomentOptions& opt = {});
ExactScalar covariance_e(const ExactParams& p, LevelDegree a, LevelDegree b, const MomentOptions& opt = {});

// Linear combination of operator chains, evaluated with one shared cache.
struct ChainTerm {
  long long coefficient = 1;
  OperatorChain chain;  // empty chain means the constant 1
};
ExactScalar evaluate_combination(const ExactParams& p, const std::vector<ChainTerm>& terms,
                                 const MomentOptions& opt = {});
ExactScalar evaluate_combination(const EnsembleParams& p, const std::vector<ChainTerm>& terms,
                                 const MomentOptions& opt = {});

// Expansion of E prod p_{k_i}(N_i) into e-chains.
std::vector<ChainTerm> power_sum_terms(const std::vector<LevelDegree>& specs);

}  // namespace jc

#endif
