// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// Site-wise Gibbs sampler for the corners process and Monte Carlo estimators
// with batch-means standard errors.

#ifndef JCORNERS_SAMPLER_HPP
#define JCORNERS_SAMPLER_HPP

#include "jcorners/core.hpp"
#include "jcorners/rng.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace jc {

struct SamplerConfig {
  std::uint64_t seed = 0;
  int burn_in = 500;
  int thin = 1;
  double slice_expand = 1.0;  // initial bracket as a fraction of the site interval
  int max_slice_steps = 200;
  bool random_scan = false;

  void validate() const;
};

struct ChainState {
  CornersArray corners;
  long long sweeps_done = 0;
  Philox4x32 rng;
};

// For N = 1 the state is an exact Beta(theta alpha, theta M) draw.  Otherwise
// level N starts at the Jacobi roots and each lower level at the midpoints of
// its admissible intervals; burn-in sweeps are applied before returning.
ChainState init_chain(const EnsembleParams& p, int big_n, const SamplerConfig& cfg, std::uint64_t stream = 0);

// One slice-sampling update of site (n, i), 1-based.
void update_site(const EnsembleParams& p, int big_n, ChainState& state, const SamplerConfig& cfg, int n, int i);

void gibbs_sweep(const EnsembleParams& p, int big_n, ChainState& state, const SamplerConfig& cfg);

std::vector<CornersArray> sample_corners(const EnsembleParams& p, int big_n, const SamplerConfig& cfg, long long count);

// Streams `count` retained states of one chain into sink(sample_index, state).
void stream_corners(const EnsembleParams& p, int big_n, const SamplerConfig& cfg, long long count,
                    const std::function<void(long long, const CornersArray&)>& sink, std::uint64_t stream = 0);

// Worker threads: JCORNERS_THREADS if set, else the hardware count.
int thread_count();

// Observable series from `chains` independent chains (stream = chain index),
// each contributing count/chains samples in chain-major order.  Result is
// indexed [spec][sample] and does not depend on the number of threads.
std::vector<std::vector<double>> observable_series(const EnsembleParams& p, int big_n, const SamplerConfig& cfg,
                                                   long long count, const std::vector<ObservableSpec>& specs,
                                                   int chains = 1);

// ---------------------------------------------------------------------------
// estimators

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double n_effective = 0.0;
  long long raw_count = 0;
};

constexpr int kDefaultBatches = 50;

// Batch-means estimate of the mean of a series.
MomentEstimate batch_mean(const std::vector<double>& x, int batches = kDefaultBatches);

// Covariance with a batch-means error from the centred products.
MomentEstimate batch_covariance(const std::vector<double>& x, const std::vector<double>& y,
                                int batches = kDefaultBatches);

struct ObservableEstimates {
  std::vector<MomentEstimate> means;
  std::vector<std::vector<MomentEstimate>> covariance;
};

ObservableEstimates estimate_observables(const std::vector<std::vector<double>>& series,
                                         int batches = kDefaultBatches);
ObservableEstimates estimate_observables(const std::vector<CornersArray>& samples,
                                         const std::vector<ObservableSpec>& specs, int m_param,
                                         int batches = kDefaultBatches);

struct CumulantEstimate {
  int order = 2;
  double value = 0.0;         // k-statistic
  double std_error = 0.0;
  double standardized = 0.0;  // k_3/k_2^{3/2} or k_4/k_2^2; 1 for order 2
  double standardized_se = 0.0;
};

// Univariate cumulant of the given order (2, 3 or 4) for every series.
std::vector<CumulantEstimate> empirical_cumulants(const std::vector<std::vector<double>>& series, int order,
                                                  int batches = kDefaultBatches);

// (q-quantile of the smallest particle, (1-q)-quantile of the largest) at a level.
std::pair<double, double> empirical_support(const std::vector<CornersArray>& samples, int level, double quantile);

}  // namespace jc

#endif
