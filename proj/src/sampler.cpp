// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/sampler.hpp"

#include "jcorners/beta_infinity.hpp"
#include "jcorners/density.hpp"

#include <boost/random/beta_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace jc {

void SamplerConfig::validate() const {
  if (burn_in < 0) throw DomainError("burn_in must be >= 0");
  if (thin < 1) throw DomainError("thin must be >= 1");
  if (!(slice_expand > 0.0)) throw DomainError("slice_expand must be positive");
  if (max_slice_steps < 1) throw DomainError("max_slice_steps must be >= 1");
}

namespace {

// Midpoints of the admissible intervals for level n given level n+1.
Level midpoints_below(const Level& upper, int length) {
  Level z(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    const double right = (static_cast<std::size_t>(i) + 1 < upper.size()) ? upper[i + 1] : 1.0;
    z[i] = 0.5 * (upper[i] + right);
  }
  return z;
}

}  // namespace

void update_site(const EnsembleParams& p, int big_n, ChainState& st, const SamplerConfig& cfg, int n, int i) {
  CornersArray& c = st.corners;
  const auto [lo, hi] = site_interval(p.m_param, big_n, c, n, i);
  double& site = c.level(n)[static_cast<std::size_t>(i - 1)];
  const double x0 = site;
  auto logf = [&](double x) { return log_site_conditional(p, big_n, c, n, i, x); };

  const double level = logf(x0) + std::log(st.rng.uniform01());
  const double width = std::min(cfg.slice_expand, 1.0) * (hi - lo);
  const double start = x0 - st.rng.uniform01() * width;
  double left = std::max(lo, start);
  double right = std::min(hi, start + width);
  const double guard = std::min(1e-14, 1e-6 * (hi - lo));
  int steps = 0;
  auto fail = [&]() {
    std::ostringstream msg;
    msg << "slice sampler exceeded " << cfg.max_slice_steps << " steps at level " << n << ", index " << i
        << ", interval (" << lo << ", " << hi << ")";
    throw NumericError(msg.str());
  };
  while (left > lo && logf(left) > level) {
    left = std::max(lo, left - width);
    if (++steps > cfg.max_slice_steps) fail();
  }
  while (right < hi && logf(right) > level) {
    right = std::min(hi, right + width);
    if (++steps > cfg.max_slice_steps) fail();
  }
  while (true) {
    if (++steps > cfg.max_slice_steps) fail();
    const double x = left + st.rng.uniform01() * (right - left);
    if (x - lo < guard || hi - x < guard) continue;
    if (logf(x) > level) {
      site = x;
      return;
    }
    if (x < x0)
      left = x;
    else
      right = x;
  }
}

ChainState init_chain(const EnsembleParams& p, int big_n, const SamplerConfig& cfg, std::uint64_t stream) {
  p.validate();
  cfg.validate();
  if (big_n < 1) throw DomainError("big_n must be >= 1");
  ChainState st;
  st.rng = Philox4x32(cfg.seed, stream);
  st.corners.levels.resize(static_cast<std::size_t>(big_n));
  if (big_n == 1) {
    boost::random::beta_distribution<double> beta(p.theta * p.alpha, p.theta * p.m_param);
    // the draw can round onto the boundary for extreme parameters
    const double r = std::clamp(beta(st.rng), std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
    st.corners.level(1) = {r};
  } else {
    st.corners.level(big_n) = jacobi_roots(big_n, p.m_param, p.alpha).roots;
    for (int n = big_n - 1; n >= 1; --n)
      st.corners.level(n) = midpoints_below(st.corners.level(n + 1), level_length(n, p.m_param));
  }
  for (int s = 0; s < cfg.burn_in; ++s) gibbs_sweep(p, big_n, st, cfg);
  return st;
}

void gibbs_sweep(const EnsembleParams& p, int big_n, ChainState& st, const SamplerConfig& cfg) {
  if (cfg.random_scan) {
    int sites = 0;
    for (int n = 1; n <= big_n; ++n) sites += level_length(n, p.m_param);
    for (int s = 0; s < sites; ++s) {
      auto pick = static_cast<int>(st.rng.uniform01() * sites);
      int n = 1;
      while (pick >= level_length(n, p.m_param)) pick -= level_length(n++, p.m_param);
      update_site(p, big_n, st, cfg, n, pick + 1);
    }
  } else {
    for (int n = big_n; n >= 1; --n)
      for (int i = 1; i <= level_length(n, p.m_param); ++i) update_site(p, big_n, st, cfg, n, i);
  }
  ++st.sweeps_done;
}

void stream_corners(const EnsembleParams& p, int big_n, const SamplerConfig& cfg, long long count,
                    const std::function<void(long long, const CornersArray&)>& sink, std::uint64_t stream) {
  if (count < 0) throw DomainError("count must be >= 0");
  if (count == 0) return;
  ChainState st = init_chain(p, big_n, cfg, stream);
  for (long long s = 0; s < count; ++s) {
    for (int t = 0; t < cfg.thin; ++t) gibbs_sweep(p, big_n, st, cfg);
    sink(s, st.corners);
  }
}

std::vector<CornersArray> sample_corners(const EnsembleParams& p, int big_n, const SamplerConfig& cfg,
                                         long long count) {
  std::vector<CornersArray> out;
  out.reserve(static_cast<std::size_t>(std::max(0LL, count)));
  stream_corners(p, big_n, cfg, count, [&](long long, const CornersArray& c) { out.push_back(c); });
  return out;
}

int thread_count() {
  if (const char* env = std::getenv("JCORNERS_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<double>> observable_series(const EnsembleParams& p, int big_n, const SamplerConfig& cfg,
                                                   long long count, const std::vector<ObservableSpec>& specs,
                                                   int chains) {
  if (chains < 1) throw DomainError("chains must be >= 1");
  for (const auto& s : specs)
    if (s.level < 1 || s.level > big_n) throw DomainError("observable level outside 1..N");
  const long long per_chain = count / chains;
  std::vector<std::vector<double>> series(specs.size(), std::vector<double>(static_cast<std::size_t>(per_chain * chains)));

  auto run_chain = [&](int chain) {
    stream_corners(
        p, big_n, cfg, per_chain,
        [&](long long s, const CornersArray& c) {
          const auto row = static_cast<std::size_t>(chain * per_chain + s);
          for (std::size_t j = 0; j < specs.size(); ++j)
            series[j][row] = observable_value(specs[j], c.level(specs[j].level), p.m_param);
        },
        static_cast<std::uint64_t>(chain));
  };

  const int workers = std::min(chains, thread_count());
  if (workers <= 1) {
    for (int c = 0; c < chains; ++c) run_chain(c);
    return series;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chains));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int c = w; c < chains; c += workers) {
        try {
          run_chain(c);
        } catch (...) {
          errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return series;
}

}  // namespace jc
