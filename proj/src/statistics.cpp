// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jc {

namespace {

constexpr std::size_t kMinSamples = 100;

double mean_of(const std::vector<double>& x) { return std::accumulate(x.begin(), x.end(), 0.0) / x.size(); }

// Standard error of the mean of a series from nonoverlapping batches.
double batch_se(const std::vector<double>& x, int batches) {
  const std::size_t b = std::max<std::size_t>(2, static_cast<std::size_t>(batches));
  const std::size_t size = x.size() / b;
  if (size == 0) throw DomainError("not enough samples for batch means");
  std::vector<double> bm(b);
  for (std::size_t k = 0; k < b; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < size; ++j) s += x[k * size + j];
    bm[k] = s / size;
  }
  const double m = mean_of(bm);
  double v = 0.0;
  for (double y : bm) v += (y - m) * (y - m);
  v /= (b - 1);
  return std::sqrt(v / b);
}

void check_length(std::size_t n) {
  if (n < kMinSamples) throw DomainError("at least 100 samples are required");
}

double quantile_sorted(const std::vector<double>& v, double q) {
  const double h = (v.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - lo) * (v[hi] - v[lo]);
}

}  // namespace

MomentEstimate batch_mean(const std::vector<double>& x, int batches) {
  check_length(x.size());
  MomentEstimate e;
  e.raw_count = static_cast<long long>(x.size());
  e.mean = mean_of(x);
  e.std_error = batch_se(x, batches);
  double var = 0.0;
  for (double v : x) var += (v - e.mean) * (v - e.mean);
  var /= (x.size() - 1);
  e.n_effective = e.std_error > 0.0 ? std::min<double>(static_cast<double>(x.size()), var / (e.std_error * e.std_error))
                                    : static_cast<double>(x.size());
  return e;
}

MomentEstimate batch_covariance(const std::vector<double>& x, const std::vector<double>& y, int batches) {
  if (x.size() != y.size()) throw DomainError("series lengths differ");
  check_length(x.size());
  const double mx = mean_of(x);
  const double my = mean_of(y);
  std::vector<double> prod(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) prod[j] = (x[j] - mx) * (y[j] - my);
  MomentEstimate e = batch_mean(prod, batches);
  e.mean *= static_cast<double>(x.size()) / (x.size() - 1);
  return e;
}

ObservableEstimates estimate_observables(const std::vector<std::vector<double>>& series, int batches) {
  ObservableEstimates out;
  const std::size_t k = series.size();
  for (const auto& s : series) out.means.push_back(batch_mean(s, batches));
  out.covariance.assign(k, std::vector<MomentEstimate>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) out.covariance[a][b] = out.covariance[b][a] = batch_covariance(series[a], series[b], batches);
  return out;
}

ObservableEstimates estimate_observables(const std::vector<CornersArray>& samples,
                                         const std::vector<ObservableSpec>& specs, int m_param, int batches) {
  check_length(samples.size());
  std::vector<std::vector<double>> series(specs.size(), std::vector<double>(samples.size()));
  for (std::size_t s = 0; s < samples.size(); ++s)
    for (std::size_t j = 0; j < specs.size(); ++j)
      series[j][s] = observable_value(specs[j], samples[s].level(specs[j].level), m_param);
  return estimate_observables(series, batches);
}

std::vector<CumulantEstimate> empirical_cumulants(const std::vector<std::vector<double>>& series, int order,
                                                  int batches) {
  if (order < 2 || order > 4) throw DomainError("cumulant order must be 2, 3 or 4");
  std::vector<CumulantEstimate> out;
  for (const auto& x : series) {
    check_length(x.size());
    const double n = static_cast<double>(x.size());
    const double mu = mean_of(x);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
      const double z = v - mu;
      const double z2 = z * z;
      m2 += z2;
      m3 += z2 * z;
      m4 += z2 * z2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    CumulantEstimate c;
    c.order = order;
    std::vector<double> inf(x.size());
    std::vector<double> inf_std(x.size());
    if (order == 2) {
      c.value = n / (n - 1) * m2;
      c.standardized = 1.0;
      for (std::size_t j = 0; j < x.size(); ++j) inf[j] = (x[j] - mu) * (x[j] - mu) - m2;
      c.std_error = m2 > 0.0 ? batch_se(inf, batches) : 0.0;
      out.push_back(c);
      continue;
    }
    const double sd = std::sqrt(m2);
    if (order == 3) {
      c.value = n * n / ((n - 1) * (n - 2)) * m3;
      const double skew = m3 / (sd * sd * sd);
      c.standardized = c.value / std::pow(n / (n - 1) * m2, 1.5);
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double z = x[j] - mu;
        const double u = z / sd;
        inf[j] = z * z * z - m3 - 3.0 * m2 * z;
        inf_std[j] = u * u * u - skew - 3.0 * u - 1.5 * skew * (u * u - 1.0);
      }
    } else {
      const double k2 = n / (n - 1) * m2;
      c.value = n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3));
      c.standardized = c.value / (k2 * k2);
      const double g = m4 / (m2 * m2);
      const double s3 = m3 / (sd * sd * sd);
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double z = x[j] - mu;
        const double u = z / sd;
        const double if_m2 = z * z - m2;
        inf[j] = z * z * z * z - m4 - 4.0 * m3 * z - 6.0 * m2 * if_m2;
        inf_std[j] = u * u * u * u - g - 4.0 * s3 * u - 2.0 * g * (u * u - 1.0);
      }
    }
    if (m2 > 0.0) {
      c.std_error = batch_se(inf, batches);
      c.standardized_se = batch_se(inf_std, batches);
    } else {
      c.value = c.standardized = 0.0;
    }
    out.push_back(c);
  }
  return out;
}

std::pair<double, double> empirical_support(const std::vector<CornersArray>& samples, int level, double quantile) {
  if (!(quantile > 0.0 && quantile < 0.5)) throw DomainError("quantile must lie in (0, 0.5)");
  if (samples.empty()) throw DomainError("no samples");
  std::vector<double> lows, highs;
  for (const auto& c : samples) {
    const Level& v = c.level(level);
    lows.push_back(v.front());
    highs.push_back(v.back());
  }
  std::sort(lows.begin(), lows.end());
  std::sort(highs.begin(), highs.end());
  return {quantile_sorted(lows, quantile), quantile_sorted(highs, 1.0 - quantile)};
}

}  // namespace jc
