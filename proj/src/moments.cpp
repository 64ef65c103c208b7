// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/moments.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <unordered_map>

namespace jc {

namespace {

namespace mp = boost::multiprecision;
using Mp256 = mp::number<mp::mpfr_float_backend<77>, mp::et_off>;

// ---------------------------------------------------------------------------
// scalar policies

template <class T>
struct Num;

template <>
struct Num<Rational> {
  static Rational from(const Rational& q) { return q; }
  static Rational from(double x) { return Rational(x); }
  static bool is_zero(const Rational& x, const Rational&) { return x == 0; }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static bool cancels(const Rational& sum, const Rational&) { return sum == 0; }
};

template <>
struct Num<double> {
  static double from(const Rational& q) { return q.convert_to<double>(); }
  static double from(double x) { return x; }
  static bool is_zero(double x, double scale) { return std::fabs(x) <= 64.0 * std::numeric_limits<double>::epsilon() * scale; }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static bool cancels(double sum, double abs_sum) { return std::fabs(sum) <= 1e-7 * abs_sum; }
};

template <>
struct Num<Mp256> {
  static Mp256 from(const Rational& q) {
    return Mp256(mp::mpz_int(mp::numerator(q))) / Mp256(mp::mpz_int(mp::denominator(q)));
  }
  static Mp256 from(double x) { return Mp256(x); }
  static bool is_zero(const Mp256& x, const Mp256& scale) { return mp::abs(x) <= Mp256(1e-70) * scale; }
  static Mp256 abs(const Mp256& x) { return mp::abs(x); }
  static double to_double(const Mp256& x) { return x.convert_to<double>(); }
  static bool cancels(const Mp256& sum, const Mp256& abs_sum) { return mp::abs(sum) <= Mp256(1e-40) * abs_sum; }
};

struct NeedMoreTerms {};

// ---------------------------------------------------------------------------
// series pieces

// eps^v * c * exp(sum_{n>=1} (-1)^{n+1} s_n eps^n / n), s_n a power-sum difference
template <class T, int K>
struct LogFactor {
  int v = 0;
  T c{1};
  std::array<T, K> s{};

  void mul(const LogFactor& o) {
    v += o.v;
    c *= o.c;
    for (int n = 1; n < K; ++n) s[n] += o.s[n];
  }
  void div(const LogFactor& o) {
    v -= o.v;
    c /= o.c;
    for (int n = 1; n < K; ++n) s[n] -= o.s[n];
  }
};

template <class T, int K>
struct Taylor {
  std::array<T, K> c{};
  int prec = K;
};

// factor (a + b eps)^sign, a known to vanish when a_zero
template <class T, int K>
void push_linear(LogFactor<T, K>& f, const T& a, long b, bool a_zero, bool numerator) {
  if (a_zero) {
    f.v += numerator ? 1 : -1;
    if (numerator)
      f.c *= T(b);
    else
      f.c /= T(b);
    return;
  }
  if (numerator)
    f.c *= a;
  else
    f.c /= a;
  if constexpr (K > 1) {
    const T ratio = T(b) / a;
    T pw = ratio;
    for (int n = 1; n < K; ++n) {
      if (numerator)
        f.s[n] += pw;
      else
        f.s[n] -= pw;
      pw *= ratio;
    }
  }
}

template <class T, int K>
std::array<T, K> expand(const LogFactor<T, K>& f) {
  std::array<T, K> e{};
  e[0] = T(1);
  for (int m = 1; m < K; ++m) {
    T acc(0);
    for (int n = 1; n <= m; ++n) {
      if (n % 2 == 1)
        acc += f.s[n] * e[m - n];
      else
        acc -= f.s[n] * e[m - n];
    }
    e[m] = acc / T(m);
  }
  for (int m = 0; m < K; ++m) e[m] *= f.c;
  return e;
}

// ---------------------------------------------------------------------------
// recursion over shift vectors

template <class T, int K>
class Engine {
 public:
  Engine(const T& theta, const T& theta_alpha, const T& theta_m, int n_max, std::vector<long> dir)
      : theta_(theta), ta_(theta_alpha), tam_(theta_alpha + theta_m), n_max_(n_max), dir_(std::move(dir)) {}

  T evaluate(const OperatorChain& chain) {
    if (chain.empty()) return T(1);
    std::vector<Cache*> caches(chain.size() + 1, nullptr);
    std::string prefix;
    for (std::size_t j = 0; j < chain.size(); ++j) {
      prefix += std::to_string(chain[j].level) + "." + std::to_string(chain[j].degree) + "/";
      auto& slot = caches_[prefix];
      if (!slot) slot = std::make_unique<Cache>();
      caches[j + 1] = slot.get();
    }
    std::string shift(static_cast<std::size_t>(n_max_), '\0');
    const Taylor<T, K>& t = value(chain, caches, static_cast<int>(chain.size()), shift);
    if (t.prec < 1) throw NeedMoreTerms{};
    return t.c[0];
  }

  bool perturbed() const { return perturbed_; }

 private:
  using Cache = std::unordered_map<std::string, Taylor<T, K>>;

  const Taylor<T, K>& value(const OperatorChain& chain, const std::vector<Cache*>& caches, int depth,
                            const std::string& shift) {
    static const Taylor<T, K> one = [] {
      Taylor<T, K> t;
      t.c[0] = T(1);
      return t;
    }();
    if (depth == 0) return one;
    Cache& cache = *caches[depth];
    auto it = cache.find(shift);
    if (it != cache.end()) return it->second;

    const int n = chain[depth - 1].level;
    const int k = chain[depth - 1].degree;

    // y_i at eps = 0, and the pairwise factors r_ij = (y_i - y_j - theta)/(y_i - y_j)
    std::vector<T> y(n);
    for (int i = 0; i < n; ++i) y[i] = theta_ * T(-i) - T(static_cast<int>(shift[i]));
    std::vector<LogFactor<T, K>> r(static_cast<std::size_t>(n) * n);
    std::vector<LogFactor<T, K>> q(n);
    for (int i = 0; i < n; ++i) {
      LogFactor<T, K>& qi = q[i];
      const T hn = y[i] - ta_;
      const T hd = y[i] - tam_;
      push_linear(qi, hn, dir_[i], false, true);
      push_linear(qi, hd, dir_[i], false, false);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        LogFactor<T, K>& f = r[static_cast<std::size_t>(i) * n + j];
        const long d = dir_[i] - dir_[j];
        const T delta = y[i] - y[j];
        const T num = delta - theta_;
        // scale for the zero test: |theta (j - i)| + |s_j - s_i|
        const T scale = Num<T>::abs(theta_ * T(j - i)) + T(std::abs(shift[j] - shift[i])) + Num<T>::abs(theta_);
        push_linear(f, num, d, Num<T>::is_zero(num, scale), true);
        push_linear(f, delta, d, Num<T>::is_zero(delta, scale), false);
        qi.mul(f);
      }
    }

    const int off = k * (n - k);
    std::vector<T> acc(static_cast<std::size_t>(off + K), T(0));
    std::vector<T> mag(static_cast<std::size_t>(off), T(0));
    int absprec = std::numeric_limits<int>::max();
    int vmin = 0;

    std::vector<int> idx(k);
    for (int a = 0; a < k; ++a) idx[a] = a;
    std::string child_shift = shift;
    while (true) {
      LogFactor<T, K> t = q[idx[0]];
      for (int a = 1; a < k; ++a) t.mul(q[idx[a]]);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          if (a != b) t.div(r[static_cast<std::size_t>(idx[a]) * n + idx[b]]);

      for (int a = 0; a < k; ++a) ++child_shift[idx[a]];
      const Taylor<T, K>& child = value(chain, caches, depth - 1, child_shift);
      for (int a = 0; a < k; ++a) --child_shift[idx[a]];

      const int p = std::min(K, child.prec);
      absprec = std::min(absprec, t.v + p);
      if (t.v < 0) perturbed_ = true;
      if (t.v < K) {
        vmin = std::min(vmin, t.v);
        const std::array<T, K> e = expand(t);
        for (int m = 0; m < p && t.v + m < K; ++m) {
          T prod(0);
          for (int a = 0; a <= m; ++a) prod += e[a] * child.c[m - a];
          acc[static_cast<std::size_t>(off + t.v + m)] += prod;
          if (t.v + m < 0) mag[static_cast<std::size_t>(off + t.v + m)] += Num<T>::abs(prod);
        }
      }

      int a = k - 1;
      while (a >= 0 && idx[a] == n - k + a) --a;
      if (a < 0) break;
      ++idx[a];
      for (int b = a + 1; b < k; ++b) idx[b] = idx[b - 1] + 1;
    }

    if (absprec < 1) throw NeedMoreTerms{};
    for (int m = vmin; m < 0; ++m) {
      const auto pos = static_cast<std::size_t>(off + m);
      if (!Num<T>::cancels(acc[pos], mag[pos]))
        throw NumericError("unresolved pole in difference-operator evaluation at order eps^" + std::to_string(m));
    }
    Taylor<T, K> out;
    out.prec = std::min(absprec, K);
    for (int m = 0; m < out.prec; ++m) out.c[m] = acc[static_cast<std::size_t>(off + m)];
    return cache.emplace(shift, std::move(out)).first->second;
  }

  T theta_;
  T ta_;
  T tam_;
  int n_max_;
  std::vector<long> dir_;
  bool perturbed_ = false;
  std::unordered_map<std::string, std::unique_ptr<Cache>> caches_;
};

// ---------------------------------------------------------------------------
// driver

struct Problem {
  std::vector<std::vector<ChainTerm>> combos;
  int n_max = 1;
};

int chain_max_level(const std::vector<std::vector<ChainTerm>>& combos) {
  int n = 1;
  for (const auto& c : combos)
    for (const auto& t : c)
      for (const auto& e : t.chain) n = std::max(n, e.level);
  return n;
}

std::vector<long> direction_for(const MomentOptions& opt, int n) {
  std::vector<long> d(n);
  if (opt.direction.empty()) {
    for (int i = 0; i < n; ++i) d[i] = static_cast<long>(i + 1) * (i + 1);
    return d;
  }
  if (static_cast<int>(opt.direction.size()) < n) throw DomainError("perturbation direction shorter than N_1");
  for (int i = 0; i < n; ++i) d[i] = opt.direction[i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (d[i] == d[j]) throw DomainError("perturbation direction must have distinct entries");
  return d;
}

template <class T, int K, class Finish>
T run_fixed(const T& theta, const T& alpha, int m, const Problem& pr, const std::vector<long>& dir, bool& perturbed,
            Finish&& finish) {
  Engine<T, K> eng(theta, theta * alpha, theta * T(m), pr.n_max, dir);
  std::vector<T> values;
  values.reserve(pr.combos.size());
  for (const auto& combo : pr.combos) {
    T s(0);
    for (const auto& term : combo) s += T(term.coefficient) * eng.evaluate(term.chain);
    values.push_back(s);
  }
  perturbed = eng.perturbed();
  return finish(values);
}

template <class T, class Finish>
ExactScalar run_typed(const T& theta, const T& alpha, int m, const Problem& pr, const MomentOptions& opt,
                      Finish&& finish) {
  const std::vector<long> dir = direction_for(opt, pr.n_max);
  bool perturbed = false;
  ExactScalar out;
  auto fill = [&](const T& v, int order) {
    out.value = Num<T>::to_double(v);
    out.perturbed = perturbed;
    out.series_order = order;
    if constexpr (std::is_same_v<T, Rational>) {
      out.is_exact = true;
      out.exact = v;
    }
    return out;
  };
  try {
    return fill(run_fixed<T, 1>(theta, alpha, m, pr, dir, perturbed, finish), 1);
  } catch (const NeedMoreTerms&) {
  }
  if (opt.max_series_order >= 3) try {
      return fill(run_fixed<T, 3>(theta, alpha, m, pr, dir, perturbed, finish), 3);
    } catch (const NeedMoreTerms&) {
    }
  if (opt.max_series_order >= 6) try {
      return fill(run_fixed<T, 6>(theta, alpha, m, pr, dir, perturbed, finish), 6);
    } catch (const NeedMoreTerms&) {
    }
  if (opt.max_series_order >= 12) try {
      return fill(run_fixed<T, 12>(theta, alpha, m, pr, dir, perturbed, finish), 12);
    } catch (const NeedMoreTerms&) {
    }
  if (opt.max_series_order >= 24) try {
      return fill(run_fixed<T, 24>(theta, alpha, m, pr, dir, perturbed, finish), 24);
    } catch (const NeedMoreTerms&) {
    }
  throw NumericError("epsilon expansion did not resolve the poles within the allowed series order");
}

Arithmetic resolve_mode(const MomentOptions& opt, int n_max, bool have_exact) {
  Arithmetic a = opt.mode;
  if (a == Arithmetic::automatic) a = (have_exact && n_max <= opt.exact_max_level) ? Arithmetic::exact : opt.float_mode;
  if (a == Arithmetic::automatic) a = Arithmetic::mp256;
  if (a == Arithmetic::exact && !have_exact) throw DomainError("exact arithmetic needs rational parameters");
  return a;
}

template <class Finish>
ExactScalar solve(const ExactParams* ep, const EnsembleParams* fp, const Problem& pr, const MomentOptions& opt,
                  Finish&& finish) {
  const Arithmetic mode = resolve_mode(opt, pr.n_max, ep != nullptr);
  const int m = ep ? ep->m_param : fp->m_param;
  switch (mode) {
    case Arithmetic::exact:
      return run_typed<Rational>(ep->theta, ep->alpha, m, pr, opt, finish);
    case Arithmetic::binary64:
      if (ep) return run_typed<double>(Num<double>::from(ep->theta), Num<double>::from(ep->alpha), m, pr, opt, finish);
      return run_typed<double>(fp->theta, fp->alpha, m, pr, opt, finish);
    default:
      if (ep) return run_typed<Mp256>(Num<Mp256>::from(ep->theta), Num<Mp256>::from(ep->alpha), m, pr, opt, finish);
      return run_typed<Mp256>(Mp256(fp->theta), Mp256(fp->alpha), m, pr, opt, finish);
  }
}

OperatorChain chain_from_specs(std::vector<LevelDegree> specs) {
  std::sort(specs.begin(), specs.end(), [](const LevelDegree& a, const LevelDegree& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  OperatorChain c;
  for (const auto& s : specs) c.push_back({s.first, s.second});
  return c;
}

void check_specs(const std::vector<LevelDegree>& specs, bool elementary) {
  if (specs.size() > 4) throw DomainError("at most 4 observables per moment (practical bound)");
  for (const auto& s : specs) {
    if (s.first < 1) throw DomainError("level must be >= 1");
    if (s.second < 1) throw DomainError("degree must be >= 1");
    if (s.second > 6) throw DomainError("degree above the practical bound 6");
    if (elementary && s.second > s.first) throw DomainError("e_k(N) needs k <= N");
  }
}

Problem single(std::vector<ChainTerm> terms) {
  Problem pr;
  pr.combos.push_back(std::move(terms));
  pr.n_max = chain_max_level(pr.combos);
  return pr;
}

auto first_value = [](const auto& v) { return v[0]; };

template <class P>
ExactScalar expectation_e_impl(const P& p, const std::vector<LevelDegree>& specs, const MomentOptions& opt) {
  check_specs(specs, true);
  return evaluate_combination(p, {ChainTerm{1, chain_from_specs(specs)}}, opt);
}

template <class P>
ExactScalar expectation_p_impl(const P& p, const std::vector<LevelDegree>& specs, const MomentOptions& opt) {
  check_specs(specs, false);
  return evaluate_combination(p, power_sum_terms(specs), opt);
}

}  // namespace

// ---------------------------------------------------------------------------

void validate_chain(const OperatorChain& chain) {
  for (std::size_t j = 0; j < chain.size(); ++j) {
    const auto& e = chain[j];
    if (e.level < 1) throw DomainError("operator level must be >= 1");
    if (e.degree < 1 || e.degree > e.level) throw DomainError("operator degree must satisfy 1 <= k <= N");
    if (j > 0 && e.level > chain[j - 1].level) throw DomainError("operator levels must be nonincreasing");
  }
}

Rational h_ratio(const ExactParams& p, const Rational& y) {
  const Rational ta = p.theta * p.alpha;
  const Rational den = y - ta - p.theta * p.m_param;
  if (den == 0) throw DomainError("h_ratio: pole at y = theta alpha + M theta");
  return (y - ta) / den;
}

double h_ratio(const EnsembleParams& p, double y) {
  const double ta = p.theta * p.alpha;
  const double den = y - ta - p.theta * p.m_param;
  if (den == 0.0) throw DomainError("h_ratio: pole at y = theta alpha + M theta");
  return (y - ta) / den;
}

ExactScalar evaluate_combination(const ExactParams& p, const std::vector<ChainTerm>& terms, const MomentOptions& opt) {
  p.validate();
  for (const auto& t : terms) validate_chain(t.chain);
  return solve(&p, nullptr, single(terms), opt, first_value);
}

ExactScalar evaluate_combination(const EnsembleParams& p, const std::vector<ChainTerm>& terms,
                                 const MomentOptions& opt) {
  p.validate();
  for (const auto& t : terms) validate_chain(t.chain);
  return solve(nullptr, &p, single(terms), opt, first_value);
}

ExactScalar apply_operator_chain(const ExactParams& p, const OperatorChain& chain, const MomentOptions& opt) {
  return evaluate_combination(p, {ChainTerm{1, chain}}, opt);
}

ExactScalar apply_operator_chain(const EnsembleParams& p, const OperatorChain& chain, const MomentOptions& opt) {
  return evaluate_combination(p, {ChainTerm{1, chain}}, opt);
}

ExactScalar expectation_e(const ExactParams& p, const std::vector<LevelDegree>& specs, const MomentOptions& opt) {
  return expectation_e_impl(p, specs, opt);
}

ExactScalar expectation_e(const EnsembleParams& p, const std::vector<LevelDegree>& specs, const MomentOptions& opt) {
  return expectation_e_impl(p, specs, opt);
}

std::map<Partition, long long> pe_coefficients(int k) {
  if (k < 1) throw DomainError("pe_coefficients: k must be >= 1");
  // Newton: p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
  std::vector<std::map<Partition, long long>> p(static_cast<std::size_t>(k) + 1);
  for (int n = 1; n <= k; ++n) {
    auto& cur = p[n];
    for (int i = 1; i < n; ++i) {
      const long long sgn = (i % 2 == 1) ? 1 : -1;
      for (const auto& [mu, c] : p[n - i]) {
        Partition nu = mu;
        nu.push_back(i);
        std::sort(nu.begin(), nu.end(), std::greater<int>());
        cur[nu] += sgn * c;
      }
    }
    cur[Partition{n}] += ((n % 2 == 1) ? 1 : -1) * static_cast<long long>(n);
    for (auto it = cur.begin(); it != cur.end();) it = it->second == 0 ? cur.erase(it) : std::next(it);
  }
  return p[k];
}

std::vector<ChainTerm> power_sum_terms(const std::vector<LevelDegree>& specs) {
  std::map<std::vector<std::pair<int, int>>, long long> acc;
  acc[{}] = 1;
  for (const auto& [level, degree] : specs) {
    std::map<std::vector<std::pair<int, int>>, long long> next;
    const auto pe = pe_coefficients(degree);
    for (const auto& [chain, c] : acc) {
      for (const auto& [mu, d] : pe) {
        // e_j(N) vanishes for j > N: the padded multiset has N entries
        if (mu.front() > level) continue;
        auto ext = chain;
        for (int part : mu) ext.emplace_back(level, part);
        std::sort(ext.begin(), ext.end(), [](const auto& a, const auto& b) {
          if (a.first != b.first) return a.first > b.first;
          return a.second < b.second;
        });
        next[ext] += c * d;
      }
    }
    acc.swap(next);
  }
  std::vector<ChainTerm> out;
  for (const auto& [chain, c] : acc) {
    if (c == 0) continue;
    ChainTerm t;
    t.coefficient = c;
    for (const auto& [n, k] : chain) t.chain.push_back({n, k});
    out.push_back(std::move(t));
  }
  return out;
}

ExactScalar expectation_p(const ExactParams& p, const std::vector<LevelDegree>& specs, const MomentOptions& opt) {
  return expectation_p_impl(p, specs, opt);
}

ExactScalar expectation_p(const EnsembleParams& p, const std::vector<LevelDegree>& specs, const MomentOptions& opt) {
  return expectation_p_impl(p, specs, opt);
}

namespace {

template <class P>
ExactScalar covariance_impl(const P& p, LevelDegree a, LevelDegree b, const MomentOptions& opt, bool elementary) {
  check_specs({a, b}, elementary);
  p.validate();
  Problem pr;
  if (elementary) {
    pr.combos.push_back({ChainTerm{1, chain_from_specs({a, b})}});
    pr.combos.push_back({ChainTerm{1, chain_from_specs({a})}});
    pr.combos.push_back({ChainTerm{1, chain_from_specs({b})}});
  } else {
    pr.combos.push_back(power_sum_terms({a, b}));
    pr.combos.push_back(power_sum_terms({a}));
    pr.combos.push_back(power_sum_terms({b}));
  }
  pr.n_max = chain_max_level(pr.combos);
  auto finish = [](const auto& v) { return v[0] - v[1] * v[2]; };
  if constexpr (std::is_same_v<P, ExactParams>)
    return solve(&p, nullptr, pr, opt, finish);
  else
    return solve(nullptr, &p, pr, opt, finish);
}

}  // namespace

ExactScalar covariance_p(const ExactParams& p, LevelDegree a, LevelDegree b, const MomentOptions& opt) {
  return covariance_impl(p, a, b, opt, false);
}

ExactScalar covariance_p(const EnsembleParams& p, LevelDegree a, LevelDegree b, const MomentOptions& opt) {
  return covariance_impl(p, a, b, opt, false);
}

ExactScalar covariance_e(const ExactParams& p, LevelDegree a, LevelDegree b, const MomentOptions& opt) {
  return covariance_impl(p, a, b, opt, true);
}

}  // namespace jc
