// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#include "jcorners/core.hpp"

#include <cmath>
#include <sstream>

namespace jc {

void EnsembleParams::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("theta must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  if (m_param < 1) throw DomainError("M must be at least 1");
}

void ExactParams::validate() const {
  if (theta <= 0) throw DomainError("theta must be positive");
  if (alpha <= 0) throw DomainError("alpha must be positive");
  if (m_param < 1) throw DomainError("M must be at least 1");
}

EnsembleParams ExactParams::to_double() const {
  return EnsembleParams{jc::to_double(theta), jc::to_double(alpha), m_param};
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  // mpz_int reads a leading 0 as octal, so digits are checked and stripped here.
  auto integer = [&s](std::string t) {
    bool neg = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
      neg = t[0] == '-';
      t.erase(t.begin());
    }
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("bad literal '" + s + "'");
    const auto nz = t.find_first_not_of('0');
    t = nz == std::string::npos ? "0" : t.substr(nz);
    boost::multiprecision::mpz_int v(t);
    return neg ? boost::multiprecision::mpz_int(-v) : v;
  };
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) throw DomainError("empty rational literal");
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      const boost::multiprecision::mpz_int num = integer(s.substr(0, slash));
      const boost::multiprecision::mpz_int den = integer(s.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos && s.find_first_of("eE") == std::string::npos)
      return Rational(integer(s));
    if (s.find_first_of("eE") != std::string::npos)
      throw DomainError("exponent notation not accepted for exact input: '" + s + "'");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const boost::multiprecision::mpz_int num = integer(digits);
    boost::multiprecision::mpz_int den = boost::multiprecision::pow(boost::multiprecision::mpz_int(10),
                                                                    static_cast<unsigned>(s.size() - dot - 1));
    return Rational(num, den);
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("cannot parse rational '" + s + "'");
  }
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

void validate_level(const Level& z, int expected_length) {
  if (static_cast<int>(z.size()) != expected_length)
    throw DomainError("level has length " + std::to_string(z.size()) + ", expected " +
                      std::to_string(expected_length));
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(z[i] > 0.0 && z[i] < 1.0)) throw DomainError("level entry outside (0,1)");
    if (i > 0 && !(z[i] > z[i - 1])) throw DomainError("level entries not strictly increasing");
  }
}

// lower has length == upper (the N > M case) or upper - 1.
void validate_interlacing(const Level& lower, const Level& upper) {
  const std::size_t n = upper.size();
  if (lower.size() != n && lower.size() + 1 != n) throw DomainError("interlacing: incompatible lengths");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const double below = upper[i];
    const double above = i + 1 < n ? upper[i + 1] : 1.0;
    if (!(below < lower[i] && lower[i] < above)) throw DomainError("interlacing violated");
  }
}

void validate_corners(const CornersArray& c, int m_param, int big_n) {
  if (big_n < 1 || c.depth() < big_n) throw DomainError("corners array shallower than requested level");
  for (int n = 1; n <= big_n; ++n) {
    validate_level(c.level(n), level_length(n, m_param));
    if (n >= 2) validate_interlacing(c.level(n - 1), c.level(n));
  }
}

bool is_valid_corners(const CornersArray& c, int m_param, int big_n) {
  try {
    validate_corners(c, m_param, big_n);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::string ObservableSpec::name() const {
  std::ostringstream os;
  os << (kind == ObsKind::power ? 'p' : 'e') << degree << '(' << level << ')';
  return os.str();
}

std::vector<double> elementary_symmetric(const std::vector<double>& x, int kmax) {
  std::vector<double> e(static_cast<std::size_t>(kmax) + 1, 0.0);
  e[0] = 1.0;
  int seen = 0;
  for (double v : x) {
    ++seen;
    for (int k = std::min(seen, kmax); k >= 1; --k) e[k] += v * e[k - 1];
  }
  return e;
}

double observable_value(const ObservableSpec& spec, const Level& z, int m_param) {
  if (spec.degree < 1) throw DomainError("observable degree must be >= 1");
  if (spec.level < 1) throw DomainError("observable level must be >= 1");
  if (static_cast<int>(z.size()) != level_length(spec.level, m_param))
    throw DomainError("level vector length does not match min(level, M)");
  const int pad = spec.pad_ones && spec.level > m_param ? spec.level - m_param : 0;
  if (spec.kind == ObsKind::power) {
    double s = pad;
    for (double v : z) s += std::pow(v, spec.degree);
    return s;
  }
  const int len = static_cast<int>(z.size()) + pad;
  if (spec.degree > len) throw DomainError("elementary degree exceeds padded length");
  std::vector<double> x(z);
  x.insert(x.end(), pad, 1.0);
  return elementary_symmetric(x, spec.degree)[spec.degree];
}

}  // namespace jc
