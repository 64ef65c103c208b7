// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

// Parameters, sample state and observables of the beta-Jacobi corners process.

#ifndef JCORNERS_CORE_HPP
#define JCORNERS_CORE_HPP

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jc {

using Rational = boost::multiprecision::mpq_rational;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (theta, alpha, M) with theta = beta/2.
struct EnsembleParams {
  double theta = 1.0;
  double alpha = 1.0;
  int m_param = 1;

  void validate() const;
};

// Same triple with exact rational theta and alpha, used by the moment oracle.
struct ExactParams {
  Rational theta{1};
  Rational alpha{1};
  int m_param = 1;

  void validate() const;
  EnsembleParams to_double() const;
};

// Accepts "3", "-2/7", "0.125".  Decimal input is converted exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Number of particles on level n.
inline int level_length(int n, int m_param) { return n < m_param ? n : m_param; }

// levels[n-1] holds the increasing vector r^n.
using Level = std::vector<double>;

struct CornersArray {
  std::vector<Level> levels;

  int depth() const { return static_cast<int>(levels.size()); }
  const Level& level(int n) const { return levels.at(n - 1); }
  Level& level(int n) { return levels.at(n - 1); }
};

// Throws DomainError unless 0 < r < 1, strict increase, correct lengths and
// strict interlacing hold up to level big_n.
void validate_level(const Level& z, int expected_length);
void validate_interlacing(const Level& lower, const Level& upper);
void validate_corners(const CornersArray& c, int m_param, int big_n);
bool is_valid_corners(const CornersArray& c, int m_param, int big_n);

enum class ObsKind { power, elementary };

struct ObservableSpec {
  ObsKind kind = ObsKind::power;
  int degree = 1;
  int level = 1;
  bool pad_ones = true;  // append N-M ones when N > M

  std::string name() const;
};

// Elementary symmetric polynomials e_0..e_kmax of the entries.
std::vector<double> elementary_symmetric(const std::vector<double>& x, int kmax);

double observable_value(const ObservableSpec& spec, const Level& level_values, int m_param);

}  // namespace jc

#endif
