#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spectre/rational.hpp"

namespace spectre {

/// Exponent vector of fixed capacity. Only the first size() entries are used.
class Monomial {
 public:
  static constexpr std::size_t kMaxVars = 12;

  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<int> exps);
  explicit Monomial(const std::vector<int>& exps);

  std::size_t size() const { return n_; }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  int degree() const;
  std::vector<int> exponents() const { return {e_.begin(), e_.begin() + n_}; }

  bool divides(const Monomial& o) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  /// True when a and b share no variable.
  friend bool coprime(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.n_ == b.n_ && a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  /// Lexicographic on exponents; used only as a storage order.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }

 private:
  std::array<int, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

/// Graded reverse lexicographic comparison: -1, 0 or 1.
int grevlex_compare(const Monomial& a, const Monomial& b);

/// Sparse polynomial over Q in a fixed list of named variables.
class MultiPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);
  MultiPoly(std::vector<std::string> vars, const Rational& constant);

  static MultiPoly monomial(std::vector<std::string> vars, const Monomial& m, const Rational& c = Rational(1));
  static MultiPoly variable(std::vector<std::string> vars, std::size_t i);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Monomial& m) const;
  std::vector<Monomial> support() const;
  int total_degree() const;

  void add_term(const Monomial& m, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  MultiPoly operator-() const;
  MultiPoly pow(unsigned e) const;
  MultiPoly times_monomial(const Monomial& m, const Rational& c = Rational(1)) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Partial derivative in variable i.
  MultiPoly partial(std::size_t i) const;
  Rational eval(const std::vector<Rational>& point) const;

  /// Terms in descending grevlex order, e.g. "1/3*x^3 - x + 1/2*y^2".
  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& o) const;

  std::vector<std::string> vars_;
  Terms terms_;
};

/// Parses the polynomial grammar: signed terms, each a product of rational
/// literals and powers of variables (implicit or explicit '*').
/// Throws Error(Usage) with the offending position.
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

/// Splits "x,y,z" into names.
std::vector<std::string> parse_vars(std::string_view text);

}  // namespace spectre
