#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spectre/rational.hpp"

namespace spectre {

/// Dense univariate polynomial over Q; coefficient k multiplies X^k.
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients and degree -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(Rational constant);
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly monomial(Rational c, int degree);
  static UPoly x() { return monomial(Rational(1), 1); }
  /// X - root
  static UPoly linear(const Rational& root);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const;
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  /// Lowest k with a nonzero coefficient (0 for the zero polynomial).
  int valuation() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly& operator*=(const Rational& s);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
  friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
  friend UPoly operator*(const Rational& s, UPoly a) { return a *= s; }
  UPoly operator-() const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  UPoly derivative() const;
  Rational eval(const Rational& x) const;
  /// p(X + a)
  UPoly shifted(const Rational& a) const;
  /// Keeps only the coefficients of X^k, k < n.
  UPoly truncated(int n) const;
  UPoly monic() const;
  UPoly pow(unsigned e) const;

  std::string to_string(const std::string& var = "S") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Euclidean division; throws on a zero divisor.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
inline bool is_zero(const UPoly& p) { return p.is_zero(); }

/// Laurent polynomial sum_{k} c_k X^k with finitely many nonzero terms.
/// Stored as a lowest order plus a dense run, trimmed at both ends.
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(Rational constant);
  Laurent(int low, std::vector<Rational> coeffs);
  explicit Laurent(const UPoly& p, int shift = 0);

  static Laurent monomial(Rational c, int k);
  /// Reads a polynomial in theta as a Laurent polynomial in tau = 1/theta.
  static Laurent from_theta(const UPoly& p);

  bool is_zero() const { return c_.empty(); }
  /// Lowest order with a nonzero coefficient; undefined for zero.
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  Rational coeff(int k) const;
  const std::vector<Rational>& dense() const { return c_; }

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Rational& s);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend Laurent operator*(Laurent a, const Rational& s) { return a *= s; }
  friend Laurent operator*(const Rational& s, Laurent a) { return a *= s; }
  Laurent operator-() const;
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.c_ == b.c_ && (a.c_.empty() || a.low_ == b.low_);
  }

  /// Multiplies by X^k.
  Laurent shifted(int k) const;
  /// X d/dX
  Laurent euler() const;
  /// Drops every term of order >= n.
  Laurent truncated_above(int n) const;
  /// The part of order < 0.
  Laurent polar_part() const { return truncated_above(0); }
  /// X^{-shift} p as a polynomial; requires low() >= shift.
  UPoly to_upoly(int shift = 0) const;

 private:
  void trim();
  int low_ = 0;
  std::vector<Rational> c_;
};

inline bool is_zero(const Laurent& p) { return p.is_zero(); }

/// Element of Q(X) kept as num/den with gcd(num, den) = 1 and den monic.
class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  explicit RatFunc(Rational c) : num_(std::move(c)), den_(Rational(1)) {}
  explicit RatFunc(UPoly num) : num_(std::move(num)), den_(Rational(1)) {}
  RatFunc(UPoly num, UPoly den);

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(const std::string& var = "s") const;

 private:
  UPoly num_;
  UPoly den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

}  // namespace spectre
