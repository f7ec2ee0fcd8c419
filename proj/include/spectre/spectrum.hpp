#pragma once

#include <map>
#include <string>
#include <vector>

#include "spectre/rational.hpp"
#include "spectre/upoly.hpp"

namespace spectre {

/// Multiset of spectral numbers: beta -> positive multiplicity, sorted by beta.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(std::initializer_list<std::pair<Rational, long>> entries);

  void add(const Rational& beta, long mult = 1);
  long mult(const Rational& beta) const;
  long total() const;
  bool empty() const { return nu_.empty(); }
  const std::map<Rational, long>& entries() const { return nu_; }
  Rational min() const;
  Rational max() const;
  /// sum of beta * nu_beta
  Rational weighted_sum() const;
  /// Every beta moved by k.
  Spectrum shifted(const Rational& k) const;

  /// e.g. "{2/3:1, 1:2, 4/3:1}"
  std::string to_string() const;

  friend bool operator==(const Spectrum& a, const Spectrum& b) { return a.nu_ == b.nu_; }
  friend bool operator!=(const Spectrum& a, const Spectrum& b) { return !(a == b); }

 private:
  std::map<Rational, long> nu_;
};

struct SpectralPolynomial {
  std::string factored;  // "(S+5/6)*(S+7/6)"
  UPoly expanded;
};

/// prod (S + beta)^nu_beta
SpectralPolynomial spectral_polynomial(const Spectrum& s);

/// prod (T - exp(2 pi i beta))^nu_beta with integer coefficients, computed in
/// Q[x]/Phi_L(x) with L the lcm of the denominators. Throws
/// Error(Computation, "spectrum not monodromy-consistent") when a coefficient
/// is not an integer.
UPoly monodromy_char_poly(const Spectrum& s);

Spectrum dual_spectrum(const Spectrum& s);
Spectrum convolve_spectra(const Spectrum& a, const Spectrum& b);
/// nu_beta = nu_{w - beta} for every beta.
bool check_symmetry(const Spectrum& s, const Rational& w);
/// Every beta lies in the open interval (0, w).
bool check_positivity(const Spectrum& s, const Rational& w);

/// {i/a : 1 <= i < a}, the spectrum of x^a in one variable.
Spectrum power_spectrum(long a);

}  // namespace spectre
