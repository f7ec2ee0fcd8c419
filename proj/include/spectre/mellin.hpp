#pragma once

#include <map>
#include <string>

#include "spectre/birkhoff.hpp"

namespace spectre {

/// c * prod (var + r)^e over r, with e positive in the numerator and negative
/// in the denominator. Zero is c = 0 with no factors.
struct FactoredRatFunc {
  Rational constant;
  std::map<Rational, int> factors;
  std::string var = "s";

  bool is_zero() const { return sgn(constant) == 0; }
  RatFunc expand() const;
  /// e.g. "(-4/9)*(s+1)^2/((s+11/6)*(s+13/6))"
  std::string to_string() const;
  /// Multiplies in (var + r)^e and cancels.
  void mul(const Rational& r, int e);
};

/// det A0 != 0, which is equivalent to full irregularity at infinity.
bool irregularity_full(const GoodBasisResult& r);

/// mu minus the algebraic multiplicity of 0 as an eigenvalue of A0.
std::size_t mellin_dimension(const GoodBasisResult& r);

/// Matrix of tau = 1/theta over Q(sigma): -A0^{-1}(A1 + sigma). Throws
/// Error(Precondition, ...) when A0 is singular.
RatFuncMatrix mellin_tau_matrix(const GoodBasisResult& r);

/// Matrix of t over Q(s): s (A1 + s)^{-1} A0.
RatFuncMatrix mellin_t_matrix(const GoodBasisResult& r);

/// s^mu det A0 / prod (s + beta)^nu over the eigenvalues of A1, read in
/// factored form. Throws Error(Computation, ...) when A1 has irrational
/// eigenvalues.
FactoredRatFunc det_t_mellin(const GoodBasisResult& r);

struct AomotoDeterminant {
  Rational c;  // det A0, the product of the critical values with multiplicity
  FactoredRatFunc value;
};

/// c (s+1)^mu / prod (s+1+beta)^nu. Throws Error(Precondition,
/// "0 is a critical value") when det A0 = 0.
AomotoDeterminant aomoto_determinant(const GoodBasisResult& r, const Spectrum& s);

}  // namespace spectre
