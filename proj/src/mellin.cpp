#include "spectre/mellin.hpp"

#include "spectre/error.hpp"

namespace spectre {

namespace {

std::string linear_factor(const std::string& var, const Rational& r) {
  if (is_zero(r)) return var;
  return "(" + var + (sgn(r) > 0 ? "+" : "-") + to_string(Rational(abs(r))) + ")";
}

std::string power(const std::string& base, int e) { return e == 1 ? base : base + "^" + std::to_string(e); }

// (A + var I) over Q(var).
RatFuncMatrix shifted_by_var(const QMatrix& a) {
  RatFuncMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = RatFunc(UPoly(a(i, j)) + (i == j ? UPoly::x() : UPoly()));
  return m;
}

RatFuncMatrix constant_matrix(const QMatrix& a) {
  RatFuncMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = RatFunc(a(i, j));
  return m;
}

}  // namespace

void FactoredRatFunc::mul(const Rational& r, int e) {
  int& cur = factors[r];
  cur += e;
  if (cur == 0) factors.erase(r);
}

RatFunc FactoredRatFunc::expand() const {
  UPoly num(constant), den(Rational(1));
  if (is_zero()) return RatFunc();
  for (const auto& [r, e] : factors) {
    UPoly lin = UPoly::linear(-r);
    for (int k = 0; k < std::abs(e); ++k) (e > 0 ? num : den) *= lin;
  }
  return RatFunc(num, den);
}

std::string FactoredRatFunc::to_string() const {
  if (is_zero()) return "0";
  std::string num, den;
  int den_count = 0;
  for (const auto& [r, e] : factors) {
    if (e > 0) {
      num += (num.empty() ? "" : "*") + power(linear_factor(var, r), e);
    } else {
      den += (den.empty() ? "" : "*") + power(linear_factor(var, r), -e);
      ++den_count;
    }
  }
  std::string c = spectre::to_string(constant);
  if (num.empty())
    num = den.empty() ? c : (constant == 1 ? "1" : "(" + c + ")");
  else if (constant != 1)
    num = "(" + c + ")*" + num;
  if (den.empty()) return num;
  return num + "/" + (den_count == 1 ? den : "(" + den + ")");
}

bool irregularity_full(const GoodBasisResult& r) { return !is_zero(determinant(r.a0)); }

std::size_t mellin_dimension(const GoodBasisResult& r) {
  const std::size_t mu = r.a0.rows();
  if (mu == 0) return 0;
  return mu - static_cast<std::size_t>(char_poly(r.a0).valuation());
}

RatFuncMatrix mellin_tau_matrix(const GoodBasisResult& r) {
  if (!irregularity_full(r))
    fail(ErrorKind::Precondition, "A0 is singular: the Mellin module has dimension " +
                                      std::to_string(mellin_dimension(r)) + " < mu, so tau is not invertible");
  QMatrix neg_inv = inverse(r.a0).scaled(Rational(-1));
  return constant_matrix(neg_inv) * shifted_by_var(r.a1);
}

RatFuncMatrix mellin_t_matrix(const GoodBasisResult& r) {
  const std::size_t mu = r.a0.rows();
  RatFuncMatrix s_times(mu, mu);
  for (std::size_t i = 0; i < mu; ++i) s_times(i, i) = RatFunc(UPoly::x());
  return s_times * inverse(shifted_by_var(r.a1)) * constant_matrix(r.a0);
}

FactoredRatFunc det_t_mellin(const GoodBasisResult& r) {
  FactoredRatFunc out;
  const std::size_t mu = r.a0.rows();
  out.constant = mu == 0 ? Rational(1) : determinant(r.a0);
  if (out.is_zero()) return out;
  RootFactorization rf = rational_root_factor(char_poly(r.a1));
  if (rf.remainder.degree() > 0)
    fail(ErrorKind::Computation, "A1 has irrational eigenvalues: factor " + rf.remainder.to_string("S"));
  out.mul(Rational(0), static_cast<int>(mu));
  // Eigenvalue beta of A1 gives the pole at s = -beta.
  for (const auto& [beta, m] : rf.roots) out.mul(beta, -m);
  return out;
}

AomotoDeterminant aomoto_determinant(const GoodBasisResult& r, const Spectrum& s) {
  AomotoDeterminant out;
  const std::size_t mu = r.a0.rows();
  out.c = mu == 0 ? Rational(1) : determinant(r.a0);
  if (is_zero(out.c)) fail(ErrorKind::Precondition, "0 is a critical value");
  out.value.constant = out.c;
  out.value.mul(Rational(1), static_cast<int>(mu));
  for (const auto& [beta, m] : s.entries()) out.value.mul(beta + 1, -static_cast<int>(m));
  return out;
}

}  // namespace spectre
