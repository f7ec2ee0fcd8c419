#include <algorithm>
#include <functional>

#include "spectre/matrix.hpp"

namespace spectre {

UPoly char_poly(const QMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::Precondition, "char_poly: matrix is not square");
  const std::size_t n = m.rows();
  QMatrix h = m;
  // Similarity transform to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t p = j + 1;
    while (p < n && is_zero(h(p, j))) ++p;
    if (p == n) continue;
    if (p != j + 1) {
      for (std::size_t k = 0; k < n; ++k) std::swap(h(p, k), h(j + 1, k));
      for (std::size_t k = 0; k < n; ++k) std::swap(h(k, p), h(k, j + 1));
    }
    Rational inv = 1 / h(j + 1, j);
    for (std::size_t i = j + 2; i < n; ++i) {
      if (is_zero(h(i, j))) continue;
      Rational f = h(i, j) * inv;
      for (std::size_t k = 0; k < n; ++k) h(i, k) -= f * h(j + 1, k);
      for (std::size_t k = 0; k < n; ++k) h(k, j + 1) += f * h(k, i);
    }
  }
  std::vector<UPoly> p(n + 1);
  p[0] = UPoly(Rational(1));
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = UPoly({-h(k - 1, k - 1), Rational(1)}) * p[k - 1];
    Rational t(1);
    for (std::size_t i = 1; i < k; ++i) {
      t *= h(k - i, k - i - 1);
      if (is_zero(t)) break;
      p[k] -= p[k - i - 1] * Rational(t * h(k - i - 1, k - 1));
    }
  }
  return p[n];
}

QMatrix eval_poly(const UPoly& p, const QMatrix& m) {
  const std::size_t n = m.rows();
  QMatrix acc(n, n);
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * m;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += p.coeff(k);
  }
  return acc;
}

std::vector<std::size_t> nilpotent_jordan_type(const QMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::Precondition, "nilpotent_jordan_type: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<std::size_t> ranks{n};
  QMatrix power = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * m;
    ranks.push_back(rank(power));
  }
  if (ranks.back() != 0) fail(ErrorKind::Precondition, "nilpotent_jordan_type: matrix is not nilpotent");
  // at_least[k] = number of blocks of size >= k
  std::vector<std::size_t> blocks;
  for (std::size_t k = n; k >= 1; --k) {
    std::size_t at_least = ranks[k - 1] - ranks[k];
    std::size_t at_least_next = k < n ? ranks[k] - ranks[k + 1] : 0;
    for (std::size_t c = at_least_next; c < at_least; ++c) blocks.push_back(k);
  }
  return blocks;
}

// ------------------------------------------------------------ rational roots

namespace {

int sign_changes(const std::vector<UPoly>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& s : chain) {
    int v = sgn(s.eval(x));
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

// Fraction with the least denominator in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return -simplest_between(-hi, -lo);
  Integer c = ceil(lo);
  if (Rational(c) <= hi) return Rational(c);
  Integer n = floor(lo);
  Rational inner = simplest_between(1 / (hi - n), 1 / (lo - n));
  return Rational(n) + 1 / inner;
}

Integer denominator_lcm(const UPoly& p) {
  Integer l(1);
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

}  // namespace

RootFactorization rational_root_factor(const UPoly& p) {
  if (p.is_zero()) fail(ErrorKind::Precondition, "rational_root_factor: zero polynomial");
  RootFactorization out;
  out.leading = p.leading();
  UPoly q = p.monic();

  std::vector<Rational> found;
  if (q.degree() > 0 && is_zero(q.coeff(0))) found.push_back(Rational(0));

  UPoly work = q;
  int v = work.valuation();
  if (v > 0) work = divmod(work, UPoly::monomial(Rational(1), v)).first;
  if (work.degree() > 0) {
    UPoly sf = divmod(work, gcd(work, work.derivative())).first;
    // Any rational root p/q of sf in lowest terms has q dividing the leading
    // coefficient of the integer-scaled polynomial.
    Integer lead_int = Integer(sf.leading() * Rational(denominator_lcm(sf)));
    lead_int = abs(lead_int);
    Rational resolution = Rational(1) / Rational(2 * lead_int * lead_int);

    std::vector<UPoly> chain{sf, sf.derivative()};
    while (chain.back().degree() > 0) {
      UPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
      if (r.is_zero()) break;
      chain.push_back(-r);
    }
    Rational bound(1);
    for (int k = 0; k < sf.degree(); ++k) bound = std::max(bound, Rational(1 + abs(sf.coeff(k) / sf.leading())));

    // Isolate real roots in half-open intervals (lo, hi], then narrow each one.
    std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
    while (!stack.empty()) {
      auto [lo, hi] = stack.back();
      stack.pop_back();
      int count = sign_changes(chain, lo) - sign_changes(chain, hi);
      if (count == 0) continue;
      if (count > 1) {
        Rational mid = (lo + hi) / 2;
        stack.push_back({lo, mid});
        stack.push_back({mid, hi});
        continue;
      }
      while (hi - lo >= resolution) {
        if (is_zero(sf.eval(hi))) break;
        Rational mid = (lo + hi) / 2;
        if (sign_changes(chain, lo) - sign_changes(chain, mid) == 1)
          hi = mid;
        else
          lo = mid;
      }
      Rational candidate = is_zero(sf.eval(hi)) ? hi : simplest_between(lo, hi);
      if (is_zero(sf.eval(candidate))) found.push_back(candidate);
    }
  }

  std::sort(found.begin(), found.end());
  for (const auto& r : found) {
    int mult = 0;
    UPoly lin = UPoly::linear(r);
    while (q.degree() > 0) {
      auto [quot, rem] = divmod(q, lin);
      if (!rem.is_zero()) break;
      q = quot;
      ++mult;
    }
    out.roots.emplace_back(r, mult);
  }
  out.remainder = q;
  return out;
}

// ------------------------------------------------------------ theta matrices

int theta_degree(const ThetaMatrix& m) {
  int d = -1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).degree());
  return d;
}

QMatrix theta_coeff(const ThetaMatrix& m, int k) {
  QMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).coeff(k);
  return c;
}

ThetaMatrix theta_from_coeffs(const std::vector<QMatrix>& coeffs) {
  if (coeffs.empty()) return {};
  const std::size_t r = coeffs[0].rows(), c = coeffs[0].cols();
  ThetaMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<Rational> v(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) v[k] = coeffs[k](i, j);
      m(i, j) = UPoly(std::move(v));
    }
  return m;
}

ThetaMatrix theta_sq_derivative(const ThetaMatrix& p) {
  ThetaMatrix r(p.rows(), p.cols());
  UPoly theta_sq = UPoly::monomial(Rational(1), 2);
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) r(i, j) = theta_sq * p(i, j).derivative();
  return r;
}

ThetaMatrix to_theta(const QMatrix& m) {
  ThetaMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = UPoly(m(i, j));
  return r;
}

ThetaMatrix theta_mat_inverse(const ThetaMatrix& p) {
  if (!p.is_square()) fail(ErrorKind::Precondition, "theta_mat_inverse: matrix is not square");
  const std::size_t n = p.rows();
  RatFuncMatrix f(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = RatFunc(p(i, j));
  RatFunc det = determinant(f);
  if (det.is_zero() || !det.is_polynomial() || det.num().degree() != 0)
    fail(ErrorKind::Precondition, "not unimodular: det = " + det.to_string("theta"));
  RatFuncMatrix inv = inverse(f);
  ThetaMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!inv(i, j).is_polynomial()) fail(ErrorKind::Internal, "unimodular inverse is not polynomial");
      out(i, j) = inv(i, j).num() * (1 / inv(i, j).den().leading());
    }
  return out;
}

}  // namespace spectre
