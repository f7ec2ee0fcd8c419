#include "spectre/spectrum.hpp"

#include <numeric>

#include "spectre/error.hpp"

namespace spectre {

Spectrum::Spectrum(std::initializer_list<std::pair<Rational, long>> entries) {
  for (const auto& [b, m] : entries) add(b, m);
}

void Spectrum::add(const Rational& beta, long mult) {
  if (mult < 0) fail(ErrorKind::Internal, "negative spectral multiplicity");
  if (mult == 0) return;
  nu_[beta] += mult;
}

long Spectrum::mult(const Rational& beta) const {
  auto it = nu_.find(beta);
  return it == nu_.end() ? 0 : it->second;
}

long Spectrum::total() const {
  long t = 0;
  for (const auto& [b, m] : nu_) t += m;
  return t;
}

Rational Spectrum::min() const {
  if (nu_.empty()) fail(ErrorKind::Internal, "min of an empty spectrum");
  return nu_.begin()->first;
}

Rational Spectrum::max() const {
  if (nu_.empty()) fail(ErrorKind::Internal, "max of an empty spectrum");
  return nu_.rbegin()->first;
}

Rational Spectrum::weighted_sum() const {
  Rational s(0);
  for (const auto& [b, m] : nu_) s += b * m;
  return s;
}

Spectrum Spectrum::shifted(const Rational& k) const {
  Spectrum r;
  for (const auto& [b, m] : nu_) r.add(b + k, m);
  return r;
}

std::string Spectrum::to_string() const {
  std::string out = "{";
  for (const auto& [b, m] : nu_) {
    if (out.size() > 1) out += ", ";
    out += spectre::to_string(b) + ":" + std::to_string(m);
  }
  return out + "}";
}

SpectralPolynomial spectral_polynomial(const Spectrum& s) {
  SpectralPolynomial sp{"", UPoly(Rational(1))};
  for (const auto& [b, m] : s.entries()) {
    std::string factor;
    if (is_zero(b))
      factor = "S";
    else if (sgn(b) > 0)
      factor = "(S+" + to_string(b) + ")";
    else
      factor = "(S-" + to_string(Rational(-b)) + ")";
    if (m > 1) factor += "^" + std::to_string(m);
    if (!sp.factored.empty()) sp.factored += "*";
    sp.factored += factor;
    sp.expanded *= UPoly::linear(-b).pow(static_cast<unsigned>(m));
  }
  if (sp.factored.empty()) sp.factored = "1";
  return sp;
}

namespace {

UPoly cyclotomic(long n, std::map<long, UPoly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  // x^n - 1 = prod_{d | n} Phi_d
  UPoly p = UPoly::monomial(Rational(1), static_cast<int>(n)) - UPoly(Rational(1));
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = divmod(p, cyclotomic(d, memo)).first;
  return memo[n] = p;
}

}  // namespace

UPoly monodromy_char_poly(const Spectrum& s) {
  long L = 1;
  for (const auto& [b, m] : s.entries()) {
    Integer den = b.get_den();
    if (!den.fits_slong_p() || den > 100000) fail(ErrorKind::Computation, "spectral denominator too large");
    L = std::lcm(L, den.get_si());
  }
  std::map<long, UPoly> memo;
  UPoly phi = cyclotomic(L, memo);
  auto reduce = [&](const UPoly& p) { return divmod(p, phi).second; };
  // Coefficients (ascending in T) live in Q[x]/Phi_L, x = exp(2 pi i / L).
  std::vector<UPoly> poly{UPoly(Rational(1))};
  for (const auto& [b, m] : s.entries()) {
    Rational f = frac(b) * L;
    UPoly root = reduce(UPoly::monomial(Rational(1), static_cast<int>(Integer(f).get_si())));
    for (long k = 0; k < m; ++k) {
      std::vector<UPoly> next(poly.size() + 1);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= reduce(poly[i] * root);
      }
      poly = std::move(next);
    }
  }
  std::vector<Rational> out;
  for (const auto& c : poly) {
    if (c.degree() > 0) fail(ErrorKind::Computation, "spectrum not monodromy-consistent");
    Rational v = c.coeff(0);
    if (v.get_den() != 1) fail(ErrorKind::Computation, "spectrum not monodromy-consistent");
    out.push_back(v);
  }
  return UPoly(std::move(out));
}

Spectrum dual_spectrum(const Spectrum& s) {
  Spectrum r;
  for (const auto& [b, m] : s.entries()) r.add(-b, m);
  return r;
}

Spectrum convolve_spectra(const Spectrum& a, const Spectrum& b) {
  Spectrum r;
  for (const auto& [x, m] : a.entries())
    for (const auto& [y, n] : b.entries()) r.add(x + y, m * n);
  return r;
}

bool check_symmetry(const Spectrum& s, const Rational& w) {
  for (const auto& [b, m] : s.entries())
    if (s.mult(w - b) != m) return false;
  return true;
}

bool check_positivity(const Spectrum& s, const Rational& w) {
  for (const auto& [b, m] : s.entries())
    if (sgn(b) <= 0 || b >= w) return false;
  return true;
}

Spectrum power_spectrum(long a) {
  Spectrum s;
  for (long i = 1; i < a; ++i) s.add(make_rational(i, a));
  return s;
}

}  // namespace spectre
