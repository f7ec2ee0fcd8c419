#include "spectre/upoly.hpp"

#include <algorithm>

#include "spectre/error.hpp"

namespace spectre {

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(Rational constant) {
  if (!spectre::is_zero(constant)) c_.push_back(std::move(constant));
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(Rational c, int degree) {
  UPoly p;
  if (spectre::is_zero(c)) return p;
  p.c_.assign(static_cast<std::size_t>(degree) + 1, Rational(0));
  p.c_.back() = std::move(c);
  return p;
}

UPoly UPoly::linear(const Rational& root) { return UPoly({-root, Rational(1)}); }

void UPoly::trim() {
  while (!c_.empty() && spectre::is_zero(c_.back())) c_.pop_back();
}

Rational UPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

int UPoly::valuation() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!spectre::is_zero(c_[k])) return static_cast<int>(k);
  return 0;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const UPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (spectre::is_zero(c_[i])) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Rational& s) {
  if (spectre::is_zero(s)) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * static_cast<long>(k);
  return UPoly(std::move(r));
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::shifted(const Rational& a) const {
  UPoly acc;
  UPoly lin({a, Rational(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= lin;
    acc += UPoly(*it);
  }
  return acc;
}

UPoly UPoly::truncated(int n) const {
  if (n <= 0) return {};
  std::vector<Rational> r(c_.begin(), c_.begin() + std::min<std::size_t>(c_.size(), static_cast<std::size_t>(n)));
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return {};
  Rational inv = 1 / c_.back();
  return *this * inv;
}

UPoly UPoly::pow(unsigned e) const {
  UPoly r(Rational(1));
  for (unsigned i = 0; i < e; ++i) r *= *this;
  return r;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = c_[static_cast<std::size_t>(k)];
    if (spectre::is_zero(a)) continue;
    Rational mag = abs(a);
    if (out.empty()) {
      if (sgn(a) < 0) out += "-";
    } else {
      out += sgn(a) < 0 ? " - " : " + ";
    }
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (k == 0) {
      out += spectre::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += spectre::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) fail(ErrorKind::Internal, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {UPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(da - db + 1));
  Rational inv = 1 / b.leading();
  for (int k = da; k >= db; --k) {
    Rational f = r[static_cast<std::size_t>(k)] * inv;
    if (spectre::is_zero(f)) continue;
    q[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

// ---------------------------------------------------------------- Laurent

Laurent::Laurent(Rational constant) {
  if (!spectre::is_zero(constant)) c_.push_back(std::move(constant));
}

Laurent::Laurent(int low, std::vector<Rational> coeffs) : low_(low), c_(std::move(coeffs)) { trim(); }

Laurent::Laurent(const UPoly& p, int shift) : low_(shift), c_(p.coeffs()) { trim(); }

Laurent Laurent::monomial(Rational c, int k) { return Laurent(k, {std::move(c)}); }

Laurent Laurent::from_theta(const UPoly& p) {
  if (p.is_zero()) return {};
  std::vector<Rational> c(p.coeffs().rbegin(), p.coeffs().rend());
  return Laurent(-p.degree(), std::move(c));
}

void Laurent::trim() {
  while (!c_.empty() && spectre::is_zero(c_.back())) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && spectre::is_zero(c_[lead])) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
  if (c_.empty()) low_ = 0;
}

Rational Laurent::coeff(int k) const {
  int i = k - low_;
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(i)];
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  int lo = std::min(low_, o.low_);
  int hi = std::max(high(), o.high());
  std::vector<Rational> r(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < c_.size(); ++i) r[static_cast<std::size_t>(low_ - lo) + i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[static_cast<std::size_t>(o.low_ - lo) + i] += o.c_[i];
  low_ = lo;
  c_ = std::move(r);
  trim();
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent& Laurent::operator*=(const Rational& s) {
  if (spectre::is_zero(s)) {
    c_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (spectre::is_zero(a.c_[i])) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Laurent(a.low_ + b.low_, std::move(r));
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Laurent Laurent::shifted(int k) const {
  Laurent r = *this;
  if (!r.c_.empty()) r.low_ += k;
  return r;
}

Laurent Laurent::euler() const {
  std::vector<Rational> r = c_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= low_ + static_cast<int>(i);
  return Laurent(low_, std::move(r));
}

Laurent Laurent::truncated_above(int n) const {
  if (c_.empty() || low_ >= n) return {};
  std::size_t keep = std::min<std::size_t>(c_.size(), static_cast<std::size_t>(n - low_));
  return Laurent(low_, std::vector<Rational>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(keep)));
}

UPoly Laurent::to_upoly(int shift) const {
  if (c_.empty()) return {};
  if (low_ < shift) fail(ErrorKind::Internal, "Laurent polynomial has unexpected polar part");
  std::vector<Rational> r(static_cast<std::size_t>(low_ - shift), Rational(0));
  r.insert(r.end(), c_.begin(), c_.end());
  return UPoly(std::move(r));
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(UPoly num, UPoly den) {
  if (den.is_zero()) fail(ErrorKind::Internal, "rational function with zero denominator");
  if (num.is_zero()) {
    den_ = UPoly(Rational(1));
    return;
  }
  UPoly g = gcd(num, den);
  num_ = divmod(num, g).first;
  den_ = divmod(den, g).first;
  Rational lc = den_.leading();
  num_ *= 1 / lc;
  den_ *= 1 / lc;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) fail(ErrorKind::Internal, "rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string(const std::string& var) const {
  if (den_.is_constant()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace spectre
