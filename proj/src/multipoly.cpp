#include "spectre/multipoly.hpp"

#include <algorithm>
#include <cctype>

#include "spectre/error.hpp"

namespace spectre {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::size_t nvars) {
  if (nvars > kMaxVars) fail(ErrorKind::Precondition, "too many variables (at most " + std::to_string(kMaxVars) + ")");
  n_ = static_cast<std::uint8_t>(nvars);
}

Monomial::Monomial(std::initializer_list<int> exps) : Monomial(exps.size()) {
  std::copy(exps.begin(), exps.end(), e_.begin());
}

Monomial::Monomial(const std::vector<int>& exps) : Monomial(exps.size()) {
  std::copy(exps.begin(), exps.end(), e_.begin());
}

int Monomial::degree() const {
  int d = 0;
  for (std::size_t i = 0; i < n_; ++i) d += e_[i];
  return d;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] += b.e_[i];
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] -= b.e_[i];
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.n_; ++i)
    if (a.e_[i] > 0 && b.e_[i] > 0) return false;
  return true;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (vars_.size() > Monomial::kMaxVars) fail(ErrorKind::Precondition, "too many variables");
}

MultiPoly::MultiPoly(std::vector<std::string> vars, const Rational& constant) : MultiPoly(std::move(vars)) {
  add_term(Monomial(vars_.size()), constant);
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, const Monomial& m, const Rational& c) {
  MultiPoly p(std::move(vars));
  p.add_term(m, c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t i) {
  Monomial m(vars.size());
  m[i] = 1;
  return monomial(std::move(vars), m);
}

Rational MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<Monomial> MultiPoly::support() const {
  std::vector<Monomial> s;
  s.reserve(terms_.size());
  for (const auto& [m, c] : terms_) s.push_back(m);
  return s;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != vars_.size()) fail(ErrorKind::Internal, "monomial arity does not match the variable list");
  if (spectre::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (spectre::is_zero(it->second)) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (vars_ != o.vars_) fail(ErrorKind::Precondition, "polynomials over different variable lists");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& s) {
  if (spectre::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r(vars_, Rational(1));
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m, const Rational& c) const {
  MultiPoly r(vars_);
  if (spectre::is_zero(c)) return r;
  for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
  return r;
}

MultiPoly MultiPoly::partial(std::size_t i) const {
  if (i >= vars_.size()) fail(ErrorKind::Precondition, "partial: variable index out of range");
  MultiPoly r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    d[i] -= 1;
    r.add_term(d, c * m[i]);
  }
  return r;
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size()) fail(ErrorKind::Precondition, "eval: point has the wrong dimension");
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return grevlex_compare(a.first, b.first) > 0; });
  std::string out;
  for (const auto& [m, c] : sorted) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty())
      out += spectre::to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += spectre::to_string(mag) + "*" + mono;
  }
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  MultiPoly parse() {
    MultiPoly result(vars_);
    skip_space();
    if (pos_ == s_.size()) error("empty polynomial");
    bool first = true;
    while (true) {
      skip_space();
      if (pos_ == s_.size()) break;
      int sign = 1;
      bool saw_sign = false;
      while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        if (s_[pos_] == '-') sign = -sign;
        saw_sign = true;
        ++pos_;
        skip_space();
      }
      if (!first && !saw_sign) error("expected '+' or '-'");
      auto [m, c] = term();
      result.add_term(m, c * sign);
      first = false;
    }
    return result;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Usage, "parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_factor_start() const {
    if (pos_ >= s_.size()) return false;
    unsigned char ch = static_cast<unsigned char>(s_[pos_]);
    return std::isdigit(ch) || std::isalpha(ch) || ch == '_';
  }

  std::pair<Monomial, Rational> term() {
    Monomial m(vars_.size());
    Rational c(1);
    bool any = false;
    while (true) {
      skip_space();
      if (any && pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        skip_space();
        if (!at_factor_start()) error("expected a factor after '*'");
      }
      if (!at_factor_start()) break;
      factor(m, c);
      any = true;
    }
    if (!any) error("expected a term");
    return {m, c};
  }

  Integer integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected digits");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  int exponent() {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_space();
      std::size_t at = pos_;
      Integer e = integer();
      if (e > 100000) {
        pos_ = at;
        error("exponent too large");
      }
      return static_cast<int>(e.get_si());
    }
    return 1;
  }

  void factor(Monomial& m, Rational& c) {
    unsigned char ch = static_cast<unsigned char>(s_[pos_]);
    if (std::isdigit(ch)) {
      Integer num = integer();
      Integer den(1);
      std::size_t save = pos_;
      skip_space();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip_space();
        den = integer();
        if (den == 0) error("zero denominator");
      } else {
        pos_ = save;
      }
      Rational lit(num, den);
      lit.canonicalize();
      int e = exponent();
      for (int k = 0; k < e; ++k) c *= lit;
      return;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string_view ident = s_.substr(start, pos_ - start);
    std::vector<std::size_t> parts;
    if (!split_identifier(ident, parts)) {
      pos_ = start;
      error("unknown variable '" + std::string(ident) + "'");
    }
    int e = exponent();
    // In "xy^2" the exponent binds to the last variable only.
    for (std::size_t k = 0; k < parts.size(); ++k) m[parts[k]] += k + 1 == parts.size() ? e : 1;
  }

  // Reads an identifier as a variable name, or as a juxtaposition of names.
  bool split_identifier(std::string_view ident, std::vector<std::size_t>& parts) const {
    if (ident.empty()) return true;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == ident) {
        parts.push_back(i);
        return true;
      }
    for (std::size_t len = ident.size() - 1; len >= 1; --len) {
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].size() != len || ident.substr(0, len) != vars_[i]) continue;
        parts.push_back(i);
        if (split_identifier(ident.substr(len), parts)) return true;
        parts.pop_back();
      }
    }
    return false;
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return PolyParser(text, vars).parse();
}

std::vector<std::string> parse_vars(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) fail(ErrorKind::Usage, "empty variable name in '" + std::string(text) + "'");
    for (char ch : cur)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
        fail(ErrorKind::Usage, "bad variable name '" + cur + "'");
    if (std::isdigit(static_cast<unsigned char>(cur[0]))) fail(ErrorKind::Usage, "bad variable name '" + cur + "'");
    if (std::find(out.begin(), out.end(), cur) != out.end()) fail(ErrorKind::Usage, "duplicate variable '" + cur + "'");
    out.push_back(cur);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  flush();
  return out;
}

}  // namespace spectre
