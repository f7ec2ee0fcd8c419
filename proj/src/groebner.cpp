#include "spectre/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "spectre/error.hpp"

namespace spectre {

// ---------------------------------------------------------------- orders

MonomialOrder MonomialOrder::lex() {
  MonomialOrder o;
  o.kind_ = OrderKind::Lex;
  return o;
}

MonomialOrder MonomialOrder::weighted(const std::vector<Rational>& weights) {
  MonomialOrder o;
  o.kind_ = OrderKind::Weighted;
  Integer l(1);
  for (const auto& w : weights) {
    if (sgn(w) <= 0) fail(ErrorKind::Precondition, "weighted order needs positive weights");
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w.get_den_mpz_t());
  }
  for (const auto& w : weights) {
    Rational scaled = w * Rational(l);
    o.weights_.push_back(Integer(scaled).get_si());
  }
  return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case OrderKind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case OrderKind::Weighted: {
      long wa = 0, wb = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        wa += weights_[i] * a[i];
        wb += weights_[i] * b[i];
      }
      if (wa != wb) return wa < wb ? -1 : 1;
      return grevlex_compare(a, b);
    }
    case OrderKind::GRevLex:
      break;
  }
  return grevlex_compare(a, b);
}

// ---------------------------------------------------------------- sorted polys

namespace {

struct Term {
  Monomial m;
  Rational c;
};
// Terms in strictly descending order.
using SPoly = std::vector<Term>;

SPoly to_sorted(const MultiPoly& p, const MonomialOrder& ord) {
  SPoly s;
  s.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) s.push_back({m, c});
  std::sort(s.begin(), s.end(), [&](const Term& a, const Term& b) { return ord.compare(a.m, b.m) > 0; });
  return s;
}

MultiPoly from_sorted(const SPoly& s, const std::vector<std::string>& vars) {
  MultiPoly p(vars);
  for (const auto& t : s) p.add_term(t.m, t.c);
  return p;
}

// p[from..] - c * m * g
SPoly sub_mul(const SPoly& p, std::size_t from, const Rational& c, const Monomial& m, const SPoly& g,
              const MonomialOrder& ord) {
  SPoly r;
  r.reserve(p.size() - from + g.size());
  std::size_t i = from, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      r.push_back(p[i++]);
      continue;
    }
    Monomial gm = g[j].m * m;
    int cmp = i < p.size() ? ord.compare(p[i].m, gm) : -1;
    if (cmp > 0) {
      r.push_back(p[i++]);
    } else if (cmp < 0) {
      r.push_back({gm, -c * g[j].c});
      ++j;
    } else {
      Rational v = p[i].c - c * g[j].c;
      if (!is_zero(v)) r.push_back({gm, std::move(v)});
      ++i;
      ++j;
    }
  }
  return r;
}

SPoly scaled(SPoly p, const Rational& s) {
  for (auto& t : p) t.c *= s;
  return p;
}

struct Elem {
  SPoly p;
  std::vector<SPoly> cof;
};

class Reducer {
 public:
  Reducer(const MonomialOrder& ord, std::size_t nvars, bool track) : ord_(ord), nvars_(nvars), track_(track) {}

  // Fully reduces e modulo basis (excluding index skip); the result keeps its cofactors.
  Elem reduce(Elem e, const std::vector<Elem>& basis, std::size_t skip = static_cast<std::size_t>(-1)) const {
    SPoly rem;
    std::size_t from = 0;
    SPoly p = std::move(e.p);
    while (from < p.size()) {
      const Term& lead = p[from];
      std::size_t k = find_divisor(lead.m, basis, skip);
      if (k == basis.size()) {
        rem.push_back(lead);
        ++from;
        continue;
      }
      const SPoly& g = basis[k].p;
      Rational c = lead.c / g[0].c;
      Monomial mm = lead.m / g[0].m;
      if (track_)
        for (std::size_t i = 0; i < e.cof.size(); ++i) e.cof[i] = sub_mul(e.cof[i], 0, c, mm, basis[k].cof[i], ord_);
      p = sub_mul(p, from, c, mm, g, ord_);
      from = 0;
    }
    e.p = std::move(rem);
    return e;
  }

  static std::size_t find_divisor(const Monomial& m, const std::vector<Elem>& basis, std::size_t skip) {
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (k != skip && !basis[k].p.empty() && basis[k].p[0].m.divides(m)) return k;
    return basis.size();
  }

  Elem make_monic(Elem e) const {
    if (e.p.empty()) return e;
    Rational inv = 1 / e.p[0].c;
    e.p = scaled(std::move(e.p), inv);
    for (auto& c : e.cof) c = scaled(std::move(c), inv);
    return e;
  }

  Elem spoly(const Elem& a, const Elem& b) const {
    Monomial l = lcm(a.p[0].m, b.p[0].m);
    Monomial ma = l / a.p[0].m, mb = l / b.p[0].m;
    Elem s;
    SPoly ta = sub_mul(SPoly{}, 0, Rational(-1), ma, a.p, ord_);
    s.p = sub_mul(ta, 0, Rational(1), mb, b.p, ord_);
    if (track_) {
      s.cof.resize(a.cof.size());
      for (std::size_t i = 0; i < a.cof.size(); ++i) {
        SPoly ca = sub_mul(SPoly{}, 0, Rational(-1), ma, a.cof[i], ord_);
        s.cof[i] = sub_mul(ca, 0, Rational(1), mb, b.cof[i], ord_);
      }
    }
    return s;
  }

  std::size_t nvars() const { return nvars_; }

 private:
  const MonomialOrder& ord_;
  std::size_t nvars_;
  bool track_;
};

}  // namespace

Monomial leading_monomial(const MultiPoly& p, const MonomialOrder& order) {
  if (p.is_zero()) fail(ErrorKind::Internal, "leading monomial of zero");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : p.terms())
    if (!best || order.compare(m, *best) > 0) best = &m;
  return *best;
}

Rational leading_coeff(const MultiPoly& p, const MonomialOrder& order) {
  return p.coeff(leading_monomial(p, order));
}

bool GroebnerBasis::is_unit() const {
  return gens.size() == 1 && leads[0].degree() == 0;
}

GroebnerBasis buchberger(const std::vector<MultiPoly>& input, const MonomialOrder& order, bool track) {
  if (input.empty()) fail(ErrorKind::Precondition, "buchberger: empty generator list");
  const std::vector<std::string>& vars = input[0].vars();
  const std::size_t nvars = vars.size();
  for (const auto& g : input)
    if (g.vars() != vars) fail(ErrorKind::Precondition, "buchberger: generators over different variables");
  Reducer red(order, nvars, track);

  std::vector<Elem> basis;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i].is_zero()) continue;
    Elem e;
    e.p = to_sorted(input[i], order);
    if (track) {
      e.cof.resize(input.size());
      e.cof[i] = SPoly{{Monomial(nvars), Rational(1)}};
    }
    basis.push_back(red.make_monic(std::move(e)));
  }

  using Pair = std::pair<std::size_t, std::size_t>;
  std::set<Pair> pending;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});

  auto lead = [&](std::size_t k) -> const Monomial& { return basis[k].p[0].m; };
  auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

  bool unit = false;
  for (const auto& e : basis)
    if (e.p[0].m.degree() == 0) unit = true;

  while (!pending.empty() && !unit) {
    // Normal strategy: the pair with the smallest lcm.
    auto best = pending.begin();
    Monomial best_lcm = lcm(lead(best->first), lead(best->second));
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = lcm(lead(it->first), lead(it->second));
      if (order.compare(l, best_lcm) < 0) {
        best = it;
        best_lcm = l;
      }
    }
    auto [i, j] = *best;
    pending.erase(best);

    if (coprime(lead(i), lead(j))) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == i || k == j || basis[k].p.empty()) continue;
      if (lead(k).divides(best_lcm) && !is_pending(i, k) && !is_pending(j, k)) chain = true;
    }
    if (chain) continue;

    Elem s = red.reduce(red.spoly(basis[i], basis[j]), basis);
    if (s.p.empty()) continue;
    s = red.make_monic(std::move(s));
    std::size_t n = basis.size();
    basis.push_back(std::move(s));
    for (std::size_t k = 0; k < n; ++k) pending.insert({k, n});
    if (basis[n].p[0].m.degree() == 0) unit = true;
  }

  // Minimalize, then interreduce.
  std::vector<Elem> minimal;
  if (unit) {
    for (auto& e : basis)
      if (e.p[0].m.degree() == 0) {
        e.p.resize(1);
        minimal.push_back(red.make_monic(std::move(e)));
        break;
      }
  } else {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      bool redundant = false;
      for (std::size_t l = 0; l < basis.size() && !redundant; ++l) {
        if (l == k) continue;
        if (lead(l).divides(lead(k)) && (lead(l) != lead(k) || l < k)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis[k]);
    }
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      Elem head;
      head.p = SPoly{minimal[k].p[0]};
      Elem tail = minimal[k];
      tail.p.erase(tail.p.begin());
      // Reduce the tail only; the head is untouched by the other leads.
      Elem r = red.reduce(std::move(tail), minimal, k);
      r.p.insert(r.p.begin(), head.p[0]);
      minimal[k] = std::move(r);
    }
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const Elem& a, const Elem& b) { return order.compare(a.p[0].m, b.p[0].m) < 0; });

  GroebnerBasis gb;
  gb.order = order;
  gb.vars = vars;
  gb.input_count = input.size();
  for (const auto& e : minimal) {
    gb.gens.push_back(from_sorted(e.p, vars));
    gb.leads.push_back(e.p[0].m);
    if (track) {
      std::vector<MultiPoly> cofs;
      for (const auto& c : e.cof) cofs.push_back(from_sorted(c, vars));
      gb.cofactors.push_back(std::move(cofs));
    }
  }
  return gb;
}

Division divide(const MultiPoly& p, const GroebnerBasis& gb) {
  if (p.vars() != gb.vars) fail(ErrorKind::Precondition, "divide: variable lists differ");
  const MonomialOrder& ord = gb.order;
  std::vector<SPoly> gens;
  for (const auto& g : gb.gens) gens.push_back(to_sorted(g, ord));
  std::vector<MultiPoly> quotients(gens.size(), MultiPoly(gb.vars));
  SPoly rem;
  SPoly work = to_sorted(p, ord);
  std::size_t from = 0;
  while (from < work.size()) {
    const Term& lead = work[from];
    std::size_t k = 0;
    while (k < gens.size() && !gens[k][0].m.divides(lead.m)) ++k;
    if (k == gens.size()) {
      rem.push_back(lead);
      ++from;
      continue;
    }
    Rational c = lead.c / gens[k][0].c;
    Monomial mm = lead.m / gens[k][0].m;
    quotients[k].add_term(mm, c);
    work = sub_mul(work, from, c, mm, gens[k], ord);
    from = 0;
  }
  return {from_sorted(rem, gb.vars), std::move(quotients)};
}

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& gb) { return divide(p, gb).remainder; }

CofactorForm normal_form_cofactors(const MultiPoly& p, const GroebnerBasis& gb) {
  if (gb.cofactors.size() != gb.gens.size()) fail(ErrorKind::Internal, "Groebner basis does not track cofactors");
  Division d = divide(p, gb);
  CofactorForm out{std::move(d.remainder), std::vector<MultiPoly>(gb.input_count, MultiPoly(gb.vars))};
  for (std::size_t j = 0; j < gb.gens.size(); ++j) {
    if (d.quotients[j].is_zero()) continue;
    for (std::size_t i = 0; i < gb.input_count; ++i)
      if (!gb.cofactors[j][i].is_zero()) out.cofactors[i] += d.quotients[j] * gb.cofactors[j][i];
  }
  return out;
}

// ---------------------------------------------------------------- Milnor algebra

QVector MilnorData::coordinates(const MultiPoly& reduced) const {
  QVector v(mu);
  for (const auto& [m, c] : reduced.terms()) {
    auto it = index.find(m);
    if (it == index.end()) fail(ErrorKind::Internal, "coordinates: term is not a standard monomial");
    v[it->second] = c;
  }
  return v;
}

MultiPoly MilnorData::basis_element(std::size_t i) const {
  return MultiPoly::monomial(f.vars(), standard_monomials.at(i));
}

long MilnorData::index_of(const Monomial& m) const {
  auto it = index.find(m);
  return it == index.end() ? -1 : static_cast<long>(it->second);
}

QMatrix multiplication_matrix(const MilnorData& md, const MultiPoly& g) {
  QMatrix m(md.mu, md.mu);
  for (std::size_t i = 0; i < md.mu; ++i) {
    MultiPoly prod = g.times_monomial(md.standard_monomials[i]);
    QVector c = md.coordinates(md.f.nvars() == 0 ? prod : normal_form(prod, md.jacobian_gb));
    for (std::size_t j = 0; j < md.mu; ++j) m(i, j) = c[j];
  }
  return m;
}

MilnorData milnor_data(const MultiPoly& f) {
  MilnorData md;
  md.f = f;
  const std::size_t n = f.nvars();
  for (std::size_t i = 0; i < n; ++i) md.partials.push_back(f.partial(i));
  if (n == 0) {
    // A point: the quotient is Q itself.
    md.jacobian_gb.vars = f.vars();
    md.standard_monomials.push_back(Monomial(0));
    md.mu = 1;
    md.index[Monomial(0)] = 0;
    return md;
  }
  md.jacobian_gb = buchberger(md.partials, MonomialOrder::grevlex(), true);
  const auto& leads = md.jacobian_gb.leads;
  if (md.jacobian_gb.is_unit()) return md;  // no critical points: mu = 0

  std::vector<int> bound(n, -1);
  for (const auto& l : leads) {
    std::size_t nonzero = 0, var = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (l[i] > 0) {
        ++nonzero;
        var = i;
      }
    if (nonzero == 1 && (bound[var] < 0 || l[var] < bound[var])) bound[var] = l[var];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (bound[i] < 0) fail(ErrorKind::Precondition, "non-isolated critical locus");

  // Enumerate the box below the pure-power leads, keep what no lead divides.
  Monomial m(n);
  while (true) {
    bool standard = true;
    for (const auto& l : leads)
      if (l.divides(m)) {
        standard = false;
        break;
      }
    if (standard) md.standard_monomials.push_back(m);
    std::size_t i = 0;
    while (i < n) {
      if (++m[i] < bound[i]) break;
      m[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  std::sort(md.standard_monomials.begin(), md.standard_monomials.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return grevlex_compare(a, b) > 0;
  });
  md.mu = md.standard_monomials.size();
  for (std::size_t k = 0; k < md.mu; ++k) md.index[md.standard_monomials[k]] = k;
  return md;
}

bool has_torus_zero(const std::vector<MultiPoly>& gens) {
  std::vector<MultiPoly> nonzero;
  for (const auto& g : gens)
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.empty()) return true;
  std::vector<std::string> vars = nonzero[0].vars();
  const std::size_t n = vars.size();
  std::string aux = "_z";
  while (std::find(vars.begin(), vars.end(), aux) != vars.end()) aux += "_";
  std::vector<std::string> ext = vars;
  ext.push_back(aux);
  std::vector<MultiPoly> lifted;
  for (const auto& g : nonzero) {
    MultiPoly h(ext);
    for (const auto& [m, c] : g.terms()) {
      std::vector<int> e = m.exponents();
      e.push_back(0);
      h.add_term(Monomial(e), c);
    }
    lifted.push_back(std::move(h));
  }
  Monomial all(n + 1);
  for (std::size_t i = 0; i <= n; ++i) all[i] = 1;
  MultiPoly rel = MultiPoly::monomial(ext, all) - MultiPoly(ext, Rational(1));
  lifted.push_back(std::move(rel));
  return !buchberger(lifted).is_unit();
}

}  // namespace spectre
