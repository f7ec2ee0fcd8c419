#include "spectre/brieskorn.hpp"

#include <algorithm>
#include <future>

#include "spectre/error.hpp"

namespace spectre {

namespace {

std::size_t default_cap(const MilnorData& md) {
  const MultiPoly& f = md.f;
  int intercept = 0;
  for (const auto& [m, c] : f.terms())
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (m[i] == m.degree()) intercept = std::max(intercept, m[i]);
  if (intercept == 0) intercept = std::max(1, f.total_degree());
  return 4 * f.nvars() * static_cast<std::size_t>(intercept) * std::max<std::size_t>(md.mu, 1);
}

// Span of the tails seen since the last nonzero remainder, kept in echelon
// form: each stored vector vanishes at the pivots of the earlier ones.
class TailSpan {
 public:
  void clear() { rows_.clear(); }
  // Reduces p against the span; true if it was already inside.
  bool absorb(MultiPoly p) {
    for (const auto& [pivot, row] : rows_) {
      Rational c = p.coeff(pivot);
      if (!is_zero(c)) p -= row * c;
    }
    if (p.is_zero()) return true;
    auto lead = std::prev(p.terms().end());
    Monomial pivot = lead->first;
    p *= Rational(1) / lead->second;
    rows_.emplace_back(pivot, std::move(p));
    return false;
  }

 private:
  std::vector<std::pair<Monomial, MultiPoly>> rows_;
};

}  // namespace

FormCoords reduce_form(const MultiPoly& u, const MilnorData& md, const ReduceOptions& opts) {
  if (u.vars() != md.f.vars()) fail(ErrorKind::Precondition, "reduce_form: variable lists differ");
  const std::size_t n = md.f.nvars();
  const std::size_t cap = opts.max_steps ? opts.max_steps : default_cap(md);
  FormCoords coords(md.mu);
  MultiPoly cur = u;
  std::vector<int> trace;
  TailSpan tails;
  for (std::size_t step = 0; !cur.is_zero(); ++step) {
    trace.push_back(cur.total_degree());
    if (step >= cap) {
      std::string t;
      for (std::size_t i = trace.size() > 12 ? trace.size() - 12 : 0; i < trace.size(); ++i)
        t += (t.empty() ? "" : ",") + std::to_string(trace[i]);
      fail(ErrorKind::Computation,
           "reduction stalled after " + std::to_string(cap) + " steps (recent degrees " + t + ")");
    }
    // cur = sum_b c_b b + sum_i a_i d_i f
    std::vector<MultiPoly> a(n, MultiPoly(md.f.vars()));
    MultiPoly rest = cur;
    if (opts.cofactor_basis) {
      CofactorForm first = normal_form_cofactors(rest, *opts.cofactor_basis);
      for (std::size_t i = 0; i < n; ++i) a[i] += first.cofactors[i];
      rest = first.remainder;
    }
    CofactorForm cf = normal_form_cofactors(rest, md.jacobian_gb);
    for (std::size_t i = 0; i < n; ++i) a[i] += cf.cofactors[i];
    QVector c = md.coordinates(cf.remainder);
    // One step is linear in cur. Once the tails since the last nonzero
    // remainder span a space mapped into itself, every later remainder is 0.
    if (cf.remainder.is_zero()) {
      if (tails.absorb(cur)) break;
    } else {
      tails.clear();
    }
    for (std::size_t b = 0; b < md.mu; ++b)
      if (!is_zero(c[b])) coords[b] += UPoly::monomial(c[b], static_cast<int>(step));
    // df ^ eta = theta d(eta) with d(eta) = (sum_i d_i a_i) dx
    MultiPoly next(md.f.vars());
    for (std::size_t i = 0; i < n; ++i) next += a[i].partial(i);
    cur = std::move(next);
  }
  return coords;
}

LatticePair t_matrix(const MultiPoly& f, const ReduceOptions& opts) { return t_matrix(f, milnor_data(f), opts); }

LatticePair t_matrix(const MultiPoly& f, const MilnorData& md, const ReduceOptions& opts) {
  LatticePair lp;
  lp.mu = md.mu;
  lp.weight = static_cast<long>(f.nvars());
  lp.provenance = f.to_string();
  lp.t_matrix = ThetaMatrix(md.mu, md.mu);
  std::vector<std::future<FormCoords>> rows;
  for (std::size_t i = 0; i < md.mu; ++i) {
    MultiPoly u = f.times_monomial(md.standard_monomials[i]);
    auto launch = md.mu > 4 ? std::launch::async : std::launch::deferred;
    rows.push_back(std::async(launch, [u = std::move(u), &md, &opts] { return reduce_form(u, md, opts); }));
  }
  for (std::size_t i = 0; i < md.mu; ++i) {
    FormCoords row = rows[i].get();
    for (std::size_t j = 0; j < md.mu; ++j) lp.t_matrix(i, j) = row[j];
  }
  return lp;
}

LatticePair twist(const LatticePair& lp, const Rational& c) {
  LatticePair r = lp;
  for (std::size_t i = 0; i < lp.mu; ++i) r.t_matrix(i, i) += UPoly(c);
  return r;
}

LatticePair theta_shift(const LatticePair& lp) {
  LatticePair r = lp;
  for (std::size_t i = 0; i < lp.mu; ++i) r.t_matrix(i, i) += UPoly::x();
  return r;
}

}  // namespace spectre
