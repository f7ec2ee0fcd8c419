#include "spectre/newton.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "spectre/error.hpp"
#include "spectre/matrix.hpp"

namespace spectre {

Rational Facet::eval(const Monomial& m) const {
  Rational v(0);
  for (std::size_t i = 0; i < normal.size(); ++i)
    if (m[i] != 0) v += normal[i] * m[i];
  return v;
}

NewtonPolyhedron newton_polyhedron(const MultiPoly& f) {
  if (f.is_zero()) fail(ErrorKind::Precondition, "Newton polyhedron of the zero polynomial");
  NewtonPolyhedron np;
  const std::size_t d = f.nvars();
  np.dim = d;
  np.points.push_back(Monomial(d));
  for (const auto& m : f.support())
    if (m.degree() > 0) np.points.push_back(m);
  const std::size_t npts = np.points.size();

  QMatrix coords(npts, d);
  for (std::size_t p = 0; p < npts; ++p)
    for (std::size_t i = 0; i < d; ++i) coords(p, i) = np.points[p][i];
  std::size_t hull_dim = mat_rank(coords);
  if (hull_dim < d)
    fail(ErrorKind::Precondition,
         "degenerate Newton polyhedron: affine hull has dimension " + std::to_string(hull_dim) + " < " + std::to_string(d));

  // Every hyperplane through d affinely independent points, kept when all
  // points lie on one closed side.
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t k, std::size_t start) {
    if (k == d) {
      QMatrix sys(d, d + 1);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t i = 0; i < d; ++i) sys(r, i) = coords(pick[r], i);
        sys(r, d) = -1;
      }
      QMatrix ker = nullspace(sys);
      if (ker.cols() != 1) return;
      std::vector<Rational> w(d);
      for (std::size_t i = 0; i < d; ++i) w[i] = ker(i, 0);
      Rational c = ker(d, 0);
      int side = 0;
      std::vector<std::size_t> on;
      for (std::size_t p = 0; p < npts; ++p) {
        Rational v(-c);
        for (std::size_t i = 0; i < d; ++i) v += w[i] * coords(p, i);
        int s = sgn(v);
        if (s == 0) {
          on.push_back(p);
        } else if (side == 0) {
          side = s;
        } else if (s != side) {
          return;
        }
      }
      if (!seen.insert(on).second) return;
      Facet facet;
      facet.points = on;
      if (is_zero(c)) {
        // Orient so the polyhedron lies where the form is nonpositive.
        if (side > 0)
          for (auto& x : w) x = -x;
        facet.normal = w;
        facet.through_origin = true;
        np.origin_facets.push_back(std::move(facet));
      } else {
        for (auto& x : w) x /= c;
        facet.normal = w;
        np.facets.push_back(std::move(facet));
      }
      return;
    }
    for (std::size_t p = start; p + (d - k) <= npts; ++p) {
      pick[k] = p;
      choose(k + 1, p + 1);
    }
  };
  choose(0, 0);
  return np;
}

std::vector<std::vector<std::size_t>> NewtonPolyhedron::faces_away_from_origin() const {
  std::set<std::vector<std::size_t>> faces;
  std::vector<std::vector<std::size_t>> queue;
  for (const auto& f : facets)
    if (faces.insert(f.points).second) queue.push_back(f.points);
  std::vector<const Facet*> all;
  for (const auto& f : facets) all.push_back(&f);
  for (const auto& f : origin_facets) all.push_back(&f);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const Facet* g : all) {
      std::vector<std::size_t> meet;
      std::set_intersection(queue[q].begin(), queue[q].end(), g->points.begin(), g->points.end(),
                            std::back_inserter(meet));
      if (meet.empty() || meet.front() == 0) continue;
      if (faces.insert(meet).second) queue.push_back(meet);
    }
  }
  return {faces.begin(), faces.end()};
}

bool is_convenient(const MultiPoly& f) {
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    bool found = false;
    for (const auto& [m, c] : f.terms()) {
      if (m[i] == 0 || m.degree() != m[i]) continue;
      found = true;
      break;
    }
    if (!found) return false;
  }
  return true;
}

bool is_nondegenerate(const MultiPoly& f, const NewtonPolyhedron& np) {
  for (const auto& face : np.faces_away_from_origin()) {
    MultiPoly fs(f.vars());
    for (std::size_t p : face) fs.add_term(np.points[p], f.coeff(np.points[p]));
    std::vector<MultiPoly> gens;
    for (std::size_t i = 0; i < f.nvars(); ++i) gens.push_back(MultiPoly::variable(f.vars(), i) * fs.partial(i));
    if (has_torus_zero(gens)) return false;
  }
  return true;
}

bool is_nondegenerate(const MultiPoly& f) { return is_nondegenerate(f, newton_polyhedron(f)); }

namespace {

Rational max_form(const Monomial& m, const NewtonPolyhedron& np, int shift) {
  if (np.facets.empty()) fail(ErrorKind::Precondition, "Newton polyhedron has no facet away from the origin");
  Rational best;
  bool first = true;
  for (const auto& facet : np.facets) {
    Rational v(0);
    for (std::size_t i = 0; i < facet.normal.size(); ++i) v += facet.normal[i] * (m[i] + shift);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

Rational max_over_support(const MultiPoly& u, const NewtonPolyhedron& np, int shift) {
  if (u.is_zero()) fail(ErrorKind::Precondition, "Newton weight of the zero polynomial");
  Rational best;
  bool first = true;
  for (const auto& [m, c] : u.terms()) {
    Rational v = max_form(m, np, shift);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

}  // namespace

Rational delta(const Monomial& m, const NewtonPolyhedron& np) { return max_form(m, np, 0); }
Rational delta_star(const Monomial& m, const NewtonPolyhedron& np) { return max_form(m, np, 1); }
Rational delta(const MultiPoly& u, const NewtonPolyhedron& np) { return max_over_support(u, np, 0); }
Rational delta_star(const MultiPoly& u, const NewtonPolyhedron& np) { return max_over_support(u, np, 1); }

namespace {

NewtonPolyhedron checked_polyhedron(const MultiPoly& f, const NewtonOptions& opts) {
  if (!is_convenient(f)) fail(ErrorKind::Precondition, "not convenient");
  NewtonPolyhedron np = newton_polyhedron(f);
  if (opts.check_nondegenerate && !is_nondegenerate(f, np))
    fail(ErrorKind::Precondition, "degenerate with respect to the Newton polyhedron");
  return np;
}

Spectrum newton_filtration_jumps(const MultiPoly& f, const MilnorData& md, const NewtonPolyhedron& np);

}  // namespace

Spectrum newton_spectrum(const MultiPoly& f, const NewtonOptions& opts) {
  NewtonPolyhedron np = checked_polyhedron(f, opts);
  return newton_filtration_jumps(f, milnor_data(f), np);
}

Spectrum newton_spectrum(const MultiPoly& f, const MilnorData& md, const NewtonOptions& opts) {
  return newton_filtration_jumps(f, md, checked_polyhedron(f, opts));
}

namespace {

Spectrum newton_filtration_jumps(const MultiPoly& f, const MilnorData& md, const NewtonPolyhedron& np) {
  const std::size_t d = f.nvars();
  const std::size_t mu = md.mu;
  Spectrum spec;
  if (mu == 0) return spec;

  std::vector<QMatrix> mult;
  for (std::size_t i = 0; i < d; ++i) mult.push_back(multiplication_matrix(md, MultiPoly::variable(f.vars(), i)));

  std::vector<int> intercept(d, 0);
  for (const auto& [mono, c] : f.terms())
    for (std::size_t i = 0; i < d; ++i)
      if (mono[i] == mono.degree()) intercept[i] = std::max(intercept[i], mono[i]);

  // The class of every monomial in the Milnor algebra, built from its parent.
  std::map<Monomial, QVector> classes;
  auto class_of = [&](const Monomial& m) -> const QVector& {
    auto it = classes.find(m);
    if (it != classes.end()) return it->second;
    std::vector<Monomial> chain{m};
    while (true) {
      Monomial cur = chain.back();
      std::size_t i = 0;
      while (i < d && cur[i] == 0) ++i;
      if (i == d) break;
      cur[i] -= 1;
      if (classes.count(cur)) {
        chain.push_back(cur);
        break;
      }
      chain.push_back(cur);
    }
    if (!classes.count(chain.back())) {
      QVector one(mu);
      one[static_cast<std::size_t>(md.index_of(Monomial(d)))] = 1;
      classes[chain.back()] = one;
    }
    for (std::size_t k = chain.size() - 1; k-- > 0;) {
      const Monomial& child = chain[k];
      std::size_t i = 0;
      while (child[i] == chain[k + 1][i]) ++i;
      const QVector& pv = classes.at(chain[k + 1]);
      QVector v(mu);
      for (std::size_t r = 0; r < mu; ++r) {
        if (is_zero(pv[r])) continue;
        for (std::size_t c = 0; c < mu; ++c)
          if (!is_zero(mult[i](r, c))) v[c] += pv[r] * mult[i](r, c);
      }
      classes[child] = std::move(v);
    }
    return classes.at(m);
  };

  for (int bound = static_cast<int>(d) + 1; bound <= 4 * static_cast<int>(d + 1); ++bound) {
    // Monomials with delta* <= bound. Facet normals may have negative entries,
    // but nu + 1 lies in bound * Gamma, which sits in the box of axis intercepts.
    std::vector<std::pair<Rational, Monomial>> region;
    Monomial m(d);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == d) {
        Rational w = delta_star(m, np);
        if (w <= bound) region.push_back({w, m});
        return;
      }
      for (m[i] = 0; m[i] + 1 <= bound * intercept[i]; ++m[i]) walk(i + 1);
      m[i] = 0;
    };
    walk(0);
    std::stable_sort(region.begin(), region.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    spec = Spectrum();
    std::vector<QVector> rows;
    std::vector<std::size_t> pivots;
    for (const auto& [w, mono] : region) {
      QVector v = class_of(mono);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (is_zero(v[pivots[r]])) continue;
        Rational c = v[pivots[r]];
        for (std::size_t j = 0; j < mu; ++j)
          if (!is_zero(rows[r][j])) v[j] -= c * rows[r][j];
      }
      std::size_t p = 0;
      while (p < mu && is_zero(v[p])) ++p;
      if (p == mu) continue;
      Rational inv = 1 / v[p];
      for (auto& x : v) x *= inv;
      rows.push_back(std::move(v));
      pivots.push_back(p);
      spec.add(w);
      if (rows.size() == mu) break;
    }
    if (rows.size() == mu) return spec;
  }
  fail(ErrorKind::Internal, "Newton filtration did not exhaust the Milnor algebra");
}

}  // namespace

}  // namespace spectre
