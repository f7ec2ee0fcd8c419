#include "spectre/birkhoff.hpp"

#include <algorithm>

#include "spectre/error.hpp"

namespace spectre {

// ------------------------------------------------------------ section space

QVector SectionSpace::coords(const std::vector<Laurent>& x) const {
  QVector q(dim());
  for (std::size_t i = 0; i < mu; ++i) {
    Laurent p;
    for (std::size_t l = 0; l < mu; ++l)
      if (!d.inverse(i, l).is_zero() && !x[l].is_zero()) p += d.inverse(i, l) * x[l];
    if (p.is_zero()) continue;
    if (p.low() < -b) fail(ErrorKind::Internal, "element outside the section space");
    for (int j = p.low(); j <= p.high() && j < a; ++j)
      q[static_cast<std::size_t>(j + b) * mu + i] = p.coeff(j);
  }
  return q;
}

std::vector<Laurent> SectionSpace::lift(const QVector& q) const {
  std::vector<Laurent> v(mu);
  for (std::size_t i = 0; i < mu; ++i) {
    std::vector<Rational> c(static_cast<std::size_t>(a + b));
    for (int j = -b; j < a; ++j) c[static_cast<std::size_t>(j + b)] = q[static_cast<std::size_t>(j + b) * mu + i];
    v[i] = Laurent(-b, std::move(c));
  }
  std::vector<Laurent> out(mu);
  for (std::size_t r = 0; r < mu; ++r)
    for (std::size_t i = 0; i < mu; ++i)
      if (!d.basis(r, i).is_zero() && !v[i].is_zero()) out[r] += d.basis(r, i) * v[i];
  return out;
}

QMatrix SectionSpace::sections(const Rational& beta) const {
  QMatrix m = t;
  for (std::size_t i = 0; i < dim(); ++i) m(i, i) += beta;
  QMatrix power = m;
  QMatrix ker = nullspace(power);
  while (true) {
    power = power * m;
    QMatrix next = nullspace(power);
    if (next.cols() == ker.cols()) return ker;
    ker = std::move(next);
  }
}

namespace {

SectionSpace make_section_space(const VFiltration& vf) {
  SectionSpace sp;
  sp.mu = vf.mu;
  const DeligneLattice& dl = vf.deligne.front();
  sp.d = dl.log.lattice;
  const Rational c0 = dl.alpha;
  sp.a = static_cast<int>(Integer(floor(c0 - vf.spectrum.min())).get_si()) + 1;
  sp.b = std::max(0, static_cast<int>(Integer(ceil(vf.spectrum.max() - c0)).get_si()));
  const std::size_t n = sp.dim(), mu = sp.mu;
  sp.t = QMatrix(n, n);
  sp.shift = QMatrix(n, n);
  const LaurentMatrix& omega = dl.log.connection;
  for (int j = -sp.b; j < sp.a; ++j)
    for (std::size_t i = 0; i < mu; ++i) {
      std::size_t col = static_cast<std::size_t>(j + sp.b) * mu + i;
      sp.t(col, col) += j;
      if (j + 1 < sp.a) sp.shift(col + mu, col) = 1;
      for (std::size_t l = 0; l < mu; ++l) {
        const Laurent& w = omega(l, i);
        if (w.is_zero()) continue;
        for (int m = w.low(); m <= w.high() && j + m < sp.a; ++m) {
          Rational c = w.coeff(m);
          if (!is_zero(c)) sp.t(static_cast<std::size_t>(j + m + sp.b) * mu + l, col) += c;
        }
      }
    }
  return sp;
}

// Rows giving coordinates in `basis` of the generalized eigenspace component.
QMatrix eigen_projector(const QMatrix& t, const Rational& beta, const QMatrix& basis) {
  const std::size_t n = t.rows();
  QMatrix m = t;
  for (std::size_t i = 0; i < n; ++i) m(i, i) += beta;
  QMatrix fit = matrix_power(m, static_cast<unsigned>(basis.cols() + 1));
  QMatrix full = basis.hcat(column_basis(fit));
  if (full.cols() != n) fail(ErrorKind::Internal, "Fitting decomposition incomplete");
  QMatrix inv = inverse(full);
  QMatrix proj(basis.cols(), n);
  for (std::size_t i = 0; i < basis.cols(); ++i)
    for (std::size_t j = 0; j < n; ++j) proj(i, j) = inv(i, j);
  return proj;
}

std::vector<Laurent> theta_column(const ThetaMatrix& m, std::size_t c, int shift) {
  std::vector<Laurent> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = Laurent::from_theta(m(i, c)).shifted(shift);
  return v;
}

QMatrix as_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

// Smallest N-stable space containing the columns of w.
QMatrix n_closure(const QMatrix& n, QMatrix w) {
  w = column_basis(w);
  while (true) {
    QMatrix next = column_basis(w.hcat(n * w));
    if (next.cols() == w.cols()) return w;
    w = std::move(next);
  }
}

std::size_t meet_dim(const QMatrix& a, const QMatrix& b) {
  return a.cols() + b.cols() - mat_rank(a.hcat(b));
}

}  // namespace

// ------------------------------------------------------------ filtrations

InducedGrFiltration induced_gr_filtration(const LatticePair& lp, const VFiltration& vf) {
  InducedGrFiltration igf;
  if (lp.mu == 0) return igf;
  igf.space = make_section_space(vf);
  const SectionSpace& sp = igf.space;

  std::map<Rational, std::vector<std::pair<Rational, long>>> classes;
  for (const auto& [b, m] : vf.spectrum.entries()) classes[frac(b)].push_back({b, m});

  for (const auto& [cls, members] : classes) {
    GrPiece piece;
    piece.alpha = members.front().first;
    piece.top = static_cast<int>(Integer(members.back().first - piece.alpha).get_si());
    long total = 0;
    for (const auto& [b, m] : members) total += m;
    piece.basis = sp.sections(piece.alpha);
    const std::size_t m = piece.basis.cols();
    if (static_cast<long>(m) != total) fail(ErrorKind::Internal, "graded piece dimension differs from the class multiplicity");
    QMatrix tb = sp.t * piece.basis;
    QMatrix neg = (tb + piece.basis.scaled(piece.alpha)).scaled(Rational(-1));
    piece.n = solve(piece.basis, neg);
    QMatrix proj = eigen_projector(sp.t, piece.alpha, piece.basis);

    long running = 0;
    for (int k = 0; k <= piece.top; ++k) {
      ThetaMatrix cap = lattice_cap_g0(vf.v_lattice(piece.alpha + k));
      std::vector<QVector> cols;
      for (std::size_t c = 0; c < cap.cols(); ++c) cols.push_back(sp.coords(theta_column(cap, c, k)));
      QMatrix img = cols.empty() ? QMatrix(m, 0) : column_basis(proj * as_columns(cols, sp.dim()));
      running += vf.spectrum.mult(piece.alpha + k);
      if (static_cast<long>(img.cols()) != running)
        fail(ErrorKind::Internal, "induced filtration disagrees with the spectrum at " + to_string(Rational(piece.alpha + k)));
      piece.g_steps[k] = std::move(img);
    }
    igf.pieces.push_back(std::move(piece));
  }
  return igf;
}

OppositeFiltration find_opposite_filtration(const InducedGrFiltration& igf) {
  OppositeFiltration of;
  for (const auto& piece : igf.pieces) {
    std::map<int, QMatrix> h;
    const std::size_t m = piece.basis.cols();
    if (piece.top == 0) {
      of.h.push_back(h);
      of.strategy.push_back("single jump");
      continue;
    }
    QMatrix cur(m, 0);  // H^{top+1} = 0
    for (int k = piece.top; k >= 1; --k) {
      const QMatrix& f = piece.g_steps.at(k - 1);
      const std::size_t target = m - f.cols();
      std::vector<QVector> cands;
      for (int j = k; j <= piece.top; ++j)
        for (std::size_t c = 0; c < piece.g_steps.at(j).cols(); ++c) cands.push_back(piece.g_steps.at(j).column(c));
      for (std::size_t c = 0; c < m; ++c) cands.push_back(QMatrix::identity(m).column(c));
      for (const auto& v : cands) {
        if (cur.cols() == target) break;
        QMatrix w = n_closure(piece.n, cur.hcat(as_columns({v}, m)));
        if (w.cols() == cur.cols() || w.cols() > target) continue;
        if (meet_dim(w, f) != 0) continue;
        cur = std::move(w);
      }
      if (cur.cols() != target)
        fail(ErrorKind::Computation, "no N-stable opposite filtration found for alpha = " + to_string(piece.alpha) +
                                         " at k = " + std::to_string(k) + " (reached dimension " +
                                         std::to_string(cur.cols()) + " of " + std::to_string(target) + ")");
      h[k] = cur;
    }
    // Both conditions, checked directly.
    for (int k = 1; k <= piece.top; ++k) {
      const QMatrix& hk = h.at(k);
      if (mat_rank(hk.hcat(piece.g_steps.at(k - 1))) != m || meet_dim(hk, piece.g_steps.at(k - 1)) != 0)
        fail(ErrorKind::Internal, "opposite filtration check failed");
      if (mat_rank(hk.hcat(piece.n * hk)) != hk.cols()) fail(ErrorKind::Internal, "opposite filtration not N-stable");
    }
    of.h.push_back(std::move(h));
    of.strategy.push_back("greedy");
  }
  return of;
}

// ------------------------------------------------------------ good basis

ThetaMatrix gauge_transform(const ThetaMatrix& p, const ThetaMatrix& a) {
  return (theta_sq_derivative(p) + p * a) * theta_mat_inverse(p);
}

bool is_semisimple(const QMatrix& m) {
  if (m.rows() == 0) return true;
  UPoly p = char_poly(m);
  UPoly g = gcd(p, p.derivative());
  UPoly s = divmod(p, g).first;
  return eval_poly(s, m).is_zero();
}

GoodBasisResult construct_good_basis(const LatticePair& lp, const VFiltration& vf, const InducedGrFiltration& igf,
                                     const OppositeFiltration& of) {
  GoodBasisResult r;
  const std::size_t mu = lp.mu;
  if (mu == 0) return r;
  const SectionSpace& sp = igf.space;
  TauEuler euler(lp);

  // tau^a D lies in the target lattice; add lifts of tau^{-k} H^k for every class.
  LaurentMatrix gens = tau_shift(sp.d, sp.a).basis;
  std::vector<std::vector<Laurent>> extra;
  for (std::size_t p = 0; p < igf.pieces.size(); ++p) {
    const GrPiece& piece = igf.pieces[p];
    const std::size_t m = piece.basis.cols();
    QMatrix proj = eigen_projector(sp.t, piece.alpha, piece.basis);
    for (int k = 0; k <= piece.top; ++k) {
      QMatrix hk = k == 0 ? QMatrix::identity(m) : of.h[p].at(k);
      if (hk.cols() == 0) continue;
      QMatrix up = sp.sections(piece.alpha + k);
      QMatrix down = up;
      for (int i = 0; i < k; ++i) down = sp.shift * down;
      QMatrix pre = solve(proj * down, hk);
      QMatrix s = up * pre;
      for (std::size_t c = 0; c < s.cols(); ++c) extra.push_back(sp.lift(s.column(c)));
    }
  }
  LaurentMatrix more(mu, extra.size());
  for (std::size_t c = 0; c < extra.size(); ++c) more.set_column(c, extra[c]);
  TauLattice h0 = tau_reduce(gens.hcat(more), sp.a + sp.d.k_bound);
  make_log_lattice(h0, euler);  // throws unless tau d/dtau stable

  ThetaMatrix e = lattice_cap_g0(h0);
  QMatrix x0 = theta_coeff(e, 0);
  if (e.cols() != mu || mat_rank(x0) != mu)
    fail(ErrorKind::Computation, "no good basis: the lattice at tau=0 meets G_0 in dimension " + std::to_string(e.cols()) +
                                     " with fiber rank " + std::to_string(mat_rank(x0)) + ", expected " + std::to_string(mu));
  e = e * to_theta(inverse(x0));
  r.p = e.transpose();
  r.t_matrix = gauge_transform(r.p, lp.t_matrix);
  int deg = theta_degree(r.t_matrix);
  if (deg > 1) fail(ErrorKind::Internal, "Birkhoff reduction stalled: new matrix has theta-degree " + std::to_string(deg));
  r.a0 = theta_coeff(r.t_matrix, 0);
  r.a1 = theta_coeff(r.t_matrix, 1);
  r.very_good = is_semisimple(r.a1);
  return r;
}

GoodBasisResult good_basis(const LatticePair& lp, const VFiltration& vf) {
  InducedGrFiltration igf = induced_gr_filtration(lp, vf);
  OppositeFiltration of = find_opposite_filtration(igf);
  return construct_good_basis(lp, vf, igf, of);
}

GoodBasisResult good_basis(const LatticePair& lp) { return good_basis(lp, v_filtration(lp)); }

GoodBasisReport verify_good_basis(const GoodBasisResult& r, const Spectrum& s, const LatticePair* original) {
  GoodBasisReport rep;
  int deg = theta_degree(r.t_matrix);
  rep.degree_ok = deg <= 1 && theta_coeff(r.t_matrix, 0) == r.a0 && theta_coeff(r.t_matrix, 1) == r.a1;
  if (deg > 1) rep.failures.push_back("theta-degree " + std::to_string(deg) + ": coefficient of theta^" + std::to_string(deg) + " is nonzero");
  if (!rep.degree_ok && deg <= 1) rep.failures.push_back("A0/A1 do not match the t-matrix");

  Spectrum eig;
  RootFactorization rf = rational_root_factor(char_poly(r.a1));
  for (const auto& [root, m] : rf.roots) eig.add(root, m);
  rep.spectrum_ok = rf.remainder.degree() <= 0 && eig == s;
  if (!rep.spectrum_ok) rep.failures.push_back("eigenvalues of A1 " + eig.to_string() + " differ from " + s.to_string());

  rep.trace = Rational(0);
  for (std::size_t i = 0; i < r.a1.rows(); ++i) rep.trace += r.a1(i, i);
  rep.trace_ok = rep.trace == s.weighted_sum();
  if (!rep.trace_ok) rep.failures.push_back("trace of A1 is " + to_string(rep.trace));

  rep.very_good = is_semisimple(r.a1);
  if (original) {
    // A' P = theta^2 P' + P A, with no inverse involved.
    rep.gauge_ok = r.t_matrix * r.p == theta_sq_derivative(r.p) + r.p * original->t_matrix;
    if (!rep.gauge_ok) rep.failures.push_back("gauge identity fails");
    if (!is_zero(determinant(theta_coeff(r.p, 0))) && r.p.rows() > 0) {
      try {
        theta_mat_inverse(r.p);
      } catch (const Error&) {
        rep.gauge_ok = false;
        rep.failures.push_back("base change is not unimodular");
      }
    }
  }
  return rep;
}

}  // namespace spectre
