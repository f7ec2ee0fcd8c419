#include "spectre/lattice.hpp"

#include <algorithm>
#include <climits>
#include <future>
#include <set>

#include "spectre/error.hpp"

namespace spectre {

// ------------------------------------------------------------ truncated series

namespace {

// Power series in tau modulo tau^N, dense.
using Series = std::vector<Rational>;

int valuation(const Series& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!is_zero(s[i])) return static_cast<int>(i);
  return static_cast<int>(s.size());
}

bool all_zero(const Series& s) { return valuation(s) == static_cast<int>(s.size()); }

// a -= q * b, everything modulo tau^N.
void sub_mul(Series& a, const Series& q, const Series& b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(q[i])) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (!is_zero(b[j])) a[i + j] -= q[i] * b[j];
  }
}

Series mul(const Series& a, const Series& b) {
  Series r(a.size());
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (!is_zero(b[j])) r[i + j] += a[i] * b[j];
  }
  return r;
}

// s / tau^v, padded with zeros.
Series shift_down(const Series& s, int v) {
  Series r(s.size());
  for (std::size_t i = static_cast<std::size_t>(v); i < s.size(); ++i) r[i - static_cast<std::size_t>(v)] = s[i];
  return r;
}

Series inverse_unit(const Series& u) {
  Series r(u.size());
  r[0] = 1 / u[0];
  for (std::size_t k = 1; k < u.size(); ++k) {
    Rational acc(0);
    for (std::size_t j = 1; j <= k; ++j)
      if (!is_zero(u[j])) acc += u[j] * r[k - j];
    r[k] = -acc * r[0];
  }
  return r;
}

int min_order_of(const LaurentMatrix& m) {
  int lo = INT_MAX;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) lo = std::min(lo, m(i, j).low());
  return lo;
}

int max_order_of(const LaurentMatrix& m) {
  int hi = INT_MIN;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) hi = std::max(hi, m(i, j).high());
  return hi;
}

// Inverse of a reduced basis (lower triangular, monomial diagonal).
LaurentMatrix triangular_inverse(const LaurentMatrix& b) {
  const std::size_t n = b.rows();
  LaurentMatrix x(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    x(c, c) = Laurent::monomial(1 / b(c, c).coeff(b(c, c).low()), -b(c, c).low());
    for (std::size_t r = c + 1; r < n; ++r) {
      Laurent acc;
      for (std::size_t l = c; l < r; ++l)
        if (!b(r, l).is_zero() && !x(l, c).is_zero()) acc += b(r, l) * x(l, c);
      if (acc.is_zero()) continue;
      x(r, c) = -(acc.shifted(-b(r, r).low()) * (1 / b(r, r).coeff(b(r, r).low())));
    }
  }
  return x;
}

}  // namespace

int TauLattice::min_order() const { return min_order_of(basis); }

TauLattice tau_reduce(const LaurentMatrix& gens, int k_bound) {
  const std::size_t mu = gens.rows();
  const std::size_t m = gens.cols();
  const int lo = min_order_of(gens);
  if (lo == INT_MAX) fail(ErrorKind::Internal, "lattice with no nonzero generator");
  if (k_bound < lo) fail(ErrorKind::Internal, "lattice bound below the generator orders");
  // Work in tau^{-lo} L, which sits between tau^D Std and Std.
  const int D = k_bound - lo;
  const std::size_t N = static_cast<std::size_t>(D) + 1;
  std::vector<std::vector<Series>> col(m, std::vector<Series>(mu, Series(N)));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < mu; ++r) {
      const Laurent& e = gens(r, c);
      if (e.is_zero()) continue;
      const auto& d = e.dense();
      for (std::size_t k = 0; k < d.size(); ++k) {
        std::size_t pos = static_cast<std::size_t>(e.low() - lo) + k;
        if (pos < N) col[c][r][pos] = d[k];
      }
    }

  std::vector<int> v(mu);
  for (std::size_t r = 0; r < mu; ++r) {
    std::size_t best = m;
    int best_v = static_cast<int>(N);
    for (std::size_t c = r; c < m; ++c) {
      int val = valuation(col[c][r]);
      if (val < best_v) {
        best_v = val;
        best = c;
      }
    }
    if (best == m) fail(ErrorKind::Internal, "lattice bound violated during reduction");
    std::swap(col[r], col[best]);
    v[r] = best_v;
    Series uinv = inverse_unit(shift_down(col[r][r], best_v));
    for (std::size_t i = r; i < mu; ++i)
      if (!all_zero(col[r][i])) col[r][i] = mul(col[r][i], uinv);
    for (std::size_t c = r + 1; c < m; ++c) {
      if (all_zero(col[c][r])) continue;
      Series q = shift_down(col[c][r], best_v);
      for (std::size_t i = r; i < mu; ++i) sub_mul(col[c][i], q, col[r][i]);
    }
  }
  // Reduce entries left of each pivot modulo the pivot.
  for (std::size_t r = 0; r < mu; ++r)
    for (std::size_t c = 0; c < r; ++c) {
      Series q = shift_down(col[c][r], v[r]);
      if (all_zero(q)) continue;
      for (std::size_t i = r; i < mu; ++i) sub_mul(col[c][i], q, col[r][i]);
    }

  TauLattice lat;
  lat.basis = LaurentMatrix(mu, mu);
  for (std::size_t c = 0; c < mu; ++c)
    for (std::size_t r = c; r < mu; ++r) lat.basis(r, c) = Laurent(lo, col[c][r]);
  lat.inverse = triangular_inverse(lat.basis);
  lat.k_bound = -min_order_of(lat.inverse);
  return lat;
}

TauLattice tau_shift(const TauLattice& lat, int k) {
  TauLattice r = lat;
  for (std::size_t i = 0; i < r.basis.rows(); ++i)
    for (std::size_t j = 0; j < r.basis.cols(); ++j) {
      r.basis(i, j) = r.basis(i, j).shifted(k);
      r.inverse(i, j) = r.inverse(i, j).shifted(-k);
    }
  r.k_bound += k;
  return r;
}

// ------------------------------------------------------------ tau d/dtau

TauEuler::TauEuler(const LatticePair& lp) : b_(lp.mu, lp.mu) {
  for (std::size_t i = 0; i < lp.mu; ++i)
    for (std::size_t j = 0; j < lp.mu; ++j) b_(i, j) = Laurent::from_theta(lp.t_matrix(j, i)).shifted(1);
}

LaurentMatrix TauEuler::apply(const LaurentMatrix& w) const {
  LaurentMatrix r(w.rows(), w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t c = 0; c < w.cols(); ++c) {
      Laurent acc = w(i, c).euler();
      for (std::size_t j = 0; j < w.rows(); ++j)
        if (!b_(i, j).is_zero() && !w(j, c).is_zero()) acc -= b_(i, j) * w(j, c);
      r(i, c) = std::move(acc);
    }
  return r;
}

LogLattice make_log_lattice(TauLattice lat, const TauEuler& euler) {
  LogLattice ll;
  ll.connection = lat.inverse * euler.apply(lat.basis);
  if (min_order_of(ll.connection) < 0) fail(ErrorKind::Internal, "lattice is not logarithmic");
  const std::size_t mu = lat.rank();
  ll.residue = QMatrix(mu, mu);
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t j = 0; j < mu; ++j) ll.residue(i, j) = ll.connection(i, j).coeff(0);
  ll.lattice = std::move(lat);
  return ll;
}

std::vector<std::pair<Rational, int>> residue_exponents(const QMatrix& residue) {
  RootFactorization rf = rational_root_factor(char_poly(residue));
  if (rf.remainder.degree() > 0)
    fail(ErrorKind::Computation, "non-quasi-unipotent input: residue factor " + rf.remainder.to_string() + " has no rational roots");
  return rf.roots;
}

LogLattice saturate_log_lattice(const LatticePair& lp) {
  if (lp.mu == 0) return {};
  TauEuler euler(lp);
  TauLattice lat = tau_reduce(LaurentMatrix::identity(lp.mu), 0);
  const int cap = 4 * static_cast<int>(lp.mu) * (std::max(lp.degree(), 1) + 1);
  for (int iter = 0;; ++iter) {
    if (iter > cap) fail(ErrorKind::Computation, "irregular at tau=0: saturation did not stabilize");
    TauLattice next = tau_reduce(lat.basis.hcat(euler.apply(lat.basis)), lat.k_bound);
    if (next == lat) break;
    lat = std::move(next);
  }
  return make_log_lattice(std::move(lat), euler);
}

DeligneLattice deligne_lattice(const LogLattice& start, const Rational& alpha, const TauEuler& euler) {
  const std::size_t mu = start.lattice.rank();
  LogLattice cur = start;
  int cap = 8 + 4 * static_cast<int>(mu);
  for (const auto& [g, m] : residue_exponents(start.residue)) {
    Integer span = ceil(abs(g)) + 2;
    cap += 2 * static_cast<int>(span.get_si());
  }
  for (int iter = 0;; ++iter) {
    if (iter > cap) fail(ErrorKind::Internal, "Deligne normalization did not converge");
    auto ex = residue_exponents(cur.residue);
    bool any_high = false, any_low = false;
    for (const auto& [g, m] : ex) {
      if (-g > alpha) any_high = true;
      if (-g <= alpha - 1) any_low = true;
    }
    if (!any_high && !any_low) break;
    // Shrink first: replace the generalized eigenspaces with -gamma too large
    // by their tau multiples; otherwise enlarge the low ones by tau^{-1}.
    QMatrix good(mu, 0), bad(mu, 0);
    for (const auto& [g, m] : ex) {
      bool is_bad = any_high ? (-g > alpha) : (-g <= alpha - 1);
      QMatrix shifted = cur.residue;
      for (std::size_t i = 0; i < mu; ++i) shifted(i, i) -= g;
      QMatrix space = nullspace(matrix_power(shifted, static_cast<unsigned>(m)));
      (is_bad ? bad : good) = (is_bad ? bad : good).hcat(space);
    }
    QMatrix p = good.hcat(bad);
    LaurentMatrix pl(mu, mu);
    for (std::size_t i = 0; i < mu; ++i)
      for (std::size_t j = 0; j < mu; ++j)
        if (!is_zero(p(i, j))) pl(i, j) = Laurent(p(i, j));
    LaurentMatrix w = cur.lattice.basis * pl;
    const int step = any_high ? 1 : -1;
    for (std::size_t j = good.cols(); j < mu; ++j)
      for (std::size_t i = 0; i < mu; ++i) w(i, j) = w(i, j).shifted(step);
    int kb = cur.lattice.k_bound + (any_high ? 1 : 0);
    cur = make_log_lattice(tau_reduce(w, kb), euler);
  }
  return {alpha, std::move(cur)};
}

// ------------------------------------------------------------ V ∩ G_0

ThetaMatrix lattice_cap_g0(const TauLattice& lat) {
  const std::size_t mu = lat.rank();
  // x = sum_j x_j theta^j lies in L iff L^{-1} x has no negative tau powers;
  // x = L p with p polynomial bounds the theta degree by -min order of L.
  const int top = std::max(0, -lat.min_order());
  const std::size_t unknowns = static_cast<std::size_t>(top + 1) * mu;
  const int inv_lo = min_order_of(lat.inverse);
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < mu; ++i)
    for (int e = inv_lo - top; e < 0; ++e) {
      QVector row(unknowns);
      bool nonzero = false;
      for (std::size_t l = 0; l < mu; ++l) {
        const Laurent& c = lat.inverse(i, l);
        if (c.is_zero()) continue;
        for (int j = 0; j <= top; ++j) {
          Rational a = c.coeff(e + j);
          if (is_zero(a)) continue;
          row[static_cast<std::size_t>(j) * mu + l] = a;
          nonzero = true;
        }
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  QMatrix sys(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) sys(r, c) = rows[r][c];
  QMatrix ker = rows.empty() ? QMatrix::identity(unknowns) : nullspace(sys);
  ThetaMatrix out(mu, ker.cols());
  for (std::size_t k = 0; k < ker.cols(); ++k)
    for (std::size_t l = 0; l < mu; ++l) {
      std::vector<Rational> coeffs(static_cast<std::size_t>(top) + 1);
      for (int j = 0; j <= top; ++j) coeffs[static_cast<std::size_t>(j)] = ker(static_cast<std::size_t>(j) * mu + l, k);
      out(l, k) = UPoly(std::move(coeffs));
    }
  return out;
}

// ------------------------------------------------------------ V-filtration

Rational VFiltration::class_of(const Rational& beta) const {
  Rational a = frac(beta);
  for (const auto& d : deligne)
    if (d.alpha == a) return a;
  return Rational(-1);
}

TauLattice VFiltration::v_lattice(const Rational& beta) const {
  Rational a = frac(beta);
  for (const auto& d : deligne) {
    if (d.alpha != a) continue;
    Integer k = floor(beta);
    return tau_shift(d.log.lattice, -static_cast<int>(k.get_si()));
  }
  // Off the candidate lattice: V_beta equals V_{beta'} for the largest candidate below.
  Rational best;
  bool found = false;
  for (const auto& d : deligne) {
    Rational c = d.alpha + floor(beta - d.alpha);
    if (!found || c > best) best = c;
    found = true;
  }
  if (!found) fail(ErrorKind::Internal, "V-filtration without classes");
  return v_lattice(best);
}

QMatrix VFiltration::image_at(const Rational& beta) const {
  if (deligne.empty()) return QMatrix(mu, 0);
  Rational best;
  bool found = false;
  for (const auto& d : deligne) {
    Rational c = d.alpha + floor(beta - d.alpha);
    if (!found || c > best) best = c;
    found = true;
  }
  if (auto it = image.find(best); it != image.end()) return it->second;
  // Unscanned candidates sit below the first zero or above the saturation of their class.
  Rational a = frac(best);
  for (auto it = image.begin(); it != image.end(); ++it) {
    if (frac(it->first) != a) continue;
    if (best < it->first) return QMatrix(mu, 0);
  }
  return QMatrix::identity(mu);
}

namespace {

std::vector<DeligneLattice> all_deligne(const LogLattice& sat, const std::set<Rational>& alphas, const TauEuler& euler) {
  std::vector<std::future<DeligneLattice>> jobs;
  for (const auto& a : alphas)
    jobs.push_back(std::async(alphas.size() > 1 ? std::launch::async : std::launch::deferred,
                              [&sat, a, &euler] { return deligne_lattice(sat, a, euler); }));
  std::vector<DeligneLattice> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace

VFiltration v_filtration(const LatticePair& lp) {
  VFiltration vf;
  vf.mu = lp.mu;
  if (lp.mu == 0) return vf;
  TauEuler euler(lp);
  vf.saturated = saturate_log_lattice(lp);
  vf.exponents = residue_exponents(vf.saturated.residue);
  std::set<Rational> alphas;
  for (const auto& [g, m] : vf.exponents) alphas.insert(frac(Rational(-g)));
  vf.deligne = all_deligne(vf.saturated, alphas, euler);

  const std::size_t mu = lp.mu;
  for (const auto& d : vf.deligne) {
    const TauLattice& base = d.log.lattice;
    int spread = std::max(std::abs(base.min_order()), std::abs(max_order_of(base.basis)));
    spread = std::max(spread, lp.degree());
    const int cap = 4 * static_cast<int>(mu) + 2 * spread;
    auto dim_at = [&](int k) -> std::size_t {
      if (std::abs(k) > cap) fail(ErrorKind::Internal, "V-filtration window failed to saturate mu");
      Rational beta = d.alpha + k;
      if (auto it = vf.image.find(beta); it != vf.image.end()) return it->second.cols();
      ThetaMatrix cap_basis = lattice_cap_g0(tau_shift(base, -k));
      QMatrix img = column_basis(theta_coeff(cap_basis, 0));
      vf.delta[beta] = cap_basis.cols();
      std::size_t r = img.cols();
      vf.image[beta] = std::move(img);
      return r;
    };
    int k = 0;
    if (dim_at(k) > 0) {
      while (dim_at(k) > 0) --k;
    } else {
      while (dim_at(k + 1) == 0) ++k;
    }
    while (dim_at(k) < mu) ++k;
  }

  // nu_beta = d(beta) - d(previous candidate), d = dim of the image in G_0/theta G_0.
  std::size_t prev = 0;
  for (const auto& [beta, img] : vf.image) {
    std::size_t cur = img.cols();
    if (cur < prev) fail(ErrorKind::Internal, "V-filtration image not monotone");
    vf.spectrum.add(beta, static_cast<long>(cur - prev));
    prev = cur;
  }
  if (vf.spectrum.total() != static_cast<long>(mu))
    fail(ErrorKind::Internal, "spectrum multiplicities do not sum to mu");
  return vf;
}

Spectrum spectrum_v(const LatticePair& lp) { return v_filtration(lp).spectrum; }

std::vector<std::size_t> f_multiplication_jordan(const LatticePair& lp, const VFiltration& vf) {
  const std::size_t mu = lp.mu;
  if (mu == 0) return {};
  // Basis of Q^mu adapted to the filtration, with grades.
  QMatrix basis(mu, 0);
  std::vector<Rational> grade;
  for (const auto& [beta, img] : vf.image)
    for (std::size_t j = 0; j < img.cols(); ++j) {
      QMatrix cand = basis.hcat(img.columns(j, 1));
      if (mat_rank(cand) == cand.cols()) {
        basis = std::move(cand);
        grade.push_back(beta);
      }
    }
  if (basis.cols() != mu) fail(ErrorKind::Internal, "V-graded basis incomplete");
  QMatrix a0t = lp.coeff(0).transpose();
  QMatrix coords = solve(basis, a0t * basis);
  QMatrix n(mu, mu);
  for (std::size_t j = 0; j < mu; ++j)
    for (std::size_t i = 0; i < mu; ++i) {
      if (is_zero(coords(i, j))) continue;
      if (grade[i] > grade[j] + 1) fail(ErrorKind::Internal, "[f] does not respect the V-filtration");
      if (grade[i] == grade[j] + 1) n(i, j) = coords(i, j);
    }
  return nilpotent_jordan_type(n);
}

}  // namespace spectre
