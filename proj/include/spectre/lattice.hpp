#pragma once

#include <map>
#include <vector>

#include "spectre/brieskorn.hpp"
#include "spectre/spectrum.hpp"

namespace spectre {

/// A Q[tau]-lattice in G (tau = 1/theta), columns = generators in the
/// coordinates of the G_0 basis. Reduced form: lower triangular with diagonal
/// tau^{v_r}, and every entry left of a pivot has no terms of order >= v_r
/// relative to the row's common shift. Two lattices are equal iff their
/// reduced bases are.
struct TauLattice {
  LaurentMatrix basis;
  LaurentMatrix inverse;
  /// Least k with tau^k * span(g_i) inside the lattice.
  int k_bound = 0;

  std::size_t rank() const { return basis.rows(); }
  int min_order() const;
  friend bool operator==(const TauLattice& a, const TauLattice& b) { return a.basis == b.basis; }
};

/// Reduced form of the lattice spanned by the columns of gens. k_bound must
/// satisfy tau^k_bound * span(g_i) inside the span; an incorrect bound is an
/// internal error.
TauLattice tau_reduce(const LaurentMatrix& gens, int k_bound);

/// tau^k L.
TauLattice tau_shift(const TauLattice& lat, int k);

/// tau d/dtau on coordinate columns: v -> tau v' - tau A^T(1/tau) v.
class TauEuler {
 public:
  explicit TauEuler(const LatticePair& lp);
  LaurentMatrix apply(const LaurentMatrix& w) const;
  std::size_t mu() const { return b_.rows(); }

 private:
  LaurentMatrix b_;
};

struct LogLattice {
  TauLattice lattice;
  LaurentMatrix connection;  // tau d/dtau on the basis columns; no negative powers
  QMatrix residue;           // connection at tau = 0
};

/// Connection and residue of a lattice already known to be tau d/dtau stable.
LogLattice make_log_lattice(TauLattice lat, const TauEuler& euler);

/// Eigenvalues of a residue matrix with multiplicities; throws
/// Error(Computation, "non-quasi-unipotent input ...") if they are not rational.
std::vector<std::pair<Rational, int>> residue_exponents(const QMatrix& residue);

/// L_{k+1} = L_k + tau d/dtau L_k from L_0 = span(g_i) until stable.
/// Throws Error(Computation, "irregular at tau=0") when the iteration cap is hit.
LogLattice saturate_log_lattice(const LatticePair& lp);

struct DeligneLattice {
  Rational alpha;  // -gamma lies in (alpha - 1, alpha] for every residue eigenvalue gamma
  LogLattice log;
};

/// Shears a logarithmic lattice until its exponents fit the window for alpha.
DeligneLattice deligne_lattice(const LogLattice& start, const Rational& alpha, const TauEuler& euler);

/// Basis of L ∩ G_0 as polynomial columns in theta.
ThetaMatrix lattice_cap_g0(const TauLattice& lat);

struct VFiltration {
  std::size_t mu = 0;
  LogLattice saturated;
  std::vector<std::pair<Rational, int>> exponents;  // residue eigenvalues of the saturated lattice
  std::vector<DeligneLattice> deligne;              // V_alpha for each class alpha in [0, 1)
  std::map<Rational, std::size_t> delta;            // dim V_beta ∩ G_0 at scanned beta
  std::map<Rational, QMatrix> image;                // V_beta(G_0/G_-1) in Q^mu at scanned beta
  Spectrum spectrum;

  /// alpha with beta - alpha integral, or -1 if beta is not a candidate.
  Rational class_of(const Rational& beta) const;
  TauLattice v_lattice(const Rational& beta) const;
  /// Image of V_beta ∩ G_0 in G_0/theta G_0, for any rational beta.
  QMatrix image_at(const Rational& beta) const;
};

VFiltration v_filtration(const LatticePair& lp);
Spectrum spectrum_v(const LatticePair& lp);

/// Jordan block sizes of [f] (the theta^0 part of t) acting on the V-graded
/// Milnor algebra, gr_beta -> gr_{beta+1}.
std::vector<std::size_t> f_multiplication_jordan(const LatticePair& lp, const VFiltration& vf);

}  // namespace spectre
