#pragma once

#include <map>
#include <string>
#include <vector>

#include "spectre/lattice.hpp"

namespace spectre {

/// Truncation Q = tau^{-b} D / tau^a D of G around tau = 0, where D is a
/// Deligne lattice. On Q, tau d/dtau is a finite matrix T and the generalized
/// eigenspace of T for -beta is a copy of the elementary sections of weight
/// beta. Coordinates: index (j + b) * mu + i stands for tau^j D e_i.
struct SectionSpace {
  std::size_t mu = 0;
  int a = 0, b = 0;
  TauLattice d;
  QMatrix t;      // tau d/dtau
  QMatrix shift;  // multiplication by tau

  std::size_t dim() const { return mu * static_cast<std::size_t>(a + b); }
  /// Q-coordinates of an element of tau^{-b} D (Laurent column in G_0 coordinates).
  QVector coords(const std::vector<Laurent>& x) const;
  /// A representative in G of a vector of Q.
  std::vector<Laurent> lift(const QVector& q) const;
  /// Basis (columns) of the generalized eigenspace of T for -beta.
  QMatrix sections(const Rational& beta) const;
};

/// G_k gr_alpha^V for one class, alpha the least spectral number of the class.
struct GrPiece {
  Rational alpha;
  QMatrix basis;                  // C^alpha inside Q, columns
  std::map<int, QMatrix> g_steps;  // k -> G_k gr_alpha in basis coordinates (columns); k >= 0
  int top = 0;                     // G_top gr_alpha is everything
  QMatrix n;                       // N = -(tau d/dtau + alpha) in basis coordinates
};

struct InducedGrFiltration {
  SectionSpace space;
  std::vector<GrPiece> pieces;
};

InducedGrFiltration induced_gr_filtration(const LatticePair& lp, const VFiltration& vf);

struct OppositeFiltration {
  /// h[p][k] for 1 <= k <= top of piece p; H^k is everything for k <= 0 and
  /// zero above top.
  std::vector<std::map<int, QMatrix>> h;
  std::vector<std::string> strategy;  // "single jump" or "greedy" per piece
};

/// Throws Error(Computation, "no N-stable opposite filtration found ...") when
/// the greedy search fails.
OppositeFiltration find_opposite_filtration(const InducedGrFiltration& igf);

struct GoodBasisResult {
  ThetaMatrix p;         // row i = coordinates of the new basis element i; P(0) = I
  ThetaMatrix t_matrix;  // matrix of t in the new basis
  QMatrix a0, a1;
  bool very_good = false;
};

/// Builds the logarithmic lattice spanned by the opposite filtration and reads
/// a basis of its intersection with G_0.
GoodBasisResult construct_good_basis(const LatticePair& lp, const VFiltration& vf, const InducedGrFiltration& igf,
                                     const OppositeFiltration& of);
/// The whole pipeline.
GoodBasisResult good_basis(const LatticePair& lp);
GoodBasisResult good_basis(const LatticePair& lp, const VFiltration& vf);

struct GoodBasisReport {
  bool degree_ok = false;
  bool spectrum_ok = false;
  bool trace_ok = false;
  bool gauge_ok = true;  // only checked when the original pair is supplied
  bool very_good = false;
  Rational trace;
  std::vector<std::string> failures;
  bool ok() const { return degree_ok && spectrum_ok && trace_ok && gauge_ok; }
};

/// Independent re-verification of a result.
GoodBasisReport verify_good_basis(const GoodBasisResult& r, const Spectrum& s, const LatticePair* original = nullptr);

/// Minimal polynomial squarefree.
bool is_semisimple(const QMatrix& m);

/// theta^2 P' P^{-1} + P A P^{-1}.
ThetaMatrix gauge_transform(const ThetaMatrix& p, const ThetaMatrix& a);

}  // namespace spectre
