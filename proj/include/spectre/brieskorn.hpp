#pragma once

#include <string>
#include <vector>

#include "spectre/groebner.hpp"
#include "spectre/matrix.hpp"

namespace spectre {

/// A lattice G_0 of rank mu in G, stable under t = theta^2 d/dtheta.
/// Row i of t_matrix expands t * g_i in the basis g; coordinates of elements
/// therefore transform by the transpose.
struct LatticePair {
  std::size_t mu = 0;
  ThetaMatrix t_matrix;
  long weight = 0;  // n + 1 for polynomial inputs, 0 when unknown
  std::string provenance = "abstract";

  /// Coefficient matrix of theta^k.
  QMatrix coeff(int k) const { return theta_coeff(t_matrix, k); }
  int degree() const { return theta_degree(t_matrix); }
};

/// Coordinates in theta of a class of G_0, one entry per Milnor basis element.
using FormCoords = std::vector<UPoly>;

struct ReduceOptions {
  /// When set, cofactors are taken first from this tracked basis of the
  /// Jacobian ideal (same generators, any order), then from the grevlex one.
  const GroebnerBasis* cofactor_basis = nullptr;
  /// 0 selects the default cap 4 (n+1) (max axis intercept) mu.
  std::size_t max_steps = 0;
};

/// Class of u dx in G_0, using df ^ eta = theta d(eta) repeatedly.
/// Throws Error(Computation) with the degree trace when the cap is hit.
FormCoords reduce_form(const MultiPoly& u, const MilnorData& md, const ReduceOptions& opts = {});

LatticePair t_matrix(const MultiPoly& f, const ReduceOptions& opts = {});
LatticePair t_matrix(const MultiPoly& f, const MilnorData& md, const ReduceOptions& opts = {});

/// t_matrix + c I.
LatticePair twist(const LatticePair& lp, const Rational& c);

/// The pair (G, theta G_0): its t-matrix is A + theta I.
LatticePair theta_shift(const LatticePair& lp);

}  // namespace spectre
