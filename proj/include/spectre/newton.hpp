#pragma once

#include <vector>

#include "spectre/groebner.hpp"
#include "spectre/multipoly.hpp"
#include "spectre/spectrum.hpp"

namespace spectre {

struct Facet {
  /// Linear form coefficients. For faces away from the origin the form is
  /// normalized to equal 1 on the facet; otherwise it vanishes there and is
  /// nonpositive on the polyhedron.
  std::vector<Rational> normal;
  std::vector<std::size_t> points;  // indices into NewtonPolyhedron::points
  bool through_origin = false;

  Rational eval(const Monomial& m) const;
};

/// Convex hull of the support of f together with the origin.
struct NewtonPolyhedron {
  std::size_t dim = 0;
  std::vector<Monomial> points;  // points[0] is the origin
  std::vector<Facet> facets;     // facets not through the origin (the L-facets)
  std::vector<Facet> origin_facets;

  /// Faces (of every dimension) not containing the origin, as point-index sets.
  std::vector<std::vector<std::size_t>> faces_away_from_origin() const;
};

/// Throws Error(Precondition) for a zero polynomial or a lower-dimensional
/// polyhedron (the message reports the affine hull dimension).
NewtonPolyhedron newton_polyhedron(const MultiPoly& f);

bool is_convenient(const MultiPoly& f);
bool is_nondegenerate(const MultiPoly& f);
bool is_nondegenerate(const MultiPoly& f, const NewtonPolyhedron& np);

/// max over L-facets and support points of L(nu).
Rational delta(const MultiPoly& u, const NewtonPolyhedron& np);
/// max over L-facets and support points of L(nu + 1).
Rational delta_star(const MultiPoly& u, const NewtonPolyhedron& np);
Rational delta(const Monomial& m, const NewtonPolyhedron& np);
Rational delta_star(const Monomial& m, const NewtonPolyhedron& np);

struct NewtonOptions {
  bool check_nondegenerate = true;
};

/// Jumps of the Newton filtration on the Milnor algebra.
Spectrum newton_spectrum(const MultiPoly& f, const NewtonOptions& opts = {});
Spectrum newton_spectrum(const MultiPoly& f, const MilnorData& md, const NewtonOptions& opts = {});

}  // namespace spectre
