#pragma once

#include <map>
#include <vector>

#include "spectre/matrix.hpp"
#include "spectre/multipoly.hpp"

namespace spectre {

enum class OrderKind { GRevLex, Lex, Weighted };

/// Monomial order. Weighted compares by an integer weight first and breaks
/// ties with grevlex.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex();
  /// Positive rational weights, rescaled internally to integers.
  static MonomialOrder weighted(const std::vector<Rational>& weights);

  OrderKind kind() const { return kind_; }
  /// -1, 0 or 1 as a is smaller, equal or larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

 private:
  OrderKind kind_ = OrderKind::GRevLex;
  std::vector<long> weights_;
};

Monomial leading_monomial(const MultiPoly& p, const MonomialOrder& order);
Rational leading_coeff(const MultiPoly& p, const MonomialOrder& order);

struct GroebnerBasis {
  MonomialOrder order;
  std::vector<std::string> vars;
  /// Reduced and monic, sorted by ascending leading monomial.
  std::vector<MultiPoly> gens;
  std::vector<Monomial> leads;
  /// When tracked: gens[j] = sum_i cofactors[j][i] * input[i].
  std::vector<std::vector<MultiPoly>> cofactors;
  std::size_t input_count = 0;

  bool tracks_cofactors() const { return !cofactors.empty() || gens.empty(); }
  /// True when the ideal is the whole ring.
  bool is_unit() const;
};

/// Reduced Groebner basis by Buchberger's algorithm with the product and
/// chain criteria. With track_cofactors, every basis element also records its
/// expression in the input generators.
GroebnerBasis buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& order = {},
                         bool track_cofactors = false);

struct Division {
  MultiPoly remainder;
  std::vector<MultiPoly> quotients;  // one per basis element
};

/// Full multivariate division: p = sum quotients[j] * gb.gens[j] + remainder.
Division divide(const MultiPoly& p, const GroebnerBasis& gb);

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& gb);

struct CofactorForm {
  MultiPoly remainder;
  std::vector<MultiPoly> cofactors;  // one per input generator
};

/// p = sum cofactors[i] * input[i] + normal_form(p). Needs a tracked basis.
CofactorForm normal_form_cofactors(const MultiPoly& p, const GroebnerBasis& gb);

struct MilnorData {
  MultiPoly f;
  std::vector<MultiPoly> partials;
  GroebnerBasis jacobian_gb;
  /// Ascending degree; within a degree, descending grevlex (so 1, x, y, xy).
  std::vector<Monomial> standard_monomials;
  std::size_t mu = 0;
  std::map<Monomial, std::size_t> index;

  /// Coordinates of a normal form in the standard-monomial basis.
  QVector coordinates(const MultiPoly& reduced) const;
  MultiPoly basis_element(std::size_t i) const;
  /// Index of a standard monomial, or -1.
  long index_of(const Monomial& m) const;
};

/// Row i holds the coordinates of g * b_i modulo the Jacobian ideal, so a row
/// vector of coordinates c maps to c * M under multiplication by g.
QMatrix multiplication_matrix(const MilnorData& md, const MultiPoly& g);

/// Throws Error(Precondition, "non-isolated critical locus") unless the
/// Jacobian ideal is zero-dimensional.
MilnorData milnor_data(const MultiPoly& f);

/// True iff the polynomials have a common zero with all coordinates nonzero.
bool has_torus_zero(const std::vector<MultiPoly>& gens);

}  // namespace spectre
