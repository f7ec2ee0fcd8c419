#pragma once

#include <json.hpp>

#include "spectre/birkhoff.hpp"
#include "spectre/mellin.hpp"

namespace spectre {

using Json = nlohmann::ordered_json;

// Every rational travels as a "p/q" string (or "p" when integral). Malformed
// input raises Error(Usage, ...).

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const QMatrix& m);
QMatrix qmatrix_from_json(const Json& j);

/// Entry (i, j) is the array of theta-coefficients, lowest degree first.
Json to_json(const ThetaMatrix& m);
ThetaMatrix theta_matrix_from_json(const Json& j);

/// [{"beta": "2/3", "mult": 1}, ...] in ascending beta.
Json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j);

/// {"mu": n, "t_matrix": ...}; weight and provenance are optional.
Json to_json(const LatticePair& lp);
LatticePair lattice_pair_from_json(const Json& j);
LatticePair load_lattice_pair(const std::string& path);

/// {"p": ..., "t_matrix": ..., "a0": ..., "a1": ..., "very_good": bool}
Json to_json(const GoodBasisResult& r);
GoodBasisResult good_basis_from_json(const Json& j);

}  // namespace spectre
