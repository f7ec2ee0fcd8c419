#include "spectre/json_io.hpp"

#include <fstream>

#include "spectre/error.hpp"

namespace spectre {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::Usage, "malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    bad(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

template <class T, class F>
Matrix<T> grid_from_json(const Json& j, F&& entry) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? (j[0].is_array() ? j[0].size() : 0) : 0;
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = entry(j[i][k]);
  }
  return m;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error&) {
      bad("\"" + j.get<std::string>() + "\" is not a rational");
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad("rationals must be \"p/q\" strings");
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

QMatrix qmatrix_from_json(const Json& j) { return grid_from_json<Rational>(j, rational_from_json); }

Json to_json(const ThetaMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      Json coeffs = Json::array();
      for (const auto& c : m(i, k).coeffs()) coeffs.push_back(to_json(c));
      row.push_back(std::move(coeffs));
    }
    out.push_back(std::move(row));
  }
  return out;
}

ThetaMatrix theta_matrix_from_json(const Json& j) {
  return grid_from_json<UPoly>(j, [](const Json& e) {
    if (!e.is_array()) bad("theta entries must be coefficient arrays");
    std::vector<Rational> c;
    for (const auto& x : e) c.push_back(rational_from_json(x));
    return UPoly(std::move(c));
  });
}

Json to_json(const Spectrum& s) {
  Json out = Json::array();
  for (const auto& [b, m] : s.entries()) out.push_back({{"beta", to_json(b)}, {"mult", m}});
  return out;
}

Spectrum spectrum_from_json(const Json& j) {
  if (!j.is_array()) bad("spectrum must be an array");
  Spectrum s;
  for (const auto& e : j) {
    const Json& m = field(e, "mult");
    if (!m.is_number_integer() || m.get<long>() <= 0) bad("multiplicities must be positive integers");
    s.add(rational_from_json(field(e, "beta")), m.get<long>());
  }
  return s;
}

Json to_json(const LatticePair& lp) {
  Json out{{"mu", lp.mu}, {"t_matrix", to_json(lp.t_matrix)}, {"weight", lp.weight}};
  if (!lp.provenance.empty()) out["provenance"] = lp.provenance;
  return out;
}

LatticePair lattice_pair_from_json(const Json& j) {
  LatticePair lp;
  lp.mu = size_field(j, "mu");
  lp.t_matrix = theta_matrix_from_json(field(j, "t_matrix"));
  if (lp.t_matrix.rows() != lp.mu || lp.t_matrix.cols() != lp.mu)
    bad("t_matrix must be " + std::to_string(lp.mu) + "x" + std::to_string(lp.mu));
  if (j.contains("weight")) {
    if (!j["weight"].is_number_integer()) bad("\"weight\" must be an integer");
    lp.weight = j["weight"].get<long>();
  }
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) bad("\"provenance\" must be a string");
    lp.provenance = j["provenance"].get<std::string>();
  }
  return lp;
}

LatticePair load_lattice_pair(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path + ": " + e.what());
  }
  return lattice_pair_from_json(j);
}

Json to_json(const GoodBasisResult& r) {
  return Json{{"p", to_json(r.p)},
              {"t_matrix", to_json(r.t_matrix)},
              {"a0", to_json(r.a0)},
              {"a1", to_json(r.a1)},
              {"very_good", r.very_good}};
}

GoodBasisResult good_basis_from_json(const Json& j) {
  GoodBasisResult r;
  r.p = theta_matrix_from_json(field(j, "p"));
  r.t_matrix = theta_matrix_from_json(field(j, "t_matrix"));
  r.a0 = qmatrix_from_json(field(j, "a0"));
  r.a1 = qmatrix_from_json(field(j, "a1"));
  const Json& vg = field(j, "very_good");
  if (!vg.is_boolean()) bad("\"very_good\" must be a boolean");
  r.very_good = vg.get<bool>();
  return r;
}

}  // namespace spectre
