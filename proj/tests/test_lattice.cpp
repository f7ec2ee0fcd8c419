#include <algorithm>
#include <climits>
#include <set>

#include "doctest.h"
#include "spectre/lattice.hpp"
#include "spectre/newton.hpp"
#include "test_util.hpp"

using namespace spectre;
using testutil::q;

namespace {

const std::vector<std::string> kXY{"x", "y"};
MultiPoly P(const std::string& s, const std::vector<std::string>& vars = kXY) { return parse_poly(s, vars); }

// A(theta) = a0 + theta a1 as an abstract pair.
LatticePair abstract_pair(const QMatrix& a0, const QMatrix& a1) {
  LatticePair lp;
  lp.mu = a0.rows();
  lp.t_matrix = theta_from_coeffs({a0, a1});
  return lp;
}

std::multiset<Rational> exponent_classes(const std::vector<std::pair<Rational, int>>& ex) {
  std::multiset<Rational> out;
  for (const auto& [g, m] : ex)
    for (int i = 0; i < m; ++i) out.insert(frac(Rational(-g)));
  return out;
}

std::multiset<Rational> spectrum_classes(const Spectrum& s) {
  std::multiset<Rational> out;
  for (const auto& [b, m] : s.entries())
    for (long i = 0; i < m; ++i) out.insert(frac(b));
  return out;
}

LaurentMatrix random_laurent(testutil::Rng& rng, std::size_t r, std::size_t c, int lo, int hi) {
  LaurentMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<Rational> co;
      for (int k = lo; k <= hi; ++k) co.push_back(rng.coin(0.4) ? rng.small_rational(3, 2) : Rational(0));
      m(i, j) = Laurent(lo, co);
    }
  return m;
}

}  // namespace

TEST_CASE("tau_reduce normal form") {
  // Diagonal lattice tau^2 e1 + e2, given by a messy generating set.
  LaurentMatrix gens{{Laurent::monomial(Rational(1), 2), Laurent::monomial(Rational(3), 2)},
                     {Laurent(Rational(1)), Laurent(Rational(2))}};
  TauLattice lat = tau_reduce(gens, 2);
  // 2 (tau^2, 1) - (3 tau^2, 2) = -tau^2 e1, and then e2 follows.
  CHECK(lat.basis == LaurentMatrix{{Laurent::monomial(Rational(1), 2), Laurent()}, {Laurent(), Laurent(Rational(1))}});
  CHECK(lat.basis * lat.inverse == LaurentMatrix::identity(2));
  CHECK(lat.k_bound == 2);
  TauLattice std_lat = tau_reduce(LaurentMatrix::identity(3), 0);
  CHECK(std_lat.basis == LaurentMatrix::identity(3));
  CHECK(std_lat.k_bound == 0);
  TauLattice shifted = tau_shift(std_lat, -2);
  CHECK(shifted.min_order() == -2);
  CHECK(shifted.k_bound == -2);
}

TEST_CASE("property: tau_reduce is canonical") {
  testutil::Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    // A lattice tau^a Std <= L: random generators plus tau^3 Std.
    LaurentMatrix gens = random_laurent(rng, n, n + 1, -1, 2);
    LaurentMatrix big = gens.hcat(LaurentMatrix::identity(n).scaled(Laurent::monomial(Rational(1), 3)));
    TauLattice lat = tau_reduce(big, 3);
    CHECK(lat.basis * lat.inverse == LaurentMatrix::identity(n));
    for (std::size_t r = 0; r < n; ++r) {
      CHECK(lat.basis(r, r).low() == lat.basis(r, r).high());
      for (std::size_t c = r + 1; c < n; ++c) CHECK(lat.basis(r, c).is_zero());
    }
    // Same lattice from shuffled, recombined generators.
    LaurentMatrix mix = random_laurent(rng, big.cols(), big.cols(), 0, 1);
    for (std::size_t i = 0; i < big.cols(); ++i) mix(i, i) = Laurent(Rational(1));
    LaurentMatrix more = big.hcat(big * mix);
    CHECK(tau_reduce(more, 3) == lat);
    CHECK(tau_reduce(lat.basis, lat.k_bound) == lat);
    // Every generator lies in the lattice: inverse * gens is polynomial.
    LaurentMatrix coords = lat.inverse * big;
    for (std::size_t i = 0; i < coords.rows(); ++i)
      for (std::size_t j = 0; j < coords.cols(); ++j) CHECK((coords(i, j).is_zero() || coords(i, j).low() >= 0));
    // k_bound is tight: tau^k Std inside, tau^{k-1} Std not.
    LaurentMatrix inv_scaled = lat.inverse.scaled(Laurent::monomial(Rational(1), lat.k_bound));
    int lo = INT_MAX;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!inv_scaled(i, j).is_zero()) lo = std::min(lo, inv_scaled(i, j).low());
    CHECK(lo == 0);
  }
}

TEST_CASE("saturate_log_lattice examples") {
  LogLattice a = saturate_log_lattice(t_matrix(P("x^3 + y^3")));
  auto ex = residue_exponents(a.residue);
  REQUIRE(ex.size() == 3);
  CHECK(ex[0] == std::pair<Rational, int>{q("-4/3"), 1});
  CHECK(ex[1] == std::pair<Rational, int>{Rational(-1), 2});
  CHECK(ex[2] == std::pair<Rational, int>{q("-2/3"), 1});
  CHECK(a.lattice.basis == LaurentMatrix::identity(4));

  LogLattice b = saturate_log_lattice(t_matrix(P("1/3x^3 - x + 1/2y^2")));
  auto exb = residue_exponents(b.residue);
  REQUIRE(exb.size() == 2);
  CHECK(exb[0].first == q("-7/6"));
  CHECK(exb[1].first == q("-5/6"));

  LatticePair one;
  one.mu = 1;
  one.t_matrix = ThetaMatrix(1, 1);
  one.t_matrix(0, 0) = UPoly::x();
  CHECK(saturate_log_lattice(one).residue == QMatrix{{Rational(-1)}});
}

TEST_CASE("saturation of a higher-degree pair") {
  // t g = (theta + theta^2) g: v -> tau v' - (1 + 1/tau) v, so tau^{-1} joins the lattice.
  LatticePair lp;
  lp.mu = 1;
  lp.t_matrix = ThetaMatrix(1, 1);
  lp.t_matrix(0, 0) = UPoly(std::vector<Rational>{Rational(0), Rational(1), Rational(1)});
  try {
    saturate_log_lattice(lp);
    FAIL("expected irregularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Computation);
    CHECK(std::string(e.what()).find("irregular at tau=0") != std::string::npos);
  }
}

TEST_CASE("non-quasi-unipotent input is rejected") {
  LatticePair lp = abstract_pair(QMatrix(2, 2), QMatrix{{Rational(0), Rational(1)}, {Rational(2), Rational(0)}});
  try {
    v_filtration(lp);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Computation);
    CHECK(std::string(e.what()).find("non-quasi-unipotent") != std::string::npos);
    CHECK(std::string(e.what()).find("S^2 - 2") != std::string::npos);
  }
}

TEST_CASE("v_filtration examples") {
  VFiltration a = v_filtration(t_matrix(P("x^3 + y^3")));
  CHECK(a.image_at(q("1/2")).cols() == 0);
  CHECK(a.image_at(q("2/3")).cols() == 1);
  CHECK(a.image_at(q("9/10")).cols() == 1);
  CHECK(a.image_at(Rational(1)).cols() == 3);
  CHECK(a.image_at(q("4/3")).cols() == 4);
  CHECK(a.image_at(Rational(7)).cols() == 4);
  CHECK(a.image_at(Rational(-3)).cols() == 0);
  CHECK(a.spectrum == Spectrum{{q("2/3"), 1}, {Rational(1), 2}, {q("4/3"), 1}});

  VFiltration b = v_filtration(t_matrix(P("1/3x^3 - x + 1/2y^2")));
  CHECK(b.spectrum == Spectrum{{q("5/6"), 1}, {q("7/6"), 1}});
  VFiltration c = v_filtration(t_matrix(P("x^2 + y^2")));
  CHECK(c.spectrum == Spectrum{{Rational(1), 1}});
  CHECK(spectrum_v(t_matrix(P("x^2 + y^2 + 1"))) == Spectrum{{Rational(1), 1}});
}

TEST_CASE("Deligne lattices sit in their windows and V is shift-compatible") {
  VFiltration vf = v_filtration(t_matrix(P("x^3 + y^4")));
  CHECK(vf.spectrum == Spectrum{{q("7/12"), 1}, {q("5/6"), 1}, {q("11/12"), 1}, {q("13/12"), 1}, {q("7/6"), 1}, {q("17/12"), 1}});
  for (const auto& d : vf.deligne) {
    for (const auto& [g, m] : residue_exponents(d.log.residue)) {
      CHECK(-g > d.alpha - 1);
      CHECK(-g <= d.alpha);
    }
    // V_{alpha+1} = tau^{-1} V_alpha.
    CHECK(vf.v_lattice(d.alpha + 1) == tau_shift(d.log.lattice, -1));
  }
  // delta is monotone along each class.
  for (auto it = vf.delta.begin(); it != vf.delta.end(); ++it)
    for (auto jt = std::next(it); jt != vf.delta.end(); ++jt)
      if (frac(it->first) == frac(jt->first)) CHECK(it->second <= jt->second);
}

TEST_CASE("spectrum_v agrees with the Newton spectrum") {
  const std::vector<std::string> xyz{"x", "y", "z"};
  std::vector<MultiPoly> cases{P("x^3 + y^3"),         P("x^2 + y^3"),       P("x^3 + y^4"),
                               P("x^2 y^2 + x + y"),   P("x^4 + x y + y^3"), P("x^5 + y^2 - x^2"),
                               P("x^3 + y^3 + z^3", xyz), P("x^2 + y^2 + z^2 + x y z", xyz),
                               P("x^2 y^2 + 2 x y^2 z + 2 x^2 + 2 y^2 + 3 z^2", xyz)};
  for (const auto& f : cases) {
    INFO(f.to_string());
    CHECK(spectrum_v(t_matrix(f)) == newton_spectrum(f));
  }
}

TEST_CASE("property: theta shift, twist, classes and Newton agreement") {
  testutil::Rng rng(23);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 12; ++trial) {
    std::size_t nv = static_cast<std::size_t>(rng.uniform(2, 3));
    MultiPoly f = testutil::random_convenient(rng, nv, nv == 2 ? 5 : 3);
    if (!is_convenient(f) || !is_nondegenerate(f)) continue;
    MilnorData md = milnor_data(f);
    if (md.mu == 0 || md.mu > 12) continue;
    INFO(f.to_string());
    LatticePair lp = t_matrix(f, md);
    VFiltration vf = v_filtration(lp);
    CHECK(vf.spectrum == newton_spectrum(f, md));
    CHECK(spectrum_v(theta_shift(lp)) == vf.spectrum.shifted(Rational(1)));
    CHECK(spectrum_v(twist(lp, rng.small_rational())) == vf.spectrum);
    CHECK(exponent_classes(vf.exponents) == spectrum_classes(vf.spectrum));
    CHECK(monodromy_char_poly(vf.spectrum) == monodromy_char_poly(newton_spectrum(f, md)));
    ++checked;
  }
  CHECK(checked >= 8);
}

TEST_CASE("property: abstract pairs with narrow exponents read off A1") {
  // With A1 semisimple and its eigenvalues inside an interval shorter than 1,
  // span(g_i) is itself a Deligne lattice and the spectrum is spec(A1).
  testutil::Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    QMatrix d(n, n);
    Spectrum expect;
    for (std::size_t i = 0; i < n; ++i) {
      d(i, i) = make_rational(rng.uniform(0, 7), 8);
      expect.add(d(i, i));
    }
    QMatrix s = rng.small_matrix(n, n, 0.8);
    for (std::size_t i = 0; i < n; ++i) s(i, i) += 7;
    if (mat_rank(s) < n) continue;
    QMatrix a1 = s * d * inverse(s);
    QMatrix a0 = rng.small_matrix(n, n, 0.5);
    LatticePair lp = abstract_pair(a0, a1);
    CHECK(spectrum_v(lp) == expect);
    CHECK(spectrum_v(theta_shift(lp)) == expect.shifted(Rational(1)));
  }
}

TEST_CASE("f_multiplication_jordan") {
  LatticePair a = t_matrix(P("x^3 + y^3"));
  CHECK(f_multiplication_jordan(a, v_filtration(a)) == std::vector<std::size_t>{1, 1, 1, 1});
  LatticePair b = t_matrix(P("1/3x^3 - x + 1/2y^2"));
  CHECK(f_multiplication_jordan(b, v_filtration(b)) == std::vector<std::size_t>{1, 1});
  // Spectrum {0:1, 1:1} with A0 = [[0,0],[1,0]]: [f] maps gr_0 onto gr_1.
  LatticePair c = abstract_pair(QMatrix{{Rational(0), Rational(1)}, {Rational(0), Rational(0)}},
                                QMatrix{{Rational(0), Rational(0)}, {Rational(0), Rational(1)}});
  VFiltration vc = v_filtration(c);
  CHECK(vc.spectrum == Spectrum{{Rational(0), 1}, {Rational(1), 1}});
  CHECK(f_multiplication_jordan(c, vc) == std::vector<std::size_t>{2});
}
