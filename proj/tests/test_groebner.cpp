#include "doctest.h"
#include "spectre/groebner.hpp"
#include "test_util.hpp"

using namespace spectre;
using testutil::q;

namespace {

const std::vector<std::string> kXY{"x", "y"};
MultiPoly P(const std::string& s, const std::vector<std::string>& vars = kXY) { return parse_poly(s, vars); }

MultiPoly random_poly(testutil::Rng& rng, const std::vector<std::string>& vars, int terms, int maxdeg) {
  MultiPoly p(vars);
  for (int t = 0; t < terms; ++t) {
    Monomial m(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) m[i] = static_cast<int>(rng.uniform(0, maxdeg));
    p.add_term(m, rng.small_rational());
  }
  return p;
}

// Ideal membership of every input generator, checked independently of the
// cofactor bookkeeping.
void check_generates(const GroebnerBasis& gb, const std::vector<MultiPoly>& input) {
  for (const auto& g : input) CHECK(normal_form(g, gb).is_zero());
  for (std::size_t j = 0; j < gb.gens.size(); ++j) {
    if (gb.cofactors.empty()) break;
    MultiPoly sum(gb.vars);
    for (std::size_t i = 0; i < input.size(); ++i) sum += gb.cofactors[j][i] * input[i];
    CHECK(sum == gb.gens[j]);
  }
}

}  // namespace

TEST_CASE("buchberger examples") {
  auto gb = buchberger({P("3x^2"), P("3y^2")});
  REQUIRE(gb.gens.size() == 2);
  CHECK(gb.gens[0] == P("y^2"));
  CHECK(gb.gens[1] == P("x^2"));

  auto gb2 = buchberger({P("x^2 - 1"), P("y")});
  REQUIRE(gb2.gens.size() == 2);
  CHECK(gb2.gens[0] == P("y"));
  CHECK(gb2.gens[1] == P("x^2 - 1"));

  auto gb3 = buchberger({P("x"), P("x")});
  REQUIRE(gb3.gens.size() == 1);
  CHECK(gb3.gens[0] == P("x"));
}

TEST_CASE("buchberger completes a non-trivial ideal") {
  std::vector<MultiPoly> input{P("x^2 y - 1"), P("x y^2 - x")};
  auto gb = buchberger(input, MonomialOrder::grevlex(), true);
  check_generates(gb, input);
  // x^2 y = 1 and y^2 = 1 on the variety, so x^2 - y lies in the ideal
  CHECK(normal_form(P("x^2 - y"), gb).is_zero());
  auto lex = buchberger(input, MonomialOrder::lex(), true);
  check_generates(lex, input);
  for (const auto& g : lex.gens) CHECK(normal_form(g, gb).is_zero());
  for (const auto& g : gb.gens) CHECK(normal_form(g, lex).is_zero());
}

TEST_CASE("normal_form examples") {
  auto gb = buchberger({P("x^2 - 1"), P("y")});
  CHECK(normal_form(P("x^4"), gb) == P("1"));
  auto gb2 = buchberger({P("x^2"), P("y^2")});
  CHECK(normal_form(P("x^3 + y^3"), gb2).is_zero());
  CHECK(normal_form(P("x y"), gb2) == P("x y"));
}

TEST_CASE("milnor_data examples") {
  auto md = milnor_data(P("x^3 + y^3"));
  CHECK(md.mu == 4);
  REQUIRE(md.standard_monomials.size() == 4);
  CHECK(md.standard_monomials[0] == Monomial{0, 0});
  CHECK(md.standard_monomials[1] == Monomial{1, 0});
  CHECK(md.standard_monomials[2] == Monomial{0, 1});
  CHECK(md.standard_monomials[3] == Monomial{1, 1});

  auto md2 = milnor_data(P("1/3x^3 - x + 1/2y^2"));
  CHECK(md2.mu == 2);
  CHECK(md2.standard_monomials == std::vector<Monomial>{Monomial{0, 0}, Monomial{1, 0}});

  auto md3 = milnor_data(P("x^2 + y^2"));
  CHECK(md3.mu == 1);
  CHECK(md3.standard_monomials == std::vector<Monomial>{Monomial{0, 0}});

  CHECK(milnor_data(P("x + y")).mu == 0);
  try {
    milnor_data(P("x^2"));
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
    CHECK(std::string(e.what()) == "non-isolated critical locus");
  }
}

TEST_CASE("mu agrees with the rank of the standard monomials in the quotient") {
  for (const char* f : {"x^3 + y^3", "x^3 + y^4 + x y", "x^2 y^2 + x + y", "x^4 + y^4 + x^2 y"}) {
    auto md = milnor_data(P(f));
    QMatrix m(md.mu, md.mu);
    for (std::size_t i = 0; i < md.mu; ++i) {
      QVector c = md.coordinates(normal_form(md.basis_element(i), md.jacobian_gb));
      for (std::size_t j = 0; j < md.mu; ++j) m(i, j) = c[j];
    }
    CHECK(mat_rank(m) == md.mu);
  }
  CHECK(milnor_data(P("x^2 y^2 + x + y")).mu == 3);
}

TEST_CASE("has_torus_zero examples") {
  CHECK_FALSE(has_torus_zero({P("x"), P("y")}));
  CHECK(has_torus_zero({P("x - 1"), P("y - 1")}));
  CHECK(has_torus_zero({P("x + y")}));
  CHECK_FALSE(has_torus_zero({P("x y + 1"), P("x y")}));
}

TEST_CASE("property: normal form is idempotent, linear, and kills generators") {
  testutil::Rng rng(31);
  std::vector<std::string> vars{"x", "y", "z"};
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<MultiPoly> gens;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Monomial m(vars.size());
      m[i] = static_cast<int>(rng.uniform(2, 3));
      MultiPoly g = MultiPoly::monomial(vars, m) + random_poly(rng, vars, 2, 1);
      gens.push_back(g);
    }
    auto gb = buchberger(gens, MonomialOrder::grevlex(), true);
    check_generates(gb, gens);
    for (int k = 0; k < 5; ++k) {
      MultiPoly p = random_poly(rng, vars, 4, 4), r = random_poly(rng, vars, 4, 4);
      Rational a = rng.small_rational();
      MultiPoly np = normal_form(p, gb);
      CHECK(normal_form(np, gb) == np);
      CHECK(normal_form(p * a + r, gb) == np * a + normal_form(r, gb));
      auto cf = normal_form_cofactors(p, gb);
      CHECK(cf.remainder == np);
      MultiPoly sum = cf.remainder;
      for (std::size_t i = 0; i < gens.size(); ++i) sum += cf.cofactors[i] * gens[i];
      CHECK(sum == p);
    }
  }
}
