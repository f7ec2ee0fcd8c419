// Acceptance suite: one PASS/FAIL line per criterion on stdout, details of
// any failure on stderr. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>

#include "spectre/birkhoff.hpp"
#include "spectre/corpus.hpp"
#include "spectre/mellin.hpp"
#include "spectre/newton.hpp"
#include "test_util.hpp"

using namespace spectre;
using testutil::q;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

class Criterion {
 public:
  explicit Criterion(int id) : id_(id) {}
  // Records a failure when ok is false; returns ok.
  bool expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      std::cerr << "  criterion " << id_ << ": " << what << "\n";
    }
    return ok;
  }
  template <class F>
  void guard(const std::string& what, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      expect(false, what + " threw: " + e.what());
    }
  }
  bool passed() const { return failures_ == 0; }

 private:
  int id_;
  int failures_ = 0;
};

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::string kCorpusPath = std::string(SPECTRE_DATA_DIR) + "/corpus.json";

MultiPoly P(const std::string& s, const std::vector<std::string>& vars = kXY) { return parse_poly(s, vars); }

QMatrix diag(std::initializer_list<const char*> d) {
  QMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (const char* x : d) m(i, i) = q(x), ++i;
  return m;
}

// Shared across criteria 2 and 3: random tame polynomials with their spectra.
struct RandomCase {
  MultiPoly f;
  std::size_t mu;
  Spectrum newton, vfilt;
};

std::vector<RandomCase>& random_cases() {
  static std::vector<RandomCase> cases;
  return cases;
}

// ------------------------------------------------------------ criteria

void worked_examples(Criterion& c) {
  auto t0 = Clock::now();
  c.guard("x^3+y^3", [&] {
    MultiPoly f = P("x^3+y^3");
    MilnorData md = milnor_data(f);
    c.expect(md.mu == 4, "x^3+y^3: mu");
    LatticePair lp = t_matrix(f, md);
    c.expect(lp.t_matrix == theta_from_coeffs({QMatrix(4, 4), diag({"2/3", "1", "1", "4/3"})}),
             "x^3+y^3: t-matrix is not theta diag(2/3,1,1,4/3)");
    Spectrum want{{q("2/3"), 1}, {q("1"), 2}, {q("4/3"), 1}};
    c.expect(newton_spectrum(f, md) == want, "x^3+y^3: Newton spectrum");
    c.expect(spectrum_v(lp) == want, "x^3+y^3: V spectrum");
  });
  double t1 = seconds_since(t0);
  c.expect(t1 < 1.0, "x^3+y^3 took " + std::to_string(t1) + " s");

  t0 = Clock::now();
  c.guard("cubic", [&] {
    MultiPoly f = P("1/3*x^3-x+1/2*y^2");
    MilnorData md = milnor_data(f);
    c.expect(md.mu == 2, "cubic: mu");
    LatticePair lp = t_matrix(f, md);
    QMatrix a0{{q("0"), q("-2/3")}, {q("-2/3"), q("0")}};
    QMatrix a1 = diag({"5/6", "7/6"});
    c.expect(lp.t_matrix == theta_from_coeffs({a0, a1}), "cubic: t-matrix is not A0 + theta A1");
    GoodBasisResult gb = good_basis(lp);
    c.expect(gb.a0 == a0 && gb.a1 == a1, "cubic: good basis A0/A1");
    Spectrum want{{q("5/6"), 1}, {q("7/6"), 1}};
    c.expect(newton_spectrum(f, md) == want, "cubic: Newton spectrum");
    c.expect(spectrum_v(lp) == want, "cubic: V spectrum");
  });
  double t2 = seconds_since(t0);
  c.expect(t2 < 1.0, "cubic took " + std::to_string(t2) + " s");
}

void newton_equals_v(Criterion& c, const std::vector<CorpusEntry>& corpus) {
  auto t0 = Clock::now();
  for (const auto& e : corpus)
    c.guard(e.name, [&] {
      MultiPoly f = parse_poly(e.poly, e.vars);
      MilnorData md = milnor_data(f);
      c.expect(newton_spectrum(f, md) == spectrum_v(t_matrix(f, md)), e.name + ": Newton != V");
    });

  testutil::Rng rng(20261015);
  auto& cases = random_cases();
  for (int trial = 0; trial < 400 && cases.size() < 24; ++trial) {
    std::size_t nv = rng.coin(0.65) ? 2 : 3;
    MultiPoly f = testutil::random_convenient(rng, nv, nv == 2 ? 5 : 3);
    if (!is_convenient(f) || !is_nondegenerate(f)) continue;
    MilnorData md = milnor_data(f);
    if (md.mu == 0 || md.mu > 12) continue;
    c.guard(f.to_string(), [&] {
      RandomCase rc{f, md.mu, newton_spectrum(f, md), spectrum_v(t_matrix(f, md))};
      c.expect(rc.newton == rc.vfilt,
               f.to_string() + ": Newton " + rc.newton.to_string() + " vs V " + rc.vfilt.to_string());
      cases.push_back(std::move(rc));
    });
  }
  c.expect(cases.size() >= 20, "only " + std::to_string(cases.size()) + " random polynomials checked");
  double t = seconds_since(t0);
  c.expect(t < 60.0, "took " + std::to_string(t) + " s");
  std::cerr << "  criterion 2: " << cases.size() << " random polynomials, " << corpus.size() << " corpus entries\n";
}

void symmetry_positivity(Criterion& c, const std::vector<CorpusEntry>& corpus) {
  auto check = [&](const std::string& name, const Spectrum& s, std::size_t nvars, std::size_t mu) {
    Rational w(static_cast<long>(nvars));
    c.expect(check_symmetry(s, w), name + ": not symmetric about " + to_string(Rational(w / 2)));
    c.expect(check_positivity(s, w), name + ": not inside (0, " + to_string(w) + ")");
    c.expect(static_cast<std::size_t>(s.total()) == mu, name + ": sum of multiplicities is not mu");
  };
  for (const auto& e : corpus)
    c.guard(e.name, [&] {
      MultiPoly f = parse_poly(e.poly, e.vars);
      MilnorData md = milnor_data(f);
      check(e.name + " (Newton)", newton_spectrum(f, md), e.vars.size(), md.mu);
      check(e.name + " (V)", spectrum_v(t_matrix(f, md)), e.vars.size(), md.mu);
    });
  for (const auto& rc : random_cases()) {
    check(rc.f.to_string() + " (Newton)", rc.newton, rc.f.nvars(), rc.mu);
    check(rc.f.to_string() + " (V)", rc.vfilt, rc.f.nvars(), rc.mu);
  }
}

void thom_sebastiani(Criterion& c) {
  for (auto [a, b] : {std::pair{3L, 3L}, {2L, 3L}, {3L, 4L}}) {
    std::string s = "x^" + std::to_string(a) + "+y^" + std::to_string(b);
    c.guard(s, [&] {
      Spectrum oracle = convolve_spectra(power_spectrum(a), power_spectrum(b));
      MultiPoly f = P(s);
      c.expect(spectrum_v(t_matrix(f)) == oracle, s + ": V spectrum differs from the convolution");
      c.expect(newton_spectrum(f) == oracle, s + ": Newton spectrum differs from the convolution");
    });
  }
  c.guard("x^3+y^3+z^3", [&] {
    Spectrum oracle = convolve_spectra(convolve_spectra(power_spectrum(3), power_spectrum(3)), power_spectrum(3));
    MultiPoly f = P("x^3+y^3+z^3", kXYZ);
    c.expect(spectrum_v(t_matrix(f)) == oracle, "x^3+y^3+z^3: V spectrum differs from the 3-fold convolution");
    c.expect(newton_spectrum(f) == oracle, "x^3+y^3+z^3: Newton spectrum differs from the 3-fold convolution");
  });
}

void good_bases(Criterion& c, const std::vector<CorpusEntry>& corpus) {
  testutil::Rng rng(5);
  for (const auto& e : corpus)
    c.guard(e.name, [&] {
      LatticePair lp = t_matrix(parse_poly(e.poly, e.vars));
      VFiltration vf = v_filtration(lp);
      GoodBasisResult r = good_basis(lp, vf);
      GoodBasisReport rep = verify_good_basis(r, vf.spectrum, &lp);
      c.expect(rep.degree_ok, e.name + ": degree > 1");
      c.expect(rep.gauge_ok, e.name + ": gauge identity");
      // Unimodular: P has a polynomial inverse.
      c.expect(r.p * theta_mat_inverse(r.p) == ThetaMatrix::identity(lp.mu), e.name + ": P not unimodular");
      c.expect(rep.spectrum_ok, e.name + ": eigenvalues of A1 differ from the spectrum");
      c.expect(rep.trace_ok && rep.trace == e.spectrum.weighted_sum(), e.name + ": trace of A1");

      Rational shift = rng.small_rational();
      GoodBasisResult t = good_basis(twist(lp, shift));
      c.expect(t.a1 == r.a1, e.name + ": twist changed A1");
      c.expect(t.a0 == r.a0 + QMatrix::identity(lp.mu).scaled(shift), e.name + ": twist did not shift A0 by c");
    });
}

void monodromy(Criterion& c, const std::vector<CorpusEntry>& corpus) {
  c.guard("examples", [&] {
    UPoly t = UPoly::x(), one(Rational(1));
    UPoly fermat = (t - one) * (t - one) * (t * t + t + one);
    c.expect(monodromy_char_poly(spectrum_v(t_matrix(P("x^3+y^3")))) == fermat, "x^3+y^3: not (T-1)^2(T^2+T+1)");
    UPoly cubic = t * t - t + one;
    c.expect(monodromy_char_poly(spectrum_v(t_matrix(P("1/3*x^3-x+1/2*y^2")))) == cubic, "cubic: not T^2-T+1");
  });
  for (const auto& e : corpus)
    c.guard(e.name, [&] {
      UPoly p = monodromy_char_poly(e.spectrum);
      for (const auto& co : p.coeffs()) c.expect(co.get_den() == 1, e.name + ": non-integer coefficient");
      c.expect(p.degree() == static_cast<int>(e.mu), e.name + ": degree is not mu");
    });
}

void mellin_aomoto(Criterion& c, const std::vector<CorpusEntry>& corpus) {
  for (const auto& e : corpus)
    c.guard(e.name, [&] {
      GoodBasisResult r = good_basis(t_matrix(parse_poly(e.poly, e.vars)));
      c.expect(det_t_mellin(r).expand() == determinant(mellin_t_matrix(r)),
               e.name + ": det of the Mellin t-matrix disagrees with the formula");
    });
  c.guard("cubic", [&] {
    const CorpusEntry* cubic = nullptr;
    for (const auto& e : corpus)
      if (e.poly == "1/3*x^3-x+1/2*y^2") cubic = &e;
    if (!c.expect(cubic != nullptr, "cubic missing from the corpus")) return;
    GoodBasisResult r = good_basis(t_matrix(P(cubic->poly)));
    AomotoDeterminant a = aomoto_determinant(r, cubic->spectrum);
    c.expect(a.value.to_string() == "(-4/9)*(s+1)^2/((s+11/6)*(s+13/6))", "cubic: Aomoto is " + a.value.to_string());
    Rational product(1);
    for (const auto& [v, m] : cubic->critical_values.entries())
      for (long k = 0; k < m; ++k) product *= v;
    c.expect(a.c == determinant(r.a0) && a.c == product, "cubic: c is not det A0 = product of critical values");
  });
  c.guard("x^3+y^3", [&] {
    GoodBasisResult r = good_basis(t_matrix(P("x^3+y^3")));
    try {
      aomoto_determinant(r, spectrum_v(t_matrix(P("x^3+y^3"))));
      c.expect(false, "x^3+y^3 was not rejected");
    } catch (const Error& e) {
      c.expect(std::string(e.what()) == "0 is a critical value", std::string("x^3+y^3: wrong message ") + e.what());
    }
  });
}

void duality(Criterion& c, const std::vector<CorpusEntry>& corpus) {
  Spectrum s{{q("5/6"), 1}, {q("7/6"), 1}};
  c.expect(dual_spectrum(s) == Spectrum{{q("-5/6"), 1}, {q("-7/6"), 1}}, "dual of {5/6,7/6}");
  for (const auto& e : corpus)
    c.expect(dual_spectrum(dual_spectrum(e.spectrum)) == e.spectrum, e.name + ": dual is not an involution");
  testutil::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    Spectrum r;
    for (int k = 0; k < 5; ++k) r.add(rng.small_rational(9, 6), rng.uniform(1, 3));
    c.expect(dual_spectrum(dual_spectrum(r)) == r, "random dual involution " + r.to_string());
  }
}

void infrastructure(Criterion& c) {
  testutil::Rng rng(9);
  // Cayley-Hamilton
  for (int i = 0; i < 30; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    QMatrix m = rng.small_matrix(n, n);
    c.expect(eval_poly(char_poly(m), m).is_zero(), "Cayley-Hamilton");
  }
  // Leibniz
  for (int i = 0; i < 30; ++i) {
    MultiPoly a = testutil::random_convenient(rng, 3, 4), b = testutil::random_convenient(rng, 3, 4);
    for (std::size_t v = 0; v < 3; ++v)
      c.expect((a * b).partial(v) == a.partial(v) * b + a * b.partial(v), "Leibniz");
  }
  // Normal forms and cofactors against the Jacobian basis
  for (int i = 0; i < 12; ++i) {
    MultiPoly f = testutil::random_convenient(rng, 2 + static_cast<std::size_t>(i % 2), 4);
    c.guard("normal forms", [&] {
      MilnorData md = milnor_data(f);
      for (int k = 0; k < 4; ++k) {
        MultiPoly p = testutil::random_convenient(rng, f.nvars(), 5);
        MultiPoly np = normal_form(p, md.jacobian_gb);
        c.expect(normal_form(np, md.jacobian_gb) == np, "normal form idempotence");
        CofactorForm cf = normal_form_cofactors(p, md.jacobian_gb);
        MultiPoly sum = cf.remainder;
        for (std::size_t j = 0; j < md.partials.size(); ++j) sum += cf.cofactors[j] * md.partials[j];
        c.expect(cf.remainder == np && sum == p, "cofactor identity");
      }
    });
  }
  // Gauge soundness: re-derive A' P = theta^2 P' + P A for random unimodular P.
  for (int i = 0; i < 20; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    ThetaMatrix a = theta_from_coeffs({rng.small_matrix(n, n), rng.small_matrix(n, n)});
    QMatrix upper(n, n), lower(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        if (r < s) upper(r, s) = rng.small_rational();
        if (r > s) lower(r, s) = rng.small_rational();
      }
    ThetaMatrix p = (ThetaMatrix::identity(n) + to_theta(upper).scaled(UPoly::x())) *
                    (ThetaMatrix::identity(n) + to_theta(lower).scaled(UPoly::monomial(Rational(1), 2)));
    ThetaMatrix b = gauge_transform(p, a);
    c.expect(b * p == theta_sq_derivative(p) + p * a, "gauge soundness");
  }
}

}  // namespace

int main() {
  std::vector<CorpusEntry> corpus;
  try {
    corpus = load_corpus(kCorpusPath);
  } catch (const std::exception& e) {
    std::cerr << "cannot load corpus: " << e.what() << "\n";
    return 99;
  }

  struct Item {
    int id;
    const char* name;
    std::function<void(Criterion&)> run;
  };
  std::vector<Item> items{
      {1, "worked examples", worked_examples},
      {2, "Newton = V", [&](Criterion& c) { newton_equals_v(c, corpus); }},
      {3, "symmetry, positivity, degree", [&](Criterion& c) { symmetry_positivity(c, corpus); }},
      {4, "Thom-Sebastiani", thom_sebastiani},
      {5, "good basis", [&](Criterion& c) { good_bases(c, corpus); }},
      {6, "monodromy", [&](Criterion& c) { monodromy(c, corpus); }},
      {7, "Mellin and Aomoto", [&](Criterion& c) { mellin_aomoto(c, corpus); }},
      {8, "duality", [&](Criterion& c) { duality(c, corpus); }},
      {9, "infrastructure properties", infrastructure},
  };
  int failed = 0;
  for (const auto& it : items) {
    Criterion c(it.id);
    auto t0 = Clock::now();
    c.guard(it.name, [&] { it.run(c); });
    double t = seconds_since(t0);
    std::printf("criterion %d (%s): %s [%.2f s]\n", it.id, it.name, c.passed() ? "PASS" : "FAIL", t);
    std::fflush(stdout);
    failed += !c.passed();
  }
  return failed;
}
