#include "spectre/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <future>

#include "spectre/error.hpp"
#include "spectre/newton.hpp"

namespace spectre {

bool CorpusEntry::has_tag(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::Usage, "corpus: " + what); }

std::string string_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) bad(std::string("missing string \"") + key + "\"");
  return j[key].get<std::string>();
}

Spectrum value_multiset(const Json& j) {
  if (!j.is_array()) bad("critical values must be an array");
  Spectrum s;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("value") || !e.contains("mult") || !e["mult"].is_number_integer())
      bad("critical value entries need \"value\" and \"mult\"");
    s.add(rational_from_json(e["value"]), e["mult"].get<long>());
  }
  return s;
}

}  // namespace

std::vector<CorpusEntry> corpus_from_json(const Json& j) {
  if (!j.is_array()) bad("top level must be an array");
  std::vector<CorpusEntry> out;
  for (const auto& x : j) {
    if (!x.is_object()) bad("entries must be objects");
    CorpusEntry e;
    e.name = string_field(x, "name");
    e.poly = string_field(x, "poly");
    if (!x.contains("vars") || !x["vars"].is_array()) bad(e.name + ": \"vars\" must be an array");
    for (const auto& v : x["vars"]) e.vars.push_back(v.get<std::string>());
    if (!x.contains("mu") || !x["mu"].is_number_unsigned()) bad(e.name + ": \"mu\" must be a non-negative integer");
    e.mu = x["mu"].get<std::size_t>();
    if (!x.contains("spectrum")) bad(e.name + ": missing spectrum");
    e.spectrum = spectrum_from_json(x["spectrum"]);
    if (!x.contains("critical_values")) bad(e.name + ": missing critical values");
    e.critical_values = value_multiset(x["critical_values"]);
    if (x.contains("tags"))
      for (const auto& t : x["tags"]) e.tags.push_back(t.get<std::string>());
    if (!x.contains("notes") || !x["notes"].is_object()) bad(e.name + ": missing notes");
    for (const auto& [k, v] : x["notes"].items()) e.notes[k] = v.get<std::string>();
    for (const char* k : {"mu", "spectrum", "critical_values"})
      if (!e.notes.count(k)) bad(e.name + ": no note for " + k);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot open " + path);
  try {
    return corpus_from_json(Json::parse(in));
  } catch (const Json::exception& e) {
    bad(path + ": " + e.what());
  }
}

CorpusResult run_corpus_entry(const CorpusEntry& e) {
  CorpusResult r;
  r.name = e.name;
  auto diff = [&](const std::string& what, const std::string& want, const std::string& got) {
    r.diffs.push_back(what + ": expected " + want + ", got " + got);
  };
  try {
    MultiPoly f = parse_poly(e.poly, e.vars);
    if (e.has_tag("convenient") && !is_convenient(f)) r.diffs.push_back("tagged convenient but is not");
    if (e.has_tag("nondegenerate") && !is_nondegenerate(f)) r.diffs.push_back("tagged nondegenerate but is not");
    MilnorData md = milnor_data(f);
    r.mu = md.mu;
    if (md.mu != e.mu) diff("mu", std::to_string(e.mu), std::to_string(md.mu));

    QMatrix a0 = multiplication_matrix(md, f);
    if (e.has_tag("quasi-homogeneous") && !a0.is_zero()) r.diffs.push_back("tagged quasi-homogeneous but f is not in its Jacobian ideal");
    RootFactorization rf = rational_root_factor(char_poly(a0));
    for (const auto& [v, m] : rf.roots) r.critical_values.add(v, m);
    if (rf.remainder.degree() > 0) r.diffs.push_back("irrational critical values: " + rf.remainder.to_string("S"));
    if (r.critical_values != e.critical_values)
      diff("critical values", e.critical_values.to_string(), r.critical_values.to_string());

    r.newton = newton_spectrum(f, md);
    if (r.newton != e.spectrum) diff("Newton spectrum", e.spectrum.to_string(), r.newton.to_string());
    LatticePair lp = t_matrix(f, md);
    VFiltration vf = v_filtration(lp);
    r.vfilt = vf.spectrum;
    if (r.vfilt != e.spectrum) diff("V spectrum", e.spectrum.to_string(), r.vfilt.to_string());

    GoodBasisResult gb = good_basis(lp, vf);
    GoodBasisReport rep = verify_good_basis(gb, vf.spectrum, &lp);
    r.good_basis_ok = rep.ok();
    for (const auto& msg : rep.failures) r.diffs.push_back("good basis: " + msg);
  } catch (const Error& ex) {
    r.diffs.push_back(std::string("error: ") + ex.what());
  }
  return r;
}

std::vector<CorpusResult> run_corpus(const std::vector<CorpusEntry>& entries) {
  std::vector<std::future<CorpusResult>> futs;
  for (const auto& e : entries) futs.push_back(std::async(std::launch::async, [&e] { return run_corpus_entry(e); }));
  std::vector<CorpusResult> out;
  for (auto& f : futs) out.push_back(f.get());
  return out;
}

}  // namespace spectre
