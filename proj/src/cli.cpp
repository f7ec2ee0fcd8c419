#include "spectre/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <thread>

#include "spectre/error.hpp"
#include "spectre/json_io.hpp"
#include "spectre/newton.hpp"

namespace spectre::cli {

namespace {

struct Options {
  std::string poly, vars, lattice, spectrum;
  std::string with_poly, with_vars, with_spectrum;
  bool skip_nondegeneracy = false;
  std::string format = "json";
  std::size_t max_steps = 0;
  std::string method;  // empty: verb default
  std::string mellin_what;
  std::string twist_c;
  std::string manifest;
  unsigned jobs = 0;
};

// Lazily computed pipeline stages for one input.
class Job {
 public:
  explicit Job(const Options& o) : o_(o) {
    int sources = !o.poly.empty() + !o.lattice.empty() + !o.spectrum.empty();
    if (sources != 1) fail(ErrorKind::Usage, "give exactly one input: -f/--poly, --lattice or --spectrum");
    if (!o.poly.empty() && o.vars.empty()) fail(ErrorKind::Usage, "-f needs --vars");
  }

  bool is_poly() const { return !o_.poly.empty(); }
  bool is_lattice() const { return !o_.lattice.empty(); }
  bool is_spectrum() const { return !o_.spectrum.empty(); }

  const MultiPoly& poly(bool need_tame = true) {
    if (!is_poly()) fail(ErrorKind::Usage, "this command needs a polynomial input (-f)");
    if (!f_) {
      f_ = parse_poly(o_.poly, parse_vars(o_.vars));
      if (f_->nvars() < 2) fail(ErrorKind::Precondition, "need at least two variables");
    }
    if (need_tame && !tame_checked_ && !o_.skip_nondegeneracy) {
      if (!is_convenient(*f_)) fail(ErrorKind::Precondition, "not convenient");
      if (!is_nondegenerate(*f_)) fail(ErrorKind::Precondition, "degenerate with respect to the Newton polyhedron");
      tame_checked_ = true;
    }
    return *f_;
  }

  const MilnorData& milnor(bool need_tame = true) {
    const MultiPoly& f = poly(need_tame);
    if (!md_) md_ = milnor_data(f);
    return *md_;
  }

  const LatticePair& pair() {
    if (!lp_) {
      if (is_lattice()) {
        lp_ = load_lattice_pair(o_.lattice);
      } else {
        ReduceOptions ro;
        ro.max_steps = o_.max_steps;
        const MilnorData& md = milnor();
        lp_ = t_matrix(*f_, md, ro);
      }
    }
    return *lp_;
  }

  std::size_t mu() { return is_spectrum() ? static_cast<std::size_t>(given().total()) : pair().mu; }

  const VFiltration& vfilt() {
    if (!vf_) vf_ = v_filtration(pair());
    return *vf_;
  }

  const Spectrum& newton() {
    if (!newton_) {
      const MilnorData& md = milnor();
      newton_ = newton_spectrum(*f_, md, NewtonOptions{!o_.skip_nondegeneracy});
    }
    return *newton_;
  }

  /// The spectrum used by derived commands.
  Spectrum spectrum() {
    if (is_spectrum()) return given();
    if (is_lattice() || o_.method == "vfilt") return vfilt().spectrum;
    return newton();
  }

  const GoodBasisResult& good() {
    if (!gb_) gb_ = good_basis(pair(), vfilt());
    return *gb_;
  }

  /// n + 1, or 0 when unknown.
  long weight() {
    if (is_poly()) return static_cast<long>(poly(false).nvars());
    if (is_lattice()) return pair().weight;
    return 0;
  }

 private:
  const Spectrum& given() {
    if (!given_) given_ = parse_spectrum_text(o_.spectrum);
    return *given_;
  }

  const Options& o_;
  bool tame_checked_ = false;
  std::optional<MultiPoly> f_;
  std::optional<MilnorData> md_;
  std::optional<LatticePair> lp_;
  std::optional<VFiltration> vf_;
  std::optional<Spectrum> newton_, given_;
  std::optional<GoodBasisResult> gb_;
};

struct Outcome {
  Json body;
  int code = 0;
  std::string message;  // printed to err when code != 0
};

Outcome ok(Json body) {
  Outcome o;
  o.body = std::move(body);
  return o;
}

Json root_list(const RootFactorization& rf, const char* key) {
  Json out = Json::array();
  for (const auto& [r, m] : rf.roots) out.push_back({{key, to_json(r)}, {"mult", m}});
  return out;
}

Outcome cmd_milnor(Job& job) {
  const MilnorData& md = job.milnor(false);
  Json basis = Json::array();
  for (std::size_t i = 0; i < md.mu; ++i) basis.push_back(md.basis_element(i).to_string());
  QMatrix a0 = multiplication_matrix(md, md.f);
  RootFactorization rf = rational_root_factor(char_poly(a0));
  Json body{{"mu", md.mu}, {"vars", md.f.vars()}, {"basis", basis}, {"a0", to_json(a0)},
            {"critical_values", root_list(rf, "value")}};
  if (rf.remainder.degree() > 0) body["irrational_factor"] = rf.remainder.to_string("S");
  return ok(body);
}

Outcome cmd_spectrum(Job& job, const std::string& method_opt) {
  std::string method = method_opt.empty() ? (job.is_poly() ? "both" : "vfilt") : method_opt;
  if (job.is_spectrum()) fail(ErrorKind::Usage, "spectrum needs a polynomial or lattice input");
  if (method != "vfilt" && !job.is_poly()) fail(ErrorKind::Usage, "--method " + method + " needs a polynomial input");
  Json body{{"mu", job.pair().mu}};
  Json methods = Json::object();
  std::optional<Spectrum> nw, vf;
  if (method != "vfilt") nw = job.newton();
  if (method != "newton") vf = job.vfilt().spectrum;
  const Spectrum& main = vf ? *vf : *nw;
  body["spectrum"] = to_json(main);
  if (nw) methods["newton"] = to_json(*nw);
  if (vf) methods["vfilt"] = to_json(*vf);
  body["methods"] = methods;
  Outcome out;
  Json checks{{"degree", static_cast<std::size_t>(main.total()) == job.pair().mu}};
  if (nw && vf) {
    checks["newton_vs_vfilt"] = *nw == *vf;
    body["agree"] = *nw == *vf;
    if (*nw != *vf) {
      out.code = 3;
      out.message = "Newton and V-filtration spectra differ: " + nw->to_string() + " vs " + vf->to_string();
    }
  }
  body["checks"] = checks;
  out.body = body;
  return out;
}

Outcome cmd_tmatrix(Job& job) {
  const LatticePair& lp = job.pair();
  Json body = to_json(lp);
  body["theta_degree"] = lp.degree();
  return ok(body);
}

Outcome cmd_goodbasis(Job& job) {
  const GoodBasisResult& r = job.good();
  const Spectrum& s = job.vfilt().spectrum;
  GoodBasisReport rep = verify_good_basis(r, s, &job.pair());
  Json body{{"mu", job.pair().mu},       {"spectrum", to_json(s)}, {"a0", to_json(r.a0)},
            {"a1", to_json(r.a1)},       {"very_good", r.very_good}, {"trace", to_json(rep.trace)},
            {"p", to_json(r.p)},         {"t_matrix", to_json(r.t_matrix)},
            {"checks", {{"degree", rep.degree_ok}, {"spectrum", rep.spectrum_ok}, {"trace", rep.trace_ok}, {"gauge", rep.gauge_ok}}}};
  Outcome out = ok(body);
  if (!rep.ok()) {
    out.code = 3;
    for (const auto& f : rep.failures) out.message += (out.message.empty() ? "" : "; ") + f;
  }
  return out;
}

Outcome cmd_monodromy(Job& job) {
  Spectrum s = job.spectrum();
  UPoly p = monodromy_char_poly(s);
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  return ok(Json{{"mu", s.total()}, {"spectrum", to_json(s)}, {"char_poly", p.to_string("T")}, {"coefficients", coeffs}});
}

Outcome cmd_mellin(Job& job, const std::string& what) {
  const GoodBasisResult& r = job.good();
  Json body{{"mu", r.a0.rows()}};
  if (what == "dim") {
    body["mellin_dimension"] = mellin_dimension(r);
    body["irregularity_full"] = irregularity_full(r);
  } else if (what == "det-t") {
    body["det_t"] = det_t_mellin(r).to_string();
  } else {
    AomotoDeterminant a = aomoto_determinant(r, job.vfilt().spectrum);
    body["c"] = to_json(a.c);
    body["aomoto"] = a.value.to_string();
  }
  return ok(body);
}

Spectrum other_spectrum(const Options& o) {
  Options other;
  other.poly = o.with_poly;
  other.vars = o.with_vars;
  other.spectrum = o.with_spectrum;
  other.skip_nondegeneracy = o.skip_nondegeneracy;
  if (other.poly.empty() && other.spectrum.empty()) fail(ErrorKind::Usage, "convolve needs --with-poly or --with-spectrum");
  Job job(other);
  if (job.is_poly()) {
    // One-variable factors are allowed on this side: x^a has spectrum {i/a}.
    MultiPoly g = parse_poly(other.poly, parse_vars(other.vars));
    if (g.nvars() == 1) return newton_spectrum(g, NewtonOptions{!o.skip_nondegeneracy});
  }
  return job.spectrum();
}

Outcome cmd_convolve(Job& job, const Options& o) {
  Spectrum a = job.is_poly() && parse_vars(o.vars).size() == 1
                   ? newton_spectrum(parse_poly(o.poly, parse_vars(o.vars)), NewtonOptions{!o.skip_nondegeneracy})
                   : job.spectrum();
  Spectrum b = other_spectrum(o);
  return ok(Json{{"left", to_json(a)}, {"right", to_json(b)}, {"convolution", to_json(convolve_spectra(a, b))}});
}

Outcome cmd_twist(Job& job, const std::string& c_text) {
  Rational c = parse_rational(c_text);
  LatticePair t = twist(job.pair(), c);
  t.provenance = job.pair().provenance + " + (" + to_string(c) + ")";
  Json body = to_json(t);
  body["c"] = to_json(c);
  return ok(body);
}

Outcome cmd_check(Job& job) {
  Spectrum s = job.spectrum();
  Json checks = Json::object();
  long w = job.weight();
  if (w > 0) {
    checks["symmetry"] = check_symmetry(s, Rational(w));
    checks["positivity"] = check_positivity(s, Rational(w));
  } else {
    checks["symmetry"] = nullptr;
    checks["positivity"] = nullptr;
  }
  checks["degree"] = job.is_spectrum() ? Json(nullptr) : Json(static_cast<std::size_t>(s.total()) == job.mu());
  checks["newton_vs_vfilt"] = job.is_poly() ? Json(job.newton() == job.vfilt().spectrum) : Json(nullptr);
  Outcome out = ok(Json{{"mu", s.total()}, {"spectrum", to_json(s)}, {"checks", checks}});
  for (const auto& [k, v] : checks.items())
    if (v.is_boolean() && !v.get<bool>()) {
      out.code = 3;
      out.message += (out.message.empty() ? "check failed: " : ", ") + k;
    }
  return out;
}

Outcome cmd_dual(Job& job) {
  Spectrum s = job.spectrum();
  return ok(Json{{"spectrum", to_json(s)}, {"dual", to_json(dual_spectrum(s))}});
}

void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  const bool spectrum_like = j.is_array() && !j.empty() && j[0].is_object() && j[0].contains("beta");
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array() && !spectrum_like && !j.empty() && j[0].is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": ";
  if (spectrum_like) {
    out << "{";
    for (std::size_t i = 0; i < j.size(); ++i)
      out << (i ? ", " : "") << j[i]["beta"].get<std::string>() << ":" << j[i]["mult"].get<long>();
    out << "}\n";
  } else if (j.is_string()) {
    out << j.get<std::string>() << "\n";
  } else {
    out << j.dump() << "\n";
  }
}

void emit(const Json& body, const std::string& format, std::ostream& out) {
  if (format == "text")
    render_text(body, "", out);
  else
    out << body.dump(2) << "\n";
}

int run_batch(const Options& o, std::ostream& out, std::ostream& err);

}  // namespace

Spectrum parse_spectrum_text(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != '{' && c != '}' && c != ' ') t += c;
  Spectrum s;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    Rational beta = parse_rational(item.substr(0, colon));
    long mult = 1;
    if (colon != std::string::npos) {
      try {
        mult = std::stol(item.substr(colon + 1));
      } catch (const std::exception&) {
        fail(ErrorKind::Usage, "bad multiplicity in \"" + item + "\"");
      }
      if (mult <= 0) fail(ErrorKind::Usage, "multiplicities must be positive");
    }
    s.add(beta, mult);
  }
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spectra of tame polynomials and Brieskorn lattices, in exact arithmetic", "spectre"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("-f,--poly", o.poly, "Polynomial, e.g. \"x^3+y^3\"");
    sub->add_option("--vars", o.vars, "Comma-separated variables, e.g. x,y");
    sub->add_option("--lattice", o.lattice, "Lattice pair JSON file");
    sub->add_flag("--skip-nondegeneracy-check", o.skip_nondegeneracy, "Do not check convenience and nondegeneracy");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--max-steps", o.max_steps, "Cap on reduction steps per form (0: automatic)");
  };
  auto add_spectrum_input = [&](CLI::App* sub) {
    add_input(sub);
    sub->add_option("--spectrum", o.spectrum, "Spectrum, e.g. \"5/6:1,7/6:1\"");
    sub->add_option("--method", o.method, "Spectrum source for polynomial input")
        ->check(CLI::IsMember({"newton", "vfilt"}));
  };

  auto* milnor = app.add_subcommand("milnor", "Milnor number, monomial basis, critical values");
  add_input(milnor);
  auto* spectrum = app.add_subcommand("spectrum", "Spectrum by the Newton filtration and/or the V-filtration");
  add_input(spectrum);
  spectrum->add_option("--method", o.method, "newton, vfilt or both (default for polynomials)")
      ->check(CLI::IsMember({"newton", "vfilt", "both"}));
  auto* tmatrix = app.add_subcommand("tmatrix", "Matrix of t on the Brieskorn lattice (lattice JSON)");
  add_input(tmatrix);
  auto* goodbasis = app.add_subcommand("goodbasis", "Good basis: t = A0 + theta A1");
  add_input(goodbasis);
  auto* monodromy = app.add_subcommand("monodromy", "Characteristic polynomial of the monodromy");
  add_spectrum_input(monodromy);
  auto* mellin = app.add_subcommand("mellin", "Mellin-side determinants and dimension");
  add_input(mellin);
  mellin->add_option("what", o.mellin_what, "det-t, aomoto or dim")->required()->check(CLI::IsMember({"det-t", "aomoto", "dim"}));
  auto* dual = app.add_subcommand("dual", "Dual spectrum");
  add_spectrum_input(dual);
  auto* convolve = app.add_subcommand("convolve", "Spectrum of a Thom-Sebastiani sum");
  add_spectrum_input(convolve);
  convolve->add_option("--with-poly", o.with_poly, "Second polynomial");
  convolve->add_option("--with-vars", o.with_vars, "Variables of the second polynomial");
  convolve->add_option("--with-spectrum", o.with_spectrum, "Second spectrum");
  auto* twist_cmd = app.add_subcommand("twist", "Lattice pair of f + c");
  add_input(twist_cmd);
  twist_cmd->add_option("-c", o.twist_c, "Rational constant")->required();
  auto* check = app.add_subcommand("check", "Symmetry, positivity, degree and Newton = V checks");
  add_spectrum_input(check);
  auto* batch = app.add_subcommand("batch", "Run a JSON manifest of jobs concurrently");
  batch->add_option("manifest", o.manifest, "Manifest file")->required();
  batch->add_option("--jobs", o.jobs, "Worker threads (0: hardware concurrency)");
  batch->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::vector<const char*> argv{"spectre"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 64;
  }

  try {
    if (batch->parsed()) return run_batch(o, out, err);
    Job job(o);
    Outcome r;
    if (milnor->parsed()) r = cmd_milnor(job);
    else if (spectrum->parsed()) r = cmd_spectrum(job, o.method);
    else if (tmatrix->parsed()) r = cmd_tmatrix(job);
    else if (goodbasis->parsed()) r = cmd_goodbasis(job);
    else if (monodromy->parsed()) r = cmd_monodromy(job);
    else if (mellin->parsed()) r = cmd_mellin(job, o.mellin_what);
    else if (dual->parsed()) r = cmd_dual(job);
    else if (convolve->parsed()) r = cmd_convolve(job, o);
    else if (twist_cmd->parsed()) r = cmd_twist(job, o.twist_c);
    else r = cmd_check(job);
    emit(r.body, o.format, out);
    if (r.code != 0) err << "error: " << r.message << "\n";
    return r.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

namespace {

std::vector<std::string> job_args(const Json& spec) {
  if (!spec.is_object() || !spec.contains("command") || !spec["command"].is_string())
    fail(ErrorKind::Usage, "every manifest entry needs a \"command\" string");
  std::vector<std::string> args{spec["command"].get<std::string>()};
  auto text = [&](const char* key) -> std::optional<std::string> {
    if (!spec.contains(key)) return std::nullopt;
    const Json& v = spec[key];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string joined;
      for (const auto& x : v) {
        if (!x.is_string()) fail(ErrorKind::Usage, std::string("\"") + key + "\" entries must be strings");
        joined += (joined.empty() ? "" : ",") + x.get<std::string>();
      }
      return joined;
    }
    fail(ErrorKind::Usage, std::string("\"") + key + "\" must be a string");
  };
  if (auto v = text("poly")) args.insert(args.end(), {"-f", *v});
  if (auto v = text("vars")) args.insert(args.end(), {"--vars", *v});
  if (auto v = text("lattice")) args.insert(args.end(), {"--lattice", *v});
  if (auto v = text("spectrum")) args.insert(args.end(), {"--spectrum", *v});
  if (spec.contains("args")) {
    if (!spec["args"].is_array()) fail(ErrorKind::Usage, "\"args\" must be an array of strings");
    for (const auto& a : spec["args"]) {
      if (!a.is_string()) fail(ErrorKind::Usage, "\"args\" must be an array of strings");
      args.push_back(a.get<std::string>());
    }
  }
  return args;
}

Json run_one(const std::vector<std::string>& args, std::size_t index) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  Json rec{{"index", index}, {"command", args.front()}, {"exit", code}};
  if (!out.str().empty()) {
    try {
      rec["output"] = Json::parse(out.str());
    } catch (const Json::parse_error&) {
      rec["output"] = out.str();
    }
  }
  std::string msg = err.str();
  if (!msg.empty()) {
    while (!msg.empty() && msg.back() == '\n') msg.pop_back();
    rec["error"] = msg;
  }
  return rec;
}

int run_batch(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.manifest);
  if (!in) {
    err << "error: cannot open " << o.manifest << "\n";
    return 64;
  }
  Json manifest;
  std::vector<std::vector<std::string>> jobs;
  try {
    manifest = Json::parse(in);
    if (!manifest.is_array()) fail(ErrorKind::Usage, "manifest must be a JSON array");
    for (const auto& spec : manifest) {
      jobs.push_back(job_args(spec));
      // Nested batches are not jobs.
      if (jobs.back().front() == "batch") fail(ErrorKind::Usage, "a manifest cannot contain batch jobs");
      jobs.back().insert(jobs.back().end(), {"--format", "json"});
    }
  } catch (const Json::parse_error& e) {
    err << "error: malformed manifest: " << e.what() << "\n";
    return 64;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }

  std::vector<Json> results(jobs.size());
  unsigned workers = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, jobs.size()); ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < jobs.size();) results[i] = run_one(jobs[i], i);
    });
  for (auto& t : pool) t.join();

  Json all = Json::array();
  for (auto& r : results) all.push_back(std::move(r));
  emit(all, o.format, out);
  return 0;
}

}  // namespace

}  // namespace spectre::cli
