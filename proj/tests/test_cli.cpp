#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "spectre/cli.hpp"
#include "spectre/corpus.hpp"

using namespace spectre;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run spectre_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  static int counter = 0;
  std::string path = (std::filesystem::temp_directory_path() /
                      ("spectre-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" + name))
                         .string();
  std::ofstream(path) << content;
  return path;
}

const Json kFermatSpectrum = Json::parse(R"([{"beta":"2/3","mult":1},{"beta":"1","mult":2},{"beta":"4/3","mult":1}])");

}  // namespace

TEST_CASE("spectrum by both methods") {
  Run r = spectre_run({"spectrum", "--method", "both", "-f", "x^3+y^3", "--vars", "x,y"});
  REQUIRE(r.code == 0);
  Json j = r.json();
  CHECK(j["mu"] == 4);
  CHECK(j["spectrum"] == kFermatSpectrum);
  CHECK(j["methods"]["newton"] == kFermatSpectrum);
  CHECK(j["methods"]["vfilt"] == kFermatSpectrum);
  CHECK(j["agree"] == true);
  // both is the default on polynomial input
  CHECK(spectre_run({"spectrum", "-f", "x^3+y^3", "--vars", "x,y"}).out == r.out);
}

TEST_CASE("aomoto rejects a critical value at 0") {
  Run r = spectre_run({"mellin", "aomoto", "-f", "x^3+y^3", "--vars", "x,y"});
  CHECK(r.code == 2);
  CHECK(r.err.find("0 is a critical value") != std::string::npos);
}

TEST_CASE("check passes on the cubic") {
  Run r = spectre_run({"check", "-f", "1/3x^3 - x + 1/2y^2", "--vars", "x,y"});
  REQUIRE(r.code == 0);
  for (const auto& [k, v] : r.json()["checks"].items()) {
    INFO(k);
    CHECK(v == true);
  }
}

TEST_CASE("goodbasis and mellin on the cubic") {
  Run g = spectre_run({"goodbasis", "-f", "1/3*x^3-x+1/2*y^2", "--vars", "x,y"});
  REQUIRE(g.code == 0);
  Json j = g.json();
  CHECK(j["a0"] == Json::parse(R"([["0","-2/3"],["-2/3","0"]])"));
  CHECK(j["a1"] == Json::parse(R"([["5/6","0"],["0","7/6"]])"));
  CHECK(j["very_good"] == true);
  CHECK(j["trace"] == "2");

  Run a = spectre_run({"mellin", "aomoto", "-f", "1/3*x^3-x+1/2*y^2", "--vars", "x,y"});
  REQUIRE(a.code == 0);
  CHECK(a.json()["c"] == "-4/9");
  CHECK(a.json()["aomoto"] == "(-4/9)*(s+1)^2/((s+11/6)*(s+13/6))");
  CHECK(spectre_run({"mellin", "det-t", "-f", "1/3*x^3-x+1/2*y^2", "--vars", "x,y"}).json()["det_t"] ==
        "(-4/9)*s^2/((s+5/6)*(s+7/6))");
  Json d = spectre_run({"mellin", "dim", "-f", "x^3+y^3", "--vars", "x,y"}).json();
  CHECK(d["mellin_dimension"] == 0);
  CHECK(d["irregularity_full"] == false);
}

TEST_CASE("spectrum-level verbs") {
  Json m = spectre_run({"monodromy", "-f", "x^3+y^3", "--vars", "x,y"}).json();
  CHECK(m["char_poly"] == "T^4 - T^3 - T + 1");
  CHECK(spectre_run({"monodromy", "--spectrum", "5/6,7/6"}).json()["char_poly"] == "T^2 - T + 1");
  CHECK(spectre_run({"dual", "--spectrum", "{5/6:1, 7/6:1}"}).json()["dual"] ==
        Json::parse(R"([{"beta":"-7/6","mult":1},{"beta":"-5/6","mult":1}])"));
  Json c = spectre_run({"convolve", "-f", "x^3", "--vars", "x", "--with-poly", "y^3", "--with-vars", "y"}).json();
  CHECK(c["convolution"] == kFermatSpectrum);
  Json c2 = spectre_run({"convolve", "--spectrum", "1/3,2/3", "--with-spectrum", "1/3,2/3"}).json();
  CHECK(c2["convolution"] == kFermatSpectrum);
}

TEST_CASE("lattice files round-trip through the CLI") {
  Run t = spectre_run({"tmatrix", "-f", "1/3*x^3-x+1/2*y^2", "--vars", "x,y"});
  REQUIRE(t.code == 0);
  CHECK(Json::parse(t.out).dump(2) + "\n" == t.out);
  std::string path = temp_file("cubic.json", t.out);
  Run s = spectre_run({"spectrum", "--lattice", path});
  REQUIRE(s.code == 0);
  CHECK(s.json()["spectrum"] == Json::parse(R"([{"beta":"5/6","mult":1},{"beta":"7/6","mult":1}])"));
  // The weight survives, so symmetry and positivity are checked for lattice input too.
  Json ch = spectre_run({"check", "--lattice", path}).json()["checks"];
  CHECK(ch["symmetry"] == true);
  CHECK(ch["positivity"] == true);
  CHECK(ch["newton_vs_vfilt"].is_null());

  Run tw = spectre_run({"twist", "-c", "5/2", "--lattice", path});
  REQUIRE(tw.code == 0);
  std::string tpath = temp_file("twisted.json", tw.out);
  Json g0 = spectre_run({"goodbasis", "--lattice", path}).json();
  Json g1 = spectre_run({"goodbasis", "--lattice", tpath}).json();
  CHECK(g1["a1"] == g0["a1"]);
  CHECK(g1["a0"] == Json::parse(R"([["5/2","-2/3"],["-2/3","5/2"]])"));
  CHECK(g1["spectrum"] == g0["spectrum"]);
  std::remove(path.c_str());
  std::remove(tpath.c_str());
}

TEST_CASE("determinism") {
  std::vector<std::string> args{"goodbasis", "-f", "x^3+y^4+x*y", "--vars", "x,y"};
  Run a = spectre_run(args), b = spectre_run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("text output") {
  Run r = spectre_run({"spectrum", "-f", "x^3+y^3", "--vars", "x,y", "--format", "text"});
  CHECK(r.out.find("spectrum: {2/3:1, 1:2, 4/3:1}") != std::string::npos);
}

TEST_CASE("exit codes") {
  // preconditions
  CHECK(spectre_run({"spectrum", "-f", "x^3", "--vars", "x"}).code == 2);
  CHECK(spectre_run({"spectrum", "-f", "x^2*y^2+x", "--vars", "x,y"}).code == 2);
  CHECK(spectre_run({"spectrum", "-f", "x^3+3*x^2*y+3*x*y^2+y^3+x^2+y^2", "--vars", "x,y"}).code == 2);
  // computation: a one-step cap stalls the reduction
  CHECK(spectre_run({"tmatrix", "-f", "x^7+y^5", "--vars", "x,y", "--max-steps", "1"}).code == 3);
  // usage
  CHECK(spectre_run({}).code == 64);
  CHECK(spectre_run({"frobnicate"}).code == 64);
  CHECK(spectre_run({"spectrum"}).code == 64);
  CHECK(spectre_run({"spectrum", "-f", "x^2+y^2"}).code == 64);
  CHECK(spectre_run({"spectrum", "-f", "x^2+y^2", "--vars", "x,y", "--lattice", "a.json"}).code == 64);
  CHECK(spectre_run({"spectrum", "-f", "x^2+*y", "--vars", "x,y"}).code == 64);
  CHECK(spectre_run({"spectrum", "--lattice", "/nonexistent.json"}).code == 64);
  CHECK(spectre_run({"spectrum", "--method", "newton", "--spectrum", "1"}).code == 64);
  CHECK(spectre_run({"mellin", "-f", "x^2+y^2", "--vars", "x,y"}).code == 64);
  CHECK(spectre_run({"--help"}).code == 0);
}

TEST_CASE("batch over the corpus keeps order and isolates failures") {
  std::vector<CorpusEntry> corpus = load_corpus(std::string(SPECTRE_DATA_DIR) + "/corpus.json");
  Json manifest = Json::array();
  for (const auto& e : corpus) manifest.push_back({{"command", "spectrum"}, {"poly", e.poly}, {"vars", e.vars}});
  const std::size_t bad = 3;
  manifest.insert(manifest.begin() + bad, Json{{"command", "spectrum"}, {"poly", "x^3+3*x^2*y+3*x*y^2+y^3+x^2+y^2"}, {"vars", "x,y"}});
  std::string path = temp_file("manifest.json", manifest.dump());
  Run r = spectre_run({"batch", path, "--jobs", "4"});
  REQUIRE(r.code == 0);
  Json res = r.json();
  REQUIRE(res.size() == corpus.size() + 1);
  for (std::size_t i = 0, k = 0; i < res.size(); ++i) {
    INFO(i);
    CHECK(res[i]["index"] == i);
    if (i == bad) {
      CHECK(res[i]["exit"] == 2);
      CHECK(res[i].contains("error"));
      continue;
    }
    CHECK(res[i]["exit"] == 0);
    CHECK(spectrum_from_json(res[i]["output"]["spectrum"]) == corpus[k].spectrum);
    ++k;
  }
  std::remove(path.c_str());

  std::string empty = temp_file("empty.json", "[]");
  Run e = spectre_run({"batch", empty});
  CHECK(e.code == 0);
  CHECK(e.json() == Json::array());
  std::remove(empty.c_str());

  std::string broken = temp_file("broken.json", "[{\"command\": ");
  CHECK(spectre_run({"batch", broken}).code == 64);
  std::remove(broken.c_str());
  std::string noverb = temp_file("noverb.json", R"([{"poly": "x^2+y^2"}])");
  CHECK(spectre_run({"batch", noverb}).code == 64);
  std::remove(noverb.c_str());
}
