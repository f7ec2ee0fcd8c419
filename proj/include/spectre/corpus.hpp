#pragma once

#include <map>
#include <string>
#include <vector>

#include "spectre/json_io.hpp"

namespace spectre {

struct CorpusEntry {
  std::string name;
  std::string poly;
  std::vector<std::string> vars;
  std::size_t mu = 0;
  Spectrum spectrum;
  Spectrum critical_values;  // eigenvalues of A0 with multiplicity
  std::vector<std::string> tags;
  std::map<std::string, std::string> notes;  // how each expected value was obtained

  bool has_tag(const std::string& t) const;
};

/// Throws Error(Usage, ...) on malformed files, including entries whose
/// expected values lack a note.
std::vector<CorpusEntry> corpus_from_json(const Json& j);
std::vector<CorpusEntry> load_corpus(const std::string& path);

struct CorpusResult {
  std::string name;
  std::size_t mu = 0;
  Spectrum newton, vfilt;
  Spectrum critical_values;
  bool good_basis_ok = false;
  std::vector<std::string> diffs;  // empty when everything matched
  bool ok() const { return diffs.empty(); }
};

/// Recomputes every invariant and compares exactly. Failures inside the
/// pipeline become diffs, never exceptions.
CorpusResult run_corpus_entry(const CorpusEntry& e);
/// Entries run concurrently; results keep the input order.
std::vector<CorpusResult> run_corpus(const std::vector<CorpusEntry>& entries);

}  // namespace spectre
