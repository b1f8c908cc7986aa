#ifndef METRILOG_CORPUS_HPP
#define METRILOG_CORPUS_HPP

#include <string>
#include <vector>

namespace metrilog {

/// A bundled infinitary-sentence fixture: a signature, one sentence over it,
/// and optionally a structure on which the sentence evaluates exactly.
struct CorpusEntry {
  std::string name;
  std::string description;
  std::string signature_text;
  std::string formula_text;
  std::string structure_text;  // empty when the entry is parse-only
};

/// The bundled axiom corpus: classic infinitary sentences from analysis,
/// transliterated into the artifact grammar (nested ω-schemas, indexed
/// constant families, enumerated rational thresholds).
const std::vector<CorpusEntry>& corpus_entries();

}  // namespace metrilog

#endif
