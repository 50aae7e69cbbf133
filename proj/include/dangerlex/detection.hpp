#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dangerlex/corpus.hpp"
#include "dangerlex/lexicon.hpp"

namespace dangerlex {

/// Whether repeated occurrences of a list word in one unit count once or
/// every time.
enum class CountMode { Tokens, Types };
enum class ThresholdScope { Global, PerDocument };

std::string_view to_string(CountMode m);
std::string_view to_string(ThresholdScope s);
std::optional<ThresholdScope> try_parse_scope(std::string_view s);

struct UnitScore {
  std::string doc_id;
  std::size_t unit_id = 0;
  std::string list_name;
  std::size_t count = 0;
  std::vector<std::string> matched_words;  // sorted, with repetitions

  friend bool operator==(const UnitScore&, const UnitScore&) = default;
};

/// Lexicon hits per unit after lemmatisation. `jobs` > 1 scores documents
/// on worker threads; the result order is always corpus order.
std::vector<UnitScore> score_units(const Corpus& corpus, const WordList& list, const LemmaTable& lemmas,
                                   CountMode mode = CountMode::Tokens, unsigned jobs = 1);

struct UnitDecision {
  UnitScore score;
  double threshold = 0.0;
  bool positive = false;

  friend bool operator==(const UnitDecision&, const UnitDecision&) = default;
};

struct PredictionSet {
  std::string list_name;
  Provenance list_provenance = Provenance::Base;
  ThresholdScope scope = ThresholdScope::Global;
  CountMode count_mode = CountMode::Tokens;
  std::vector<UnitDecision> units;

  /// Mean over the whole set. Equals every unit's threshold under Global scope.
  double global_threshold() const;
  std::size_t positives() const;
  const UnitDecision* find(const UnitKey& key) const;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

/// A unit is positive iff its count is strictly greater than the mean count
/// of its scope. Throws DataError on empty input.
PredictionSet classify(std::vector<UnitScore> scores, ThresholdScope scope = ThresholdScope::Global);

/// TSV with columns doc_id, unit_id, count, threshold, decision,
/// matched_words. `# key=value` lines before the column header record the
/// list name, provenance, scope and count mode.
void write_predictions(std::ostream& out, const PredictionSet& pred,
                       const std::vector<std::string>& extra_header = {});
PredictionSet read_predictions(std::istream& in, std::string_view source = "<stream>");

}  // namespace dangerlex
