#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dangerlex/detection.hpp"
#include "dangerlex/evaluation.hpp"

namespace dangerlex {

struct WordErrorStat {
  std::string word;
  std::size_t tp_units = 0;  // true-positive units containing the word
  std::size_t fp_units = 0;  // false-positive units containing the word

  /// tp / (tp + fp); empty when the word never occurs in a positive unit.
  std::optional<double> tp_ratio() const;
  friend bool operator==(const WordErrorStat&, const WordErrorStat&) = default;
};

/// tp / (tp + fp) in hundredths, rounded half up with integer arithmetic.
std::optional<int> ratio_hundredths(std::size_t tp, std::size_t fp);
/// "0.60", or "—" when undefined.
std::string format_ratio(std::size_t tp, std::size_t fp);

struct ErrorReport {
  std::vector<WordErrorStat> stats;          // one per word seen in a positive unit, sorted by word
  std::vector<UnitKey> false_negatives;      // gold-positive units predicted negative
  std::size_t true_positive_units = 0;
  std::size_t false_positive_units = 0;
};

/// Attributes each positive-predicted unit to the distinct list words it
/// matched. A unit contributes at most once per word. Throws DataError when
/// a predicted unit has no gold label.
ErrorReport attribute_errors(const PredictionSet& pred, const GoldLabels& gold);

enum class RankBy { FalsePositives, TruePositives, Ratio };

std::optional<RankBy> try_parse_rank(std::string_view s);
std::string_view to_string(RankBy r);

/// Descending by the chosen key, ties broken by word. Ranking by fp or tp
/// drops words whose key is zero; words without a ratio are never listed.
std::vector<WordErrorStat> rank_report(std::span<const WordErrorStat> stats, RankBy by, std::size_t top_n = 10);

void write_error_tsv(std::ostream& out, std::span<const WordErrorStat> rows);
void write_error_table(std::ostream& out, std::span<const WordErrorStat> rows, RankBy by);
void write_false_negatives(std::ostream& out, const ErrorReport& report);

}  // namespace dangerlex
