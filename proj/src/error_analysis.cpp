#include "dangerlex/error_analysis.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "dangerlex/error.hpp"
#include "dangerlex/utf8.hpp"

namespace dangerlex {

std::optional<double> WordErrorStat::tp_ratio() const {
  const auto n = tp_units + fp_units;
  if (n == 0) return std::nullopt;
  return static_cast<double>(tp_units) / static_cast<double>(n);
}

std::optional<int> ratio_hundredths(std::size_t tp, std::size_t fp) {
  const auto n = tp + fp;
  if (n == 0) return std::nullopt;
  return static_cast<int>((200 * tp + n) / (2 * n));
}

std::string format_ratio(std::size_t tp, std::size_t fp) {
  const auto h = ratio_hundredths(tp, fp);
  if (!h) return "—";
  std::ostringstream os;
  os << *h / 100 << '.' << std::setw(2) << std::setfill('0') << *h % 100;
  return os.str();
}

ErrorReport attribute_errors(const PredictionSet& pred, const GoldLabels& gold) {
  ErrorReport report;
  std::map<std::string, WordErrorStat> by_word;
  std::vector<std::string> missing;
  for (const auto& u : pred.units) {
    const UnitKey key{u.score.doc_id, u.score.unit_id};
    const auto it = gold.find(key);
    if (it == gold.end()) {
      missing.push_back(key.first + "#" + std::to_string(key.second));
      continue;
    }
    const bool g = it->second;
    if (!u.positive) {
      if (g) report.false_negatives.push_back(key);
      continue;
    }
    (g ? report.true_positive_units : report.false_positive_units) += 1;
    const std::set<std::string> distinct(u.score.matched_words.begin(), u.score.matched_words.end());
    for (const auto& w : distinct) {
      auto& s = by_word[w];
      s.word = w;
      (g ? s.tp_units : s.fp_units) += 1;
    }
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << missing.size() << " predicted unit(s) have no gold label:";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) os << ' ' << missing[i];
    throw DataError(os.str());
  }
  for (auto& [_, s] : by_word) report.stats.push_back(std::move(s));
  return report;
}

std::optional<RankBy> try_parse_rank(std::string_view s) {
  if (s == "fp") return RankBy::FalsePositives;
  if (s == "tp") return RankBy::TruePositives;
  if (s == "ratio") return RankBy::Ratio;
  return std::nullopt;
}

std::string_view to_string(RankBy r) {
  switch (r) {
    case RankBy::FalsePositives: return "fp";
    case RankBy::TruePositives: return "tp";
    case RankBy::Ratio: return "ratio";
  }
  return "?";
}

std::vector<WordErrorStat> rank_report(std::span<const WordErrorStat> stats, RankBy by, std::size_t top_n) {
  std::vector<WordErrorStat> rows;
  for (const auto& s : stats) {
    if (s.tp_units + s.fp_units == 0) continue;
    if (by == RankBy::FalsePositives && s.fp_units == 0) continue;
    if (by == RankBy::TruePositives && s.tp_units == 0) continue;
    rows.push_back(s);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.word < b.word; });
  const auto key = [by](const WordErrorStat& s) -> double {
    switch (by) {
      case RankBy::FalsePositives: return static_cast<double>(s.fp_units);
      case RankBy::TruePositives: return static_cast<double>(s.tp_units);
      case RankBy::Ratio: return static_cast<double>(*ratio_hundredths(s.tp_units, s.fp_units));
    }
    return 0.0;
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) { return key(a) > key(b); });
  if (rows.size() > top_n) rows.resize(top_n);
  return rows;
}

void write_error_tsv(std::ostream& out, std::span<const WordErrorStat> rows) {
  out << "word\ttp\tfp\ttp_ratio\n";
  for (const auto& s : rows)
    out << s.word << '\t' << s.tp_units << '\t' << s.fp_units << '\t' << format_ratio(s.tp_units, s.fp_units) << '\n';
}

void write_error_table(std::ostream& out, std::span<const WordErrorStat> rows, RankBy by) {
  // Pad by code points so umlauts line up.
  const auto width = [](std::string_view s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); i += utf8::decode(s, i).length) ++n;
    return n;
  };
  std::size_t col = 4;
  for (const auto& s : rows) col = std::max(col, width(s.word));
  const auto pad = [&](std::string_view s) { return std::string(col + 2 - width(s), ' '); };
  const char* title = by == RankBy::FalsePositives  ? "Words causing false positives"
                      : by == RankBy::TruePositives ? "Words causing true positives"
                                                    : "Words by true-positive ratio";
  out << title << '\n';
  out << "word" << pad("word") << std::setw(4) << "TP" << std::setw(6) << "FP" << std::setw(10) << "TP Ratio" << '\n';
  for (const auto& s : rows) {
    out << s.word << pad(s.word) << std::setw(4) << s.tp_units << std::setw(6) << s.fp_units << std::setw(10)
        << format_ratio(s.tp_units, s.fp_units) << '\n';
  }
}

void write_false_negatives(std::ostream& out, const ErrorReport& report) {
  out << "doc_id\tunit_id\n";
  for (const auto& [doc, unit] : report.false_negatives) out << doc << '\t' << unit << '\n';
}

}  // namespace dangerlex
