#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dangerlex {

/// Closed set of danger categories an annotator may assign to a paragraph.
/// `Hitchcock` is admitted by the schema but no word list targets it.
enum class DangerType { Duel, Abduction, Natural, Supernatural, Ambush, Hitchcock, Other };

inline constexpr DangerType kAllDangerTypes[] = {
    DangerType::Duel,   DangerType::Abduction, DangerType::Natural, DangerType::Supernatural,
    DangerType::Ambush, DangerType::Hitchcock, DangerType::Other};

std::string_view to_string(DangerType t);
std::optional<DangerType> try_parse_danger_type(std::string_view s);
/// Throws DataError on anything outside the enumeration (matching is case-sensitive).
DangerType parse_danger_type(std::string_view s);

struct UnitLabel {
  std::set<DangerType> danger_types;
  bool fear = false;

  bool any_danger() const { return !danger_types.empty(); }
  friend bool operator==(const UnitLabel&, const UnitLabel&) = default;
};

struct BinaryLabel {
  bool danger = false;
  bool fear = false;
  friend bool operator==(const BinaryLabel&, const BinaryLabel&) = default;
};

/// Reduces a typed label to the two detection targets.
BinaryLabel collapse_labels(const UnitLabel& label);

struct ParagraphUnit {
  std::string doc_id;
  std::size_t unit_id = 0;
  std::string text;
  std::map<std::string, UnitLabel> gold;  // annotator id -> label

  friend bool operator==(const ParagraphUnit&, const ParagraphUnit&) = default;
};

struct Document {
  std::string doc_id;
  std::string title;
  std::string raw_text;
  std::vector<ParagraphUnit> units;

  friend bool operator==(const Document&, const Document&) = default;
};

using UnitKey = std::pair<std::string, std::size_t>;

struct Corpus {
  std::vector<Document> documents;  // sorted by doc_id

  std::size_t unit_count() const;
  const ParagraphUnit* find(const UnitKey& key) const;
  bool has_annotations() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

enum class CorpusFormat { SegmentedJsonl, RawTextDir };

std::optional<CorpusFormat> try_parse_corpus_format(std::string_view s);

/// Reads a corpus. Raw-text directories yield one document per `.txt` file,
/// each holding a single unit spanning the whole (trimmed) text; run the
/// segmenter over the result to split it into paragraphs.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

/// Parses segmented-jsonl from a stream. Lines starting with '#' and blank
/// lines are skipped. `source` names the input in error messages.
Corpus parse_corpus_jsonl(std::istream& in, std::string_view source = "<stream>");

void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus,
                 const std::vector<std::string>& header_lines = {});

/// How the gold standard is chosen when several annotators labeled a unit.
/// `FirstAnnotator` takes the lexicographically smallest annotator id.
enum class GoldPolicy { FirstAnnotator, Union, Intersection };

std::string_view to_string(GoldPolicy p);
std::optional<GoldPolicy> try_parse_gold_policy(std::string_view s);

/// Empty optional when the unit has no annotations.
std::optional<UnitLabel> resolve_gold(const ParagraphUnit& unit, GoldPolicy policy);

}  // namespace dangerlex
