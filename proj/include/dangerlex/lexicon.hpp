#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dangerlex {

enum class Provenance { Base, Embedding, ConceptNet };

std::string_view to_string(Provenance p);
std::optional<Provenance> try_parse_provenance(std::string_view s);

/// A named lexicon of lowercase single-word lemmas.
struct WordList {
  std::string name;
  Provenance provenance = Provenance::Base;
  std::set<std::string> words;

  bool contains(const std::string& w) const { return words.contains(w); }
  std::size_t size() const { return words.size(); }
  friend bool operator==(const WordList&, const WordList&) = default;
};

/// One word per line, `#` starts a comment line. Words are lowercased and
/// deduplicated; a line with inner whitespace is a DataError naming the line.
WordList parse_wordlist(std::istream& in, std::string name, Provenance provenance,
                        std::string_view source = "<stream>");
WordList load_wordlist(const std::filesystem::path& path, std::string name, Provenance provenance);

/// `Storm.base.txt` -> ("Storm", Base). Empty when the name does not follow
/// the `<Type>.<provenance>.txt` convention.
std::optional<std::pair<std::string, Provenance>> parse_wordlist_filename(const std::filesystem::path& path);

/// Loads a list, taking name and provenance from the file name when it
/// follows the convention and falling back to (stem, Base) otherwise.
WordList load_wordlist(const std::filesystem::path& path);

void write_wordlist(std::ostream& out, const WordList& list);

/// Union of all sublists, named "Danger". Throws DataError on mixed
/// provenance or an empty input.
WordList merge_danger_lists(std::span<const WordList> sublists);

/// Surface form -> lemma, both lowercase. Unmapped forms are their own lemma.
class LemmaTable {
 public:
  LemmaTable() = default;

  static LemmaTable parse(std::istream& in, std::string_view source = "<stream>");
  static LemmaTable load(const std::filesystem::path& path);

  void insert(std::string_view surface, std::string_view lemma);
  std::string lookup(std::string_view surface) const;
  std::size_t size() const { return table_.size(); }
  bool empty() const { return table_.empty(); }

 private:
  std::unordered_map<std::string, std::string> table_;
};

/// Tokens of `text` (stopwords kept) mapped through the table, in order and
/// with repetitions.
std::vector<std::string> lemmatize_unit(std::string_view text, const LemmaTable& table);

}  // namespace dangerlex
