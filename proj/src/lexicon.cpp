#include "dangerlex/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "dangerlex/error.hpp"
#include "dangerlex/segmentation.hpp"
#include "dangerlex/utf8.hpp"

namespace dangerlex {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Base: return "base";
    case Provenance::Embedding: return "embedding";
    case Provenance::ConceptNet: return "conceptnet";
  }
  return "?";
}

std::optional<Provenance> try_parse_provenance(std::string_view s) {
  if (s == "base") return Provenance::Base;
  if (s == "embedding" || s == "embeddings") return Provenance::Embedding;
  if (s == "conceptnet" || s == "kg") return Provenance::ConceptNet;
  return std::nullopt;
}

WordList parse_wordlist(std::istream& in, std::string name, Provenance provenance, std::string_view source) {
  WordList list{std::move(name), provenance, {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto entry = utf8::trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    if (utf8::contains_space(entry)) {
      std::ostringstream os;
      os << source << ":" << line_no << ": word-list entry '" << entry << "' contains whitespace";
      throw DataError(os.str());
    }
    list.words.insert(utf8::lower(entry));
  }
  return list;
}

WordList load_wordlist(const std::filesystem::path& path, std::string name, Provenance provenance) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open word list: " + path.string());
  return parse_wordlist(in, std::move(name), provenance, path.string());
}

std::optional<std::pair<std::string, Provenance>> parse_wordlist_filename(const std::filesystem::path& path) {
  if (path.extension() != ".txt") return std::nullopt;
  const auto stem = path.stem();  // "Storm.base"
  if (!stem.has_extension()) return std::nullopt;
  const auto prov = try_parse_provenance(stem.extension().string().substr(1));
  if (!prov) return std::nullopt;
  return std::pair{stem.stem().string(), *prov};
}

WordList load_wordlist(const std::filesystem::path& path) {
  if (auto parsed = parse_wordlist_filename(path)) return load_wordlist(path, parsed->first, parsed->second);
  return load_wordlist(path, path.stem().string(), Provenance::Base);
}

void write_wordlist(std::ostream& out, const WordList& list) {
  for (const auto& w : list.words) out << w << '\n';
}

WordList merge_danger_lists(std::span<const WordList> sublists) {
  if (sublists.empty()) throw DataError("cannot merge an empty set of word lists");
  WordList merged{"Danger", sublists.front().provenance, {}};
  for (const auto& l : sublists) {
    if (l.provenance != merged.provenance) {
      throw DataError("cannot merge word lists of mixed provenance ('" + sublists.front().name + "' is " +
                      std::string(to_string(merged.provenance)) + ", '" + l.name + "' is " +
                      std::string(to_string(l.provenance)) + ")");
    }
    merged.words.insert(l.words.begin(), l.words.end());
  }
  return merged;
}

LemmaTable LemmaTable::parse(std::istream& in, std::string_view source) {
  LemmaTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = utf8::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tab = body.find('\t');
    if (tab == std::string_view::npos) {
      std::ostringstream os;
      os << source << ":" << line_no << ": expected 'surface<TAB>lemma'";
      throw DataError(os.str());
    }
    const auto surface = utf8::trim(body.substr(0, tab));
    const auto lemma = utf8::trim(body.substr(tab + 1));
    if (surface.empty() || lemma.empty()) {
      std::ostringstream os;
      os << source << ":" << line_no << ": empty surface form or lemma";
      throw DataError(os.str());
    }
    table.insert(surface, lemma);
  }
  return table;
}

LemmaTable LemmaTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open lemma table: " + path.string());
  return parse(in, path.string());
}

void LemmaTable::insert(std::string_view surface, std::string_view lemma) {
  table_.insert_or_assign(utf8::lower(surface), utf8::lower(lemma));
}

std::string LemmaTable::lookup(std::string_view surface) const {
  auto key = utf8::lower(surface);
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  return key;
}

std::vector<std::string> lemmatize_unit(std::string_view text, const LemmaTable& table) {
  std::vector<std::string> out;
  for (auto& tok : tokenize(text)) out.push_back(table.lookup(tok.text));
  return out;
}

}  // namespace dangerlex
