#include "dangerlex/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "dangerlex/error.hpp"
#include "dangerlex/utf8.hpp"

namespace dangerlex {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::pair<DangerType, std::string_view> kTypeNames[] = {
    {DangerType::Duel, "Duel"},
    {DangerType::Abduction, "Abduction"},
    {DangerType::Natural, "Natural"},
    {DangerType::Supernatural, "Supernatural"},
    {DangerType::Ambush, "Ambush"},
    {DangerType::Hitchcock, "Hitchcock"},
    {DangerType::Other, "Other"},
};

[[noreturn]] void fail_at(std::string_view source, std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line << ": " << what;
  throw DataError(os.str());
}

UnitLabel parse_label(const json& j, std::string_view source, std::size_t line,
                      const std::string& annotator) {
  if (!j.is_object()) fail_at(source, line, "annotation of '" + annotator + "' is not an object");
  UnitLabel label;
  if (auto it = j.find("danger_types"); it != j.end()) {
    if (!it->is_array()) fail_at(source, line, "danger_types must be an array");
    for (const auto& t : *it) {
      if (!t.is_string()) fail_at(source, line, "danger_types entries must be strings");
      const auto name = t.get<std::string>();
      const auto parsed = try_parse_danger_type(name);
      if (!parsed) fail_at(source, line, "unknown danger label '" + name + "' (annotator '" + annotator + "')");
      label.danger_types.insert(*parsed);
    }
  }
  if (auto it = j.find("fear"); it != j.end()) {
    if (!it->is_boolean()) fail_at(source, line, "fear must be a boolean");
    label.fear = it->get<bool>();
  }
  return label;
}

ParagraphUnit parse_record(const std::string& text, std::string_view source, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at(source, line, std::string("malformed record: ") + e.what());
  }
  if (!j.is_object()) fail_at(source, line, "record is not a JSON object");

  ParagraphUnit unit;
  const auto doc = j.find("doc_id");
  if (doc == j.end() || !doc->is_string() || doc->get<std::string>().empty())
    fail_at(source, line, "missing or empty string field 'doc_id'");
  unit.doc_id = doc->get<std::string>();

  const auto uid = j.find("unit_id");
  if (uid == j.end() || !uid->is_number_integer() || uid->get<long long>() < 0)
    fail_at(source, line, "field 'unit_id' must be a non-negative integer");
  unit.unit_id = static_cast<std::size_t>(uid->get<long long>());

  const auto txt = j.find("text");
  if (txt == j.end() || !txt->is_string() || txt->get<std::string>().empty())
    fail_at(source, line, "field 'text' must be a non-empty string");
  unit.text = txt->get<std::string>();

  if (auto ann = j.find("annotations"); ann != j.end() && !ann->is_null()) {
    if (!ann->is_object()) fail_at(source, line, "field 'annotations' must be an object");
    for (const auto& [annotator, label] : ann->items())
      unit.gold.emplace(annotator, parse_label(label, source, line, annotator));
  }
  return unit;
}

std::string join_units(const std::vector<ParagraphUnit>& units) {
  std::string out;
  for (const auto& u : units) {
    if (!out.empty()) out += "\n\n";
    out += u.text;
  }
  return out;
}

}  // namespace

std::string_view to_string(DangerType t) {
  for (const auto& [type, name] : kTypeNames)
    if (type == t) return name;
  return "?";
}

std::optional<DangerType> try_parse_danger_type(std::string_view s) {
  for (const auto& [type, name] : kTypeNames)
    if (name == s) return type;
  return std::nullopt;
}

DangerType parse_danger_type(std::string_view s) {
  if (auto t = try_parse_danger_type(s)) return *t;
  throw DataError("unknown danger label '" + std::string(s) + "'");
}

BinaryLabel collapse_labels(const UnitLabel& label) { return {label.any_danger(), label.fear}; }

std::size_t Corpus::unit_count() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.units.size();
  return n;
}

const ParagraphUnit* Corpus::find(const UnitKey& key) const {
  const auto doc = std::lower_bound(documents.begin(), documents.end(), key.first,
                                    [](const Document& d, const std::string& id) { return d.doc_id < id; });
  if (doc == documents.end() || doc->doc_id != key.first) return nullptr;
  if (key.second >= doc->units.size()) return nullptr;
  return &doc->units[key.second];
}

bool Corpus::has_annotations() const {
  for (const auto& d : documents)
    for (const auto& u : d.units)
      if (!u.gold.empty()) return true;
  return false;
}

std::optional<CorpusFormat> try_parse_corpus_format(std::string_view s) {
  if (s == "segmented-jsonl" || s == "jsonl") return CorpusFormat::SegmentedJsonl;
  if (s == "raw-text-dir" || s == "raw") return CorpusFormat::RawTextDir;
  return std::nullopt;
}

Corpus parse_corpus_jsonl(std::istream& in, std::string_view source) {
  std::map<std::string, std::map<std::size_t, ParagraphUnit>> by_doc;
  std::map<UnitKey, std::size_t> first_seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = utf8::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto unit = parse_record(std::string(body), source, line_no);
    const UnitKey key{unit.doc_id, unit.unit_id};
    if (auto [it, inserted] = first_seen.emplace(key, line_no); !inserted) {
      fail_at(source, line_no,
              "duplicate unit_id " + std::to_string(unit.unit_id) + " in document '" + unit.doc_id +
                  "' (first seen at line " + std::to_string(it->second) + ")");
    }
    auto& slot = by_doc[unit.doc_id];
    slot.emplace(unit.unit_id, std::move(unit));
  }

  Corpus corpus;
  for (auto& [doc_id, units] : by_doc) {
    Document doc;
    doc.doc_id = doc_id;
    doc.title = doc_id;
    std::size_t expected = 0;
    for (auto& [uid, unit] : units) {
      if (uid != expected) {
        throw DataError(std::string(source) + ": document '" + doc_id + "' has non-contiguous unit ids (expected " +
                        std::to_string(expected) + ", found " + std::to_string(uid) + ")");
      }
      ++expected;
      doc.units.push_back(std::move(unit));
    }
    doc.raw_text = join_units(doc.units);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw UsageError("corpus path does not exist: " + path.string());

  if (format == CorpusFormat::SegmentedJsonl) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path.string());
    return parse_corpus_jsonl(in, path.string());
  }

  if (!fs::is_directory(path)) throw UsageError("raw-text corpus must be a directory: " + path.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.stem().string() < b.stem().string(); });

  Corpus corpus;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw DataError("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    Document doc;
    doc.doc_id = file.stem().string();
    doc.title = doc.doc_id;
    doc.raw_text = buf.str();
    if (const auto body = utf8::trim(doc.raw_text); !body.empty())
      doc.units.push_back(ParagraphUnit{doc.doc_id, 0, std::string(body), {}});
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& doc : corpus.documents) {
    for (const auto& unit : doc.units) {
      ordered_json rec;
      rec["doc_id"] = unit.doc_id;
      rec["unit_id"] = unit.unit_id;
      rec["text"] = unit.text;
      ordered_json ann = ordered_json::object();
      for (const auto& [annotator, label] : unit.gold) {
        ordered_json types = ordered_json::array();
        for (auto t : label.danger_types) types.push_back(std::string(to_string(t)));
        ann[annotator] = ordered_json{{"danger_types", std::move(types)}, {"fear", label.fear}};
      }
      rec["annotations"] = std::move(ann);
      out << rec.dump() << '\n';
    }
  }
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus,
                 const std::vector<std::string>& header_lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& h : header_lines) out << "# " << h << '\n';
  write_corpus(out, corpus);
}

std::string_view to_string(GoldPolicy p) {
  switch (p) {
    case GoldPolicy::FirstAnnotator: return "first-annotator";
    case GoldPolicy::Union: return "union";
    case GoldPolicy::Intersection: return "intersection";
  }
  return "?";
}

std::optional<GoldPolicy> try_parse_gold_policy(std::string_view s) {
  if (s == "first-annotator" || s == "first") return GoldPolicy::FirstAnnotator;
  if (s == "union") return GoldPolicy::Union;
  if (s == "intersection") return GoldPolicy::Intersection;
  return std::nullopt;
}

std::optional<UnitLabel> resolve_gold(const ParagraphUnit& unit, GoldPolicy policy) {
  if (unit.gold.empty()) return std::nullopt;
  auto it = unit.gold.begin();
  UnitLabel out = it->second;
  if (policy == GoldPolicy::FirstAnnotator) return out;
  for (++it; it != unit.gold.end(); ++it) {
    const auto& next = it->second;
    if (policy == GoldPolicy::Union) {
      out.danger_types.insert(next.danger_types.begin(), next.danger_types.end());
      out.fear = out.fear || next.fear;
    } else {
      std::set<DangerType> both;
      std::set_intersection(out.danger_types.begin(), out.danger_types.end(), next.danger_types.begin(),
                            next.danger_types.end(), std::inserter(both, both.end()));
      out.danger_types = std::move(both);
      out.fear = out.fear && next.fear;
    }
  }
  return out;
}

}  // namespace dangerlex
