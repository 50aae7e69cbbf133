#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dangerlex/corpus.hpp"
#include "dangerlex/error.hpp"
#include "dangerlex/fixtures.hpp"
#include "texts.hpp"

using namespace dangerlex;

namespace {

std::string record(std::string_view doc, int unit, std::string_view annotations = "{}") {
  std::ostringstream os;
  os << R"({"doc_id": ")" << doc << R"(", "unit_id": )" << unit << R"(, "text": "Absatz )" << unit
     << R"(", "annotations": )" << annotations << "}\n";
  return os.str();
}

Corpus parse(const std::string& s) {
  std::istringstream in(s);
  return parse_corpus_jsonl(in, "test.jsonl");
}

}  // namespace

TEST_CASE("two documents with three units each") {
  std::string s;
  for (auto doc : {"b", "a"})
    for (int u = 0; u < 3; ++u) s += record(doc, u, R"({"x": {"danger_types": ["Natural"], "fear": false}})");
  const auto c = parse(s);
  CHECK(c.unit_count() == 6);
  REQUIRE(c.documents.size() == 2);
  CHECK(c.documents[0].doc_id == "a");
  CHECK(c.documents[1].units[2].gold.at("x").danger_types == std::set{DangerType::Natural});
  CHECK(c.has_annotations());
}

TEST_CASE("unknown danger label names the record") {
  const auto s = record("a", 0) + record("a", 1, R"({"x": {"danger_types": ["Duell"], "fear": false}})");
  try {
    parse(s);
    FAIL("expected a DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("test.jsonl:2") != std::string::npos);
    CHECK(msg.find("Duell") != std::string::npos);
  }
}

TEST_CASE("schema violations are data errors") {
  CHECK_THROWS_AS(parse("{not json}\n"), DataError);
  CHECK_THROWS_AS(parse(record("a", 0) + record("a", 0)), DataError);
  CHECK_THROWS_AS(parse(record("a", 0) + record("a", 2)), DataError);
  CHECK_THROWS_AS(parse(R"({"doc_id": "a", "unit_id": 0, "annotations": {}})" "\n"), DataError);
}

TEST_CASE("comment and blank lines are skipped") {
  const auto c = parse("# source=somewhere\n\n" + record("a", 0));
  CHECK(c.unit_count() == 1);
  CHECK_FALSE(c.has_annotations());
}

TEST_CASE("collapse_labels") {
  CHECK(collapse_labels({{DangerType::Natural}, false}) == BinaryLabel{true, false});
  CHECK(collapse_labels({{}, true}) == BinaryLabel{false, true});
  CHECK(collapse_labels({{DangerType::Duel, DangerType::Ambush}, true}) == BinaryLabel{true, true});
  // Collapsing twice, with the binary read back as a singleton or empty set.
  for (const auto& l : std::vector<UnitLabel>{{{DangerType::Other}, false}, {{}, true}, {{}, false}}) {
    const auto once = collapse_labels(l);
    UnitLabel back;
    if (once.danger) back.danger_types.insert(DangerType::Other);
    back.fear = once.fear;
    CHECK(collapse_labels(back) == once);
  }
}

TEST_CASE("all danger type names parse back") {
  for (auto t : kAllDangerTypes) CHECK(parse_danger_type(to_string(t)) == t);
  CHECK_FALSE(try_parse_danger_type("Duell"));
}

TEST_CASE("write and parse round-trip") {
  const auto original = fixtures::corpus();
  std::ostringstream out;
  write_corpus(out, original);
  CHECK(parse(out.str()) == original);
}

TEST_CASE("save_corpus writes comment headers that parsing ignores") {
  const auto dir = testtext::fresh_dir("corpus-save");
  const auto original = fixtures::corpus();
  save_corpus(dir / "c.jsonl", original, {"origin=test"});
  std::ifstream in(dir / "c.jsonl");
  std::string first;
  std::getline(in, first);
  CHECK(first == "# origin=test");
  CHECK(load_corpus(dir / "c.jsonl", CorpusFormat::SegmentedJsonl) == original);
}

TEST_CASE("raw-text directory of three files") {
  const auto dir = testtext::fresh_dir("corpus-raw");
  for (auto name : {"c", "a", "b"}) std::ofstream(dir / (std::string(name) + ".txt")) << "  Text " << name << "\n";
  std::ofstream(dir / "notes.md") << "ignored";
  const auto c = load_corpus(dir, CorpusFormat::RawTextDir);
  REQUIRE(c.documents.size() == 3);
  CHECK(c.documents[0].doc_id == "a");
  CHECK(c.documents[2].units.at(0).text == "Text c");
  for (const auto& d : c.documents)
    for (const auto& u : d.units) CHECK(u.gold.empty());
}

TEST_CASE("missing corpus path is a usage error") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl", CorpusFormat::SegmentedJsonl), UsageError);
}

TEST_CASE("gold resolution policies") {
  ParagraphUnit u{"d", 0, "t", {}};
  CHECK_FALSE(resolve_gold(u, GoldPolicy::Union));
  u.gold["b"] = {{DangerType::Duel}, true};
  u.gold["a"] = {{DangerType::Natural}, false};
  CHECK(resolve_gold(u, GoldPolicy::FirstAnnotator) == UnitLabel{{DangerType::Natural}, false});
  CHECK(resolve_gold(u, GoldPolicy::Union) == UnitLabel{{DangerType::Duel, DangerType::Natural}, true});
  CHECK(resolve_gold(u, GoldPolicy::Intersection) == UnitLabel{{}, false});
}

TEST_CASE("fixture corpus matches its manifest") {
  const auto files = fixtures::files("/tmp/fixture-root");
  const auto it = std::find_if(files.begin(), files.end(), [](const auto& f) { return f.relative_path == "manifest.txt"; });
  REQUIRE(it != files.end());
  const auto c = fixtures::corpus();
  CHECK(it->content.find("units=" + std::to_string(c.unit_count()) + "\n") != std::string::npos);
  CHECK(c.unit_count() == 20);
  CHECK(fixtures::planted_units().size() == 6);
  for (const auto& key : fixtures::planted_units()) CHECK(c.find(key) != nullptr);
}
