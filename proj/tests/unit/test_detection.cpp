#include <doctest.h>

#include <random>
#include <sstream>

#include "dangerlex/detection.hpp"
#include "dangerlex/error.hpp"
#include "oracles.hpp"

using namespace dangerlex;

namespace {

Corpus corpus_of(std::vector<std::string> texts, std::string doc = "d") {
  Corpus c;
  c.documents.push_back({doc, doc, "", {}});
  for (auto& t : texts) c.documents[0].units.push_back({doc, c.documents[0].units.size(), std::move(t), {}});
  return c;
}

std::vector<UnitScore> counts_of(std::vector<std::size_t> counts) {
  std::vector<UnitScore> out;
  for (std::size_t i = 0; i < counts.size(); ++i) out.push_back({"d", i, "L", counts[i], {}});
  return out;
}

std::vector<bool> decisions(const PredictionSet& p) {
  std::vector<bool> out;
  for (const auto& u : p.units) out.push_back(u.positive);
  return out;
}

WordList list_of(std::set<std::string> words) { return {"L", Provenance::Base, std::move(words)}; }

}  // namespace

TEST_CASE("repeated words count with multiplicity") {
  const auto scores = score_units(corpus_of({"Der Sturm, der Sturm!"}), list_of({"sturm"}), {});
  REQUIRE(scores.size() == 1);
  CHECK(scores[0].count == 2);
  CHECK(scores[0].matched_words == std::vector<std::string>{"sturm", "sturm"});
  const auto types = score_units(corpus_of({"Der Sturm, der Sturm!"}), list_of({"sturm"}), {}, CountMode::Types);
  CHECK(types[0].count == 1);
}

TEST_CASE("no hits and empty lists give zero counts") {
  const auto c = corpus_of({"Ein ruhiger Tag.", "Sturm"});
  CHECK(score_units(c, list_of({"sturm"}), {})[0].count == 0);
  for (const auto& s : score_units(c, list_of({}), {})) CHECK(s.count == 0);
}

TEST_CASE("lemmas are matched, not surface forms") {
  LemmaTable lemmas;
  lemmas.insert("stürme", "sturm");
  const auto s = score_units(corpus_of({"Die Stürme kamen."}), list_of({"sturm"}), lemmas);
  CHECK(s[0].count == 1);
  CHECK(s[0].matched_words == std::vector<std::string>{"sturm"});
}

TEST_CASE("strict greater-than-mean threshold") {
  CHECK(decisions(classify(counts_of({0, 0, 3}))) == std::vector<bool>{false, false, true});
  const auto equal = classify(counts_of({2, 2, 2}));
  CHECK(equal.positives() == 0);
  CHECK(equal.global_threshold() == doctest::Approx(2.0));
  const auto four = classify(counts_of({1, 2, 3, 4}));
  CHECK(decisions(four) == std::vector<bool>{false, false, true, true});
  CHECK(four.units[0].threshold == doctest::Approx(2.5));
  CHECK_THROWS_AS(classify({}), DataError);
}

TEST_CASE("per-document scope uses each document's mean") {
  auto scores = counts_of({0, 4});
  scores.push_back({"e", 0, "L", 10, {}});
  scores.push_back({"e", 1, "L", 12, {}});
  const auto global = classify(scores, ThresholdScope::Global);
  CHECK(decisions(global) == std::vector<bool>{false, false, true, true});
  const auto local = classify(scores, ThresholdScope::PerDocument);
  CHECK(decisions(local) == std::vector<bool>{false, true, false, true});
  CHECK(local.units[2].threshold == doctest::Approx(11.0));
}

TEST_CASE("duplicating the corpus leaves every decision unchanged") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> c(0, 9);
  for (int run = 0; run < 100; ++run) {
    std::vector<std::size_t> counts(1 + c(rng));
    for (auto& x : counts) x = c(rng);
    auto doubled = counts;
    doubled.insert(doubled.end(), counts.begin(), counts.end());
    const auto once = decisions(classify(counts_of(counts)));
    const auto twice = decisions(classify(counts_of(doubled)));
    for (std::size_t i = 0; i < counts.size(); ++i) {
      CHECK(once[i] == twice[i]);
      CHECK(once[i] == twice[i + counts.size()]);
    }
  }
}

TEST_CASE("the minimum-count unit is never positive") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> c(0, 9);
  for (int run = 0; run < 100; ++run) {
    std::vector<std::size_t> counts(1 + c(rng));
    for (auto& x : counts) x = c(rng);
    const auto p = classify(counts_of(counts));
    const auto min = std::min_element(counts.begin(), counts.end()) - counts.begin();
    CHECK_FALSE(p.units[static_cast<std::size_t>(min)].positive);
  }
}

TEST_CASE("adding a word to the list never lowers a count") {
  std::mt19937_64 rng(13);
  for (int run = 0; run < 100; ++run) {
    const auto mc = oracle::random_mini_corpus(rng);
    LemmaTable lemmas;
    for (const auto& [k, v] : mc.lemmas) lemmas.insert(k, v);
    auto bigger = mc.list;
    bigger.insert("wald");
    const auto a = score_units(mc.corpus, list_of(mc.list), lemmas);
    const auto b = score_units(mc.corpus, list_of(bigger), lemmas);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].count <= b[i].count);
  }
}

TEST_CASE("scoring agrees with a naive rescan; worker count does not matter") {
  std::mt19937_64 rng(14);
  for (int run = 0; run < 100; ++run) {
    const auto mc = oracle::random_mini_corpus(rng);
    LemmaTable lemmas;
    for (const auto& [k, v] : mc.lemmas) lemmas.insert(k, v);
    const bool types = run % 2 == 1;
    const auto mode = types ? CountMode::Types : CountMode::Tokens;
    const auto expected = oracle::mean_threshold_decisions(mc.corpus, mc.list, mc.lemmas, types);
    const auto scores = score_units(mc.corpus, list_of(mc.list), lemmas, mode);
    const auto p = classify(scores);
    REQUIRE(p.units.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(p.units[i].score.count == expected[i].count);
      CHECK(p.units[i].positive == expected[i].positive);
      CHECK(p.units[i].score.matched_words.size() == p.units[i].score.count);
      for (const auto& w : p.units[i].score.matched_words) CHECK(mc.list.count(w));
    }
    CHECK(score_units(mc.corpus, list_of(mc.list), lemmas, mode, 4) == scores);
  }
}

TEST_CASE("predictions TSV round-trip") {
  auto scores = counts_of({0, 3, 1});
  scores[1].matched_words = {"blut", "blut", "messer"};
  auto p = classify(scores, ThresholdScope::PerDocument);
  p.list_name = "Danger";
  p.list_provenance = Provenance::Embedding;
  p.count_mode = CountMode::Types;
  std::ostringstream out;
  write_predictions(out, p);
  std::istringstream in(out.str());
  const auto back = read_predictions(in);
  CHECK(back.list_name == "Danger");
  CHECK(back.list_provenance == Provenance::Embedding);
  CHECK(back.scope == ThresholdScope::PerDocument);
  CHECK(back.count_mode == CountMode::Types);
  REQUIRE(back.units.size() == 3);
  CHECK(back.units[1].score.matched_words == scores[1].matched_words);
  CHECK(back.units[1].positive);
  CHECK(back.units[1].threshold == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("malformed predictions are data errors") {
  std::istringstream in("doc_id\tunit_id\tcount\tthreshold\tdecision\tmatched_words\nd\tx\t1\t0.5\tpositive\t\n");
  CHECK_THROWS_AS(read_predictions(in, "p.tsv"), DataError);
}
