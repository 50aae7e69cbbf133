#include <doctest.h>

#include <random>
#include <sstream>

#include "dangerlex/error.hpp"
#include "dangerlex/evaluation.hpp"
#include "dangerlex/fixtures.hpp"
#include "oracles.hpp"

using namespace dangerlex;

namespace {

PredictionSet predictions(std::vector<bool> positive) {
  PredictionSet p;
  p.list_name = "Danger";
  for (std::size_t i = 0; i < positive.size(); ++i)
    p.units.push_back({{"d", i, "Danger", positive[i] ? 1u : 0u, {}}, 0.5, positive[i]});
  return p;
}

GoldLabels gold(std::vector<bool> positive) {
  GoldLabels g;
  for (std::size_t i = 0; i < positive.size(); ++i) g[{"d", i}] = positive[i];
  return g;
}

template <typename L>
KappaResult kappa(const std::vector<L>& a, const std::vector<L>& b) {
  return cohen_kappa<L>(std::span<const L>(a), std::span<const L>(b));
}

Corpus two_annotator_corpus(const std::vector<std::pair<UnitLabel, UnitLabel>>& labels) {
  Corpus c;
  c.documents.push_back({"t", "t", "", {}});
  for (const auto& [a, b] : labels) {
    ParagraphUnit u{"t", c.documents[0].units.size(), "x", {}};
    u.gold["a"] = a;
    u.gold["b"] = b;
    c.documents[0].units.push_back(u);
  }
  return c;
}

}  // namespace

TEST_CASE("confusion counts") {
  const auto c = confusion(predictions({true, true, false, false}), gold({true, false, false, false}));
  CHECK(c == ConfusionCounts{1, 1, 0, 2});
  CHECK(c.total() == 4);
  CHECK(confusion(predictions({true, false}), gold({true, false})) == ConfusionCounts{1, 0, 0, 1});
  CHECK(confusion(predictions({false, false, false}), gold({true, true, false})) == ConfusionCounts{0, 0, 2, 1});
}

TEST_CASE("a prediction without gold is an error naming the unit") {
  try {
    confusion(predictions({true, true}), gold({true}));
    FAIL("expected a DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("d#1") != std::string::npos);
  }
}

TEST_CASE("precision, recall and F1 in percent") {
  const auto s = prf({1, 1, 1, 1});
  CHECK(s.precision == doctest::Approx(50.0));
  CHECK(s.recall == doctest::Approx(50.0));
  CHECK(s.f1 == doctest::Approx(50.0));
  const auto zero = prf({0, 3, 2, 5});
  CHECK(zero.precision == 0.0);
  CHECK(zero.recall == 0.0);
  CHECK(zero.f1 == 0.0);
  CHECK(prf({}).f1 == 0.0);
  CHECK(f1_score(40.8, 55.7) == doctest::Approx(47.1).epsilon(0.001));
  CHECK(f1_score(0.0, 0.0) == 0.0);
}

TEST_CASE("F1 lies between P and R and within [0, 100]") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> n(0, 40);
  for (int run = 0; run < 500; ++run) {
    const ConfusionCounts c{n(rng), n(rng), n(rng), n(rng)};
    const auto s = prf(c);
    for (double v : {s.precision, s.recall, s.f1}) CHECK((v >= 0.0 && v <= 100.0));
    if (s.precision > 0 && s.recall > 0) {
      CHECK(s.f1 <= std::max(s.precision, s.recall) + 1e-9);
      CHECK(s.f1 >= std::min(s.precision, s.recall) - 1e-9);
    }
  }
}

TEST_CASE("kappa on the worked example") {
  const auto r = kappa<int>({1, 1, 0, 0}, {1, 0, 0, 0});
  CHECK(r.observed == doctest::Approx(0.75));
  CHECK(r.expected == doctest::Approx(0.5));
  CHECK(r.kappa == doctest::Approx(0.5));
  CHECK(r.kappa == doctest::Approx(oracle::kappa<int>({1, 1, 0, 0}, {1, 0, 0, 0})));
}

TEST_CASE("kappa: perfect agreement, degenerate case, errors") {
  CHECK(kappa<int>({0, 1, 2, 1}, {0, 1, 2, 1}).kappa == 1.0);
  const auto deg = kappa<int>({3, 3, 3}, {3, 3, 3});
  CHECK(deg.degenerate);
  CHECK(deg.kappa == 1.0);
  CHECK_FALSE(kappa<int>({1, 1}, {0, 0}).degenerate);
  CHECK_THROWS_AS(kappa<int>({1, 0}, {1}), DataError);
  CHECK_THROWS_AS(kappa<int>({}, {}), DataError);
  const std::vector<int> a{1, 2}, b{1, 3};
  CHECK_THROWS_AS(cohen_kappa<int>(a, b, std::set<int>{1, 2}), DataError);
}

TEST_CASE("kappa is symmetric and invariant under relabeling") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> lab(0, 3);
  const std::vector<std::string> names{"rot", "grün", "blau", "gelb"};
  for (int run = 0; run < 200; ++run) {
    std::vector<int> a(30), b(30);
    for (auto& x : a) x = lab(rng);
    for (auto& x : b) x = lab(rng) < 2 ? lab(rng) : x;
    std::vector<std::string> ra, rb;
    for (auto x : a) ra.push_back(names[static_cast<std::size_t>(3 - x)]);
    for (auto x : b) rb.push_back(names[static_cast<std::size_t>(3 - x)]);
    const double k = kappa(a, b).kappa;
    CHECK(std::abs(k - kappa(b, a).kappa) < 1e-12);
    CHECK(std::abs(k - kappa(ra, rb).kappa) < 1e-12);
    CHECK((k >= -1.0 && k <= 1.0));
  }
}

TEST_CASE("Landis-Koch bands") {
  CHECK(landis_koch_band(-0.1) == "poor");
  CHECK(landis_koch_band(0.1) == "slight");
  CHECK(landis_koch_band(0.35) == "fair");
  CHECK(landis_koch_band(0.55) == "moderate");
  CHECK(landis_koch_band(0.61) == "substantial");
  CHECK(landis_koch_band(0.9) == "almost perfect");
}

TEST_CASE("typed agreement is at most any-danger agreement when only types differ") {
  using enum DangerType;
  const auto c = two_annotator_corpus({{{{Duel}, false}, {{Ambush}, false}},
                                       {{{Natural}, true}, {{Supernatural}, true}},
                                       {{{}, false}, {{}, false}},
                                       {{{}, true}, {{}, false}},
                                       {{{Abduction}, false}, {{Other}, false}}});
  const auto typed = agreement_suite(c, AgreementScheme::Typed);
  const auto any = agreement_suite(c, AgreementScheme::AnyDanger);
  CHECK(typed.average <= any.average);
  CHECK(any.average == doctest::Approx(1.0));
  REQUIRE(typed.texts.size() == 1);
  CHECK(typed.texts[0].kappa.n == 5);
}

TEST_CASE("identical annotators agree perfectly under every scheme") {
  for (const auto& doc : fixtures::corpus().documents) {
    std::vector<std::pair<UnitLabel, UnitLabel>> labels;
    for (const auto& u : doc.units) labels.push_back({u.gold.begin()->second, u.gold.begin()->second});
    const auto c = two_annotator_corpus(labels);
    for (auto s : {AgreementScheme::Typed, AgreementScheme::AnyDanger, AgreementScheme::Fear})
      CHECK(agreement_suite(c, s).average == 1.0);
  }
}

TEST_CASE("agreement needs a doubly-annotated text") {
  Corpus c;
  c.documents.push_back({"t", "t", "", {{"t", 0, "x", {{"a", UnitLabel{}}}}}});
  CHECK_THROWS_AS(agreement_suite(c, AgreementScheme::Fear), DataError);
}

TEST_CASE("average is the unweighted mean over texts") {
  auto c = fixtures::corpus();
  const auto r = agreement_suite(c, AgreementScheme::AnyDanger);
  REQUIRE(r.texts.size() == 2);
  CHECK(r.average == doctest::Approx((r.texts[0].kappa.kappa + r.texts[1].kappa.kappa) / 2.0));
  CHECK(r.band == landis_koch_band(r.average));
}

TEST_CASE("gold labels follow the resolution policy") {
  const auto c = fixtures::corpus();
  const auto first = gold_binary(c, Task::Danger, GoldPolicy::FirstAnnotator);
  const auto uni = gold_binary(c, Task::Danger, GoldPolicy::Union);
  const auto inter = gold_binary(c, Task::Danger, GoldPolicy::Intersection);
  CHECK(first.size() == c.unit_count());
  for (const auto& [key, value] : first) {
    CHECK((!inter.at(key) || value));
    CHECK((!value || uni.at(key)));
  }
}

TEST_CASE("evaluation report formats") {
  const auto c = fixtures::corpus();
  PredictionSet p;
  p.list_name = "Danger";
  for (const auto& d : c.documents)
    for (const auto& u : d.units) p.units.push_back({{d.doc_id, u.unit_id, "Danger", 0, {}}, 0.0, u.unit_id % 2 == 0});
  const std::vector<EvalReport> reports{evaluate(p, c, Task::Danger)};
  CHECK(reports[0].counts.total() == 20);
  std::ostringstream tsv, table;
  write_eval_tsv(tsv, reports);
  write_eval_table(table, reports);
  CHECK(tsv.str().find("danger\t") != std::string::npos);
  CHECK(table.str().find("first-annotator") != std::string::npos);
}
