#include "dangerlex/detection.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <thread>

#include "dangerlex/error.hpp"
#include "text_io.hpp"

namespace dangerlex {
namespace {

UnitScore score_one(const ParagraphUnit& unit, const WordList& list, const LemmaTable& lemmas, CountMode mode) {
  UnitScore s{unit.doc_id, unit.unit_id, list.name, 0, {}};
  for (auto& lemma : lemmatize_unit(unit.text, lemmas))
    if (list.contains(lemma)) s.matched_words.push_back(std::move(lemma));
  std::sort(s.matched_words.begin(), s.matched_words.end());
  if (mode == CountMode::Types)
    s.matched_words.erase(std::unique(s.matched_words.begin(), s.matched_words.end()), s.matched_words.end());
  s.count = s.matched_words.size();
  return s;
}

}  // namespace

std::string_view to_string(CountMode m) { return m == CountMode::Tokens ? "tokens" : "types"; }
std::string_view to_string(ThresholdScope s) { return s == ThresholdScope::Global ? "global" : "per-doc"; }

std::optional<ThresholdScope> try_parse_scope(std::string_view s) {
  if (s == "global") return ThresholdScope::Global;
  if (s == "per-doc" || s == "per-document") return ThresholdScope::PerDocument;
  return std::nullopt;
}

std::vector<UnitScore> score_units(const Corpus& corpus, const WordList& list, const LemmaTable& lemmas,
                                   CountMode mode, unsigned jobs) {
  std::vector<const ParagraphUnit*> units;
  for (const auto& d : corpus.documents)
    for (const auto& u : d.units) units.push_back(&u);

  std::vector<UnitScore> out(units.size());
  const auto work = [&](std::size_t begin, std::size_t stride) {
    for (auto i = begin; i < units.size(); i += stride) out[i] = score_one(*units[i], list, lemmas, mode);
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, units.size()));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
  }
  return out;
}

double PredictionSet::global_threshold() const {
  if (units.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& u : units) sum += static_cast<double>(u.score.count);
  return sum / static_cast<double>(units.size());
}

std::size_t PredictionSet::positives() const {
  return static_cast<std::size_t>(std::count_if(units.begin(), units.end(), [](const auto& u) { return u.positive; }));
}

const UnitDecision* PredictionSet::find(const UnitKey& key) const {
  for (const auto& u : units)
    if (u.score.doc_id == key.first && u.score.unit_id == key.second) return &u;
  return nullptr;
}

PredictionSet classify(std::vector<UnitScore> scores, ThresholdScope scope) {
  if (scores.empty()) throw DataError("cannot classify an empty set of unit scores");
  PredictionSet pred;
  pred.list_name = scores.front().list_name;
  pred.scope = scope;

  std::map<std::string, std::pair<double, std::size_t>> sums;  // doc -> (sum, n)
  double total = 0.0;
  for (const auto& s : scores) {
    auto& [sum, n] = sums[s.doc_id];
    sum += static_cast<double>(s.count);
    ++n;
    total += static_cast<double>(s.count);
  }
  const double global = total / static_cast<double>(scores.size());

  pred.units.reserve(scores.size());
  for (auto& s : scores) {
    double threshold = global;
    if (scope == ThresholdScope::PerDocument) {
      const auto& [sum, n] = sums[s.doc_id];
      threshold = sum / static_cast<double>(n);
    }
    const bool positive = static_cast<double>(s.count) > threshold;
    pred.units.push_back({std::move(s), threshold, positive});
  }
  return pred;
}

void write_predictions(std::ostream& out, const PredictionSet& pred, const std::vector<std::string>& extra_header) {
  for (const auto& h : extra_header) out << "# " << h << '\n';
  out << "# list=" << pred.list_name << '\n'
      << "# provenance=" << to_string(pred.list_provenance) << '\n'
      << "# scope=" << to_string(pred.scope) << '\n'
      << "# count=" << to_string(pred.count_mode) << '\n';
  out << "doc_id\tunit_id\tcount\tthreshold\tdecision\tmatched_words\n";
  for (const auto& u : pred.units) {
    out << u.score.doc_id << '\t' << u.score.unit_id << '\t' << u.score.count << '\t' << detail::fixed(u.threshold, 6)
        << '\t' << (u.positive ? "positive" : "negative") << '\t';
    for (std::size_t i = 0; i < u.score.matched_words.size(); ++i)
      out << (i ? ";" : "") << u.score.matched_words[i];
    out << '\n';
  }
}

PredictionSet read_predictions(std::istream& in, std::string_view source) {
  PredictionSet pred;
  std::map<std::string, std::string> header;
  std::string line;
  std::size_t line_no = 0;
  bool seen_columns = false;
  const auto fail = [&](const std::string& what) {
    throw DataError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      detail::collect_header(line, header);
      continue;
    }
    if (!seen_columns) {
      if (!line.starts_with("doc_id\t")) fail("expected the column header line");
      seen_columns = true;
      continue;
    }
    const auto f = detail::split(line, '\t');
    if (f.size() != 6) fail("expected 6 tab-separated columns");
    UnitDecision d;
    d.score.doc_id = std::string(f[0]);
    if (!detail::parse_size(f[1], d.score.unit_id)) fail("bad unit_id");
    if (!detail::parse_size(f[2], d.score.count)) fail("bad count");
    try {
      d.threshold = std::stod(std::string(f[3]));
    } catch (const std::exception&) {
      fail("bad threshold");
    }
    if (f[4] == "positive") d.positive = true;
    else if (f[4] != "negative") fail("decision must be 'positive' or 'negative'");
    if (!f[5].empty())
      for (auto w : detail::split(f[5], ';')) d.score.matched_words.emplace_back(w);
    pred.units.push_back(std::move(d));
  }
  if (!seen_columns) throw DataError(std::string(source) + ": no prediction table found");

  pred.list_name = header.contains("list") ? header["list"] : "";
  for (auto& u : pred.units) u.score.list_name = pred.list_name;
  if (auto p = try_parse_provenance(header["provenance"])) pred.list_provenance = *p;
  if (auto s = try_parse_scope(header["scope"])) pred.scope = *s;
  if (header["count"] == "types") pred.count_mode = CountMode::Types;
  return pred;
}

}  // namespace dangerlex
