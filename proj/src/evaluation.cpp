#include "dangerlex/evaluation.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "text_io.hpp"

namespace dangerlex {
namespace {

std::string typed_key(const UnitLabel& label) {
  if (label.danger_types.empty()) return "none";
  std::string key;
  for (auto t : label.danger_types) {
    if (!key.empty()) key += '+';
    key += to_string(t);
  }
  return key;
}

std::string label_for(const UnitLabel& label, AgreementScheme scheme) {
  switch (scheme) {
    case AgreementScheme::Typed: return typed_key(label);
    case AgreementScheme::AnyDanger: return collapse_labels(label).danger ? "danger" : "none";
    case AgreementScheme::Fear: return label.fear ? "fear" : "none";
  }
  return {};
}

}  // namespace

std::string_view to_string(Task t) { return t == Task::Danger ? "danger" : "fear"; }

std::optional<Task> try_parse_task(std::string_view s) {
  if (s == "danger") return Task::Danger;
  if (s == "fear") return Task::Fear;
  return std::nullopt;
}

GoldLabels gold_binary(const Corpus& corpus, Task task, GoldPolicy policy) {
  GoldLabels gold;
  for (const auto& doc : corpus.documents) {
    for (const auto& unit : doc.units) {
      const auto label = resolve_gold(unit, policy);
      if (!label) continue;
      const auto bin = collapse_labels(*label);
      gold.emplace(UnitKey{unit.doc_id, unit.unit_id}, task == Task::Danger ? bin.danger : bin.fear);
    }
  }
  return gold;
}

ConfusionCounts confusion(const PredictionSet& pred, const GoldLabels& gold) {
  ConfusionCounts c;
  std::vector<std::string> missing;
  for (const auto& u : pred.units) {
    const auto it = gold.find(UnitKey{u.score.doc_id, u.score.unit_id});
    if (it == gold.end()) {
      missing.push_back(u.score.doc_id + "#" + std::to_string(u.score.unit_id));
      continue;
    }
    const bool g = it->second;
    if (u.positive && g) ++c.tp;
    else if (u.positive) ++c.fp;
    else if (g) ++c.fn;
    else ++c.tn;
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << missing.size() << " predicted unit(s) have no gold label:";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) os << ' ' << missing[i];
    if (missing.size() > 20) os << " ...";
    throw DataError(os.str());
  }
  return c;
}

double f1_score(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

Prf prf(const ConfusionCounts& c) {
  Prf r;
  const auto pd = c.tp + c.fp;
  const auto rd = c.tp + c.fn;
  r.precision = pd ? 100.0 * static_cast<double>(c.tp) / static_cast<double>(pd) : 0.0;
  r.recall = rd ? 100.0 * static_cast<double>(c.tp) / static_cast<double>(rd) : 0.0;
  r.f1 = f1_score(r.precision, r.recall);
  return r;
}

EvalReport evaluate(const PredictionSet& pred, const Corpus& corpus, Task task, GoldPolicy policy) {
  EvalReport r;
  r.task = task;
  r.list_name = pred.list_name;
  r.list_provenance = pred.list_provenance;
  r.policy = policy;
  r.counts = confusion(pred, gold_binary(corpus, task, policy));
  r.scores = prf(r.counts);
  return r;
}

void write_eval_tsv(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << "task\tlist\tprovenance\tgold_policy\ttp\tfp\tfn\ttn\tprecision\trecall\tf1\n";
  for (const auto& r : reports) {
    out << to_string(r.task) << '\t' << r.list_name << '\t' << to_string(r.list_provenance) << '\t'
        << to_string(r.policy) << '\t' << r.counts.tp << '\t' << r.counts.fp << '\t' << r.counts.fn << '\t'
        << r.counts.tn << '\t' << detail::fixed(r.scores.precision, 1) << '\t' << detail::fixed(r.scores.recall, 1)
        << '\t' << detail::fixed(r.scores.f1, 1) << '\n';
  }
}

void write_eval_table(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << std::left << std::setw(8) << "Task" << std::setw(12) << "Word list" << std::setw(18) << "Gold policy"
      << std::right << std::setw(10) << "Precision" << std::setw(8) << "Recall" << std::setw(7) << "F1"
      << std::setw(6) << "TP" << std::setw(6) << "FP" << std::setw(6) << "FN" << std::setw(6) << "TN" << '\n';
  for (const auto& r : reports) {
    out << std::left << std::setw(8) << to_string(r.task) << std::setw(12) << to_string(r.list_provenance)
        << std::setw(18) << to_string(r.policy) << std::right << std::setw(10) << detail::fixed(r.scores.precision, 1)
        << std::setw(8) << detail::fixed(r.scores.recall, 1) << std::setw(7) << detail::fixed(r.scores.f1, 1)
        << std::setw(6) << r.counts.tp << std::setw(6) << r.counts.fp << std::setw(6) << r.counts.fn << std::setw(6)
        << r.counts.tn << '\n';
  }
}

std::string_view to_string(AgreementScheme s) {
  switch (s) {
    case AgreementScheme::Typed: return "typed";
    case AgreementScheme::AnyDanger: return "any";
    case AgreementScheme::Fear: return "fear";
  }
  return "?";
}

std::optional<AgreementScheme> try_parse_scheme(std::string_view s) {
  if (s == "typed") return AgreementScheme::Typed;
  if (s == "any" || s == "any-danger") return AgreementScheme::AnyDanger;
  if (s == "fear") return AgreementScheme::Fear;
  return std::nullopt;
}

std::string_view landis_koch_band(double kappa) {
  if (kappa < 0.0) return "poor";
  if (kappa <= 0.20) return "slight";
  if (kappa <= 0.40) return "fair";
  if (kappa <= 0.60) return "moderate";
  if (kappa <= 0.80) return "substantial";
  return "almost perfect";
}

AgreementReport agreement_suite(const Corpus& corpus, AgreementScheme scheme) {
  AgreementReport report;
  report.scheme = scheme;
  std::vector<double> per_text;
  for (const auto& doc : corpus.documents) {
    std::set<std::string> annotators;
    for (const auto& u : doc.units)
      for (const auto& [a, _] : u.gold) annotators.insert(a);
    if (annotators.size() < 2) continue;

    const std::vector<std::string> ids(annotators.begin(), annotators.end());
    std::vector<double> pair_kappas;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        std::vector<std::string> a, b;
        for (const auto& u : doc.units) {
          const auto la = u.gold.find(ids[i]);
          const auto lb = u.gold.find(ids[j]);
          if (la == u.gold.end() || lb == u.gold.end()) continue;
          a.push_back(label_for(la->second, scheme));
          b.push_back(label_for(lb->second, scheme));
        }
        if (a.empty()) continue;
        const auto k = cohen_kappa<std::string>(a, b);
        report.any_degenerate = report.any_degenerate || k.degenerate;
        pair_kappas.push_back(k.kappa);
        report.texts.push_back({doc.doc_id, ids[i], ids[j], k});
      }
    }
    if (!pair_kappas.empty())
      per_text.push_back(std::accumulate(pair_kappas.begin(), pair_kappas.end(), 0.0) /
                         static_cast<double>(pair_kappas.size()));
  }
  if (per_text.empty()) throw DataError("agreement needs at least one text labeled by two annotators");
  report.average = std::accumulate(per_text.begin(), per_text.end(), 0.0) / static_cast<double>(per_text.size());
  report.band = std::string(landis_koch_band(report.average));
  return report;
}

void write_agreement_tsv(std::ostream& out, const std::vector<AgreementReport>& reports) {
  out << "scheme\tdoc_id\tannotator_a\tannotator_b\tunits\tp_o\tp_e\tkappa\tdegenerate\tband\n";
  for (const auto& r : reports) {
    for (const auto& t : r.texts) {
      out << to_string(r.scheme) << '\t' << t.doc_id << '\t' << t.annotator_a << '\t' << t.annotator_b << '\t'
          << t.kappa.n << '\t' << detail::fixed(t.kappa.observed, 4) << '\t' << detail::fixed(t.kappa.expected, 4)
          << '\t' << detail::fixed(t.kappa.kappa, 4) << '\t' << (t.kappa.degenerate ? "yes" : "no") << '\t'
          << landis_koch_band(t.kappa.kappa) << '\n';
    }
    out << to_string(r.scheme) << "\t*average*\t\t\t\t\t\t" << detail::fixed(r.average, 4) << '\t'
        << (r.any_degenerate ? "yes" : "no") << '\t' << r.band << '\n';
  }
}

}  // namespace dangerlex
