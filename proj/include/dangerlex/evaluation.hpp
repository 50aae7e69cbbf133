#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dangerlex/corpus.hpp"
#include "dangerlex/detection.hpp"
#include "dangerlex/error.hpp"

namespace dangerlex {

enum class Task { Danger, Fear };

std::string_view to_string(Task t);
std::optional<Task> try_parse_task(std::string_view s);

using GoldLabels = std::map<UnitKey, bool>;

/// Binary gold labels for every annotated unit, resolved with `policy`.
/// Units without annotations are left out.
GoldLabels gold_binary(const Corpus& corpus, Task task, GoldPolicy policy = GoldPolicy::FirstAnnotator);

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::size_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Throws DataError listing every predicted unit that lacks a gold label.
ConfusionCounts confusion(const PredictionSet& pred, const GoldLabels& gold);

/// Percentages in [0, 100].
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Harmonic mean; 0 when p + r == 0. Works on any common scale.
double f1_score(double precision, double recall);
Prf prf(const ConfusionCounts& c);

struct EvalReport {
  Task task = Task::Danger;
  std::string list_name;
  Provenance list_provenance = Provenance::Base;
  GoldPolicy policy = GoldPolicy::FirstAnnotator;
  ConfusionCounts counts;
  Prf scores;
};

EvalReport evaluate(const PredictionSet& pred, const Corpus& corpus, Task task,
                    GoldPolicy policy = GoldPolicy::FirstAnnotator);

/// Machine-readable: one header row and one data row, scores to one decimal.
void write_eval_tsv(std::ostream& out, const std::vector<EvalReport>& reports);
/// Aligned table in the layout of the published results table.
void write_eval_table(std::ostream& out, const std::vector<EvalReport>& reports);

// ---------------------------------------------------------------------------
// Agreement

struct KappaResult {
  double kappa = 0.0;
  double observed = 0.0;  // p_o
  double expected = 0.0;  // p_e
  std::size_t n = 0;
  /// p_e == 1: both raters used one and the same label throughout. kappa is
  /// then 1 if p_o == 1 and 0 otherwise.
  bool degenerate = false;
};

/// Cohen's kappa for two equally long label vectors drawn from `label_space`.
template <typename Label>
KappaResult cohen_kappa(std::span<const Label> a, std::span<const Label> b, const std::set<Label>& label_space) {
  if (a.size() != b.size())
    throw DataError("cohen_kappa: label vectors differ in length (" + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  if (a.empty()) throw DataError("cohen_kappa: label vectors are empty");
  std::map<Label, std::size_t> ca, cb;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!label_space.contains(a[i]) || !label_space.contains(b[i]))
      throw DataError("cohen_kappa: label outside the label space at position " + std::to_string(i));
    ++ca[a[i]];
    ++cb[b[i]];
    if (a[i] == b[i]) ++agree;
  }
  const double n = static_cast<double>(a.size());
  KappaResult r;
  r.n = a.size();
  r.observed = static_cast<double>(agree) / n;
  for (const auto& [label, count] : ca)
    if (auto it = cb.find(label); it != cb.end())
      r.expected += (static_cast<double>(count) / n) * (static_cast<double>(it->second) / n);
  // p_e reaches 1 only when both raters put every item in the same single class.
  if (ca.size() == 1 && cb.size() == 1 && ca.begin()->first == cb.begin()->first) {
    r.degenerate = true;
    r.expected = 1.0;
    r.kappa = r.observed == 1.0 ? 1.0 : 0.0;
    return r;
  }
  r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  return r;
}

/// Label space inferred from the two vectors.
template <typename Label>
KappaResult cohen_kappa(std::span<const Label> a, std::span<const Label> b) {
  std::set<Label> space(a.begin(), a.end());
  space.insert(b.begin(), b.end());
  return cohen_kappa(a, b, space);
}

enum class AgreementScheme { Typed, AnyDanger, Fear };

std::string_view to_string(AgreementScheme s);
std::optional<AgreementScheme> try_parse_scheme(std::string_view s);

/// Landis & Koch band for a kappa value.
std::string_view landis_koch_band(double kappa);

struct TextAgreement {
  std::string doc_id;
  std::string annotator_a, annotator_b;
  KappaResult kappa;
};

struct AgreementReport {
  AgreementScheme scheme = AgreementScheme::AnyDanger;
  std::vector<TextAgreement> texts;  // one entry per annotator pair per text
  double average = 0.0;              // unweighted mean over texts
  std::string band;
  bool any_degenerate = false;
};

/// Kappa per doubly-annotated text over the units both annotators labeled.
/// Texts with more than two annotators contribute the mean over all pairs.
/// Throws DataError when no text has two annotators.
AgreementReport agreement_suite(const Corpus& corpus, AgreementScheme scheme);

void write_agreement_tsv(std::ostream& out, const std::vector<AgreementReport>& reports);

}  // namespace dangerlex
