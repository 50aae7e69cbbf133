#include "dangerlex/pipeline.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "dangerlex/lexicon.hpp"
#include "text_io.hpp"

namespace dangerlex {
namespace {

namespace fs = std::filesystem;

template <typename F>
auto stage(std::string_view name, F&& f) {
  try {
    return std::forward<F>(f)();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(std::string(name), e);
  } catch (const std::exception& e) {
    throw StageError(std::string(name), DataError(e.what()));
  }
}

class OutputWriter {
 public:
  OutputWriter(fs::path dir, std::vector<std::string> header) : dir_(std::move(dir)), header_(std::move(header)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw UsageError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  template <typename F>
  void write(const fs::path& rel, F&& body, const std::vector<std::string>& extra = {}) {
    const auto path = dir_ / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    for (const auto& h : header_) out << "# " << h << '\n';
    for (const auto& h : extra) out << "# " << h << '\n';
    body(out);
    if (!out) throw DataError("write failed: " + path.string());
    written_.push_back(path);
  }

  const std::vector<fs::path>& written() const { return written_; }

 private:
  fs::path dir_;
  std::vector<std::string> header_;
  std::vector<fs::path> written_;
};

std::string quoted(const fs::path& p) { return p.generic_string(); }

WordList expand(const WordList& base, const PipelineConfig& cfg, const LemmaTable& lemmas,
                const EmbeddingStore* store, KgClient* kg) {
  switch (cfg.expansion) {
    case ExpansionMethod::None: return base;
    case ExpansionMethod::Embeddings: return expand_with_embeddings(base, *store, lemmas, cfg.neighbors);
    case ExpansionMethod::KnowledgeGraph: return expand_with_kg(base, *kg);
  }
  return base;
}

}  // namespace

std::string_view to_string(ExpansionMethod m) {
  switch (m) {
    case ExpansionMethod::None: return "none";
    case ExpansionMethod::Embeddings: return "embeddings";
    case ExpansionMethod::KnowledgeGraph: return "kg";
  }
  return "?";
}

std::optional<ExpansionMethod> try_parse_expansion(std::string_view s) {
  if (s == "none") return ExpansionMethod::None;
  if (s == "embeddings" || s == "embedding") return ExpansionMethod::Embeddings;
  if (s == "kg" || s == "conceptnet") return ExpansionMethod::KnowledgeGraph;
  return std::nullopt;
}

std::vector<fs::path> PipelineConfig::missing_paths() const {
  std::vector<fs::path> missing;
  const auto check = [&](const std::optional<fs::path>& p) {
    if (p && !fs::exists(*p)) missing.push_back(*p);
  };
  check(corpus);
  check(input_dir);
  for (const auto& l : danger_lists) check(l);
  check(fear_list);
  if (!lemmas.empty()) check(std::optional<fs::path>(lemmas));
  check(stopwords);
  if (expansion == ExpansionMethod::Embeddings) check(vectors);
  if (expansion == ExpansionMethod::KnowledgeGraph) check(dump);
  return missing;
}

void PipelineConfig::validate() const {
  std::vector<std::string> problems;
  if (corpus.has_value() == input_dir.has_value()) problems.push_back("give exactly one of --corpus or --input");
  if (danger_lists.empty() && !fear_list) problems.push_back("no word list given (--danger-list / --fear-list)");
  if (lemmas.empty()) problems.push_back("no lemma table given (--lemmas)");
  if (expansion == ExpansionMethod::Embeddings && !vectors) problems.push_back("--expand embeddings needs --vectors");
  if (expansion == ExpansionMethod::KnowledgeGraph && !dump && !api_url && !cache_dir)
    problems.push_back("--expand kg needs --dump, --api or --cache");
  if (neighbors < 1) problems.push_back("--top-k must be >= 1");
  try {
    segmenter.validate();
  } catch (const UsageError& e) {
    problems.push_back(e.what());
  }
  for (const auto& p : missing_paths()) problems.push_back("missing file: " + p.string());
  if (!problems.empty()) {
    std::string msg = "invalid pipeline configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw UsageError(msg);
  }
}

std::string PipelineConfig::canonical() const {
  std::ostringstream os;
  const auto opt = [](const auto& v) -> std::string {
    if (!v) return "";
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, fs::path>) return v->generic_string();
    else return *v;
  };
  os << "corpus=" << opt(corpus) << '\n' << "input=" << opt(input_dir) << '\n';
  for (const auto& l : danger_lists) os << "danger-list=" << quoted(l) << '\n';
  os << "fear-list=" << opt(fear_list) << '\n'
     << "lemmas=" << quoted(lemmas) << '\n'
     << "stopwords=" << opt(stopwords) << '\n'
     << "expand=" << to_string(expansion) << '\n'
     << "vectors=" << opt(vectors) << '\n'
     << "dump=" << opt(dump) << '\n'
     << "api=" << opt(api_url) << '\n'
     << "cache=" << opt(cache_dir) << '\n'
     << "top-k=" << neighbors << '\n'
     << "w=" << segmenter.pseudosentence_size << '\n'
     << "k=" << segmenter.block_size << '\n'
     << "smoothing-width=" << segmenter.smoothing_width << '\n'
     << "smoothing-rounds=" << segmenter.smoothing_rounds << '\n'
     << "cutoff=" << to_string(segmenter.cutoff) << '\n'
     << "scope=" << to_string(scope) << '\n'
     << "count=" << to_string(count_mode) << '\n'
     << "policy=" << to_string(policy) << '\n'
     << "top=" << top_n << '\n';
  return os.str();
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::string PipelineConfig::fingerprint() const { return fnv1a_hex(canonical()); }

std::vector<std::string> provenance_header(std::string_view fingerprint) {
  return {"dangerlex " + std::string(kVersion), "config=" + std::string(fingerprint)};
}

StageError::StageError(std::string stage, const Error& cause)
    : Error("[" + stage + "] " + cause.what()), stage_(std::move(stage)), code_(cause.exit_code()) {}

std::unique_ptr<KgClient> make_kg_client(const std::optional<fs::path>& dump, const std::optional<std::string>& api_url,
                                         const std::optional<fs::path>& cache_dir, unsigned api_interval_ms) {
  std::unique_ptr<KgSource> source;
  if (dump) {
    source = std::make_unique<DumpKgSource>(DumpKgSource::load(*dump));
  } else if (api_url) {
    source = std::make_unique<HttpKgSource>(*api_url, "de", std::chrono::milliseconds(api_interval_ms));
  }
  return std::make_unique<KgClient>(std::move(source), cache_dir);
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  stage("config", [&] { cfg.validate(); });
  const auto fingerprint = cfg.fingerprint();
  OutputWriter out(cfg.out_dir, provenance_header(fingerprint));
  PipelineResult result;

  // segment / load
  auto corpus = stage("segment", [&] {
    if (cfg.corpus) return load_corpus(*cfg.corpus, CorpusFormat::SegmentedJsonl);
    auto seg = cfg.segmenter;
    if (cfg.stopwords) seg.stopwords = load_stopwords(*cfg.stopwords);
    auto c = load_corpus(*cfg.input_dir, CorpusFormat::RawTextDir);
    segment_corpus(c, seg);
    out.write("corpus.segmented.jsonl", [&](std::ostream& os) { write_corpus(os, c); },
              {"segmentation=per-document w=" + std::to_string(seg.pseudosentence_size) +
               " k=" + std::to_string(seg.block_size) + " cutoff=" + std::string(to_string(seg.cutoff))});
    return c;
  });
  if (corpus.unit_count() == 0) throw StageError("segment", DataError("corpus contains no paragraphs"));

  // expand
  const auto lemmas = stage("load", [&] { return LemmaTable::load(cfg.lemmas); });
  struct Target {
    Task task;
    WordList list;
  };
  std::vector<Target> targets = stage("expand", [&] {
    std::optional<EmbeddingStore> store;
    std::unique_ptr<KgClient> kg;
    if (cfg.expansion == ExpansionMethod::Embeddings) store = EmbeddingStore::load(*cfg.vectors);
    if (cfg.expansion == ExpansionMethod::KnowledgeGraph)
      kg = make_kg_client(cfg.dump, cfg.api_url, cfg.cache_dir, cfg.api_interval_ms);
    const EmbeddingStore* sp = store ? &*store : nullptr;

    std::vector<Target> t;
    if (!cfg.danger_lists.empty()) {
      std::vector<WordList> sub;
      for (const auto& p : cfg.danger_lists) {
        auto base = load_wordlist(p);
        base.provenance = Provenance::Base;
        sub.push_back(expand(base, cfg, lemmas, sp, kg.get()));
      }
      t.push_back({Task::Danger, merge_danger_lists(sub)});
    }
    if (cfg.fear_list) {
      auto base = load_wordlist(*cfg.fear_list);
      base.name = "Fear";
      base.provenance = Provenance::Base;
      t.push_back({Task::Fear, expand(base, cfg, lemmas, sp, kg.get())});
    }
    for (const auto& tg : t) {
      out.write(fs::path("lists") / (tg.list.name + "." + std::string(to_string(tg.list.provenance)) + ".txt"),
                [&](std::ostream& os) { write_wordlist(os, tg.list); });
    }
    return t;
  });

  // detect
  for (const auto& tg : targets) {
    auto pred = stage("detect", [&] {
      auto p = classify(score_units(corpus, tg.list, lemmas, cfg.count_mode, cfg.jobs), cfg.scope);
      p.list_provenance = tg.list.provenance;
      p.count_mode = cfg.count_mode;
      out.write("predictions." + std::string(to_string(tg.task)) + ".tsv",
                [&](std::ostream& os) { write_predictions(os, p); });
      return p;
    });
    result.predictions.push_back(std::move(pred));
  }

  const bool annotated = corpus.has_annotations();
  if (annotated) {
    // evaluate
    stage("evaluate", [&] {
      for (std::size_t i = 0; i < targets.size(); ++i)
        result.evaluations.push_back(evaluate(result.predictions[i], corpus, targets[i].task, cfg.policy));
      const std::vector<std::string> extra = {"gold-policy=" + std::string(to_string(cfg.policy))};
      out.write("evaluation.tsv", [&](std::ostream& os) { write_eval_tsv(os, result.evaluations); }, extra);
      out.write("evaluation.txt", [&](std::ostream& os) { write_eval_table(os, result.evaluations); }, extra);
    });

    // error-report
    stage("error-report", [&] {
      for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto task = std::string(to_string(targets[i].task));
        const auto report =
            attribute_errors(result.predictions[i], gold_binary(corpus, targets[i].task, cfg.policy));
        const auto by_fp = rank_report(report.stats, RankBy::FalsePositives, cfg.top_n);
        const auto by_tp = rank_report(report.stats, RankBy::TruePositives, cfg.top_n);
        const auto all = rank_report(report.stats, RankBy::Ratio, report.stats.size());
        out.write("errors." + task + ".fp.tsv", [&](std::ostream& os) { write_error_tsv(os, by_fp); });
        out.write("errors." + task + ".tp.tsv", [&](std::ostream& os) { write_error_tsv(os, by_tp); });
        out.write("errors." + task + ".all.tsv", [&](std::ostream& os) { write_error_tsv(os, all); });
        out.write("false_negatives." + task + ".tsv", [&](std::ostream& os) { write_false_negatives(os, report); });
        out.write("errors." + task + ".txt", [&](std::ostream& os) {
          write_error_table(os, by_fp, RankBy::FalsePositives);
          os << '\n';
          write_error_table(os, by_tp, RankBy::TruePositives);
        });
      }
    });

    // agreement
    stage("agreement", [&] {
      for (auto scheme : {AgreementScheme::Typed, AgreementScheme::AnyDanger, AgreementScheme::Fear}) {
        try {
          result.agreement.push_back(agreement_suite(corpus, scheme));
        } catch (const DataError&) {
          return;  // no doubly-annotated text
        }
      }
      out.write("agreement.tsv", [&](std::ostream& os) { write_agreement_tsv(os, result.agreement); });
    });
  }

  out.write("summary.txt", [&](std::ostream& os) {
    os << "documents\t" << corpus.documents.size() << '\n' << "units\t" << corpus.unit_count() << '\n';
    for (const auto& p : result.predictions)
      os << "positives." << p.list_name << '\t' << p.positives() << '\n';
    if (!annotated) os << "evaluation\tskipped (corpus has no annotations)\n";
    for (const auto& r : result.evaluations) {
      os << "f1." << to_string(r.task) << '\t' << detail::fixed(r.scores.f1, 1) << '\n';
    }
    for (const auto& a : result.agreement) os << "kappa." << to_string(a.scheme) << '\t' << a.average << '\n';
  });
  result.files = out.written();
  return result;
}

}  // namespace dangerlex
