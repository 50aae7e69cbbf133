#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dangerlex/corpus.hpp"
#include "dangerlex/detection.hpp"
#include "dangerlex/error.hpp"
#include "dangerlex/error_analysis.hpp"
#include "dangerlex/evaluation.hpp"
#include "dangerlex/expansion.hpp"
#include "dangerlex/fixtures.hpp"
#include "dangerlex/lexicon.hpp"
#include "dangerlex/pipeline.hpp"
#include "dangerlex/segmentation.hpp"

namespace fs = std::filesystem;
using namespace dangerlex;

namespace {

template <typename T>
T parse_or_throw(std::optional<T> v, std::string_view flag, std::string_view value) {
  if (!v) throw UsageError("invalid value for " + std::string(flag) + ": '" + std::string(value) + "'");
  return *v;
}

std::ifstream open_input(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot open " + p.string());
  return in;
}

// Writes to `path`, or to stdout when `path` is empty. Every file starts with
// the provenance header.
void emit(const std::string& path, const std::vector<std::string>& header,
          const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& h : header) out << "# " << h << '\n';
  body(out);
  if (!out) throw DataError("write failed: " + path);
}

std::vector<std::string> header_for(std::string_view command, std::string_view settings) {
  return provenance_header(fnv1a_hex(std::string(command) + '\n' + std::string(settings)));
}

struct SegmentFlags {
  std::size_t w = 20, k = 10, smoothing_width = 2, smoothing_rounds = 1;
  std::string cutoff = "hc";
  std::string stopwords;

  void add_to(CLI::App& app) {
    app.add_option("--w", w, "Pseudosentence size in tokens")->capture_default_str();
    app.add_option("--k", k, "Block size in pseudosentences")->capture_default_str();
    app.add_option("--cutoff", cutoff, "Depth cutoff: hc (mean - sd/2) or lc (mean - sd)")
        ->check(CLI::IsMember({"hc", "lc"}))
        ->capture_default_str();
    app.add_option("--smoothing-width", smoothing_width, "Moving-average width for gap scores")->capture_default_str();
    app.add_option("--smoothing-rounds", smoothing_rounds, "Number of smoothing passes")->capture_default_str();
    app.add_option("--stopwords", stopwords, "Stopword file, one word per line (default: built-in German list)");
  }

  SegmenterConfig resolve() const {
    SegmenterConfig c;
    c.pseudosentence_size = w;
    c.block_size = k;
    c.smoothing_width = smoothing_width;
    c.smoothing_rounds = smoothing_rounds;
    c.cutoff = parse_or_throw(try_parse_cutoff_policy(cutoff), "--cutoff", cutoff);
    if (!stopwords.empty()) c.stopwords = load_stopwords(stopwords);
    c.validate();
    return c;
  }
};

Corpus load_annotated(const std::string& path) { return load_corpus(path, CorpusFormat::SegmentedJsonl); }

PredictionSet load_predictions(const std::string& path) {
  auto in = open_input(path);
  return read_predictions(in, path);
}

constexpr const char* kRunDescription = "Full pipeline: segment, expand, detect, evaluate, error-report, agreement";

// CLI11 reads configuration files only on the top-level App, so `run` parses
// its arguments with an App of its own.
int run_command(std::vector<std::string> args) {
  CLI::App cmd{kRunDescription, "dangerlex run"};
  cmd.set_config("--config", "", "Key=value configuration file; flags given on the command line win");
  struct {
    std::string corpus, input, fear_list, lemmas, stopwords, expand = "none", vectors, dump, api, cache,
        scope = "global", policy = "first-annotator", out = "out";
    std::vector<std::string> danger_lists;
    SegmentFlags seg;
    std::size_t top_k = 50, top = 10;
    unsigned jobs = 1, interval_ms = 1000;
    bool types_only = false;
  } rf;
  cmd.add_option("--corpus", rf.corpus, "Segmented-jsonl corpus");
  cmd.add_option("--input", rf.input, "Directory of raw .txt documents, segmented first");
  cmd.add_option("--danger-list", rf.danger_lists, "Danger sublist; repeat for each danger type");
  cmd.add_option("--fear-list", rf.fear_list, "Fear word list");
  cmd.add_option("--lemmas", rf.lemmas, "Lemma table (TSV: form, lemma)");
  cmd.add_option("--expand", rf.expand, "none, embeddings or kg")
      ->check(CLI::IsMember({"none", "embeddings", "kg"}))
      ->capture_default_str();
  cmd.add_option("--vectors", rf.vectors, "Embedding file (expand embeddings)");
  cmd.add_option("--top-k", rf.top_k, "Embedding neighbours per base word")->capture_default_str();
  cmd.add_option("--dump", rf.dump, "Knowledge-graph edge dump (expand kg)");
  cmd.add_option("--api", rf.api, "Knowledge-graph REST endpoint (expand kg)");
  cmd.add_option("--api-interval-ms", rf.interval_ms, "Minimum spacing between API requests")->capture_default_str();
  cmd.add_option("--cache", rf.cache, "Knowledge-graph neighbour cache directory");
  cmd.add_option("--scope", rf.scope, "Threshold scope: global or per-doc")
      ->check(CLI::IsMember({"global", "per-doc", "per-document"}))
      ->capture_default_str();
  cmd.add_flag("--types-only", rf.types_only, "Count distinct matched words instead of tokens");
  cmd.add_option("--policy", rf.policy, "Gold resolution: first-annotator, union or intersection")
      ->check(CLI::IsMember({"first-annotator", "first", "union", "intersection"}))
      ->capture_default_str();
  cmd.add_option("--top", rf.top, "Rows per error table")->capture_default_str();
  cmd.add_option("--jobs", rf.jobs, "Worker threads for detection")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--out", rf.out, "Output directory")->capture_default_str();
  rf.seg.add_to(cmd);

  std::reverse(args.begin(), args.end());
  try {
    cmd.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = cmd.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }
    PipelineConfig cfg;
    const auto opt_path = [](const std::string& s) -> std::optional<fs::path> {
      return s.empty() ? std::nullopt : std::optional<fs::path>(s);
    };
    cfg.corpus = opt_path(rf.corpus);
    cfg.input_dir = opt_path(rf.input);
    for (const auto& l : rf.danger_lists) cfg.danger_lists.emplace_back(l);
    cfg.fear_list = opt_path(rf.fear_list);
    cfg.lemmas = rf.lemmas;
    cfg.stopwords = opt_path(rf.seg.stopwords);
    cfg.expansion = parse_or_throw(try_parse_expansion(rf.expand), "--expand", rf.expand);
    cfg.vectors = opt_path(rf.vectors);
    cfg.dump = opt_path(rf.dump);
    if (!rf.api.empty()) cfg.api_url = rf.api;
    cfg.cache_dir = opt_path(rf.cache);
    cfg.neighbors = rf.top_k;
    cfg.api_interval_ms = rf.interval_ms;
    cfg.segmenter.pseudosentence_size = rf.seg.w;
    cfg.segmenter.block_size = rf.seg.k;
    cfg.segmenter.smoothing_width = rf.seg.smoothing_width;
    cfg.segmenter.smoothing_rounds = rf.seg.smoothing_rounds;
    cfg.segmenter.cutoff = parse_or_throw(try_parse_cutoff_policy(rf.seg.cutoff), "--cutoff", rf.seg.cutoff);
    cfg.scope = parse_or_throw(try_parse_scope(rf.scope), "--scope", rf.scope);
    cfg.count_mode = rf.types_only ? CountMode::Types : CountMode::Tokens;
    cfg.policy = parse_or_throw(try_parse_gold_policy(rf.policy), "--policy", rf.policy);
    cfg.top_n = rf.top;
    cfg.jobs = rf.jobs;
    cfg.out_dir = rf.out;
    const auto result = run_pipeline(cfg);
    for (const auto& f : result.files) std::cout << f.generic_string() << '\n';
  return 0;
}

int run_app(int argc, char** argv) {
  CLI::App app{"Lexicon-based detection of danger and fear paragraphs in German narrative text", "dangerlex"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::function<void()> action;

  // segment
  auto* seg = app.add_subcommand("segment", "Split raw .txt documents into paragraph units (TextTiling)");
  struct {
    std::string input, out;
    SegmentFlags flags;
  } sg;
  seg->add_option("--input", sg.input, "Directory of .txt files, one document each")->required();
  seg->add_option("--out", sg.out, "Output segmented-jsonl (default: stdout)");
  sg.flags.add_to(*seg);
  seg->callback([&] {
    action = [&] {
      const auto cfg = sg.flags.resolve();
      auto corpus = load_corpus(sg.input, CorpusFormat::RawTextDir);
      segment_corpus(corpus, cfg);
      std::ostringstream settings;
      settings << "w=" << cfg.pseudosentence_size << " k=" << cfg.block_size << " cutoff=" << to_string(cfg.cutoff)
               << " smoothing=" << cfg.smoothing_width << "x" << cfg.smoothing_rounds;
      auto header = header_for("segment", settings.str());
      header.push_back("segmentation=" + settings.str());
      emit(sg.out, header, [&](std::ostream& os) { write_corpus(os, corpus); });
    };
  });

  // expand
  auto* exp = app.add_subcommand("expand", "Expand a base word list via embeddings or a knowledge graph");
  struct {
    std::string base, method, vectors, dump, api, cache, lemmas, out, name;
    bool cache_only = false;
    std::size_t top_k = 50;
    unsigned interval_ms = 1000;
  } ex;
  exp->add_option("--base", ex.base, "Base word list")->required();
  exp->add_option("--method", ex.method, "embeddings or kg")->required()->check(CLI::IsMember({"embeddings", "kg"}));
  exp->add_option("--vectors", ex.vectors, "Embedding file in word2vec text format (method embeddings)");
  exp->add_option("--lemmas", ex.lemmas, "Lemma table for embedding neighbours (method embeddings)");
  exp->add_option("--top-k", ex.top_k, "Neighbours per base word (method embeddings)")->capture_default_str();
  exp->add_option("--dump", ex.dump, "Knowledge-graph edge dump, TSV (method kg)");
  exp->add_option("--api", ex.api, "Knowledge-graph REST endpoint base URL (method kg)");
  exp->add_option("--api-interval-ms", ex.interval_ms, "Minimum spacing between API requests")->capture_default_str();
  exp->add_option("--cache", ex.cache, "Neighbour cache directory (method kg)");
  exp->add_flag("--cache-only", ex.cache_only, "Never contact the endpoint; a cache miss is an error");
  exp->add_option("--name", ex.name, "Name of the expanded list (default: base list name)");
  exp->add_option("--out", ex.out, "Output word list (default: stdout)");
  exp->callback([&] {
    action = [&] {
      auto base = load_wordlist(ex.base);
      base.provenance = Provenance::Base;
      if (!ex.name.empty()) base.name = ex.name;
      WordList result;
      std::string settings = "method=" + ex.method;
      if (ex.method == "embeddings") {
        if (ex.vectors.empty()) throw UsageError("--method embeddings needs --vectors");
        const auto store = EmbeddingStore::load(ex.vectors);
        const auto lemmas = ex.lemmas.empty() ? LemmaTable{} : LemmaTable::load(ex.lemmas);
        result = expand_with_embeddings(base, store, lemmas, ex.top_k);
        settings += " top-k=" + std::to_string(ex.top_k);
      } else {
        std::optional<fs::path> dump, cache;
        std::optional<std::string> api;
        if (!ex.dump.empty()) dump = ex.dump;
        if (!ex.api.empty() && !ex.cache_only) api = ex.api;
        if (!ex.cache.empty()) cache = ex.cache;
        if (ex.cache_only) {
          if (!cache) throw UsageError("--cache-only needs --cache");
          dump.reset();
        }
        if (!dump && !api && !cache) throw UsageError("--method kg needs --dump, --api or --cache");
        auto client = make_kg_client(dump, api, cache, ex.interval_ms);
        result = expand_with_kg(base, *client);
      }
      emit(ex.out, header_for("expand", settings), [&](std::ostream& os) { write_wordlist(os, result); });
    };
  });

  // detect
  auto* det = app.add_subcommand("detect", "Score paragraphs against word lists and apply the mean threshold");
  struct {
    std::string corpus, lemmas, scope = "global", out, name;
    std::vector<std::string> lists;
    bool types_only = false;
    unsigned jobs = 1;
  } dt;
  det->add_option("--corpus", dt.corpus, "Segmented-jsonl corpus")->required();
  det->add_option("--list", dt.lists, "Word list; repeat to merge sublists into one Danger list")->required();
  det->add_option("--lemmas", dt.lemmas, "Lemma table (TSV: form, lemma)")->required();
  det->add_option("--scope", dt.scope, "Threshold scope: global or per-doc")
      ->check(CLI::IsMember({"global", "per-doc", "per-document"}))
      ->capture_default_str();
  det->add_flag("--types-only", dt.types_only, "Count distinct matched words instead of tokens");
  det->add_option("--jobs", dt.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  det->add_option("--out", dt.out, "Output predictions TSV (default: stdout)");
  det->callback([&] {
    action = [&] {
      const auto corpus = load_annotated(dt.corpus);
      const auto lemmas = LemmaTable::load(dt.lemmas);
      WordList list;
      if (dt.lists.size() == 1) {
        list = load_wordlist(dt.lists.front());
      } else {
        std::vector<WordList> sub;
        for (const auto& p : dt.lists) sub.push_back(load_wordlist(p));
        list = merge_danger_lists(sub);
      }
      const auto scope = parse_or_throw(try_parse_scope(dt.scope), "--scope", dt.scope);
      const auto mode = dt.types_only ? CountMode::Types : CountMode::Tokens;
      auto pred = classify(score_units(corpus, list, lemmas, mode, dt.jobs), scope);
      pred.list_provenance = list.provenance;
      pred.count_mode = mode;
      emit(dt.out, header_for("detect", list.name + " " + dt.scope), [&](std::ostream& os) {
        write_predictions(os, pred);
      });
    };
  });

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Precision, recall and F1 of predictions against gold labels");
  struct {
    std::string pred, corpus, task, policy = "first-annotator", out;
  } evf;
  ev->add_option("--pred", evf.pred, "Predictions TSV from detect")->required();
  ev->add_option("--corpus", evf.corpus, "Annotated segmented-jsonl corpus")->required();
  ev->add_option("--task", evf.task, "danger or fear")->required()->check(CLI::IsMember({"danger", "fear"}));
  ev->add_option("--policy", evf.policy, "Gold resolution: first-annotator, union or intersection")
      ->check(CLI::IsMember({"first-annotator", "first", "union", "intersection"}))
      ->capture_default_str();
  ev->add_option("--out", evf.out, "Also write the report as TSV to this file");
  ev->callback([&] {
    action = [&] {
      const auto pred = load_predictions(evf.pred);
      const auto corpus = load_annotated(evf.corpus);
      const auto task = parse_or_throw(try_parse_task(evf.task), "--task", evf.task);
      const auto policy = parse_or_throw(try_parse_gold_policy(evf.policy), "--policy", evf.policy);
      const std::vector<EvalReport> reports{evaluate(pred, corpus, task, policy)};
      if (!evf.out.empty())
        emit(evf.out, header_for("evaluate", evf.task + " " + evf.policy),
             [&](std::ostream& os) { write_eval_tsv(os, reports); });
      write_eval_table(std::cout, reports);
    };
  });

  // agreement
  auto* ag = app.add_subcommand("agreement", "Cohen's kappa between annotators per text");
  struct {
    std::string corpus, scheme = "all", out;
  } agf;
  ag->add_option("--corpus", agf.corpus, "Annotated segmented-jsonl corpus")->required();
  ag->add_option("--scheme", agf.scheme, "typed, any (alias any-danger), fear or all")
      ->check(CLI::IsMember({"typed", "any", "any-danger", "fear", "all"}))
      ->capture_default_str();
  ag->add_option("--out", agf.out, "Output TSV (default: stdout)");
  ag->callback([&] {
    action = [&] {
      const auto corpus = load_annotated(agf.corpus);
      std::vector<AgreementReport> reports;
      if (agf.scheme == "all") {
        for (auto s : {AgreementScheme::Typed, AgreementScheme::AnyDanger, AgreementScheme::Fear})
          reports.push_back(agreement_suite(corpus, s));
      } else {
        reports.push_back(agreement_suite(corpus, parse_or_throw(try_parse_scheme(agf.scheme), "--scheme", agf.scheme)));
      }
      emit(agf.out, header_for("agreement", agf.scheme), [&](std::ostream& os) { write_agreement_tsv(os, reports); });
    };
  });

  // error-report
  auto* er = app.add_subcommand("error-report", "Per-word true/false positive attribution");
  struct {
    std::string pred, corpus, task, policy = "first-annotator", sort = "fp", out, false_negatives;
    std::size_t top = 10;
    bool tsv = false;
  } erf;
  er->add_option("--pred", erf.pred, "Predictions TSV from detect")->required();
  er->add_option("--corpus", erf.corpus, "Annotated segmented-jsonl corpus")->required();
  er->add_option("--task", erf.task, "danger or fear")->required()->check(CLI::IsMember({"danger", "fear"}));
  er->add_option("--policy", erf.policy, "Gold resolution: first-annotator, union or intersection")
      ->check(CLI::IsMember({"first-annotator", "first", "union", "intersection"}))
      ->capture_default_str();
  er->add_option("--sort", erf.sort, "Rank by fp, tp or ratio")
      ->check(CLI::IsMember({"fp", "tp", "ratio"}))
      ->capture_default_str();
  er->add_option("--top", erf.top, "Rows to keep")->capture_default_str();
  er->add_flag("--tsv", erf.tsv, "Print TSV instead of an aligned table");
  er->add_option("--out", erf.out, "Also write the ranked rows as TSV to this file");
  er->add_option("--false-negatives", erf.false_negatives, "Write gold-positive units predicted negative to this file");
  er->callback([&] {
    action = [&] {
      const auto pred = load_predictions(erf.pred);
      const auto corpus = load_annotated(erf.corpus);
      const auto task = parse_or_throw(try_parse_task(erf.task), "--task", erf.task);
      const auto policy = parse_or_throw(try_parse_gold_policy(erf.policy), "--policy", erf.policy);
      const auto by = parse_or_throw(try_parse_rank(erf.sort), "--sort", erf.sort);
      const auto report = attribute_errors(pred, gold_binary(corpus, task, policy));
      const auto rows = rank_report(report.stats, by, erf.top);
      const auto header = header_for("error-report", erf.task + " " + erf.policy + " " + erf.sort);
      if (!erf.out.empty()) emit(erf.out, header, [&](std::ostream& os) { write_error_tsv(os, rows); });
      if (!erf.false_negatives.empty())
        emit(erf.false_negatives, header, [&](std::ostream& os) { write_false_negatives(os, report); });
      if (erf.tsv)
        write_error_tsv(std::cout, rows);
      else
        write_error_table(std::cout, rows, by);
    };
  });

  // run
  auto* run = app.add_subcommand("run", kRunDescription);
  run->prefix_command();
  run->set_help_flag();
  run->footer("Run `dangerlex run --help` for the pipeline flags.");
  int run_rc = 0;
  run->callback([&] {
    action = [&] { run_rc = run_command(run->remaining()); };
  });

  // fixtures
  auto* fx = app.add_subcommand("fixtures", "Write the bundled synthetic corpus, word lists and pipeline.ini");
  std::string fixture_out;
  fx->add_option("--out", fixture_out, "Target directory")->required();
  fx->callback([&] {
    action = [&] {
      for (const auto& f : fixtures::write(fixture_out)) std::cout << f.generic_string() << '\n';
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }
  action();
  return run_rc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const Error& e) {
    std::cerr << "dangerlex: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "dangerlex: " << e.what() << '\n';
    return static_cast<int>(ExitCode::data);
  } catch (const std::exception& e) {
    std::cerr << "dangerlex: " << e.what() << '\n';
    return static_cast<int>(ExitCode::data);
  }
}
