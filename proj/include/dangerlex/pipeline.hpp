#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dangerlex/detection.hpp"
#include "dangerlex/error.hpp"
#include "dangerlex/error_analysis.hpp"
#include "dangerlex/evaluation.hpp"
#include "dangerlex/expansion.hpp"
#include "dangerlex/segmentation.hpp"

namespace dangerlex {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ExpansionMethod { None, Embeddings, KnowledgeGraph };

std::string_view to_string(ExpansionMethod m);
std::optional<ExpansionMethod> try_parse_expansion(std::string_view s);

struct PipelineConfig {
  // Exactly one of the two corpus sources.
  std::optional<std::filesystem::path> corpus;     // segmented-jsonl
  std::optional<std::filesystem::path> input_dir;  // directory of .txt files, segmented first

  std::vector<std::filesystem::path> danger_lists;  // merged into "Danger"
  std::optional<std::filesystem::path> fear_list;
  std::filesystem::path lemmas;
  std::optional<std::filesystem::path> stopwords;

  ExpansionMethod expansion = ExpansionMethod::None;
  std::optional<std::filesystem::path> vectors;
  std::optional<std::filesystem::path> dump;
  std::optional<std::string> api_url;
  std::optional<std::filesystem::path> cache_dir;
  std::size_t neighbors = 50;
  unsigned api_interval_ms = 1000;

  SegmenterConfig segmenter;
  ThresholdScope scope = ThresholdScope::Global;
  CountMode count_mode = CountMode::Tokens;
  GoldPolicy policy = GoldPolicy::FirstAnnotator;
  std::size_t top_n = 10;
  unsigned jobs = 1;

  std::filesystem::path out_dir = "out";

  /// Every referenced file that does not exist.
  std::vector<std::filesystem::path> missing_paths() const;
  /// Throws UsageError naming every problem at once.
  void validate() const;
  /// Stable key=value rendering of the resolved configuration.
  std::string canonical() const;
  /// 16 hex digits, FNV-1a over `canonical()`.
  std::string fingerprint() const;
};

/// Lines written at the top of every output file, without the "# " prefix.
std::vector<std::string> provenance_header(std::string_view fingerprint);

/// An error annotated with the pipeline stage that raised it. Keeps the exit
/// code of the original error.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause);
  ExitCode exit_code() const noexcept override { return code_; }
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
  ExitCode code_;
};

struct PipelineResult {
  std::vector<std::filesystem::path> files;
  std::vector<EvalReport> evaluations;
  std::vector<AgreementReport> agreement;
  std::vector<PredictionSet> predictions;
};

/// segment (raw input only) -> expand (optional) -> detect -> evaluate ->
/// error-report -> agreement. Evaluation stages are skipped for corpora
/// without annotations; agreement is skipped without doubly-annotated texts.
PipelineResult run_pipeline(const PipelineConfig& config);

/// Knowledge-graph client over a dump, a live endpoint or, with neither,
/// the cache directory alone.
std::unique_ptr<KgClient> make_kg_client(const std::optional<std::filesystem::path>& dump,
                                         const std::optional<std::string>& api_url,
                                         const std::optional<std::filesystem::path>& cache_dir,
                                         unsigned api_interval_ms = 1000);

/// FNV-1a 64-bit, lowercase hex.
std::string fnv1a_hex(std::string_view data);

}  // namespace dangerlex
