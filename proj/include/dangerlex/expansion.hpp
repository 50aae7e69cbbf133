#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "dangerlex/lexicon.hpp"

namespace dangerlex {

// ---------------------------------------------------------------------------
// Vector-space neighbours

/// Dense word vectors, one row per vocabulary entry.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  /// Throws DataError on duplicate words or a row count that does not match.
  EmbeddingStore(std::vector<std::string> vocabulary, Eigen::MatrixXd vectors);

  /// Textual word2vec format: a `count dim` header, then `word v1 ... vd`.
  static EmbeddingStore parse(std::istream& in, std::string_view source = "<stream>");
  static EmbeddingStore load(const std::filesystem::path& path);

  std::size_t size() const { return vocabulary_.size(); }
  std::size_t dimension() const { return static_cast<std::size_t>(vectors_.cols()); }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }

  /// Exact match first, then a case-insensitive match (first row wins).
  std::optional<std::size_t> index_of(std::string_view word) const;
  /// Zero when either vector is zero.
  double cosine(std::size_t a, std::size_t b) const;
  bool is_zero(std::size_t i) const { return norms_[static_cast<Eigen::Index>(i)] == 0.0; }

 private:
  std::vector<std::string> vocabulary_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd norms_;
  std::unordered_map<std::string, std::size_t> exact_;
  std::unordered_map<std::string, std::size_t> folded_;
};

struct Neighbor {
  std::string word;
  double cosine = 0.0;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Top-k words by cosine, descending, ties by word. The query and zero
/// vectors are never returned; an unknown query yields an empty list.
std::vector<Neighbor> most_similar(const EmbeddingStore& store, std::string_view word, std::size_t k);

/// base ∪ lemma(lowercase(n)) for each base word's top-k neighbours n.
/// Candidates containing whitespace are dropped.
WordList expand_with_embeddings(const WordList& base, const EmbeddingStore& store, const LemmaTable& lemmas,
                                std::size_t k = 50);

// ---------------------------------------------------------------------------
// Knowledge-graph neighbours

enum class KgRelation { Synonym, IsA, Other };

struct ConceptRef {
  std::string language;
  std::string term;  // lowercased, underscores turned into spaces
  friend bool operator==(const ConceptRef&, const ConceptRef&) = default;
};

/// `/c/de/blanke_klinge/n` -> {"de", "blanke klinge"}.
std::optional<ConceptRef> parse_concept_uri(std::string_view uri);
std::string concept_uri(std::string_view language, std::string_view term);
KgRelation parse_relation(std::string_view rel);

struct KgEdge {
  KgRelation relation = KgRelation::Other;
  ConceptRef start;
  ConceptRef end;
  friend bool operator==(const KgEdge&, const KgEdge&) = default;
};

/// German-language (or `language`) candidates B for base word A:
/// (A, Synonym, B), (B, Synonym, A) and (B, IsA, A). Candidates with spaces
/// and A itself are dropped. Sorted, unique.
std::vector<std::string> neighbors_from_edges(std::span<const KgEdge> edges, std::string_view word,
                                              std::string_view language = "de");

/// Supplies the edges touching a concept.
class KgSource {
 public:
  virtual ~KgSource() = default;
  virtual std::vector<KgEdge> edges_for(std::string_view term) = 0;
};

/// In-memory index over an assertion dump. Accepts either three columns
/// (relation, start, end) or the five-column assertion export
/// (uri, relation, start, end, json). Only edges whose two ends are in
/// `language` are kept.
class DumpKgSource final : public KgSource {
 public:
  static DumpKgSource parse(std::istream& in, std::string_view language = "de", std::string_view source = "<stream>");
  static DumpKgSource load(const std::filesystem::path& path, std::string_view language = "de");

  std::vector<KgEdge> edges_for(std::string_view term) override;
  std::size_t edge_count() const { return edges_.size(); }

 private:
  std::vector<KgEdge> edges_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_term_;
};

/// Serializes callers so that consecutive acquisitions are at least
/// `interval` apart.
class RateLimiter {
 public:
  explicit RateLimiter(std::chrono::milliseconds interval) : interval_(interval) {}
  void acquire();

 private:
  std::mutex mutex_;
  std::chrono::milliseconds interval_;
  std::optional<std::chrono::steady_clock::time_point> last_;
};

/// Queries a ConceptNet-compatible REST endpoint (`/query?node=...&other=...`),
/// following `view.nextPage` links. Failures raise NetworkError.
class HttpKgSource final : public KgSource {
 public:
  HttpKgSource(std::string base_url, std::string language = "de",
               std::chrono::milliseconds min_interval = std::chrono::milliseconds(1000),
               std::size_t page_limit = 1000);

  std::vector<KgEdge> edges_for(std::string_view term) override;

 private:
  std::string base_url_;
  std::string language_;
  RateLimiter limiter_;
  std::size_t page_limit_;
};

/// Parses one page of the REST endpoint's JSON. Returns the edges and the
/// next-page path, if any.
std::pair<std::vector<KgEdge>, std::optional<std::string>> parse_kg_response(std::string_view body);

/// One file per word under a directory. See README for the format.
class KgDiskCache {
 public:
  explicit KgDiskCache(std::filesystem::path dir);

  std::optional<std::vector<std::string>> get(std::string_view word) const;
  void put(std::string_view word, const std::vector<std::string>& candidates) const;
  std::filesystem::path path_for(std::string_view word) const;

 private:
  std::filesystem::path dir_;
};

/// Neighbour lookups with an in-memory cache and an optional disk cache.
/// Without a source the client runs cache-only: a miss is a CacheMissError.
class KgClient {
 public:
  KgClient(std::unique_ptr<KgSource> source, std::optional<std::filesystem::path> cache_dir = std::nullopt,
           std::string language = "de");

  std::vector<std::string> neighbors(std::string_view word);
  bool cache_only() const { return source_ == nullptr; }

 private:
  std::unique_ptr<KgSource> source_;
  std::optional<KgDiskCache> disk_;
  std::string language_;
  mutable std::shared_mutex cache_mutex_;
  std::map<std::string, std::vector<std::string>, std::less<>> memory_;
  std::mutex source_mutex_;
};

std::vector<std::string> kg_neighbors(KgClient& client, std::string_view word);

/// base ∪ kg_neighbors(w) for every base word. Client errors propagate.
WordList expand_with_kg(const WordList& base, KgClient& client);

}  // namespace dangerlex
