#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dangerlex/corpus.hpp"

namespace dangerlex {

using StopwordSet = std::unordered_set<std::string>;

struct Token {
  std::string text;        // lowercased
  bool is_stopword = false;
  std::size_t offset = 0;  // byte offset into the source text
  std::size_t length = 0;  // byte length in the source text

  friend bool operator==(const Token&, const Token&) = default;
};

/// Maximal runs of alphabetic code points, lowercased. Offsets are byte
/// offsets into `text`. Stopword membership is checked on the lowercased form.
std::vector<Token> tokenize(std::string_view text, const StopwordSet& stopwords = {});

/// Small German stopword list used when no file is supplied.
const StopwordSet& default_stopwords();
StopwordSet load_stopwords(const std::filesystem::path& path);
StopwordSet parse_stopwords(std::istream& in);

enum class CutoffPolicy { HC, LC };

std::string_view to_string(CutoffPolicy p);
std::optional<CutoffPolicy> try_parse_cutoff_policy(std::string_view s);

struct SegmenterConfig {
  std::size_t pseudosentence_size = 20;  // w, tokens per pseudosentence
  std::size_t block_size = 10;           // k, pseudosentences per comparison block
  std::size_t smoothing_width = 2;
  std::size_t smoothing_rounds = 1;
  CutoffPolicy cutoff = CutoffPolicy::HC;
  StopwordSet stopwords = default_stopwords();

  /// Throws UsageError when a size parameter is zero.
  void validate() const;
};

struct GapScoreSeries {
  std::vector<double> raw;           // block cosine per gap, in [0,1]
  std::vector<double> scores;        // after smoothing
  std::vector<double> depth_scores;  // computed on `scores`, >= 0
};

struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive byte offset
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Intermediate values of one segmentation run, exposed for diagnostics.
struct SegmentationTrace {
  std::vector<Token> tokens;
  std::vector<std::size_t> pseudosentence_starts;  // token index of each pseudosentence
  GapScoreSeries gaps;
  double cutoff = 0.0;
  std::vector<std::size_t> boundary_gaps;  // gap i sits between pseudosentence i and i+1
  std::vector<Segment> segments;
};

/// Gap similarities of adjacent pseudosentence blocks over non-stopword term
/// frequencies, smoothed, with depth scores.
GapScoreSeries gap_scores(const std::vector<Token>& tokens, const SegmenterConfig& config);

double depth_cutoff(const std::vector<double>& depth_scores, CutoffPolicy policy);

/// Gaps at valleys of the smoothed series whose depth is positive and
/// exceeds the cutoff, ascending.
std::vector<std::size_t> select_boundary_gaps(const GapScoreSeries& series, CutoffPolicy policy);

/// Byte offsets where a paragraph starts after a blank line.
std::vector<std::size_t> paragraph_breaks(std::string_view text);

/// TextTiling. Returns ordered, non-overlapping segments whose union is the
/// whole text. Degenerate inputs come back as a single segment.
std::vector<Segment> segment(std::string_view text, const SegmenterConfig& config = {});
SegmentationTrace segment_with_trace(std::string_view text, const SegmenterConfig& config = {});

/// Replaces the units of every document by the segments of its raw text.
/// Segments are whitespace-trimmed; all-blank segments are dropped.
void segment_corpus(Corpus& corpus, const SegmenterConfig& config);

}  // namespace dangerlex
