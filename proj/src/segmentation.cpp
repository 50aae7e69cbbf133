#include "dangerlex/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "dangerlex/error.hpp"
#include "dangerlex/utf8.hpp"

namespace dangerlex {
namespace {

constexpr std::string_view kGermanStopwords[] = {
    "aber",   "alle",   "allem",  "allen",   "aller",  "alles",  "als",    "also",   "am",     "an",
    "ander",  "andere", "anderen", "auch",   "auf",    "aus",    "bei",    "bin",    "bis",    "bist",
    "da",     "damit",  "dann",   "das",     "dass",   "daß",    "dein",   "dem",    "den",    "denn",
    "der",    "des",    "dich",   "die",     "dir",    "doch",   "dort",   "du",     "durch",  "ein",
    "eine",   "einem",  "einen",  "einer",   "eines",  "er",     "es",     "etwas",  "euch",   "für",
    "gegen",  "hab",    "habe",   "haben",   "hat",    "hatte",  "hatten", "hier",   "hin",    "ich",
    "ihm",    "ihn",    "ihnen",  "ihr",     "ihre",   "ihrem",  "ihren",  "ihrer",  "im",     "in",
    "ins",    "ist",    "ja",     "jede",    "jedem",  "jeden",  "jeder",  "jetzt",  "kann",   "kein",
    "keine",  "können", "konnte", "man",     "mein",   "mich",   "mir",    "mit",    "muss",   "nach",
    "nicht",  "nichts", "noch",   "nun",     "nur",    "ob",     "oder",   "ohne",   "sehr",   "sein",
    "seine",  "seinem", "seinen", "seiner",  "sich",   "sie",    "sind",   "so",     "soll",   "sollte",
    "um",     "und",    "uns",    "unter",   "vom",    "von",    "vor",    "war",    "waren",  "was",
    "weil",   "wenn",   "wer",    "werden",  "wie",    "wieder", "will",   "wir",    "wird",   "wo",
    "wollte", "wurde",  "würde",  "zu",      "zum",    "zur",    "über",
};

double cosine_of_blocks(const std::vector<std::vector<int>>& terms, std::size_t b1_begin, std::size_t b1_end,
                        std::size_t b2_begin, std::size_t b2_end) {
  std::unordered_map<int, double> f1, f2;
  for (auto p = b1_begin; p < b1_end; ++p)
    for (int t : terms[p]) f1[t] += 1.0;
  for (auto p = b2_begin; p < b2_end; ++p)
    for (int t : terms[p]) f2[t] += 1.0;
  double dot = 0.0, n1 = 0.0, n2 = 0.0;
  for (const auto& [t, c] : f1) {
    n1 += c * c;
    if (auto it = f2.find(t); it != f2.end()) dot += c * it->second;
  }
  for (const auto& [t, c] : f2) n2 += c * c;
  if (n1 == 0.0 || n2 == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(n1 * n2), 0.0, 1.0);
}

std::vector<double> smooth(std::vector<double> s, std::size_t width, std::size_t rounds) {
  if (s.empty()) return s;
  const std::size_t window = width + 1;
  const std::size_t left = (window - 1) / 2;
  const std::size_t right = window - 1 - left;
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<double> next(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::size_t lo = i >= left ? i - left : 0;
      const std::size_t hi = std::min(s.size() - 1, i + right);
      double sum = 0.0;
      for (auto j = lo; j <= hi; ++j) sum += s[j];
      next[i] = sum / static_cast<double>(hi - lo + 1);
    }
    s = std::move(next);
  }
  return s;
}

std::vector<double> depth_of(const std::vector<double>& s) {
  std::vector<double> depth(s.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    double lpeak = s[i];
    for (std::size_t j = i; j-- > 0;) {
      if (s[j] >= lpeak) lpeak = s[j];
      else break;
    }
    double rpeak = s[i];
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[j] >= rpeak) rpeak = s[j];
      else break;
    }
    depth[i] = std::max(0.0, (lpeak - s[i]) + (rpeak - s[i]));
  }
  return depth;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, const StopwordSet& stopwords) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto d = utf8::decode(text, pos);
    if (!utf8::is_alpha(d.code_point)) {
      pos += d.length;
      continue;
    }
    Token tok;
    tok.offset = pos;
    while (pos < text.size()) {
      d = utf8::decode(text, pos);
      if (!utf8::is_alpha(d.code_point)) break;
      utf8::append(tok.text, utf8::to_lower(d.code_point));
      pos += d.length;
    }
    tok.length = pos - tok.offset;
    tok.is_stopword = stopwords.contains(tok.text);
    out.push_back(std::move(tok));
  }
  return out;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet words = [] {
    StopwordSet w;
    for (auto s : kGermanStopwords) w.emplace(s);
    return w;
  }();
  return words;
}

StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    const auto w = utf8::trim(line);
    if (w.empty() || w.front() == '#') continue;
    out.insert(utf8::lower(w));
  }
  return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open stopword file: " + path.string());
  return parse_stopwords(in);
}

std::string_view to_string(CutoffPolicy p) { return p == CutoffPolicy::HC ? "hc" : "lc"; }

std::optional<CutoffPolicy> try_parse_cutoff_policy(std::string_view s) {
  if (s == "hc" || s == "HC") return CutoffPolicy::HC;
  if (s == "lc" || s == "LC") return CutoffPolicy::LC;
  return std::nullopt;
}

void SegmenterConfig::validate() const {
  if (pseudosentence_size < 1) throw UsageError("pseudosentence size must be >= 1");
  if (block_size < 1) throw UsageError("block size must be >= 1");
  if (smoothing_width < 1) throw UsageError("smoothing width must be >= 1");
}

GapScoreSeries gap_scores(const std::vector<Token>& tokens, const SegmenterConfig& config) {
  config.validate();
  const std::size_t w = config.pseudosentence_size;
  const std::size_t n = (tokens.size() + w - 1) / w;

  // Intern non-stopword tokens per pseudosentence.
  std::unordered_map<std::string, int> ids;
  std::vector<std::vector<int>> terms(n);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_stopword) continue;
    const auto [it, _] = ids.emplace(tokens[i].text, static_cast<int>(ids.size()));
    terms[i / w].push_back(it->second);
  }

  GapScoreSeries series;
  if (n < 2) return series;
  const std::size_t gaps = n - 1;
  const std::size_t k = config.block_size;
  series.raw.reserve(gaps);
  for (std::size_t g = 0; g < gaps; ++g) {
    const std::size_t window = std::min({k, g + 1, n - 1 - g});
    series.raw.push_back(cosine_of_blocks(terms, g + 1 - window, g + 1, g + 1, g + 1 + window));
  }
  series.scores = smooth(series.raw, config.smoothing_width, config.smoothing_rounds);
  series.depth_scores = depth_of(series.scores);
  return series;
}

double depth_cutoff(const std::vector<double>& depth_scores, CutoffPolicy policy) {
  if (depth_scores.empty()) return 0.0;
  const double n = static_cast<double>(depth_scores.size());
  const double mean = std::accumulate(depth_scores.begin(), depth_scores.end(), 0.0) / n;
  double var = 0.0;
  for (double d : depth_scores) var += (d - mean) * (d - mean);
  const double sd = std::sqrt(var / n);
  return policy == CutoffPolicy::HC ? mean - sd / 2.0 : mean - sd;
}

std::vector<std::size_t> select_boundary_gaps(const GapScoreSeries& series, CutoffPolicy policy) {
  const auto& s = series.scores;
  const auto& depth = series.depth_scores;
  const double cutoff = depth_cutoff(depth, policy);
  std::vector<std::size_t> out;
  // A valley is an interior run of equal scores with strictly higher
  // neighbours on both sides; the run's first gap represents it.
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!(s[i] < s[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
    if (j + 1 >= s.size() || !(s[j + 1] > s[i])) continue;
    if (depth[i] > 0.0 && depth[i] > cutoff) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> paragraph_breaks(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '\n') {
      ++i;
      continue;
    }
    // Scan the whitespace run starting at this newline.
    std::size_t j = i;
    int newlines = 0;
    while (j < text.size() && (text[j] == '\n' || text[j] == '\r' || text[j] == ' ' || text[j] == '\t')) {
      if (text[j] == '\n') ++newlines;
      ++j;
    }
    if (newlines >= 2 && j < text.size() && j > 0) out.push_back(j);
    i = j;
  }
  return out;
}

SegmentationTrace segment_with_trace(std::string_view text, const SegmenterConfig& config) {
  config.validate();
  SegmentationTrace trace;
  if (text.empty()) return trace;
  trace.tokens = tokenize(text, config.stopwords);
  const std::size_t w = config.pseudosentence_size;
  for (std::size_t i = 0; i < trace.tokens.size(); i += w) trace.pseudosentence_starts.push_back(i);

  if (trace.tokens.size() < 2 * w) {
    trace.segments.push_back({0, text.size()});
    return trace;
  }

  trace.gaps = gap_scores(trace.tokens, config);
  trace.cutoff = depth_cutoff(trace.gaps.depth_scores, config.cutoff);
  trace.boundary_gaps = select_boundary_gaps(trace.gaps, config.cutoff);

  const auto breaks = paragraph_breaks(text);
  std::vector<std::size_t> cuts;
  for (auto g : trace.boundary_gaps) {
    const std::size_t pos = trace.tokens[trace.pseudosentence_starts[g + 1]].offset;
    std::size_t cut = pos;
    if (!breaks.empty()) {
      auto it = std::lower_bound(breaks.begin(), breaks.end(), pos);
      if (it == breaks.end()) {
        cut = breaks.back();
      } else if (it == breaks.begin()) {
        cut = *it;
      } else {
        const auto before = *(it - 1);
        cut = (pos - before <= *it - pos) ? before : *it;
      }
    }
    if (cut > 0 && cut < text.size()) cuts.push_back(cut);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::size_t begin = 0;
  for (auto c : cuts) {
    trace.segments.push_back({begin, c});
    begin = c;
  }
  trace.segments.push_back({begin, text.size()});
  return trace;
}

std::vector<Segment> segment(std::string_view text, const SegmenterConfig& config) {
  return segment_with_trace(text, config).segments;
}

void segment_corpus(Corpus& corpus, const SegmenterConfig& config) {
  for (auto& doc : corpus.documents) {
    const std::string_view raw = doc.raw_text;
    std::vector<ParagraphUnit> units;
    for (const auto& seg : segment(raw, config)) {
      const auto body = utf8::trim(raw.substr(seg.begin, seg.end - seg.begin));
      if (body.empty()) continue;
      units.push_back(ParagraphUnit{doc.doc_id, units.size(), std::string(body), {}});
    }
    doc.units = std::move(units);
  }
}

}  // namespace dangerlex
