#include "dangerlex/expansion.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dangerlex/error.hpp"
#include "dangerlex/utf8.hpp"

namespace dangerlex {
namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const auto b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t b = 0;
  for (;;) {
    const auto t = s.find('\t', b);
    out.push_back(s.substr(b, t == std::string_view::npos ? std::string_view::npos : t - b));
    if (t == std::string_view::npos) break;
    b = t + 1;
  }
  return out;
}

[[noreturn]] void fail_line(std::string_view source, std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line << ": " << what;
  throw DataError(os.str());
}

double parse_double(std::string_view s, std::string_view source, std::size_t line) {
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size()) fail_line(source, line, "not a number: '" + tmp + "'");
  return v;
}

}  // namespace

// --- EmbeddingStore ---------------------------------------------------------

EmbeddingStore::EmbeddingStore(std::vector<std::string> vocabulary, Eigen::MatrixXd vectors)
    : vocabulary_(std::move(vocabulary)), vectors_(std::move(vectors)) {
  if (static_cast<Eigen::Index>(vocabulary_.size()) != vectors_.rows())
    throw DataError("embedding store: vocabulary size does not match vector rows");
  norms_ = vectors_.rowwise().norm();
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!exact_.emplace(vocabulary_[i], i).second)
      throw DataError("embedding store: duplicate vocabulary entry '" + vocabulary_[i] + "'");
    folded_.emplace(utf8::lower(vocabulary_[i]), i);
  }
}

EmbeddingStore EmbeddingStore::parse(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0, dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    const auto head = split_ws(line);
    if (head.size() != 2) fail_line(source, line_no, "expected header 'count dim'");
    const double c = parse_double(head[0], source, line_no);
    const double d = parse_double(head[1], source, line_no);
    if (c < 0 || d < 1 || c != static_cast<double>(static_cast<std::size_t>(c)) ||
        d != static_cast<double>(static_cast<std::size_t>(d)))
      fail_line(source, line_no, "invalid header 'count dim'");
    count = static_cast<std::size_t>(c);
    dim = static_cast<std::size_t>(d);
    break;
  }
  if (dim == 0) throw DataError(std::string(source) + ": missing header line");

  std::vector<std::string> vocab;
  vocab.reserve(count);
  Eigen::MatrixXd vectors(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(dim));
  while (std::getline(in, line)) {
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    const auto fields = split_ws(line);
    if (fields.size() != dim + 1)
      fail_line(source, line_no, "expected a word and " + std::to_string(dim) + " components");
    if (vocab.size() == count) fail_line(source, line_no, "more rows than the header announces");
    const auto row = static_cast<Eigen::Index>(vocab.size());
    for (std::size_t j = 0; j < dim; ++j)
      vectors(row, static_cast<Eigen::Index>(j)) = parse_double(fields[j + 1], source, line_no);
    vocab.emplace_back(fields[0]);
  }
  if (vocab.size() != count)
    throw DataError(std::string(source) + ": header announces " + std::to_string(count) + " rows, found " +
                    std::to_string(vocab.size()));
  return EmbeddingStore(std::move(vocab), std::move(vectors));
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open vector file: " + path.string());
  return parse(in, path.string());
}

std::optional<std::size_t> EmbeddingStore::index_of(std::string_view word) const {
  if (auto it = exact_.find(std::string(word)); it != exact_.end()) return it->second;
  if (auto it = folded_.find(utf8::lower(word)); it != folded_.end()) return it->second;
  return std::nullopt;
}

double EmbeddingStore::cosine(std::size_t a, std::size_t b) const {
  const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
  const double denom = norms_[ia] * norms_[ib];
  if (denom == 0.0) return 0.0;
  return vectors_.row(ia).dot(vectors_.row(ib)) / denom;
}

std::vector<Neighbor> most_similar(const EmbeddingStore& store, std::string_view word, std::size_t k) {
  const auto query = store.index_of(word);
  if (!query || k == 0 || store.is_zero(*query)) return {};
  const auto q = static_cast<Eigen::Index>(*query);
  const Eigen::VectorXd sims = store.vectors() * store.vectors().row(q).transpose();
  const double qnorm = store.vectors().row(q).norm();

  std::vector<Neighbor> all;
  all.reserve(store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (i == *query || store.is_zero(i)) continue;
    const auto ii = static_cast<Eigen::Index>(i);
    all.push_back({store.vocabulary()[i], sims[ii] / (qnorm * store.vectors().row(ii).norm())});
  }
  const auto better = [](const Neighbor& a, const Neighbor& b) {
    return a.cosine != b.cosine ? a.cosine > b.cosine : a.word < b.word;
  };
  const auto keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), better);
  all.resize(keep);
  return all;
}

WordList expand_with_embeddings(const WordList& base, const EmbeddingStore& store, const LemmaTable& lemmas,
                                std::size_t k) {
  if (base.provenance != Provenance::Base)
    throw DataError("embedding expansion expects a base list, got '" + base.name + "' (" +
                    std::string(to_string(base.provenance)) + ")");
  WordList out{base.name, Provenance::Embedding, base.words};
  for (const auto& w : base.words) {
    for (const auto& n : most_similar(store, w, k)) {
      auto lemma = lemmas.lookup(utf8::lower(n.word));
      if (lemma.empty() || utf8::contains_space(lemma)) continue;
      out.words.insert(std::move(lemma));
    }
  }
  return out;
}

// --- knowledge graph ---------------------------------------------------------

std::optional<ConceptRef> parse_concept_uri(std::string_view uri) {
  constexpr std::string_view prefix = "/c/";
  if (!uri.starts_with(prefix)) return std::nullopt;
  uri.remove_prefix(prefix.size());
  const auto slash = uri.find('/');
  if (slash == std::string_view::npos || slash == 0) return std::nullopt;
  ConceptRef ref;
  ref.language = std::string(uri.substr(0, slash));
  auto rest = uri.substr(slash + 1);
  const auto term = rest.substr(0, rest.find('/'));
  if (term.empty()) return std::nullopt;
  std::string t(term);
  std::replace(t.begin(), t.end(), '_', ' ');
  ref.term = utf8::lower(t);
  return ref;
}

std::string concept_uri(std::string_view language, std::string_view term) {
  std::string t = utf8::lower(term);
  std::replace(t.begin(), t.end(), ' ', '_');
  return "/c/" + std::string(language) + "/" + t;
}

KgRelation parse_relation(std::string_view rel) {
  if (rel.starts_with("/r/")) rel.remove_prefix(3);
  if (rel == "Synonym") return KgRelation::Synonym;
  if (rel == "IsA") return KgRelation::IsA;
  return KgRelation::Other;
}

std::vector<std::string> neighbors_from_edges(std::span<const KgEdge> edges, std::string_view word,
                                              std::string_view language) {
  const auto a = utf8::lower(word);
  std::vector<std::string> out;
  const auto admit = [&](const ConceptRef& b) {
    if (b.language != language || b.term == a || utf8::contains_space(b.term)) return;
    out.push_back(b.term);
  };
  for (const auto& e : edges) {
    const bool start_is_a = e.start.language == language && e.start.term == a;
    const bool end_is_a = e.end.language == language && e.end.term == a;
    switch (e.relation) {
      case KgRelation::Synonym:
        if (start_is_a) admit(e.end);
        if (end_is_a) admit(e.start);
        break;
      case KgRelation::IsA:
        if (end_is_a) admit(e.start);  // (B, IsA, A): B is more specific than A
        break;
      case KgRelation::Other:
        break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DumpKgSource DumpKgSource::parse(std::istream& in, std::string_view language, std::string_view source) {
  DumpKgSource dump;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::trim(line).empty() || line.front() == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() >= 4 && cols[0].starts_with("/a/")) cols.erase(cols.begin());
    if (cols.size() < 3) fail_line(source, line_no, "expected columns relation, start, end");
    const auto start = parse_concept_uri(utf8::trim(cols[1]));
    const auto end = parse_concept_uri(utf8::trim(cols[2]));
    if (!start || !end) fail_line(source, line_no, "malformed concept URI");
    if (start->language != language || end->language != language) continue;
    KgEdge edge{parse_relation(utf8::trim(cols[0])), *start, *end};
    if (edge.relation == KgRelation::Other) continue;
    const auto idx = dump.edges_.size();
    dump.by_term_[edge.start.term].push_back(idx);
    if (edge.end.term != edge.start.term) dump.by_term_[edge.end.term].push_back(idx);
    dump.edges_.push_back(std::move(edge));
  }
  return dump;
}

DumpKgSource DumpKgSource::load(const std::filesystem::path& path, std::string_view language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open knowledge-graph dump: " + path.string());
  return parse(in, language, path.string());
}

std::vector<KgEdge> DumpKgSource::edges_for(std::string_view term) {
  std::vector<KgEdge> out;
  if (auto it = by_term_.find(utf8::lower(term)); it != by_term_.end())
    for (auto i : it->second) out.push_back(edges_[i]);
  return out;
}

void RateLimiter::acquire() {
  std::lock_guard lock(mutex_);
  const auto now = std::chrono::steady_clock::now();
  if (last_) {
    const auto ready = *last_ + interval_;
    if (now < ready) std::this_thread::sleep_for(ready - now);
  }
  last_ = std::chrono::steady_clock::now();
}

std::pair<std::vector<KgEdge>, std::optional<std::string>> parse_kg_response(std::string_view body) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw NetworkError(std::string("malformed knowledge-graph response: ") + e.what());
  }
  std::vector<KgEdge> edges;
  if (auto it = j.find("edges"); it != j.end() && it->is_array()) {
    for (const auto& e : *it) {
      const auto id_of = [&](const char* key) -> std::string {
        if (!e.contains(key)) return {};
        const auto& v = e[key];
        if (v.is_string()) return v.get<std::string>();
        if (v.is_object() && v.contains("@id") && v["@id"].is_string()) return v["@id"].get<std::string>();
        return {};
      };
      const auto start = parse_concept_uri(id_of("start"));
      const auto end = parse_concept_uri(id_of("end"));
      if (!start || !end) continue;
      edges.push_back({parse_relation(id_of("rel")), *start, *end});
    }
  }
  std::optional<std::string> next;
  if (auto v = j.find("view"); v != j.end() && v->is_object()) {
    if (auto n = v->find("nextPage"); n != v->end() && n->is_string()) next = n->get<std::string>();
  }
  return {std::move(edges), std::move(next)};
}

// --- cache ---------------------------------------------------------------------

namespace {

constexpr std::string_view kCacheMagic = "# dangerlex kg-cache v1";

std::string file_safe(std::string_view word) {
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned char c : word) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out;
}

}  // namespace

KgDiskCache::KgDiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ExternalServiceError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::filesystem::path KgDiskCache::path_for(std::string_view word) const {
  return dir_ / (file_safe(word) + ".txt");
}

std::optional<std::vector<std::string>> KgDiskCache::get(std::string_view word) const {
  std::ifstream in(path_for(word), std::ios::binary);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != kCacheMagic) return std::nullopt;
  if (!std::getline(in, line) || line != "# word=" + std::string(word)) return std::nullopt;
  std::vector<std::string> out;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

void KgDiskCache::put(std::string_view word, const std::vector<std::string>& candidates) const {
  const auto target = path_for(word);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ExternalServiceError("cannot write cache file " + tmp.string());
    out << kCacheMagic << '\n' << "# word=" << word << '\n';
    for (const auto& c : candidates) out << c << '\n';
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw ExternalServiceError("cannot move cache file into place: " + ec.message());
}

// --- client ----------------------------------------------------------------------

KgClient::KgClient(std::unique_ptr<KgSource> source, std::optional<std::filesystem::path> cache_dir,
                   std::string language)
    : source_(std::move(source)), language_(std::move(language)) {
  if (cache_dir) disk_.emplace(*cache_dir);
  if (!source_ && !disk_) throw UsageError("knowledge-graph client needs a source or a cache directory");
}

std::vector<std::string> KgClient::neighbors(std::string_view word) {
  const auto key = utf8::lower(word);
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = memory_.find(key); it != memory_.end()) return it->second;
  }
  std::optional<std::vector<std::string>> found;
  if (disk_) found = disk_->get(key);
  if (!found) {
    if (!source_) throw CacheMissError("knowledge-graph cache has no entry for '" + key + "'");
    std::vector<KgEdge> edges;
    {
      std::lock_guard lock(source_mutex_);
      edges = source_->edges_for(key);
    }
    found = neighbors_from_edges(edges, key, language_);
    if (disk_) disk_->put(key, *found);
  }
  std::unique_lock lock(cache_mutex_);
  return memory_.emplace(key, std::move(*found)).first->second;
}

std::vector<std::string> kg_neighbors(KgClient& client, std::string_view word) { return client.neighbors(word); }

WordList expand_with_kg(const WordList& base, KgClient& client) {
  if (base.provenance != Provenance::Base)
    throw DataError("knowledge-graph expansion expects a base list, got '" + base.name + "' (" +
                    std::string(to_string(base.provenance)) + ")");
  WordList out{base.name, Provenance::ConceptNet, base.words};
  for (const auto& w : base.words)
    for (auto& n : client.neighbors(w)) out.words.insert(utf8::lower(n));
  return out;
}

}  // namespace dangerlex
