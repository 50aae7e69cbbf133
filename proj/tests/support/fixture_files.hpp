#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dangerlex/expansion.hpp"
#include "dangerlex/fixtures.hpp"

namespace dangerlex::testtext {

inline std::string fixture_file(std::string_view relative) {
  const auto files = fixtures::files("/fixture-root");
  const auto it = std::find_if(files.begin(), files.end(), [&](const auto& f) { return f.relative_path == relative; });
  if (it == files.end()) throw std::logic_error("no fixture file " + std::string(relative));
  return it->content;
}

inline EmbeddingStore fixture_store() {
  std::istringstream in(fixture_file("vectors.txt"));
  return EmbeddingStore::parse(in, "vectors.txt");
}

inline DumpKgSource fixture_dump() {
  std::istringstream in(fixture_file("conceptnet.tsv"));
  return DumpKgSource::parse(in, "de", "conceptnet.tsv");
}

inline LemmaTable fixture_lemmas() {
  std::istringstream in(fixture_file("lemmas.tsv"));
  return LemmaTable::parse(in, "lemmas.tsv");
}

// Counts the lookups that reach the wrapped source.
class CountingSource final : public KgSource {
 public:
  explicit CountingSource(DumpKgSource inner, int* calls) : inner_(std::move(inner)), calls_(calls) {}
  std::vector<KgEdge> edges_for(std::string_view term) override {
    ++*calls_;
    return inner_.edges_for(term);
  }

 private:
  DumpKgSource inner_;
  int* calls_;
};

}  // namespace dangerlex::testtext
