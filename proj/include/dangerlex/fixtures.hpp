#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dangerlex/corpus.hpp"

namespace dangerlex {

/// Small synthetic German corpus with hand-written word lists. The word
/// lists are illustrative reconstructions, not the lists used in any study.
namespace fixtures {

struct File {
  std::string relative_path;
  std::string content;
};

/// Two documents of ten paragraphs each, labeled by annotators "ann1" and "ann2".
Corpus corpus();
/// Paragraphs built around planted danger vocabulary.
std::vector<UnitKey> planted_units();

/// Every bundled file, keyed by its path relative to the fixture root.
/// `pipeline.ini` refers to the other files through `root`.
std::vector<File> files(const std::filesystem::path& root);

/// Writes `files(root)` below `root`, creating directories as needed.
std::vector<std::filesystem::path> write(const std::filesystem::path& root);

}  // namespace fixtures
}  // namespace dangerlex
