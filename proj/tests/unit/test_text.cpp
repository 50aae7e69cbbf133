#include <doctest.h>

#include "dangerlex/segmentation.hpp"
#include "dangerlex/utf8.hpp"

using namespace dangerlex;

TEST_CASE("tokenize marks stopwords and keeps byte offsets") {
  const auto tokens = tokenize("Der Sturm tobte.", {"der"});
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0] == Token{"der", true, 0, 3});
  CHECK(tokens[1] == Token{"sturm", false, 4, 5});
  CHECK(tokens[2] == Token{"tobte", false, 10, 5});
}

TEST_CASE("tokenize on empty input") { CHECK(tokenize("").empty()); }

TEST_CASE("tokenize splits on an em dash; offsets map back into the text") {
  const std::string text = "Blut—Blut!";
  const auto tokens = tokenize(text);
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0].offset != tokens[1].offset);
  for (const auto& t : tokens) CHECK(utf8::lower(text.substr(t.offset, t.length)) == t.text);
  CHECK(tokens[0].offset == text.find("Blut"));
  CHECK(tokens[1].offset == text.find("Blut", 1));
}

TEST_CASE("tokenize lowercases umlauts and keeps sharp s") {
  const auto tokens = tokenize("ÜBER Öl und Straße");
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[0].text == "über");
  CHECK(tokens[1].text == "öl");
  CHECK(tokens[3].text == "straße");
  CHECK(tokens[3].length == std::string("Straße").size());
}

TEST_CASE("tokenize never produces empty tokens and ignores digits") {
  for (const auto& t : tokenize("1848: 3 Männer, 2 Frauen ... !!")) CHECK(!t.text.empty());
  CHECK(tokenize("12 34 -- !!").empty());
}

TEST_CASE("invalid UTF-8 is a separator, not a crash") {
  const std::string text = std::string("ab") + '\xff' + "cd";
  const auto tokens = tokenize(text);
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[1].offset == 3);
}

TEST_CASE("utf8 helpers") {
  CHECK(utf8::trim("  \n a b \t") == "a b");
  CHECK(utf8::contains_space("blanke klinge"));
  CHECK_FALSE(utf8::contains_space("klinge"));
  CHECK(utf8::lower("ÄÖÜ Σ Ж") == "äöü σ ж");
}
