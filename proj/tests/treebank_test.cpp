#include <doctest.h>

#include <random>
#include <string>

#include "stylo/error.hpp"
#include "stylo/pipeline.hpp"
#include "stylo/treebank.hpp"
#include "support/generators.hpp"

using namespace stylo;

namespace {

std::string data_file(const std::string& name) {
  return read_file(std::string(STYLO_DATA_DIR) + "/" + name);
}

std::string without_space(std::string s) {
  std::erase_if(s, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  return s;
}

}  // namespace

TEST_CASE("parse a small tree with words") {
  auto trees = parse_trees("(ROOT(S(NP(PRP you))(VP(VBP are))))");
  REQUIRE(trees.size() == 1);
  const auto& root = trees[0];
  CHECK(root.label.str() == "ROOT");
  const auto& s = root.children.at(0);
  CHECK(s.children.at(0).children.at(0).word == "you");
  CHECK(s.children.at(1).children.at(0).word == "are");
}

TEST_CASE("several trees and arbitrary whitespace") {
  auto trees = parse_trees("  (S (NP (DT a)) )\n\n( NP\t(NN b) )\n");
  REQUIRE(trees.size() == 2);
  CHECK(canonicalize(trees[0]) == "(S(NP(DT)))");
  CHECK(canonicalize(trees[1]) == "(NP(NN))");
  CHECK(parse_trees("").empty());
  CHECK(parse_trees(" \n ").empty());
}

TEST_CASE("parse errors report 1-based offsets") {
  auto message = [](const char* text) {
    try {
      parse_trees(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("(S(NP)") == "unbalanced parentheses at offset 7");
  CHECK(message("(S))") == "unbalanced parentheses: unexpected ')' at offset 4");
  CHECK(message("( (S))").find("empty label") != std::string::npos);
  CHECK(message("word (S)").find("bare word outside a node at offset 1") != std::string::npos);
  CHECK(message("(NN a b)").find("unexpected word") != std::string::npos);
  CHECK(message("(NP dog (NN x))").find("both a word and children") != std::string::npos);
}

TEST_CASE("tokens reject whitespace and parentheses") {
  CHECK_THROWS_AS(Token(""), InputError);
  CHECK_THROWS_AS(Token("N P"), InputError);
  CHECK_THROWS_AS(Token("N("), InputError);
  CHECK(Token("PRP$").str() == "PRP$");
}

TEST_CASE("normalizing the example sentence gives the stripped form") {
  ParseTree raw = parse_tree(data_file("example_sentence.mrg"));
  ParseTree norm = normalize(raw);
  CHECK(canonicalize(norm) == without_space(data_file("example_sentence_normalized.txt")));
}

TEST_CASE("normalize drops ROOT, punctuation and words") {
  auto t = parse_tree("(ROOT(S(NP(PRP you))(, ,)(VP(VBP are))(. .)))");
  CHECK(canonicalize(normalize(t)) == "(S(NP(PRP))(VP(VBP)))");
  auto n = normalize(t);
  for_each_node(n, [](const ParseTree& node) { CHECK_FALSE(node.word.has_value()); });
}

TEST_CASE("normalize identity and configuration") {
  auto plain = parse_tree("(S(NP(DT))(VP(VB)))");
  CHECK(normalize(plain) == plain);

  NormalizationConfig keep;
  keep.drop_root = false;
  keep.strip_words = false;
  auto t = parse_tree("(ROOT(S(NP(PRP you))(. .)))");
  CHECK(to_bracketed(normalize(t, keep)) == "(ROOT(S(NP(PRP you))))");
}

TEST_CASE("normalize rejects a ROOT with several children") {
  CHECK_THROWS_AS(normalize(parse_tree("(ROOT(S(NP))(S(VP)))")), InputError);
  CHECK_THROWS_AS(normalize(parse_tree("(. .)")), InputError);
}

TEST_CASE("canonical form") {
  CHECK(canonicalize(parse_tree("(S)")) == "(S)");
  CHECK(canonicalize(parse_tree("( S ( NP ) ( VP ( VB ) ) )")) == "(S(NP)(VP(VB)))");
}

TEST_CASE("stats count sentences and non-punctuation words") {
  CHECK(stats({}) == SentenceStats{0, 0});
  ParseTree sentence = parse_tree(data_file("example_sentence.mrg"));
  CHECK(stats({sentence}) == SentenceStats{1, 28});
  CHECK(stats({sentence, sentence}) == SentenceStats{2, 56});
  CHECK(stats({parse_tree("(S(, ,)(. .))")}) == SentenceStats{1, 0});
}

TEST_CASE("round trip: parse(canonicalize(t)) == t for random trees") {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 1000; ++i) {
    ParseTree t = testing::random_tree(rng);
    auto back = parse_trees(canonicalize(t));
    REQUIRE(back.size() == 1);
    CHECK(back[0] == t);
    CHECK(canonicalize(back[0]) == canonicalize(t));
  }
}

TEST_CASE("round trip with words through to_bracketed") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    ParseTree t = testing::random_raw_tree(rng);
    CHECK(parse_tree(to_bracketed(t)) == t);
  }
}

TEST_CASE("normalization properties on random trees") {
  std::mt19937_64 rng(99);
  const auto punct = NormalizationConfig::default_punctuation();
  for (int i = 0; i < 1000; ++i) {
    ParseTree raw = testing::random_raw_tree(rng);
    ParseTree once = normalize(raw);
    // idempotent
    CHECK(normalize(once) == once);
    // never grows
    CHECK(node_count(once) <= node_count(raw));
    // labels drawn from the input minus punctuation
    std::set<std::string> input_labels;
    for_each_node(raw, [&](const ParseTree& n) { input_labels.insert(n.label.str()); });
    for_each_node(once, [&](const ParseTree& n) {
      CHECK(input_labels.contains(n.label.str()));
      CHECK_FALSE(punct.contains(n.label.str()));
      CHECK_FALSE(n.word.has_value());
    });
  }
}

TEST_CASE("normalization keeps sibling order") {
  auto t = parse_tree("(S(A x)(, ,)(B y)(C z)(. .)(D w))");
  CHECK(canonicalize(normalize(t)) == "(S(A)(B)(C)(D))");
}

TEST_CASE("height and truncate") {
  auto t = parse_tree("(S(NP(DT)(NN))(VP(VB)(NP(NN))))");
  CHECK(height(t) == 3);
  CHECK(height(parse_tree("(S)")) == 0);
  CHECK(canonicalize(truncate(t, 1)) == "(S(NP)(VP))");
  CHECK(canonicalize(truncate(t, 0)) == "(S)");
  CHECK(truncate(t, 10) == t);
}
