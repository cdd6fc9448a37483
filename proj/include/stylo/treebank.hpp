#pragma once

// Constituency trees in Penn-Treebank S-expression form.
//
//   (ROOT(S(NP(PRP you))(VP(VBP are))))
//
// A node is "(" label children... ")" where a leaf may carry a single word.
// Whitespace is insignificant except as a separator between label and word.

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// A POS or syntactic tag. Nonempty, no parentheses, no whitespace.
class Token {
 public:
  Token() = default;
  explicit Token(std::string text);

  const std::string& str() const { return text_; }

  static bool valid(std::string_view text);

  friend bool operator==(const Token&, const Token&) = default;
  friend auto operator<=>(const Token&, const Token&) = default;

 private:
  std::string text_;
};

struct ParseTree {
  Token label;
  std::vector<ParseTree> children;
  // Terminal word; only on childless nodes, and only before word stripping.
  std::optional<std::string> word;

  bool is_leaf() const { return children.empty(); }

  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

struct NormalizationConfig {
  bool drop_root = true;
  bool strip_words = true;
  std::set<std::string> punctuation_labels = default_punctuation();

  static std::set<std::string> default_punctuation();
};

struct SentenceStats {
  std::size_t sentence_count = 0;
  std::size_t word_count = 0;

  SentenceStats& operator+=(const SentenceStats& other) {
    sentence_count += other.sentence_count;
    word_count += other.word_count;
    return *this;
  }
  friend bool operator==(const SentenceStats&, const SentenceStats&) = default;
};

// Parses every top-level S-expression in `text`, in order. Throws InputError
// with a 1-based byte offset on malformed input.
std::vector<ParseTree> parse_trees(std::string_view text);

// Convenience for a text holding exactly one tree.
ParseTree parse_tree(std::string_view text);

// Drops the ROOT wrapper, punctuation nodes (with their subtrees) and leaf
// words as configured. Throws InputError on a ROOT with more than one child,
// or when the tree itself is punctuation and would vanish entirely.
ParseTree normalize(const ParseTree& tree, const NormalizationConfig& cfg = {});

// "(" label children ")" with no whitespace. Words, if present, are ignored;
// the result is the feature identity of the tree shape.
std::string canonicalize(const ParseTree& tree);

// Like canonicalize but keeps words, "(NN dinner)"; round-trips through
// parse_trees for trees that still carry words.
std::string to_bracketed(const ParseTree& tree);

// Sentence and word counts for pre-normalization trees. Words under a
// punctuation label are not counted.
SentenceStats stats(const std::vector<ParseTree>& trees,
                    const std::set<std::string>& punctuation_labels =
                        NormalizationConfig::default_punctuation());

std::size_t node_count(const ParseTree& tree);

// Longest downward path in edges; a single node has height 0.
std::size_t height(const ParseTree& tree);

// Copy of the tree with nodes `depth` edges below the root turned into
// childless leaves. depth 0 keeps only the root label.
ParseTree truncate(const ParseTree& tree, std::size_t depth);

// Pre-order visit of every node.
void for_each_node(const ParseTree& tree,
                   const std::function<void(const ParseTree&)>& visit);

}  // namespace stylo
