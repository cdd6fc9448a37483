#include "stylo/treebank.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "stylo/error.hpp"

namespace stylo {

Token::Token(std::string text) : text_(std::move(text)) {
  if (!valid(text_)) {
    throw InputError("invalid token '" + text_ + "'");
  }
}

bool Token::valid(std::string_view text) {
  if (text.empty()) return false;
  return std::none_of(text.begin(), text.end(), [](char c) {
    return c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c));
  });
}

std::set<std::string> NormalizationConfig::default_punctuation() {
  return {"$", "#", "``", "''", "-LRB-", "-RRB-", ",", ".", ":", "\"", "`", "'"};
}

namespace {

class TreeReader {
 public:
  explicit TreeReader(std::string_view text) : text_(text) {}

  std::vector<ParseTree> read_all() {
    std::vector<ParseTree> trees;
    skip_space();
    while (pos_ < text_.size()) {
      if (text_[pos_] == ')') fail("unbalanced parentheses: unexpected ')'");
      if (text_[pos_] != '(') fail("bare word outside a node");
      trees.push_back(read_node());
      skip_space();
    }
    return trees;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(what + " at offset " + std::to_string(pos_ + 1));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string_view read_atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
        break;
      }
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  ParseTree read_node() {
    ++pos_;  // '('
    skip_space();
    if (pos_ >= text_.size()) fail("unbalanced parentheses");
    std::string_view label = read_atom();
    if (label.empty()) fail("empty label");

    ParseTree node;
    node.label = Token(std::string(label));
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) fail("unbalanced parentheses");
      char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        return node;
      }
      if (c == '(') {
        if (node.word) fail("node has both a word and children");
        node.children.push_back(read_node());
        continue;
      }
      if (node.word || !node.children.empty()) {
        fail("unexpected word in node '" + node.label.str() + "'");
      }
      node.word = std::string(read_atom());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void append_canonical(const ParseTree& t, std::string& out, bool with_words) {
  out += '(';
  out += t.label.str();
  if (with_words && t.word) {
    out += ' ';
    out += *t.word;
  }
  for (const auto& child : t.children) append_canonical(child, out, with_words);
  out += ')';
}

std::optional<ParseTree> strip(const ParseTree& t,
                               const NormalizationConfig& cfg) {
  if (cfg.punctuation_labels.contains(t.label.str())) return std::nullopt;
  ParseTree out;
  out.label = t.label;
  if (!cfg.strip_words) out.word = t.word;
  out.children.reserve(t.children.size());
  for (const auto& child : t.children) {
    if (auto kept = strip(child, cfg)) out.children.push_back(std::move(*kept));
  }
  return out;
}

std::size_t count_words(const ParseTree& t,
                        const std::set<std::string>& punctuation) {
  if (punctuation.contains(t.label.str())) return 0;
  std::size_t n = t.word ? 1 : 0;
  for (const auto& child : t.children) n += count_words(child, punctuation);
  return n;
}

}  // namespace

std::vector<ParseTree> parse_trees(std::string_view text) {
  return TreeReader(text).read_all();
}

ParseTree parse_tree(std::string_view text) {
  auto trees = parse_trees(text);
  if (trees.size() != 1) {
    throw InputError("expected exactly one tree, found " +
                     std::to_string(trees.size()));
  }
  return std::move(trees.front());
}

ParseTree normalize(const ParseTree& tree, const NormalizationConfig& cfg) {
  const ParseTree* top = &tree;
  if (cfg.drop_root && tree.label.str() == "ROOT") {
    if (tree.children.size() != 1) {
      throw InputError("ROOT node with " +
                       std::to_string(tree.children.size()) +
                       " children; expected exactly one");
    }
    top = &tree.children.front();
  }
  auto out = strip(*top, cfg);
  if (!out) {
    throw InputError("tree consists only of punctuation ('" +
                     top->label.str() + "')");
  }
  return std::move(*out);
}

std::string canonicalize(const ParseTree& tree) {
  std::string out;
  append_canonical(tree, out, false);
  return out;
}

std::string to_bracketed(const ParseTree& tree) {
  std::string out;
  append_canonical(tree, out, true);
  return out;
}

SentenceStats stats(const std::vector<ParseTree>& trees,
                    const std::set<std::string>& punctuation_labels) {
  SentenceStats s;
  s.sentence_count = trees.size();
  for (const auto& t : trees) s.word_count += count_words(t, punctuation_labels);
  return s;
}

std::size_t node_count(const ParseTree& tree) {
  std::size_t n = 1;
  for (const auto& child : tree.children) n += node_count(child);
  return n;
}

std::size_t height(const ParseTree& tree) {
  std::size_t h = 0;
  for (const auto& child : tree.children) h = std::max(h, 1 + height(child));
  return h;
}

ParseTree truncate(const ParseTree& tree, std::size_t depth) {
  ParseTree out;
  out.label = tree.label;
  if (depth == 0) return out;
  out.word = tree.word;
  out.children.reserve(tree.children.size());
  for (const auto& child : tree.children) {
    out.children.push_back(truncate(child, depth - 1));
  }
  return out;
}

void for_each_node(const ParseTree& tree,
                   const std::function<void(const ParseTree&)>& visit) {
  visit(tree);
  for (const auto& child : tree.children) for_each_node(child, visit);
}

}  // namespace stylo
