#pragma once

// Probabilistic context-free grammars: loading, tree scoring, choosing among
// candidate parses, and top-down sampling of synthetic trees.
//
// Grammar file format, one rule per line:
//
//   # comment
//   S   -> NP VP        [0.80]
//   Det -> "the"        [0.60]
//
// Quoted symbols are terminals (words); bare symbols are nonterminals. A
// terminal must be the only symbol on its right-hand side. The left-hand
// side of the first rule is the start symbol.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/treebank.hpp"

namespace stylo {

struct Symbol {
  std::string name;
  bool terminal = false;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct Rule {
  std::string lhs;
  std::vector<Symbol> rhs;
  double p = 1.0;

  std::string to_string() const;
};

class Grammar {
 public:
  // Per-lhs sums further than this from 1 produce a warning.
  static constexpr double kDefaultSumTolerance = 1e-6;

  Grammar() = default;
  Grammar(std::vector<Rule> rules, std::string start,
          double sum_tol = kDefaultSumTolerance);

  const std::vector<Rule>& rules() const { return rules_; }
  const std::string& start() const { return start_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Index into rules(), or -1.
  int find(const std::string& lhs, const std::vector<Symbol>& rhs) const;
  // Rule indices with the given lhs, in file order.
  const std::vector<int>& expansions(const std::string& lhs) const;
  bool has_rules(const std::string& lhs) const { return by_lhs_.contains(lhs); }
  double probability_sum(const std::string& lhs) const;
  std::vector<std::string> nonterminals() const;

 private:
  std::vector<Rule> rules_;
  std::string start_;
  std::map<std::pair<std::string, std::vector<Symbol>>, int> index_;
  std::map<std::string, std::vector<int>> by_lhs_;
  std::vector<std::string> warnings_;
};

Grammar load_grammar(std::string_view text,
                     double sum_tol = Grammar::kDefaultSumTolerance);

struct RuleUse {
  int rule = 0;
  std::size_t multiplicity = 0;
};

struct ScoredTree {
  ParseTree tree;
  double log_prob = 0.0;
  // Rules in order of first use.
  std::vector<RuleUse> trace;

  double probability() const;
};

// Sum of log p over every internal node. Leaves must carry words; each node
// with a word uses the lexical rule label -> "word".
ScoredTree score_tree(const Grammar& grammar, const ParseTree& tree);

// Highest log-probability candidate; first one wins ties.
ScoredTree best_parse(const Grammar& grammar, const std::vector<ParseTree>& candidates);

struct SampleOptions {
  std::size_t max_depth = 32;  // levels, root = 1, word leaves included in their tag's level
  std::size_t max_attempts = 1000;
};

// Top-down sample from the start symbol with per-lhs renormalized rule
// probabilities. Deterministic for a given seed. Derivations deeper than
// max_depth are discarded and redrawn; throws InputError when no attempt
// succeeds.
ParseTree sample_tree(const Grammar& grammar, std::uint64_t seed,
                      const SampleOptions& options = {});

// `count` samples drawn from one generator seeded with `seed`; the first
// equals sample_tree(grammar, seed, options).
std::vector<ParseTree> sample_trees(const Grammar& grammar, std::uint64_t seed,
                                    std::size_t count, const SampleOptions& options = {});

}  // namespace stylo
