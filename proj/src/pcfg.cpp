#include "stylo/pcfg.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "stylo/error.hpp"

namespace stylo {

std::string Rule::to_string() const {
  std::string out = lhs + " ->";
  for (const auto& s : rhs) {
    out += ' ';
    out += s.terminal ? "\"" + s.name + "\"" : s.name;
  }
  std::ostringstream p_text;
  p_text << p;
  return out + " [" + p_text.str() + "]";
}

Grammar::Grammar(std::vector<Rule> rules, std::string start, double sum_tol)
    : rules_(std::move(rules)), start_(std::move(start)) {
  if (rules_.empty()) throw InputError("grammar has no rules");
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule& r = rules_[i];
    if (r.rhs.empty()) throw InputError("rule for '" + r.lhs + "' has an empty right-hand side");
    if (!(r.p > 0.0 && r.p <= 1.0)) {
      throw InputError("probability out of range (0,1] in rule " + r.to_string());
    }
    if (!index_.emplace(std::make_pair(r.lhs, r.rhs), static_cast<int>(i)).second) {
      throw InputError("duplicate rule " + r.to_string());
    }
    by_lhs_[r.lhs].push_back(static_cast<int>(i));
  }
  if (!by_lhs_.contains(start_)) {
    throw InputError("start symbol '" + start_ + "' has no rules");
  }
  for (const auto& [lhs, ids] : by_lhs_) {
    double sum = probability_sum(lhs);
    if (std::abs(sum - 1.0) > sum_tol) {
      std::ostringstream w;
      w << "probabilities for " << lhs << " sum to " << sum;
      warnings_.push_back(w.str());
    }
  }
}

int Grammar::find(const std::string& lhs, const std::vector<Symbol>& rhs) const {
  auto it = index_.find(std::make_pair(lhs, rhs));
  return it == index_.end() ? -1 : it->second;
}

const std::vector<int>& Grammar::expansions(const std::string& lhs) const {
  static const std::vector<int> none;
  auto it = by_lhs_.find(lhs);
  return it == by_lhs_.end() ? none : it->second;
}

double Grammar::probability_sum(const std::string& lhs) const {
  double sum = 0.0;
  for (int i : expansions(lhs)) sum += rules_[static_cast<std::size_t>(i)].p;
  return sum;
}

std::vector<std::string> Grammar::nonterminals() const {
  std::vector<std::string> out;
  for (const auto& [lhs, ids] : by_lhs_) out.push_back(lhs);
  return out;
}

namespace {

[[noreturn]] void syntax_error(std::size_t line, const std::string& what) {
  throw InputError("grammar line " + std::to_string(line) + ": " + what);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Splits a rule line into whitespace-separated words, keeping quoted
// terminals intact and dropping a trailing '#' comment.
std::vector<std::string> split_rule_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    if (is_space(line[i])) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t start = i;
    if (line[i] == '"') {
      auto close = line.find('"', i + 1);
      if (close == std::string_view::npos) syntax_error(line_no, "unterminated quote");
      i = close + 1;
    } else {
      while (i < line.size() && !is_space(line[i]) && line[i] != '"') ++i;
    }
    words.emplace_back(line.substr(start, i - start));
  }
  return words;
}

double parse_probability(const std::string& word, std::size_t line_no) {
  if (word.size() < 3 || word.front() != '[' || word.back() != ']') {
    syntax_error(line_no, "expected probability in brackets, got '" + word + "'");
  }
  double p = 0.0;
  const char* first = word.data() + 1;
  const char* last = word.data() + word.size() - 1;
  auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc() || ptr != last) {
    syntax_error(line_no, "malformed probability '" + word + "'");
  }
  if (!(p > 0.0 && p <= 1.0)) {
    syntax_error(line_no, "probability out of range (0,1]: " + word);
  }
  return p;
}

Symbol parse_symbol(const std::string& word, std::size_t line_no) {
  if (word.front() == '"') {
    std::string inner = word.substr(1, word.size() - 2);
    if (!Token::valid(inner)) syntax_error(line_no, "invalid terminal " + word);
    return {inner, true};
  }
  if (!Token::valid(word)) syntax_error(line_no, "invalid symbol '" + word + "'");
  return {word, false};
}

}  // namespace

Grammar load_grammar(std::string_view text, double sum_tol) {
  std::vector<Rule> rules;
  std::map<std::pair<std::string, std::vector<Symbol>>, std::size_t> first_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto words = split_rule_line(line, line_no);
    if (words.empty()) continue;
    if (words.size() < 4 || words[1] != "->") {
      syntax_error(line_no, "expected 'LHS -> symbols [p]'");
    }
    Rule rule;
    rule.lhs = words[0];
    if (!Token::valid(rule.lhs) || rule.lhs.front() == '"') {
      syntax_error(line_no, "invalid left-hand side '" + rule.lhs + "'");
    }
    rule.p = parse_probability(words.back(), line_no);
    for (std::size_t i = 2; i + 1 < words.size(); ++i) {
      rule.rhs.push_back(parse_symbol(words[i], line_no));
    }
    bool any_terminal = false;
    for (const auto& s : rule.rhs) any_terminal = any_terminal || s.terminal;
    if (any_terminal && rule.rhs.size() != 1) {
      syntax_error(line_no, "a terminal must be the only right-hand-side symbol");
    }
    auto [it, inserted] = first_line.emplace(std::make_pair(rule.lhs, rule.rhs), line_no);
    if (!inserted) {
      syntax_error(line_no, "duplicate rule " + rule.to_string() + " (first on line " +
                                std::to_string(it->second) + ")");
    }
    rules.push_back(std::move(rule));
  }
  if (rules.empty()) throw InputError("grammar has no rules");
  std::string start = rules.front().lhs;
  return Grammar(std::move(rules), std::move(start), sum_tol);
}

double ScoredTree::probability() const { return std::exp(log_prob); }

namespace {

void score_node(const Grammar& g, const ParseTree& node, const std::string& path,
                ScoredTree& out, std::map<int, std::size_t>& slot) {
  std::vector<Symbol> rhs;
  if (node.word) {
    rhs.push_back({*node.word, true});
  } else if (node.children.empty()) {
    throw InputError("node " + path + " has neither a word nor children");
  } else {
    for (const auto& child : node.children) rhs.push_back({child.label.str(), false});
  }
  int rule = g.find(node.label.str(), rhs);
  if (rule < 0) {
    Rule missing{node.label.str(), rhs, 1.0};
    std::string text = missing.to_string();
    text = text.substr(0, text.rfind(" ["));
    throw InputError("no grammar rule " + text + " at node " + path);
  }
  out.log_prob += std::log(g.rules()[static_cast<std::size_t>(rule)].p);
  auto [it, inserted] = slot.emplace(rule, out.trace.size());
  if (inserted) out.trace.push_back({rule, 0});
  ++out.trace[it->second].multiplicity;

  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto& child = node.children[i];
    score_node(g, child, path + "/" + std::to_string(i) + ":" + child.label.str(), out, slot);
  }
}

class Sampler {
 public:
  Sampler(const Grammar& g, std::uint64_t seed, const SampleOptions& opt)
      : g_(g), rng_(seed), opt_(opt) {}

  ParseTree draw() {
    for (std::size_t attempt = 0; attempt < opt_.max_attempts; ++attempt) {
      nodes_ = 0;
      ParseTree t;
      if (expand(g_.start(), 1, t)) return t;
    }
    throw InputError("no derivation within depth " + std::to_string(opt_.max_depth) +
                     " after " + std::to_string(opt_.max_attempts) +
                     " attempts; grammar may be divergent");
  }

 private:
  static constexpr std::size_t kNodeBudget = 1u << 20;

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  int choose(const std::string& lhs) {
    const auto& ids = g_.expansions(lhs);
    double u = uniform() * g_.probability_sum(lhs);
    double acc = 0.0;
    for (int id : ids) {
      acc += g_.rules()[static_cast<std::size_t>(id)].p;
      if (u < acc) return id;
    }
    return ids.back();
  }

  bool expand(const std::string& symbol, std::size_t level, ParseTree& out) {
    if (level > opt_.max_depth || ++nodes_ > kNodeBudget) return false;
    if (!g_.has_rules(symbol)) {
      throw InputError("nonterminal '" + symbol + "' has no rules");
    }
    out.label = Token(symbol);
    const Rule& rule = g_.rules()[static_cast<std::size_t>(choose(symbol))];
    if (rule.rhs.front().terminal) {
      out.word = rule.rhs.front().name;
      return true;
    }
    out.children.resize(rule.rhs.size());
    for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
      if (!expand(rule.rhs[i].name, level + 1, out.children[i])) return false;
    }
    return true;
  }

  const Grammar& g_;
  std::mt19937_64 rng_;
  SampleOptions opt_;
  std::size_t nodes_ = 0;
};

}  // namespace

ScoredTree score_tree(const Grammar& grammar, const ParseTree& tree) {
  ScoredTree out;
  out.tree = tree;
  std::map<int, std::size_t> slot;
  score_node(grammar, tree, tree.label.str(), out, slot);
  return out;
}

ScoredTree best_parse(const Grammar& grammar, const std::vector<ParseTree>& candidates) {
  if (candidates.empty()) throw InputError("best_parse needs at least one candidate");
  ScoredTree best = score_tree(grammar, candidates.front());
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    ScoredTree s = score_tree(grammar, candidates[i]);
    if (s.log_prob > best.log_prob) best = std::move(s);
  }
  return best;
}

ParseTree sample_tree(const Grammar& grammar, std::uint64_t seed,
                      const SampleOptions& options) {
  return Sampler(grammar, seed, options).draw();
}

std::vector<ParseTree> sample_trees(const Grammar& grammar, std::uint64_t seed,
                                    std::size_t count, const SampleOptions& options) {
  Sampler sampler(grammar, seed, options);
  std::vector<ParseTree> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.draw());
  return out;
}

}  // namespace stylo
