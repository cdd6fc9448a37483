#include <doctest.h>

#include <cmath>

#include "stylo/error.hpp"
#include "stylo/pcfg.hpp"
#include "stylo/pipeline.hpp"

using namespace stylo;

namespace {

std::string data_file(const std::string& name) {
  return read_file(std::string(STYLO_DATA_DIR) + "/" + name);
}

Grammar toy() { return load_grammar(data_file("toy.pcfg")); }

std::string load_error(const std::string& text) {
  try {
    load_grammar(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "no error";
}

bool relatively_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}

}  // namespace

TEST_CASE("loading the toy grammar") {
  Grammar g = toy();
  CHECK(g.start() == "S");
  std::size_t syntactic = 0;
  for (const auto& r : g.rules()) {
    if (!r.rhs.front().terminal) ++syntactic;
  }
  CHECK(syntactic == 17);
  CHECK(g.expansions("VP").size() == 6);
  CHECK(g.probability_sum("S") == doctest::Approx(1.0));
  CHECK(g.probability_sum("Noun") == doctest::Approx(1.10));
  CHECK(g.probability_sum("Pronoun") == doctest::Approx(0.95));
  CHECK(g.warnings() == std::vector<std::string>{"probabilities for Noun sum to 1.1",
                                                  "probabilities for Preposition sum to 1.1",
                                                  "probabilities for Pronoun sum to 0.95"});
  int verb_np_np = g.find("VP", {{"Verb", false}, {"NP", false}, {"NP", false}});
  REQUIRE(verb_np_np >= 0);
  CHECK(g.rules()[static_cast<std::size_t>(verb_np_np)].p == 0.10);
  CHECK(g.find("Det", {{"the", true}}) >= 0);
  CHECK(g.find("Det", {{"the", false}}) < 0);
}

TEST_CASE("grammar syntax errors carry line numbers") {
  CHECK(load_error("S -> NP [0.5]\nNP -> \"x\" 0.5\n").find("grammar line 2") != std::string::npos);
  CHECK(load_error("S NP [1.0]").find("grammar line 1") != std::string::npos);
  CHECK(load_error("S -> [1.0]").find("grammar line 1") != std::string::npos);
  CHECK(load_error("S -> NP [1.5]").find("out of range") != std::string::npos);
  CHECK(load_error("S -> NP [0]").find("out of range") != std::string::npos);
  CHECK(load_error("S -> NP [abc]").find("grammar line 1") != std::string::npos);
  CHECK(load_error("S -> \"a\" NP [1.0]").find("grammar line 1") != std::string::npos);
  CHECK(load_error("S -> NP [0.5]\nS -> NP [0.5]").find("duplicate") != std::string::npos);
  CHECK(load_error("# nothing\n\n").find("no rules") != std::string::npos);
  CHECK(load_error("").find("no rules") != std::string::npos);
}

TEST_CASE("comments, blank lines and spacing") {
  Grammar g = load_grammar("# header\n\n  S ->  A   B [0.5] # tail\nS -> \"w\" [0.5]\n"
                           "A -> \"a\" [1]\nB -> \"b\" [1.0]\n");
  CHECK(g.rules().size() == 4);
  CHECK(g.warnings().empty());
  CHECK(g.rules()[0].to_string() == "S -> A B [0.5]");
  CHECK(g.rules()[1].to_string() == "S -> \"w\" [0.5]");
}

TEST_CASE("scoring the two candidate parses") {
  Grammar g = toy();
  auto candidates = parse_trees(data_file("candidates.mrg"));
  REQUIRE(candidates.size() == 2);
  ScoredTree t1 = score_tree(g, candidates[0]);
  ScoredTree t2 = score_tree(g, candidates[1]);
  const double p1 = .05 * .20 * .20 * .20 * .75 * .30 * .60 * .10 * .40;
  const double p2 = .05 * .10 * .20 * .15 * .75 * .75 * .30 * .60 * .10 * .40;
  CHECK(relatively_close(t1.probability(), p1, 1e-9));
  CHECK(relatively_close(t2.probability(), p2, 1e-9));
  CHECK(relatively_close(t1.probability(), 2.16e-6, 1e-9));
  CHECK(relatively_close(t2.probability(), 6.075e-7, 1e-9));
  // two significant digits
  CHECK(std::round(t1.probability() * 1e7) / 1e7 == doctest::Approx(2.2e-6));
  CHECK(std::round(t2.probability() * 1e8) / 1e8 == doctest::Approx(6.1e-7));

  std::size_t uses = 0;
  for (const auto& u : t1.trace) uses += u.multiplicity;
  CHECK(uses == 9);
  CHECK(t1.trace.front().rule == g.find("S", {{"VP", false}}));

  ScoredTree best = best_parse(g, candidates);
  CHECK(best.tree == candidates[0]);
  ScoredTree reversed = best_parse(g, {candidates[1], candidates[0]});
  CHECK(reversed.tree == candidates[0]);
  CHECK(best_parse(g, {candidates[1], candidates[1]}).tree == candidates[1]);
  CHECK_THROWS_AS(best_parse(g, {}), InputError);
}

TEST_CASE("scoring failures name the offending node") {
  Grammar g = toy();
  auto missing_rule = parse_tree("(S (VP (Verb book) (Det the)))");
  try {
    score_tree(g, missing_rule);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("S/0:VP") != std::string::npos);
  }
  CHECK_THROWS_AS(score_tree(g, parse_tree("(S (VP (Verb fly)))")), InputError);
  CHECK_THROWS_AS(score_tree(g, parse_tree("(S (VP (Verb)))")), InputError);
}

TEST_CASE("sampling is deterministic per seed") {
  Grammar g = toy();
  auto a = sample_trees(g, 42, 50);
  auto b = sample_trees(g, 42, 50);
  CHECK(a == b);
  CHECK(a.front() == sample_tree(g, 42));
  auto c = sample_trees(g, 43, 50);
  CHECK(a != c);
  CHECK(sample_trees(g, 1, 0).empty());
}

TEST_CASE("samples are scorable, within depth, and start at S") {
  Grammar g = toy();
  SampleOptions opt;
  opt.max_depth = 8;
  for (const auto& t : sample_trees(g, 9, 500, opt)) {
    CHECK(t.label.str() == "S");
    CHECK(height(t) + 1 <= 8);
    ScoredTree s = score_tree(g, t);
    CHECK(std::isfinite(s.log_prob));
    CHECK(s.log_prob <= 0.0);
  }
}

TEST_CASE("root rule frequencies follow the grammar") {
  Grammar g = toy();
  auto trees = sample_trees(g, 2024, 10000);
  std::size_t vp_only = 0;
  for (const auto& t : trees) {
    if (t.children.size() == 1 && t.children[0].label.str() == "VP") ++vp_only;
  }
  double freq = static_cast<double>(vp_only) / 10000.0;
  CHECK(std::abs(freq - 0.05) <= 0.02);
}

TEST_CASE("divergent grammars exhaust their attempts") {
  Grammar g = load_grammar("S -> S S [0.9]\nS -> \"x\" [0.1]\n");
  SampleOptions opt;
  opt.max_depth = 4;
  opt.max_attempts = 5;
  CHECK_THROWS_AS(sample_tree(g, 1, opt), InputError);
  Grammar undefined = load_grammar("S -> A [1.0]\n");
  CHECK_THROWS_AS(sample_tree(undefined, 1), InputError);
}
