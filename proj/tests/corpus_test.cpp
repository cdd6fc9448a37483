#include <doctest.h>

#include <random>
#include <set>

#include "stylo/corpus.hpp"
#include "stylo/error.hpp"
#include "support/generators.hpp"

using namespace stylo;

namespace {

Document make_doc(const std::string& id, const std::string& author,
                  std::vector<std::string> trees) {
  Document d;
  d.doc_id = id;
  d.author = author;
  for (const auto& t : trees) d.trees.push_back(parse_tree(t));
  d.stats = {d.trees.size(), 0};
  return d;
}

FeatureCounts counts(std::map<std::string, std::uint64_t> m) {
  FeatureCounts c;
  for (const auto& [k, n] : m) c.add(k, n);
  return c;
}

// Brute-force top-N: repeatedly take the best remaining key.
std::set<std::string> brute_top_n(const FeatureCounts& c, std::size_t n) {
  std::map<std::string, std::uint64_t> left = c.map();
  std::set<std::string> out;
  while (out.size() < n && !left.empty()) {
    auto best = left.begin();
    for (auto it = left.begin(); it != left.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    out.insert(best->first);
    left.erase(best);
  }
  return out;
}

}  // namespace

TEST_CASE("corpus classes follow first appearance") {
  Corpus c({make_doc("d1", "Madison", {"(S(NP))"}), make_doc("d2", "Hamilton", {"(S(VP))"}),
            make_doc("d3", "Madison", {"(S(NP))"})});
  CHECK(c.classes() == std::vector<std::string>{"Madison", "Hamilton"});
  CHECK(c.class_of("Hamilton") == 1);
  CHECK(c.members(0) == std::vector<std::size_t>{0, 2});
  CHECK_THROWS_AS(c.class_of("Jay"), InputError);
}

TEST_CASE("corpus rejects bad input") {
  CHECK_THROWS_AS(Corpus({}), InputError);
  CHECK_THROWS_AS(Corpus({make_doc("d", "A", {"(S)"}), make_doc("d", "B", {"(S)"})}),
                  InputError);
  CHECK_THROWS_AS(Corpus({make_doc("d", "A", {})}), InputError);
}

TEST_CASE("top-N union of two authors") {
  AuthorTotals totals;
  totals["A"] = counts({{"x", 5}, {"y", 3}, {"z", 1}});
  totals["B"] = counts({{"y", 4}, {"w", 4}, {"x", 1}});
  Vocabulary v1 = top_n_union(totals, 1);
  // B ties y/w at 4; key order picks w.
  CHECK(v1.keys == std::vector<std::string>{"w", "x"});
  Vocabulary v2 = top_n_union(totals, 2);
  CHECK(v2.keys == std::vector<std::string>{"w", "x", "y"});
  CHECK(top_n_union(totals, 100).keys == std::vector<std::string>{"w", "x", "y", "z"});
  CHECK_THROWS_AS(top_n_union(totals, 0), InputError);

  auto r = union_intersection_report(totals);
  CHECK(r.union_size == 4);
  CHECK(r.intersection_size == 2);
}

TEST_CASE("vocabulary grows monotonically with N") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    AuthorTotals totals;
    int authors = 1 + static_cast<int>(rng() % 4);
    for (int a = 0; a < authors; ++a) {
      FeatureCounts c;
      int keys = 1 + static_cast<int>(rng() % 12);
      for (int i = 0; i < keys; ++i) c.add("k" + std::to_string(rng() % 20), 1 + rng() % 5);
      totals["a" + std::to_string(a)] = c;
    }
    std::set<std::string> prev;
    for (std::size_t n = 1; n <= 8; ++n) {
      Vocabulary v = top_n_union(totals, n);
      CHECK(std::is_sorted(v.keys.begin(), v.keys.end()));
      std::set<std::string> keys(v.keys.begin(), v.keys.end());
      CHECK(keys.size() == v.size());
      CHECK(std::includes(keys.begin(), keys.end(), prev.begin(), prev.end()));
      // each author contributes min(N, distinct) keys whose counts dominate the rest
      for (const auto& [author, c] : totals) {
        std::size_t taken = 0;
        std::uint64_t worst_in = UINT64_MAX;
        for (const auto& k : brute_top_n(c, n)) {
          ++taken;
          worst_in = std::min(worst_in, c.get(k));
        }
        CHECK(taken == std::min(n, c.distinct()));
        std::size_t above = 0;
        for (const auto& [k, cnt] : c) {
          if (cnt > worst_in) {
            ++above;
            CHECK(keys.contains(k));
          }
        }
        CHECK(above <= n);
      }
      prev = std::move(keys);
    }
  }
}

TEST_CASE("top-N union matches a deterministic oracle exactly") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    AuthorTotals totals;
    for (int a = 0; a < 3; ++a) {
      FeatureCounts c;
      for (int i = 0; i < 10; ++i) c.add("k" + std::to_string(rng() % 15), 1 + rng() % 4);
      totals["a" + std::to_string(a)] = c;
    }
    std::size_t n = 1 + rng() % 6;
    std::set<std::string> expected;
    for (const auto& [author, c] : totals) {
      std::vector<std::pair<std::uint64_t, std::string>> ranked;
      for (const auto& [k, cnt] : c) ranked.emplace_back(cnt, k);
      std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
      });
      for (std::size_t i = 0; i < std::min(n, ranked.size()); ++i) expected.insert(ranked[i].second);
    }
    Vocabulary v = top_n_union(totals, n);
    CHECK(v.keys == std::vector<std::string>(expected.begin(), expected.end()));
  }
}

TEST_CASE("matrix is column normalized in vocabulary order") {
  Corpus corpus({make_doc("d1", "A", {"(S(NP)(VP))", "(S(NP))"}),
                 make_doc("d2", "B", {"(S(VP(VB)))"}),
                 make_doc("d3", "B", {"(X)"})});
  Vocabulary v = top_n_union(author_totals(corpus, FeatureSpec::pos_counts()), 5,
                             FeatureSpec::pos_counts());
  CHECK(v.keys == std::vector<std::string>{"NP", "S", "VB", "VP", "X"});
  TermDocMatrix raw = build_matrix(corpus, v, false);
  Eigen::MatrixXd expected(5, 3);
  expected << 2, 0, 0,  //
      2, 1, 0,          //
      0, 1, 0,          //
      1, 1, 0,          //
      0, 0, 1;
  CHECK(raw.values == expected);
  CHECK(raw.labels == std::vector<int>{0, 1, 1});
  CHECK(raw.col_meta[1].doc_id == "d2");

  TermDocMatrix norm = build_matrix(corpus, v, true);
  for (Eigen::Index j = 0; j < 3; ++j) CHECK(norm.values.col(j).sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm.values(0, 0) == doctest::Approx(0.4));
  CHECK(norm.zero_columns.empty());
}

TEST_CASE("documents without vocabulary features stay zero and are flagged") {
  Corpus corpus({make_doc("d1", "A", {"(S(NP))"}), make_doc("d2", "B", {"(X)"})});
  Vocabulary v;
  v.keys = {"NP", "S"};
  v.spec = FeatureSpec::pos_counts();
  TermDocMatrix m = build_matrix(corpus, v, true);
  CHECK(m.zero_columns == std::vector<std::size_t>{1});
  CHECK(m.values.col(1).isZero());
}

TEST_CASE("column sums of raw counts equal in-vocabulary totals") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Document> docs;
    for (int d = 0; d < 4; ++d) {
      Document doc;
      doc.doc_id = "d" + std::to_string(d);
      doc.author = d % 2 ? "A" : "B";
      for (int s = 0; s < 3; ++s) doc.trees.push_back(testing::random_tree(rng, 3));
      docs.push_back(std::move(doc));
    }
    Corpus corpus(std::move(docs));
    auto spec = FeatureSpec::pos_counts();
    auto dc = document_counts(corpus, spec);
    Vocabulary v = top_n_union(author_totals(corpus, dc), 1 + rng() % 5, spec);
    TermDocMatrix m = build_matrix(corpus, dc, v, false);
    std::set<std::string> keys(v.keys.begin(), v.keys.end());
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      double in_vocab = 0;
      for (const auto& [k, n] : dc[j]) {
        if (keys.contains(k)) in_vocab += static_cast<double>(n);
      }
      CHECK(m.values.col(static_cast<Eigen::Index>(j)).sum() == in_vocab);
    }
    TermDocMatrix norm = build_matrix(corpus, dc, v, true);
    for (Eigen::Index j = 0; j < norm.cols(); ++j) {
      if (norm.values.col(j).isZero()) continue;
      CHECK(std::abs(norm.values.col(j).sum() - 1.0) <= 1e-12);
    }
    // the full distinct-key vocabulary loses no counts
    Vocabulary all = top_n_union(author_totals(corpus, dc), 1000, spec);
    TermDocMatrix full = build_matrix(corpus, dc, all, false);
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      CHECK(full.values.col(static_cast<Eigen::Index>(j)).sum() == static_cast<double>(dc[j].total()));
    }
  }
}

TEST_CASE("segment sizes") {
  CHECK(segment_sizes(1176, 2) == std::vector<std::size_t>{588, 588});
  CHECK(segment_sizes(2559, 4) == std::vector<std::size_t>{640, 640, 640, 639});
  CHECK(segment_sizes(5, 1) == std::vector<std::size_t>{5});
  CHECK(segment_sizes(7, 3) == std::vector<std::size_t>{3, 2, 2});
  CHECK_THROWS_AS(segment_sizes(3, 4), InputError);
  CHECK_THROWS_AS(segment_sizes(3, 0), InputError);

  std::vector<ParseTree> trees;
  for (int i = 0; i < 7; ++i) trees.push_back(parse_tree("(S" + std::to_string(i) + ")"));
  auto parts = segment(trees, 3);
  REQUIRE(parts.size() == 3);
  CHECK(canonicalize(parts[0][0]) == "(S0)");
  CHECK(canonicalize(parts[1][0]) == "(S3)");
  CHECK(canonicalize(parts[2][1]) == "(S6)");
}
