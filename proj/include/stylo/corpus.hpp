#pragma once

// Documents grouped by author, per-author top-N feature selection, and the
// column-normalized term-by-document matrix.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "stylo/features.hpp"
#include "stylo/treebank.hpp"

namespace stylo {

struct Document {
  std::string doc_id;
  std::string author;
  std::vector<ParseTree> trees;  // normalized
  SentenceStats stats;           // taken before normalization
};

class Corpus {
 public:
  // Classes are numbered in order of first appearance of each author.
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t size() const { return documents_.size(); }

  int class_of(const std::string& author) const;
  // Document indices belonging to class i (the index set N_i).
  const std::vector<std::size_t>& members(int class_index) const {
    return members_.at(static_cast<std::size_t>(class_index));
  }

 private:
  std::vector<Document> documents_;
  std::vector<std::string> classes_;
  std::map<std::string, int> class_index_;
  std::vector<std::vector<std::size_t>> members_;
};

struct Vocabulary {
  std::vector<std::string> keys;  // sorted, distinct
  FeatureSpec spec;
  std::size_t top_n = 0;

  std::size_t size() const { return keys.size(); }
};

struct ColumnMeta {
  std::string doc_id;
  std::string author;
};

struct TermDocMatrix {
  Eigen::MatrixXd values;  // m x n
  std::vector<std::string> row_keys;
  std::vector<ColumnMeta> col_meta;
  // Class index per column, and class names indexed by it.
  std::vector<int> labels;
  std::vector<std::string> class_names;
  bool normalized = false;
  // Columns whose raw counts were all zero (left unscaled).
  std::vector<std::size_t> zero_columns;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  std::size_t class_count() const { return class_names.size(); }
};

using AuthorTotals = std::map<std::string, FeatureCounts>;

// Features of each document, in corpus order.
std::vector<FeatureCounts> document_counts(const Corpus& corpus,
                                           const FeatureSpec& spec);

AuthorTotals author_totals(const Corpus& corpus, const FeatureSpec& spec);
AuthorTotals author_totals(const Corpus& corpus,
                           const std::vector<FeatureCounts>& doc_counts);

// Per author, the N highest-count keys (ties by key order); returns the
// sorted union across authors.
Vocabulary top_n_union(const AuthorTotals& totals, std::size_t top_n,
                       const FeatureSpec& spec = {});

struct UnionIntersection {
  std::size_t union_size = 0;
  std::size_t intersection_size = 0;
};

UnionIntersection union_intersection_report(const AuthorTotals& totals);

TermDocMatrix build_matrix(const Corpus& corpus, const Vocabulary& vocabulary,
                           bool normalize = true);
TermDocMatrix build_matrix(const Corpus& corpus,
                           const std::vector<FeatureCounts>& doc_counts,
                           const Vocabulary& vocabulary, bool normalize = true);

// Contiguous split into `parts` pieces whose sizes differ by at most one;
// earlier pieces take the extra sentences.
std::vector<std::vector<ParseTree>> segment(const std::vector<ParseTree>& trees,
                                            std::size_t parts);

// Segment sizes only, as used by segment().
std::vector<std::size_t> segment_sizes(std::size_t total, std::size_t parts);

}  // namespace stylo
