#include "stylo/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string_view>

#include "stylo/error.hpp"

namespace stylo {

Corpus::Corpus(std::vector<Document> documents)
    : documents_(std::move(documents)) {
  if (documents_.empty()) throw InputError("corpus has no documents");
  std::set<std::string> seen;
  for (std::size_t j = 0; j < documents_.size(); ++j) {
    const auto& doc = documents_[j];
    if (!seen.insert(doc.doc_id).second) {
      throw InputError("duplicate document id '" + doc.doc_id + "'");
    }
    if (doc.trees.empty()) {
      throw InputError("document '" + doc.doc_id + "' has no sentences");
    }
    auto [it, inserted] =
        class_index_.emplace(doc.author, static_cast<int>(classes_.size()));
    if (inserted) {
      classes_.push_back(doc.author);
      members_.emplace_back();
    }
    members_[static_cast<std::size_t>(it->second)].push_back(j);
  }
}

int Corpus::class_of(const std::string& author) const {
  auto it = class_index_.find(author);
  if (it == class_index_.end()) throw InputError("unknown author '" + author + "'");
  return it->second;
}

std::vector<FeatureCounts> document_counts(const Corpus& corpus,
                                           const FeatureSpec& spec) {
  std::vector<FeatureCounts> out;
  out.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) out.push_back(extract(doc.trees, spec));
  return out;
}

AuthorTotals author_totals(const Corpus& corpus,
                           const std::vector<FeatureCounts>& doc_counts) {
  if (doc_counts.size() != corpus.size()) {
    throw InputError("document count mismatch in author_totals");
  }
  AuthorTotals totals;
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    totals[corpus.documents()[j].author] += doc_counts[j];
  }
  return totals;
}

AuthorTotals author_totals(const Corpus& corpus, const FeatureSpec& spec) {
  return author_totals(corpus, document_counts(corpus, spec));
}

Vocabulary top_n_union(const AuthorTotals& totals, std::size_t top_n,
                       const FeatureSpec& spec) {
  if (top_n == 0) throw InputError("top-N must be >= 1");
  std::set<std::string> keys;
  for (const auto& [author, counts] : totals) {
    if (counts.empty()) {
      throw InputError("author '" + author + "' has no features");
    }
    std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(),
                                                              counts.end());
    std::size_t take = std::min(top_n, ranked.size());
    // Count descending, key ascending.
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                      ranked.end(), [](const auto& a, const auto& b) {
                        if (a.second != b.second) return a.second > b.second;
                        return a.first < b.first;
                      });
    for (std::size_t i = 0; i < take; ++i) keys.insert(ranked[i].first);
  }
  return Vocabulary{{keys.begin(), keys.end()}, spec, top_n};
}

UnionIntersection union_intersection_report(const AuthorTotals& totals) {
  UnionIntersection r;
  if (totals.empty()) return r;
  std::set<std::string> all;
  for (const auto& [author, counts] : totals) {
    for (const auto& [key, n] : counts) all.insert(key);
  }
  r.union_size = all.size();
  for (const auto& key : all) {
    bool everywhere = std::all_of(totals.begin(), totals.end(), [&](const auto& kv) {
      return kv.second.get(key) > 0;
    });
    if (everywhere) ++r.intersection_size;
  }
  return r;
}

TermDocMatrix build_matrix(const Corpus& corpus,
                           const std::vector<FeatureCounts>& doc_counts,
                           const Vocabulary& vocabulary, bool normalize) {
  if (vocabulary.keys.empty()) throw InputError("empty vocabulary");
  if (doc_counts.size() != corpus.size()) {
    throw InputError("document count mismatch in build_matrix");
  }
  const auto m = static_cast<Eigen::Index>(vocabulary.size());
  const auto n = static_cast<Eigen::Index>(corpus.size());

  TermDocMatrix out;
  out.values = Eigen::MatrixXd::Zero(m, n);
  out.row_keys = vocabulary.keys;
  out.class_names = corpus.classes();
  out.normalized = normalize;
  out.col_meta.reserve(corpus.size());
  out.labels.reserve(corpus.size());

  std::map<std::string_view, Eigen::Index> row_of;
  for (Eigen::Index i = 0; i < m; ++i) {
    row_of.emplace(vocabulary.keys[static_cast<std::size_t>(i)], i);
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& doc = corpus.documents()[static_cast<std::size_t>(j)];
    out.col_meta.push_back({doc.doc_id, doc.author});
    out.labels.push_back(corpus.class_of(doc.author));
    const auto& counts = doc_counts[static_cast<std::size_t>(j)];
    for (const auto& [key, count] : counts) {
      auto row = row_of.find(key);
      if (row != row_of.end()) out.values(row->second, j) = static_cast<double>(count);
    }
    double sum = out.values.col(j).sum();
    if (sum == 0.0) {
      out.zero_columns.push_back(static_cast<std::size_t>(j));
    } else if (normalize) {
      out.values.col(j) /= sum;
    }
  }
  return out;
}

TermDocMatrix build_matrix(const Corpus& corpus, const Vocabulary& vocabulary,
                           bool normalize) {
  return build_matrix(corpus, document_counts(corpus, vocabulary.spec),
                      vocabulary, normalize);
}

std::vector<std::size_t> segment_sizes(std::size_t total, std::size_t parts) {
  if (parts == 0) throw InputError("segment count must be >= 1");
  if (parts > total) {
    throw InputError("cannot split " + std::to_string(total) +
                     " sentences into " + std::to_string(parts) + " segments");
  }
  std::vector<std::size_t> sizes(parts, total / parts);
  for (std::size_t i = 0; i < total % parts; ++i) ++sizes[i];
  return sizes;
}

std::vector<std::vector<ParseTree>> segment(const std::vector<ParseTree>& trees,
                                            std::size_t parts) {
  std::vector<std::vector<ParseTree>> out;
  auto it = trees.begin();
  for (std::size_t size : segment_sizes(trees.size(), parts)) {
    auto next = it + static_cast<std::ptrdiff_t>(size);
    out.emplace_back(it, next);
    it = next;
  }
  return out;
}

}  // namespace stylo
