#pragma once

// The four tree-feature families: depth-d subtrees anchored anywhere,
// sentence-rooted subtrees truncated at a level, tag counts, and tag counts
// per tree level.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stylo/treebank.hpp"

namespace stylo {

enum class FeatureKind { AllSubtrees, RootedSubtrees, PosCounts, PosByLevel };

struct FeatureSpec {
  FeatureKind kind = FeatureKind::PosCounts;
  // Depth for AllSubtrees, level for RootedSubtrees; unused otherwise.
  int param = 0;

  static FeatureSpec all_subtrees(int depth);
  static FeatureSpec rooted_subtrees(int level);
  static FeatureSpec pos_counts() { return {FeatureKind::PosCounts, 0}; }
  static FeatureSpec pos_by_level() { return {FeatureKind::PosByLevel, 0}; }

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

// CLI spelling: all-subtrees, rooted, pos, pos-by-level.
std::string feature_kind_name(FeatureKind kind);
FeatureKind parse_feature_kind(const std::string& name);
bool feature_kind_has_param(FeatureKind kind);

// Sparse counts keyed by canonical feature string. Stored counts are >= 1.
class FeatureCounts {
 public:
  using Map = std::map<std::string, std::uint64_t>;

  void add(const std::string& key, std::uint64_t n = 1);
  FeatureCounts& operator+=(const FeatureCounts& other);

  std::uint64_t get(const std::string& key) const;
  std::size_t distinct() const { return counts_.size(); }
  std::uint64_t total() const;
  bool empty() const { return counts_.empty(); }

  const Map& map() const { return counts_; }
  Map::const_iterator begin() const { return counts_.begin(); }
  Map::const_iterator end() const { return counts_.end(); }

  friend bool operator==(const FeatureCounts&, const FeatureCounts&) = default;

 private:
  Map counts_;
};

FeatureCounts all_subtrees(const ParseTree& tree, int depth);
std::string rooted_subtree(const ParseTree& tree, int level);
FeatureCounts pos_counts(const ParseTree& tree);
// Keys are "level:tag" with the root at level 1.
FeatureCounts pos_by_level(const ParseTree& tree);

// Sum of per-sentence features; rooted subtrees contribute one key per tree.
FeatureCounts extract(const std::vector<ParseTree>& trees,
                      const FeatureSpec& spec);

}  // namespace stylo
