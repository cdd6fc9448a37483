#include "stylo/features.hpp"

#include <numeric>

#include "stylo/error.hpp"

namespace stylo {

FeatureSpec FeatureSpec::all_subtrees(int depth) {
  if (depth < 1) throw InputError("subtree depth must be >= 1");
  return {FeatureKind::AllSubtrees, depth};
}

FeatureSpec FeatureSpec::rooted_subtrees(int level) {
  if (level < 1) throw InputError("rooted subtree level must be >= 1");
  return {FeatureKind::RootedSubtrees, level};
}

std::string feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::AllSubtrees: return "all-subtrees";
    case FeatureKind::RootedSubtrees: return "rooted";
    case FeatureKind::PosCounts: return "pos";
    case FeatureKind::PosByLevel: return "pos-by-level";
  }
  return "?";
}

FeatureKind parse_feature_kind(const std::string& name) {
  if (name == "all-subtrees") return FeatureKind::AllSubtrees;
  if (name == "rooted") return FeatureKind::RootedSubtrees;
  if (name == "pos") return FeatureKind::PosCounts;
  if (name == "pos-by-level") return FeatureKind::PosByLevel;
  throw InputError("unknown feature kind '" + name + "'");
}

bool feature_kind_has_param(FeatureKind kind) {
  return kind == FeatureKind::AllSubtrees || kind == FeatureKind::RootedSubtrees;
}

void FeatureCounts::add(const std::string& key, std::uint64_t n) {
  if (n == 0) return;
  counts_[key] += n;
}

FeatureCounts& FeatureCounts::operator+=(const FeatureCounts& other) {
  for (const auto& [key, n] : other.counts_) counts_[key] += n;
  return *this;
}

std::uint64_t FeatureCounts::get(const std::string& key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t FeatureCounts::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) {
                           return acc + kv.second;
                         });
}

namespace {

// Returns the height of `node` and emits its depth-d truncation when the
// node is tall enough. Single post-order pass.
std::size_t collect_subtrees(const ParseTree& node, std::size_t depth,
                             FeatureCounts& out) {
  std::size_t h = 0;
  for (const auto& child : node.children) {
    h = std::max(h, 1 + collect_subtrees(child, depth, out));
  }
  if (h >= depth) out.add(canonicalize(truncate(node, depth)));
  return h;
}

void collect_levels(const ParseTree& node, int level, FeatureCounts& out) {
  out.add(std::to_string(level) + ":" + node.label.str());
  for (const auto& child : node.children) collect_levels(child, level + 1, out);
}

}  // namespace

FeatureCounts all_subtrees(const ParseTree& tree, int depth) {
  if (depth < 1) throw InputError("subtree depth must be >= 1");
  FeatureCounts out;
  collect_subtrees(tree, static_cast<std::size_t>(depth), out);
  return out;
}

std::string rooted_subtree(const ParseTree& tree, int level) {
  if (level < 1) throw InputError("rooted subtree level must be >= 1");
  return canonicalize(truncate(tree, static_cast<std::size_t>(level)));
}

FeatureCounts pos_counts(const ParseTree& tree) {
  FeatureCounts out;
  for_each_node(tree, [&](const ParseTree& n) { out.add(n.label.str()); });
  return out;
}

FeatureCounts pos_by_level(const ParseTree& tree) {
  FeatureCounts out;
  collect_levels(tree, 1, out);
  return out;
}

FeatureCounts extract(const std::vector<ParseTree>& trees,
                      const FeatureSpec& spec) {
  FeatureCounts out;
  for (const auto& t : trees) {
    switch (spec.kind) {
      case FeatureKind::AllSubtrees: out += all_subtrees(t, spec.param); break;
      case FeatureKind::RootedSubtrees: out.add(rooted_subtree(t, spec.param)); break;
      case FeatureKind::PosCounts: out += pos_counts(t); break;
      case FeatureKind::PosByLevel: out += pos_by_level(t); break;
    }
  }
  return out;
}

}  // namespace stylo
