#pragma once

// Leave-one-out nearest-centroid classification.
//
// For a held-out column v of class i only the class-i centroid is
// recomputed without v; the other centroids are the full-class means.
// The prediction is the class with the nearest centroid in Euclidean
// distance, ties going to the lowest class index.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stylo/corpus.hpp"
#include "stylo/reducer.hpp"

namespace stylo {

enum class ProjectionMode {
  None,    // classify in the original feature space
  Paper,   // one G from all n columns, then leave-one-out in G-space
  Strict,  // G refit without the held-out column for every prediction
};

std::string projection_mode_name(ProjectionMode mode);
ProjectionMode parse_projection_mode(const std::string& name);

struct LooConfig {
  ProjectionMode mode = ProjectionMode::None;
  std::optional<Eigen::Index> dims;  // required unless mode is None
  double rank_tol = kDefaultRankTol;
};

struct Prediction {
  std::string doc_id;
  int true_class = 0;
  int predicted_class = 0;
  // Distance to every class centroid; +inf for a centroid that is undefined
  // (the held-out vector was its only member).
  std::vector<double> distances;
};

struct LooResult {
  std::vector<std::string> class_names;
  std::vector<Prediction> predictions;
  std::size_t error_count = 0;
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
  std::vector<std::string> warnings;
};

// Maps an author label to another it should be credited as, e.g.
// HandM -> Madison. Single step: no target may itself be a source.
class AliasMap {
 public:
  AliasMap() = default;
  explicit AliasMap(std::map<std::string, std::string> pairs);

  // "FROM=TO"
  void add(const std::string& from, const std::string& to);
  void add_spec(const std::string& spec);

  std::string resolve(const std::string& label) const;
  bool empty() const { return pairs_.empty(); }
  const std::map<std::string, std::string>& pairs() const { return pairs_; }

 private:
  void validate() const;
  std::map<std::string, std::string> pairs_;
};

// Leave-one-out over raw column data. labels[j] in [0, class_count).
LooResult loo_classify(const Eigen::MatrixXd& data, std::span<const int> labels,
                       std::size_t class_count, const LooConfig& cfg,
                       std::span<const std::string> doc_ids = {});
LooResult loo_classify(const TermDocMatrix& matrix, const LooConfig& cfg);

// Errors where a prediction also counts as correct if either label aliases
// onto the other.
std::size_t adjusted_errors(const LooResult& result, const AliasMap& aliases);

struct SweepResult {
  LooResult full;  // no projection
  std::map<Eigen::Index, LooResult> per_dims;
  // Requested dimensions the data cannot support (l > m); no run is made.
  std::map<Eigen::Index, std::string> skipped;
};

// One full-dimension run plus one projected run per requested dimension.
// `mode` must be Paper or Strict.
SweepResult sweep(const TermDocMatrix& matrix, const std::set<Eigen::Index>& dims,
                  ProjectionMode mode = ProjectionMode::Paper,
                  double rank_tol = kDefaultRankTol);

}  // namespace stylo
