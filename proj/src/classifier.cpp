#include "stylo/classifier.hpp"

#include <algorithm>
#include <limits>

#include "stylo/error.hpp"

namespace stylo {

std::string projection_mode_name(ProjectionMode mode) {
  switch (mode) {
    case ProjectionMode::None: return "none";
    case ProjectionMode::Paper: return "paper";
    case ProjectionMode::Strict: return "strict";
  }
  return "?";
}

ProjectionMode parse_projection_mode(const std::string& name) {
  if (name == "none") return ProjectionMode::None;
  if (name == "paper") return ProjectionMode::Paper;
  if (name == "strict") return ProjectionMode::Strict;
  throw InputError("unknown leave-one-out mode '" + name + "'");
}

AliasMap::AliasMap(std::map<std::string, std::string> pairs)
    : pairs_(std::move(pairs)) {
  validate();
}

void AliasMap::add(const std::string& from, const std::string& to) {
  if (from.empty() || to.empty()) throw InputError("alias labels must be nonempty");
  auto [it, inserted] = pairs_.emplace(from, to);
  if (!inserted && it->second != to) {
    throw InputError("alias '" + from + "' mapped twice");
  }
  validate();
}

void AliasMap::add_spec(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw InputError("alias must be FROM=TO, got '" + spec + "'");
  }
  add(spec.substr(0, eq), spec.substr(eq + 1));
}

void AliasMap::validate() const {
  for (const auto& [from, to] : pairs_) {
    if (from == to) throw InputError("alias '" + from + "' maps to itself");
    if (pairs_.contains(to)) {
      throw InputError("alias chain " + from + " -> " + to + " -> " +
                       pairs_.at(to) + " is not single-step");
    }
  }
}

std::string AliasMap::resolve(const std::string& label) const {
  auto it = pairs_.find(label);
  return it == pairs_.end() ? label : it->second;
}

namespace {

struct Classes {
  std::vector<std::vector<Eigen::Index>> members;
};

Classes group(std::span<const int> labels, std::size_t class_count) {
  Classes c;
  c.members.resize(class_count);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    int label = labels[j];
    if (label < 0 || static_cast<std::size_t>(label) >= class_count) {
      throw InputError("class label out of range");
    }
    c.members[static_cast<std::size_t>(label)].push_back(static_cast<Eigen::Index>(j));
  }
  for (std::size_t i = 0; i < class_count; ++i) {
    if (c.members[i].empty()) {
      throw InputError("class " + std::to_string(i) + " has no documents");
    }
  }
  return c;
}

// Mean of the listed columns of `space`, skipping column `skip`. Returns
// nullopt when nothing remains.
std::optional<Eigen::VectorXd> mean_without(const Eigen::MatrixXd& space,
                                            const std::vector<Eigen::Index>& cols,
                                            Eigen::Index skip) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(space.rows());
  std::size_t used = 0;
  for (Eigen::Index j : cols) {
    if (j == skip) continue;
    sum += space.col(j);
    ++used;
  }
  if (used == 0) return std::nullopt;
  return sum / static_cast<double>(used);
}

Prediction classify_one(const Eigen::MatrixXd& space, const Classes& classes,
                        const std::vector<Eigen::VectorXd>& full_means,
                        Eigen::Index j, int true_class) {
  Prediction p;
  p.true_class = true_class;
  const std::size_t k = classes.members.size();
  p.distances.assign(k, std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < k; ++c) {
    if (static_cast<int>(c) == true_class) {
      if (auto held = mean_without(space, classes.members[c], j)) {
        p.distances[c] = (space.col(j) - *held).norm();
      }
    } else {
      p.distances[c] = (space.col(j) - full_means[c]).norm();
    }
  }
  int best = -1;
  for (std::size_t c = 0; c < k; ++c) {
    if (p.distances[c] == std::numeric_limits<double>::infinity()) continue;
    if (best < 0 || p.distances[c] < p.distances[static_cast<std::size_t>(best)]) {
      best = static_cast<int>(c);
    }
  }
  if (best < 0) throw InputError("no class centroid is defined for a held-out document");
  p.predicted_class = best;
  return p;
}

std::vector<Eigen::VectorXd> class_means(const Eigen::MatrixXd& space,
                                         const Classes& classes) {
  std::vector<Eigen::VectorXd> means;
  for (const auto& cols : classes.members) {
    means.push_back(*mean_without(space, cols, -1));
  }
  return means;
}

void add_warning(std::vector<std::string>& warnings, const std::string& w) {
  if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) {
    warnings.push_back(w);
  }
}

// Refit G on every column except `skip`, dropping a class left empty.
ProjectionMatrix fit_without(const Eigen::MatrixXd& data, std::span<const int> labels,
                             std::size_t class_count, Eigen::Index skip,
                             Eigen::Index dims, double rank_tol) {
  std::vector<int> remap(class_count, -1);
  std::vector<int> kept_labels;
  std::vector<Eigen::Index> kept_cols;
  int next = 0;
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    if (j == skip) continue;
    auto& slot = remap[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])];
    if (slot < 0) slot = next++;
    kept_labels.push_back(slot);
    kept_cols.push_back(j);
  }
  Eigen::MatrixXd reduced = data(Eigen::all, kept_cols);
  return fit_projection(reduced, kept_labels, static_cast<std::size_t>(next), dims,
                        rank_tol);
}

}  // namespace

LooResult loo_classify(const Eigen::MatrixXd& data, std::span<const int> labels,
                       std::size_t class_count, const LooConfig& cfg,
                       std::span<const std::string> doc_ids) {
  if (static_cast<Eigen::Index>(labels.size()) != data.cols()) {
    throw InputError("label count does not match column count");
  }
  if (!doc_ids.empty() && static_cast<Eigen::Index>(doc_ids.size()) != data.cols()) {
    throw InputError("document id count does not match column count");
  }
  if (cfg.mode != ProjectionMode::None && !cfg.dims) {
    throw InputError("projected leave-one-out needs a target dimension");
  }
  Classes classes = group(labels, class_count);

  LooResult r;
  r.confusion.assign(class_count, std::vector<std::size_t>(class_count, 0));
  for (std::size_t c = 0; c < class_count; ++c) {
    if (classes.members[c].size() == 1) {
      add_warning(r.warnings, "class " + std::to_string(c) +
                                  " has a single document; its own centroid is "
                                  "undefined when it is held out");
    }
  }

  Eigen::MatrixXd space;
  if (cfg.mode == ProjectionMode::Paper) {
    ProjectionMatrix g = fit_projection(data, labels, class_count, *cfg.dims, cfg.rank_tol);
    for (const auto& w : g.warnings) add_warning(r.warnings, w);
    space = project(data, g);
  } else if (cfg.mode == ProjectionMode::None) {
    space = data;
  }
  std::vector<Eigen::VectorXd> means;
  if (cfg.mode != ProjectionMode::Strict) means = class_means(space, classes);

  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    int truth = labels[static_cast<std::size_t>(j)];
    if (cfg.mode == ProjectionMode::Strict) {
      ProjectionMatrix g =
          fit_without(data, labels, class_count, j, *cfg.dims, cfg.rank_tol);
      for (const auto& w : g.warnings) add_warning(r.warnings, w);
      space = project(data, g);
      means = class_means(space, classes);
    }
    Prediction p = classify_one(space, classes, means, j, truth);
    if (!doc_ids.empty()) p.doc_id = doc_ids[static_cast<std::size_t>(j)];
    ++r.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(p.predicted_class)];
    if (p.predicted_class != truth) ++r.error_count;
    r.predictions.push_back(std::move(p));
  }
  for (std::size_t c = 0; c < class_count; ++c) {
    r.class_names.push_back(std::to_string(c));
  }
  return r;
}

LooResult loo_classify(const TermDocMatrix& matrix, const LooConfig& cfg) {
  std::vector<std::string> ids;
  for (const auto& meta : matrix.col_meta) ids.push_back(meta.doc_id);
  LooResult r = loo_classify(matrix.values, matrix.labels, matrix.class_count(), cfg, ids);
  r.class_names = matrix.class_names;
  return r;
}

std::size_t adjusted_errors(const LooResult& result, const AliasMap& aliases) {
  std::size_t errors = 0;
  for (const auto& p : result.predictions) {
    if (p.predicted_class == p.true_class) continue;
    const auto& truth = result.class_names.at(static_cast<std::size_t>(p.true_class));
    const auto& guess = result.class_names.at(static_cast<std::size_t>(p.predicted_class));
    if (aliases.resolve(truth) == guess || truth == aliases.resolve(guess)) continue;
    ++errors;
  }
  return errors;
}

SweepResult sweep(const TermDocMatrix& matrix, const std::set<Eigen::Index>& dims,
                  ProjectionMode mode, double rank_tol) {
  if (mode == ProjectionMode::None) {
    throw InputError("sweep needs a projecting leave-one-out mode");
  }
  SweepResult s;
  s.full = loo_classify(matrix, LooConfig{ProjectionMode::None, std::nullopt, rank_tol});
  for (Eigen::Index l : dims) {
    if (l < 1) throw InputError("projection dimensions must be >= 1");
    if (l > matrix.rows()) {
      s.skipped[l] = std::string(kExceedsRankWarning) + " (requested " +
                     std::to_string(l) + ", vocabulary size " +
                     std::to_string(matrix.rows()) + ")";
      continue;
    }
    s.per_dims.emplace(l, loo_classify(matrix, LooConfig{mode, l, rank_tol}));
  }
  return s;
}

}  // namespace stylo
