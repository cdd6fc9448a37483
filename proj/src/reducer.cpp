#include "stylo/reducer.hpp"

#include <cmath>

#include "stylo/error.hpp"

namespace stylo {

Centroids centroids(const Eigen::MatrixXd& data, std::span<const int> labels,
                    std::size_t class_count) {
  if (static_cast<Eigen::Index>(labels.size()) != data.cols()) {
    throw InputError("label count does not match column count");
  }
  const Eigen::Index m = data.rows();
  const auto k = static_cast<Eigen::Index>(class_count);

  Centroids c;
  c.per_class = Eigen::MatrixXd::Zero(m, k);
  c.sizes.assign(class_count, 0);
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    int label = labels[static_cast<std::size_t>(j)];
    if (label < 0 || label >= k) throw InputError("class label out of range");
    c.per_class.col(label) += data.col(j);
    ++c.sizes[static_cast<std::size_t>(label)];
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    if (c.sizes[static_cast<std::size_t>(i)] == 0) {
      throw NumericalError("class " + std::to_string(i) + " has no columns");
    }
    c.per_class.col(i) /= static_cast<double>(c.sizes[static_cast<std::size_t>(i)]);
  }
  c.overall = data.rowwise().mean();
  return c;
}

Centroids centroids(const TermDocMatrix& matrix) {
  return centroids(matrix.values, matrix.labels, matrix.class_count());
}

ScatterFactors scatter_factors(const Eigen::MatrixXd& data,
                               std::span<const int> labels,
                               const Centroids& cen) {
  const Eigen::Index k = cen.per_class.cols();
  if (data.rows() != cen.per_class.rows() ||
      static_cast<Eigen::Index>(labels.size()) != data.cols()) {
    throw InputError("scatter_factors: inconsistent dimensions");
  }
  ScatterFactors f;
  f.within.resize(data.rows(), data.cols());
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    f.within.col(j) = data.col(j) - cen.per_class.col(labels[static_cast<std::size_t>(j)]);
  }
  f.between.resize(data.rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    double weight = std::sqrt(static_cast<double>(cen.sizes[static_cast<std::size_t>(i)]));
    f.between.col(i) = weight * (cen.per_class.col(i) - cen.overall);
  }
  f.mixture = data.colwise() - cen.overall;
  return f;
}

ScatterFactors scatter_factors(const TermDocMatrix& matrix, const Centroids& cen) {
  return scatter_factors(matrix.values, matrix.labels, cen);
}

ProjectionMatrix compute_projection(const Eigen::MatrixXd& between,
                                    const Eigen::MatrixXd& within,
                                    Eigen::Index dims, double rank_tol) {
  const Eigen::Index m = between.rows();
  const Eigen::Index k = between.cols();
  const Eigen::Index n = within.cols();
  if (within.rows() != m) throw InputError("H_b and H_w row counts differ");
  if (dims < 1) throw InputError("projection dimension must be >= 1");
  if (dims > m) {
    throw InputError("projection dimension " + std::to_string(dims) +
                     " exceeds feature dimension " + std::to_string(m));
  }
  if (!(rank_tol > 0)) throw InputError("rank tolerance must be positive");

  Eigen::MatrixXd K(k + n, m);
  K.topRows(k) = between.transpose();
  K.bottomRows(n) = within.transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> outer(K, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = outer.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0 || !std::isfinite(sigma(0))) {
    throw NumericalError("scatter factors are identically zero; no variation to project");
  }
  Eigen::Index t = 0;
  while (t < sigma.size() && sigma(t) > rank_tol * sigma(0)) ++t;

  const Eigen::MatrixXd& P = outer.matrixU();
  const Eigen::MatrixXd& Q = outer.matrixV();

  Eigen::JacobiSVD<Eigen::MatrixXd> inner(P.topLeftCorner(k, t), Eigen::ComputeFullV);
  const Eigen::MatrixXd& W = inner.matrixV();  // t x t

  Eigen::MatrixXd scaled = Q.leftCols(t);
  for (Eigen::Index j = 0; j < t; ++j) scaled.col(j) /= sigma(j);

  ProjectionMatrix out;
  out.rank = t;
  out.G = Eigen::MatrixXd::Zero(m, dims);
  if (dims <= t) {
    out.G = scaled * W.leftCols(dims);
  } else {
    out.warnings.emplace_back(kExceedsRankWarning);
    out.G.leftCols(t) = scaled * W;
    if (dims > n) {
      out.warnings.emplace_back(kExceedsColumnsWarning);
    } else {
      // dims <= n < k + n and dims <= m, so the thin basis has these columns.
      out.G.middleCols(t, dims - t) = Q.middleCols(t, dims - t);
    }
  }
  if (!out.G.allFinite()) throw NumericalError("projection has non-finite entries");
  return out;
}

ProjectionMatrix fit_projection(const Eigen::MatrixXd& data,
                                std::span<const int> labels,
                                std::size_t class_count, Eigen::Index dims,
                                double rank_tol) {
  Centroids cen = centroids(data, labels, class_count);
  ScatterFactors f = scatter_factors(data, labels, cen);
  return compute_projection(f.between, f.within, dims, rank_tol);
}

Eigen::MatrixXd project(const Eigen::MatrixXd& data, const ProjectionMatrix& g) {
  if (data.rows() != g.G.rows()) {
    throw InputError("projection expects " + std::to_string(g.G.rows()) +
                     " rows, data has " + std::to_string(data.rows()));
  }
  return g.G.transpose() * data;
}

TermDocMatrix project(const TermDocMatrix& matrix, const ProjectionMatrix& g) {
  TermDocMatrix out;
  out.values = project(matrix.values, g);
  for (Eigen::Index i = 0; i < out.values.rows(); ++i) {
    out.row_keys.push_back("g" + std::to_string(i + 1));
  }
  out.col_meta = matrix.col_meta;
  out.labels = matrix.labels;
  out.class_names = matrix.class_names;
  out.normalized = false;
  return out;
}

}  // namespace stylo
