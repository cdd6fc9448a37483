#pragma once

// Class centroids, scatter-matrix factors, and the structure-preserving
// dimension-reducing projection G computed from the factors alone via a
// generalized SVD. No m x m matrix is ever formed, so m may be far larger
// than the number of documents.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stylo/corpus.hpp"

namespace stylo {

inline constexpr double kDefaultRankTol = 1e-12;

struct Centroids {
  Eigen::MatrixXd per_class;  // m x k, column i is c(i)
  Eigen::VectorXd overall;    // c
  std::vector<Eigen::Index> sizes;  // n_i
};

// Factors with S_w = H_w H_w^T, S_b = H_b H_b^T, S_m = H_m H_m^T.
// H_w and H_m keep the data's column order rather than grouping by class;
// the products are the same.
struct ScatterFactors {
  Eigen::MatrixXd within;   // H_w, m x n
  Eigen::MatrixXd between;  // H_b, m x k
  Eigen::MatrixXd mixture;  // H_m, m x n
};

struct ProjectionMatrix {
  Eigen::MatrixXd G;  // m x l
  Eigen::Index rank = 0;  // t = rank of [H_b^T; H_w^T]
  std::vector<std::string> warnings;

  Eigen::Index dims() const { return G.cols(); }
};

// Text printed by the reduction when more columns are requested than the
// factor pair has nontrivial generalized singular values.
inline constexpr const char* kExceedsRankWarning =
    "Number of columns of G requested exceeds number of nontrivial singular "
    "values pairs of H_b^T and H_w^T";
inline constexpr const char* kExceedsColumnsWarning =
    "And it exceeds the number of columns of G";

// labels[j] in [0, k) is the class of column j. Throws NumericalError on an
// empty class.
Centroids centroids(const Eigen::MatrixXd& data, std::span<const int> labels,
                    std::size_t class_count);
Centroids centroids(const TermDocMatrix& matrix);

ScatterFactors scatter_factors(const Eigen::MatrixXd& data,
                               std::span<const int> labels,
                               const Centroids& cen);
ScatterFactors scatter_factors(const TermDocMatrix& matrix, const Centroids& cen);

// G maximizing tr((G^T S_w G)^-1 (G^T S_b G)), from the factors.
//   1. K = [H_b^T; H_w^T] = P diag(R) Q^T, t = #{sigma > rank_tol * sigma_max}
//   2. P(1:k, 1:t) = U Sigma W^T
//   3. G = Q(:,1:t) R^-1 W(:,1:l)
// When l > t the first t columns are as above; the rest are filled from
// Q(:, t+1:l), or left zero when l also exceeds n.
ProjectionMatrix compute_projection(const Eigen::MatrixXd& between,
                                    const Eigen::MatrixXd& within,
                                    Eigen::Index dims,
                                    double rank_tol = kDefaultRankTol);

// Centroids, factors and projection in one call.
ProjectionMatrix fit_projection(const Eigen::MatrixXd& data,
                                std::span<const int> labels,
                                std::size_t class_count, Eigen::Index dims,
                                double rank_tol = kDefaultRankTol);

Eigen::MatrixXd project(const Eigen::MatrixXd& data, const ProjectionMatrix& g);
TermDocMatrix project(const TermDocMatrix& matrix, const ProjectionMatrix& g);

}  // namespace stylo
