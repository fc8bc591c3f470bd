#pragma once

#include "axdecomp/dataset.hpp"
#include "axdecomp/subspace.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace axd {

enum class Objective { pca, lpp, lde };

/// Accepts "pca", "lpp" or "lde" (case-insensitive); throws ConfigError otherwise.
Objective parse_objective(std::string_view name);
std::string_view to_string(Objective objective);

struct GraphParams {
  Objective objective = Objective::lpp;
  int knn = 10;
  /// Heat-kernel width; empty means 1 / median squared kNN edge length.
  std::optional<double> gamma;

  void validate(Eigen::Index n) const;
};

/// Similarity Laplacian and penalty matrix of the unified graph embedding
/// framework, both n x n.
struct GraphPair {
  Objective objective = Objective::lpp;
  Eigen::MatrixXd laplacian;  ///< L = D - W
  Eigen::MatrixXd penalty;    ///< B
  double gamma = 0.0;         ///< resolved heat-kernel width (LPP only)
  int components = 1;         ///< connected components of the similarity graph
  std::vector<std::string> warnings;
};

/// An orthonormal d x 2 basis of a representative projection.
struct LinearProjection {
  Eigen::MatrixXd basis;
  GraphParams params;
  int order_index = 0;

  Eigen::MatrixXd embed(const Eigen::MatrixXd& samples) const { return samples * basis; }
};

struct DiversityConfig {
  int count = 4;
  double alpha = 1.0;
  double redundancy_tol = 0.05;

  void validate() const;
};

GraphPair build_graphs(const Dataset& ds, const GraphParams& params);

/// 1 / median of squared lengths over the undirected kNN edge set.
double auto_gamma(const Eigen::MatrixXd& samples, int knn);

/// Solves the trace-ratio graph embedding problem
///
///   min tr(V^T (X L X^T + P) V)  s.t.  V^T X B X^T V = I
///
/// for PCA the direction is reversed (largest eigenvalues, P subtracted) and
/// the constraint is V^T V = I. The two selected generalized eigenvectors are
/// orthonormalized and sign-normalized. Rank-deficient data is solved inside
/// its column space; an ill-conditioned constraint matrix gets a small ridge.
LinearProjection solve_projection(const Dataset& ds, const GraphPair& graphs,
                                  const Eigen::MatrixXd& diversity_penalty);

double chordal_distance_sq(const LinearProjection& a, const LinearProjection& b);

/// True when y_prev is (up to relative residual `tol`) an affine image of
/// y_new, or when y_new is collapsed to rank < 2.
bool is_affine_redundant(const Eigen::MatrixXd& y_new, const Eigen::MatrixXd& y_prev,
                         double tol);

struct ProjectionSet {
  std::vector<LinearProjection> projections;
  std::vector<std::string> warnings;
};

/// Sequential diverse search: each new basis is penalised by
/// alpha * s * sum_i V_i V_i^T, where s = tr(X L X^T) / d makes alpha
/// dimensionless. Affine-redundant candidates are retried with alpha doubled
/// (at most five times) before the search stops short.
ProjectionSet find_representative_projections(const Dataset& ds, const GraphParams& params,
                                              const DiversityConfig& cfg);

}  // namespace axd
