#pragma once

#include "axdecomp/subspace.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>

namespace axd {

/// Ridge-regularised extrinsic least squares on the Grassmannian:
///
///   argmin_beta || V V^T - sum_i beta_i Z_i Z_i^T ||_F^2 + lambda ||beta||_2^2
///
/// solved through the normal equations. Z_i Z_i^T is diagonal, so the Gram
/// matrix entries are shared-dimension counts.
Eigen::VectorXd grassmann_least_squares(const Eigen::MatrixXd& v,
                                        std::span<const AxisPair> pairs, double lambda);

/// Eigenvectors of the two largest algebraic eigenvalues of
/// R = V V^T - sum_i beta_i Z_i Z_i^T. Returns nullopt when ||R||_F < 1e-12
/// (the projection is fully explained).
std::optional<Eigen::MatrixXd> residual_subspace(const Eigen::MatrixXd& v,
                                                 std::span<const AxisPair> pairs,
                                                 const Eigen::VectorXd& betas);

/// Shortest path between two planes. frame(t) rotates column k of start_frame
/// towards direction_frame by t * angles[k].
struct GeodesicPath {
  Eigen::MatrixXd start_frame;
  Eigen::MatrixXd direction_frame;
  Eigen::Vector2d angles = Eigen::Vector2d::Zero();

  Eigen::MatrixXd frame(double t) const;
};

GeodesicPath geodesic_path(const Eigen::MatrixXd& v0, const Eigen::MatrixXd& v1);

}  // namespace axd
