#pragma once

#include <Eigen/Dense>

#include <vector>

namespace axd {

using NeighborList = std::vector<std::vector<Eigen::Index>>;

/// Brute-force k nearest neighbours of every row of `points` (Euclidean).
/// A point is never its own neighbour; equal distances go to the lower index.
/// Each list is ordered nearest first.
NeighborList knn_indices(const Eigen::MatrixXd& points, int k);

}  // namespace axd
