#pragma once

#include "axdecomp/dataset.hpp"
#include "axdecomp/neighbors.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace axd {

struct FidelityReport {
  Eigen::VectorXd per_point;
  int k = 30;
  int k_prime = 30;

  double mean() const { return per_point.size() ? per_point.mean() : 0.0; }
};

/// Per-point 0.5 * precision + 0.5 * recall of the embedding's k'-neighbourhoods
/// against the full-dimensional k-neighbourhoods.
FidelityReport fidelity_scores(const Dataset& ds, const Eigen::MatrixXd& embedding, int k,
                               int k_prime);

/// Same, with the full-dimensional neighbourhoods precomputed (nearest first,
/// at least k entries per point).
FidelityReport fidelity_scores(const NeighborList& full_neighbors,
                               const Eigen::MatrixXd& embedding, int k, int k_prime);

FidelityReport aggregate_max_fidelity(std::span<const FidelityReport> reports);

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<long> counts;
};

/// Uniform bins over [0, 1]; the last bin is closed on the right.
Histogram build_histogram(std::span<const double> values, int bins);

}  // namespace axd
