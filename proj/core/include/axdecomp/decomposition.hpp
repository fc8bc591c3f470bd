#pragma once

#include "axdecomp/dataset.hpp"
#include "axdecomp/graph_embedding.hpp"
#include "axdecomp/subspace.hpp"

#include <Eigen/Dense>

#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace axd {

/// Squared-difference secants over the kNN pairs of a projected embedding.
/// Row r of `c` holds (x_i - x_j)^2 elementwise, b(r) = ||y_i - y_j||^2.
struct SecantSystem {
  Eigen::MatrixXd c;
  Eigen::VectorXd b;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pair_index;

  Eigen::Index rows() const { return c.rows(); }
  /// ||C (e_p + e_q) - b||_2
  double fit_error(const AxisPair& pair) const;
};

/// Neighbourhoods come from the projected coordinates samples * basis; the
/// unordered pairs are deduplicated and kept in lexicographic order.
SecantSystem build_secant_system(const Eigen::MatrixXd& samples, const Eigen::MatrixXd& basis,
                                 int k);

struct PairChoice {
  AxisPair pair;
  double fit_error = 0.0;
};

/// Greedy two-step pair selection. Throws DataError when every pair is forbidden.
PairChoice select_axis_pair(const SecantSystem& sys, const std::set<AxisPair>& forbidden);

struct SelectedPlot {
  AxisPair pair;
  double beta = 0.0;
  double distortion = 0.0;  ///< measured against the original projection
  bool reused = false;      ///< taken from the global set
};

enum class Termination { no_improvement, max_count, fully_explained };
std::string_view to_string(Termination t);

struct Decomposition {
  int projection_index = 0;
  std::vector<SelectedPlot> plots;
  Termination terminated_by = Termination::max_count;
};

struct DecompositionConfig {
  int k = 10;
  int l_max = 5;
  double delta = 0.9;
  double lambda = 1e-3;

  void validate(Eigen::Index n) const;
};

Decomposition decompose_single(const Dataset& ds, const LinearProjection& v,
                               const DecompositionConfig& cfg,
                               std::span<const AxisPair> global_set);

struct JointDecomposition {
  std::vector<Decomposition> decompositions;
  /// Union of all selected pairs, in first-selection order.
  std::vector<AxisPair> global_set;
};

/// Decomposes projections in order_index order, sharing the global set.
JointDecomposition decompose_joint(const Dataset& ds,
                                   std::span<const LinearProjection> projections,
                                   const DecompositionConfig& cfg);

}  // namespace axd
