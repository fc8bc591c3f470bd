#pragma once

#include "axdecomp/dataset.hpp"
#include "axdecomp/decomposition.hpp"
#include "axdecomp/graph_embedding.hpp"
#include "axdecomp/subspace.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace axd {

/// values(i, p): distortion of pair i against projection p's secant system.
struct DistortionTable {
  Eigen::MatrixXd values;
  std::vector<AxisPair> pairs;
  double eta0 = 0.95;
};

struct EvidenceScores {
  Eigen::VectorXd mass;           ///< combined belief mu(Z_i)
  Eigen::VectorXd evid;           ///< mass / max mass
  Eigen::MatrixXd per_edge_mass;  ///< eta(i, p)
  std::vector<AxisPair> pairs;
  std::vector<std::string> warnings;

  /// Normalized evidence of a pair; zero for pairs that were never selected.
  double evid_for(const AxisPair& pair) const;
};

DistortionTable fill_distortion_table(const Dataset& ds,
                                      std::span<const LinearProjection> projections,
                                      std::span<const AxisPair> global_set,
                                      const DecompositionConfig& cfg, double eta0 = 0.95);

/// Per-source masses eta = eta0 (1 - e / max e) combined with Dempster's rule
/// over singleton hypotheses: mu = 1 - prod_p (1 - eta_p).
EvidenceScores combine_and_normalize(const DistortionTable& table);

}  // namespace axd
