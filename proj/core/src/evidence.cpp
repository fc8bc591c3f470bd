#include "axdecomp/evidence.hpp"

#include "axdecomp/error.hpp"

#include <algorithm>
#include <cmath>

namespace axd {

double EvidenceScores::evid_for(const AxisPair& pair) const {
  const auto it = std::find(pairs.begin(), pairs.end(), pair);
  if (it == pairs.end()) return 0.0;
  return evid(static_cast<Eigen::Index>(it - pairs.begin()));
}

DistortionTable fill_distortion_table(const Dataset& ds,
                                      std::span<const LinearProjection> projections,
                                      std::span<const AxisPair> global_set,
                                      const DecompositionConfig& cfg, double eta0) {
  if (global_set.empty()) throw ConfigError("global pair set is empty");
  if (projections.empty()) throw ConfigError("no projections given");
  if (!(eta0 > 0.0 && eta0 < 1.0)) throw ConfigError("eta0 must lie in (0, 1)");
  cfg.validate(ds.n());

  DistortionTable table;
  table.eta0 = eta0;
  table.pairs.assign(global_set.begin(), global_set.end());
  table.values.resize(static_cast<Eigen::Index>(global_set.size()),
                      static_cast<Eigen::Index>(projections.size()));
  for (std::size_t p = 0; p < projections.size(); ++p) {
    const auto sys = build_secant_system(ds.samples, projections[p].basis, cfg.k);
    for (std::size_t i = 0; i < global_set.size(); ++i) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) =
          sys.fit_error(global_set[i]);
    }
  }
  return table;
}

EvidenceScores combine_and_normalize(const DistortionTable& table) {
  if (table.values.size() == 0) throw ConfigError("distortion table is empty");
  if (static_cast<Eigen::Index>(table.pairs.size()) != table.values.rows()) {
    throw ConfigError("distortion table rows do not match its pair list");
  }
  if ((table.values.array() < 0.0).any() || !table.values.allFinite()) {
    throw NumericError("distortions must be finite and non-negative");
  }
  if (!(table.eta0 > 0.0 && table.eta0 < 1.0)) throw ConfigError("eta0 must lie in (0, 1)");

  EvidenceScores out;
  out.pairs = table.pairs;
  const Eigen::Index rows = table.values.rows();
  const double max_all = table.values.maxCoeff();
  if (!(max_all > 0.0)) {
    out.warnings.push_back("all distortions are zero; evidence is uniform");
    out.per_edge_mass = Eigen::MatrixXd::Constant(rows, table.values.cols(), table.eta0);
    out.mass = Eigen::VectorXd::Constant(rows, 1.0 - std::pow(1.0 - table.eta0,
                                                            static_cast<double>(table.values.cols())));
    out.evid = Eigen::VectorXd::Ones(rows);
    return out;
  }

  out.per_edge_mass = table.eta0 * (1.0 - table.values.array() / max_all);
  out.mass.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double disbelief = 1.0;
    for (Eigen::Index p = 0; p < table.values.cols(); ++p) disbelief *= 1.0 - out.per_edge_mass(i, p);
    out.mass(i) = 1.0 - disbelief;
  }
  const double max_mass = out.mass.maxCoeff();
  if (max_mass > 0.0) {
    out.evid = out.mass / max_mass;
  } else {
    out.warnings.push_back("every pair has zero combined mass; evidence is uniform");
    out.evid = Eigen::VectorXd::Ones(rows);
  }
  return out;
}

}  // namespace axd
