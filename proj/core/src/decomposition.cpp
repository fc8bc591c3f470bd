#include "axdecomp/decomposition.hpp"

#include "axdecomp/error.hpp"
#include "axdecomp/grassmann.hpp"
#include "axdecomp/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace axd {

double SecantSystem::fit_error(const AxisPair& pair) const {
  return (c.col(pair.p) + c.col(pair.q) - b).norm();
}

SecantSystem build_secant_system(const Eigen::MatrixXd& samples, const Eigen::MatrixXd& basis,
                                 int k) {
  if (basis.rows() != samples.cols()) throw ConfigError("basis does not match data dimension");
  const Eigen::MatrixXd y = samples * basis;
  const auto nbrs = knn_indices(y, k);

  std::set<std::pair<Eigen::Index, Eigen::Index>> unique;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (const auto j : nbrs[i]) unique.emplace(std::min(ii, j), std::max(ii, j));
  }

  SecantSystem sys;
  const auto m = static_cast<Eigen::Index>(unique.size());
  sys.c.resize(m, samples.cols());
  sys.b.resize(m);
  sys.pair_index.assign(unique.begin(), unique.end());
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto [i, j] = sys.pair_index[static_cast<std::size_t>(r)];
    sys.c.row(r) = (samples.row(i) - samples.row(j)).array().square();
    sys.b(r) = (y.row(i) - y.row(j)).squaredNorm();
  }
  return sys;
}

PairChoice select_axis_pair(const SecantSystem& sys, const std::set<AxisPair>& forbidden) {
  const auto d = static_cast<int>(sys.c.cols());
  if (d < 2) throw DataError("need at least two dimensions to select an axis pair");

  // First dimension: best single-column fit; stable sort keeps lower index on ties.
  std::vector<std::pair<double, int>> single;
  single.reserve(static_cast<std::size_t>(d));
  for (int p = 0; p < d; ++p) single.emplace_back((sys.c.col(p) - sys.b).norm(), p);
  std::stable_sort(single.begin(), single.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  for (const auto& [err, p] : single) {
    PairChoice best;
    double best_err = std::numeric_limits<double>::infinity();
    for (int q = 0; q < d; ++q) {
      if (q == p) continue;
      const AxisPair pair(p, q);
      if (forbidden.contains(pair)) continue;
      const double e = sys.fit_error(pair);
      if (e < best_err) {
        best_err = e;
        best = {pair, e};
      }
    }
    if (std::isfinite(best_err)) return best;
  }
  throw DataError("every axis pair is forbidden");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::no_improvement: return "no_improvement";
    case Termination::max_count: return "max_count";
    case Termination::fully_explained: return "fully_explained";
  }
  return "?";
}

void DecompositionConfig::validate(Eigen::Index n) const {
  if (k < 1 || k >= n) {
    throw ConfigError("secant neighbourhood k must lie in [1, n-1], got " + std::to_string(k));
  }
  if (l_max < 1) throw ConfigError("l_max must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
}

Decomposition decompose_single(const Dataset& ds, const LinearProjection& v,
                               const DecompositionConfig& cfg,
                               std::span<const AxisPair> global_set) {
  cfg.validate(ds.n());
  Decomposition out;
  out.projection_index = v.order_index;

  const SecantSystem original = build_secant_system(ds.samples, v.basis, cfg.k);
  Eigen::MatrixXd u = v.basis;
  std::vector<AxisPair> chosen;
  std::set<AxisPair> forbidden;
  double min_distortion = std::numeric_limits<double>::infinity();

  out.terminated_by = Termination::max_count;
  while (static_cast<int>(chosen.size()) < cfg.l_max) {
    const SecantSystem current =
        chosen.empty() ? original : build_secant_system(ds.samples, u, cfg.k);
    PairChoice pick = select_axis_pair(current, forbidden);
    bool reused = false;

    // A fresh pair must beat every globally chosen pair by the factor delta.
    std::optional<PairChoice> best_global;
    for (const auto& g : global_set) {
      if (forbidden.contains(g)) continue;
      const double e = current.fit_error(g);
      if (!best_global || e < best_global->fit_error) best_global = PairChoice{g, e};
    }
    if (best_global && best_global->fit_error <= pick.fit_error / cfg.delta) {
      pick = *best_global;
      reused = true;
    }

    const double distortion = original.fit_error(pick.pair);
    if (!chosen.empty() && distortion >= cfg.delta * min_distortion) {
      out.terminated_by = Termination::no_improvement;
      break;
    }
    min_distortion = std::min(min_distortion, distortion);
    chosen.push_back(pick.pair);
    forbidden.insert(pick.pair);
    out.plots.push_back({pick.pair, 0.0, distortion, reused});

    const Eigen::VectorXd betas = grassmann_least_squares(v.basis, chosen, cfg.lambda);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      out.plots[i].beta = betas(static_cast<Eigen::Index>(i));
    }
    if (static_cast<int>(chosen.size()) >= cfg.l_max) break;

    const auto next = residual_subspace(v.basis, chosen, betas);
    if (!next) {
      out.terminated_by = Termination::fully_explained;
      break;
    }
    if (static_cast<Eigen::Index>(forbidden.size()) ==
        ds.d() * (ds.d() - 1) / 2) {
      out.terminated_by = Termination::no_improvement;
      break;
    }
    u = *next;
  }
  return out;
}

JointDecomposition decompose_joint(const Dataset& ds,
                                   std::span<const LinearProjection> projections,
                                   const DecompositionConfig& cfg) {
  if (projections.empty()) throw ConfigError("no projections to decompose");
  std::vector<const LinearProjection*> ordered;
  for (const auto& p : projections) ordered.push_back(&p);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->order_index < b->order_index; });

  JointDecomposition out;
  for (const auto* proj : ordered) {
    auto dec = decompose_single(ds, *proj, cfg, out.global_set);
    for (const auto& plot : dec.plots) {
      if (std::find(out.global_set.begin(), out.global_set.end(), plot.pair) ==
          out.global_set.end()) {
        out.global_set.push_back(plot.pair);
      }
    }
    out.decompositions.push_back(std::move(dec));
  }
  return out;
}

}  // namespace axd
