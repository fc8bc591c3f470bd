#include "axdecomp/pipeline.hpp"

#include "axdecomp/error.hpp"
#include "axdecomp/evidence.hpp"
#include "axdecomp/neighbors.hpp"
#include "axdecomp/version.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace axd {
namespace {

// Runs one stage and prefixes any engine error with the module name.
template <typename F>
auto stage(const char* module, F&& fn) -> decltype(fn()) {
  const std::string tag = std::string("[") + module + "] ";
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(tag + e.what());
  } catch (const DataError& e) {
    throw DataError(tag + e.what());
  } catch (const NumericError& e) {
    throw NumericError(tag + e.what());
  }
}

std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

void AnalysisConfig::validate() const {
  parse_objective(objective);
  if (projections < 1) throw ConfigError("--projections must be at least 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("--alpha must be >= 0");
  if (knn < 1) throw ConfigError("--knn must be at least 1");
  if (gamma && !(*gamma > 0.0 && std::isfinite(*gamma))) {
    throw ConfigError("--gamma must be positive");
  }
  if (k < 1) throw ConfigError("--k must be at least 1");
  if (l_max < 1) throw ConfigError("--lmax must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("--delta must lie in (0, 1)");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("--lambda must be >= 0");
  if (!(eta0 > 0.0 && eta0 < 1.0)) throw ConfigError("--eta0 must lie in (0, 1)");
  if (!(evidence_filter >= 0.0 && evidence_filter <= 1.0)) {
    throw ConfigError("--filter must lie in [0, 1]");
  }
  if (bins < 1) throw ConfigError("--bins must be at least 1");
  if (fidelity_k < 1 || fidelity_k_prime < 1) {
    throw ConfigError("fidelity neighbourhoods must be at least 1");
  }
}

GraphParams AnalysisConfig::graph_params() const {
  GraphParams g;
  g.objective = parse_objective(objective);
  g.knn = knn;
  g.gamma = gamma;
  return g;
}

DiversityConfig AnalysisConfig::diversity() const {
  DiversityConfig c;
  c.count = projections;
  c.alpha = alpha;
  return c;
}

DecompositionConfig AnalysisConfig::decomposition() const {
  DecompositionConfig c;
  c.k = k;
  c.l_max = l_max;
  c.delta = delta;
  c.lambda = lambda;
  return c;
}

const LinearNode* AnalysisBundle::find_linear(const std::string& id) const {
  const auto it = std::find_if(linear_nodes.begin(), linear_nodes.end(),
                               [&](const auto& node) { return node.id == id; });
  return it == linear_nodes.end() ? nullptr : &*it;
}

const AxisNode* AnalysisBundle::find_axis(const std::string& id) const {
  const auto it = std::find_if(axis_nodes.begin(), axis_nodes.end(),
                               [&](const auto& node) { return node.id == id; });
  return it == axis_nodes.end() ? nullptr : &*it;
}

AnalysisBundle run_analysis(const AnalysisConfig& cfg) {
  cfg.validate();
  const Dataset raw = stage("dataset", [&] { return load_csv(cfg.input, cfg.label); });
  return run_analysis(raw, cfg);
}

AnalysisBundle run_analysis(const Dataset& raw, const AnalysisConfig& cfg) {
  cfg.validate();
  AnalysisBundle bundle;
  bundle.schema_version = kBundleSchemaVersion;
  bundle.engine_version = std::string(kVersion);
  bundle.config = cfg;
  bundle.config.output.clear();

  const Dataset ds = stage("dataset", [&] { return standardize(raw); });
  for (const auto& name : ds.removed_columns) {
    bundle.warnings.push_back("dropped zero-variance column '" + name + "'");
  }
  const Eigen::Index n = ds.n();
  const Eigen::Index d = ds.d();

  const GraphParams gp = cfg.graph_params();
  const DecompositionConfig dc = cfg.decomposition();
  stage("graph_embedding", [&] {
    gp.validate(n);
    if (gp.objective == Objective::lde && !ds.labels) {
      throw ConfigError("the LDE objective requires --label");
    }
  });
  stage("decomposition", [&] { dc.validate(n); });

  const ProjectionSet found = stage(
      "graph_embedding", [&] { return find_representative_projections(ds, gp, cfg.diversity()); });
  bundle.warnings.insert(bundle.warnings.end(), found.warnings.begin(), found.warnings.end());
  const auto& projections = found.projections;

  const JointDecomposition joint =
      stage("decomposition", [&] { return decompose_joint(ds, projections, dc); });
  const DistortionTable table = stage("evidence", [&] {
    return fill_distortion_table(ds, projections, joint.global_set, dc, cfg.eta0);
  });
  const EvidenceScores evidence = stage("evidence", [&] { return combine_and_normalize(table); });
  bundle.warnings.insert(bundle.warnings.end(), evidence.warnings.begin(),
                         evidence.warnings.end());

  int fk = cfg.fidelity_k;
  int fkp = cfg.fidelity_k_prime;
  if (fk >= n || fkp >= n) {
    fk = std::min<int>(fk, static_cast<int>(n - 1));
    fkp = std::min<int>(fkp, static_cast<int>(n - 1));
    bundle.warnings.push_back("fidelity neighbourhoods clamped to n - 1 = " +
                              std::to_string(n - 1));
  }

  bundle.dataset.dim_names = ds.dim_names;
  bundle.dataset.labels = ds.labels;
  bundle.dataset.removed_columns = ds.removed_columns;
  bundle.dataset.samples = ds.samples;

  stage("quality", [&] {
    const NeighborList full = knn_indices(ds.samples, fk);

    std::vector<FidelityReport> axis_fidelity;
    for (std::size_t i = 0; i < joint.global_set.size(); ++i) {
      const AxisPair pair = joint.global_set[i];
      AxisNode node;
      node.id = "A" + std::to_string(i);
      node.dims = pair;
      node.dim_names = {ds.dim_names[static_cast<std::size_t>(pair.p)],
                        ds.dim_names[static_cast<std::size_t>(pair.q)]};
      node.coords = ds.samples * pair.basis(d);
      axis_fidelity.push_back(fidelity_scores(full, node.coords, fk, fkp));
      node.fidelity_histogram = build_histogram(as_span(axis_fidelity.back().per_point), cfg.bins);
      node.fidelity_mean = axis_fidelity.back().mean();
      node.evid = evidence.evid(static_cast<Eigen::Index>(i));
      node.mass = evidence.mass(static_cast<Eigen::Index>(i));
      node.filtered = node.evid < cfg.evidence_filter;
      bundle.axis_nodes.push_back(std::move(node));
    }

    for (std::size_t p = 0; p < projections.size(); ++p) {
      const auto& proj = projections[p];
      const auto& dec = joint.decompositions[p];
      LinearNode node;
      node.id = "L" + std::to_string(proj.order_index);
      node.order_index = proj.order_index;
      node.basis = proj.basis;
      node.coords = proj.embed(ds.samples);
      const FidelityReport own = fidelity_scores(full, node.coords, fk, fkp);
      node.fidelity_histogram = build_histogram(as_span(own.per_point), cfg.bins);
      node.fidelity_mean = own.mean();
      node.terminated_by = std::string(to_string(dec.terminated_by));

      std::vector<FidelityReport> parts;
      for (std::size_t t = 0; t < dec.plots.size(); ++t) {
        const auto& plot = dec.plots[t];
        const auto idx = static_cast<std::size_t>(
            std::find(joint.global_set.begin(), joint.global_set.end(), plot.pair) -
            joint.global_set.begin());
        parts.push_back(axis_fidelity[idx]);

        Edge edge;
        edge.linear_id = node.id;
        edge.axis_id = bundle.axis_nodes[idx].id;
        edge.mass = evidence.per_edge_mass(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(p));
        edge.distortion = table.values(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(p));
        edge.beta = plot.beta;
        edge.rank = static_cast<int>(t);
        edge.reused = plot.reused;
        edge.filtered = bundle.axis_nodes[idx].evid * edge.mass < cfg.evidence_filter;
        edge.geodesic = geodesic_path(proj.basis, plot.pair.basis(d));
        bundle.edges.push_back(std::move(edge));
      }
      const FidelityReport agg = aggregate_max_fidelity(parts);
      node.decomposition_fidelity_histogram = build_histogram(as_span(agg.per_point), cfg.bins);
      node.decomposition_fidelity_mean = agg.mean();
      bundle.linear_nodes.push_back(std::move(node));
    }
  });
  return bundle;
}

}  // namespace axd
