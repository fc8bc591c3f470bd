#pragma once

#include "axdecomp/dataset.hpp"
#include "axdecomp/decomposition.hpp"
#include "axdecomp/graph_embedding.hpp"
#include "axdecomp/grassmann.hpp"
#include "axdecomp/quality.hpp"
#include "axdecomp/subspace.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace axd {

struct AnalysisConfig {
  std::filesystem::path input;
  std::optional<std::string> label;
  std::string objective = "lpp";
  int projections = 4;
  double alpha = 1.0;
  int knn = 10;
  std::optional<double> gamma;
  int k = 10;
  int l_max = 5;
  double delta = 0.9;
  double lambda = 1e-3;
  double eta0 = 0.95;
  double evidence_filter = 0.05;
  int bins = 20;
  int fidelity_k = 30;
  int fidelity_k_prime = 30;
  std::filesystem::path output;

  /// Checks everything that does not depend on the data. Throws ConfigError.
  void validate() const;

  GraphParams graph_params() const;
  DiversityConfig diversity() const;
  DecompositionConfig decomposition() const;
};

struct DatasetMeta {
  std::vector<std::string> dim_names;
  std::optional<std::vector<std::string>> labels;
  std::vector<std::string> removed_columns;
  Eigen::MatrixXd samples;  ///< standardized, n x d
};

struct LinearNode {
  std::string id;
  int order_index = 0;
  Eigen::MatrixXd basis;   ///< d x 2
  Eigen::MatrixXd coords;  ///< n x 2
  Histogram fidelity_histogram;
  double fidelity_mean = 0.0;
  /// Per-point maximum over this node's axis plots.
  Histogram decomposition_fidelity_histogram;
  double decomposition_fidelity_mean = 0.0;
  std::string terminated_by;
};

struct AxisNode {
  std::string id;
  AxisPair dims;
  std::vector<std::string> dim_names;
  Eigen::MatrixXd coords;
  Histogram fidelity_histogram;
  double fidelity_mean = 0.0;
  double evid = 0.0;
  double mass = 0.0;
  bool filtered = false;
};

struct Edge {
  std::string linear_id;
  std::string axis_id;
  double mass = 0.0;        ///< per-edge mass eta
  double distortion = 0.0;  ///< e against the linear projection
  double beta = 0.0;
  int rank = 0;             ///< position within the decomposition
  bool reused = false;
  bool filtered = false;    ///< evid * mass below the evidence filter
  GeodesicPath geodesic;
};

/// Bipartite graph of linear and axis-aligned projections, plus everything
/// the viewer needs to draw thumbnails, histograms and transitions.
struct AnalysisBundle {
  int schema_version = 0;
  std::string engine_version;
  AnalysisConfig config;
  DatasetMeta dataset;
  std::vector<LinearNode> linear_nodes;
  std::vector<AxisNode> axis_nodes;
  std::vector<Edge> edges;
  std::vector<std::string> warnings;

  const LinearNode* find_linear(const std::string& id) const;
  const AxisNode* find_axis(const std::string& id) const;
};

AnalysisBundle run_analysis(const AnalysisConfig& cfg);

/// Runs on an already loaded (not yet standardized) dataset; cfg.input is
/// ignored.
AnalysisBundle run_analysis(const Dataset& raw, const AnalysisConfig& cfg);

std::string bundle_to_json(const AnalysisBundle& bundle);
AnalysisBundle bundle_from_json(const std::string& text);

void export_bundle(const AnalysisBundle& bundle, const std::filesystem::path& path);
AnalysisBundle import_bundle(const std::filesystem::path& path);

}  // namespace axd
