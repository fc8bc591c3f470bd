#include "axdecomp/error.hpp"
#include "axdecomp/pipeline.hpp"
#include "axdecomp/version.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace axd {
namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index cols = -1) {
  if (!j.is_array()) throw DataError("bundle: expected a matrix (array of rows)");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (cols < 0) cols = rows ? static_cast<Eigen::Index>(j.front().size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DataError("bundle: ragged matrix row");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

json histogram_to_json(const Histogram& h) {
  return {{"bin_edges", h.bin_edges}, {"counts", h.counts}};
}

Histogram histogram_from_json(const json& j) {
  Histogram h;
  h.bin_edges = j.at("bin_edges").get<std::vector<double>>();
  h.counts = j.at("counts").get<std::vector<long>>();
  return h;
}

json geodesic_to_json(const GeodesicPath& g) {
  return {{"start_frame", matrix_to_json(g.start_frame)},
          {"direction_frame", matrix_to_json(g.direction_frame)},
          {"angles", {g.angles(0), g.angles(1)}}};
}

GeodesicPath geodesic_from_json(const json& j) {
  GeodesicPath g;
  g.start_frame = matrix_from_json(j.at("start_frame"), 2);
  g.direction_frame = matrix_from_json(j.at("direction_frame"), 2);
  const auto& a = j.at("angles");
  g.angles = Eigen::Vector2d(a.at(0).get<double>(), a.at(1).get<double>());
  return g;
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json config_to_json(const AnalysisConfig& c) {
  return {{"input", c.input.string()},
          {"label", optional_to_json(c.label)},
          {"objective", c.objective},
          {"projections", c.projections},
          {"alpha", c.alpha},
          {"knn", c.knn},
          {"gamma", optional_to_json(c.gamma)},
          {"k", c.k},
          {"lmax", c.l_max},
          {"delta", c.delta},
          {"lambda", c.lambda},
          {"eta0", c.eta0},
          {"filter", c.evidence_filter},
          {"bins", c.bins},
          {"fidelity_k", c.fidelity_k},
          {"fidelity_k_prime", c.fidelity_k_prime}};
}

AnalysisConfig config_from_json(const json& j) {
  AnalysisConfig c;
  c.input = j.at("input").get<std::string>();
  if (!j.at("label").is_null()) c.label = j.at("label").get<std::string>();
  c.objective = j.at("objective").get<std::string>();
  c.projections = j.at("projections").get<int>();
  c.alpha = j.at("alpha").get<double>();
  c.knn = j.at("knn").get<int>();
  if (!j.at("gamma").is_null()) c.gamma = j.at("gamma").get<double>();
  c.k = j.at("k").get<int>();
  c.l_max = j.at("lmax").get<int>();
  c.delta = j.at("delta").get<double>();
  c.lambda = j.at("lambda").get<double>();
  c.eta0 = j.at("eta0").get<double>();
  c.evidence_filter = j.at("filter").get<double>();
  c.bins = j.at("bins").get<int>();
  c.fidelity_k = j.at("fidelity_k").get<int>();
  c.fidelity_k_prime = j.at("fidelity_k_prime").get<int>();
  return c;
}

}  // namespace

std::string bundle_to_json(const AnalysisBundle& b) {
  json doc;
  doc["versions"] = {{"engine", b.engine_version}, {"schema", b.schema_version}};
  doc["config"] = config_to_json(b.config);
  doc["dataset"] = {{"dim_names", b.dataset.dim_names},
                    {"labels", optional_to_json(b.dataset.labels)},
                    {"removed_columns", b.dataset.removed_columns},
                    {"samples", matrix_to_json(b.dataset.samples)}};

  json linear = json::array();
  for (const auto& node : b.linear_nodes) {
    linear.push_back({{"id", node.id},
                      {"order_index", node.order_index},
                      {"basis", matrix_to_json(node.basis)},
                      {"coords", matrix_to_json(node.coords)},
                      {"fidelity_histogram", histogram_to_json(node.fidelity_histogram)},
                      {"fidelity_mean", node.fidelity_mean},
                      {"decomposition_fidelity_histogram",
                       histogram_to_json(node.decomposition_fidelity_histogram)},
                      {"decomposition_fidelity_mean", node.decomposition_fidelity_mean},
                      {"terminated_by", node.terminated_by}});
  }
  doc["linear_nodes"] = std::move(linear);

  json axis = json::array();
  for (const auto& node : b.axis_nodes) {
    axis.push_back({{"id", node.id},
                    {"dims", {node.dims.p, node.dims.q}},
                    {"dim_names", node.dim_names},
                    {"coords", matrix_to_json(node.coords)},
                    {"fidelity_histogram", histogram_to_json(node.fidelity_histogram)},
                    {"fidelity_mean", node.fidelity_mean},
                    {"evid", node.evid},
                    {"mass", node.mass},
                    {"filtered", node.filtered}});
  }
  doc["axis_nodes"] = std::move(axis);

  json edges = json::array();
  for (const auto& e : b.edges) {
    edges.push_back({{"linear_id", e.linear_id},
                     {"axis_id", e.axis_id},
                     {"mass", e.mass},
                     {"distortion", e.distortion},
                     {"beta", e.beta},
                     {"rank", e.rank},
                     {"reused", e.reused},
                     {"filtered", e.filtered},
                     {"geodesic", geodesic_to_json(e.geodesic)}});
  }
  doc["edges"] = std::move(edges);
  doc["warnings"] = b.warnings;
  return doc.dump();
}

AnalysisBundle bundle_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("bundle is not valid JSON: ") + e.what());
  }

  AnalysisBundle b;
  try {
    b.engine_version = doc.at("versions").at("engine").get<std::string>();
    b.schema_version = doc.at("versions").at("schema").get<int>();
    if (b.schema_version != kBundleSchemaVersion) {
      throw DataError("unsupported bundle schema version " + std::to_string(b.schema_version));
    }
    b.config = config_from_json(doc.at("config"));

    const auto& ds = doc.at("dataset");
    b.dataset.dim_names = ds.at("dim_names").get<std::vector<std::string>>();
    if (!ds.at("labels").is_null()) {
      b.dataset.labels = ds.at("labels").get<std::vector<std::string>>();
    }
    b.dataset.removed_columns = ds.at("removed_columns").get<std::vector<std::string>>();
    b.dataset.samples =
        matrix_from_json(ds.at("samples"), static_cast<Eigen::Index>(b.dataset.dim_names.size()));

    for (const auto& j : doc.at("linear_nodes")) {
      LinearNode node;
      node.id = j.at("id").get<std::string>();
      node.order_index = j.at("order_index").get<int>();
      node.basis = matrix_from_json(j.at("basis"), 2);
      node.coords = matrix_from_json(j.at("coords"), 2);
      node.fidelity_histogram = histogram_from_json(j.at("fidelity_histogram"));
      node.fidelity_mean = j.at("fidelity_mean").get<double>();
      node.decomposition_fidelity_histogram =
          histogram_from_json(j.at("decomposition_fidelity_histogram"));
      node.decomposition_fidelity_mean = j.at("decomposition_fidelity_mean").get<double>();
      node.terminated_by = j.at("terminated_by").get<std::string>();
      b.linear_nodes.push_back(std::move(node));
    }
    for (const auto& j : doc.at("axis_nodes")) {
      AxisNode node;
      node.id = j.at("id").get<std::string>();
      const auto& dims = j.at("dims");
      node.dims = AxisPair(dims.at(0).get<int>(), dims.at(1).get<int>());
      node.dim_names = j.at("dim_names").get<std::vector<std::string>>();
      node.coords = matrix_from_json(j.at("coords"), 2);
      node.fidelity_histogram = histogram_from_json(j.at("fidelity_histogram"));
      node.fidelity_mean = j.at("fidelity_mean").get<double>();
      node.evid = j.at("evid").get<double>();
      node.mass = j.at("mass").get<double>();
      node.filtered = j.at("filtered").get<bool>();
      b.axis_nodes.push_back(std::move(node));
    }
    for (const auto& j : doc.at("edges")) {
      Edge e;
      e.linear_id = j.at("linear_id").get<std::string>();
      e.axis_id = j.at("axis_id").get<std::string>();
      e.mass = j.at("mass").get<double>();
      e.distortion = j.at("distortion").get<double>();
      e.beta = j.at("beta").get<double>();
      e.rank = j.at("rank").get<int>();
      e.reused = j.at("reused").get<bool>();
      e.filtered = j.at("filtered").get<bool>();
      e.geodesic = geodesic_from_json(j.at("geodesic"));
      b.edges.push_back(std::move(e));
    }
    b.warnings = doc.at("warnings").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw DataError(std::string("bundle does not match the schema: ") + e.what());
  }

  for (const auto& e : b.edges) {
    if (!b.find_linear(e.linear_id) || !b.find_axis(e.axis_id)) {
      throw DataError("bundle edge " + e.linear_id + " -> " + e.axis_id +
                      " references a missing node");
    }
  }
  return b;
}

void export_bundle(const AnalysisBundle& bundle, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << bundle_to_json(bundle) << '\n';
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

AnalysisBundle import_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return bundle_from_json(buf.str());
}

}  // namespace axd
