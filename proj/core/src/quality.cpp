#include "axdecomp/quality.hpp"

#include "axdecomp/error.hpp"

#include <algorithm>
#include <cmath>

namespace axd {

FidelityReport fidelity_scores(const NeighborList& full_neighbors,
                               const Eigen::MatrixXd& embedding, int k, int k_prime) {
  const Eigen::Index n = embedding.rows();
  if (static_cast<Eigen::Index>(full_neighbors.size()) != n) {
    throw ConfigError("neighbour list does not match embedding size");
  }
  if (k < 1 || k >= n || k_prime < 1 || k_prime >= n) {
    throw ConfigError("fidelity neighbourhoods must satisfy 1 <= k, k' < n");
  }
  const auto emb = knn_indices(embedding, k_prime);

  FidelityReport out;
  out.k = k;
  out.k_prime = k_prime;
  out.per_point.resize(n);
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& full = full_neighbors[static_cast<std::size_t>(i)];
    if (static_cast<int>(full.size()) < k) throw ConfigError("too few precomputed neighbours");
    for (int r = 0; r < k; ++r) mark[static_cast<std::size_t>(full[static_cast<std::size_t>(r)])] = 1;
    int shared = 0;
    for (const auto j : emb[static_cast<std::size_t>(i)]) shared += mark[static_cast<std::size_t>(j)];
    for (int r = 0; r < k; ++r) mark[static_cast<std::size_t>(full[static_cast<std::size_t>(r)])] = 0;
    const double precision = static_cast<double>(shared) / k_prime;
    const double recall = static_cast<double>(shared) / k;
    out.per_point(i) = 0.5 * precision + 0.5 * recall;
  }
  return out;
}

FidelityReport fidelity_scores(const Dataset& ds, const Eigen::MatrixXd& embedding, int k,
                               int k_prime) {
  if (embedding.rows() != ds.n()) throw ConfigError("embedding does not match dataset size");
  return fidelity_scores(knn_indices(ds.samples, k), embedding, k, k_prime);
}

FidelityReport aggregate_max_fidelity(std::span<const FidelityReport> reports) {
  if (reports.empty()) throw ConfigError("no fidelity reports to aggregate");
  FidelityReport out = reports.front();
  for (const auto& r : reports.subspan(1)) {
    if (r.per_point.size() != out.per_point.size()) {
      throw ConfigError("fidelity reports differ in point count");
    }
    out.per_point = out.per_point.cwiseMax(r.per_point);
  }
  return out;
}

Histogram build_histogram(std::span<const double> values, int bins) {
  if (bins < 1) throw ConfigError("histogram needs at least one bin");
  if (values.empty()) throw ConfigError("cannot build a histogram of no values");
  Histogram h;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.bin_edges[static_cast<std::size_t>(b)] = static_cast<double>(b) / bins;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (const double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("histogram values must lie in [0, 1]");
    auto b = std::min(static_cast<int>(std::floor(v * bins)), bins - 1);
    // v * bins can round across an edge; settle against the stored edges.
    if (b > 0 && v < h.bin_edges[static_cast<std::size_t>(b)]) --b;
    if (b + 1 < bins && v >= h.bin_edges[static_cast<std::size_t>(b) + 1]) ++b;
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

}  // namespace axd
