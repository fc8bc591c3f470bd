#include "axdecomp/neighbors.hpp"

#include "axdecomp/error.hpp"

#include <algorithm>
#include <utility>

namespace axd {

NeighborList knn_indices(const Eigen::MatrixXd& points, int k) {
  const Eigen::Index n = points.rows();
  if (k < 1 || k >= n) {
    throw ConfigError("neighbourhood size " + std::to_string(k) + " must lie in [1, " +
                      std::to_string(n - 1) + "]");
  }
  const auto kk = static_cast<std::size_t>(k);
  NeighborList out(static_cast<std::size_t>(n));
  std::vector<std::pair<double, Eigen::Index>> cand;
  cand.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    cand.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      cand.emplace_back((points.row(i) - points.row(j)).squaredNorm(), j);
    }
    // pair ordering compares distance first, then index
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    auto& row = out[static_cast<std::size_t>(i)];
    row.reserve(kk);
    for (std::size_t r = 0; r < kk; ++r) row.push_back(cand[r].second);
  }
  return out;
}

}  // namespace axd
