#include "axdecomp/grassmann.hpp"

#include "axdecomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace axd {
namespace {

constexpr double kFullyExplained = 1e-12;

void check_pairs(std::span<const AxisPair> pairs, Eigen::Index d) {
  for (const auto& pr : pairs) {
    if (pr.q >= d) throw ConfigError("axis pair " + pr.to_string() + " exceeds dimension");
  }
}

// Unit vector orthogonal to every column of `against`, built from the first
// coordinate axis with a usable residual.
Eigen::VectorXd complement_vector(const Eigen::MatrixXd& against) {
  const Eigen::Index d = against.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(d, i);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < against.cols(); ++c) {
        v -= against.col(c).dot(v) * against.col(c);
      }
    }
    const double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
  return Eigen::VectorXd::Zero(d);
}

}  // namespace

Eigen::VectorXd grassmann_least_squares(const Eigen::MatrixXd& v,
                                        std::span<const AxisPair> pairs, double lambda) {
  if (pairs.empty()) throw ConfigError("least squares needs at least one axis pair");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
  check_pairs(pairs, v.rows());

  const auto m = static_cast<Eigen::Index>(pairs.size());
  const Eigen::VectorXd leverage = v.rowwise().squaredNorm();  // diag(V V^T)
  Eigen::MatrixXd gram(m, m);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& a = pairs[static_cast<std::size_t>(i)];
    rhs(i) = leverage(a.p) + leverage(a.q);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& b = pairs[static_cast<std::size_t>(j)];
      gram(i, j) = static_cast<double>(b.contains(a.p)) + static_cast<double>(b.contains(a.q));
    }
  }
  gram.diagonal().array() += lambda;
  // Minimum-norm solution when lambda = 0 and the dictionary is over-complete.
  return gram.completeOrthogonalDecomposition().solve(rhs);
}

std::optional<Eigen::MatrixXd> residual_subspace(const Eigen::MatrixXd& v,
                                                 std::span<const AxisPair> pairs,
                                                 const Eigen::VectorXd& betas) {
  if (static_cast<Eigen::Index>(pairs.size()) != betas.size()) {
    throw ConfigError("pair and coefficient counts differ");
  }
  check_pairs(pairs, v.rows());
  Eigen::MatrixXd r = v * v.transpose();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto beta = betas(static_cast<Eigen::Index>(i));
    r(pairs[i].p, pairs[i].p) -= beta;
    r(pairs[i].q, pairs[i].q) -= beta;
  }
  if (r.norm() < kFullyExplained) return std::nullopt;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
  if (es.info() != Eigen::Success) throw NumericError("residual eigendecomposition failed");
  const Eigen::Index d = r.rows();
  Eigen::MatrixXd u(d, 2);
  u.col(0) = es.eigenvectors().col(d - 1);
  u.col(1) = es.eigenvectors().col(d - 2);
  return orthonormalize(u);
}

Eigen::MatrixXd GeodesicPath::frame(double t) const {
  Eigen::MatrixXd out(start_frame.rows(), 2);
  for (Eigen::Index k = 0; k < 2; ++k) {
    const double a = t * angles(k);
    out.col(k) = std::cos(a) * start_frame.col(k) + std::sin(a) * direction_frame.col(k);
  }
  return out;
}

GeodesicPath geodesic_path(const Eigen::MatrixXd& v0, const Eigen::MatrixXd& v1) {
  if (v0.rows() != v1.rows() || v0.cols() != 2 || v1.cols() != 2) {
    throw ConfigError("geodesic endpoints must be d x 2 bases of equal d");
  }
  const Eigen::Index d = v0.rows();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(v0.transpose() * v1,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  GeodesicPath path;
  path.start_frame = v0 * svd.matrixU();
  const Eigen::MatrixXd end = v1 * svd.matrixV();
  path.direction_frame = Eigen::MatrixXd::Zero(d, 2);

  // Rotating columns first, so zero-angle columns only take what is left over.
  std::vector<Eigen::Index> fixed;
  std::vector<Eigen::Index> order;
  for (Eigen::Index k = 0; k < 2; ++k) {
    const double cosine = std::clamp(svd.singularValues()(k), 0.0, 1.0);
    path.angles(k) = std::acos(cosine);
    Eigen::VectorXd perp = end.col(k) - svd.singularValues()(k) * path.start_frame.col(k);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < 2; ++c) perp -= path.start_frame.col(c).dot(perp) * path.start_frame.col(c);
      for (const auto c : order) perp -= path.direction_frame.col(c).dot(perp) * path.direction_frame.col(c);
    }
    const double norm = perp.norm();
    if (norm > 1e-12 && path.angles(k) > 0.0) {
      path.direction_frame.col(k) = perp / norm;
      order.push_back(k);
    } else {
      path.angles(k) = 0.0;
      fixed.push_back(k);
    }
  }
  for (const auto k : fixed) {
    Eigen::MatrixXd against(d, 2 + static_cast<Eigen::Index>(order.size()));
    against.leftCols(2) = path.start_frame;
    for (std::size_t i = 0; i < order.size(); ++i) {
      against.col(2 + static_cast<Eigen::Index>(i)) = path.direction_frame.col(order[i]);
    }
    path.direction_frame.col(k) = complement_vector(against);
    if (path.direction_frame.col(k).squaredNorm() > 0.0) order.push_back(k);
  }
  return path;
}

}  // namespace axd
