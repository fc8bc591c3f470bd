#include "axdecomp/graph_embedding.hpp"

#include "axdecomp/error.hpp"
#include "axdecomp/neighbors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace axd {
namespace {

constexpr double kNullEigenvalue = 1e-10;
constexpr double kIllConditioned = 1e-12;
constexpr double kRidgeFactor = 1e-8;
constexpr int kMaxAlphaDoublings = 5;

std::set<std::pair<Eigen::Index, Eigen::Index>> knn_edges(const Eigen::MatrixXd& samples,
                                                          int knn) {
  const auto nbrs = knn_indices(samples, knn);
  std::set<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (const auto j : nbrs[i]) edges.emplace(std::min(ii, j), std::max(ii, j));
  }
  return edges;
}

int count_components(const Eigen::MatrixXd& w) {
  const Eigen::Index n = w.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& px = parent[static_cast<std::size_t>(x)];
      px = parent[static_cast<std::size_t>(px)];
      x = px;
    }
    return x;
  };
  int components = static_cast<int>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (w(i, j) == 0.0) continue;
      const auto a = find(i);
      const auto b = find(j);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --components;
      }
    }
  }
  return components;
}

Eigen::MatrixXd laplacian_of(const Eigen::MatrixXd& w) {
  Eigen::MatrixXd l = -w;
  l.diagonal() = w.rowwise().sum() - w.diagonal();
  return l;
}

}  // namespace

Objective parse_objective(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "pca") return Objective::pca;
  if (lower == "lpp") return Objective::lpp;
  if (lower == "lde") return Objective::lde;
  throw ConfigError("unknown objective '" + std::string(name) + "' (expected pca, lpp or lde)");
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::pca: return "pca";
    case Objective::lpp: return "lpp";
    case Objective::lde: return "lde";
  }
  return "?";
}

void GraphParams::validate(Eigen::Index n) const {
  if (knn < 1 || knn >= n) {
    throw ConfigError("knn must lie in [1, n-1] = [1, " + std::to_string(n - 1) + "], got " +
                      std::to_string(knn));
  }
  if (gamma && !(*gamma > 0.0 && std::isfinite(*gamma))) {
    throw ConfigError("gamma must be a positive finite number");
  }
}

void DiversityConfig::validate() const {
  if (count < 1) throw ConfigError("projection count must be at least 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be >= 0");
  if (!(redundancy_tol >= 0.0)) throw ConfigError("redundancy tolerance must be >= 0");
}

double auto_gamma(const Eigen::MatrixXd& samples, int knn) {
  const auto edges = knn_edges(samples, knn);
  std::vector<double> len;
  len.reserve(edges.size());
  for (const auto& [i, j] : edges) len.push_back((samples.row(i) - samples.row(j)).squaredNorm());
  std::sort(len.begin(), len.end());
  const auto m = len.size();
  const double median = (m % 2 == 1) ? len[m / 2] : 0.5 * (len[m / 2 - 1] + len[m / 2]);
  if (!(median > 0.0)) throw NumericError("median kNN edge length is zero; cannot set gamma");
  return 1.0 / median;
}

GraphPair build_graphs(const Dataset& ds, const GraphParams& params) {
  const Eigen::Index n = ds.n();
  GraphPair g;
  g.objective = params.objective;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);

  switch (params.objective) {
    case Objective::pca: {
      w.setConstant(1.0 / static_cast<double>(n));
      w.diagonal().setZero();
      g.penalty = Eigen::MatrixXd::Identity(n, n);
      break;
    }
    case Objective::lpp: {
      params.validate(n);
      g.gamma = params.gamma ? *params.gamma : auto_gamma(ds.samples, params.knn);
      for (const auto& [i, j] : knn_edges(ds.samples, params.knn)) {
        const double wij = std::exp(-g.gamma * (ds.samples.row(i) - ds.samples.row(j)).squaredNorm());
        w(i, j) = wij;
        w(j, i) = wij;
      }
      g.penalty = Eigen::MatrixXd::Zero(n, n);
      g.penalty.diagonal() = w.rowwise().sum();
      break;
    }
    case Objective::lde: {
      if (!ds.labels) throw ConfigError("the LDE objective requires class labels");
      const auto& labels = *ds.labels;
      Eigen::MatrixXd between = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (i == j) continue;
          if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]) {
            w(i, j) = 1.0;
          } else {
            between(i, j) = 1.0;
          }
        }
      }
      g.penalty = laplacian_of(between);
      break;
    }
  }

  g.laplacian = laplacian_of(w);
  g.components = count_components(w);
  if (params.objective == Objective::lpp && g.components > 1) {
    g.warnings.push_back("LPP neighbourhood graph has " + std::to_string(g.components) +
                         " connected components");
  }
  return g;
}

LinearProjection solve_projection(const Dataset& ds, const GraphPair& graphs,
                                  const Eigen::MatrixXd& diversity_penalty) {
  const Eigen::Index n = ds.n();
  const Eigen::Index d = ds.d();
  if (graphs.laplacian.rows() != n || graphs.penalty.rows() != n) {
    throw ConfigError("graph size does not match the dataset");
  }
  if (diversity_penalty.rows() != d || diversity_penalty.cols() != d) {
    throw ConfigError("diversity penalty must be d x d");
  }
  const bool maximize = graphs.objective == Objective::pca;
  const Eigen::MatrixXd& x = ds.samples;

  Eigen::MatrixXd objective = x.transpose() * graphs.laplacian * x;
  objective = 0.5 * (objective + objective.transpose()).eval();
  Eigen::MatrixXd constraint;
  if (maximize) {
    // PCA constrains the basis itself; X I X^T equals X L X^T on centred data.
    constraint = Eigen::MatrixXd::Identity(d, d);
    objective = -objective + diversity_penalty;
  } else {
    constraint = x.transpose() * graphs.penalty * x;
    constraint = 0.5 * (constraint + constraint.transpose()).eval();
    objective += diversity_penalty;
  }

  // Restrict to the column space of the data so null directions cannot be selected.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * smax) ++rank;
  }
  if (rank < 2) throw NumericError("data spans fewer than two dimensions");
  std::optional<Eigen::MatrixXd> range;
  if (rank < d) {
    range = svd.matrixV().leftCols(rank);
    objective = (range->transpose() * objective * *range).eval();
    constraint = (range->transpose() * constraint * *range).eval();
  }
  const Eigen::Index r = objective.rows();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cons_eig(constraint, Eigen::EigenvaluesOnly);
  const double cmin = cons_eig.eigenvalues()(0);
  const double cmax = cons_eig.eigenvalues()(r - 1);
  if (!(cmax > 0.0) || !std::isfinite(cmax)) {
    throw NumericError("constraint matrix X B X^T is not positive (largest eigenvalue " +
                       std::to_string(cmax) + ")");
  }
  if (cmin / cmax < kIllConditioned) {
    const double ridge = kRidgeFactor * constraint.trace() / static_cast<double>(r);
    constraint.diagonal().array() += ridge;
    const double repaired = cmin + ridge;
    if (!(repaired > 0.0)) {
      std::ostringstream msg;
      msg << "constraint matrix X B X^T is singular beyond ridge repair (condition estimate "
          << cmax / std::max(std::abs(cmin), 1e-300) << ")";
      throw NumericError(msg.str());
    }
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
      objective, constraint, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (ges.info() != Eigen::Success) throw NumericError("generalized eigensolver failed");
  const auto& evals = ges.eigenvalues();

  std::vector<Eigen::Index> chosen;
  for (Eigen::Index i = 0; i < r && chosen.size() < 2; ++i) {
    // PCA keeps every direction; the other objectives skip null directions.
    if (!maximize && evals(i) < kNullEigenvalue) continue;
    chosen.push_back(i);
  }
  if (chosen.size() < 2) {
    throw NumericError("fewer than two non-null generalized eigenvectors");
  }

  Eigen::MatrixXd w(r, 2);
  w.col(0) = ges.eigenvectors().col(chosen[0]);
  w.col(1) = ges.eigenvectors().col(chosen[1]);
  Eigen::MatrixXd basis = range ? Eigen::MatrixXd(*range * w) : w;

  LinearProjection out;
  out.basis = orthonormalize(basis);
  out.params.objective = graphs.objective;
  return out;
}

double chordal_distance_sq(const LinearProjection& a, const LinearProjection& b) {
  return chordal_distance_sq(a.basis, b.basis);
}

bool is_affine_redundant(const Eigen::MatrixXd& y_new, const Eigen::MatrixXd& y_prev,
                         double tol) {
  if (y_new.rows() != y_prev.rows()) throw ConfigError("embeddings differ in point count");
  const Eigen::Index n = y_new.rows();

  const Eigen::MatrixXd centred = y_new.rowwise() - y_new.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(sv.size() - 1) <= 1e-10 * sv(0)) return true;

  const Eigen::MatrixXd prev_centred = y_prev.rowwise() - y_prev.colwise().mean();
  const double spread = prev_centred.norm();
  if (!(spread > 0.0)) return true;

  Eigen::MatrixXd design(n, 3);
  design.leftCols(2) = y_new;
  design.col(2).setOnes();
  const Eigen::MatrixXd map = design.colPivHouseholderQr().solve(y_prev);
  const double residual = (design * map - y_prev).norm();
  return residual / spread < tol;
}

ProjectionSet find_representative_projections(const Dataset& ds, const GraphParams& params,
                                              const DiversityConfig& cfg) {
  cfg.validate();
  const GraphPair graphs = build_graphs(ds, params);
  ProjectionSet out;
  out.warnings = graphs.warnings;

  const Eigen::Index d = ds.d();
  const Eigen::MatrixXd scatter = ds.samples.transpose() * graphs.laplacian * ds.samples;
  const double scale = std::abs(scatter.trace()) / static_cast<double>(d);

  auto first = solve_projection(ds, graphs, Eigen::MatrixXd::Zero(d, d));
  first.params = params;
  first.order_index = 0;
  out.projections.push_back(std::move(first));

  std::vector<Eigen::MatrixXd> embeddings{ds.samples * out.projections.front().basis};
  Eigen::MatrixXd accumulated = out.projections.front().basis *
                                out.projections.front().basis.transpose();

  for (int j = 1; j < cfg.count; ++j) {
    double alpha = cfg.alpha;
    std::optional<LinearProjection> accepted;
    for (int attempt = 0; attempt <= kMaxAlphaDoublings; ++attempt, alpha *= 2.0) {
      auto cand = solve_projection(ds, graphs, alpha * scale * accumulated);
      const Eigen::MatrixXd y = ds.samples * cand.basis;
      const bool redundant = std::any_of(embeddings.begin(), embeddings.end(), [&](const auto& prev) {
        return is_affine_redundant(y, prev, cfg.redundancy_tol);
      });
      if (!redundant) {
        accepted = std::move(cand);
        break;
      }
      if (alpha == 0.0) break;
    }
    if (!accepted) {
      out.warnings.push_back("projection search stopped after " + std::to_string(j) + " of " +
                             std::to_string(cfg.count) +
                             ": every candidate was an affine copy of an earlier projection");
      break;
    }
    accepted->params = params;
    accepted->order_index = j;
    embeddings.push_back(ds.samples * accepted->basis);
    accumulated += accepted->basis * accepted->basis.transpose();
    out.projections.push_back(std::move(*accepted));
  }
  return out;
}

}  // namespace axd
