#include "axdecomp/subspace.hpp"

#include "axdecomp/error.hpp"

#include <algorithm>
#include <utility>

namespace axd {

AxisPair::AxisPair(int a, int b) : p(std::min(a, b)), q(std::max(a, b)) {
  if (a == b) throw ConfigError("axis pair needs two distinct dimensions");
  if (p < 0) throw ConfigError("axis pair dimension must be non-negative");
}

Eigen::MatrixXd AxisPair::basis(Eigen::Index d) const {
  if (q >= d) throw ConfigError("axis pair " + to_string() + " out of range for d = " +
                                std::to_string(d));
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(d, 2);
  z(p, 0) = 1.0;
  z(q, 1) = 1.0;
  return z;
}

std::string AxisPair::to_string() const {
  return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

void fix_column_signs(Eigen::MatrixXd& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index idx = 0;
    m.col(c).cwiseAbs().maxCoeff(&idx);
    if (m(idx, c) < 0.0) m.col(c) = -m.col(c);
  }
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
  if (m.cols() != 2) throw NumericError("expected a d x 2 basis");
  Eigen::MatrixXd q = m;
  const double scale = std::max(m.col(0).norm(), m.col(1).norm());
  if (!(scale > 0.0)) throw NumericError("cannot orthonormalize a zero basis");
  for (Eigen::Index c = 0; c < 2; ++c) {
    // two passes of classical Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < c; ++j) q.col(c) -= q.col(j).dot(q.col(c)) * q.col(j);
    }
    const double norm = q.col(c).norm();
    if (norm <= 1e-12 * scale) throw NumericError("basis columns are linearly dependent");
    q.col(c) /= norm;
  }
  fix_column_signs(q);
  return q;
}

double chordal_distance_sq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) throw ConfigError("chordal distance needs equal ambient dimension");
  const double overlap = (a.transpose() * b).squaredNorm();
  return std::clamp(static_cast<double>(a.cols()) - overlap, 0.0, 2.0);
}

}  // namespace axd
