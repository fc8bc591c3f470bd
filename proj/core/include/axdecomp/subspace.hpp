#pragma once

#include <Eigen/Dense>

#include <compare>
#include <string>

namespace axd {

/// Unordered pair of dimension indices, stored with p < q. Stands for the
/// axis-aligned plane spanned by e_p and e_q.
struct AxisPair {
  int p = 0;
  int q = 1;

  AxisPair() = default;
  AxisPair(int a, int b);

  /// The d x 2 selector matrix [e_p, e_q].
  Eigen::MatrixXd basis(Eigen::Index d) const;
  bool contains(int dim) const { return p == dim || q == dim; }
  std::string to_string() const;

  friend auto operator<=>(const AxisPair&, const AxisPair&) = default;
};

/// Gram-Schmidt on the columns of a d x 2 matrix, followed by the sign
/// convention below. Throws NumericError if the columns are dependent.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m);

/// Flips each column so that its largest-magnitude entry (first one on ties)
/// is positive.
void fix_column_signs(Eigen::MatrixXd& m);

/// Squared chordal distance 2 - ||A^T B||_F^2 between the spans of two
/// orthonormal d x 2 bases, clamped to [0, 2].
double chordal_distance_sq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace axd
