#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace axd {

/// Tabular sample matrix. Rows are points, columns are dimensions.
struct Dataset {
  Eigen::MatrixXd samples;
  std::vector<std::string> dim_names;
  std::optional<std::vector<std::string>> labels;
  bool standardized = false;
  /// Columns dropped by standardize() because they had zero variance.
  std::vector<std::string> removed_columns;

  Eigen::Index n() const { return samples.rows(); }
  Eigen::Index d() const { return samples.cols(); }

  /// Throws DataError if any invariant (n >= 3, d >= 3, finite, unique names,
  /// at least two classes when labelled) is violated.
  void validate() const;
};

/// Reads a comma separated file with a header row. The label column, when
/// named, is kept aside as class identifiers; every other cell must be numeric.
Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::string>& label_column = std::nullopt);

Dataset parse_csv(std::istream& in,
                  const std::optional<std::string>& label_column = std::nullopt);

/// Column-wise z-score using the population variance. Zero-variance columns
/// are removed and listed in removed_columns.
Dataset standardize(const Dataset& ds);

}  // namespace axd
