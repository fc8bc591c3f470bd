#include "axdecomp/dataset.hpp"

#include "axdecomp/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string_view>

namespace axd {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits one CSV record. Double quotes may enclose a field; "" inside a quoted
// field is a literal quote. Embedded newlines are not supported.
std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      if (!trim(cur).empty()) {
        throw DataError("malformed CSV at line " + std::to_string(line_no) +
                        ": quote inside unquoted field");
      }
      cur.clear();
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(ch);
    }
  }
  if (quoted) {
    throw DataError("malformed CSV at line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(was_quoted ? cur : std::string(trim(cur)));
  return fields;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

void Dataset::validate() const {
  if (n() < 3) throw DataError("dataset needs at least 3 rows, got " + std::to_string(n()));
  if (d() < 3) {
    throw DataError("dataset needs at least 3 numeric columns, got " + std::to_string(d()));
  }
  if (static_cast<Eigen::Index>(dim_names.size()) != d()) {
    throw DataError("dimension name count does not match column count");
  }
  if (!samples.allFinite()) throw DataError("dataset contains non-finite values");
  std::set<std::string> seen;
  for (const auto& name : dim_names) {
    if (!seen.insert(name).second) throw DataError("duplicate column name '" + name + "'");
  }
  if (labels) {
    if (static_cast<Eigen::Index>(labels->size()) != n()) {
      throw DataError("label count does not match row count");
    }
    const std::set<std::string> classes(labels->begin(), labels->end());
    if (classes.size() < 2) throw DataError("labels must contain at least two classes");
  }
}

Dataset parse_csv(std::istream& in, const std::optional<std::string>& label_column) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      header = split_record(line, line_no);
      break;
    }
  }
  if (header.empty()) throw DataError("CSV input is empty");

  std::set<std::string> names;
  for (const auto& h : header) {
    if (h.empty()) throw DataError("CSV header contains an empty column name");
    if (!names.insert(h).second) throw DataError("CSV header repeats column '" + h + "'");
  }

  std::optional<std::size_t> label_idx;
  if (label_column) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == *label_column) label_idx = c;
    }
    if (!label_idx) throw DataError("label column '" + *label_column + "' not found in header");
  }

  Dataset ds;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != label_idx) ds.dim_names.push_back(header[c]);
  }
  const auto d = ds.dim_names.size();
  if (d < 3) {
    throw DataError("need at least 3 numeric columns, found " + std::to_string(d));
  }

  std::vector<double> values;
  std::vector<std::string> labels;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_record(line, line_no);
    if (fields.size() != header.size()) {
      throw DataError("malformed CSV at line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == label_idx) {
        if (fields[c].empty()) {
          throw DataError("missing label at line " + std::to_string(line_no));
        }
        labels.push_back(fields[c]);
        continue;
      }
      if (fields[c].empty()) {
        throw DataError("missing value at line " + std::to_string(line_no) + ", column '" +
                        header[c] + "'");
      }
      double v = 0.0;
      if (!parse_double(fields[c], v) || !std::isfinite(v)) {
        throw DataError("non-numeric value '" + fields[c] + "' at line " +
                        std::to_string(line_no) + ", column '" + header[c] + "'");
      }
      values.push_back(v);
    }
    ++rows;
  }

  ds.samples.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      ds.samples(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * d + c];
    }
  }
  if (label_idx) ds.labels = std::move(labels);
  ds.validate();
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const std::optional<std::string>& label_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_csv(in, label_column);
}

Dataset standardize(const Dataset& ds) {
  if (ds.standardized) throw DataError("dataset is already standardized");

  const auto n = static_cast<double>(ds.n());
  std::vector<Eigen::Index> keep;
  Dataset out;
  out.labels = ds.labels;
  out.removed_columns = ds.removed_columns;
  Eigen::VectorXd mean(ds.d()), sd(ds.d());
  for (Eigen::Index c = 0; c < ds.d(); ++c) {
    mean(c) = ds.samples.col(c).mean();
    const double var = (ds.samples.col(c).array() - mean(c)).square().sum() / n;
    sd(c) = std::sqrt(var);
    // Relative test: a column of large identical values has round-off variance.
    const double scale = std::max(1.0, ds.samples.col(c).cwiseAbs().maxCoeff());
    if (sd(c) > 1e-12 * scale) {
      keep.push_back(c);
      out.dim_names.push_back(ds.dim_names[static_cast<std::size_t>(c)]);
    } else {
      out.removed_columns.push_back(ds.dim_names[static_cast<std::size_t>(c)]);
    }
  }
  if (keep.empty()) throw DataError("every column has zero variance");

  out.samples.resize(ds.n(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    const auto c = keep[j];
    out.samples.col(static_cast<Eigen::Index>(j)) =
        (ds.samples.col(c).array() - mean(c)) / sd(c);
  }
  out.standardized = true;
  out.validate();
  return out;
}

}  // namespace axd
