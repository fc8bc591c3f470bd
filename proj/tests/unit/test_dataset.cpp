#include "axdecomp/dataset.hpp"
#include "axdecomp/error.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace axd;

namespace {

Dataset parse(const std::string& text, std::optional<std::string> label = std::nullopt) {
  std::istringstream in(text);
  return parse_csv(in, label);
}

}  // namespace

TEST_CASE("csv: header, label column and numeric cells") {
  const auto ds = parse("a,b,kind,c\n1,2,x,3\n4,5,y,6\n7,8.5,x,-9\n", "kind");
  CHECK(ds.n() == 3);
  CHECK(ds.d() == 3);
  CHECK(ds.dim_names == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(ds.labels);
  CHECK((*ds.labels)[1] == "y");
  CHECK(ds.samples(2, 1) == doctest::Approx(8.5));
  CHECK(ds.samples(2, 2) == -9.0);
  CHECK_FALSE(ds.standardized);
}

TEST_CASE("csv: quoted fields, CRLF and byte order mark") {
  const auto ds = parse("\xEF\xBB\xBF\"a\",b,c\r\n\"1\",2,3\r\n4,5,6\r\n7,8,9\r\n");
  CHECK(ds.dim_names.front() == "a");
  CHECK(ds.samples(0, 0) == 1.0);
  CHECK(ds.samples(2, 2) == 9.0);
}

TEST_CASE("csv: malformed input is reported with its location") {
  CHECK_THROWS_AS(parse(""), DataError);
  CHECK_THROWS_WITH_AS(parse("a,b,c\n1,2,3\n4,,6\n7,8,9\n"), doctest::Contains("line 3"), DataError);
  CHECK_THROWS_WITH_AS(parse("a,b,c\n1,2,3\n4,zz,6\n7,8,9\n"), doctest::Contains("zz"), DataError);
  CHECK_THROWS_AS(parse("a,b,c\n1,2\n"), DataError);
  CHECK_THROWS_AS(parse("a,a,c\n1,2,3\n4,5,6\n7,8,9\n"), DataError);
  CHECK_THROWS_WITH_AS(parse("a,b,c\n1,2,3\n4,5,6\n7,8,9\n", "label"),
                       doctest::Contains("label"), DataError);
  CHECK_THROWS_WITH_AS(parse("a,b,l\n1,2,x\n4,5,y\n7,8,x\n", "l"),
                       doctest::Contains("at least 3 numeric columns"), DataError);
  CHECK_THROWS_AS(parse("a,b,c\n1,2,3\n4,5,6\n"), DataError);  // n < 3
}

TEST_CASE("csv: a single class is rejected") {
  CHECK_THROWS_AS(parse("a,b,c,l\n1,2,3,x\n4,5,6,x\n7,8,0,x\n", "l"), DataError);
}

TEST_CASE("load_csv: missing file") {
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), DataError);
}

TEST_CASE("load_csv: bundled data sets") {
  const auto iris = load_csv(std::filesystem::path(AXD_TEST_DATA_DIR) / "iris.csv", std::string("species"));
  CHECK(iris.n() == 150);
  CHECK(iris.d() == 4);
  const auto wine = load_csv(std::filesystem::path(AXD_TEST_DATA_DIR) / "wine.csv", std::string("cultivar"));
  CHECK(wine.n() == 178);
  CHECK(wine.d() == 13);
}

TEST_CASE("standardize: zero mean, unit population variance") {
  const auto ds = standardize(parse("a,b,c\n1,10,5\n2,20,7\n3,60,-1\n4,10,0\n"));
  CHECK(ds.standardized);
  for (Eigen::Index j = 0; j < ds.d(); ++j) {
    const auto col = ds.samples.col(j);
    CHECK(std::abs(col.mean()) < 1e-12);
    CHECK((col.array() - col.mean()).square().mean() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(standardize(ds), DataError);
}

TEST_CASE("standardize: drops constant columns and re-validates") {
  const auto ds = standardize(parse("a,k,b,c\n1,5,2,0\n2,5,1,1\n3,5,7,3\n4,5,0,2\n"));
  CHECK(ds.d() == 3);
  CHECK(ds.removed_columns == std::vector<std::string>{"k"});
  CHECK(ds.dim_names == std::vector<std::string>{"a", "b", "c"});

  // Two of three columns constant: too few dimensions remain.
  CHECK_THROWS_AS(standardize(parse("a,b,c\n1,5,2\n2,5,2\n3,5,2\n")), DataError);
}
