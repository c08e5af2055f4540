#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cbs/errors.hpp"
#include "cbs/io.hpp"
#include "cbs/random.hpp"

using namespace cbs;

namespace {

const char* kMinimal = R"({
  "schema_version": "1",
  "dim": 1,
  "weights": [[1, 0]],
  "operators": [[[[2, 0]]]]
})";

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cbs_test_io_" + name);
}

}  // namespace

TEST_CASE("minimal operators file") {
  const ProblemFile p = parse_problem(kMinimal);
  CHECK(p.mode() == ProblemMode::operators);
  CHECK(p.count() == 1);
  CHECK(p.dim == 1);
  REQUIRE(p.operators.has_value());
  CHECK((*p.operators)[0](0, 0) == Complex(2.0, 0.0));
  CHECK((*p.weights)[0] == Complex(1.0, 0.0));
}

TEST_CASE("vectors file with omitted weights") {
  const ProblemFile p = parse_problem(R"({"schema_version": "1", "dim": 2,
      "vectors": [[[1, 0], [0, 0]], [[0, 0], [0, -3.5]]]})");
  CHECK(p.mode() == ProblemMode::vectors);
  CHECK(p.count() == 2);
  CHECK_FALSE(p.weights.has_value());
  CHECK((*p.vectors)[1][1] == Complex(0.0, -3.5));
}

TEST_CASE("value errors") {
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 2,
      "vectors": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]})"),
                  ValueError);
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 1,
      "weights": [[1e999, 0]], "operators": [[[[1, 0]]]]})"),
                  ValueError);
}

TEST_CASE("schema errors") {
  // Mixed operator dimensions.
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 2, "weights": [[1,0],[1,0]],
      "operators": [[[[1,0],[0,0]],[[0,0],[1,0]]], [[[1,0]]]]})"),
                  SchemaError);
  // Unknown field.
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 1, "weights": [[1,0]],
      "operators": [[[[1,0]]]], "comment": "x"})"),
                  SchemaError);
  // Both payloads.
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 1, "weights": [[1,0]],
      "operators": [[[[1,0]]]], "vectors": [[[1,0]]]})"),
                  SchemaError);
  // Neither payload.
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 1})"), SchemaError);
  // Operators mode needs weights.
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 1, "operators": [[[[1,0]]]]})"),
                  SchemaError);
  // Weight count mismatch.
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 1, "weights": [[1,0],[2,0]],
      "operators": [[[[1,0]]]]})"),
                  SchemaError);
  // Bad version, bad dim, complex without imaginary part.
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "2", "dim": 1, "weights": [[1,0]],
      "operators": [[[[1,0]]]]})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 0, "vectors": [[[1,0]]]})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_problem(R"({"schema_version": "1", "dim": 1, "vectors": [[1]]})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_problem("[1, 2]"), SchemaError);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_problem("{\"schema_version\": \"1\", "), ParseError);
  CHECK_THROWS_AS(parse_problem(""), ParseError);
  CHECK_THROWS_AS(load_problem(temp_path("does_not_exist.json")), ParseError);
}

TEST_CASE("mode names") {
  CHECK(parse_mode("operators") == ProblemMode::operators);
  CHECK(parse_mode("vectors") == ProblemMode::vectors);
  CHECK(to_string(ProblemMode::vectors) == "vectors");
  CHECK_THROWS_AS(parse_mode("matrix"), ValueError);
}

TEST_CASE("round trip through the writer is exact") {
  Xoshiro256 rng(1);
  ProblemFile ops;
  ops.dim = 3;
  ops.weights = std::vector<Complex>{rng.complex_normal(), rng.complex_normal()};
  ops.operators = std::vector<ComplexMatrix>{random_matrix(rng, 3), random_matrix(rng, 3)};
  // Values that need all 17 digits.
  (*ops.operators)[0](0, 0) = Complex(0.1, 1.0 / 3.0);
  (*ops.weights)[1] = Complex(1e-300, -2.5e300);

  const std::filesystem::path path = temp_path("roundtrip.json");
  write_text_file(path, dump_json(problem_to_json(ops)));
  CHECK(load_problem(path) == ops);

  ProblemFile vecs;
  vecs.dim = 2;
  vecs.vectors = std::vector<CVector>{random_vector(rng, 2), random_vector(rng, 2)};
  CHECK(parse_problem(dump_json(problem_to_json(vecs))) == vecs);
  std::filesystem::remove(path);
}

TEST_CASE("json dump format") {
  Json doc = Json::object();
  doc["a"] = 0.1;
  doc["b"] = Json::array({1, 2});
  doc["c"] = std::numeric_limits<double>::infinity();
  doc["d"] = Json::array({Json::array({1.5, 2.0})});
  doc["e"] = "text";
  doc["f"] = Json::object();
  const std::string expected =
      "{\n"
      "  \"a\": 0.10000000000000001,\n"
      "  \"b\": [1, 2],\n"
      "  \"c\": \"inf\",\n"
      "  \"d\": [\n"
      "    [1.5, 2]\n"
      "  ],\n"
      "  \"e\": \"text\",\n"
      "  \"f\": {}\n"
      "}\n";
  CHECK(dump_json(doc) == expected);
}

TEST_CASE("write_text_file reports failures") {
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x/y.json", "{}"), ValueError);
}
