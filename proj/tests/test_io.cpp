#include <doctest.h>

#include <cstdio>

#include "core/graph.hpp"
#include "core/io_json.hpp"
#include "core/rng.hpp"
#include "core/tensor.hpp"

using namespace grt;

TEST_CASE("tensor JSON round trip is bit exact") {
  DenseTensor t({2, 3, 2}, 0);
  std::mt19937_64 g = substream(42, 0);
  for (Cx& c : t.coeffs()) c = Cx(gaussian(g) / 3.0, gaussian(g) * 1e-7);
  DenseTensor back = tensor_from_json(tensor_to_json(t));
  REQUIRE(back.dims() == t.dims());
  CHECK(back.label_base() == 0);
  for (size_t i = 0; i < t.size(); ++i) {
    CHECK(back.coeffs()[i].real() == t.coeffs()[i].real());
    CHECK(back.coeffs()[i].imag() == t.coeffs()[i].imag());
  }
}

TEST_CASE("label base defaults to 1 when absent") {
  DenseTensor t = tensor_from_json(
      R"({"order": 1, "dims": [2], "coeffs": [[1.0, 0.0], [0.5, -0.25]]})");
  CHECK(t.label_base() == 1);
  CHECK(t.at({1}) == Cx(0.5, -0.25));
}

TEST_CASE("malformed tensor JSON is rejected with a format error") {
  auto code_of = [](const std::string& text) {
    try {
      tensor_from_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::numeric_failure;  // sentinel: should not happen
  };
  CHECK(code_of("not json at all") == Errc::bad_format);
  CHECK(code_of(R"({"order": 2, "dims": [2]})") == Errc::bad_format);
  CHECK(code_of(R"({"order": 2, "dims": [2], "coeffs": []})") == Errc::bad_format);
  CHECK(code_of(R"({"order": 1, "dims": [2], "coeffs": [[1,0],[2]]})") ==
        Errc::bad_format);
  CHECK(code_of(R"({"order": 1, "dims": [2], "coeffs": [[1,0]]})") ==
        Errc::bad_format);
}

TEST_CASE("graph and hypergraph JSON round trips") {
  ConstraintGraph g;
  g.n = 5;
  for (int i = 1; i <= 5; ++i) g.edges.emplace_back(i, i % 5 + 1);
  g.validate();
  ConstraintGraph back = graph_from_json(graph_to_json(g));
  CHECK(back.n == 5);
  CHECK(back.edges.size() == 5);
  CHECK(back.adjacent(1, 2));
  CHECK_FALSE(back.adjacent(1, 3));

  ConstraintHypergraph h;
  h.n = 7;
  for (int i = 1; i <= 6; ++i) h.hyperedges.push_back({0, i, i % 6 + 1});
  h.validate();
  ConstraintHypergraph hback = hypergraph_from_json(hypergraph_to_json(h));
  CHECK(hback.n == 7);
  REQUIRE(hback.hyperedges.size() == 6);
  CHECK(hback.hyperedges[0] == std::vector<int>{0, 1, 2});

  CHECK_THROWS_AS(graph_from_json("{}"), Error);
  CHECK_THROWS_AS(hypergraph_from_json(R"({"n": 3})"), Error);
}

TEST_CASE("format_double round trips through parsing") {
  for (double v : {1.0 / 3.0, 0.1, -0.032558074341426296, 1e-300, 3.0 / 32.0,
                   1234567890.123456789, 0.0}) {
    std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("content digest is the 64-bit FNV-1a hash") {
  CHECK(content_digest("") == "cbf29ce484222325");
  CHECK(content_digest("abc") == "e71fa2190541574b");
  CHECK(content_digest("abc") == content_digest("abc"));
  CHECK(content_digest("abd") != content_digest("abc"));
}

TEST_CASE("file helpers round trip binary content") {
  std::string path = "io_test_scratch.bin";
  std::string payload("line1\nline2\0tail", 16);  // embedded NUL stays intact
  payload.push_back('\n');
  write_file(path, payload);
  CHECK(read_file(path) == payload);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file("definitely/not/a/file.json"), Error);
}
