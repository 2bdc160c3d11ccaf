#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/catalog.hpp"
#include "core/graph.hpp"
#include "core/rng.hpp"
#include "core/solver.hpp"

using namespace grt;

namespace {

ConstraintHypergraph hex_triangles() {
  ConstraintHypergraph h;
  h.n = 7;
  for (int i = 1; i <= 6; ++i) h.hyperedges.push_back({0, i, i % 6 + 1});
  h.validate();
  return h;
}

std::vector<double> random_components(uint64_t item) {
  std::mt19937_64 g = substream(501, item);
  std::vector<double> a(13);
  for (double& v : a) v = 0.4 * gaussian(g);
  return a;
}

}  // namespace

TEST_CASE("cost vanishes exactly on the known solution families") {
  for (const SolutionRecord& rec :
       {hexagonal_type1(0.03, 0, 0, false), hexagonal_type1(0.07, 1, 1, true),
        hexagonal_type3(-0.2), hexagonal_type3(0.05), hexagonal_p2('A'), hexagonal_p2('B')}) {
    CHECK(std::abs(solver_cost(rec.components)) <= 1e-13);
    CHECK(std::abs(solver_residual_cost(rec.components)) <= 1e-12);
  }
  CHECK(solver_cost(random_components(0)) > 1e-4);
  CHECK_THROWS_AS(solver_cost(std::vector<double>(5, 1.0)), Error);
}

TEST_CASE("cost is scale invariant") {
  std::vector<double> a = random_components(1);
  double base = solver_cost(a);
  for (double& v : a) v *= 2.75;
  CHECK(std::abs(solver_cost(a) - base) <= 1e-12 * std::max(1.0, std::abs(base)));
}

TEST_CASE("analytic gradient matches central differences") {
  for (uint64_t item = 0; item < 20; ++item) {
    std::vector<double> a = random_components(item + 10);
    std::vector<double> grad = solver_gradient(a);
    REQUIRE(grad.size() == 13);
    double h = 1e-6;
    for (size_t i = 0; i < a.size(); ++i) {
      std::vector<double> hi = a, lo = a;
      hi[i] += h;
      lo[i] -= h;
      double fd = (solver_cost(hi) - solver_cost(lo)) / (2.0 * h);
      CHECK(std::abs(grad[i] - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("gauge moves relabel a point without changing its cost") {
  std::vector<double> a = random_components(40);
  auto variants = gauge_variants(a);
  REQUIRE(variants.size() == 8);
  CHECK(variants[0] == a);
  double base = solver_cost(a);
  for (const auto& v : variants)
    CHECK(std::abs(solver_cost(v) - base) <= 1e-12 * std::max(1.0, base));

  std::vector<double> canon = canonical_components(a);
  CHECK(canonical_components(canon) == canon);
  for (const auto& v : variants) CHECK(canonical_components(v) == canon);
  CHECK(std::find(variants.begin(), variants.end(), canon) != variants.end());
}

TEST_CASE("classification recovers the generating family") {
  for (double a : {0.01, 0.04, 0.07})
    for (int j = 0; j <= 1; ++j)
      for (int k = 0; k <= 1; ++k)
        CHECK(classify_hexagonal(hexagonal_type1(a, j, k, false).components) ==
              FamilyTag::HexTypeI);
  for (double a : {-0.2, 0.0, 0.06})
    CHECK(classify_hexagonal(hexagonal_type3(a).components) == FamilyTag::HexTypeIII);

  // point A lies on the branch-family curve; point B is its own island
  CHECK(classify_hexagonal(hexagonal_p2('A').components) == FamilyTag::HexTypeI);
  CHECK(classify_hexagonal(hexagonal_p2('B').components) == FamilyTag::Custom);
  CHECK(classify_hexagonal(random_components(77)) == FamilyTag::Custom);
}

TEST_CASE("small search run is deterministic and constraint-satisfying") {
  SolveOptions opt;
  opt.seed = 1;
  opt.restarts = 6;
  opt.threads = 1;
  std::vector<SolverHit> hits = solve_hexagonal(opt);

  SolveOptions opt2 = opt;
  opt2.threads = 2;
  std::vector<SolverHit> hits2 = solve_hexagonal(opt2);
  REQUIRE(hits.size() == hits2.size());
  CHECK(scan_csv(hits) == scan_csv(hits2));

  ConstraintHypergraph target = hex_triangles();
  for (const SolverHit& hit : hits) {
    CHECK(hit.cost <= 1e-18);
    CHECK(std::abs(hit.record.tensor.norm2() - 1.0) <= 1e-10);
    CHECK(check_hypergraph_constrained(hit.record.tensor, target, 1e-8).pass);
    CHECK(hit.record.components == canonical_components(hit.record.components));
  }
  for (size_t i = 1; i < hits.size(); ++i) CHECK(hits[i - 1].cost <= hits[i].cost);

  std::string csv = scan_csv(hits);
  CHECK(csv.rfind("seed,cost,ds013,ds014,ds123,ds124,ds135,type,a_1", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(hits.size()) + 1);
}
