#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/catalog.hpp"
#include "core/rng.hpp"
#include "core/symmetry.hpp"
#include "core/tensor.hpp"

using namespace grt;

namespace {

size_t flat_index(const std::vector<int>& tuple, int d) {
  size_t idx = 0;
  for (int x : tuple) idx = idx * static_cast<size_t>(d) + static_cast<size_t>(x);
  return idx;
}

std::vector<int> act(const SymmetryElement& e, const std::vector<int>& in, int d) {
  std::vector<int> out(in.size());
  for (size_t a = 0; a < in.size(); ++a) {
    int x = in[static_cast<size_t>(e.src[a])];
    out[a] = e.spin_flip ? d - 1 - x : x;
  }
  return out;
}

}  // namespace

TEST_CASE("group closures have the expected orders") {
  CHECK(group_closure(cyclic_spec(5)).size() == 5);
  CHECK(group_closure(ring_spec(6, false, false)).size() == 6);
  CHECK(group_closure(ring_spec(6, true, false)).size() == 12);
  CHECK(group_closure(ring_spec(6, true, true)).size() == 24);
  CHECK_THROWS_AS(group_closure(cyclic_spec(8), 4), Error);
}

TEST_CASE("orbit counts for the ansatz symmetries") {
  OrbitTable penta = orbits(cyclic_spec(5), 2);
  CHECK(penta.count() == 8);
  OrbitTable hex_rot = orbits(ring_spec(6, false, false), 2);
  CHECK(hex_rot.count() == 28);
  OrbitTable hex_full = orbits(ring_spec(6, true, true), 2);
  CHECK(hex_full.count() == 13);

  // sizes partition the index set
  auto total = [](const OrbitTable& t) {
    int s = 0;
    for (int v : t.orbit_size) s += v;
    return s;
  };
  CHECK(total(penta) == 32);
  CHECK(total(hex_rot) == 128);
  CHECK(total(hex_full) == 128);

  CHECK(penta.representatives == pentagon_slots());
  CHECK(hex_full.representatives == hexagon_slots());
}

TEST_CASE("orbit table is consistent with the group action") {
  SymmetrySpec spec = ring_spec(6, true, true);
  OrbitTable table = orbits(spec, 2);
  auto group = group_closure(spec);

  for (int i = 0; i < table.count(); ++i) {
    const auto& rep = table.representatives[i];
    CHECK(table.orbit_of_tuple(rep) == i);
    CHECK(table.orbit_of[flat_index(rep, 2)] == i);
    // representative is the lexicographic minimum of its orbit
    for (const auto& e : group) CHECK(rep <= act(e, rep, 2));
    if (i > 0) CHECK(table.representatives[i - 1] < rep);
  }

  std::mt19937_64 gen = substream(99, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> tuple(7);
    for (int& x : tuple) x = static_cast<int>(gen() % 2);
    int id = table.orbit_of_tuple(tuple);
    for (const auto& e : spec.generators)
      CHECK(table.orbit_of_tuple(act(e, tuple, 2)) == id);
  }
}

TEST_CASE("expand fills every orbit member with its slot value") {
  SolutionRecord rec = hexagonal_type1(0.05, 0, 0, false);
  OrbitTable table = orbits(ring_spec(6, true, true), 2);
  DenseTensor rebuilt = expand(rec.components, table, rec.tensor.label_base());
  REQUIRE(rebuilt.size() == rec.tensor.size());
  for (size_t i = 0; i < rebuilt.size(); ++i)
    CHECK(std::abs(rebuilt.coeffs()[i] - rec.tensor.coeffs()[i]) <= 1e-15);

  CHECK_THROWS_AS(expand(std::vector<double>{1.0, 2.0}, table), Error);
}

TEST_CASE("constraint equation counts after degeneracy pruning") {
  CHECK(constraint_equations(cyclic_spec(5), 2, {0, 1}).count() == 7);
  CHECK(constraint_equations(ring_spec(6, false, false), 2, {0, 1, 2}).count() == 33);
  CHECK(constraint_equations(ring_spec(6, true, true), 2, {0, 1, 2}).count() == 14);
}

TEST_CASE("catalog points satisfy their constraint equations") {
  // pentagon: reduction must have unit diagonal, so rescale the slot values
  EquationSet penta = constraint_equations(cyclic_spec(5), 2, {0, 1});
  SolutionRecord iso = pentagonal_isolated();
  for (double r : penta.residuals(iso.components)) CHECK(std::abs(r) <= 1e-12);

  SolutionRecord ame = pentagonal_ame(0.9);
  std::vector<double> half = ame.components;
  for (double& v : half) v *= 0.5;
  for (double r : penta.residuals(half)) CHECK(std::abs(r) <= 1e-12);

  // hexagon: unit-norm tensors reduce to I/8 on three legs
  EquationSet hex = constraint_equations(ring_spec(6, true, true), 2, {0, 1, 2});
  for (auto [j, k] : {std::pair{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
    SolutionRecord rec = hexagonal_type1(0.05, j, k, false);
    std::vector<double> scaled = rec.components;
    for (double& v : scaled) v *= std::sqrt(8.0);
    for (double r : hex.residuals(scaled)) CHECK(std::abs(r) <= 1e-12);
  }

  // generic values do not satisfy the equations
  std::vector<double> flat(13, 0.3);
  double worst = 0.0;
  for (double r : hex.residuals(flat)) worst = std::max(worst, std::abs(r));
  CHECK(worst > 0.1);
}

TEST_CASE("rotation-only equations hold for the hexagonal family too") {
  EquationSet eq = constraint_equations(ring_spec(6, false, false), 2, {0, 1, 2});
  SolutionRecord rec = hexagonal_type1(0.07, 1, 0, true);
  std::vector<double> vals(eq.table.representatives.size());
  for (size_t i = 0; i < vals.size(); ++i) {
    size_t idx = flat_index(eq.table.representatives[i], 2);
    vals[i] = rec.tensor.coeffs()[idx].real() * std::sqrt(8.0);
  }
  for (double r : eq.residuals(vals)) CHECK(std::abs(r) <= 1e-12);
}

TEST_CASE("local rotation matches a per-axis matrix product") {
  SolutionRecord rec = pentagonal_ame(1.3);
  double phi = 0.42;
  DenseTensor rotated = apply_local_rotation(rec.tensor, phi);

  Matrix m(2, 2);
  m << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  DenseTensor manual = rec.tensor;
  for (int axis = 0; axis < rec.tensor.order(); ++axis)
    manual = manual.apply_axis_matrix(axis, m);
  REQUIRE(manual.size() == rotated.size());
  for (size_t i = 0; i < manual.size(); ++i)
    CHECK(std::abs(manual.coeffs()[i] - rotated.coeffs()[i]) <= 1e-14);

  DenseTensor back = apply_local_rotation(rotated, -phi);
  for (size_t i = 0; i < back.size(); ++i)
    CHECK(std::abs(back.coeffs()[i] - rec.tensor.coeffs()[i]) <= 1e-14);
}

TEST_CASE("equation construction validates its inputs") {
  CHECK_THROWS_AS(constraint_equations(cyclic_spec(5), 2, {0, 7}), Error);
  CHECK_THROWS_AS(constraint_equations(cyclic_spec(5), 2, {}), Error);
  EquationSet eq = constraint_equations(cyclic_spec(5), 2, {0, 1});
  CHECK_THROWS_AS(eq.residuals(std::vector<double>(3, 0.0)), Error);
}
