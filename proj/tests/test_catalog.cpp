#include <doctest.h>

#include <cmath>
#include <map>

#include "core/catalog.hpp"
#include "core/graph.hpp"
#include "core/rng.hpp"
#include "core/tensor.hpp"

using namespace grt;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("pentagon family keeps its coefficient pattern at every angle") {
  for (double theta : {0.0, 0.9, 2.7, 5.5}) {
    SolutionRecord rec = pentagonal_ame(theta);
    CHECK(rec.family == FamilyTag::PentaAme);
    const auto& c = rec.tensor.coeffs();
    // two sign-linked quadruples of orbits
    CHECK(std::abs(c[0b00000] - c[0b00101]) <= 1e-15);
    CHECK(std::abs(c[0b00000] + c[0b00011]) <= 1e-15);
    CHECK(std::abs(c[0b00000] + c[0b01111]) <= 1e-15);
    CHECK(std::abs(c[0b11111] - c[0b01011]) <= 1e-15);
    CHECK(std::abs(c[0b11111] + c[0b00111]) <= 1e-15);
    CHECK(std::abs(c[0b11111] + c[0b00001]) <= 1e-15);
    CHECK(rec.tensor.norm2() == doctest::Approx(16.0).epsilon(1e-13));
  }
}

TEST_CASE("isolated pentagon point: mixed neighbours, pinned skip pairs") {
  SolutionRecord rec = pentagonal_isolated();
  CHECK(rec.family == FamilyTag::PentaIsolated);
  CHECK(rec.tensor.norm2() == doctest::Approx(4.0).epsilon(1e-13));

  DensityMatrix rho12 = reduce(rec.tensor, Bipartition{{1, 2}});
  auto rep = proportional_to_identity(rho12.rho, 1e-12);
  CHECK(rep.proportional);
  CHECK(std::abs(rep.constant - Cx(1.0, 0.0)) <= 1e-12);

  Matrix ref = pentagon_skip_pair_reference();
  CHECK(std::abs(ref.trace().real() - 4.0) <= 1e-12);
  CHECK_FALSE(proportional_to_identity(ref, 1e-8).proportional);
  DensityMatrix rho13 = reduce(rec.tensor, Bipartition{{1, 3}});
  Matrix scaled = rho13.rho * (4.0 / rho13.rho.trace().real());
  CHECK((scaled - ref).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("hexagonal one-parameter family obeys the branch offsets") {
  double r8 = 1.0 / (8.0 * std::sqrt(2.0));
  double r4 = 1.0 / (4.0 * std::sqrt(2.0));
  for (int j = 0; j <= 1; ++j)
    for (int k = 0; k <= 1; ++k)
      for (bool pb : {false, true}) {
        SolutionRecord rec = hexagonal_type1(0.05, j, k, pb);
        CHECK(rec.family == FamilyTag::HexTypeI);
        CHECK(rec.tensor.norm2() == doctest::Approx(1.0).epsilon(1e-12));
        const auto& a = rec.components;
        double sj = j == 0 ? 1.0 : -1.0;
        double sk = k == 0 ? 1.0 : -1.0;
        CHECK(std::abs(a[1] - a[0] - sj * r8) <= 1e-14);
        CHECK(std::abs(a[4] - a[5] - sj * r8) <= 1e-14);
        CHECK(std::abs(a[6] - a[7] - sj * r8) <= 1e-14);
        CHECK(std::abs(a[3] - a[2] - sk * r4) <= 1e-14);
      }

  CHECK_THROWS_AS(hexagonal_type1(0.0), Error);
  CHECK_THROWS_AS(hexagonal_type1(std::sqrt(2.0) / 16.0), Error);
  CHECK_THROWS_AS(hexagonal_type1(-0.01), Error);
}

TEST_CASE("vanishing-entropy family covers its admissible interval") {
  for (double a : {-0.25, 0.0, 0.08}) {
    SolutionRecord rec = hexagonal_type3(a);
    CHECK(rec.family == FamilyTag::HexTypeIII);
    CHECK(rec.tensor.norm2() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(hexagonal_type3(-3.0 * std::sqrt(2.0) / 16.0), Error);
  CHECK_THROWS_AS(hexagonal_type3(std::sqrt(2.0) / 16.0), Error);
}

TEST_CASE("the two closed-form hexagon points carry frozen profiles") {
  SolutionRecord a = hexagonal_p2('A');
  CHECK(a.family == FamilyTag::HexP2A);
  REQUIRE(a.has_profile);
  CHECK(std::abs(a.profile.d013 - 0.02328125) <= 1e-12);
  CHECK(std::abs(a.profile.d014 - 3.0 / 32.0) <= 1e-12);

  SolutionRecord b = hexagonal_p2('B');
  CHECK(b.family == FamilyTag::HexP2B);
  REQUIRE(b.has_profile);
  CHECK(std::abs(b.profile.d013 - 53.0 / 6400.0) <= 1e-12);
  CHECK(std::abs(b.profile.d014 - 19.0 / 160.0) <= 1e-12);

  CHECK_THROWS_AS(hexagonal_p2('x'), Error);
}

TEST_CASE("family names are stable identifiers") {
  CHECK(family_name(FamilyTag::PentaAme) == "penta-ame");
  CHECK(family_name(FamilyTag::HexTypeI) == "hex-type1");
  CHECK(family_name(FamilyTag::HexTypeIII) == "hex-type3");
  CHECK(family_name(FamilyTag::HexP2B) == "hex-p2b");
  CHECK(family_name(FamilyTag::Custom) == "custom");
}

TEST_CASE("GHZ tensor has unit weight on the diagonal tuples") {
  DenseTensor g = ghz_tensor(4, 2);
  CHECK(g.norm2() == doctest::Approx(2.0));
  CHECK(g.coeffs()[0] == Cx(1.0, 0.0));
  CHECK(g.coeffs()[15] == Cx(1.0, 0.0));
  CHECK(g.coeffs()[1] == Cx(0.0, 0.0));

  DenseTensor g33 = ghz_tensor(3, 3);
  CHECK(g33.norm2() == doctest::Approx(3.0));
  CHECK(g33.coeffs()[13] == Cx(1.0, 0.0));  // |111>
  CHECK_THROWS_AS(ghz_tensor(0, 2), Error);
}

TEST_CASE("graph states flip sign once per excited edge") {
  DenseTensor gs = graph_state_tensor(2, {{0, 1}});
  CHECK(gs.coeffs()[0] == Cx(1.0, 0.0));
  CHECK(gs.coeffs()[1] == Cx(1.0, 0.0));
  CHECK(gs.coeffs()[2] == Cx(1.0, 0.0));
  CHECK(gs.coeffs()[3] == Cx(-1.0, 0.0));
  CHECK_THROWS_AS(graph_state_tensor(2, {{0, 2}}), Error);
}

TEST_CASE("six-qubit perfect tensor is the documented graph state") {
  DenseTensor t = ame_6_2();
  DenseTensor built = graph_state_tensor(6, ame_6_2_edges());
  REQUIRE(t.size() == built.size());
  for (size_t i = 0; i < t.size(); ++i) CHECK(t.coeffs()[i] == built.coeffs()[i]);
  CHECK(ame_6_2_edges().size() == 10);
}

TEST_CASE("bare wheel state passes its graph but is not faithful to it") {
  DenseTensor w = wheel_state(6);
  CHECK(w.order() == 7);
  CHECK(w.norm2() == doctest::Approx(128.0));
  CHECK(check_graph_constrained(w, wheel_graph(6), 1e-10).pass);

  // non-clique subsets that nevertheless reduce to the identity
  ConstraintHypergraph extra;
  extra.n = 7;
  extra.hyperedges = {{1, 2, 4}, {2, 3, 4}, {2, 4, 6}, {2, 5}};
  extra.validate();
  CheckReport rep = check_hypergraph_constrained(w, extra, 1e-10);
  CHECK(rep.pass);
}

TEST_CASE("coupling gate matches its matrix elements and is dual-unitary") {
  double j = 0.37;
  Matrix u = coupling_gate(j);
  CHECK(std::abs(u(0, 0) - std::exp(Cx(0, -j))) <= 1e-15);
  CHECK(std::abs(u(3, 3) - std::exp(Cx(0, -j))) <= 1e-15);
  CHECK(std::abs(u(1, 2) - Cx(0, -1) * std::exp(Cx(0, j))) <= 1e-15);
  CHECK(std::abs(u(2, 1) - Cx(0, -1) * std::exp(Cx(0, j))) <= 1e-15);
  CHECK(std::abs(u(1, 1)) <= 1e-15);
  CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-14);

  // at j = pi/4 the gate is swap up to a global phase
  Matrix s = coupling_gate(kPi / 4.0);
  Cx phase = std::exp(Cx(0, -kPi / 4.0));
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  CHECK((s - phase * swap).cwiseAbs().maxCoeff() <= 1e-15);

  for (double jj : {0.0, 0.3, kPi / 4.0}) {
    CHECK(is_dual_unitary(coupling_gate(jj)));
    CHECK_FALSE(is_two_unitary(coupling_gate(jj)));  // no two-qubit perfect gate exists
  }
}

TEST_CASE("dressed gates stay dual-unitary for random local unitaries") {
  std::mt19937_64 g = substream(7, 0);
  for (int i = 0; i < 50; ++i) {
    Matrix u1 = haar_unitary(2, g), u2 = haar_unitary(2, g);
    Matrix u3 = haar_unitary(2, g), u4 = haar_unitary(2, g);
    Matrix u = dual_unitary_gate(uniform01(g) * 1.5, u1, u2, u3, u4);
    CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(is_dual_unitary(u));
    CHECK_FALSE(is_two_unitary(u));
  }
  Matrix bad = Matrix::Ones(2, 2);
  CHECK_THROWS_AS(dual_unitary_gate(0.3, bad, bad, bad, bad), Error);
}

TEST_CASE("frame gate maps are deterministic with one gate per distance") {
  auto g4 = frame_gates(4, 0.3, 11);
  auto g5 = frame_gates(5, 0.3, 11);
  auto g6 = frame_gates(6, 0.3, 11);
  CHECK(g4.size() == 1);
  CHECK(g4.count(2) == 1);
  CHECK(g5.size() == 1);
  CHECK(g6.size() == 2);
  CHECK(g6.count(3) == 1);
  for (const auto& [d, m] : g6) CHECK(is_dual_unitary(m));

  auto again = frame_gates(6, 0.3, 11);
  for (const auto& [d, m] : g6)
    CHECK((m - again.at(d)).cwiseAbs().maxCoeff() == 0.0);

  CHECK(frame_tensor(4, g4).order() == 8);
  CHECK(frame_tensor(6, g6).order() == 12);
}

TEST_CASE("framed wheel marginals distinguish cliques from non-cliques") {
  auto gates = frame_gates(6, 0.3, 5);
  DenseTensor fw = framed_wheel_tensor(6, gates);
  REQUIRE(fw.order() == 7);
  CHECK(fw.dim(0) == 2);
  CHECK(fw.dim(1) == 8);

  auto passes = [&](std::vector<int> subset) {
    ConstraintHypergraph h;
    h.n = 7;
    h.hyperedges = {std::move(subset)};
    h.validate();
    return check_hypergraph_constrained(fw, h, 1e-8).pass;
  };
  for (int i = 1; i <= 6; ++i) CHECK(passes({0, i, i % 6 + 1}));  // hub triangles
  CHECK(passes({0, 1}));
  CHECK(passes({1, 2}));
  CHECK_FALSE(passes({0, 1, 3}));
  CHECK_FALSE(passes({0, 2, 4}));
  CHECK_FALSE(passes({1, 2, 3}));
  CHECK_FALSE(passes({2, 3, 4}));
  CHECK_FALSE(passes({1, 3}));
  CHECK_FALSE(passes({1, 4}));

  // dressing every composite leg with one shared unitary changes nothing
  std::mt19937_64 g = substream(17, 0);
  Matrix shared = haar_unitary(8, g);
  DenseTensor dressed = framed_wheel_tensor(6, gates, {shared});
  CHECK(passes({0, 1, 2}));
  ConstraintHypergraph h;
  h.n = 7;
  h.hyperedges = {{0, 1, 2}, {1, 3}};
  h.validate();
  CheckReport rep = check_hypergraph_constrained(dressed, h, 1e-8);
  CHECK(rep.checks[0].proportional);
  CHECK_FALSE(rep.checks[1].proportional);

  CHECK_THROWS_AS(framed_wheel_tensor(6, gates, {shared, shared}), Error);
  Matrix bad = Matrix::Ones(8, 8);
  CHECK_THROWS_AS(framed_wheel_tensor(6, gates, {bad}), Error);
}
