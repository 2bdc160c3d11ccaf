#include <doctest.h>

#include <algorithm>

#include "core/catalog.hpp"
#include "core/graph.hpp"
#include "core/rng.hpp"
#include "core/tensor.hpp"

using namespace grt;

namespace {

ConstraintGraph complete_graph(int n) {
  ConstraintGraph g;
  g.n = n;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.edges.emplace_back(u, v);
  g.validate();
  return g;
}

ConstraintGraph cycle_graph(int n) {
  ConstraintGraph g;
  g.n = n;
  for (int i = 1; i <= n; ++i) g.edges.emplace_back(i, i % n + 1);
  g.validate();
  return g;
}

// all cliques of g with size <= n/2, as explicit hyperedges
ConstraintHypergraph clique_hypergraph(const ConstraintGraph& g) {
  ConstraintHypergraph h;
  h.n = g.n;
  int m_max = g.n / 2;
  for (int mask = 1; mask < (1 << g.n); ++mask) {
    std::vector<int> s;
    for (int v = 1; v <= g.n; ++v)
      if (mask & (1 << (v - 1))) s.push_back(v);
    if (static_cast<int>(s.size()) > m_max) continue;
    bool clique = true;
    for (size_t i = 0; i < s.size() && clique; ++i)
      for (size_t j = i + 1; j < s.size() && clique; ++j)
        clique = g.adjacent(s[i], s[j]);
    if (clique) h.hyperedges.push_back(s);
  }
  h.validate();
  return h;
}

}  // namespace

TEST_CASE("maximal cliques of standard graphs") {
  auto k5 = maximal_cliques(complete_graph(5));
  REQUIRE(k5.size() == 1);
  CHECK(k5[0] == std::vector<int>{1, 2, 3, 4, 5});

  auto c5 = maximal_cliques(cycle_graph(5));
  CHECK(c5.size() == 5);
  for (const auto& c : c5) CHECK(c.size() == 2);

  auto w6 = maximal_cliques(wheel_graph(6));
  CHECK(w6.size() == 6);
  for (const auto& c : w6) {
    CHECK(c.size() == 3);
    CHECK(c[0] == 1);  // every triangle goes through the hub
  }

  // isolated vertices count as singleton cliques
  ConstraintGraph sparse;
  sparse.n = 4;
  sparse.edges = {{1, 2}};
  sparse.validate();
  auto cl = maximal_cliques(sparse);
  REQUIRE(cl.size() == 3);
  CHECK(cl[0] == std::vector<int>{1, 2});
  CHECK(cl[1] == std::vector<int>{3});
  CHECK(cl[2] == std::vector<int>{4});
}

TEST_CASE("complete graph minus a perfect matching has cube-like cliques") {
  ConstraintGraph g;
  g.n = 8;
  for (int u = 1; u <= 8; ++u)
    for (int v = u + 1; v <= 8; ++v)
      if (!(u % 2 == 1 && v == u + 1)) g.edges.emplace_back(u, v);
  g.validate();
  auto cl = maximal_cliques(g);
  CHECK(cl.size() == 16);  // one vertex from each matched pair
  for (const auto& c : cl) CHECK(c.size() == 4);
}

TEST_CASE("graph validation rejects bad edges") {
  ConstraintGraph g;
  g.n = 3;
  g.edges = {{1, 4}};
  CHECK_THROWS_AS(g.validate(), Error);
  g.edges = {{2, 2}};
  CHECK_THROWS_AS(g.validate(), Error);
  ConstraintHypergraph h;
  h.n = 3;
  h.hyperedges = {{1, 1, 2}};
  CHECK_THROWS_AS(h.validate(), Error);
  h.hyperedges = {{}};
  CHECK_THROWS_AS(h.validate(), Error);
}

TEST_CASE("pentagon family passes the complete-graph check") {
  for (double theta : {0.0, 0.7, 4.1}) {
    SolutionRecord rec = pentagonal_ame(theta);
    CheckReport rep = check_graph_constrained(rec.tensor, complete_graph(5), 1e-12);
    CHECK(rep.pass);
  }
}

TEST_CASE("isolated pentagon point is cycle- but not complete-constrained") {
  SolutionRecord rec = pentagonal_isolated();
  CHECK(check_graph_constrained(rec.tensor, cycle_graph(5), 1e-12).pass);
  CheckReport k5 = check_graph_constrained(rec.tensor, complete_graph(5), 1e-8);
  CHECK_FALSE(k5.pass);
  // the failures are exactly the skip pairs
  for (const auto& chk : k5.checks) {
    if (chk.subset.size() != 2 || chk.proportional) continue;
    int gap = chk.subset[1] - chk.subset[0];
    CHECK((gap == 2 || gap == 3));
  }
}

TEST_CASE("GHZ fails the square-cycle check on pair marginals") {
  DenseTensor ghz = ghz_tensor(4, 2);
  CheckReport rep = check_graph_constrained(ghz, cycle_graph(4), 1e-10);
  CHECK_FALSE(rep.pass);
  bool singleton_ok = false;
  for (const auto& chk : rep.checks)
    if (chk.subset.size() == 1 && chk.proportional && !chk.implied) singleton_ok = true;
  CHECK(singleton_ok);  // one-site marginals are maximally mixed
}

TEST_CASE("six-qubit perfect tensor passes the complete-graph check") {
  CheckReport rep = check_graph_constrained(ame_6_2(), complete_graph(6), 1e-12);
  CHECK(rep.pass);
  size_t direct_triples = 0;
  for (const auto& chk : rep.checks)
    if (chk.subset.size() == 3 && !chk.implied) ++direct_triples;
  CHECK(direct_triples == 20);
}

TEST_CASE("graph and hypergraph drivers agree on random inputs") {
  for (int round = 0; round < 20; ++round) {
    std::mt19937_64 gen = substream(314, static_cast<uint64_t>(round));
    int n = 3 + static_cast<int>(gen() % 4);  // 3..6 legs
    ConstraintGraph g;
    g.n = n;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (uniform01(gen) < 0.55) g.edges.emplace_back(u, v);
    g.validate();

    DenseTensor t(std::vector<int>(static_cast<size_t>(n), 2), 1);
    if (round % 4 == 0 && n == 5) {
      t = pentagonal_ame(uniform01(gen) * 6.28).tensor;  // occasional passing case
      g = complete_graph(5);
    } else {
      for (Cx& c : t.coeffs()) c = Cx(gaussian(gen), gaussian(gen));
    }

    bool via_graph = check_graph_constrained(t, g, 1e-9).pass;
    bool via_hyper = check_hypergraph_constrained(t, clique_hypergraph(g), 1e-9).pass;
    CHECK(via_graph == via_hyper);
  }
}

TEST_CASE("faithfulness scan finds exactly the isolated pentagon's subsets") {
  SolutionRecord rec = pentagonal_isolated();
  ConstraintHypergraph fh = faithful_hypergraph(rec.tensor, 1e-8);
  std::vector<std::vector<int>> want = {{1}, {2}, {3}, {4}, {5},
                                        {1, 2}, {1, 5}, {2, 3}, {3, 4}, {4, 5}};
  CHECK(fh.hyperedges == want);

  // monotonicity: the cycle's cliques are all present
  for (const auto& e : clique_hypergraph(cycle_graph(5)).hyperedges)
    CHECK(std::find(fh.hyperedges.begin(), fh.hyperedges.end(), e) != fh.hyperedges.end());
}

TEST_CASE("product basis state has no identity-proportional reduction") {
  DenseTensor t({2, 2, 2, 2}, 1);
  t.coeffs()[0] = 1.0;
  CHECK(faithful_hypergraph(t, 1e-8).hyperedges.empty());
}

TEST_CASE("contracting two cycle-constrained pentagons composes to two paths") {
  ConstraintGraph c5 = cycle_graph(5);
  ConstraintGraph comp = compose_contraction(c5, c5, {1, 2}, {1, 2});
  CHECK(comp.n == 6);
  std::vector<std::pair<int, int>> want = {{1, 2}, {2, 3}, {4, 5}, {5, 6}};
  CHECK(comp.edges == want);

  SolutionRecord iso = pentagonal_isolated();
  DenseTensor joined = contract(iso.tensor, iso.tensor, {{1, 1}, {2, 2}});
  CHECK(check_graph_constrained(joined, comp, 1e-10).pass);

  CHECK_THROWS_AS(compose_contraction(c5, c5, {1, 3}, {1, 2}), Error);
}

TEST_CASE("hyperedge composition keeps survivors and joins super-edges") {
  ConstraintHypergraph h1;
  h1.n = 4;
  h1.hyperedges = {{1, 2}, {1, 2, 3}, {3, 4}};
  h1.validate();
  ConstraintHypergraph h2;
  h2.n = 3;
  h2.hyperedges = {{1, 2}, {2, 3}};
  h2.validate();
  ConstraintHypergraph out = compose_contraction(h1, h2, {1, 2}, {1, 2});
  CHECK(out.n == 3);
  // survivor {3,4} maps to {1,2}; the superset edge {1,2,3} leaves residue {1}
  std::vector<std::vector<int>> want = {{1}, {1, 2}};
  CHECK(out.hyperedges == want);
  CHECK_THROWS_AS(compose_contraction(h1, h2, {1, 4}, {1, 2}), Error);
}

TEST_CASE("contracting two perfect tensors on a triple stays constrained") {
  ConstraintHypergraph k6_triples;
  k6_triples.n = 6;
  for (int a = 1; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b)
      for (int c = b + 1; c <= 6; ++c) k6_triples.hyperedges.push_back({a, b, c});
  k6_triples.validate();
  ConstraintHypergraph comp =
      compose_contraction(k6_triples, k6_triples, {1, 2, 3}, {1, 2, 3});
  CHECK(comp.n == 6);
  std::vector<std::vector<int>> want = {{1, 2, 3}, {4, 5, 6}};
  CHECK(comp.hyperedges == want);

  DenseTensor ame = ame_6_2();
  DenseTensor joined = contract(ame, ame, {{1, 1}, {2, 2}, {3, 3}});
  CHECK(check_hypergraph_constrained(joined, comp, 1e-10).pass);
}

TEST_CASE("check report serializes to JSON") {
  SolutionRecord rec = pentagonal_isolated();
  CheckReport rep = check_graph_constrained(rec.tensor, cycle_graph(5), 1e-10);
  std::string text = rep.to_json();
  CHECK(text.find("\"pass\":true") != std::string::npos);
  CHECK(text.find("\"checks\"") != std::string::npos);
}
