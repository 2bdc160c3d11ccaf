// Constraint graphs and hypergraphs over tensor legs: a clique (hyperedge) of
// size m <= floor(n/2) demands that the reduction onto it be proportional to
// the identity. Includes clique enumeration, the verification drivers, the
// faithfulness search, and the contraction composition rules.
#pragma once

#include <string>
#include <vector>

#include "core/tensor.hpp"

namespace grt {

struct ConstraintGraph {
  int n = 0;                                  // vertices labelled 1..n
  std::vector<std::pair<int, int>> edges;     // undirected, no loops
  void validate() const;
  bool adjacent(int u, int v) const;
};

struct ConstraintHypergraph {
  int n = 0;
  // Vertices are tensor leg labels (0-based when the tensor has a bulk leg,
  // 1-based otherwise). Each hyperedge is sorted ascending after validate.
  std::vector<std::vector<int>> hyperedges;
  void validate();
};

// Bron-Kerbosch with pivoting. Cliques returned sorted (each ascending, list
// ordered lexicographically). Isolated vertices count as singleton cliques.
std::vector<std::vector<int>> maximal_cliques(const ConstraintGraph& g);

struct SubsetCheck {
  std::vector<int> subset;
  bool proportional = false;
  bool implied = false;       // skipped because a checked superset passed
  double constant = 0.0;      // real part of the proportionality constant
  double max_deviation = 0.0;
};

struct CheckReport {
  bool pass = false;
  double tol = 0.0;
  std::vector<SubsetCheck> checks;
  std::string to_json() const;
};

// Every clique C of g with |C| <= floor(n/2) must reduce to ~identity within
// tol. Subsets of passing cliques are recorded as implied, not recomputed.
CheckReport check_graph_constrained(const DenseTensor& t, const ConstraintGraph& g, double tol);

// Same driver over explicit hyperedges (only those with size <= floor(n/2)
// are testable; larger ones are recorded as skipped-implied=false checks).
CheckReport check_hypergraph_constrained(const DenseTensor& t, const ConstraintHypergraph& h,
                                         double tol);

// All subsets S with 1 <= |S| <= floor(n/2) whose reduction is ~identity.
// Exhaustive; guarded to order <= 12.
ConstraintHypergraph faithful_hypergraph(const DenseTensor& t, double tol);

// Contraction composition: vertices of clique1/clique2 are removed, the rest
// of g1 keeps its relative order followed by the rest of g2 (matching the
// index order produced by contract()). pairing[i] pairs clique1[pairing[i]]
// with clique2[i]; only the removed sets matter for the resulting graph.
ConstraintGraph compose_contraction(const ConstraintGraph& g1, const ConstraintGraph& g2,
                                    const std::vector<int>& clique1,
                                    const std::vector<int>& clique2);

// Hypergraph version: hyperedges meeting the contracted set are dropped, and
// for every pair of hyperedges e1' >= e1, e2' >= e2 the surviving vertices of
// both are joined into a new hyperedge.
ConstraintHypergraph compose_contraction(const ConstraintHypergraph& h1,
                                         const ConstraintHypergraph& h2,
                                         const std::vector<int>& edge1,
                                         const std::vector<int>& edge2);

}  // namespace grt
