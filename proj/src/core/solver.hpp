// Numerical search for seven-leg ring-symmetric isometry tensors: minimise
// the purity excess of the three-site reduction over the 13 orbit components,
// polish converged points with Gauss-Newton on the isometry residuals, then
// canonicalise, deduplicate and classify the survivors against the known
// closed-form families.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/catalog.hpp"

namespace grt {

struct SolveOptions {
  uint64_t seed = 1;
  int restarts = 200;
  int max_iterations = 500;      // BFGS iteration cap per restart
  double cost_threshold = 1e-18; // acceptance cut after polishing
  bool polish = true;
  double classify_tol = 1e-6;
  int threads = 0;  // 0 = hardware concurrency; results do not depend on it
};

struct SolverHit {
  int restart = 0;   // substream index that produced the point
  double cost = 0.0; // purity excess at the accepted point
  SolutionRecord record;
};

// Tr(rho_hat^2) - 1/8 for the three-site reduction of the expanded tensor;
// scale invariant in the orbit components a (size 13).
double solver_cost(const std::vector<double>& a);
std::vector<double> solver_gradient(const std::vector<double>& a);
// Equivalent cost: sum of the squared distinct isometry residuals at the
// normalisation where the three-site reduction should equal the identity.
double solver_residual_cost(const std::vector<double>& a);

// Gauge moves that relabel a solution without changing the state it encodes:
// global sign, the bulk spin flip (swaps the paired components) and the bond
// sign change (negates the odd-bond-sum components). 8 variants, returned
// with the identity first.
std::vector<std::vector<double>> gauge_variants(const std::vector<double>& a);
// Lexicographically smallest gauge variant.
std::vector<double> canonical_components(const std::vector<double>& a);

// Family assignment from the component pattern (components at unit tensor
// norm). Checks the type-1 offset signature first, then the type-3 magnitude
// pairing, then the type-2 discriminant; anything else is Custom.
FamilyTag classify_hexagonal(const std::vector<double>& components, double tol = 1e-6);

// Multi-start search. Deterministic for fixed seed: every restart draws from
// its own substream and the merge order is fixed, so the thread count does
// not affect the result. Hits are deduplicated up to gauge moves (keeping the
// lower cost) and sorted by (cost, components).
std::vector<SolverHit> solve_hexagonal(const SolveOptions& opt = {});

// CSV table of hits: restart id, cost, entropy deltas, family label and the
// 13 components at unit tensor norm.
std::string scan_csv(const std::vector<SolverHit>& hits);

}  // namespace grt
