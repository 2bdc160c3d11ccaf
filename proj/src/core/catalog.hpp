// Closed-form solution families and reference state constructors: the
// five-leg pentagon pair, the one-parameter hexagon families with their
// isolated companions, GHZ and graph states, the six-qubit perfect state,
// wheel states, dual-unitary gates and the planar gate frames built from
// them, plus the frame-dressed wheel tensor.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/entanglement.hpp"
#include "core/graph.hpp"
#include "core/symmetry.hpp"
#include "core/tensor.hpp"

namespace grt {

enum class FamilyTag {
  PentaAme,
  PentaIsolated,
  HexTypeI,
  HexTypeII,
  HexTypeIII,
  HexP2A,
  HexP2B,
  Custom,
};

std::string family_name(FamilyTag tag);

struct SolutionRecord {
  FamilyTag family = FamilyTag::Custom;
  std::vector<std::pair<std::string, double>> parameters;
  // One value per orbit, aligned with pentagon_slots() / hexagon_slots().
  std::vector<double> components;
  DenseTensor tensor;
  bool has_profile = false;
  EntropyProfile profile;
};

// Independent index tuples, fixed order (pentagon: C5 orbits of 5 qubit legs;
// hexagon: orbits of the full ring group on legs 0..6 with bulk leg 0).
const std::vector<std::vector<int>>& pentagon_slots();
const std::vector<std::vector<int>>& hexagon_slots();

const OrbitTable& pentagon_orbit_table();
const OrbitTable& hexagon_orbit_table();
const OrbitTable& hexagon_rotation_orbit_table();  // rotation subgroup only

DenseTensor pentagon_expand(const std::vector<double>& v, int label_base = 1);
DenseTensor hexagon_expand(const std::vector<double>& a, int label_base = 0);

SolutionRecord pentagonal_ame(double theta);
SolutionRecord pentagonal_isolated();
// Two-site reduction of the isolated pentagon state onto legs {1, 3} (one
// position apart on the ring), rescaled to trace 4. This is the reduction
// that stays away from the identity and pins the state down.
Matrix pentagon_skip_pair_reference();

// One-parameter hexagon family, 0 < a < sqrt(2)/16. j and k flip the signs of
// the two square roots fixing the discrete branch; plus_branch selects the
// companion branch of the defining quadratic.
SolutionRecord hexagonal_type1(double a, int j = 0, int k = 0,
                               bool plus_branch = false);
// One-parameter family with identically vanishing d013,
// -3 sqrt(2)/16 < a < sqrt(2)/16.
SolutionRecord hexagonal_type3(double a);
// The two isolated closed-form points ('A' or 'B').
SolutionRecord hexagonal_p2(char variant);
// Record for raw orbit components (e.g. numerically found points). Components
// are rescaled to unit tensor norm and the isometry condition is verified.
SolutionRecord hexagonal_custom(const std::vector<double>& a);

DenseTensor ghz_tensor(int n, int d, int label_base = 1);
// Coefficients (-1)^(sum over edges of s_i s_j); edges are 0-based axis pairs.
DenseTensor graph_state_tensor(int n, const std::vector<std::pair<int, int>>& edge_axes,
                               int label_base = 1);
// Six-qubit perfect tensor (every three-leg reduction maximally mixed).
DenseTensor ame_6_2();
const std::vector<std::pair<int, int>>& ame_6_2_edges();

// Wheel state on rim+1 qubits: hub coupled to every rim site, rim a cycle.
// Leg 1 is the hub.
DenseTensor wheel_state(int rim);
ConstraintGraph wheel_graph(int rim);

// Two-qubit coupling exp(-i (pi/4 (XX + YY) + j ZZ)) in the computational
// basis, the dual-unitary building block.
Matrix coupling_gate(double j_coupling);
Matrix dual_unitary_gate(double j_coupling, const Matrix& u1, const Matrix& u2,
                         const Matrix& u3, const Matrix& u4);
bool is_dual_unitary(const Matrix& u, double tol = 1e-10);
bool is_two_unitary(const Matrix& u, double tol = 1e-10);

// One Haar-dressed dual-unitary gate per circular distance 2..n/2. For even n
// the antipodal gate is built symmetric (u3 = u1^T, u4 = u2^T).
std::map<int, Matrix> frame_gates(int n, double j_coupling, uint64_t seed);

// Planar weave of n wires around a disk; every pair of non-adjacent wires
// crosses exactly once and receives the gate for its distance. Output legs are
// (L_0, R_0, L_1, R_1, ...): the left and right wire ends at each corner.
DenseTensor frame_tensor(int n, const std::map<int, Matrix>& gates);

// Wheel state glued to a frame: corner i carries the rim qubit i+1 together
// with the frame ends L_i, R_i as one dimension-8 leg; leg 0 is the hub.
// leg_unitaries (none, one shared, or n) act on the composite legs.
DenseTensor framed_wheel_tensor(int n, const std::map<int, Matrix>& gates,
                                const std::vector<Matrix>& leg_unitaries = {});

}  // namespace grt
