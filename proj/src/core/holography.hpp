// Boundary physics of tile networks built from a seven-leg bulk tensor:
// transfer node spectra and scaling dimensions, geodesic two- and three-point
// correlators with a brute-force contraction cross-check, the
// pentagon-perfect composite tensor with its Haar-leg spectrum sampler, and
// the frame isometry verifier.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/catalog.hpp"
#include "core/network.hpp"
#include "core/tensor.hpp"

namespace grt {

struct TilingSpec {
  int n_gon = 0;
  int k = 0;
  double mu = 0.0;  // boundary growth factor per two tiles
};

// Supported: {6,4} (mu = 3 + 2 sqrt(2)) and {5,4} (mu = 2 + sqrt(3)).
TilingSpec tiling_spec(int n_gon, int k);

struct TransferNode {
  int leg_in = 0;
  int leg_out = 0;
  Matrix matrix;             // normalised so the leading eigenvalue is 1
  Cx leading_raw{};          // eigenvalue divided out
  std::vector<Cx> spectrum;  // normalised, sorted by descending modulus
  Vector leading_vector;
  double lambda(int k) const {  // |k-th eigenvalue|, 1-based
    return k <= static_cast<int>(spectrum.size())
               ? std::abs(spectrum[static_cast<size_t>(k - 1)])
               : 0.0;
  }
};

// Doubled one-step transfer operator of the tensor between two legs: rows
// (out, out'), columns (in, in'), all other legs traced.
TransferNode node_matrix(const DenseTensor& t, int leg_in, int leg_out);

// Delta = -ln(lambda2) / ln(mu); lambda2 = 0 maps to +infinity.
double scaling_dimension(double lambda2, const TilingSpec& tiling);

// Boundary separation of a transit path: mu^(tiles/2).
double boundary_separation(int path_tiles, const TilingSpec& tiling);

// Least-squares slope of ln|value| against ln(separation); needs >= 4 points.
double power_law_exponent(const std::vector<std::pair<double, double>>& sep_value);

struct CorrelatorResult {
  Cx value{};
  std::string method;
  int path_tiles = 0;
  int path_bonds = 0;
};

// Geodesic evaluation of <v1 v2> along a transit path: per-tile reductions
// closed by the probe/cap vectors, times 2 per internal bond. Both probes
// must be traceless 2x2 matrices. bulk_ops (optional, keyed by path position)
// insert single-site bulk operators at path tiles.
CorrelatorResult two_point_path(const DenseTensor& t, const PathSpec& path,
                                const Matrix& v1, const Matrix& v2,
                                const std::map<int, Matrix>& bulk_ops = {});

// A branch arm grafted onto a trunk path: arm steps run from the third probe
// towards the trunk and attach at junction_leg of trunk step trunk_index.
struct BranchSpec {
  int trunk_index = 0;
  int junction_leg = 0;
  PathSpec arm;  // may be empty: the third probe sits on the junction tile
};

// Three-point function: trunk probes v1 (entry) and v2 (exit) must be
// traceless; the branch probe v3 may have a trace (its traceful part
// reproduces the plain two-point function along the trunk).
CorrelatorResult three_point_path(const DenseTensor& t, const PathSpec& trunk,
                                  const BranchSpec& branch, const Matrix& v1,
                                  const Matrix& v2, const Matrix& v3,
                                  const std::map<int, Matrix>& trunk_bulk_ops = {});

// Full contraction of the network with probes on boundary legs (keyed by
// boundary index) and optional bulk operators (keyed by tile), normalised by
// the probe-free contraction. Exact but exponential; limited to small
// patches.
CorrelatorResult brute_force_correlator(const NetworkSpec& net, const DenseTensor& t,
                                        const std::map<int, Matrix>& probes,
                                        const std::map<int, Matrix>& bulk_ops = {});

// Trunk/branch decomposition for three boundary probes, if one exists.
// probe_order maps (trunk entry, trunk exit, branch) to indices into the
// caller's (b1, b2, b3).
struct ThreePointLayout {
  PathSpec trunk;
  BranchSpec branch;
  std::array<int, 3> probe_order{};
};
std::optional<ThreePointLayout> find_three_point(const NetworkSpec& net, int b1,
                                                 int b2, int b3);

// Pentagon tensor sharing each leg with one leg of a six-qubit perfect
// tensor: a 6-leg composite (bulk qubit + five dimension-4 legs), optionally
// dressed by 4x4 unitaries on the composite legs (none, one shared, or five).
DenseTensor combined_pentagon_perfect(const std::vector<Matrix>& leg_unitaries = {});

struct ViolinRow {
  long sample = 0;
  double delta2 = 0.0;
  double delta3 = 0.0;
};

// Scaling dimensions of the composite tensor's (1,3) node under Haar random
// leg unitaries, one row per sample; shared_unitary applies one draw to all
// five legs. Deterministic for fixed seed regardless of threads.
std::vector<ViolinRow> violin_sample(long count, uint64_t seed, bool shared_unitary,
                                     int threads = 1);

struct FrameCheck {
  int leg_a = 0;
  int leg_b = 0;
  bool pass = false;
  double deviation = 0.0;
};

struct FrameReport {
  int n = 0;
  bool neighbors_pass = false;
  double worst_neighbor_deviation = 0.0;
  bool any_non_neighbor_fails = false;
  std::vector<FrameCheck> neighbor;
  std::vector<FrameCheck> non_neighbor;
  std::string to_json() const;
};

// Checks that every adjacent wire-end pair of a frame tensor carries a
// maximally mixed reduction (isometry onto the rest) while at least one
// non-adjacent pair does not.
FrameReport verify_frame(const DenseTensor& f, int n, double tol_neighbor = 1e-10,
                         double tol_non_neighbor = 1e-6);

struct RotationScanRow {
  double phi = 0.0;
  double lambda2_13 = 0.0;
  double lambda2_14 = 0.0;
};

// |lambda2| of the (1,3) and (1,4) nodes under the one-parameter local
// rotation, over a uniform phi grid on [0, 2 pi).
std::vector<RotationScanRow> rotation_spectrum_scan(const DenseTensor& t,
                                                    int grid_points);

}  // namespace grt
