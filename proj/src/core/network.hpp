// Finite patches of the {6,4} tiling: tile/bond/boundary bookkeeping, the
// geodesic path finder for boundary two-point functions, and the exhaustive
// path audit (pair connectivity, shared-tile triples) used on the depth-2
// patch. Tiles are placed with their bulk leg first; legs 1..6 go around the
// hexagon, and a step through a tile must enter and leave on non-adjacent
// legs.
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "core/tensor.hpp"

namespace grt {

struct NetworkTile {
  std::string name;
  double scale2 = 1.0;  // squared isometry weight absorbed by the tile
};

struct NetworkSpec {
  std::string name;
  std::vector<NetworkTile> tiles;
  // bonds[tile][leg] = (other tile, other leg), or (-1, -1) when the leg is
  // open; index 0 is unused (legs are 1..6)
  std::vector<std::array<std::pair<int, int>, 7>> bonds;
  std::vector<std::pair<int, int>> boundary;      // (tile, leg), frozen order
  std::vector<std::array<int, 7>> leg_boundary;   // boundary index or -1

  int tile_count() const { return static_cast<int>(tiles.size()); }
  int boundary_count() const { return static_cast<int>(boundary.size()); }
  bool is_open(int tile, int leg) const {
    return bonds[static_cast<size_t>(tile)][static_cast<size_t>(leg)].first < 0;
  }
  void add_bond(int t1, int l1, int t2, int l2);
  void finalize();  // checks bond/boundary consistency, fills leg_boundary
};

NetworkSpec depth1_network();
NetworkSpec depth2_network();

// Legs a, b in 1..6: true when they are neither equal nor hexagon neighbours.
bool legs_nonadjacent(int a, int b);

struct PathStep {
  int tile = 0;
  int in_leg = 0;
  int out_leg = 0;
};

struct PathSpec {
  std::vector<PathStep> steps;
  int bond_count() const { return static_cast<int>(steps.size()) - 1; }
};

// All transit paths between two boundary legs: the first step enters at the
// source leg, every step turns across non-adjacent legs, consecutive steps
// follow bonds, and the last step exits at the destination leg. A path
// visits each tile at most once.
std::vector<PathSpec> enumerate_paths(const NetworkSpec& net, int b_src, int b_dst);

struct NetworkAudit {
  int max_paths_per_pair = 0;
  long connected_pairs = 0;
  long total_pairs = 0;
  // triples of boundary legs with all three pairs path-connected, split by
  // whether the three path tile sets share a common tile (tripod) or have
  // empty common intersection (genuine geodesic triangle)
  long tripod_triples = 0;
  long triangle_triples = 0;
};

NetworkAudit audit_paths(const NetworkSpec& net);

}  // namespace grt
