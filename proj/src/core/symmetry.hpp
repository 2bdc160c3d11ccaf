// Finite symmetry groups acting on tensor index tuples, orbit decompositions,
// and the scalar constraint equations obtained by symmetrising the isometry
// conditions. A group element permutes legs and may additionally flip every
// index (x -> d-1-x), which is enough for the cyclic, dihedral-with-flip and
// related actions used by the ansatz families.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/tensor.hpp"

namespace grt {

// out[a] = flip(in[src[a]]) where flip is x -> d-1-x when spin_flip is set
struct SymmetryElement {
  std::vector<int> src;
  bool spin_flip = false;

  bool operator==(const SymmetryElement& o) const {
    return spin_flip == o.spin_flip && src == o.src;
  }
  bool operator<(const SymmetryElement& o) const {
    if (spin_flip != o.spin_flip) return spin_flip < o.spin_flip;
    return src < o.src;
  }
};

struct SymmetrySpec {
  int n = 0;
  std::vector<SymmetryElement> generators;
};

// Plain cyclic rotation of all n legs.
SymmetrySpec cyclic_spec(int n);

// Ring action on a tensor with one distinguished leg 0 and `bonds` ring legs:
// rotation of the ring, optionally the ring reflection and the global flip.
SymmetrySpec ring_spec(int bonds, bool reflection, bool global_flip);

SymmetryElement compose(const SymmetryElement& g, const SymmetryElement& h);

// Full group generated by spec.generators (throws if it exceeds max_order).
std::vector<SymmetryElement> group_closure(const SymmetrySpec& spec,
                                           size_t max_order = 10000);

struct OrbitTable {
  int n = 0;
  int local_dim = 0;
  std::vector<std::vector<int>> representatives;  // lexicographic minima, sorted
  std::vector<int> orbit_of;                      // flat row-major index -> orbit id
  std::vector<int> orbit_size;

  int count() const { return static_cast<int>(representatives.size()); }
  int orbit_of_tuple(const std::vector<int>& t) const;
};

OrbitTable orbits(const SymmetrySpec& spec, int local_dim);

// Symmetric tensor with one independent value per orbit, aligned with
// table.representatives.
DenseTensor expand(const std::vector<Cx>& values, const OrbitTable& table,
                   int label_base = 1);
DenseTensor expand(const std::vector<double>& values, const OrbitTable& table,
                   int label_base = 1);

// Same rotation [[cos phi, sin phi], [-sin phi, cos phi]] applied to every leg.
DenseTensor apply_local_rotation(const DenseTensor& t, double phi);

// Scalar equations expressing "the reduction onto kept_axes is proportional to
// the identity" in terms of the orbit values. Entries of rho - I that vanish
// identically are dropped and entries that agree as polynomials are counted
// once; both tests are done numerically on a fixed panel of sample points.
struct EquationSet {
  OrbitTable table;
  std::vector<int> kept_axes;
  std::vector<std::pair<int, int>> entries;  // representative (row, col) of rho - I

  int count() const { return static_cast<int>(entries.size()); }
  // Residual vector at the given orbit values: entries of the raw reduction
  // minus the identity matrix. No rescaling is applied, so values must be
  // normalised such that the reduction has unit diagonal.
  std::vector<double> residuals(const std::vector<double>& values) const;
};

EquationSet constraint_equations(const SymmetrySpec& spec, int local_dim,
                                 const std::vector<int>& kept_axes);

}  // namespace grt
