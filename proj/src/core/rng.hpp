// Seeded randomness with per-item substreams: every sample/restart draws from
// its own generator derived from (seed, item index), so results are identical
// regardless of thread count or scheduling. Mapping from raw 64-bit words to
// doubles is hand-pinned (53-bit uniforms, Box-Muller normals) to keep output
// bit-stable across standard library implementations.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "core/tensor.hpp"

namespace grt {

inline uint64_t mix_bits(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Generator for item `item` of the stream identified by `seed`.
inline std::mt19937_64 substream(uint64_t seed, uint64_t item) {
  return std::mt19937_64(mix_bits(seed + 0x9e3779b97f4a7c15ull * (item + 1)));
}

// [0, 1) with 53 random bits
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// [-1, 1)
inline double uniform_sym(std::mt19937_64& g) { return 2.0 * uniform01(g) - 1.0; }

// Standard normal via Box-Muller (cosine branch; two words per draw).
inline double gaussian(std::mt19937_64& g) {
  double u1 = 1.0 - uniform01(g);  // (0, 1]
  double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Haar-distributed unitary: complex Ginibre matrix, QR decomposition, then
// the Q columns rephased by the signs of R's diagonal.
inline Matrix haar_unitary(int d, std::mt19937_64& g) {
  Matrix gin(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double re = gaussian(g);
      double im = gaussian(g);
      gin(i, j) = Cx(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(gin);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Cx rjj = r(j, j);
    Cx phase = std::abs(rjj) > 0.0 ? rjj / std::abs(rjj) : Cx(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace grt
