// Second Renyi entropy deficits of three-site reductions for seven-leg qubit
// tensors (one bulk leg 0 plus ring legs 1..6). The deficit
//   delta = Tr(rho^2) - 1/8
// of the trace-normalised reduction vanishes exactly when the reduction is
// maximally mixed, and the profile over a fixed set of kept triples separates
// the solution families.
#pragma once

#include <vector>

#include "core/tensor.hpp"

namespace grt {

struct EntropyProfile {
  double d013 = 0.0;  // kept legs {0, 1, 3}
  double d014 = 0.0;  // kept legs {0, 1, 4}
  double d123 = 0.0;  // kept legs {1, 2, 3}
  double d124 = 0.0;  // kept legs {1, 2, 4}
  double d135 = 0.0;  // kept legs {1, 3, 5}
  double normalization = 0.0;  // squared tensor norm divided out
};

// Tr(rho^2) - 1/8 for the trace-normalised reduction onto three kept legs.
double purity_delta(const DenseTensor& t, const std::vector<int>& kept_labels);

// The five deficits above. Cross-checked internally: rotating a kept set by
// one ring step must not change its deficit (throws numeric_failure if the
// input lacks that symmetry).
EntropyProfile entropy_profile(const DenseTensor& t);

}  // namespace grt
