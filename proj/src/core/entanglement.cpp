#include "core/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace grt {

namespace {

void check_seven_qubit(const DenseTensor& t) {
  if (t.order() != 7)
    throw Error(Errc::bad_argument, "entropy profile needs a 7-leg tensor");
  for (int a = 0; a < 7; ++a)
    if (t.dim(a) != 2)
      throw Error(Errc::bad_argument, "entropy profile needs qubit legs");
}

}  // namespace

double purity_delta(const DenseTensor& t, const std::vector<int>& kept_labels) {
  check_seven_qubit(t);
  if (kept_labels.size() != 3)
    throw Error(Errc::bad_argument, "purity_delta keeps exactly three legs");
  Bipartition part;
  part.kept = kept_labels;
  std::sort(part.kept.begin(), part.kept.end());
  Matrix rho = reduce(t, part).rho;
  double tr = rho.trace().real();
  if (!(tr > 0.0))
    throw Error(Errc::numeric_failure, "purity_delta: reduction has zero trace");
  rho /= tr;
  return (rho * rho).trace().real() - 0.125;
}

EntropyProfile entropy_profile(const DenseTensor& t) {
  check_seven_qubit(t);
  if (t.label_base() != 0)
    throw Error(Errc::bad_argument, "entropy profile expects leg labels 0..6");
  EntropyProfile p;
  p.d013 = purity_delta(t, {0, 1, 3});
  p.d014 = purity_delta(t, {0, 1, 4});
  p.d123 = purity_delta(t, {1, 2, 3});
  p.d124 = purity_delta(t, {1, 2, 4});
  p.d135 = purity_delta(t, {1, 3, 5});
  p.normalization = t.norm2();

  // {0, 2, 4} is {0, 1, 3} with the ring legs advanced one step.
  double rotated = purity_delta(t, {0, 2, 4});
  if (std::abs(rotated - p.d013) > 1e-12)
    throw Error(Errc::numeric_failure,
                "entropy profile: ring rotation changed a deficit");
  return p;
}

}  // namespace grt
