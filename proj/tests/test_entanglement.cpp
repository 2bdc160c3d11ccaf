#include <doctest.h>

#include <cmath>

#include "core/catalog.hpp"
#include "core/entanglement.hpp"
#include "core/rng.hpp"
#include "core/tensor.hpp"

using namespace grt;

namespace {

// closed form of the {0,1,3} deficit along the one-parameter branch family
double d013_curve(double a) {
  double r2 = std::sqrt(2.0);
  return 1.0 / 64.0 + a * (r2 - 16.0 * a * (5.0 + 64.0 * a * (8.0 * a - r2)));
}

}  // namespace

TEST_CASE("branch family deficits follow the quartic curve") {
  for (double a : {0.01, 0.03, 0.05, 0.07, 0.085}) {
    for (int j = 0; j <= 1; ++j)
      for (int k = 0; k <= 1; ++k) {
        SolutionRecord rec = hexagonal_type1(a, j, k, false);
        REQUIRE(rec.has_profile);
        CHECK(std::abs(rec.profile.d013 - d013_curve(a)) <= 1e-12);
        CHECK(std::abs(rec.profile.d014 - 3.0 / 32.0) <= 1e-12);
        CHECK(std::abs(rec.profile.normalization - 1.0) <= 1e-12);

        // recomputing from the tensor agrees with the stored profile
        EntropyProfile fresh = entropy_profile(rec.tensor);
        CHECK(std::abs(fresh.d013 - rec.profile.d013) <= 1e-14);
        CHECK(std::abs(fresh.d014 - rec.profile.d014) <= 1e-14);
      }
  }
}

TEST_CASE("vanishing family has identically zero three-site deficit") {
  for (double a : {-0.25, -0.1, 0.0, 0.04, 0.085}) {
    SolutionRecord rec = hexagonal_type3(a);
    REQUIRE(rec.has_profile);
    CHECK(std::abs(rec.profile.d013) <= 1e-12);
  }
  // the a = 0 point has a simple rational profile
  SolutionRecord rec = hexagonal_type3(0.0);
  CHECK(std::abs(rec.profile.d013 - 0.0) <= 1e-14);
  CHECK(std::abs(rec.profile.d014 - 0.2734375) <= 1e-12);
  CHECK(std::abs(rec.profile.d123 - 0.0234375) <= 1e-12);
  CHECK(std::abs(rec.profile.d124 - 0.07421875) <= 1e-12);
  CHECK(std::abs(rec.profile.d135 - 0.0234375) <= 1e-12);
}

TEST_CASE("closed-form points have rational deficit profiles") {
  SolutionRecord b = hexagonal_p2('B');
  EntropyProfile p = entropy_profile(b.tensor);
  CHECK(std::abs(p.d013 - 53.0 / 6400.0) <= 1e-12);
  CHECK(std::abs(p.d014 - 19.0 / 160.0) <= 1e-12);
  CHECK(std::abs(p.d123 - 251.0 / 12800.0) <= 1e-12);
  CHECK(std::abs(p.d124 - 623.0 / 12800.0) <= 1e-12);
  CHECK(std::abs(p.d135 - 563.0 / 12800.0) <= 1e-12);

  // the companion point sits on the branch-family curve
  SolutionRecord a = hexagonal_p2('A');
  CHECK(std::abs(a.profile.d013 - 0.02328125) <= 1e-12);
  CHECK(std::abs(a.profile.d014 - 3.0 / 32.0) <= 1e-12);
}

TEST_CASE("purity delta is zero exactly for maximally mixed reductions") {
  SolutionRecord rec = hexagonal_type1(0.05, 0, 0, false);
  CHECK(std::abs(purity_delta(rec.tensor, {0, 1, 2})) <= 1e-14);
  CHECK(purity_delta(rec.tensor, {0, 1, 3}) > 1e-4);

  // scaling the tensor does not move the deficit
  DenseTensor scaled = rec.tensor;
  scaled.scale(Cx(3.0, 0.0));
  CHECK(std::abs(purity_delta(scaled, {0, 1, 3}) - purity_delta(rec.tensor, {0, 1, 3})) <= 1e-13);

  CHECK_THROWS_AS(purity_delta(rec.tensor, {0, 1, 9}), Error);
}

TEST_CASE("profile computation rejects asymmetric tensors") {
  std::mt19937_64 g = substream(21, 0);
  DenseTensor t(std::vector<int>(7, 2), 0);
  for (Cx& c : t.coeffs()) c = Cx(gaussian(g), gaussian(g));
  CHECK_THROWS_AS(entropy_profile(t), Error);
  try {
    entropy_profile(t);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::numeric_failure);
  }
}
