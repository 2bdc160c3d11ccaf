#include "core/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <optional>
#include <sstream>
#include <thread>

#include "core/entanglement.hpp"
#include "core/io_json.hpp"
#include "core/rng.hpp"

namespace grt {

namespace {

constexpr int kOrbits = 13;
constexpr int kFlat = 128;  // 2^7 coefficients

// flat coefficient index -> orbit slot, plus the orbit sizes, in the fixed
// hexagon_slots() order
struct SlotTables {
  int slot_of[kFlat];
  double weight[kOrbits];
};

const SlotTables& slot_tables() {
  static const SlotTables tables = [] {
    const OrbitTable& table = hexagon_orbit_table();
    const auto& slots = hexagon_slots();
    if (table.count() != kOrbits ||
        static_cast<int>(slots.size()) != kOrbits)
      throw Error(Errc::numeric_failure, "solver: unexpected orbit layout");
    int inverse[64];
    std::memset(inverse, -1, sizeof(inverse));
    for (int k = 0; k < kOrbits; ++k)
      inverse[table.orbit_of_tuple(slots[static_cast<size_t>(k)])] = k;
    SlotTables out{};
    for (int f = 0; f < kFlat; ++f) {
      int k = inverse[table.orbit_of[static_cast<size_t>(f)]];
      if (k < 0) throw Error(Errc::numeric_failure, "solver: orbit without a slot");
      out.slot_of[f] = k;
    }
    for (int k = 0; k < kOrbits; ++k) out.weight[k] = 0.0;
    for (int f = 0; f < kFlat; ++f) out.weight[out.slot_of[f]] += 1.0;
    return out;
  }();
  return tables;
}

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// rows = (bulk, bond1, bond2), columns = the remaining four bonds
Mat coefficient_matrix(const Vec& a) {
  const SlotTables& tb = slot_tables();
  Mat m(8, 16);
  for (int f = 0; f < kFlat; ++f) m(f >> 4, f & 15) = a[tb.slot_of[f]];
  return m;
}

double cost_of(const Vec& a) {
  Mat m = coefficient_matrix(a);
  Mat rho = m * m.transpose();
  double s = rho.trace();
  if (!(s > 0.0)) throw Error(Errc::numeric_failure, "solver: zero tensor");
  return rho.squaredNorm() / (s * s) - 0.125;
}

Vec gradient_of(const Vec& a) {
  const SlotTables& tb = slot_tables();
  Mat m = coefficient_matrix(a);
  Mat rho = m * m.transpose();
  double s = rho.trace();
  if (!(s > 0.0)) throw Error(Errc::numeric_failure, "solver: zero tensor");
  double p = rho.squaredNorm();
  Mat gm = 4.0 * (rho * m) / (s * s) - (4.0 * p / (s * s * s)) * m;
  Vec g = Vec::Zero(kOrbits);
  for (int f = 0; f < kFlat; ++f) g[tb.slot_of[f]] += gm(f >> 4, f & 15);
  return g;
}

void normalize_components(Vec& a) {
  const SlotTables& tb = slot_tables();
  double n2 = 0.0;
  for (int k = 0; k < kOrbits; ++k) n2 += tb.weight[k] * a[k] * a[k];
  if (!(n2 > 0.0)) throw Error(Errc::numeric_failure, "solver: zero tensor");
  a /= std::sqrt(n2);
}

// BFGS on the scale-invariant cost; returns the final cost
double minimize(Vec& x, int max_iterations) {
  const double c1 = 1e-4;
  Mat h = Mat::Identity(kOrbits, kOrbits);
  double f = cost_of(x);
  Vec g = gradient_of(x);
  for (int iter = 0; iter < max_iterations; ++iter) {
    if (f < 1e-22 || g.norm() < 1e-13) break;
    Vec d = -(h * g);
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      h.setIdentity();
      d = -g;
      slope = g.dot(d);
      if (!(slope < 0.0)) break;
    }
    double t = 1.0;
    double fn = cost_of(x + t * d);
    int halvings = 0;
    while (fn > f + c1 * t * slope && halvings < 60) {
      t *= 0.5;
      fn = cost_of(x + t * d);
      ++halvings;
    }
    if (fn > f) break;  // no progress in this direction
    Vec xn = x + t * d;
    Vec gn = gradient_of(xn);
    Vec s = xn - x;
    Vec y = gn - g;
    double ys = y.dot(s);
    if (ys > 1e-12 * y.norm() * s.norm()) {
      Mat v = Mat::Identity(kOrbits, kOrbits) - (s * y.transpose()) / ys;
      h = v * h * v.transpose() + (s * s.transpose()) / ys;
    }
    x = xn;
    f = fn;
    g = gn;
  }
  return f;
}

// Gauss-Newton on the isometry residuals rho - I at the sqrt(8)-rescaled
// point, where the solved reduction is exactly the identity
void polish(Vec& x) {
  const SlotTables& tb = slot_tables();
  normalize_components(x);
  Vec y = std::sqrt(8.0) * x;

  int pair_index[8][8];
  int n_pairs = 0;
  for (int r = 0; r < 8; ++r)
    for (int c = r; c < 8; ++c) pair_index[r][c] = n_pairs++;

  for (int iter = 0; iter < 8; ++iter) {
    Mat m = coefficient_matrix(y);
    Mat rho = m * m.transpose();
    Vec resid(n_pairs);
    for (int r = 0; r < 8; ++r)
      for (int c = r; c < 8; ++c)
        resid[pair_index[r][c]] = rho(r, c) - (r == c ? 1.0 : 0.0);
    if (resid.cwiseAbs().maxCoeff() < 1e-15) break;

    Mat jac = Mat::Zero(n_pairs, kOrbits);
    for (int f = 0; f < kFlat; ++f) {
      int k = tb.slot_of[f];
      int row = f >> 4, col = f & 15;
      for (int c = row; c < 8; ++c) jac(pair_index[row][c], k) += m(c, col);
      for (int r = 0; r <= row; ++r) jac(pair_index[r][row], k) += m(r, col);
    }
    Vec step = jac.colPivHouseholderQr().solve(-resid);
    y += step;
  }
  x = y;
  normalize_components(x);
}

const std::array<int, 5> kSwapLo = {0, 2, 4, 6, 8};   // bulk flip swaps (k, k+1)
const std::array<int, 5> kNegate = {2, 3, 10, 11, 12};  // bond sign change

std::string csv_type_label(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::HexTypeI: return "type1";
    case FamilyTag::HexTypeII: return "type2";
    case FamilyTag::HexTypeIII: return "type3";
    default: return "isolated";
  }
}

}  // namespace

double solver_cost(const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != kOrbits)
    throw Error(Errc::bad_argument, "solver_cost: 13 components required");
  return cost_of(Eigen::Map<const Vec>(a.data(), kOrbits));
}

std::vector<double> solver_gradient(const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != kOrbits)
    throw Error(Errc::bad_argument, "solver_gradient: 13 components required");
  Vec g = gradient_of(Eigen::Map<const Vec>(a.data(), kOrbits));
  return std::vector<double>(g.data(), g.data() + kOrbits);
}

double solver_residual_cost(const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != kOrbits)
    throw Error(Errc::bad_argument, "solver_residual_cost: 13 components required");
  static const EquationSet eq =
      constraint_equations(ring_spec(6, true, true), 2, {0, 1, 2});
  static const std::array<int, kOrbits> rep_of = [] {
    std::array<int, kOrbits> out{};
    const auto& slots = hexagon_slots();
    for (int k = 0; k < kOrbits; ++k)
      out[static_cast<size_t>(k)] = eq.table.orbit_of_tuple(slots[static_cast<size_t>(k)]);
    return out;
  }();

  const SlotTables& tb = slot_tables();
  double n2 = 0.0;
  for (int k = 0; k < kOrbits; ++k)
    n2 += tb.weight[k] * a[static_cast<size_t>(k)] * a[static_cast<size_t>(k)];
  if (!(n2 > 0.0))
    throw Error(Errc::bad_argument, "solver_residual_cost: zero components");
  // rescale so the three-site reduction of a solution is exactly the identity
  double rescale = std::sqrt(8.0 / n2);
  std::vector<double> values(static_cast<size_t>(eq.table.count()), 0.0);
  for (int k = 0; k < kOrbits; ++k)
    values[static_cast<size_t>(rep_of[static_cast<size_t>(k)])] =
        a[static_cast<size_t>(k)] * rescale;

  double sum = 0.0;
  for (double r : eq.residuals(values)) sum += r * r;
  return sum;
}

std::vector<std::vector<double>> gauge_variants(const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != kOrbits)
    throw Error(Errc::bad_argument, "gauge_variants: 13 components required");
  std::vector<std::vector<double>> out;
  out.reserve(8);
  for (int swap = 0; swap < 2; ++swap)
    for (int negate = 0; negate < 2; ++negate)
      for (int sign = 0; sign < 2; ++sign) {
        std::vector<double> b = a;
        if (swap)
          for (int lo : kSwapLo) std::swap(b[static_cast<size_t>(lo)], b[static_cast<size_t>(lo) + 1]);
        if (negate)
          for (int k : kNegate) b[static_cast<size_t>(k)] = -b[static_cast<size_t>(k)];
        if (sign)
          for (double& v : b) v = -v;
        out.push_back(std::move(b));
      }
  return out;
}

std::vector<double> canonical_components(const std::vector<double>& a) {
  std::vector<std::vector<double>> variants = gauge_variants(a);
  return *std::min_element(variants.begin(), variants.end());
}

FamilyTag classify_hexagonal(const std::vector<double>& components, double tol) {
  if (static_cast<int>(components.size()) != kOrbits)
    throw Error(Errc::bad_argument, "classify_hexagonal: 13 components required");
  const SlotTables& tb = slot_tables();
  double n2 = 0.0;
  for (int k = 0; k < kOrbits; ++k)
    n2 += tb.weight[k] * components[static_cast<size_t>(k)] * components[static_cast<size_t>(k)];
  if (!(n2 > 0.0))
    throw Error(Errc::bad_argument, "classify_hexagonal: zero components");
  // the family formulas are written at unit tensor norm
  double rescale = 1.0 / std::sqrt(n2);
  std::vector<double> b(components.size());
  for (size_t k = 0; k < components.size(); ++k) b[k] = components[k] * rescale;

  const double c8 = 1.0 / (8.0 * std::sqrt(2.0));
  const double c4 = 1.0 / (4.0 * std::sqrt(2.0));

  double d21 = b[1] - b[0];
  double s = d21 >= 0.0 ? 1.0 : -1.0;
  bool offsets_type1 = std::abs(d21 - s * c8) <= tol &&
                       std::abs((b[4] - b[5]) - s * c8) <= tol &&
                       std::abs((b[6] - b[7]) - s * c8) <= tol &&
                       std::abs(std::abs(b[3] - b[2]) - c4) <= tol;
  if (offsets_type1) {
    double d014 = purity_delta(hexagon_expand(components, 0), {0, 1, 4});
    if (std::abs(d014 - 3.0 / 32.0) <= tol) return FamilyTag::HexTypeI;
  }
  if (std::abs(std::abs(b[0]) - std::abs(b[9])) <= tol &&
      std::abs(std::abs(b[1]) - std::abs(b[8])) <= tol &&
      std::abs(std::abs(b[2]) - std::abs(b[3])) <= tol &&
      std::abs(std::abs(b[2]) - std::abs(b[11])) <= tol)
    return FamilyTag::HexTypeIII;
  double disc = (b[0] - b[1]) * (b[0] - b[1]) + 3.0 * (b[2] - b[3]) * (b[2] - b[3]);
  if (std::abs(disc - 0.125) <= tol) return FamilyTag::HexTypeII;
  return FamilyTag::Custom;
}

std::vector<SolverHit> solve_hexagonal(const SolveOptions& opt) {
  if (opt.restarts < 0)
    throw Error(Errc::bad_argument, "solve_hexagonal: negative restart count");

  struct RawHit {
    bool ok = false;
    double cost = 0.0;
    std::vector<double> components;
  };
  std::vector<RawHit> raw(static_cast<size_t>(opt.restarts));

  auto run_range = [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r) {
      std::mt19937_64 gen = substream(opt.seed, static_cast<uint64_t>(r));
      Vec x(kOrbits);
      for (int k = 0; k < kOrbits; ++k) x[k] = uniform_sym(gen);
      normalize_components(x);
      double f = minimize(x, opt.max_iterations);
      if (opt.polish && f < 1e-4) {
        polish(x);
        f = cost_of(x);
      }
      if (!(f <= opt.cost_threshold)) continue;
      normalize_components(x);
      raw[static_cast<size_t>(r)] = {
          true, f,
          canonical_components(std::vector<double>(x.data(), x.data() + kOrbits))};
    }
  };

  int nthreads = opt.threads;
  if (nthreads <= 0)
    nthreads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nthreads = std::min(nthreads, std::max(1, opt.restarts));
  if (nthreads <= 1 || opt.restarts <= 1) {
    run_range(0, opt.restarts);
  } else {
    std::vector<std::thread> pool;
    int chunk = (opt.restarts + nthreads - 1) / nthreads;
    for (int w = 0; w < nthreads; ++w) {
      int lo = w * chunk, hi = std::min(opt.restarts, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // merge in restart order so the outcome is thread-count independent
  struct Kept {
    int restart;
    double cost;
    std::vector<double> components;
  };
  std::vector<Kept> kept;
  auto same_solution = [](const std::vector<double>& a, const std::vector<double>& b) {
    for (const std::vector<double>& v : gauge_variants(b)) {
      double dev = 0.0;
      for (size_t k = 0; k < a.size(); ++k)
        dev = std::max(dev, std::abs(a[k] - v[k]));
      if (dev < 1e-6) return true;
    }
    return false;
  };
  for (int r = 0; r < opt.restarts; ++r) {
    RawHit& h = raw[static_cast<size_t>(r)];
    if (!h.ok) continue;
    bool merged = false;
    for (Kept& k : kept) {
      if (!same_solution(k.components, h.components)) continue;
      if (h.cost < k.cost) k = {r, h.cost, h.components};
      merged = true;
      break;
    }
    if (!merged) kept.push_back({r, h.cost, std::move(h.components)});
  }
  std::sort(kept.begin(), kept.end(), [](const Kept& a, const Kept& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.components < b.components;
  });

  std::vector<SolverHit> hits;
  hits.reserve(kept.size());
  for (Kept& k : kept) {
    SolverHit hit;
    hit.restart = k.restart;
    hit.cost = k.cost;
    hit.record = hexagonal_custom(k.components);
    hit.record.family = classify_hexagonal(hit.record.components, opt.classify_tol);
    hits.push_back(std::move(hit));
  }
  return hits;
}

std::string scan_csv(const std::vector<SolverHit>& hits) {
  std::ostringstream out;
  out << "seed,cost,ds013,ds014,ds123,ds124,ds135,type";
  for (int k = 1; k <= kOrbits; ++k) out << ",a_" << k;
  out << "\n";
  for (const SolverHit& hit : hits) {
    const EntropyProfile& p = hit.record.profile;
    out << hit.restart << ',' << format_double(hit.cost) << ','
        << format_double(p.d013) << ',' << format_double(p.d014) << ','
        << format_double(p.d123) << ',' << format_double(p.d124) << ','
        << format_double(p.d135) << ',' << csv_type_label(hit.record.family);
    for (double a : hit.record.components) out << ',' << format_double(a);
    out << "\n";
  }
  return out.str();
}

}  // namespace grt
