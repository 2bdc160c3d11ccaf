#include "core/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "core/contraction.hpp"
#include "core/rng.hpp"

namespace grt {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  Matrix dev = m * m.adjoint();
  dev -= Matrix::Identity(m.rows(), m.cols());
  return dev.cwiseAbs().maxCoeff() <= tol;
}

void check_identity_reduction(const DenseTensor& t, const std::vector<int>& kept,
                              double tol, const char* what) {
  Bipartition part;
  part.kept = kept;
  ProportionalityReport rep = proportional_to_identity(reduce(t, part).rho, tol);
  if (!rep.proportional) throw Error(Errc::numeric_failure, what);
}

std::vector<int> slot_orbit_ids(const OrbitTable& table,
                                const std::vector<std::vector<int>>& slots) {
  std::vector<int> ids;
  for (const auto& s : slots) ids.push_back(table.orbit_of_tuple(s));
  std::vector<int> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (static_cast<int>(sorted.size()) != table.count())
    throw Error(Errc::numeric_failure, "slot table does not enumerate the orbits");
  return ids;
}

DenseTensor expand_slots(const std::vector<double>& v, const OrbitTable& table,
                         const std::vector<std::vector<int>>& slots, int label_base) {
  if (v.size() != slots.size())
    throw Error(Errc::dimension_mismatch, "one component per slot required");
  std::vector<int> ids = slot_orbit_ids(table, slots);
  std::vector<double> rep_values(static_cast<size_t>(table.count()), 0.0);
  for (size_t k = 0; k < v.size(); ++k)
    rep_values[static_cast<size_t>(ids[k])] = v[k];
  return expand(rep_values, table, label_base);
}

SolutionRecord pentagon_record(FamilyTag fam,
                               std::vector<std::pair<std::string, double>> params,
                               std::vector<double> components) {
  SolutionRecord rec;
  rec.family = fam;
  rec.parameters = std::move(params);
  rec.components = std::move(components);
  rec.tensor = pentagon_expand(rec.components, 1);
  check_identity_reduction(rec.tensor, {1, 2}, 1e-12,
                           "pentagon family: neighbour reduction is not maximally mixed");
  return rec;
}

SolutionRecord hexagon_record(FamilyTag fam,
                              std::vector<std::pair<std::string, double>> params,
                              std::vector<double> components, double isometry_tol) {
  SolutionRecord rec;
  rec.family = fam;
  rec.parameters = std::move(params);
  rec.components = std::move(components);
  DenseTensor t = hexagon_expand(rec.components, 0);
  double n2 = t.norm2();
  if (!(n2 > 0.0))
    throw Error(Errc::bad_argument, "hexagon components define the zero tensor");
  double s = 1.0 / std::sqrt(n2);
  t.scale(Cx(s, 0.0));
  for (double& c : rec.components) c *= s;
  check_identity_reduction(t, {0, 1, 2}, isometry_tol,
                           "hexagon components violate the isometry condition");
  rec.tensor = std::move(t);
  rec.profile = entropy_profile(rec.tensor);
  rec.has_profile = true;
  return rec;
}

}  // namespace

std::string family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::PentaAme: return "penta-ame";
    case FamilyTag::PentaIsolated: return "penta-isolated";
    case FamilyTag::HexTypeI: return "hex-type1";
    case FamilyTag::HexTypeII: return "hex-type2";
    case FamilyTag::HexTypeIII: return "hex-type3";
    case FamilyTag::HexP2A: return "hex-p2a";
    case FamilyTag::HexP2B: return "hex-p2b";
    case FamilyTag::Custom: return "custom";
  }
  return "custom";
}

const std::vector<std::vector<int>>& pentagon_slots() {
  static const std::vector<std::vector<int>> slots = {
      {0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}, {0, 0, 0, 0, 1}, {0, 1, 1, 1, 1},
      {0, 0, 0, 1, 1}, {0, 0, 1, 1, 1}, {0, 0, 1, 0, 1}, {0, 1, 0, 1, 1},
  };
  return slots;
}

const std::vector<std::vector<int>>& hexagon_slots() {
  // (bulk; six bond indices); one tuple per orbit of the full ring group
  static const std::vector<std::vector<int>> slots = {
      {0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 1},
      {1, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 1, 1}, {1, 0, 0, 0, 0, 1, 1},
      {0, 0, 0, 0, 1, 0, 1}, {1, 0, 0, 0, 1, 0, 1}, {0, 0, 0, 1, 0, 0, 1},
      {1, 0, 0, 1, 0, 0, 1}, {0, 0, 0, 0, 1, 1, 1}, {0, 0, 0, 1, 0, 1, 1},
      {0, 0, 1, 0, 1, 0, 1},
  };
  return slots;
}

const OrbitTable& pentagon_orbit_table() {
  static const OrbitTable table = orbits(cyclic_spec(5), 2);
  return table;
}

const OrbitTable& hexagon_orbit_table() {
  static const OrbitTable table = orbits(ring_spec(6, true, true), 2);
  return table;
}

const OrbitTable& hexagon_rotation_orbit_table() {
  static const OrbitTable table = orbits(ring_spec(6, false, false), 2);
  return table;
}

DenseTensor pentagon_expand(const std::vector<double>& v, int label_base) {
  return expand_slots(v, pentagon_orbit_table(), pentagon_slots(), label_base);
}

DenseTensor hexagon_expand(const std::vector<double>& a, int label_base) {
  return expand_slots(a, hexagon_orbit_table(), hexagon_slots(), label_base);
}

SolutionRecord pentagonal_ame(double theta) {
  double s = std::sin(theta), c = std::cos(theta);
  std::vector<double> v = {s, c, -c, -s, -s, -c, s, c};
  return pentagon_record(FamilyTag::PentaAme, {{"theta", theta}}, std::move(v));
}

SolutionRecord pentagonal_isolated() {
  double b = kSqrt5 - 2.0;
  double t00000 = (std::sqrt(10.0 * kSqrt5 - 22.0) + 3.0) / 4.0;
  double t11111 = t00000 - 1.5;
  double t00001 = -b / 4.0;
  double t01111 = b / 4.0;
  double t00011 = (-b + 2.0 * std::sqrt(b)) / 4.0;
  double t00111 = t00011 + b / 2.0;
  double t00101 = (1.0 - std::sqrt(2.0 * (kSqrt5 - 1.0))) / 4.0;
  double t01011 = t00101 - 0.5;
  std::vector<double> v = {t00000, t11111, t00001, t01111,
                           t00011, t00111, t00101, t01011};
  return pentagon_record(FamilyTag::PentaIsolated, {}, std::move(v));
}

Matrix pentagon_skip_pair_reference() {
  double alpha = (kSqrt5 + 3.0) / 4.0;
  double beta = (kSqrt5 - 1.0) / 4.0;
  double gamma = (5.0 - kSqrt5) / 4.0;
  double delta = (1.0 - kSqrt5) / 4.0;
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = alpha;
  m(0, 3) = beta;
  m(1, 1) = gamma;
  m(1, 2) = delta;
  m(2, 1) = delta;
  m(2, 2) = gamma;
  m(3, 0) = beta;
  m(3, 3) = alpha;
  return m;
}

SolutionRecord hexagonal_type1(double a, int j, int k, bool plus_branch) {
  if (!(a > 0.0) || !(a < kSqrt2 / 16.0))
    throw Error(Errc::bad_argument, "hexagonal_type1: a outside (0, sqrt(2)/16)");
  if ((j != 0 && j != 1) || (k != 0 && k != 1))
    throw Error(Errc::bad_argument, "hexagonal_type1: j, k must be 0 or 1");
  double sgn = plus_branch ? 1.0 : -1.0;
  double d = std::sqrt(a * (kSqrt2 - 16.0 * a));

  std::vector<double> v(13);
  v[0] = (-kSqrt2 + 24.0 * a + sgn * 4.0 * d) / 8.0;   // a1
  v[1] = v[0] + 1.0 / (8.0 * kSqrt2);                  // a2
  v[2] = (-kSqrt2 + sgn * 4.0 * d) / 16.0;             // a3
  v[3] = v[2] + 1.0 / (4.0 * kSqrt2);                  // a4
  v[4] = (kSqrt2 - 16.0 * a + sgn * 8.0 * d) / 16.0;   // a5
  v[5] = v[4] - 1.0 / (8.0 * kSqrt2);                  // a6
  v[6] = a;                                            // a7
  v[7] = v[6] - 1.0 / (8.0 * kSqrt2);                  // a8
  v[8] = (-kSqrt2 - 16.0 * a - sgn * 8.0 * d) / 16.0;  // a9
  v[9] = (kSqrt2 - 8.0 * a - sgn * 4.0 * d) / 8.0;     // a10
  v[10] = (kSqrt2 - 32.0 * a - sgn * 4.0 * d) / 16.0;  // a11
  v[11] = (-kSqrt2 + 32.0 * a - sgn * 4.0 * d) / 16.0; // a12
  v[12] = (-kSqrt2 + 32.0 * a + sgn * 12.0 * d) / 16.0;// a13

  // discrete square-root branches: j flips the overall sign, j xor k flips
  // the components whose tuples carry an odd bond sum
  if ((j ^ k) == 1)
    for (int idx : {2, 3, 10, 11, 12}) v[static_cast<size_t>(idx)] = -v[static_cast<size_t>(idx)];
  if (j == 1)
    for (double& x : v) x = -x;

  return hexagon_record(FamilyTag::HexTypeI,
                        {{"a", a},
                         {"j", static_cast<double>(j)},
                         {"k", static_cast<double>(k)},
                         {"branch", sgn}},
                        std::move(v), 1e-12);
}

SolutionRecord hexagonal_type3(double a) {
  if (!(a > -3.0 * kSqrt2 / 16.0) || !(a < kSqrt2 / 16.0))
    throw Error(Errc::bad_argument,
                "hexagonal_type3: a outside (-3 sqrt(2)/16, sqrt(2)/16)");
  double root = std::sqrt(3.0 - 16.0 * kSqrt2 * a - 128.0 * a * a) / (16.0 * kSqrt2);
  std::vector<double> v = {a,
                           a + kSqrt2 / 8.0,
                           root,
                           root,
                           -kSqrt2 / 16.0,
                           kSqrt2 / 16.0,
                           -kSqrt2 / 16.0,
                           kSqrt2 / 16.0,
                           a + kSqrt2 / 8.0,
                           a,
                           root,
                           -root,
                           root};
  return hexagon_record(FamilyTag::HexTypeIII, {{"a", a}}, std::move(v), 1e-12);
}

SolutionRecord hexagonal_p2(char variant) {
  double s2 = kSqrt2;
  std::vector<double> v(13);
  FamilyTag tag;
  if (variant == 'A' || variant == 'a') {
    tag = FamilyTag::HexP2A;
    v[0] = (std::sqrt(445.0 * s2 + 650.0) + 10.0) / (160.0 * s2);
    v[2] = -(std::sqrt(50.0 - 5.0 * s2) + 20.0) / (160.0 * s2);
    v[4] = (std::sqrt(5.0 * (50.0 - 31.0 * s2)) - 10.0) / (160.0 * s2);
    v[6] = (std::sqrt((10.0 + s2) / 10.0) - s2) / 32.0;
    v[8] = -(std::sqrt(5.0 * (s2 + 2.0)) - 6.0) / (32.0 * s2);
    v[9] = -(std::sqrt(5.0 * (s2 + 2.0)) + 6.0) / (32.0 * s2);
    v[10] = std::sqrt(5.0 + 31.0 / (5.0 * s2)) / 32.0;
    v[11] = -std::sqrt(5.0 - 5.0 / s2) / 32.0;
    v[12] = -std::sqrt(13.0 + 79.0 / (5.0 * s2)) / 32.0;
  } else if (variant == 'B' || variant == 'b') {
    tag = FamilyTag::HexP2B;
    v[0] = -(std::sqrt(890.0 - 205.0 * s2) - 10.0) / (160.0 * s2);
    v[2] = -(std::sqrt(85.0 * s2 + 130.0) + 20.0) / (160.0 * s2);
    v[4] = (std::sqrt(10.0 - 5.0 * s2) - 10.0) / (160.0 * s2);
    v[6] = (std::sqrt((10.0 - s2) / 10.0) - s2) / 32.0;
    v[8] = -(std::sqrt(115.0 * s2 + 650.0) - 30.0) / (160.0 * s2);
    v[9] = -(std::sqrt(115.0 * s2 + 650.0) + 30.0) / (160.0 * s2);
    v[10] = -std::sqrt((82.0 - 31.0 * s2) / 10.0) / 32.0;
    v[11] = 3.0 * std::sqrt((s2 + 2.0) / 10.0) / 32.0;
    v[12] = std::sqrt(13.0 - 79.0 / (5.0 * s2)) / 32.0;
  } else {
    throw Error(Errc::bad_argument, "hexagonal_p2: variant must be 'A' or 'B'");
  }
  v[1] = v[0] - 1.0 / (8.0 * s2);
  v[3] = v[2] + 1.0 / (4.0 * s2);
  v[5] = v[4] + 1.0 / (8.0 * s2);
  v[7] = v[6] + 1.0 / (8.0 * s2);
  return hexagon_record(tag, {}, std::move(v), 1e-12);
}

SolutionRecord hexagonal_custom(const std::vector<double>& a) {
  // numerically found points carry solver-level accuracy, not closed-form
  return hexagon_record(FamilyTag::Custom, {}, a, 1e-6);
}

DenseTensor ghz_tensor(int n, int d, int label_base) {
  if (n < 2 || d < 2) throw Error(Errc::bad_argument, "ghz_tensor: need n, d >= 2");
  double total_bits = n * std::log2(static_cast<double>(d));
  if (total_bits > 22.0)
    throw Error(Errc::unsupported, "ghz_tensor: index space too large");
  DenseTensor t(std::vector<int>(static_cast<size_t>(n), d), label_base);
  std::vector<int> multi(static_cast<size_t>(n));
  for (int i = 0; i < d; ++i) {
    std::fill(multi.begin(), multi.end(), i);
    t.at(multi) = Cx(1.0, 0.0);
  }
  return t;
}

DenseTensor graph_state_tensor(int n, const std::vector<std::pair<int, int>>& edge_axes,
                               int label_base) {
  if (n < 1 || n > 20) throw Error(Errc::bad_argument, "graph_state_tensor: bad n");
  for (const auto& [i, j] : edge_axes)
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
      throw Error(Errc::bad_argument, "graph_state_tensor: bad edge");
  DenseTensor t(std::vector<int>(static_cast<size_t>(n), 2), label_base);
  size_t total = t.size();
  for (size_t f = 0; f < total; ++f) {
    int sign = 1;
    for (const auto& [i, j] : edge_axes) {
      size_t bi = (f >> (n - 1 - i)) & 1u;
      size_t bj = (f >> (n - 1 - j)) & 1u;
      if (bi & bj) sign = -sign;
    }
    t.coeffs()[f] = Cx(static_cast<double>(sign), 0.0);
  }
  return t;
}

const std::vector<std::pair<int, int>>& ame_6_2_edges() {
  static const std::vector<std::pair<int, int>> edges = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5},
      {1, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 4},
  };
  return edges;
}

DenseTensor ame_6_2() { return graph_state_tensor(6, ame_6_2_edges(), 1); }

DenseTensor wheel_state(int rim) {
  if (rim < 3) throw Error(Errc::bad_argument, "wheel_state: need at least 3 rim sites");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= rim; ++i) edges.emplace_back(0, i);
  for (int i = 1; i <= rim; ++i) edges.emplace_back(i, i % rim + 1);
  return graph_state_tensor(rim + 1, edges, 1);
}

ConstraintGraph wheel_graph(int rim) {
  if (rim < 3) throw Error(Errc::bad_argument, "wheel_graph: need at least 3 rim sites");
  ConstraintGraph g;
  g.n = rim + 1;
  for (int i = 1; i <= rim; ++i) g.edges.emplace_back(1, 1 + i);
  for (int i = 1; i <= rim; ++i) g.edges.emplace_back(1 + i, 1 + (i % rim) + 1);
  g.validate();
  return g;
}

Matrix coupling_gate(double j_coupling) {
  Matrix u = Matrix::Zero(4, 4);
  Cx em = std::exp(Cx(0.0, -j_coupling));
  Cx ep = Cx(0.0, -1.0) * std::exp(Cx(0.0, j_coupling));
  u(0, 0) = em;
  u(3, 3) = em;
  u(1, 2) = ep;
  u(2, 1) = ep;
  return u;
}

namespace {

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

void check_local(const Matrix& u, const char* what) {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u, 1e-10))
    throw Error(Errc::bad_argument, what);
}

}  // namespace

Matrix dual_unitary_gate(double j_coupling, const Matrix& u1, const Matrix& u2,
                         const Matrix& u3, const Matrix& u4) {
  check_local(u1, "dual_unitary_gate: u1 is not a 2x2 unitary");
  check_local(u2, "dual_unitary_gate: u2 is not a 2x2 unitary");
  check_local(u3, "dual_unitary_gate: u3 is not a 2x2 unitary");
  check_local(u4, "dual_unitary_gate: u4 is not a 2x2 unitary");
  return kron2(u1, u2) * coupling_gate(j_coupling) * kron2(u3, u4);
}

bool is_dual_unitary(const Matrix& u, double tol) {
  if (u.rows() != 4 || u.cols() != 4)
    throw Error(Errc::bad_argument, "is_dual_unitary: 4x4 matrix required");
  // reshuffle: rows (i1, o1), cols (i2, o2)
  Matrix m(4, 4);
  for (int o1 = 0; o1 < 2; ++o1)
    for (int o2 = 0; o2 < 2; ++o2)
      for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
          m(2 * i1 + o1, 2 * i2 + o2) = u(2 * o1 + o2, 2 * i1 + i2);
  return is_unitary(m, tol);
}

bool is_two_unitary(const Matrix& u, double tol) {
  if (u.rows() != 4 || u.cols() != 4)
    throw Error(Errc::bad_argument, "is_two_unitary: 4x4 matrix required");
  // partial transpose: rows (o1, i2), cols (i1, o2)
  Matrix m(4, 4);
  for (int o1 = 0; o1 < 2; ++o1)
    for (int o2 = 0; o2 < 2; ++o2)
      for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
          m(2 * o1 + i2, 2 * i1 + o2) = u(2 * o1 + o2, 2 * i1 + i2);
  return is_unitary(m, tol);
}

std::map<int, Matrix> frame_gates(int n, double j_coupling, uint64_t seed) {
  if (n < 4) throw Error(Errc::bad_argument, "frame_gates: need n >= 4");
  std::map<int, Matrix> gates;
  for (int d = 2; 2 * d <= n; ++d) {
    std::mt19937_64 gen = substream(seed, static_cast<uint64_t>(d));
    Matrix u1 = haar_unitary(2, gen);
    Matrix u2 = haar_unitary(2, gen);
    if (2 * d == n) {
      // the antipodal crossing is met from both sides; a symmetric gate
      // keeps the two placements consistent
      gates[d] = dual_unitary_gate(j_coupling, u1, u2, u1.transpose(), u2.transpose());
    } else {
      Matrix u3 = haar_unitary(2, gen);
      Matrix u4 = haar_unitary(2, gen);
      gates[d] = dual_unitary_gate(j_coupling, u1, u2, u3, u4);
    }
  }
  return gates;
}

namespace {

long frame_segment(int n, int wire, int slot) { return static_cast<long>(wire) * (n - 2) + slot; }

}  // namespace

DenseTensor frame_tensor(int n, const std::map<int, Matrix>& gates) {
  if (n < 4 || n > 7)
    throw Error(Errc::unsupported, "frame_tensor: n must be between 4 and 7");
  for (int d = 2; 2 * d <= n; ++d) {
    auto it = gates.find(d);
    if (it == gates.end())
      throw Error(Errc::bad_argument, "frame_tensor: missing gate for a crossing distance");
    if (it->second.rows() != 4 || it->second.cols() != 4 ||
        !is_unitary(it->second, 1e-10))
      throw Error(Errc::bad_argument, "frame_tensor: gates must be 4x4 unitaries");
  }

  std::vector<LabeledPiece> pieces;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      int fwd = (k - j) % n;
      int dist = std::min(fwd, n - fwd);
      if (dist < 2) continue;  // adjacent wires never cross
      const Matrix& u = gates.at(dist);
      int tj = ((j - k) % n + n) % n - 1;
      int tk = ((k - j) % n + n) % n - 1;
      int a = j, ta = tj, b = k, tb = tk;
      if (tk < tj || (tk == tj && k < j)) {
        a = k;
        ta = tk;
        b = j;
        tb = tj;
      }
      LabeledPiece piece;
      piece.t = DenseTensor({2, 2, 2, 2}, 1);
      for (int oa = 0; oa < 2; ++oa)
        for (int ob = 0; ob < 2; ++ob)
          for (int ia = 0; ia < 2; ++ia)
            for (int ib = 0; ib < 2; ++ib)
              piece.t.at({oa, ob, ia, ib}) = u(2 * ia + ob, 2 * oa + ib);
      piece.ids = {frame_segment(n, a, ta), frame_segment(n, b, tb),
                   frame_segment(n, a, ta - 1), frame_segment(n, b, tb - 1)};
      pieces.push_back(std::move(piece));
    }
  }

  LabeledPiece woven = greedy_contract(std::move(pieces));
  if (woven.t.order() != 2 * n)
    throw Error(Errc::numeric_failure, "frame_tensor: unexpected open legs");

  // boundary order (L_0, R_0, L_1, R_1, ...)
  std::vector<long> wanted;
  for (int j = 0; j < n; ++j) {
    wanted.push_back(frame_segment(n, (j - 1 + n) % n, n - 3));  // L_j
    wanted.push_back(frame_segment(n, j, 0));                    // R_j
  }
  std::vector<int> perm;
  for (long id : wanted) {
    int axis = -1;
    for (size_t x = 0; x < woven.ids.size(); ++x)
      if (woven.ids[x] == id) axis = static_cast<int>(x);
    if (axis < 0)
      throw Error(Errc::numeric_failure, "frame_tensor: boundary segment missing");
    perm.push_back(axis);
  }
  return permute_axes(woven.t, perm);
}

DenseTensor framed_wheel_tensor(int n, const std::map<int, Matrix>& gates,
                                const std::vector<Matrix>& leg_unitaries) {
  DenseTensor frame = frame_tensor(n, gates);
  DenseTensor wheel = wheel_state(n);
  DenseTensor prod = tensor_product(wheel, frame);

  // hub first, then (rim qubit, left frame end, right frame end) per corner
  std::vector<int> perm = {0};
  for (int i = 0; i < n; ++i) {
    perm.push_back(1 + i);
    perm.push_back(n + 1 + 2 * i);
    perm.push_back(n + 2 + 2 * i);
  }
  DenseTensor ordered = permute_axes(prod, perm);

  std::vector<int> dims(static_cast<size_t>(n + 1), 8);
  dims[0] = 2;
  DenseTensor out(dims, 0);
  out.coeffs() = ordered.coeffs();

  if (!leg_unitaries.empty()) {
    if (leg_unitaries.size() != 1 && static_cast<int>(leg_unitaries.size()) != n)
      throw Error(Errc::bad_argument,
                  "framed_wheel_tensor: provide one shared or n leg unitaries");
    for (const Matrix& w : leg_unitaries)
      if (w.rows() != 8 || w.cols() != 8 || !is_unitary(w, 1e-10))
        throw Error(Errc::bad_argument,
                    "framed_wheel_tensor: leg unitaries must be 8x8 unitary");
    for (int i = 0; i < n; ++i) {
      const Matrix& w = leg_unitaries.size() == 1 ? leg_unitaries[0]
                                                  : leg_unitaries[static_cast<size_t>(i)];
      out = out.apply_axis_matrix(1 + i, w);
    }
  }
  return out;
}

}  // namespace grt
