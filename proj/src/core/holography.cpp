#include "core/holography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include <json.hpp>

#include "core/contraction.hpp"
#include "core/rng.hpp"
#include "core/symmetry.hpp"

namespace grt {

TilingSpec tiling_spec(int n_gon, int k) {
  if (n_gon == 6 && k == 4) return {6, 4, 3.0 + 2.0 * std::sqrt(2.0)};
  if (n_gon == 5 && k == 4) return {5, 4, 2.0 + std::sqrt(3.0)};
  throw Error(Errc::unsupported, "tiling_spec: only {6,4} and {5,4} are tabulated");
}

double scaling_dimension(double lambda2, const TilingSpec& tiling) {
  if (!(lambda2 >= 0.0))
    throw Error(Errc::bad_argument, "scaling_dimension: lambda2 must be >= 0");
  if (!(tiling.mu > 1.0))
    throw Error(Errc::bad_argument, "scaling_dimension: mu must exceed 1");
  if (lambda2 == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(lambda2) / std::log(tiling.mu);
}

double boundary_separation(int path_tiles, const TilingSpec& tiling) {
  if (path_tiles < 1)
    throw Error(Errc::bad_argument, "boundary_separation: need at least one tile");
  return std::pow(tiling.mu, 0.5 * path_tiles);
}

double power_law_exponent(const std::vector<std::pair<double, double>>& sep_value) {
  if (sep_value.size() < 4)
    throw Error(Errc::bad_argument, "power_law_exponent: need at least 4 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [sep, val] : sep_value) {
    if (!(sep > 0.0) || !(std::abs(val) > 0.0))
      throw Error(Errc::bad_argument, "power_law_exponent: need positive data");
    double x = std::log(sep), y = std::log(std::abs(val));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(sep_value.size());
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30)
    throw Error(Errc::numeric_failure, "power_law_exponent: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

namespace {

// Doubled reduction onto `legs` (caller order, first leg slowest): rows are
// the ket multi-index, columns the bra multi-index. A bulk weight W inserts
// the single-site operator with standard matrix elements W(bra, ket) on the
// leg labelled 0 (which must not be kept).
Matrix ordered_reduction(const DenseTensor& t, const std::vector<int>& legs,
                         const Matrix* weight) {
  std::vector<int> sorted_legs = legs;
  std::sort(sorted_legs.begin(), sorted_legs.end());
  if (std::adjacent_find(sorted_legs.begin(), sorted_legs.end()) != sorted_legs.end())
    throw Error(Errc::bad_argument, "ordered_reduction: repeated leg");

  Matrix rho;
  if (weight == nullptr) {
    rho = reduce(t, Bipartition{sorted_legs}).rho;
  } else {
    if (t.label_base() != 0)
      throw Error(Errc::bad_argument, "bulk weight requires a leg labelled 0");
    if (t.dim(t.axis_of_label(0)) != 2 || weight->rows() != 2 || weight->cols() != 2)
      throw Error(Errc::bad_argument, "bulk weight must be 2x2 on a qubit leg");
    for (int l : legs)
      if (l == 0)
        throw Error(Errc::bad_argument, "bulk leg cannot be kept under a weight");
    Matrix m = as_operator(t, Bipartition{sorted_legs});
    // the bulk leg has the lowest label, so it is the slowest traced index
    Eigen::Index half = m.cols() / 2;
    rho = Matrix::Zero(m.rows(), m.rows());
    for (int bra = 0; bra < 2; ++bra)
      for (int ket = 0; ket < 2; ++ket) {
        Cx w = (*weight)(bra, ket);
        if (w == Cx(0.0, 0.0)) continue;
        rho += w * (m.middleCols(ket * half, half) *
                    m.middleCols(bra * half, half).adjoint());
      }
  }

  if (legs == sorted_legs) return rho;

  // remap from ascending-label digit order to the caller's order
  const size_t m = legs.size();
  std::vector<int> dims(m), rank(m);
  for (size_t x = 0; x < m; ++x) {
    dims[x] = t.dim(t.axis_of_label(legs[x]));
    rank[x] = static_cast<int>(
        std::lower_bound(sorted_legs.begin(), sorted_legs.end(), legs[x]) -
        sorted_legs.begin());
  }
  std::vector<int> sorted_dims(m);
  for (size_t x = 0; x < m; ++x) sorted_dims[static_cast<size_t>(rank[x])] = dims[x];
  std::vector<size_t> sorted_strides(m, 1);
  for (size_t j = m - 1; j > 0; --j)
    sorted_strides[j - 1] =
        sorted_strides[j] * static_cast<size_t>(sorted_dims[j]);

  const Eigen::Index d = rho.rows();
  std::vector<Eigen::Index> map(static_cast<size_t>(d));
  for (Eigen::Index kc = 0; kc < d; ++kc) {
    Eigen::Index rem = kc;
    size_t ks = 0;
    for (size_t x = m; x-- > 0;) {
      Eigen::Index digit = rem % dims[x];
      rem /= dims[x];
      ks += static_cast<size_t>(digit) * sorted_strides[static_cast<size_t>(rank[x])];
    }
    map[static_cast<size_t>(kc)] = static_cast<Eigen::Index>(ks);
  }
  Matrix out(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      out(r, c) = rho(map[static_cast<size_t>(r)], map[static_cast<size_t>(c)]);
  return out;
}

bool spectrum_less(const Cx& a, const Cx& b) {
  double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

TransferNode node_matrix(const DenseTensor& t, int leg_in, int leg_out) {
  if (leg_in == leg_out)
    throw Error(Errc::bad_argument, "node_matrix: legs must differ");
  int d = t.dim(t.axis_of_label(leg_in));
  if (t.dim(t.axis_of_label(leg_out)) != d)
    throw Error(Errc::dimension_mismatch, "node_matrix: leg dimensions differ");

  Matrix rho = ordered_reduction(t, {leg_in, leg_out}, nullptr);
  const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
  Matrix n(dd, dd);
  for (int o = 0; o < d; ++o)
    for (int op = 0; op < d; ++op)
      for (int i = 0; i < d; ++i)
        for (int ip = 0; ip < d; ++ip)
          n(o * d + op, i * d + ip) = rho(i * d + o, ip * d + op);

  Eigen::ComplexEigenSolver<Matrix> es(n);
  if (es.info() != Eigen::Success)
    throw Error(Errc::numeric_failure, "node_matrix: eigensolver failed");

  std::vector<int> order(static_cast<size_t>(dd));
  for (Eigen::Index i = 0; i < dd; ++i) order[static_cast<size_t>(i)] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return spectrum_less(es.eigenvalues()(a), es.eigenvalues()(b));
  });

  TransferNode node;
  node.leg_in = leg_in;
  node.leg_out = leg_out;
  node.leading_raw = es.eigenvalues()(order[0]);
  if (std::abs(node.leading_raw) == 0.0)
    throw Error(Errc::numeric_failure, "node_matrix: vanishing leading eigenvalue");
  node.matrix = n / node.leading_raw;
  node.spectrum.reserve(static_cast<size_t>(dd));
  for (int idx : order) node.spectrum.push_back(es.eigenvalues()(idx) / node.leading_raw);
  node.leading_vector = es.eigenvectors().col(order[0]);
  return node;
}

namespace {

void check_tile_tensor(const DenseTensor& t) {
  if (t.order() != 7 || t.label_base() != 0)
    throw Error(Errc::bad_argument, "tile tensor must have legs labelled 0..6");
  for (int a = 0; a < 7; ++a)
    if (t.dim(a) != 2)
      throw Error(Errc::bad_argument, "tile tensor must have qubit legs");
}

void check_probe(const Matrix& v, bool traceless, const char* what) {
  if (v.rows() != 2 || v.cols() != 2)
    throw Error(Errc::bad_argument, std::string(what) + ": 2x2 matrix required");
  if (traceless &&
      std::abs(v(0, 0) + v(1, 1)) > 1e-12 * (1.0 + v.cwiseAbs().maxCoeff()))
    throw Error(Errc::bad_argument, std::string(what) + ": probe must be traceless");
}

void check_step(const PathStep& s) {
  if (s.in_leg < 1 || s.in_leg > 6 || s.out_leg < 1 || s.out_leg > 6 ||
      !legs_nonadjacent(s.in_leg, s.out_leg))
    throw Error(Errc::bad_argument, "path step must turn across non-adjacent legs");
}

const Matrix* bulk_at(const std::map<int, Matrix>& ops, int pos) {
  auto it = ops.find(pos);
  if (it == ops.end()) return nullptr;
  if (it->second.rows() != 2 || it->second.cols() != 2)
    throw Error(Errc::bad_argument, "bulk operator must be 2x2");
  return &it->second;
}

// probe end of a chain: close the in leg with the probe, keep the out bond
Matrix cap_start(const Matrix& rho, const Matrix& v) {
  Matrix cap = Matrix::Zero(2, 2);
  for (int e = 0; e < 2; ++e)
    for (int ep = 0; ep < 2; ++ep)
      for (int p = 0; p < 2; ++p)
        for (int pp = 0; pp < 2; ++pp)
          cap(e, ep) += rho(p * 2 + e, pp * 2 + ep) * v(pp, p);
  return cap;
}

// transit: absorb the incoming cap, emit the outgoing one
Matrix cap_step(const Matrix& rho, const Matrix& cap_in) {
  Matrix cap = Matrix::Zero(2, 2);
  for (int o = 0; o < 2; ++o)
    for (int op = 0; op < 2; ++op)
      for (int i = 0; i < 2; ++i)
        for (int ip = 0; ip < 2; ++ip)
          cap(o, op) += rho(i * 2 + o, ip * 2 + op) * cap_in(i, ip);
  return cap;
}

Cx cap_end(const Matrix& rho, const Matrix& v, const Matrix& cap_in) {
  Cx val(0.0, 0.0);
  for (int e = 0; e < 2; ++e)
    for (int ep = 0; ep < 2; ++ep)
      for (int q = 0; q < 2; ++q)
        for (int qp = 0; qp < 2; ++qp)
          val += rho(e * 2 + q, ep * 2 + qp) * v(qp, q) * cap_in(e, ep);
  return val;
}

Cx pair_value(const Matrix& rho, const Matrix& v1, const Matrix& v2) {
  Cx val(0.0, 0.0);
  for (int p = 0; p < 2; ++p)
    for (int pp = 0; pp < 2; ++pp)
      for (int q = 0; q < 2; ++q)
        for (int qp = 0; qp < 2; ++qp)
          val += rho(p * 2 + q, pp * 2 + qp) * v1(pp, p) * v2(qp, q);
  return val;
}

}  // namespace

CorrelatorResult two_point_path(const DenseTensor& t, const PathSpec& path,
                                const Matrix& v1, const Matrix& v2,
                                const std::map<int, Matrix>& bulk_ops) {
  check_tile_tensor(t);
  check_probe(v1, true, "two_point_path");
  check_probe(v2, true, "two_point_path");
  if (path.steps.empty())
    throw Error(Errc::bad_argument, "two_point_path: empty path");
  for (const PathStep& s : path.steps) check_step(s);
  for (const auto& [pos, op] : bulk_ops)
    if (pos < 0 || pos >= static_cast<int>(path.steps.size()))
      throw Error(Errc::bad_argument, "two_point_path: bulk operator off the path");

  const int n_steps = static_cast<int>(path.steps.size());
  auto rho_at = [&](int pos) {
    const PathStep& s = path.steps[static_cast<size_t>(pos)];
    return ordered_reduction(t, {s.in_leg, s.out_leg}, bulk_at(bulk_ops, pos));
  };

  Cx value;
  if (n_steps == 1) {
    value = pair_value(rho_at(0), v1, v2);
  } else {
    Matrix cap = cap_start(rho_at(0), v1);
    for (int pos = 1; pos + 1 < n_steps; ++pos) cap = cap_step(rho_at(pos), cap);
    value = cap_end(rho_at(n_steps - 1), v2, cap);
  }
  value *= std::pow(2.0, n_steps - 1);

  CorrelatorResult res;
  res.value = value;
  res.method = "path";
  res.path_tiles = n_steps;
  res.path_bonds = n_steps - 1;
  return res;
}

CorrelatorResult three_point_path(const DenseTensor& t, const PathSpec& trunk,
                                  const BranchSpec& branch, const Matrix& v1,
                                  const Matrix& v2, const Matrix& v3,
                                  const std::map<int, Matrix>& trunk_bulk_ops) {
  check_tile_tensor(t);
  check_probe(v1, true, "three_point_path");
  check_probe(v2, true, "three_point_path");
  check_probe(v3, false, "three_point_path");
  if (trunk.steps.empty())
    throw Error(Errc::bad_argument, "three_point_path: empty trunk");
  for (const PathStep& s : trunk.steps) check_step(s);
  for (const PathStep& s : branch.arm.steps) check_step(s);

  const int n_trunk = static_cast<int>(trunk.steps.size());
  const int j = branch.trunk_index;
  if (j < 0 || j >= n_trunk)
    throw Error(Errc::bad_argument, "three_point_path: junction index off the trunk");
  const PathStep& junction = trunk.steps[static_cast<size_t>(j)];
  if (branch.junction_leg < 1 || branch.junction_leg > 6 ||
      branch.junction_leg == junction.in_leg ||
      branch.junction_leg == junction.out_leg)
    throw Error(Errc::bad_argument, "three_point_path: junction leg unavailable");
  for (const auto& [pos, op] : trunk_bulk_ops)
    if (pos < 0 || pos >= n_trunk)
      throw Error(Errc::bad_argument, "three_point_path: bulk operator off the trunk");

  auto rho_trunk = [&](int pos) {
    const PathStep& s = trunk.steps[static_cast<size_t>(pos)];
    return ordered_reduction(t, {s.in_leg, s.out_leg}, bulk_at(trunk_bulk_ops, pos));
  };

  // closures on the junction tile's three used legs
  bool in_is_probe = (j == 0);
  Matrix into;  // cap arriving on the entry side, unless the probe sits here
  if (!in_is_probe) {
    into = cap_start(rho_trunk(0), v1);
    for (int pos = 1; pos < j; ++pos) into = cap_step(rho_trunk(pos), into);
  }
  bool out_is_probe = (j == n_trunk - 1);
  Matrix outof;  // cap arriving on the exit side, folded from the far end
  if (!out_is_probe) {
    const PathStep& far = trunk.steps[static_cast<size_t>(n_trunk - 1)];
    outof = cap_start(
        ordered_reduction(t, {far.out_leg, far.in_leg}, bulk_at(trunk_bulk_ops, n_trunk - 1)),
        v2);
    for (int pos = n_trunk - 2; pos > j; --pos) {
      const PathStep& s = trunk.steps[static_cast<size_t>(pos)];
      outof = cap_step(
          ordered_reduction(t, {s.out_leg, s.in_leg}, bulk_at(trunk_bulk_ops, pos)), outof);
    }
  }
  bool branch_is_probe = branch.arm.steps.empty();
  Matrix branch_cap;
  if (!branch_is_probe) {
    const auto& arm = branch.arm.steps;
    branch_cap = cap_start(
        ordered_reduction(t, {arm[0].in_leg, arm[0].out_leg}, nullptr), v3);
    for (size_t pos = 1; pos < arm.size(); ++pos)
      branch_cap = cap_step(
          ordered_reduction(t, {arm[pos].in_leg, arm[pos].out_leg}, nullptr), branch_cap);
  }

  Matrix rho3 = ordered_reduction(
      t, {junction.in_leg, junction.out_leg, branch.junction_leg},
      bulk_at(trunk_bulk_ops, j));

  Cx value(0.0, 0.0);
  for (int ki = 0; ki < 2; ++ki)
    for (int ko = 0; ko < 2; ++ko)
      for (int kb = 0; kb < 2; ++kb)
        for (int kip = 0; kip < 2; ++kip)
          for (int kop = 0; kop < 2; ++kop)
            for (int kbp = 0; kbp < 2; ++kbp) {
              Cx f1 = in_is_probe ? v1(kip, ki) : into(ki, kip);
              Cx f2 = out_is_probe ? v2(kop, ko) : outof(ko, kop);
              Cx f3 = branch_is_probe ? v3(kbp, kb) : branch_cap(kb, kbp);
              value += rho3(ki * 4 + ko * 2 + kb, kip * 4 + kop * 2 + kbp) * f1 * f2 * f3;
            }

  int bonds = (n_trunk - 1) + static_cast<int>(branch.arm.steps.size());
  value *= std::pow(2.0, bonds);

  CorrelatorResult res;
  res.value = value;
  res.method = "path";
  res.path_tiles = n_trunk + static_cast<int>(branch.arm.steps.size());
  res.path_bonds = bonds;
  return res;
}

CorrelatorResult brute_force_correlator(const NetworkSpec& net, const DenseTensor& t,
                                        const std::map<int, Matrix>& probes,
                                        const std::map<int, Matrix>& bulk_ops) {
  check_tile_tensor(t);
  if (net.tile_count() > 16)
    throw Error(Errc::unsupported,
                "brute_force_correlator: network too large for full contraction");
  for (const auto& [b, v] : probes) {
    if (b < 0 || b >= net.boundary_count())
      throw Error(Errc::bad_argument, "brute_force_correlator: bad boundary index");
    if (v.rows() != 2 || v.cols() != 2)
      throw Error(Errc::bad_argument, "brute_force_correlator: probes must be 2x2");
  }
  for (const auto& [tile, op] : bulk_ops) {
    if (tile < 0 || tile >= net.tile_count())
      throw Error(Errc::bad_argument, "brute_force_correlator: bad tile index");
    if (op.rows() != 2 || op.cols() != 2)
      throw Error(Errc::bad_argument, "brute_force_correlator: bulk ops must be 2x2");
  }

  // unique id per bond; boundary legs close immediately
  std::map<std::pair<int, int>, long> bond_id;
  long next_id = 0;
  for (int tile = 0; tile < net.tile_count(); ++tile)
    for (int leg = 1; leg <= 6; ++leg) {
      if (net.is_open(tile, leg)) continue;
      auto other = net.bonds[static_cast<size_t>(tile)][static_cast<size_t>(leg)];
      if (std::make_pair(tile, leg) < other) continue;  // id assigned from one side
      bond_id[{tile, leg}] = next_id;
      bond_id[other] = next_id;
      ++next_id;
    }

  DenseTensor conj_t = t.conjugate();
  auto contract_all = [&](bool with_probes) {
    std::vector<LabeledPiece> pieces;
    for (int tile = 0; tile < net.tile_count(); ++tile) {
      DenseTensor ket = t;
      if (with_probes) {
        auto it = bulk_ops.find(tile);
        if (it != bulk_ops.end()) ket = ket.apply_axis_matrix(0, it->second);
      }
      DenseTensor doubled = contract(ket, conj_t, {{0, 0}});
      doubled = permute_axes(doubled, {0, 6, 1, 7, 2, 8, 3, 9, 4, 10, 5, 11});
      DenseTensor folded({4, 4, 4, 4, 4, 4}, 1);
      folded.coeffs() = doubled.coeffs();
      double s2 = net.tiles[static_cast<size_t>(tile)].scale2;
      folded.scale(Cx(s2, 0.0));

      LabeledPiece piece;
      piece.t = std::move(folded);
      for (int leg = 1; leg <= 6; ++leg)
        piece.ids.push_back(net.is_open(tile, leg) ? -1 : bond_id.at({tile, leg}));

      // close boundary legs now, from the highest axis down
      for (int leg = 6; leg >= 1; --leg) {
        if (!net.is_open(tile, leg)) continue;
        int b = net.leg_boundary[static_cast<size_t>(tile)][static_cast<size_t>(leg)];
        DenseTensor w({4}, 1);
        auto it = with_probes ? probes.find(b) : probes.end();
        if (it != probes.end()) {
          for (int ketd = 0; ketd < 2; ++ketd)
            for (int brad = 0; brad < 2; ++brad)
              w.at({ketd * 2 + brad}) = it->second(brad, ketd);
        } else {
          w.at({0}) = Cx(1.0, 0.0);
          w.at({3}) = Cx(1.0, 0.0);
        }
        int axis = -1;
        for (size_t x = 0; x < piece.ids.size(); ++x)
          if (piece.ids[x] == -1 &&
              static_cast<int>(x) >= axis)  // rightmost open slot is this leg
            axis = static_cast<int>(x);
        piece.t = contract(piece.t, w, {{axis + 1, 1}});
        piece.ids.erase(piece.ids.begin() + axis);
      }
      pieces.push_back(std::move(piece));
    }
    LabeledPiece all = greedy_contract(std::move(pieces));
    if (all.t.order() != 0)
      throw Error(Errc::numeric_failure, "brute_force_correlator: legs left open");
    return all.t.coeffs()[0];
  };

  Cx numerator = contract_all(true);
  Cx denominator = contract_all(false);
  if (std::abs(denominator) == 0.0)
    throw Error(Errc::numeric_failure, "brute_force_correlator: vanishing partition sum");

  CorrelatorResult res;
  res.value = numerator / denominator;
  res.method = "brute";
  return res;
}

namespace {

struct BranchSearch {
  const NetworkSpec& net;
  const std::map<int, int>& trunk_pos;  // tile -> trunk step index
  const std::vector<PathStep>& trunk_steps;
  std::vector<char> visited;
  std::vector<PathStep> steps;
  int found_index = -1;
  int found_leg = 0;

  BranchSearch(const NetworkSpec& n, const std::map<int, int>& tp,
               const std::vector<PathStep>& ts)
      : net(n), trunk_pos(tp), trunk_steps(ts),
        visited(static_cast<size_t>(n.tile_count()), 0) {}

  bool walk(int tile, int in_leg) {
    visited[static_cast<size_t>(tile)] = 1;
    for (int out = 1; out <= 6; ++out) {
      if (!legs_nonadjacent(in_leg, out)) continue;
      if (net.is_open(tile, out)) continue;
      auto [nt, nl] = net.bonds[static_cast<size_t>(tile)][static_cast<size_t>(out)];
      steps.push_back({tile, in_leg, out});
      auto it = trunk_pos.find(nt);
      if (it != trunk_pos.end()) {
        const PathStep& junction = trunk_steps[static_cast<size_t>(it->second)];
        if (nl != junction.in_leg && nl != junction.out_leg) {
          found_index = it->second;
          found_leg = nl;
          return true;
        }
      } else if (!visited[static_cast<size_t>(nt)]) {
        if (walk(nt, nl)) return true;
      }
      steps.pop_back();
    }
    visited[static_cast<size_t>(tile)] = 0;
    return false;
  }
};

}  // namespace

std::optional<ThreePointLayout> find_three_point(const NetworkSpec& net, int b1,
                                                 int b2, int b3) {
  int bs[3] = {b1, b2, b3};
  for (int b : bs)
    if (b < 0 || b >= net.boundary_count())
      throw Error(Errc::bad_argument, "find_three_point: boundary index out of range");
  if (b1 == b2 || b1 == b3 || b2 == b3)
    throw Error(Errc::bad_argument, "find_three_point: three distinct legs required");

  const std::array<std::array<int, 3>, 3> assignments = {
      {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  for (const auto& asg : assignments) {
    for (const PathSpec& trunk : enumerate_paths(net, bs[asg[0]], bs[asg[1]])) {
      std::map<int, int> trunk_pos;
      for (size_t p = 0; p < trunk.steps.size(); ++p)
        trunk_pos[trunk.steps[p].tile] = static_cast<int>(p);

      auto [tile, leg] = net.boundary[static_cast<size_t>(bs[asg[2]])];
      ThreePointLayout layout;
      layout.trunk = trunk;
      layout.probe_order = {asg[0], asg[1], asg[2]};

      auto it = trunk_pos.find(tile);
      if (it != trunk_pos.end()) {
        const PathStep& junction = trunk.steps[static_cast<size_t>(it->second)];
        if (leg != junction.in_leg && leg != junction.out_leg) {
          layout.branch.trunk_index = it->second;
          layout.branch.junction_leg = leg;
          return layout;
        }
        continue;  // probe leg clashes with the trunk turn
      }

      BranchSearch search(net, trunk_pos, trunk.steps);
      if (search.walk(tile, leg)) {
        layout.branch.trunk_index = search.found_index;
        layout.branch.junction_leg = search.found_leg;
        layout.branch.arm.steps = search.steps;
        return layout;
      }
    }
  }
  return std::nullopt;
}

DenseTensor combined_pentagon_perfect(const std::vector<Matrix>& leg_unitaries) {
  static const DenseTensor base = [] {
    DenseTensor p = pentagonal_isolated().tensor;
    DenseTensor q = ame_6_2();
    DenseTensor prod = tensor_product(p, q);
    // bulk qubit of the perfect tensor first, then (pentagon leg, perfect
    // leg) pairs merged into dimension-4 legs
    DenseTensor ordered = permute_axes(prod, {5, 0, 6, 1, 7, 2, 8, 3, 9, 4, 10});
    DenseTensor out({2, 4, 4, 4, 4, 4}, 0);
    out.coeffs() = ordered.coeffs();
    return out;
  }();

  DenseTensor out = base;
  if (!leg_unitaries.empty()) {
    if (leg_unitaries.size() != 1 && leg_unitaries.size() != 5)
      throw Error(Errc::bad_argument,
                  "combined_pentagon_perfect: provide one shared or five unitaries");
    for (const Matrix& u : leg_unitaries) {
      if (u.rows() != 4 || u.cols() != 4)
        throw Error(Errc::bad_argument,
                    "combined_pentagon_perfect: leg unitaries must be 4x4");
      Matrix dev = u * u.adjoint() - Matrix::Identity(4, 4);
      if (dev.cwiseAbs().maxCoeff() > 1e-10)
        throw Error(Errc::bad_argument,
                    "combined_pentagon_perfect: leg matrices must be unitary");
    }
    for (int axis = 1; axis <= 5; ++axis) {
      const Matrix& u = leg_unitaries.size() == 1 ? leg_unitaries[0]
                                                  : leg_unitaries[static_cast<size_t>(axis - 1)];
      out = out.apply_axis_matrix(axis, u);
    }
  }
  return out;
}

std::vector<ViolinRow> violin_sample(long count, uint64_t seed, bool shared_unitary,
                                     int threads) {
  if (count < 0) throw Error(Errc::bad_argument, "violin_sample: negative count");
  const DenseTensor base = combined_pentagon_perfect();
  const TilingSpec tiling = tiling_spec(5, 4);
  std::vector<ViolinRow> rows(static_cast<size_t>(count));

  auto run_range = [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      std::mt19937_64 gen = substream(seed, static_cast<uint64_t>(i));
      DenseTensor t = base;
      if (shared_unitary) {
        Matrix u = haar_unitary(4, gen);
        for (int axis = 1; axis <= 5; ++axis) t = t.apply_axis_matrix(axis, u);
      } else {
        for (int axis = 1; axis <= 5; ++axis)
          t = t.apply_axis_matrix(axis, haar_unitary(4, gen));
      }
      TransferNode node = node_matrix(t, 1, 3);
      rows[static_cast<size_t>(i)] = {i, scaling_dimension(node.lambda(2), tiling),
                                      scaling_dimension(node.lambda(3), tiling)};
    }
  };

  int nt = std::max(1, threads);
  if (nt == 1 || count < 2) {
    run_range(0, count);
  } else {
    nt = std::min<long>(nt, count);
    std::vector<std::thread> pool;
    long chunk = (count + nt - 1) / nt;
    for (int w = 0; w < nt; ++w) {
      long lo = w * chunk, hi = std::min<long>(count, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

FrameReport verify_frame(const DenseTensor& f, int n, double tol_neighbor,
                         double tol_non_neighbor) {
  if (n < 3 || f.order() != 2 * n)
    throw Error(Errc::bad_argument, "verify_frame: tensor order must be 2n");
  for (int a = 0; a < f.order(); ++a)
    if (f.dim(a) != 2)
      throw Error(Errc::bad_argument, "verify_frame: qubit legs required");

  FrameReport report;
  report.n = n;
  report.neighbors_pass = true;

  auto corner_pair = [&](int i, int j, double tol) {
    Bipartition part;
    int base = f.label_base();
    part.kept = {2 * i + base, 2 * i + 1 + base, 2 * j + base, 2 * j + 1 + base};
    std::sort(part.kept.begin(), part.kept.end());
    ProportionalityReport pr = proportional_to_identity(reduce(f, part).rho, tol);
    FrameCheck check;
    check.leg_a = i;
    check.leg_b = j;
    check.pass = pr.proportional;
    check.deviation =
        std::abs(pr.constant) > 0.0 ? pr.max_deviation / std::abs(pr.constant)
                                    : std::numeric_limits<double>::infinity();
    return check;
  };

  for (int i = 0; i < n; ++i) {
    FrameCheck check = corner_pair(i, (i + 1) % n, tol_neighbor);
    report.worst_neighbor_deviation =
        std::max(report.worst_neighbor_deviation, check.deviation);
    report.neighbors_pass = report.neighbors_pass && check.pass;
    report.neighbor.push_back(check);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // circular neighbours
      FrameCheck check = corner_pair(i, j, tol_non_neighbor);
      report.any_non_neighbor_fails = report.any_non_neighbor_fails || !check.pass;
      report.non_neighbor.push_back(check);
    }
  }
  return report;
}

std::string FrameReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["neighbors_pass"] = neighbors_pass;
  j["worst_neighbor_deviation"] = worst_neighbor_deviation;
  j["any_non_neighbor_fails"] = any_non_neighbor_fails;
  auto dump = [](const std::vector<FrameCheck>& list) {
    nlohmann::json arr = nlohmann::json::array();
    for (const FrameCheck& c : list) {
      nlohmann::json cj;
      cj["corners"] = {c.leg_a, c.leg_b};
      cj["pass"] = c.pass;
      cj["deviation"] = c.deviation;
      arr.push_back(cj);
    }
    return arr;
  };
  j["neighbor"] = dump(neighbor);
  j["non_neighbor"] = dump(non_neighbor);
  return j.dump(2);
}

std::vector<RotationScanRow> rotation_spectrum_scan(const DenseTensor& t,
                                                    int grid_points) {
  if (grid_points < 1)
    throw Error(Errc::bad_argument, "rotation_spectrum_scan: empty grid");
  std::vector<RotationScanRow> rows;
  rows.reserve(static_cast<size_t>(grid_points));
  for (int g = 0; g < grid_points; ++g) {
    double phi = 2.0 * M_PI * g / grid_points;
    DenseTensor rotated = apply_local_rotation(t, phi);
    RotationScanRow row;
    row.phi = phi;
    row.lambda2_13 = node_matrix(rotated, 1, 3).lambda(2);
    row.lambda2_14 = node_matrix(rotated, 1, 4).lambda(2);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace grt
