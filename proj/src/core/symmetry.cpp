#include "core/symmetry.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "core/rng.hpp"

namespace grt {

namespace {

void check_permutation(const SymmetryElement& e, int n) {
  if (static_cast<int>(e.src.size()) != n)
    throw Error(Errc::bad_argument, "symmetry element has wrong arity");
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int s : e.src) {
    if (s < 0 || s >= n || seen[static_cast<size_t>(s)])
      throw Error(Errc::bad_argument, "symmetry element is not a permutation");
    seen[static_cast<size_t>(s)] = 1;
  }
}

SymmetryElement identity_element(int n) {
  SymmetryElement e;
  e.src.resize(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) e.src[static_cast<size_t>(a)] = a;
  return e;
}

std::vector<int> act(const SymmetryElement& e, const std::vector<int>& t, int d) {
  std::vector<int> out(t.size());
  for (size_t a = 0; a < t.size(); ++a) {
    int v = t[static_cast<size_t>(e.src[a])];
    out[a] = e.spin_flip ? d - 1 - v : v;
  }
  return out;
}

size_t encode(const std::vector<int>& t, int d) {
  size_t f = 0;
  for (int v : t) f = f * static_cast<size_t>(d) + static_cast<size_t>(v);
  return f;
}

std::vector<int> decode(size_t f, int n, int d) {
  std::vector<int> t(static_cast<size_t>(n));
  for (int a = n - 1; a >= 0; --a) {
    t[static_cast<size_t>(a)] = static_cast<int>(f % static_cast<size_t>(d));
    f /= static_cast<size_t>(d);
  }
  return t;
}

}  // namespace

SymmetrySpec cyclic_spec(int n) {
  if (n < 1) throw Error(Errc::bad_argument, "cyclic_spec: n must be positive");
  SymmetrySpec spec;
  spec.n = n;
  SymmetryElement rot;
  rot.src.resize(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) rot.src[static_cast<size_t>(a)] = (a + 1) % n;
  spec.generators.push_back(rot);
  return spec;
}

SymmetrySpec ring_spec(int bonds, bool reflection, bool global_flip) {
  if (bonds < 2) throw Error(Errc::bad_argument, "ring_spec: need at least 2 bonds");
  int n = bonds + 1;
  SymmetrySpec spec;
  spec.n = n;

  SymmetryElement rot;
  rot.src.resize(static_cast<size_t>(n));
  rot.src[0] = 0;
  for (int i = 0; i < bonds; ++i)
    rot.src[static_cast<size_t>(1 + i)] = 1 + (i + 1) % bonds;
  spec.generators.push_back(rot);

  if (reflection) {
    SymmetryElement ref;
    ref.src.resize(static_cast<size_t>(n));
    ref.src[0] = 0;
    ref.src[1] = 1;
    for (int j = 2; j <= bonds; ++j) ref.src[static_cast<size_t>(j)] = bonds + 2 - j;
    spec.generators.push_back(ref);
  }
  if (global_flip) {
    SymmetryElement flip = identity_element(n);
    flip.spin_flip = true;
    spec.generators.push_back(flip);
  }
  return spec;
}

SymmetryElement compose(const SymmetryElement& g, const SymmetryElement& h) {
  // (h then g) as an action on tuples: out[a] = flip_c(in[src_c[a]]) with
  // src_c[a] = src_g[src_h[a]] and the flips xor'ed.
  SymmetryElement c;
  c.src.resize(g.src.size());
  for (size_t a = 0; a < g.src.size(); ++a)
    c.src[a] = g.src[static_cast<size_t>(h.src[a])];
  c.spin_flip = g.spin_flip != h.spin_flip;
  return c;
}

std::vector<SymmetryElement> group_closure(const SymmetrySpec& spec, size_t max_order) {
  if (spec.n < 1) throw Error(Errc::bad_argument, "group_closure: empty spec");
  for (const auto& g : spec.generators) check_permutation(g, spec.n);

  std::set<SymmetryElement> seen;
  std::queue<SymmetryElement> todo;
  SymmetryElement id = identity_element(spec.n);
  seen.insert(id);
  todo.push(id);
  while (!todo.empty()) {
    SymmetryElement e = todo.front();
    todo.pop();
    for (const auto& g : spec.generators) {
      SymmetryElement next = compose(g, e);
      if (seen.insert(next).second) {
        if (seen.size() > max_order)
          throw Error(Errc::unsupported, "group closure exceeds maximum order");
        todo.push(next);
      }
    }
  }
  return std::vector<SymmetryElement>(seen.begin(), seen.end());
}

int OrbitTable::orbit_of_tuple(const std::vector<int>& t) const {
  if (static_cast<int>(t.size()) != n)
    throw Error(Errc::bad_argument, "orbit_of_tuple: wrong arity");
  for (int v : t)
    if (v < 0 || v >= local_dim)
      throw Error(Errc::bad_argument, "orbit_of_tuple: index out of range");
  return orbit_of[encode(t, local_dim)];
}

OrbitTable orbits(const SymmetrySpec& spec, int local_dim) {
  if (local_dim < 2) throw Error(Errc::bad_argument, "orbits: local_dim must be >= 2");
  std::vector<SymmetryElement> group = group_closure(spec);

  size_t total = 1;
  for (int a = 0; a < spec.n; ++a) {
    total *= static_cast<size_t>(local_dim);
    if (total > (1u << 22))
      throw Error(Errc::unsupported, "orbits: index space too large");
  }

  OrbitTable table;
  table.n = spec.n;
  table.local_dim = local_dim;
  table.orbit_of.assign(total, -1);

  // Flat row-major order coincides with lexicographic tuple order, so the
  // first unassigned tuple is automatically its orbit's representative.
  for (size_t f = 0; f < total; ++f) {
    if (table.orbit_of[f] != -1) continue;
    int id = table.count();
    std::vector<int> rep = decode(f, spec.n, local_dim);
    int size = 0;
    for (const auto& g : group) {
      size_t img = encode(act(g, rep, local_dim), local_dim);
      if (table.orbit_of[img] == -1) {
        table.orbit_of[img] = id;
        ++size;
      }
    }
    table.representatives.push_back(std::move(rep));
    table.orbit_size.push_back(size);
  }
  return table;
}

DenseTensor expand(const std::vector<Cx>& values, const OrbitTable& table,
                   int label_base) {
  if (static_cast<int>(values.size()) != table.count())
    throw Error(Errc::dimension_mismatch, "expand: one value per orbit required");
  std::vector<int> dims(static_cast<size_t>(table.n), table.local_dim);
  DenseTensor t(dims, label_base);
  for (size_t f = 0; f < t.size(); ++f)
    t.coeffs()[f] = values[static_cast<size_t>(table.orbit_of[f])];
  return t;
}

DenseTensor expand(const std::vector<double>& values, const OrbitTable& table,
                   int label_base) {
  std::vector<Cx> cv(values.begin(), values.end());
  return expand(cv, table, label_base);
}

DenseTensor apply_local_rotation(const DenseTensor& t, double phi) {
  for (int a = 0; a < t.order(); ++a)
    if (t.dim(a) != 2)
      throw Error(Errc::bad_argument, "apply_local_rotation: qubit legs required");
  Matrix s(2, 2);
  double c = std::cos(phi), sn = std::sin(phi);
  s << c, sn, -sn, c;
  DenseTensor out = t;
  for (int a = 0; a < t.order(); ++a) out = out.apply_axis_matrix(a, s);
  return out;
}

namespace {

constexpr uint64_t kEquationPanelSeed = 0x67726571ull;
constexpr int kEquationPanelPoints = 8;
constexpr double kEquationTol = 1e-9;

Matrix reduction_at(const EquationSet& eq, const std::vector<double>& values) {
  DenseTensor t = expand(values, eq.table, 1);
  Bipartition part;
  for (int a : eq.kept_axes) part.kept.push_back(a + 1);
  return reduce(t, part).rho;
}

}  // namespace

std::vector<double> EquationSet::residuals(const std::vector<double>& values) const {
  if (static_cast<int>(values.size()) != table.count())
    throw Error(Errc::dimension_mismatch, "residuals: one value per orbit required");
  Matrix rho = reduction_at(*this, values);
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& [r, c] : entries)
    out.push_back(rho(r, c).real() - (r == c ? 1.0 : 0.0));
  return out;
}

EquationSet constraint_equations(const SymmetrySpec& spec, int local_dim,
                                 const std::vector<int>& kept_axes) {
  if (kept_axes.empty() || !std::is_sorted(kept_axes.begin(), kept_axes.end()))
    throw Error(Errc::bad_argument, "constraint_equations: kept axes must be sorted");
  for (int a : kept_axes)
    if (a < 0 || a >= spec.n)
      throw Error(Errc::bad_argument, "constraint_equations: kept axis out of range");

  EquationSet eq;
  eq.table = orbits(spec, local_dim);
  eq.kept_axes = kept_axes;

  int nvars = eq.table.count();
  size_t dim = 1;
  for (size_t i = 0; i < kept_axes.size(); ++i) dim *= static_cast<size_t>(local_dim);

  std::vector<Matrix> panel;
  for (int p = 0; p < kEquationPanelPoints; ++p) {
    std::mt19937_64 gen = substream(kEquationPanelSeed, static_cast<uint64_t>(p));
    std::vector<double> values(static_cast<size_t>(nvars));
    for (double& v : values) v = uniform_sym(gen);
    panel.push_back(reduction_at(eq, values));
  }

  std::vector<std::vector<Cx>> kept_fps;
  for (size_t r = 0; r < dim; ++r) {
    for (size_t c = r; c < dim; ++c) {
      std::vector<Cx> fp(static_cast<size_t>(kEquationPanelPoints));
      double peak = 0.0;
      for (int p = 0; p < kEquationPanelPoints; ++p) {
        Cx v = panel[static_cast<size_t>(p)](static_cast<Eigen::Index>(r),
                                             static_cast<Eigen::Index>(c)) -
               (r == c ? Cx(1.0, 0.0) : Cx(0.0, 0.0));
        fp[static_cast<size_t>(p)] = v;
        peak = std::max(peak, std::abs(v));
      }
      if (peak < kEquationTol) continue;  // identically zero entry
      bool duplicate = false;
      for (const auto& seen : kept_fps) {
        double dev = 0.0;
        for (int p = 0; p < kEquationPanelPoints; ++p)
          dev = std::max(dev, std::abs(fp[static_cast<size_t>(p)] -
                                       seen[static_cast<size_t>(p)]));
        if (dev < kEquationTol) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      kept_fps.push_back(fp);
      eq.entries.emplace_back(static_cast<int>(r), static_cast<int>(c));
    }
  }
  return eq;
}

}  // namespace grt
