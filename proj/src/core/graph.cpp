#include "core/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "core/io_json.hpp"

namespace grt {

void ConstraintGraph::validate() const {
  if (n < 1) throw Error(Errc::bad_argument, "graph must have n >= 1");
  for (const auto& [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n)
      throw Error(Errc::bad_argument, "edge endpoint out of range");
    if (u == v) throw Error(Errc::bad_argument, "self-loops are not allowed");
  }
}

bool ConstraintGraph::adjacent(int u, int v) const {
  for (const auto& [a, b] : edges)
    if ((a == u && b == v) || (a == v && b == u)) return true;
  return false;
}

void ConstraintHypergraph::validate() {
  if (n < 1) throw Error(Errc::bad_argument, "hypergraph must have n >= 1");
  for (auto& e : hyperedges) {
    if (e.empty()) throw Error(Errc::bad_argument, "empty hyperedge");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw Error(Errc::bad_argument, "repeated vertex in hyperedge");
    // vertices are tensor leg labels; 0 appears for tensors with a bulk leg
    if (e.front() < 0 || e.back() > n)
      throw Error(Errc::bad_argument, "hyperedge vertex out of range");
  }
}

namespace {

void bron_kerbosch(const std::vector<std::set<int>>& adj, std::set<int>& R, std::set<int> P,
                   std::set<int> X, std::vector<std::vector<int>>& out) {
  if (P.empty() && X.empty()) {
    out.emplace_back(R.begin(), R.end());
    return;
  }
  // pivot: vertex of P u X with the most neighbours in P
  int pivot = -1;
  size_t best = 0;
  for (const auto& S : {P, X})
    for (int v : S) {
      size_t cnt = 0;
      for (int w : P)
        if (adj[static_cast<size_t>(v)].count(w)) ++cnt;
      if (pivot < 0 || cnt > best) {
        pivot = v;
        best = cnt;
      }
    }
  std::vector<int> candidates;
  for (int v : P)
    if (!adj[static_cast<size_t>(pivot)].count(v)) candidates.push_back(v);
  for (int v : candidates) {
    std::set<int> P2, X2;
    for (int w : P)
      if (adj[static_cast<size_t>(v)].count(w)) P2.insert(w);
    for (int w : X)
      if (adj[static_cast<size_t>(v)].count(w)) X2.insert(w);
    R.insert(v);
    bron_kerbosch(adj, R, P2, X2, out);
    R.erase(v);
    P.erase(v);
    X.insert(v);
  }
}

// all subsets of `base` of size k, ascending
void k_subsets(const std::vector<int>& base, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> pick;
  std::function<void(size_t)> go = [&](size_t start) {
    if (static_cast<int>(pick.size()) == k) {
      out.push_back(pick);
      return;
    }
    for (size_t i = start; i < base.size(); ++i) {
      pick.push_back(base[i]);
      go(i + 1);
      pick.pop_back();
    }
  };
  go(0);
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

CheckReport run_checks(const DenseTensor& t, std::vector<std::vector<int>> subsets, double tol) {
  // larger subsets first so that passing supersets shadow their subsets
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());

  CheckReport rep;
  rep.tol = tol;
  rep.pass = true;
  std::vector<std::vector<int>> passed;
  for (const auto& s : subsets) {
    SubsetCheck chk;
    chk.subset = s;
    bool implied = false;
    for (const auto& p : passed)
      if (is_subset(s, p)) {
        implied = true;
        break;
      }
    if (implied) {
      chk.implied = true;
      chk.proportional = true;
    } else {
      DensityMatrix dm = reduce(t, Bipartition{s});
      ProportionalityReport pr = proportional_to_identity(dm.rho, tol);
      chk.proportional = pr.proportional;
      chk.constant = pr.constant.real();
      chk.max_deviation = pr.max_deviation;
      if (pr.proportional)
        passed.push_back(s);
      else
        rep.pass = false;
    }
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const ConstraintGraph& g) {
  g.validate();
  std::vector<std::set<int>> adj(static_cast<size_t>(g.n) + 1);
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<size_t>(u)].insert(v);
    adj[static_cast<size_t>(v)].insert(u);
  }
  std::set<int> R, P, X;
  for (int v = 1; v <= g.n; ++v) P.insert(v);
  std::vector<std::vector<int>> out;
  bron_kerbosch(adj, R, P, X, out);
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

CheckReport check_graph_constrained(const DenseTensor& t, const ConstraintGraph& g, double tol) {
  if (g.n != t.order())
    throw Error(Errc::dimension_mismatch, "graph order must match tensor order");
  const int m_max = g.n / 2;
  std::vector<std::vector<int>> subsets;
  for (const auto& mc : maximal_cliques(g)) {
    if (static_cast<int>(mc.size()) <= m_max) {
      subsets.push_back(mc);
      continue;
    }
    // only the size-m_max subsets need direct checks; smaller ones are
    // implied by whichever of them pass and re-checked otherwise
    for (int k = m_max; k >= 1; --k) {
      std::vector<std::vector<int>> subs;
      k_subsets(mc, k, subs);
      subsets.insert(subsets.end(), subs.begin(), subs.end());
    }
  }
  // plus every smaller clique contained in the kept maximal cliques
  std::vector<std::vector<int>> all = subsets;
  for (const auto& s : subsets)
    for (int k = static_cast<int>(s.size()) - 1; k >= 1; --k) {
      std::vector<std::vector<int>> subs;
      k_subsets(s, k, subs);
      all.insert(all.end(), subs.begin(), subs.end());
    }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return run_checks(t, std::move(all), tol);
}

CheckReport check_hypergraph_constrained(const DenseTensor& t, const ConstraintHypergraph& h,
                                         double tol) {
  if (h.n != t.order())
    throw Error(Errc::dimension_mismatch, "hypergraph order must match tensor order");
  const int m_max = h.n / 2;
  std::vector<std::vector<int>> subsets;
  for (const auto& e : h.hyperedges)
    if (static_cast<int>(e.size()) <= m_max) subsets.push_back(e);
  return run_checks(t, std::move(subsets), tol);
}

ConstraintHypergraph faithful_hypergraph(const DenseTensor& t, double tol) {
  const int n = t.order();
  if (n > 12) throw Error(Errc::unsupported, "faithfulness search is limited to order <= 12");
  ConstraintHypergraph h;
  h.n = n;
  const int m_max = n / 2;
  std::vector<int> all;
  for (int i = 0; i < n; ++i) all.push_back(i + t.label_base());
  for (int k = 1; k <= m_max; ++k) {
    std::vector<std::vector<int>> subs;
    k_subsets(all, k, subs);
    for (const auto& s : subs) {
      DensityMatrix dm = reduce(t, Bipartition{s});
      ProportionalityReport pr = proportional_to_identity(dm.rho, tol);
      if (pr.proportional) h.hyperedges.push_back(s);
    }
  }
  return h;
}

ConstraintGraph compose_contraction(const ConstraintGraph& g1, const ConstraintGraph& g2,
                                    const std::vector<int>& clique1,
                                    const std::vector<int>& clique2) {
  g1.validate();
  g2.validate();
  if (clique1.size() != clique2.size() || clique1.empty())
    throw Error(Errc::bad_argument, "contracted cliques must have equal nonzero size");
  auto check_clique = [](const ConstraintGraph& g, const std::vector<int>& c) {
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = i + 1; j < c.size(); ++j)
        if (!g.adjacent(c[i], c[j]))
          throw Error(Errc::bad_argument, "contracted vertex set is not a clique");
  };
  check_clique(g1, clique1);
  check_clique(g2, clique2);

  auto relabel = [](int n, const std::vector<int>& removed, int offset) {
    std::map<int, int> m;
    int next = offset + 1;
    for (int v = 1; v <= n; ++v)
      if (std::find(removed.begin(), removed.end(), v) == removed.end()) m[v] = next++;
    return m;
  };
  std::map<int, int> m1 = relabel(g1.n, clique1, 0);
  std::map<int, int> m2 = relabel(g2.n, clique2, static_cast<int>(m1.size()));

  ConstraintGraph out;
  out.n = static_cast<int>(m1.size() + m2.size());
  auto copy_edges = [&](const ConstraintGraph& g, const std::map<int, int>& m) {
    for (const auto& [u, v] : g.edges)
      if (m.count(u) && m.count(v)) out.edges.emplace_back(m.at(u), m.at(v));
  };
  copy_edges(g1, m1);
  copy_edges(g2, m2);
  return out;
}

ConstraintHypergraph compose_contraction(const ConstraintHypergraph& h1,
                                         const ConstraintHypergraph& h2,
                                         const std::vector<int>& edge1,
                                         const std::vector<int>& edge2) {
  if (edge1.size() != edge2.size() || edge1.empty())
    throw Error(Errc::bad_argument, "contracted hyperedges must have equal nonzero size");
  std::vector<int> e1 = edge1, e2 = edge2;
  std::sort(e1.begin(), e1.end());
  std::sort(e2.begin(), e2.end());
  auto contains_edge = [](const ConstraintHypergraph& h, const std::vector<int>& e) {
    return std::find(h.hyperedges.begin(), h.hyperedges.end(), e) != h.hyperedges.end();
  };
  if (!contains_edge(h1, e1) || !contains_edge(h2, e2))
    throw Error(Errc::bad_argument, "contracted set must be a hyperedge");

  auto relabel = [](int n, const std::vector<int>& removed, int offset) {
    std::map<int, int> m;
    int next = offset + 1;
    for (int v = 1; v <= n; ++v)
      if (!std::binary_search(removed.begin(), removed.end(), v)) m[v] = next++;
    return m;
  };
  std::map<int, int> m1 = relabel(h1.n, e1, 0);
  std::map<int, int> m2 = relabel(h2.n, e2, static_cast<int>(m1.size()));

  ConstraintHypergraph out;
  out.n = static_cast<int>(m1.size() + m2.size());
  auto survives = [](const std::vector<int>& e, const std::vector<int>& removed) {
    for (int v : e)
      if (std::binary_search(removed.begin(), removed.end(), v)) return false;
    return true;
  };
  auto map_edge = [](const std::vector<int>& e, const std::map<int, int>& m,
                     const std::vector<int>& removed) {
    std::vector<int> out_e;
    for (int v : e)
      if (!std::binary_search(removed.begin(), removed.end(), v)) out_e.push_back(m.at(v));
    return out_e;
  };
  for (const auto& e : h1.hyperedges)
    if (survives(e, e1)) out.hyperedges.push_back(map_edge(e, m1, e1));
  for (const auto& e : h2.hyperedges)
    if (survives(e, e2)) out.hyperedges.push_back(map_edge(e, m2, e2));
  // super-edge rule: e1' >= e1 and e2' >= e2 join their surviving vertices
  for (const auto& ea : h1.hyperedges) {
    if (!is_subset(e1, ea)) continue;
    for (const auto& eb : h2.hyperedges) {
      if (!is_subset(e2, eb)) continue;
      std::vector<int> joined = map_edge(ea, m1, e1);
      std::vector<int> part2 = map_edge(eb, m2, e2);
      joined.insert(joined.end(), part2.begin(), part2.end());
      std::sort(joined.begin(), joined.end());
      if (!joined.empty()) out.hyperedges.push_back(std::move(joined));
    }
  }
  std::sort(out.hyperedges.begin(), out.hyperedges.end());
  out.hyperedges.erase(std::unique(out.hyperedges.begin(), out.hyperedges.end()),
                       out.hyperedges.end());
  return out;
}

std::string CheckReport::to_json() const {
  nlohmann::json j;
  j["pass"] = pass;
  j["tol"] = tol;
  nlohmann::json checks_j = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json cj;
    cj["subset"] = c.subset;
    cj["proportional"] = c.proportional;
    cj["implied"] = c.implied;
    if (!c.implied) {
      cj["constant"] = c.constant;
      cj["max_deviation"] = c.max_deviation;
    }
    checks_j.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks_j);
  return j.dump();
}

}  // namespace grt
