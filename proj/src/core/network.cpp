#include "core/network.hpp"

#include <algorithm>
#include <map>

namespace grt {

void NetworkSpec::add_bond(int t1, int l1, int t2, int l2) {
  auto slot = [this](int t, int l) -> std::pair<int, int>& {
    if (t < 0 || t >= tile_count() || l < 1 || l > 6)
      throw Error(Errc::bad_argument, "add_bond: tile or leg out of range");
    return bonds[static_cast<size_t>(t)][static_cast<size_t>(l)];
  };
  std::pair<int, int>& s1 = slot(t1, l1);
  std::pair<int, int>& s2 = slot(t2, l2);
  if (s1.first >= 0 || s2.first >= 0)
    throw Error(Errc::bad_argument, "add_bond: leg already bonded");
  s1 = {t2, l2};
  s2 = {t1, l1};
}

void NetworkSpec::finalize() {
  leg_boundary.assign(tiles.size(), {-1, -1, -1, -1, -1, -1, -1});
  for (size_t b = 0; b < boundary.size(); ++b) {
    auto [t, l] = boundary[b];
    if (t < 0 || t >= tile_count() || l < 1 || l > 6)
      throw Error(Errc::bad_argument, "boundary entry out of range");
    if (!is_open(t, l))
      throw Error(Errc::bad_argument, "boundary leg is bonded");
    int& slot = leg_boundary[static_cast<size_t>(t)][static_cast<size_t>(l)];
    if (slot >= 0) throw Error(Errc::bad_argument, "duplicate boundary entry");
    slot = static_cast<int>(b);
  }
  for (int t = 0; t < tile_count(); ++t) {
    for (int l = 1; l <= 6; ++l) {
      auto [ot, ol] = bonds[static_cast<size_t>(t)][static_cast<size_t>(l)];
      if (ot < 0) {
        if (leg_boundary[static_cast<size_t>(t)][static_cast<size_t>(l)] < 0)
          throw Error(Errc::bad_argument, "open leg missing from boundary");
        continue;
      }
      if (bonds[static_cast<size_t>(ot)][static_cast<size_t>(ol)] !=
          std::make_pair(t, l))
        throw Error(Errc::bad_argument, "bond table is not symmetric");
    }
  }
}

NetworkSpec depth1_network() {
  NetworkSpec net;
  net.name = "depth1-6-4";
  // 0 = centre, 1..6 = edge ring, 7..12 = vertex ring
  net.tiles.push_back({"C", 2.0});
  for (int i = 1; i <= 6; ++i) net.tiles.push_back({"A" + std::to_string(i), 4.0});
  for (int i = 1; i <= 6; ++i) net.tiles.push_back({"B" + std::to_string(i), 8.0});
  net.bonds.assign(net.tiles.size(),
                   {std::pair<int, int>{-1, -1}, {-1, -1}, {-1, -1}, {-1, -1},
                    {-1, -1}, {-1, -1}, {-1, -1}});
  auto a = [](int i) { return i; };       // A_i, i in 1..6
  auto bb = [](int i) { return 6 + i; };  // B_i
  for (int i = 1; i <= 6; ++i) {
    net.add_bond(0, i, a(i), 1);
    net.add_bond(a(i), 2, bb(i % 6 + 1), 1);
    net.add_bond(a(i), 6, bb(i), 2);
  }
  for (int i = 1; i <= 6; ++i) {
    for (int l : {3, 4, 5}) net.boundary.emplace_back(a(i), l);
    for (int l : {3, 4, 5, 6}) net.boundary.emplace_back(bb(i % 6 + 1), l);
  }
  net.finalize();
  return net;
}

NetworkSpec depth2_network() {
  NetworkSpec net;
  net.name = "depth2-6-4";
  net.tiles.push_back({"C", 2.0});
  for (int i = 1; i <= 6; ++i) net.tiles.push_back({"A" + std::to_string(i), 4.0});
  for (int i = 1; i <= 6; ++i) net.tiles.push_back({"B" + std::to_string(i), 8.0});
  auto a = [](int i) { return i; };
  auto bb = [](int i) { return 6 + i; };

  // ring walk: the open legs of depth 1 in circular order, with their parents
  std::vector<std::pair<int, int>> walk;
  for (int i = 1; i <= 6; ++i) {
    for (int l : {6, 5, 4, 3}) walk.emplace_back(bb(i), l);
    for (int l : {5, 4, 3}) walk.emplace_back(a(i), l);
  }
  const int n_walk = static_cast<int>(walk.size());  // 42

  std::vector<int> edge_tile(static_cast<size_t>(n_walk));
  for (int j = 0; j < n_walk; ++j) {
    edge_tile[static_cast<size_t>(j)] = net.tile_count();
    net.tiles.push_back({"E" + std::to_string(j), 1.0});
  }
  std::vector<int> vertex_tiles;

  net.bonds.assign(net.tiles.size(),
                   {std::pair<int, int>{-1, -1}, {-1, -1}, {-1, -1}, {-1, -1},
                    {-1, -1}, {-1, -1}, {-1, -1}});
  auto ensure_rows = [&net]() {
    while (net.bonds.size() < net.tiles.size())
      net.bonds.push_back({std::pair<int, int>{-1, -1}, {-1, -1}, {-1, -1},
                           {-1, -1}, {-1, -1}, {-1, -1}, {-1, -1}});
  };

  for (int i = 1; i <= 6; ++i) {
    net.add_bond(0, i, a(i), 1);
    net.add_bond(a(i), 2, bb(i % 6 + 1), 1);
    net.add_bond(a(i), 6, bb(i), 2);
  }
  for (int j = 0; j < n_walk; ++j)
    net.add_bond(edge_tile[static_cast<size_t>(j)], 1, walk[static_cast<size_t>(j)].first,
                 walk[static_cast<size_t>(j)].second);

  for (int j = 0; j < n_walk; ++j) {
    int jn = (j + 1) % n_walk;
    int e1 = edge_tile[static_cast<size_t>(j)];
    int e2 = edge_tile[static_cast<size_t>(jn)];
    if (walk[static_cast<size_t>(j)].first == walk[static_cast<size_t>(jn)].first) {
      // consecutive open legs of the same depth-1 tile close around a new
      // vertex tile
      int v = net.tile_count();
      net.tiles.push_back({"V" + std::to_string(vertex_tiles.size()), 1.0});
      vertex_tiles.push_back(v);
      ensure_rows();
      net.add_bond(e1, 2, v, 1);
      net.add_bond(v, 2, e2, 6);
    } else {
      // corner between two depth-1 parents: the edge tiles meet directly
      net.add_bond(e1, 2, e2, 6);
    }
  }

  for (int j = 0; j < n_walk; ++j)
    for (int l : {3, 4, 5}) net.boundary.emplace_back(edge_tile[static_cast<size_t>(j)], l);
  for (int v : vertex_tiles)
    for (int l : {3, 4, 5, 6}) net.boundary.emplace_back(v, l);

  net.finalize();
  return net;
}

bool legs_nonadjacent(int a, int b) {
  int d = ((a - b) % 6 + 6) % 6;
  d = std::min(d, 6 - d);
  return d >= 2;
}

namespace {

struct PathSearch {
  const NetworkSpec& net;
  std::vector<char> visited;
  std::vector<PathStep> steps;
  // hits[b_dst] collects finished paths from the fixed source leg
  std::vector<std::vector<PathSpec>>* hits = nullptr;

  explicit PathSearch(const NetworkSpec& n)
      : net(n), visited(static_cast<size_t>(n.tile_count()), 0) {}

  void walk(int tile, int in_leg) {
    visited[static_cast<size_t>(tile)] = 1;
    for (int out = 1; out <= 6; ++out) {
      if (!legs_nonadjacent(in_leg, out)) continue;
      steps.push_back({tile, in_leg, out});
      int b = net.leg_boundary[static_cast<size_t>(tile)][static_cast<size_t>(out)];
      if (b >= 0) {
        (*hits)[static_cast<size_t>(b)].push_back(PathSpec{steps});
      } else {
        auto [nt, nl] = net.bonds[static_cast<size_t>(tile)][static_cast<size_t>(out)];
        if (!visited[static_cast<size_t>(nt)]) walk(nt, nl);
      }
      steps.pop_back();
    }
    visited[static_cast<size_t>(tile)] = 0;
  }
};

std::vector<std::vector<PathSpec>> paths_from(const NetworkSpec& net, int b_src) {
  if (b_src < 0 || b_src >= net.boundary_count())
    throw Error(Errc::bad_argument, "boundary index out of range");
  std::vector<std::vector<PathSpec>> hits(static_cast<size_t>(net.boundary_count()));
  PathSearch search(net);
  search.hits = &hits;
  auto [tile, leg] = net.boundary[static_cast<size_t>(b_src)];
  search.walk(tile, leg);
  hits[static_cast<size_t>(b_src)].clear();  // no loops back to the source
  return hits;
}

}  // namespace

std::vector<PathSpec> enumerate_paths(const NetworkSpec& net, int b_src, int b_dst) {
  if (b_dst < 0 || b_dst >= net.boundary_count())
    throw Error(Errc::bad_argument, "boundary index out of range");
  if (b_src == b_dst)
    throw Error(Errc::bad_argument, "two distinct boundary legs required");
  return paths_from(net, b_src)[static_cast<size_t>(b_dst)];
}

namespace {

struct TileMask {
  uint64_t lo = 0, hi = 0;
  void set(int t) {
    if (t < 64)
      lo |= 1ull << t;
    else
      hi |= 1ull << (t - 64);
  }
  bool intersects(const TileMask& o) const { return (lo & o.lo) || (hi & o.hi); }
  TileMask operator&(const TileMask& o) const { return {lo & o.lo, hi & o.hi}; }
  bool any() const { return lo || hi; }
};

}  // namespace

NetworkAudit audit_paths(const NetworkSpec& net) {
  if (net.tile_count() > 128)
    throw Error(Errc::unsupported, "audit_paths: too many tiles");
  const int nb = net.boundary_count();
  NetworkAudit audit;
  audit.total_pairs = static_cast<long>(nb) * (nb - 1) / 2;

  std::vector<std::vector<char>> connected(static_cast<size_t>(nb),
                                           std::vector<char>(static_cast<size_t>(nb), 0));
  std::vector<std::vector<TileMask>> mask(static_cast<size_t>(nb),
                                          std::vector<TileMask>(static_cast<size_t>(nb)));

  for (int s = 0; s < nb; ++s) {
    auto hits = paths_from(net, s);
    for (int d = 0; d < nb; ++d) {
      const auto& paths = hits[static_cast<size_t>(d)];
      if (paths.empty()) continue;
      audit.max_paths_per_pair =
          std::max(audit.max_paths_per_pair, static_cast<int>(paths.size()));
      if (d > s) {
        ++audit.connected_pairs;
        connected[static_cast<size_t>(s)][static_cast<size_t>(d)] = 1;
        TileMask m;
        for (const PathStep& st : paths.front().steps) m.set(st.tile);
        mask[static_cast<size_t>(s)][static_cast<size_t>(d)] = m;
      }
    }
  }

  for (int i = 0; i < nb; ++i) {
    for (int j = i + 1; j < nb; ++j) {
      if (!connected[static_cast<size_t>(i)][static_cast<size_t>(j)]) continue;
      const TileMask& mij = mask[static_cast<size_t>(i)][static_cast<size_t>(j)];
      for (int k = j + 1; k < nb; ++k) {
        if (!connected[static_cast<size_t>(i)][static_cast<size_t>(k)] ||
            !connected[static_cast<size_t>(j)][static_cast<size_t>(k)])
          continue;
        TileMask common = mij & mask[static_cast<size_t>(i)][static_cast<size_t>(k)] &
                          mask[static_cast<size_t>(j)][static_cast<size_t>(k)];
        if (common.any())
          ++audit.tripod_triples;
        else
          ++audit.triangle_triples;
      }
    }
  }
  return audit;
}

}  // namespace grt
