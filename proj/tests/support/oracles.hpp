#pragma once

// Brute-force reference implementations and graph generators for the test
// suites. Nothing here calls into the search code under test.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "tk5/graph.hpp"

namespace oracle {

using tk5::Edge;
using tk5::Graph;
using tk5::Vertex;

// ---------------------------------------------------------------------------
// Small helpers on bitmasks (n <= 32)

inline std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> m(static_cast<std::size_t>(g.order()), 0);
  for (auto [u, v] : g.edges()) {
    m[static_cast<std::size_t>(u)] |= 1u << v;
    m[static_cast<std::size_t>(v)] |= 1u << u;
  }
  return m;
}

/// Vertices reachable from s inside `allowed` (s itself must be allowed).
inline std::uint32_t reach(const std::vector<std::uint32_t>& adj, Vertex s, std::uint32_t allowed) {
  std::uint32_t seen = 1u << s, frontier = seen;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(__builtin_ctz(f))];
    next &= allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

inline std::uint32_t all_mask(int n) { return n >= 32 ? 0xffffffffu : ((1u << n) - 1); }

inline bool connected(const Graph& g) {
  if (g.order() == 0) return true;
  auto adj = adjacency_masks(g);
  return reach(adj, 0, all_mask(g.order())) == all_mask(g.order());
}

inline bool connected_without(const Graph& g, std::uint32_t removed) {
  auto adj = adjacency_masks(g);
  std::uint32_t alive = all_mask(g.order()) & ~removed;
  if (!alive) return true;
  return reach(adj, __builtin_ctz(alive), alive) == alive;
}

inline bool two_connected(const Graph& g) {
  if (g.order() < 3 || !connected(g)) return false;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!connected_without(g, 1u << v)) return false;
  return true;
}

/// Minimum |T| with g - T disconnected or a single vertex; n - 1 for cliques.
inline int vertex_connectivity(const Graph& g) {
  const int n = g.order();
  if (n <= 1) return 0;
  int best = n - 1;
  for (std::uint32_t t = 0; t < (1u << n); ++t) {
    int k = __builtin_popcount(t);
    if (k >= best) continue;
    if (n - k >= 2 && !connected_without(g, t)) best = k;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Enumeration of all graphs up to isomorphism

inline std::vector<Edge> pair_list(int n) {
  std::vector<Edge> ps;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) ps.emplace_back(u, v);
  return ps;
}

/// Canonical code: lexicographically least adjacency bit string over all
/// vertex permutations.
inline std::uint64_t canonical_code(const Graph& g) {
  const int n = g.order();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  auto ps = pair_list(n);
  std::uint64_t best = ~0ull;
  do {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (g.adjacent(perm[static_cast<std::size_t>(ps[i].first)], perm[static_cast<std::size_t>(ps[i].second)]))
        code |= 1ull << i;
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline Graph from_code(int n, std::uint64_t code) {
  auto ps = pair_list(n);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (code >> i & 1ull) es.push_back(ps[i]);
  return tk5::build_graph(n, es);
}

/// All graphs on exactly n vertices up to isomorphism (n <= 7), built by
/// adding one vertex with every neighborhood to each graph on n - 1.
inline std::vector<Graph> all_graphs(int n) {
  if (n == 0) return {tk5::build_graph(0, {})};
  std::set<std::uint64_t> codes;
  for (const Graph& h : all_graphs(n - 1)) {
    for (std::uint32_t nb = 0; nb < (1u << (n - 1)); ++nb) {
      std::vector<Edge> es = h.edges();
      for (Vertex v = 0; v < n - 1; ++v)
        if (nb >> v & 1u) es.emplace_back(v, n - 1);
      codes.insert(canonical_code(tk5::build_graph(n, es)));
    }
  }
  std::vector<Graph> out;
  for (auto c : codes) out.push_back(from_code(n, c));
  return out;
}

// ---------------------------------------------------------------------------
// Paths and cycles

/// Calls visit(mask, path) on every simple path from s whose vertices lie in
/// `allowed` (s included); visit returns false to prune extension.
inline void simple_paths_from(const std::vector<std::uint32_t>& adj, Vertex s, std::uint32_t allowed,
                              const std::function<bool(std::uint32_t, const std::vector<Vertex>&)>& visit) {
  std::vector<Vertex> path{s};
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t mask) {
    if (!visit(mask, path)) return;
    Vertex tip = path.back();
    for (std::uint32_t f = adj[static_cast<std::size_t>(tip)] & allowed & ~mask; f; f &= f - 1) {
      Vertex w = __builtin_ctz(f);
      path.push_back(w);
      rec(mask | (1u << w));
      path.pop_back();
    }
  };
  rec(1u << s);
}

inline bool two_disjoint_paths_exist(const Graph& g, Vertex s1, Vertex t1, Vertex s2, Vertex t2) {
  auto adj = adjacency_masks(g);
  std::uint32_t all = all_mask(g.order());
  bool found = false;
  simple_paths_from(adj, s1, all & ~(1u << s2) & ~(1u << t2), [&](std::uint32_t mask, const std::vector<Vertex>& p) {
    if (found) return false;
    if (p.back() != t1) return true;
    std::uint32_t rest = all & ~mask;
    if (reach(adj, s2, rest) >> t2 & 1u) found = true;
    return false;
  });
  return found;
}

inline bool cycle_through_exists(const Graph& g, Vertex a, Vertex b, Vertex c) {
  auto adj = adjacency_masks(g);
  std::uint32_t need = (1u << a) | (1u << b) | (1u << c);
  bool found = false;
  simple_paths_from(adj, a, all_mask(g.order()), [&](std::uint32_t mask, const std::vector<Vertex>& p) {
    if (found) return false;
    if (p.size() >= 3 && (mask & need) == need && (adj[static_cast<std::size_t>(p.back())] >> a & 1u)) found = true;
    return !found;
  });
  return found;
}

/// Whether n independent paths run from u to distinct vertices of a, each
/// meeting a only at its end.
inline bool fan_exists(const Graph& g, Vertex u, std::uint32_t a, int n) {
  auto adj = adjacency_masks(g);
  std::vector<std::uint32_t> paths;  // interior plus end
  simple_paths_from(adj, u, all_mask(g.order()), [&](std::uint32_t mask, const std::vector<Vertex>& p) {
    if (p.size() < 2) return true;
    Vertex tip = p.back();
    if (a >> tip & 1u) {
      paths.push_back(mask & ~(1u << u));
      return false;
    }
    return true;
  });
  std::function<bool(std::size_t, std::uint32_t, int)> pick = [&](std::size_t i, std::uint32_t used, int left) {
    if (left == 0) return true;
    for (std::size_t j = i; j < paths.size(); ++j)
      if (!(paths[j] & used) && pick(j + 1, used | paths[j], left - 1)) return true;
    return false;
  };
  return pick(0, 0, n);
}

// ---------------------------------------------------------------------------
// TK5 by exhaustive arc assignment

inline bool tk5_exists(const Graph& g, std::uint32_t forbidden_branch = 0) {
  const int n = g.order();
  if (n < 5) return false;
  auto adj = adjacency_masks(g);
  std::uint32_t all = all_mask(n);
  std::vector<int> idx(5);
  bool found = false;
  std::function<void(int, int)> choose = [&](int start, int depth) {
    if (found) return;
    if (depth == 5) {
      std::uint32_t bm = 0;
      for (int b : idx) bm |= 1u << b;
      if (bm & forbidden_branch) return;
      // interiors of all paths per pair
      std::vector<std::vector<std::uint32_t>> options;
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
          std::vector<std::uint32_t> opts;
          Vertex a = idx[static_cast<std::size_t>(i)], b = idx[static_cast<std::size_t>(j)];
          std::uint32_t allowed = (all & ~bm) | (1u << a) | (1u << b);
          simple_paths_from(adj, a, allowed, [&](std::uint32_t mask, const std::vector<Vertex>& p) {
            if (p.back() == b) {
              opts.push_back(mask & ~(1u << a) & ~(1u << b));
              return false;
            }
            return true;
          });
          if (opts.empty()) return;
          std::sort(opts.begin(), opts.end());
          opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
          options.push_back(std::move(opts));
        }
      std::function<bool(std::size_t, std::uint32_t)> assign = [&](std::size_t k, std::uint32_t used) {
        if (k == options.size()) return true;
        for (std::uint32_t o : options[k])
          if (!(o & used) && assign(k + 1, used | o)) return true;
        return false;
      };
      if (assign(0, 0)) found = true;
      return;
    }
    for (int v = start; v < n; ++v) {
      idx[static_cast<std::size_t>(depth)] = v;
      choose(v + 1, depth + 1);
    }
  };
  choose(0, 0);
  return found;
}

// ---------------------------------------------------------------------------
// Planarity by enumerating rotation systems (tiny graphs only)

inline bool planar_by_rotations(const Graph& g) {
  const int n = g.order();
  const auto m = static_cast<int>(g.size());
  if (n >= 3 && m > 3 * n - 6) return false;
  std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) rot[static_cast<std::size_t>(v)] = g.neighbors(v);
  // Components.
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int nc = 0;
  auto adj = adjacency_masks(g);
  for (Vertex v = 0; v < n; ++v) {
    if (comp[static_cast<std::size_t>(v)] >= 0) continue;
    std::uint32_t r = reach(adj, v, all_mask(n));
    for (std::uint32_t f = r; f; f &= f - 1) comp[static_cast<std::size_t>(__builtin_ctz(f))] = nc;
    ++nc;
  }
  int expected = 0;
  for (int c = 0; c < nc; ++c) {
    int vc = 0, ec = 0;
    for (Vertex v = 0; v < n; ++v)
      if (comp[static_cast<std::size_t>(v)] == c) {
        ++vc;
        ec += g.degree(v);
      }
    ec /= 2;
    if (ec > 0) expected += 2 - vc + ec;
  }
  auto faces = [&]() {
    std::set<std::pair<Vertex, Vertex>> seen;
    int f = 0;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : g.neighbors(u)) {
        if (seen.count({u, v})) continue;
        ++f;
        Vertex a = u, b = v;
        while (!seen.count({a, b})) {
          seen.insert({a, b});
          const auto& rb = rot[static_cast<std::size_t>(b)];
          auto it = std::find(rb.begin(), rb.end(), a);
          std::size_t i = static_cast<std::size_t>(it - rb.begin());
          Vertex c = rb[(i + 1) % rb.size()];
          a = b;
          b = c;
        }
      }
    return f;
  };
  // Permute all but the first neighbor of each vertex.
  std::function<bool(Vertex)> rec = [&](Vertex v) -> bool {
    if (v == n) return faces() == expected;
    auto& r = rot[static_cast<std::size_t>(v)];
    if (r.size() <= 2) return rec(v + 1);
    std::sort(r.begin() + 1, r.end());
    do {
      if (rec(v + 1)) return true;
    } while (std::next_permutation(r.begin() + 1, r.end()));
    return false;
  };
  return rec(0);
}

// ---------------------------------------------------------------------------
// Random graphs

inline Graph random_graph(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) es.emplace_back(u, v);
  return tk5::build_graph(n, es);
}

inline Graph random_two_connected(std::mt19937& rng, int n, double p) {
  for (;;) {
    Graph g = random_graph(rng, n, p);
    if (two_connected(g)) return g;
  }
}

/// Random planar graph: a random stacked triangulation with a fraction of
/// its edges deleted.
inline Graph random_planar(std::mt19937& rng, int n, double keep) {
  std::vector<Edge> es{{0, 1}, {1, 2}, {0, 2}};
  std::vector<std::array<Vertex, 3>> faces{{0, 1, 2}, {0, 1, 2}};
  for (Vertex v = 3; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
    std::size_t i = pick(rng);
    auto f = faces[i];
    faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(i));
    for (Vertex w : f) es.emplace_back(w, v);
    faces.push_back({f[0], f[1], v});
    faces.push_back({f[1], f[2], v});
    faces.push_back({f[0], f[2], v});
  }
  std::bernoulli_distribution coin(keep);
  std::vector<Edge> kept;
  for (const Edge& e : es)
    if (coin(rng)) kept.push_back(e);
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (Edge& e : kept) e = tk5::make_edge(perm[static_cast<std::size_t>(e.first)], perm[static_cast<std::size_t>(e.second)]);
  return tk5::build_graph(n, kept);
}

inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  std::vector<Edge> es;
  for (auto [u, v] : g.edges()) es.push_back(tk5::make_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]));
  return tk5::build_graph(g.order(), es);
}

}  // namespace oracle
