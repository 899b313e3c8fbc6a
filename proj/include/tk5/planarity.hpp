#pragma once

// Planarity testing and disc embeddings with a prescribed boundary order.
// Embeddings come from Boost's Boyer-Myrvold implementation; every result is
// re-checked here by face tracing or Kuratowski structure before it is used.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include "tk5/graph.hpp"
#include "tk5/traversal.hpp"

namespace tk5 {

/// rotation[v] lists the neighbors of v in cyclic order around v.
using Rotation = std::vector<std::vector<Vertex>>;

struct PlanarityResult {
  bool planar = false;
  Rotation rotation;              // when planar
  std::vector<Edge> kuratowski;   // when nonplanar: edges of a TK5 or TK3,3
};

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;

inline BoostGraph to_boost(const Graph& g) {
  BoostGraph bg(static_cast<std::size_t>(g.order()));
  for (auto [u, v] : g.edges()) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
  int idx = 0;
  auto emap = boost::get(boost::edge_index, bg);
  for (auto [ei, ee] = boost::edges(bg); ei != ee; ++ei) boost::put(emap, *ei, idx++);
  return bg;
}

}  // namespace detail

/// Number of faces of a rotation system, or nothing if `rot` does not list
/// each vertex's neighbors exactly once.
inline std::optional<int> count_faces(const Graph& g, const Rotation& rot) {
  const auto n = static_cast<std::size_t>(g.order());
  if (rot.size() != n) return std::nullopt;
  std::vector<std::map<Vertex, std::size_t>> pos(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Vertex> sorted = rot[v];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != g.neighbors(static_cast<Vertex>(v))) return std::nullopt;
    for (std::size_t i = 0; i < rot[v].size(); ++i) pos[v][rot[v][i]] = i;
  }
  std::map<std::pair<Vertex, Vertex>, char> seen;
  int faces = 0;
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (seen.count({u, v})) continue;
      ++faces;
      Vertex a = u, b = v;
      while (!seen.count({a, b})) {
        seen[{a, b}] = 1;
        const auto& rb = rot[static_cast<std::size_t>(b)];
        std::size_t i = pos[static_cast<std::size_t>(b)][a];
        Vertex c = rb[(i + 1) % rb.size()];
        a = b;
        b = c;
      }
    }
  }
  return faces;
}

/// Genus-0 check: per component, V - E + F = 2 (isolated vertices count as
/// one face each).
inline bool is_planar_rotation(const Graph& g, const Rotation& rot) {
  auto faces = count_faces(g, rot);
  if (!faces) return false;
  Components c = components(g);
  std::vector<int> nv(static_cast<std::size_t>(c.count), 0), ne(static_cast<std::size_t>(c.count), 0);
  for (Vertex v = 0; v < g.order(); ++v) ++nv[static_cast<std::size_t>(c.id[static_cast<std::size_t>(v)])];
  for (auto [u, v] : g.edges()) ++ne[static_cast<std::size_t>(c.id[static_cast<std::size_t>(u)])];
  // Sum over components of (2 - V + E) faces, with edgeless components
  // contributing none from tracing.
  int expected = 0;
  for (int i = 0; i < c.count; ++i)
    if (ne[static_cast<std::size_t>(i)] > 0) expected += 2 - nv[static_cast<std::size_t>(i)] + ne[static_cast<std::size_t>(i)];
  return *faces == expected;
}

/// True iff `edges` form a subdivision of K5 or K3,3 inside g.
inline bool is_kuratowski_subgraph(const Graph& g, const std::vector<Edge>& edges) {
  for (auto [u, v] : edges)
    if (!g.adjacent(u, v)) return false;
  Graph h = build_graph(g.order(), edges);
  if (h.size() != edges.size()) return false;
  std::vector<Vertex> branch;
  for (Vertex v = 0; v < h.order(); ++v) {
    int d = h.degree(v);
    if (d == 0 || d == 2) continue;
    if (d != 3 && d != 4) return false;
    branch.push_back(v);
  }
  int deg = branch.empty() ? 0 : h.degree(branch.front());
  for (Vertex b : branch)
    if (h.degree(b) != deg) return false;
  if (!((deg == 4 && branch.size() == 5) || (deg == 3 && branch.size() == 6))) return false;
  // Follow every branch-to-branch thread.
  std::map<Edge, int> links;
  std::size_t covered = 0;
  for (Vertex b : branch) {
    for (Vertex first : h.neighbors(b)) {
      Vertex prev = b, cur = first;
      std::size_t len = 1;
      while (h.degree(cur) == 2) {
        const auto& nb = h.neighbors(cur);
        Vertex next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
        ++len;
        if (len > edges.size()) return false;
      }
      if (cur == b) return false;
      ++links[make_edge(b, cur)];
      covered += len;
    }
  }
  if (covered != 2 * edges.size()) return false;  // stray cycles of degree-2 vertices
  for (auto& [e, k] : links)
    if (k != 2) return false;  // each thread is seen from both ends; parallel threads fail
  if (deg == 4) return links.size() == 10;
  // K3,3: the branch graph must be bipartite with sides of three.
  if (links.size() != 9) return false;
  std::map<Vertex, int> side;
  side[branch[0]] = 0;
  for (int round = 0; round < 6; ++round)
    for (auto& [e, k] : links) {
      if (side.count(e.first) && !side.count(e.second)) side[e.second] = 1 - side[e.first];
      if (side.count(e.second) && !side.count(e.first)) side[e.first] = 1 - side[e.second];
    }
  if (side.size() != 6) return false;
  int ones = 0;
  for (auto& [v, s] : side) ones += s;
  if (ones != 3) return false;
  for (auto& [e, k] : links)
    if (side[e.first] == side[e.second]) return false;
  return true;
}

inline PlanarityResult test_planarity(const Graph& g) {
  using namespace boost;
  detail::BoostGraph bg = detail::to_boost(g);
  using EdgeD = graph_traits<detail::BoostGraph>::edge_descriptor;
  std::vector<std::vector<EdgeD>> emb(static_cast<std::size_t>(g.order()));
  PlanarityResult r;
  if (boyer_myrvold_planarity_test(boyer_myrvold_params::graph = bg,
                                   boyer_myrvold_params::embedding =
                                       make_iterator_property_map(emb.begin(), get(vertex_index, bg)))) {
    r.planar = true;
    r.rotation.resize(emb.size());
    for (std::size_t v = 0; v < emb.size(); ++v)
      for (const EdgeD& e : emb[v]) {
        auto s = static_cast<Vertex>(source(e, bg));
        auto t = static_cast<Vertex>(target(e, bg));
        r.rotation[v].push_back(s == static_cast<Vertex>(v) ? t : s);
      }
    if (!is_planar_rotation(g, r.rotation)) throw std::logic_error("test_planarity: embedding failed validation");
    return r;
  }
  std::vector<EdgeD> kedges;
  boyer_myrvold_planarity_test(boyer_myrvold_params::graph = bg,
                               boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kedges));
  for (const EdgeD& e : kedges)
    r.kuratowski.push_back(make_edge(static_cast<Vertex>(source(e, bg)), static_cast<Vertex>(target(e, bg))));
  std::sort(r.kuratowski.begin(), r.kuratowski.end());
  r.kuratowski.erase(std::unique(r.kuratowski.begin(), r.kuratowski.end()), r.kuratowski.end());
  if (!is_kuratowski_subgraph(g, r.kuratowski)) {
    // Boost occasionally returns extra edges; an edge-minimal nonplanar
    // subgraph is always a Kuratowski subdivision.
    std::vector<Edge> keep = r.kuratowski;
    for (std::size_t i = keep.size(); i-- > 0;) {
      std::vector<Edge> trial = keep;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      detail::BoostGraph tg = detail::to_boost(build_graph(g.order(), trial));
      if (!boyer_myrvold_planarity_test(tg)) keep = std::move(trial);
    }
    r.kuratowski = std::move(keep);
  }
  if (!is_kuratowski_subgraph(g, r.kuratowski))
    throw std::logic_error("test_planarity: Kuratowski subgraph failed validation");
  return r;
}

inline bool is_planar(const Graph& g) {
  if (g.order() >= 3 && g.size() > static_cast<std::size_t>(3 * g.order() - 6)) return false;
  return test_planarity(g).planar;
}

// ---------------------------------------------------------------------------
// Disc embeddings

/// Embedding of g in a closed disc with outer_face on the boundary in that
/// cyclic order. rotation has g.order() + 1 entries: the extra vertex
/// g.order() is a virtual apex outside the disc joined to each boundary
/// vertex, and rotation[g.order()] == outer_face.
struct DiscEmbedding {
  Rotation rotation;
  std::vector<Vertex> outer_face;
};

namespace detail {

inline Graph with_apex(const Graph& g, const std::vector<Vertex>& boundary) {
  std::vector<Edge> es = g.edges();
  for (Vertex b : boundary) es.emplace_back(b, g.order());
  return build_graph(g.order() + 1, es);
}

inline bool same_cycle(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  auto it = std::find(b.begin(), b.end(), a[0]);
  if (it == b.end()) return false;
  auto off = static_cast<std::size_t>(it - b.begin());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[(off + i) % b.size()]) return false;
  return true;
}

}  // namespace detail

/// Sequence and reversal are treated as the same boundary.
inline bool verify_disc_embedding(const Graph& g, const std::vector<Vertex>& boundary, const DiscEmbedding& e) {
  if (!all_distinct(boundary)) return false;
  for (Vertex b : boundary)
    if (!g.contains(b)) return false;
  if (e.rotation.size() != static_cast<std::size_t>(g.order()) + 1) return false;
  const auto& apex = e.rotation.back();
  std::vector<Vertex> rev(boundary.rbegin(), boundary.rend());
  if (!detail::same_cycle(boundary, apex) && !detail::same_cycle(rev, apex)) return false;
  if (!detail::same_cycle(e.outer_face, apex)) return false;
  return is_planar_rotation(detail::with_apex(g, boundary), e.rotation);
}

inline std::optional<DiscEmbedding> test_disc_embeddable(const Graph& g, const std::vector<Vertex>& boundary) {
  if (!all_distinct(boundary)) throw GraphError("test_disc_embeddable: boundary repeats a vertex");
  for (Vertex b : boundary)
    if (!g.contains(b)) throw GraphError("test_disc_embeddable: boundary vertex out of range");
  const int n = g.order();
  const int k = static_cast<int>(boundary.size());
  const Vertex apex = n;
  std::vector<Edge> es = g.edges();
  for (Vertex b : boundary) es.emplace_back(b, apex);
  int total = n + 1;
  if (k >= 3) {
    // Subdivided rim b_i - c_i - b_{i+1}; the rim wheel is a subdivision of a
    // 3-connected graph, which pins the cyclic order around the apex.
    for (int i = 0; i < k; ++i) {
      Vertex c = n + 1 + i;
      es.emplace_back(boundary[static_cast<std::size_t>(i)], c);
      es.emplace_back(c, boundary[static_cast<std::size_t>((i + 1) % k)]);
    }
    total += k;
  }
  Graph aug = build_graph(total, es);
  PlanarityResult pr = test_planarity(aug);
  if (!pr.planar) return std::nullopt;
  DiscEmbedding d;
  d.rotation.assign(static_cast<std::size_t>(n + 1), {});
  for (Vertex v = 0; v <= n; ++v)
    for (Vertex w : pr.rotation[static_cast<std::size_t>(v)])
      if (w <= n) d.rotation[static_cast<std::size_t>(v)].push_back(w);
  const auto& around = d.rotation.back();
  if (!detail::same_cycle(boundary, around)) {
    for (auto& r : d.rotation) std::reverse(r.begin(), r.end());
  }
  if (!detail::same_cycle(boundary, d.rotation.back())) throw std::logic_error("test_disc_embeddable: boundary order lost");
  d.rotation.back() = boundary;
  d.outer_face = boundary;
  if (!verify_disc_embedding(g, boundary, d)) throw std::logic_error("test_disc_embeddable: result failed validation");
  return d;
}

}  // namespace tk5
