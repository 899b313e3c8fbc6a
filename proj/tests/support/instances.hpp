#pragma once

// Instance builders shared by the nonsep, tuple and acceptance tests.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "tk5/gadget.hpp"
#include "tk5/nonsep_path.hpp"

namespace inst {

using namespace tk5;

/// Folded 5-cube on 4-bit words: adjacent iff the words differ in one bit
/// or in all four. 5-regular, triangle-free, nonplanar, 5-connected.
inline Graph clebsch() {
  std::vector<Edge> es;
  for (Vertex u = 0; u < 16; ++u)
    for (Vertex v = u + 1; v < 16; ++v) {
      int d = __builtin_popcount(static_cast<unsigned>(u ^ v));
      if (d == 1 || d == 4) es.emplace_back(u, v);
    }
  return build_graph(16, es);
}

struct Instance {
  Graph g;
  TheoremRoles roles;
};

/// Vertex relabeling keeping the roles attached.
inline Instance permuted(const Instance& in, const std::vector<Vertex>& perm) {
  Instance out{oracle::relabel(in.g, perm), in.roles};
  auto m = [&](Vertex v) { return perm[static_cast<std::size_t>(v)]; };
  out.roles.x1 = m(in.roles.x1);
  out.roles.x2 = m(in.roles.x2);
  out.roles.y1 = m(in.roles.y1);
  out.roles.y2 = m(in.roles.y2);
  for (auto& w : out.roles.w) w = m(w);
  return out;
}

inline std::vector<Vertex> random_perm(std::mt19937& rng, int n) {
  std::vector<Vertex> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// K_n minus the edge y1y2 with y1 = n-2, y2 = n-1, x1 = 0, x2 = 1.
inline Instance complete_minus_edge(int n) {
  Graph g = named::complete_minus_edge(n, n - 2, n - 1);
  return {g, TheoremRoles{0, 1, n - 2, n - 1, {2, 3, 4}}};
}

struct GadgetHost {
  Instance inst;
  Separation gluing;
  GadgetRoles gadget;
};

/// The gadget glued to the Clebsch graph along y2 = 0 and a = {3, 5, 9, 14},
/// an independent set outside N(0); b1..b4 are 16..19. G - y2 has no
/// K4-minus, so the gadget separation is the expected outcome.
inline GadgetHost gadget_host() {
  Graph c = clebsch();
  GadgetRoles r{0, {3, 5, 9, 14}, {16, 17, 18, 19}};
  std::vector<Edge> es = c.edges();
  for (const Edge& e : gadget_edges(r)) es.push_back(e);
  Graph g = build_graph(20, es);
  // K4-minus b1 b2 a2 y2, missing a2 y2; w = b3, b4 and a Clebsch neighbor of y2.
  TheoremRoles t{r.b[0], r.b[1], r.a[1], r.y2, {r.b[2], r.b[3], 1}};
  VertexSet side2{0, 3, 5, 9, 14, 16, 17, 18, 19};
  VertexSet side1;
  for (Vertex v = 0; v < 16; ++v) side1.push_back(v);
  return {{g, t}, make_separation(side1, side2), r};
}

/// Clebsch graph plus the edge x1x2 = 1-2: its two triangles through 1-2
/// (apex 0 and apex 3) form the K4-minus 1, 2, 3, 0 with y2 = 0, and G - y2
/// stays K4-minus free. Extra random edges inside G - y2 are added while
/// they keep G - y2 K4-minus free.
inline Instance clebsch_k4_minus(std::mt19937& rng, int extra = 0) {
  Graph g = add_edges(clebsch(), std::vector<Edge>{make_edge(1, 2)});
  TheoremRoles r{1, 2, 3, 0, {4, 8, 15}};
  std::uniform_int_distribution<Vertex> vd(1, 15);
  for (int tries = 0; extra > 0 && tries < 200; ++tries) {
    Vertex u = vd(rng), v = vd(rng);
    if (u == v || g.adjacent(u, v)) continue;
    Graph h = add_edges(g, std::vector<Edge>{make_edge(u, v)});
    if (find_k4_minus(h, {0})) continue;
    g = h;
    --extra;
  }
  return permuted({g, r}, random_perm(rng, 16));
}

/// Random 5-connected nonplanar graph on n vertices with roles on a random
/// induced K4-minus (missing pair y1y2) and three further neighbors of y2 as w.
inline std::optional<Instance> random_theorem_instance(std::mt19937& rng, int n, double p) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    Graph g = oracle::random_graph(rng, n, p);
    if (vertex_connectivity(g) < 5 || is_planar(g)) continue;
    std::vector<Instance> cands;
    for (auto [a, b] : g.edges()) {
      std::vector<Vertex> common;
      for (Vertex c : g.neighbors(a))
        if (c != b && g.adjacent(b, c)) common.push_back(c);
      for (std::size_t i = 0; i < common.size(); ++i)
        for (std::size_t j = 0; j < common.size(); ++j) {
          Vertex y1 = common[i], y2 = common[j];
          if (y1 == y2 || g.adjacent(y1, y2)) continue;
          std::vector<Vertex> ws;
          for (Vertex w : g.neighbors(y2))
            if (w != a && w != b) ws.push_back(w);
          if (ws.size() < 3) continue;
          std::shuffle(ws.begin(), ws.end(), rng);
          cands.push_back({g, TheoremRoles{a, b, y1, y2, {ws[0], ws[1], ws[2]}}});
        }
    }
    if (cands.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
    return cands[pick(rng)];
  }
  return std::nullopt;
}

/// A (4, {x1,x2,y1,y2})-connected instance of the rerouting loop: roles are
/// 0..3, x0 a shortest x1-x2 path avoiding y1, y2 and the edge x1x2, and b0
/// the y1-y2 chain left by x0.
struct RefineInstance {
  Graph g;
  Vertex x1 = 0, x2 = 1, y1 = 2, y2 = 3;
  PathSeq x0;
  ChainOfBlocks b0;
};

inline std::optional<RefineInstance> random_refine_instance(std::mt19937& rng, int n, double p) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    Graph g = oracle::random_graph(rng, n, p);
    if (!is_kA_connected(g, 4, {0, 1, 2, 3})) continue;
    VertexMask rm(static_cast<std::size_t>(n), 0);
    rm[2] = rm[3] = 1;
    auto x0 = shortest_path(g, 0, 1, rm, {make_edge(0, 1)});
    if (!x0) continue;
    auto b0 = chain_of_blocks(g, 2, 3, mask_of(static_cast<std::size_t>(n), x0->vertex_set()));
    if (!b0) continue;
    return RefineInstance{g, 0, 1, 2, 3, *x0, *b0};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Gadget oracles

// Whether some bijection sends the gadget onto side2 of sep (cut-cut edges
// dropped) with y2 and the a's on the cut.
bool gadget_iso_oracle(const Graph& g, const Separation& sep) {
  if (sep.side2.size() != 9 || sep.cut.size() != 5) return false;
  VertexSet inner = set_difference(sep.side2, sep.cut);
  std::vector<Edge> actual;
  for (auto [u, v] : g.edges())
    if (set_contains(sep.side2, u) && set_contains(sep.side2, v) && !(set_contains(sep.cut, u) && set_contains(sep.cut, v)))
      actual.push_back(make_edge(u, v));
  std::sort(actual.begin(), actual.end());
  std::vector<Vertex> cut = sep.cut, in = inner;
  do {
    do {
      GadgetRoles r{cut[0], {cut[1], cut[2], cut[3], cut[4]}, {in[0], in[1], in[2], in[3]}};
      if (gadget_edges(r) == actual) return true;
    } while (std::next_permutation(in.begin(), in.end()));
  } while (std::next_permutation(cut.begin(), cut.end()));
  return false;
}

// side2 = {0..8} of g with cut {0..4}; an extra vertex 9 sees the whole cut.
struct Padded {
  Graph g;
  Separation sep;
};

Padded pad_nine(const Graph& h) {
  std::vector<Edge> es = h.edges();
  for (Vertex c = 0; c < 5; ++c) es.emplace_back(c, 9);
  Graph g = build_graph(10, es);
  return {g, make_separation({0, 1, 2, 3, 4, 9}, {0, 1, 2, 3, 4, 5, 6, 7, 8})};
}

// The gadget placed on 0..8 with y2, a on 0..4 and b on 5..8, permuted within the sides.
Graph placed_gadget(std::mt19937& rng) {
  std::vector<Vertex> cut{0, 1, 2, 3, 4}, in{5, 6, 7, 8};
  std::shuffle(cut.begin(), cut.end(), rng);
  std::shuffle(in.begin(), in.end(), rng);
  GadgetRoles r{cut[0], {cut[1], cut[2], cut[3], cut[4]}, {in[0], in[1], in[2], in[3]}};
  return build_graph(9, gadget_edges(r));
}

}  // namespace inst
