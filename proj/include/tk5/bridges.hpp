#pragma once

// Bridges of a subgraph and chains of blocks between two vertices.

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "tk5/graph.hpp"
#include "tk5/traversal.hpp"

namespace tk5 {

/// A subgraph given by its vertex set and edge set (edges must join listed vertices).
struct SubgraphSpec {
  VertexSet vertices;
  std::vector<Edge> edges;

  static SubgraphSpec of_path(const PathSeq& p) { return {p.vertex_set(), p.edges()}; }
  static SubgraphSpec of_cycle(const CycleSeq& c) { return {c.vertex_set(), c.edges()}; }
};

struct BridgeRec {
  enum class Kind { chord, component };
  Kind kind = Kind::chord;
  VertexSet core;         // empty for a chord
  VertexSet attachments;  // vertices of h the bridge touches
  std::vector<Edge> edges;
};

inline void check_subgraph(const Graph& g, const SubgraphSpec& h) {
  for (Vertex v : h.vertices)
    if (!g.contains(v)) throw GraphError("subgraph vertex out of range");
  for (auto [u, v] : h.edges) {
    if (!g.adjacent(u, v)) throw GraphError("subgraph edge not in graph");
    if (!set_contains(h.vertices, u) || !set_contains(h.vertices, v)) throw GraphError("subgraph edge leaves its vertex set");
  }
}

/// The h-bridges of g: component bridges ordered by smallest core vertex,
/// then chords in lexicographic order.
inline std::vector<BridgeRec> enumerate_bridges(const Graph& g, const SubgraphSpec& h) {
  check_subgraph(g, h);
  std::vector<Edge> hedges;
  for (auto [u, v] : h.edges) hedges.push_back(make_edge(u, v));
  std::sort(hedges.begin(), hedges.end());
  VertexMask in_h = mask_of(static_cast<std::size_t>(g.order()), h.vertices);
  std::vector<BridgeRec> out;
  for (VertexSet& core : component_sets(g, in_h)) {
    BridgeRec b;
    b.kind = BridgeRec::Kind::component;
    VertexMask in_core = mask_of(static_cast<std::size_t>(g.order()), core);
    VertexSet att;
    for (Vertex v : core)
      for (Vertex w : g.neighbors(v)) {
        if (in_core[static_cast<std::size_t>(w)] && w < v) continue;
        b.edges.push_back(make_edge(v, w));
        if (in_h[static_cast<std::size_t>(w)]) att.push_back(w);
      }
    std::sort(b.edges.begin(), b.edges.end());
    b.attachments = make_set(std::move(att));
    b.core = std::move(core);
    out.push_back(std::move(b));
  }
  for (auto [u, v] : g.edges()) {
    if (!in_h[static_cast<std::size_t>(u)] || !in_h[static_cast<std::size_t>(v)]) continue;
    if (std::binary_search(hedges.begin(), hedges.end(), Edge{u, v})) continue;
    out.push_back(BridgeRec{BridgeRec::Kind::chord, {}, {u, v}, {{u, v}}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chains of blocks

struct ChainOfBlocks {
  std::vector<VertexSet> blocks;
  std::vector<Vertex> cut_vertices;  // cut_vertices[i] = blocks[i] ∩ blocks[i+1]
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  std::vector<VertexSet> hanging;  // components of the ambient graph outside the chain

  VertexSet vertex_set() const {
    VertexSet all;
    for (const auto& b : blocks) all = set_union(all, b);
    return all;
  }
  bool exact() const { return hanging.empty(); }
};

/// The chain of blocks from u to v along the block-cut tree of g minus the
/// removed vertices, with whatever lies outside the chain listed as hanging.
/// Nothing when u and v are disconnected.
inline std::optional<ChainOfBlocks> chain_of_blocks(const Graph& g, Vertex u, Vertex v, const VertexMask& removed = {}) {
  if (u == v) throw std::invalid_argument("chain_of_blocks: endpoints must differ");
  if (!g.contains(u) || !g.contains(v)) throw GraphError("chain_of_blocks: endpoint out of range");
  if (is_removed(removed, u) || is_removed(removed, v)) return std::nullopt;
  Components comp = components(g, removed);
  if (comp.id[static_cast<std::size_t>(u)] != comp.id[static_cast<std::size_t>(v)]) return std::nullopt;
  BlockDecomposition bd = blocks(g, removed);
  const int nb = static_cast<int>(bd.blocks.size());
  // Tree nodes: blocks 0..nb-1, then articulation points.
  std::vector<int> art_index(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < bd.articulation.size(); ++i)
    art_index[static_cast<std::size_t>(bd.articulation[i])] = nb + static_cast<int>(i);
  const int total = nb + static_cast<int>(bd.articulation.size());
  std::vector<std::vector<int>> tree(static_cast<std::size_t>(total));
  for (int b = 0; b < nb; ++b)
    for (Vertex x : bd.blocks[static_cast<std::size_t>(b)])
      if (art_index[static_cast<std::size_t>(x)] >= 0) {
        tree[static_cast<std::size_t>(b)].push_back(art_index[static_cast<std::size_t>(x)]);
        tree[static_cast<std::size_t>(art_index[static_cast<std::size_t>(x)])].push_back(b);
      }
  auto node_of = [&](Vertex x) {
    if (art_index[static_cast<std::size_t>(x)] >= 0) return art_index[static_cast<std::size_t>(x)];
    for (int b = 0; b < nb; ++b)
      if (set_contains(bd.blocks[static_cast<std::size_t>(b)], x)) return b;
    return -1;
  };
  int su = node_of(u), sv = node_of(v);
  if (su < 0 || sv < 0) return std::nullopt;
  std::vector<int> parent(static_cast<std::size_t>(total), -2);
  std::queue<int> q;
  q.push(su);
  parent[static_cast<std::size_t>(su)] = -1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : tree[static_cast<std::size_t>(x)])
      if (parent[static_cast<std::size_t>(y)] == -2) {
        parent[static_cast<std::size_t>(y)] = x;
        q.push(y);
      }
  }
  std::vector<int> nodes;
  for (int x = sv; x != -1; x = parent[static_cast<std::size_t>(x)]) nodes.push_back(x);
  std::reverse(nodes.begin(), nodes.end());
  ChainOfBlocks ch;
  ch.u = u;
  ch.v = v;
  for (int x : nodes) {
    if (x < nb) {
      ch.blocks.push_back(bd.blocks[static_cast<std::size_t>(x)]);
    } else if (!ch.blocks.empty() && x != sv) {
      ch.cut_vertices.push_back(bd.articulation[static_cast<std::size_t>(x - nb)]);
    }
  }
  VertexSet chain = ch.vertex_set();
  VertexMask outside = removed.empty() ? VertexMask(static_cast<std::size_t>(g.order()), 0) : removed;
  for (Vertex x : chain) outside[static_cast<std::size_t>(x)] = 1;
  ch.hanging = component_sets(g, outside);
  return ch;
}

/// Re-checks the chain conditions against g minus the removed vertices,
/// including that each listed block is a block there and that `hanging`
/// is exactly what lies outside the chain.
inline bool verify_chain(const Graph& g, const ChainOfBlocks& ch, const VertexMask& removed = {}) {
  const std::size_t k = ch.blocks.size();
  if (k == 0 || ch.cut_vertices.size() != k - 1 || ch.u == ch.v) return false;
  BlockDecomposition bd = blocks(g, removed);
  for (const auto& b : ch.blocks)
    if (std::find(bd.blocks.begin(), bd.blocks.end(), b) == bd.blocks.end()) return false;
  if (k == 1) {
    if (!set_contains(ch.blocks[0], ch.u) || !set_contains(ch.blocks[0], ch.v)) return false;
  } else {
    if (!set_contains(ch.blocks[0], ch.u) || set_contains(ch.blocks[1], ch.u)) return false;
    if (!set_contains(ch.blocks[k - 1], ch.v) || set_contains(ch.blocks[k - 2], ch.v)) return false;
  }
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (set_intersection(ch.blocks[i], ch.blocks[i + 1]) != VertexSet{ch.cut_vertices[i]}) return false;
    for (std::size_t j = i + 2; j < k; ++j)
      if (!sets_disjoint(ch.blocks[i], ch.blocks[j])) return false;
  }
  VertexSet chain = ch.vertex_set();
  VertexMask outside = removed.empty() ? VertexMask(static_cast<std::size_t>(g.order()), 0) : removed;
  for (Vertex x : chain) outside[static_cast<std::size_t>(x)] = 1;
  return component_sets(g, outside) == ch.hanging;
}

}  // namespace tk5
