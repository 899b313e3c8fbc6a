#pragma once

// Components, shortest paths and block decomposition over a graph with an
// optional set of deleted vertices.

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "tk5/graph.hpp"

namespace tk5 {

/// Vertices with removed[v] set are treated as absent. An empty mask removes nothing.
struct Components {
  std::vector<int> id;  // component index per vertex, -1 for removed vertices
  int count = 0;

  VertexSet members(int c) const {
    VertexSet out;
    for (std::size_t v = 0; v < id.size(); ++v)
      if (id[v] == c) out.push_back(static_cast<Vertex>(v));
    return out;
  }
};

inline bool is_removed(const VertexMask& removed, Vertex v) {
  return !removed.empty() && removed[static_cast<std::size_t>(v)];
}

inline Components components(const Graph& g, const VertexMask& removed = {}) {
  Components c;
  c.id.assign(static_cast<std::size_t>(g.order()), -1);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (is_removed(removed, s) || c.id[static_cast<std::size_t>(s)] != -1) continue;
    c.id[static_cast<std::size_t>(s)] = c.count;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (is_removed(removed, w) || c.id[static_cast<std::size_t>(w)] != -1) continue;
        c.id[static_cast<std::size_t>(w)] = c.count;
        stack.push_back(w);
      }
    }
    ++c.count;
  }
  return c;
}

/// Component vertex sets in order of their smallest vertex.
inline std::vector<VertexSet> component_sets(const Graph& g, const VertexMask& removed = {}) {
  Components c = components(g, removed);
  std::vector<VertexSet> out(static_cast<std::size_t>(c.count));
  for (Vertex v = 0; v < g.order(); ++v)
    if (c.id[static_cast<std::size_t>(v)] >= 0) out[static_cast<std::size_t>(c.id[static_cast<std::size_t>(v)])].push_back(v);
  return out;
}

inline bool is_connected(const Graph& g, const VertexMask& removed = {}) {
  return components(g, removed).count <= 1;
}

/// Shortest s-t path avoiding removed vertices and the listed edges; among
/// shortest paths, the one found by BFS in adjacency order.
inline std::optional<PathSeq> shortest_path(const Graph& g, Vertex s, Vertex t, const VertexMask& removed = {},
                                            const std::vector<Edge>& forbidden = {}) {
  if (is_removed(removed, s) || is_removed(removed, t)) return std::nullopt;
  std::vector<Vertex> parent(static_cast<std::size_t>(g.order()), kNoVertex);
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  std::queue<Vertex> q;
  q.push(s);
  seen[static_cast<std::size_t>(s)] = 1;
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    if (v == t) break;
    for (Vertex w : g.neighbors(v)) {
      if (seen[static_cast<std::size_t>(w)] || is_removed(removed, w)) continue;
      if (!forbidden.empty() && std::find(forbidden.begin(), forbidden.end(), make_edge(v, w)) != forbidden.end())
        continue;
      seen[static_cast<std::size_t>(w)] = 1;
      parent[static_cast<std::size_t>(w)] = v;
      q.push(w);
    }
  }
  if (!seen[static_cast<std::size_t>(t)]) return std::nullopt;
  std::vector<Vertex> out;
  for (Vertex v = t; v != kNoVertex; v = parent[static_cast<std::size_t>(v)]) out.push_back(v);
  std::reverse(out.begin(), out.end());
  return PathSeq(std::move(out));
}

struct BlockDecomposition {
  std::vector<VertexSet> blocks;  // each a maximal 2-connected vertex set or a bridge edge
  VertexSet articulation;
};

/// Blocks of g minus the removed vertices (isolated vertices form no block).
inline BlockDecomposition blocks(const Graph& g, const VertexMask& removed = {}) {
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> estack;
  VertexMask art(n, 0);
  BlockDecomposition out;
  int timer = 0;
  std::function<void(Vertex, Vertex)> dfs = [&](Vertex v, Vertex parent) {
    disc[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = timer++;
    int children = 0;
    for (Vertex w : g.neighbors(v)) {
      if (is_removed(removed, w) || w == parent) continue;
      if (disc[static_cast<std::size_t>(w)] == -1) {
        estack.emplace_back(v, w);
        ++children;
        dfs(w, v);
        low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
        if (low[static_cast<std::size_t>(w)] >= disc[static_cast<std::size_t>(v)]) {
          if (parent != kNoVertex) art[static_cast<std::size_t>(v)] = 1;
          std::vector<Vertex> blk;
          for (;;) {
            Edge e = estack.back();
            estack.pop_back();
            blk.push_back(e.first);
            blk.push_back(e.second);
            if (e == Edge{v, w}) break;
          }
          out.blocks.push_back(make_set(std::move(blk)));
        }
      } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(v)]) {
        estack.emplace_back(v, w);
        low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
      }
    }
    if (parent == kNoVertex && children > 1) art[static_cast<std::size_t>(v)] = 1;
  };
  for (Vertex v = 0; v < g.order(); ++v)
    if (!is_removed(removed, v) && disc[static_cast<std::size_t>(v)] == -1) dfs(v, kNoVertex);
  std::sort(out.blocks.begin(), out.blocks.end());
  out.articulation = set_of(art);
  return out;
}

inline int alive_count(const Graph& g, const VertexMask& removed) {
  int k = 0;
  for (Vertex v = 0; v < g.order(); ++v) k += !is_removed(removed, v);
  return k;
}

/// At least three vertices, connected, no cut vertex.
inline bool is_2_connected(const Graph& g, const VertexMask& removed = {}) {
  if (alive_count(g, removed) < 3) return false;
  if (!is_connected(g, removed)) return false;
  return blocks(g, removed).articulation.empty();
}

}  // namespace tk5
