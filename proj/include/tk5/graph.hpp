#pragma once

// Immutable simple undirected graphs, vertex sequences (paths and cycles),
// separations and contraction.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tk5 {

using Vertex = int;

/// Unordered vertex pair, always stored with first < second.
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Membership mask indexed by vertex id.
using VertexMask = std::vector<char>;

inline constexpr Vertex kNoVertex = -1;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline VertexSet make_set(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

inline bool set_contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool sets_disjoint(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

inline VertexMask mask_of(std::size_t n, std::span<const Vertex> vs) {
  VertexMask m(n, 0);
  for (Vertex v : vs) m[static_cast<std::size_t>(v)] = 1;
  return m;
}

inline VertexSet set_of(const VertexMask& m) {
  VertexSet out;
  for (std::size_t v = 0; v < m.size(); ++v)
    if (m[v]) out.push_back(static_cast<Vertex>(v));
  return out;
}

/// Simple undirected graph on the dense id range [0, order()). Adjacency lists
/// are sorted ascending, so every traversal below visits neighbors in
/// lexicographic order.
class Graph {
 public:
  Graph() = default;

  int order() const { return static_cast<int>(adj_.size()); }
  std::size_t size() const { return edge_count_; }
  bool contains(Vertex v) const { return v >= 0 && v < order(); }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) return false;
    const auto& a = neighbors(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// All edges in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Vertex v) const {
    if (static_cast<std::size_t>(v) < labels_.size() && !labels_[static_cast<std::size_t>(v)].empty())
      return labels_[static_cast<std::size_t>(v)];
    return std::to_string(v);
  }

  friend Graph build_graph(int n, std::span<const Edge> edges, std::vector<std::string> labels);

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

/// Builds a graph from an edge list; duplicate pairs (in either orientation)
/// are merged. Throws GraphError on out-of-range ids or self-loops.
inline Graph build_graph(int n, std::span<const Edge> edges, std::vector<std::string> labels = {}) {
  if (n < 0) throw GraphError("negative vertex count");
  if (!labels.empty() && labels.size() != static_cast<std::size_t>(n))
    throw GraphError("label count does not match vertex count");
  Graph g;
  g.adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n=" +
                       std::to_string(n));
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    g.adj_[static_cast<std::size_t>(u)].push_back(v);
    g.adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  std::size_t twice = 0;
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    twice += a.size();
  }
  g.edge_count_ = twice / 2;
  g.labels_ = std::move(labels);
  return g;
}

inline Graph build_graph(int n, std::initializer_list<Edge> edges) {
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

// ---------------------------------------------------------------------------
// Derived graphs. Vertex ids are preserved unless a relabeling is returned.

/// g with the listed edges removed; ids unchanged.
inline Graph remove_edges(const Graph& g, std::span<const Edge> drop) {
  std::vector<Edge> sorted_drop;
  for (auto [u, v] : drop) sorted_drop.push_back(make_edge(u, v));
  std::sort(sorted_drop.begin(), sorted_drop.end());
  std::vector<Edge> keep;
  for (const Edge& e : g.edges())
    if (!std::binary_search(sorted_drop.begin(), sorted_drop.end(), e)) keep.push_back(e);
  return build_graph(g.order(), keep, g.labels());
}

/// g with the listed edges added; ids unchanged.
inline Graph add_edges(const Graph& g, std::span<const Edge> extra) {
  std::vector<Edge> all = g.edges();
  all.insert(all.end(), extra.begin(), extra.end());
  return build_graph(g.order(), all, g.labels());
}

/// g with every edge incident to a masked vertex removed; ids unchanged, the
/// masked vertices become isolated.
inline Graph isolate_vertices(const Graph& g, const VertexMask& drop) {
  std::vector<Edge> keep;
  for (const Edge& e : g.edges())
    if (!drop[static_cast<std::size_t>(e.first)] && !drop[static_cast<std::size_t>(e.second)]) keep.push_back(e);
  return build_graph(g.order(), keep, g.labels());
}

/// A graph together with the id translation from the graph it was derived from.
struct Relabeled {
  Graph graph;
  std::vector<Vertex> image;   // old id -> new id, kNoVertex when dropped
  std::vector<Vertex> origin;  // new id -> old id (for contraction: smallest merged id)
};

/// Induced subgraph on `keep`, relabeled densely in increasing old-id order.
inline Relabeled induced_subgraph(const Graph& g, const VertexSet& keep) {
  Relabeled r;
  r.image.assign(static_cast<std::size_t>(g.order()), kNoVertex);
  std::vector<std::string> labels;
  for (Vertex v : keep) {
    r.image[static_cast<std::size_t>(v)] = static_cast<Vertex>(r.origin.size());
    r.origin.push_back(v);
    labels.push_back(g.label(v));
  }
  std::vector<Edge> es;
  for (auto [u, v] : g.edges()) {
    Vertex a = r.image[static_cast<std::size_t>(u)];
    Vertex b = r.image[static_cast<std::size_t>(v)];
    if (a != kNoVertex && b != kNoVertex) es.emplace_back(a, b);
  }
  r.graph = build_graph(static_cast<int>(keep.size()), es, std::move(labels));
  return r;
}

inline VertexSet neighborhood(const Graph& g, const VertexSet& s) {
  VertexMask in = mask_of(static_cast<std::size_t>(g.order()), s);
  VertexMask seen(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!in[static_cast<std::size_t>(w)]) seen[static_cast<std::size_t>(w)] = 1;
  return set_of(seen);
}

// ---------------------------------------------------------------------------
// Paths and cycles

/// Ordered vertex sequence describing a path; a single vertex is the trivial path.
class PathSeq {
 public:
  PathSeq() = default;
  explicit PathSeq(std::vector<Vertex> vs) : vs_(std::move(vs)) {}

  const std::vector<Vertex>& vertices() const { return vs_; }
  std::size_t size() const { return vs_.size(); }
  bool empty() const { return vs_.empty(); }
  Vertex front() const { return vs_.front(); }
  Vertex back() const { return vs_.back(); }
  Vertex operator[](std::size_t i) const { return vs_[i]; }

  std::optional<std::size_t> position(Vertex v) const {
    auto it = std::find(vs_.begin(), vs_.end(), v);
    if (it == vs_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vs_.begin());
  }
  bool contains(Vertex v) const { return position(v).has_value(); }

  PathSeq reversed() const { return PathSeq(std::vector<Vertex>(vs_.rbegin(), vs_.rend())); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 1; i < vs_.size(); ++i) out.push_back(make_edge(vs_[i - 1], vs_[i]));
    return out;
  }

  /// Vertices strictly between the two ends.
  std::vector<Vertex> interior() const {
    if (vs_.size() <= 2) return {};
    return std::vector<Vertex>(vs_.begin() + 1, vs_.end() - 1);
  }

  VertexSet vertex_set() const { return make_set(vs_); }

  friend bool operator==(const PathSeq&, const PathSeq&) = default;
  friend auto operator<=>(const PathSeq& a, const PathSeq& b) { return a.vs_ <=> b.vs_; }

 private:
  std::vector<Vertex> vs_;
};

/// Cycle with the orientation it was listed in; "clockwise" means increasing
/// position, wrapping from the last vertex back to the first.
class CycleSeq {
 public:
  CycleSeq() = default;
  explicit CycleSeq(std::vector<Vertex> vs) : vs_(std::move(vs)) {}

  const std::vector<Vertex>& vertices() const { return vs_; }
  std::size_t size() const { return vs_.size(); }
  Vertex operator[](std::size_t i) const { return vs_[i]; }

  std::optional<std::size_t> position(Vertex v) const {
    auto it = std::find(vs_.begin(), vs_.end(), v);
    if (it == vs_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vs_.begin());
  }
  bool contains(Vertex v) const { return position(v).has_value(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < vs_.size(); ++i) out.push_back(make_edge(vs_[i], vs_[(i + 1) % vs_.size()]));
    return out;
  }

  VertexSet vertex_set() const { return make_set(vs_); }

  friend bool operator==(const CycleSeq&, const CycleSeq&) = default;

 private:
  std::vector<Vertex> vs_;
};

inline bool all_distinct(std::span<const Vertex> vs) {
  std::vector<Vertex> s(vs.begin(), vs.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

inline bool is_valid_path(const Graph& g, const PathSeq& p) {
  if (p.empty()) return false;
  for (Vertex v : p.vertices())
    if (!g.contains(v)) return false;
  if (!all_distinct(p.vertices())) return false;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!g.adjacent(p[i - 1], p[i])) return false;
  return true;
}

inline bool is_valid_cycle(const Graph& g, const CycleSeq& c) {
  if (c.size() < 3) return false;
  for (Vertex v : c.vertices())
    if (!g.contains(v)) return false;
  if (!all_distinct(c.vertices())) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!g.adjacent(c[i], c[(i + 1) % c.size()])) return false;
  return true;
}

/// Segment of p from x to y (walked backwards when y precedes x).
inline PathSeq subpath(const PathSeq& p, Vertex x, Vertex y) {
  auto px = p.position(x);
  auto py = p.position(y);
  if (!px || !py) throw GraphError("subpath endpoint not on path");
  std::vector<Vertex> out;
  if (*px <= *py) {
    for (std::size_t i = *px; i <= *py; ++i) out.push_back(p[i]);
  } else {
    for (std::size_t i = *px + 1; i-- > *py;) out.push_back(p[i]);
  }
  return PathSeq(std::move(out));
}

/// Clockwise segment of c from x to y; x == y gives the trivial path.
inline PathSeq subpath(const CycleSeq& c, Vertex x, Vertex y) {
  auto px = c.position(x);
  auto py = c.position(y);
  if (!px || !py) throw GraphError("subpath endpoint not on cycle");
  std::vector<Vertex> out;
  std::size_t i = *px;
  for (;;) {
    out.push_back(c[i]);
    if (i == *py) break;
    i = (i + 1) % c.size();
  }
  return PathSeq(std::move(out));
}

/// Joins path pieces that share endpoints, reversing pieces as needed. The
/// first piece is oriented so that it meets the second. Throws GraphError if
/// consecutive pieces do not share an endpoint.
inline PathSeq concat(std::span<const PathSeq> pieces) {
  if (pieces.empty()) throw GraphError("concat of no pieces");
  std::vector<Vertex> out = pieces[0].vertices();
  if (out.empty()) throw GraphError("concat of an empty piece");
  if (pieces.size() > 1) {
    const PathSeq& next = pieces[1];
    if (out.front() == next.front() || out.front() == next.back()) {
      if (!(out.back() == next.front() || out.back() == next.back())) std::reverse(out.begin(), out.end());
    }
  }
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const auto& vs = pieces[i].vertices();
    if (vs.empty()) throw GraphError("concat of an empty piece");
    if (vs.front() == out.back()) {
      out.insert(out.end(), vs.begin() + 1, vs.end());
    } else if (vs.back() == out.back()) {
      out.insert(out.end(), vs.rbegin() + 1, vs.rend());
    } else {
      throw GraphError("path pieces " + std::to_string(i - 1) + " and " + std::to_string(i) +
                       " do not share an endpoint");
    }
  }
  return PathSeq(std::move(out));
}

inline PathSeq concat(std::initializer_list<PathSeq> pieces) {
  return concat(std::span<const PathSeq>(pieces.begin(), pieces.size()));
}

/// True iff no edge of g outside p and outside `ignored` joins two
/// non-consecutive vertices of p. Throws GraphError if p is not a path of g.
inline bool is_induced_path(const Graph& g, const PathSeq& p, std::span<const Edge> ignored = {}) {
  if (!is_valid_path(g, p)) throw GraphError("is_induced_path: not a path of the graph");
  std::vector<int> pos(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < p.size(); ++i) pos[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (Vertex w : g.neighbors(p[i])) {
      int j = pos[static_cast<std::size_t>(w)];
      if (j < 0 || j <= static_cast<int>(i) + 1) continue;
      Edge e = make_edge(p[i], w);
      if (std::find(ignored.begin(), ignored.end(), e) == ignored.end()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Separations

struct Separation {
  VertexSet side1;
  VertexSet side2;
  VertexSet cut;  // side1 ∩ side2

  int order() const { return static_cast<int>(cut.size()); }
};

inline Separation make_separation(VertexSet side1, VertexSet side2) {
  Separation s{make_set(std::move(side1)), make_set(std::move(side2)), {}};
  s.cut = set_intersection(s.side1, s.side2);
  return s;
}

/// Checks the separation invariants in O(n + m).
inline bool is_valid_separation(const Graph& g, const Separation& s) {
  std::vector<int> where(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : s.side1) {
    if (!g.contains(v)) return false;
    where[static_cast<std::size_t>(v)] |= 1;
  }
  for (Vertex v : s.side2) {
    if (!g.contains(v)) return false;
    where[static_cast<std::size_t>(v)] |= 2;
  }
  if (s.cut != set_intersection(s.side1, s.side2)) return false;
  bool only1 = false, only2 = false;
  for (Vertex v = 0; v < g.order(); ++v) {
    int w = where[static_cast<std::size_t>(v)];
    if (w == 0) return false;
    only1 |= (w == 1);
    only2 |= (w == 2);
  }
  if (!only1 || !only2) return false;
  for (auto [u, v] : g.edges()) {
    int a = where[static_cast<std::size_t>(u)], b = where[static_cast<std::size_t>(v)];
    if ((a == 1 && b == 2) || (a == 2 && b == 1)) return false;
  }
  return true;
}

/// The graph on one side of a separation. With `with_cut_edges` false, edges
/// joining two cut vertices are left to the other side.
inline Relabeled side_graph(const Graph& g, const Separation& s, int side, bool with_cut_edges) {
  const VertexSet& vs = side == 1 ? s.side1 : s.side2;
  Relabeled r = induced_subgraph(g, vs);
  if (with_cut_edges) return r;
  std::vector<Edge> drop;
  for (auto [u, v] : r.graph.edges())
    if (set_contains(s.cut, r.origin[static_cast<std::size_t>(u)]) &&
        set_contains(s.cut, r.origin[static_cast<std::size_t>(v)]))
      drop.emplace_back(u, v);
  r.graph = remove_edges(r.graph, drop);
  return r;
}

// ---------------------------------------------------------------------------
// Contraction

/// Contracts the connected vertex set m to a single vertex. Ids stay dense:
/// surviving vertices keep their relative order and the merged vertex takes
/// the slot of min(m). Parallel edges are merged.
inline Relabeled contract_subgraph(const Graph& g, const VertexSet& m_in) {
  VertexSet m = make_set(m_in);
  if (m.empty()) throw GraphError("contract_subgraph: empty vertex set");
  for (Vertex v : m)
    if (!g.contains(v)) throw GraphError("contract_subgraph: vertex out of range");
  {
    VertexMask in = mask_of(static_cast<std::size_t>(g.order()), m);
    VertexMask seen(static_cast<std::size_t>(g.order()), 0);
    std::vector<Vertex> stack{m.front()};
    seen[static_cast<std::size_t>(m.front())] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      ++reached;
      for (Vertex w : g.neighbors(v))
        if (in[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
    }
    if (reached != m.size()) throw GraphError("contract_subgraph: vertex set is not connected");
  }
  Relabeled r;
  r.image.assign(static_cast<std::size_t>(g.order()), kNoVertex);
  std::vector<std::string> labels;
  Vertex merged = kNoVertex;
  for (Vertex v = 0; v < g.order(); ++v) {
    bool in_m = set_contains(m, v);
    if (in_m && merged != kNoVertex) {
      r.image[static_cast<std::size_t>(v)] = merged;
      continue;
    }
    Vertex id = static_cast<Vertex>(r.origin.size());
    r.image[static_cast<std::size_t>(v)] = id;
    r.origin.push_back(v);
    labels.push_back(g.label(v));
    if (in_m) merged = id;
  }
  std::vector<Edge> es;
  for (auto [u, v] : g.edges()) {
    Vertex a = r.image[static_cast<std::size_t>(u)];
    Vertex b = r.image[static_cast<std::size_t>(v)];
    if (a != b) es.emplace_back(a, b);
  }
  r.graph = build_graph(static_cast<int>(r.origin.size()), es, std::move(labels));
  return r;
}

// ---------------------------------------------------------------------------
// Named graphs used throughout the test corpus and the CLI.

namespace named {

inline Graph complete(int n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return build_graph(n, es);
}

inline Graph cycle(int n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u) es.push_back(make_edge(u, (u + 1) % n));
  return build_graph(n, es);
}

inline Graph path(int n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u + 1 < n; ++u) es.emplace_back(u, u + 1);
  return build_graph(n, es);
}

/// Complete bipartite graph; the first side is 0..a-1.
inline Graph complete_bipartite(int a, int b) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) es.emplace_back(u, a + v);
  return build_graph(a + b, es);
}

/// Star with center 0 and leaves 1..k.
inline Graph star(int k) { return complete_bipartite(1, k); }

/// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
inline Graph petersen() {
  std::vector<Edge> es;
  for (Vertex i = 0; i < 5; ++i) {
    es.push_back(make_edge(i, (i + 1) % 5));
    es.push_back(make_edge(i, i + 5));
    es.push_back(make_edge(5 + i, 5 + (i + 2) % 5));
  }
  return build_graph(10, es);
}

/// Triangle 0,1,2 joined to triangle 3,4,5 by the matching i -- i+3.
inline Graph prism() {
  return build_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

/// Wheel with hub 0 and rim 1..k.
inline Graph wheel(int k) {
  std::vector<Edge> es;
  for (Vertex i = 1; i <= k; ++i) {
    es.emplace_back(0, i);
    es.push_back(make_edge(i, i % k + 1));
  }
  return build_graph(k + 1, es);
}

inline Graph complete_minus_edge(int n, Vertex a, Vertex b) {
  Graph k = complete(n);
  Edge e = make_edge(a, b);
  return remove_edges(k, std::span<const Edge>(&e, 1));
}

}  // namespace named

}  // namespace tk5
