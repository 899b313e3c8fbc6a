#pragma once

// Unit vertex-capacity max-flow on the split graph (v_in -> v_out), used for
// every Menger-type computation. Arcs are inserted in adjacency order and
// augmenting paths are found by BFS, so results are deterministic.

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>
#include <vector>

#include "tk5/graph.hpp"
#include "tk5/traversal.hpp"

namespace tk5 {

class VertexFlow {
 public:
  static constexpr int kInf = std::numeric_limits<int>::max() / 4;

  /// Roles: a source vertex has unbounded throughput and feeds the super
  /// source; a sink vertex drains into the super sink and forwards nothing.
  /// `sink_capacity` is the capacity of each sink's drain arc.
  VertexFlow(const Graph& g, const VertexSet& sources, const VertexSet& sinks, const VertexMask& removed = {},
             int sink_capacity = 1)
      : n_(g.order()) {
    role_.assign(static_cast<std::size_t>(n_), 0);
    for (Vertex s : sources) role_[static_cast<std::size_t>(s)] = 1;
    for (Vertex t : sinks) role_[static_cast<std::size_t>(t)] = 2;
    for (Vertex v = 0; v < n_; ++v)
      if (is_removed(removed, v)) role_[static_cast<std::size_t>(v)] = 3;
    head_.assign(static_cast<std::size_t>(2 * n_ + 2), {});
    super_source_ = 2 * n_;
    super_sink_ = 2 * n_ + 1;
    for (Vertex v = 0; v < n_; ++v) {
      int r = role_[static_cast<std::size_t>(v)];
      if (r == 3) continue;
      if (r == 1) {
        add_arc(super_source_, out(v), kInf);
      } else if (r == 2) {
        drain_[v] = add_arc(in(v), super_sink_, sink_capacity);
        continue;
      } else {
        split_[v] = add_arc(in(v), out(v), 1);
      }
      for (Vertex w : g.neighbors(v)) {
        int rw = role_[static_cast<std::size_t>(w)];
        if (rw == 3 || rw == 1) continue;
        // Unbounded so minimum cuts sit on vertices; a direct source-sink
        // edge still counts as one path.
        add_arc(out(v), in(w), r == 1 && rw == 2 ? 1 : kInf);
      }
    }
  }

  /// Augments until `limit` units flow or no augmenting path remains.
  int run(int limit = kInf) {
    while (value_ < limit) {
      if (!augment()) break;
      ++value_;
    }
    return value_;
  }

  int value() const { return value_; }

  /// Pushes one unit along a vertex path (from a source to a sink) before
  /// running, to seed a prescribed flow. The path must be valid for the roles.
  bool seed_path(const PathSeq& p) {
    std::vector<int> arcs;
    auto find_arc = [&](int from, int to) -> int {
      for (int a : head_[static_cast<std::size_t>(from)])
        if (arcs_[static_cast<std::size_t>(a)].to == to && arcs_[static_cast<std::size_t>(a)].cap > 0) return a;
      return -1;
    };
    if (role_[static_cast<std::size_t>(p.front())] != 1 || role_[static_cast<std::size_t>(p.back())] != 2) return false;
    int a = find_arc(super_source_, out(p.front()));
    if (a < 0) return false;
    arcs.push_back(a);
    for (std::size_t i = 1; i < p.size(); ++i) {
      a = find_arc(out(p[i - 1]), in(p[i]));
      if (a < 0) return false;
      arcs.push_back(a);
      if (i + 1 < p.size()) {
        if (role_[static_cast<std::size_t>(p[i])] != 0) return false;
        a = find_arc(in(p[i]), out(p[i]));
        if (a < 0) return false;
        arcs.push_back(a);
      }
    }
    a = find_arc(in(p.back()), super_sink_);
    if (a < 0) return false;
    arcs.push_back(a);
    for (int x : arcs) push(x, 1);
    ++value_;
    return true;
  }

  /// Flow decomposed into vertex paths from sources to sinks, ordered by
  /// their first arc out of the source.
  std::vector<PathSeq> paths() const {
    std::vector<int> used(arcs_.size(), 0);
    std::vector<PathSeq> out_paths;
    for (Vertex s = 0; s < n_; ++s) {
      if (role_[static_cast<std::size_t>(s)] != 1) continue;
      for (;;) {
        std::vector<Vertex> p{s};
        int node = out(s);
        bool advanced = true;
        while (advanced) {
          advanced = false;
          for (int a : head_[static_cast<std::size_t>(node)]) {
            const Arc& arc = arcs_[static_cast<std::size_t>(a)];
            if (arc.orig <= 0 || arc.flow() - used[static_cast<std::size_t>(a)] <= 0) continue;
            if (arc.to == super_sink_) continue;
            ++used[static_cast<std::size_t>(a)];
            Vertex w = arc.to / 2;
            p.push_back(w);
            if (role_[static_cast<std::size_t>(w)] == 2) break;
            int split = split_.at(w);
            ++used[static_cast<std::size_t>(split)];
            node = out(w);
            advanced = true;
            break;
          }
        }
        if (p.size() == 1) break;
        out_paths.emplace_back(std::move(p));
      }
    }
    return out_paths;
  }

  /// Vertices on the source side of the minimum cut whose unit split arc (or
  /// sink drain) is saturated: a minimum vertex separator.
  VertexSet min_cut() const {
    std::vector<char> reach(head_.size(), 0);
    std::queue<int> q;
    q.push(super_source_);
    reach[static_cast<std::size_t>(super_source_)] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int a : head_[static_cast<std::size_t>(x)]) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > 0 && !reach[static_cast<std::size_t>(arc.to)]) {
          reach[static_cast<std::size_t>(arc.to)] = 1;
          q.push(arc.to);
        }
      }
    }
    VertexSet cut;
    for (Vertex v = 0; v < n_; ++v) {
      if (!reach[static_cast<std::size_t>(in(v))]) continue;
      int r = role_[static_cast<std::size_t>(v)];
      if (r == 0 && !reach[static_cast<std::size_t>(out(v))]) cut.push_back(v);
      if (r == 2) cut.push_back(v);
    }
    return cut;
  }

 private:
  struct Arc {
    int to;
    int cap;   // residual capacity
    int orig;  // original capacity; 0 for reverse arcs
    int flow() const { return orig - cap; }
  };

  int in(Vertex v) const { return 2 * v; }
  int out(Vertex v) const { return 2 * v + 1; }

  int add_arc(int from, int to, int cap) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, cap, cap});
    head_[static_cast<std::size_t>(from)].push_back(id);
    arcs_.push_back({from, 0, 0});
    head_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  void push(int a, int amount) {
    arcs_[static_cast<std::size_t>(a)].cap -= amount;
    arcs_[static_cast<std::size_t>(a ^ 1)].cap += amount;
  }

  bool augment() {
    std::vector<int> via(head_.size(), -1);
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> q;
    q.push(super_source_);
    seen[static_cast<std::size_t>(super_source_)] = 1;
    while (!q.empty() && !seen[static_cast<std::size_t>(super_sink_)]) {
      int x = q.front();
      q.pop();
      for (int a : head_[static_cast<std::size_t>(x)]) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap <= 0 || seen[static_cast<std::size_t>(arc.to)]) continue;
        seen[static_cast<std::size_t>(arc.to)] = 1;
        via[static_cast<std::size_t>(arc.to)] = a;
        q.push(arc.to);
      }
    }
    if (!seen[static_cast<std::size_t>(super_sink_)]) return false;
    for (int x = super_sink_; x != super_source_;) {
      int a = via[static_cast<std::size_t>(x)];
      push(a, 1);
      x = arcs_[static_cast<std::size_t>(a ^ 1)].to;
    }
    return true;
  }

  int n_;
  std::vector<int> role_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> head_;
  std::unordered_map<Vertex, int> split_;
  std::unordered_map<Vertex, int> drain_;
  int super_source_ = 0;
  int super_sink_ = 0;
  int value_ = 0;
};

/// Maximum number of internally disjoint s-t paths (s, t nonadjacent or not),
/// capped at `limit`. Direct edge s-t counts as one path.
inline int local_connectivity(const Graph& g, Vertex s, Vertex t, int limit = VertexFlow::kInf,
                              const VertexMask& removed = {}) {
  VertexFlow f(g, {s}, {t}, removed, VertexFlow::kInf);
  return f.run(limit);
}

/// Minimum vertex separator between nonadjacent s and t.
inline VertexSet min_vertex_separator(const Graph& g, Vertex s, Vertex t, const VertexMask& removed = {}) {
  VertexFlow f(g, {s}, {t}, removed, VertexFlow::kInf);
  f.run();
  VertexSet cut = f.min_cut();
  cut.erase(std::remove(cut.begin(), cut.end(), t), cut.end());
  return cut;
}

}  // namespace tk5
