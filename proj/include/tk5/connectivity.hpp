#pragma once

// Vertex connectivity, (k, A)-connectivity, independent path fans and
// prescribed-terminal fan rerouting.

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tk5/flow.hpp"
#include "tk5/graph.hpp"
#include "tk5/traversal.hpp"

namespace tk5 {

inline bool is_complete(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.order());
  return g.size() == n * (n - (n > 0 ? 1 : 0)) / 2;
}

/// Vertex connectivity with the convention kappa(K_n) = n - 1.
inline int vertex_connectivity(const Graph& g) {
  int n = g.order();
  if (n <= 1) return 0;
  if (!is_connected(g)) return 0;
  if (is_complete(g)) return n - 1;
  int best = n - 1;
  // A minimum separator misses one of vertices 0..best, and that vertex is
  // separated from some other vertex, so these sources suffice.
  for (Vertex s = 0; s < n && s <= best; ++s) {
    for (Vertex t = 0; t < n; ++t) {
      if (t == s || g.adjacent(s, t)) continue;
      best = std::min(best, local_connectivity(g, s, t, best));
    }
  }
  return best;
}

inline bool is_k_connected(const Graph& g, int k) {
  if (g.order() <= k) return false;
  return vertex_connectivity(g) >= k;
}

namespace detail {

inline bool subsets_up_to(int n, int max_size, const std::function<bool(const VertexSet&)>& visit) {
  VertexSet cur;
  std::function<bool(Vertex)> rec = [&](Vertex start) -> bool {
    if (!visit(cur)) return false;
    if (static_cast<int>(cur.size()) == max_size) return true;
    for (Vertex v = start; v < n; ++v) {
      cur.push_back(v);
      bool ok = rec(v + 1);
      cur.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

inline bool every_component_meets(const Graph& g, const VertexSet& t, const VertexMask& in_a) {
  VertexMask removed = mask_of(static_cast<std::size_t>(g.order()), t);
  Components c = components(g, removed);
  if (c.count <= 1) return true;  // t is not a cut
  std::vector<char> hit(static_cast<std::size_t>(c.count), 0);
  for (Vertex v = 0; v < g.order(); ++v)
    if (c.id[static_cast<std::size_t>(v)] >= 0 && in_a[static_cast<std::size_t>(v)])
      hit[static_cast<std::size_t>(c.id[static_cast<std::size_t>(v)])] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

}  // namespace detail

/// True iff for every T with |T| < k whose removal disconnects g, every
/// component of g - T contains a vertex of a.
inline bool is_kA_connected(const Graph& g, int k, const VertexSet& a) {
  const int n = g.order();
  VertexMask in_a = mask_of(static_cast<std::size_t>(n), a);
  if (k <= 0) return true;
  if (n <= 16) {
    return detail::subsets_up_to(n, k - 1, [&](const VertexSet& t) { return detail::every_component_meets(g, t, in_a); });
  }
  // Larger graphs: a violating T strands some v outside a from every vertex
  // of a - T. Independent v-a paths ending at distinct vertices of a bound
  // the size of such a T from below, and a minimum cut realizes it.
  for (Vertex v = 0; v < n; ++v) {
    if (in_a[static_cast<std::size_t>(v)]) continue;
    VertexFlow f(g, {v}, a, {}, 1);
    if (f.run(k) >= k) continue;
    VertexSet t = f.min_cut();
    if (!detail::every_component_meets(g, t, in_a)) return false;
    // Only when a is inside t and g - t stays connected; decide exhaustively.
    return detail::subsets_up_to(n, k - 1, [&](const VertexSet& s) { return detail::every_component_meets(g, s, in_a); });
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fans

struct PathFan {
  Vertex hub = kNoVertex;
  std::vector<PathSeq> paths;
  VertexSet terminals;
};

/// Each path starts at the hub, ends at a distinct terminal, meets the
/// terminal set only at its end, and paths share only the hub.
inline bool verify_fan(const Graph& g, const PathFan& fan) {
  VertexMask term = mask_of(static_cast<std::size_t>(g.order()), fan.terminals);
  if (!g.contains(fan.hub) || term[static_cast<std::size_t>(fan.hub)]) return false;
  VertexMask used(static_cast<std::size_t>(g.order()), 0);
  for (const PathSeq& p : fan.paths) {
    if (!is_valid_path(g, p) || p.size() < 2) return false;
    if (p.front() != fan.hub) return false;
    if (!term[static_cast<std::size_t>(p.back())]) return false;
    for (std::size_t i = 1; i < p.size(); ++i) {
      Vertex v = p[i];
      if (i + 1 < p.size() && term[static_cast<std::size_t>(v)]) return false;
      if (used[static_cast<std::size_t>(v)]) return false;
      used[static_cast<std::size_t>(v)] = 1;
    }
  }
  return true;
}

/// n independent paths from u to distinct vertices of a, or nothing.
inline std::optional<PathFan> independent_fan(const Graph& g, Vertex u, const VertexSet& a, int n,
                                              const VertexMask& removed = {}) {
  if (set_contains(a, u)) throw std::invalid_argument("independent_fan: hub lies in the terminal set");
  if (n < 0) return std::nullopt;
  VertexFlow f(g, {u}, a, removed, 1);
  if (f.run(n) < n) return std::nullopt;
  PathFan fan{u, f.paths(), a};
  return fan;
}

class RerouteFailure : public std::runtime_error {
 public:
  enum class Reason { no_prescribed_fan, no_full_fan };
  RerouteFailure(Reason r, const std::string& what) : std::runtime_error(what), reason_(r) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

/// A fan of n independent paths from u into a in which path i ends at
/// prescribed[i] for every prescribed terminal. Built by augmenting a flow
/// seeded with a fan to the prescribed terminals; augmentation never drains a
/// saturated sink, so the prescribed ends survive.
inline PathFan perfect_reroute(const Graph& g, Vertex u, const VertexSet& a, const std::vector<Vertex>& prescribed,
                               int n) {
  if (set_contains(a, u)) throw std::invalid_argument("perfect_reroute: hub lies in the terminal set");
  if (static_cast<int>(prescribed.size()) > n)
    throw std::invalid_argument("perfect_reroute: more prescribed terminals than requested paths");
  if (!all_distinct(prescribed)) throw std::invalid_argument("perfect_reroute: prescribed terminals repeat");
  for (Vertex p : prescribed)
    if (!set_contains(a, p)) throw std::invalid_argument("perfect_reroute: prescribed terminal outside a");
  const int k = static_cast<int>(prescribed.size());
  VertexSet pres = make_set(prescribed);
  VertexSet others = set_difference(a, pres);
  // Stage 1: fan to the prescribed terminals with the rest of a deleted.
  VertexMask removed = mask_of(static_cast<std::size_t>(g.order()), others);
  VertexFlow stage1(g, {u}, pres, removed, 1);
  if (stage1.run(k) < k)
    throw RerouteFailure(RerouteFailure::Reason::no_prescribed_fan,
                         "no fan of " + std::to_string(k) + " independent paths to the prescribed terminals");
  std::vector<PathSeq> seed = stage1.paths();
  // Stage 2: same flow over the full terminal set, then augment.
  VertexFlow full(g, {u}, a, {}, 1);
  for (const PathSeq& p : seed)
    if (!full.seed_path(p)) throw std::logic_error("perfect_reroute: seed path rejected");
  if (full.run(n) < n)
    throw RerouteFailure(RerouteFailure::Reason::no_full_fan,
                         "no fan of " + std::to_string(n) + " independent paths into the terminal set");
  std::vector<PathSeq> got = full.paths();
  PathFan fan{u, {}, a};
  for (Vertex p : prescribed) {
    auto it = std::find_if(got.begin(), got.end(), [&](const PathSeq& q) { return q.back() == p; });
    if (it == got.end()) throw std::logic_error("perfect_reroute: prescribed terminal lost during augmentation");
    fan.paths.push_back(*it);
    got.erase(it);
  }
  for (PathSeq& q : got) fan.paths.push_back(std::move(q));
  return fan;
}

}  // namespace tk5
