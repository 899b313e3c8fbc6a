#pragma once

// Disjoint-path dichotomies: two disjoint paths versus a 3-planar witness,
// society linkage versus a witness, and a cycle through three vertices
// versus a 2-cut obstruction.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tk5/deadline.hpp"
#include "tk5/flow.hpp"
#include "tk5/graph.hpp"
#include "tk5/society.hpp"
#include "tk5/traversal.hpp"

namespace tk5 {

struct LinkagePaths {
  PathSeq first;   // s1 -> t1
  PathSeq second;  // s2 -> t2
};

namespace detail {

/// Enumerates induced s-t paths of g - removed in DFS order (adjacency
/// order), calling visit on each; visit returns false to stop. `extend_ok`
/// may veto a partial path (given the mask of its vertices) for pruning.
inline void for_each_induced_path(const Graph& g, Vertex s, Vertex t, const VertexMask& removed,
                                  const std::function<bool(const std::vector<Vertex>&, const VertexMask&)>& extend_ok,
                                  const std::function<bool(const std::vector<Vertex>&)>& visit,
                                  const Deadline& deadline) {
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<int> touch(n, 0);  // number of path vertices adjacent to v
  VertexMask on(n, 0);
  std::vector<Vertex> path;
  auto add = [&](Vertex v) {
    path.push_back(v);
    on[static_cast<std::size_t>(v)] = 1;
    for (Vertex w : g.neighbors(v)) ++touch[static_cast<std::size_t>(w)];
  };
  auto drop = [&]() {
    Vertex v = path.back();
    path.pop_back();
    on[static_cast<std::size_t>(v)] = 0;
    for (Vertex w : g.neighbors(v)) --touch[static_cast<std::size_t>(w)];
  };
  // t must stay reachable from the tip through vertices that touch the path
  // only at the tip.
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack;
  auto target_reachable = [&](Vertex tip) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(1, tip);
    seen[static_cast<std::size_t>(tip)] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        auto wi = static_cast<std::size_t>(w);
        if (seen[wi] || on[wi] || is_removed(removed, w)) continue;
        int limit = g.adjacent(w, tip) ? 1 : 0;
        if (touch[wi] > limit) continue;
        if (w == t) return true;
        seen[wi] = 1;
        stack.push_back(w);
      }
    }
    return false;
  };
  bool stop = false;
  std::function<void()> rec = [&]() {
    deadline.check();
    Vertex tip = path.back();
    if (tip == t) {
      if (!visit(path)) stop = true;
      return;
    }
    if (!target_reachable(tip)) return;
    for (Vertex w : g.neighbors(tip)) {
      auto wi = static_cast<std::size_t>(w);
      if (on[wi] || is_removed(removed, w) || touch[wi] != 1) continue;
      add(w);
      if (extend_ok(path, on)) rec();
      drop();
      if (stop) return;
    }
  };
  if (is_removed(removed, s) || is_removed(removed, t)) return;
  add(s);
  if (s == t) {
    visit(path);
    return;
  }
  rec();
}

}  // namespace detail

/// Exhaustive search for disjoint paths s1 -> t1 and s2 -> t2. The first
/// path may be taken induced in g - {s2, t2}, which the search exploits.
inline std::optional<LinkagePaths> find_two_paths(const Graph& g, Vertex s1, Vertex t1, Vertex s2, Vertex t2,
                                                  const Deadline& deadline = Deadline::never()) {
  std::array<Vertex, 4> ts{s1, t1, s2, t2};
  for (Vertex v : ts)
    if (!g.contains(v)) throw GraphError("find_two_paths: terminal out of range");
  if (!all_distinct(ts)) throw std::invalid_argument("find_two_paths: terminals must be distinct");
  const auto n = static_cast<std::size_t>(g.order());
  VertexMask removed(n, 0);
  removed[static_cast<std::size_t>(s2)] = removed[static_cast<std::size_t>(t2)] = 1;
  {
    VertexMask r2(n, 0);
    r2[static_cast<std::size_t>(s1)] = r2[static_cast<std::size_t>(t1)] = 1;
    if (!shortest_path(g, s1, t1, removed) || !shortest_path(g, s2, t2, r2)) return std::nullopt;
  }
  auto second_alive = [&](const std::vector<Vertex>&, const VertexMask& on) {
    return shortest_path(g, s2, t2, on).has_value();
  };
  std::optional<LinkagePaths> found;
  detail::for_each_induced_path(
      g, s1, t1, removed, second_alive,
      [&](const std::vector<Vertex>& p) {
        VertexMask on = mask_of(n, p);
        auto q = shortest_path(g, s2, t2, on);
        if (!q) return true;
        found = LinkagePaths{PathSeq(p), *q};
        return false;
      },
      deadline);
  return found;
}

namespace detail {

/// Vertex sets C with no boundary vertex that form a component of g - T for
/// some T with |T| <= 3, largest first, then lexicographic.
inline std::vector<VertexSet> candidate_parts(const Graph& g, const std::vector<Vertex>& boundary,
                                              const Deadline& deadline) {
  const int n = g.order();
  VertexMask bd = mask_of(static_cast<std::size_t>(n), boundary);
  std::vector<VertexSet> out;
  VertexSet t;
  std::function<void(Vertex)> rec = [&](Vertex start) {
    deadline.check();
    VertexMask removed = mask_of(static_cast<std::size_t>(n), t);
    for (VertexSet& c : component_sets(g, removed)) {
      bool clean = std::none_of(c.begin(), c.end(), [&](Vertex v) { return bd[static_cast<std::size_t>(v)] != 0; });
      if (clean && neighborhood(g, c).size() <= 3) out.push_back(std::move(c));
    }
    if (t.size() == 3) return;
    for (Vertex v = start; v < n; ++v) {
      t.push_back(v);
      rec(v + 1);
      t.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool parts_compatible(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (!sets_disjoint(a, b)) return false;
  return sets_disjoint(neighborhood(g, a), b) && sets_disjoint(neighborhood(g, b), a);
}

inline std::optional<SocietyWitness> try_parts(const Graph& g, const std::vector<Vertex>& boundary,
                                               std::vector<VertexSet> parts) {
  std::sort(parts.begin(), parts.end());
  Relabeled r = society_reduce(g, parts);
  std::vector<Vertex> bd;
  for (Vertex b : boundary) bd.push_back(r.image[static_cast<std::size_t>(b)]);
  auto emb = test_disc_embeddable(r.graph, bd);
  if (!emb) return std::nullopt;
  return SocietyWitness{std::move(parts), boundary, std::move(*emb)};
}

}  // namespace detail

/// Looks for parts making (g, parts, boundary) 3-planar: first a greedy
/// largest-first compatible family, then bounded backtracking over families.
inline std::optional<SocietyWitness> extract_society_witness(const Graph& g, const std::vector<Vertex>& boundary,
                                                             const Deadline& deadline = Deadline::never()) {
  if (auto w = plain_witness(g, boundary)) return w;
  std::vector<VertexSet> cands = detail::candidate_parts(g, boundary, deadline);
  if (cands.empty()) return std::nullopt;
  std::vector<VertexSet> chosen;
  for (const VertexSet& c : cands) {
    bool ok = std::all_of(chosen.begin(), chosen.end(), [&](const VertexSet& d) { return detail::parts_compatible(g, c, d); });
    if (ok) chosen.push_back(c);
  }
  if (auto w = detail::try_parts(g, boundary, chosen)) return w;
  // Backtracking: each family is a maximal compatible selection in candidate order.
  std::optional<SocietyWitness> found;
  std::vector<VertexSet> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    deadline.check();
    if (i == cands.size()) {
      // only maximal families are tested
      for (const VertexSet& c : cands) {
        if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
        if (std::all_of(cur.begin(), cur.end(), [&](const VertexSet& d) { return detail::parts_compatible(g, c, d); }))
          return false;
      }
      if (cur == chosen) return false;
      found = detail::try_parts(g, boundary, cur);
      return found.has_value();
    }
    bool ok = std::all_of(cur.begin(), cur.end(), [&](const VertexSet& d) { return detail::parts_compatible(g, cands[i], d); });
    if (ok) {
      cur.push_back(cands[i]);
      if (rec(i + 1)) return true;
      cur.pop_back();
    }
    return rec(i + 1);
  };
  rec(0);
  return found;
}

using TwoPathsResult = std::variant<LinkagePaths, SocietyWitness>;

class DichotomyFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Disjoint s1 -> t1 and s2 -> t2 paths, or a witness that
/// (g, s1, s2, t1, t2) is 3-planar.
inline TwoPathsResult two_disjoint_paths(const Graph& g, Vertex s1, Vertex s2, Vertex t1, Vertex t2,
                                         const Deadline& deadline = Deadline::never()) {
  if (auto p = find_two_paths(g, s1, t1, s2, t2, deadline)) return *p;
  auto w = extract_society_witness(g, {s1, s2, t1, t2}, deadline);
  if (!w) throw DichotomyFailure("two_disjoint_paths: neither linkage nor witness found");
  return *w;
}

struct CrossingLinkage {
  std::array<int, 4> indices;  // i < j < k < l into the boundary sequence
  LinkagePaths paths;          // v_i -> v_k and v_j -> v_l
};

using SocietyLinkageResult = std::variant<CrossingLinkage, SocietyWitness>;

inline SocietyLinkageResult society_linkage(const Graph& g, const std::vector<Vertex>& boundary,
                                            const Deadline& deadline = Deadline::never()) {
  const int n = static_cast<int>(boundary.size());
  if (n < 4) throw std::invalid_argument("society_linkage: need at least four boundary vertices");
  if (!all_distinct(boundary)) throw std::invalid_argument("society_linkage: boundary repeats a vertex");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          auto b = [&](int x) { return boundary[static_cast<std::size_t>(x)]; };
          if (auto p = find_two_paths(g, b(i), b(k), b(j), b(l), deadline)) return CrossingLinkage{{i, j, k, l}, *p};
        }
  auto w = extract_society_witness(g, boundary, deadline);
  if (!w) throw DichotomyFailure("society_linkage: neither linkage nor witness found");
  return *w;
}

// ---------------------------------------------------------------------------
// Cycles through three vertices

struct CycleObstruction {
  enum class Kind { disjoint_2_cut = 1, shared_vertex_cuts = 2, three_disjoint_cuts = 3 };
  Kind kind = Kind::disjoint_2_cut;
  std::array<VertexSet, 3> cuts;   // S_{y_i}; all equal for the first kind
  std::array<VertexSet, 3> parts;  // D_{y_i}
  std::optional<Vertex> shared;    // z for the second kind
  std::optional<std::array<VertexSet, 2>> spine;  // components of G - (D_1 u D_2 u D_3) for the third kind
};

using CycleResult = std::variant<CycleSeq, CycleObstruction>;

namespace detail {

/// True iff d is a nonempty union of components of g - s.
inline bool is_union_of_components(const Graph& g, const VertexSet& s, const VertexSet& d) {
  if (d.empty() || !sets_disjoint(s, d)) return false;
  VertexMask in_d = mask_of(static_cast<std::size_t>(g.order()), d);
  VertexMask in_s = mask_of(static_cast<std::size_t>(g.order()), s);
  for (Vertex v : d)
    for (Vertex w : g.neighbors(v))
      if (!in_d[static_cast<std::size_t>(w)] && !in_s[static_cast<std::size_t>(w)]) return false;
  return true;
}

inline bool is_two_cut(const Graph& g, const VertexSet& s) {
  if (s.size() != 2) return false;
  return !is_connected(g, mask_of(static_cast<std::size_t>(g.order()), s));
}

}  // namespace detail

inline bool verify_cycle_obstruction(const Graph& g, Vertex y1, Vertex y2, Vertex y3, const CycleObstruction& ob) {
  std::array<Vertex, 3> ys{y1, y2, y3};
  for (int i = 0; i < 3; ++i) {
    const auto& s = ob.cuts[static_cast<std::size_t>(i)];
    const auto& d = ob.parts[static_cast<std::size_t>(i)];
    if (!detail::is_two_cut(g, s)) return false;
    if (!set_contains(d, ys[static_cast<std::size_t>(i)])) return false;
    if (!detail::is_union_of_components(g, s, d)) return false;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!sets_disjoint(ob.parts[static_cast<std::size_t>(i)], ob.parts[static_cast<std::size_t>(j)])) return false;
  using K = CycleObstruction::Kind;
  switch (ob.kind) {
    case K::disjoint_2_cut:
      return ob.cuts[0] == ob.cuts[1] && ob.cuts[1] == ob.cuts[2];
    case K::shared_vertex_cuts: {
      if (!ob.shared) return false;
      Vertex z = *ob.shared;
      std::array<VertexSet, 3> rest;
      for (int i = 0; i < 3; ++i) {
        if (!set_contains(ob.cuts[static_cast<std::size_t>(i)], z)) return false;
        rest[static_cast<std::size_t>(i)] = set_difference(ob.cuts[static_cast<std::size_t>(i)], {z});
      }
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (!sets_disjoint(rest[static_cast<std::size_t>(i)], rest[static_cast<std::size_t>(j)])) return false;
      return true;
    }
    case K::three_disjoint_cuts: {
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (!sets_disjoint(ob.cuts[static_cast<std::size_t>(i)], ob.cuts[static_cast<std::size_t>(j)])) return false;
      VertexMask removed(static_cast<std::size_t>(g.order()), 0);
      for (const auto& d : ob.parts)
        for (Vertex v : d) removed[static_cast<std::size_t>(v)] = 1;
      auto comps = component_sets(g, removed);
      if (comps.size() != 2) return false;
      for (const auto& c : comps)
        for (const auto& s : ob.cuts)
          if (set_intersection(c, s).size() != 1) return false;
      if (!ob.spine) return false;
      auto spine = *ob.spine;
      std::sort(spine.begin(), spine.end());
      std::sort(comps.begin(), comps.end());
      return spine[0] == comps[0] && spine[1] == comps[1];
    }
  }
  return false;
}

namespace detail {

inline std::optional<CycleSeq> find_cycle_through(const Graph& g, Vertex y1, Vertex y2, Vertex y3,
                                                  const Deadline& deadline) {
  const auto n = static_cast<std::size_t>(g.order());
  VertexMask removed(n, 0);
  removed[static_cast<std::size_t>(y1)] = 1;
  std::optional<CycleSeq> found;
  for_each_induced_path(
      g, y2, y3, removed, [](const std::vector<Vertex>&, const VertexMask&) { return true; },
      [&](const std::vector<Vertex>& q) {
        // y1 needs independent paths to y2 and y3 avoiding the interior of q.
        VertexMask blocked(n, 0);
        for (std::size_t i = 1; i + 1 < q.size(); ++i) blocked[static_cast<std::size_t>(q[i])] = 1;
        VertexFlow f(g, {y1}, make_set({y2, y3}), blocked, 1);
        if (f.run(2) < 2) return true;
        auto paths = f.paths();
        const PathSeq& to2 = paths[0].back() == y2 ? paths[0] : paths[1];
        const PathSeq& to3 = paths[0].back() == y2 ? paths[1] : paths[0];
        std::vector<Vertex> cyc = to2.vertices();  // y1 ... y2
        for (std::size_t i = 1; i < q.size(); ++i) cyc.push_back(q[i]);  // ... y3
        for (std::size_t i = to3.size() - 1; i-- > 1;) cyc.push_back(to3[i]);  // back toward y1
        found = CycleSeq(std::move(cyc));
        return false;
      },
      deadline);
  return found;
}

inline std::vector<VertexSet> two_cuts(const Graph& g) {
  std::vector<VertexSet> out;
  for (Vertex a = 0; a < g.order(); ++a)
    for (Vertex b = a + 1; b < g.order(); ++b)
      if (is_two_cut(g, {a, b})) out.push_back({a, b});
  return out;
}

inline VertexSet component_of(const Graph& g, const VertexSet& s, Vertex y) {
  Components c = components(g, mask_of(static_cast<std::size_t>(g.order()), s));
  return c.members(c.id[static_cast<std::size_t>(y)]);
}

inline std::optional<CycleObstruction> find_cycle_obstruction(const Graph& g, Vertex y1, Vertex y2, Vertex y3,
                                                              const Deadline& deadline) {
  using K = CycleObstruction::Kind;
  std::array<Vertex, 3> ys{y1, y2, y3};
  auto cuts = two_cuts(g);
  auto avoids = [&](const VertexSet& s, Vertex y) { return !set_contains(s, y); };
  // Kind i: one cut separating all three.
  for (const auto& s : cuts) {
    if (!avoids(s, y1) || !avoids(s, y2) || !avoids(s, y3)) continue;
    Components c = components(g, mask_of(static_cast<std::size_t>(g.order()), s));
    int a = c.id[static_cast<std::size_t>(y1)], b = c.id[static_cast<std::size_t>(y2)], d = c.id[static_cast<std::size_t>(y3)];
    if (a == b || a == d || b == d) continue;
    CycleObstruction ob;
    ob.kind = K::disjoint_2_cut;
    ob.cuts = {s, s, s};
    ob.parts = {c.members(a), c.members(b), c.members(d)};
    return ob;
  }
  // Per-terminal cuts.
  std::array<std::vector<VertexSet>, 3> per;
  for (int i = 0; i < 3; ++i)
    for (const auto& s : cuts)
      if (avoids(s, ys[static_cast<std::size_t>(i)])) per[static_cast<std::size_t>(i)].push_back(s);
  // Kind ii: cuts sharing z, minimal parts.
  for (Vertex z = 0; z < g.order(); ++z) {
    for (const auto& s1 : per[0]) {
      if (!set_contains(s1, z)) continue;
      VertexSet d1 = component_of(g, s1, y1);
      for (const auto& s2 : per[1]) {
        if (!set_contains(s2, z) || s2 == s1) continue;
        VertexSet d2 = component_of(g, s2, y2);
        if (!sets_disjoint(d1, d2)) continue;
        for (const auto& s3 : per[2]) {
          deadline.check();
          if (!set_contains(s3, z) || s3 == s1 || s3 == s2) continue;
          VertexSet d3 = component_of(g, s3, y3);
          if (!sets_disjoint(d1, d3) || !sets_disjoint(d2, d3)) continue;
          CycleObstruction ob;
          ob.kind = K::shared_vertex_cuts;
          ob.cuts = {s1, s2, s3};
          ob.parts = {d1, d2, d3};
          ob.shared = z;
          return ob;
        }
      }
    }
  }
  // Kind iii: pairwise disjoint cuts; parts are the terminal's component plus
  // any further components of g - S_i free of the other terminals.
  auto options = [&](const VertexSet& s, int i) {
    Components c = components(g, mask_of(static_cast<std::size_t>(g.order()), s));
    int home = c.id[static_cast<std::size_t>(ys[static_cast<std::size_t>(i)])];
    std::vector<int> extra;
    for (int k = 0; k < c.count; ++k) {
      if (k == home) continue;
      bool free = true;
      for (int j = 0; j < 3; ++j)
        if (j != i && c.id[static_cast<std::size_t>(ys[static_cast<std::size_t>(j)])] == k) free = false;
      if (free) extra.push_back(k);
    }
    std::vector<VertexSet> out;
    for (unsigned mask = 0; mask < (1u << extra.size()); ++mask) {
      VertexSet d = c.members(home);
      for (std::size_t k = 0; k < extra.size(); ++k)
        if (mask >> k & 1u) d = set_union(d, c.members(extra[k]));
      out.push_back(std::move(d));
    }
    return out;
  };
  for (const auto& s1 : per[0])
    for (const auto& s2 : per[1]) {
      if (!sets_disjoint(s1, s2)) continue;
      for (const auto& s3 : per[2]) {
        if (!sets_disjoint(s1, s3) || !sets_disjoint(s2, s3)) continue;
        for (const auto& d1 : options(s1, 0))
          for (const auto& d2 : options(s2, 1)) {
            if (!sets_disjoint(d1, d2)) continue;
            for (const auto& d3 : options(s3, 2)) {
              deadline.check();
              if (!sets_disjoint(d1, d3) || !sets_disjoint(d2, d3)) continue;
              CycleObstruction ob;
              ob.kind = K::three_disjoint_cuts;
              ob.cuts = {s1, s2, s3};
              ob.parts = {d1, d2, d3};
              VertexMask removed = mask_of(static_cast<std::size_t>(g.order()), set_union(set_union(d1, d2), d3));
              auto comps = component_sets(g, removed);
              if (comps.size() != 2) continue;
              ob.spine = std::array<VertexSet, 2>{comps[0], comps[1]};
              if (verify_cycle_obstruction(g, y1, y2, y3, ob)) return ob;
            }
          }
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// A cycle through y1, y2, y3 in the 2-connected graph g, or an obstruction
/// of one of the three 2-cut shapes (preferred in that order).
inline CycleResult cycle_through_three(const Graph& g, Vertex y1, Vertex y2, Vertex y3,
                                       const Deadline& deadline = Deadline::never()) {
  std::array<Vertex, 3> ys{y1, y2, y3};
  for (Vertex v : ys)
    if (!g.contains(v)) throw GraphError("cycle_through_three: terminal out of range");
  if (!all_distinct(ys)) throw std::invalid_argument("cycle_through_three: terminals must be distinct");
  if (!is_2_connected(g)) throw std::invalid_argument("cycle_through_three: graph is not 2-connected");
  if (auto c = detail::find_cycle_through(g, y1, y2, y3, deadline)) return *c;
  auto ob = detail::find_cycle_obstruction(g, y1, y2, y3, deadline);
  if (!ob) throw DichotomyFailure("cycle_through_three: neither cycle nor obstruction found");
  return *ob;
}

}  // namespace tk5
