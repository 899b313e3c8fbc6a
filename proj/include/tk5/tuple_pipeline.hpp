#pragma once

// The path systems around a nonseparating path through y2 (the Y/Z pair,
// the A/B/C triple, the P/Q pair), the TK5 patterns they support, and the
// top-level classifier over the four outcomes.

#include <algorithm>
#include <array>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "tk5/bridges.hpp"
#include "tk5/connectivity.hpp"
#include "tk5/deadline.hpp"
#include "tk5/gadget.hpp"
#include "tk5/graph.hpp"
#include "tk5/linkage.hpp"
#include "tk5/nonsep_path.hpp"
#include "tk5/subdivision.hpp"
#include "tk5/traversal.hpp"

namespace tk5 {

// ---------------------------------------------------------------------------
// Nine- and eleven-tuples

struct NineTuple {
  Graph g;
  PathSeq x;  // x1 ... w1 y2 w3 ... x2
  TheoremRoles roles;
};

/// Orders the w's along p and detours p through y2 between w1 and w3.
inline NineTuple make_nine_tuple(const Graph& g, TheoremRoles r, const PathSeq& p) {
  for (Vertex w : r.w)
    if (!p.contains(w)) throw PreconditionError("w_off_path", "every w must lie on the path");
  std::sort(r.w.begin(), r.w.end(), [&](Vertex a, Vertex b) { return *p.position(a) < *p.position(b); });
  PathSeq x = concat({subpath(p, r.x1, r.w[0]), PathSeq({r.w[0], r.y2, r.w[2]}), subpath(p, r.w[2], r.x2)});
  return {g, x, r};
}

/// Throws PreconditionError naming the first failed condition. Inducedness
/// is checked in G' - x1x2 apart from the K4-minus edges y2x1 and y2x2,
/// which any path through x1, y2, x2 carries as chords.
inline void check_nine(const NineTuple& t) {
  const TheoremRoles& r = t.roles;
  Graph gp = gprime(t.g, r);
  const PathSeq& x = t.x;
  if (x.size() < 3 || !is_valid_path(gp, x) || x.front() != r.x1 || x.back() != r.x2)
    throw PreconditionError("x_not_path", "X must be an x1-x2 path of G'");
  if (x.contains(r.y1)) throw PreconditionError("y1_on_x", "y1 lies on X");
  auto py = x.position(r.y2);
  if (!py || *py == 0 || *py + 1 >= x.size() || x[*py - 1] != r.w[0] || x[*py + 1] != r.w[2])
    throw PreconditionError("w_edges_missing", "X must contain w1 y2 w3 consecutively");
  std::array<Edge, 3> ignored{make_edge(r.x1, r.x2), make_edge(r.y2, r.x1), make_edge(r.y2, r.x2)};
  if (!is_induced_path(gp, x, ignored)) throw PreconditionError("x_not_induced", "X has a chord in G' - x1x2");
  if (!is_2_connected(gp, mask_of(static_cast<std::size_t>(gp.order()), x.vertex_set())))
    throw PreconditionError("complement_not_2_connected", "G' - X is not 2-connected");
}

struct ElevenTuple {
  NineTuple nine;
  Vertex z1 = kNoVertex, z2 = kNoVertex;
  PathSeq y;  // y1 -> y2
  PathSeq z;  // z1 -> z2
};

/// H = G' minus the vertices of X other than y2, z1, z2 and minus the
/// edges of X. Ids are kept; the dropped vertices are isolated and masked.
struct HGraph {
  Graph graph;
  VertexMask removed;
};

inline HGraph h_graph(const NineTuple& t, Vertex z1, Vertex z2) {
  Graph gp = gprime(t.g, t.roles);
  std::vector<Edge> xe = t.x.edges();
  VertexMask removed = mask_of(static_cast<std::size_t>(gp.order()), t.x.vertex_set());
  for (Vertex v : {t.roles.y2, z1, z2}) removed[static_cast<std::size_t>(v)] = 0;
  return {isolate_vertices(remove_edges(gp, xe), removed), removed};
}

inline void check_eleven(const ElevenTuple& e) {
  check_nine(e.nine);
  const PathSeq& x = e.nine.x;
  const TheoremRoles& r = e.nine.roles;
  std::size_t py = *x.position(r.y2);
  auto p1 = x.position(e.z1), p2 = x.position(e.z2);
  if (!p1 || *p1 == 0 || *p1 >= py) throw PreconditionError("z1_misplaced", "z1 must be inside x1Xy2");
  if (!p2 || *p2 <= py || *p2 + 1 >= x.size()) throw PreconditionError("z2_misplaced", "z2 must be inside x2Xy2");
  HGraph h = h_graph(e.nine, e.z1, e.z2);
  auto inside = [&](const PathSeq& p) {
    return is_valid_path(h.graph, p) &&
           std::none_of(p.vertices().begin(), p.vertices().end(),
                        [&](Vertex v) { return h.removed[static_cast<std::size_t>(v)] != 0; });
  };
  if (!inside(e.y) || e.y.front() != r.y1 || e.y.back() != r.y2)
    throw PreconditionError("y_path_invalid", "Y must be a y1-y2 path of H");
  if (!inside(e.z) || e.z.front() != e.z1 || e.z.back() != e.z2)
    throw PreconditionError("z_path_invalid", "Z must be a z1-z2 path of H");
  if (!sets_disjoint(e.y.vertex_set(), e.z.vertex_set())) throw PreconditionError("yz_not_disjoint", "Y and Z meet");
  VertexMask rm = h.removed;
  rm[static_cast<std::size_t>(r.y2)] = 1;
  if (!is_2_connected(h.graph, rm)) throw PreconditionError("h_minus_y2_not_2_connected", "H - y2 is not 2-connected");
}

/// The pair (z1, z2) with the longest z1Xz2 whose H links y1-y2 and z1-z2
/// disjointly; ties go to the lexicographically smallest pair.
inline std::optional<ElevenTuple> find_eleven_tuple(const NineTuple& t, const Deadline& deadline = Deadline::never()) {
  check_nine(t);
  const PathSeq& x = t.x;
  std::size_t py = *x.position(t.roles.y2);
  std::vector<std::tuple<std::size_t, Vertex, Vertex>> cand;
  for (std::size_t i = 1; i < py; ++i)
    for (std::size_t j = py + 1; j + 1 < x.size(); ++j) cand.emplace_back(j - i, x[i], x[j]);
  std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::make_pair(std::get<1>(a), std::get<2>(a)) < std::make_pair(std::get<1>(b), std::get<2>(b));
  });
  for (auto [len, z1, z2] : cand) {
    deadline.check();
    HGraph h = h_graph(t, z1, z2);
    if (auto yz = find_two_paths(h.graph, t.roles.y1, t.roles.y2, z1, z2, deadline))
      return ElevenTuple{t, z1, z2, yz->first, yz->second};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace detail {

/// The side of an A/B/C triple: A and C run from zi to y1, B from y2 to zo.
struct TupleSide {
  int i = 1;
  Vertex zi = kNoVertex, zo = kNoVertex, xi = kNoVertex, xo = kNoVertex;
};

inline TupleSide tuple_side(const ElevenTuple& e, int i) {
  const TheoremRoles& r = e.nine.roles;
  if (i == 1) return {1, e.z1, e.z2, r.x1, r.x2};
  return {2, e.z2, e.z1, r.x2, r.x1};
}

/// Shortest path from s to some target whose interior avoids the removed
/// vertices and the targets.
inline std::optional<PathSeq> path_to_set(const Graph& g, Vertex s, const VertexSet& targets, const VertexMask& removed) {
  const auto n = static_cast<std::size_t>(g.order());
  VertexMask is_target = mask_of(n, targets);
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<char> seen(n, 0);
  std::queue<Vertex> q;
  q.push(s);
  seen[static_cast<std::size_t>(s)] = 1;
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      auto wi = static_cast<std::size_t>(w);
      if (seen[wi]) continue;
      if (is_target[wi]) {
        std::vector<Vertex> out{w};
        for (Vertex u = v; u != kNoVertex; u = parent[static_cast<std::size_t>(u)]) out.push_back(u);
        std::reverse(out.begin(), out.end());
        return PathSeq(std::move(out));
      }
      if (is_removed(removed, w)) continue;
      seen[wi] = 1;
      parent[wi] = v;
      q.push(w);
    }
  }
  return std::nullopt;
}

/// A path through t[0], t[1], t[2], t[3] in this order in h minus the
/// removed vertices. Each stretch may be taken induced, so the first two
/// are enumerated as induced paths and the last is a shortest path.
inline std::optional<PathSeq> ordered_path(const Graph& h, const VertexMask& removed, const std::array<Vertex, 4>& t,
                                           const Deadline& deadline) {
  const auto n = static_cast<std::size_t>(h.order());
  auto base = [&]() { return removed.empty() ? VertexMask(n, 0) : removed; };
  VertexMask r1 = base();
  r1[static_cast<std::size_t>(t[2])] = r1[static_cast<std::size_t>(t[3])] = 1;
  std::optional<PathSeq> found;
  for_each_induced_path(
      h, t[0], t[1], r1, [](const std::vector<Vertex>&, const VertexMask&) { return true; },
      [&](const std::vector<Vertex>& s1) {
        VertexMask r2 = base();
        for (Vertex v : s1) r2[static_cast<std::size_t>(v)] = 1;
        r2[static_cast<std::size_t>(t[1])] = 0;
        r2[static_cast<std::size_t>(t[3])] = 1;
        for_each_induced_path(
            h, t[1], t[2], r2, [](const std::vector<Vertex>&, const VertexMask&) { return true; },
            [&](const std::vector<Vertex>& s2) {
              VertexMask r3 = base();
              for (Vertex v : s1) r3[static_cast<std::size_t>(v)] = 1;
              for (Vertex v : s2) r3[static_cast<std::size_t>(v)] = 1;
              r3[static_cast<std::size_t>(t[2])] = 0;
              auto s3 = shortest_path(h, t[2], t[3], r3);
              if (!s3) return true;
              found = concat({PathSeq(s1), PathSeq(s2), *s3});
              return false;
            },
            deadline);
        return !found;
      },
      deadline);
  return found;
}

/// A path of H through zi, zo, y1, y2 in order gives branch x1, x2, y1, y2, zo.
inline std::optional<TK5Certificate> tk5_from_ordered_path(const ElevenTuple& e, const TupleSide& s, const PathSeq& p) {
  const TheoremRoles& r = e.nine.roles;
  const PathSeq& x = e.nine.x;
  std::vector<ArcWiring> w{{s.zo, s.xo, {subpath(x, s.zo, s.xo)}},
                           {s.zo, r.y2, {subpath(x, s.zo, r.y2)}},
                           {s.zo, s.xi, {subpath(p, s.zo, s.zi), subpath(x, s.zi, s.xi)}},
                           {s.zo, r.y1, {subpath(p, s.zo, r.y1)}},
                           {r.y1, r.y2, {subpath(p, r.y1, r.y2)}}};
  add_k4_minus_arcs(w, r);
  return try_assemble(e.nine.g, r, {r.x1, r.x2, r.y1, r.y2, s.zo}, w);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// A, B, C

/// Size key of a bridge family: edges, then vertices.
inline std::pair<std::size_t, std::size_t> bridge_size(const std::vector<BridgeRec>& bs) {
  std::size_t e = 0, v = 0;
  for (const auto& b : bs) {
    e += b.edges.size();
    v += b.core.size();
  }
  return {e, v};
}

struct AbcChoice {
  PathSeq a, c;             // zi -> y1
  BridgeRec j_bridge;       // the (A u C)-bridge containing y2
  std::vector<BridgeRec> l_union;
  bool j_in_l = false;

  /// Ladder key, larger is better: J inside L, then |J|, then |L|.
  std::tuple<bool, std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> key() const {
    return {j_in_l, bridge_size({j_bridge}), bridge_size(l_union)};
  }
};

/// Evaluates a pair (A, C) of internally disjoint zi-y1 paths of H: nothing
/// when y2 and zo are separated by A u C.
inline std::optional<AbcChoice> evaluate_ac(const HGraph& h, Vertex zi, Vertex zo, Vertex y1, Vertex y2, const PathSeq& a,
                                            const PathSeq& c) {
  VertexSet ac = set_union(a.vertex_set(), c.vertex_set());
  std::vector<Edge> ace = a.edges();
  for (const Edge& e : c.edges()) ace.push_back(e);
  std::sort(ace.begin(), ace.end());
  ace.erase(std::unique(ace.begin(), ace.end()), ace.end());
  VertexSet a_in = set_difference(a.vertex_set(), make_set({zi, y1}));
  VertexSet c_in = set_difference(c.vertex_set(), make_set({zi, y1}));
  AbcChoice ch{a, c, {}, {}, false};
  bool have_j = false;
  for (BridgeRec& b : enumerate_bridges(h.graph, SubgraphSpec{ac, ace})) {
    if (b.kind == BridgeRec::Kind::component && !h.removed.empty() &&
        h.removed[static_cast<std::size_t>(b.core.front())])
      continue;
    bool meets_a = !sets_disjoint(b.attachments, a_in), meets_c = !sets_disjoint(b.attachments, c_in);
    bool is_j = b.kind == BridgeRec::Kind::component && set_contains(b.core, y2);
    if (is_j) {
      if (!set_contains(b.core, zo)) return std::nullopt;
      ch.j_bridge = b;
      ch.j_in_l = meets_a && meets_c;
      have_j = true;
    }
    if (meets_a && meets_c) ch.l_union.push_back(std::move(b));
  }
  if (!have_j) return std::nullopt;
  return ch;
}

struct AbcResult {
  int side = 1;
  PathSeq a, b, c;
  AbcChoice best;
  std::vector<AbcChoice> ties;  // every ladder-optimal (A, C), best first
};

struct AbcFailure {
  std::optional<TK5Certificate> tk5;  // a TK5 in G' when a path through zi, zo, y1, y2 exists
  std::string reason;
};

/// The ladder-optimal A, B, C of h for one side (A, C from zi to y1, B from
/// y2 to zo): induced; J(A,C) inside L(A,C) when possible; |J| largest;
/// |L| largest; then lexicographic. At most path_cap induced zi-y1 paths
/// are considered.
inline std::optional<AbcResult> abc_in_h(const HGraph& h, Vertex zi, Vertex zo, Vertex y1, Vertex y2,
                                         const Deadline& deadline = Deadline::never(), std::size_t path_cap = 2000) {
  VertexMask rm = h.removed.empty() ? VertexMask(static_cast<std::size_t>(h.graph.order()), 0) : h.removed;
  rm[static_cast<std::size_t>(y2)] = rm[static_cast<std::size_t>(zo)] = 1;
  std::vector<PathSeq> paths;
  detail::for_each_induced_path(
      h.graph, zi, y1, rm, [](const std::vector<Vertex>&, const VertexMask&) { return true; },
      [&](const std::vector<Vertex>& p) {
        paths.emplace_back(p);
        return paths.size() < path_cap;
      },
      deadline);
  std::sort(paths.begin(), paths.end());
  std::vector<AbcChoice> best;
  for (std::size_t k = 0; k < paths.size(); ++k)
    for (std::size_t l = k + 1; l < paths.size(); ++l) {
      deadline.check();
      if (!sets_disjoint(make_set(paths[k].interior()), make_set(paths[l].interior()))) continue;
      auto ch = evaluate_ac(h, zi, zo, y1, y2, paths[k], paths[l]);
      if (!ch) continue;
      if (best.empty() || ch->key() > best.front().key()) {
        best.assign(1, *ch);
      } else if (ch->key() == best.front().key()) {
        best.push_back(*ch);
      }
    }
  if (best.empty()) return std::nullopt;
  AbcResult res;
  res.best = best.front();
  res.ties = best;
  res.a = res.best.a;
  res.c = res.best.c;
  VertexMask outside(static_cast<std::size_t>(h.graph.order()), 1);
  for (Vertex v : res.best.j_bridge.core) outside[static_cast<std::size_t>(v)] = 0;
  res.b = *shortest_path(h.graph, y2, zo, outside);
  return res;
}

/// The A, B, C triple of the first side admitting one. A path of H through
/// zi, zo, y1, y2 in order is turned into a TK5 and reported as failure
/// instead.
inline std::variant<AbcResult, AbcFailure> find_abc(const ElevenTuple& e, const Deadline& deadline = Deadline::never(),
                                                    std::size_t path_cap = 2000) {
  check_eleven(e);
  const TheoremRoles& r = e.nine.roles;
  HGraph h = h_graph(e.nine, e.z1, e.z2);
  for (int i : {1, 2}) {
    detail::TupleSide s = detail::tuple_side(e, i);
    if (auto p = detail::ordered_path(h.graph, h.removed, {s.zi, s.zo, r.y1, r.y2}, deadline)) {
      AbcFailure f{detail::tk5_from_ordered_path(e, s, *p), "path through z" + std::to_string(i) + ", z" +
                                                             std::to_string(3 - i) + ", y1, y2 in order"};
      return f;
    }
  }
  for (int i : {1, 2}) {
    detail::TupleSide s = detail::tuple_side(e, i);
    if (auto res = abc_in_h(h, s.zi, s.zo, r.y1, r.y2, deadline, path_cap)) {
      res->side = i;
      return *res;
    }
  }
  return AbcFailure{std::nullopt, "no independent A, B, C on either side"};
}

// ---------------------------------------------------------------------------
// P, Q and the assembled structure

struct StructureBundle {
  int side = 1;
  PathSeq a, b, c, p, q;
  std::optional<PathSeq> qprime;  // y1 -> Q - a, internally disjoint from K
  BridgeRec j_bridge;
  std::vector<BridgeRec> l_union;
  SubgraphSpec b_prime;
  SubgraphSpec k_union;
  bool z_edge_in_x = false;  // zo xo is an edge of X
};

struct PqFailure {
  std::string reason;
};

namespace detail {

inline SubgraphSpec spec_union(std::initializer_list<SubgraphSpec> parts) {
  SubgraphSpec out;
  for (const auto& p : parts) {
    out.vertices = set_union(out.vertices, p.vertices);
    for (auto [u, v] : p.edges) out.edges.push_back(make_edge(u, v));
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

/// B together with the B-bridges of H that avoid A u C, as an induced subgraph.
inline SubgraphSpec b_prime_of(const HGraph& h, const PathSeq& b, const VertexSet& ac) {
  VertexMask rm = h.removed.empty() ? VertexMask(static_cast<std::size_t>(h.graph.order()), 0) : h.removed;
  for (Vertex v : b.vertices()) rm[static_cast<std::size_t>(v)] = 1;
  VertexSet vs = b.vertex_set();
  for (const VertexSet& comp : component_sets(h.graph, rm))
    if (sets_disjoint(neighborhood(h.graph, comp), ac) && sets_disjoint(comp, ac)) vs = set_union(vs, comp);
  SubgraphSpec s{vs, {}};
  for (auto [u, v] : h.graph.edges())
    if (set_contains(vs, u) && set_contains(vs, v)) s.edges.emplace_back(u, v);
  return s;
}

}  // namespace detail

/// The pair ordering key: |qBzo| ascending, |pBzo| descending, then
/// |aAy1| + |cCzi| ascending (lengths in vertices).
using PqKey = std::tuple<std::size_t, long, std::size_t>;

inline PqKey pq_key(const PathSeq& a, const PathSeq& b, const PathSeq& c, Vertex p, Vertex q, Vertex av, Vertex cv) {
  std::size_t ip = *b.position(p), iq = *b.position(q), ia = *a.position(av), ic = *c.position(cv);
  return {b.size() - iq, -static_cast<long>(b.size() - ip), (a.size() - ia) + (ic + 1)};
}

/// Disjoint P (p -> C) and Q (q -> A) in h from B - y2, internally disjoint
/// from A u B u C, with y2, p, q, zo in order on B and a, c off {zi, y1};
/// the least pq_key wins. A and C may swap roles and B ranges over induced
/// y2-zo paths inside J(A, C), over the ladder ties.
inline std::variant<StructureBundle, PqFailure> pq_in_h(const HGraph& h, Vertex zo, Vertex y1, Vertex y2,
                                                        const AbcResult& abc,
                                                        const Deadline& deadline = Deadline::never(),
                                                        std::size_t b_cap = 8, std::size_t tie_cap = 8) {
  const auto n = static_cast<std::size_t>(h.graph.order());
  const VertexMask base = h.removed.empty() ? VertexMask(n, 0) : h.removed;
  struct Best {
    PqKey key;
    PathSeq a, b, c, p, q;
    const AbcChoice* choice;
  };
  std::optional<Best> best;
  for (std::size_t t = 0; t < abc.ties.size() && t < tie_cap; ++t) {
    const AbcChoice& ch = abc.ties[t];
    std::vector<PathSeq> bs;
    VertexMask outside(n, 1);
    for (Vertex v : ch.j_bridge.core) outside[static_cast<std::size_t>(v)] = 0;
    detail::for_each_induced_path(
        h.graph, y2, zo, outside, [](const std::vector<Vertex>&, const VertexMask&) { return true; },
        [&](const std::vector<Vertex>& p) {
          bs.emplace_back(p);
          return bs.size() < b_cap;
        },
        deadline);
    for (int swap = 0; swap < 2; ++swap) {
      const PathSeq& a = swap ? ch.c : ch.a;
      const PathSeq& c = swap ? ch.a : ch.c;
      for (const PathSeq& b : bs) {
        VertexSet abc_set = set_union(set_union(a.vertex_set(), b.vertex_set()), c.vertex_set());
        std::vector<std::tuple<PqKey, Vertex, Vertex, Vertex, Vertex>> tuples;
        for (std::size_t ip = 1; ip < b.size(); ++ip)
          for (std::size_t iq = ip + 1; iq < b.size(); ++iq)
            for (std::size_t ia = 1; ia + 1 < a.size(); ++ia)
              for (std::size_t ic = 1; ic + 1 < c.size(); ++ic)
                tuples.emplace_back(pq_key(a, b, c, b[ip], b[iq], a[ia], c[ic]), b[ip], b[iq], a[ia], c[ic]);
        std::sort(tuples.begin(), tuples.end());
        for (auto& [k, p, q, av, cv] : tuples) {
          if (best && !(k < best->key)) break;
          deadline.check();
          VertexMask drop = base;
          for (Vertex v : abc_set) drop[static_cast<std::size_t>(v)] = 1;
          for (Vertex v : {p, q, av, cv}) drop[static_cast<std::size_t>(v)] = 0;
          Graph sub = isolate_vertices(h.graph, drop);
          if (auto pq = find_two_paths(sub, p, cv, q, av, deadline)) {
            best = Best{k, a, b, c, pq->first, pq->second, &ch};
            break;
          }
        }
      }
    }
  }
  if (!best) return PqFailure{"no disjoint P, Q from B into both A and C"};

  StructureBundle out;
  out.side = abc.side;
  out.a = best->a;
  out.b = best->b;
  out.c = best->c;
  out.p = best->p;
  out.q = best->q;
  out.j_bridge = best->choice->j_bridge;
  out.l_union = best->choice->l_union;
  VertexSet ac = set_union(out.a.vertex_set(), out.c.vertex_set());
  out.b_prime = detail::b_prime_of(h, out.b, ac);
  out.k_union = detail::spec_union({SubgraphSpec::of_path(out.a), out.b_prime, SubgraphSpec::of_path(out.c),
                                    SubgraphSpec::of_path(out.p), SubgraphSpec::of_path(out.q)});
  VertexSet q_targets = out.q.vertex_set();
  q_targets.erase(std::find(q_targets.begin(), q_targets.end(), out.q.back()));
  VertexMask rm = base;
  for (Vertex v : out.k_union.vertices) rm[static_cast<std::size_t>(v)] = 1;
  rm[static_cast<std::size_t>(y1)] = 0;
  if (!set_contains(q_targets, y1)) out.qprime = detail::path_to_set(h.graph, y1, q_targets, rm);
  return out;
}

inline std::variant<StructureBundle, PqFailure> find_pq(const ElevenTuple& e, const AbcResult& abc,
                                                        const Deadline& deadline = Deadline::never(),
                                                        std::size_t b_cap = 8, std::size_t tie_cap = 8) {
  check_eleven(e);
  HGraph h = h_graph(e.nine, e.z1, e.z2);
  detail::TupleSide s = detail::tuple_side(e, abc.side);
  auto res = pq_in_h(h, s.zo, e.nine.roles.y1, e.nine.roles.y2, abc, deadline, b_cap, tie_cap);
  if (auto* sb = std::get_if<StructureBundle>(&res)) {
    sb->side = abc.side;
    auto pz = e.nine.x.position(s.zo), px = e.nine.x.position(s.xo);
    sb->z_edge_in_x = pz && px && (*pz + 1 == *px || *px + 1 == *pz);
  }
  return res;
}

/// Checks the path shapes of a bundle inside h.
inline bool verify_structure_in_h(const HGraph& h, Vertex zi, Vertex zo, Vertex y1, Vertex y2,
                                  const StructureBundle& sb) {
  auto in_h = [&](const PathSeq& p) {
    return p.size() >= 2 && is_valid_path(h.graph, p) &&
           std::none_of(p.vertices().begin(), p.vertices().end(),
                        [&](Vertex v) { return !h.removed.empty() && h.removed[static_cast<std::size_t>(v)] != 0; });
  };
  for (const PathSeq* p : {&sb.a, &sb.b, &sb.c, &sb.p, &sb.q})
    if (!in_h(*p)) return false;
  if (sb.a.front() != zi || sb.a.back() != y1 || sb.c.front() != zi || sb.c.back() != y1) return false;
  if (sb.b.front() != y2 || sb.b.back() != zo) return false;
  if (!sets_disjoint(make_set(sb.a.interior()), make_set(sb.c.interior())) || sb.a == sb.c) return false;
  VertexSet ac = set_union(sb.a.vertex_set(), sb.c.vertex_set());
  if (!sets_disjoint(ac, sb.b.vertex_set())) return false;
  auto pp = sb.b.position(sb.p.front()), pq = sb.b.position(sb.q.front());
  if (!pp || !pq || *pp == 0 || *pp >= *pq) return false;
  VertexSet a_in = set_difference(sb.a.vertex_set(), make_set({zi, y1}));
  VertexSet c_in = set_difference(sb.c.vertex_set(), make_set({zi, y1}));
  if (!set_contains(c_in, sb.p.back()) || !set_contains(a_in, sb.q.back())) return false;
  if (!sets_disjoint(sb.p.vertex_set(), sb.q.vertex_set())) return false;
  VertexSet abc = set_union(ac, sb.b.vertex_set());
  if (!sets_disjoint(make_set(sb.p.interior()), abc) || !sets_disjoint(make_set(sb.q.interior()), abc)) return false;
  if (sb.qprime) {
    const PathSeq& qp = *sb.qprime;
    if (!in_h(qp) || qp.front() != y1 || !set_contains(sb.q.vertex_set(), qp.back()) || qp.back() == sb.q.back())
      return false;
    if (!sets_disjoint(make_set(qp.interior()), sb.k_union.vertices)) return false;
  }
  return true;
}

inline bool verify_structure(const ElevenTuple& e, const StructureBundle& sb) {
  detail::TupleSide s = detail::tuple_side(e, sb.side);
  return verify_structure_in_h(h_graph(e.nine, e.z1, e.z2), s.zi, s.zo, e.nine.roles.y1, e.nine.roles.y2, sb);
}

// ---------------------------------------------------------------------------
// TK5 patterns over the structure

namespace detail {

/// Paths S in G' from s in aAy1 - a or cCy1 - c to s' in ziXy2 - zi or
/// zoXy2 - zo, internally disjoint from K u X, each closing one of four
/// TK5 patterns with y2 a branch vertex.
inline std::optional<TK5Certificate> tk5_from_structure(const ElevenTuple& e, const StructureBundle& sb) {
  const Graph& g = e.nine.g;
  const TheoremRoles& r = e.nine.roles;
  const PathSeq& x = e.nine.x;
  TupleSide s = tuple_side(e, sb.side);
  HGraph h = h_graph(e.nine, e.z1, e.z2);
  Graph gp = gprime(g, r);
  Vertex av = sb.q.back(), cv = sb.p.back(), p = sb.p.front(), q = sb.q.front();

  // P1, P2: independent paths in B' - y2 from zo to q and p.
  std::optional<PathSeq> p1, p2;
  {
    VertexMask outside(static_cast<std::size_t>(g.order()), 1);
    for (Vertex v : sb.b_prime.vertices) outside[static_cast<std::size_t>(v)] = 0;
    outside[static_cast<std::size_t>(r.y2)] = 1;
    if (q == s.zo) {
      p1 = PathSeq({s.zo});
      VertexMask rm = outside;
      p2 = shortest_path(h.graph, s.zo, p, rm);
    } else if (auto fan = independent_fan(h.graph, s.zo, make_set({p, q}), 2, outside)) {
      for (const PathSeq& f : fan->paths) (f.back() == q ? p1 : p2) = f;
    }
  }

  VertexMask block(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : sb.k_union.vertices) block[static_cast<std::size_t>(v)] = 1;
  for (Vertex v : x.vertices()) block[static_cast<std::size_t>(v)] = 1;
  PathSeq zi_y2 = subpath(x, s.zi, r.y2), zo_y2 = subpath(x, s.zo, r.y2);
  VertexSet near_i(zi_y2.vertices().begin() + 1, zi_y2.vertices().end());
  VertexSet near_o(zo_y2.vertices().begin() + 1, zo_y2.vertices().end());
  near_i = make_set(near_i);
  near_o = make_set(near_o);
  VertexSet targets = set_union(near_i, near_o);
  std::array<Vertex, 5> b_i{r.x1, r.x2, r.y1, r.y2, s.zi}, b_o{r.x1, r.x2, r.y1, r.y2, s.zo};
  std::sort(b_i.begin(), b_i.end());
  std::sort(b_o.begin(), b_o.end());
  PathSeq zo_xo = subpath(x, s.zo, s.xo), zi_xi = subpath(x, s.zi, s.xi);

  for (int from_c = 0; from_c < 2; ++from_c) {
    const PathSeq& path = from_c ? sb.c : sb.a;
    Vertex end = from_c ? cv : av;
    PathSeq tail = subpath(path, end, r.y1);
    for (Vertex sv : tail.interior().empty() && tail.size() < 2 ? std::vector<Vertex>{} : std::vector<Vertex>(tail.vertices().begin() + 1, tail.vertices().end())) {
      VertexMask rm = block;
      auto sp = path_to_set(gp, sv, targets, rm);
      if (!sp) continue;
      Vertex sprime = sp->back();
      PathSeq y1_s = subpath(path, r.y1, sv);
      std::vector<ArcWiring> w;
      std::array<Vertex, 5> branch;
      if (set_contains(near_i, sprime)) {
        if (!p1 || !p2) continue;
        PathSeq close = subpath(x, sprime, r.y2);
        branch = b_o;
        w = {{s.zo, s.xo, {zo_xo}}, {s.zo, r.y2, {zo_y2}}, {r.y1, r.y2, {y1_s, *sp, close}}};
        if (!from_c) {
          w.push_back({s.zo, r.y1, {*p2, sb.p, subpath(sb.c, cv, r.y1)}});
          w.push_back({s.zo, s.xi, {*p1, sb.q, subpath(sb.a, av, s.zi), zi_xi}});
        } else {
          w.push_back({s.zo, s.xi, {*p2, sb.p, subpath(sb.c, cv, s.zi), zi_xi}});
          w.push_back({s.zo, r.y1, {*p1, sb.q, subpath(sb.a, av, r.y1)}});
        }
      } else {
        PathSeq close = subpath(x, sprime, r.y2);
        branch = b_i;
        w = {{s.zi, s.xi, {zi_xi}}, {s.zi, r.y2, {zi_y2}}, {r.y1, r.y2, {y1_s, *sp, close}}};
        if (!from_c) {
          w.push_back({s.zi, r.y1, {sb.c}});
          w.push_back({s.zi, s.xo, {subpath(sb.a, s.zi, av), sb.q, subpath(sb.b, q, s.zo), zo_xo}});
        } else {
          w.push_back({s.zi, r.y1, {sb.a}});
          w.push_back({s.zi, s.xo, {subpath(sb.c, s.zi, cv), sb.p, subpath(sb.b, p, s.zo), zo_xo}});
        }
      }
      add_k4_minus_arcs(w, r);
      if (auto t = try_assemble(g, r, branch, w)) return t;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classifier

struct OutcomeTk5NoY2 {
  TK5Certificate cert;
};
struct OutcomeK4Minus {
  K4MinusCertificate cert;
};
struct OutcomeGadget {
  ApexWheelSeparation sep;
};
struct OutcomeTk5GPrime {
  TK5Certificate cert;
};

/// Outcomes (i)-(iv) in that order.
using TheoremOutcome = std::variant<OutcomeTk5NoY2, OutcomeK4Minus, OutcomeGadget, OutcomeTk5GPrime>;

inline int outcome_number(const TheoremOutcome& o) { return static_cast<int>(o.index()) + 1; }

inline bool verify_theorem_outcome(const Graph& g, const TheoremRoles& r, const TheoremOutcome& o) {
  switch (o.index()) {
    case 0:
      return verify_tk5(g, std::get<0>(o).cert, avoid_y2_constraints(r));
    case 1:
      return verify_k4_minus(g, std::get<1>(o).cert, {r.y2});
    case 2:
      return std::get<2>(o).sep.correspondence.y2 == r.y2 && verify_gadget_separation(g, std::get<2>(o).sep);
    default:
      return verify_tk5(g, std::get<3>(o).cert, gprime_constraints(r));
  }
}

struct ClassifyTimeout {
  std::string stage;  // deepest stage reached
};

struct ClassifyOptions {
  long long budget_ms = 60000;
  int threads = 1;
  double scan_share = 0.10;
  double pipeline_share = 0.45;
};

struct ClassifyReport {
  std::variant<TheoremOutcome, ClassifyTimeout> result;
  std::vector<std::string> stages;  // stages entered, in order
};

/// Scans for K4-minus avoiding y2 and the gadget, runs the structural
/// pipeline (which may yield a G' certificate), then searches for a TK5 with
/// y2 not a branch vertex before settling for a G' certificate. Outcomes
/// are returned only after re-verification.
inline ClassifyReport classify_theorem1(const Graph& g, const TheoremRoles& r, const ClassifyOptions& opt = {}) {
  check_theorem_roles(g, r);
  Deadline total = Deadline::in_ms(opt.budget_ms);
  ClassifyReport rep;
  auto done = [&](TheoremOutcome o) {
    if (!verify_theorem_outcome(g, r, o)) throw std::logic_error("classify_theorem1: outcome failed verification");
    rep.result = std::move(o);
    return rep;
  };
  // Every stage starts only while budget remains.
  auto enter = [&](const char* s) {
    rep.stages.emplace_back(s);
    if (total.expired()) throw SearchTimeout();
  };

  try {
    enter("scan");
    if (auto k = find_k4_minus(g, {r.y2})) return done(OutcomeK4Minus{*k});
    if (auto s = find_gadget_separation(g, r.y2)) return done(OutcomeGadget{*s});

    std::optional<TK5Certificate> gprime_cert;
    Deadline pipe = total.fraction(opt.pipeline_share / std::max(1e-9, 1.0 - opt.scan_share));
    try {
      enter("reduction");
      ReductionOptions ro;
      ro.scans = false;
      ro.final_tk5_search = false;
      ro.threads = opt.threads;
      auto red = reduction_step(g, r, pipe, ro);
      const PathSeq* path = nullptr;
      if (red) {
        if (auto* iv = std::get_if<PathOrTk5>(&*red)) {
          if (auto* t = std::get_if<TK5Certificate>(&iv->value)) gprime_cert = *t;
          path = std::get_if<PathSeq>(&iv->value);
        }
      }
      if (path) {
        NineTuple nine = make_nine_tuple(g, r, *path);
        check_nine(nine);
        enter("eleven_tuple");
        if (auto e = find_eleven_tuple(nine, pipe)) {
          enter("abc");
          auto abc = find_abc(*e, pipe);
          if (auto* f = std::get_if<AbcFailure>(&abc)) {
            if (f->tk5) gprime_cert = f->tk5;
          } else {
            enter("pq");
            auto pq = find_pq(*e, std::get<AbcResult>(abc), pipe);
            if (auto* sb = std::get_if<StructureBundle>(&pq)) {
              enter("templates");
              if (auto t = detail::tk5_from_structure(*e, *sb)) gprime_cert = *t;
            }
          }
        }
      }
    } catch (const SearchTimeout&) {
      if (total.expired()) throw;
    } catch (const PreconditionError&) {
      // A pipeline invariant failed on this instance; the direct searches below still decide it.
    }

    enter("tk5_search");
    TK5SearchResult i = find_tk5(g, avoid_y2_constraints(r), total, opt.threads);
    if (i.status == SearchStatus::found) return done(OutcomeTk5NoY2{*i.cert});
    if (gprime_cert) return done(OutcomeTk5GPrime{*gprime_cert});
    TK5SearchResult iv = find_tk5(g, gprime_constraints(r), total, opt.threads);
    if (iv.status == SearchStatus::found) return done(OutcomeTk5GPrime{*iv.cert});
    if (i.status == SearchStatus::timeout || iv.status == SearchStatus::timeout) throw SearchTimeout();
  } catch (const SearchTimeout&) {
    rep.result = ClassifyTimeout{rep.stages.back()};
    return rep;
  }
  throw std::logic_error("classify_theorem1: no outcome exists; hypotheses must be violated");
}

}  // namespace tk5
