#pragma once

// Induced nonseparating paths between the two x-vertices of a K4-minus: the
// rerouting loop that makes the complement a chain of blocks, and the
// four-way outcome search that either certifies a small structure directly
// or produces a path through three prescribed neighbors of y2.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tk5/bridges.hpp"
#include "tk5/connectivity.hpp"
#include "tk5/deadline.hpp"
#include "tk5/gadget.hpp"
#include "tk5/graph.hpp"
#include "tk5/linkage.hpp"
#include "tk5/planarity.hpp"
#include "tk5/subdivision.hpp"
#include "tk5/traversal.hpp"

namespace tk5 {

class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string name, const std::string& what)
      : std::invalid_argument(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// ---------------------------------------------------------------------------
// Rerouting loop

struct PlanarSide {
  Separation sep;
  std::vector<Vertex> boundary;  // the cut, in disc order
  DiscEmbedding embedding;       // of side_graph(g, sep, 2, false), local ids
};

struct RefinedPath {
  PathSeq path;
  ChainOfBlocks chain;
};

using Lemma31Outcome = std::variant<PlanarSide, RefinedPath>;

/// (-|chain|, smallest stray component, number of components); smaller is better.
using RefineMeasure = std::array<int, 3>;

struct RefineTrace {
  std::vector<RefineMeasure> measures;  // starting state, then one per accepted move
  bool used_fallback = false;
};

namespace detail {

inline VertexSet all_vertices(int n) {
  VertexSet all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  return all;
}

/// Drops vertices between the ends of every chord except `ignored`, keeping
/// the farthest jump first; the result is induced apart from `ignored`.
inline PathSeq shortcut_path(const Graph& g, const PathSeq& p, Edge ignored) {
  std::vector<Vertex> out{p[0]};
  std::size_t i = 0;
  while (i + 1 < p.size()) {
    std::size_t next = i + 1;
    for (std::size_t j = p.size() - 1; j > i + 1; --j)
      if (g.adjacent(p[i], p[j]) && make_edge(p[i], p[j]) != ignored) {
        next = j;
        break;
      }
    out.push_back(p[next]);
    i = next;
  }
  return PathSeq(std::move(out));
}

struct RefineState {
  PathSeq x;
  std::optional<ChainOfBlocks> chain;
  std::vector<VertexSet> components;
  RefineMeasure measure{};
};

inline RefineState refine_state(const Graph& g, const PathSeq& x, Vertex y1, Vertex y2) {
  RefineState s;
  s.x = x;
  VertexMask removed = mask_of(static_cast<std::size_t>(g.order()), x.vertex_set());
  s.chain = chain_of_blocks(g, y1, y2, removed);
  s.components = component_sets(g, removed);
  int stray = 0;
  for (const auto& c : s.components)
    if (!set_contains(c, y1)) stray = stray == 0 ? static_cast<int>(c.size()) : std::min(stray, static_cast<int>(c.size()));
  int chain_size = s.chain ? static_cast<int>(s.chain->vertex_set().size()) : 0;
  s.measure = {-chain_size, stray, static_cast<int>(s.components.size())};
  return s;
}

/// Replaces the stretch of x between the outermost attachments of d by a
/// shortest path through d. One candidate per attachment pair, widest first.
inline std::vector<PathSeq> reroutes_through(const Graph& g, const PathSeq& x, const VertexSet& d, Edge ignored) {
  std::vector<std::size_t> at;
  for (Vertex v : neighborhood(g, d))
    if (auto p = x.position(v)) at.push_back(*p);
  std::sort(at.begin(), at.end());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < at.size(); ++i)
    for (std::size_t j = i + 1; j < at.size(); ++j) pairs.emplace_back(at[i], at[j]);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](auto a, auto b) { return a.second - a.first > b.second - b.first; });
  std::vector<PathSeq> out;
  VertexMask outside(static_cast<std::size_t>(g.order()), 1);
  for (Vertex v : d) outside[static_cast<std::size_t>(v)] = 0;
  for (auto [i, j] : pairs) {
    Vertex u = x[i], v = x[j];
    VertexMask rm = outside;
    rm[static_cast<std::size_t>(u)] = rm[static_cast<std::size_t>(v)] = 0;
    auto q = shortest_path(g, u, v, rm, {make_edge(u, v)});
    if (!q) continue;
    PathSeq nx = concat({subpath(x, x.front(), u), *q, subpath(x, v, x.back())});
    out.push_back(shortcut_path(g, nx, ignored));
  }
  return out;
}

inline std::optional<PlanarSide> planar_side_for(const Graph& g, const VertexSet& inner, const VertexSet& cut) {
  VertexSet side2 = set_union(inner, cut);
  Separation sep = make_separation(set_difference(all_vertices(g.order()), inner), side2);
  if (!is_valid_separation(g, sep)) return std::nullopt;
  Relabeled r = side_graph(g, sep, 2, false);
  for (const auto& ord : four_cyclic_orders()) {
    std::vector<Vertex> bd, local;
    for (int k : ord) {
      bd.push_back(cut[static_cast<std::size_t>(k)]);
      local.push_back(r.image[static_cast<std::size_t>(cut[static_cast<std::size_t>(k)])]);
    }
    if (auto e = test_disc_embeddable(r.graph, local)) return PlanarSide{sep, bd, *e};
  }
  return std::nullopt;
}

/// A 4-cut whose far side avoids `keep`, has at least two vertices, sees
/// the whole cut, and disc-embeds with the cut on its boundary.
inline std::optional<PlanarSide> find_planar_side(const Graph& g, const VertexSet& keep, const Deadline& deadline) {
  const int n = g.order();
  VertexMask in_keep = mask_of(static_cast<std::size_t>(n), keep);
  std::optional<PlanarSide> found;
  subsets_up_to(n, 4, [&](const VertexSet& t) {
    if (t.size() != 4) return true;
    deadline.check();
    for (const VertexSet& c : component_sets(g, mask_of(static_cast<std::size_t>(n), t))) {
      if (c.size() < 2) continue;
      if (std::any_of(c.begin(), c.end(), [&](Vertex v) { return in_keep[static_cast<std::size_t>(v)] != 0; })) continue;
      if (neighborhood(g, c) != t) continue;
      if ((found = planar_side_for(g, c, t))) return false;
    }
    return true;
  });
  return found;
}

}  // namespace detail

inline bool verify_planar_side(const Graph& g, const PlanarSide& ps, const VertexSet& keep) {
  const Separation& s = ps.sep;
  if (!is_valid_separation(g, s) || s.order() != 4 || s.side2.size() < 6) return false;
  for (Vertex v : keep)
    if (!set_contains(s.side1, v)) return false;
  if (make_set(ps.boundary) != s.cut || ps.boundary.size() != 4) return false;
  Relabeled r = side_graph(g, s, 2, false);
  std::vector<Vertex> local;
  for (Vertex b : ps.boundary) local.push_back(r.image[static_cast<std::size_t>(b)]);
  return verify_disc_embedding(r.graph, local, ps.embedding);
}

inline bool verify_refined_path(const Graph& g, Vertex x1, Vertex x2, Vertex y1, Vertex y2, const VertexSet& b0,
                                const RefinedPath& rp) {
  const PathSeq& x = rp.path;
  if (x.size() < 3 || !is_valid_path(g, x) || x.front() != x1 || x.back() != x2) return false;
  Edge e = make_edge(x1, x2);
  if (!is_induced_path(g, x, std::span<const Edge>(&e, 1))) return false;
  if (x.contains(y1) || x.contains(y2)) return false;
  VertexMask removed = mask_of(static_cast<std::size_t>(g.order()), x.vertex_set());
  auto ch = chain_of_blocks(g, y1, y2, removed);
  if (!ch || !ch->exact() || !verify_chain(g, rp.chain, removed)) return false;
  if (ch->blocks != rp.chain.blocks) return false;
  VertexSet vs = rp.chain.vertex_set();
  return std::all_of(b0.begin(), b0.end(), [&](Vertex v) { return set_contains(vs, v); });
}

inline bool verify_lemma31(const Graph& g, Vertex x1, Vertex x2, Vertex y1, Vertex y2, const VertexSet& b0,
                           const Lemma31Outcome& out) {
  if (auto* ps = std::get_if<PlanarSide>(&out)) return verify_planar_side(g, *ps, set_union(b0, make_set({x1, x2})));
  return verify_refined_path(g, x1, x2, y1, y2, b0, std::get<RefinedPath>(out));
}

/// Reroutes x0 until g - X is a chain of blocks from y1 to y2 containing b0,
/// or reports a 4-separation whose far side disc-embeds on its cut. Every
/// accepted move strictly lowers the measure; when no move does, a direct
/// search over 4-cuts and then over induced paths settles the outcome.
inline Lemma31Outcome refine_nonseparating_path(const Graph& g, Vertex x1, Vertex x2, Vertex y1, Vertex y2,
                                                const PathSeq& x0, const ChainOfBlocks& b0,
                                                const Deadline& deadline = Deadline::never(),
                                                RefineTrace* trace = nullptr) {
  std::array<Vertex, 4> roles{x1, x2, y1, y2};
  for (Vertex v : roles)
    if (!g.contains(v)) throw PreconditionError("roles_out_of_range", "role vertex not in graph");
  if (!all_distinct(roles)) throw PreconditionError("roles_not_distinct", "x1, x2, y1, y2 must differ");
  if (!is_kA_connected(g, 4, make_set({x1, x2, y1, y2})))
    throw PreconditionError("not_4A_connected", "graph is not (4,{x1,x2,y1,y2})-connected");
  if (x0.size() < 3 || !is_valid_path(g, x0) || x0.front() != x1 || x0.back() != x2)
    throw PreconditionError("x0_not_path", "x0 must be an x1-x2 path avoiding the edge x1x2");
  if (x0.contains(y1) || x0.contains(y2)) throw PreconditionError("x0_meets_y", "x0 passes through y1 or y2");
  const VertexSet b0v = b0.vertex_set();
  {
    if (b0.u != y1 || b0.v != y2) throw PreconditionError("b0_ends", "b0 must run from y1 to y2");
    VertexMask removed = mask_of(static_cast<std::size_t>(g.order()), x0.vertex_set());
    auto actual = chain_of_blocks(g, y1, y2, removed);
    if (!actual) throw PreconditionError("b0_missing", "y1 and y2 are disconnected in g - x0");
    VertexSet av = actual->vertex_set();
    if (!std::all_of(b0v.begin(), b0v.end(), [&](Vertex v) { return set_contains(av, v); }))
      throw PreconditionError("b0_missing", "b0 is not inside the y1-y2 chain of g - x0");
  }
  const Edge ignored = make_edge(x1, x2);
  auto contains_b0 = [&](const detail::RefineState& s) {
    if (!s.chain) return false;
    VertexSet vs = s.chain->vertex_set();
    return std::all_of(b0v.begin(), b0v.end(), [&](Vertex v) { return set_contains(vs, v); });
  };

  detail::RefineState st = detail::refine_state(g, detail::shortcut_path(g, x0, ignored), y1, y2);
  if (trace) trace->measures.push_back(st.measure);
  for (;;) {
    deadline.check();
    if (st.chain->exact()) return RefinedPath{st.x, *st.chain};
    // Stray components first (smallest, then lexicographic), then the pieces
    // hanging off the chain.
    std::vector<VertexSet> stray, hanging = st.chain->hanging;
    for (const auto& c : st.components)
      if (!set_contains(c, y1)) stray.push_back(c);
    auto by_size = [](const VertexSet& a, const VertexSet& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    };
    std::sort(stray.begin(), stray.end(), by_size);
    std::sort(hanging.begin(), hanging.end(), by_size);
    std::vector<VertexSet> order = stray;
    for (const auto& h : hanging)
      if (std::find(order.begin(), order.end(), h) == order.end()) order.push_back(h);
    bool moved = false;
    for (const VertexSet& d : order) {
      for (const PathSeq& nx : detail::reroutes_through(g, st.x, d, ignored)) {
        detail::RefineState ns = detail::refine_state(g, nx, y1, y2);
        if (!contains_b0(ns) || !(ns.measure < st.measure)) continue;
        if (trace) trace->measures.push_back(ns.measure);
        st = std::move(ns);
        moved = true;
        break;
      }
      if (moved) break;
    }
    if (moved) continue;

    if (trace) trace->used_fallback = true;
    if (auto ps = detail::find_planar_side(g, set_union(b0v, make_set({x1, x2})), deadline)) return *ps;
    Graph h = remove_edges(g, std::span<const Edge>(&ignored, 1));
    std::optional<RefinedPath> found;
    detail::for_each_induced_path(
        h, x1, x2, mask_of(static_cast<std::size_t>(g.order()), b0v),
        [](const std::vector<Vertex>&, const VertexMask&) { return true; },
        [&](const std::vector<Vertex>& p) {
          if (p.size() < 3) return true;
          detail::RefineState s = detail::refine_state(g, PathSeq(p), y1, y2);
          if (!contains_b0(s) || !s.chain->exact()) return true;
          found = RefinedPath{s.x, *s.chain};
          return false;
        },
        deadline);
    if (found) return *found;
    throw std::logic_error("refine_nonseparating_path: neither outcome exists; hypotheses must be violated");
  }
}

// ---------------------------------------------------------------------------
// Four-way outcome search

struct TheoremRoles {
  Vertex x1 = kNoVertex, x2 = kNoVertex, y1 = kNoVertex, y2 = kNoVertex;
  std::array<Vertex, 3> w{kNoVertex, kNoVertex, kNoVertex};
};

/// Certificates in G' may use y2 only through edges to w1, w2, w3, x1, x2.
inline TK5Constraints gprime_constraints(const TheoremRoles& r) {
  TK5Constraints c;
  c.allowed_incident_edges[r.y2] = make_set({r.w[0], r.w[1], r.w[2], r.x1, r.x2});
  return c;
}

inline Graph gprime(const Graph& g, const TheoremRoles& r) { return permitted_graph(g, gprime_constraints(r)); }

inline TK5Constraints avoid_y2_constraints(const TheoremRoles& r) { return TK5Constraints{{r.y2}, {}}; }

struct Tk5AvoidingY2 {
  TK5Certificate cert;
};

/// Outcome (iv): a TK5 in G', or the path X.
struct PathOrTk5 {
  std::variant<TK5Certificate, PathSeq> value;
};

using Lemma32Outcome = std::variant<Tk5AvoidingY2, K4MinusCertificate, ApexWheelSeparation, PathOrTk5>;

/// Names the first violated hypothesis of the K4-minus setting.
inline void check_theorem_roles(const Graph& g, const TheoremRoles& r) {
  std::array<Vertex, 7> all{r.x1, r.x2, r.y1, r.y2, r.w[0], r.w[1], r.w[2]};
  for (Vertex v : all)
    if (!g.contains(v)) throw PreconditionError("roles_out_of_range", "role vertex not in graph");
  if (!all_distinct(std::array<Vertex, 4>{r.x1, r.x2, r.y1, r.y2}))
    throw PreconditionError("roles_not_distinct", "x1, x2, y1, y2 must differ");
  if (!g.adjacent(r.x1, r.x2) || !g.adjacent(r.x1, r.y1) || !g.adjacent(r.x1, r.y2) || !g.adjacent(r.x2, r.y1) ||
      !g.adjacent(r.x2, r.y2) || g.adjacent(r.y1, r.y2))
    throw PreconditionError("not_k4_minus", "x1, x2, y1, y2 must induce K4 minus the edge y1y2");
  if (!all_distinct(r.w)) throw PreconditionError("w_not_distinct", "w1, w2, w3 must differ");
  for (Vertex w : r.w)
    if (!g.adjacent(w, r.y2) || w == r.x1 || w == r.x2)
      throw PreconditionError("w_not_neighbors", "each w must be a neighbor of y2 other than x1, x2");
  if (vertex_connectivity(g) < 5) throw PreconditionError("not_5_connected", "graph is not 5-connected");
  if (is_planar(g)) throw PreconditionError("planar", "graph is planar");
}

inline bool verify_nonsep_path(const Graph& g, const TheoremRoles& r, const PathSeq& x) {
  if (x.size() < 3 || !is_valid_path(g, x) || x.front() != r.x1 || x.back() != r.x2) return false;
  Edge e = make_edge(r.x1, r.x2);
  if (!is_induced_path(g, x, std::span<const Edge>(&e, 1))) return false;
  if (x.contains(r.y1) || x.contains(r.y2)) return false;
  for (Vertex w : r.w)
    if (!x.contains(w)) return false;
  VertexMask removed = mask_of(static_cast<std::size_t>(g.order()), x.vertex_set());
  removed[static_cast<std::size_t>(r.y2)] = 1;
  return is_2_connected(g, removed);
}

inline bool verify_lemma32(const Graph& g, const TheoremRoles& r, const Lemma32Outcome& out) {
  if (auto* t = std::get_if<Tk5AvoidingY2>(&out)) return verify_tk5(g, t->cert, avoid_y2_constraints(r));
  if (auto* k = std::get_if<K4MinusCertificate>(&out)) return verify_k4_minus(g, *k, {r.y2});
  if (auto* s = std::get_if<ApexWheelSeparation>(&out))
    return s->correspondence.y2 == r.y2 && verify_gadget_separation(g, *s);
  const auto& iv = std::get<PathOrTk5>(out).value;
  if (auto* t = std::get_if<TK5Certificate>(&iv)) return verify_tk5(g, *t, gprime_constraints(r));
  return verify_nonsep_path(g, r, std::get<PathSeq>(iv));
}

namespace detail {

inline void add_k4_minus_arcs(std::vector<ArcWiring>& w, const TheoremRoles& r) {
  w.push_back({r.x1, r.x2, {PathSeq({r.x1, r.x2})}});
  w.push_back({r.x1, r.y1, {PathSeq({r.x1, r.y1})}});
  w.push_back({r.x1, r.y2, {PathSeq({r.x1, r.y2})}});
  w.push_back({r.x2, r.y1, {PathSeq({r.x2, r.y1})}});
  w.push_back({r.x2, r.y2, {PathSeq({r.x2, r.y2})}});
}

/// Assembles and checks a G' certificate; nothing when the pieces clash.
inline std::optional<TK5Certificate> try_assemble(const Graph& g, const TheoremRoles& r, std::array<Vertex, 5> branch,
                                                  const std::vector<ArcWiring>& wiring) {
  try {
    TK5Certificate c = assemble_tk5(g, branch, wiring);
    if (verify_tk5(g, c, gprime_constraints(r))) return c;
  } catch (const AssemblyError&) {
  } catch (const GraphError&) {
  }
  return std::nullopt;
}

/// w on the interior of X, another w off X: branch w, x1, x2, y1, y2 with
/// two independent paths from y1 to the two w's avoiding the rest of X.
inline std::optional<TK5Certificate> tk5_from_split_ws(const Graph& g, const TheoremRoles& r, const PathSeq& x) {
  for (Vertex wa : r.w) {
    if (!x.contains(wa)) continue;
    for (Vertex wb : r.w) {
      if (x.contains(wb)) continue;
      VertexSet rest = x.vertex_set();
      rest.erase(std::find(rest.begin(), rest.end(), wa));
      VertexMask removed = mask_of(static_cast<std::size_t>(g.order()), rest);
      removed[static_cast<std::size_t>(r.y2)] = 1;
      auto fan = independent_fan(g, r.y1, make_set({wa, wb}), 2, removed);
      if (!fan) continue;
      PathSeq pa = fan->paths[0].back() == wa ? fan->paths[0] : fan->paths[1];
      PathSeq pb = fan->paths[0].back() == wa ? fan->paths[1] : fan->paths[0];
      std::vector<ArcWiring> wiring{{wa, r.x1, {subpath(x, wa, r.x1)}},
                                    {wa, r.x2, {subpath(x, wa, r.x2)}},
                                    {wa, r.y2, {PathSeq({wa, r.y2})}},
                                    {wa, r.y1, {pa}},
                                    {r.y1, r.y2, {pb, PathSeq({wb, r.y2})}}};
      add_k4_minus_arcs(wiring, r);
      if (auto c = try_assemble(g, r, {wa, r.x1, r.x2, r.y1, r.y2}, wiring)) return c;
    }
  }
  return std::nullopt;
}

/// A cycle through u, y1, y2 in G' - (X - u) for an interior u of X gives
/// branch u, x1, x2, y1, y2.
inline std::optional<TK5Certificate> tk5_from_cycle(const Graph& g, const TheoremRoles& r, const PathSeq& x,
                                                    const Deadline& deadline) {
  Graph gp = gprime(g, r);
  for (Vertex u : x.interior()) {
    VertexSet keep = set_difference(all_vertices(g.order()), x.vertex_set());
    keep = set_union(keep, {u});
    Relabeled h = induced_subgraph(gp, keep);
    if (!is_2_connected(h.graph)) continue;
    auto img = [&](Vertex v) { return h.image[static_cast<std::size_t>(v)]; };
    CycleResult cr = cycle_through_three(h.graph, img(u), img(r.y1), img(r.y2), deadline);
    auto* cyc = std::get_if<CycleSeq>(&cr);
    if (!cyc) continue;
    std::vector<Vertex> back;
    for (Vertex v : cyc->vertices()) back.push_back(h.origin[static_cast<std::size_t>(v)]);
    CycleSeq c(back);
    // Order the three terminals around the cycle starting from u.
    std::array<Vertex, 2> ys{r.y1, r.y2};
    auto dist = [&](Vertex v) { return (*c.position(v) + c.size() - *c.position(u)) % c.size(); };
    if (dist(ys[0]) > dist(ys[1])) std::swap(ys[0], ys[1]);
    std::vector<ArcWiring> wiring{{u, r.x1, {subpath(x, u, r.x1)}},
                                  {u, r.x2, {subpath(x, u, r.x2)}},
                                  {u, ys[0], {subpath(c, u, ys[0])}},
                                  {ys[0], ys[1], {subpath(c, ys[0], ys[1])}},
                                  {ys[1], u, {subpath(c, ys[1], u)}}};
    add_k4_minus_arcs(wiring, r);
    if (auto t = try_assemble(g, r, {u, r.x1, r.x2, r.y1, r.y2}, wiring)) return t;
  }
  return std::nullopt;
}

/// The proof's bootstrap in g - y2: for each z adjacent to y1, a shortest
/// x1-x2 path avoiding y1, y2, z, refined until (g - y2) - X is a block.
/// Returns every refined path found, in z order.
inline std::vector<PathSeq> bootstrap_paths(const Graph& g, const TheoremRoles& r, const Deadline& deadline) {
  VertexSet keep = set_difference(all_vertices(g.order()), {r.y2});
  Relabeled h = induced_subgraph(g, keep);
  auto img = [&](Vertex v) { return h.image[static_cast<std::size_t>(v)]; };
  const Graph& hg = h.graph;
  std::vector<PathSeq> out;
  for (Vertex z : g.neighbors(r.y1)) {
    if (z == r.x1 || z == r.x2) continue;
    VertexMask removed(static_cast<std::size_t>(hg.order()), 0);
    removed[static_cast<std::size_t>(img(r.y1))] = removed[static_cast<std::size_t>(img(z))] = 1;
    auto x0 = shortest_path(hg, img(r.x1), img(r.x2), removed, {make_edge(img(r.x1), img(r.x2))});
    if (!x0) continue;
    auto b0 = chain_of_blocks(hg, img(r.y1), img(z), mask_of(static_cast<std::size_t>(hg.order()), x0->vertex_set()));
    if (!b0) continue;
    Lemma31Outcome o = refine_nonseparating_path(hg, img(r.x1), img(r.x2), img(r.y1), img(z), *x0, *b0, deadline);
    auto* rp = std::get_if<RefinedPath>(&o);
    if (!rp) continue;
    std::vector<Vertex> back;
    for (Vertex v : rp->path.vertices()) back.push_back(h.origin[static_cast<std::size_t>(v)]);
    PathSeq px(back);
    if (std::find(out.begin(), out.end(), px) == out.end()) out.push_back(px);
  }
  return out;
}

/// Induced x1-x2 paths of g - x1x2 avoiding y1, y2 and meeting every w with
/// (g - y2) - X 2-connected, first in DFS order.
inline std::optional<PathSeq> search_nonsep_path(const Graph& g, const TheoremRoles& r, const Deadline& deadline) {
  Edge e = make_edge(r.x1, r.x2);
  Graph h = remove_edges(g, std::span<const Edge>(&e, 1));
  VertexMask removed(static_cast<std::size_t>(g.order()), 0);
  removed[static_cast<std::size_t>(r.y1)] = removed[static_cast<std::size_t>(r.y2)] = 1;
  std::optional<PathSeq> found;
  for_each_induced_path(
      h, r.x1, r.x2, removed, [](const std::vector<Vertex>&, const VertexMask&) { return true; },
      [&](const std::vector<Vertex>& p) {
        PathSeq x(p);
        if (!verify_nonsep_path(g, r, x)) return true;
        found = x;
        return false;
      },
      deadline);
  return found;
}

}  // namespace detail

/// Which parts of the search to run; the classifier runs the scans itself.
struct ReductionOptions {
  bool scans = true;
  bool final_tk5_search = true;
  int threads = 1;
};

/// Searches the outcomes in the order: K4-minus avoiding y2, gadget at y2,
/// the (iv) path (bootstrap paths, the two TK5 patterns they enable, then a
/// direct path search), then constrained TK5 searches. Throws SearchTimeout
/// when the deadline runs out first.
inline std::optional<Lemma32Outcome> reduction_step(const Graph& g, const TheoremRoles& r,
                                                    const Deadline& deadline = Deadline::never(),
                                                    const ReductionOptions& opt = {}) {
  check_theorem_roles(g, r);
  auto checked = [&](Lemma32Outcome o) -> Lemma32Outcome {
    if (!verify_lemma32(g, r, o)) throw std::logic_error("reduction_step: outcome failed verification");
    return o;
  };
  if (opt.scans) {
    if (auto k = find_k4_minus(g, {r.y2})) return checked(*k);
    if (auto s = find_gadget_separation(g, r.y2)) return checked(*s);
  }
  std::optional<TK5Certificate> pattern;
  for (const PathSeq& x : detail::bootstrap_paths(g, r, deadline)) {
    if (verify_nonsep_path(g, r, x)) return checked(PathOrTk5{x});
    if (!pattern) pattern = detail::tk5_from_split_ws(g, r, x);
    if (!pattern) pattern = detail::tk5_from_cycle(g, r, x, deadline);
  }
  try {
    Deadline part = pattern ? deadline.fraction(0.5) : deadline;
    if (auto x = detail::search_nonsep_path(g, r, part)) return checked(PathOrTk5{*x});
  } catch (const SearchTimeout&) {
    if (!pattern || deadline.expired()) throw;
  }
  if (pattern) return checked(PathOrTk5{*pattern});
  if (!opt.final_tk5_search) return std::nullopt;
  TK5SearchResult i = find_tk5(g, avoid_y2_constraints(r), deadline, opt.threads);
  if (i.status == SearchStatus::found) return checked(Tk5AvoidingY2{*i.cert});
  TK5SearchResult iv = find_tk5(g, gprime_constraints(r), deadline, opt.threads);
  if (iv.status == SearchStatus::found) return checked(PathOrTk5{*iv.cert});
  if (i.status == SearchStatus::timeout || iv.status == SearchStatus::timeout) throw SearchTimeout();
  throw std::logic_error("reduction_step: no outcome found; hypotheses must be violated");
}

}  // namespace tk5
