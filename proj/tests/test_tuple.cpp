#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>
#include <random>

#include "support/instances.hpp"
#include "support/oracles.hpp"
#include "tk5/tuple_pipeline.hpp"

using namespace tk5;

namespace {

std::string precondition_name(const std::function<void()>& f) {
  try {
    f();
  } catch (const PreconditionError& e) {
    return e.name();
  }
  return "";
}

using inst::gadget_iso_oracle;
using inst::pad_nine;
using inst::Padded;
using inst::placed_gadget;

// All induced s-t paths in g avoiding `banned`.
void induced_paths(const Graph& g, Vertex s, Vertex t, const VertexSet& banned, std::vector<PathSeq>& out) {
  std::vector<Vertex> cur{s};
  std::function<void()> rec = [&]() {
    Vertex v = cur.back();
    if (v == t) {
      PathSeq p(cur);
      if (is_induced_path(g, p, {})) out.push_back(p);
      return;
    }
    for (Vertex w : g.neighbors(v)) {
      if (set_contains(banned, w) || std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
      cur.push_back(w);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

// Bridges of the union of two paths computed from scratch: the component of
// y2 (J), and every bridge attaching to both interiors (L).
struct LadderKey {
  bool j_in_l = false;
  std::pair<std::size_t, std::size_t> j, l;
  auto tie() const { return std::tie(j_in_l, j, l); }
};

std::optional<LadderKey> ladder_oracle(const Graph& h, Vertex zi, Vertex zo, Vertex y1, Vertex y2, const PathSeq& a,
                                       const PathSeq& c) {
  const int n = h.order();
  VertexSet ac = set_union(a.vertex_set(), c.vertex_set());
  VertexSet ai = set_difference(a.vertex_set(), make_set({zi, y1})), ci = set_difference(c.vertex_set(), make_set({zi, y1}));
  std::vector<Edge> ace = a.edges();
  for (Edge e : c.edges()) ace.push_back(e);
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int nc = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (set_contains(ac, s) || comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<Vertex> st{s};
    comp[static_cast<std::size_t>(s)] = nc;
    while (!st.empty()) {
      Vertex v = st.back();
      st.pop_back();
      for (Vertex w : h.neighbors(v))
        if (!set_contains(ac, w) && comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = nc;
          st.push_back(w);
        }
    }
    ++nc;
  }
  std::vector<std::size_t> edges(static_cast<std::size_t>(nc), 0), verts(static_cast<std::size_t>(nc), 0);
  std::vector<std::set<Vertex>> att(static_cast<std::size_t>(nc));
  for (Vertex v = 0; v < n; ++v)
    if (comp[static_cast<std::size_t>(v)] >= 0) ++verts[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
  LadderKey k;
  for (auto [u, v] : h.edges()) {
    int cu = comp[static_cast<std::size_t>(u)], cv = comp[static_cast<std::size_t>(v)];
    if (cu < 0 && cv < 0) {
      if (std::find(ace.begin(), ace.end(), make_edge(u, v)) != ace.end()) continue;
      bool both = (set_contains(ai, u) && set_contains(ci, v)) || (set_contains(ai, v) && set_contains(ci, u));
      if (both) k.l.first += 1;
      continue;
    }
    int cc = cu >= 0 ? cu : cv;
    ++edges[static_cast<std::size_t>(cc)];
    if (cu < 0) att[static_cast<std::size_t>(cc)].insert(u);
    if (cv < 0) att[static_cast<std::size_t>(cc)].insert(v);
  }
  int jc = comp[static_cast<std::size_t>(y2)];
  if (jc != comp[static_cast<std::size_t>(zo)]) return std::nullopt;
  for (int cc = 0; cc < nc; ++cc) {
    const auto& at = att[static_cast<std::size_t>(cc)];
    bool ma = std::any_of(at.begin(), at.end(), [&](Vertex v) { return set_contains(ai, v); });
    bool mc = std::any_of(at.begin(), at.end(), [&](Vertex v) { return set_contains(ci, v); });
    if (ma && mc) {
      k.l.first += edges[static_cast<std::size_t>(cc)];
      k.l.second += verts[static_cast<std::size_t>(cc)];
      if (cc == jc) k.j_in_l = true;
    }
  }
  k.j = {edges[static_cast<std::size_t>(jc)], verts[static_cast<std::size_t>(jc)]};
  return k;
}

// Theorem instances whose w triple admits a nonseparating path, with the path.
struct PathInstance {
  inst::Instance in;
  PathSeq x;
};

std::vector<PathInstance> path_instances(std::uint32_t seed, int want) {
  std::mt19937 rng(seed);
  std::vector<PathInstance> out;
  for (int t = 0; t < 200 && static_cast<int>(out.size()) < want; ++t) {
    auto in = inst::random_theorem_instance(rng, 10 + t % 4, 0.55);
    if (!in) continue;
    std::vector<Vertex> nb;
    for (Vertex w : in->g.neighbors(in->roles.y2))
      if (w != in->roles.x1 && w != in->roles.x2) nb.push_back(w);
    bool got = false;
    for (std::size_t a = 0; a < nb.size() && !got; ++a)
      for (std::size_t b = a + 1; b < nb.size() && !got; ++b)
        for (std::size_t c = b + 1; c < nb.size() && !got; ++c) {
          TheoremRoles r = in->roles;
          r.w = {nb[a], nb[b], nb[c]};
          if (auto x = detail::search_nonsep_path(in->g, r, Deadline::in_ms(2000))) {
            out.push_back({{in->g, r}, *x});
            got = true;
          }
        }
  }
  return out;
}

bool h_links(const NineTuple& t, Vertex z1, Vertex z2) {
  HGraph h = h_graph(t, z1, z2);
  return oracle::two_disjoint_paths_exist(h.graph, t.roles.y1, t.roles.y2, z1, z2);
}

}  // namespace

// ---------------------------------------------------------------------------
// Gadget

TEST(Gadget, Census) {
  Gadget gd = build_gadget();
  EXPECT_EQ(gd.graph.order(), 9);
  EXPECT_EQ(gd.graph.size(), 16);
  std::vector<int> deg;
  for (Vertex v = 0; v < 9; ++v) deg.push_back(gd.graph.degree(v));
  std::sort(deg.begin(), deg.end());
  EXPECT_EQ(deg, (std::vector<int>{2, 2, 2, 2, 4, 5, 5, 5, 5}));
  EXPECT_EQ(gd.graph.degree(gd.roles.y2), 4);
  for (Vertex a : gd.roles.a) EXPECT_EQ(gd.graph.degree(a), 2);
  for (Vertex b : gd.roles.b) EXPECT_EQ(gd.graph.degree(b), 5);
}

TEST(Gadget, MinusApexDiscEmbedsWithAsOnBoundary) {
  Gadget gd = build_gadget();
  Relabeled r = induced_subgraph(gd.graph, {1, 2, 3, 4, 5, 6, 7, 8});
  std::vector<Vertex> bd;
  for (Vertex a : gd.roles.a) bd.push_back(r.image[static_cast<std::size_t>(a)]);
  auto e = test_disc_embeddable(r.graph, bd);
  ASSERT_TRUE(e);
  EXPECT_TRUE(verify_disc_embedding(r.graph, bd, *e));
}

TEST(Gadget, AutomorphismGroupHasOrderEight) {
  Gadget gd = build_gadget();
  std::vector<Vertex> perm{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<Edge> es = gd.graph.edges();
  int count = 0;
  do {
    bool ok = std::all_of(es.begin(), es.end(), [&](Edge e) {
      return gd.graph.adjacent(perm[static_cast<std::size_t>(e.first)], perm[static_cast<std::size_t>(e.second)]);
    });
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(count, 8);
  auto autos = gadget_automorphisms();
  ASSERT_EQ(autos.size(), 8u);
  std::set<std::pair<std::array<int, 4>, std::array<int, 4>>> distinct(autos.begin(), autos.end());
  EXPECT_EQ(distinct.size(), 8u);
  for (auto [am, bm] : autos) {
    GadgetRoles r = gd.roles;
    for (std::size_t i = 0; i < 4; ++i) {
      r.a[i] = gd.roles.a[static_cast<std::size_t>(am[i])];
      r.b[i] = gd.roles.b[static_cast<std::size_t>(bm[i])];
    }
    EXPECT_EQ(gadget_edges(r), gadget_edges(gd.roles));
  }
}

TEST(Gadget, HostGluingIsMatched) {
  auto h = inst::gadget_host();
  auto m = match_gadget_separation(h.inst.g, h.gluing);
  ASSERT_TRUE(m);
  EXPECT_TRUE(verify_gadget_separation(h.inst.g, *m));
  EXPECT_EQ(gadget_edges(m->correspondence), gadget_edges(h.gadget));
  auto f = find_gadget_separation(h.inst.g, h.gadget.y2);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->sep.cut, h.gluing.cut);
  EXPECT_FALSE(find_gadget_separation(h.inst.g, 1));
}

TEST(Gadget, RelabelingsAreMatched) {
  std::mt19937 rng(8);
  auto h = inst::gadget_host();
  for (int t = 0; t < 30; ++t) {
    auto perm = inst::random_perm(rng, 20);
    Graph g = oracle::relabel(h.inst.g, perm);
    VertexSet s1, s2;
    for (Vertex v : h.gluing.side1) s1.push_back(perm[static_cast<std::size_t>(v)]);
    for (Vertex v : h.gluing.side2) s2.push_back(perm[static_cast<std::size_t>(v)]);
    auto m = match_gadget_separation(g, make_separation(make_set(s1), make_set(s2)));
    ASSERT_TRUE(m);
    EXPECT_EQ(m->correspondence.y2, perm[static_cast<std::size_t>(h.gadget.y2)]);
  }
  for (int t = 0; t < 30; ++t) {
    Padded p = pad_nine(placed_gadget(rng));
    EXPECT_TRUE(match_gadget_separation(p.g, p.sep));
  }
}

TEST(Gadget, RejectsOtherSides) {
  // Wheel with eight spokes on the far side: 9 vertices, 16 edges, not the gadget.
  Graph w8 = named::wheel(8);
  std::vector<Vertex> perm{0, 5, 1, 6, 2, 7, 3, 8, 4};  // hub and alternate rim vertices on the cut
  std::vector<Vertex> inv(9);
  for (std::size_t i = 0; i < 9; ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<Vertex>(i);
  Padded p = pad_nine(oracle::relabel(w8, inv));
  EXPECT_EQ(p.g.order(), 10);
  EXPECT_FALSE(match_gadget_separation(p.g, p.sep));
  EXPECT_FALSE(gadget_iso_oracle(p.g, p.sep));

  auto h = inst::gadget_host();
  Separation small = make_separation(set_union(h.gluing.side1, {16}), h.gluing.side2);
  EXPECT_THROW(match_gadget_separation(h.inst.g, small), std::invalid_argument);
  Separation bad = make_separation({0, 1}, {1, 2});
  EXPECT_THROW(match_gadget_separation(h.inst.g, bad), std::invalid_argument);
}

TEST(Gadget, AgreesWithIsomorphismOracle) {
  std::mt19937 rng(21);
  int rejected = 0, accepted = 0;
  for (int t = 0; t < 300; ++t) {
    Graph h;
    if (t % 3 == 0) {
      h = oracle::random_graph(rng, 9, 0.45);
    } else {
      // Near misses: the gadget with one edge moved.
      Graph g0 = placed_gadget(rng);
      std::vector<Edge> es = g0.edges();
      std::uniform_int_distribution<std::size_t> pick(0, es.size() - 1);
      std::uniform_int_distribution<Vertex> vd(0, 8);
      if (t % 3 == 1) es.erase(es.begin() + static_cast<std::ptrdiff_t>(pick(rng)));
      Vertex u = vd(rng), v = vd(rng);
      if (u != v && !g0.adjacent(u, v)) es.push_back(make_edge(u, v));
      h = build_graph(9, es);
    }
    Padded p = pad_nine(h);
    if (!is_valid_separation(p.g, p.sep)) continue;
    bool got = match_gadget_separation(p.g, p.sep).has_value();
    EXPECT_EQ(got, gadget_iso_oracle(p.g, p.sep)) << "trial " << t;
    (got ? accepted : rejected)++;
  }
  EXPECT_GT(rejected, 100);
}

// ---------------------------------------------------------------------------
// Nine- and eleven-tuples

TEST(NineTuple, BuiltFromNonseparatingPaths) {
  auto cases = path_instances(11, 4);
  ASSERT_FALSE(cases.empty());
  for (const auto& c : cases) {
    NineTuple nine = make_nine_tuple(c.in.g, c.in.roles, c.x);
    EXPECT_NO_THROW(check_nine(nine));
    EXPECT_EQ(nine.x.front(), c.in.roles.x1);
    EXPECT_TRUE(nine.x.contains(nine.roles.y2));
    EXPECT_FALSE(nine.x.contains(nine.roles.w[1]));
  }
}

TEST(NineTuple, PreconditionsAreNamed) {
  auto cases = path_instances(11, 1);
  ASSERT_FALSE(cases.empty());
  NineTuple good = make_nine_tuple(cases[0].in.g, cases[0].in.roles, cases[0].x);
  NineTuple t = good;
  t.x = PathSeq({good.roles.x1, good.roles.x2});
  EXPECT_EQ(precondition_name([&] { check_nine(t); }), "x_not_path");
  t = good;
  std::swap(t.roles.w[0], t.roles.w[2]);
  EXPECT_EQ(precondition_name([&] { check_nine(t); }), "w_edges_missing");
  t = good;
  t.x = PathSeq({good.roles.x1, good.roles.y1, good.roles.x2});
  EXPECT_EQ(precondition_name([&] { check_nine(t); }), "y1_on_x");
  EXPECT_EQ(precondition_name([&] { make_nine_tuple(good.g, good.roles, PathSeq({good.roles.x1, good.roles.x2})); }),
            "w_off_path");
}

TEST(ElevenTuple, MaximalSpanAgainstExhaustiveScan) {
  auto cases = path_instances(13, 5);
  ASSERT_FALSE(cases.empty());
  for (const auto& c : cases) {
    NineTuple nine = make_nine_tuple(c.in.g, c.in.roles, c.x);
    auto e = find_eleven_tuple(nine);
    const PathSeq& x = nine.x;
    std::size_t py = *x.position(nine.roles.y2);
    std::size_t best = 0;
    for (std::size_t i = 1; i < py; ++i)
      for (std::size_t j = py + 1; j + 1 < x.size(); ++j)
        if (h_links(nine, x[i], x[j])) best = std::max(best, j - i);
    if (!e) {
      EXPECT_EQ(best, 0u);
      continue;
    }
    EXPECT_NO_THROW(check_eleven(*e));
    std::size_t span = *x.position(e->z2) - *x.position(e->z1);
    EXPECT_EQ(span, best);
    EXPECT_TRUE(h_links(nine, e->z1, e->z2));
  }
}

TEST(ElevenTuple, BrokenPathsAreNamed) {
  auto cases = path_instances(13, 1);
  ASSERT_FALSE(cases.empty());
  NineTuple nine = make_nine_tuple(cases[0].in.g, cases[0].in.roles, cases[0].x);
  auto e = find_eleven_tuple(nine);
  ASSERT_TRUE(e);
  ElevenTuple bad = *e;
  std::swap(bad.z1, bad.z2);
  EXPECT_EQ(precondition_name([&] { check_eleven(bad); }), "z1_misplaced");
  bad = *e;
  bad.y = PathSeq({nine.roles.y1});
  EXPECT_EQ(precondition_name([&] { check_eleven(bad); }), "y_path_invalid");
  bad = *e;
  bad.z = bad.y;
  EXPECT_EQ(precondition_name([&] { check_eleven(bad); }), "z_path_invalid");
}

TEST(ElevenTuple, OrderedPathsGiveGPrimeTk5) {
  auto cases = path_instances(17, 4);
  int seen = 0;
  for (const auto& c : cases) {
    NineTuple nine = make_nine_tuple(c.in.g, c.in.roles, c.x);
    auto e = find_eleven_tuple(nine);
    if (!e) continue;
    auto abc = find_abc(*e);
    if (auto* f = std::get_if<AbcFailure>(&abc)) {
      if (f->tk5) {
        EXPECT_TRUE(verify_tk5(c.in.g, *f->tk5, gprime_constraints(c.in.roles)));
        ++seen;
      }
    } else {
      EXPECT_TRUE(std::get<AbcResult>(abc).side == 1 || std::get<AbcResult>(abc).side == 2);
    }
  }
  EXPECT_GT(seen, 0);
}

// ---------------------------------------------------------------------------
// A, B, C and P, Q on small H

namespace {

constexpr Vertex kZi = 0, kY1 = 1, kY2 = 2, kZo = 3;

HGraph plain_h(const Graph& g) { return {g, VertexMask(static_cast<std::size_t>(g.order()), 0)}; }

}  // namespace

TEST(Abc, LadderOptimalAgainstEnumeration) {
  std::mt19937 rng(29);
  int found = 0;
  for (int t = 0; t < 150; ++t) {
    Graph g = oracle::random_two_connected(rng, 7 + t % 4, 0.35);
    HGraph h = plain_h(g);
    auto res = abc_in_h(h, kZi, kZo, kY1, kY2);
    std::vector<PathSeq> paths;
    induced_paths(g, kZi, kY1, {kY2, kZo}, paths);
    std::sort(paths.begin(), paths.end());
    std::optional<LadderKey> best;
    std::pair<PathSeq, PathSeq> best_ac;
    for (std::size_t i = 0; i < paths.size(); ++i)
      for (std::size_t j = i + 1; j < paths.size(); ++j) {
        if (!sets_disjoint(make_set(paths[i].interior()), make_set(paths[j].interior()))) continue;
        auto k = ladder_oracle(g, kZi, kZo, kY1, kY2, paths[i], paths[j]);
        if (k && (!best || best->tie() < k->tie())) {
          best = k;
          best_ac = {paths[i], paths[j]};
        }
      }
    ASSERT_EQ(res.has_value(), best.has_value()) << "trial " << t;
    if (!res) continue;
    ++found;
    EXPECT_EQ(res->a, best_ac.first) << "trial " << t;
    EXPECT_EQ(res->c, best_ac.second) << "trial " << t;
    EXPECT_EQ(res->best.j_in_l, best->j_in_l);
    EXPECT_EQ(bridge_size({res->best.j_bridge}), best->j);
    EXPECT_EQ(bridge_size(res->best.l_union), best->l);
    EXPECT_TRUE(is_valid_path(g, res->b));
    EXPECT_EQ(res->b.front(), kY2);
    EXPECT_EQ(res->b.back(), kZo);
    EXPECT_TRUE(sets_disjoint(res->b.vertex_set(), set_union(res->a.vertex_set(), res->c.vertex_set())));
  }
  EXPECT_GT(found, 20);
}

TEST(Abc, SymmetricTieBreaksLexicographically) {
  // zi = 0, y1 = 1 joined by three routes 0-4-1, 0-5-1, 0-6-1; y2 = 2 and
  // zo = 3 hang off every route vertex alike.
  std::vector<Edge> es{{0, 4}, {4, 1}, {0, 5}, {5, 1}, {0, 6}, {6, 1}, {2, 3}};
  for (Vertex m : {4, 5, 6}) {
    es.emplace_back(2, m);
    es.emplace_back(3, m);
  }
  Graph g = build_graph(7, es);
  auto res = abc_in_h(plain_h(g), kZi, kZo, kY1, kY2);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->a, PathSeq({0, 4, 1}));
  EXPECT_EQ(res->c, PathSeq({0, 5, 1}));
  EXPECT_EQ(res->ties.size(), 3u);
}

TEST(Pq, UniquePairIsFound) {
  // A = 0-4-1, C = 0-5-6-1, B = 2-7-8-3; p = 7 reaches C at 5 through 9,
  // q = 8 reaches A at 4 through 10.
  Graph g = build_graph(11, {{0, 4}, {4, 1}, {0, 5}, {5, 6}, {6, 1}, {2, 7}, {7, 8}, {8, 3}, {7, 9}, {9, 5}, {8, 10},
                             {10, 4}, {2, 6}, {3, 1}});
  HGraph h = plain_h(g);
  auto abc = abc_in_h(h, kZi, kZo, kY1, kY2);
  ASSERT_TRUE(abc);
  auto r = pq_in_h(h, kZo, kY1, kY2, *abc);
  ASSERT_TRUE(std::holds_alternative<StructureBundle>(r));
  const auto& sb = std::get<StructureBundle>(r);
  EXPECT_TRUE(verify_structure_in_h(h, kZi, kZo, kY1, kY2, sb));
  VertexSet ends = make_set({sb.p.back(), sb.q.back()});
  EXPECT_EQ(ends, (VertexSet{4, 5}));
}

TEST(Pq, OneSidedAttachmentsFail) {
  // Every path out of B lands on C.
  Graph g = build_graph(9, {{0, 4}, {4, 1}, {0, 5}, {5, 6}, {6, 1}, {2, 7}, {7, 3}, {7, 5}, {2, 6}, {3, 5}, {4, 8}, {8, 0}});
  HGraph h = plain_h(g);
  auto abc = abc_in_h(h, kZi, kZo, kY1, kY2);
  ASSERT_TRUE(abc);
  auto r = pq_in_h(h, kZo, kY1, kY2, *abc);
  EXPECT_TRUE(std::holds_alternative<PqFailure>(r));
}

TEST(Pq, KeyMinimalAgainstEnumeration) {
  std::mt19937 rng(37);
  int found = 0;
  for (int t = 0; t < 200 && found < 40; ++t) {
    Graph g = oracle::random_two_connected(rng, 9 + t % 3, 0.3);
    HGraph h = plain_h(g);
    auto abc = abc_in_h(h, kZi, kZo, kY1, kY2);
    if (!abc) continue;
    auto r = pq_in_h(h, kZo, kY1, kY2, *abc);
    auto* sb = std::get_if<StructureBundle>(&r);
    if (!sb) continue;
    ++found;
    EXPECT_TRUE(verify_structure_in_h(h, kZi, kZo, kY1, kY2, *sb)) << "trial " << t;
    // No tuple on the chosen A, B, C with a smaller key links.
    PqKey got = pq_key(sb->a, sb->b, sb->c, sb->p.front(), sb->q.front(), sb->q.back(), sb->p.back());
    VertexSet abc_set = set_union(set_union(sb->a.vertex_set(), sb->b.vertex_set()), sb->c.vertex_set());
    for (std::size_t ip = 1; ip < sb->b.size(); ++ip)
      for (std::size_t iq = ip + 1; iq < sb->b.size(); ++iq)
        for (std::size_t ia = 1; ia + 1 < sb->a.size(); ++ia)
          for (std::size_t ic = 1; ic + 1 < sb->c.size(); ++ic) {
            Vertex p = sb->b[ip], q = sb->b[iq], av = sb->a[ia], cv = sb->c[ic];
            if (!(pq_key(sb->a, sb->b, sb->c, p, q, av, cv) < got)) continue;
            std::vector<Vertex> keep;
            for (Vertex v = 0; v < g.order(); ++v)
              if (!set_contains(abc_set, v) || v == p || v == q || v == av || v == cv) keep.push_back(v);
            Relabeled sub = induced_subgraph(g, keep);
            auto im = [&](Vertex v) { return sub.image[static_cast<std::size_t>(v)]; };
            EXPECT_FALSE(oracle::two_disjoint_paths_exist(sub.graph, im(p), im(cv), im(q), im(av))) << "trial " << t;
          }
  }
  EXPECT_GT(found, 5);
}

// ---------------------------------------------------------------------------
// Classifier

TEST(Classify, CompleteMinusEdge) {
  for (int n : {7, 8}) {
    auto in = inst::complete_minus_edge(n);
    ClassifyReport rep = classify_theorem1(in.g, in.roles);
    ASSERT_TRUE(std::holds_alternative<TheoremOutcome>(rep.result));
    const auto& o = std::get<TheoremOutcome>(rep.result);
    EXPECT_EQ(outcome_number(o), 2);
    EXPECT_TRUE(verify_theorem_outcome(in.g, in.roles, o));
  }
}

TEST(Classify, GadgetHost) {
  auto h = inst::gadget_host();
  ClassifyReport rep = classify_theorem1(h.inst.g, h.inst.roles);
  ASSERT_TRUE(std::holds_alternative<TheoremOutcome>(rep.result));
  const auto& o = std::get<TheoremOutcome>(rep.result);
  EXPECT_EQ(outcome_number(o), 3);
  EXPECT_TRUE(verify_theorem_outcome(h.inst.g, h.inst.roles, o));
}

TEST(Classify, SparseHostsAvoidK4Minus) {
  std::mt19937 rng(4);
  for (int t = 0; t < 4; ++t) {
    auto in = inst::clebsch_k4_minus(rng, t);
    ClassifyReport rep = classify_theorem1(in.g, in.roles, {120000, 1});
    ASSERT_TRUE(std::holds_alternative<TheoremOutcome>(rep.result));
    const auto& o = std::get<TheoremOutcome>(rep.result);
    EXPECT_TRUE(outcome_number(o) == 1 || outcome_number(o) == 4);
    EXPECT_TRUE(verify_theorem_outcome(in.g, in.roles, o));
    EXPECT_EQ(rep.stages.front(), "scan");
  }
}

TEST(Classify, RandomInstancesVerify) {
  std::mt19937 rng(51);
  int done = 0;
  for (int t = 0; t < 10; ++t) {
    auto in = inst::random_theorem_instance(rng, 9 + t % 4, 0.6);
    if (!in) continue;
    ClassifyReport rep = classify_theorem1(in->g, in->roles, {60000, 1});
    if (auto* o = std::get_if<TheoremOutcome>(&rep.result)) {
      EXPECT_TRUE(verify_theorem_outcome(in->g, in->roles, *o));
      ++done;
    }
  }
  EXPECT_GT(done, 5);
}

TEST(Classify, ZeroBudgetReportsStage) {
  std::mt19937 rng(4);
  auto in = inst::clebsch_k4_minus(rng);
  ClassifyReport rep = classify_theorem1(in.g, in.roles, {0, 1});
  ASSERT_TRUE(std::holds_alternative<ClassifyTimeout>(rep.result));
  EXPECT_FALSE(std::get<ClassifyTimeout>(rep.result).stage.empty());
}

TEST(Classify, VerifierChecksTheRightGraph) {
  auto in = inst::complete_minus_edge(7);
  K4MinusCertificate with_y2{in.roles.x1, in.roles.x2, in.roles.y1, in.roles.y2, make_edge(in.roles.y1, in.roles.y2)};
  EXPECT_FALSE(verify_theorem_outcome(in.g, in.roles, OutcomeK4Minus{with_y2}));
  // A TK5 in K7 - e with y2 as a branch vertex using y2's edge to y1's side.
  auto tk = find_tk5(in.g, TK5Constraints{}, Deadline::never(), 1);
  ASSERT_EQ(tk.status, SearchStatus::found);
  bool y2_branch = std::find(tk.cert->branch.begin(), tk.cert->branch.end(), in.roles.y2) != tk.cert->branch.end();
  EXPECT_EQ(verify_theorem_outcome(in.g, in.roles, OutcomeTk5NoY2{*tk.cert}), !y2_branch);
}

TEST(Classify, PreconditionsAreNamed) {
  auto in = inst::complete_minus_edge(7);
  TheoremRoles r = in.roles;
  r.w = {0, 2, 3};
  EXPECT_EQ(precondition_name([&] { classify_theorem1(in.g, r); }), "w_not_neighbors");
  EXPECT_EQ(precondition_name([&] { classify_theorem1(named::complete(7), in.roles); }), "not_k4_minus");
}

TEST(Templates, StructuresOnRealTuplesGiveVerifiedTk5) {
  // The ordered-path shortcut is skipped so that the structure stages run on
  // the H of genuine eleven-tuples.
  std::mt19937 rng(11);
  int bundles = 0, certs = 0;
  for (int t = 0; t < 400; ++t) {
    auto in = inst::random_theorem_instance(rng, 10 + t % 5, 0.5 + 0.05 * (t % 3));
    if (!in) continue;
    std::vector<Vertex> nb;
    for (Vertex w : in->g.neighbors(in->roles.y2))
      if (w != in->roles.x1 && w != in->roles.x2) nb.push_back(w);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        for (std::size_t c = b + 1; c < nb.size(); ++c) {
          TheoremRoles r = in->roles;
          r.w = {nb[a], nb[b], nb[c]};
          auto x = detail::search_nonsep_path(in->g, r, Deadline::in_ms(2000));
          if (!x) continue;
          NineTuple nine = make_nine_tuple(in->g, r, *x);
          auto e = find_eleven_tuple(nine);
          if (!e) continue;
          HGraph h = h_graph(nine, e->z1, e->z2);
          for (int i : {1, 2}) {
            auto s = detail::tuple_side(*e, i);
            auto abc = abc_in_h(h, s.zi, s.zo, r.y1, r.y2);
            if (!abc) continue;
            abc->side = i;
            auto pq = pq_in_h(h, s.zo, r.y1, r.y2, *abc);
            auto* sb = std::get_if<StructureBundle>(&pq);
            if (!sb) continue;
            sb->side = i;
            ++bundles;
            EXPECT_TRUE(verify_structure(*e, *sb));
            if (auto tk = detail::tk5_from_structure(*e, *sb)) {
              EXPECT_TRUE(verify_tk5(in->g, *tk, gprime_constraints(r)));
              ++certs;
            }
          }
        }
  }
  EXPECT_GT(bundles, 10);
  EXPECT_GT(certs, 0);
}
