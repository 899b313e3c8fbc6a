#pragma once

// The nine-vertex apex-wheel gadget: an 8-cycle a1 b1 a2 b2 a3 b3 a4 b4, the
// 4-cycle b1 b2 b3 b4, and an apex y2 joined to every b_i.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tk5/graph.hpp"

namespace tk5 {

struct GadgetRoles {
  Vertex y2 = kNoVertex;
  std::array<Vertex, 4> a{};
  std::array<Vertex, 4> b{};

  bool operator==(const GadgetRoles&) const = default;
};

inline std::vector<Edge> gadget_edges(const GadgetRoles& r) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t j = (i + 1) % 4;
    es.push_back(make_edge(r.a[i], r.b[i]));
    es.push_back(make_edge(r.b[i], r.a[j]));
    es.push_back(make_edge(r.b[i], r.b[j]));
    es.push_back(make_edge(r.y2, r.b[i]));
  }
  std::sort(es.begin(), es.end());
  return es;
}

struct Gadget {
  Graph graph;
  GadgetRoles roles;
};

/// y2 = 0, a_i = 1..4, b_i = 5..8.
inline Gadget build_gadget() {
  GadgetRoles r{0, {1, 2, 3, 4}, {5, 6, 7, 8}};
  std::vector<std::string> labels{"y2", "a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"};
  return {build_graph(9, gadget_edges(r), labels), r};
}

/// The eight dihedral symmetries of the gadget, as index maps on 0..3:
/// a_i -> a_{amap[i]}, b_i -> b_{bmap[i]}.
inline std::vector<std::pair<std::array<int, 4>, std::array<int, 4>>> gadget_automorphisms() {
  std::vector<std::pair<std::array<int, 4>, std::array<int, 4>>> out;
  for (int s = 0; s < 4; ++s) {
    std::array<int, 4> am{}, bm{};
    for (int i = 0; i < 4; ++i) {
      am[static_cast<std::size_t>(i)] = (i + s) % 4;
      bm[static_cast<std::size_t>(i)] = (i + s) % 4;
    }
    out.emplace_back(am, bm);
    // Reflection: a_i -> a_{s-i}, b_i -> b_{s-i-1} keeps a_i b_i and b_i a_{i+1}.
    for (int i = 0; i < 4; ++i) {
      am[static_cast<std::size_t>(i)] = ((s - i) % 4 + 4) % 4;
      bm[static_cast<std::size_t>(i)] = ((s - i - 1) % 4 + 8) % 4;
    }
    out.emplace_back(am, bm);
  }
  return out;
}

struct ApexWheelSeparation {
  Separation sep;
  GadgetRoles correspondence;
};

/// Whether side2 of sep, minus edges joining two cut vertices, is exactly
/// the gadget with its a- and y2-vertices on the cut. The first match over
/// (y2 choice, b order) in increasing order is returned.
inline std::optional<ApexWheelSeparation> match_gadget_separation(const Graph& g, const Separation& sep) {
  if (!is_valid_separation(g, sep)) throw std::invalid_argument("match_gadget_separation: invalid separation");
  if (sep.order() != 5) throw std::invalid_argument("match_gadget_separation: separation must have order 5");
  if (sep.side2.size() != 9) return std::nullopt;
  VertexSet inner = set_difference(sep.side2, sep.cut);
  std::vector<Edge> actual;
  for (Vertex v : inner)
    for (Vertex w : g.neighbors(v))
      if (!set_contains(inner, w) || v < w) actual.push_back(make_edge(v, w));
  std::sort(actual.begin(), actual.end());
  if (actual.size() != 16) return std::nullopt;
  for (Vertex y2 : sep.cut) {
    bool apex = std::all_of(inner.begin(), inner.end(), [&](Vertex b) { return g.adjacent(y2, b); });
    if (!apex) continue;
    std::vector<Vertex> bs = inner;
    do {
      GadgetRoles r;
      r.y2 = y2;
      std::copy(bs.begin(), bs.end(), r.b.begin());
      bool ok = true;
      // a_{i+1} is the cut vertex other than y2 seen by both b_i and b_{i+1}.
      for (std::size_t i = 0; i < 4 && ok; ++i) {
        Vertex found = kNoVertex;
        for (Vertex c : sep.cut)
          if (c != y2 && g.adjacent(c, r.b[i]) && g.adjacent(c, r.b[(i + 1) % 4])) {
            ok = found == kNoVertex;
            found = c;
          }
        r.a[(i + 1) % 4] = found;
        ok = ok && found != kNoVertex;
      }
      if (ok && gadget_edges(r) == actual) return ApexWheelSeparation{sep, r};
    } while (std::next_permutation(bs.begin(), bs.end()));
  }
  return std::nullopt;
}

/// Searches g for a gadget separation whose apex is y2: four degree-5
/// neighbors of y2 whose other neighbors, outside them and y2, are exactly
/// four vertices.
inline std::optional<ApexWheelSeparation> find_gadget_separation(const Graph& g, Vertex y2) {
  std::vector<Vertex> cand;
  for (Vertex b : g.neighbors(y2))
    if (g.degree(b) == 5) cand.push_back(b);
  const std::size_t m = cand.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        for (std::size_t l = k + 1; l < m; ++l) {
          VertexSet bs{cand[i], cand[j], cand[k], cand[l]};
          VertexSet around = neighborhood(g, bs);
          if (around.size() != 5 || !set_contains(around, y2)) continue;
          VertexSet side2 = set_union(bs, around);
          VertexSet all(static_cast<std::size_t>(g.order()));
          std::iota(all.begin(), all.end(), 0);
          VertexSet side1 = set_difference(all, bs);
          if (side1.size() <= around.size()) continue;
          Separation sep = make_separation(side1, side2);
          if (!is_valid_separation(g, sep)) continue;
          auto m2 = match_gadget_separation(g, sep);
          if (m2 && m2->correspondence.y2 == y2) return m2;
        }
  return std::nullopt;
}

inline bool verify_gadget_separation(const Graph& g, const ApexWheelSeparation& s) {
  if (!is_valid_separation(g, s.sep) || s.sep.order() != 5) return false;
  auto m = match_gadget_separation(g, s.sep);
  if (!m) return false;
  // Any automorphic relabeling of the stored correspondence is accepted.
  const GadgetRoles& r = s.correspondence;
  if (r.y2 != m->correspondence.y2) return false;
  return gadget_edges(r) == gadget_edges(m->correspondence) && set_contains(s.sep.cut, r.y2) &&
         std::all_of(r.a.begin(), r.a.end(), [&](Vertex a) { return set_contains(s.sep.cut, a); });
}

}  // namespace tk5
