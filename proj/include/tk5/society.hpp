#pragma once

// 3-planar societies: the reduction p(G, A), witnesses and their verifier,
// and the planar-apex-side hypothesis check for 5-separations.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tk5/graph.hpp"
#include "tk5/planarity.hpp"

namespace tk5 {

class SocietyError : public std::invalid_argument {
 public:
  SocietyError(std::size_t part, const std::string& what)
      : std::invalid_argument("part " + std::to_string(part) + ": " + what), part_(part) {}
  std::size_t part() const { return part_; }

 private:
  std::size_t part_;
};

/// Checks the part conditions; throws SocietyError naming the first bad part.
inline void check_parts(const Graph& g, const std::vector<VertexSet>& parts) {
  std::vector<int> owner(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw SocietyError(i, "empty part");
    if (make_set(parts[i]) != parts[i]) throw SocietyError(i, "part is not a sorted vertex set");
    for (Vertex v : parts[i]) {
      if (!g.contains(v)) throw SocietyError(i, "vertex " + std::to_string(v) + " out of range");
      if (owner[static_cast<std::size_t>(v)] != -1) throw SocietyError(i, "overlaps another part at vertex " + std::to_string(v));
      owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    VertexSet nb = neighborhood(g, parts[i]);
    if (nb.size() > 3) throw SocietyError(i, "has " + std::to_string(nb.size()) + " neighbors (at most 3 allowed)");
    for (Vertex v : nb)
      if (owner[static_cast<std::size_t>(v)] != -1)
        throw SocietyError(i, "neighbor " + std::to_string(v) + " lies in part " + std::to_string(owner[static_cast<std::size_t>(v)]));
  }
}

/// p(g, parts): delete every part and make its neighborhood a clique.
/// Surviving vertices are relabeled densely in increasing order.
inline Relabeled society_reduce(const Graph& g, const std::vector<VertexSet>& parts) {
  check_parts(g, parts);
  VertexMask gone(static_cast<std::size_t>(g.order()), 0);
  for (const auto& p : parts)
    for (Vertex v : p) gone[static_cast<std::size_t>(v)] = 1;
  VertexSet keep;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!gone[static_cast<std::size_t>(v)]) keep.push_back(v);
  Relabeled r = induced_subgraph(g, keep);
  std::vector<Edge> extra;
  for (const auto& p : parts) {
    VertexSet nb = neighborhood(g, p);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        extra.emplace_back(r.image[static_cast<std::size_t>(nb[a])], r.image[static_cast<std::size_t>(nb[b])]);
  }
  if (!extra.empty()) r.graph = add_edges(r.graph, extra);
  return r;
}

struct SocietyWitness {
  std::vector<VertexSet> parts;
  std::vector<Vertex> boundary;  // ids of g
  DiscEmbedding embedding;       // over the ids of society_reduce(g, parts).graph
};

inline bool verify_society_witness(const Graph& g, const SocietyWitness& w) {
  try {
    check_parts(g, w.parts);
  } catch (const SocietyError&) {
    return false;
  }
  if (!all_distinct(w.boundary)) return false;
  for (Vertex b : w.boundary) {
    if (!g.contains(b)) return false;
    for (const auto& p : w.parts)
      if (set_contains(p, b)) return false;
  }
  Relabeled r = society_reduce(g, w.parts);
  std::vector<Vertex> bd;
  for (Vertex b : w.boundary) bd.push_back(r.image[static_cast<std::size_t>(b)]);
  return verify_disc_embedding(r.graph, bd, w.embedding);
}

/// Tries the boundary with no parts, returning a verified witness if the
/// graph itself disc-embeds.
inline std::optional<SocietyWitness> plain_witness(const Graph& g, const std::vector<Vertex>& boundary) {
  auto emb = test_disc_embeddable(g, boundary);
  if (!emb) return std::nullopt;
  return SocietyWitness{{}, boundary, *emb};
}

/// The cyclic orders of four items up to rotation and reflection.
inline std::array<std::array<int, 4>, 3> four_cyclic_orders() { return {{{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}}}; }

/// Whether side2 minus `a` (induced, cut edges included) disc-embeds with
/// the other four cut vertices on the boundary in some cyclic order.
inline bool check_planar_apex_side(const Graph& g, const Separation& sep, Vertex a) {
  if (sep.cut.size() != 5) throw std::invalid_argument("check_planar_apex_side: separation must have order 5");
  if (!set_contains(sep.cut, a)) throw std::invalid_argument("check_planar_apex_side: apex not in the cut");
  if (!is_valid_separation(g, sep)) throw std::invalid_argument("check_planar_apex_side: invalid separation");
  VertexSet side = sep.side2;
  side.erase(std::find(side.begin(), side.end(), a));
  Relabeled r = induced_subgraph(g, side);
  std::vector<Vertex> rest;
  for (Vertex c : sep.cut)
    if (c != a) rest.push_back(r.image[static_cast<std::size_t>(c)]);
  for (const auto& ord : four_cyclic_orders()) {
    std::vector<Vertex> bd{rest[static_cast<std::size_t>(ord[0])], rest[static_cast<std::size_t>(ord[1])],
                           rest[static_cast<std::size_t>(ord[2])], rest[static_cast<std::size_t>(ord[3])]};
    if (test_disc_embeddable(r.graph, bd)) return true;
  }
  return false;
}

}  // namespace tk5
