#pragma once

// K4-minus and TK5 certificates: search, verification and assembly of a
// TK5 from a wired family of path pieces.

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tk5/deadline.hpp"
#include "tk5/graph.hpp"
#include "tk5/planarity.hpp"
#include "tk5/traversal.hpp"

namespace tk5 {

// ---------------------------------------------------------------------------
// K4 minus an edge

/// Roles: x1x2, x1y1, x1y2, x2y1, x2y2 are edges. missing_pair is (y1, y2)
/// when y1y2 is not an edge (the four vertices induce K4 minus an edge).
struct K4MinusCertificate {
  Vertex x1 = kNoVertex, x2 = kNoVertex, y1 = kNoVertex, y2 = kNoVertex;
  std::optional<Edge> missing_pair;

  std::array<Vertex, 4> vertices() const { return {x1, x2, y1, y2}; }
};

inline bool verify_k4_minus(const Graph& g, const K4MinusCertificate& c, const VertexSet& avoid = {}) {
  auto vs = c.vertices();
  for (Vertex v : vs)
    if (!g.contains(v) || set_contains(avoid, v)) return false;
  if (!all_distinct(vs)) return false;
  if (!g.adjacent(c.x1, c.x2) || !g.adjacent(c.x1, c.y1) || !g.adjacent(c.x1, c.y2) || !g.adjacent(c.x2, c.y1) ||
      !g.adjacent(c.x2, c.y2))
    return false;
  if (c.missing_pair) {
    if (*c.missing_pair != make_edge(c.y1, c.y2)) return false;
    if (g.adjacent(c.y1, c.y2)) return false;
  }
  return true;
}

/// First 4-set outside `avoid` spanning at least five edges: an edge x1x2
/// (lexicographic) with its two smallest common neighbors.
inline std::optional<K4MinusCertificate> find_k4_minus(const Graph& g, const VertexSet& avoid = {}) {
  for (auto [a, b] : g.edges()) {
    if (set_contains(avoid, a) || set_contains(avoid, b)) continue;
    std::vector<Vertex> common;
    for (Vertex w : g.neighbors(a))
      if (w != b && g.adjacent(b, w) && !set_contains(avoid, w)) common.push_back(w);
    if (common.size() < 2) continue;
    K4MinusCertificate c{a, b, common[0], common[1], std::nullopt};
    if (!g.adjacent(common[0], common[1])) c.missing_pair = make_edge(common[0], common[1]);
    return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TK5

/// Branch-pair index order for arcs.
inline constexpr std::array<std::pair<int, int>, 10> kArcPairs{
    {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

inline int arc_index(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 10; ++k)
    if (kArcPairs[static_cast<std::size_t>(k)] == std::pair<int, int>{i, j}) return k;
  throw std::invalid_argument("arc_index: not a branch pair");
}

struct TK5Certificate {
  std::array<Vertex, 5> branch{};
  std::array<PathSeq, 10> arcs;  // arcs[k] runs from branch[kArcPairs[k].first] to branch[kArcPairs[k].second]

  const PathSeq& arc(int i, int j) const { return arcs[static_cast<std::size_t>(arc_index(i, j))]; }

  VertexSet vertex_set() const {
    std::vector<Vertex> all(branch.begin(), branch.end());
    for (const auto& a : arcs) all.insert(all.end(), a.vertices().begin(), a.vertices().end());
    return make_set(std::move(all));
  }
};

struct TK5Constraints {
  VertexSet forbidden_branch;
  /// For a listed vertex, the only neighbors its certificate edges may use.
  std::map<Vertex, VertexSet> allowed_incident_edges;

  bool edge_allowed(Vertex a, Vertex b) const {
    auto ia = allowed_incident_edges.find(a);
    if (ia != allowed_incident_edges.end() && !set_contains(ia->second, b)) return false;
    auto ib = allowed_incident_edges.find(b);
    if (ib != allowed_incident_edges.end() && !set_contains(ib->second, a)) return false;
    return true;
  }
};

/// The subgraph of g keeping only edges the constraints permit.
inline Graph permitted_graph(const Graph& g, const TK5Constraints& c) {
  if (c.allowed_incident_edges.empty()) return g;
  std::vector<Edge> keep;
  for (auto [u, v] : g.edges())
    if (c.edge_allowed(u, v)) keep.emplace_back(u, v);
  return build_graph(g.order(), keep, g.labels());
}

inline bool verify_tk5(const Graph& g, const TK5Certificate& cert, const TK5Constraints& cons = {}) {
  for (Vertex b : cert.branch)
    if (!g.contains(b) || set_contains(cons.forbidden_branch, b)) return false;
  if (!all_distinct(cert.branch)) return false;
  VertexMask used(static_cast<std::size_t>(g.order()), 0);
  for (Vertex b : cert.branch) used[static_cast<std::size_t>(b)] = 1;
  for (std::size_t k = 0; k < 10; ++k) {
    const PathSeq& p = cert.arcs[k];
    auto [i, j] = kArcPairs[k];
    if (p.size() < 2 || !is_valid_path(g, p)) return false;
    if (p.front() != cert.branch[static_cast<std::size_t>(i)] || p.back() != cert.branch[static_cast<std::size_t>(j)])
      return false;
    for (std::size_t t = 1; t + 1 < p.size(); ++t) {
      if (used[static_cast<std::size_t>(p[t])]) return false;
      used[static_cast<std::size_t>(p[t])] = 1;
    }
    for (const Edge& e : p.edges())
      if (!cons.edge_allowed(e.first, e.second)) return false;
  }
  return true;
}

class AssemblyError : public std::invalid_argument {
 public:
  AssemblyError(std::pair<Vertex, Vertex> pair, const std::string& what)
      : std::invalid_argument("arc " + std::to_string(pair.first) + "-" + std::to_string(pair.second) + ": " + what),
        pair_(pair) {}
  std::pair<Vertex, Vertex> pair() const { return pair_; }

 private:
  std::pair<Vertex, Vertex> pair_;
};

/// One arc of an assembly: the pieces are concatenated at shared ends and
/// must form a path between branch vertices a and b.
struct ArcWiring {
  Vertex a = kNoVertex;
  Vertex b = kNoVertex;
  std::vector<PathSeq> pieces;
};

/// Builds a certificate from ten wired arcs, checking each concatenation and
/// pairwise internal disjointness. Throws AssemblyError naming the first
/// offending arc.
inline TK5Certificate assemble_tk5(const Graph& g, const std::array<Vertex, 5>& branch, const std::vector<ArcWiring>& wiring) {
  if (!all_distinct(branch)) throw AssemblyError({branch[0], branch[0]}, "branch vertices repeat");
  if (wiring.size() != 10) throw AssemblyError({kNoVertex, kNoVertex}, "need exactly ten arcs");
  auto slot = [&](Vertex v) {
    for (int i = 0; i < 5; ++i)
      if (branch[static_cast<std::size_t>(i)] == v) return i;
    return -1;
  };
  TK5Certificate cert;
  cert.branch = branch;
  std::array<bool, 10> filled{};
  std::vector<int> owner(static_cast<std::size_t>(g.order()), -1);
  for (Vertex b : branch) {
    if (!g.contains(b)) throw AssemblyError({b, b}, "branch vertex out of range");
    owner[static_cast<std::size_t>(b)] = 100;
  }
  for (const ArcWiring& w : wiring) {
    int i = slot(w.a), j = slot(w.b);
    if (i < 0 || j < 0 || i == j) throw AssemblyError({w.a, w.b}, "endpoints are not two branch vertices");
    int k = arc_index(i, j);
    if (filled[static_cast<std::size_t>(k)]) throw AssemblyError({w.a, w.b}, "pair wired twice");
    PathSeq p;
    try {
      p = concat(w.pieces);
    } catch (const GraphError& e) {
      throw AssemblyError({w.a, w.b}, e.what());
    }
    if (p.front() != w.a || p.back() != w.b) {
      if (p.front() == w.b && p.back() == w.a) {
        p = p.reversed();
      } else {
        throw AssemblyError({w.a, w.b}, "pieces do not run between the branch vertices");
      }
    }
    for (Vertex v : p.vertices())
      if (!g.contains(v)) throw AssemblyError({w.a, w.b}, "vertex out of range");
    if (!all_distinct(p.vertices())) throw AssemblyError({w.a, w.b}, "concatenation repeats a vertex");
    for (std::size_t t = 1; t < p.size(); ++t)
      if (!g.adjacent(p[t - 1], p[t]))
        throw AssemblyError({w.a, w.b}, "missing edge " + std::to_string(p[t - 1]) + "-" + std::to_string(p[t]));
    for (std::size_t t = 1; t + 1 < p.size(); ++t) {
      int& o = owner[static_cast<std::size_t>(p[t])];
      if (o == 100) throw AssemblyError({w.a, w.b}, "passes through branch vertex " + std::to_string(p[t]));
      if (o >= 0) {
        auto [oi, oj] = kArcPairs[static_cast<std::size_t>(o)];
        throw AssemblyError({w.a, w.b}, "shares vertex " + std::to_string(p[t]) + " with arc " +
                                            std::to_string(branch[static_cast<std::size_t>(oi)]) + "-" +
                                            std::to_string(branch[static_cast<std::size_t>(oj)]));
      }
      o = k;
    }
    if (i > j) p = p.reversed();
    cert.arcs[static_cast<std::size_t>(k)] = std::move(p);
    filled[static_cast<std::size_t>(k)] = true;
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Search

enum class SearchStatus { found, absent, timeout };

struct TK5SearchResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<TK5Certificate> cert;
};

namespace detail {

/// Routes the ten arcs for a fixed branch set in graph h. Arcs between
/// adjacent branch vertices are the direct edge; the others are induced
/// paths chosen by backtracking, shortest-first per arc, with a
/// connectivity check on every unrouted pair.
class ArcRouter {
 public:
  ArcRouter(const Graph& h, const std::array<Vertex, 5>& branch, const Deadline& deadline)
      : h_(h), branch_(branch), deadline_(deadline), n_(static_cast<std::size_t>(h.order())) {}

  std::optional<TK5Certificate> run() {
    used_.assign(n_, 0);
    for (Vertex b : branch_) used_[static_cast<std::size_t>(b)] = 2;
    cert_.branch = branch_;
    std::vector<int> pending;
    for (int k = 0; k < 10; ++k) {
      auto [i, j] = kArcPairs[static_cast<std::size_t>(k)];
      Vertex a = branch_[static_cast<std::size_t>(i)], b = branch_[static_cast<std::size_t>(j)];
      if (h_.adjacent(a, b)) {
        cert_.arcs[static_cast<std::size_t>(k)] = PathSeq({a, b});
      } else {
        pending.push_back(k);
      }
    }
    if (!feasible(pending)) return std::nullopt;
    if (route(pending)) return cert_;
    return std::nullopt;
  }

 private:
  Vertex end_a(int k) const { return branch_[static_cast<std::size_t>(kArcPairs[static_cast<std::size_t>(k)].first)]; }
  Vertex end_b(int k) const { return branch_[static_cast<std::size_t>(kArcPairs[static_cast<std::size_t>(k)].second)]; }

  /// Every pending pair is joined through free vertices, and every branch
  /// vertex has enough free neighbors for its pending arcs.
  bool feasible(const std::vector<int>& pending) {
    std::array<int, 5> need{};
    for (int k : pending) {
      ++need[static_cast<std::size_t>(kArcPairs[static_cast<std::size_t>(k)].first)];
      ++need[static_cast<std::size_t>(kArcPairs[static_cast<std::size_t>(k)].second)];
    }
    for (int i = 0; i < 5; ++i) {
      if (need[static_cast<std::size_t>(i)] == 0) continue;
      int free = 0;
      for (Vertex w : h_.neighbors(branch_[static_cast<std::size_t>(i)]))
        if (used_[static_cast<std::size_t>(w)] == 0) ++free;
      if (free < need[static_cast<std::size_t>(i)]) return false;
    }
    // Components of the free vertices; a pending pair needs a shared component
    // adjacent to both ends.
    if (pending.empty()) return true;
    comp_.assign(n_, -1);
    int count = 0;
    for (std::size_t s = 0; s < n_; ++s) {
      if (used_[s] != 0 || comp_[s] != -1) continue;
      stack_.assign(1, static_cast<Vertex>(s));
      comp_[s] = count;
      while (!stack_.empty()) {
        Vertex v = stack_.back();
        stack_.pop_back();
        for (Vertex w : h_.neighbors(v))
          if (used_[static_cast<std::size_t>(w)] == 0 && comp_[static_cast<std::size_t>(w)] == -1) {
            comp_[static_cast<std::size_t>(w)] = count;
            stack_.push_back(w);
          }
      }
      ++count;
    }
    std::vector<char> touch_a(static_cast<std::size_t>(count)), touch_b(static_cast<std::size_t>(count));
    for (int k : pending) {
      std::fill(touch_a.begin(), touch_a.end(), 0);
      for (Vertex w : h_.neighbors(end_a(k)))
        if (comp_[static_cast<std::size_t>(w)] >= 0) touch_a[static_cast<std::size_t>(comp_[static_cast<std::size_t>(w)])] = 1;
      bool ok = false;
      for (Vertex w : h_.neighbors(end_b(k)))
        if (comp_[static_cast<std::size_t>(w)] >= 0 && touch_a[static_cast<std::size_t>(comp_[static_cast<std::size_t>(w)])]) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  }

  /// Picks the pending arc whose ends are closest through free vertices.
  int pick(const std::vector<int>& pending, int& dist_out) {
    int best = -1, best_d = 1 << 30;
    for (int k : pending) {
      int d = free_distance(end_a(k), end_b(k));
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    dist_out = best_d;
    return best;
  }

  int free_distance(Vertex a, Vertex b) {
    dist_.assign(n_, -1);
    std::vector<Vertex> frontier{a};
    dist_[static_cast<std::size_t>(a)] = 0;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      Vertex v = frontier[i];
      for (Vertex w : h_.neighbors(v)) {
        if (w == b) return dist_[static_cast<std::size_t>(v)] + 1;
        if (used_[static_cast<std::size_t>(w)] != 0 || dist_[static_cast<std::size_t>(w)] != -1) continue;
        dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(v)] + 1;
        frontier.push_back(w);
      }
    }
    return 1 << 30;
  }

  bool route(std::vector<int> pending) {
    deadline_.check();
    if (pending.empty()) return true;
    int dmin = 0;
    int k = pick(pending, dmin);
    if (k < 0 || dmin >= (1 << 30)) return false;
    pending.erase(std::find(pending.begin(), pending.end(), k));
    Vertex a = end_a(k), b = end_b(k);
    // Induced a-b paths through free vertices, in increasing length.
    int free = 0;
    for (char u : used_) free += (u == 0);
    for (int len = dmin; len <= free + 1; ++len) {
      std::vector<Vertex> path{a};
      if (extend(path, b, len, k, pending)) return true;
    }
    return false;
  }

  /// Extends `path` (ending at a free vertex or at a) to reach b using
  /// exactly `len` edges in total.
  bool extend(std::vector<Vertex>& path, Vertex b, int len, int k, const std::vector<int>& pending) {
    deadline_.check();
    Vertex tip = path.back();
    int remaining = len - static_cast<int>(path.size() - 1);
    if (remaining == 1) {
      if (!h_.adjacent(tip, b)) return false;
      // b must not be adjacent to interior vertices other than the tip.
      for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (h_.adjacent(path[i], b)) return false;
      path.push_back(b);
      cert_.arcs[static_cast<std::size_t>(k)] = PathSeq(path);
      path.pop_back();
      if (feasible(pending) && route(pending)) return true;
      return false;
    }
    for (Vertex w : h_.neighbors(tip)) {
      if (used_[static_cast<std::size_t>(w)] != 0) continue;
      bool chord = false;
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (h_.adjacent(path[i], w)) {
          chord = true;
          break;
        }
      if (chord) continue;
      if (h_.adjacent(w, b) && remaining > 2) continue;  // would leave a chord to b
      // w must still reach b within remaining - 1 steps.
      used_[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      bool ok = false;
      if (reach_within(w, b, remaining - 1)) ok = extend(path, b, len, k, pending);
      path.pop_back();
      used_[static_cast<std::size_t>(w)] = 0;
      if (ok) return true;
    }
    return false;
  }

  bool reach_within(Vertex from, Vertex b, int steps) {
    int d = free_distance(from, b);
    return d <= steps;
  }

  const Graph& h_;
  std::array<Vertex, 5> branch_;
  const Deadline& deadline_;
  std::size_t n_;
  std::vector<char> used_;  // 0 free, 1 on a routed arc, 2 branch
  std::vector<int> comp_;
  std::vector<int> dist_;
  std::vector<Vertex> stack_;
  TK5Certificate cert_;
};

}  // namespace detail

/// Branch sets are tried in lexicographic order over vertices of permitted
/// degree at least four; with several threads, the lexicographically first
/// successful branch set still wins.
inline TK5SearchResult find_tk5(const Graph& g, const TK5Constraints& cons = {},
                                const Deadline& deadline = Deadline::never(), int threads = 1) {
  Graph h = permitted_graph(g, cons);
  TK5SearchResult res;
  if (is_planar(h)) return res;
  std::vector<Vertex> cand;
  for (Vertex v = 0; v < h.order(); ++v)
    if (h.degree(v) >= 4 && !set_contains(cons.forbidden_branch, v)) cand.push_back(v);
  if (cand.size() < 5) return res;
  std::vector<std::array<Vertex, 5>> sets;
  const std::size_t m = cand.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c)
        for (std::size_t d = c + 1; d < m; ++d)
          for (std::size_t e = d + 1; e < m; ++e) sets.push_back({cand[a], cand[b], cand[c], cand[d], cand[e]});
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{sets.size()};
  std::atomic<bool> timed_out{false};
  std::mutex mu;
  std::optional<TK5Certificate> best_cert;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= sets.size() || i >= best.load()) return;
      try {
        detail::ArcRouter router(h, sets[i], deadline);
        if (auto c = router.run()) {
          std::lock_guard<std::mutex> lock(mu);
          if (i < best.load()) {
            best.store(i);
            best_cert = std::move(c);
          }
          return;
        }
      } catch (const SearchTimeout&) {
        timed_out = true;
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (best_cert) {
    if (!verify_tk5(g, *best_cert, cons)) throw std::logic_error("find_tk5: certificate failed verification");
    res.status = SearchStatus::found;
    res.cert = std::move(best_cert);
    return res;
  }
  res.status = timed_out ? SearchStatus::timeout : SearchStatus::absent;
  return res;
}

}  // namespace tk5
