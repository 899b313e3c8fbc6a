#pragma once

// Batch front end: graph formats, certificate documents and command dispatch.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "tk5/bridges.hpp"
#include "tk5/connectivity.hpp"
#include "tk5/deadline.hpp"
#include "tk5/flow.hpp"
#include "tk5/gadget.hpp"
#include "tk5/graph.hpp"
#include "tk5/linkage.hpp"
#include "tk5/nonsep_path.hpp"
#include "tk5/planarity.hpp"
#include "tk5/subdivision.hpp"
#include "tk5/tuple_pipeline.hpp"

namespace tk5::cli {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Formats

enum class Format { graph6, edgelist, json };

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Format format_from_name(const std::string& s) {
  if (s == "graph6" || s == "g6") return Format::graph6;
  if (s == "edgelist") return Format::edgelist;
  if (s == "json") return Format::json;
  throw ParseError("unknown format '" + s + "'");
}

/// By extension: .g6/.graph6, .json, anything else is an edge list.
inline Format format_from_path(const std::string& path) {
  auto ends = [&](const std::string& suf) {
    return path.size() >= suf.size() && path.compare(path.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends(".g6") || ends(".graph6")) return Format::graph6;
  if (ends(".json")) return Format::json;
  return Format::edgelist;
}

namespace detail {

inline void g6_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline Graph g6_decode(const std::string& raw) {
  std::string s = trim(raw);
  if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
  std::size_t pos = 0;
  auto next = [&]() -> int {
    if (pos >= s.size()) throw ParseError("graph6: truncated at offset " + std::to_string(pos));
    int c = static_cast<unsigned char>(s[pos]);
    if (c < 63 || c > 126) throw ParseError("graph6: byte out of range at offset " + std::to_string(pos));
    ++pos;
    return c - 63;
  };
  if (s.empty()) throw ParseError("graph6: empty input");
  std::uint64_t n = 0;
  int first = next();
  if (first < 63) {
    n = static_cast<std::uint64_t>(first);
  } else {
    int second = next();
    int groups = 3;
    if (second == 63) {
      groups = 6;
    } else {
      n = static_cast<std::uint64_t>(second);
      groups = 2;
    }
    for (int i = 0; i < groups; ++i) n = (n << 6) | static_cast<std::uint64_t>(next());
  }
  if (n > 100000) throw ParseError("graph6: graph too large");
  std::vector<Edge> es;
  int bits_left = 0, cur = 0;
  for (std::uint64_t j = 1; j < n; ++j)
    for (std::uint64_t i = 0; i < j; ++i) {
      if (bits_left == 0) {
        cur = next();
        bits_left = 6;
      }
      --bits_left;
      if ((cur >> bits_left) & 1) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  if (pos != s.size()) throw ParseError("graph6: trailing bytes at offset " + std::to_string(pos));
  return build_graph(static_cast<int>(n), es);
}

inline Graph edgelist_decode(const std::string& s) {
  std::istringstream in(s);
  std::string line;
  int lineno = 0;
  long long n = -1;
  std::vector<Edge> es;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    auto where = [&]() { return "edgelist: line " + std::to_string(lineno); };
    if (n < 0) {
      if (!(ls >> n) || n < 0) throw ParseError(where() + ": expected a vertex count");
    } else {
      long long u = 0, v = 0;
      if (!(ls >> u >> v)) throw ParseError(where() + ": expected 'u v'");
      if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(where() + ": vertex id out of range");
      if (u == v) throw ParseError(where() + ": self-loop");
      es.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::string rest;
    if (ls >> rest) throw ParseError("edgelist: line " + std::to_string(lineno) + ": unexpected '" + rest + "'");
  }
  if (n < 0) throw ParseError("edgelist: missing vertex count");
  return build_graph(static_cast<int>(n), es);
}

inline Graph json_decode(const std::string& s) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 0)
    throw ParseError("json: expected {\"n\": int, \"edges\": [[u, v], ...]}");
  long long n = j["n"].get<long long>();
  std::vector<Edge> es;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("json: 'edges' must be an array");
    std::size_t k = 0;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw ParseError("json: edge " + std::to_string(k) + " must be [u, v]");
      long long u = e[0].get<long long>(), v = e[1].get<long long>();
      if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("json: edge " + std::to_string(k) + " out of range");
      if (u == v) throw ParseError("json: edge " + std::to_string(k) + " is a self-loop");
      es.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      ++k;
    }
  }
  return build_graph(static_cast<int>(n), es);
}

}  // namespace detail

inline Graph parse_graph(const std::string& bytes, Format f) {
  switch (f) {
    case Format::graph6:
      return detail::g6_decode(bytes);
    case Format::edgelist:
      return detail::edgelist_decode(bytes);
    default:
      return detail::json_decode(bytes);
  }
}

/// Canonical form: edges sorted, one trailing newline for text formats.
inline std::string emit_graph(const Graph& g, Format f) {
  std::vector<Edge> es = g.edges();
  std::sort(es.begin(), es.end());
  if (f == Format::graph6) {
    std::string out;
    const auto n = static_cast<std::uint64_t>(g.order());
    detail::g6_size(out, n);
    int bits = 0, cur = 0;
    for (Vertex j = 1; j < g.order(); ++j)
      for (Vertex i = 0; i < j; ++i) {
        cur = (cur << 1) | (g.adjacent(i, j) ? 1 : 0);
        if (++bits == 6) {
          out.push_back(static_cast<char>(cur + 63));
          bits = cur = 0;
        }
      }
    if (bits > 0) out.push_back(static_cast<char>((cur << (6 - bits)) + 63));
    return out + "\n";
  }
  if (f == Format::edgelist) {
    std::string out = std::to_string(g.order()) + "\n";
    for (auto [u, v] : es) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
  }
  json j{{"n", g.order()}, {"edges", json::array()}};
  for (auto [u, v] : es) j["edges"].push_back({u, v});
  return j.dump() + "\n";
}

/// FNV-1a (64-bit) of the canonical edge list, as 16 hex digits.
inline std::string input_digest(const Graph& g) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : emit_graph(g, Format::edgelist)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 15];
  return out;
}

// ---------------------------------------------------------------------------
// Payloads

inline json to_json(const PathSeq& p) { return p.vertices(); }
inline json to_json(const CycleSeq& c) { return c.vertices(); }

inline json to_json(const TK5Certificate& c) {
  json arcs = json::array();
  for (const auto& a : c.arcs) arcs.push_back(to_json(a));
  return {{"branch", c.branch}, {"arcs", arcs}};
}

inline json to_json(const K4MinusCertificate& c) {
  json j{{"x1", c.x1}, {"x2", c.x2}, {"y1", c.y1}, {"y2", c.y2}, {"missing_pair", nullptr}};
  if (c.missing_pair) j["missing_pair"] = {c.missing_pair->first, c.missing_pair->second};
  return j;
}

inline json to_json(const Separation& s) { return {{"side1", s.side1}, {"side2", s.side2}, {"cut", s.cut}}; }

inline json to_json(const ApexWheelSeparation& s) {
  const auto& r = s.correspondence;
  return {{"separation", to_json(s.sep)}, {"y2", r.y2}, {"a", r.a}, {"b", r.b}};
}

inline json to_json(const DiscEmbedding& e) { return {{"rotation", e.rotation}, {"outer_face", e.outer_face}}; }

inline json to_json(const SocietyWitness& w) {
  return {{"parts", w.parts}, {"boundary", w.boundary}, {"embedding", to_json(w.embedding)}};
}

inline json to_json(const CycleObstruction& o) {
  static const char* names[] = {"", "disjoint_2_cut", "shared_vertex_cuts", "three_disjoint_cuts"};
  json j{{"kind", names[static_cast<int>(o.kind)]}, {"cuts", o.cuts}, {"parts", o.parts}, {"shared", nullptr}};
  if (o.shared) j["shared"] = *o.shared;
  if (o.spine) j["spine"] = *o.spine;
  return j;
}

inline json to_json(const ChainOfBlocks& c) {
  return {{"u", c.u}, {"v", c.v}, {"blocks", c.blocks}, {"cut_vertices", c.cut_vertices}, {"hanging", c.hanging}};
}

inline json to_json(const BridgeRec& b) {
  return {{"kind", b.kind == BridgeRec::Kind::chord ? "chord" : "component"},
          {"core", b.core},
          {"attachments", b.attachments},
          {"edges", b.edges}};
}

inline json to_json(const TheoremOutcome& o) {
  json j{{"outcome", outcome_number(o)}};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, OutcomeTk5NoY2>) j["tk5"] = to_json(v.cert);
        if constexpr (std::is_same_v<T, OutcomeK4Minus>) j["k4minus"] = to_json(v.cert);
        if constexpr (std::is_same_v<T, OutcomeGadget>) j["gadget"] = to_json(v.sep);
        if constexpr (std::is_same_v<T, OutcomeTk5GPrime>) j["tk5_gprime"] = to_json(v.cert);
      },
      o);
  return j;
}

inline json to_json(const Lemma32Outcome& o) {
  json j;
  if (auto* t = std::get_if<Tk5AvoidingY2>(&o)) j = {{"variant", "tk5_avoiding_y2"}, {"tk5", to_json(t->cert)}};
  if (auto* k = std::get_if<K4MinusCertificate>(&o)) j = {{"variant", "k4minus"}, {"k4minus", to_json(*k)}};
  if (auto* s = std::get_if<ApexWheelSeparation>(&o)) j = {{"variant", "gadget"}, {"gadget", to_json(*s)}};
  if (auto* p = std::get_if<PathOrTk5>(&o)) {
    if (auto* t = std::get_if<TK5Certificate>(&p->value)) j = {{"variant", "tk5_gprime"}, {"tk5", to_json(*t)}};
    if (auto* x = std::get_if<PathSeq>(&p->value)) j = {{"variant", "path"}, {"path", to_json(*x)}};
  }
  return j;
}

// ---------------------------------------------------------------------------
// Documents and dispatch

struct Document {
  std::string command;
  std::string digest;
  json outcome;
  bool verified = false;
  std::string checker;

  json to_json() const {
    return {{"schema_version", "1"},
            {"command", command},
            {"input_digest", digest},
            {"outcome", outcome},
            {"verification", {{"verified", verified}, {"checker", checker}}}};
  }
};

enum ExitCode { kPositive = 0, kNegative = 1, kInputError = 2, kTimeout = 3 };

struct Options {
  std::string in;
  std::string format;
  long long budget_ms = 60000;
  int threads = 1;
  Vertex x1 = kNoVertex, x2 = kNoVertex, y1 = kNoVertex, y2 = kNoVertex;
  std::vector<Vertex> w;
  Vertex s1 = kNoVertex, t1 = kNoVertex, s2 = kNoVertex, t2 = kNoVertex;
  Vertex u = kNoVertex, v = kNoVertex;
  std::vector<Vertex> boundary, terminals, sub, remove, forbid, avoid;
  int k = -1;
};

namespace detail {

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void need(bool ok, const std::string& what) {
  if (!ok) throw ParseError(what);
}

inline void need_vertex(const Graph& g, Vertex v, const std::string& flag) {
  need(v != kNoVertex, "missing " + flag);
  need(g.contains(v), flag + " out of range");
}

inline TheoremRoles roles_of(const Graph& g, const Options& o) {
  for (auto [v, f] : {std::pair{o.x1, "--x1"}, {o.x2, "--x2"}, {o.y1, "--y1"}, {o.y2, "--y2"}}) need_vertex(g, v, f);
  need(o.w.size() == 3, "--w needs three vertices");
  return {o.x1, o.x2, o.y1, o.y2, {o.w[0], o.w[1], o.w[2]}};
}

inline bool bridges_partition(const Graph& g, const SubgraphSpec& h, const std::vector<BridgeRec>& bs) {
  std::vector<Edge> outside, covered;
  std::vector<Edge> he = h.edges;
  for (auto& e : he) e = make_edge(e.first, e.second);
  std::sort(he.begin(), he.end());
  for (Edge e : g.edges())
    if (!std::binary_search(he.begin(), he.end(), e)) outside.push_back(e);
  for (const auto& b : bs) {
    for (Edge e : b.edges) covered.push_back(make_edge(e.first, e.second));
    for (Vertex a : b.attachments)
      if (!set_contains(h.vertices, a)) return false;
    if (!sets_disjoint(b.core, h.vertices)) return false;
  }
  std::sort(outside.begin(), outside.end());
  std::sort(covered.begin(), covered.end());
  return outside == covered;
}

/// Runs one command; fills the document and returns the exit code.
inline int execute(const std::string& cmd, const Graph& g, const Options& o, Document& doc) {
  Deadline dl = Deadline::in_ms(o.budget_ms);
  auto set = [&](json out, bool verified, const char* checker, int code) {
    doc.outcome = std::move(out);
    doc.verified = verified;
    doc.checker = checker;
    return code;
  };

  if (cmd == "planarity") {
    PlanarityResult r = test_planarity(g);
    if (r.planar) return set({{"planar", true}, {"rotation", r.rotation}}, is_planar_rotation(g, r.rotation), "rotation_faces", kPositive);
    return set({{"planar", false}, {"kuratowski", r.kuratowski}}, is_kuratowski_subgraph(g, r.kuratowski), "kuratowski_subgraph", kNegative);
  }
  if (cmd == "connectivity") {
    int kappa = vertex_connectivity(g);
    json out{{"connectivity", kappa}, {"separator", nullptr}};
    bool ok = true;
    // A minimum separator from some nonadjacent pair, when one exists.
    for (Vertex s = 0; s < g.order() && out["separator"].is_null(); ++s)
      for (Vertex t = s + 1; t < g.order(); ++t) {
        if (g.adjacent(s, t) || local_connectivity(g, s, t) != kappa) continue;
        VertexSet sep = min_vertex_separator(g, s, t);
        ok = static_cast<int>(sep.size()) == kappa && !is_connected(g, mask_of(static_cast<std::size_t>(g.order()), sep));
        out["separator"] = sep;
        break;
      }
    if (out["separator"].is_null()) ok = is_complete(g) || g.order() <= 1 || !is_connected(g);
    int code = o.k < 0 ? kPositive : (kappa >= o.k ? kPositive : kNegative);
    if (o.k >= 0) out["k"] = o.k;
    return set(out, ok, "separator_disconnects", code);
  }
  if (cmd == "two-paths") {
    for (auto [v, f] : {std::pair{o.s1, "--s1"}, {o.t1, "--t1"}, {o.s2, "--s2"}, {o.t2, "--t2"}}) need_vertex(g, v, f);
    TwoPathsResult r = two_disjoint_paths(g, o.s1, o.s2, o.t1, o.t2, dl);
    if (auto* p = std::get_if<LinkagePaths>(&r)) {
      bool ok = is_valid_path(g, p->first) && is_valid_path(g, p->second) && p->first.front() == o.s1 &&
                p->first.back() == o.t1 && p->second.front() == o.s2 && p->second.back() == o.t2 &&
                sets_disjoint(p->first.vertex_set(), p->second.vertex_set());
      return set({{"linked", true}, {"first", to_json(p->first)}, {"second", to_json(p->second)}}, ok, "disjoint_paths", kPositive);
    }
    const auto& w = std::get<SocietyWitness>(r);
    return set({{"linked", false}, {"witness", to_json(w)}}, verify_society_witness(g, w), "society_witness", kNegative);
  }
  if (cmd == "society") {
    need(o.boundary.size() >= 4, "--boundary needs at least four vertices");
    for (Vertex b : o.boundary) need_vertex(g, b, "--boundary");
    SocietyLinkageResult r = society_linkage(g, o.boundary, dl);
    if (auto* c = std::get_if<CrossingLinkage>(&r)) {
      auto b = [&](int i) { return o.boundary[static_cast<std::size_t>(c->indices[static_cast<std::size_t>(i)])]; };
      const auto& p = c->paths;
      bool ok = is_valid_path(g, p.first) && is_valid_path(g, p.second) && p.first.front() == b(0) &&
                p.first.back() == b(2) && p.second.front() == b(1) && p.second.back() == b(3) &&
                sets_disjoint(p.first.vertex_set(), p.second.vertex_set());
      return set({{"crossing", true}, {"indices", c->indices}, {"first", to_json(p.first)}, {"second", to_json(p.second)}},
                 ok, "disjoint_paths", kPositive);
    }
    const auto& w = std::get<SocietyWitness>(r);
    return set({{"crossing", false}, {"witness", to_json(w)}}, verify_society_witness(g, w), "society_witness", kNegative);
  }
  if (cmd == "cycle3") {
    need(o.terminals.size() == 3, "--terminals needs three vertices");
    for (Vertex t : o.terminals) need_vertex(g, t, "--terminals");
    Vertex a = o.terminals[0], b = o.terminals[1], c = o.terminals[2];
    CycleResult r = cycle_through_three(g, a, b, c, dl);
    if (auto* cy = std::get_if<CycleSeq>(&r)) {
      bool ok = is_valid_cycle(g, *cy) && cy->contains(a) && cy->contains(b) && cy->contains(c);
      return set({{"cycle", to_json(*cy)}}, ok, "cycle", kPositive);
    }
    const auto& ob = std::get<CycleObstruction>(r);
    return set({{"obstruction", to_json(ob)}}, verify_cycle_obstruction(g, a, b, c, ob), "cycle_obstruction", kNegative);
  }
  if (cmd == "bridges") {
    need(!o.sub.empty(), "--sub needs the vertices of the subgraph");
    for (Vertex v : o.sub) need_vertex(g, v, "--sub");
    Relabeled ind = induced_subgraph(g, make_set(o.sub));
    SubgraphSpec h{make_set(o.sub), {}};
    for (auto [a, b] : ind.graph.edges())
      h.edges.push_back(make_edge(ind.origin[static_cast<std::size_t>(a)], ind.origin[static_cast<std::size_t>(b)]));
    auto bs = enumerate_bridges(g, h);
    json arr = json::array();
    for (const auto& b : bs) arr.push_back(to_json(b));
    return set({{"bridges", arr}}, bridges_partition(g, h, bs), "edge_partition", bs.empty() ? kNegative : kPositive);
  }
  if (cmd == "chain") {
    need_vertex(g, o.u, "--u");
    need_vertex(g, o.v, "--v");
    for (Vertex r : o.remove) need_vertex(g, r, "--remove");
    VertexMask rm = mask_of(static_cast<std::size_t>(g.order()), make_set(o.remove));
    auto ch = chain_of_blocks(g, o.u, o.v, rm);
    if (!ch) return set({{"connected", false}}, !shortest_path(g, o.u, o.v, rm), "unreachable", kNegative);
    return set({{"connected", true}, {"chain", to_json(*ch)}, {"exact", ch->exact()}}, verify_chain(g, *ch, rm),
               "chain_of_blocks", ch->exact() ? kPositive : kNegative);
  }
  if (cmd == "tk5") {
    for (Vertex f : o.forbid) need_vertex(g, f, "--forbid");
    TK5Constraints cons{make_set(o.forbid), {}};
    TK5SearchResult r = find_tk5(g, cons, dl, o.threads);
    if (r.status == SearchStatus::timeout) return set({{"timeout", true}}, false, "none", kTimeout);
    if (r.status == SearchStatus::absent) return set({{"found", false}}, true, "exhaustive_search", kNegative);
    return set({{"found", true}, {"tk5", to_json(*r.cert)}}, verify_tk5(g, *r.cert, cons), "tk5_certificate", kPositive);
  }
  if (cmd == "k4minus") {
    for (Vertex a : o.avoid) need_vertex(g, a, "--avoid");
    auto c = find_k4_minus(g, make_set(o.avoid));
    if (!c) return set({{"found", false}}, true, "exhaustive_scan", kNegative);
    return set({{"found", true}, {"k4minus", to_json(*c)}}, verify_k4_minus(g, *c, make_set(o.avoid)), "k4minus_edges", kPositive);
  }
  if (cmd == "gadget") {
    need_vertex(g, o.y2, "--y2");
    auto s = find_gadget_separation(g, o.y2);
    if (!s) return set({{"found", false}}, true, "exhaustive_scan", kNegative);
    return set({{"found", true}, {"gadget", to_json(*s)}}, verify_gadget_separation(g, *s), "gadget_match", kPositive);
  }
  if (cmd == "reduce") {
    TheoremRoles r = roles_of(g, o);
    ReductionOptions ro;
    ro.threads = o.threads;
    auto out = reduction_step(g, r, dl, ro);
    if (!out) return set({{"timeout", true}}, false, "none", kTimeout);
    return set(to_json(*out), verify_lemma32(g, r, *out), "outcome_checker", kPositive);
  }
  if (cmd == "classify") {
    TheoremRoles r = roles_of(g, o);
    ClassifyReport rep = classify_theorem1(g, r, {o.budget_ms, o.threads});
    if (auto* t = std::get_if<ClassifyTimeout>(&rep.result))
      return set({{"timeout", true}, {"stage", t->stage}, {"stages", rep.stages}}, false, "none", kTimeout);
    const auto& oc = std::get<TheoremOutcome>(rep.result);
    json out = to_json(oc);
    out["stages"] = rep.stages;
    return set(out, verify_theorem_outcome(g, r, oc), "outcome_checker", kPositive);
  }
  throw ParseError("unknown command '" + cmd + "'");
}

}  // namespace detail

inline const std::vector<std::pair<std::string, std::string>>& commands() {
  static const std::vector<std::pair<std::string, std::string>> cmds{
      {"planarity", "rotation system or Kuratowski subgraph"},
      {"connectivity", "vertex connectivity with a minimum separator"},
      {"two-paths", "disjoint s1-t1 and s2-t2 paths, or a planar society witness"},
      {"society", "crossing linkage on a cyclic boundary, or a planar society witness"},
      {"cycle3", "cycle through three vertices, or a cut obstruction"},
      {"bridges", "bridges of the induced subgraph on --sub"},
      {"chain", "chain of blocks between --u and --v after deleting --remove"},
      {"tk5", "TK5 subdivision search"},
      {"k4minus", "K4 minus an edge, avoiding --avoid"},
      {"reduce", "one reduction step for the K4-minus roles"},
      {"classify", "full classification for the K4-minus roles"},
      {"gadget", "apex-wheel gadget separation at --y2"},
  };
  return cmds;
}

/// Entry point shared by the binary and the tests. args excludes the
/// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"TK5 structure toolkit: certificates for planarity, linkages, subdivisions and K4-minus outcomes"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, desc] : commands()) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--in", o.in, "input file, '-' for standard input")->required();
    s->add_option("--format", o.format, "graph6 | edgelist | json (default: by extension)");
    s->add_option("--budget-ms", o.budget_ms, "search budget in milliseconds")->capture_default_str();
    s->add_option("--threads", o.threads, "worker threads")->capture_default_str();
    subs[name] = s;
  }
  for (const char* name : {"reduce", "classify"}) {
    CLI::App* s = subs[name];
    s->add_option("--x1", o.x1)->required();
    s->add_option("--x2", o.x2)->required();
    s->add_option("--y1", o.y1)->required();
    s->add_option("--y2", o.y2)->required();
    s->add_option("--w", o.w, "w1,w2,w3")->delimiter(',')->required();
  }
  subs["gadget"]->add_option("--y2", o.y2)->required();
  subs["two-paths"]->add_option("--s1", o.s1)->required();
  subs["two-paths"]->add_option("--t1", o.t1)->required();
  subs["two-paths"]->add_option("--s2", o.s2)->required();
  subs["two-paths"]->add_option("--t2", o.t2)->required();
  subs["society"]->add_option("--boundary", o.boundary, "cyclic order")->delimiter(',')->required();
  subs["cycle3"]->add_option("--terminals", o.terminals, "three vertices")->delimiter(',')->required();
  subs["bridges"]->add_option("--sub", o.sub, "vertices of the induced subgraph")->delimiter(',')->required();
  subs["chain"]->add_option("--u", o.u)->required();
  subs["chain"]->add_option("--v", o.v)->required();
  subs["chain"]->add_option("--remove", o.remove)->delimiter(',');
  subs["tk5"]->add_option("--forbid", o.forbid, "vertices that may not be branch vertices")->delimiter(',');
  subs["k4minus"]->add_option("--avoid", o.avoid)->delimiter(',');
  subs["connectivity"]->add_option("--k", o.k, "exit 0 iff the graph is k-connected");

  std::vector<std::string> argv_s{"tk5cli"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPositive;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInputError;
  }
  std::string cmd = app.get_subcommands().front()->get_name();

  Document doc;
  doc.command = cmd;
  try {
    Format f = o.format.empty() ? format_from_path(o.in) : format_from_name(o.format);
    Graph g = parse_graph(detail::read_input(o.in), f);
    doc.digest = input_digest(g);
    int code = detail::execute(cmd, g, o, doc);
    if (code != kTimeout && !doc.verified) {
      err << "error: result failed verification\n";
      out << doc.to_json().dump(2) << "\n";
      return kInputError;
    }
    out << doc.to_json().dump(2) << "\n";
    return code;
  } catch (const SearchTimeout&) {
    doc.outcome = {{"timeout", true}};
    doc.checker = "none";
    out << doc.to_json().dump(2) << "\n";
    return kTimeout;
  } catch (const PreconditionError& e) {
    err << "error: precondition " << e.name() << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace tk5::cli
