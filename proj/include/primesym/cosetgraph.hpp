#ifndef PRIMESYM_COSETGRAPH_HPP_
#define PRIMESYM_COSETGRAPH_HPP_

// Coset graphs Cos(G, H, x): vertices are the right cosets Hg, and Hg ~ Hg'
// iff g' g^-1 lies in HxH. With x^2 in H and x not in H this is an
// undirected G-arc-transitive graph of valency |H : H ∩ H^x|, connected iff
// <H, x> = G.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "primesym/backtrack.hpp"
#include "primesym/bignat.hpp"
#include "primesym/errors.hpp"
#include "primesym/perm.hpp"
#include "primesym/primes.hpp"
#include "primesym/stabchain.hpp"

namespace primesym {

////////////////////////////////////////////////////////////////////////
// Graph
////////////////////////////////////////////////////////////////////////

// Simple undirected graph; adjacency lists are strictly increasing.
struct Graph {
  std::size_t                        vertex_count = 0;
  std::vector<std::vector<Point>>    adjacency;

  std::size_t degree(Point v) const { return adjacency[v].size(); }

  bool adjacent(Point u, Point v) const {
    auto const& a = adjacency[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (auto const& a : adjacency) {
      total += a.size();
    }
    return total / 2;
  }

  // Edges u < v in lexicographic order.
  std::vector<std::pair<Point, Point>> edges() const {
    std::vector<std::pair<Point, Point>> result;
    for (Point u = 0; u < vertex_count; ++u) {
      for (Point v : adjacency[u]) {
        if (u < v) {
          result.emplace_back(u, v);
        }
      }
    }
    return result;
  }

  friend bool operator==(Graph const&, Graph const&) = default;
};

// Builds a graph from an edge list; duplicate edges are merged.
inline Graph make_graph(std::size_t                                 n,
                        std::vector<std::pair<Point, Point>> const& edges) {
  Graph g{n, std::vector<std::vector<Point>>(n)};
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw PointOutOfRange("edge endpoint exceeds vertex count "
                            + std::to_string(n));
    }
    if (u == v) {
      throw InvalidParams("loops are not allowed");
    }
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (auto& a : g.adjacency) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return g;
}

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Point, Point>> edges;
  for (Point u = 0; u < n; ++u) {
    for (Point v = u + 1; v < n; ++v) {
      edges.emplace_back(u, v);
    }
  }
  return make_graph(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<Point, Point>> edges;
  for (Point u = 0; u < n; ++u) {
    edges.emplace_back(u, static_cast<Point>((u + 1) % n));
  }
  return make_graph(n, edges);
}

// The d-cube on 2^d vertices; u ~ v iff they differ in one bit.
inline Graph hypercube_graph(unsigned d) {
  std::size_t                          n = std::size_t{1} << d;
  std::vector<std::pair<Point, Point>> edges;
  for (Point u = 0; u < n; ++u) {
    for (unsigned b = 0; b < d; ++b) {
      edges.emplace_back(u, u ^ (Point{1} << b));
    }
  }
  return make_graph(n, edges);
}

// One "u v" pair per line, 0-based, u < v.
inline void write_edge_list(std::ostream& out, Graph const& g) {
  for (auto [u, v] : g.edges()) {
    out << u << ' ' << v << '\n';
  }
}

inline Graph read_edge_list(std::istream& in, std::size_t vertex_count) {
  std::vector<std::pair<Point, Point>> edges;
  std::string                          line;
  std::size_t                          line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream ls(line);
    long long          u = -1, v = -1;
    std::string        rest;
    if (!(ls >> u >> v) || (ls >> rest) || u < 0 || v < 0) {
      throw ParseError("edge list line " + std::to_string(line_no)
                       + ": expected two vertex numbers");
    }
    edges.emplace_back(static_cast<Point>(u), static_cast<Point>(v));
  }
  return make_graph(vertex_count, edges);
}

inline bool is_automorphism(Graph const& g, Permutation const& p) {
  if (p.degree() != g.vertex_count) {
    return false;
  }
  for (Point u = 0; u < g.vertex_count; ++u) {
    if (g.degree(p[u]) != g.degree(u)) {
      return false;
    }
    for (Point v : g.adjacency[u]) {
      if (!g.adjacent(p[u], p[v])) {
        return false;
      }
    }
  }
  return true;
}

inline void check_automorphisms(Graph const& g, PermGroup const& group) {
  if (group.degree() != g.vertex_count) {
    throw NotAnAutomorphism("group degree " + std::to_string(group.degree())
                            + " differs from vertex count "
                            + std::to_string(g.vertex_count));
  }
  for (auto const& s : group.generators()) {
    if (!is_automorphism(g, s)) {
      throw NotAnAutomorphism("generator " + format_cycles(s)
                              + " does not preserve adjacency");
    }
  }
}

struct GraphProps {
  std::size_t                vertex_count = 0;
  std::size_t                edge_count   = 0;
  bool                       regular      = true;
  std::optional<std::size_t> valency;  // set iff regular
  bool                       connected    = true;
  bool                       bipartite    = true;
  bool                       complete     = false;
};

inline GraphProps graph_props(Graph const& g) {
  GraphProps props;
  props.vertex_count = g.vertex_count;
  props.edge_count   = g.edge_count();
  if (g.vertex_count > 0) {
    std::size_t d = g.degree(0);
    for (Point v = 0; v < g.vertex_count; ++v) {
      if (g.degree(v) != d) {
        props.regular = false;
      }
    }
    if (props.regular) {
      props.valency = d;
    }
  } else {
    props.valency = 0;
  }
  // BFS 2-colouring over every component.
  std::vector<int> colour(g.vertex_count, -1);
  std::size_t      components = 0;
  for (Point s = 0; s < g.vertex_count; ++s) {
    if (colour[s] != -1) {
      continue;
    }
    ++components;
    colour[s] = 0;
    std::vector<Point> queue{s};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Point u = queue[i];
      for (Point v : g.adjacency[u]) {
        if (colour[v] == -1) {
          colour[v] = 1 - colour[u];
          queue.push_back(v);
        } else if (colour[v] == colour[u]) {
          props.bipartite = false;
        }
      }
    }
  }
  props.connected = components <= 1;
  props.complete  = props.edge_count * 2 == g.vertex_count * (g.vertex_count - (g.vertex_count > 0));
  return props;
}

////////////////////////////////////////////////////////////////////////
// Coset specifications
////////////////////////////////////////////////////////////////////////

struct CosetSpec {
  PermGroup   g;
  PermGroup   h;
  Permutation x;
  PermGroup   arc_stab;  // H ∩ H^x
  BigNat      valency;   // |H : H ∩ H^x|
  BigNat      vertex_count;
};

struct SpecReport {
  BigNat valency;
  BigNat vertex_count;
  BigNat arc_stab_order;
  BigNat generated_order;  // |<H, x>|
  bool   connected             = false;
  bool   undirected_ok         = false;  // x^2 in H ∩ H^x
  bool   x_normalizes_arc_stab = false;
  bool   x_is_2_element        = false;
};

struct SpecAnalysis {
  CosetSpec  spec;
  SpecReport report;
};

inline bool normalizes(Permutation const& x, PermGroup const& k) {
  for (auto const& s : k.generators()) {
    if (!k.contains(conjugate(s, x))) {
      return false;
    }
  }
  return true;
}

inline SpecAnalysis analyze_spec(PermGroup const& g, PermGroup const& h,
                                 Permutation const&      x,
                                 BacktrackOptions const& options = {}) {
  if (h.degree() != g.degree() || x.degree() != g.degree()) {
    throw DegreeMismatch("G, H and x must have equal degrees");
  }
  if (!is_subgroup(h, g)) {
    throw NotASubgroup("H is not contained in G");
  }
  if (!g.contains(x)) {
    throw NotASubgroup("x " + format_cycles(x) + " is not in G");
  }
  if (h.contains(x)) {
    throw XInsideH("x " + format_cycles(x) + " lies in H");
  }
  SpecAnalysis result{
      CosetSpec{g, h, x, PermGroup::trivial(g.degree()), 0, 0}, {}};
  auto& spec   = result.spec;
  auto& report = result.report;

  spec.arc_stab     = intersection(h, conjugate(h, x), options);
  spec.valency      = h.order() / spec.arc_stab.order();
  spec.vertex_count = g.order() / h.order();

  std::vector<Permutation> gens = h.generators();
  gens.push_back(x);
  PermGroup generated(g.degree(), std::move(gens));

  report.valency               = spec.valency;
  report.vertex_count          = spec.vertex_count;
  report.arc_stab_order        = spec.arc_stab.order();
  report.generated_order       = generated.order();
  report.connected             = report.generated_order == g.order();
  report.undirected_ok         = spec.arc_stab.contains(x * x);
  report.x_normalizes_arc_stab = normalizes(x, spec.arc_stab);
  report.x_is_2_element        = is_two_power(order(x));
  return result;
}

struct CosetGraph {
  Graph     graph;
  PermGroup action;  // G acting on the vertices
};

inline CosetGraph build_coset_graph(CosetSpec const& spec,
                                    std::size_t      max_vertices) {
  if (spec.vertex_count > max_vertices) {
    throw TooManyVertices("|G:H| = " + to_string(spec.vertex_count)
                          + " exceeds the limit "
                          + std::to_string(max_vertices));
  }
  CosetTable  table(spec.g, spec.h, max_vertices);
  std::size_t n = table.size();

  // The neighbours of H are the cosets H x h, i.e. the orbit of Hx under H;
  // those of H g are their translates by g.
  std::size_t        hx = table.index_of(spec.x);
  std::vector<Point> start{static_cast<Point>(hx)};
  std::vector<bool>  seen(n, false);
  seen[hx] = true;
  for (std::size_t i = 0; i < start.size(); ++i) {
    for (auto const& s : spec.h.generators()) {
      std::size_t next = table.act(start[i], s);
      if (!seen[next]) {
        seen[next] = true;
        start.push_back(static_cast<Point>(next));
      }
    }
  }
  if (spec.valency != start.size()) {
    throw InternalContradiction("neighbourhood of H has size "
                                + std::to_string(start.size())
                                + ", expected valency "
                                + to_string(spec.valency));
  }

  Graph graph{n, std::vector<std::vector<Point>>(n)};
  for (std::size_t v = 0; v < n; ++v) {
    auto& adj = graph.adjacency[v];
    if (v == 0) {
      adj = start;
    } else {
      auto const& rep = table.representative(v);
      for (Point w : start) {
        adj.push_back(static_cast<Point>(table.act(w, rep)));
      }
    }
    std::sort(adj.begin(), adj.end());
  }
  for (Point u = 0; u < n; ++u) {
    for (Point v : graph.adjacency[u]) {
      if (!graph.adjacent(v, u)) {
        if (spec.arc_stab.contains(spec.x * spec.x)) {
          throw BrokenSymmetry("HxH != Hx^-1H although x^2 lies in H ∩ H^x");
        }
        throw InvalidParams("Cos(G,H,x) is directed: HxH != Hx^-1H");
      }
    }
  }
  return {std::move(graph), table.action()};
}

inline Graph build_graph(CosetSpec const& spec, std::size_t max_vertices) {
  return build_coset_graph(spec, max_vertices).graph;
}

////////////////////////////////////////////////////////////////////////
// Quotients and symmetry checks
////////////////////////////////////////////////////////////////////////

struct QuotientReport {
  Graph       graph;
  std::vector<std::vector<Point>> orbits;
  bool        semiregular       = false;  // every orbit has size |K|
  bool        valency_preserved = false;
  bool        intra_orbit_edges = false;  // some edge joins two vertices of one orbit
};

// Graph on the K-orbits; two orbits are adjacent iff some of their members
// are. Two orbits are rejected unless `allow_two_orbits` is set.
inline QuotientReport quotient_graph(Graph const& graph, PermGroup const& k,
                                     bool allow_two_orbits = false) {
  check_automorphisms(graph, k);
  QuotientReport report;
  report.orbits = orbits(k);
  std::size_t m = report.orbits.size();
  if (m < 2 || (m == 2 && !allow_two_orbits)) {
    throw DegenerateQuotient("K has " + std::to_string(m) + " orbit"
                             + (m == 1 ? "" : "s") + " on the vertices");
  }
  std::vector<Point> label(graph.vertex_count);
  for (Point i = 0; i < m; ++i) {
    for (Point v : report.orbits[i]) {
      label[v] = i;
    }
  }
  std::vector<std::pair<Point, Point>> edges;
  for (auto [u, v] : graph.edges()) {
    if (label[u] == label[v]) {
      report.intra_orbit_edges = true;
    } else {
      edges.emplace_back(label[u], label[v]);
    }
  }
  report.graph = make_graph(m, edges);

  BigNat order       = k.order();
  report.semiregular = std::all_of(
      report.orbits.begin(), report.orbits.end(),
      [&](auto const& o) { return BigNat(o.size()) == order; });
  auto before              = graph_props(graph);
  auto after               = graph_props(report.graph);
  report.valency_preserved = before.valency && after.valency
                             && *before.valency == *after.valency;
  return report;
}

inline bool arc_transitivity_check(PermGroup const& g, Graph const& graph) {
  if (g.degree() != graph.vertex_count || graph.vertex_count == 0) {
    return false;
  }
  for (auto const& s : g.generators()) {
    if (!is_automorphism(graph, s)) {
      return false;
    }
  }
  if (!is_transitive(g)) {
    return false;
  }
  auto const& nbrs = graph.adjacency[0];
  if (nbrs.empty()) {
    return true;
  }
  return orbit(point_stabilizer(g, 0), nbrs.front()).size() == nbrs.size();
}

struct RPartReport {
  BigNat stabilizer_order;
  BigNat r_part;
  BigNat max_prime;
  bool   r_part_ok    = false;  // |G_a|_r = r
  bool   max_prime_ok = false;  // r = max prime divisor of |G_a|
  bool   passed() const noexcept { return r_part_ok && max_prime_ok; }
};

inline RPartReport stabilizer_rpart_check(PermGroup const& g, Point vertex,
                                          std::uint64_t r) {
  check_point(g, vertex);
  if (!is_prime(r)) {
    throw InvalidParams(std::to_string(r) + " is not prime");
  }
  if (!is_transitive(g)) {
    throw NotTransitive("the group is not vertex-transitive");
  }
  RPartReport report;
  report.stabilizer_order = point_stabilizer(g, vertex).order();
  report.r_part           = p_part(report.stabilizer_order, r);
  report.max_prime        = report.stabilizer_order == 1
                                ? BigNat(1)
                                : largest_prime_divisor(report.stabilizer_order);
  report.r_part_ok    = report.r_part == r;
  report.max_prime_ok = report.max_prime == r;
  return report;
}

inline RPartReport stabilizer_rpart_check(PermGroup const& g,
                                          Graph const& graph, Point vertex,
                                          std::uint64_t r) {
  check_automorphisms(graph, g);
  return stabilizer_rpart_check(g, vertex, r);
}

}  // namespace primesym

#endif  // PRIMESYM_COSETGRAPH_HPP_
