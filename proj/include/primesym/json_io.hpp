#ifndef PRIMESYM_JSON_IO_HPP_
#define PRIMESYM_JSON_IO_HPP_

// JSON views of the library's results. Big naturals are written as decimal
// strings; permutations in 1-based cycle notation.

#include <string>
#include <vector>

#include "json.hpp"

#include "primesym/bignat.hpp"
#include "primesym/cosetgraph.hpp"
#include "primesym/group_ops.hpp"
#include "primesym/searcher.hpp"
#include "primesym/stabchain.hpp"
#include "primesym/table1.hpp"

namespace primesym {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline Json to_json(BigNat const& n) { return to_string(n); }

inline Json generators_json(PermGroup const& g) {
  Json gens = Json::array();
  for (auto const& s : g.generators()) {
    gens.push_back(format_cycles(s));
  }
  return gens;
}

inline Json group_json(PermGroup const& g) {
  return Json{{"degree", g.degree()},
              {"order", to_json(g.order())},
              {"generators", generators_json(g)}};
}

inline Json graph_json(Graph const& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) {
    edges.push_back({u, v});
  }
  return Json{{"n", g.vertex_count}, {"edges", std::move(edges)}};
}

inline Json props_json(GraphProps const& p) {
  return Json{{"vertex_count", p.vertex_count},
              {"edge_count", p.edge_count},
              {"regular", p.regular},
              {"valency", p.valency ? Json(*p.valency) : Json(nullptr)},
              {"connected", p.connected},
              {"bipartite", p.bipartite},
              {"complete", p.complete}};
}

inline Json spec_report_json(SpecReport const& r) {
  return Json{{"valency", to_json(r.valency)},
              {"vertex_count", to_json(r.vertex_count)},
              {"arc_stab_order", to_json(r.arc_stab_order)},
              {"generated_order", to_json(r.generated_order)},
              {"connected", r.connected},
              {"undirected_ok", r.undirected_ok},
              {"x_normalizes_arc_stab", r.x_normalizes_arc_stab},
              {"x_is_2_element", r.x_is_2_element}};
}

inline Json rpart_json(RPartReport const& r) {
  return Json{{"stabilizer_order", to_json(r.stabilizer_order)},
              {"r_part", to_json(r.r_part)},
              {"max_prime", to_json(r.max_prime)},
              {"r_part_ok", r.r_part_ok},
              {"max_prime_ok", r.max_prime_ok},
              {"passed", r.passed()}};
}

inline Json simplicity_json(SimplicityReport const& r) {
  Json out{{"verdict", std::string(simplicity_name(r.verdict))},
           {"order", to_json(r.order)},
           {"perfect", r.perfect},
           {"trials_run", r.trials_run},
           {"table_matches", r.table_matches}};
  if (r.witness) {
    out["witness_kind"]  = r.witness_kind;
    out["witness_order"] = to_json(r.witness->order());
  }
  return out;
}

inline Json hit_json(SearchHit const& hit) {
  Json out{{"x", format_cycles(hit.x)},
           {"generated_order", to_json(hit.generated_order)},
           {"generated_simple", std::string(simplicity_name(hit.generated_simple))},
           {"point_stab_order", to_json(hit.point_stab_order)},
           {"point_stab_simple", std::string(simplicity_name(hit.point_stab_simple))},
           {"certificate", spec_report_json(hit.analysis.report)},
           {"x_sq_in_k", hit.x_sq_in_k},
           {"x_sq_in_arc_stab", hit.x_sq_in_arc_stab},
           {"k_is_arc_stab", hit.k_is_arc_stab},
           {"factorization_ok", hit.factorization_ok},
           {"realizes", hit.realizes()},
           {"signature", hit.signature.to_string()}};
  if (hit.graph) {
    out["graph"] = Json{{"vertex_count", hit.graph->vertex_count},
                        {"valency", hit.graph->valency},
                        {"connected", hit.graph->connected},
                        {"arc_transitive", hit.graph->arc_transitive},
                        {"complete", hit.graph->complete}};
  }
  return out;
}

inline Json search_json(SearchResult const& r, std::size_t max_hits = SIZE_MAX) {
  Json hits = Json::array();
  for (std::size_t i = 0; i < r.hits.size() && i < max_hits; ++i) {
    hits.push_back(hit_json(r.hits[i]));
  }
  Json sigs = Json::array();
  for (auto const& s : r.signatures) {
    sigs.push_back({{"signature", s.signature.to_string()},
                    {"generated_order", to_json(s.signature.generated_order)},
                    {"arc_stab_orbits", s.signature.arc_stab_orbits},
                    {"hits", s.hits},
                    {"realizing", s.realizing}});
  }
  return Json{{"mode", std::string(mode_name(r.mode))},
              {"seed", r.seed},
              {"budget", r.budget},
              {"k", group_json(r.k)},
              {"hall_strategy", r.hall_strategy},
              {"normalizer_order", to_json(r.normalizer_order)},
              {"candidates", r.candidates},
              {"arc_mismatch", r.arc_mismatch},
              {"samples_drawn", r.samples_drawn},
              {"exhaustive", r.exhaustive},
              {"verdict", r.verdict()},
              {"hit_count", r.hits.size()},
              {"hits", std::move(hits)},
              {"signatures", std::move(sigs)}};
}

inline Json table1_json(Table1Instance const& t) {
  Json bindings = Json::object();
  for (auto const& [name, value] : t.bindings) {
    bindings[name] = to_json(value);
  }
  Json out{{"line", t.line},
           {"row", t.row},
           {"L", t.L.display},
           {"T", t.T.display},
           {"r", to_json(t.r)},
           {"condition", t.condition_text},
           {"bindings", std::move(bindings)},
           {"checked", t.checked}};
  if (t.lemma_qd) {
    out["prime_index_q"] = to_json(t.lemma_qd->first);
    out["prime_index_d"] = t.lemma_qd->second;
  }
  if (t.ppd_exponent) {
    out["ppd_exponent"] = *t.ppd_exponent;
  }
  if (!t.note.empty()) {
    out["note"] = t.note;
  }
  return out;
}

}  // namespace primesym

#endif  // PRIMESYM_JSON_IO_HPP_
