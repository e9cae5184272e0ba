// primesym: command-line front end.
//
//   primesym numth zsig --max-m 20 --max-q 32
//   primesym group order --file atlas/M12.grp
//   primesym search remark --h-file f21.grp --r 7 --ambient A --mode exhaustive
//   primesym claims run K12_FROM_M12
//
// Exit codes: 0 success, 1 claim failure, 2 usage or input error, 3 budget
// exhausted.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "primesym/atlas.hpp"
#include "primesym/backtrack.hpp"
#include "primesym/claims.hpp"
#include "primesym/cosetgraph.hpp"
#include "primesym/cyclotomic.hpp"
#include "primesym/json_io.hpp"
#include "primesym/primes.hpp"
#include "primesym/searcher.hpp"
#include "primesym/table1.hpp"

using namespace primesym;

namespace {

struct Config {
  std::string   format = "json";
  std::string   output;
  std::uint64_t seed    = 0;
  std::uint64_t budget  = 0;  // 0: the command's default
  unsigned      workers = 1;
};

// Exit code for errors that mean "ran out of budget" rather than bad input.
bool is_budget_error(std::string const& kind) {
  return kind == "BudgetExceeded" || kind == "NormalizerBudgetExceeded"
         || kind == "NoHallSubgroupFound" || kind == "StepLimit"
         || kind == "FactorizationTimeout" || kind == "TooManyVertices"
         || kind == "AmbientTooLarge" || kind == "IndexExceedsLimit";
}

void flatten(Json const& j, std::string const& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto const& [k, v] : j.items()) {
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else if (j.is_array() && !j.empty()
             && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

void emit(Config const& cfg, std::string const& command, Json result) {
  Json doc{{"schema_version", schema_version},
           {"command", command},
           {"seed", cfg.seed},
           {"budget", cfg.budget},
           {"result", std::move(result)}};
  std::ostringstream text;
  if (cfg.format == "text") {
    flatten(doc, "", text);
  } else {
    text << doc.dump(2) << "\n";
  }
  if (cfg.output.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      throw InvalidParams("cannot write '" + cfg.output + "'");
    }
    out << text.str();
  }
}

// A group given as a record file or a catalogue name.
PermGroup resolve_group(std::string const& what) {
  if (std::filesystem::is_regular_file(what)) {
    return load_group(what);
  }
  return lookup_group(what);
}

PermGroup resolve_ambient(std::string const& what, std::size_t degree,
                          SearchTask& task) {
  if (what == "A") {
    task.ambient = AmbientKind::alternating;
    return alternating_group(degree);
  }
  if (what == "S") {
    task.ambient = AmbientKind::symmetric;
    return symmetric_group(degree);
  }
  task.ambient = AmbientKind::explicit_group;
  task.group   = resolve_group(what);
  return *task.group;
}

BacktrackOptions backtrack_options(Config const& cfg) {
  BacktrackOptions o;
  o.seed = cfg.seed;
  if (cfg.budget != 0) {
    o.node_budget = cfg.budget;
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  Config   cfg;
  CLI::App app{"permutation groups, prime-valency coset graphs and number theory"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output,-o", cfg.output, "write the report to a file");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--budget", cfg.budget, "search budget (0: command default)");
  app.add_option("--workers", cfg.workers, "worker count")
      ->check(CLI::PositiveNumber);

  int exit_code = 0;
  std::function<void()> action;

  // numth
  auto* numth = app.add_subcommand("numth", "cyclotomic values and primitive prime divisors");
  numth->require_subcommand(1);
  std::uint64_t m = 0, q = 0, d = 0, max_m = 20, max_q = 32, max_d = 13;
  std::string   n_text, p_text;
  auto*         phi = numth->add_subcommand("phi", "Phi_m(q)");
  phi->add_option("--m", m)->required();
  phi->add_option("--q", q)->required();
  phi->callback([&] {
    action = [&] {
      emit(cfg, "numth phi",
           {{"m", m}, {"q", q}, {"phi", to_json(cyclotomic_value(m, BigNat(q)))}});
    };
  });
  auto* zsig = numth->add_subcommand("zsig", "primitive parts; a single (m, q) or a scan");
  zsig->add_option("--m", m);
  zsig->add_option("--q", q);
  zsig->add_option("--max-m", max_m);
  zsig->add_option("--max-q", max_q);
  zsig->callback([&] {
    action = [&] {
      auto one = [&](std::uint64_t mm, PrimePower const& qq) {
        auto r      = primitive_part(mm, qq, cfg.budget ? cfg.budget : 50'000'000);
        Json primes = Json::array();
        for (auto const& [p, e] : r.primitive_primes) {
          primes.push_back({to_json(p), e});
        }
        return Json{{"m", mm},
                    {"q", to_json(qq.value)},
                    {"phi", to_json(r.phi_value)},
                    {"primitive_part", to_json(r.primitive_part)},
                    {"primitive_primes", primes},
                    {"unfactored", to_json(r.unfactored)},
                    {"exception", r.is_zsigmondy_exception}};
      };
      if (m != 0 && q != 0) {
        emit(cfg, "numth zsig", one(m, PrimePower::of(BigNat(q))));
        return;
      }
      Json        exceptions = Json::array();
      std::size_t scanned    = 0;
      for (std::uint64_t mm = 2; mm <= max_m; ++mm) {
        for (auto const& qq : prime_powers_up_to(max_q)) {
          ++scanned;
          if (primitive_part(mm, qq).primitive_part == 1) {
            exceptions.push_back({mm, to_json(qq.value)});
          }
        }
      }
      emit(cfg, "numth zsig",
           {{"max_m", max_m}, {"max_q", max_q}, {"pairs_scanned", scanned},
            {"exceptions", exceptions}});
    };
  });
  auto* lemma = numth->add_subcommand("lemma-r", "(q^d - 1)/(q - 1) and its consequences when prime");
  lemma->add_option("--d", d);
  lemma->add_option("--q", q);
  lemma->add_option("--max-d", max_d);
  lemma->add_option("--max-q", max_q);
  lemma->callback([&] {
    action = [&] {
      auto one = [&](PrimePower const& qq, std::uint64_t dd) {
        auto v = lemma_r_check(qq, dd);
        return Json{{"q", to_json(qq.value)}, {"d", dd}, {"r", to_json(v.r)},
                    {"r_prime", v.r_prime}, {"d_prime", v.d_prime},
                    {"coprime_d_q1", v.coprime_d_q1}, {"f_power_of_d", v.f_power_of_d},
                    {"d_odd_or_p_two", v.d_odd_or_d_p_two}};
      };
      if (d != 0 && q != 0) {
        emit(cfg, "numth lemma-r", one(PrimePower::of(BigNat(q)), d));
        return;
      }
      Json rows = Json::array();
      for (std::uint64_t dd = 2; dd <= max_d; ++dd) {
        for (auto const& qq : prime_powers_up_to(max_q)) {
          auto row = one(qq, dd);
          if (row["r_prime"].get<bool>()) {
            rows.push_back(std::move(row));
          }
        }
      }
      emit(cfg, "numth lemma-r", {{"max_d", max_d}, {"max_q", max_q}, {"prime_instances", rows}});
    };
  });
  auto* ppart = numth->add_subcommand("ppart", "p-part of n");
  ppart->add_option("--n", n_text)->required();
  ppart->add_option("--p", p_text)->required();
  ppart->callback([&] {
    action = [&] {
      BigNat n(n_text), p(p_text);
      if (!is_prime(p)) {
        throw InvalidParams(p_text + " is not prime");
      }
      emit(cfg, "numth ppart", {{"n", n_text}, {"p", p_text}, {"p_part", to_json(p_part(n, p))}});
    };
  });

  // table1
  auto* table1 = app.add_subcommand("table1", "prime-index subgroup table");
  table1->require_subcommand(1);
  int          line = 1;
  Table1Bounds bounds;
  auto*        enumerate = table1->add_subcommand("enumerate", "instances of one line");
  enumerate->add_option("--line", line)->required()->check(CLI::Range(1, 11));
  enumerate->add_option("--bound", bounds.max_param, "bound on loop variables");
  enumerate->add_option("--max-p", bounds.max_p, "bound on the characteristic");
  enumerate->callback([&] {
    action = [&] {
      Json rows = Json::array();
      for (auto const& t : enumerate_table1(line, bounds)) {
        rows.push_back(table1_json(t));
      }
      emit(cfg, "table1 enumerate", {{"line", line}, {"bound", bounds.max_param}, {"instances", rows}});
    };
  });

  // group
  auto* group = app.add_subcommand("group", "permutation group computations");
  group->require_subcommand(1);
  std::string file, sub_file;
  Point       point = 1;
  auto add_file = [&](CLI::App* c) {
    c->add_option("--file", file, "group record or catalogue name")->required();
  };
  auto* g_order = group->add_subcommand("order", "group order");
  add_file(g_order);
  g_order->callback([&] {
    action = [&] {
      auto g = resolve_group(file);
      emit(cfg, "group order", {{"degree", g.degree()}, {"order", to_json(g.order())},
                                {"transitive", is_transitive(g)}});
    };
  });
  auto* g_stab = group->add_subcommand("stab", "point stabilizer (1-based point)");
  add_file(g_stab);
  g_stab->add_option("--point", point)->required();
  g_stab->callback([&] {
    action = [&] {
      auto g = resolve_group(file);
      emit(cfg, "group stab", {{"point", point}, {"stabilizer", group_json(point_stabilizer(g, point - 1))}});
    };
  });
  auto* g_orbit = group->add_subcommand("orbit", "orbit of a point (1-based)");
  add_file(g_orbit);
  g_orbit->add_option("--point", point)->required();
  g_orbit->callback([&] {
    action = [&] {
      auto g = resolve_group(file);
      check_point(g, point - 1);
      auto o = orbit(g, point - 1);
      std::sort(o.begin(), o.end());
      std::vector<std::size_t> one_based;
      for (auto p : o) {
        one_based.push_back(p + 1);
      }
      emit(cfg, "group orbit", {{"point", point}, {"orbit", one_based}});
    };
  });
  auto add_pair = [&](CLI::App* c, std::string const& name,
                      PermGroup (*op)(PermGroup const&, PermGroup const&, BacktrackOptions const&)) {
    add_file(c);
    c->add_option("--sub", sub_file, "second group (record or name)")->required();
    c->callback([&, name, op] {
      action = [&, name, op] {
        auto g = resolve_group(file);
        auto k = resolve_group(sub_file);
        emit(cfg, "group " + name, group_json(op(g, k, backtrack_options(cfg))));
      };
    });
  };
  add_pair(group->add_subcommand("normalizer", "N_G(K)"), "normalizer",
           [](PermGroup const& g, PermGroup const& k, BacktrackOptions const& o) {
             return normalizer(g, k, o);
           });
  add_pair(group->add_subcommand("centralizer", "C_G(K)"), "centralizer",
           [](PermGroup const& g, PermGroup const& k, BacktrackOptions const& o) {
             return centralizer(g, k, o);
           });
  add_pair(group->add_subcommand("intersect", "G ∩ K"), "intersect",
           [](PermGroup const& g, PermGroup const& k, BacktrackOptions const& o) {
             return intersection(g, k, o);
           });

  // graph
  auto* graph = app.add_subcommand("graph", "coset graphs Cos(G, H, x)");
  graph->require_subcommand(1);
  std::string g_name, h_name, x_text, k_name, edges_file;
  std::size_t max_vertices = 2000, vertex_count = 0;
  auto add_spec = [&](CLI::App* c, bool required) {
    c->set_help_flag("--help", "print this help message and exit");  // -h is H
    auto* a = c->add_option("--group", g_name, "G (record or name)");
    auto* b = c->add_option("--h", h_name, "H (record or name)");
    auto* x = c->add_option("--x", x_text, "x in cycle notation");
    if (required) {
      a->required();
      b->required();
      x->required();
    }
    c->add_option("--max-vertices", max_vertices);
  };
  auto spec_of = [&] {
    auto g = resolve_group(g_name);
    auto h = resolve_group(h_name);
    return analyze_spec(g, h, parse_cycles(x_text, g.degree()), backtrack_options(cfg));
  };
  auto* analyze = graph->add_subcommand("analyze", "valency, connectivity and symmetry of Cos(G, H, x)");
  add_spec(analyze, true);
  analyze->callback([&] {
    action = [&] { emit(cfg, "graph analyze", spec_report_json(spec_of().report)); };
  });
  auto* build = graph->add_subcommand("build", "materialize the coset graph");
  add_spec(build, true);
  build->callback([&] {
    action = [&] {
      auto cg = build_coset_graph(spec_of().spec, max_vertices);
      emit(cfg, "graph build", {{"graph", graph_json(cg.graph)},
                                {"props", props_json(graph_props(cg.graph))},
                                {"arc_transitive", arc_transitivity_check(cg.action, cg.graph)}});
    };
  });
  auto* quotient = graph->add_subcommand("quotient", "quotient by the orbits of K ≤ G");
  add_spec(quotient, true);
  quotient->add_option("--k", k_name, "K ≤ G (record or name)")->required();
  quotient->callback([&] {
    action = [&] {
      auto spec = spec_of().spec;
      auto cg   = build_coset_graph(spec, max_vertices);
      auto k    = resolve_group(k_name);
      if (!is_subgroup(k, spec.g)) {
        throw NotASubgroup("K is not contained in G");
      }
      CosetTable               vertices(spec.g, spec.h, max_vertices);
      std::vector<Permutation> on_vertices;
      for (auto const& s : k.generators()) {
        std::vector<Point> images(vertices.size());
        for (std::size_t v = 0; v < vertices.size(); ++v) {
          images[v] = static_cast<Point>(vertices.act(v, s));
        }
        on_vertices.push_back(Permutation::from_images(std::move(images)));
      }
      auto rep = quotient_graph(cg.graph, PermGroup(vertices.size(), std::move(on_vertices)));
      emit(cfg, "graph quotient", {{"graph", graph_json(rep.graph)},
                                   {"orbit_count", rep.orbits.size()},
                                   {"semiregular", rep.semiregular},
                                   {"valency_preserved", rep.valency_preserved},
                                   {"intra_orbit_edges", rep.intra_orbit_edges}});
    };
  });
  auto* props = graph->add_subcommand("props", "properties of a coset graph or an edge list");
  add_spec(props, false);
  props->add_option("--edges", edges_file, "edge list file (0-based 'u v' lines)");
  props->add_option("--n", vertex_count, "vertex count for --edges");
  props->callback([&] {
    action = [&] {
      Graph g;
      if (!edges_file.empty()) {
        std::ifstream in(edges_file);
        if (!in) {
          throw InvalidParams("cannot open '" + edges_file + "'");
        }
        g = read_edge_list(in, vertex_count);
      } else if (!g_name.empty() && !h_name.empty() && !x_text.empty()) {
        g = build_coset_graph(spec_of().spec, max_vertices).graph;
      } else {
        throw InvalidParams("give --edges or all of --group, --h, --x");
      }
      emit(cfg, "graph props", props_json(graph_props(g)));
    };
  });

  // search
  auto* search = app.add_subcommand("search", "realizability searches");
  search->require_subcommand(1);
  std::string   ambient = "A", mode = "exhaustive";
  std::uint64_t r = 0, node_budget = 0;
  std::size_t   max_hits = 50, stop_after = 1;
  auto*         remark = search->add_subcommand("remark", "search x in N(K) with x^2 in K");
  remark->add_option("--h-file", h_name, "H (record or name)")->required();
  remark->add_option("--r", r)->required();
  remark->add_option("--ambient", ambient, "A, S, or a group record/name");
  remark->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "randomized"}));
  remark->add_option("--node-budget", node_budget, "backtrack node budget for N(K)");
  remark->add_option("--max-hits", max_hits, "hits listed in the report");
  remark->add_option("--stop-after", stop_after, "randomized: stop after this many realizing hits (0: never)");
  remark->callback([&] {
    action = [&] {
      SearchTask task;
      task.h = resolve_group(h_name);
      task.r = r;
      resolve_ambient(ambient, task.h.degree(), task);
      task.mode       = mode == "exhaustive" ? SearchMode::exhaustive : SearchMode::randomized;
      task.seed       = cfg.seed;
      task.stop_after = stop_after;
      if (cfg.budget != 0) {
        (task.mode == SearchMode::exhaustive ? task.max_cosets : task.samples) = cfg.budget;
      }
      if (node_budget != 0) {
        task.node_budget = node_budget;
      }
      auto result = remark_search(task);
      cfg.budget  = result.budget;
      emit(cfg, "search remark",
           {{"h", group_json(task.h)}, {"r", r},
            {"ambient", std::string(ambient_name(task.ambient))},
            {"search", search_json(result, max_hits)}});
    };
  });

  // claims
  auto*       claims = app.add_subcommand("claims", "scripted reproductions");
  std::string claim_id, registry_path;
  claims->require_subcommand(1);
  claims->add_option("--registry", registry_path, "claim registry (JSON)");
  auto* run = claims->add_subcommand("run", "run one claim id, or all");
  run->add_option("id", claim_id)->required();
  run->callback([&] {
    action = [&] {
      auto registry = registry_path.empty() ? load_registry() : load_registry(registry_path);
      std::vector<std::string> ids;
      if (claim_id == "all") {
        ids = claim_ids(registry);
      } else {
        ids.push_back(claim_id);
      }
      Json reports = Json::array();
      bool passed  = true;
      for (auto const& id : ids) {
        auto rep = reproduce_claim(id, registry);
        passed   = passed && rep.passed;
        reports.push_back(claim_json(rep));
      }
      emit(cfg, "claims run", {{"passed", passed}, {"claims", reports}});
      exit_code = passed ? 0 : 1;
    };
  });
  auto* list_ids = claims->add_subcommand("list", "claim ids in the registry");
  list_ids->callback([&] {
    action = [&] {
      auto registry = registry_path.empty() ? load_registry() : load_registry(registry_path);
      emit(cfg, "claims list", {{"ids", claim_ids(registry)}});
    };
  });

  // atlas
  auto* atlas = app.add_subcommand("atlas", "built-in groups and stored records");
  atlas->require_subcommand(1);
  atlas->add_subcommand("list", "the catalogue")->callback([&] {
    action = [&] {
      Json rows = Json::array();
      for (auto const& e : catalogue()) {
        rows.push_back({{"name", e.name}, {"degree", e.degree}, {"order", to_json(e.order)},
                        {"simple", e.simple}, {"source", e.source}});
      }
      emit(cfg, "atlas list", {{"groups", rows}});
    };
  });
  atlas->add_subcommand("verify", "recompute the orders of the stored records")->callback([&] {
    action = [&] {
      Json rows = Json::array();
      bool ok   = true;
      for (auto name : stored_records) {
        auto path   = atlas_dir() / (std::string(name) + ".grp");
        auto record = read_record(path);
        Json row{{"name", record.name}, {"degree", record.degree},
                 {"claimed_order", to_json(record.claimed_order)}};
        try {
          auto g               = verify_record(record);
          row["order"]         = to_json(g.order());
          row["transitive"]    = is_transitive(g);
          row["verified"]      = true;
        } catch (OrderMismatch const& e) {
          row["verified"] = false;
          row["error"]    = e.what();
          ok              = false;
        }
        rows.push_back(std::move(row));
      }
      emit(cfg, "atlas verify", {{"verified", ok}, {"records", rows}});
      exit_code = ok ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  try {
    action();
  } catch (Error const& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    if (cfg.format == "json") {
      emit(cfg, "error", {{"kind", e.kind()}, {"message", e.what()}});
    }
    return is_budget_error(e.kind()) ? 3 : 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
