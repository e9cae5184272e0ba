#ifndef PRIMESYM_TESTS_PROPERTIES_HPP_
#define PRIMESYM_TESTS_PROPERTIES_HPP_

// Engine-correctness sweeps shared by the acceptance run. Each returns the
// number of instances checked and the number that disagreed with the
// reference computation.

#include <random>
#include <string>

#include "primesym/atlas.hpp"
#include "primesym/backtrack.hpp"
#include "primesym/cosetgraph.hpp"
#include "primesym/cyclotomic.hpp"
#include "primesym/group_ops.hpp"
#include "primesym/searcher.hpp"
#include "oracles.hpp"

namespace props {

using namespace primesym;

struct Tally {
  std::size_t checked  = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void expect(bool ok, std::string const& what) {
    if (!ok && failures++ == 0) {
      first_failure = what;
    }
  }
};

inline bool same(PermGroup const& g, oracle::ElementSet const& elements) {
  return g.order() == elements.size()
         && std::all_of(elements.begin(), elements.end(),
                        [&](auto const& p) { return g.contains(p); });
}

// Random subgroups G, K, L of S7: |G|, membership, N_G(K), C_G(K) and G ∩ L
// against exhaustive filtering of the closure.
inline Tally engine_vs_brute_force(std::size_t groups, std::uint64_t seed) {
  Tally           t;
  std::mt19937_64 rng(seed);
  while (t.checked < groups) {
    auto g = oracle::random_subgroup(7, rng);
    if (g.order() > 2000) {
      continue;
    }
    auto ge = oracle::closure(g);
    auto k  = PermGroup(7, {g.chain().random_element(rng), power(g.chain().random_element(rng), 2)});
    auto ke = oracle::closure(k);
    auto l  = oracle::random_subgroup(7, rng);
    auto le = oracle::closure(l);
    auto p  = oracle::random_perm(7, rng);
    std::string tag = "group " + std::to_string(t.checked);
    t.expect(g.order() == ge.size(), tag + ": order");
    t.expect(g.contains(p) == (ge.count(p) == 1), tag + ": membership");
    t.expect(same(normalizer(g, k), oracle::normalizer(ge, ke)), tag + ": normalizer");
    t.expect(same(centralizer(g, k), oracle::centralizer(ge, ke)), tag + ": centralizer");
    t.expect(same(intersection(g, l), oracle::intersection(ge, le)), tag + ": intersection");
    ++t.checked;
  }
  return t;
}

inline BigNat power_of(BigNat const& q, std::uint64_t m) {
  BigNat r = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    r *= q;
  }
  return r;
}

// prod_{d | m} Phi_d(q) = q^m - 1.
inline Tally cyclotomic_identity(std::uint64_t max_m, std::uint64_t max_q) {
  Tally t;
  for (std::uint64_t m = 1; m <= max_m; ++m) {
    for (auto const& q : prime_powers_up_to(max_q)) {
      BigNat product = 1;
      for (std::uint64_t d = 1; d <= m; ++d) {
        if (m % d == 0) {
          product *= cyclotomic_value(d, q.value);
        }
      }
      t.expect(product == power_of(q.value, m) - 1,
               "m = " + std::to_string(m) + ", q = " + to_string(q.value));
      ++t.checked;
    }
  }
  return t;
}

// Random undirected coset specs with at most 500 vertices: the predicates of
// analyze_spec against the materialized graph.
inline Tally coset_specs(std::size_t wanted, std::uint64_t seed) {
  Tally                  t;
  std::mt19937_64        rng(seed);
  std::vector<PermGroup> ambients{symmetric_group(5), alternating_group(6), symmetric_group(6),
                                  psl2(7), psl2(8), alternating_group(7)};
  for (std::size_t trial = 0; t.checked < wanted && trial < 20'000; ++trial) {
    auto const&              g = ambients[trial % ambients.size()];
    std::vector<Permutation> gens{g.chain().random_element(rng)};
    if (rng() % 2 == 0) {
      gens.push_back(g.chain().random_element(rng));
    }
    PermGroup h(g.degree(), gens);
    auto      x = g.chain().random_element(rng);
    if (h.contains(x) || g.order() / h.order() > 500) {
      continue;
    }
    auto an = analyze_spec(g, h, x);
    if (!an.report.undirected_ok) {
      continue;
    }
    auto        cg    = build_coset_graph(an.spec, 500);
    auto        p     = graph_props(cg.graph);
    std::string tag   = "spec " + std::to_string(t.checked);
    t.expect(BigNat(p.vertex_count) == an.report.vertex_count, tag + ": vertex count");
    t.expect(p.regular && p.valency && BigNat(*p.valency) == an.report.valency, tag + ": valency");
    t.expect(p.connected == an.report.connected, tag + ": connectivity");
    t.expect(is_transitive(cg.action), tag + ": vertex-transitivity");
    t.expect(arc_transitivity_check(cg.action, cg.graph), tag + ": arc-transitivity");
    ++t.checked;
  }
  return t;
}

inline PermGroup from_cycles(std::size_t n, std::initializer_list<char const*> gens) {
  std::vector<Permutation> g;
  for (auto s : gens) {
    g.push_back(parse_cycles(s, n));
  }
  return PermGroup(n, std::move(g));
}

// Groups with normal subgroups that are far from transitive in their coset
// actions: direct products, wreath products, dihedral and affine groups.
inline std::vector<PermGroup> quotient_ambients() {
  return {
      from_cycles(6, {"(1,4)", "(1,2)(4,5)", "(1,2,3)(4,5,6)"}),        // Z2 wr S3
      from_cycles(6, {"(1,2,3)", "(1,2)", "(1,4)(2,5)(3,6)"}),          // S3 wr Z2
      from_cycles(7, {"(1,2,3,4,5)", "(1,2)", "(6,7)"}),                // S5 x Z2
      from_cycles(8, {"(1,2,3,4,5)", "(1,2,3)", "(6,7,8)"}),            // A5 x Z3
      from_cycles(7, {"(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)"}),             // AGL(1, 7)
      from_cycles(8, {"(1,2,3,4)", "(1,2)", "(5,6,7,8)", "(5,6)", "(1,5)(2,6)(3,7)(4,8)"}),
  };
}

// Prime-valency arc-transitive coset graphs; normal subgroups of the acting
// group with at least three orbits must be semiregular and give quotients of
// the same valency.
inline Tally quotient_valency(std::size_t wanted, std::uint64_t seed) {
  Tally                  t;
  std::mt19937_64        rng(seed);
  std::vector<PermGroup> ambients = quotient_ambients();
  for (std::size_t trial = 0; t.checked < wanted && trial < 20'000; ++trial) {
    auto const&              g = ambients[trial % ambients.size()];
    std::vector<Permutation> gens{g.chain().random_element(rng)};
    if (rng() % 2 == 1) {
      gens.push_back(g.chain().random_element(rng));
    }
    PermGroup h(g.degree(), gens);
    auto      x = two_part(g.chain().random_element(rng));
    if (x.is_identity() || h.contains(x) || g.order() / h.order() > 400) {
      continue;
    }
    auto an = analyze_spec(g, h, x);
    if (!an.report.undirected_ok || !an.report.connected || an.report.valency < 3
        || !is_prime(an.report.valency)) {
      continue;
    }
    auto cg = build_coset_graph(an.spec, 500);
    // Normal subgroups: the derived series, the centre, and normal closures
    // of random elements of prime order.
    std::vector<PermGroup> normals = derived_series(cg.action).terms;
    normals.push_back(centralizer(cg.action, cg.action));
    for (int i = 0; i < 6; ++i) {
      auto e = cg.action.chain().random_element(rng);
      auto o = order(e);
      for (std::uint64_t p = 2; p <= o; ++p) {
        if (o % p == 0) {
          e = power(e, static_cast<std::int64_t>(o / p));
          break;
        }
      }
      std::vector<Permutation> seeds{e};
      normals.push_back(normal_closure(cg.action, seeds));
    }
    for (auto const& k : normals) {
      if (k.order() == 1 || orbits(k).size() < 3) {
        continue;
      }
      auto rep = quotient_graph(cg.graph, k);
      t.expect(rep.semiregular && rep.valency_preserved,
               "quotient " + std::to_string(t.checked));
      ++t.checked;
    }
  }
  return t;
}

}  // namespace props

#endif  // PRIMESYM_TESTS_PROPERTIES_HPP_
