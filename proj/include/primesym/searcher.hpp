#ifndef PRIMESYM_SEARCHER_HPP_
#define PRIMESYM_SEARCHER_HPP_

// Search for symmetric coset graphs of prime valency r with a prescribed
// vertex stabilizer H of degree n:
//
//   1. K = a Hall r'-subgroup of H (index r),
//   2. N = N_A(K) for the ambient group A (A_n, S_n or a given group),
//   3. x runs over 2-elements of N \ H with x^2 in K, one per coset Kx,
//   4. each x with H ∩ H^x = K yields Cos(<x, H>, H, x) of valency r,
//      reported together with the simplicity of <x, H> and of its point
//      stabilizer.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "primesym/atlas.hpp"
#include "primesym/backtrack.hpp"
#include "primesym/bignat.hpp"
#include "primesym/cosetgraph.hpp"
#include "primesym/errors.hpp"
#include "primesym/group_ops.hpp"
#include "primesym/perm.hpp"
#include "primesym/primes.hpp"
#include "primesym/stabchain.hpp"

namespace primesym {

class NormalizerBudgetExceeded : public BudgetExceeded {
 public:
  NormalizerBudgetExceeded(std::string const&       what,
                           std::vector<Permutation> partial)
      : BudgetExceeded(what, std::move(partial), "NormalizerBudgetExceeded") {}
};

////////////////////////////////////////////////////////////////////////
// Element helpers
////////////////////////////////////////////////////////////////////////

// Calls f(g) for every element of the group of `chain`.
template <typename F>
void for_each_element(StabChain const& chain, F&& f) {
  auto const& levels = chain.levels();
  std::size_t depth  = levels.size();
  // Elements are u_{d-1} ... u_1 u_0 with u_i from the transversal of level i.
  auto rec = [&](auto&& self, std::size_t level, Permutation const& acc) -> void {
    if (level == depth) {
      f(acc);
      return;
    }
    for (auto const& u : levels[level].transversal) {
      self(self, level + 1, u * acc);
    }
  };
  rec(rec, 0, Permutation(chain.degree()));
}

// The power of x of odd exponent which is a 2-element; x^(odd part of |x|).
inline Permutation two_part(Permutation const& x) {
  std::uint64_t o = order(x);
  while (o % 2 == 0) {
    o /= 2;
  }
  return power(x, static_cast<std::int64_t>(o));
}

// The power of x which is an r'-element: x^(r-part of |x|).
inline Permutation rprime_part(Permutation const& x, std::uint64_t r) {
  std::uint64_t o = order(x), e = 1;
  while (o % r == 0) {
    o /= r;
    e *= r;
  }
  return power(x, static_cast<std::int64_t>(e));
}

// Some h in G with A^h = B, found by running over the elements of G.
inline std::optional<Permutation> conjugating_element(
    PermGroup const& g, PermGroup const& a, PermGroup const& b,
    BigNat const& max_order = 5'000'000) {
  if (a.order() != b.order()) {
    return std::nullopt;
  }
  if (g.order() > max_order) {
    throw InvalidParams("conjugacy test by enumeration needs |G| <= "
                        + to_string(max_order));
  }
  std::optional<Permutation> found;
  for_each_element(g.chain(), [&](Permutation const& h) {
    if (found) {
      return;
    }
    bool ok = std::all_of(a.generators().begin(), a.generators().end(),
                          [&](auto const& s) { return b.contains(conjugate(s, h)); });
    if (ok) {
      found = h;
    }
  });
  return found;
}

////////////////////////////////////////////////////////////////////////
// Hall r'-subgroups of index r
////////////////////////////////////////////////////////////////////////

struct HallOptions {
  std::uint64_t budget = 20'000;  // random elements drawn
  std::uint64_t seed   = 0;
};

namespace detail {

  inline void check_hall_input(PermGroup const& h, std::uint64_t r) {
    if (!is_prime(r)) {
      throw InvalidParams(std::to_string(r) + " is not prime");
    }
    if (p_part(h.order(), r) != r) {
      throw InvalidParams("|H| = " + to_string(h.order())
                          + " is not divisible by " + std::to_string(r)
                          + " exactly once");
    }
  }

  inline bool is_index(PermGroup const& h, PermGroup const& k, std::uint64_t r) {
    return k.order() * r == h.order();
  }

  // Greedy growth from random r'-elements, restarting when stuck.
  inline std::optional<PermGroup> random_hall(PermGroup const& h,
                                              std::uint64_t r,
                                              std::mt19937_64& rng,
                                              std::uint64_t& budget) {
    BigNat const target = h.order() / r;
    auto const&  chain  = h.chain();
    while (budget > 0) {
      GrowingGroup k(h.degree());
      std::size_t  stuck = 0;
      while (k.order() < target && stuck < 48 && budget > 0) {
        --budget;
        Permutation y = rprime_part(chain.random_element(rng), r);
        if (y.is_identity() || k.contains(y)) {
          ++stuck;
          continue;
        }
        auto gens = k.generators();
        gens.push_back(y);
        PermGroup trial(h.degree(), gens);
        BigNat    o = trial.order();
        if (o % r == 0 || target % o != 0) {
          ++stuck;
          continue;
        }
        k.add(y);
        stuck = 0;
      }
      if (k.order() == target) {
        return k.group_by_generators();
      }
    }
    return std::nullopt;
  }

}  // namespace detail

// A subgroup of index r in H, where r divides |H| exactly once. Tried in
// order: the stabilizer of a point in an orbit of length r, the stabilizer
// of a block in a system of r blocks, and growth from random r'-elements.
// The label of the result names the strategy that produced it.
inline PermGroup hall_rprime_subgroup(PermGroup const& h, std::uint64_t r,
                                      HallOptions const& options = {}) {
  detail::check_hall_input(h, r);
  if (h.order() == r) {
    return PermGroup::trivial(h.degree()).with_label("trivial");
  }
  for (auto const& o : orbits(h)) {
    if (o.size() == r) {
      auto k = point_stabilizer(h, o.front());
      if (detail::is_index(h, k, r)) {
        return k.with_label("orbit_stabilizer");
      }
    }
  }
  if (is_transitive(h) && h.degree() % r == 0) {
    auto systems = block_systems_with_count(h, r);
    if (!systems.empty()) {
      auto k = block_stabilizer(h, systems.front(), 0);
      if (detail::is_index(h, k, r)) {
        return k.with_label("block_stabilizer");
      }
    }
  }
  std::mt19937_64 rng(options.seed);
  std::uint64_t   budget = options.budget;
  if (auto k = detail::random_hall(h, r, rng, budget)) {
    return k->with_label("random_generation");
  }
  throw NoHallSubgroupFound("no subgroup of index " + std::to_string(r)
                            + " found within a budget of "
                            + std::to_string(options.budget)
                            + " random elements (this does not show that "
                              "none exists)");
}

// Representatives of the H-conjugacy classes of index-r subgroups met in
// `attempts` independent random constructions. The list need not be
// complete.
inline std::vector<PermGroup> hall_rprime_classes(PermGroup const& h,
                                                  std::uint64_t    r,
                                                  std::size_t      attempts,
                                                  HallOptions const& options = {}) {
  detail::check_hall_input(h, r);
  std::vector<PermGroup> reps;
  std::mt19937_64        rng(options.seed);
  for (std::size_t a = 0; a < attempts; ++a) {
    std::uint64_t budget = options.budget;
    auto          k      = detail::random_hall(h, r, rng, budget);
    if (!k) {
      continue;
    }
    bool known = std::any_of(reps.begin(), reps.end(), [&](auto const& rep) {
      return conjugating_element(h, rep, *k).has_value();
    });
    if (!known) {
      reps.push_back(*k);
    }
  }
  return reps;
}

////////////////////////////////////////////////////////////////////////
// Realizability search
////////////////////////////////////////////////////////////////////////

enum class AmbientKind { alternating, symmetric, explicit_group };
enum class SearchMode { exhaustive, randomized };

inline std::string_view ambient_name(AmbientKind a) {
  switch (a) {
    case AmbientKind::alternating: return "alternating";
    case AmbientKind::symmetric: return "symmetric";
    case AmbientKind::explicit_group: return "explicit";
  }
  return "?";
}

inline std::string_view mode_name(SearchMode m) {
  return m == SearchMode::exhaustive ? "exhaustive" : "randomized";
}

struct SearchTask {
  PermGroup                h;
  std::uint64_t            r       = 0;
  AmbientKind              ambient = AmbientKind::alternating;
  std::optional<PermGroup> group;  // the ambient group for explicit_group
  std::optional<PermGroup> k;      // overrides the Hall subgroup choice
  SearchMode               mode    = SearchMode::exhaustive;
  std::uint64_t            samples = 10'000;  // randomized mode budget
  std::uint64_t            node_budget           = 100'000'000;
  std::uint64_t            seed                  = 0;
  std::size_t              max_exhaustive_degree = 24;
  std::size_t              max_cosets            = 1'000'000;
  std::size_t              max_graph_vertices    = 2'000;
  std::size_t              simplicity_trials     = 10;
  // Randomized mode stops after this many realizing hits (0: never).
  std::size_t              stop_after = 1;
};

// Hits with equal signatures are not told apart by the search.
struct Signature {
  BigNat                   generated_order;
  std::vector<std::size_t> arc_stab_orbits;  // sorted orbit lengths of H ∩ H^x

  friend bool operator==(Signature const&, Signature const&) = default;
  friend bool operator<(Signature const& a, Signature const& b) {
    return std::tie(a.generated_order, a.arc_stab_orbits)
           < std::tie(b.generated_order, b.arc_stab_orbits);
  }

  std::string to_string() const {
    std::string s = primesym::to_string(generated_order) + ":[";
    for (std::size_t i = 0; i < arc_stab_orbits.size(); ++i) {
      s += (i ? "," : "") + std::to_string(arc_stab_orbits[i]);
    }
    return s + "]";
  }
};

struct GraphSummary {
  std::size_t vertex_count   = 0;
  std::size_t valency        = 0;
  bool        connected      = false;
  bool        arc_transitive = false;
  bool        complete       = false;
};

struct SearchHit {
  Permutation                 x;
  PermGroup                   generated;  // <x, H>
  BigNat                      generated_order;
  Simplicity                  generated_simple = Simplicity::inconclusive;
  PermGroup                   point_stab;  // stabilizer of point 1 in <x, H>
  BigNat                      point_stab_order;
  Simplicity                  point_stab_simple = Simplicity::inconclusive;
  SpecAnalysis                analysis;
  bool                        x_sq_in_k        = false;
  bool                        x_sq_in_arc_stab = false;
  bool                        k_is_arc_stab    = false;
  bool                        factorization_ok = false;  // <x, H> = T H
  Signature                   signature;
  std::optional<GraphSummary> graph;

  // The coset graph meets every condition: <x, H> and T simple, valency r.
  bool realizes() const {
    return k_is_arc_stab && analysis.report.undirected_ok
           && is_simple_verdict(generated_simple)
           && is_simple_verdict(point_stab_simple) && factorization_ok;
  }
};

struct SignatureCount {
  Signature   signature;
  std::size_t hits      = 0;
  std::size_t realizing = 0;
};

struct SearchResult {
  SearchMode             mode = SearchMode::exhaustive;
  PermGroup              k;
  BigNat                 normalizer_order;
  std::string            hall_strategy;
  std::size_t            candidates   = 0;  // 2-element cosets examined
  std::size_t            arc_mismatch = 0;  // candidates with H ∩ H^x != K
  std::uint64_t          samples_drawn = 0;
  bool                   exhaustive    = false;  // every coset Kx was examined
  std::vector<SearchHit> hits;
  std::vector<SignatureCount> signatures;
  std::uint64_t          seed = 0;
  std::uint64_t          budget = 0;

  bool realizable() const {
    return std::any_of(hits.begin(), hits.end(),
                       [](auto const& h) { return h.realizes(); });
  }

  // "exists", "does not exist" (exhaustive only) or "not found".
  std::string verdict() const {
    if (realizable()) {
      return "exists";
    }
    if (exhaustive) {
      return "does not exist";
    }
    return "not found (budget " + std::to_string(budget) + ", seed "
           + std::to_string(seed) + ")";
  }
};

namespace detail {

  inline PermGroup ambient_group(SearchTask const& task) {
    switch (task.ambient) {
      case AmbientKind::alternating: return alternating_group(task.h.degree());
      case AmbientKind::symmetric: return symmetric_group(task.h.degree());
      case AmbientKind::explicit_group:
        if (!task.group) {
          throw InvalidParams("explicit ambient needs a group");
        }
        return *task.group;
    }
    throw InvalidParams("unknown ambient");
  }

  inline Simplicity simplicity(PermGroup const& g, std::size_t trials,
                               std::uint64_t seed) {
    if (g.order() == 1) {
      return Simplicity::not_simple;
    }
    return is_simple_monte_carlo(g, trials, seed).verdict;
  }

  inline std::vector<std::size_t> orbit_lengths(PermGroup const& g) {
    std::vector<std::size_t> lengths;
    for (auto const& o : orbits(g)) {
      lengths.push_back(o.size());
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
  }

  inline std::optional<SearchHit> evaluate(SearchTask const& task,
                                           PermGroup const&  k,
                                           Permutation const& x,
                                           SearchResult&      result) {
    PermGroup const& h = task.h;
    ++result.candidates;
    PermGroup arc = intersection(h, conjugate(h, x), {task.node_budget, task.seed});
    if (arc.order() != k.order() || !is_subgroup(k, arc)) {
      ++result.arc_mismatch;
      return std::nullopt;
    }
    SearchHit hit;
    hit.x = x;
    std::vector<Permutation> gens = h.generators();
    gens.push_back(x);
    hit.generated        = PermGroup(h.degree(), std::move(gens), {}, task.seed);
    hit.generated_order  = hit.generated.order();
    hit.generated_simple = simplicity(hit.generated, task.simplicity_trials, task.seed);
    hit.point_stab       = point_stabilizer(hit.generated, 0);
    hit.point_stab_order = hit.point_stab.order();
    hit.point_stab_simple
        = simplicity(hit.point_stab, task.simplicity_trials, task.seed);
    hit.analysis = analyze_spec(hit.generated, h, x, {task.node_budget, task.seed});
    hit.x_sq_in_k        = k.contains(x * x);
    hit.x_sq_in_arc_stab = hit.analysis.report.undirected_ok;
    hit.k_is_arc_stab    = true;
    hit.factorization_ok = factorization_check(hit.generated, h);
    hit.signature = {hit.generated_order, orbit_lengths(hit.analysis.spec.arc_stab)};
    if (hit.analysis.spec.vertex_count <= task.max_graph_vertices) {
      auto         cg    = build_coset_graph(hit.analysis.spec, task.max_graph_vertices);
      auto         props = graph_props(cg.graph);
      GraphSummary s;
      s.vertex_count   = props.vertex_count;
      s.valency        = props.valency.value_or(0);
      s.connected      = props.connected;
      s.complete       = props.complete;
      s.arc_transitive = arc_transitivity_check(cg.action, cg.graph);
      hit.graph        = s;
    }
    return hit;
  }

  inline void tally(SearchResult& result) {
    std::map<Signature, SignatureCount> counts;
    for (auto const& hit : result.hits) {
      auto& c     = counts[hit.signature];
      c.signature = hit.signature;
      ++c.hits;
      c.realizing += hit.realizes() ? 1 : 0;
    }
    result.signatures.clear();
    for (auto& [sig, c] : counts) {
      result.signatures.push_back(std::move(c));
    }
  }

}  // namespace detail

inline SearchResult remark_search(SearchTask const& task) {
  PermGroup const& h = task.h;
  detail::check_hall_input(h, task.r);
  if (!is_transitive(h)) {
    throw NotTransitive("H must be transitive on its " + std::to_string(h.degree())
                        + " points");
  }
  PermGroup ambient = detail::ambient_group(task);
  if (ambient.degree() != h.degree()) {
    throw DegreeMismatch("ambient group and H differ in degree");
  }
  if (!is_subgroup(h, ambient)) {
    throw NotASubgroup("H is not contained in the ambient group");
  }
  if (task.mode == SearchMode::exhaustive
      && h.degree() > task.max_exhaustive_degree) {
    throw AmbientTooLarge("exhaustive search is limited to degree "
                          + std::to_string(task.max_exhaustive_degree)
                          + ", got " + std::to_string(h.degree()));
  }

  SearchResult result;
  result.mode   = task.mode;
  result.seed   = task.seed;
  result.budget = task.mode == SearchMode::exhaustive ? task.max_cosets : task.samples;
  if (task.k) {
    if (!is_subgroup(*task.k, h) || !detail::is_index(h, *task.k, task.r)) {
      throw InvalidParams("the given K is not a subgroup of index r in H");
    }
    result.k             = *task.k;
    result.hall_strategy = "given";
  } else {
    result.k = hall_rprime_subgroup(h, task.r, {20'000, task.seed});
    result.hall_strategy = result.k.label();
  }
  PermGroup const& k = result.k;

  PermGroup n;
  try {
    n = normalizer(ambient, k, {task.node_budget, task.seed});
  } catch (BudgetExceeded const& e) {
    throw NormalizerBudgetExceeded(e.what(), e.partial());
  }
  result.normalizer_order = n.order();

  if (task.mode == SearchMode::exhaustive) {
    BigNat index = result.normalizer_order / k.order();
    if (index > task.max_cosets) {
      throw AmbientTooLarge("|N(K) : K| = " + to_string(index)
                            + " exceeds the coset limit "
                            + std::to_string(task.max_cosets));
    }
    CosetTable cosets(n, k, task.max_cosets);
    for (std::size_t i = 1; i < cosets.size(); ++i) {
      Permutation const& y = cosets.representative(i);
      if (!k.contains(y * y) || h.contains(y)) {
        continue;
      }
      if (auto hit = detail::evaluate(task, k, two_part(y), result)) {
        result.hits.push_back(std::move(*hit));
      }
    }
    result.exhaustive = true;
  } else {
    std::mt19937_64 rng(task.seed);
    std::set<std::vector<Point>> seen;
    auto const&                  chain    = n.chain();
    bool const                   small_k  = k.order() <= 100'000;
    std::size_t                  realized = 0;
    for (; result.samples_drawn < task.samples; ++result.samples_drawn) {
      Permutation x = two_part(chain.random_element(rng));
      while (!k.contains(x * x)) {
        x = x * x;
      }
      if (x.is_identity() || h.contains(x)) {
        continue;
      }
      // One candidate per coset Kx: key it by its least element.
      auto               images = x.images();
      std::vector<Point> key(images.begin(), images.end());
      if (small_k) {
        for_each_element(k.chain(), [&](Permutation const& g) {
          Permutation kx = g * x;
          auto        im = kx.images();
          if (std::lexicographical_compare(im.begin(), im.end(), key.begin(), key.end())) {
            key.assign(im.begin(), im.end());
          }
        });
      }
      if (!seen.insert(std::move(key)).second) {
        continue;
      }
      if (auto hit = detail::evaluate(task, k, x, result)) {
        bool good = hit->realizes();
        result.hits.push_back(std::move(*hit));
        if (good && ++realized == task.stop_after) {
          ++result.samples_drawn;
          break;
        }
      }
    }
  }
  detail::tally(result);
  return result;
}

}  // namespace primesym

#endif  // PRIMESYM_SEARCHER_HPP_
