#include <random>

#include "catch_amalgamated.hpp"

#include "primesym/atlas.hpp"
#include "primesym/backtrack.hpp"
#include "primesym/searcher.hpp"
#include "oracles.hpp"

using namespace primesym;

namespace {
PermGroup grp(std::size_t n, std::initializer_list<char const*> gens) {
  std::vector<Permutation> g;
  for (auto s : gens) {
    g.push_back(parse_cycles(s, n));
  }
  return PermGroup(n, std::move(g));
}

bool same(PermGroup const& g, oracle::ElementSet const& elements) {
  if (g.order() != elements.size()) {
    return false;
  }
  return std::all_of(elements.begin(), elements.end(),
                     [&](auto const& p) { return g.contains(p); });
}

// x normalizes <gens> iff every conjugated generator stays inside.
oracle::ElementSet brute_normalizer(oracle::ElementSet const& g,
                                    oracle::ElementSet const& k,
                                    std::vector<Permutation> const& gens) {
  oracle::ElementSet out;
  for (auto const& x : g) {
    if (std::all_of(gens.begin(), gens.end(),
                    [&](auto const& s) { return k.count(conjugate(s, x)) == 1; })) {
      out.insert(x);
    }
  }
  return out;
}

oracle::ElementSet brute_centralizer(oracle::ElementSet const& g,
                                     std::vector<Permutation> const& gens) {
  oracle::ElementSet out;
  for (auto const& x : g) {
    if (std::all_of(gens.begin(), gens.end(),
                    [&](auto const& s) { return s * x == x * s; })) {
      out.insert(x);
    }
  }
  return out;
}

PermGroup random_subgroup_of(PermGroup const& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 2);
  std::vector<Permutation>           gens;
  for (int i = count(rng); i >= 0; --i) {
    auto p = g.chain().random_element(rng);
    if (i == 0) {
      p = power(p, 2);  // favour smaller subgroups
    }
    gens.push_back(p);
  }
  return PermGroup(g.degree(), std::move(gens));
}
}  // namespace

TEST_CASE("normalizer examples", "[backtrack]") {
  auto n = normalizer(symmetric_group(4), grp(4, {"(1,2,3)"}));
  CHECK(n.order() == 6);
  CHECK(same_group(n, grp(4, {"(1,2,3)", "(1,2)"})));
  auto a4 = alternating_group(4);
  CHECK(same_group(normalizer(a4, grp(4, {"(1,2)(3,4)", "(1,3)(2,4)"})), a4));
}

TEST_CASE("centralizer examples", "[backtrack]") {
  auto s4 = symmetric_group(4);
  auto c  = centralizer(s4, parse_cycles("(1,2)", 4));
  CHECK(same_group(c, grp(4, {"(1,2)", "(3,4)"})));
  CHECK(same_group(centralizer(s4, PermGroup::trivial(4)), s4));
  auto c5 = centralizer(alternating_group(5), parse_cycles("(1,2,3,4,5)", 5));
  CHECK(same_group(c5, grp(5, {"(1,2,3,4,5)"})));
}

TEST_CASE("intersection examples", "[backtrack]") {
  auto c4 = grp(4, {"(1,2,3,4)"});
  CHECK(same_group(intersection(c4, alternating_group(4)), grp(4, {"(1,3)(2,4)"})));
  auto m12 = lookup_group("M12");
  CHECK(same_group(intersection(m12, m12), m12));
  auto both = intersection(point_stabilizer(m12, 0), point_stabilizer(m12, 1));
  CHECK(both.order() == 720);
}

TEST_CASE("normalizers of S4 classes inside M24", "[backtrack]") {
  auto h       = psl3_2_deg24();
  auto classes = hall_rprime_classes(h, 7, 20, {20'000, 0});
  REQUIRE(classes.size() == 2);
  SearchTask task;
  task.h      = h;
  task.r      = 7;
  auto result = remark_search(task);
  auto it     = std::find_if(result.hits.begin(), result.hits.end(), [](auto const& hit) {
    return hit.generated_order == BigNat("244823040");
  });
  REQUIRE(it != result.hits.end());
  std::multiset<BigNat> orders;
  for (auto const& k : classes) {
    orders.insert(normalizer(it->generated, k).order());
  }
  CHECK(orders == std::multiset<BigNat>{24, 48});
}

TEST_CASE("budget exhaustion is reported", "[backtrack]") {
  auto g = alternating_group(12);
  auto k = PermGroup(12, {parse_cycles("(1,2,3)(4,5,6)(7,8,9)(10,11,12)", 12)});
  BacktrackOptions o;
  o.node_budget = 3;
  CHECK_THROWS_AS(normalizer(g, k, o), BudgetExceeded);
}

TEST_CASE("agrees with brute force on subgroups of S7", "[backtrack][property]") {
  std::mt19937_64 rng(2024);
  auto            s7 = symmetric_group(7);
  int             checked = 0;
  while (checked < 200) {
    auto g = oracle::random_subgroup(7, rng);
    if (g.order() > 2000) {
      continue;
    }
    auto ge = oracle::closure(g);
    REQUIRE(g.order() == ge.size());
    auto p = oracle::random_perm(7, rng);
    REQUIRE(g.contains(p) == (ge.count(p) == 1));

    auto k  = random_subgroup_of(g, rng);
    auto ke = oracle::closure(k);
    auto n  = normalizer(g, k);
    REQUIRE(same(n, brute_normalizer(ge, ke, k.generators())));
    auto c = centralizer(g, k);
    REQUIRE(same(c, brute_centralizer(ge, k.generators())));
    REQUIRE(is_subgroup(k, n));
    REQUIRE(is_subgroup(c, n));
    for (auto const& s : n.generators()) {
      for (auto const& t : k.generators()) {
        REQUIRE(k.contains(conjugate(t, s)));
      }
    }

    auto other = oracle::random_subgroup(7, rng);
    auto oe    = oracle::closure(other);
    REQUIRE(same(intersection(g, other), oracle::intersection(ge, oe)));

    // Restricting the ambient group: N_h(k) = N_g(k) ∩ h for k ≤ h ≤ g.
    auto h = join(k, std::vector<Permutation>{g.chain().random_element(rng)});
    REQUIRE(same_group(normalizer(h, k), intersection(n, h)));
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("normalizers in S7 itself", "[backtrack][property]") {
  std::mt19937_64 rng(7);
  auto            s7 = symmetric_group(7);
  auto            se = oracle::closure(s7);
  for (int i = 0; i < 30; ++i) {
    auto k  = oracle::random_subgroup(7, rng);
    auto ke = oracle::closure(k);
    REQUIRE(same(normalizer(s7, k), brute_normalizer(se, ke, k.generators())));
    REQUIRE(same(centralizer(s7, k), brute_centralizer(se, k.generators())));
  }
}
