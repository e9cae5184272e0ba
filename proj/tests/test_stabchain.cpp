#include <random>

#include "catch_amalgamated.hpp"

#include "primesym/atlas.hpp"
#include "primesym/group_ops.hpp"
#include "primesym/simple_orders.hpp"
#include "primesym/stabchain.hpp"
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
}  // namespace

TEST_CASE("group orders", "[stabchain]") {
  CHECK(grp(5, {"(1,2,3)", "(3,4,5)"}).order() == 60);
  CHECK(PermGroup::trivial(7).order() == 1);
  CHECK(alternating_group(12).order() == BigNat("239500800"));
  auto m12 = lookup_group("M12");
  CHECK(m12.order() == 95040);
  CHECK(m12.order() == simple_order(Family::Sporadic, {0, 0, "M12"}));
  CHECK(alternating_group(12).order() / m12.order() == 2520);
  CHECK(p_part(BigNat(2520), BigNat(11)) == 1);
  CHECK(psl2(11).order() == 660);
}

TEST_CASE("chain invariants", "[stabchain]") {
  auto m12 = lookup_group("M12");
  auto const& chain = m12.chain();
  BigNat product = 1;
  for (auto const& level : chain.levels()) {
    product *= level.orbit.size();
  }
  CHECK(product == m12.order());
  for (auto const& s : chain.strong_generators()) {
    CHECK(m12.contains(s));
  }
}

TEST_CASE("membership", "[stabchain]") {
  auto a5 = alternating_group(5);
  CHECK_FALSE(a5.contains(parse_cycles("(1,2)", 5)));
  for (auto const& s : a5.generators()) {
    CHECK(a5.contains(s));
  }
  CHECK(grp(4, {"(1,2,3,4)"}).contains(parse_cycles("(1,3)(2,4)", 4)));
  CHECK_THROWS_AS(a5.contains(Permutation(6)), DegreeMismatch);
}

TEST_CASE("orbits and stabilizers", "[stabchain]") {
  CHECK(orbit(alternating_group(5), 0).size() == 5);
  auto o = orbit(grp(4, {"(1,2)(3,4)"}), 0);
  CHECK(std::set<Point>(o.begin(), o.end()) == std::set<Point>{0, 1});
  CHECK(orbit(PermGroup::trivial(5), 3) == std::vector<Point>{3});
  CHECK_THROWS_AS(orbit(PermGroup::trivial(5), 5), PointOutOfRange);

  CHECK(point_stabilizer(lookup_group("M12"), 0).order() == 7920);
  CHECK(point_stabilizer(alternating_group(5), 2).order() == 12);
  auto t = grp(3, {"(1,2)"});
  CHECK(point_stabilizer(t, 2).order() == 2);
}

TEST_CASE("coset actions", "[stabchain]") {
  auto l   = psl3_2();
  auto z7  = PermGroup(7, {parse_cycles("(1,2,3,4,5,6,7)", 7)});
  auto act = coset_action(l, z7);
  CHECK(act.size() == 24);
  CHECK(is_transitive(act.action()));
  CHECK(act.faithful());

  auto a4 = alternating_group(4);
  auto h  = grp(4, {"(1,2,3)"});
  auto c  = coset_action(a4, h);
  CHECK(c.size() == 4);
  CHECK(c.action().order() == 12);

  auto whole = coset_action(a4, a4);
  CHECK(whole.size() == 1);
  CHECK(whole.action().order() == 1);

  CHECK_THROWS_AS(coset_action(a4, grp(4, {"(1,2)"})), NotASubgroup);
  CHECK_THROWS_AS(coset_action(alternating_group(8), PermGroup::trivial(8), 100),
                  IndexExceedsLimit);

  // Each coset's representative maps back to its index.
  for (std::size_t i = 0; i < act.size(); ++i) {
    CHECK(act.index_of(act.representative(i)) == i);
  }
}

TEST_CASE("derived series", "[stabchain]") {
  auto s4 = derived_series(symmetric_group(4));
  REQUIRE(s4.terms.size() == 4);
  CHECK(s4.terms[1].order() == 12);
  CHECK(s4.terms[2].order() == 4);
  CHECK(s4.terms[3].order() == 1);
  CHECK(s4.is_solvable);

  auto a5 = derived_series(alternating_group(5));
  CHECK(a5.terms.size() == 1);
  CHECK(a5.is_perfect);

  auto f21 = derived_series(grp(7, {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}));
  REQUIRE(f21.terms.size() == 3);
  CHECK(f21.terms[0].order() == 21);
  CHECK(f21.terms[1].order() == 7);
  CHECK(f21.is_solvable);
}

TEST_CASE("blocks and primitivity", "[stabchain]") {
  auto c4 = minimal_block_system(grp(4, {"(1,2,3,4)"}));
  CHECK_FALSE(c4.primitive);
  CHECK(c4.blocks == std::vector<std::vector<Point>>{{0, 2}, {1, 3}});
  CHECK(minimal_block_system(alternating_group(5)).primitive);
  CHECK(is_primitive(lookup_group("M12")));
  CHECK_THROWS_AS(minimal_block_system(grp(4, {"(1,2)"})), NotTransitive);
}

TEST_CASE("simplicity verdicts", "[stabchain]") {
  CHECK(is_simple_monte_carlo(alternating_group(6)).verdict == Simplicity::certified_simple);
  auto s6 = is_simple_monte_carlo(symmetric_group(6));
  CHECK(s6.verdict == Simplicity::not_simple);
  REQUIRE(s6.witness);
  CHECK(s6.witness->order() == 360);
  auto f21 = is_simple_monte_carlo(grp(7, {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}));
  CHECK(f21.verdict == Simplicity::not_simple);
  REQUIRE(f21.witness);
  CHECK(f21.witness->order() == 7);
  CHECK(is_simple_monte_carlo(grp(5, {"(1,2,3,4,5)"})).verdict == Simplicity::certified_simple);
  CHECK_THROWS_AS(is_simple_monte_carlo(PermGroup::trivial(3)), TrivialGroup);
}

TEST_CASE("factorizations", "[stabchain]") {
  auto g = psl2(11);
  // PSL2(11) on 11 points: the coset action on an A5.
  std::mt19937_64          rng(1);
  std::optional<PermGroup> a5;
  for (int i = 0; i < 200 && !a5; ++i) {
    PermGroup s(12, {g.chain().random_element(rng), g.chain().random_element(rng)});
    if (s.order() == 60 && is_transitive(s)) {
      a5 = s;
    }
  }
  REQUIRE(a5);
  auto g11 = coset_action(g, *a5).action();
  REQUIRE(g11.degree() == 11);
  Permutation c(11);
  for (int i = 0; i < 200 && order(c) != 11; ++i) {
    c = g11.chain().random_element(rng);
  }
  CHECK(factorization_check(g11, PermGroup(11, {c})));
  CHECK(factorization_check(alternating_group(12), lookup_group("M12")));
  CHECK_FALSE(factorization_check(alternating_group(6), grp(6, {"(1,2,3)"})));
  CHECK_THROWS_AS(factorization_check(alternating_group(6), grp(6, {"(1,2)"})), NotASubgroup);
}

TEST_CASE("orders and membership agree with closure", "[stabchain][property]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 150; ++i) {
    std::size_t n = 3 + static_cast<std::size_t>(i % 5);
    auto        g = oracle::random_subgroup(n, rng);
    auto        elements = oracle::closure(g);
    REQUIRE(g.order() == elements.size());
    for (int j = 0; j < 20; ++j) {
      auto p = oracle::random_perm(n, rng);
      REQUIRE(g.contains(p) == (elements.count(p) == 1));
    }
    if (is_transitive(g)) {
      REQUIRE(BigNat(orbit(g, 0).size()) * point_stabilizer(g, 0).order() == g.order());
    }
    auto series = derived_series(g);
    if (series.is_perfect) {
      REQUIRE(series.terms.size() == 1);
    }
    bool has_odd = std::any_of(g.generators().begin(), g.generators().end(),
                               [](auto const& s) { return parity(s) == Parity::odd; });
    if (has_odd) {
      REQUIRE(even_subgroup(g).order() * 2 == g.order());
    }
  }
}

TEST_CASE("coset action degree is the index", "[stabchain][property]") {
  std::mt19937_64 rng(12);
  auto            s6 = symmetric_group(6);
  for (int i = 0; i < 40; ++i) {
    auto h = oracle::random_subgroup(6, rng);
    REQUIRE(BigNat(coset_action(s6, h).size()) * h.order() == s6.order());
  }
}
