#include "catch_amalgamated.hpp"

#include "primesym/atlas.hpp"
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

PermGroup f21() { return grp(7, {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}); }

bool two_power(std::uint64_t v) { return (v & (v - 1)) == 0; }

// Every hit must carry a consistent certificate.
void check_hits(SearchResult const& result, PermGroup const& h, std::uint64_t r) {
  for (auto const& hit : result.hits) {
    REQUIRE_FALSE(h.contains(hit.x));
    REQUIRE(two_power(order(hit.x)));
    REQUIRE(hit.x_sq_in_k == result.k.contains(hit.x * hit.x));
    REQUIRE(hit.analysis.report.valency == r);
    REQUIRE(hit.analysis.report.connected == (hit.generated_order == hit.generated.order()));
    REQUIRE(hit.generated_order == hit.analysis.report.generated_order);
    REQUIRE(factorization_check(hit.generated, h) == hit.factorization_ok);
    if (hit.realizes()) {
      REQUIRE(hit.k_is_arc_stab);
      REQUIRE(hit.x_sq_in_k);
      REQUIRE(hit.analysis.report.undirected_ok);
    }
    if (hit.analysis.report.undirected_ok && hit.analysis.report.vertex_count <= 2000) {
      auto cg    = build_coset_graph(hit.analysis.spec, 2000);
      auto props = graph_props(cg.graph);
      REQUIRE(props.valency == std::optional<std::size_t>(r));
      REQUIRE(arc_transitivity_check(cg.action, cg.graph));
      REQUIRE(props.connected);
    }
  }
}
}  // namespace

TEST_CASE("element parts", "[searcher]") {
  auto x = parse_cycles("(1,2,3,4,5,6)(7,8)", 8);
  CHECK(order(two_part(x)) == 2);
  CHECK(order(rprime_part(x, 3)) == 2);
  CHECK(order(rprime_part(x, 2)) == 3);
  CHECK(two_part(x) == power(x, 3));
  auto y = parse_cycles("(1,2,3,4)(5,6,7)", 7);
  CHECK(order(two_part(y)) == 4);
  CHECK(two_part(y) == power(y, 3));
}

TEST_CASE("Hall r'-subgroups", "[searcher]") {
  auto k = hall_rprime_subgroup(f21(), 7);
  CHECK(k.order() == 3);
  CHECK(k.label() == "orbit_stabilizer");
  auto l = hall_rprime_subgroup(psl3_2(), 7);
  CHECK(l.order() == 24);
  auto s5 = PermGroup(6, {parse_cycles("(1,2,3,4,5)", 6), parse_cycles("(1,2)", 6)});
  CHECK(hall_rprime_subgroup(s5, 5).order() == 24);
  auto d24 = hall_rprime_subgroup(psl3_2_deg24(), 7);
  CHECK(d24.order() == 24);
  CHECK(hall_rprime_subgroup(grp(7, {"(1,2,3,4,5,6,7)"}), 7).order() == 1);

  CHECK_THROWS_AS(hall_rprime_subgroup(alternating_group(6), 5, {500, 0}), NoHallSubgroupFound);
  CHECK_THROWS_AS(hall_rprime_subgroup(f21(), 4), InvalidParams);
  CHECK_THROWS_AS(hall_rprime_subgroup(symmetric_group(4), 2), InvalidParams);

  auto classes = hall_rprime_classes(psl3_2_deg24(), 7, 20, {2000, 0});
  CHECK(classes.size() == 2);
  CHECK_FALSE(conjugating_element(psl3_2_deg24(), classes[0], classes[1]).has_value());
}

TEST_CASE("degree 5, r = 5: A4 is not simple", "[searcher]") {
  SearchTask task;
  task.h      = grp(5, {"(1,2,3,4,5)"});
  task.r      = 5;
  auto result = remark_search(task);
  CHECK(result.exhaustive);
  REQUIRE_FALSE(result.hits.empty());
  for (auto const& hit : result.hits) {
    CHECK(hit.generated_order == 60);
    CHECK(hit.point_stab_order == 12);
    CHECK(hit.point_stab_simple == Simplicity::not_simple);
    CHECK_FALSE(hit.realizes());
  }
  CHECK(result.verdict() == "does not exist");
  check_hits(result, task.h, 5);
}

TEST_CASE("degree 7, r = 7", "[searcher]") {
  SearchTask task;
  task.h      = grp(7, {"(1,2,3,4,5,6,7)"});
  task.r      = 7;
  auto z7     = remark_search(task);
  CHECK(z7.exhaustive);
  CHECK(z7.verdict() == "exists");
  check_hits(z7, task.h, 7);

  task.h   = f21();
  auto f   = remark_search(task);
  CHECK(f.exhaustive);
  CHECK(f.k.order() == 3);
  CHECK(f.normalizer_order == 18);
  CHECK(f.verdict() == "exists");
  check_hits(f, task.h, 7);
  auto it = std::find_if(f.hits.begin(), f.hits.end(), [](auto const& h) { return h.realizes(); });
  REQUIRE(it != f.hits.end());
  CHECK(it->generated_order == 2520);
  CHECK(it->point_stab_order == 360);
}

TEST_CASE("exhaustive signatures do not depend on the seed", "[searcher][property]") {
  SearchTask task;
  task.h = f21();
  task.r = 7;
  std::vector<Signature> first;
  for (std::uint64_t seed : {0, 1, 17}) {
    task.seed   = seed;
    auto result = remark_search(task);
    std::vector<Signature> sigs;
    for (auto const& s : result.signatures) {
      sigs.push_back(s.signature);
    }
    if (first.empty()) {
      first = sigs;
    }
    CHECK(sigs == first);
  }
}

TEST_CASE("randomized mode", "[searcher]") {
  SearchTask task;
  task.h       = grp(5, {"(1,2,3,4,5)"});
  task.r       = 5;
  task.mode    = SearchMode::randomized;
  task.samples = 30;
  task.seed    = 4;
  auto result  = remark_search(task);
  CHECK_FALSE(result.exhaustive);
  CHECK(result.verdict() == "not found (budget 30, seed 4)");

  task.h       = f21();
  task.r       = 7;
  task.samples = 500;
  auto found   = remark_search(task);
  CHECK(found.realizable());
  CHECK(found.verdict() == "exists");
  check_hits(found, task.h, 7);
}

TEST_CASE("search input validation", "[searcher]") {
  SearchTask task;
  task.h = grp(7, {"(1,2,3)"});
  task.r = 3;
  CHECK_THROWS_AS(remark_search(task), NotTransitive);
  task.h = grp(25, {"(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25)"});
  task.r = 5;
  CHECK_THROWS_AS(remark_search(task), InvalidParams);  // 25 = 5^2
  SearchTask big;
  std::vector<Permutation> cyc{cycle_on(26, 0, 25)};
  big.h = PermGroup(26, cyc);
  big.r       = 13;
  big.ambient = AmbientKind::symmetric;
  CHECK_THROWS_AS(remark_search(big), AmbientTooLarge);
  SearchTask outside;
  outside.h       = symmetric_group(5);
  outside.r       = 5;
  outside.ambient = AmbientKind::alternating;
  CHECK_THROWS_AS(remark_search(outside), NotASubgroup);
  SearchTask tight;
  tight.h           = psl3_2_deg24();
  tight.r           = 7;
  tight.node_budget = 2;
  CHECK_THROWS_AS(remark_search(tight), NormalizerBudgetExceeded);
}
