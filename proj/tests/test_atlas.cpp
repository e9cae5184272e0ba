#include <filesystem>
#include <fstream>

#include "catch_amalgamated.hpp"

#include "primesym/atlas.hpp"
#include "primesym/cyclotomic.hpp"
#include "primesym/group_ops.hpp"
#include "primesym/simple_orders.hpp"

using namespace primesym;

TEST_CASE("stored records load and verify", "[atlas]") {
  std::map<std::string, BigNat> expected{
      {"M11", 7920},           {"M12", 95040},   {"M22", 443520},
      {"M23", 10200960},       {"M24", BigNat("244823040")},
      {"PSL3_3", 5616},        {"Sp6_2", 1451520}};
  for (auto name : stored_records) {
    auto g = load_group(atlas_dir() / (std::string(name) + ".grp"));
    CHECK(g.order() == expected.at(std::string(name)));
    CHECK(is_transitive(g));
  }
  auto m12 = load_group(atlas_dir() / "M12.grp");
  CHECK(m12.degree() == 12);
}

TEST_CASE("records are certified simple", "[atlas]") {
  for (auto name : {"M11", "M12", "M22", "PSL3_3", "Sp6_2"}) {
    CHECK(is_simple_monte_carlo(lookup_group(name)).verdict == Simplicity::certified_simple);
  }
}

TEST_CASE("record parsing errors", "[atlas]") {
  auto good = read_record(atlas_dir() / "M12.grp");
  auto bad  = good;
  bad.claimed_order = 95041;
  CHECK_THROWS_AS(verify_record(bad), OrderMismatch);
  try {
    verify_record(bad);
  } catch (OrderMismatch const& e) {
    CHECK(std::string(e.what()).find("expected order 95041, got 95040") != std::string::npos);
  }

  std::string text = "name X\ndegree 4\norder 4\ngen (1,2,3,4\n";
  try {
    parse_record(text, "x.grp");
    FAIL("no error");
  } catch (ParseError const& e) {
    CHECK(std::string(e.what()).rfind("x.grp:4:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_record("name X\ndegree 4\ngen (1,2)\n", "y"), ParseError);
  CHECK_THROWS_AS(parse_record("name X\ndegree 4\norder 2\n", "y"), ParseError);
  CHECK_THROWS_AS(parse_record("name X\ndegree four\norder 2\ngen (1,2)\n", "y"), ParseError);
  CHECK_THROWS_AS(parse_record("# c\nname X\ndegree 2\norder 2\nfoo bar\ngen (1,2)\n", "y"),
                  ParseError);
  CHECK_THROWS_AS(load_group("/nonexistent/Q.grp"), UnknownName);
}

TEST_CASE("record round trip", "[atlas]") {
  for (auto name : stored_records) {
    auto record = read_record(atlas_dir() / (std::string(name) + ".grp"));
    auto again  = parse_record(format_record(record), "round-trip");
    auto a = verify_record(record);
    auto b = verify_record(again);
    CHECK(a.order() == b.order());
    CHECK(orbits(a) == orbits(b));
    CHECK(again.provenance == record.provenance);
  }
  auto rec = to_record(alternating_group(9), "A9", "constructed");
  CHECK(verify_record(parse_record(format_record(rec), "a9")).order() == 181440);
}

TEST_CASE("builtin groups", "[atlas]") {
  auto p = builtin("PSL2", 11);
  CHECK(p.degree() == 12);
  CHECK(p.order() == 660);
  CHECK(builtin("Alt", 5).order() == 60);
  CHECK(lookup_group("A9").order() == 181440);
  auto d24 = builtin("PSL3_2_deg24");
  CHECK(d24.degree() == 24);
  CHECK(d24.order() == 168);
  CHECK(is_transitive(d24));
  CHECK(psl3_2().order() == 168);
  CHECK_THROWS_AS(builtin("Foo"), UnknownName);
  CHECK_THROWS_AS(builtin("PSL2", 6), InvalidParams);
  CHECK_THROWS_AS(builtin("Alt", 0), InvalidParams);
}

TEST_CASE("catalogue", "[atlas]") {
  auto cat = catalogue();
  auto find = [&](std::string const& name) {
    return std::find_if(cat.begin(), cat.end(), [&](auto const& e) { return e.name == name; });
  };
  REQUIRE(find("M24") != cat.end());
  CHECK(find("M24")->order == BigNat("244823040"));
  REQUIRE(find("A5") != cat.end());
  CHECK(find("A5")->degree == 5);
  for (auto const& e : cat) {
    if (e.simple) {
      REQUIRE(e.family);
      CHECK(simple_order(*e.family, e.params) == e.order);
    }
  }
}

TEST_CASE("PSL2(q) is 2-transitive", "[atlas][property]") {
  for (auto const& q : prime_powers_up_to(32)) {
    auto qv = static_cast<unsigned>(q.value);
    if (qv < 4) {
      continue;
    }
    auto g = psl2(qv);
    REQUIRE(g.degree() == qv + 1);
    REQUIRE(is_transitive(g));
    REQUIRE(orbit(point_stabilizer(g, 0), 1).size() == qv);
    REQUIRE(g.order() == simple_order(Family::PSL, {2, q.value, ""}));
  }
}

TEST_CASE("atlas directory override", "[atlas]") {
  auto dir = std::filesystem::temp_directory_path() / "primesym_atlas_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "M12.grp") << "name M12\ndegree 12\norder 95041\ngen (1,2)\n";
  setenv("PRIMESYM_ATLAS_DIR", dir.c_str(), 1);
  CHECK(atlas_dir() == dir);
  CHECK_THROWS_AS(lookup_group("M12"), OrderMismatch);
  unsetenv("PRIMESYM_ATLAS_DIR");
  CHECK(lookup_group("M12").order() == 95040);
  std::filesystem::remove_all(dir);
}
