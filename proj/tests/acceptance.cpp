// One line per acceptance criterion: "criterion N: PASS|FAIL ...". The exit
// status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "primesym/claims.hpp"
#include "properties.hpp"

using namespace primesym;

namespace {

struct Outcome {
  bool        passed = false;
  std::string detail;
};

bool run(int number, double limit_seconds, std::function<Outcome()> const& body) {
  auto    start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (Error const& e) {
    out = {false, e.kind() + ": " + e.what()};
  } catch (std::exception const& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool   in_time = seconds < limit_seconds;
  bool   ok      = out.passed && in_time;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << " (" << out.detail
       << "; " << seconds << " s, limit " << limit_seconds << " s)";
  std::cout << line.str() << std::endl;
  return ok;
}

Outcome claim(std::string const& id, Json const& registry,
              std::function<std::string(Json const&)> const& describe) {
  auto r = reproduce_claim(id, registry);
  return {r.passed, id + ": " + describe(r.details)};
}

std::string str(Json const& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

int main() {
  auto registry = load_registry();
  bool all      = true;

  all &= run(1, 5, [&] {
    return claim("ZSIG_TABLE", registry, [](Json const& d) {
      return "exceptions " + d.at("exceptions").dump() + " over "
             + str(d.at("pairs_scanned")) + " pairs";
    });
  });
  all &= run(2, 10, [&] {
    return claim("LEMMA_R", registry, [](Json const& d) {
      return str(d.at("prime_instances")) + " prime instances, "
             + str(d.at("contradictions")) + " contradictions";
    });
  });
  all &= run(3, 5, [&] {
    return claim("TABLE1_SANITY", registry, [](Json const& d) {
      return "line 3 r " + d.at("line3_r").dump() + ", mf " + d.at("line3_mf").dump()
             + "; line 1 pairs " + std::to_string(d.at("line1_pairs").size())
             + " match oracle " + str(d.at("line1_matches_oracle"));
    });
  });
  all &= run(4, 60, [&] {
    return claim("K12_FROM_M12", registry, [](Json const& d) {
      if (!d.contains("graph")) {
        return std::string("no realizing hit");
      }
      return "complete " + str(d.at("graph").at("complete")) + ", vertices "
             + str(d.at("graph").at("vertex_count")) + ", valency "
             + str(d.at("graph").at("valency")) + ", |G_a| "
             + str(d.at("rpart").at("stabilizer_order")) + ", r-part check "
             + str(d.at("rpart").at("passed"));
    });
  });
  all &= run(5, 30, [&] {
    return claim("PSL2_11_CAYLEY", registry, [](Json const& d) {
      if (!d.contains("graph")) {
        return std::string("no realizing hit");
      }
      return "factorization " + str(d.at("factorization")) + ", vertices "
             + str(d.at("graph").at("vertex_count")) + ", valency "
             + str(d.at("graph").at("valency")) + ", |G_a| "
             + str(d.at("vertex_stabilizer_order")) + ", |T| " + str(d.at("t_order"))
             + ", T regular " + str(d.at("t_regular_on_vertices"));
    });
  });
  auto cases = [](Json const& d) {
    std::string s;
    for (auto const& c : d.at("cases")) {
      s += (s.empty() ? "" : ", ") + str(c.at("label")) + " " + c.at("tuple").dump() + " "
           + str(c.at("computed"))
           + (c.at("search").at("exhaustive").get<bool>() ? " [exhaustive]" : "")
           + (c.contains("conflict") ? " [conflict noted]" : "");
    }
    return s;
  };
  all &= run(6, 600, [&] { return claim("REMARK_7_7", registry, cases); });
  all &= run(7, 1800, [&] { return claim("REMARK_21_7", registry, cases); });
  all &= run(8, 7200, [&] {
    return claim("M24_UNIQUE", registry, [](Json const& d) {
      if (!d.contains("class_normalizer_orders")) {
        return std::string("no hit generating M24");
      }
      return "S4 classes " + str(d.at("hall_classes")) + ", normalizer orders "
             + d.at("class_normalizer_orders").dump() + ", M24 signatures "
             + str(d.at("target_signatures")) + ", graph classes " + str(d.at("graph_classes"));
    });
  });
  all &= run(9, 300 + 10 + 300 + 60, [&] {
    using clock = std::chrono::steady_clock;
    auto time = [](auto&& f, double limit, std::string const& name, bool& ok, std::string& out) {
      auto   t0 = clock::now();
      auto   t  = f();
      double s  = std::chrono::duration<double>(clock::now() - t0).count();
      bool   good = t.failures == 0 && s < limit;
      ok &= good;
      std::ostringstream o;
      o.setf(std::ios::fixed);
      o.precision(2);
      o << name << " " << t.checked << " checked, " << t.failures << " failed";
      if (t.failures) {
        o << " (" << t.first_failure << ")";
      }
      o << ", " << s << "/" << limit << " s";
      out += (out.empty() ? "" : "; ") + o.str();
      return t.checked;
    };
    bool        ok = true;
    std::string detail;
    auto a = time([] { return props::engine_vs_brute_force(200, 9); }, 300, "(a)", ok, detail);
    auto b = time([] { return props::cyclotomic_identity(40, 64); }, 10, "(b)", ok, detail);
    auto c = time([] { return props::coset_specs(50, 9); }, 300, "(c)", ok, detail);
    auto d = time([] { return props::quotient_valency(25, 9); }, 60, "(d)", ok, detail);
    ok &= a >= 200 && b > 0 && c >= 50 && d > 0;
    return Outcome{ok, detail};
  });

  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}
