#ifndef PRIMESYM_TABLE1_HPP_
#define PRIMESYM_TABLE1_HPP_

// Enumeration of the (L, T, r) exception table for Cayley graphs of simple
// groups of prime valency. Each line's side conditions are data written in
// the condition language of condition_dsl.hpp, next to its usual written
// form.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primesym/bignat.hpp"
#include "primesym/condition_dsl.hpp"
#include "primesym/cyclotomic.hpp"
#include "primesym/errors.hpp"
#include "primesym/primes.hpp"
#include "primesym/simple_orders.hpp"

namespace primesym {

struct GroupDescriptor {
  std::string family;  // as written in the table: "A", "PSU", "POmega-", ...
  unsigned    dim = 0; // degree or dimension; 0 if not applicable
  BigNat      q   = 0; // field size; 0 if not applicable
  std::string display;
};

struct Table1Instance {
  int                                      line = 0;
  std::string                              row;  // "3", "14b", ...
  GroupDescriptor                          L;
  GroupDescriptor                          T;
  BigNat                                   r;
  std::string                              condition_text;
  std::vector<std::pair<std::string, BigNat>> bindings;
  std::vector<std::string>                 checked;  // conditions evaluated true
  // (q, d) with r = (q^d - 1)/(q - 1), when the line has that shape.
  std::optional<std::pair<BigNat, std::uint64_t>> lemma_qd;
  // E with ord_r(p) = E, when r is a primitive prime divisor of p^E - 1.
  std::optional<std::uint64_t> ppd_exponent;
  std::string                  note;
};

struct Table1Bounds {
  std::uint64_t max_param = 16;      // every loop variable and the exponent of r
  std::uint64_t max_p     = 13;      // characteristic
  std::uint64_t max_order = 100000;  // |T| for line 2
};

namespace detail {

  struct GroupTemplate {
    std::string family;
    std::string dim;  // expression, empty if none
    std::string q;    // expression, empty if none
  };

  struct LineSpec {
    int                                              line;
    std::string                                      row;
    std::vector<std::pair<std::string, std::string>> loops;    // name, domain
    std::vector<std::pair<std::string, std::string>> derived;  // name, expr
    std::vector<std::string>                         conditions;
    std::string                                      condition_text;
    std::string                                      size;  // bounded by max_param
    std::string                                      r;
    GroupTemplate                                    L;
    std::vector<GroupTemplate>                       T;
    std::string                                      lemma_q;  // empty if n/a
    std::string                                      lemma_d;
    std::string                                      ppd_exponent;  // empty if n/a
    std::string                                      note;
  };

  // Domains: "prime" (primes <= max_param), "char" (primes <= max_p),
  // "range" (1..max_param), or a fixed integer.
  inline std::vector<LineSpec> const& table1_lines() {
    static std::string const shared_49
        = "lines 4 and 9 share the r-formula; they differ only in the "
          "families of L and T";
    static std::vector<LineSpec> const lines{
        {1, "1", {{"n", "range"}, {"r", "prime"}}, {},
         {"r >= 7", "r | n", "not (r^2 | n)", "not prime(n)"},
         "r ∣ n, r² ∤ n, n not prime", "n", "r",
         {"A", "n", ""}, {{"A", "n-1", ""}}, "", "", "", ""},
        {3, "3", {{"m", "range"}, {"f", "range"}, {"p", "2"}},
         {{"e", "log(m*f, 2)"}},
         {"m >= 2", "power_of(m*f, 2)", "m*f > 2"},
         "m ≥ 2, mf = 2^e > 2", "m*f", "2^(m*f) + 1",
         {"PSU", "2*m", "2^f"}, {{"PSU", "2*m-1", "2^f"}},
         "2^(m*f)", "2", "2*m*f", ""},
        {4, "4", {{"m", "range"}, {"f", "range"}, {"p", "char"}, {"d", "prime"}},
         {{"e", "log(m*f, d)"}},
         {"m >= 3", "power_of(m*f, d)", "odd(p)", "odd(d)"},
         "m ≥ 3, mf = d^e, odd primes p, d", "m*f",
         "(p^(m*f) - 1)/(p^(m*f/d) - 1)",
         {"Omega", "2*m+1", "p^f"}, {{"POmega-", "2*m", "p^f"}},
         "p^(m*f/d)", "d", "m*f", shared_49},
        {5, "5", {{"f", "range"}, {"p", "2"}}, {{"e", "log(f, 2)"}},
         {"power_of(f, 2)", "f > 1"},
         "f = 2^e > 1", "4*f", "2^(4*f) + 1",
         {"POmega-", "10", "2^f"}, {{"PSU", "5", "2^f"}},
         "2^(4*f)", "2", "8*f", ""},
        {6, "6", {{"m", "range"}, {"f", "range"}, {"d", "prime"}, {"p", "2"}},
         {{"e", "log(m*f, d)"}},
         {"m >= 4", "power_of(m*f, d)"},
         "m ≥ 4, mf = d^e, prime d", "m*f",
         "(2^(m*f) - 1)/(2^(m*f/d) - 1)",
         {"Omega+", "2*m", "2^f"}, {{"Sp", "2*m-2", "2^f"}},
         "2^(m*f/d)", "d", "m*f", ""},
        {7, "7", {{"m", "range"}, {"f", "range"}, {"d", "prime"}, {"p", "2"}},
         {{"e", "log(m*f, d)"}},
         {"m >= 5", "power_of(m*f, d)", "odd(d)"},
         "m ≥ 5, mf = d^e, odd prime d", "m*f",
         "(2^(m*f) - 1)/(2^(m*f/d) - 1)",
         {"Omega+", "2*m", "2^f"}, {{"Omega-", "2*m-2", "2^f"}},
         "2^(m*f/d)", "d", "m*f", ""},
        {8, "8", {{"m", "prime"}, {"f", "range"}, {"p", "char"}},
         {{"e", "log(f, m)"}},
         {"odd(m)", "m >= 5", "power_of(f, m)"},
         "odd prime m ≥ 5, f = m^e", "m*f",
         "(p^(m*f) - 1)/(p^f - 1)",
         {"Omega+", "2*m", "p^f"}, {{"POmega-", "2*m-2", "p^f"}},
         "p^f", "m", "m*f", ""},
        {9, "9", {{"m", "range"}, {"f", "range"}, {"p", "char"}, {"d", "prime"}},
         {{"e", "log(m*f, d)"}},
         {"m >= 5", "power_of(m*f, d)", "odd(p)", "odd(d)"},
         "m ≥ 5, mf = d^e, odd primes p, d", "m*f",
         "(p^(m*f) - 1)/(p^(m*f/d) - 1)",
         {"POmega+", "2*m", "p^f"}, {{"Omega", "2*m-1", "p^f"}},
         "p^(m*f/d)", "d", "m*f", shared_49},
        {10, "10", {{"f", "range"}, {"p", "2"}}, {{"e", "log(f, 2)"}},
         {"power_of(f, 2)", "f > 2"},
         "f = 2^e > 2", "f", "2^f + 1",
         {"Sp", "4", "2^f"}, {{"SL", "2", "2^(2*f)"}},
         "2^f", "2", "2*f", ""},
        {11, "11", {{"f", "range"}, {"p", "2"}}, {{"e", "log(f, 2)"}},
         {"power_of(f, 2)", "f >= 2"},
         "f = 2^e ≥ 2", "2*f", "2^(2*f) + 1",
         {"Sp", "6", "2^f"}, {{"G2", "", "2^(2*f)"}, {"SL", "2", "2^(3*f)"}},
         "2^(2*f)", "2", "4*f", ""},
        {12, "12", {{"m", "range"}, {"f", "range"}, {"d", "prime"}, {"p", "2"}},
         {{"e", "log(m*f, d)"}},
         {"m >= 4", "power_of(m*f, d)"},
         "m ≥ 4, mf = d^e, prime d", "m*f",
         "(2^(m*f) - 1)/(2^(m*f/d) - 1)",
         {"Sp", "2*m", "2^f"}, {{"Omega-", "2*m", "2^f"}},
         "2^(m*f/d)", "d", "m*f", ""},
        {13, "13", {{"n", "range"}, {"f", "range"}, {"p", "char"}, {"d", "prime"}},
         {{"e", "log(n*f, d)"}},
         {"n > d", "power_of(n*f, d)", "odd(d)"},
         "n > d, nf = d^e, odd prime d", "n*f",
         "(p^(n*f) - 1)/(p^(n*f/d) - 1)",
         {"PSL", "n", "p^f"}, {{"PSL", "n-1", "p^f"}},
         "p^(n*f/d)", "d", "n*f", ""},
        {14, "14a", {{"n", "range"}, {"m", "range"}, {"f", "range"}, {"p", "char"}},
         {{"e", "log(f, n-1)"}},
         {"1 < m and m < n", "m | n", "power_of(f, n-1)", "prime(n-1)", "odd(n-1)"},
         "1 < m < n, and (*): m ∣ n, f = (n−1)^e, odd prime n−1", "(n-1)*f",
         "(p^((n-1)*f) - 1)/(p^f - 1)",
         {"PSL", "n", "p^f"}, {{"PSL", "m", "p^(n/m*f)"}},
         "p^f", "n-1", "(n-1)*f", ""},
        {14, "14b", {{"n", "range"}, {"m", "range"}, {"f", "range"}, {"p", "char"}},
         {{"e", "log(f, n-1)"}},
         {"m | n", "power_of(f, n-1)", "prime(n-1)", "odd(n-1)", "even(m)",
          "m >= 4", "m == n -> p == 2"},
         "(*), even m ≥ 4, p = 2 if m = n", "(n-1)*f",
         "(p^((n-1)*f) - 1)/(p^f - 1)",
         {"PSL", "n", "p^f"}, {{"PSp", "m", "p^(n/m*f)"}},
         "p^f", "n-1", "(n-1)*f", ""},
        {14, "14c", {{"n", "range"}, {"m", "range"}, {"f", "range"}, {"p", "char"}},
         {{"e", "log(f, n-1)"}},
         {"m | n", "power_of(f, n-1)", "prime(n-1)", "odd(n-1)", "even(m/2)",
          "m/2 >= 4", "m == n -> p == 2"},
         "(*), even m/2 ≥ 4, p = 2 if m = n", "(n-1)*f",
         "(p^((n-1)*f) - 1)/(p^f - 1)",
         {"PSL", "n", "p^f"}, {{"POmega-", "m", "p^(n/m*f)"}},
         "p^f", "n-1", "(n-1)*f", ""},
        {14, "14d", {{"n", "range"}, {"m", "range"}, {"f", "range"}, {"p", "char"}},
         {{"e", "log(f, n-1)"}},
         {"m | n", "power_of(f, n-1)", "prime(n-1)", "odd(n-1)", "m == 6",
          "p == 2"},
         "(*), m = 6, p = 2", "(n-1)*f",
         "(p^((n-1)*f) - 1)/(p^f - 1)",
         {"PSL", "n", "p^f"}, {{"G2", "", "p^(n/m*f)"}},
         "p^f", "n-1", "(n-1)*f", ""},
        {15, "15", {}, {}, {}, "", "0", "7",
         {"PSU", "6", "2"}, {{"PSU", "5", "2"}}, "", "", "", ""},
        {16, "16", {}, {}, {}, "", "0", "7",
         {"Omega+", "12", "2"}, {{"Sp", "10", "2"}}, "", "", "", ""},
        {17, "17", {}, {}, {}, "", "0", "7",
         {"Sp", "12", "2"}, {{"Omega-", "12", "2"}}, "", "", "", ""},
    };
    return lines;
  }

  inline std::string group_display(std::string const& family, unsigned dim,
                                   BigNat const& q) {
    std::string out = family;
    if (dim > 0) {
      out += "_" + std::to_string(dim);
    }
    if (q > 0) {
      out += "(" + primesym::to_string(q) + ")";
    }
    return out;
  }

  inline GroupDescriptor instantiate(GroupTemplate const& t,
                                     dsl::Bindings const& env) {
    GroupDescriptor g;
    g.family = t.family;
    if (!t.dim.empty()) {
      auto v = dsl::evaluate(*dsl::parse(t.dim), env);
      g.dim  = v ? static_cast<unsigned>(*v) : 0;
    }
    if (!t.q.empty()) {
      auto v = dsl::evaluate(*dsl::parse(t.q), env);
      g.q    = v ? *v : BigNat(0);
    }
    g.display = group_display(g.family, g.dim, g.q);
    return g;
  }

  // Checks that p has multiplicative order exactly E modulo r.
  inline bool has_order(BigNat const& p, std::uint64_t E, BigNat const& r) {
    using boost::multiprecision::powm;
    if (powm(p, BigNat(E), r) != 1) {
      return false;
    }
    for (auto const& [s, mult] : factorize_complete(BigNat(E)).factors) {
      if (powm(p, BigNat(E) / s, r) == 1) {
        return false;
      }
    }
    return true;
  }

  inline void finish_instance(Table1Instance& inst, LineSpec const& spec,
                              dsl::Bindings const& env) {
    if (!is_prime(inst.r)) {
      throw InternalContradiction("table line " + spec.row + " produced non-prime r");
    }
    if (!spec.lemma_q.empty()) {
      BigNat   q = *dsl::evaluate(*dsl::parse(spec.lemma_q), env);
      auto     d = static_cast<std::uint64_t>(*dsl::evaluate(*dsl::parse(spec.lemma_d), env));
      BigNat   p = env.at("p");
      unsigned k = 0;
      for (BigNat x = q; x > 1; x /= p) {
        ++k;
      }
      auto verdict = lemma_r_check(PrimePower{p, k, q}, d);
      if (!verdict.r_prime || verdict.r != inst.r) {
        throw InternalContradiction("table line " + spec.row
                                    + ": r disagrees with (q^d-1)/(q-1)");
      }
      inst.lemma_qd = std::make_pair(q, d);
    }
    if (!spec.ppd_exponent.empty()) {
      auto E = static_cast<std::uint64_t>(*dsl::evaluate(*dsl::parse(spec.ppd_exponent), env));
      if (!has_order(env.at("p"), E, inst.r)) {
        throw InternalContradiction("table line " + spec.row
                                    + ": r is not a primitive prime divisor of p^"
                                    + std::to_string(E) + " - 1");
      }
      inst.ppd_exponent = E;
    }
  }

  inline void enumerate_line(LineSpec const& spec, Table1Bounds const& bounds,
                             std::vector<Table1Instance>& out) {
    std::vector<std::unique_ptr<dsl::Node>> conditions;
    for (auto const& c : spec.conditions) {
      conditions.push_back(dsl::parse(c));
    }
    auto const size_expr = dsl::parse(spec.size);
    auto const r_expr    = dsl::parse(spec.r);
    std::vector<std::pair<std::string, std::unique_ptr<dsl::Node>>> derived;
    for (auto const& [name, expr] : spec.derived) {
      derived.emplace_back(name, dsl::parse(expr));
    }
    std::vector<std::vector<BigNat>> domains;
    for (auto const& [name, domain] : spec.loops) {
      std::vector<BigNat> values;
      if (domain == "range") {
        for (std::uint64_t v = 1; v <= bounds.max_param; ++v) {
          values.emplace_back(v);
        }
      } else if (domain == "prime" || domain == "char") {
        std::uint64_t cap = domain == "prime" ? bounds.max_param : bounds.max_p;
        for (std::uint64_t v = 2; v <= cap; ++v) {
          if (is_prime(v)) {
            values.emplace_back(v);
          }
        }
      } else {
        values.emplace_back(std::stoull(domain));
      }
      domains.push_back(std::move(values));
    }
    dsl::Bindings            env;
    std::vector<std::size_t> idx(domains.size(), 0);
    for (auto const& d : domains) {
      if (d.empty()) {
        return;
      }
    }
    while (true) {
      for (std::size_t v = 0; v < domains.size(); ++v) {
        env[spec.loops[v].first] = domains[v][idx[v]];
      }
      bool ok = true;
      for (auto const& [name, expr] : derived) {
        auto value = dsl::evaluate(*expr, env);
        if (!value) {
          ok = false;
          break;
        }
        env[name] = *value;
      }
      std::vector<std::string> checked;
      for (std::size_t c = 0; ok && c < conditions.size(); ++c) {
        ok = dsl::holds(*conditions[c], env);
        checked.push_back(spec.conditions[c]);
      }
      if (ok) {
        auto size = dsl::evaluate(*size_expr, env);
        ok        = size && *size <= bounds.max_param;
      }
      if (ok) {
        auto r = dsl::evaluate(*r_expr, env);
        // The table is stated for valency r >= 7.
        if (r && *r >= 7 && is_prime(*r)) {
          for (auto const& t : spec.T) {
            Table1Instance inst;
            inst.line           = spec.line;
            inst.row            = spec.row;
            inst.L              = instantiate(spec.L, env);
            inst.T              = instantiate(t, env);
            inst.r              = *r;
            inst.condition_text = spec.condition_text;
            for (auto const& [name, value] : env) {
              inst.bindings.emplace_back(name, value);
            }
            inst.checked = checked;
            inst.checked.push_back("prime(r) and r >= 7");
            inst.note    = spec.note;
            finish_instance(inst, spec, env);
            out.push_back(std::move(inst));
          }
        }
      }
      // Odometer over the loop domains, last variable fastest.
      std::size_t v = domains.size();
      while (v > 0) {
        --v;
        if (++idx[v] < domains[v].size()) {
          break;
        }
        idx[v] = 0;
        if (v == 0) {
          return;
        }
      }
      if (domains.empty()) {
        return;
      }
    }
  }

  inline void enumerate_line2(Table1Bounds const& bounds,
                              std::vector<Table1Instance>& out) {
    for (auto const& [order, name] : simple_groups_up_to(bounds.max_order)) {
      BigNat r = order + 1;
      if (r < 7 || !is_prime(r)) {
        continue;
      }
      Table1Instance inst;
      inst.line           = 2;
      inst.row            = "2";
      inst.r              = r;
      inst.L              = {"A", static_cast<unsigned>(r + 1), 0,
                             group_display("A", static_cast<unsigned>(r + 1), 0)};
      inst.T              = {"order", 0, 0, name.to_string()};
      inst.condition_text = "Γ = K_{r+1}";
      inst.bindings       = {{"|T|", order}, {"r", r}};
      inst.checked        = {"|T| == r + 1", "prime(r)", "r >= 7"};
      inst.note           = "the condition concerns the graph and is not arithmetic";
      out.push_back(std::move(inst));
    }
  }

}  // namespace detail

// Instances of one line (1..17), or of all lines when line == 0.
inline std::vector<Table1Instance> enumerate_table1(int line,
                                                    Table1Bounds const& bounds = {}) {
  if (line < 0 || line > 17) {
    throw InvalidParams("table lines are numbered 1..17");
  }
  std::vector<Table1Instance> out;
  for (int l = 1; l <= 17; ++l) {
    if (line != 0 && l != line) {
      continue;
    }
    if (l == 2) {
      detail::enumerate_line2(bounds, out);
      continue;
    }
    for (auto const& spec : detail::table1_lines()) {
      if (spec.line == l) {
        detail::enumerate_line(spec, bounds, out);
      }
    }
  }
  return out;
}

}  // namespace primesym

#endif  // PRIMESYM_TABLE1_HPP_
