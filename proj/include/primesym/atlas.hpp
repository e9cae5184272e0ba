#ifndef PRIMESYM_ATLAS_HPP_
#define PRIMESYM_ATLAS_HPP_

// Curated permutation groups: constructed families (Alt, Sym, PSL2(q)),
// PSL(3,2) in degrees 7 and 24, and generator records stored as text files.
//
// Record grammar, one item per line:
//
//   # comment
//   name M12
//   degree 12
//   order 95040
//   provenance <free text>      (optional)
//   gen (1,2,3)(4,5)            (one line per generator, at least one)
//
// Records are verified when loaded: the order of the group generated by the
// `gen` lines must equal the stated order.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "primesym/bignat.hpp"
#include "primesym/cyclotomic.hpp"
#include "primesym/errors.hpp"
#include "primesym/group_ops.hpp"
#include "primesym/perm.hpp"
#include "primesym/simple_orders.hpp"
#include "primesym/stabchain.hpp"

#ifndef PRIMESYM_DEFAULT_ATLAS_DIR
#define PRIMESYM_DEFAULT_ATLAS_DIR "atlas"
#endif

namespace primesym {

////////////////////////////////////////////////////////////////////////
// GF(q) for small q
////////////////////////////////////////////////////////////////////////

// Elements are encoded as integers 0..q-1 whose base-p digits are the
// coefficients of a polynomial reduced modulo a fixed irreducible one.
class FiniteField {
 public:
  explicit FiniteField(unsigned q) : q_(q) {
    auto pp = prime_power(BigNat(q));
    if (!pp || q > 1024) {
      throw InvalidParams("GF(q) needs a prime power q <= 1024, got "
                          + std::to_string(q));
    }
    p_ = static_cast<unsigned>(pp->first);
    f_ = pp->second;
    for (unsigned tail = 0; tail < q_; ++tail) {
      modulus_ = tail;  // x^f = -(tail) in the quotient ring
      build_tables();
      if (is_field()) {
        find_primitive();
        return;
      }
    }
    throw InternalContradiction("no irreducible polynomial for GF("
                                + std::to_string(q) + ")");
  }

  unsigned size() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  unsigned inv(unsigned a) const {
    if (a == 0) {
      throw InvalidParams("zero has no inverse");
    }
    return inv_[a];
  }
  // A generator of the multiplicative group.
  unsigned primitive() const noexcept { return primitive_; }

 private:
  std::vector<unsigned> digits(unsigned a) const {
    std::vector<unsigned> d(f_);
    for (unsigned i = 0; i < f_; ++i, a /= p_) {
      d[i] = a % p_;
    }
    return d;
  }

  unsigned encode(std::vector<unsigned> const& d) const {
    unsigned a = 0;
    for (unsigned i = f_; i-- > 0;) {
      a = a * p_ + d[i];
    }
    return a;
  }

  void build_tables() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    auto reduction = digits(modulus_);
    for (unsigned a = 0; a < q_; ++a) {
      auto da = digits(a);
      std::vector<unsigned> dn(f_);
      for (unsigned i = 0; i < f_; ++i) {
        dn[i] = (p_ - da[i]) % p_;
      }
      neg_[a] = encode(dn);
      for (unsigned b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<unsigned> ds(f_);
        for (unsigned i = 0; i < f_; ++i) {
          ds[i] = (da[i] + db[i]) % p_;
        }
        add_[a * q_ + b] = encode(ds);
        std::vector<unsigned> prod(2 * f_, 0);
        for (unsigned i = 0; i < f_; ++i) {
          for (unsigned j = 0; j < f_; ++j) {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
          }
        }
        for (unsigned k = 2 * f_ - 1; k >= f_ && k > 0; --k) {
          unsigned c = prod[k];
          prod[k]    = 0;
          // x^k = x^(k-f) * x^f = -x^(k-f) * tail
          for (unsigned i = 0; i < f_; ++i) {
            prod[k - f_ + i] = (prod[k - f_ + i] + (p_ - c) * reduction[i]) % p_;
          }
        }
        prod.resize(f_);
        mul_[a * q_ + b] = encode(prod);
      }
    }
  }

  bool is_field() {
    inv_.assign(q_, 0);
    for (unsigned a = 1; a < q_; ++a) {
      for (unsigned b = 1; b < q_; ++b) {
        if (mul(a, b) == 0) {
          return false;
        }
        if (mul(a, b) == 1) {
          inv_[a] = b;
        }
      }
    }
    return true;
  }

  void find_primitive() {
    for (unsigned a = 1; a < q_; ++a) {
      unsigned x = a, k = 1;
      while (x != 1) {
        x = mul(x, a);
        ++k;
      }
      if (k == q_ - 1) {
        primitive_ = a;
        return;
      }
    }
  }

  unsigned              q_, p_ = 0, f_ = 0, modulus_ = 0, primitive_ = 1;
  std::vector<unsigned> add_, mul_, neg_, inv_;
};

////////////////////////////////////////////////////////////////////////
// Constructed groups
////////////////////////////////////////////////////////////////////////

inline Permutation cycle_on(std::size_t degree, Point first, Point last) {
  std::vector<Point> images(degree);
  for (Point i = 0; i < degree; ++i) {
    images[i] = i;
  }
  for (Point i = first; i < last; ++i) {
    images[i] = i + 1;
  }
  images[last] = first;
  return Permutation::from_images(std::move(images));
}

// A_n = <(1 2 3), (1..n)> for odd n and <(1 2 3), (2..n)> for even n.
inline PermGroup alternating_group(std::size_t n) {
  if (n == 0) {
    throw InvalidParams("Alt(n) needs n >= 1");
  }
  std::vector<Permutation> gens;
  if (n >= 3) {
    gens.push_back(cycle_on(n, 0, 2));
    if (n >= 4) {
      gens.push_back(n % 2 == 1 ? cycle_on(n, 0, static_cast<Point>(n - 1))
                                : cycle_on(n, 1, static_cast<Point>(n - 1)));
    }
  }
  return PermGroup(n, std::move(gens), "A" + std::to_string(n));
}

// S_n = <(1 2), (1..n)>.
inline PermGroup symmetric_group(std::size_t n) {
  if (n == 0) {
    throw InvalidParams("Sym(n) needs n >= 1");
  }
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(cycle_on(n, 0, 1));
    gens.push_back(cycle_on(n, 0, static_cast<Point>(n - 1)));
  }
  return PermGroup(n, std::move(gens), "S" + std::to_string(n));
}

// PSL(2,q) on the projective line; field element a is point a and infinity
// is point q. Generators z -> z+1, z -> mu z and z -> -1/z, where mu is a
// primitive element for even q and its square for odd q (the maps
// z -> lambda z with lambda a non-square lie in PGL(2,q) but not PSL(2,q)).
inline PermGroup psl2(unsigned q) {
  if (q < 2 || q > 32 || !prime_power(BigNat(q))) {
    throw InvalidParams("PSL2(q) is available for prime powers q <= 32, got "
                        + std::to_string(q));
  }
  FiniteField    k(q);
  Point const    inf = q;
  unsigned const mu
      = k.characteristic() == 2 ? k.primitive() : k.mul(k.primitive(), k.primitive());
  std::vector<Point> shift(q + 1), scale(q + 1), flip(q + 1);
  for (unsigned z = 0; z < q; ++z) {
    shift[z] = k.add(z, 1);
    scale[z] = k.mul(mu, z);
    flip[z]  = z == 0 ? inf : k.neg(k.inv(z));
  }
  shift[inf] = scale[inf] = inf;
  flip[inf]  = 0;
  std::vector<Permutation> gens{Permutation::from_images(std::move(shift)),
                                Permutation::from_images(std::move(scale)),
                                Permutation::from_images(std::move(flip))};
  return PermGroup(q + 1, std::move(gens), "PSL2(" + std::to_string(q) + ")");
}

// PSL(3,2) as the collineation group of the Fano plane with lines
// {i, i+1, i+3} mod 7: generated by i -> i+1 and an involution fixing
// the line {1, 2, 4}.
inline PermGroup psl3_2() {
  PermGroup g(7,
              {parse_cycles("(1,2,3,4,5,6,7)", 7),
               parse_cycles("(3,5)(6,7)", 7)},
              "PSL3_2");
  if (g.order() != 168) {
    throw OrderMismatch("PSL3_2: expected 168, got " + to_string(g.order()));
  }
  return g;
}

// PSL(3,2) acting on the 24 cosets of a subgroup of order 7.
inline PermGroup psl3_2_deg24() {
  PermGroup g = psl3_2();
  PermGroup seven(7, {g.generators()[0]});
  return coset_action(g, seven).action().with_label("PSL3_2_deg24");
}

////////////////////////////////////////////////////////////////////////
// Records
////////////////////////////////////////////////////////////////////////

struct GroupRecord {
  std::string              name;
  std::size_t              degree = 0;
  std::vector<std::string> generators;
  BigNat                   claimed_order = 0;
  std::string              provenance;
};

namespace detail {

  inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
      s.remove_prefix(1);
    }
    while (!s.empty()
           && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
      s.remove_suffix(1);
    }
    return s;
  }

  inline bool all_digits(std::string_view s) {
    return !s.empty()
           && s.find_first_not_of("0123456789") == std::string_view::npos;
  }

}  // namespace detail

// Parses a record; errors name the source, line and column.
inline GroupRecord parse_record(std::string_view text,
                                std::string_view source = "<input>") {
  GroupRecord record;
  bool        has_name = false, has_degree = false, has_order = false;
  std::vector<std::pair<std::size_t, std::size_t>> gen_positions;

  auto fail = [&](std::size_t line, std::size_t col, std::string const& why) {
    return ParseError(std::string(source) + ":" + std::to_string(line) + ":"
                      + std::to_string(col) + ": " + why);
  };

  std::size_t line_no = 0;
  std::size_t start   = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    std::string_view line   = detail::trim(raw);
    std::size_t      indent = raw.find_first_not_of(" \t");
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) {
        break;
      }
      continue;
    }
    std::size_t      space   = line.find_first_of(" \t");
    std::string_view keyword = line.substr(0, space);
    std::string_view value
        = space == std::string_view::npos ? std::string_view{}
                                          : detail::trim(line.substr(space));
    std::size_t value_col = indent + 1
                            + (value.empty() ? line.size()
                                             : static_cast<std::size_t>(
                                                 value.data() - line.data()));
    auto require_value = [&] {
      if (value.empty()) {
        throw fail(line_no, value_col,
                   "missing value for '" + std::string(keyword) + "'");
      }
    };
    auto once = [&](bool& seen) {
      if (seen) {
        throw fail(line_no, indent + 1,
                   "duplicate '" + std::string(keyword) + "'");
      }
      seen = true;
    };

    if (keyword == "name") {
      require_value();
      once(has_name);
      record.name = value;
    } else if (keyword == "degree") {
      require_value();
      once(has_degree);
      if (!detail::all_digits(value) || value.size() > 7 || std::stoul(std::string(value)) == 0) {
        throw fail(line_no, value_col, "degree must be a positive integer");
      }
      record.degree = std::stoul(std::string(value));
    } else if (keyword == "order") {
      require_value();
      once(has_order);
      if (!detail::all_digits(value)) {
        throw fail(line_no, value_col, "order must be a positive integer");
      }
      record.claimed_order = BigNat(std::string(value));
      if (record.claimed_order == 0) {
        throw fail(line_no, value_col, "order must be a positive integer");
      }
    } else if (keyword == "provenance") {
      record.provenance = value;
    } else if (keyword == "gen") {
      require_value();
      record.generators.emplace_back(value);
      gen_positions.emplace_back(line_no, value_col);
    } else {
      throw fail(line_no, indent + 1,
                 "unknown keyword '" + std::string(keyword) + "'");
    }
    if (end == text.size()) {
      break;
    }
  }

  if (!has_name || !has_degree || !has_order || record.generators.empty()) {
    std::string missing = !has_name     ? "name"
                          : !has_degree ? "degree"
                          : !has_order  ? "order"
                                        : "gen";
    throw fail(line_no, 1, "missing mandatory field '" + missing + "'");
  }
  for (std::size_t i = 0; i < record.generators.size(); ++i) {
    try {
      parse_cycles(record.generators[i], record.degree);
    } catch (Error const& e) {
      throw fail(gen_positions[i].first, gen_positions[i].second, e.what());
    }
  }
  return record;
}

inline std::string format_record(GroupRecord const& record) {
  std::ostringstream out;
  out << "name " << record.name << '\n'
      << "degree " << record.degree << '\n'
      << "order " << record.claimed_order << '\n';
  if (!record.provenance.empty()) {
    out << "provenance " << record.provenance << '\n';
  }
  for (auto const& g : record.generators) {
    out << "gen " << g << '\n';
  }
  return out.str();
}

inline GroupRecord to_record(PermGroup const& g, std::string name,
                             std::string provenance = {}) {
  GroupRecord record;
  record.name          = std::move(name);
  record.degree        = g.degree();
  record.claimed_order = g.order();
  record.provenance    = std::move(provenance);
  for (auto const& s : g.generators()) {
    record.generators.push_back(format_cycles(s));
  }
  if (record.generators.empty()) {
    record.generators.emplace_back("()");
  }
  return record;
}

// Builds the group of a record and checks its order.
inline PermGroup verify_record(GroupRecord const& record) {
  std::vector<Permutation> gens;
  for (auto const& s : record.generators) {
    gens.push_back(parse_cycles(s, record.degree));
  }
  PermGroup g(record.degree, std::move(gens), record.name);
  BigNat    got = g.order();
  if (got != record.claimed_order) {
    throw OrderMismatch(record.name + ": expected order "
                        + to_string(record.claimed_order) + ", got "
                        + to_string(got));
  }
  return g;
}

inline GroupRecord read_record(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UnknownName("cannot open group file '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_record(buffer.str(), path.string());
}

inline PermGroup load_group(std::filesystem::path const& path) {
  return verify_record(read_record(path));
}

// PRIMESYM_ATLAS_DIR overrides the compiled-in location of the records.
inline std::filesystem::path atlas_dir() {
  if (char const* env = std::getenv("PRIMESYM_ATLAS_DIR"); env && *env) {
    return env;
  }
  return PRIMESYM_DEFAULT_ATLAS_DIR;
}

////////////////////////////////////////////////////////////////////////
// Catalogue
////////////////////////////////////////////////////////////////////////

inline constexpr std::string_view stored_records[]
    = {"M11", "M12", "M22", "M23", "M24", "PSL3_3", "Sp6_2"};

struct CatalogueEntry {
  std::string           name;
  std::size_t           degree = 0;
  BigNat                order  = 0;
  bool                  simple = false;
  std::optional<Family> family;  // set for simple groups
  GroupParams           params;
  std::string           source;  // "constructed" or the record path
};

namespace detail {

  inline std::optional<unsigned> parse_suffix(std::string_view name,
                                              std::string_view prefix) {
    if (name.substr(0, prefix.size()) != prefix) {
      return std::nullopt;
    }
    auto rest = name.substr(prefix.size());
    if (!rest.empty() && (rest.front() == '(' || rest.front() == '_')
        && (rest.front() == '_' || rest.back() == ')')) {
      rest.remove_prefix(1);
      if (!rest.empty() && rest.back() == ')') {
        rest.remove_suffix(1);
      }
    }
    if (!all_digits(rest) || rest.size() > 6) {
      return std::nullopt;
    }
    return static_cast<unsigned>(std::stoul(std::string(rest)));
  }

}  // namespace detail

// `name` is one of Alt, Sym, PSL2 (with `param` = n or q), PSL3_2,
// PSL3_2_deg24 or a stored record name.
inline PermGroup builtin(std::string_view name, unsigned param = 0) {
  if (name == "Alt" || name == "Sym" || name == "PSL2") {
    if (param == 0) {
      throw InvalidParams(std::string(name) + " needs a parameter");
    }
    if (name == "PSL2") {
      return psl2(param);
    }
    if (param > 4096) {
      throw InvalidParams("degree too large");
    }
    return name == "Alt" ? alternating_group(param) : symmetric_group(param);
  }
  if (param != 0) {
    throw InvalidParams(std::string(name) + " takes no parameter");
  }
  if (name == "PSL3_2") {
    return psl3_2();
  }
  if (name == "PSL3_2_deg24") {
    return psl3_2_deg24();
  }
  for (auto stored : stored_records) {
    if (name == stored) {
      return load_group(atlas_dir() / (std::string(stored) + ".grp"));
    }
  }
  throw UnknownName("no group named '" + std::string(name) + "' in the atlas");
}

// Accepts "A9", "S5", "PSL2(11)", "PSL2_11", "Alt(9)" and plain builtin
// names.
inline PermGroup lookup_group(std::string_view name) {
  for (auto [prefix, family] :
       {std::pair{"PSL2", "PSL2"}, std::pair{"Alt", "Alt"},
        std::pair{"Sym", "Sym"}, std::pair{"A", "Alt"}, std::pair{"S", "Sym"}}) {
    if (auto v = detail::parse_suffix(name, prefix)) {
      return builtin(family, *v);
    }
  }
  return builtin(name);
}

inline std::vector<CatalogueEntry> catalogue() {
  std::vector<CatalogueEntry> result;
  auto add = [&](PermGroup const& g, std::optional<Family> family,
                 GroupParams params, std::string source) {
    CatalogueEntry e;
    e.name   = g.label();
    e.degree = g.degree();
    e.order  = g.order();
    e.simple = family.has_value();
    e.family = family;
    e.params = std::move(params);
    e.source = std::move(source);
    result.push_back(std::move(e));
  };
  for (unsigned n = 5; n <= 12; ++n) {
    add(alternating_group(n), Family::Alt, {n, 0, {}}, "constructed");
  }
  for (unsigned n = 3; n <= 8; ++n) {
    add(symmetric_group(n), std::nullopt, {}, "constructed");
  }
  for (unsigned q = 4; q <= 32; ++q) {
    if (prime_power(BigNat(q))) {
      add(psl2(q), Family::PSL, {2, q, {}}, "constructed");
    }
  }
  add(psl3_2(), Family::PSL, {3, 2, {}}, "constructed");
  add(psl3_2_deg24(), Family::PSL, {3, 2, {}}, "constructed");
  for (auto stored : stored_records) {
    auto path = atlas_dir() / (std::string(stored) + ".grp");
    auto g    = load_group(path);
    if (stored == "PSL3_3") {
      add(g, Family::PSL, {3, 3, {}}, path.string());
    } else if (stored == "Sp6_2") {
      add(g, Family::PSp, {6, 2, {}}, path.string());
    } else {
      add(g, Family::Sporadic, {0, 0, std::string(stored)}, path.string());
    }
  }
  return result;
}

}  // namespace primesym

#endif  // PRIMESYM_ATLAS_HPP_
