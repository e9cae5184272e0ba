#ifndef PRIMESYM_SIMPLE_ORDERS_HPP_
#define PRIMESYM_SIMPLE_ORDERS_HPP_

// Orders of finite simple groups and a reverse lookup by order.

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "primesym/bignat.hpp"
#include "primesym/errors.hpp"
#include "primesym/primes.hpp"

namespace primesym {

enum class Family {
  Alt,
  PSL,
  PSU,
  PSp,
  Omega_odd,
  POmega_plus,
  POmega_minus,
  Sz,
  Ree,
  G2,
  D4_3,
  F4,
  E6,
  E6_2,
  E7,
  E8,
  Tits,
  Sporadic
};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::Alt: return "Alt";
    case Family::PSL: return "PSL";
    case Family::PSU: return "PSU";
    case Family::PSp: return "PSp";
    case Family::Omega_odd: return "Omega_odd";
    case Family::POmega_plus: return "POmega_plus";
    case Family::POmega_minus: return "POmega_minus";
    case Family::Sz: return "Sz";
    case Family::Ree: return "Ree";
    case Family::G2: return "G2";
    case Family::D4_3: return "3D4";
    case Family::F4: return "F4";
    case Family::E6: return "E6";
    case Family::E6_2: return "2E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::Tits: return "Tits";
    case Family::Sporadic: return "sporadic";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Family::Sporadic); ++i) {
    auto f = static_cast<Family>(i);
    if (family_name(f) == name) {
      return f;
    }
  }
  return std::nullopt;
}

struct SporadicGroup {
  std::string_view name;
  std::string_view order;
};

inline constexpr std::array<SporadicGroup, 26> sporadic_groups{{
    {"M11", "7920"},
    {"M12", "95040"},
    {"M22", "443520"},
    {"M23", "10200960"},
    {"M24", "244823040"},
    {"J1", "175560"},
    {"J2", "604800"},
    {"J3", "50232960"},
    {"J4", "86775571046077562880"},
    {"HS", "44352000"},
    {"McL", "898128000"},
    {"Suz", "448345497600"},
    {"Co3", "495766656000"},
    {"Co2", "42305421312000"},
    {"Co1", "4157776806543360000"},
    {"He", "4030387200"},
    {"Ru", "145926144000"},
    {"O'N", "460815505920"},
    {"Fi22", "64561751654400"},
    {"Fi23", "4089470473293004800"},
    {"Fi24'", "1255205709190661721292800"},
    {"HN", "273030912000000"},
    {"Ly", "51765179004000000"},
    {"Th", "90745943887872000"},
    {"B", "4154781481226426191177580544000000"},
    {"M", "808017424794512875886459904961710757005754368000000000"},
}};

namespace detail {

  inline BigNat factorial(unsigned n) {
    BigNat result = 1;
    for (unsigned i = 2; i <= n; ++i) {
      result *= i;
    }
    return result;
  }

  inline BigNat gcd_big(BigNat const& a, BigNat const& b) {
    return boost::multiprecision::gcd(a, b);
  }

  // Order formula without the central denominator; monotone in q.
  inline BigNat numerator(Family family, unsigned n, BigNat const& q) {
    BigNat r = 1;
    switch (family) {
      case Family::PSL:
        r = big_pow(q, n * (n - 1) / 2);
        for (unsigned i = 2; i <= n; ++i) {
          r *= big_pow(q, i) - 1;
        }
        return r;
      case Family::PSU:
        r = big_pow(q, n * (n - 1) / 2);
        for (unsigned i = 2; i <= n; ++i) {
          r *= (i % 2 == 0) ? BigNat(big_pow(q, i) - 1) : BigNat(big_pow(q, i) + 1);
        }
        return r;
      case Family::PSp:
      case Family::Omega_odd:
        // n is the rank m (dimension 2m resp. 2m+1)
        r = big_pow(q, n * n);
        for (unsigned i = 1; i <= n; ++i) {
          r *= big_pow(q, 2 * i) - 1;
        }
        return r;
      case Family::POmega_plus:
      case Family::POmega_minus:
        // n is m, dimension 2m
        r = big_pow(q, n * (n - 1));
        r *= family == Family::POmega_plus ? BigNat(big_pow(q, n) - 1)
                                           : BigNat(big_pow(q, n) + 1);
        for (unsigned i = 1; i < n; ++i) {
          r *= big_pow(q, 2 * i) - 1;
        }
        return r;
      case Family::Sz:
        return q * q * (q * q + 1) * (q - 1);
      case Family::Ree:
        return big_pow(q, 3) * (big_pow(q, 3) + 1) * (q - 1);
      case Family::G2:
        return big_pow(q, 6) * (big_pow(q, 6) - 1) * (q * q - 1);
      case Family::D4_3:
        return big_pow(q, 12) * (big_pow(q, 8) + big_pow(q, 4) + 1)
               * (big_pow(q, 6) - 1) * (q * q - 1);
      case Family::F4:
        return big_pow(q, 24) * (big_pow(q, 12) - 1) * (big_pow(q, 8) - 1)
               * (big_pow(q, 6) - 1) * (q * q - 1);
      case Family::E6:
        r = big_pow(q, 36);
        for (unsigned i : {12u, 9u, 8u, 6u, 5u, 2u}) {
          r *= big_pow(q, i) - 1;
        }
        return r;
      case Family::E6_2:
        r = big_pow(q, 36);
        for (unsigned i : {12u, 9u, 8u, 6u, 5u, 2u}) {
          r *= (i % 2 == 0) ? BigNat(big_pow(q, i) - 1) : BigNat(big_pow(q, i) + 1);
        }
        return r;
      case Family::E7:
        r = big_pow(q, 63);
        for (unsigned i : {18u, 14u, 12u, 10u, 8u, 6u, 2u}) {
          r *= big_pow(q, i) - 1;
        }
        return r;
      case Family::E8:
        r = big_pow(q, 120);
        for (unsigned i : {30u, 24u, 20u, 18u, 14u, 12u, 8u, 2u}) {
          r *= big_pow(q, i) - 1;
        }
        return r;
      default:
        throw InvalidParams("no Lie-type formula for this family");
    }
  }

  inline BigNat denominator(Family family, unsigned n, BigNat const& q) {
    switch (family) {
      case Family::PSL: return gcd_big(n, q - 1);
      case Family::PSU: return gcd_big(n, q + 1);
      case Family::PSp: return gcd_big(2, q - 1);
      case Family::Omega_odd: return gcd_big(2, q - 1);
      case Family::POmega_plus: return gcd_big(4, big_pow(q, n) - 1);
      case Family::POmega_minus: return gcd_big(4, big_pow(q, n) + 1);
      case Family::E6: return gcd_big(3, q - 1);
      case Family::E6_2: return gcd_big(3, q + 1);
      case Family::E7: return gcd_big(2, q - 1);
      default: return 1;
    }
  }

  // The largest central denominator a family can have.
  inline unsigned max_denominator(Family family, unsigned n) {
    switch (family) {
      case Family::PSL:
      case Family::PSU: return n;
      case Family::PSp:
      case Family::Omega_odd:
      case Family::E7: return 2;
      case Family::POmega_plus:
      case Family::POmega_minus: return 4;
      case Family::E6:
      case Family::E6_2: return 3;
      default: return 1;
    }
  }

  // Smallest rank parameter for which the family is defined.
  inline unsigned min_rank(Family family) {
    switch (family) {
      case Family::PSL: return 2;
      case Family::PSU: return 3;
      case Family::PSp: return 2;
      case Family::Omega_odd: return 3;
      case Family::POmega_plus:
      case Family::POmega_minus: return 4;
      default: return 0;
    }
  }

  inline bool has_rank(Family family) {
    return min_rank(family) > 0;
  }

}  // namespace detail

struct GroupParams {
  unsigned    n = 0;  // degree, dimension-like rank, or 0 when unused
  BigNat      q = 0;  // field size, 0 when unused
  std::string name;   // sporadic name
};

// Order of the simple group in `family`. For PSL/PSU `n` is the dimension,
// for PSp it is the dimension 2m, for Omega_odd the dimension 2m+1, for
// POmega_plus/minus the dimension 2m.
inline BigNat simple_order(Family family, GroupParams const& params) {
  auto check_q = [&](auto&& extra_ok) -> std::pair<BigNat, unsigned> {
    auto pp = prime_power(params.q);
    if (!pp || !extra_ok(pp->first, pp->second)) {
      throw InvalidParams("invalid field size " + to_string(params.q)
                          + " for " + std::string(family_name(family)));
    }
    return *pp;
  };
  auto any = [](BigNat const&, unsigned) { return true; };
  unsigned const n = params.n;
  BigNat const&  q = params.q;
  switch (family) {
    case Family::Alt:
      if (n < 5) {
        throw InvalidParams("Alt(n) is simple nonabelian only for n >= 5");
      }
      return detail::factorial(n) / 2;
    case Family::PSL:
      check_q(any);
      if (n < 2 || (n == 2 && (q == 2 || q == 3))) {
        throw InvalidParams("PSL(n, q) needs n >= 2 and (n, q) != (2, 2), (2, 3)");
      }
      return detail::numerator(family, n, q) / detail::denominator(family, n, q);
    case Family::PSU:
      check_q(any);
      if (n < 3 || (n == 3 && q == 2)) {
        throw InvalidParams("PSU(n, q) needs n >= 3 and (n, q) != (3, 2)");
      }
      return detail::numerator(family, n, q) / detail::denominator(family, n, q);
    case Family::PSp: {
      check_q(any);
      if (n < 4 || n % 2 != 0 || (n == 4 && q == 2)) {
        throw InvalidParams("PSp(2m, q) needs m >= 2 and (m, q) != (2, 2)");
      }
      return detail::numerator(family, n / 2, q)
             / detail::denominator(family, n / 2, q);
    }
    case Family::Omega_odd: {
      check_q([](BigNat const& p, unsigned) { return p != 2; });
      if (n < 7 || n % 2 != 1) {
        throw InvalidParams("Omega(2m+1, q) needs m >= 3 and q odd");
      }
      unsigned m = (n - 1) / 2;
      return detail::numerator(family, m, q) / detail::denominator(family, m, q);
    }
    case Family::POmega_plus:
    case Family::POmega_minus: {
      check_q(any);
      if (n < 8 || n % 2 != 0) {
        throw InvalidParams("POmega(2m, q) needs m >= 4");
      }
      unsigned m = n / 2;
      return detail::numerator(family, m, q) / detail::denominator(family, m, q);
    }
    case Family::Sz: {
      check_q([](BigNat const& p, unsigned f) { return p == 2 && f % 2 == 1 && f >= 3; });
      return detail::numerator(family, 0, q);
    }
    case Family::Ree: {
      check_q([](BigNat const& p, unsigned f) { return p == 3 && f % 2 == 1 && f >= 3; });
      return detail::numerator(family, 0, q);
    }
    case Family::G2:
      check_q([](BigNat const&, unsigned) { return true; });
      if (q == 2) {
        throw InvalidParams("G2(2) is not simple");
      }
      return detail::numerator(family, 0, q);
    case Family::D4_3:
    case Family::F4:
    case Family::E6:
    case Family::E6_2:
    case Family::E7:
    case Family::E8:
      check_q(any);
      return detail::numerator(family, 0, q) / detail::denominator(family, 0, q);
    case Family::Tits:
      return BigNat(17971200);
    case Family::Sporadic:
      for (auto const& s : sporadic_groups) {
        if (s.name == params.name) {
          return BigNat(std::string(s.order));
        }
      }
      throw InvalidParams("unknown sporadic group '" + params.name + "'");
  }
  throw InvalidParams("unknown family");
}

struct SimpleGroupName {
  Family      family;
  GroupParams params;

  std::string to_string() const {
    switch (family) {
      case Family::Alt: return "A" + std::to_string(params.n);
      case Family::Sporadic: return params.name;
      case Family::Tits: return "2F4(2)'";
      case Family::Sz:
      case Family::Ree:
      case Family::G2:
      case Family::D4_3:
      case Family::F4:
      case Family::E6:
      case Family::E6_2:
      case Family::E7:
      case Family::E8:
        return std::string(family_name(family)) + "(" + primesym::to_string(params.q) + ")";
      default:
        return std::string(family_name(family)) + "(" + std::to_string(params.n)
               + "," + primesym::to_string(params.q) + ")";
    }
  }
};

// Drops parametrizations that duplicate another listed group up to
// isomorphism: PSL(2,4) = PSL(2,5) = A5, PSL(2,9) = A6, PSL(4,2) = A8,
// PSL(3,2) = PSL(2,7), PSp(4,3) = PSU(4,2).
inline bool is_duplicate_name(SimpleGroupName const& g) {
  auto is = [&](Family f, unsigned n, unsigned q) {
    return g.family == f && g.params.n == n && g.params.q == q;
  };
  return is(Family::PSL, 2, 4) || is(Family::PSL, 2, 5) || is(Family::PSL, 2, 9)
         || is(Family::PSL, 4, 2) || is(Family::PSL, 3, 2) || is(Family::PSp, 4, 3);
}

namespace detail {

  // Integer q >= 2 with numerator(family, n, q) == target, if any.
  inline std::optional<BigNat> solve_q(Family family, unsigned n,
                                       BigNat const& target) {
    BigNat lo = 2, hi = 2;
    while (numerator(family, n, hi) < target) {
      hi *= 2;
    }
    while (lo < hi) {
      BigNat mid = (lo + hi) / 2;
      if (numerator(family, n, mid) < target) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (numerator(family, n, lo) == target) {
      return lo;
    }
    return std::nullopt;
  }

}  // namespace detail

// All simple groups (up to the usual parametrization) whose order is exactly
// `order`. Covers alternating, sporadic, classical and exceptional families.
inline std::vector<SimpleGroupName> simple_groups_of_order(BigNat const& order) {
  std::vector<SimpleGroupName> result;
  if (order < 60) {
    return result;
  }
  auto try_add = [&](Family family, GroupParams params) {
    try {
      if (simple_order(family, params) == order
          && !is_duplicate_name({family, params})) {
        result.push_back({family, std::move(params)});
      }
    } catch (InvalidParams const&) {
    }
  };
  BigNat f = 1;
  for (unsigned n = 2;; ++n) {
    f *= n;
    if (f / 2 > order) {
      break;
    }
    if (f / 2 == order && n >= 5) {
      result.push_back({Family::Alt, {n, 0, {}}});
    }
  }
  for (auto const& s : sporadic_groups) {
    if (BigNat(std::string(s.order)) == order) {
      result.push_back({Family::Sporadic, {0, 0, std::string(s.name)}});
    }
  }
  if (order == 17971200) {
    result.push_back({Family::Tits, {}});
  }
  for (Family family : {Family::PSL, Family::PSU, Family::PSp, Family::Omega_odd,
                        Family::POmega_plus, Family::POmega_minus, Family::Sz,
                        Family::Ree, Family::G2, Family::D4_3, Family::F4,
                        Family::E6, Family::E6_2, Family::E7, Family::E8}) {
    unsigned rank_lo = detail::has_rank(family) ? detail::min_rank(family) : 0;
    for (unsigned rank = rank_lo;; ++rank) {
      // The smallest member of this rank must not exceed order * 4.
      if (detail::numerator(family, rank, 2) > order * 4) {
        break;
      }
      for (unsigned den = 1; den <= detail::max_denominator(family, rank); ++den) {
        auto q = detail::solve_q(family, rank, order * den);
        if (!q) {
          continue;
        }
        GroupParams params;
        params.q = *q;
        switch (family) {
          case Family::PSL:
          case Family::PSU: params.n = rank; break;
          case Family::PSp:
          case Family::POmega_plus:
          case Family::POmega_minus: params.n = 2 * rank; break;
          case Family::Omega_odd: params.n = 2 * rank + 1; break;
          default: break;
        }
        try_add(family, params);
      }
      if (!detail::has_rank(family)) {
        break;
      }
    }
  }
  return result;
}

// All simple groups of order at most `bound`, sorted by order (then name).
inline std::vector<std::pair<BigNat, SimpleGroupName>> simple_groups_up_to(
    BigNat const& bound) {
  std::vector<std::pair<BigNat, SimpleGroupName>> result;
  BigNat f = 1;
  for (unsigned n = 2;; ++n) {
    f *= n;
    if (f / 2 > bound) {
      break;
    }
    if (n >= 5) {
      result.push_back({f / 2, {Family::Alt, {n, 0, {}}}});
    }
  }
  for (auto const& s : sporadic_groups) {
    BigNat order(std::string(s.order));
    if (order <= bound) {
      result.push_back({order, {Family::Sporadic, {0, 0, std::string(s.name)}}});
    }
  }
  if (bound >= 17971200) {
    result.push_back({BigNat(17971200), {Family::Tits, {}}});
  }
  for (Family family : {Family::PSL, Family::PSU, Family::PSp, Family::Omega_odd,
                        Family::POmega_plus, Family::POmega_minus, Family::Sz,
                        Family::Ree, Family::G2, Family::D4_3, Family::F4,
                        Family::E6, Family::E6_2, Family::E7, Family::E8}) {
    unsigned rank_lo = detail::has_rank(family) ? detail::min_rank(family) : 0;
    for (unsigned rank = rank_lo;; ++rank) {
      unsigned den = detail::max_denominator(family, rank);
      if (detail::numerator(family, rank, 2) > bound * den) {
        break;
      }
      for (BigNat q = 2; detail::numerator(family, rank, q) <= bound * den; ++q) {
        if (!prime_power(q)) {
          continue;
        }
        GroupParams params;
        params.q = q;
        switch (family) {
          case Family::PSL:
          case Family::PSU: params.n = rank; break;
          case Family::PSp:
          case Family::POmega_plus:
          case Family::POmega_minus: params.n = 2 * rank; break;
          case Family::Omega_odd: params.n = 2 * rank + 1; break;
          default: break;
        }
        try {
          BigNat order = simple_order(family, params);
          if (order <= bound && !is_duplicate_name({family, params})) {
            result.push_back({order, {family, params}});
          }
        } catch (InvalidParams const&) {
        }
      }
      if (!detail::has_rank(family)) {
        break;
      }
    }
  }
  std::sort(result.begin(), result.end(), [](auto const& a, auto const& b) {
    if (a.first != b.first) {
      return a.first < b.first;
    }
    return a.second.to_string() < b.second.to_string();
  });
  return result;
}

inline bool is_simple_group_order(BigNat const& order) {
  return !simple_groups_of_order(order).empty();
}

}  // namespace primesym

#endif  // PRIMESYM_SIMPLE_ORDERS_HPP_
