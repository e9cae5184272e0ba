#ifndef PRIMESYM_PRIMES_HPP_
#define PRIMESYM_PRIMES_HPP_

// Primality and factorization for arbitrary-precision naturals.

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "primesym/bignat.hpp"
#include "primesym/errors.hpp"

namespace primesym {

namespace detail {

  inline bool strong_probable_prime(BigNat const& n, BigNat const& d,
                                    unsigned s, BigNat const& a) {
    using boost::multiprecision::powm;
    BigNat x = powm(a, d, n);
    if (x == 1 || x == n - 1) {
      return true;
    }
    for (unsigned r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n - 1) {
        return true;
      }
    }
    return false;
  }

  inline int jacobi(BigNat a, BigNat n) {
    // n odd, positive.
    a %= n;
    if (a < 0) {
      a += n;
    }
    int result = 1;
    while (a != 0) {
      while ((a & 1) == 0) {
        a >>= 1;
        unsigned r = static_cast<unsigned>(n % 8);
        if (r == 3 || r == 5) {
          result = -result;
        }
      }
      std::swap(a, n);
      if (a % 4 == 3 && n % 4 == 3) {
        result = -result;
      }
      a %= n;
    }
    return n == 1 ? result : 0;
  }

  inline bool is_square(BigNat const& n) {
    BigNat s = boost::multiprecision::sqrt(n);
    return s * s == n;
  }

  // Strong Lucas probable-prime test with Selfridge parameters.
  inline bool strong_lucas(BigNat const& n) {
    if (is_square(n)) {
      return false;
    }
    BigNat D = 5;
    int    sign = 1;
    while (true) {
      BigNat signed_d = sign > 0 ? D : BigNat(-D);
      int    j        = jacobi(signed_d, n);
      if (j == -1) {
        D = signed_d;
        break;
      }
      if (j == 0 && boost::multiprecision::abs(signed_d) != n) {
        return false;
      }
      D += 2;
      sign = -sign;
    }
    BigNat P = 1;
    BigNat Q = (1 - D) / 4;
    auto   mod = [&n](BigNat v) {
      v %= n;
      return v < 0 ? BigNat(v + n) : v;
    };
    BigNat   d = n + 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
      d >>= 1;
      ++s;
    }
    // Binary Lucas chain computing U_d, V_d, Q^d.
    BigNat U = 1, V = P, Qk = mod(Q);
    BigNat inv2 = (n + 1) / 2;
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(d));
    for (unsigned i = bits; i-- > 0;) {
      U  = mod(U * V);
      V  = mod(V * V - 2 * Qk);
      Qk = mod(Qk * Qk);
      if (boost::multiprecision::bit_test(d, i)) {
        BigNat U2 = mod((P * U + V) * inv2);
        BigNat V2 = mod((D * U + P * V) * inv2);
        U         = U2;
        V         = V2;
        Qk        = mod(Qk * Q);
      }
    }
    if (U == 0 || V == 0) {
      return true;
    }
    for (unsigned r = 1; r < s; ++r) {
      V  = mod(V * V - 2 * Qk);
      Qk = mod(Qk * Qk);
      if (V == 0) {
        return true;
      }
    }
    return false;
  }

  inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b
                                      % m);
  }

}  // namespace detail

inline constexpr std::uint32_t small_primes[] = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97};

// Deterministic Miller-Rabin for n < 3.317e24 (bases 2..41), BPSW above.
inline bool is_prime(BigNat const& n) {
  if (n < 2) {
    return false;
  }
  for (std::uint32_t p : small_primes) {
    if (n == p) {
      return true;
    }
    if (n % p == 0) {
      return false;
    }
  }
  if (n < 97 * 97) {
    return true;
  }
  BigNat   d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  static BigNat const deterministic_limit("3317044064679887385961981");
  if (n < deterministic_limit) {
    for (std::uint32_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u,
                            31u, 37u, 41u}) {
      if (!detail::strong_probable_prime(n, d, s, a)) {
        return false;
      }
    }
    return true;
  }
  return detail::strong_probable_prime(n, d, s, 2) && detail::strong_lucas(n);
}

inline bool is_prime(std::uint64_t n) {
  return is_prime(BigNat(n));
}

// Prime factorization as (prime, multiplicity) pairs in increasing order.
struct Factorization {
  std::vector<std::pair<BigNat, unsigned>> factors;
  // Product of the part not split within the budget; 1 when complete.
  BigNat cofactor = 1;

  bool complete() const { return cofactor == 1; }
};

namespace detail {

  // Pollard-Brent on n composite and odd; returns a nontrivial factor or 0 if
  // the iteration budget runs out.
  inline BigNat pollard_brent(BigNat const& n, std::uint64_t& budget) {
    using boost::multiprecision::gcd;
    for (std::uint64_t c = 1; budget > 0; ++c) {
      BigNat        y = 2, x, q = 1, g = 1, ys;
      std::uint64_t r = 1;
      std::uint64_t const m = 128;
      auto f = [&](BigNat const& v) { return (v * v + c) % n; };
      do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) {
          y = f(y);
        }
        std::uint64_t k = 0;
        while (k < r && g == 1) {
          ys = y;
          std::uint64_t lim = std::min(m, r - k);
          for (std::uint64_t i = 0; i < lim; ++i) {
            y = f(y);
            q = (q * (x > y ? BigNat(x - y) : BigNat(y - x))) % n;
          }
          g = gcd(q, n);
          k += lim;
          budget = budget > lim ? budget - lim : 0;
        }
        r *= 2;
      } while (g == 1 && budget > 0);
      if (g == n) {
        do {
          ys = f(ys);
          g  = gcd(x > ys ? BigNat(x - ys) : BigNat(ys - x), n);
        } while (g == 1);
      }
      if (g != n && g != 1) {
        return g;
      }
    }
    return 0;
  }

  inline std::uint64_t pollard_brent64(std::uint64_t n, std::uint64_t& budget) {
    for (std::uint64_t c = 1; budget > 0; ++c) {
      std::uint64_t y = 2, x = 0, q = 1, g = 1, ys = 0, r = 1;
      std::uint64_t const m = 128;
      auto f = [&](std::uint64_t v) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(mulmod64(v, v, n)) + c) % n);
      };
      do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) {
          y = f(y);
        }
        std::uint64_t k = 0;
        while (k < r && g == 1) {
          ys = y;
          std::uint64_t lim = std::min(m, r - k);
          for (std::uint64_t i = 0; i < lim; ++i) {
            y = f(y);
            q = mulmod64(q, x > y ? x - y : y - x, n);
          }
          g = std::gcd(q, n);
          k += lim;
          budget = budget > lim ? budget - lim : 0;
        }
        r *= 2;
      } while (g == 1 && budget > 0);
      if (g == n) {
        do {
          ys = f(ys);
          g  = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
      }
      if (g != n && g != 1) {
        return g;
      }
    }
    return 0;
  }

}  // namespace detail

// Trial division by primes below 10^4, then Pollard-Brent. Stops splitting
// once `budget` iterations are spent; the rest is reported as cofactor.
inline Factorization factorize(BigNat n, std::uint64_t budget = 50'000'000) {
  if (n < 1) {
    throw InvalidParams("factorize needs n >= 1");
  }
  std::map<BigNat, unsigned> found;
  for (std::uint32_t p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++found[BigNat(p)];
      n /= p;
    }
  }
  BigNat              cofactor = 1;
  std::vector<BigNat> stack;
  if (n > 1) {
    stack.push_back(n);
  }
  while (!stack.empty()) {
    BigNat m = stack.back();
    stack.pop_back();
    if (is_prime(m)) {
      ++found[m];
      continue;
    }
    if (detail::is_square(m)) {
      BigNat s = boost::multiprecision::sqrt(m);
      stack.push_back(s);
      stack.push_back(s);
      continue;
    }
    BigNat g;
    if (m <= BigNat(UINT64_MAX)) {
      g = detail::pollard_brent64(static_cast<std::uint64_t>(m), budget);
    } else {
      g = detail::pollard_brent(m, budget);
    }
    if (g == 0) {
      cofactor *= m;
      continue;
    }
    stack.push_back(g);
    stack.push_back(m / g);
  }
  Factorization result;
  result.factors.assign(found.begin(), found.end());
  result.cofactor = cofactor;
  return result;
}

// Like factorize, but throws FactorizationTimeout when incomplete.
inline Factorization factorize_complete(BigNat const& n,
                                        std::uint64_t budget = 50'000'000) {
  auto result = factorize(n, budget);
  if (!result.complete()) {
    throw FactorizationTimeout("could not split cofactor "
                               + to_string(result.cofactor));
  }
  return result;
}

// Largest power of p dividing n.
inline BigNat p_part(BigNat n, BigNat const& p) {
  if (n < 1) {
    throw InvalidParams("p_part needs n >= 1");
  }
  if (!is_prime(p)) {
    throw InvalidParams("p_part needs a prime, got " + to_string(p));
  }
  BigNat result = 1;
  while (n % p == 0) {
    n /= p;
    result *= p;
  }
  return result;
}

inline BigNat largest_prime_divisor(BigNat const& n) {
  auto f = factorize_complete(n);
  return f.factors.empty() ? BigNat(1) : f.factors.back().first;
}

// If q = p^f for a prime p, returns (p, f).
inline std::optional<std::pair<BigNat, unsigned>> prime_power(BigNat const& q) {
  if (q < 2) {
    return std::nullopt;
  }
  auto f = factorize_complete(q);
  if (f.factors.size() != 1) {
    return std::nullopt;
  }
  return f.factors.front();
}

// Least k >= 1 with a^k = 1 mod n, for gcd(a, n) = 1.
inline std::uint64_t multiplicative_order(BigNat const& a, BigNat const& n) {
  using boost::multiprecision::gcd;
  using boost::multiprecision::powm;
  if (n < 2 || gcd(a, n) != 1) {
    throw InvalidParams("multiplicative order needs gcd(a, n) = 1, n >= 2");
  }
  if (n == 2) {
    return 1;
  }
  // The order divides the Carmichael-free bound phi(n); factor phi via n.
  auto   fn  = factorize_complete(n);
  BigNat phi = 1;
  std::map<BigNat, unsigned> phi_factors;
  for (auto const& [p, e] : fn.factors) {
    phi *= boost::multiprecision::pow(p, e - 1) * (p - 1);
    for (unsigned i = 1; i < e; ++i) {
      ++phi_factors[p];
    }
    for (auto const& [pp, ee] : factorize_complete(p - 1).factors) {
      phi_factors[pp] += ee;
    }
  }
  BigNat order = phi;
  for (auto const& [p, e] : phi_factors) {
    for (unsigned i = 0; i < e && order % p == 0; ++i) {
      if (powm(a % n, order / p, n) == 1) {
        order /= p;
      } else {
        break;
      }
    }
  }
  return static_cast<std::uint64_t>(order);
}

}  // namespace primesym

#endif  // PRIMESYM_PRIMES_HPP_
