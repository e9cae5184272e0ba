#ifndef PRIMESYM_CYCLOTOMIC_HPP_
#define PRIMESYM_CYCLOTOMIC_HPP_

// Cyclotomic values, primitive prime divisors and related prime-index
// arithmetic.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "primesym/bignat.hpp"
#include "primesym/errors.hpp"
#include "primesym/primes.hpp"

namespace primesym {

struct PrimePower {
  BigNat   p;
  unsigned f = 1;
  BigNat   value;

  // Throws InvalidParams unless q is a prime power.
  static PrimePower of(BigNat const& q) {
    auto pp = prime_power(q);
    if (!pp) {
      throw InvalidParams(to_string(q) + " is not a prime power");
    }
    return PrimePower{pp->first, pp->second, q};
  }

  static PrimePower of(BigNat const& p, unsigned f) {
    if (!is_prime(p) || f == 0) {
      throw InvalidParams("p^f needs a prime p and f >= 1");
    }
    return PrimePower{p, f, big_pow(p, f)};
  }
};

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) {
        large.push_back(n / d);
      }
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline int mobius(std::uint64_t n) {
  int result = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) {
        return 0;
      }
      result = -result;
    }
  }
  return n > 1 ? -result : result;
}

// Phi_m(q) = prod_{d | m} (q^d - 1)^{mu(m/d)}.
inline BigNat cyclotomic_value(std::uint64_t m, BigNat const& q) {
  if (m < 1 || q < 2) {
    throw InvalidParams("cyclotomic_value needs m >= 1 and q >= 2");
  }
  BigNat num = 1, den = 1;
  for (std::uint64_t d : divisors(m)) {
    int mu = mobius(m / d);
    if (mu == 1) {
      num *= big_pow(q, d) - 1;
    } else if (mu == -1) {
      den *= big_pow(q, d) - 1;
    }
  }
  return num / den;
}

struct CyclotomicReport {
  std::uint64_t                            m = 1;
  PrimePower                               q;
  BigNat                                   phi_value;
  BigNat                                   primitive_part;
  std::vector<std::pair<BigNat, unsigned>> primitive_primes;
  bool                                     is_zsigmondy_exception = false;
  // Part of primitive_part left unsplit by the factorization budget (1 if
  // fully factored).
  BigNat unfactored = 1;
};

// Closed form: Phi*_m(q) = 1 exactly for (m, q) = (6, 2) and for
// m = 2 with q a prime of the form 2^s - 1.
inline bool zsigmondy_exception(std::uint64_t m, PrimePower const& q) {
  if (m < 2) {
    throw InvalidParams("the Zsigmondy exception list is stated for m >= 2");
  }
  if (m == 6 && q.value == 2) {
    return true;
  }
  if (m == 2 && q.f == 1) {
    BigNat next = q.value + 1;
    return (next & (next - 1)) == 0;
  }
  return false;
}

// Phi*_m(q): the part of Phi_m(q) coprime to every q^l - 1 with l | m, l < m.
inline CyclotomicReport primitive_part(std::uint64_t m, PrimePower const& q,
                                       std::uint64_t budget = 50'000'000) {
  using boost::multiprecision::gcd;
  CyclotomicReport report;
  report.m         = m;
  report.q         = q;
  report.phi_value = cyclotomic_value(m, q.value);
  BigNat earlier   = 1;
  for (std::uint64_t l : divisors(m)) {
    if (l < m) {
      earlier *= big_pow(q.value, l) - 1;
    }
  }
  BigNat part = report.phi_value;
  for (BigNat g = gcd(part, earlier); g > 1; g = gcd(part, g)) {
    part /= g;
  }
  report.primitive_part = part;
  auto f                = factorize(part, budget);
  report.primitive_primes = f.factors;
  report.unfactored       = f.cofactor;
  report.is_zsigmondy_exception = m >= 2 && zsigmondy_exception(m, q);
  return report;
}

struct LemmaRVerdict {
  BigNat   r;
  bool     r_prime = false;
  // The four consequences, meaningful when r_prime.
  bool d_prime          = false;
  bool coprime_d_q1     = false;
  bool f_power_of_d     = false;
  bool d_odd_or_d_p_two = false;
};

inline bool is_power_of(std::uint64_t value, std::uint64_t base) {
  if (base < 2) {
    return value == 1;
  }
  while (value % base == 0) {
    value /= base;
  }
  return value == 1;
}

// r = (q^d - 1)/(q - 1); if r is prime, d must be a prime with (d, q-1) = 1,
// f a power of d, and d odd or d = p = 2. A prime r violating any of these
// raises InternalContradiction.
inline LemmaRVerdict lemma_r_check(PrimePower const& q, std::uint64_t d) {
  using boost::multiprecision::gcd;
  if (d < 2) {
    throw InvalidParams("lemma_r_check needs d >= 2");
  }
  LemmaRVerdict v;
  v.r       = (big_pow(q.value, d) - 1) / (q.value - 1);
  v.r_prime = is_prime(v.r);
  if (!v.r_prime) {
    return v;
  }
  v.d_prime          = is_prime(d);
  v.coprime_d_q1     = gcd(BigNat(d), q.value - 1) == 1;
  v.f_power_of_d     = is_power_of(q.f, d);
  v.d_odd_or_d_p_two = d % 2 == 1 || (d == 2 && q.p == 2);
  if (!(v.d_prime && v.coprime_d_q1 && v.f_power_of_d && v.d_odd_or_d_p_two)) {
    throw InternalContradiction(
        "(q^d-1)/(q-1) = " + to_string(v.r) + " is prime for q = "
        + to_string(q.value) + ", d = " + std::to_string(d)
        + " but a consequence fails");
  }
  return v;
}

// Prime powers in [2, bound], increasing.
inline std::vector<PrimePower> prime_powers_up_to(std::uint64_t bound) {
  std::vector<PrimePower> result;
  for (std::uint64_t q = 2; q <= bound; ++q) {
    if (auto pp = prime_power(BigNat(q))) {
      result.push_back(PrimePower{pp->first, pp->second, BigNat(q)});
    }
  }
  return result;
}

}  // namespace primesym

#endif  // PRIMESYM_CYCLOTOMIC_HPP_
