#ifndef PRIMESYM_TESTS_ORACLES_HPP_
#define PRIMESYM_TESTS_ORACLES_HPP_

// Brute-force reference implementations used to cross-check the engines.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "primesym/perm.hpp"
#include "primesym/stabchain.hpp"

namespace oracle {

using primesym::Permutation;
using primesym::PermGroup;
using primesym::Point;

using ElementSet = std::set<Permutation>;

// Closure of the generators under multiplication.
inline ElementSet closure(std::size_t degree, std::vector<Permutation> const& gens) {
  ElementSet                elements{Permutation(degree)};
  std::vector<Permutation> queue{Permutation(degree)};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto const& s : gens) {
      auto p = queue[i] * s;
      if (elements.insert(p).second) {
        queue.push_back(p);
      }
    }
  }
  return elements;
}

inline ElementSet closure(PermGroup const& g) {
  return closure(g.degree(), g.generators());
}

inline Permutation random_perm(std::size_t degree, std::mt19937_64& rng) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    images[i] = static_cast<Point>(i);
  }
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation::from_images(std::move(images));
}

// Random subgroup of S_n: one to three generators drawn from a random
// element pool, mixing in elements of small order so that small subgroups
// are common.
inline PermGroup random_subgroup(std::size_t degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3), kind(0, 2);
  std::vector<Permutation>           gens;
  for (int i = count(rng); i > 0; --i) {
    auto p = random_perm(degree, rng);
    switch (kind(rng)) {
      case 0: break;
      case 1: p = primesym::power(p, static_cast<std::int64_t>(primesym::order(p) / 2 + 1)); break;
      default: {
        auto o = primesym::order(p);
        for (std::uint64_t d = 2; d <= o; ++d) {
          if (o % d == 0) {
            p = primesym::power(p, static_cast<std::int64_t>(o / d));
            break;
          }
        }
      }
    }
    gens.push_back(p);
  }
  return PermGroup(degree, std::move(gens));
}

inline ElementSet normalizer(ElementSet const& g, ElementSet const& k) {
  ElementSet out;
  for (auto const& x : g) {
    bool ok = true;
    for (auto const& e : k) {
      if (!k.count(primesym::conjugate(e, x))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.insert(x);
    }
  }
  return out;
}

inline ElementSet centralizer(ElementSet const& g, ElementSet const& k) {
  ElementSet out;
  for (auto const& x : g) {
    if (std::all_of(k.begin(), k.end(), [&](auto const& e) { return e * x == x * e; })) {
      out.insert(x);
    }
  }
  return out;
}

inline ElementSet intersection(ElementSet const& a, ElementSet const& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

}  // namespace oracle

#endif  // PRIMESYM_TESTS_ORACLES_HPP_
