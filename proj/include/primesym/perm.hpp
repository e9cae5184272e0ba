#ifndef PRIMESYM_PERM_HPP_
#define PRIMESYM_PERM_HPP_

// Permutations of {0, ..., n-1}.
//
// Convention: groups act on the right. The product a * b applies a first and
// then b, so that alpha^(a*b) = (alpha^a)^b. Points are 0-based internally;
// the textual cycle notation is 1-based.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primesym/errors.hpp"

namespace primesym {

using Point = std::uint32_t;

enum class Parity { even, odd };

class Permutation {
 public:
  Permutation() = default;

  // The identity on `degree` points.
  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  // Throws MalformedCycle if `images` is not a bijection.
  static Permutation from_images(std::vector<Point> images) {
    std::vector<bool> seen(images.size(), false);
    for (Point p : images) {
      if (p >= images.size() || seen[p]) {
        throw MalformedCycle("image array is not a bijection");
      }
      seen[p] = true;
    }
    Permutation result;
    result.images_ = std::move(images);
    return result;
  }

  std::size_t degree() const noexcept { return images_.size(); }

  Point operator[](Point i) const noexcept { return images_[i]; }

  std::span<Point const> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (Point i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) {
        return false;
      }
    }
    return true;
  }

  bool moves(Point i) const noexcept { return images_[i] != i; }

  friend bool operator==(Permutation const&, Permutation const&) = default;
  friend auto operator<=>(Permutation const& a, Permutation const& b) {
    return a.images_ <=> b.images_;
  }

  // Unchecked product; both operands must have the same degree.
  friend Permutation operator*(Permutation const& a, Permutation const& b) {
    Permutation result;
    result.images_.resize(a.images_.size());
    for (std::size_t i = 0; i < a.images_.size(); ++i) {
      result.images_[i] = b.images_[a.images_[i]];
    }
    return result;
  }

  Permutation inverse() const {
    Permutation result;
    result.images_.resize(images_.size());
    for (Point i = 0; i < images_.size(); ++i) {
      result.images_[images_[i]] = i;
    }
    return result;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Point p : images_) {
      h ^= p;
      h *= 1099511628211ULL;
    }
    return h;
  }

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(Permutation const& p) const noexcept {
    return p.hash();
  }
};

// Checked product a * b (a first, then b).
inline Permutation compose(Permutation const& a, Permutation const& b) {
  if (a.degree() != b.degree()) {
    throw DegreeMismatch("cannot compose permutations of degree "
                         + std::to_string(a.degree()) + " and "
                         + std::to_string(b.degree()));
  }
  return a * b;
}

inline Permutation inverse(Permutation const& a) {
  return a.inverse();
}

// a^-1 * b * a, i.e. b conjugated by a (b^a in exponent notation).
inline Permutation conjugate(Permutation const& b, Permutation const& a) {
  return a.inverse() * b * a;
}

inline Permutation power(Permutation const& a, std::int64_t k) {
  Permutation base = k < 0 ? a.inverse() : a;
  std::uint64_t e  = k < 0 ? static_cast<std::uint64_t>(-k)
                           : static_cast<std::uint64_t>(k);
  Permutation result(a.degree());
  while (e > 0) {
    if (e & 1) {
      result = result * base;
    }
    base = base * base;
    e >>= 1;
  }
  return result;
}

// Cycle lengths, including fixed points (length 1), in order of smallest
// point.
inline std::vector<std::size_t> cycle_lengths(Permutation const& a) {
  std::vector<std::size_t> lengths;
  std::vector<bool>        seen(a.degree(), false);
  for (Point i = 0; i < a.degree(); ++i) {
    if (seen[i]) {
      continue;
    }
    std::size_t len = 0;
    for (Point j = i; !seen[j]; j = a[j]) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

// Sorted multiset of cycle lengths, fixed points included.
inline std::vector<std::size_t> cycle_type(Permutation const& a) {
  auto lengths = cycle_lengths(a);
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

// Least m >= 1 with a^m = 1. Throws InvalidParams on 64-bit overflow, which
// needs degree well beyond anything this library is used for.
inline std::uint64_t order(Permutation const& a) {
  std::uint64_t result = 1;
  for (std::size_t len : cycle_lengths(a)) {
    std::uint64_t g    = std::gcd(result, static_cast<std::uint64_t>(len));
    std::uint64_t step = len / g;
    if (result > UINT64_MAX / step) {
      throw InvalidParams("element order exceeds 64 bits");
    }
    result *= step;
  }
  return result;
}

inline Parity parity(Permutation const& a) {
  std::size_t transpositions = 0;
  for (std::size_t len : cycle_lengths(a)) {
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? Parity::even : Parity::odd;
}

inline bool is_two_power(std::uint64_t v) {
  return v != 0 && (v & (v - 1)) == 0;
}

// Parses a product of disjoint cycles over 1-based points, e.g. "(1,2,3)(4,5)".
// The empty string and "()" denote the identity.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto        fail
      = [&](std::string const& why) -> MalformedCycle {
    return MalformedCycle("malformed cycle notation at offset "
                          + std::to_string(pos) + ": " + why);
  };

  while (pos < text.size()) {
    if (text[pos] != '(') {
      throw fail("expected '('");
    }
    ++pos;
    std::vector<Point> cycle;
    while (true) {
      if (pos >= text.size()) {
        throw fail("unterminated cycle");
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!cycle.empty()) {
        if (text[pos] != ',') {
          throw fail("expected ',' or ')'");
        }
        ++pos;
      }
      std::size_t start = pos;
      std::uint64_t value = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (value > (1ULL << 32)) {
          throw PointOutOfRange("point exceeds degree "
                                + std::to_string(degree));
        }
        ++pos;
      }
      if (pos == start) {
        throw fail("expected a point");
      }
      if (value == 0) {
        throw fail("points are 1-based");
      }
      if (value > degree) {
        throw PointOutOfRange("point " + std::to_string(value)
                              + " exceeds degree " + std::to_string(degree));
      }
      Point p = static_cast<Point>(value - 1);
      if (used[p]) {
        throw MalformedCycle("point " + std::to_string(value)
                             + " is repeated");
      }
      used[p] = true;
      cycle.push_back(p);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation::from_images(std::move(images));
}

// Cycle notation, 1-based, cycles ordered by smallest moved point and each
// cycle starting at its smallest point. The identity is "()".
inline std::string format_cycles(Permutation const& a) {
  std::string      out;
  std::vector<bool> seen(a.degree(), false);
  for (Point i = 0; i < a.degree(); ++i) {
    if (seen[i] || a[i] == i) {
      continue;
    }
    out += '(';
    for (Point j = i; !seen[j]; j = a[j]) {
      seen[j] = true;
      if (j != i) {
        out += ',';
      }
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace primesym

#endif  // PRIMESYM_PERM_HPP_
