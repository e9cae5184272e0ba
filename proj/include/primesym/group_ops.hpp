#ifndef PRIMESYM_GROUP_OPS_HPP_
#define PRIMESYM_GROUP_OPS_HPP_

// Structural operations built on stabilizer chains: closures, derived
// series, block systems, simplicity screening, factorizations.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "primesym/errors.hpp"
#include "primesym/perm.hpp"
#include "primesym/primes.hpp"
#include "primesym/simple_orders.hpp"
#include "primesym/stabchain.hpp"

namespace primesym {

// A subgroup grown one generator at a time with an always-verified chain.
class GrowingGroup {
 public:
  explicit GrowingGroup(std::size_t degree) : degree_(degree), builder_(degree, {}) {}

  GrowingGroup(std::size_t degree, std::span<Point const> base_prefix)
      : degree_(degree), builder_(degree, base_prefix) {}

  // Returns true if g was not already a member.
  bool add(Permutation const& g) {
    if (contains(g)) {
      return false;
    }
    builder_.add_generator(g);
    gens_.push_back(g);
    return true;
  }

  bool contains(Permutation const& g) const {
    return builder_.chain().contains(g);
  }

  BigNat order() const { return builder_.chain().order(); }

  std::vector<Permutation> const& generators() const noexcept { return gens_; }

  PermGroup group() const {
    return PermGroup(builder_.chain()).with_label({});
  }

  // Group with the added generators (not the strong generators).
  PermGroup group_by_generators() const {
    PermGroup g(degree_, gens_);
    return g;
  }

  StabChain const& chain() const noexcept { return builder_.chain(); }

 private:
  std::size_t              degree_;
  ChainBuilder             builder_;
  std::vector<Permutation> gens_;
};

inline Permutation commutator(Permutation const& a, Permutation const& b) {
  return a.inverse() * b.inverse() * a * b;
}

// Smallest subgroup of g containing `seeds` and normalized by g.
inline PermGroup normal_closure(PermGroup const& g,
                                std::span<Permutation const> seeds) {
  GrowingGroup             n(g.degree());
  std::vector<Permutation> queue;
  for (auto const& s : seeds) {
    if (n.add(s)) {
      queue.push_back(s);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto const& t : g.generators()) {
      Permutation c = conjugate(queue[i], t);
      if (n.add(c)) {
        queue.push_back(std::move(c));
      }
    }
  }
  return PermGroup(n.chain());
}

inline PermGroup derived_subgroup(PermGroup const& g) {
  std::vector<Permutation> seeds;
  auto const&              gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = commutator(gens[i], gens[j]);
      if (!c.is_identity()) {
        seeds.push_back(std::move(c));
      }
    }
  }
  return normal_closure(g, seeds);
}

struct DerivedSeries {
  std::vector<PermGroup> terms;  // terms[0] == G, strictly decreasing
  bool                   is_perfect  = false;
  bool                   is_solvable = false;
};

// G > G' > G'' > ... until the series stabilizes.
inline DerivedSeries derived_series(PermGroup const& g,
                                    std::size_t max_steps = 64) {
  DerivedSeries series;
  series.terms.push_back(g);
  for (std::size_t step = 0;; ++step) {
    PermGroup const& last = series.terms.back();
    if (last.order() == 1) {
      series.is_solvable = true;
      break;
    }
    if (step >= max_steps) {
      throw StepLimit("derived series did not stabilize within "
                      + std::to_string(max_steps) + " steps");
    }
    PermGroup next = derived_subgroup(last);
    if (next.order() == last.order()) {
      break;
    }
    series.terms.push_back(std::move(next));
  }
  series.is_perfect = series.terms.size() == 1 && g.order() != 1;
  return series;
}

// Subgroup of even permutations.
inline PermGroup even_subgroup(PermGroup const& g) {
  auto const& gens = g.generators();
  auto        odd  = std::find_if(gens.begin(), gens.end(), [](auto const& s) {
    return parity(s) == Parity::odd;
  });
  if (odd == gens.end()) {
    return g;
  }
  Permutation const& t     = *odd;
  Permutation const  t_inv = t.inverse();
  std::vector<Permutation> schreier;
  for (auto const& s : gens) {
    if (parity(s) == Parity::even) {
      schreier.push_back(s);
      schreier.push_back(t * s * t_inv);
    } else {
      schreier.push_back(s * t_inv);
      schreier.push_back(t * s);
    }
  }
  std::vector<Permutation> nontrivial;
  for (auto& s : schreier) {
    if (!s.is_identity()) {
      nontrivial.push_back(std::move(s));
    }
  }
  return PermGroup(g.degree(), std::move(nontrivial));
}

// Stabilizer of `point` under an action of g given by a function on points of
// some finite set of size `set_size` (act(point, generator_index)), via
// Schreier generators on a BFS transversal.
template <typename Act>
PermGroup stabilizer_in_action(PermGroup const& g, std::size_t set_size,
                               std::size_t point, Act&& act) {
  auto const&                       gens = g.generators();
  std::vector<std::int64_t>         pos(set_size, -1);
  std::vector<std::size_t>          orbit{point};
  std::vector<Permutation>          reps{g.identity()};
  pos[point] = 0;
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      std::size_t image = act(orbit[k], s);
      if (pos[image] < 0) {
        pos[image] = static_cast<std::int64_t>(orbit.size());
        orbit.push_back(image);
        reps.push_back(reps[k] * gens[s]);
      }
    }
  }
  GrowingGroup stab(g.degree());
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      std::size_t image = act(orbit[k], s);
      Permutation h
          = reps[k] * gens[s] * reps[static_cast<std::size_t>(pos[image])].inverse();
      if (!h.is_identity()) {
        stab.add(h);
      }
    }
  }
  return PermGroup(stab.chain());
}

struct BlockSystem {
  bool                            primitive = true;
  std::vector<std::vector<Point>> blocks;  // each sorted; sorted by first point
};

namespace detail {

  // Finest block system in which 0 and beta share a block.
  inline std::vector<Point> block_labels(PermGroup const& g, Point beta) {
    std::size_t const  n = g.degree();
    std::vector<Point> parent(n);
    std::iota(parent.begin(), parent.end(), Point{0});
    auto find = [&](Point x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x         = parent[x];
      }
      return x;
    };
    std::vector<std::pair<Point, Point>> queue{{0, beta}};
    parent[beta] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto [a, b] = queue[i];
      for (auto const& s : g.generators()) {
        Point x = find(s[a]);
        Point y = find(s[b]);
        if (x != y) {
          if (y < x) {
            std::swap(x, y);
          }
          parent[y] = x;
          queue.emplace_back(x, y);
        }
      }
    }
    std::vector<Point> labels(n);
    for (Point p = 0; p < n; ++p) {
      labels[p] = find(p);
    }
    return labels;
  }

  inline std::vector<std::vector<Point>> blocks_from_labels(
      std::vector<Point> const& labels) {
    std::vector<std::vector<Point>> blocks;
    std::vector<std::int64_t>       index(labels.size(), -1);
    for (Point p = 0; p < labels.size(); ++p) {
      Point l = labels[p];
      if (index[l] < 0) {
        index[l] = static_cast<std::int64_t>(blocks.size());
        blocks.emplace_back();
      }
      blocks[static_cast<std::size_t>(index[l])].push_back(p);
    }
    return blocks;
  }

}  // namespace detail

// A nontrivial block system with the smallest possible block size (ties: the
// smallest second point in the block of 0), or `primitive`.
inline BlockSystem minimal_block_system(PermGroup const& g) {
  if (!is_transitive(g)) {
    throw NotTransitive("block systems need a transitive group");
  }
  BlockSystem result;
  std::size_t best = g.degree();
  for (Point beta = 1; beta < g.degree(); ++beta) {
    auto        labels = detail::block_labels(g, beta);
    std::size_t size   = static_cast<std::size_t>(
        std::count(labels.begin(), labels.end(), labels[0]));
    if (size < best) {
      best             = size;
      result.primitive = false;
      result.blocks    = detail::blocks_from_labels(labels);
      if (size == 2) {
        break;
      }
    }
  }
  return result;
}

// All block systems with a given number of blocks (each reported once).
inline std::vector<std::vector<std::vector<Point>>> block_systems_with_count(
    PermGroup const& g, std::size_t count) {
  std::vector<std::vector<std::vector<Point>>> result;
  if (!is_transitive(g) || g.degree() % count != 0) {
    return result;
  }
  for (Point beta = 1; beta < g.degree(); ++beta) {
    auto blocks = detail::blocks_from_labels(detail::block_labels(g, beta));
    if (blocks.size() == count
        && std::find(result.begin(), result.end(), blocks) == result.end()) {
      result.push_back(std::move(blocks));
    }
  }
  return result;
}

inline bool is_primitive(PermGroup const& g) {
  return minimal_block_system(g).primitive;
}

// Setwise stabilizer of blocks[index] inside g, for a g-invariant partition.
inline PermGroup block_stabilizer(PermGroup const& g,
                                  std::vector<std::vector<Point>> const& blocks,
                                  std::size_t index) {
  std::vector<std::size_t> block_of(g.degree());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Point p : blocks[b]) {
      block_of[p] = b;
    }
  }
  auto const& gens = g.generators();
  return stabilizer_in_action(g, blocks.size(), index, [&](std::size_t b, std::size_t s) {
    return block_of[gens[s][blocks[b].front()]];
  });
}

enum class Simplicity { certified_simple, monte_carlo_simple, not_simple, inconclusive };

inline std::string_view simplicity_name(Simplicity s) {
  switch (s) {
    case Simplicity::certified_simple: return "certified_simple";
    case Simplicity::monte_carlo_simple: return "monte_carlo_simple";
    case Simplicity::not_simple: return "not_simple";
    case Simplicity::inconclusive: return "inconclusive";
  }
  return "?";
}

inline bool is_simple_verdict(Simplicity s) {
  return s == Simplicity::certified_simple || s == Simplicity::monte_carlo_simple;
}

struct SimplicityReport {
  Simplicity               verdict = Simplicity::inconclusive;
  BigNat                   order;
  std::optional<PermGroup> witness;  // proper nontrivial normal subgroup
  std::string              witness_kind;
  std::vector<std::string> table_matches;  // simple groups of this order
  bool                     perfect      = false;
  std::size_t              trials_run   = 0;
};

// Certification scheme: a group whose order is prime is simple. Otherwise an
// odd generator exposes the even subgroup, a proper derived subgroup exposes
// non-perfection, and a proper normal closure of a random element is a
// witness. A perfect group passing all trials is certified simple when its
// order is a known simple order, and Monte Carlo simple otherwise.
inline SimplicityReport is_simple_monte_carlo(PermGroup const& g,
                                              std::size_t trials = 10,
                                              std::uint64_t seed = 0) {
  SimplicityReport report;
  report.order = g.order();
  if (report.order == 1) {
    throw TrivialGroup("simplicity of the trivial group is undefined");
  }
  if (is_prime(report.order)) {
    report.verdict = Simplicity::certified_simple;
    report.perfect = false;
    report.table_matches.push_back("C" + to_string(report.order));
    return report;
  }
  auto const& gens = g.generators();
  if (std::any_of(gens.begin(), gens.end(),
                  [](auto const& s) { return parity(s) == Parity::odd; })) {
    report.verdict      = Simplicity::not_simple;
    report.witness      = even_subgroup(g);
    report.witness_kind = "even_subgroup";
    return report;
  }
  PermGroup derived = derived_subgroup(g);
  if (derived.order() != report.order) {
    report.verdict = Simplicity::not_simple;
    if (derived.order() > 1) {
      report.witness      = derived;
      report.witness_kind = "derived_subgroup";
    } else {
      // Abelian of composite order: a subgroup of prime order is normal.
      for (auto const& s : gens) {
        std::uint64_t o = order(s);
        if (o > 1) {
          auto   f = factorize_complete(BigNat(o));
          auto   p = static_cast<std::uint64_t>(f.factors.front().first);
          report.witness = PermGroup(g.degree(), {power(s, static_cast<std::int64_t>(o / p))});
          report.witness_kind = "prime_order_subgroup";
          break;
        }
      }
    }
    return report;
  }
  report.perfect = true;
  for (auto const& name : simple_groups_of_order(report.order)) {
    report.table_matches.push_back(name.to_string());
  }
  std::mt19937_64 rng(seed);
  auto const&     chain = g.chain();
  for (std::size_t t = 0; t < trials; ++t) {
    Permutation x = chain.random_element(rng);
    while (x.is_identity()) {
      x = chain.random_element(rng);
    }
    ++report.trials_run;
    Permutation const seeds[] = {x};
    PermGroup         closure = normal_closure(g, seeds);
    if (closure.order() != report.order) {
      report.verdict      = Simplicity::not_simple;
      report.witness      = closure;
      report.witness_kind = "normal_closure";
      return report;
    }
  }
  if (trials == 0) {
    report.verdict = Simplicity::inconclusive;
  } else if (!report.table_matches.empty()) {
    report.verdict = Simplicity::certified_simple;
  } else {
    report.verdict = Simplicity::monte_carlo_simple;
  }
  return report;
}

// G = T H with T a point stabilizer holds iff H is transitive.
inline bool factorization_check(PermGroup const& g, PermGroup const& h) {
  if (!is_subgroup(h, g)) {
    throw NotASubgroup("H is not contained in G");
  }
  if (!is_transitive(g)) {
    throw NotTransitive("factorization_check needs a transitive G");
  }
  return is_transitive(h);
}

}  // namespace primesym

#endif  // PRIMESYM_GROUP_OPS_HPP_
