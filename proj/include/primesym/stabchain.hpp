#ifndef PRIMESYM_STABCHAIN_HPP_
#define PRIMESYM_STABCHAIN_HPP_

// Base and strong generating set machinery.
//
// A StabChain is built by a seeded random Schreier-Sims pass followed by a
// deterministic verification pass that sifts every Schreier generator, so
// the resulting chain is exact; the seed only influences which strong
// generators are found.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "primesym/bignat.hpp"
#include "primesym/errors.hpp"
#include "primesym/perm.hpp"

namespace primesym {

struct ChainLevel {
  Point                     base;
  std::vector<Permutation>  generators;  // strong generators fixing earlier base points
  std::vector<Point>        orbit;       // BFS order, orbit[0] == base
  std::vector<std::int32_t> position;    // point -> index into orbit, or -1
  std::vector<Permutation>  transversal;  // transversal[k] maps base to orbit[k]
  std::vector<Permutation>  transversal_inv;

  bool in_orbit(Point p) const noexcept {
    return position[p] >= 0;
  }
  Permutation const& rep(Point p) const {
    return transversal[static_cast<std::size_t>(position[p])];
  }
  Permutation const& rep_inv(Point p) const {
    return transversal_inv[static_cast<std::size_t>(position[p])];
  }
};

class StabChain {
 public:
  StabChain() = default;
  explicit StabChain(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const noexcept { return degree_; }

  std::span<ChainLevel const> levels() const noexcept { return levels_; }

  std::size_t depth() const noexcept { return levels_.size(); }

  std::vector<Point> base() const {
    std::vector<Point> result;
    for (auto const& level : levels_) {
      result.push_back(level.base);
    }
    return result;
  }

  std::vector<Permutation> strong_generators() const {
    return levels_.empty() ? std::vector<Permutation>{}
                           : levels_.front().generators;
  }

  BigNat order() const {
    BigNat result = 1;
    for (auto const& level : levels_) {
      result *= level.orbit.size();
    }
    return result;
  }

  // Returns the residue of g and the level at which sifting stopped
  // (depth() when g passed every level).
  std::pair<Permutation, std::size_t> sift(Permutation g,
                                           std::size_t from = 0) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      auto const& level = levels_[i];
      Point       beta  = g[level.base];
      if (!level.in_orbit(beta)) {
        return {std::move(g), i};
      }
      g = g * level.rep_inv(beta);
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(Permutation const& g) const {
    if (g.degree() != degree_) {
      throw DegreeMismatch("element of degree " + std::to_string(g.degree())
                           + " tested against group of degree "
                           + std::to_string(degree_));
    }
    auto [residue, level] = sift(g);
    return level == levels_.size() && residue.is_identity();
  }

  // Uniformly random element.
  template <typename Rng>
  Permutation random_element(Rng& rng) const {
    Permutation g(degree_);
    for (std::size_t i = levels_.size(); i-- > 0;) {
      auto const&                                level = levels_[i];
      std::uniform_int_distribution<std::size_t> pick(0, level.orbit.size() - 1);
      g = g * level.transversal[pick(rng)];
    }
    return g;
  }

  // The chain of the pointwise stabilizer of the first `i` base points.
  StabChain suffix(std::size_t i) const {
    StabChain result(degree_);
    result.levels_.assign(levels_.begin() + static_cast<std::ptrdiff_t>(i),
                          levels_.end());
    return result;
  }

 private:
  friend class ChainBuilder;

  std::size_t             degree_ = 0;
  std::vector<ChainLevel> levels_;
};

// Schreier-Sims. Internal; use build_chain.
class ChainBuilder {
 public:
  ChainBuilder(std::size_t degree, std::span<Point const> base_prefix)
      : chain_(degree) {
    for (Point b : base_prefix) {
      if (b >= degree) {
        throw PointOutOfRange("base point " + std::to_string(b + 1)
                              + " exceeds degree " + std::to_string(degree));
      }
      if (std::find_if(chain_.levels_.begin(), chain_.levels_.end(),
                       [b](ChainLevel const& l) { return l.base == b; })
          == chain_.levels_.end()) {
        push_level(b);
      }
    }
  }

  explicit ChainBuilder(StabChain chain) : chain_(std::move(chain)) {}

  // Random Schreier-Sims: sift product-replacement elements until
  // `patience` consecutive ones sift to the identity.
  void random_phase(std::span<Permutation const> gens, std::uint64_t seed,
                    std::size_t patience = 16) {
    std::vector<Permutation> pool;
    for (auto const& g : gens) {
      if (!g.is_identity()) {
        pool.push_back(g);
      }
    }
    if (pool.empty()) {
      return;
    }
    for (auto const& g : pool) {
      add_unverified(g);
    }
    std::size_t const n    = chain_.degree_;
    std::size_t const orig = pool.size();
    while (pool.size() < 10) {
      pool.push_back(pool[pool.size() % orig]);
    }
    Permutation                                accumulator(n);
    std::mt19937_64                            rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    auto                                       next = [&]() {
      std::size_t s = pick(rng), t = pick(rng);
      while (t == s) {
        t = pick(rng);
      }
      pool[s]     = (rng() & 1) ? pool[s] * pool[t] : pool[t] * pool[s];
      accumulator = accumulator * pool[s];
      return accumulator;
    };
    for (int i = 0; i < 40; ++i) {
      next();
    }
    std::size_t quiet = 0;
    for (std::size_t iter = 0; quiet < patience && iter < 4096; ++iter) {
      auto [residue, level] = chain_.sift(next());
      if (residue.is_identity()) {
        ++quiet;
        continue;
      }
      quiet = 0;
      insert(residue, level);
    }
  }

  // Adds a generator and restores a verified chain.
  void add_generator(Permutation const& g) {
    if (g.is_identity()) {
      return;
    }
    auto [residue, level] = chain_.sift(g);
    if (level == chain_.levels_.size() && residue.is_identity()) {
      return;
    }
    std::size_t deepest = add_unverified(g);
    verify_from(deepest);
  }

  void verify() {
    if (!chain_.levels_.empty()) {
      verify_from(chain_.levels_.size() - 1);
    }
  }

  StabChain const& chain() const noexcept { return chain_; }

  StabChain take() && { return std::move(chain_); }

 private:
  void push_level(Point b) {
    ChainLevel level;
    level.base = b;
    level.position.assign(chain_.degree_, -1);
    level.orbit = {b};
    level.position[b] = 0;
    level.transversal.emplace_back(chain_.degree_);
    level.transversal_inv.emplace_back(chain_.degree_);
    chain_.levels_.push_back(std::move(level));
  }

  // New base point for an element fixing all current base points: a point in
  // its longest cycle, smallest point on ties.
  static Point choose_base_point(Permutation const& g) {
    std::vector<bool> seen(g.degree(), false);
    Point             best     = 0;
    std::size_t       best_len = 0;
    for (Point i = 0; i < g.degree(); ++i) {
      if (seen[i]) {
        continue;
      }
      std::size_t len = 0;
      for (Point j = i; !seen[j]; j = g[j]) {
        seen[j] = true;
        ++len;
      }
      if (len > best_len) {
        best_len = len;
        best     = i;
      }
    }
    return best;
  }

  // Adds g to levels 0..t where t is the first level whose base point g
  // moves (creating a level if g fixes the whole base). Returns t.
  std::size_t add_unverified(Permutation const& g) {
    std::size_t t = 0;
    while (t < chain_.levels_.size() && g[chain_.levels_[t].base] == chain_.levels_[t].base) {
      ++t;
    }
    insert(g, t);
    return t;
  }

  // Inserts a residue that fixes the first `upto` base points into levels
  // 0..upto, creating a new level when upto == depth.
  void insert(Permutation const& g, std::size_t upto) {
    if (upto == chain_.levels_.size()) {
      push_level(choose_base_point(g));
    }
    for (std::size_t l = 0; l <= upto; ++l) {
      auto& gens = chain_.levels_[l].generators;
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) {
        gens.push_back(g);
        extend_orbit(l);
      }
    }
  }

  void extend_orbit(std::size_t l) {
    auto& level = chain_.levels_[l];
    // Re-scan from the start: new generators must be applied to old points.
    for (std::size_t k = 0; k < level.orbit.size(); ++k) {
      Point beta = level.orbit[k];
      for (auto const& s : level.generators) {
        Point gamma = s[beta];
        if (level.position[gamma] < 0) {
          level.position[gamma] = static_cast<std::int32_t>(level.orbit.size());
          level.orbit.push_back(gamma);
          Permutation u = level.transversal[k] * s;
          level.transversal_inv.push_back(u.inverse());
          level.transversal.push_back(std::move(u));
        }
      }
    }
  }

  void verify_from(std::size_t start) {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(start);
    while (i >= 0) {
      bool        restarted = false;
      auto const  li        = static_cast<std::size_t>(i);
      std::size_t orbit_len = chain_.levels_[li].orbit.size();
      for (std::size_t k = 0; k < orbit_len && !restarted; ++k) {
        std::size_t ngens = chain_.levels_[li].generators.size();
        for (std::size_t s = 0; s < ngens; ++s) {
          auto const& level = chain_.levels_[li];
          Point       beta  = level.orbit[k];
          auto const& gen   = level.generators[s];
          Point       image = gen[beta];
          Permutation h     = level.transversal[k] * gen * level.rep_inv(image);
          if (h.is_identity()) {
            continue;
          }
          auto [residue, drop] = chain_.sift(std::move(h), li + 1);
          if (residue.is_identity()) {
            continue;
          }
          insert(residue, drop);
          // insert() touched levels up to `drop`; levels above li only
          // gained generators at indices <= drop, and level li is
          // re-verified after the deeper ones.
          i         = static_cast<std::ptrdiff_t>(drop);
          restarted = true;
          break;
        }
      }
      if (!restarted) {
        --i;
      }
    }
  }

  StabChain chain_;
};

// Builds a verified chain for <gens>. Base points listed in `base_prefix`
// come first (levels with trivial orbits are kept for them).
inline StabChain build_chain(std::span<Permutation const> gens,
                             std::size_t degree, std::uint64_t seed = 0,
                             std::span<Point const> base_prefix = {}) {
  for (auto const& g : gens) {
    if (g.degree() != degree) {
      throw DegreeMismatch("generator of degree " + std::to_string(g.degree())
                           + " in group of degree " + std::to_string(degree));
    }
  }
  ChainBuilder builder(degree, base_prefix);
  builder.random_phase(gens, seed);
  builder.verify();
  return std::move(builder).take();
}

// A permutation group given by generators, with a lazily built stabilizer
// chain. Copies share the chain; the value is immutable once constructed.
class PermGroup {
 public:
  PermGroup() : PermGroup(1, {}) {}

  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            std::string label = {}, std::uint64_t seed = 0)
      : degree_(degree), label_(std::move(label)),
        shared_(std::make_shared<Shared>()) {
    if (degree == 0) {
      throw InvalidParams("permutation groups need degree >= 1");
    }
    for (auto& g : generators) {
      if (g.degree() != degree) {
        throw DegreeMismatch("generator of degree "
                             + std::to_string(g.degree())
                             + " in group of degree " + std::to_string(degree));
      }
      if (!g.is_identity()
          && std::find(generators_.begin(), generators_.end(), g)
                 == generators_.end()) {
        generators_.push_back(std::move(g));
      }
    }
    shared_->seed = seed;
  }

  // Adopts an existing chain; the generators are its strong generators.
  explicit PermGroup(StabChain chain, std::string label = {})
      : PermGroup(chain.degree(), chain.strong_generators(), std::move(label)) {
    shared_->chain = std::move(chain);
    std::call_once(shared_->once, [] {});
  }

  static PermGroup trivial(std::size_t degree) {
    return PermGroup(degree, {});
  }

  std::size_t degree() const noexcept { return degree_; }

  std::vector<Permutation> const& generators() const noexcept {
    return generators_;
  }

  std::string const& label() const noexcept { return label_; }

  PermGroup with_label(std::string label) const {
    PermGroup copy = *this;
    copy.label_    = std::move(label);
    return copy;
  }

  StabChain const& chain() const {
    std::call_once(shared_->once, [this] {
      shared_->chain = build_chain(generators_, degree_, shared_->seed);
    });
    return *shared_->chain;
  }

  BigNat order() const { return chain().order(); }

  bool contains(Permutation const& p) const { return chain().contains(p); }

  bool is_trivial() const noexcept { return generators_.empty(); }

  Permutation identity() const { return Permutation(degree_); }

 private:
  struct Shared {
    std::once_flag           once;
    std::optional<StabChain> chain;
    std::uint64_t            seed = 0;
  };

  std::size_t              degree_ = 1;
  std::vector<Permutation> generators_;
  std::string              label_;
  std::shared_ptr<Shared>  shared_;
};

inline BigNat group_order(PermGroup const& g) {
  return g.order();
}

inline bool contains(PermGroup const& g, Permutation const& p) {
  return g.contains(p);
}

inline void check_point(PermGroup const& g, Point point) {
  if (point >= g.degree()) {
    throw PointOutOfRange("point " + std::to_string(point + 1)
                          + " exceeds degree " + std::to_string(g.degree()));
  }
}

// Orbit of `point` under the generators, in BFS order.
inline std::vector<Point> orbit(std::span<Permutation const> gens,
                                std::size_t degree, Point point) {
  std::vector<Point> result{point};
  std::vector<bool>  seen(degree, false);
  seen[point] = true;
  for (std::size_t k = 0; k < result.size(); ++k) {
    for (auto const& s : gens) {
      Point q = s[result[k]];
      if (!seen[q]) {
        seen[q] = true;
        result.push_back(q);
      }
    }
  }
  return result;
}

inline std::vector<Point> orbit(PermGroup const& g, Point point) {
  check_point(g, point);
  return orbit(g.generators(), g.degree(), point);
}

// All orbits, each in BFS order, listed by smallest point.
inline std::vector<std::vector<Point>> orbits(std::span<Permutation const> gens,
                                              std::size_t degree) {
  std::vector<std::vector<Point>> result;
  std::vector<bool>               seen(degree, false);
  for (Point p = 0; p < degree; ++p) {
    if (seen[p]) {
      continue;
    }
    auto o = orbit(gens, degree, p);
    for (Point q : o) {
      seen[q] = true;
    }
    result.push_back(std::move(o));
  }
  return result;
}

inline std::vector<std::vector<Point>> orbits(PermGroup const& g) {
  return orbits(g.generators(), g.degree());
}

inline bool is_transitive(PermGroup const& g) {
  return orbit(g, 0).size() == g.degree();
}

// Chain of g whose base starts with `prefix`.
inline StabChain chain_with_base(PermGroup const& g,
                                 std::span<Point const> prefix,
                                 std::uint64_t seed = 0) {
  return build_chain(g.generators(), g.degree(), seed, prefix);
}

inline PermGroup point_stabilizer(PermGroup const& g, Point point) {
  check_point(g, point);
  Point const prefix[] = {point};
  StabChain   chain    = chain_with_base(g, prefix);
  return PermGroup(chain.suffix(1), g.label().empty() ? std::string{}
                                                      : g.label() + "_pt");
}

inline bool is_subgroup(PermGroup const& h, PermGroup const& g) {
  if (h.degree() != g.degree()) {
    return false;
  }
  for (auto const& s : h.generators()) {
    if (!g.contains(s)) {
      return false;
    }
  }
  return true;
}

inline bool same_group(PermGroup const& a, PermGroup const& b) {
  return a.degree() == b.degree() && a.order() == b.order()
         && is_subgroup(a, b);
}

inline PermGroup conjugate(PermGroup const& h, Permutation const& x) {
  std::vector<Permutation> gens;
  for (auto const& s : h.generators()) {
    gens.push_back(conjugate(s, x));
  }
  return PermGroup(h.degree(), std::move(gens));
}

inline PermGroup join(PermGroup const& h, std::span<Permutation const> extra) {
  std::vector<Permutation> gens = h.generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return PermGroup(h.degree(), std::move(gens));
}

// Right cosets H g of H in G, numbered in BFS order from H itself. Each
// coset is identified by the lexicographically least image of G's base under
// its elements.
class CosetTable {
 public:
  CosetTable(PermGroup const& g, PermGroup const& h,
             std::size_t max_index = 1'000'000)
      : g_(g), h_(h) {
    if (g.degree() != h.degree()) {
      throw DegreeMismatch("subgroup degree differs from group degree");
    }
    if (!is_subgroup(h, g)) {
      throw NotASubgroup("H is not contained in G");
    }
    BigNat index = g.order() / h.order();
    if (index > max_index) {
      throw IndexExceedsLimit("index " + to_string(index)
                              + " exceeds the limit "
                              + std::to_string(max_index));
    }
    base_    = g.chain().base();
    h_chain_ = chain_with_base(h, base_);

    std::size_t const n = g.degree();
    reps_.emplace_back(n);
    index_.emplace(key(reps_.front()), 0);
    std::size_t const ngens = g.generators().size();
    std::vector<std::vector<Point>> images(ngens);
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      for (std::size_t s = 0; s < ngens; ++s) {
        Permutation next = reps_[i] * g.generators()[s];
        auto        k    = key(next);
        auto        it   = index_.find(k);
        if (it == index_.end()) {
          it = index_.emplace(std::move(k), reps_.size()).first;
          reps_.push_back(std::move(next));
        }
        images[s].push_back(static_cast<Point>(it->second));
      }
    }
    std::vector<Permutation> action;
    for (auto& im : images) {
      action.push_back(Permutation::from_images(std::move(im)));
    }
    action_ = PermGroup(reps_.size(), std::move(action));
  }

  std::size_t size() const noexcept { return reps_.size(); }

  Permutation const& representative(std::size_t i) const { return reps_[i]; }

  // Index of the coset H g.
  std::size_t index_of(Permutation const& g) const {
    auto it = index_.find(key(g));
    return it == index_.end() ? SIZE_MAX : it->second;
  }

  // Canonical representative data of H g.
  std::vector<Point> key(Permutation g) const {
    std::vector<Point> result;
    result.reserve(base_.size());
    for (std::size_t l = 0; l < base_.size(); ++l) {
      if (l < h_chain_.depth()) {
        auto const& level = h_chain_.levels()[l];
        Point       best  = level.orbit.front();
        for (Point gamma : level.orbit) {
          if (g[gamma] < g[best]) {
            best = gamma;
          }
        }
        if (best != level.base) {
          g = level.rep(best) * g;
        }
      }
      result.push_back(g[base_[l]]);
    }
    return result;
  }

  // The action of G's generators on the cosets.
  PermGroup const& action() const noexcept { return action_; }

  // Image of coset i under right multiplication by g.
  std::size_t act(std::size_t i, Permutation const& g) const {
    return index_of(reps_[i] * g);
  }

  bool faithful() const { return action_.order() == g_.order(); }

  PermGroup const& group() const noexcept { return g_; }
  PermGroup const& subgroup() const noexcept { return h_; }

 private:
  struct KeyHash {
    std::size_t operator()(std::vector<Point> const& v) const noexcept {
      std::size_t h = 1469598103934665603ULL;
      for (Point p : v) {
        h ^= p;
        h *= 1099511628211ULL;
      }
      return h;
    }
  };

  PermGroup                                                       g_;
  PermGroup                                                       h_;
  std::vector<Point>                                              base_;
  StabChain                                                       h_chain_;
  std::vector<Permutation>                                        reps_;
  std::unordered_map<std::vector<Point>, std::size_t, KeyHash>    index_;
  PermGroup                                                       action_;
};

// Permutation action of g on the right cosets of h. The kernel is the core of
// h; faithfulness is reported by CosetTable::faithful(), not enforced.
inline CosetTable coset_action(PermGroup const& g, PermGroup const& h,
                               std::size_t max_index = 1'000'000) {
  return CosetTable(g, h, max_index);
}

}  // namespace primesym

#endif  // PRIMESYM_STABCHAIN_HPP_
