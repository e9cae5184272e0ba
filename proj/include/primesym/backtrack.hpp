#ifndef PRIMESYM_BACKTRACK_HPP_
#define PRIMESYM_BACKTRACK_HPP_

// Backtrack search for subgroups {g in G : P(g)} of a group given by a
// stabilizer chain, where P is a subgroup property supplied as a constraint:
// normalizers, centralizers and intersections.
//
// The result is built from the bottom of the chain up. At level i, for every
// point gamma of the fundamental orbit that is not yet reached by the known
// part of the result, a depth-first search looks for one element of G^(i)
// mapping b_i to gamma. A failed target rules out its whole orbit under the
// known subgroup.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "primesym/errors.hpp"
#include "primesym/group_ops.hpp"
#include "primesym/perm.hpp"
#include "primesym/stabchain.hpp"

namespace primesym {

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string const&       what,
                 std::vector<Permutation> partial,
                 std::string              kind = "BudgetExceeded")
      : Error(std::move(kind), what), partial_(std::move(partial)) {}

  // Elements of the result found before the budget ran out.
  std::vector<Permutation> const& partial() const noexcept { return partial_; }

 private:
  std::vector<Permutation> partial_;
};

struct BacktrackOptions {
  std::uint64_t node_budget = 100'000'000;
  std::uint64_t seed        = 0;
  // Largest |K| for which the elements of K are listed to constrain images
  // of K's generators.
  std::size_t max_listed_elements = 20'000;
};

struct BacktrackStats {
  std::uint64_t nodes          = 0;
  std::uint64_t leaves         = 0;
  std::uint64_t pruned         = 0;
  std::uint64_t targets        = 0;
  std::uint64_t failed_targets = 0;
};

// Generic engine. Constraint must provide
//   State initial() const;
//   bool assign(State&, Point a, Point b) const;   // false on contradiction
//   std::optional<Point> image(State const&, Point a) const;  // forced image
//   bool accept(Permutation const&) const;         // definitive membership
template <typename Constraint>
class SubgroupSearch {
 public:
  SubgroupSearch(StabChain const& chain, Constraint const& constraint,
                 BacktrackOptions options)
      : chain_(chain), constraint_(constraint), options_(options),
        base_(chain.base()) {}

  PermGroup run(std::span<Permutation const> seeds) {
    std::size_t const n = chain_.degree();
    GrowingGroup      found(n, base_);
    for (auto const& s : seeds) {
      if (chain_.contains(s) && constraint_.accept(s)) {
        found.add(s);
      }
    }
    auto const levels = chain_.levels();
    for (std::size_t i = levels.size(); i-- > 0;) {
      auto const&        level = levels[i];
      std::vector<Point> targets(level.orbit.begin(), level.orbit.end());
      std::sort(targets.begin(), targets.end());
      std::vector<bool> failed(n, false);
      for (Point gamma : targets) {
        if (gamma == level.base || failed[gamma]) {
          continue;
        }
        auto const& known = found.chain().levels()[i];
        if (known.in_orbit(gamma)) {
          continue;
        }
        ++stats_.targets;
        auto g = search_target(i, gamma, found);
        if (g) {
          found.add(*g);
        } else {
          ++stats_.failed_targets;
          auto const& known_now = found.chain().levels()[i];
          for (Point p : orbit(known_now.generators, n, gamma)) {
            failed[p] = true;
          }
        }
      }
    }
    std::vector<Permutation> gens = found.generators();
    std::sort(gens.begin(), gens.end());
    return PermGroup(n, std::move(gens));
  }

  BacktrackStats const& stats() const noexcept { return stats_; }

 private:
  using State = typename Constraint::State;

  std::optional<Permutation> search_target(std::size_t i, Point gamma,
                                           GrowingGroup const& found) {
    State state = constraint_.initial();
    for (std::size_t l = 0; l < i; ++l) {
      if (!constraint_.assign(state, base_[l], base_[l])) {
        return std::nullopt;
      }
    }
    if (!constraint_.assign(state, base_[i], gamma)) {
      ++stats_.pruned;
      return std::nullopt;
    }
    partial_ = &found;
    auto const& level = chain_.levels()[i];
    return dfs(i + 1, level.rep(gamma), state);
  }

  std::optional<Permutation> dfs(std::size_t j, Permutation const& u,
                                 State const& state) {
    if (++stats_.nodes > options_.node_budget) {
      throw BudgetExceeded("backtrack node budget of "
                               + std::to_string(options_.node_budget)
                               + " exceeded",
                           partial_->generators());
    }
    auto const levels = chain_.levels();
    if (j == levels.size()) {
      ++stats_.leaves;
      if (constraint_.accept(u)) {
        return u;
      }
      return std::nullopt;
    }
    auto const& level = levels[j];
    Point const b     = level.base;
    if (auto forced = constraint_.image(state, b)) {
      Point gamma = u.inverse()[*forced];
      if (!level.in_orbit(gamma)) {
        ++stats_.pruned;
        return std::nullopt;
      }
      return dfs(j + 1, level.rep(gamma) * u, state);
    }
    std::vector<std::pair<Point, Point>> children;  // (image, gamma)
    children.reserve(level.orbit.size());
    for (Point gamma : level.orbit) {
      children.emplace_back(u[gamma], gamma);
    }
    std::sort(children.begin(), children.end());
    for (auto [image, gamma] : children) {
      State next = state;
      if (!constraint_.assign(next, b, image)) {
        ++stats_.pruned;
        continue;
      }
      if (auto g = dfs(j + 1, level.rep(gamma) * u, next)) {
        return g;
      }
    }
    return std::nullopt;
  }

  StabChain const&    chain_;
  Constraint const&   constraint_;
  BacktrackOptions    options_;
  std::vector<Point>  base_;
  BacktrackStats      stats_;
  GrowingGroup const* partial_ = nullptr;
};

// Elements x with k_i^x in K for every generator k_i of K, where the
// candidate images of each k_i are listed explicitly when K is small.
class ConjugationConstraint {
 public:
  struct State {
    std::vector<std::int32_t>              f;
    std::vector<std::int32_t>              finv;
    std::vector<std::int32_t>              orbit_map;
    std::vector<std::int32_t>              orbit_inv;
    std::vector<std::vector<std::uint32_t>> cand;
    std::vector<std::int32_t>              resolved;
  };

  // candidates[i] lists the permitted images of generator i under
  // conjugation; an empty list means unconstrained (checked at leaves only).
  ConjugationConstraint(PermGroup const& k,
                        std::vector<std::vector<Permutation>> candidates)
      : k_(k), n_(k.degree()), gens_(k.generators()),
        candidates_(std::move(candidates)) {
    for (auto const& g : gens_) {
      gens_inv_.push_back(g.inverse());
    }
    for (auto const& list : candidates_) {
      std::vector<Permutation> inv;
      for (auto const& c : list) {
        inv.push_back(c.inverse());
      }
      candidates_inv_.push_back(std::move(inv));
    }
    orbit_id_.assign(n_, 0);
    auto orbs = orbits(k);
    for (std::size_t o = 0; o < orbs.size(); ++o) {
      orbit_size_.push_back(orbs[o].size());
      for (Point p : orbs[o]) {
        orbit_id_[p] = static_cast<std::int32_t>(o);
      }
    }
  }

  State initial() const {
    State s;
    s.f.assign(n_, -1);
    s.finv.assign(n_, -1);
    s.orbit_map.assign(orbit_size_.size(), -1);
    s.orbit_inv.assign(orbit_size_.size(), -1);
    s.resolved.assign(gens_.size(), -1);
    for (auto const& list : candidates_) {
      std::vector<std::uint32_t> all(list.size());
      for (std::uint32_t c = 0; c < all.size(); ++c) {
        all[c] = c;
      }
      s.cand.push_back(std::move(all));
    }
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (s.cand[i].size() == 1) {
        s.resolved[i] = 0;
      }
    }
    return s;
  }

  std::optional<Point> image(State const& s, Point a) const {
    if (s.f[a] < 0) {
      return std::nullopt;
    }
    return static_cast<Point>(s.f[a]);
  }

  bool assign(State& s, Point a, Point b) const {
    std::vector<std::pair<Point, Point>> queue{{a, b}};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      auto [x, y] = queue[q];
      if (s.f[x] >= 0 || s.finv[y] >= 0) {
        if (s.f[x] == static_cast<std::int32_t>(y)) {
          continue;
        }
        return false;
      }
      auto ox = orbit_id_[x], oy = orbit_id_[y];
      if (orbit_size_[ox] != orbit_size_[oy]) {
        return false;
      }
      if (s.orbit_map[ox] < 0 && s.orbit_inv[oy] < 0) {
        s.orbit_map[ox] = oy;
        s.orbit_inv[oy] = ox;
      } else if (s.orbit_map[ox] != oy) {
        return false;
      }
      s.f[x]    = static_cast<std::int32_t>(y);
      s.finv[y] = static_cast<std::int32_t>(x);
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (candidates_[i].empty()) {
          continue;
        }
        if (s.resolved[i] < 0) {
          auto& cand = s.cand[i];
          std::erase_if(cand, [&](std::uint32_t c) {
            return !compatible(s, x, y, gens_[i], candidates_[i][c])
                   || !compatible(s, x, y, gens_inv_[i], candidates_inv_[i][c]);
          });
          if (cand.empty()) {
            return false;
          }
          if (cand.size() == 1) {
            s.resolved[i] = static_cast<std::int32_t>(cand.front());
            // Propagate over everything assigned so far.
            for (Point p = 0; p < n_; ++p) {
              if (s.f[p] >= 0) {
                push_forced(s, queue, p, static_cast<Point>(s.f[p]), i);
              }
            }
            continue;
          }
        } else {
          push_forced(s, queue, x, y, i);
        }
      }
    }
    return true;
  }

  bool accept(Permutation const& g) const {
    for (auto const& k : gens_) {
      if (!k_.contains(conjugate(k, g))) {
        return false;
      }
    }
    return true;
  }

 private:
  // Image y of x is compatible with gen -> c when f(x^gen) = y^c or both
  // sides are still free.
  static bool compatible(State const& s, Point x, Point y,
                         Permutation const& gen, Permutation const& c) {
    Point x2 = gen[x], y2 = c[y];
    if (s.f[x2] == static_cast<std::int32_t>(y2)) {
      return true;
    }
    return s.f[x2] < 0 && s.finv[y2] < 0;
  }

  void push_forced(State const& s, std::vector<std::pair<Point, Point>>& queue,
                   Point x, Point y, std::size_t i) const {
    auto const& c     = candidates_[i][static_cast<std::size_t>(s.resolved[i])];
    auto const& c_inv = candidates_inv_[i][static_cast<std::size_t>(s.resolved[i])];
    queue.emplace_back(gens_[i][x], c[y]);
    queue.emplace_back(gens_inv_[i][x], c_inv[y]);
  }

  PermGroup                             k_;
  std::size_t                           n_;
  std::vector<Permutation>              gens_;
  std::vector<Permutation>              gens_inv_;
  std::vector<std::vector<Permutation>> candidates_;
  std::vector<std::vector<Permutation>> candidates_inv_;
  std::vector<std::int32_t>             orbit_id_;
  std::vector<std::size_t>              orbit_size_;
};

// Elements of the ambient group that lie in H; H's chain shares the
// ambient base as a prefix so partial base images can be tested exactly.
class MembershipConstraint {
 public:
  struct State {
    std::size_t level = 0;
    Permutation cur;
    Permutation cur_inv;
  };

  MembershipConstraint(PermGroup const& h, std::vector<Point> base)
      : h_(h), base_(std::move(base)), chain_(chain_with_base(h, base_)) {}

  State initial() const {
    return State{0, Permutation(h_.degree()), Permutation(h_.degree())};
  }

  std::optional<Point> image(State const&, Point) const { return std::nullopt; }

  bool assign(State& s, Point a, Point b) const {
    std::size_t l = s.level++;
    if (l >= base_.size() || base_[l] != a) {
      throw InternalContradiction("membership constraint assigned out of base order");
    }
    Point delta = s.cur_inv[b];
    if (l >= chain_.depth()) {
      return delta == a;
    }
    auto const& level = chain_.levels()[l];
    if (!level.in_orbit(delta)) {
      return false;
    }
    s.cur     = level.rep(delta) * s.cur;
    s.cur_inv = s.cur_inv * level.rep_inv(delta);
    return true;
  }

  bool accept(Permutation const& g) const { return chain_.contains(g); }

 private:
  PermGroup          h_;
  std::vector<Point> base_;
  StabChain          chain_;
};

namespace detail {

  // Points listed orbit by orbit of k, each orbit in BFS order from its
  // smallest point along k's generators; larger orbits first.
  inline std::vector<Point> orbit_base(PermGroup const& k) {
    auto orbs = orbits(k);
    std::stable_sort(orbs.begin(), orbs.end(), [](auto const& a, auto const& b) {
      return a.size() > b.size();
    });
    std::vector<Point> base;
    for (auto const& o : orbs) {
      base.insert(base.end(), o.begin(), o.end());
    }
    return base;
  }

  inline std::vector<Permutation> elements(PermGroup const& k) {
    std::vector<Permutation> result{k.identity()};
    std::unordered_set<Permutation, PermutationHash> seen(result.begin(), result.end());
    for (std::size_t i = 0; i < result.size(); ++i) {
      for (auto const& s : k.generators()) {
        Permutation next = result[i] * s;
        if (seen.insert(next).second) {
          result.push_back(std::move(next));
        }
      }
    }
    return result;
  }

  template <typename Constraint>
  PermGroup run_search(PermGroup const& g, std::span<Point const> base_prefix,
                       Constraint const& constraint,
                       std::span<Permutation const> seeds,
                       BacktrackOptions const& options, BacktrackStats* stats) {
    StabChain chain = chain_with_base(g, base_prefix, options.seed);
    SubgroupSearch<Constraint> search(chain, constraint, options);
    PermGroup result = search.run(seeds);
    if (stats) {
      *stats = search.stats();
    }
    return result;
  }

}  // namespace detail

// N_G(K) = {x in G : K^x = K}. K need not lie in G.
inline PermGroup normalizer(PermGroup const& g, PermGroup const& k,
                            BacktrackOptions const& options = {},
                            BacktrackStats* stats = nullptr) {
  if (g.degree() != k.degree()) {
    throw DegreeMismatch("normalizer needs equal degrees");
  }
  if (k.is_trivial()) {
    return g;
  }
  std::vector<std::vector<Permutation>> candidates(k.generators().size());
  if (k.order() <= options.max_listed_elements) {
    auto const all = detail::elements(k);
    for (std::size_t i = 0; i < k.generators().size(); ++i) {
      auto type = cycle_type(k.generators()[i]);
      for (auto const& e : all) {
        if (cycle_type(e) == type) {
          candidates[i].push_back(e);
        }
      }
      std::sort(candidates[i].begin(), candidates[i].end());
    }
  }
  ConjugationConstraint    constraint(k, std::move(candidates));
  auto                     base = detail::orbit_base(k);
  std::vector<Permutation> seeds;
  if (is_subgroup(k, g)) {
    seeds = k.generators();
  }
  return detail::run_search(g, base, constraint, seeds, options, stats);
}

// C_G(K) = {x in G : k^x = k for all k in K}.
inline PermGroup centralizer(PermGroup const& g, PermGroup const& k,
                             BacktrackOptions const& options = {},
                             BacktrackStats* stats = nullptr) {
  if (g.degree() != k.degree()) {
    throw DegreeMismatch("centralizer needs equal degrees");
  }
  if (k.is_trivial()) {
    return g;
  }
  std::vector<std::vector<Permutation>> candidates;
  for (auto const& s : k.generators()) {
    candidates.push_back({s});
  }
  ConjugationConstraint    constraint(k, std::move(candidates));
  auto                     base = detail::orbit_base(k);
  std::vector<Permutation> seeds;
  for (auto const& s : k.generators()) {
    bool central = true;
    for (auto const& t : k.generators()) {
      central = central && s * t == t * s;
    }
    if (central) {
      seeds.push_back(s);
    }
  }
  return detail::run_search(g, base, constraint, seeds, options, stats);
}

inline PermGroup centralizer(PermGroup const& g, Permutation const& p,
                             BacktrackOptions const& options = {},
                             BacktrackStats* stats = nullptr) {
  return centralizer(g, PermGroup(g.degree(), {p}), options, stats);
}

// G n H.
inline PermGroup intersection(PermGroup const& g, PermGroup const& h,
                              BacktrackOptions const& options = {},
                              BacktrackStats* stats = nullptr) {
  if (g.degree() != h.degree()) {
    throw DegreeMismatch("intersection needs equal degrees");
  }
  if (is_subgroup(h, g)) {
    return h;
  }
  if (is_subgroup(g, h)) {
    return g;
  }
  PermGroup const& ambient = g.order() <= h.order() ? g : h;
  PermGroup const& other   = g.order() <= h.order() ? h : g;
  std::vector<Permutation> seeds;
  for (auto const& s : ambient.generators()) {
    if (other.contains(s)) {
      seeds.push_back(s);
    }
  }
  for (auto const& s : other.generators()) {
    if (ambient.contains(s)) {
      seeds.push_back(s);
    }
  }
  StabChain            chain = chain_with_base(ambient, {}, options.seed);
  MembershipConstraint constraint(other, chain.base());
  SubgroupSearch<MembershipConstraint> search(chain, constraint, options);
  PermGroup result = search.run(seeds);
  if (stats) {
    *stats = search.stats();
  }
  return result;
}

}  // namespace primesym

#endif  // PRIMESYM_BACKTRACK_HPP_
