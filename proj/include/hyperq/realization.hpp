#pragma once

// Concrete hypergroupoids from finite permutation actions: the arrows are
// the orbits of the group on X × X, and structure constants are counted
// exactly on X.
//
// A pair (x, y) in an arrow reads "x is related to y" with x the output and
// y the input, so src is the orbit of y and tgt the orbit of x.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hypergroupoid.hpp"
#include "weighted.hpp"

namespace hyperq {

/// A permutation of {0, ..., n-1} as its image array.
using Perm = std::vector<std::uint32_t>;

namespace perm {

inline Perm identity(std::size_t degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

/// (p ∘ q)[i] = p[q[i]]: q first, then p.
inline Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (std::uint32_t x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace perm

struct PermAction {
  std::size_t point_count = 0;
  std::vector<Perm> generators;

  void validate() const {
    if (point_count == 0) throw std::invalid_argument("PermAction: the point set must be inhabited");
    for (const Perm& g : generators)
      if (g.size() != point_count || !perm::is_permutation(g))
        throw std::invalid_argument("PermAction: generator is not a permutation of the points");
  }
};

namespace detail {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  /// Keeps the smaller root, so every root is the minimum of its class.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// The group generated by `generators`, breadth-first from the identity with
/// generators applied on the left in input order.
inline std::vector<Perm> enumerate_group(std::size_t degree, std::span<const Perm> generators,
                                         std::size_t order_bound = 10000) {
  for (const Perm& g : generators)
    if (g.size() != degree || !perm::is_permutation(g))
      throw std::invalid_argument("enumerate_group: generator is not a permutation of degree " + std::to_string(degree));
  std::vector<Perm> elements{perm::identity(degree)};
  std::map<Perm, std::size_t> seen{{elements.front(), 0}};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const Perm& s : generators) {
      Perm next = perm::compose(s, elements[i]);
      if (seen.contains(next)) continue;
      if (elements.size() >= order_bound)
        throw OrderBoundExceeded("enumerate_group: order exceeds bound " + std::to_string(order_bound));
      seen.emplace(next, elements.size());
      elements.push_back(std::move(next));
    }
  }
  return elements;
}

struct Subgroup {
  std::string name;
  std::vector<Perm> generators;
};

/// A group given by permutation generators together with named subgroups.
struct CosetSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<Perm> group_generators;
  std::vector<Subgroup> subgroups;
};

/// Left cosets gK of one subgroup, with the group acting by left multiplication.
/// Points are numbered by the first element of each coset in enumeration
/// order, so the coset K itself is point 0.
inline PermAction coset_space(const CosetSpec& spec, std::size_t subgroup, std::size_t order_bound = 10000) {
  const auto elements = enumerate_group(spec.degree, spec.group_generators, order_bound);
  std::map<Perm, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);

  const Subgroup& k = spec.subgroups.at(subgroup);
  for (const Perm& g : k.generators)
    if (!index.contains(g))
      throw std::invalid_argument("coset_space: generator of subgroup '" + k.name + "' is not in the group");

  detail::UnionFind cosets(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const Perm& g : k.generators) cosets.unite(i, index.at(perm::compose(elements[i], g)));

  std::vector<std::size_t> point_of(elements.size(), SIZE_MAX);
  std::vector<std::size_t> representative;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::size_t root = cosets.find(i);
    if (point_of[root] == SIZE_MAX) {
      point_of[root] = representative.size();
      representative.push_back(i);
    }
    point_of[i] = point_of[root];
  }

  PermAction action;
  action.point_count = representative.size();
  for (const Perm& s : spec.group_generators) {
    Perm image(action.point_count);
    for (std::size_t p = 0; p < action.point_count; ++p)
      image[p] = static_cast<std::uint32_t>(point_of[index.at(perm::compose(s, elements[representative[p]]))]);
    action.generators.push_back(std::move(image));
  }
  return action;
}

struct DisjointUnion {
  PermAction action;
  /// First point of each block.
  std::vector<std::size_t> offsets;
};

/// Block-diagonal union of actions of the same group (same generator count).
inline DisjointUnion disjoint_union(std::span<const PermAction> actions) {
  if (actions.empty()) throw std::invalid_argument("disjoint_union: the point set must be inhabited");
  const std::size_t gens = actions.front().generators.size();
  DisjointUnion out;
  for (const PermAction& a : actions) {
    a.validate();
    if (a.generators.size() != gens)
      throw std::invalid_argument("disjoint_union: actions have different numbers of generators");
    out.offsets.push_back(out.action.point_count);
    out.action.point_count += a.point_count;
  }
  out.action.generators.assign(gens, Perm(out.action.point_count));
  for (std::size_t b = 0; b < actions.size(); ++b)
    for (std::size_t s = 0; s < gens; ++s)
      for (std::size_t p = 0; p < actions[b].point_count; ++p)
        out.action.generators[s][out.offsets[b] + p] =
            static_cast<std::uint32_t>(out.offsets[b] + actions[b].generators[s][p]);
  return out;
}

/// X = ⊔_K G/K over all subgroups of the spec, in spec order.
inline DisjointUnion coset_union(const CosetSpec& spec, std::size_t order_bound = 10000) {
  if (spec.subgroups.empty()) throw std::invalid_argument("coset_union: at least one subgroup is required");
  std::vector<PermAction> blocks;
  for (std::size_t k = 0; k < spec.subgroups.size(); ++k) blocks.push_back(coset_space(spec, k, order_bound));
  return disjoint_union(blocks);
}

struct PointPair {
  std::size_t x = 0;
  std::size_t y = 0;
  friend bool operator==(const PointPair&, const PointPair&) = default;
};

/// The orbits of an action on X and on X × X, assembled as a hypergroupoid,
/// with exact structure-constant counts.
class ConcreteRealization {
public:
  const PermAction& action() const { return action_; }
  std::size_t point_count() const { return action_.point_count; }
  const Hypergroupoid& hypergroupoid() const { return hypergroupoid_; }
  std::size_t arrow_count() const { return hypergroupoid_.arrow_count(); }

  UnitId unit_of_point(std::size_t x) const { return point_unit_.at(x); }
  /// Number of points in the orbit of unit e.
  std::size_t unit_size(UnitId e) const { return unit_sizes_.at(e); }
  ArrowId arrow_of(std::size_t x, std::size_t y) const { return pair_arrow_.at(x * point_count() + y); }
  /// Lexicographically least pair of the orbit.
  PointPair representative(ArrowId a) const { return representatives_.at(a); }
  std::size_t orbit_size(ArrowId a) const { return orbit_sizes_.at(a); }

  /// Counted constants ⟨a|g,g2⟩ for a in comp(g, g2).
  std::span<const std::pair<ArrowId, std::uint64_t>> counted_products(ArrowId g, ArrowId g2) const {
    return counts_.at(g * arrow_count() + g2);
  }

private:
  friend ConcreteRealization orbit_atoms(const PermAction& action);
  ConcreteRealization(PermAction action, Hypergroupoid h) : action_(std::move(action)), hypergroupoid_(std::move(h)) {}

  PermAction action_;
  Hypergroupoid hypergroupoid_;
  std::vector<UnitId> point_unit_;
  std::vector<std::size_t> unit_sizes_;
  std::vector<ArrowId> pair_arrow_;
  std::vector<PointPair> representatives_;
  std::vector<std::size_t> orbit_sizes_;
  std::vector<std::vector<std::pair<ArrowId, std::uint64_t>>> counts_;
};

/// Builds the realization. Units are numbered by the least point of each
/// orbit and arrows by their least pair, so ids are reproducible.
inline ConcreteRealization orbit_atoms(const PermAction& action) {
  action.validate();
  const std::size_t n = action.point_count;

  detail::UnionFind points(n);
  for (const Perm& s : action.generators)
    for (std::size_t x = 0; x < n; ++x) points.unite(x, s[x]);
  std::vector<UnitId> point_unit(n);
  std::vector<std::size_t> unit_min_point, unit_sizes;
  {
    std::vector<std::size_t> unit_of_root(n, SIZE_MAX);
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t r = points.find(x);
      if (unit_of_root[r] == SIZE_MAX) {
        unit_of_root[r] = unit_min_point.size();
        unit_min_point.push_back(x);
        unit_sizes.push_back(0);
      }
      point_unit[x] = unit_of_root[r];
      ++unit_sizes[point_unit[x]];
    }
  }

  detail::UnionFind pairs(n * n);
  for (const Perm& s : action.generators)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) pairs.unite(x * n + y, s[x] * n + s[y]);
  std::vector<ArrowId> pair_arrow(n * n);
  std::vector<PointPair> reps;
  std::vector<std::size_t> orbit_sizes;
  {
    std::vector<ArrowId> arrow_of_root(n * n, SIZE_MAX);
    for (std::size_t p = 0; p < n * n; ++p) {
      const std::size_t r = pairs.find(p);
      if (arrow_of_root[r] == SIZE_MAX) {
        arrow_of_root[r] = reps.size();
        reps.push_back({p / n, p % n});
        orbit_sizes.push_back(0);
      }
      pair_arrow[p] = arrow_of_root[r];
      ++orbit_sizes[pair_arrow[p]];
    }
  }
  const std::size_t arrow_count = reps.size();

  std::vector<ArrowInfo> arrows(arrow_count);
  for (ArrowId a = 0; a < arrow_count; ++a) {
    const auto [x, y] = reps[a];
    arrows[a] = {point_unit[y], point_unit[x], pair_arrow[y * n + x]};
  }
  std::vector<ArrowId> unit_arrows;
  for (std::size_t m : unit_min_point) unit_arrows.push_back(pair_arrow[m * n + m]);

  // ⟨a|g,g2⟩ = #{t : (x,t) ∈ g, (t,y) ∈ g2} at the representative (x,y) of a.
  std::vector<std::vector<std::pair<ArrowId, std::uint64_t>>> counts(arrow_count * arrow_count);
  std::vector<std::uint64_t> tally(arrow_count * arrow_count, 0);
  std::vector<std::size_t> touched;
  for (ArrowId a = 0; a < arrow_count; ++a) {
    const auto [x, y] = reps[a];
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t key = pair_arrow[x * n + t] * arrow_count + pair_arrow[t * n + y];
      if (tally[key]++ == 0) touched.push_back(key);
    }
    for (std::size_t key : touched) {
      counts[key].emplace_back(a, tally[key]);
      tally[key] = 0;
    }
    touched.clear();
  }
  std::vector<std::vector<ArrowId>> comp(arrow_count * arrow_count);
  for (std::size_t key = 0; key < counts.size(); ++key)
    for (const auto& [a, c] : counts[key]) comp[key].push_back(a);

  ConcreteRealization real(action, Hypergroupoid(unit_min_point.size(), std::move(arrows), std::move(unit_arrows),
                                                 std::move(comp)));
  real.point_unit_ = std::move(point_unit);
  real.unit_sizes_ = std::move(unit_sizes);
  real.pair_arrow_ = std::move(pair_arrow);
  real.representatives_ = std::move(reps);
  real.orbit_sizes_ = std::move(orbit_sizes);
  real.counts_ = std::move(counts);
  return real;
}

/// ⟨a|g,g2⟩ counted at an explicit pair (x, y) of a.
inline std::uint64_t count_mu_at(const ConcreteRealization& real, ArrowId g, ArrowId g2, std::size_t x, std::size_t y) {
  std::uint64_t count = 0;
  for (std::size_t t = 0; t < real.point_count(); ++t)
    if (real.arrow_of(x, t) == g && real.arrow_of(t, y) == g2) ++count;
  return count;
}

/// ⟨a|g,g2⟩ = #{t | x g t and t g2 y} for the representative (x, y) of a.
/// Zero when a is not in comp(g, g2).
inline std::uint64_t count_mu(const ConcreteRealization& real, ArrowId a, ArrowId g, ArrowId g2) {
  const auto [x, y] = real.representative(a);
  const std::uint64_t count = count_mu_at(real, g, g2, x, y);
#ifndef NDEBUG
  if (!real.action().generators.empty()) {
    const Perm& s = real.action().generators.front();
    assert(count_mu_at(real, g, g2, s[x], s[y]) == count && "structure constant depends on the representative");
  }
#endif
  return count;
}

/// The full structure-constant table of the realization.
inline WeightedHypergroupoid weights(const ConcreteRealization& real) {
  const std::size_t n = real.arrow_count();
  std::vector<std::vector<Term>> products(n * n);
  for (ArrowId g = 0; g < n; ++g)
    for (ArrowId g2 = 0; g2 < n; ++g2)
      for (const auto& [a, c] : real.counted_products(g, g2)) products[g * n + g2].push_back({a, ExtNat(c)});
  return WeightedHypergroupoid(real.hypergroupoid(), std::move(products));
}

}  // namespace hyperq
