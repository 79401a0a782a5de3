#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ext_nat.hpp"
#include "hypergroupoid.hpp"

namespace hyperq {

/// One summand ⟨arrow|g,g'⟩ [arrow] of a product [g][g'].
struct Term {
  ArrowId arrow = 0;
  ExtNat coefficient;
  friend bool operator==(const Term&, const Term&) = default;
};

/// A hypergroupoid with structure constants ⟨a|g,g'⟩ for every a in comp(g, g').
/// The weights are derived from the table:
///   left(g)  = |g|_l = ⟨1_src(g) | g*, g⟩
///   right(g) = |g|_r = ⟨1_tgt(g) | g, g*⟩
class WeightedHypergroupoid {
public:
  /// `products[g * arrow_count + g2]` lists ⟨a|g,g2⟩ for exactly the arrows of comp(g, g2).
  WeightedHypergroupoid(Hypergroupoid base, std::vector<std::vector<Term>> products)
      : base_(std::move(base)), products_(std::move(products)) {
    const std::size_t n = base_.arrow_count();
    if (products_.size() != n * n) throw std::invalid_argument("WeightedHypergroupoid: product table has wrong size");
    for (ArrowId g = 0; g < n; ++g) {
      for (ArrowId g2 = 0; g2 < n; ++g2) {
        auto& terms = products_[g * n + g2];
        std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.arrow < y.arrow; });
        const auto comp = base_.comp(g, g2);
        const bool same = terms.size() == comp.size() &&
                          std::equal(terms.begin(), terms.end(), comp.begin(),
                                     [](const Term& t, ArrowId a) { return t.arrow == a; });
        if (!same)
          throw std::invalid_argument("WeightedHypergroupoid: structure constants must be given exactly on comp(a" +
                                      std::to_string(g) + ", a" + std::to_string(g2) + ")");
      }
    }
    left_.resize(n);
    right_.resize(n);
    for (ArrowId g = 0; g < n; ++g) {
      left_[g] = mu(base_.unit_arrow(base_.src(g)), base_.star(g), g);
      right_[g] = mu(base_.unit_arrow(base_.tgt(g)), g, base_.star(g));
    }
  }

  const Hypergroupoid& base() const { return base_; }
  std::size_t arrow_count() const { return base_.arrow_count(); }

  std::span<const Term> products(ArrowId g, ArrowId g2) const { return products_.at(g * arrow_count() + g2); }

  /// ⟨a|g,g2⟩, zero when a is not in comp(g, g2).
  ExtNat mu(ArrowId a, ArrowId g, ArrowId g2) const {
    for (const Term& t : products(g, g2))
      if (t.arrow == a) return t.coefficient;
    return ExtNat(0);
  }

  ExtNat left(ArrowId g) const { return left_.at(g); }
  ExtNat right(ArrowId g) const { return right_.at(g); }

  WeightedHypergroupoid with_mu(ArrowId a, ArrowId g, ArrowId g2, ExtNat value) const {
    auto products = products_;
    for (Term& t : products.at(g * arrow_count() + g2))
      if (t.arrow == a) t.coefficient = value;
    return WeightedHypergroupoid(base_, std::move(products));
  }

private:
  Hypergroupoid base_;
  std::vector<std::vector<Term>> products_;
  std::vector<ExtNat> left_;
  std::vector<ExtNat> right_;
};

struct WeightFailure {
  /// "left-transfer", "right-transfer", "sum", "star-weight" or "star-mu".
  std::string identity;
  std::optional<ArrowId> a;
  ArrowId g = 0;
  ArrowId g2 = 0;
  ExtNat lhs;
  ExtNat rhs;
};

struct WeightReport {
  std::uint64_t checked = 0;
  std::vector<WeightFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// Verifies, in extended-natural arithmetic, for composable (g, g2) and a in g g2:
///   left-transfer:  ⟨a|g,g2⟩ |a|_l = ⟨g2|g*,a⟩ |g2|_l
///   right-transfer: ⟨a|g,g2⟩ |a|_r = ⟨g|a,g2*⟩ |g|_r
///   sum:            |g|_l |g2|_l = Σ_{a ∈ g g2} ⟨a|g,g2⟩ |a|_l
/// plus |g*|_l = |g|_r and ⟨a|g,g2⟩ = ⟨a*|g2*,g*⟩.
inline WeightReport validate_weights(const WeightedHypergroupoid& w) {
  const Hypergroupoid& h = w.base();
  const std::size_t n = h.arrow_count();
  WeightReport rep;
  auto check = [&](bool ok, const char* identity, std::optional<ArrowId> a, ArrowId g, ArrowId g2, ExtNat lhs,
                   ExtNat rhs) {
    ++rep.checked;
    if (!ok) rep.failures.push_back({identity, a, g, g2, lhs, rhs});
  };

  for (ArrowId g = 0; g < n; ++g) {
    const ExtNat l = w.left(h.star(g)), r = w.right(g);
    check(l == r, "star-weight", std::nullopt, g, g, l, r);
  }
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId g2 = 0; g2 < n; ++g2) {
      if (!h.composable(g, g2)) continue;
      ExtNat sum(0);
      for (const Term& t : w.products(g, g2)) {
        const ArrowId a = t.arrow;
        const ExtNat m = t.coefficient;
        const ExtNat l1 = m * w.left(a), r1 = w.mu(g2, h.star(g), a) * w.left(g2);
        check(l1 == r1, "left-transfer", a, g, g2, l1, r1);
        const ExtNat l2 = m * w.right(a), r2 = w.mu(g, a, h.star(g2)) * w.right(g);
        check(l2 == r2, "right-transfer", a, g, g2, l2, r2);
        const ExtNat m_star = w.mu(h.star(a), h.star(g2), h.star(g));
        check(m == m_star, "star-mu", a, g, g2, m, m_star);
        sum += m * w.left(a);
      }
      const ExtNat product = w.left(g) * w.left(g2);
      check(product == sum, "sum", std::nullopt, g, g2, product, sum);
    }
  }
  return rep;
}

/// Every |g|_l is finite and every composite is finite. Composites are finite
/// lists here, so this reduces to the weights.
inline bool is_locally_finite(const WeightedHypergroupoid& w) {
  for (ArrowId g = 0; g < w.arrow_count(); ++g)
    if (w.left(g).is_infinite()) return false;
  return true;
}

}  // namespace hyperq
