#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ext_nat.hpp"
#include "hypergroupoid.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "weighted.hpp"

namespace hyperq {

/// Finitely supported combination Σ c_g [g]. Zero coefficients are never stored.
template <class Coef>
class BasicElement {
public:
  BasicElement() = default;

  static BasicElement basis(ArrowId g, Coef c = Coef(1)) {
    BasicElement e;
    e.add(g, std::move(c));
    return e;
  }

  void add(ArrowId g, const Coef& c) {
    if (c == Coef(0)) return;
    auto [it, inserted] = terms_.emplace(g, c);
    if (inserted) return;
    it->second += c;
    if (it->second == Coef(0)) terms_.erase(it);
  }

  Coef coefficient(ArrowId g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Coef(0) : it->second;
  }

  const std::map<ArrowId, Coef>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend BasicElement operator+(BasicElement a, const BasicElement& b) {
    for (const auto& [g, c] : b.terms_) a.add(g, c);
    return a;
  }
  friend BasicElement operator-(BasicElement a, const BasicElement& b) {
    for (const auto& [g, c] : b.terms_) a.add(g, -c);
    return a;
  }
  friend BasicElement operator*(const Coef& s, const BasicElement& a) {
    BasicElement out;
    for (const auto& [g, c] : a.terms_) out.add(g, s * c);
    return out;
  }
  friend bool operator==(const BasicElement&, const BasicElement&) = default;

private:
  std::map<ArrowId, Coef> terms_;
};

using AlgebraElement = BasicElement<Rational>;
using ComplexElement = BasicElement<std::complex<double>>;

namespace detail {

template <class Coef>
Coef coefficient_from(std::uint64_t n) {
  if constexpr (std::is_same_v<Coef, std::complex<double>>)
    return Coef(static_cast<double>(n), 0.0);
  else
    return Coef(n);
}

inline std::uint64_t finite_mu(const Term& t, ArrowId g, ArrowId g2) {
  if (t.coefficient.is_infinite())
    throw InfiniteCoefficient("structure constant <a" + std::to_string(t.arrow) + "|a" + std::to_string(g) + ",a" +
                              std::to_string(g2) + "> is infinite");
  return t.coefficient.value();
}

}  // namespace detail

/// Bilinear extension of [g][g2] = Σ_{a ∈ g g2} ⟨a|g,g2⟩ [a].
template <class Coef>
BasicElement<Coef> mul(const WeightedHypergroupoid& w, const BasicElement<Coef>& u, const BasicElement<Coef>& v) {
  BasicElement<Coef> out;
  for (const auto& [g, c] : u.terms())
    for (const auto& [g2, d] : v.terms())
      for (const Term& t : w.products(g, g2))
        out.add(t.arrow, c * d * detail::coefficient_from<Coef>(detail::finite_mu(t, g, g2)));
  return out;
}

/// χ(g) = |g|_l / |g|_r.
inline Rational chi(const WeightedHypergroupoid& w, ArrowId g) {
  const ExtNat l = w.left(g), r = w.right(g);
  if (l.is_infinite() || r.is_infinite())
    throw InfiniteCoefficient("chi: weight of a" + std::to_string(g) + " is infinite");
  if (l.is_zero() || r.is_zero()) throw ZeroWeight("chi: weight of a" + std::to_string(g) + " is zero");
  return Rational(l.value()) / Rational(r.value());
}

/// [g]* = χ(g) [g*], extended linearly (coefficients are real).
inline AlgebraElement star(const WeightedHypergroupoid& w, const AlgebraElement& u) {
  AlgebraElement out;
  for (const auto& [g, c] : u.terms()) out.add(w.base().star(g), c * chi(w, g));
  return out;
}

/// e_g = [g] / |g|_l.
inline AlgebraElement e_basis(const WeightedHypergroupoid& w, ArrowId g) {
  const ExtNat l = w.left(g);
  if (l.is_infinite()) throw InfiniteCoefficient("e_basis: |a" + std::to_string(g) + "|_l is infinite");
  if (l.is_zero()) throw ZeroWeight("e_basis: |a" + std::to_string(g) + "|_l is zero");
  return AlgebraElement::basis(g, Rational(1) / Rational(l.value()));
}

/// Evolution at imaginary time: [g] ↦ χ(g)^{-1} [g], exactly.
inline AlgebraElement sigma_imag(const WeightedHypergroupoid& w, const AlgebraElement& u) {
  AlgebraElement out;
  for (const auto& [g, c] : u.terms()) out.add(g, c / chi(w, g));
  return out;
}

/// σ_t([g]) = χ(g)^{it} [g], in double precision.
inline ComplexElement sigma(const WeightedHypergroupoid& w, double t, const AlgebraElement& u) {
  ComplexElement out;
  for (const auto& [g, c] : u.terms()) {
    const double log_chi = std::log(static_cast<double>(chi(w, g)));
    out.add(g, static_cast<double>(c) * std::polar(1.0, t * log_chi));
  }
  return out;
}

/// Real-coefficient element as a complex one.
inline ComplexElement to_complex(const AlgebraElement& u) {
  ComplexElement out;
  for (const auto& [g, c] : u.terms()) out.add(g, std::complex<double>(static_cast<double>(c), 0.0));
  return out;
}

/// Sum of the coefficients at unit arrows.
inline Rational eta(const WeightedHypergroupoid& w, const AlgebraElement& u) {
  Rational total(0);
  for (const auto& [g, c] : u.terms())
    if (w.base().is_unit_arrow(g)) total += c;
  return total;
}

struct KmsFailure {
  ArrowId q = 0;
  ArrowId q2 = 0;
  Rational lhs;
  Rational rhs;
};

struct KmsReport {
  std::uint64_t pairs_checked = 0;
  std::vector<KmsFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// η([q] σ_i([q2])) = η([q2][q]) for every pair of arrows, exactly.
inline KmsReport kms_check(const WeightedHypergroupoid& w) {
  const std::size_t n = w.arrow_count();
  const std::size_t chunks = std::max<std::size_t>(1, std::min(n, detail::worker_count()));
  std::vector<std::vector<KmsFailure>> found(chunks);
  detail::for_each_chunk(n, chunks, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    for (ArrowId q = begin; q < end; ++q) {
      const auto bq = AlgebraElement::basis(q);
      for (ArrowId q2 = 0; q2 < n; ++q2) {
        const auto bq2 = AlgebraElement::basis(q2);
        const Rational lhs = eta(w, mul(w, bq, sigma_imag(w, bq2)));
        const Rational rhs = eta(w, mul(w, bq2, bq));
        if (lhs != rhs) found[chunk].push_back({q, q2, lhs, rhs});
      }
    }
  });
  KmsReport rep;
  rep.pairs_checked = n * n;
  for (auto& f : found) rep.failures.insert(rep.failures.end(), f.begin(), f.end());
  return rep;
}

/// Arrow-indexed function into the extended naturals; absent means 0.
using ExtFunction = std::map<ArrowId, ExtNat>;

/// (f ∗ h)(a) = Σ_{g,g2} f(g) h(g2) ⟨a|g,g2⟩ with 0·∞ = 0. Zero values are omitted.
inline ExtFunction convolve_ext(const WeightedHypergroupoid& w, const ExtFunction& f, const ExtFunction& h) {
  ExtFunction out;
  for (const auto& [g, fg] : f)
    for (const auto& [g2, hg2] : h)
      for (const Term& t : w.products(g, g2)) {
        const ExtNat v = fg * hg2 * t.coefficient;
        if (!v.is_zero()) out[t.arrow] += v;
      }
  return out;
}

/// sup over simple (x, y) with comp(x, y*) = {a} of |comp(g*, x) ∩ comp(g2, y)|.
/// Finite tables give a finite supremum.
inline ExtNat mu_semisimple(const Hypergroupoid& h, ArrowId a, ArrowId g, ArrowId g2) {
  const auto ss = is_semisimple(h);
  if (!ss.holds)
    throw NotSemisimple("mu_semisimple: a" + std::to_string(ss.first_failure.value_or(0)) +
                        " has no factorization through simple arrows");
  std::vector<ArrowId> simple;
  for (ArrowId x = 0; x < h.arrow_count(); ++x)
    if (is_simple(h, x)) simple.push_back(x);
  std::uint64_t best = 0;
  for (ArrowId x : simple) {
    if (h.tgt(x) != h.tgt(a)) continue;
    for (ArrowId y : simple) {
      const auto xy = h.comp(x, h.star(y));
      if (xy.size() != 1 || xy.front() != a) continue;
      const std::uint64_t overlap = (h.comp_set(h.star(g), x) & h.comp_set(g2, y)).count();
      best = std::max(best, overlap);
    }
  }
  return ExtNat(best);
}

struct LeftFiniteWitness {
  ArrowId u = 0;
  std::vector<ArrowId> image;
  /// |g|_l equals the size of comp(g, u).
  bool weight_matches = false;
};

/// A simple u into src(g) such that comp(g, u) consists of simple arrows.
/// The identity at src(g) is tried first, then arrows in id order.
inline std::optional<LeftFiniteWitness> left_finite_witness(const WeightedHypergroupoid& w, ArrowId g) {
  const Hypergroupoid& h = w.base();
  std::vector<ArrowId> order{h.unit_arrow(h.src(g))};
  for (ArrowId u = 0; u < h.arrow_count(); ++u)
    if (u != order.front()) order.push_back(u);
  for (ArrowId u : order) {
    if (h.tgt(u) != h.src(g) || !is_simple(h, u)) continue;
    const auto image = h.comp(g, u);
    bool all_simple = true;
    for (ArrowId a : image) all_simple = all_simple && is_simple(h, a);
    if (!all_simple) continue;
    LeftFiniteWitness wit{u, std::vector<ArrowId>(image.begin(), image.end()), false};
    wit.weight_matches = w.left(g) == ExtNat(image.size());
    return wit;
  }
  return std::nullopt;
}

}  // namespace hyperq
