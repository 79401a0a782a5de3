#pragma once

// Hypergroupoids: units, arrows with source/target/involution, and a
// set-valued composition.
//
// Composition convention: comp(b, a) is "a, then b", defined when
// src(b) == tgt(a); it is the relation composite {(x, y) | x b z, z a y}.
// Non-composable pairs compose to the empty set.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "axiom_report.hpp"
#include "errors.hpp"
#include "quantale.hpp"

namespace hyperq {

using UnitId = std::size_t;
using ArrowId = std::size_t;

struct ArrowInfo {
  UnitId src = 0;
  UnitId tgt = 0;
  ArrowId star = 0;
  friend bool operator==(const ArrowInfo&, const ArrowInfo&) = default;
};

class Hypergroupoid {
public:
  /// `comp[b * arrow_count + a]` lists comp(b, a).
  Hypergroupoid(std::size_t unit_count, std::vector<ArrowInfo> arrows, std::vector<ArrowId> unit_arrows,
                std::vector<std::vector<ArrowId>> comp)
      : unit_count_(unit_count), arrows_(std::move(arrows)), unit_arrows_(std::move(unit_arrows)), comp_(std::move(comp)) {
    const std::size_t n = arrows_.size();
    if (unit_count_ == 0) throw std::invalid_argument("Hypergroupoid: no units");
    if (unit_arrows_.size() != unit_count_) throw std::invalid_argument("Hypergroupoid: one identity arrow per unit required");
    if (comp_.size() != n * n) throw std::invalid_argument("Hypergroupoid: composition table has wrong size");
    for (ArrowId g = 0; g < n; ++g) {
      const ArrowInfo& a = arrows_[g];
      if (a.src >= unit_count_ || a.tgt >= unit_count_) throw std::invalid_argument("Hypergroupoid: unit id out of range");
      if (a.star >= n || arrows_[a.star].star != g) throw std::invalid_argument("Hypergroupoid: star is not an involution");
      if (arrows_[a.star].src != a.tgt || arrows_[a.star].tgt != a.src)
        throw std::invalid_argument("Hypergroupoid: star must exchange source and target");
    }
    is_unit_.assign(n, false);
    for (UnitId e = 0; e < unit_count_; ++e) {
      const ArrowId u = unit_arrows_[e];
      if (u >= n || arrows_[u].src != e || arrows_[u].tgt != e || arrows_[u].star != u || is_unit_[u])
        throw std::invalid_argument("Hypergroupoid: bad identity arrow for unit " + std::to_string(e));
      is_unit_[u] = true;
    }
    comp_sets_.reserve(n * n);
    for (ArrowId b = 0; b < n; ++b) {
      for (ArrowId a = 0; a < n; ++a) {
        auto& c = comp_[b * n + a];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        const bool composable = arrows_[b].src == arrows_[a].tgt;
        if (!composable && !c.empty())
          throw std::invalid_argument("Hypergroupoid: non-composable pair with non-empty composite");
        if (composable && c.empty()) throw std::invalid_argument("Hypergroupoid: empty composite of a composable pair");
        for (ArrowId r : c) {
          if (r >= n || arrows_[r].src != arrows_[a].src || arrows_[r].tgt != arrows_[b].tgt)
            throw std::invalid_argument("Hypergroupoid: composite arrow has the wrong source or target");
        }
        comp_sets_.push_back(QElement::from_atoms(n, c));
      }
    }
  }

  std::size_t unit_count() const { return unit_count_; }
  std::size_t arrow_count() const { return arrows_.size(); }
  const ArrowInfo& arrow(ArrowId g) const { return arrows_.at(g); }
  UnitId src(ArrowId g) const { return arrows_.at(g).src; }
  UnitId tgt(ArrowId g) const { return arrows_.at(g).tgt; }
  ArrowId star(ArrowId g) const { return arrows_.at(g).star; }
  ArrowId unit_arrow(UnitId e) const { return unit_arrows_.at(e); }
  bool is_unit_arrow(ArrowId g) const { return is_unit_.at(g); }
  bool composable(ArrowId b, ArrowId a) const { return src(b) == tgt(a); }

  std::span<const ArrowId> comp(ArrowId b, ArrowId a) const { return comp_.at(b * arrow_count() + a); }
  /// comp(b, a) as a subset of the arrow set.
  const QElement& comp_set(ArrowId b, ArrowId a) const { return comp_sets_.at(b * arrow_count() + a); }

  const std::vector<ArrowInfo>& arrows() const { return arrows_; }
  const std::vector<ArrowId>& unit_arrows() const { return unit_arrows_; }

  friend bool operator==(const Hypergroupoid& x, const Hypergroupoid& y) {
    return x.unit_count_ == y.unit_count_ && x.arrows_ == y.arrows_ && x.unit_arrows_ == y.unit_arrows_ &&
           x.comp_ == y.comp_;
  }

private:
  std::size_t unit_count_;
  std::vector<ArrowInfo> arrows_;
  std::vector<ArrowId> unit_arrows_;
  std::vector<std::vector<ArrowId>> comp_;
  std::vector<QElement> comp_sets_;
  std::vector<bool> is_unit_;
};

/// Copy of `h` with one composite replaced; used to build mutated tables.
inline Hypergroupoid with_comp(const Hypergroupoid& h, ArrowId b, ArrowId a, std::vector<ArrowId> value) {
  const std::size_t n = h.arrow_count();
  std::vector<std::vector<ArrowId>> comp(n * n);
  for (ArrowId x = 0; x < n; ++x)
    for (ArrowId y = 0; y < n; ++y) {
      auto c = h.comp(x, y);
      comp[x * n + y].assign(c.begin(), c.end());
    }
  comp.at(b * n + a) = std::move(value);
  return Hypergroupoid(h.unit_count(), h.arrows(), h.unit_arrows(), std::move(comp));
}

namespace detail {

inline std::string arrow_name(ArrowId g) { return "a" + std::to_string(g); }

inline std::string arrow_set_name(const QElement& s) {
  std::string out = "{";
  bool first = true;
  s.for_each_atom([&](AtomId a) {
    if (!first) out += ",";
    out += arrow_name(a);
    first = false;
  });
  return out + "}";
}

}  // namespace detail

/// Checks (HG1) identities, (HG2) associativity of set-valued composition and
/// (HG3) reversibility over every composable triple.
inline AxiomReport check_hg_axioms(const Hypergroupoid& h) {
  using detail::arrow_name;
  AxiomReport rep;
  rep.results.push_back({"HG1", "1_e x = {x} = x 1_e, and 1_e is the only such arrow", true, false, {}});
  rep.results.push_back({"HG2", "(x y) z = x (y z)", true, false, {}});
  rep.results.push_back({"HG3", "x in y z implies z in y* x and y in x z*", true, false, {}});
  auto fail = [&](std::size_t idx, std::vector<std::string> witness) {
    if (!rep.results[idx].passed) return;
    rep.results[idx].passed = false;
    rep.results[idx].witness = std::move(witness);
  };

  const std::size_t n = h.arrow_count();
  for (UnitId e = 0; e < h.unit_count(); ++e) {
    const ArrowId one = h.unit_arrow(e);
    for (ArrowId x = 0; x < n; ++x) {
      if (h.tgt(x) == e && (h.comp(one, x).size() != 1 || h.comp(one, x)[0] != x))
        fail(0, {arrow_name(one), arrow_name(x)});
      if (h.src(x) == e && (h.comp(x, one).size() != 1 || h.comp(x, one)[0] != x))
        fail(0, {arrow_name(x), arrow_name(one)});
    }
    // Any other loop at e acting as an identity would contradict uniqueness.
    for (ArrowId u = 0; u < n; ++u) {
      if (u == one || h.src(u) != e || h.tgt(u) != e) continue;
      bool acts_as_identity = true;
      for (ArrowId x = 0; x < n && acts_as_identity; ++x) {
        if (h.tgt(x) == e && !(h.comp(u, x).size() == 1 && h.comp(u, x)[0] == x)) acts_as_identity = false;
        if (h.src(x) == e && !(h.comp(x, u).size() == 1 && h.comp(x, u)[0] == x)) acts_as_identity = false;
      }
      if (acts_as_identity) fail(0, {arrow_name(u)});
    }
  }

  std::uint64_t cases = 0;
  for (ArrowId x = 0; x < n; ++x) {
    for (ArrowId y = 0; y < n; ++y) {
      if (!h.composable(x, y)) continue;
      for (ArrowId z = 0; z < n; ++z) {
        if (!h.composable(y, z)) continue;
        ++cases;
        QElement left(n), right(n);
        for (ArrowId c : h.comp(x, y)) left |= h.comp_set(c, z);
        for (ArrowId d : h.comp(y, z)) right |= h.comp_set(x, d);
        if (left != right) fail(1, {arrow_name(x), arrow_name(y), arrow_name(z)});
      }
      for (ArrowId r : h.comp(x, y)) {
        if (!h.comp_set(h.star(x), r).contains(y) || !h.comp_set(r, h.star(y)).contains(x))
          fail(2, {arrow_name(r), arrow_name(x), arrow_name(y)});
      }
    }
  }
  rep.cases_checked = cases;
  return rep;
}

/// The hypergroupoid of atoms of an atomic modular quantale. Units are the
/// unit atoms in id order; arrows keep their atom ids. Throws NotModular when
/// the table cannot come from a modular quantale.
inline Hypergroupoid from_quantale(const AtomicQuantale& q) {
  const std::size_t n = q.atom_count();
  const std::vector<AtomId> unit_atoms = q.unit_atoms();
  std::vector<std::optional<UnitId>> unit_of(n);
  for (UnitId e = 0; e < unit_atoms.size(); ++e) unit_of[unit_atoms[e]] = e;

  std::vector<ArrowInfo> arrows(n);
  for (AtomId g = 0; g < n; ++g) {
    const auto src = q.right_unit(g);
    const auto tgt = q.left_unit(g);
    if (!src || !tgt) throw NotModular("from_quantale: atom " + std::to_string(g) + " has no unique source/target unit");
    arrows[g] = {*unit_of[*src], *unit_of[*tgt], q.atom_star(g)};
  }
  for (UnitId e = 0; e < unit_atoms.size(); ++e)
    if (q.atom_star(unit_atoms[e]) != unit_atoms[e]) throw NotModular("from_quantale: unit atom is not self-adjoint");

  std::vector<std::vector<ArrowId>> comp(n * n);
  for (AtomId b = 0; b < n; ++b) {
    for (AtomId a = 0; a < n; ++a) {
      const QElement& p = q.atom_product(b, a);
      const bool composable = arrows[b].src == arrows[a].tgt;
      if (composable == p.empty())
        throw NotModular("from_quantale: product of atoms " + std::to_string(b) + "," + std::to_string(a) +
                         (composable ? " is empty" : " is non-empty but they are not composable"));
      p.for_each_atom([&](AtomId c) {
        if (arrows[c].src != arrows[a].src || arrows[c].tgt != arrows[b].tgt)
          throw NotModular("from_quantale: product lands outside the expected hom-set");
        comp[b * n + a].push_back(c);
      });
    }
  }
  return Hypergroupoid(unit_atoms.size(), std::move(arrows), unit_atoms, std::move(comp));
}

/// P(arrows) with the union-bilinear extension of composition.
inline AtomicQuantale to_quantale(const Hypergroupoid& h) {
  const std::size_t n = h.arrow_count();
  std::vector<QElement> products;
  products.reserve(n * n);
  for (ArrowId u = 0; u < n; ++u)
    for (ArrowId v = 0; v < n; ++v) products.push_back(h.comp_set(u, v));
  std::vector<AtomId> star(n);
  for (ArrowId g = 0; g < n; ++g) star[g] = h.star(g);
  return AtomicQuantale(n, std::move(products), std::move(star),
                        QElement::from_atoms(n, std::span<const AtomId>(h.unit_arrows())));
}

/// g is simple when g g* is exactly the identity of its target.
inline bool is_simple(const Hypergroupoid& h, ArrowId g) {
  const auto c = h.comp(g, h.star(g));
  return c.size() == 1 && c[0] == h.unit_arrow(h.tgt(g));
}

/// Every arrow g is the single element of comp(u, v*) for simple u, v. The
/// witness is the first (u, v) in id order.
inline FactorizationResult is_semisimple(const Hypergroupoid& h) {
  const std::size_t n = h.arrow_count();
  std::vector<ArrowId> simple;
  for (ArrowId g = 0; g < n; ++g)
    if (is_simple(h, g)) simple.push_back(g);

  FactorizationResult res;
  res.witness.resize(n);
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId u : simple) {
      if (h.tgt(u) != h.tgt(g)) continue;
      for (ArrowId v : simple) {
        if (h.src(v) != h.src(u) || h.tgt(v) != h.src(g)) continue;
        const auto c = h.comp(u, h.star(v));
        if (c.size() == 1 && c[0] == g) {
          res.witness[g] = std::pair{u, v};
          break;
        }
      }
      if (res.witness[g]) break;
    }
    if (!res.witness[g]) {
      res.holds = false;
      if (!res.first_failure) res.first_failure = g;
    }
  }
  return res;
}

/// A candidate morphism: a map on units and a map on arrows.
struct HypergroupoidMap {
  std::vector<UnitId> units;
  std::vector<ArrowId> arrows;
};

struct MorphismReport {
  bool holds = true;
  /// f(g*) = f(g)* for every g. Reported separately; it is a consequence of
  /// the morphism axioms, not one of them.
  bool star_preserved = true;
  std::string failure;
};

/// Checks f(1_e) = 1_{f(e)}, typing, and f(x y) ⊆ f(x) f(y) on composable pairs.
inline MorphismReport check_morphism(const Hypergroupoid& from, const Hypergroupoid& to, const HypergroupoidMap& f) {
  MorphismReport rep;
  auto fail = [&](std::string why) {
    if (rep.holds) rep.failure = std::move(why);
    rep.holds = false;
  };
  if (f.units.size() != from.unit_count() || f.arrows.size() != from.arrow_count()) {
    fail("map has the wrong size");
    return rep;
  }
  for (UnitId u : f.units)
    if (u >= to.unit_count()) fail("unit image out of range");
  for (ArrowId g : f.arrows)
    if (g >= to.arrow_count()) fail("arrow image out of range");
  if (!rep.holds) return rep;

  for (UnitId e = 0; e < from.unit_count(); ++e)
    if (f.arrows[from.unit_arrow(e)] != to.unit_arrow(f.units[e])) fail("identity of unit " + std::to_string(e) + " not preserved");
  for (ArrowId g = 0; g < from.arrow_count(); ++g) {
    if (to.src(f.arrows[g]) != f.units[from.src(g)] || to.tgt(f.arrows[g]) != f.units[from.tgt(g)])
      fail("arrow " + detail::arrow_name(g) + " mapped outside its hom-set");
    if (f.arrows[from.star(g)] != to.star(f.arrows[g])) rep.star_preserved = false;
  }
  if (!rep.holds) return rep;

  for (ArrowId b = 0; b < from.arrow_count(); ++b) {
    for (ArrowId a = 0; a < from.arrow_count(); ++a) {
      const QElement& target = to.comp_set(f.arrows[b], f.arrows[a]);
      for (ArrowId c : from.comp(b, a)) {
        if (!target.contains(f.arrows[c]))
          fail("f(" + detail::arrow_name(b) + " " + detail::arrow_name(a) + ") not contained in f(" +
               detail::arrow_name(b) + ") f(" + detail::arrow_name(a) + ")");
      }
    }
  }
  return rep;
}

}  // namespace hyperq
