#pragma once

// Finite atomic modular quantales P(X): elements are subsets of the atom set,
// the product is the union-bilinear extension of an atom product table.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "axiom_report.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace hyperq {

using AtomId = std::size_t;

/// An element of an atomic quantale: a subset of atoms. Order is inclusion,
/// join is union and meet is intersection.
class QElement {
public:
  QElement() = default;
  explicit QElement(std::size_t atom_count) : bits_(atom_count) {}

  static QElement from_atoms(std::size_t atom_count, std::span<const AtomId> atoms) {
    QElement e(atom_count);
    for (AtomId a : atoms) e.insert(a);
    return e;
  }
  static QElement from_atoms(std::size_t atom_count, std::initializer_list<AtomId> atoms) {
    return from_atoms(atom_count, std::span<const AtomId>(atoms.begin(), atoms.size()));
  }
  static QElement from_mask(std::size_t atom_count, std::uint64_t mask) {
    QElement e(atom_count);
    for (std::size_t i = 0; i < atom_count && i < 64; ++i)
      if ((mask >> i) & 1u) e.bits_.set(i);
    return e;
  }
  static QElement full(std::size_t atom_count) {
    QElement e(atom_count);
    e.bits_.set();
    return e;
  }

  std::size_t atom_count() const { return bits_.size(); }
  bool contains(AtomId a) const { return a < bits_.size() && bits_.test(a); }
  void insert(AtomId a) {
    if (a >= bits_.size()) throw std::out_of_range("QElement: atom id out of range");
    bits_.set(a);
  }
  void erase(AtomId a) { bits_.reset(a); }
  bool empty() const { return bits_.none(); }
  std::size_t count() const { return bits_.count(); }

  template <class F>
  void for_each_atom(F&& f) const {
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) f(AtomId{i});
  }

  std::vector<AtomId> atoms() const {
    std::vector<AtomId> out;
    out.reserve(count());
    for_each_atom([&](AtomId a) { out.push_back(a); });
    return out;
  }

  /// Only meaningful for at most 64 atoms.
  std::uint64_t to_mask() const {
    std::uint64_t m = 0;
    for_each_atom([&](AtomId a) {
      if (a < 64) m |= std::uint64_t{1} << a;
    });
    return m;
  }

  bool leq(const QElement& o) const { return bits_.is_subset_of(o.bits_); }

  QElement& operator|=(const QElement& o) {
    bits_ |= o.bits_;
    return *this;
  }
  QElement& operator&=(const QElement& o) {
    bits_ &= o.bits_;
    return *this;
  }
  friend QElement operator|(QElement a, const QElement& b) { return a |= b; }
  friend QElement operator&(QElement a, const QElement& b) { return a &= b; }

  friend bool operator==(const QElement& a, const QElement& b) { return a.bits_ == b.bits_; }

  /// Numeric order of the characteristic bit string (atom 0 least significant).
  friend std::strong_ordering operator<=>(const QElement& a, const QElement& b) {
    if (a.bits_.size() != b.bits_.size()) return a.bits_.size() <=> b.bits_.size();
    for (std::size_t i = a.bits_.size(); i-- > 0;) {
      if (a.bits_.test(i) != b.bits_.test(i)) return a.bits_.test(i) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each_atom([&](AtomId a) {
      if (!first) s += ",";
      s += std::to_string(a);
      first = false;
    });
    return s + "}";
  }

private:
  using Bits = boost::dynamic_bitset<std::uint64_t>;
  Bits bits_;
};

/// A finite atomic quantale given by its atom product table, atom involution
/// and the atoms below the unit.
class AtomicQuantale {
public:
  /// `atom_products[a * atom_count + b]` is the product of atoms a and b.
  AtomicQuantale(std::size_t atom_count, std::vector<QElement> atom_products, std::vector<AtomId> atom_star,
                 QElement unit)
      : n_(atom_count), products_(std::move(atom_products)), star_(std::move(atom_star)), unit_(std::move(unit)) {
    if (n_ == 0) throw std::invalid_argument("AtomicQuantale: no atoms");
    if (products_.size() != n_ * n_) throw std::invalid_argument("AtomicQuantale: product table has wrong size");
    for (const auto& p : products_)
      if (p.atom_count() != n_) throw std::invalid_argument("AtomicQuantale: product entry over wrong atom set");
    if (star_.size() != n_) throw std::invalid_argument("AtomicQuantale: star table has wrong size");
    if (unit_.atom_count() != n_) throw std::invalid_argument("AtomicQuantale: unit over wrong atom set");
    for (AtomId a = 0; a < n_; ++a) {
      if (star_[a] >= n_ || star_[star_[a]] != a) throw std::invalid_argument("AtomicQuantale: star is not an involution");
    }
    unit_.for_each_atom([&](AtomId e) {
      if (!unit_.contains(star_[e])) throw std::invalid_argument("AtomicQuantale: unit not closed under star");
    });
  }

  std::size_t atom_count() const { return n_; }
  const QElement& atom_product(AtomId a, AtomId b) const { return products_.at(a * n_ + b); }
  AtomId atom_star(AtomId a) const { return star_.at(a); }
  const QElement& unit() const { return unit_; }
  QElement top() const { return QElement::full(n_); }
  QElement bottom() const { return QElement(n_); }
  QElement atom(AtomId a) const { return QElement::from_atoms(n_, {a}); }
  std::vector<AtomId> unit_atoms() const { return unit_.atoms(); }

  /// The unique unit e with g in e g, if exactly one exists (the target of g).
  std::optional<AtomId> left_unit(AtomId g) const {
    std::optional<AtomId> found;
    bool unique = true;
    unit_.for_each_atom([&](AtomId e) {
      if (atom_product(e, g).contains(g)) {
        if (found) unique = false;
        found = e;
      }
    });
    return unique ? found : std::nullopt;
  }

  /// The unique unit e with g in g e, if exactly one exists (the source of g).
  std::optional<AtomId> right_unit(AtomId g) const {
    std::optional<AtomId> found;
    bool unique = true;
    unit_.for_each_atom([&](AtomId e) {
      if (atom_product(g, e).contains(g)) {
        if (found) unique = false;
        found = e;
      }
    });
    return unique ? found : std::nullopt;
  }

  bool has_unique_units() const {
    for (AtomId g = 0; g < n_; ++g)
      if (!left_unit(g) || !right_unit(g)) return false;
    return true;
  }

  /// Copy with one atom product replaced; used to build mutated tables.
  AtomicQuantale with_atom_product(AtomId a, AtomId b, QElement value) const {
    auto products = products_;
    products.at(a * n_ + b) = std::move(value);
    return AtomicQuantale(n_, std::move(products), star_, unit_);
  }

  friend bool operator==(const AtomicQuantale&, const AtomicQuantale&) = default;

private:
  std::size_t n_;
  std::vector<QElement> products_;
  std::vector<AtomId> star_;
  QElement unit_;
};

inline QElement q_mul(const AtomicQuantale& q, const QElement& a, const QElement& b) {
  QElement r(q.atom_count());
  a.for_each_atom([&](AtomId x) { b.for_each_atom([&](AtomId y) { r |= q.atom_product(x, y); }); });
  return r;
}

inline QElement q_star(const AtomicQuantale& q, const QElement& a) {
  QElement r(q.atom_count());
  a.for_each_atom([&](AtomId x) { r.insert(q.atom_star(x)); });
  return r;
}

struct AxiomCheckMode {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Largest atom count accepted by exhaustive mode.
  std::size_t bound = 9;

  static AxiomCheckMode exhaustive(std::size_t bound = 9) { return {Kind::exhaustive, 0, 0, bound}; }
  static AxiomCheckMode sampled(std::size_t samples, std::uint64_t seed) { return {Kind::sampled, samples, seed, 9}; }
};

namespace detail {

// Indices of the checked axioms inside the report, in report order.
enum QuantaleAxiom : std::size_t { kQ1, kQ2, kQ3, kQ4, kQ5, kQ6, kQ7, kQ8, kQ9, kQuantaleAxiomCount };

inline AxiomReport empty_quantale_report() {
  AxiomReport rep;
  const std::array<std::pair<const char*, const char*>, kQuantaleAxiomCount> names{{
      {"Q1", "inclusion order"},
      {"Q2", "arbitrary joins"},
      {"Q3", "x & (y | z) = (x & y) | (x & z)"},
      {"Q4", "(x y) z = x (y z)"},
      {"Q5", "product preserves joins in each variable"},
      {"Q6", "1 x = x = x 1"},
      {"Q7", "x** = x and star is monotone"},
      {"Q8", "(x y)* = y* x*"},
      {"Q9", "x & y z <= y (y* x & z)"},
  }};
  for (const auto& [axiom, description] : names) rep.results.push_back({axiom, description, true, false, {}});
  rep.results[kQ1].structural = true;
  rep.results[kQ2].structural = true;
  return rep;
}

// Lexicographically first failing tuple per axiom, as element masks.
struct MaskFailures {
  std::array<std::optional<std::vector<std::uint32_t>>, kQuantaleAxiomCount> first;

  void note(std::size_t axiom, std::initializer_list<std::uint32_t> tuple) {
    if (!first[axiom]) first[axiom] = std::vector<std::uint32_t>(tuple);
  }
};

inline AxiomReport check_axioms_exhaustive(const AtomicQuantale& q) {
  const std::size_t n = q.atom_count();
  const std::uint32_t N = std::uint32_t{1} << n;

  std::vector<std::uint32_t> atom_mask(n * n);
  for (AtomId a = 0; a < n; ++a)
    for (AtomId b = 0; b < n; ++b) atom_mask[a * n + b] = static_cast<std::uint32_t>(q.atom_product(a, b).to_mask());

  // row[a][b] for a a single atom, then full table by peeling the lowest atom of the left factor.
  std::vector<std::uint32_t> atom_row(n * N, 0);
  for (AtomId a = 0; a < n; ++a)
    for (std::uint32_t b = 1; b < N; ++b)
      atom_row[a * N + b] = atom_row[a * N + (b & (b - 1))] | atom_mask[a * n + std::countr_zero(b)];
  std::vector<std::uint32_t> mul(std::size_t{N} * N, 0);
  for (std::uint32_t a = 1; a < N; ++a) {
    const std::uint32_t* prev = &mul[std::size_t{a & (a - 1)} * N];
    const std::uint32_t* arow = &atom_row[std::size_t(std::countr_zero(a)) * N];
    std::uint32_t* out = &mul[std::size_t{a} * N];
    for (std::uint32_t b = 0; b < N; ++b) out[b] = prev[b] | arow[b];
  }
  std::vector<std::uint32_t> star(N, 0);
  for (std::uint32_t a = 1; a < N; ++a)
    star[a] = star[a & (a - 1)] | (std::uint32_t{1} << q.atom_star(std::countr_zero(a)));
  const auto unit = static_cast<std::uint32_t>(q.unit().to_mask());

  const std::size_t chunks = worker_count();
  std::vector<MaskFailures> partial(std::max<std::size_t>(1, std::min<std::size_t>(chunks, N)));

  for_each_chunk(N, chunks, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    MaskFailures& f = partial[chunk];
    for (std::uint32_t x = static_cast<std::uint32_t>(begin); x < end; ++x) {
      const std::uint32_t* mx = &mul[std::size_t{x} * N];
      if (mul[std::size_t{unit} * N + x] != x || mx[unit] != x) f.note(kQ6, {x});
      if (star[star[x]] != x) f.note(kQ7, {x});
      if (mx[0] != 0 || mul[x] != 0) f.note(kQ5, {x});
      for (std::uint32_t y = 0; y < N; ++y) {
        const std::uint32_t xy = mx[y];
        if ((x & ~y) == 0 && (star[x] & ~star[y]) != 0) f.note(kQ7, {x, y});
        if (star[xy] != mul[std::size_t{star[y]} * N + star[x]]) f.note(kQ8, {x, y});
        const std::uint32_t* my = &mul[std::size_t{y} * N];
        const std::uint32_t* mxy = &mul[std::size_t{xy} * N];
        const std::uint32_t* mxory = &mul[std::size_t{x | y} * N];
        const std::uint32_t ystar_x = mul[std::size_t{star[y]} * N + x];
        const bool need_q4 = !f.first[kQ4], need_q5 = !f.first[kQ5], need_q9 = !f.first[kQ9], need_q3 = !f.first[kQ3];
        if (!(need_q3 || need_q4 || need_q5 || need_q9)) continue;
        for (std::uint32_t z = 0; z < N; ++z) {
          if (need_q3 && (x & (y | z)) != ((x & y) | (x & z))) {
            f.note(kQ3, {x, y, z});
          }
          if (need_q4 && mxy[z] != mx[my[z]]) {
            f.note(kQ4, {x, y, z});
          }
          if (need_q5 && (mx[y | z] != (mx[y] | mx[z]) || mxory[z] != (mx[z] | my[z]))) {
            f.note(kQ5, {x, y, z});
          }
          if (need_q9 && (x & my[z] & ~my[ystar_x & z]) != 0) {
            f.note(kQ9, {x, y, z});
          }
        }
      }
    }
  });

  AxiomReport rep = empty_quantale_report();
  rep.cases_checked = std::uint64_t{N} * N * N;
  for (std::size_t ax = 0; ax < kQuantaleAxiomCount; ++ax) {
    for (const auto& f : partial) {
      if (!f.first[ax]) continue;
      rep.results[ax].passed = false;
      for (std::uint32_t m : *f.first[ax]) rep.results[ax].witness.push_back(QElement::from_mask(n, m).to_string());
      break;
    }
  }
  return rep;
}

inline QElement random_element(std::size_t n, std::mt19937_64& rng) {
  QElement e(n);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) bits = rng();
    if ((bits >> (i % 64)) & 1u) e.insert(i);
  }
  return e;
}

inline AxiomReport check_axioms_sampled(const AtomicQuantale& q, std::size_t samples, std::uint64_t seed) {
  AxiomReport rep = empty_quantale_report();
  rep.cases_checked = samples;
  const std::size_t n = q.atom_count();
  std::mt19937_64 rng(seed);
  const QElement one = q.unit();
  const QElement bottom = q.bottom();
  auto fail = [&](std::size_t axiom, std::initializer_list<const QElement*> tuple) {
    auto& r = rep.results[axiom];
    if (!r.passed) return;
    r.passed = false;
    for (const QElement* e : tuple) r.witness.push_back(e->to_string());
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const QElement x = random_element(n, rng);
    const QElement y = random_element(n, rng);
    const QElement z = random_element(n, rng);
    const QElement xy = q_mul(q, x, y);
    const QElement yz = q_mul(q, y, z);
    if ((x & (y | z)) != ((x & y) | (x & z))) fail(kQ3, {&x, &y, &z});
    if (q_mul(q, xy, z) != q_mul(q, x, yz)) fail(kQ4, {&x, &y, &z});
    if (q_mul(q, x, y | z) != (xy | q_mul(q, x, z)) || q_mul(q, x | y, z) != (q_mul(q, x, z) | yz) ||
        !q_mul(q, x, bottom).empty() || !q_mul(q, bottom, x).empty())
      fail(kQ5, {&x, &y, &z});
    if (q_mul(q, one, x) != x || q_mul(q, x, one) != x) fail(kQ6, {&x});
    const QElement xs = q_star(q, x);
    if (q_star(q, xs) != x || q_star(q, x & y) != (xs & q_star(q, y))) fail(kQ7, {&x, &y});
    if (q_star(q, xy) != q_mul(q, q_star(q, y), xs)) fail(kQ8, {&x, &y});
    if (!(x & yz).leq(q_mul(q, y, q_mul(q, q_star(q, y), x) & z))) fail(kQ9, {&x, &y, &z});
  }
  return rep;
}

}  // namespace detail

/// Checks the quantale laws (Q1)-(Q9). Exhaustive mode enumerates every
/// element triple and reports the lexicographically first failing tuple of
/// each axiom (elements ordered by their bit masks); it throws BoundExceeded
/// above `mode.bound` atoms. Sampled mode draws `mode.samples` seeded triples.
inline AxiomReport check_axioms(const AtomicQuantale& q, const AxiomCheckMode& mode) {
  if (mode.kind == AxiomCheckMode::Kind::exhaustive) {
    if (q.atom_count() > mode.bound)
      throw BoundExceeded("check_axioms: " + std::to_string(q.atom_count()) + " atoms exceed the exhaustive bound of " +
                          std::to_string(mode.bound) + "; use sampled mode");
    if (q.atom_count() > 12) throw BoundExceeded("check_axioms: exhaustive mode supports at most 12 atoms");
    return detail::check_axioms_exhaustive(q);
  }
  return detail::check_axioms_sampled(q, mode.samples, mode.seed);
}

/// Result of a search for factorizations f = u v* with u, v simple.
struct FactorizationResult {
  bool holds = true;
  /// Per atom, the first (u, v) found scanning simple atoms in id order.
  std::vector<std::optional<std::pair<AtomId, AtomId>>> witness;
  std::optional<AtomId> first_failure;
};

/// An atom u is simple when u u* is a single unit atom.
inline bool is_simple_atom(const AtomicQuantale& q, AtomId u) {
  const QElement& p = q.atom_product(u, q.atom_star(u));
  return p.count() == 1 && p.leq(q.unit());
}

/// (Q10) for an atomic quantale: every atom f is u v* for simple atoms u, v.
inline FactorizationResult is_grothendieck(const AtomicQuantale& q) {
  const std::size_t n = q.atom_count();
  std::vector<AtomId> simple;
  for (AtomId u = 0; u < n; ++u)
    if (is_simple_atom(q, u)) simple.push_back(u);

  FactorizationResult res;
  res.witness.resize(n);
  for (AtomId f = 0; f < n; ++f) {
    for (AtomId u : simple) {
      for (AtomId v : simple) {
        const QElement& p = q.atom_product(u, q.atom_star(v));
        if (p.count() == 1 && p.contains(f)) {
          res.witness[f] = std::pair{u, v};
          break;
        }
      }
      if (res.witness[f]) break;
    }
    if (!res.witness[f]) {
      res.holds = false;
      if (!res.first_failure) res.first_failure = f;
    }
  }
  return res;
}

/// The site whose objects are the q <= 1 and whose arrows q -> q' are the
/// f with 1 & f* f = q and f f* <= q'. Composition is the quantale product.
class SiteDescription {
public:
  SiteDescription(std::vector<QElement> objects, std::vector<std::vector<QElement>> homs)
      : objects_(std::move(objects)), homs_(std::move(homs)) {}

  const std::vector<QElement>& objects() const { return objects_; }

  const std::vector<QElement>& hom(std::size_t from, std::size_t to) const {
    return homs_.at(from * objects_.size() + to);
  }

  std::size_t object_index(const QElement& q) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
      if (objects_[i] == q) return i;
    throw std::out_of_range("SiteDescription: not an object");
  }

  /// A family of arrows into `object` covers it when the join of f f* is the object.
  bool covers(const AtomicQuantale& q, std::size_t object, std::span<const QElement> family) const {
    QElement image(q.atom_count());
    for (const auto& f : family) image |= q_mul(q, f, q_star(q, f));
    return image == objects_.at(object);
  }

private:
  std::vector<QElement> objects_;
  std::vector<std::vector<QElement>> homs_;
};

/// Enumerates every element of the quantale; throws BoundExceeded above `max_atoms`.
inline SiteDescription site(const AtomicQuantale& q, std::size_t max_atoms = 16) {
  const std::size_t n = q.atom_count();
  if (n > max_atoms || n > 24)
    throw BoundExceeded("site: " + std::to_string(n) + " atoms exceed the enumeration bound of " +
                        std::to_string(max_atoms));
  const std::vector<AtomId> units = q.unit_atoms();
  const std::size_t object_count = std::size_t{1} << units.size();

  std::vector<QElement> objects;
  objects.reserve(object_count);
  for (std::size_t m = 0; m < object_count; ++m) {
    QElement o(n);
    for (std::size_t k = 0; k < units.size(); ++k)
      if ((m >> k) & 1u) o.insert(units[k]);
    objects.push_back(std::move(o));
  }
  std::vector<std::vector<QElement>> homs(object_count * object_count);

  auto unit_index = [&](const QElement& sub) {
    std::size_t m = 0;
    for (std::size_t k = 0; k < units.size(); ++k)
      if (sub.contains(units[k])) m |= std::size_t{1} << k;
    return m;
  };

  const QElement& one = q.unit();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const QElement f = QElement::from_mask(n, mask);
    const QElement fs = q_star(q, f);
    const QElement image = q_mul(q, f, fs);
    if (!image.leq(one)) continue;
    const std::size_t from = unit_index(one & q_mul(q, fs, f));
    const std::size_t image_idx = unit_index(image);
    for (std::size_t to = 0; to < object_count; ++to)
      if ((image_idx & ~to) == 0) homs[from * object_count + to].push_back(f);
  }
  return SiteDescription(std::move(objects), std::move(homs));
}

}  // namespace hyperq
