#pragma once

// Finite fragments of the matrix category over a quantale: idempotent
// self-adjoint matrices, absorbed and functional morphisms, Q-sets with
// relations and functions between them, and modular right actions.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "axiom_report.hpp"
#include "errors.hpp"
#include "quantale.hpp"

namespace hyperq {

class QuantaleMatrix {
public:
  QuantaleMatrix(std::size_t rows, std::size_t cols, std::size_t atom_count)
      : rows_(rows), cols_(cols), entries_(rows * cols, QElement(atom_count)) {}

  static QuantaleMatrix zero(const AtomicQuantale& q, std::size_t rows, std::size_t cols) {
    return QuantaleMatrix(rows, cols, q.atom_count());
  }

  /// Unit on the diagonal, bottom elsewhere.
  static QuantaleMatrix identity(const AtomicQuantale& q, std::size_t n) {
    QuantaleMatrix m(n, n, q.atom_count());
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = q.unit();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  QElement& at(std::size_t i, std::size_t j) { return entries_.at(index(i, j)); }
  const QElement& at(std::size_t i, std::size_t j) const { return entries_.at(index(i, j)); }

  friend bool operator==(const QuantaleMatrix&, const QuantaleMatrix&) = default;

private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("QuantaleMatrix: index out of range");
    return i * cols_ + j;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<QElement> entries_;
};

/// (M N)_{i,j} = ⋁_k M_{i,k} N_{k,j}.
inline QuantaleMatrix matmul(const AtomicQuantale& q, const QuantaleMatrix& m, const QuantaleMatrix& n) {
  if (m.cols() != n.rows())
    throw DimensionMismatch("matmul: " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " times " +
                            std::to_string(n.rows()) + "x" + std::to_string(n.cols()));
  QuantaleMatrix out(m.rows(), n.cols(), q.atom_count());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (m.at(i, k).empty()) continue;
      for (std::size_t j = 0; j < n.cols(); ++j) out.at(i, j) |= q_mul(q, m.at(i, k), n.at(k, j));
    }
  return out;
}

/// (M*)_{i,j} = (M_{j,i})*.
inline QuantaleMatrix star_transpose(const AtomicQuantale& q, const QuantaleMatrix& m) {
  QuantaleMatrix out(m.cols(), m.rows(), q.atom_count());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(j, i) = q_star(q, m.at(i, j));
  return out;
}

/// Entrywise order.
inline bool matrix_leq(const QuantaleMatrix& m, const QuantaleMatrix& n) {
  if (m.rows() != n.rows() || m.cols() != n.cols()) throw DimensionMismatch("matrix_leq: shapes differ");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).leq(n.at(i, j))) return false;
  return true;
}

/// P P = P and P* = P.
inline bool is_proj_object(const AtomicQuantale& q, const QuantaleMatrix& p) {
  if (p.rows() != p.cols()) return false;
  return matmul(q, p, p) == p && star_transpose(q, p) == p;
}

/// An object of the matrix category: a square P with P P = P = P*.
class ProjObject {
public:
  ProjObject(const AtomicQuantale& q, QuantaleMatrix p) : p_(std::move(p)) {
    if (!is_proj_object(q, p_)) throw std::invalid_argument("ProjObject: matrix is not idempotent and self-adjoint");
  }
  std::size_t size() const { return p_.rows(); }
  const QuantaleMatrix& matrix() const { return p_; }

private:
  QuantaleMatrix p_;
};

/// M : (J, P') -> (I, P) is an I x J matrix with P M = M and M P' = M.
inline bool is_proj_morphism(const AtomicQuantale& q, const ProjObject& src, const ProjObject& dst,
                             const QuantaleMatrix& m) {
  if (m.rows() != dst.size() || m.cols() != src.size())
    throw DimensionMismatch("is_proj_morphism: morphism must be " + std::to_string(dst.size()) + "x" +
                            std::to_string(src.size()));
  return matmul(q, dst.matrix(), m) == m && matmul(q, m, src.matrix()) == m;
}

/// M M* <= P and P' <= M* M, for a morphism M : (J, P') -> (I, P).
/// Returns false for matrices that are not morphisms.
inline bool is_functional(const AtomicQuantale& q, const ProjObject& src, const ProjObject& dst,
                          const QuantaleMatrix& m) {
  if (!is_proj_morphism(q, src, dst, m)) return false;
  const QuantaleMatrix ms = star_transpose(q, m);
  return matrix_leq(matmul(q, m, ms), dst.matrix()) && matrix_leq(src.matrix(), matmul(q, ms, m));
}

/// Outcome of a Q-set, Q-relation or Q-function check.
struct QStructureReport {
  AxiomReport axioms;
  /// Cases where a primed axiom disagreed with its unprimed counterpart, or a
  /// lemma identity failed on a structure that passed its axioms.
  std::vector<std::string> discrepancies;
  /// The structure satisfies its (unprimed) defining axioms.
  bool holds = false;
};

namespace detail {

inline void fail(AxiomResult& r, std::vector<std::string> witness) {
  if (!r.passed) return;
  r.passed = false;
  r.witness = std::move(witness);
}

inline std::string idx(std::size_t i) { return std::to_string(i); }

inline void require_square(const QuantaleMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionMismatch(std::string(what) + ": bracket must be square");
}

}  // namespace detail

/// A Q-set is a square bracket matrix with
///   (S1) [x,y] = [y,x]*   and   (S2) [x,y][y,z] <= [x,z].
/// Also evaluates (S2') [x,y] = ⋁_t [x,t][t,y], which is equivalent under (S1),
/// and on Q-sets the identities [x,y][y,y] = [x,y] = [x,x][x,y].
inline QStructureReport check_qset(const AtomicQuantale& q, const QuantaleMatrix& bracket) {
  detail::require_square(bracket, "check_qset");
  const std::size_t n = bracket.rows();
  QStructureReport rep;
  AxiomResult s1{"S1", "[x,y] = [y,x]*", true, false, {}};
  AxiomResult s2{"S2", "[x,y][y,z] <= [x,z]", true, false, {}};
  AxiomResult s2p{"S2'", "[x,y] = join_t [x,t][t,y]", true, false, {}};
  AxiomResult lemma{"lemma", "[x,y][y,y] = [x,y] = [x,x][x,y]", true, false, {}};

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (bracket.at(x, y) != q_star(q, bracket.at(y, x))) detail::fail(s1, {detail::idx(x), detail::idx(y)});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (!q_mul(q, bracket.at(x, y), bracket.at(y, z)).leq(bracket.at(x, z)))
          detail::fail(s2, {detail::idx(x), detail::idx(y), detail::idx(z)});
  const QuantaleMatrix square = matmul(q, bracket, bracket);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (square.at(x, y) != bracket.at(x, y)) detail::fail(s2p, {detail::idx(x), detail::idx(y)});

  rep.holds = s1.passed && s2.passed;
  if (s1.passed && s2.passed != s2p.passed) rep.discrepancies.push_back("S2 and S2' disagree under S1");
  if (rep.holds) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const QElement& b = bracket.at(x, y);
        if (q_mul(q, b, bracket.at(y, y)) != b || q_mul(q, bracket.at(x, x), b) != b)
          detail::fail(lemma, {detail::idx(x), detail::idx(y)});
      }
    if (!lemma.passed) rep.discrepancies.push_back("lemma fails at (" + lemma.witness[0] + "," + lemma.witness[1] + ")");
  }
  rep.axioms.results = {s1, s2, s2p, lemma};
  rep.axioms.cases_checked = n * n * n;
  return rep;
}

namespace detail {

struct RelationChecks {
  AxiomResult r1{"R1", "[y,y'] R(y',x) <= R(y,x), equality when y = y'", true, false, {}};
  AxiomResult r2{"R2", "R(y,x') [x',x] <= R(y,x), equality when x = x'", true, false, {}};
  AxiomResult r1p{"R1'", "join_y' [y,y'] R(y',x) = R(y,x)", true, false, {}};
  AxiomResult r2p{"R2'", "join_x' R(y,x') [x',x] = R(y,x)", true, false, {}};
};

inline RelationChecks relation_checks(const AtomicQuantale& q, const QuantaleMatrix& x_bracket,
                                      const QuantaleMatrix& y_bracket, const QuantaleMatrix& r) {
  RelationChecks c;
  const std::size_t nx = x_bracket.rows(), ny = y_bracket.rows();
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x) {
      const QElement& target = r.at(y, x);
      for (std::size_t y2 = 0; y2 < ny; ++y2) {
        const QElement p = q_mul(q, y_bracket.at(y, y2), r.at(y2, x));
        if (y2 == y ? p != target : !p.leq(target)) fail(c.r1, {idx(y), idx(y2), idx(x)});
      }
      for (std::size_t x2 = 0; x2 < nx; ++x2) {
        const QElement p = q_mul(q, r.at(y, x2), x_bracket.at(x2, x));
        if (x2 == x ? p != target : !p.leq(target)) fail(c.r2, {idx(y), idx(x2), idx(x)});
      }
    }
  const QuantaleMatrix left = matmul(q, y_bracket, r);
  const QuantaleMatrix right = matmul(q, r, x_bracket);
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x) {
      if (left.at(y, x) != r.at(y, x)) fail(c.r1p, {idx(y), idx(x)});
      if (right.at(y, x) != r.at(y, x)) fail(c.r2p, {idx(y), idx(x)});
    }
  return c;
}

inline void check_shapes(const QuantaleMatrix& x_bracket, const QuantaleMatrix& y_bracket, const QuantaleMatrix& r) {
  require_square(x_bracket, "Q-relation");
  require_square(y_bracket, "Q-relation");
  if (r.rows() != y_bracket.rows() || r.cols() != x_bracket.rows())
    throw DimensionMismatch("Q-relation: table must be |Y| x |X|");
}

}  // namespace detail

/// A Q-relation from X to Y is a |Y| x |X| table R with (R1) and (R2).
/// When X and Y are Q-sets, (R1') and (R2') must agree with them.
inline QStructureReport check_qrelation(const AtomicQuantale& q, const QuantaleMatrix& x_bracket,
                                        const QuantaleMatrix& y_bracket, const QuantaleMatrix& r) {
  detail::check_shapes(x_bracket, y_bracket, r);
  const auto c = detail::relation_checks(q, x_bracket, y_bracket, r);
  QStructureReport rep;
  rep.holds = c.r1.passed && c.r2.passed;
  const bool sets = check_qset(q, x_bracket).holds && check_qset(q, y_bracket).holds;
  if (sets && c.r1.passed != c.r1p.passed) rep.discrepancies.push_back("R1 and R1' disagree");
  if (sets && c.r2.passed != c.r2p.passed) rep.discrepancies.push_back("R2 and R2' disagree");
  rep.axioms.results = {c.r1, c.r2, c.r1p, c.r2p};
  rep.axioms.cases_checked = x_bracket.rows() * y_bracket.rows() * (x_bracket.rows() + y_bracket.rows());
  return rep;
}

/// A Q-function is a Q-relation f with
///   (F1) f(y,x) f(y',x)* <= [y,y']   and   (F2) [x,x] <= ⋁_y f(y,x)* f(y,x).
/// Under (R2), (F2) must agree with (F2') [x,x'] <= ⋁_y f(y,x)* f(y,x').
inline QStructureReport check_qfunction(const AtomicQuantale& q, const QuantaleMatrix& x_bracket,
                                        const QuantaleMatrix& y_bracket, const QuantaleMatrix& f) {
  QStructureReport rep = check_qrelation(q, x_bracket, y_bracket, f);
  const std::size_t nx = x_bracket.rows(), ny = y_bracket.rows();
  AxiomResult f1{"F1", "f(y,x) f(y',x)* <= [y,y']", true, false, {}};
  AxiomResult f2{"F2", "[x,x] <= join_y f(y,x)* f(y,x)", true, false, {}};
  AxiomResult f2p{"F2'", "[x,x'] <= join_y f(y,x)* f(y,x')", true, false, {}};

  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t y2 = 0; y2 < ny; ++y2)
        if (!q_mul(q, f.at(y, x), q_star(q, f.at(y2, x))).leq(y_bracket.at(y, y2)))
          detail::fail(f1, {detail::idx(y), detail::idx(y2), detail::idx(x)});
  const QuantaleMatrix cover = matmul(q, star_transpose(q, f), f);
  for (std::size_t x = 0; x < nx; ++x) {
    if (!x_bracket.at(x, x).leq(cover.at(x, x))) detail::fail(f2, {detail::idx(x)});
    for (std::size_t x2 = 0; x2 < nx; ++x2)
      if (!x_bracket.at(x, x2).leq(cover.at(x, x2))) detail::fail(f2p, {detail::idx(x), detail::idx(x2)});
  }
  const bool r2 = rep.axioms.at("R2").passed;
  const bool sets = check_qset(q, x_bracket).holds && check_qset(q, y_bracket).holds;
  if (sets && r2 && f2.passed != f2p.passed) rep.discrepancies.push_back("F2 and F2' disagree under R2");
  rep.holds = rep.holds && f1.passed && f2.passed;
  rep.axioms.results.push_back(f1);
  rep.axioms.results.push_back(f2);
  rep.axioms.results.push_back(f2p);
  return rep;
}

/// A finite lattice on {0, ..., size-1} given by join and meet tables.
struct FiniteLattice {
  std::size_t size = 0;
  std::vector<std::size_t> join_table;
  std::vector<std::size_t> meet_table;
  std::size_t bottom = 0;
  std::size_t top = 0;

  std::size_t join(std::size_t a, std::size_t b) const { return join_table.at(a * size + b); }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_table.at(a * size + b); }
  bool leq(std::size_t a, std::size_t b) const { return join(a, b) == b; }

  /// Subsets of an n-element set, numbered by bitmask.
  static FiniteLattice powerset(std::size_t n) {
    FiniteLattice l;
    l.size = std::size_t{1} << n;
    l.join_table.resize(l.size * l.size);
    l.meet_table.resize(l.size * l.size);
    for (std::size_t a = 0; a < l.size; ++a)
      for (std::size_t b = 0; b < l.size; ++b) {
        l.join_table[a * l.size + b] = a | b;
        l.meet_table[a * l.size + b] = a & b;
      }
    l.top = l.size - 1;
    return l;
  }
};

/// A lattice with a right action of the quantale, given on atoms and extended
/// by joins: m·q = ⋁_{a ∈ q} m·a, and m·⊥ = ⊥.
struct QModule {
  FiniteLattice lattice;
  /// `atom_action[m * atom_count + a]` is m·a.
  std::vector<std::size_t> atom_action;

  std::size_t act(const AtomicQuantale& q, std::size_t m, const QElement& e) const {
    std::size_t out = lattice.bottom;
    e.for_each_atom([&](AtomId a) { out = lattice.join(out, atom_action.at(m * q.atom_count() + a)); });
    return out;
  }
};

/// The quantale as a module over itself by right multiplication.
inline QModule regular_module(const AtomicQuantale& q) {
  const std::size_t n = q.atom_count();
  if (n > 8) throw BoundExceeded("regular_module: more than 8 atoms");
  QModule m{FiniteLattice::powerset(n), {}};
  m.atom_action.resize(m.lattice.size * n);
  for (std::size_t x = 0; x < m.lattice.size; ++x)
    for (AtomId a = 0; a < n; ++a)
      m.atom_action[x * n + a] = q_mul(q, QElement::from_mask(n, x), q.atom(a)).to_mask();
  return m;
}

namespace detail {

/// Every element when there are at most 2^10 of them, otherwise the atoms,
/// the unit, the top and a seeded sample.
inline std::vector<QElement> quantale_elements_for_check(const AtomicQuantale& q, std::size_t samples,
                                                         std::uint64_t seed) {
  const std::size_t n = q.atom_count();
  std::vector<QElement> out;
  if (n <= 10) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) out.push_back(QElement::from_mask(n, m));
    return out;
  }
  for (AtomId a = 0; a < n; ++a) out.push_back(q.atom(a));
  out.push_back(q.unit());
  out.push_back(q.top());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) out.push_back(random_element(n, rng));
  return out;
}

}  // namespace detail

/// Module laws and the modularity inequality m ∧ n q <= (m q* ∧ n) q.
inline AxiomReport check_modular_action(const AtomicQuantale& q, const QModule& mod, std::size_t samples = 256,
                                        std::uint64_t seed = 1) {
  const FiniteLattice& l = mod.lattice;
  const std::size_t n = q.atom_count();
  if (mod.atom_action.size() != l.size * n) throw DimensionMismatch("check_modular_action: action table size");
  AxiomResult bottom{"bottom", "bottom·a = bottom", true, false, {}};
  AxiomResult unit{"unit", "m·1 = m", true, false, {}};
  AxiomResult linear{"join-linear", "(m ∨ n)·a = m·a ∨ n·a", true, false, {}};
  AxiomResult assoc{"associative", "(m·a)·b = m·(ab)", true, false, {}};
  AxiomResult modular{"modular", "m ∧ n·q <= (m·q* ∧ n)·q", true, false, {}};
  std::uint64_t cases = 0;

  for (AtomId a = 0; a < n; ++a)
    if (mod.act(q, l.bottom, q.atom(a)) != l.bottom) detail::fail(bottom, {detail::arrow_name(a)});
  for (std::size_t m = 0; m < l.size; ++m) {
    if (mod.act(q, m, q.unit()) != m) detail::fail(unit, {detail::idx(m)});
    for (AtomId a = 0; a < n; ++a) {
      const std::size_t ma = mod.act(q, m, q.atom(a));
      for (AtomId b = 0; b < n; ++b)
        if (mod.act(q, ma, q.atom(b)) != mod.act(q, m, q.atom_product(a, b)))
          detail::fail(assoc, {detail::idx(m), detail::arrow_name(a), detail::arrow_name(b)});
      for (std::size_t m2 = 0; m2 < l.size; ++m2)
        if (mod.act(q, l.join(m, m2), q.atom(a)) != l.join(ma, mod.act(q, m2, q.atom(a))))
          detail::fail(linear, {detail::idx(m), detail::idx(m2), detail::arrow_name(a)});
    }
  }
  for (const QElement& e : detail::quantale_elements_for_check(q, samples, seed)) {
    const QElement es = q_star(q, e);
    for (std::size_t m = 0; m < l.size; ++m) {
      const std::size_t mes = mod.act(q, m, es);
      for (std::size_t m2 = 0; m2 < l.size; ++m2) {
        ++cases;
        const std::size_t lhs = l.meet(m, mod.act(q, m2, e));
        const std::size_t rhs = mod.act(q, l.meet(mes, m2), e);
        if (!l.leq(lhs, rhs)) detail::fail(modular, {detail::idx(m), detail::idx(m2), e.to_string()});
      }
    }
  }
  AxiomReport rep;
  rep.results = {bottom, unit, linear, assoc, modular};
  rep.cases_checked = cases;
  return rep;
}

/// A map A × B -> C between modules, `table[a * |B| + b]`.
struct BinaryMap {
  std::vector<std::size_t> table;
  std::size_t operator()(std::size_t a, std::size_t b, std::size_t b_size) const { return table.at(a * b_size + b); }
};

/// Bilinearity over joins together with
///   f(a q, b) <= f(a, b q*) q,   f(a, b q) <= f(a q*, b) q,   f(a, b) q <= f(a q, b q).
inline AxiomReport is_q_bilinear(const AtomicQuantale& q, const QModule& ma, const QModule& mb, const QModule& mc,
                                 const BinaryMap& f, std::size_t samples = 256, std::uint64_t seed = 1) {
  const std::size_t na = ma.lattice.size, nb = mb.lattice.size;
  if (f.table.size() != na * nb) throw DimensionMismatch("is_q_bilinear: map table size");
  const FiniteLattice& lc = mc.lattice;
  auto at = [&](std::size_t a, std::size_t b) { return f(a, b, nb); };
  AxiomResult bilinear{"bilinear", "join-preserving in each variable", true, false, {}};
  AxiomResult c1{"condition-1", "f(aq,b) <= f(a,bq*)q", true, false, {}};
  AxiomResult c2{"condition-2", "f(a,bq) <= f(aq*,b)q", true, false, {}};
  AxiomResult c3{"condition-3", "f(a,b)q <= f(aq,bq)", true, false, {}};
  std::uint64_t cases = 0;

  for (std::size_t b = 0; b < nb; ++b)
    if (at(ma.lattice.bottom, b) != lc.bottom) detail::fail(bilinear, {"bottom", detail::idx(b)});
  for (std::size_t a = 0; a < na; ++a)
    if (at(a, mb.lattice.bottom) != lc.bottom) detail::fail(bilinear, {detail::idx(a), "bottom"});
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t a2 = 0; a2 < na; ++a2)
      for (std::size_t b = 0; b < nb; ++b)
        if (at(ma.lattice.join(a, a2), b) != lc.join(at(a, b), at(a2, b)))
          detail::fail(bilinear, {detail::idx(a), detail::idx(a2), detail::idx(b)});
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t b2 = 0; b2 < nb; ++b2)
        if (at(a, mb.lattice.join(b, b2)) != lc.join(at(a, b), at(a, b2)))
          detail::fail(bilinear, {detail::idx(a), detail::idx(b), detail::idx(b2)});

  for (const QElement& e : detail::quantale_elements_for_check(q, samples, seed)) {
    const QElement es = q_star(q, e);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        ++cases;
        const std::size_t ae = ma.act(q, a, e), aes = ma.act(q, a, es);
        const std::size_t be = mb.act(q, b, e), bes = mb.act(q, b, es);
        if (!lc.leq(at(ae, b), mc.act(q, at(a, bes), e)))
          detail::fail(c1, {detail::idx(a), detail::idx(b), e.to_string()});
        if (!lc.leq(at(a, be), mc.act(q, at(aes, b), e)))
          detail::fail(c2, {detail::idx(a), detail::idx(b), e.to_string()});
        if (!lc.leq(mc.act(q, at(a, b), e), at(ae, be)))
          detail::fail(c3, {detail::idx(a), detail::idx(b), e.to_string()});
      }
  }
  AxiomReport rep;
  rep.results = {bilinear, c1, c2, c3};
  rep.cases_checked = cases;
  return rep;
}

}  // namespace hyperq
