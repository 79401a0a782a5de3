#pragma once

// The finite matrix model of the algebra of a realization: [g] acts on
// functions on X through the incidence matrix of its orbit.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "rational.hpp"
#include "realization.hpp"

namespace hyperq {

class RationalMatrix {
public:
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
  const Rational& at(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("RationalMatrix: inner dimensions differ");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& x = a.at(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += x * b.at(k, j);
      }
    return c;
  }

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("RationalMatrix: shapes differ");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

/// M[x][y] = coefficient of u at the orbit of (x, y).
inline RationalMatrix regular_rep(const ConcreteRealization& real, const AlgebraElement& u) {
  const std::size_t n = real.point_count();
  RationalMatrix m(n, n);
  for (const auto& [g, c] : u.terms())
    if (g >= real.arrow_count()) throw std::out_of_range("regular_rep: unknown arrow a" + std::to_string(g));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) m.at(x, y) = u.coefficient(real.arrow_of(x, y));
  return m;
}

/// Reads a matrix back as an element, or nothing if it is not constant on orbits.
inline std::optional<AlgebraElement> decompose(const ConcreteRealization& real, const RationalMatrix& m) {
  const std::size_t n = real.point_count();
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch("decompose: matrix is not |X| x |X|");
  AlgebraElement out;
  for (ArrowId a = 0; a < real.arrow_count(); ++a) {
    const auto [x, y] = real.representative(a);
    out.add(a, m.at(x, y));
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (m.at(x, y) != out.coefficient(real.arrow_of(x, y))) return std::nullopt;
  return out;
}

struct AdjointFailure {
  ArrowId g = 0;
  UnitId v = 0;
  UnitId v2 = 0;
  Rational lhs;
  Rational rhs;
};

struct AdjointReport {
  std::uint64_t checked = 0;
  std::vector<AdjointFailure> failures;
  /// Pairings that were not constant over the points of a unit.
  std::vector<std::string> point_dependence;
  bool passed() const { return failures.empty() && point_dependence.empty(); }
};

namespace detail {

/// (v·[g])(x) = Σ_{y : (y, x) ∈ g} v(y).
inline std::vector<Rational> act_right(const ConcreteRealization& real, const std::vector<Rational>& v, ArrowId g) {
  const std::size_t n = real.point_count();
  std::vector<Rational> out(n);
  for (std::size_t y = 0; y < n; ++y) {
    if (v[y] == 0) continue;
    for (std::size_t x = 0; x < n; ++x)
      if (real.arrow_of(y, x) == g) out[x] += v[y];
  }
  return out;
}

/// Σ over units of v(x) w(x) at one point x of the unit; every other point
/// of the unit must give the same product.
inline Rational unit_pairing(const ConcreteRealization& real, const std::vector<Rational>& v,
                             const std::vector<Rational>& w, std::vector<std::string>& point_dependence) {
  const Hypergroupoid& h = real.hypergroupoid();
  Rational total(0);
  for (UnitId e = 0; e < h.unit_count(); ++e) {
    std::optional<Rational> value;
    for (std::size_t x = 0; x < real.point_count(); ++x) {
      if (real.unit_of_point(x) != e) continue;
      const Rational p = v[x] * w[x];
      if (!value)
        value = p;
      else if (*value != p)
        point_dependence.push_back("unit " + std::to_string(e) + " at point " + std::to_string(x));
    }
    if (value) total += *value;
  }
  return total;
}

}  // namespace detail

/// For every arrow g and unit indicators v, v2 checks
/// ⟨v, v2·[g]⟩ = χ(g) ⟨v·[g*], v2⟩ exactly, acting on actual functions on X.
inline AdjointReport adjoint_check(const ConcreteRealization& real) {
  const Hypergroupoid& h = real.hypergroupoid();
  const WeightedHypergroupoid w = weights(real);
  const std::size_t n = real.point_count();
  std::vector<std::vector<Rational>> indicator(h.unit_count(), std::vector<Rational>(n));
  for (std::size_t x = 0; x < n; ++x) indicator[real.unit_of_point(x)][x] = 1;

  AdjointReport rep;
  for (ArrowId g = 0; g < h.arrow_count(); ++g) {
    const Rational c = chi(w, g);
    for (UnitId v = 0; v < h.unit_count(); ++v) {
      const auto v_star = detail::act_right(real, indicator[v], h.star(g));
      for (UnitId v2 = 0; v2 < h.unit_count(); ++v2) {
        const auto v2_g = detail::act_right(real, indicator[v2], g);
        const Rational lhs = detail::unit_pairing(real, indicator[v], v2_g, rep.point_dependence);
        const Rational rhs = c * detail::unit_pairing(real, v_star, indicator[v2], rep.point_dependence);
        ++rep.checked;
        if (lhs != rhs) rep.failures.push_back({g, v, v2, lhs, rhs});
      }
    }
  }
  return rep;
}

}  // namespace hyperq
