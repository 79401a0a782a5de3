#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hyperq {

/// A natural number or infinity, with the conventions of sums of
/// non-negative lower semi-continuous reals: 0 * inf = 0 and n * inf = inf
/// for n >= 1.
class ExtNat {
public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t value) : value_(value) {}  // NOLINT: implicit on purpose

  static constexpr ExtNat infinity() {
    ExtNat r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0; }

  std::uint64_t value() const {
    if (infinite_) throw std::domain_error("ExtNat: value() of infinity");
    return value_;
  }

  friend constexpr bool operator==(const ExtNat&, const ExtNat&) = default;

  friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    if (a.value_ > std::numeric_limits<std::uint64_t>::max() - b.value_)
      throw std::overflow_error("ExtNat: addition overflow");
    return ExtNat(a.value_ + b.value_);
  }

  friend ExtNat operator*(const ExtNat& a, const ExtNat& b) {
    if (a.is_zero() || b.is_zero()) return ExtNat(0);
    if (a.infinite_ || b.infinite_) return infinity();
    if (a.value_ > std::numeric_limits<std::uint64_t>::max() / b.value_)
      throw std::overflow_error("ExtNat: multiplication overflow");
    return ExtNat(a.value_ * b.value_);
  }

  ExtNat& operator+=(const ExtNat& o) { return *this = *this + o; }
  ExtNat& operator*=(const ExtNat& o) { return *this = *this * o; }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

  friend std::ostream& operator<<(std::ostream& os, const ExtNat& n) { return os << n.to_string(); }

private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

}  // namespace hyperq
