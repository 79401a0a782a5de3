#include "literal.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace hyperq::cli {

namespace {

struct RawTerm {
  bool negative = false;
  std::string coefficient;  // empty means 1
  ArrowId arrow = 0;
};

class Scanner {
public:
  explicit Scanner(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) text_ += c;
  }

  std::vector<RawTerm> terms(std::size_t arrow_count) {
    std::vector<RawTerm> out;
    if (text_.empty()) fail("empty element literal");
    if (text_ == "0") return out;
    bool first = true;
    while (pos_ < text_.size()) {
      RawTerm t;
      if (peek() == '+' || peek() == '-') {
        t.negative = text_[pos_++] == '-';
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      if (peek() != '[') {
        t.coefficient = coefficient();
        expect('*');
      }
      expect('[');
      expect('a');
      const std::string digits = take_digits();
      if (digits.empty()) fail("expected an arrow id");
      t.arrow = std::stoull(digits);
      if (t.arrow >= arrow_count) fail("unknown arrow a" + digits);
      expect(']');
      out.push_back(std::move(t));
    }
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("element literal '" + text_ + "': " + what + " at offset " + std::to_string(pos_));
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string take_digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d += text_[pos_++];
    return d;
  }
  std::string coefficient() {
    if (text_.compare(pos_, 3, "inf") == 0) {
      pos_ += 3;
      return "inf";
    }
    std::string c = take_digits();
    if (c.empty()) fail("expected a coefficient");
    if (peek() == '/') {
      ++pos_;
      const std::string d = take_digits();
      if (d.empty()) fail("expected a denominator");
      c += "/" + d;
    }
    return c;
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement parse_element(std::string_view text, std::size_t arrow_count) {
  AlgebraElement out;
  for (const RawTerm& t : Scanner(text).terms(arrow_count)) {
    if (t.coefficient == "inf") throw ParseError("element literal: 'inf' is only allowed in convolution inputs");
    Rational c(1);
    if (!t.coefficient.empty()) {
      const auto slash = t.coefficient.find('/');
      const BigInt num(t.coefficient.substr(0, slash));
      const BigInt den(slash == std::string::npos ? std::string("1") : t.coefficient.substr(slash + 1));
      if (den == 0) throw ParseError("element literal: zero denominator");
      c = Rational(num, den);
    }
    out.add(t.arrow, t.negative ? Rational(-c) : c);
  }
  return out;
}

ExtFunction parse_ext_function(std::string_view text, std::size_t arrow_count) {
  ExtFunction out;
  for (const RawTerm& t : Scanner(text).terms(arrow_count)) {
    if (t.negative) throw ParseError("function literal: coefficients must be non-negative");
    if (t.coefficient.find('/') != std::string::npos)
      throw ParseError("function literal: coefficients must be integers or inf");
    ExtNat c(1);
    if (t.coefficient == "inf")
      c = ExtNat::infinity();
    else if (!t.coefficient.empty())
      c = ExtNat(static_cast<std::uint64_t>(std::stoull(t.coefficient)));
    if (c.is_zero()) continue;
    out[t.arrow] += c;
  }
  return out;
}

std::string format_element(const AlgebraElement& u) {
  if (u.is_zero()) return "0";
  std::string s;
  for (const auto& [g, c] : u.terms()) {
    const bool neg = c < 0;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    const Rational a = neg ? Rational(-c) : c;
    if (a != 1) s += to_compact_string(a) + "*";
    s += "[a" + std::to_string(g) + "]";
  }
  return s;
}

}  // namespace hyperq::cli
