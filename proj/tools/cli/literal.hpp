#pragma once

#include <string>
#include <string_view>

#include <hyperq/hyperq.hpp>

namespace hyperq::cli {

// Element literals: a signed sum of terms `c*[aN]` or `[aN]`, where c is an
// integer, a fraction p/q or (for extended-natural functions) `inf`.
// Whitespace is ignored and `0` denotes the zero element.

AlgebraElement parse_element(std::string_view text, std::size_t arrow_count);

/// Coefficients must be non-negative integers or `inf`.
ExtFunction parse_ext_function(std::string_view text, std::size_t arrow_count);

std::string format_element(const AlgebraElement& u);

}  // namespace hyperq::cli
