#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperq {

/// Outcome of one axiom over the whole enumeration.
struct AxiomResult {
  std::string axiom;
  std::string description;
  bool passed = true;
  /// Holds by construction of the representation, reported as vacuously verified.
  bool structural = false;
  /// Counterexample components in the axiom's argument order; empty when passed.
  std::vector<std::string> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  std::uint64_t cases_checked = 0;

  bool passed() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
  }

  const AxiomResult& at(std::string_view axiom) const {
    for (const auto& r : results)
      if (r.axiom == axiom) return r;
    throw std::out_of_range("AxiomReport: no axiom " + std::string(axiom));
  }
};

}  // namespace hyperq
