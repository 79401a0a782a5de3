#pragma once

// Fixture loading and seeded generators shared by the test suites.

#include <random>
#include <string>
#include <vector>

#include <hyperq/hyperq.hpp>

#include "cli/input.hpp"

namespace support {

using namespace hyperq;

inline std::string fixture_path(const std::string& name) { return std::string(HYPERQ_FIXTURE_DIR) + "/" + name; }

inline cli::InputSpec load_fixture(const std::string& name) {
  return cli::parse_input(std::string_view(cli::read_file(fixture_path(name))));
}

inline ConcreteRealization realize(const std::string& name) { return orbit_atoms(cli::action_of(load_fixture(name))); }

inline AtomicQuantale load_quantale(const std::string& name) {
  return std::get<cli::QuantaleSpec>(load_fixture(name).value).quantale;
}

inline WeightedHypergroupoid load_abstract(const std::string& name) {
  return std::get<cli::AbstractSpec>(load_fixture(name).value).table;
}

inline const std::vector<std::string>& realized_fixtures() {
  static const std::vector<std::string> names{"f1_trivial_two_points.json", "f2_s3_regular.json",
                                              "f3_s3_three_points.json", "f4_s3_mixed.json"};
  return names;
}

/// Arrow ids of the mixed-block arrows in F4 (regular block -> coset block).
/// The coset block's unit is 1, the regular block's is 0.
inline std::vector<ArrowId> arrows_between(const Hypergroupoid& h, UnitId src, UnitId tgt) {
  std::vector<ArrowId> out;
  for (ArrowId g = 0; g < h.arrow_count(); ++g)
    if (h.src(g) == src && h.tgt(g) == tgt) out.push_back(g);
  return out;
}

inline Perm cycle_perm(std::size_t degree, const std::vector<std::uint32_t>& cycle) {
  Perm p = perm::identity(degree);
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

/// Product of disjoint transpositions.
inline Perm compose_pairs(std::size_t degree, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& swaps) {
  Perm p = perm::identity(degree);
  for (const auto& [a, b] : swaps) std::swap(p[a], p[b]);
  return p;
}

struct NamedGroup {
  std::string name;
  std::size_t degree;
  std::vector<Perm> generators;
};

/// Permutation groups of order at most 48.
inline std::vector<NamedGroup> small_groups() {
  std::vector<NamedGroup> g;
  g.push_back({"C4", 4, {cycle_perm(4, {0, 1, 2, 3})}});
  g.push_back({"S3", 3, {cycle_perm(3, {0, 1}), cycle_perm(3, {0, 1, 2})}});
  g.push_back({"D4", 4, {cycle_perm(4, {0, 1, 2, 3}), cycle_perm(4, {0, 2})}});
  g.push_back({"C2xC2xC2", 6, {cycle_perm(6, {0, 1}), cycle_perm(6, {2, 3}), cycle_perm(6, {4, 5})}});
  g.push_back({"A4", 4, {cycle_perm(4, {0, 1, 2}), compose_pairs(4, {{0, 1}, {2, 3}})}});
  g.push_back({"D6", 6, {cycle_perm(6, {0, 1, 2, 3, 4, 5}), compose_pairs(6, {{1, 5}, {2, 4}})}});
  g.push_back({"S4", 4, {cycle_perm(4, {0, 1}), cycle_perm(4, {0, 1, 2, 3})}});
  g.push_back({"S3xS3", 6,
               {cycle_perm(6, {0, 1}), cycle_perm(6, {0, 1, 2}), cycle_perm(6, {3, 4}), cycle_perm(6, {3, 4, 5})}});
  g.push_back({"S4xC2", 6, {cycle_perm(6, {0, 1}), cycle_perm(6, {0, 1, 2, 3}), cycle_perm(6, {4, 5})}});
  g.push_back({"D12", 12, {cycle_perm(12, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}),
                           compose_pairs(12, {{1, 11}, {2, 10}, {3, 9}, {4, 8}, {5, 7}})}});
  return g;
}

/// Seeded coset spec: a small group with one to three subgroups, each
/// generated by up to two random group elements.
inline CosetSpec random_coset_spec(std::mt19937_64& rng) {
  static const auto groups = small_groups();
  const NamedGroup& g = groups[rng() % groups.size()];
  const auto elements = enumerate_group(g.degree, g.generators);
  CosetSpec spec{g.name, g.degree, g.generators, {}};
  const std::size_t subgroup_count = 1 + rng() % 3;
  for (std::size_t k = 0; k < subgroup_count; ++k) {
    Subgroup s{"K" + std::to_string(k), {}};
    const std::size_t gens = rng() % 3;
    for (std::size_t i = 0; i < gens; ++i) s.generators.push_back(elements[rng() % elements.size()]);
    spec.subgroups.push_back(std::move(s));
  }
  return spec;
}

inline AlgebraElement random_element(std::mt19937_64& rng, std::size_t arrow_count, int range = 3,
                                     std::size_t max_terms = 4) {
  AlgebraElement u;
  const std::size_t terms = 1 + rng() % max_terms;
  for (std::size_t i = 0; i < terms; ++i)
    u.add(rng() % arrow_count, Rational(static_cast<long long>(rng() % (2 * range + 1)) - range));
  return u;
}

}  // namespace support
