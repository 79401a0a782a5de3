#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace hyperq;

namespace {

std::vector<oracle::Perm> as_oracle(const std::vector<Perm>& ps) { return {ps.begin(), ps.end()}; }

/// Compares a realization against orbit enumeration over the whole group and
/// integer matrix products of orbit incidence matrices.
void expect_matches_oracle(const ConcreteRealization& real, const std::string& label) {
  const int n = static_cast<int>(real.point_count());
  const auto group = oracle::group_closure(real.point_count(), as_oracle(real.action().generators));
  const auto orbits = oracle::pair_orbits(n, group);
  const Hypergroupoid& h = real.hypergroupoid();
  ASSERT_EQ(h.arrow_count(), orbits.size()) << label;
  ASSERT_EQ(h.unit_count(), oracle::point_orbits(n, group).size()) << label;

  // Library id of each oracle orbit; every pair of the orbit must agree.
  std::vector<int> id_of(orbits.size());
  std::set<ArrowId> used;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const ArrowId id = real.arrow_of(orbits[o].begin()->first, orbits[o].begin()->second);
    for (const auto& [x, y] : orbits[o]) ASSERT_EQ(real.arrow_of(x, y), id) << label;
    EXPECT_EQ(real.orbit_size(id), orbits[o].size()) << label;
    const auto [rx, ry] = real.representative(id);
    EXPECT_EQ(oracle::Pair(int(rx), int(ry)), *orbits[o].begin()) << label << " representative is the least pair";
    id_of[o] = static_cast<int>(id);
    used.insert(id);
  }
  EXPECT_EQ(used.size(), orbits.size());

  const oracle::MuTable expected = oracle::count_all_mu(n, orbits);
  EXPECT_TRUE(expected.consistent) << label;
  std::map<std::tuple<int, int, int>, long long> got;
  const WeightedHypergroupoid w = weights(real);
  for (ArrowId g = 0; g < h.arrow_count(); ++g)
    for (ArrowId g2 = 0; g2 < h.arrow_count(); ++g2)
      for (const Term& t : w.products(g, g2)) got[{int(t.arrow), int(g), int(g2)}] = (long long)t.coefficient.value();
  std::map<std::tuple<int, int, int>, long long> want;
  for (const auto& [key, v] : expected.mu) {
    const auto [c, g, g2] = key;
    want[{id_of[c], id_of[g], id_of[g2]}] = v;
  }
  EXPECT_EQ(got, want) << label;
}

}  // namespace

TEST(Groups, EnumerationOrders) {
  const auto groups = support::small_groups();
  const std::map<std::string, std::size_t> orders{{"C4", 4},   {"S3", 6},     {"D4", 8},     {"C2xC2xC2", 8},
                                                  {"A4", 12},  {"D6", 12},    {"S4", 24},    {"S3xS3", 36},
                                                  {"S4xC2", 48}, {"D12", 24}};
  for (const auto& g : groups) {
    const auto elements = enumerate_group(g.degree, g.generators);
    EXPECT_EQ(elements.size(), orders.at(g.name)) << g.name;
    EXPECT_EQ(elements.size(), oracle::group_closure(g.degree, as_oracle(g.generators)).size()) << g.name;
    EXPECT_EQ(elements.front(), perm::identity(g.degree));
  }
}

TEST(Groups, BoundsAndValidation) {
  const std::vector<Perm> s4{support::cycle_perm(4, {0, 1}), support::cycle_perm(4, {0, 1, 2, 3})};
  EXPECT_THROW(enumerate_group(4, s4, 10), OrderBoundExceeded);
  EXPECT_NO_THROW(enumerate_group(4, s4, 24));
  EXPECT_THROW(enumerate_group(4, std::vector<Perm>{{0, 0, 1, 2}}), std::invalid_argument);
  EXPECT_THROW(enumerate_group(3, s4), std::invalid_argument);
  EXPECT_EQ(perm::compose({1, 2, 0}, {1, 0, 2}), (Perm{2, 1, 0}));
}

TEST(Cosets, SpaceSizeAndTransitivity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CosetSpec spec = support::random_coset_spec(rng);
    const auto group = oracle::group_closure(spec.degree, as_oracle(spec.group_generators));
    for (std::size_t k = 0; k < spec.subgroups.size(); ++k) {
      const PermAction a = coset_space(spec, k);
      const auto sub = oracle::group_closure(spec.degree, as_oracle(spec.subgroups[k].generators));
      EXPECT_EQ(a.point_count * sub.size(), group.size()) << spec.name;
      // Transitive, and the stabilizer of the base coset has index |G/K| in the image.
      const auto image = oracle::group_closure(a.point_count, as_oracle(a.generators));
      EXPECT_EQ(oracle::point_orbits(int(a.point_count), image).size(), 1u);
      std::size_t stabilizer = 0;
      for (const auto& p : image) stabilizer += p[0] == 0;
      EXPECT_EQ(image.size() / stabilizer, a.point_count);
    }
  }
}

TEST(Cosets, DisjointUnionLayout) {
  const auto spec = std::get<CosetSpec>(support::load_fixture("f4_s3_mixed.json").value);
  const DisjointUnion u = coset_union(spec);
  EXPECT_EQ(u.action.point_count, 9u);
  EXPECT_EQ(u.offsets, (std::vector<std::size_t>{0, 6}));
  const PermAction one{1, {}};
  const PermAction two{2, {{1, 0}}};
  EXPECT_THROW(disjoint_union(std::vector<PermAction>{one, two}), std::invalid_argument);
}

TEST(Realization, FixturesMatchOrbitOracle) {
  for (const auto& name : support::realized_fixtures()) expect_matches_oracle(support::realize(name), name);
  expect_matches_oracle(support::realize("one_point.json"), "one point");
}

TEST(Realization, RandomCosetSpecsMatchOrbitOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const CosetSpec spec = support::random_coset_spec(rng);
    expect_matches_oracle(orbit_atoms(coset_union(spec).action), spec.name + " #" + std::to_string(trial));
  }
}

TEST(Realization, FrozenFixtureShapes) {
  const ConcreteRealization f1 = support::realize("f1_trivial_two_points.json");
  EXPECT_EQ(f1.arrow_count(), 4u);
  EXPECT_EQ(f1.hypergroupoid().unit_count(), 2u);
  EXPECT_EQ(f1.arrow_of(0, 1), 1u);
  EXPECT_EQ(f1.arrow_of(1, 0), 2u);
  EXPECT_EQ(f1.hypergroupoid().unit_arrows(), (std::vector<ArrowId>{0, 3}));

  const ConcreteRealization f3 = support::realize("f3_s3_three_points.json");
  EXPECT_EQ(f3.arrow_count(), 2u);
  EXPECT_EQ(count_mu(f3, 0, 1, 1), 2u);
  EXPECT_EQ(count_mu(f3, 1, 1, 1), 1u);
  EXPECT_EQ(count_mu(f3, 1, 0, 0), 0u);

  const ConcreteRealization f4 = support::realize("f4_s3_mixed.json");
  EXPECT_EQ(f4.point_count(), 9u);
  EXPECT_EQ(f4.arrow_count(), 14u);
  EXPECT_EQ(f4.hypergroupoid().unit_count(), 2u);
  const Hypergroupoid& h = f4.hypergroupoid();
  EXPECT_EQ(support::arrows_between(h, 0, 0).size(), 6u);
  EXPECT_EQ(support::arrows_between(h, 1, 1).size(), 2u);
  EXPECT_EQ(support::arrows_between(h, 0, 1).size(), 3u);
  EXPECT_EQ(support::arrows_between(h, 1, 0).size(), 3u);
}

TEST(Realization, GroupCaseIsTheGroupLaw) {
  const ConcreteRealization real = support::realize("f2_s3_regular.json");
  const Hypergroupoid& h = real.hypergroupoid();
  ASSERT_EQ(h.unit_count(), 1u);
  ASSERT_EQ(h.arrow_count(), 6u);
  // Arrow g sends point 0 to the point x with (x, 0) in g; composition follows.
  std::vector<std::size_t> image(6);
  for (ArrowId g = 0; g < 6; ++g)
    for (std::size_t x = 0; x < 6; ++x)
      if (real.arrow_of(x, 0) == g) image[g] = x;
  for (ArrowId g = 0; g < 6; ++g)
    for (ArrowId g2 = 0; g2 < 6; ++g2) {
      // (x, 0) ∈ g·g2 iff x g t and t g2 0: t = image[g2], x = the image of t under g.
      const std::size_t t = image[g2];
      std::size_t x = 0;
      for (std::size_t p = 0; p < 6; ++p)
        if (real.arrow_of(p, t) == g) x = p;
      const ArrowId product = real.arrow_of(x, 0);
      for (ArrowId a = 0; a < 6; ++a) EXPECT_EQ(count_mu(real, a, g, g2), a == product ? 1u : 0u);
    }
}

TEST(Realization, CountsAreRepresentativeIndependent) {
  const ConcreteRealization real = support::realize("f4_s3_mixed.json");
  const std::size_t n = real.point_count();
  for (ArrowId g = 0; g < real.arrow_count(); ++g)
    for (ArrowId g2 = 0; g2 < real.arrow_count(); ++g2)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          ASSERT_EQ(count_mu_at(real, g, g2, x, y), count_mu(real, real.arrow_of(x, y), g, g2));
}

TEST(Realization, IdsAreOrderedByRepresentative) {
  const ConcreteRealization real = support::realize("f4_s3_mixed.json");
  for (ArrowId a = 1; a < real.arrow_count(); ++a) {
    const auto p = real.representative(a - 1), q = real.representative(a);
    EXPECT_LT(std::pair(p.x, p.y), std::pair(q.x, q.y));
  }
}

TEST(Realization, RejectsBadActions) {
  EXPECT_THROW(orbit_atoms(PermAction{0, {}}), std::invalid_argument);
  EXPECT_THROW(orbit_atoms(PermAction{3, {{0, 1, 1}}}), std::invalid_argument);
}
