#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace hyperq;

TEST(Hypergroupoid, FromTwoAtomQuantale) {
  const AtomicQuantale q = support::load_quantale("f5_quantale.json");
  const Hypergroupoid h = from_quantale(q);
  EXPECT_EQ(h.unit_count(), 1u);
  EXPECT_EQ(h.arrow_count(), 2u);
  EXPECT_EQ(std::vector<ArrowId>(h.comp(1, 1).begin(), h.comp(1, 1).end()), (std::vector<ArrowId>{0, 1}));
  EXPECT_TRUE(h.is_unit_arrow(0));
  EXPECT_EQ(h.star(1), 1u);
  EXPECT_EQ(to_quantale(h), q);
  EXPECT_TRUE(check_hg_axioms(h).passed());
}

TEST(Hypergroupoid, AxiomsHoldOnEveryRealization) {
  for (const auto& name : support::realized_fixtures()) {
    const Hypergroupoid h = support::realize(name).hypergroupoid();
    EXPECT_TRUE(check_hg_axioms(h).passed()) << name;
    EXPECT_EQ(from_quantale(to_quantale(h)), h) << name;
  }
}

TEST(Hypergroupoid, CompositeIsRelationComposite) {
  // comp(b, a) is the set of orbits meeting the relation "a then b".
  for (const auto& name : support::realized_fixtures()) {
    const ConcreteRealization real = support::realize(name);
    const Hypergroupoid& h = real.hypergroupoid();
    const int n = static_cast<int>(real.point_count());
    std::vector<oracle::Relation> rel(h.arrow_count());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) rel[real.arrow_of(x, y)].insert({x, y});
    for (ArrowId b = 0; b < h.arrow_count(); ++b)
      for (ArrowId a = 0; a < h.arrow_count(); ++a) {
        std::set<ArrowId> expected;
        for (const auto& [x, y] : oracle::compose(rel[b], rel[a])) expected.insert(real.arrow_of(x, y));
        const auto c = h.comp(b, a);
        EXPECT_EQ(std::set<ArrowId>(c.begin(), c.end()), expected) << name;
      }
  }
}

TEST(Hypergroupoid, MutatedQuantaleBreaksReversibility) {
  const Hypergroupoid h = from_quantale(support::load_quantale("f5_mutated.json"));
  const AxiomReport rep = check_hg_axioms(h);
  EXPECT_TRUE(rep.at("HG1").passed);
  EXPECT_FALSE(rep.at("HG3").passed);
}

TEST(Hypergroupoid, MutatedCompositionBreaksAssociativity) {
  const Hypergroupoid h = support::realize("f2_s3_regular.json").hypergroupoid();
  // Swap one product of two non-identity arrows for a different arrow.
  ArrowId b = 1, a = 2;
  const ArrowId was = h.comp(b, a).front();
  const ArrowId other = was == 3 ? 4 : 3;
  const Hypergroupoid bad = with_comp(h, b, a, {other});
  EXPECT_FALSE(check_hg_axioms(bad).passed());
}

TEST(Hypergroupoid, RejectsInconsistentTables) {
  std::vector<ArrowInfo> arrows{{0, 0, 0}, {0, 0, 1}};
  std::vector<std::vector<ArrowId>> comp{{0}, {1}, {1}, {}};
  EXPECT_THROW(Hypergroupoid(1, arrows, {0}, comp), std::invalid_argument);  // empty composable pair
  comp[3] = {0, 1};
  EXPECT_NO_THROW(Hypergroupoid(1, arrows, {0}, comp));
  EXPECT_THROW(Hypergroupoid(1, {{0, 0, 0}, {0, 0, 0}}, {0}, comp), std::invalid_argument);  // star not involutive
}

TEST(Hypergroupoid, NonUniqueUnitsAreNotModular) {
  // Atom 1 has no identity on the left: 0·1 is empty.
  std::vector<QElement> products(4, QElement(2));
  products[0] = QElement::from_atoms(2, {0});
  products[2] = QElement::from_atoms(2, {1});
  const AtomicQuantale q(2, products, {0, 1}, QElement::from_atoms(2, {0}));
  EXPECT_THROW(from_quantale(q), NotModular);
}

TEST(Hypergroupoid, SimpleArrowsAndSemisimplicity) {
  const Hypergroupoid f2 = support::realize("f2_s3_regular.json").hypergroupoid();
  for (ArrowId g = 0; g < f2.arrow_count(); ++g) EXPECT_TRUE(is_simple(f2, g));
  EXPECT_TRUE(is_semisimple(f2).holds);
  EXPECT_TRUE(is_semisimple(support::realize("f1_trivial_two_points.json").hypergroupoid()).holds);
  EXPECT_TRUE(is_semisimple(support::realize("f4_s3_mixed.json").hypergroupoid()).holds);

  const Hypergroupoid f3 = support::realize("f3_s3_three_points.json").hypergroupoid();
  EXPECT_TRUE(is_simple(f3, 0));
  EXPECT_FALSE(is_simple(f3, 1));
  const FactorizationResult r = is_semisimple(f3);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.first_failure, std::optional<AtomId>(1));
}

TEST(Hypergroupoid, SimpleMeansUnitLeftWeight) {
  for (const auto& name : support::realized_fixtures()) {
    const WeightedHypergroupoid w = weights(support::realize(name));
    for (ArrowId g = 0; g < w.arrow_count(); ++g)
      EXPECT_EQ(is_simple(w.base(), g), w.left(g) == ExtNat(1)) << name << " a" << g;
  }
}

TEST(Hypergroupoid, Morphisms) {
  const Hypergroupoid f2 = support::realize("f2_s3_regular.json").hypergroupoid();
  const Hypergroupoid f3 = support::realize("f3_s3_three_points.json").hypergroupoid();
  HypergroupoidMap id{{0}, {0, 1, 2, 3, 4, 5}};
  const MorphismReport ok = check_morphism(f2, f2, id);
  EXPECT_TRUE(ok.holds);
  EXPECT_TRUE(ok.star_preserved);

  // Sending Δ to an involution t of the group: Δ·Δ = {1, Δ} lands on {1, t},
  // which is not contained in t·t = {1}.
  ArrowId t = 0;
  for (ArrowId g = 1; g < f2.arrow_count(); ++g)
    if (f2.star(g) == g) t = g;
  ASSERT_NE(t, 0u);
  const MorphismReport bad = check_morphism(f3, f2, HypergroupoidMap{{0}, {0, t}});
  EXPECT_FALSE(bad.holds);
  EXPECT_FALSE(bad.failure.empty());
}
