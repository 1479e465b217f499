#include <gtest/gtest.h>

#include "support.hpp"

using namespace psy;
using testing_support::corpus;
using testing_support::full_corpus;
using testing_support::structure;

TEST(Constraint, Examples) {
  const auto x1 = structure("X1"), x2 = structure("X2");
  EXPECT_TRUE(crossing_constraint(CrossingKind::Positive, x1, 1, 1, 1, 1));
  EXPECT_FALSE(crossing_constraint(CrossingKind::Positive, x1, 1, 1, 1, 2));
  EXPECT_TRUE(crossing_constraint(CrossingKind::Pre, x2, 1, 2, 3, 3));
  EXPECT_FALSE(crossing_constraint(CrossingKind::Pre, x2, 1, 2, 3, 1));
  const auto dehn = promote_positive(dehn_tribracket(cyclic_group(3)));
  EXPECT_TRUE(crossing_constraint(CrossingKind::Negative, dehn, 3, 3, 3, 3));
}

TEST(Count, ExampleValues) {
  const auto x1 = structure("X1"), x2 = structure("X2");
  EXPECT_EQ(count_colorings(corpus("unknot"), x1), 9u);
  EXPECT_EQ(count_colorings(corpus("3_1.3"), x1), 27u);
  EXPECT_EQ(count_colorings(corpus("3_1.3"), x2), 9u);
  EXPECT_EQ(count_colorings(corpus("3_1"), x2), 27u);
}

TEST(Count, FreeLoopsOnly) {
  for (int k = 1; k <= 4; ++k) {
    Diagram d;
    d.free_loops = k;
    std::uint64_t expect = 1;
    for (int i = 0; i <= k; ++i) expect *= 3;
    for (const auto& x : testing_support::printed_six()) EXPECT_EQ(count_colorings(d, x), expect);
  }
}

TEST(Count, FreeLoopFactor) {
  for (const auto& d : full_corpus()) {
    Diagram e = d;
    ++e.free_loops;
    for (const auto& x : testing_support::printed_six())
      EXPECT_EQ(count_colorings(e, x), 3 * count_colorings(d, x)) << d.name;
  }
}

TEST(Count, InvalidDiagramIsRejected) {
  auto d = corpus("3_1");
  d.edges.pop_back();
  EXPECT_THROW(count_colorings(d, structure("X1")), InputError);
}

TEST(Count, BruteForceOracleOnSmallDiagrams) {
  const auto classes = enumerate_psybrackets(3).representatives;
  int checked = 0;
  for (const auto& d : full_corpus()) {
    if (faces(d).size() > 6) continue;
    for (const auto& x : classes) {
      EXPECT_EQ(count_colorings(d, x), testing_support::brute_force_count(d, x)) << d.name;
      ++checked;
    }
    for (const auto& x : enumerate_psybrackets(2).representatives)
      EXPECT_EQ(count_colorings(d, x), testing_support::brute_force_count(d, x)) << d.name;
  }
  EXPECT_GT(checked, 0);
}

TEST(Count, LinearOracleForDehnStructures) {
  for (int n = 2; n <= 8; ++n) {
    const auto x = promote_positive(dehn_tribracket(cyclic_group(n)));
    for (const auto& d : full_corpus())
      EXPECT_EQ(count_colorings(d, x), testing_support::linear_oracle(d, n, {1, -1, 1}, {1, -1, 1}))
          << d.name << " n=" << n;
  }
}

TEST(Count, LinearOracleForAffineStructures) {
  const auto x1 = structure("X1"), x2 = structure("X2");
  for (const auto& d : full_corpus()) {
    EXPECT_EQ(count_colorings(d, x1), testing_support::linear_oracle(d, 3, {-1, 1, 1}, {-1, 1, 1})) << d.name;
    EXPECT_EQ(count_colorings(d, x2), testing_support::linear_oracle(d, 3, {-1, 1, 1}, {1, 1, -1})) << d.name;
  }
}

TEST(Count, KnotDeterminantsShowThroughFoxColorings) {
  // -a+b+c over Z_p counts p times the Fox p-colorings.
  auto fox = [](int p) { return promote_positive(testing_support::affine(p, -1, 1, 1)); };
  EXPECT_EQ(count_colorings(corpus("3_1"), fox(3)), 27u);
  EXPECT_EQ(count_colorings(corpus("4_1"), fox(3)), 9u);
  EXPECT_EQ(count_colorings(corpus("4_1"), fox(5)), 125u);
  EXPECT_EQ(count_colorings(corpus("5_1"), fox(5)), 125u);
  EXPECT_EQ(count_colorings(corpus("5_2"), fox(5)), 25u);
  EXPECT_EQ(count_colorings(corpus("5_2"), fox(7)), 343u);
}

TEST(Count, ClassicalDiagramsSeeOnlyTheClassicalPart) {
  for (int n = 2; n <= 3; ++n)
    for (const auto& t : enumerate_tribrackets(n))
      for (const auto& d : full_corpus()) {
        if (d.precrossing_count() != 0) continue;
        EXPECT_EQ(count_colorings(d, promote_positive(t)), count_colorings(d, promote_negative(t)));
      }
}

TEST(Count, ReversalLeavesCountsOfPrintedStructuresOnKnots) {
  for (const auto& d : full_corpus())
    for (const auto& x : testing_support::printed_six())
      EXPECT_EQ(count_colorings(reversed(d), x), count_colorings(d, x)) << d.name;
}

TEST(Enumerate, ListsEveryColoring) {
  const auto x1 = structure("X1"), x2 = structure("X2");
  const auto unknot = enumerate_colorings(corpus("unknot"), x1);
  EXPECT_EQ(unknot.size(), 9u);
  const auto trefoil = corpus("3_1");
  const auto list = enumerate_colorings(trefoil, x2);
  ASSERT_EQ(list.size(), 27u);
  const auto table = corner_regions(trefoil, faces(trefoil));
  for (const auto& col : list)
    for (int c = 0; c < trefoil.crossing_count(); ++c) {
      const auto& r = table[c];
      EXPECT_TRUE(crossing_constraint(trefoil.crossings[c].kind, x2, col[r[kL]], col[r[kB]], col[r[kR]], col[r[kT]]));
    }
  EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
  EXPECT_EQ(std::adjacent_find(list.begin(), list.end()), list.end());
  const auto trivial = structure("trivial");
  for (const auto& d : full_corpus()) EXPECT_EQ(enumerate_colorings(d, trivial).size(), 1u);
}

TEST(Enumerate, SizeMatchesCount) {
  for (const auto& d : full_corpus())
    for (const auto& x : testing_support::printed_six())
      EXPECT_EQ(enumerate_colorings(d, x).size(), count_colorings(d, x));
}

TEST(Wereset, HopfShadowWeights) {
  const auto groups = wereset(corpus("hopf_shadow"), {dehn_tribracket(cyclic_group(3))});
  ASSERT_EQ(groups.size(), 3u);
  std::map<int, Fraction> by_lk;
  for (const auto& g : groups) {
    ASSERT_EQ(g.fingerprint.linking.size(), 1u);
    by_lk[g.fingerprint.linking[0]] = g.weight;
    // Dehn colorings ignore crossing signs, so every resolution gives 27.
    EXPECT_EQ(g.fingerprint.phi, std::vector<std::uint64_t>{27});
  }
  EXPECT_EQ(by_lk[1], (Fraction{1, 4}));
  EXPECT_EQ(by_lk[-1], (Fraction{1, 4}));
  EXPECT_EQ(by_lk[0], (Fraction{1, 2}));
}

TEST(Wereset, NoPrecrossings) {
  const auto groups = wereset(corpus("3_1"), {dehn_tribracket(cyclic_group(3))});
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].weight, (Fraction{1, 1}));
  EXPECT_TRUE(groups[0].sample.empty());
}

TEST(Wereset, TrefoilWithPrecrossingSplitsEvenly) {
  const auto d = corpus("3_1.3");
  const auto x1 = structure("X1").classical;
  const auto groups = wereset(d, {x1});
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].weight, (Fraction{1, 2}));
  EXPECT_EQ(groups[1].weight, (Fraction{1, 2}));
  EXPECT_EQ(groups[0].fingerprint.phi, std::vector<std::uint64_t>{9});
  EXPECT_EQ(groups[1].fingerprint.phi, std::vector<std::uint64_t>{27});
  EXPECT_EQ(groups[1].sample.begin()->second, CrossingKind::Positive);
  // The Dehn tribracket on Z_3 does not see the difference.
  const auto dehn = wereset(d, {dehn_tribracket(cyclic_group(3))});
  ASSERT_EQ(dehn.size(), 1u);
  EXPECT_EQ(dehn[0].fingerprint.phi, std::vector<std::uint64_t>{9});
}

TEST(Wereset, WeightsSumToOne) {
  const std::vector<TernaryTensor> battery = {structure("X1").classical, structure("X3").classical};
  for (const auto& d : full_corpus()) {
    const auto groups = wereset(d, battery);
    const std::uint64_t den = std::uint64_t{1} << d.precrossing_count();
    std::uint64_t total = 0;
    for (const auto& g : groups) total += g.weight.num * (den / g.weight.den);
    EXPECT_EQ(total, den) << d.name;
  }
}

TEST(Wereset, Refusals) {
  EXPECT_THROW(wereset(corpus("3_1.3"), {}, 0), InputError);
  EXPECT_NO_THROW(wereset(corpus("5_1"), {}, 0));
  EXPECT_THROW(wereset(corpus("3_1.3"), {TernaryTensor(3, 1)}), InputError);
  Diagram big = corpus("5_1");
  for (auto& c : big.crossings) c.kind = CrossingKind::Pre;
  EXPECT_THROW(wereset(big, {}, 4), InputError);
  EXPECT_NO_THROW(wereset(big, {}, 5));
}
