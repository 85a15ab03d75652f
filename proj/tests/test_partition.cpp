#include <gtest/gtest.h>

#include "support.hpp"

using namespace hsforge;
using support::w2;

namespace {

  /// Every word up to length 6 lies in exactly one block, checked by
  /// membership u alpha^-1 in H rather than through the product automaton.
  bool covers_exactly_once(CosetPartition const& p) {
    for (auto const& u : support::all_words(p.rank(), 6)) {
      int hits = 0;
      for (auto const& c : p.blocks()) {
        hits += support::in_coset(c, u) ? 1 : 0;
      }
      if (hits != 1) {
        return false;
      }
    }
    return true;
  }

}  // namespace

TEST(Partition, FourCycleAndKleinFourValidate) {
  auto p = support::example_4_cycle();
  EXPECT_TRUE(p.validated());
  EXPECT_EQ(p.indices(), (std::vector<std::size_t>{2, 4, 4}));
  EXPECT_EQ(multiplicity(p), (std::vector<std::size_t>{4}));
  EXPECT_TRUE(covers_exactly_once(p));

  auto q = support::example_no_4_cycle();
  EXPECT_EQ(q.indices(), (std::vector<std::size_t>{2, 4, 4}));
  EXPECT_TRUE(covers_exactly_once(q));
}

TEST(Partition, FullCosetPartitions) {
  auto p = support::full_cosets(support::table_K(), "K");
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(multiplicity(p), (std::vector<std::size_t>{4}));
  EXPECT_TRUE(covers_exactly_once(p));
}

TEST(Partition, GapIsWitnessed) {
  CosetPartition p(2, {CosetSpec("H1", support::table_H1(), w2("")),
                       CosetSpec("K", support::table_K(), w2("a"))});
  auto r = validate(p);
  EXPECT_FALSE(r.valid);
  ASSERT_TRUE(r.gap.has_value());
  for (auto const& c : p.blocks()) {
    EXPECT_FALSE(support::in_coset(c, *r.gap));
  }
  EXPECT_THROW(p.checked(), NotAPartition);
}

TEST(Partition, OverlapIsWitnessed) {
  CosetPartition p(2, {CosetSpec("H1", support::table_H1(), w2("")),
                       CosetSpec("H1", support::table_H1(), w2("a")),
                       CosetSpec("K", support::table_K(), w2("a"))});
  auto r = validate(p);
  EXPECT_FALSE(r.valid);
  ASSERT_TRUE(r.overlap.has_value());
  EXPECT_TRUE(support::in_coset(p[r.overlap->first], r.overlap->word));
  EXPECT_TRUE(support::in_coset(p[r.overlap->second], r.overlap->word));
}

TEST(Partition, StateCapIsEnforced) {
  auto p = support::example_4_cycle();
  EXPECT_THROW(validate(p, 1), StateCapExceeded);
  EXPECT_THROW(big_N(p, Caps{1, default_cap}), CapExceeded);
}

TEST(Partition, RequiresValidationForAnalysis) {
  CosetPartition p(2, {CosetSpec("H1", support::table_H1(), w2("")),
                       CosetSpec("H1", support::table_H1(), w2("a"))});
  EXPECT_THROW(intersection_conditions(p, 0, 1), InvalidArgument);
}

TEST(NormalCore, KHasIndexEight) {
  auto N = normal_core(support::table_K());
  EXPECT_EQ(N.index(), 8u);
  // A normal subgroup: every conjugate of a generator stays inside.
  for (auto const& g : schreier_generators(N)) {
    for (auto s : {"a", "b", "A", "B", "ab"}) {
      EXPECT_TRUE(N.contains(multiply(multiply(inverse(w2(s)), g), w2(s))));
    }
  }
  EXPECT_EQ(normal_core(support::table_M()), support::table_M());
}

TEST(BigN, FourCycleAndKleinFour) {
  EXPECT_EQ(big_N(support::example_4_cycle()).index(), 8u);
  // M lies inside H1, so N = M.
  EXPECT_EQ(big_N(support::example_no_4_cycle()), support::table_M());
}

TEST(Orders, RelativeOrdersAlongAb) {
  auto p = support::example_4_cycle();
  EXPECT_EQ(orders_rel(p, w2("ab")), (std::vector<std::size_t>{2, 4, 4}));
  auto om = o_max_and_sharp(p, w2("ab"));
  EXPECT_EQ(om.o_max, 4u);
  EXPECT_EQ(om.sharp, 2u);
  EXPECT_EQ(orbit_size_under(p, w2("ab")), 4u);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(order_rel(p, i, w2("ab")), support::rel_order_by_powers(p[i], w2("ab")));
  }
}

TEST(Action, ActedPartitionStaysValid) {
  auto p = support::example_4_cycle();
  auto q = act(p, w2("ab"));
  EXPECT_TRUE(q.checked().validated());
  EXPECT_EQ(q[1].rep, w2("aab"));
  EXPECT_TRUE(rho(p, q).is_zero());
  // Orbit of size 4 under <ab>.
  auto r = p;
  for (int i = 0; i < 4; ++i) {
    r = act(r, w2("ab"));
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(r[i].marked, p[i].marked);
  }
}

TEST(Intersection, NoFourCycleExamplePairTwoThree) {
  auto p = support::example_no_4_cycle();
  auto r = intersection_conditions(p, 1, 2);
  EXPECT_EQ(r.index_all, 4u);
  EXPECT_EQ(r.index_without, 2u);
  EXPECT_TRUE(r.strict);
  EXPECT_TRUE(r.lcm_not_dividing);
  EXPECT_TRUE(r.same_subgroup);
  auto r01 = intersection_conditions(p, 0, 1);
  EXPECT_FALSE(r01.holds);
  EXPECT_THROW(intersection_conditions(p, 1, 1), InvalidArgument);
}

TEST(Metric, FourCycleAndKleinFourAreAtOneHalf) {
  auto d = rho(support::example_4_cycle(), support::example_no_4_cycle());
  EXPECT_EQ(d.place, 1u);
  EXPECT_DOUBLE_EQ(d.value(), 0.5);
  EXPECT_FALSE(d.below_power(1));
  EXPECT_TRUE(rho(support::example_4_cycle(), support::example_4_cycle()).is_zero());
}

TEST(Metric, DifferentLengthsDifferAfterCommonPrefix) {
  auto p = support::full_cosets(support::table_H1(), "H1");
  auto q = support::full_cosets(support::table_K(), "K");
  EXPECT_EQ(rho(p, q).place, 1u);
  // {K, K, H1} against {K, K, K, K}: first two places agree.
  EXPECT_EQ(rho(support::example_4_cycle(), q).place, 3u);
}

TEST(Separating, ExcludesTheWord) {
  support::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    auto w = support::random_word(rng, 2, 10);
    if (w.empty()) {
      EXPECT_THROW(separating_subgroup(2, w), EmptyWord);
      continue;
    }
    auto t = separating_subgroup(2, w);
    EXPECT_FALSE(t.contains(w)) << display(w);
    EXPECT_EQ(t.index(), w.length() + 1);
  }
}

TEST(Lift, SymmetricGroupOfDegreeThree) {
  auto t1 = Permutation::from_cycles(3, {{0, 1}});
  auto c3 = Permutation::from_cycles(3, {{0, 1, 2}});
  PermGroup S3(3, {t1, c3});
  auto      id = Permutation::identity(3);
  std::vector<Permutation> A3{id, c3, c3 * c3};
  std::vector<QuotientBlock> blocks{
      {A3, id},
      {{id}, t1},
      {{id}, t1 * c3},
      {{id}, t1 * c3 * c3},
  };
  auto p = lift_partition(S3, blocks);
  EXPECT_EQ(p.indices(), (std::vector<std::size_t>{2, 6, 6, 6}));
  EXPECT_EQ(multiplicity(p), (std::vector<std::size_t>{6}));
  EXPECT_TRUE(covers_exactly_once(p));
}

TEST(Lift, RejectsOverlapAndGap) {
  auto t1 = Permutation::from_cycles(3, {{0, 1}});
  auto c3 = Permutation::from_cycles(3, {{0, 1, 2}});
  PermGroup S3(3, {t1, c3});
  auto      id = Permutation::identity(3);
  std::vector<Permutation> A3{id, c3, c3 * c3};
  std::vector<QuotientBlock> gap{{A3, id}};
  EXPECT_THROW(lift_partition(S3, gap), NotAPartition);
  std::vector<QuotientBlock> overlap{{A3, id}, {A3, t1}, {{id}, id}};
  EXPECT_THROW(lift_partition(S3, overlap), NotAPartition);
  std::vector<QuotientBlock> not_closed{{{id, c3}, id}};
  EXPECT_THROW(lift_partition(S3, not_closed), NotAPartition);
}

TEST(Lift, RandomRefinementsAreValid) {
  support::Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    auto p = support::random_partition(rng, 2, 64);
    EXPECT_TRUE(covers_exactly_once(p));
    std::size_t m = big_N(p).index();
    std::size_t sum = 0;
    for (auto d : p.indices()) {
      EXPECT_EQ(m % d, 0u);
      sum += m / d;
    }
    EXPECT_EQ(sum, m);
  }
}
