// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "setfam/distance.hpp"
#include "setfam/hardness.hpp"
#include "setfam/violations.hpp"

using namespace setfam;

namespace {

InstanceSpec spec(InstanceKind kind, int n, double eps, std::uint64_t seed) {
  return InstanceSpec{kind, n, eps, seed};
}

}  // namespace

TEST(Talagrand, Parameters) {
  EXPECT_EQ(talagrand_term_size(25, 1.0), 5);
  EXPECT_EQ(talagrand_term_count(25, 1.0), 3u);
  EXPECT_EQ(talagrand_term_size(4, 1.0), 2);
  EXPECT_THROW(talagrand_term_count(4, 1.0), InvalidArgument);
  // Instance reference points.
  EXPECT_EQ(talagrand_term_size(8, 0.5), 6);
  EXPECT_EQ(talagrand_term_count(8, 0.5), 5u);
  EXPECT_EQ(talagrand_term_size(15, 0.5), 8);
  EXPECT_EQ(talagrand_term_count(15, 0.5), 21u);
  EXPECT_EQ(talagrand_term_size(12, 1.0), 3);
  EXPECT_EQ(talagrand_term_count(12, 1.0), 1u);
  EXPECT_THROW(talagrand_term_count(100, 0.1), Error);
}

TEST(Talagrand, SampleShapeAndMonotoneCoupling) {
  CounterRng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    const auto t = sample_talagrand(25, 1.0, rng);
    ASSERT_EQ(t.size(), 3u);
    for (auto term : t.terms()) {
      EXPECT_GE(std::popcount(term), 1);
      EXPECT_LE(std::popcount(term), 5);
      EXPECT_EQ(term & ~arity_mask(25), 0u);
    }
    for (int k = 0; k < 200; ++k) {
      const std::uint64_t y = rng() & arity_mask(25);
      const std::uint64_t x = y & rng();
      const auto sx = t.satisfied(x), sy = t.satisfied(y);
      for (int l : sx) EXPECT_NE(std::find(sy.begin(), sy.end(), l), sy.end());
      EXPECT_LE(t.eval(x), t.eval(y));
    }
    EXPECT_EQ(t.count_satisfied(arity_mask(25)), 2);
    EXPECT_EQ(t.unique_term(arity_mask(25)), -1);
    EXPECT_EQ(t.count_satisfied(0), 0);
  }
}

TEST(Talagrand, TermsDrawnWithReplacement) {
  // With term_size 5 over 25 coordinates, P(no repeat) = 25*24*23*22*21/25^5.
  CounterRng rng(2);
  const int draws = 20000;
  int full = 0;
  for (int i = 0; i < draws; ++i) {
    const auto t = sample_talagrand(25, 1.0, rng);
    for (auto term : t.terms()) full += std::popcount(term) == 5;
  }
  const double p = 25.0 * 24 * 23 * 22 * 21 / std::pow(25.0, 5);
  const double trials = 3.0 * draws;
  EXPECT_NEAR(full, trials * p, 5 * std::sqrt(trials * p * (1 - p)));
}

TEST(UniqueSat, WindowAndBoundaries) {
  EXPECT_EQ(unique_sat_window(25, 1.0), (std::pair<int, int>{13, 13}));
  EXPECT_EQ(unique_sat_window(36, 1.0), (std::pair<int, int>{18, 18}));
  EXPECT_EQ(unique_sat_window(49, 1.0), (std::pair<int, int>{25, 25}));
  EXPECT_EQ(unique_sat_window(400, 1.0), (std::pair<int, int>{200, 201}));
  const auto r = unique_sat_probability(25, 1.0, 2000, 1);
  ASSERT_EQ(r.per_weight.size(), 1u);
  EXPECT_EQ(r.per_weight[0].weight, 13);
  EXPECT_EQ(r.pooled.trials, 2000u);
  EXPECT_LE(r.pooled.ci.lo, r.pooled.estimate);
  EXPECT_GE(r.pooled.ci.hi, r.pooled.estimate);
}

TEST(IntInstances, ReferenceParameters) {
  const auto yes = IntersectInstance::build(spec(InstanceKind::int_yes, 16, 0.5, 1));
  EXPECT_EQ(yes.arity(), 18);
  EXPECT_EQ(yes.action_size(), 8);
  EXPECT_EQ(std::popcount(yes.action_mask()), 8);
  EXPECT_EQ(yes.action_mask() | yes.control_mask(), arity_mask(16));
  EXPECT_EQ(yes.dnf().size(), 5u);
  EXPECT_EQ(yes.dnf().term_size(), 6);
  for (auto t : yes.dnf().terms()) EXPECT_EQ(t & yes.action_mask(), 0u);
  const auto big = IntersectInstance::build(spec(InstanceKind::int_no, 25, 0.5, 1));
  EXPECT_EQ(big.action_size(), 10);
  EXPECT_EQ(big.dnf().size(), 21u);
  EXPECT_THROW(IntersectInstance::build(spec(InstanceKind::int_yes, 4, 0.5, 1)), InvalidArgument);
  EXPECT_THROW(IntersectInstance::build(spec(InstanceKind::uc_yes, 16, 0.5, 1)), InvalidArgument);
}

TEST(IntInstances, ThresholdsExact) {
  const auto inst = IntersectInstance::build(spec(InstanceKind::int_yes, 16, 0.5, 1));
  // a = 8: top iff w > 4 + sqrt(8) = 6.83, bottom iff w < 1.17.
  for (int w = 0; w <= 8; ++w) {
    EXPECT_EQ(inst.top(w), w >= 7) << w;
    EXPECT_EQ(inst.bottom(w), w <= 1) << w;
  }
}

TEST(IntInstances, StructuralRules) {
  for (auto kind : {InstanceKind::int_yes, InstanceKind::int_no}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto inst = IntersectInstance::build(spec(kind, 16, 0.5, seed));
      const std::uint64_t b16 = std::uint64_t{1} << 16, b17 = std::uint64_t{1} << 17;
      for (std::uint64_t x = 0; x < b16; ++x) {
        ASSERT_FALSE(inst.eval(Point(x, 18)));
        ASSERT_FALSE(inst.eval(Point(x | b16 | b17, 18)));
        if (kind != InstanceKind::int_no) continue;
        const int l = inst.dnf().unique_term(x & inst.control_mask());
        const int w = std::popcount(x & inst.action_mask());
        if (l >= 0 && inst.bits()[static_cast<std::size_t>(l)] && inst.bottom(w)) {
          ASSERT_TRUE(inst.eval(Point(x | b17, 18)));
        }
        if (inst.dnf().count_satisfied(x & inst.control_mask()) == 0) {
          ASSERT_FALSE(inst.eval(Point(x | b17, 18)));
        }
      }
    }
  }
}

TEST(IntInstances, YesKindIsIntersecting) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = IntersectInstance::build(spec(InstanceKind::int_yes, 16, 0.5, seed));
    EXPECT_TRUE(is_intersecting(TruthTable::from_function(inst))) << seed;
  }
}

TEST(IntInstances, RebuildIsDeterministic) {
  const auto a = IntersectInstance::build(spec(InstanceKind::int_no, 16, 0.5, 5));
  const auto b = IntersectInstance::build(spec(InstanceKind::int_no, 16, 0.5, 5));
  EXPECT_EQ(TruthTable::from_function(a), TruthTable::from_function(b));
  EXPECT_EQ(a.bits(), b.bits());
  const auto c = IntersectInstance::build(spec(InstanceKind::int_no, 16, 0.5, 6));
  EXPECT_NE(TruthTable::from_function(a), TruthTable::from_function(c));
}

TEST(IntInstances, ViolationCounts) {
  std::uint64_t total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto yes = IntersectInstance::build(spec(InstanceKind::int_yes, 16, 0.5, seed));
    EXPECT_EQ(count_int_no_violations(yes).pairs, 0u);
    const auto no = IntersectInstance::build(spec(InstanceKind::int_no, 16, 0.5, seed));
    const auto c = count_int_no_violations(no);
    total += c.pairs;
    if (c.active_controls == 0) {
      EXPECT_EQ(c.pairs, 0u);
    }
    if (c.pairs > 0) {
      // Pairs are disjoint I-violations, so they lower-bound the matching.
      const auto t = TruthTable::from_function(no);
      EXPECT_FALSE(is_intersecting(t));
    }
  }
  EXPECT_GT(total, 0u);
}

TEST(IntInstances, OneSided) {
  EXPECT_THROW(IntersectInstance::build(spec(InstanceKind::int_one_sided_no, 40, 0.5, 1)),
               InvalidArgument);
  const auto inst = IntersectInstance::build(spec(InstanceKind::int_one_sided_no, 60, 0.5, 1));
  EXPECT_EQ(inst.action_size(), 1);
  EXPECT_EQ(inst.arity(), 62);
  // Brute-force count over weights of (x_A, x_C) with the printed thresholds.
  const double k2 = 60 * std::log(2.0);
  std::uint64_t want = 0;
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 59; ++j) {
      const double d = 2.0 * (i + j) - 60, e = 60.0 - 200.0 * i;
      if (d * d <= 400 * k2 && e > 0 && e * e > 40000 * k2) want += binomial(59, j);
    }
  EXPECT_EQ(inst.one_sided_half_ones(), want);
}

TEST(UcInstances, ReferenceParameters) {
  const auto inst = UcInstance::build(spec(InstanceKind::uc_yes, 16, 1.0 / 16, 1));
  EXPECT_EQ(inst.action_size(), 4);
  EXPECT_EQ(inst.dnf().size(), 1u);
  EXPECT_EQ(inst.dnf().term_size(), 3);
  EXPECT_EQ(inst.strings().size(), 1u);
  EXPECT_EQ(inst.strings()[0] & ~inst.action_mask(), 0u);
  EXPECT_EQ(uc_action_size(0.25), 2);
  EXPECT_THROW(uc_action_size(0.3), InvalidArgument);
  EXPECT_THROW(UcInstance::build(spec(InstanceKind::uc_yes, 6, 1.0 / 8, 1)), InvalidArgument);
}

TEST(UcInstances, YesKindIsUnionClosed) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = UcInstance::build(spec(InstanceKind::uc_yes, 16, 1.0 / 16, seed));
    EXPECT_TRUE(is_union_closed(TruthTable::from_function(inst))) << seed;
    EXPECT_EQ(count_uc_no_violations(inst).triples, 0u);
  }
  // Larger L: distinct unique terms join into the |S_T| >= 2 region.
  CounterRng rng(3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = UcInstance::build(spec(InstanceKind::uc_yes, 20, 0.5, seed));
    EXPECT_TRUE(is_union_closed(TruthTable::from_function(inst))) << seed;
    for (int k = 0; k < 2000; ++k) {
      const Point x(rng() & arity_mask(20), 20), y(rng() & arity_mask(20), 20);
      const int lx = inst.dnf().unique_term(x.bits() & inst.control_mask());
      const int ly = inst.dnf().unique_term(y.bits() & inst.control_mask());
      if (inst.eval(x) && inst.eval(y) && lx >= 0 && ly >= 0 && lx != ly) {
        EXPECT_TRUE(inst.eval(x | y));
      }
    }
  }
}

TEST(UcInstances, NoKindTriples) {
  std::uint64_t with_triples = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = UcInstance::build(spec(InstanceKind::uc_no, 16, 1.0 / 16, seed));
    const auto c = count_uc_no_violations(inst);
    EXPECT_EQ(c.good_strings + c.bad_strings, inst.dnf().size());
    const std::uint64_t r = inst.strings()[0];
    const bool good = r != 0 && r != inst.action_mask();
    if (!good || !inst.bits()[0]) {
      EXPECT_EQ(c.triples, 0u);
    }
    if (c.triples > 0) {
      ++with_triples;
      EXPECT_FALSE(is_union_closed(TruthTable::from_function(inst)));
      EXPECT_LE(c.triples, dist_uc_bounds(TruthTable::from_function(inst)).upper->numerator);
    }
    // b = 0 everywhere: only the |S_T| >= 2 region can be 1, and L = 1 here.
    if (!inst.bits()[0]) {
      EXPECT_EQ(TruthTable::from_function(inst).count_ones(), 0u);
    }
  }
  EXPECT_GT(with_triples, 0u);
}

TEST(BadEvent, Degenerate) {
  const Point x(0x1234, 16);
  const std::vector<Point> single{x};
  EXPECT_EQ(estimate_bad_probability(BadEventKind::intersect, single, 16, 0.5, 2000, 1).hits, 0u);
  const std::vector<Point> dup{x, x};
  EXPECT_EQ(estimate_bad_probability(BadEventKind::intersect, dup, 16, 0.5, 2000, 1).hits, 0u);
  EXPECT_EQ(estimate_bad_probability(BadEventKind::union_closed, dup, 16, 0.5, 2000, 1).hits, 0u);
}

TEST(BadEvent, AntipodalWithinBound) {
  const Point x(0x00FF, 16);
  const std::vector<Point> q{x, x.complement()};
  const auto r = estimate_bad_probability(BadEventKind::intersect, q, 16, 0.5, 20000, 3);
  EXPECT_LE(r.estimate, bad_event_bound(16, 0.5, 2) + 3 * r.sigma);
  EXPECT_NEAR(bad_event_bound(16, 0.5, 2), 4 * std::exp2(-0.25 * 2 / std::sqrt(0.5)), 1e-12);
}

TEST(Kinds, RoundTripNames) {
  for (auto k : {InstanceKind::talagrand, InstanceKind::int_yes, InstanceKind::int_no,
                 InstanceKind::int_one_sided_no, InstanceKind::uc_yes, InstanceKind::uc_no})
    EXPECT_EQ(parse_instance_kind(to_string(k)), k);
  EXPECT_THROW(parse_instance_kind("nope"), InvalidArgument);
}
