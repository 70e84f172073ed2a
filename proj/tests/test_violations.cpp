// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracle.hpp"
#include "setfam/distance.hpp"
#include "setfam/violations.hpp"

using namespace setfam;
using oracle::P;
using oracle::table_of;

TEST(MonotoneViolation, Examples) {
  const auto dict = make_dictator(2, 1);
  EXPECT_FALSE(is_monotone_violation(*dict, P("10"), P("11")));
  const auto t = table_of(2, {"01"});
  EXPECT_TRUE(is_monotone_violation(t, P("01"), P("11")));
  EXPECT_FALSE(is_monotone_violation(t, P("01"), P("10")));
}

TEST(IViolation, Examples) {
  const auto one = make_constant(2, true);
  EXPECT_TRUE(is_i_violation(*one, P("01"), P("10")));
  const auto dict = make_dictator(3, 1);
  for (std::uint64_t x = 0; x < 8; ++x)
    for (std::uint64_t y = 0; y < 8; ++y) EXPECT_FALSE(is_i_violation(*dict, Point(x, 3), Point(y, 3)));
  const auto zero_one = table_of(3, {"000"});
  EXPECT_TRUE(is_i_violation(zero_one, P("000"), P("000")));
}

TEST(UcViolation, Examples) {
  const auto t = table_of(2, {"01", "10"});
  const auto v = find_uc_violation(t, P("01"), P("10"));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->z, P("11"));
  EXPECT_FALSE(find_uc_violation(t, P("01"), P("01")));
  const auto maj = make_majority(5);
  CounterRng rng(1);
  for (int i = 0; i < 500; ++i) {
    const Point a(rng.below(32), 5), b(rng.below(32), 5);
    EXPECT_FALSE(find_uc_violation(*maj, a, b));
  }
}

TEST(WitnessUc, Examples) {
  const auto t = table_of(2, {"01", "10"});
  const auto w = witness_check_uc(t, P("11"), Band{1, 2});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->end, P("11"));
  EXPECT_EQ(w->members.size(), 2u);
  EXPECT_TRUE(verify_certificate(t, *w));

  EXPECT_FALSE(witness_check_uc(t, P("01"), Band{1, 2}));

  const auto u = table_of(3, {"001", "010"});
  EXPECT_FALSE(witness_check_uc(u, P("111"), Band{1, 3}));
}

TEST(WitnessUc, AgreesWithBruteForceTupleSearch) {
  CounterRng rng(21);
  for (int rep = 0; rep < 400; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const auto f = oracle::table_from_code(n, rng() & ((std::uint64_t{1} << (1 << n)) - 1));
    int lo = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    int hi = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    if (lo > hi) std::swap(lo, hi);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      const Point px(x, n);
      if (!Band{lo, hi}.contains(px)) continue;
      const auto w = witness_check_uc(f, px, Band{lo, hi});
      ASSERT_EQ(w.has_value(), oracle::uc_tuple_exists(f, x, lo, hi));
      if (w) {
        EXPECT_TRUE(verify_certificate(f, *w));
        const auto aug = augment_tuple(f, *w);
        EXPECT_TRUE(verify_certificate(f, aug.triple));
      }
    }
  }
}

TEST(WitnessInt, Examples) {
  const auto one = make_constant(4, true);
  const auto w = witness_check_int(*one, P("1100"), Band{0, 4});
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_certificate(*one, *w));

  const auto dict = make_dictator(4, 1);
  for (std::uint64_t x = 0; x < 16; ++x) EXPECT_FALSE(witness_check_int(*dict, Point(x, 4), Band{0, 4}));

  const auto t = table_of(4, {"1100", "0011"});
  const auto v = witness_check_int(t, P("1100"), Band{2, 2});
  ASSERT_TRUE(v);
  EXPECT_EQ(v->x, P("0011"));
  EXPECT_EQ(v->y, P("1100"));
}

TEST(WitnessInt, FindsPartnerIffOneExistsInBand) {
  CounterRng rng(22);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const auto f = oracle::table_from_code(n, rng() & ((std::uint64_t{1} << (1 << n)) - 1));
    const Band band{0, n};
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      bool expected = false;
      if (f.get(x))
        for (std::uint64_t y = 0; y < f.size(); ++y) expected |= f.get(y) && (x & y) == 0;
      const auto w = witness_check_int(f, Point(x, n), band);
      ASSERT_EQ(w.has_value(), expected);
      if (w) {
        EXPECT_TRUE(verify_certificate(f, *w));
      }
    }
  }
}

TEST(DisjointPairs, Examples) {
  EXPECT_EQ(max_disjoint_i_pairs(TruthTable::from_function(*make_constant(2, true))).size(), 2u);
  EXPECT_EQ(max_disjoint_i_pairs(TruthTable::from_function(*make_dictator(3, 1))).size(), 0u);
  EXPECT_EQ(max_disjoint_i_pairs(table_of(2, {"01", "10"})).size(), 1u);
}

TEST(DisjointPairs, MatchesBruteForceAtNThree) {
  for (std::uint64_t code = 0; code < 256; ++code) {
    const auto f = oracle::table_from_code(3, code);
    const auto m = max_disjoint_i_pairs(f);
    ASSERT_EQ(static_cast<int>(m.size()), oracle::i_pair_matching(f)) << code;
    std::set<std::uint64_t> seen;
    for (const auto& p : m.pairs) {
      EXPECT_TRUE(is_i_violation(f, p.x, p.y));
      EXPECT_TRUE(seen.insert(p.x.bits()).second);
      if (p.y != p.x) {
        EXPECT_TRUE(seen.insert(p.y.bits()).second);
      }
    }
  }
}

TEST(LevelMatching, Examples) {
  const auto m = level_matching(2, 0);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].first, P("00"));
  EXPECT_EQ(m[0].second, P("11"));
  EXPECT_EQ(level_matching(4, 1).size(), 4u);
  EXPECT_EQ(level_matching(6, 2).size(), 15u);
  EXPECT_THROW(level_matching(4, 2), InvalidArgument);
}

TEST(LevelMatching, ComparableBijection) {
  for (int a = 1; a <= 12; ++a) {
    for (int w = 0; 2 * w < a; ++w) {
      const auto m = level_matching(a, w);
      ASSERT_EQ(m.size(), binomial(a, w));
      std::set<std::uint64_t> lows, highs;
      for (const auto& [p, q] : m) {
        EXPECT_EQ(p.weight(), w);
        EXPECT_EQ(q.weight(), a - w);
        EXPECT_TRUE(p.below(q));
        lows.insert(p.bits());
        highs.insert(q.bits());
      }
      EXPECT_EQ(lows.size(), m.size());
      EXPECT_EQ(highs.size(), m.size());
    }
  }
}

TEST(Augment, Examples) {
  const auto t = table_of(2, {"01", "10"});
  const UcViolatingTuple two{{P("01"), P("10")}, P("11")};
  EXPECT_EQ(augment_tuple(t, two).triple, (TripleCertificate{P("01"), P("10"), P("11")}));

  const UcViolatingTuple three{{P("001"), P("010"), P("100")}, P("111")};
  const auto f1 = table_of(3, {"001", "010", "100", "011"});
  EXPECT_EQ(augment_tuple(f1, three).triple, (TripleCertificate{P("011"), P("100"), P("111")}));
  const auto f2 = table_of(3, {"001", "010", "100"});
  EXPECT_EQ(augment_tuple(f2, three).triple, (TripleCertificate{P("001"), P("010"), P("011")}));

  const auto mono = make_majority(3);
  EXPECT_THROW(augment_tuple(*mono, two), InvalidArgument);
}

TEST(Locality, Examples) {
  EXPECT_EQ(locality({P("01"), P("10"), P("11")}), 2);
  EXPECT_EQ(locality({P("0011"), P("1100"), P("1111")}), 4);
  EXPECT_EQ(min_violation_locality(table_of(2, {"01", "10"})), 2);
  EXPECT_FALSE(min_violation_locality(TruthTable::from_function(*make_majority(5))));
  EXPECT_EQ(min_violation_locality(table_of(4, {"0110", "1001"})), 4);
}

TEST(Certificates, RejectForgedTuples) {
  const auto t = table_of(2, {"01", "10", "11"});
  EXPECT_FALSE(verify_certificate(t, UcViolatingTuple{{P("01"), P("10")}, P("11")}));
  EXPECT_FALSE(verify_certificate(t, IViolatingPair{P("01"), P("11")}));
  EXPECT_FALSE(verify_certificate(t, TripleCertificate{P("01"), P("10"), P("11")}));
  EXPECT_FALSE(is_minimal(UcViolatingTuple{{P("01"), P("10"), P("11")}, P("11")}));
}
