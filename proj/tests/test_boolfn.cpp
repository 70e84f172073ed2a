// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracle.hpp"
#include "setfam/boolfn.hpp"
#include "setfam/distance.hpp"

using namespace setfam;
using oracle::P;

namespace {

// Pearson statistic against expected counts.
double chi_square(const std::vector<double>& observed, const std::vector<double>& expected) {
  double s = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i)
    s += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  return s;
}

// Loose upper quantile: df + 6 sqrt(2 df).
double chi_square_limit(std::size_t df) {
  return static_cast<double>(df) + 6.0 * std::sqrt(2.0 * static_cast<double>(df));
}

}  // namespace

TEST(Point, ParseUsesFirstCoordinateLeftmost) {
  EXPECT_EQ(P("01").bits(), 2u);
  EXPECT_EQ(P("1100").bits(), 3u);
  EXPECT_EQ(P("1100").arity(), 4);
  EXPECT_EQ(P("0110").to_string(), "0110");
  EXPECT_TRUE(P("0110").coordinate(2));
  EXPECT_FALSE(P("0110").coordinate(1));
  EXPECT_EQ(P("0110").complement(), P("1001"));
  EXPECT_TRUE(P("0100").below(P("0110")));
  EXPECT_TRUE(P("1100").disjoint(P("0011")));
  EXPECT_THROW(Point::parse("01x"), ParseError);
}

TEST(Point, RejectsBitsOutsideArity) {
  EXPECT_THROW(Point(4, 2), InvalidArgument);
}

TEST(Band, MidBandMatchesDirectFormula) {
  const double plain = std::sqrt(100.0 * 2.0 * std::log(8.0));
  const double widened = std::sqrt(100.0 * 2.0 * std::log(800.0));
  EXPECT_NEAR(band_radius(100, 0.5, BandWidth::plain), plain, 1e-12);
  EXPECT_NEAR(band_radius(100, 0.5, BandWidth::widened), widened, 1e-12);
  EXPECT_NEAR(plain, 20.39, 0.01);
  EXPECT_NEAR(widened, 36.56, 0.01);
  EXPECT_EQ(mid_band(100, 0.5), (Band{30, 70}));
  EXPECT_EQ(mid_band(100, 0.5, BandWidth::widened), (Band{14, 86}));
}

TEST(Band, ClampsToCube) {
  EXPECT_EQ(mid_band(4, 0.5), (Band{0, 4}));
}

TEST(Band, RejectsBadEps) {
  EXPECT_THROW(mid_band(10, 0.0), InvalidArgument);
  EXPECT_THROW(mid_band(10, 1.5), InvalidArgument);
}

TEST(Truncate, IdentityWhenBandCoversCube) {
  const auto f = make_constant(4, false);
  const auto g = truncate_uc(f, 0.5);
  for (std::uint64_t x = 0; x < 16; ++x) EXPECT_FALSE(g->eval(Point(x, 4)));
  const auto d = make_dictator(4, 2);
  const auto h = truncate_int(d, 0.5);
  for (std::uint64_t x = 0; x < 16; ++x) EXPECT_EQ(h->eval(Point(x, 4)), d->eval(Point(x, 4)));
}

TEST(Truncate, ConstantOneAtExtremes) {
  const auto f = make_constant(20, true);
  const auto uc = truncate_uc(f, 0.5);
  EXPECT_FALSE(uc->eval(Point::zeros(20)));
  EXPECT_TRUE(uc->eval(Point::ones(20)));
  const auto in = truncate_int(f, 0.5);
  EXPECT_FALSE(in->eval(Point::zeros(20)));
  EXPECT_FALSE(in->eval(Point::ones(20)));
}

TEST(Truncate, PreservesUnionClosedAndIntersecting) {
  const auto maj = truncate_uc(make_majority(20), 0.5);
  EXPECT_TRUE(is_union_closed(TruthTable::from_function(*maj)));
  const auto dict = truncate_int(make_dictator(20, 1), 0.5);
  EXPECT_TRUE(is_intersecting(TruthTable::from_function(*dict)));
}

TEST(Truncate, Idempotent) {
  CounterRng rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    auto f = std::make_shared<TruthTable>(
        TruthTable::from_predicate(14, [&](std::uint64_t) { return rng.coin(); }));
    for (double eps : {0.5, 0.9}) {
      const auto once = truncate_uc(f, eps);
      const auto twice = truncate_uc(once, eps);
      const auto once_i = truncate_int(f, eps);
      const auto twice_i = truncate_int(once_i, eps);
      for (std::uint64_t x = 0; x < f->size(); ++x) {
        const Point p(x, 14);
        ASSERT_EQ(once->eval(p), twice->eval(p));
        ASSERT_EQ(once_i->eval(p), twice_i->eval(p));
      }
    }
  }
}

TEST(DownBand, Examples) {
  const auto pts = enumerate_down_band(P("111"), Band{1, 2});
  std::set<std::uint64_t> got;
  for (const auto& p : pts) got.insert(p.bits());
  std::set<std::uint64_t> want;
  for (auto s : {"001", "010", "100", "011", "101", "110"}) want.insert(P(s).bits());
  EXPECT_EQ(got, want);
  EXPECT_EQ(pts.size(), 6u);

  const auto single = enumerate_down_band(P("101"), Band{2, 2});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], P("101"));

  EXPECT_EQ(enumerate_down_band(Point::ones(10), Band{3, 5}).size(), 582u);
  EXPECT_EQ(down_band_size(Point::ones(10), Band{3, 5}), 582u);
}

TEST(DownBand, MatchesSubmaskEnumeration) {
  CounterRng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const Point x(rng() & arity_mask(n), n);
    int lo = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    int hi = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    if (lo > hi) std::swap(lo, hi);
    std::set<std::uint64_t> want;
    for (std::uint64_t y = x.bits();; y = (y - 1) & x.bits()) {
      const int w = std::popcount(y);
      if (w >= lo && w <= hi) want.insert(y);
      if (y == 0) break;
    }
    const auto pts = enumerate_down_band(x, Band{lo, hi});
    std::set<std::uint64_t> got;
    for (const auto& p : pts) {
      EXPECT_EQ(p.bits() & x.bits(), p.bits());
      got.insert(p.bits());
    }
    EXPECT_EQ(got.size(), pts.size());
    EXPECT_EQ(got, want);
    EXPECT_EQ(down_band_size(x, Band{lo, hi}), want.size());
  }
}

TEST(DownBand, CapOverflowThrowsBeforeVisiting) {
  int visited = 0;
  EXPECT_THROW(for_each_down_band(Point::ones(10), Band{0, 10}, 100, [&](const Point&) { ++visited; }),
               ResourceLimit);
  EXPECT_EQ(visited, 0);
}

TEST(Sampling, UniformOverSmallCube) {
  CounterRng rng(1);
  std::vector<double> counts(4, 0.0);
  const int draws = 400000;
  for (int i = 0; i < draws; ++i) counts[sample_band_uniform(2, Band{0, 2}, rng).bits()] += 1;
  EXPECT_LT(chi_square(counts, std::vector<double>(4, draws / 4.0)), chi_square_limit(3));
}

TEST(Sampling, SingleLevel) {
  CounterRng rng(2);
  std::map<std::uint64_t, double> counts;
  const int draws = 300000;
  for (int i = 0; i < draws; ++i) {
    const Point p = sample_band_uniform(3, Band{1, 1}, rng);
    ASSERT_EQ(p.weight(), 1);
    counts[p.bits()] += 1;
  }
  ASSERT_EQ(counts.size(), 3u);
  std::vector<double> obs;
  for (auto& [k, v] : counts) obs.push_back(v);
  EXPECT_LT(chi_square(obs, std::vector<double>(3, draws / 3.0)), chi_square_limit(2));
}

TEST(Sampling, WeightClassesProportionalToBinomials) {
  CounterRng rng(3);
  const int draws = 1000000;
  double w1 = 0, w2 = 0;
  std::vector<double> cells(16, 0.0);
  for (int i = 0; i < draws; ++i) {
    const Point p = sample_band_uniform(4, Band{1, 2}, rng);
    (p.weight() == 1 ? w1 : w2) += 1;
    cells[p.bits()] += 1;
  }
  // P(weight 1) = 4/10; 4 sigma band on the count.
  const double sigma = std::sqrt(draws * 0.4 * 0.6);
  EXPECT_NEAR(w1, draws * 0.4, 4 * sigma);
  EXPECT_NEAR(w2 / w1, 6.0 / 4.0, 0.01);
  std::vector<double> obs, exp;
  for (std::uint64_t x = 0; x < 16; ++x) {
    const int w = std::popcount(x);
    if (w == 1 || w == 2) {
      obs.push_back(cells[x]);
      exp.push_back(draws / 10.0);
    } else {
      EXPECT_EQ(cells[x], 0.0);
    }
  }
  EXPECT_LT(chi_square(obs, exp), chi_square_limit(9));
}

TEST(Sampling, WeightFrequenciesWithinFourSigma) {
  CounterRng rng(4);
  const int n = 12;
  const Band band{3, 9};
  const int draws = 1000000;
  std::vector<double> counts(n + 1, 0.0);
  for (int i = 0; i < draws; ++i) counts[sample_band_uniform(n, band, rng).weight()] += 1;
  double total = 0;
  for (int j = band.lo; j <= band.hi; ++j) total += static_cast<double>(binomial(n, j));
  for (int j = 0; j <= n; ++j) {
    if (!band.contains(j)) {
      EXPECT_EQ(counts[j], 0.0);
      continue;
    }
    const double p = static_cast<double>(binomial(n, j)) / total;
    EXPECT_NEAR(counts[j], draws * p, 4 * std::sqrt(draws * p * (1 - p))) << "weight " << j;
  }
}

TEST(Sampling, DownBandUniform) {
  CounterRng rng(6);
  const Point x = P("110110");
  const Band band{1, 3};
  const auto support = enumerate_down_band(x, band);
  std::map<std::uint64_t, double> counts;
  const int draws = 500000;
  for (int i = 0; i < draws; ++i) {
    const Point y = sample_down_band_uniform(x, band, rng);
    ASSERT_TRUE(y.below(x));
    ASSERT_TRUE(band.contains(y));
    counts[y.bits()] += 1;
  }
  ASSERT_EQ(counts.size(), support.size());
  std::vector<double> obs;
  for (auto& [k, v] : counts) obs.push_back(v);
  EXPECT_LT(chi_square(obs, std::vector<double>(obs.size(), draws / double(obs.size()))),
            chi_square_limit(obs.size() - 1));
}

TEST(Sampling, RandomSubsetMaskUniform) {
  CounterRng rng(8);
  std::map<std::uint64_t, double> counts;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const auto m = random_subset_mask(5, 2, rng);
    ASSERT_EQ(std::popcount(m), 2);
    ASSERT_EQ(m & ~arity_mask(5), 0u);
    counts[m] += 1;
  }
  ASSERT_EQ(counts.size(), 10u);
  std::vector<double> obs;
  for (auto& [k, v] : counts) obs.push_back(v);
  EXPECT_LT(chi_square(obs, std::vector<double>(10, draws / 10.0)), chi_square_limit(9));
}

TEST(Rng, CounterStreamsReproduce) {
  CounterRng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
  }
  CounterRng r(1);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_LT(r.below(7), 7u);
    const double u = r.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(QueryCounter, CountsEveryEval) {
  const auto f = make_majority(6);
  QueryCounter q(*f);
  CounterRng rng(9);
  for (int i = 0; i < 500; ++i) {
    const Point x(rng() & arity_mask(6), 6);
    EXPECT_EQ(q.eval(x), f->eval(x));
    EXPECT_EQ(q.count(), static_cast<std::uint64_t>(i + 1));
  }
}

TEST(Builtins, Values) {
  EXPECT_TRUE(make_dictator(3, 1)->eval(P("100")));
  EXPECT_FALSE(make_dictator(3, 1)->eval(P("011")));
  EXPECT_TRUE(make_majority(3)->eval(P("110")));
  EXPECT_FALSE(make_majority(4)->eval(P("1100")));
  EXPECT_THROW(make_dictator(3, 4), InvalidArgument);
  EXPECT_THROW(make_majority(3)->eval(P("10")), InvalidArgument);
}

TEST(TruthTableTest, OnesAndHamming) {
  const auto t = oracle::table_of(3, {"100", "011"});
  EXPECT_EQ(t.count_ones(), 2u);
  EXPECT_EQ(t.ones(), (std::vector<std::uint64_t>{1, 6}));
  const auto u = oracle::table_of(3, {"100"});
  EXPECT_EQ(t.hamming(u), 1u);
  EXPECT_THROW(TruthTable(25), InvalidArgument);
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(10, 3), 120u);
  EXPECT_EQ(binomial(64, 32), 1832624140942590534ULL);
  EXPECT_EQ(binomial(5, 6), 0u);
  EXPECT_EQ(binomial(5, -1), 0u);
  EXPECT_EQ(scatter_bits(0b11, 0b1010), 0b1010u);
  EXPECT_EQ(scatter_bits(0b10, 0b1010), 0b1000u);
}
