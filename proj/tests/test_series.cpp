#include <gtest/gtest.h>

#include <random>

#include "modchar/config.hpp"
#include "modchar/error.hpp"
#include "modchar/lfunctions.hpp"
#include "modchar/series.hpp"
#include "oracles.hpp"

using namespace modchar;

namespace {

ModifiedCharacter preset(const std::string& name) { return build_modified(preset_config(name)); }

std::vector<double> grid(std::uint64_t x_max, double ratio) {
  std::vector<double> out;
  for (auto x : make_checkpoints(CheckpointRule{CheckpointRule::Kind::Geometric, ratio, 1}, x_max)) {
    out.push_back(static_cast<double>(x));
  }
  return out;
}

}  // namespace

TEST(Checkpoints, Rules) {
  EXPECT_EQ(make_checkpoints(CheckpointRule::parse("every:3"), 10), (std::vector<std::uint64_t>{3, 6, 9, 10}));
  EXPECT_EQ(make_checkpoints(CheckpointRule::parse("dyadic"), 20), (std::vector<std::uint64_t>{1, 2, 4, 8, 16, 20}));
  const auto g = make_checkpoints(CheckpointRule::parse("geometric:1.01"), 1000000);
  for (std::size_t i = 1; i < g.size(); ++i) ASSERT_LT(g[i - 1], g[i]);
  EXPECT_EQ(g.back(), 1000000u);
  for (const char* text : {"every:7", "dyadic", "geometric:1.5"}) {
    EXPECT_EQ(CheckpointRule::parse(CheckpointRule::parse(text).to_string()), CheckpointRule::parse(text));
  }
  for (const char* bad : {"", "every:0", "geometric:1", "geometric:x", "weekly"}) {
    EXPECT_THROW(CheckpointRule::parse(bad), Error) << bad;
  }
}

TEST(PartialSums, BccFirstValues) {
  const auto mc = preset("bcc");
  const int expected[] = {1, -1, 1, 1, -1, -1, 1, -1, 1};
  const auto values = sieve_values(mc, 9);
  for (int i = 0; i < 9; ++i) EXPECT_EQ(values[i].to_int(), expected[i]);
  const auto s = partial_sums(mc, 9, CheckpointRule::parse("every:1"));
  EXPECT_EQ(s.exact_sums.back(), 1);
  EXPECT_EQ(s.sums.back(), std::complex<double>(1.0, 0.0));
}

TEST(PartialSums, UnmodifiedChi3Bounded) {
  const auto mc = build_modified(character_from_label("3.2"), {});
  EXPECT_TRUE(sieve_values(mc, 3)[2].is_zero());
  const auto s = partial_sums(mc, 100000, CheckpointRule::parse("every:1"));
  for (auto v : s.exact_sums) ASSERT_LE(std::abs(v), 1);
}

TEST(PartialSums, ExactAccumulatorAgreesWithFloat) {
  for (const auto& name : preset_names()) {
    const auto s = partial_sums(preset(name), 1000000, CheckpointRule::parse("geometric:1.01"));
    ASSERT_TRUE(s.exact);
    for (std::size_t i = 0; i < s.sums.size(); ++i) {
      ASSERT_EQ(s.sums[i].real(), static_cast<double>(s.exact_sums[i]));
      ASSERT_EQ(s.sums[i].imag(), 0.0);
    }
  }
}

TEST(PartialSums, FloatAccumulationAtHundredMillion) {
  const auto s = partial_sums(preset("fig1"), 100000000, CheckpointRule::parse("dyadic"));
  for (std::size_t i = 0; i < s.sums.size(); ++i) {
    EXPECT_LE(std::abs(s.sums[i].real() - static_cast<double>(s.exact_sums[i])), 1e-8);
  }
}

TEST(PartialSums, ComplexConfigAgainstDirectSum) {
  const auto mc = build_modified(character_from_label("7.3"), {{2, UnitValue::root(5, 12)}, {5, UnitValue::root(1, 4)}});
  const auto s = partial_sums(mc, 50000, CheckpointRule::parse("every:5000"));
  EXPECT_FALSE(s.exact);
  const auto S = oracle::table(mc);
  std::complex<long double> acc = 0.0L;
  std::size_t c = 0;
  for (std::uint64_t n = 1; n <= 50000; ++n) {
    acc += oracle::as_complex(oracle::f_value(mc.base(), S, n));
    if (n == s.checkpoints[c]) {
      EXPECT_NEAR(s.sums[c].real(), static_cast<double>(acc.real()), 1e-9);
      EXPECT_NEAR(s.sums[c].imag(), static_cast<double>(acc.imag()), 1e-9);
      ++c;
    }
  }
}

TEST(PartialSums, DeterministicAcrossThreadsAndBlocks) {
  const auto mc = build_modified(character_from_label("7.3"), {{2, UnitValue::root(5, 12)}});
  SieveOptions a, b, c;
  a.threads = 1;
  a.block_size = 10000;
  b.threads = 4;
  b.block_size = 10000;
  c.threads = 2;
  c.block_size = 1000000;
  const auto rule = CheckpointRule::parse("geometric:1.05");
  const auto sa = partial_sums(mc, 2000000, rule, a);
  const auto sb = partial_sums(mc, 2000000, rule, b);
  const auto sc = partial_sums(mc, 2000000, rule, c);
  EXPECT_EQ(sa.sums, sb.sums);
  EXPECT_EQ(sa.sums, sc.sums);
  EXPECT_EQ(sa.window_max_abs, sb.window_max_abs);
}

TEST(PartialSums, Figure3SupRecorded) {
  const auto s = partial_sums(preset("fig3"), 1000000, CheckpointRule::parse("dyadic"));
  double sup_ratio = 0.0;
  for (std::size_t i = 1; i < s.checkpoints.size(); ++i) {
    const double lo = static_cast<double>(s.checkpoints[i - 1]);
    if (lo < 3.0) continue;
    sup_ratio = std::max(sup_ratio, s.window_max_abs[i] / std::pow(std::log(lo), 4));
  }
  EXPECT_TRUE(std::isfinite(sup_ratio));
  EXPECT_LT(sup_ratio, 1.0);
  RecordProperty("fig3_sup_ratio_log4", std::to_string(sup_ratio));
}

TEST(Riesz, OrderZeroEqualsPartialSums) {
  const auto mc = preset("fig2");
  const auto cps = make_checkpoints(CheckpointRule::parse("geometric:1.1"), 100000);
  std::vector<double> xs(cps.begin(), cps.end());
  const auto r = riesz_means(mc, {0, 3}, xs);
  const auto s = partial_sums(mc, cps);
  for (std::size_t i = 0; i < cps.size(); ++i) ASSERT_EQ(r.row(0)[i], s.sums[i]);
}

TEST(Riesz, SingleTermBelowTwo) {
  const auto mc = preset("bcc");
  const auto r = riesz_means(mc, {3}, {1.9});
  EXPECT_NEAR(r.row(3)[0].real(), std::pow(std::log(1.9), 3), 1e-15);
}

TEST(Riesz, BccDoubleLoopAtThousand) {
  const auto mc = preset("bcc");
  const auto r = riesz_means(mc, {2}, {1000.0});
  const auto ref = oracle::riesz_direct(mc, 1000.0, 2);
  EXPECT_LE(std::abs(r.row(2)[0] - std::complex<double>(ref)) / std::abs(std::complex<double>(ref)), 1e-9);
}

TEST(Riesz, DoubleLoopAllOrdersUpToTwenty) {
  std::vector<ModifiedCharacter> configs = {preset("fig1"), preset("fig3"),
                                            build_modified(character_from_label("7.3"), {{2, UnitValue::root(5, 12)}})};
  std::vector<int> orders(21);
  for (int k = 0; k <= 20; ++k) orders[k] = k;
  const std::vector<double> xs = {10.5, 97.0, 1000.0, 2500.5, 10000.0};
  for (const auto& mc : configs) {
    const auto r = riesz_means(mc, orders, xs);
    for (int k : orders) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto ref = std::complex<double>(oracle::riesz_direct(mc, xs[i], k));
        ASSERT_LE(std::abs(r.row(k)[i] - ref), 1e-9 * std::abs(ref)) << mc.canonical_string() << " k=" << k << " x=" << xs[i];
      }
    }
  }
}

TEST(Riesz, NormalizationDividesByFactorial) {
  const auto mc = preset("fig1");
  const std::vector<double> xs = {100.0, 5000.0};
  RieszOptions norm;
  norm.normalize = true;
  const auto a = riesz_means(mc, {0, 4, 13}, xs);
  const auto b = riesz_means(mc, {0, 4, 13}, xs, norm);
  EXPECT_TRUE(b.normalized);
  for (int k : {0, 4, 13}) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      EXPECT_NEAR(b.row(k)[i].real(), a.row(k)[i].real() / std::tgamma(k + 1.0), 1e-12 * std::abs(a.row(k)[i]));
    }
  }
}

TEST(Riesz, Errors) {
  const auto mc = preset("bcc");
  try {
    riesz_means(mc, {201}, {10.0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrderTooLarge);
  }
  EXPECT_THROW(riesz_means(mc, {-1}, {10.0}), Error);
  EXPECT_THROW(riesz_means(mc, {2}, {10.0, 5.0}), Error);
  EXPECT_THROW(riesz_means(mc, {2}, {0.5}), Error);
  EXPECT_THROW(riesz_means(mc, {2}, {10.0}).row(3), Error);
}

TEST(Mellin, Chi3AtOneMatchesL1) {
  const auto mc = build_modified(character_from_label("3.2"), {});
  const auto m = mellin_transform(mc, 1.0, 1e6);
  const double L1 = std::numbers::pi / (3.0 * std::sqrt(3.0));
  EXPECT_LE(std::abs(m.value - L1), m.tail_bound);
  EXPECT_LT(m.tail_bound, 1e-5);
}

TEST(Mellin, BccNearEvaluateF) {
  const auto mc = preset("bcc");
  const auto m = mellin_transform(mc, 0.1, 1e7);
  const double F = std::abs(evaluate_F(mc, 0.1).value);
  const double ratio = std::abs(m.value) / F;
  EXPECT_GE(ratio, 0.5);
  EXPECT_LE(ratio, 2.0);
}

TEST(Mellin, Errors) {
  const auto mc = preset("bcc");
  EXPECT_THROW(mellin_transform(mc, 0.0, 100.0), Error);
  EXPECT_THROW(mellin_transform(mc, -1.0, 100.0), Error);
  EXPECT_THROW(mellin_transform(mc, 1.0, 0.5), Error);
}
