#include <gtest/gtest.h>

#include <random>

#include "modchar/config.hpp"
#include "modchar/error.hpp"
#include "modchar/sieve.hpp"
#include "oracles.hpp"

using namespace modchar;

TEST(Sieve, MatchesOracleOnRandomConfigs) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cfg = oracle::random_config(rng);
    const auto mc = build_modified(cfg.chi, cfg.mods);
    const auto values = sieve_values(mc, 100000);
    ASSERT_EQ(values.size(), 100000u);
    for (std::uint64_t n = 1; n <= 100000; ++n) {
      ASSERT_EQ(values[n - 1], eval_f_oracle(mc, n)) << mc.canonical_string() << " n=" << n;
    }
  }
}

TEST(Sieve, SerialReferenceAgreesWithBlockKernel) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    const auto cfg = oracle::random_config(rng);
    const auto mc = build_modified(cfg.chi, cfg.mods);
    const ValueCodec codec(mc);
    const auto serial = sieve_exponents_serial(codec, 200003);
    for (std::uint64_t block : {1000ULL, 4096ULL, 65536ULL, 1ULL << 20}) {
      for (int threads : {1, 3}) {
        SieveOptions opts;
        opts.block_size = block;
        opts.threads = threads;
        ASSERT_EQ(sieve_exponents(codec, 200003, opts), serial) << block << " " << threads;
      }
    }
  }
}

TEST(Sieve, PresetAgainstTestOracle) {
  for (const auto& name : preset_names()) {
    const auto mc = build_modified(preset_config(name));
    const auto S = oracle::table(mc);
    const auto values = sieve_values(mc, 20000);
    for (std::uint64_t n = 1; n <= 20000; ++n) ASSERT_EQ(values[n - 1], oracle::f_value(mc.base(), S, n)) << n;
  }
}

TEST(Sieve, BlocksArriveInOrder) {
  const auto mc = build_modified(preset_config("fig1"));
  const ValueCodec codec(mc);
  SieveOptions opts;
  opts.block_size = 777;
  opts.threads = 4;
  std::uint64_t expect = 1;
  for_each_block(codec, 10000, opts, [&](std::uint64_t lo, std::span<const std::int32_t> v) {
    EXPECT_EQ(lo, expect);
    expect += v.size();
  });
  EXPECT_EQ(expect, 10001u);
}

TEST(Sieve, CodecRoundTrip) {
  const Character chi = character_from_label("7.3");
  const auto mc = build_modified(chi, {{2, UnitValue::root(5, 12)}, {3, UnitValue::root(1, 4)}});
  const ValueCodec codec(mc);
  EXPECT_EQ(codec.order(), 12u);
  EXPECT_FALSE(codec.real_valued());
  for (std::uint32_t e = 0; e < codec.order(); ++e) EXPECT_EQ(codec.encode(codec.decode(static_cast<std::int32_t>(e))), e);
  EXPECT_EQ(codec.decode(kZero), UnitValue::zero());
  EXPECT_EQ(codec.decode(codec.prime_exponent(2)), UnitValue::root(5, 12));
  EXPECT_EQ(codec.prime_exponent(7), kZero);
}

TEST(Sieve, Errors) {
  const auto mc = build_modified(preset_config("bcc"));
  const ValueCodec codec(mc);
  SieveOptions tiny;
  tiny.memory_budget_bytes = 1024;
  try {
    sieve_exponents(codec, 100000, tiny);
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BlockSize);
  }
  SieveOptions zero;
  zero.block_size = 0;
  EXPECT_THROW(sieve_exponents(codec, 1000, zero), Error);
  EXPECT_THROW(sieve_values(mc, kMaxSieveLimit + 1), Error);
}

TEST(Sieve, ThreadsFromEnvironment) {
  SieveOptions opts;
  opts.threads = 2;
  EXPECT_EQ(resolve_threads(opts), 2);
  setenv("MODCHAR_THREADS", "3", 1);
  opts.threads = 0;
  EXPECT_EQ(resolve_threads(opts), 3);
  unsetenv("MODCHAR_THREADS");
  EXPECT_GE(resolve_threads(opts), 1);
}
