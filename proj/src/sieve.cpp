#include "modchar/sieve.hpp"

#include <algorithm>
#include <cstdlib>
#include <numbers>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "modchar/arith.hpp"
#include "modchar/error.hpp"

namespace modchar {

ValueCodec::ValueCodec(const ModifiedCharacter& mc) : modulus_(mc.base().modulus()), order_(1) {
  std::uint64_t order = mc.base().order();
  for (const auto& m : mc.modifications()) order = arith::lcm(order, m.value.order());
  if (order > (1ULL << 24)) {
    throw Error(ErrorCode::InvalidModification, "common order of character and modification values exceeds 2^24");
  }
  order_ = static_cast<std::uint32_t>(order);
  residue_.resize(modulus_);
  for (std::uint64_t r = 0; r < modulus_; ++r) residue_[r] = encode(mc.base().value(r));
  for (const auto& m : mc.modifications()) {
    s_primes_.push_back(m.prime);
    s_exponents_.push_back(encode(m.value));
  }
  roots_.reserve(order_);
  for (std::uint32_t e = 0; e < order_; ++e) roots_.push_back(UnitValue::root(e, order_).to_complex());
}

std::int32_t ValueCodec::encode(const UnitValue& v) const {
  if (v.is_zero()) return kZero;
  if (order_ % v.order() != 0) throw Error(ErrorCode::Domain, "value " + v.to_string() + " outside codec group");
  return static_cast<std::int32_t>(v.index() * (order_ / v.order()));
}

UnitValue ValueCodec::decode(std::int32_t e) const {
  if (e == kZero) return UnitValue::zero();
  return UnitValue::root(e, order_);
}

std::int32_t ValueCodec::prime_exponent(std::uint64_t p) const {
  if (!s_primes_.empty() && p <= s_primes_.back()) {
    auto it = std::lower_bound(s_primes_.begin(), s_primes_.end(), p);
    if (it != s_primes_.end() && *it == p) return s_exponents_[static_cast<std::size_t>(it - s_primes_.begin())];
  }
  return residue_[p % modulus_];
}

int resolve_threads(const SieveOptions& options) {
  if (options.threads > 0) return options.threads;
  if (const char* env = std::getenv("MODCHAR_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void sieve_block(const ValueCodec& codec, std::span<const std::uint32_t> primes, std::uint64_t lo,
                 std::span<std::int32_t> out, std::span<std::uint64_t> scratch) {
  const std::uint64_t len = out.size();
  if (len == 0) return;
  const std::uint64_t hi = lo + len;  // exclusive
  for (std::uint64_t i = 0; i < len; ++i) {
    scratch[i] = lo + i;
    out[i] = 0;
  }
  for (std::uint32_t p32 : primes) {
    const std::uint64_t p = p32;
    if (p * p > hi - 1) break;
    const std::int32_t ep = codec.prime_exponent(p);
    for (std::uint64_t pk = p; pk <= hi - 1; pk *= p) {
      const std::uint64_t start = (lo + pk - 1) / pk * pk;
      for (std::uint64_t m = start; m < hi; m += pk) {
        const std::uint64_t i = m - lo;
        scratch[i] /= p;
        if (out[i] != kZero) out[i] = (ep == kZero) ? kZero : out[i] + ep;
      }
      if (pk > (hi - 1) / p) break;
    }
  }
  const std::int64_t order = codec.order();
  for (std::uint64_t i = 0; i < len; ++i) {
    if (scratch[i] > 1 && out[i] != kZero) {
      const std::int32_t er = codec.prime_exponent(scratch[i]);
      out[i] = (er == kZero) ? kZero : out[i] + er;
    }
    if (out[i] != kZero) out[i] = static_cast<std::int32_t>(out[i] % order);
  }
}

void for_each_block(const ValueCodec& codec, std::uint64_t x_max, const SieveOptions& options,
                    const BlockConsumer& consume) {
  if (x_max == 0) return;
  if (x_max > kMaxSieveLimit) {
    throw Error(ErrorCode::Domain, "x_max = " + std::to_string(x_max) + " exceeds the supported limit 1e9");
  }
  if (options.block_size == 0) throw Error(ErrorCode::BlockSize, "block size must be positive");
  const int threads = resolve_threads(options);
  const std::uint64_t block = std::min(options.block_size, x_max);
  const std::uint64_t batch = static_cast<std::uint64_t>(threads);
  const std::uint64_t bytes = batch * block * (sizeof(std::int32_t) + sizeof(std::uint64_t));
  if (bytes > options.memory_budget_bytes) {
    throw Error(ErrorCode::BlockSize,
                "block size " + std::to_string(block) + " with " + std::to_string(threads) + " threads needs " +
                    std::to_string(bytes) + " bytes, over the budget of " + std::to_string(options.memory_budget_bytes) +
                    "; lower block_size to at most " +
                    std::to_string(options.memory_budget_bytes / (batch * (sizeof(std::int32_t) + sizeof(std::uint64_t)))));
  }
  const auto primes = arith::primes_up_to(arith::isqrt(x_max));
  std::vector<std::vector<std::int32_t>> values(batch, std::vector<std::int32_t>(block));
  std::vector<std::vector<std::uint64_t>> scratch(batch, std::vector<std::uint64_t>(block));

  const std::uint64_t nblocks = (x_max + block - 1) / block;
  for (std::uint64_t first = 0; first < nblocks; first += batch) {
    const auto count = static_cast<std::int64_t>(std::min(batch, nblocks - first));
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t b = 0; b < count; ++b) {
      const std::uint64_t lo = 1 + (first + static_cast<std::uint64_t>(b)) * block;
      const std::uint64_t len = std::min(block, x_max + 1 - lo);
      sieve_block(codec, primes, lo, std::span(values[b]).first(len), std::span(scratch[b]).first(len));
    }
    for (std::int64_t b = 0; b < count; ++b) {
      const std::uint64_t lo = 1 + (first + static_cast<std::uint64_t>(b)) * block;
      const std::uint64_t len = std::min(block, x_max + 1 - lo);
      consume(lo, std::span<const std::int32_t>(values[b]).first(len));
    }
  }
}

namespace {

void check_materialized(std::uint64_t x_max, std::size_t bytes_per_value, std::uint64_t budget) {
  if (x_max > kMaxSieveLimit) {
    throw Error(ErrorCode::Domain, "x_max = " + std::to_string(x_max) + " exceeds the supported limit 1e9");
  }
  if (x_max * bytes_per_value > budget) {
    throw Error(ErrorCode::BlockSize, "materializing " + std::to_string(x_max) +
                                          " values exceeds the memory budget; stream with for_each_block instead");
  }
}

}  // namespace

std::vector<std::int32_t> sieve_exponents(const ValueCodec& codec, std::uint64_t x_max, const SieveOptions& options) {
  check_materialized(x_max, sizeof(std::int32_t), options.memory_budget_bytes);
  std::vector<std::int32_t> out;
  out.reserve(x_max);
  for_each_block(codec, x_max, options,
                 [&](std::uint64_t, std::span<const std::int32_t> v) { out.insert(out.end(), v.begin(), v.end()); });
  return out;
}

std::vector<std::int32_t> sieve_exponents_serial(const ValueCodec& codec, std::uint64_t x_max) {
  check_materialized(x_max, 2 * sizeof(std::int32_t), SieveOptions{}.memory_budget_bytes);
  std::vector<std::int32_t> f(x_max + 1, 0);
  std::vector<std::uint32_t> spf(x_max + 1, 0);
  std::vector<std::uint32_t> primes;
  const std::int32_t order = static_cast<std::int32_t>(codec.order());
  auto mul = [order](std::int32_t a, std::int32_t b) {
    return (a == kZero || b == kZero) ? kZero : (a + b) % order;
  };
  for (std::uint64_t i = 2; i <= x_max; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
      f[i] = codec.prime_exponent(i);
    }
    for (std::uint32_t p : primes) {
      if (p > spf[i] || i * p > x_max) break;
      spf[i * p] = p;
      // f(n) = f(spf(n)) f(n / spf(n))
      f[i * p] = mul(f[p], f[i]);
    }
  }
  if (x_max == 0) return {};
  return std::vector<std::int32_t>(f.begin() + 1, f.end());
}

std::vector<UnitValue> sieve_values(const ModifiedCharacter& mc, std::uint64_t x_max, const SieveOptions& options) {
  const ValueCodec codec(mc);
  check_materialized(x_max, sizeof(UnitValue) + sizeof(std::int32_t), options.memory_budget_bytes);
  std::vector<UnitValue> out;
  out.reserve(x_max);
  for (std::int32_t e : sieve_exponents(codec, x_max, options)) out.push_back(codec.decode(e));
  return out;
}

}  // namespace modchar
