#pragma once

// Sieve evaluation of a modified character f over [1, x].
//
// Values are carried as exponents in the cyclic group of L-th roots of unity,
// L = lcm(order χ, orders of f on S), with kZero marking f(n) = 0. Products are
// sums of exponents, so every value is exact until decoded.
//
// Two evaluators share this encoding:
//  * sieve_block / for_each_block: segmented kernel, blocks evaluated in
//    parallel with OpenMP and handed to the consumer in increasing order.
//  * sieve_exponents_serial: linear sieve with the recurrence
//    f(n) = f(spf(n)) f(n / spf(n)); the reference implementation.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "modchar/modified.hpp"
#include "modchar/unit_value.hpp"

namespace modchar {

inline constexpr std::int32_t kZero = -1;

class ValueCodec {
 public:
  explicit ValueCodec(const ModifiedCharacter& mc);

  std::uint32_t order() const noexcept { return order_; }
  /// All values lie in {0, ±1}.
  bool real_valued() const noexcept { return order_ <= 2; }
  /// Exponent of f(p) for a prime p, or kZero.
  std::int32_t prime_exponent(std::uint64_t p) const;
  /// Exponent of a UnitValue whose order divides order().
  std::int32_t encode(const UnitValue& v) const;
  UnitValue decode(std::int32_t e) const;
  std::complex<double> to_complex(std::int32_t e) const {
    return e == kZero ? std::complex<double>{} : roots_[static_cast<std::size_t>(e)];
  }
  /// Exact integer value for real-valued codecs.
  int to_int(std::int32_t e) const noexcept { return e == kZero ? 0 : (e == 0 ? 1 : -1); }

 private:
  std::uint64_t modulus_;
  std::uint32_t order_;
  std::vector<std::int32_t> residue_;
  std::vector<std::uint64_t> s_primes_;
  std::vector<std::int32_t> s_exponents_;
  std::vector<std::complex<double>> roots_;
};

struct SieveOptions {
  std::uint64_t block_size = 1ULL << 16;
  /// 0 = MODCHAR_THREADS if set, else the OpenMP default.
  int threads = 0;
  std::uint64_t memory_budget_bytes = 1ULL << 30;
};

/// Thread count after applying the options and MODCHAR_THREADS.
int resolve_threads(const SieveOptions& options);

inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000ULL;

/// Evaluate f on [lo, lo + out.size()). `primes` must hold every prime up to
/// sqrt(lo + out.size() - 1); `scratch` must have out.size() entries.
void sieve_block(const ValueCodec& codec, std::span<const std::uint32_t> primes, std::uint64_t lo,
                 std::span<std::int32_t> out, std::span<std::uint64_t> scratch);

using BlockConsumer = std::function<void(std::uint64_t lo, std::span<const std::int32_t> values)>;

/// Streams f(1..x_max) block by block, in order. Blocks are computed in
/// parallel batches; the consumer always runs on the calling thread.
void for_each_block(const ValueCodec& codec, std::uint64_t x_max, const SieveOptions& options,
                    const BlockConsumer& consume);

/// Exponents of f(1..x_max) (index 0 holds f(1)) via the block kernel.
std::vector<std::int32_t> sieve_exponents(const ValueCodec& codec, std::uint64_t x_max, const SieveOptions& options = {});
/// Same via the serial linear SPF sieve.
std::vector<std::int32_t> sieve_exponents_serial(const ValueCodec& codec, std::uint64_t x_max);

/// f(1..x_max) as exact values.
std::vector<UnitValue> sieve_values(const ModifiedCharacter& mc, std::uint64_t x_max, const SieveOptions& options = {});

}  // namespace modchar
