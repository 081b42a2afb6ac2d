#pragma once

// Rational approximation of log p / log q and the Riesz-order threshold.

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "modchar/modified.hpp"
#include "modchar/sieve.hpp"

namespace modchar {

struct Convergent {
  mpz_class numerator;    // h
  mpz_class denominator;  // b
  /// −log|α − h/b| / log b; +inf for b = 1.
  double quality = 0.0;
  /// |α − h/b| < 1/b²
  bool within_dirichlet_bound = false;
  /// |α − h/b| as a double.
  double error = 0.0;
};

struct ConvergentTable {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  unsigned bits = 0;
  std::vector<mpz_class> partial_quotients;
  std::vector<Convergent> convergents;
  /// The requested depth exceeded the trustworthy prefix.
  bool truncated = false;
  std::vector<std::string> warnings;
};

/// Partial quotients of log p / log q that are provably correct at `bits` of
/// precision (common prefix of the expansions of both directed roundings),
/// re-validated at 2·bits.
ConvergentTable continued_fraction(std::uint64_t p, std::uint64_t q, unsigned depth, unsigned bits = 256);

/// log p / log q as a double-double (hi + lo).
std::pair<double, double> log_ratio_dd(std::uint64_t p, std::uint64_t q);

/// μ = γ log p log q.
double bugeaud_mu(std::uint64_t p, std::uint64_t q, double gamma);

struct RieszOrderThreshold {
  int k = 0;
  double gamma = 0.0;
  double raw = 0.0;  // 10 + γ(|S|+1) max (log p)²
  std::string note;
};

/// ceil(10 + γ(|S|+1) max_{p∈S} (log p)²); 0 with a note when S is empty.
RieszOrderThreshold min_riesz_order(const ModifiedCharacter& mc, double gamma);

struct PoleSeriesRow {
  std::uint64_t n = 0;
  double term = 0.0;
  double partial_sum = 0.0;
};

struct PoleSeriesSpike {
  std::uint64_t n = 0;
  /// ∏_{p≠anchor} |1 − e(n log p / log anchor)|^{-1}
  double factor = 0.0;
};

struct PoleSeriesTrace {
  std::uint64_t anchor = 0;
  int k = 0;
  std::uint64_t n_max = 0;
  double total = 0.0;
  double max_term = 0.0;
  std::uint64_t argmax = 0;
  /// Record-setting n for the product factor.
  std::vector<PoleSeriesSpike> spikes;
  /// max over spikes (n >= 10) of log(factor)/log n.
  double spike_exponent = 0.0;
  /// |partial sum at n_max − partial sum at n_max/10|.
  double last_decade_change = 0.0;
  bool converges = false;
  /// Σ_{n>n_max} n^{-k} when S = {anchor} (empty product); NaN otherwise.
  double tail_estimate = 0.0;
  std::string verdict;
  std::vector<PoleSeriesRow> rows;
};

/// Σ_{n<=n_max} n^{-k} ∏_{p∈S∖{anchor}} |1 − exp(2πi n log p / log anchor)|^{-1}.
PoleSeriesTrace pole_series_diagnostic(const ModifiedCharacter& mc, std::uint64_t anchor, int k, std::uint64_t n_max,
                                       const SieveOptions& options = {});

}  // namespace modchar
