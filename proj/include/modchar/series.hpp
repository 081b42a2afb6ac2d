#pragma once

// Partial sums, Riesz means and the truncated Mellin transform of f, all
// computed in one streaming pass over the sieve.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "modchar/modified.hpp"
#include "modchar/numeric.hpp"
#include "modchar/sieve.hpp"

namespace modchar {

struct CheckpointRule {
  enum class Kind { EveryN, Geometric, Dyadic };
  Kind kind = Kind::Geometric;
  double ratio = 1.01;      // Geometric
  std::uint64_t step = 1;   // EveryN

  /// "every:<n>", "geometric:<ratio>" or "dyadic".
  static CheckpointRule parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const CheckpointRule&, const CheckpointRule&) = default;
};

/// Strictly increasing checkpoints ending at x_max.
std::vector<std::uint64_t> make_checkpoints(const CheckpointRule& rule, std::uint64_t x_max);

struct PartialSumSeries {
  std::vector<std::uint64_t> checkpoints;
  /// M_f(x) at each checkpoint.
  std::vector<std::complex<double>> sums;
  /// max |M_f(n)| over n in (previous checkpoint, checkpoint].
  std::vector<double> window_max_abs;
  /// Integer accumulator results, filled when f takes values in {0, ±1}.
  bool exact = false;
  std::vector<std::int64_t> exact_sums;
  std::vector<std::int64_t> exact_window_max_abs;
  std::uint64_t x_max = 0;
  std::string digest;
};

PartialSumSeries partial_sums(const ModifiedCharacter& mc, std::uint64_t x_max, const CheckpointRule& rule,
                              const SieveOptions& options = {});
PartialSumSeries partial_sums(const ModifiedCharacter& mc, const std::vector<std::uint64_t>& checkpoints,
                              const SieveOptions& options = {});

inline constexpr int kMaxRieszOrder = 200;

struct RieszRecord {
  std::vector<int> orders;
  std::vector<double> checkpoints;
  /// values[i][c]: order orders[i] at checkpoints[c].
  std::vector<std::vector<std::complex<double>>> values;
  /// Divided by k! when true.
  bool normalized = false;
  std::string digest;

  /// Row for order k; throws if k was not computed.
  const std::vector<std::complex<double>>& row(int k) const;
};

/// Streaming accumulator for Σ_{n<=X} a_n (log(X/n))^j, j <= max order, at a
/// fixed increasing list of real checkpoints X >= 1. Sums are anchored at the
/// next checkpoint so every term carries its final weight; crossing a
/// checkpoint re-anchors with the binomial shift
///   Σ a_n (L' - log n)^j = Σ_l C(j,l) (L' - L)^{j-l} Σ a_n (L - log n)^l.
class RieszAccumulator {
 public:
  RieszAccumulator(std::vector<int> orders, std::vector<double> checkpoints, bool normalize = false);

  /// Feed a_n; n must be strictly increasing and >= 1.
  void push(std::uint64_t n, std::complex<double> a);
  /// Same for real a_n.
  void push_real(std::uint64_t n, double a);
  /// Smallest n not needed any more (everything above the last checkpoint).
  std::uint64_t limit() const noexcept { return limit_; }
  RieszRecord finish();

 private:
  void advance_to(std::uint64_t n);
  void record_current();
  void shift_to_next();

  std::vector<int> orders_;
  std::vector<double> checkpoints_;
  bool normalize_;
  int max_order_;
  std::size_t next_ = 0;
  double anchor_ = 0.0;
  std::uint64_t limit_ = 0;
  std::vector<CompensatedComplexSum> acc_;
  std::vector<double> powers_;
  std::vector<std::vector<long double>> binom_;
  RieszRecord record_;
};

struct RieszOptions {
  bool normalize = false;
  SieveOptions sieve;
};

RieszRecord riesz_means(const ModifiedCharacter& mc, const std::vector<int>& orders,
                        const std::vector<double>& checkpoints, const RieszOptions& options = {});

struct MellinResult {
  std::complex<double> value;
  /// Heuristic tail bound σ∫_{x_cut}^∞ C (log x)^{|S|} x^{-1-σ} dx with C fitted on [1, x_cut].
  double tail_bound = 0.0;
  double growth_constant = 0.0;
  double x_cut = 0.0;
};

/// σ ∫_1^{x_cut} M_f(x) x^{-1-σ} dx, integrated exactly on each unit interval.
MellinResult mellin_transform(const ModifiedCharacter& mc, double sigma, double x_cut, const SieveOptions& options = {});

}  // namespace modchar
