#pragma once

// Empirical checks on sieve output: polynomial fits of Riesz means in log x,
// growth diagnostics of partial sums, and the Mellin integral lemma.
// Every verdict here is numerical evidence only and is labelled "heuristic".

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modchar/series.hpp"

namespace modchar {

struct PolyFit {
  int degree = 0;
  /// Fitted values use the Chebyshev basis on [u_min, u_max], u = log x.
  double u_min = 0.0;
  double u_max = 0.0;
  std::vector<double> chebyshev;
  /// Monomial coefficients c_0..c_D in u.
  std::vector<double> coefficients;
  double leading = 0.0;
  double residual_max = 0.0;
  double residual_rms = 0.0;
  /// max |R_ii| / min |R_ii| of the QR factor.
  double condition = 0.0;
  /// |leading(even-indexed subsample) − leading(odd-indexed subsample)|.
  double instability = 0.0;
  std::optional<double> theory;
  double ratio_to_theory = 0.0;
  double gap_to_theory = 0.0;
  std::vector<std::string> warnings;

  double evaluate(double u) const;
};

struct FitOptions {
  /// Leading coefficient predicted by theory, compared when present.
  std::optional<double> theory;
  /// Only checkpoints with x >= x_min enter the fit.
  double x_min = 1.0;
  /// Advisory threshold; a warning is added below it.
  int min_riesz_order = 0;
};

/// Least-squares fit of degree N + k in u = log x to the real part of the
/// order-k row of an un-normalized record.
PolyFit fit_riesz_polynomial(const RieszRecord& record, int k, int N, const FitOptions& options = {});

/// Fit of arbitrary (u, y) data; used by fit_riesz_polynomial.
PolyFit fit_polynomial(const std::vector<double>& u, const std::vector<double>& y, int degree);

/// max |fit − data| over x in (x_top/10, x_top] divided by the same over the
/// decade below. Values <= 1.5 count as bounded.
double residual_decade_ratio(const PolyFit& fit, const RieszRecord& record, int k);

enum class GrowthMode { Omega, Upper };
enum class GrowthVerdict { ConsistentWithOmega, ConsistentWithO, Inconclusive };
const char* to_string(GrowthVerdict v);

struct GrowthReport {
  std::string digest;
  int exponent = 0;
  GrowthMode mode = GrowthMode::Upper;
  std::vector<std::uint64_t> checkpoints;
  /// Per window (X_{i-1}, X_i]: max |M| / (log X_i)^e (a lower bound on the window max ratio).
  std::vector<double> window_ratio_low;
  /// Per window: max |M| / (log X_{i-1})^e (an upper bound).
  std::vector<double> window_ratio_high;
  /// Cumulative sup of window_ratio_high.
  std::vector<double> running_sup;
  double sup = 0.0;
  /// Infimum of window_ratio_low over the last half of the windows.
  double tail_inf = 0.0;
  GrowthVerdict verdict = GrowthVerdict::Inconclusive;
  std::string label = "heuristic";
};

/// Windows start at the first checkpoint >= 3 so that log X > 1.
GrowthReport growth_check(const PartialSumSeries& series, int exponent, GrowthMode mode);

struct MellinLemmaCheck {
  double numeric = 0.0;
  double analytic = 0.0;
  double gap = 0.0;
  double relative_gap = 0.0;
  double tail_bound = 0.0;
};

/// ∫_1^{x_cut} (log x)^α x^{-1-σ} dx by adaptive Gauss-Kronrod against
/// Γ(α+1)/σ^{1+α}. `log_x_cut` <= 0 picks a cut where the tail is negligible.
MellinLemmaCheck mellin_lemma_check(double sigma, double alpha, double log_x_cut = 0.0);

}  // namespace modchar
