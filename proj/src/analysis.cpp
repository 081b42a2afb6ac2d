#include "modchar/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "modchar/error.hpp"

namespace modchar {
namespace {

struct CoreFit {
  std::vector<double> chebyshev;
  double condition = 0.0;
};

double to_t(double u, double a, double b) { return b > a ? (2.0 * u - a - b) / (b - a) : 0.0; }

CoreFit least_squares_chebyshev(const std::vector<double>& u, const std::vector<double>& y, int degree, double a,
                                double b) {
  const std::size_t rows = u.size();
  const auto cols = static_cast<std::size_t>(degree) + 1;
  if (rows < cols) throw Error(ErrorCode::Fit, "fit of degree " + std::to_string(degree) + " needs more than " +
                                                   std::to_string(rows) + " points");
  // Column-major design matrix of T_j(t_i), long double throughout.
  std::vector<std::vector<long double>> A(cols, std::vector<long double>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    const long double t = to_t(u[i], a, b);
    long double prev = 1.0L, cur = t;
    A[0][i] = 1.0L;
    if (cols > 1) A[1][i] = t;
    for (std::size_t j = 2; j < cols; ++j) {
      const long double next = 2.0L * t * cur - prev;
      A[j][i] = next;
      prev = cur;
      cur = next;
    }
  }
  std::vector<long double> rhs(y.begin(), y.end());
  std::vector<long double> diag(cols);
  // Householder QR, applying reflections to rhs as we go.
  for (std::size_t j = 0; j < cols; ++j) {
    long double norm = 0.0L;
    for (std::size_t i = j; i < rows; ++i) norm += A[j][i] * A[j][i];
    norm = std::sqrt(norm);
    if (norm == 0.0L) throw Error(ErrorCode::Fit, "rank-deficient fit; spread checkpoints over a wider x range");
    const long double alpha = A[j][j] > 0 ? -norm : norm;
    std::vector<long double> v(rows - j);
    for (std::size_t i = j; i < rows; ++i) v[i - j] = A[j][i];
    v[0] -= alpha;
    long double vnorm2 = 0.0L;
    for (auto x : v) vnorm2 += x * x;
    diag[j] = alpha;
    if (vnorm2 == 0.0L) continue;
    auto reflect = [&](std::vector<long double>& col) {
      long double dot = 0.0L;
      for (std::size_t i = j; i < rows; ++i) dot += v[i - j] * col[i];
      const long double f = 2.0L * dot / vnorm2;
      for (std::size_t i = j; i < rows; ++i) col[i] -= f * v[i - j];
    };
    for (std::size_t c = j; c < cols; ++c) reflect(A[c]);
    reflect(rhs);
  }
  long double dmax = 0.0L, dmin = INFINITY;
  for (auto d : diag) {
    dmax = std::max(dmax, std::fabs(d));
    dmin = std::min(dmin, std::fabs(d));
  }
  if (dmin < 1e-13L * dmax) {
    throw Error(ErrorCode::Fit, "ill-conditioned fit (condition " + std::to_string(static_cast<double>(dmax / dmin)) +
                                    "); use more checkpoints spread over a wider x range");
  }
  std::vector<long double> coef(cols);
  for (std::size_t j = cols; j-- > 0;) {
    long double s = rhs[j];
    for (std::size_t c = j + 1; c < cols; ++c) s -= A[c][j] * coef[c];
    coef[j] = s / A[j][j];
  }
  CoreFit out;
  out.chebyshev.assign(coef.begin(), coef.end());
  out.condition = static_cast<double>(dmax / dmin);
  return out;
}

double leading_monomial(const std::vector<double>& cheb, double a, double b) {
  const int d = static_cast<int>(cheb.size()) - 1;
  if (d == 0) return cheb[0];
  return static_cast<double>(static_cast<long double>(cheb.back()) * std::pow(2.0L, d - 1) *
                             std::pow(2.0L / (static_cast<long double>(b) - a), d));
}

// Chebyshev series in t = (2u − a − b)/(b − a) to monomials in u.
std::vector<double> to_monomial(const std::vector<double>& cheb, double a, double b) {
  const std::size_t n = cheb.size();
  std::vector<std::vector<long double>> T(n);
  T[0] = {1.0L};
  if (n > 1) T[1] = {0.0L, 1.0L};
  for (std::size_t j = 2; j < n; ++j) {
    T[j].assign(j + 1, 0.0L);
    for (std::size_t i = 0; i < T[j - 1].size(); ++i) T[j][i + 1] += 2.0L * T[j - 1][i];
    for (std::size_t i = 0; i < T[j - 2].size(); ++i) T[j][i] -= T[j - 2][i];
  }
  std::vector<long double> in_t(n, 0.0L);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < T[j].size(); ++i) in_t[i] += cheb[j] * T[j][i];
  }
  const long double scale = b > a ? 2.0L / (static_cast<long double>(b) - a) : 1.0L;
  const long double shift = b > a ? -(static_cast<long double>(a) + b) / (static_cast<long double>(b) - a) : 0.0L;
  // Horner in polynomials: p(t) with t = scale·u + shift.
  std::vector<long double> out{in_t[n - 1]};
  for (std::size_t j = n - 1; j-- > 0;) {
    std::vector<long double> next(out.size() + 1, 0.0L);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] += out[i] * scale;
      next[i] += out[i] * shift;
    }
    next[0] += in_t[j];
    out = std::move(next);
  }
  out.resize(n);
  return {out.begin(), out.end()};
}

double clenshaw(const std::vector<double>& cheb, double t) {
  long double b1 = 0.0L, b2 = 0.0L;
  for (std::size_t j = cheb.size(); j-- > 1;) {
    const long double b0 = 2.0L * t * b1 - b2 + cheb[j];
    b2 = b1;
    b1 = b0;
  }
  return static_cast<double>(t * b1 - b2 + cheb[0]);
}

}  // namespace

double PolyFit::evaluate(double u) const { return clenshaw(chebyshev, to_t(u, u_min, u_max)); }

PolyFit fit_polynomial(const std::vector<double>& u, const std::vector<double>& y, int degree) {
  if (degree < 0) throw Error(ErrorCode::Fit, "negative fit degree");
  if (u.size() != y.size()) throw Error(ErrorCode::Fit, "fit inputs differ in length");
  if (u.empty()) throw Error(ErrorCode::Fit, "no data to fit");
  PolyFit fit;
  fit.degree = degree;
  fit.u_min = *std::min_element(u.begin(), u.end());
  fit.u_max = *std::max_element(u.begin(), u.end());
  const CoreFit core = least_squares_chebyshev(u, y, degree, fit.u_min, fit.u_max);
  fit.chebyshev = core.chebyshev;
  fit.condition = core.condition;
  fit.coefficients = to_monomial(fit.chebyshev, fit.u_min, fit.u_max);
  fit.leading = leading_monomial(fit.chebyshev, fit.u_min, fit.u_max);
  double sq = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = std::fabs(fit.evaluate(u[i]) - y[i]);
    fit.residual_max = std::max(fit.residual_max, r);
    sq += r * r;
  }
  fit.residual_rms = std::sqrt(sq / static_cast<double>(u.size()));

  // Refit on the two interleaved halves (same u-range) for an instability estimate.
  const auto need = static_cast<std::size_t>(degree) + 1;
  if (u.size() >= 2 * need + 2) {
    std::vector<double> ue, ye, uo, yo;
    for (std::size_t i = 0; i < u.size(); ++i) {
      ((i % 2 == 0) ? ue : uo).push_back(u[i]);
      ((i % 2 == 0) ? ye : yo).push_back(y[i]);
    }
    try {
      const auto even = least_squares_chebyshev(ue, ye, degree, fit.u_min, fit.u_max);
      const auto odd = least_squares_chebyshev(uo, yo, degree, fit.u_min, fit.u_max);
      fit.instability = std::fabs(leading_monomial(even.chebyshev, fit.u_min, fit.u_max) -
                                  leading_monomial(odd.chebyshev, fit.u_min, fit.u_max));
    } catch (const Error&) {
      fit.instability = INFINITY;
    }
  } else {
    fit.instability = INFINITY;
  }
  return fit;
}

PolyFit fit_riesz_polynomial(const RieszRecord& record, int k, int N, const FitOptions& options) {
  if (record.normalized) throw Error(ErrorCode::Fit, "fit needs an un-normalized Riesz record (no 1/k! factor)");
  if (N < 0 || k < 0) throw Error(ErrorCode::Domain, "N and k must be >= 0");
  const int degree = N + k;
  if (degree == 0) {
    throw Error(ErrorCode::Fit, "degenerate degree 0 (N = k = 0): bounded partial sums carry no polynomial to fit");
  }
  const auto& row = record.row(k);
  std::vector<double> u, y;
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t i = 0; i < record.checkpoints.size(); ++i) {
    if (record.checkpoints[i] < options.x_min) continue;
    u.push_back(std::log(record.checkpoints[i]));
    y.push_back(row[i].real());
    max_re = std::max(max_re, std::fabs(row[i].real()));
    max_im = std::max(max_im, std::fabs(row[i].imag()));
  }
  const auto need = 3 * static_cast<std::size_t>(degree + 1);
  if (u.size() < need) {
    throw Error(ErrorCode::Fit, "fit of degree " + std::to_string(degree) + " needs at least " + std::to_string(need) +
                                    " checkpoints, got " + std::to_string(u.size()));
  }
  if (u.back() - u.front() < 2.0 * std::log(10.0)) {
    throw Error(ErrorCode::Fit, "checkpoints must span at least two decades of x");
  }
  PolyFit fit = fit_polynomial(u, y, degree);
  if (k < options.min_riesz_order) {
    fit.warnings.push_back("k = " + std::to_string(k) + " is below the advisory threshold " +
                           std::to_string(options.min_riesz_order));
  }
  if (max_im > 1e-9 * std::max(1.0, max_re)) fit.warnings.push_back("record is complex; only the real part was fitted");
  if (options.theory) {
    fit.theory = options.theory;
    fit.ratio_to_theory = fit.leading / *options.theory;
    fit.gap_to_theory = std::fabs(fit.leading - *options.theory);
  }
  return fit;
}

double residual_decade_ratio(const PolyFit& fit, const RieszRecord& record, int k) {
  const auto& row = record.row(k);
  const double top = record.checkpoints.back();
  double upper = 0.0, lower = 0.0;
  bool have_lower = false;
  for (std::size_t i = 0; i < record.checkpoints.size(); ++i) {
    const double x = record.checkpoints[i];
    const double r = std::fabs(fit.evaluate(std::log(x)) - row[i].real());
    if (x > top / 10.0) {
      upper = std::max(upper, r);
    } else if (x > top / 100.0) {
      lower = std::max(lower, r);
      have_lower = true;
    }
  }
  if (!have_lower) throw Error(ErrorCode::Fit, "record does not cover two decades below its last checkpoint");
  return lower > 0.0 ? upper / lower : (upper > 0.0 ? INFINITY : 1.0);
}

const char* to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::ConsistentWithOmega:
      return "consistent-with-Omega";
    case GrowthVerdict::ConsistentWithO:
      return "consistent-with-O";
    case GrowthVerdict::Inconclusive:
      return "inconclusive";
  }
  return "";
}

GrowthReport growth_check(const PartialSumSeries& series, int exponent, GrowthMode mode) {
  if (exponent < 0) throw Error(ErrorCode::Domain, "growth exponent must be >= 0");
  if (series.checkpoints.size() < 20) throw Error(ErrorCode::Domain, "growth check needs at least 20 checkpoints");
  GrowthReport report;
  report.digest = series.digest;
  report.exponent = exponent;
  report.mode = mode;
  for (std::size_t i = 1; i < series.checkpoints.size(); ++i) {
    const auto lo = static_cast<double>(series.checkpoints[i - 1]);
    if (lo < 3.0) continue;
    const auto hi = static_cast<double>(series.checkpoints[i]);
    const double m = series.window_max_abs[i];
    report.checkpoints.push_back(series.checkpoints[i]);
    report.window_ratio_low.push_back(m / std::pow(std::log(hi), exponent));
    report.window_ratio_high.push_back(m / std::pow(std::log(lo), exponent));
    const double prev = report.running_sup.empty() ? 0.0 : report.running_sup.back();
    report.running_sup.push_back(std::max(prev, report.window_ratio_high.back()));
  }
  const std::size_t w = report.checkpoints.size();
  if (w < 4) throw Error(ErrorCode::Domain, "growth check has too few windows above x = 3");
  const std::size_t half = w / 2;
  report.sup = report.running_sup.back();
  report.tail_inf = *std::min_element(report.window_ratio_low.begin() + static_cast<std::ptrdiff_t>(half),
                                      report.window_ratio_low.end());
  if (mode == GrowthMode::Omega) {
    report.verdict = (report.sup > 0.0 && report.tail_inf > 0.05 * report.sup) ? GrowthVerdict::ConsistentWithOmega
                                                                                : GrowthVerdict::Inconclusive;
  } else {
    const double head_sup = report.running_sup[half - 1];
    const double tail_sup = *std::max_element(report.window_ratio_high.begin() + static_cast<std::ptrdiff_t>(half),
                                              report.window_ratio_high.end());
    report.verdict = tail_sup <= 1.05 * head_sup ? GrowthVerdict::ConsistentWithO : GrowthVerdict::Inconclusive;
  }
  return report;
}

namespace {

// 15-point Kronrod / 7-point Gauss on [a, b].
std::pair<double, double> gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
  static constexpr std::array<double, 8> xk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                               0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                               0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                               0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                               0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                               0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                               0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                               0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = wk[7] * fc, gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double s = f(c - h * xk[j]) + f(c + h * xk[j]);
    kron += wk[j] * s;
    if (j % 2 == 1) gauss += wg[j / 2] * s;
  }
  return {kron * h, std::fabs((kron - gauss) * h)};
}

double adaptive(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
  const auto [value, err] = gauss_kronrod15(f, a, b);
  if (err <= tol || depth > 50) return value;
  const double m = 0.5 * (a + b);
  return adaptive(f, a, m, 0.5 * tol, depth + 1) + adaptive(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace

MellinLemmaCheck mellin_lemma_check(double sigma, double alpha, double log_x_cut) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::Domain, "the Mellin lemma integral diverges for sigma <= 0");
  if (!(alpha >= 0.0)) throw Error(ErrorCode::Domain, "alpha must be >= 0");
  const double U = log_x_cut > 0.0 ? log_x_cut : (60.0 + 2.0 * alpha) / sigma;
  // u = log x turns the integral into ∫_0^U u^α e^{-σu} du.
  auto f = [&](double u) { return u <= 0.0 ? (alpha == 0.0 ? 1.0 : 0.0) : std::exp(alpha * std::log(u) - sigma * u); };
  MellinLemmaCheck out;
  out.analytic = std::tgamma(alpha + 1.0) / std::pow(sigma, 1.0 + alpha);
  // Split at the peak u = α/σ so both sides are smooth on their interior.
  const double peak = std::min(U, alpha / sigma);
  const double tol = 1e-13 * out.analytic;
  out.numeric = (peak > 0.0 ? adaptive(f, 0.0, peak, 0.5 * tol, 0) : 0.0) + adaptive(f, peak, U, 0.5 * tol, 0);
  out.tail_bound = sigma * U > alpha ? std::exp(alpha * std::log(U) - sigma * U) / (sigma - alpha / U) : INFINITY;
  out.gap = std::fabs(out.numeric - out.analytic);
  out.relative_gap = out.gap / out.analytic;
  return out;
}

}  // namespace modchar
