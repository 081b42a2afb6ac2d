// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "modchar/analysis.hpp"
#include "modchar/config.hpp"
#include "modchar/diophantine.hpp"
#include "modchar/error.hpp"
#include "modchar/lfunctions.hpp"
#include "modchar/report.hpp"
#include "modchar/series.hpp"
#include "modchar/sieve.hpp"
#include "oracles.hpp"

using namespace modchar;

namespace {

// Tolerances and budgets.
constexpr double kPresetSeconds = 30.0;
constexpr double kSieveSeconds = 60.0;
constexpr double kRieszSeconds = 30.0;
constexpr double kRieszRelTol = 1e-9;
constexpr double kLSeconds = 60.0;
constexpr double kL0Tol = 1e-10;
constexpr double kLprimeRouteTol = 1e-8;
constexpr double kFunctionalEqTol = 1e-8;
constexpr double kLEps = 1e-10;
constexpr double kFitSeconds = 300.0;
constexpr double kFitRelTol = 0.05;
constexpr double kResidualRatioMax = 1.5;
constexpr double kSyntheticTol = 1e-6;
constexpr double kZetaTol = 1e-8;
constexpr double kGrowthSeconds = 600.0;
constexpr double kOmegaTailMin = 0.05;
constexpr double kDiophSeconds = 60.0;
constexpr double kMellinRelTol = 1e-6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> geometric(double lo, double hi, double ratio) {
  std::vector<double> out;
  for (double x = lo; x < hi; x *= ratio) {
    if (out.empty() || std::floor(x) > out.back()) out.push_back(std::floor(x));
  }
  if (out.back() < hi) out.push_back(hi);
  return out;
}

Outcome figures() {
  Outcome o{true, ""};
  const auto dir = std::filesystem::temp_directory_path() / "modchar_acceptance";
  std::filesystem::create_directories(dir);
  for (const auto& [name, expected] : std::vector<std::pair<std::string, int>>{{"fig1", 4}, {"fig2", 3}, {"fig3", 0}}) {
    const auto t0 = Clock::now();
    const auto mc = build_modified(preset_config(name));
    const auto series = partial_sums(mc, 1000000, CheckpointRule::parse("geometric:1.01"));
    const std::string csv = partial_sums_csv(series);
    std::ofstream(dir / (name + ".csv")) << csv;
    const double t = seconds_since(t0);
    bool exact_ok = series.exact && series.exact_sums.size() == series.sums.size();
    for (std::size_t i = 0; exact_ok && i < series.sums.size(); ++i) {
      exact_ok = static_cast<double>(series.exact_sums[i]) == series.sums[i].real() && series.sums[i].imag() == 0.0;
    }
    const bool ok = mc.N() == expected && exact_ok && series.checkpoints.back() == 1000000 && t <= kPresetSeconds;
    o.pass = o.pass && ok;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += name + " N=" + std::to_string(mc.N()) + (exact_ok ? " exact" : " inexact") + fmt(" %.2fs", t);
  }
  return o;
}

Outcome tn_matrix() {
  const std::uint64_t primes[] = {2, 3, 5, 11};
  int agree = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<Modification> mods;
    int f_one = 0, chi_one = 0;
    for (int i = 0; i < 4; ++i) {
      const int f = (mask >> i) & 1 ? 1 : -1;
      const int r = static_cast<int>(primes[i] % 3);
      const int chi = r == 0 ? 0 : (r == 1 ? 1 : -1);
      mods.push_back({primes[i], f == 1 ? UnitValue::one() : UnitValue::minus_one()});
      if (f == chi) continue;
      f_one += f == 1;
      chi_one += chi == 1;
    }
    const auto mc = build_modified(character_from_label("3.2"), mods);
    const int T = f_one - chi_one;
    agree += compute_T(mc) == T && compute_N(mc) == std::max(T, 0);
  }
  return {agree == 16, std::to_string(agree) + "/16 sign patterns agree"};
}

Outcome sieve() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  int good = 0;
  for (int c = 0; c < 10; ++c) {
    const auto cfg = oracle::random_config(rng);
    const auto mc = build_modified(cfg.chi, cfg.mods);
    const auto S = oracle::table(mc);
    const auto values = sieve_values(mc, 100000);
    bool ok = values.size() == 100000;
    for (std::uint64_t n = 1; ok && n <= 100000; ++n) {
      ok = values[n - 1] == eval_f_oracle(mc, n) && values[n - 1] == oracle::f_value(mc.base(), S, n);
    }
    good += ok;
  }
  const double t = seconds_since(t0);
  return {good == 10 && t <= kSieveSeconds, std::to_string(good) + "/10 configs exact to 1e5" + fmt(", %.1fs", t)};
}

Outcome riesz() {
  const auto t0 = Clock::now();
  const std::vector<ModifiedCharacter> configs = {
      build_modified(preset_config("bcc")), build_modified(preset_config("fig1")),
      build_modified(character_from_label("7.3"), {{2, UnitValue::root(5, 12)}, {7, UnitValue::root(1, 3)}})};
  const std::vector<int> orders = {0, 1, 2, 5, 13};
  double worst = 0.0;
  for (const auto& mc : configs) {
    const auto r = riesz_means(mc, orders, {10000.0});
    for (int k : orders) {
      const auto ref = std::complex<double>(oracle::riesz_direct(mc, 10000.0, k));
      worst = std::max(worst, std::abs(r.row(k)[0] - ref) / std::abs(ref));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= kRieszRelTol && t <= kRieszSeconds, fmt("max relative error %.2e", worst) + fmt(", %.1fs", t)};
}

Outcome lvalues() {
  const auto t0 = Clock::now();
  const double l0 = L_value(LContext(character_from_label("3.2"), kLEps), 0.0).value.real();
  const double gap0 = std::fabs(l0 - 1.0 / 3.0);
  double route = 0.0;
  for (const char* label : {"5.4", "8.5"}) route = std::max(route, Lprime0(character_from_label(label)).gap);
  double residual = 0.0;
  int count = 0;
  for (std::uint64_t q = 3; q <= 20; ++q) {
    for (const auto& chi : enumerate_characters(q)) {
      if (!chi.is_primitive() || chi.is_principal()) continue;
      const LContext ctx(chi, kLEps);
      for (double s : {-0.5, 0.3, 0.9}) residual = std::max(residual, functional_equation_check(ctx, s).residual);
      ++count;
    }
  }
  const double t = seconds_since(t0);
  const bool ok = gap0 <= kL0Tol && route <= kLprimeRouteTol && residual <= kFunctionalEqTol && t <= kLSeconds;
  return {ok, fmt("|L(0)-1/3|=%.1e", gap0) + fmt(", L'(0) route gap %.1e", route) +
                  fmt(", max FE residual %.1e over ", residual) + std::to_string(count) + " characters" +
                  fmt(", %.1fs", t)};
}

Outcome bcc_fit() {
  const auto t0 = Clock::now();
  const auto mc = build_modified(preset_config("bcc"));
  const auto rec = riesz_means(mc, {13}, geometric(1.0, 1e6, 1.02));
  const double a14 = 1.0 / (3.0 * 14.0 * std::log(3.0));
  FitOptions fo;
  fo.theory = a14;
  fo.min_riesz_order = min_riesz_order(mc, 1.0).k;
  const auto fit = fit_riesz_polynomial(rec, 13, mc.N(), fo);
  const double rel = std::fabs(fit.leading / a14 - 1.0);
  const double ratio = residual_decade_ratio(fit, rec, 13);
  const double t = seconds_since(t0);
  return {fit.degree == 14 && rel <= kFitRelTol && ratio <= kResidualRatioMax && t <= kFitSeconds,
          fmt("leading %.10g", fit.leading) + fmt(" vs a_14 %.10g", a14) + fmt(" (rel %.1e)", rel) +
              fmt(", residual decade ratio %.3f", ratio) + fmt(", %.1fs", t)};
}

Outcome structure() {
  // Synthetic polynomial data.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const auto xs = geometric(1.0, 1e6, 1.03);
  double synth = 0.0;
  for (int degree : {2, 4, 6}) {
    std::vector<double> c(degree + 1);
    for (auto& v : c) v = coef(rng);
    RieszRecord r;
    r.orders = {1};
    r.checkpoints = xs;
    r.values.resize(1);
    for (double x : xs) {
      double y = 0.0;
      for (std::size_t i = c.size(); i-- > 0;) y = y * std::log(x) + c[i];
      r.values[0].push_back(y);
    }
    const auto fit = fit_riesz_polynomial(r, 1, degree - 1, {});
    for (int i = 0; i <= degree; ++i) synth = std::max(synth, std::fabs(fit.coefficients[i] - c[i]));
  }
  // Order 0 equals partial sums.
  bool k0 = true;
  for (const char* name : {"fig1", "fig2", "bcc"}) {
    const auto mc = build_modified(preset_config(name));
    const auto ps = partial_sums(mc, 100000, CheckpointRule::parse("geometric:1.1"));
    std::vector<double> cps(ps.checkpoints.begin(), ps.checkpoints.end());
    const auto r = riesz_means(mc, {0}, cps);
    for (std::size_t i = 0; i < cps.size(); ++i) k0 = k0 && r.row(0)[i] == ps.sums[i];
  }
  // Empty product pole series.
  double zeta_gap = 0.0;
  const auto bcc = build_modified(preset_config("bcc"));
  for (int k : {2, 5, 13}) {
    const auto trace = pole_series_diagnostic(bcc, 3, k, 20000);
    const double zeta = static_cast<double>(oracle::hurwitz_direct(static_cast<long double>(k), 1.0L).real());
    zeta_gap = std::max(zeta_gap, std::fabs(trace.total + trace.tail_estimate - zeta));
  }
  return {synth <= kSyntheticTol && k0 && zeta_gap <= kZetaTol,
          fmt("synthetic coefficient error %.1e", synth) + (k0 ? ", k=0 equals partial sums" : ", k=0 MISMATCH") +
              fmt(", pole series vs zeta(k) %.1e", zeta_gap)};
}

Outcome growth() {
  const auto t0 = Clock::now();
  const auto dyadic = CheckpointRule{CheckpointRule::Kind::Dyadic};
  const auto omega = growth_check(partial_sums(build_modified(preset_config("bcc")), 10000000, dyadic), 1, GrowthMode::Omega);
  const auto upper = growth_check(partial_sums(build_modified(preset_config("fig1")), 10000000, dyadic), 4, GrowthMode::Upper);
  const double t = seconds_since(t0);
  const bool ok = omega.tail_inf > kOmegaTailMin && std::isfinite(upper.sup) && t <= kGrowthSeconds;
  return {ok, std::string("heuristic: bcc tail inf |M|/log x ") + fmt("%.4f", omega.tail_inf) + " (" +
                  to_string(omega.verdict) + fmt("), fig1 sup |M|/(log x)^4 %.4g", upper.sup) + " (" +
                  to_string(upper.verdict) + fmt("), %.1fs", t)};
}

Outcome diophantine() {
  const auto t0 = Clock::now();
  const auto table = continued_fraction(2, 3, 40);
  const long double alpha = std::log(2.0L) / std::log(3.0L);
  std::vector<std::pair<long, long>> best;
  long double record = 1e300L;
  for (long b = 1; b <= 10000; ++b) {
    const long h = std::lround(alpha * b);
    const long double d = std::fabs(alpha * b - h);
    if (d < record) {
      record = d;
      best.emplace_back(h, b);
    }
  }
  std::vector<std::pair<long, long>> conv;
  bool dirichlet = true;
  for (const auto& c : table.convergents) {
    dirichlet = dirichlet && c.within_dirichlet_bound && c.error < 1.0 / (c.denominator.get_d() * c.denominator.get_d());
    if (c.denominator > 10000) continue;
    if (!conv.empty() && conv.back().second == c.denominator.get_si()) conv.back().first = c.numerator.get_si();
    else conv.emplace_back(c.numerator.get_si(), c.denominator.get_si());
  }
  const int k_fig1 = min_riesz_order(build_modified(preset_config("fig1")), 1.0).k;
  const int k_bcc = min_riesz_order(build_modified(preset_config("bcc")), 1.0).k;
  const double t = seconds_since(t0);
  const bool ok = conv == best && dirichlet && k_fig1 == 39 && k_bcc == 13 && t <= kDiophSeconds;
  return {ok, std::to_string(conv.size()) + " convergents with b<=1e4 " + (conv == best ? "match" : "DIFFER") +
                  " the scan" + (dirichlet ? ", all within 1/b^2" : ", Dirichlet bound VIOLATED") +
                  ", k_min fig1=" + std::to_string(k_fig1) + " bcc=" + std::to_string(k_bcc)};
}

Outcome mellin() {
  double worst = 0.0;
  for (double sigma : {1.0, 0.5, 0.25}) {
    for (double alpha : {0.0, 1.0, 2.0, 3.0}) worst = std::max(worst, mellin_lemma_check(sigma, alpha).relative_gap);
  }
  const auto m = mellin_transform(build_modified(character_from_label("3.2"), {}), 1.0, 1e6);
  const double L1 = std::numbers::pi / (3.0 * std::sqrt(3.0));
  const double gap = std::abs(m.value - L1);
  return {worst <= kMellinRelTol && gap <= m.tail_bound,
          fmt("lemma grid max relative gap %.1e", worst) + fmt(", chi_3 transform vs L(1) %.2e", gap) +
              fmt(" within bound %.2e", m.tail_bound)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"figure presets", figures},      {"T/N matrix", tn_matrix},       {"sieve vs oracle", sieve},
      {"Riesz vs double loop", riesz},  {"L-function values", lvalues},  {"BCC leading coefficient", bcc_fit},
      {"fit and series structure", structure}, {"growth evidence", growth}, {"continued fractions", diophantine},
      {"Mellin lemma", mellin}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %zu %s: %s  [%s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
