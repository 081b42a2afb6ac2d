#include "modchar/diophantine.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "modchar/arith.hpp"
#include "modchar/error.hpp"
#include "modchar/numeric.hpp"

namespace modchar {
namespace {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// log p / log q rounded towards `dir` (MPFR_RNDD or MPFR_RNDU).
void log_ratio(Mpfr& out, std::uint64_t p, std::uint64_t q, mpfr_rnd_t dir) {
  const mpfr_prec_t prec = mpfr_get_prec(out.get()) + 32;
  const mpfr_rnd_t opposite = dir == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD;
  Mpfr lp(prec), lq(prec);
  mpfr_set_ui(lp.get(), static_cast<unsigned long>(p), MPFR_RNDN);
  mpfr_log(lp.get(), lp.get(), dir);
  mpfr_set_ui(lq.get(), static_cast<unsigned long>(q), MPFR_RNDN);
  mpfr_log(lq.get(), lq.get(), opposite);
  mpfr_div(out.get(), lp.get(), lq.get(), dir);
}

// Continued fraction of the dyadic rational held exactly by x.
std::vector<mpz_class> cf_of_dyadic(const Mpfr& x) {
  mpz_class num;
  const mpfr_exp_t e = mpfr_get_z_2exp(num.get_mpz_t(), x.get());
  mpz_class den = 1;
  if (e >= 0) {
    num <<= static_cast<mp_bitcnt_t>(e);
  } else {
    den <<= static_cast<mp_bitcnt_t>(-e);
  }
  std::vector<mpz_class> out;
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.push_back(a);
    mpz_class r = num - a * den;
    num = den;
    den = r;
  }
  return out;
}

// Quotients shared by every real in [lo, hi].
std::vector<mpz_class> guaranteed_prefix(std::uint64_t p, std::uint64_t q, unsigned bits) {
  Mpfr lo(bits), hi(bits);
  log_ratio(lo, p, q, MPFR_RNDD);
  log_ratio(hi, p, q, MPFR_RNDU);
  const auto a = cf_of_dyadic(lo);
  const auto b = cf_of_dyadic(hi);
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  // The last quotient of a finite expansion is not canonical.
  if (n > 0 && (n == a.size() || n == b.size())) --n;
  return {a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n)};
}

void check_pair(std::uint64_t p, std::uint64_t q) {
  if (!arith::is_prime(p) || !arith::is_prime(q)) throw Error(ErrorCode::InvalidPrime, "p and q must be primes");
  if (p == q) throw Error(ErrorCode::Domain, "p and q must be distinct");
}

}  // namespace

ConvergentTable continued_fraction(std::uint64_t p, std::uint64_t q, unsigned depth, unsigned bits) {
  check_pair(p, q);
  if (bits < 128) throw Error(ErrorCode::Domain, "continued_fraction needs at least 128 bits");
  if (depth == 0 || depth > 200) throw Error(ErrorCode::Domain, "depth must be in [1, 200]");

  ConvergentTable table;
  table.p = p;
  table.q = q;
  table.bits = bits;
  auto prefix = guaranteed_prefix(p, q, bits);
  const auto check = guaranteed_prefix(p, q, 2 * bits);
  if (check.size() < prefix.size() || !std::equal(prefix.begin(), prefix.end(), check.begin())) {
    throw Error(ErrorCode::Precision, "continued fraction failed revalidation at doubled precision");
  }
  if (prefix.size() < depth) {
    table.truncated = true;
    table.warnings.push_back("only " + std::to_string(prefix.size()) + " partial quotients are trustworthy at " +
                             std::to_string(bits) + " bits; raise bits for depth " + std::to_string(depth));
  } else {
    prefix.resize(depth);
  }
  table.partial_quotients = prefix;

  Mpfr alpha(2 * bits), approx(2 * bits), diff(2 * bits), tmp(2 * bits);
  log_ratio(alpha, p, q, MPFR_RNDN);
  mpz_class h1 = 1, h2 = 0, b1 = 0, b2 = 1;
  for (const auto& a : prefix) {
    const mpz_class h = a * h1 + h2;
    const mpz_class b = a * b1 + b2;
    h2 = h1;
    h1 = h;
    b2 = b1;
    b1 = b;
    Convergent c{h, b};
    mpfr_set_z(approx.get(), h.get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(approx.get(), approx.get(), b.get_mpz_t(), MPFR_RNDN);
    mpfr_sub(diff.get(), alpha.get(), approx.get(), MPFR_RNDN);
    mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
    c.error = mpfr_get_d(diff.get(), MPFR_RNDN);
    mpfr_mul_z(tmp.get(), diff.get(), b.get_mpz_t(), MPFR_RNDN);
    mpfr_mul_z(tmp.get(), tmp.get(), b.get_mpz_t(), MPFR_RNDN);
    c.within_dirichlet_bound = mpfr_cmp_ui(tmp.get(), 1) < 0;
    if (b == 1) {
      c.quality = std::numeric_limits<double>::infinity();
    } else {
      mpfr_log(tmp.get(), diff.get(), MPFR_RNDN);
      const double log_diff = mpfr_get_d(tmp.get(), MPFR_RNDN);
      mpfr_set_z(tmp.get(), b.get_mpz_t(), MPFR_RNDN);
      mpfr_log(tmp.get(), tmp.get(), MPFR_RNDN);
      c.quality = -log_diff / mpfr_get_d(tmp.get(), MPFR_RNDN);
    }
    table.convergents.push_back(std::move(c));
  }
  return table;
}

std::pair<double, double> log_ratio_dd(std::uint64_t p, std::uint64_t q) {
  Mpfr alpha(256), rest(256);
  log_ratio(alpha, p, q, MPFR_RNDN);
  const double hi = mpfr_get_d(alpha.get(), MPFR_RNDN);
  mpfr_sub_d(rest.get(), alpha.get(), hi, MPFR_RNDN);
  return {hi, mpfr_get_d(rest.get(), MPFR_RNDN)};
}

double bugeaud_mu(std::uint64_t p, std::uint64_t q, double gamma) {
  check_pair(p, q);
  if (!(gamma > 0.0)) throw Error(ErrorCode::Domain, "gamma must be positive");
  return gamma * std::log(static_cast<double>(p)) * std::log(static_cast<double>(q));
}

RieszOrderThreshold min_riesz_order(const ModifiedCharacter& mc, double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::Domain, "gamma must be positive");
  RieszOrderThreshold out;
  out.gamma = gamma;
  if (mc.size_S() == 0) {
    out.note = "S is empty: no off-axis poles, every k >= 0 is admissible";
    return out;
  }
  double max_log2 = 0.0;
  for (const auto& m : mc.modifications()) {
    const double l = std::log(static_cast<double>(m.prime));
    max_log2 = std::max(max_log2, l * l);
  }
  out.raw = 10.0 + gamma * (static_cast<double>(mc.size_S()) + 1.0) * max_log2;
  out.k = static_cast<int>(std::ceil(out.raw));
  out.note = "gamma is a user-supplied constant, not an effective Baker constant; threshold is not proved";
  return out;
}

PoleSeriesTrace pole_series_diagnostic(const ModifiedCharacter& mc, std::uint64_t anchor, int k, std::uint64_t n_max,
                                       const SieveOptions& options) {
  const auto& mods = mc.modifications();
  if (std::none_of(mods.begin(), mods.end(), [&](const Modification& m) { return m.prime == anchor; })) {
    throw Error(ErrorCode::Domain, "anchor " + std::to_string(anchor) + " is not in S");
  }
  if (k < 2) throw Error(ErrorCode::Domain, "pole series needs k >= 2");
  if (n_max == 0 || n_max > 10'000'000ULL) throw Error(ErrorCode::Domain, "n_max must be in [1, 1e7]");

  std::vector<std::pair<double, double>> ratios;
  for (const auto& m : mods) {
    if (m.prime != anchor) ratios.push_back(log_ratio_dd(m.prime, anchor));
  }

  std::vector<double> factors(n_max), terms(n_max);
  const int threads = resolve_threads(options);
  const auto count = static_cast<std::int64_t>(n_max);
#pragma omp parallel for schedule(static, 65536) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto n = static_cast<double>(i + 1);
    double factor = 1.0;
    for (const auto& [hi, lo] : ratios) {
      // frac(n α) with α = hi + lo; fma recovers the rounding error of n·hi.
      const double prod = n * hi;
      const double err = std::fma(n, hi, -prod);
      double frac = prod - std::floor(prod);
      frac += err + n * lo;
      frac -= std::floor(frac);
      if (frac > 0.5) frac -= 1.0;
      const double gap = 2.0 * std::fabs(std::sin(std::numbers::pi * frac));
      factor /= gap;
    }
    factors[i] = factor;
    terms[i] = factor * std::exp(-k * std::log(n));
  }

  PoleSeriesTrace trace;
  trace.anchor = anchor;
  trace.k = k;
  trace.n_max = n_max;
  CompensatedSum sum;
  double record = 0.0;
  double next_sample = 100.0;
  const std::uint64_t decade = n_max / 10;
  double at_decade = 0.0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double term = terms[n - 1];
    sum.add(term);
    if (term > trace.max_term) {
      trace.max_term = term;
      trace.argmax = n;
    }
    bool spike = false;
    if (factors[n - 1] > record) {
      record = factors[n - 1];
      trace.spikes.push_back({n, record});
      spike = true;
      if (n >= 10) {
        trace.spike_exponent = std::max(trace.spike_exponent, std::log(record) / std::log(static_cast<double>(n)));
      }
    }
    if (n == decade) at_decade = sum.value();
    if (n <= 100 || spike || n == n_max || static_cast<double>(n) >= next_sample) {
      trace.rows.push_back({n, term, sum.value()});
      if (static_cast<double>(n) >= next_sample) next_sample *= 1.1;
    }
  }
  trace.total = sum.value();
  if (ratios.empty()) {
    const auto m = static_cast<double>(n_max);
    const double mk = std::exp(-k * std::log(m));
    trace.tail_estimate = m * mk / (k - 1.0) - 0.5 * mk + k * mk / (12.0 * m) - k * (k + 1.0) * (k + 2.0) * mk / (720.0 * m * m * m);
  } else {
    trace.tail_estimate = std::numeric_limits<double>::quiet_NaN();
  }
  trace.last_decade_change = std::fabs(trace.total - at_decade);
  trace.converges = static_cast<double>(k) - trace.spike_exponent > 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "heuristic: %s (k - spike exponent = %.3f, last-decade change %.3e)",
                trace.converges ? "consistent with convergence" : "inconclusive",
                static_cast<double>(k) - trace.spike_exponent, trace.last_decade_change);
  trace.verdict = buf;
  return trace;
}

}  // namespace modchar
