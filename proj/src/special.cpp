#include "modchar/special.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <numbers>
#include <string>
#include <vector>

#include "modchar/error.hpp"

namespace modchar {
namespace {

constexpr double kPi = std::numbers::pi;

// Numerators/denominators of B_2 .. B_20.
constexpr std::array<double, 10> kB2kNum = {1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611};
constexpr std::array<double, 10> kB2kDen = {6, 30, 42, 30, 66, 2730, 6, 510, 798, 330};

double zeta_even(int two_j) {
  if (two_j == 2) return kPi * kPi / 6.0;
  constexpr int kTerms = 1000;
  double sum = 0.0;
  for (int n = kTerms - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -two_j);
  const double big = kTerms;
  sum += std::pow(big, 1.0 - two_j) / (two_j - 1) + 0.5 * std::pow(big, -two_j);
  return sum;
}

const std::vector<double>& bernoulli_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(161);
    for (int j = 1; j <= 160; ++j) {
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      t[j] = sign * 2.0 * zeta_even(2 * j) / std::pow(2.0 * kPi, 2 * j);
    }
    return t;
  }();
  return table;
}

std::complex<double> stirling_log_gamma(std::complex<double> z) {
  std::complex<double> sum = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
  std::complex<double> zpow = z;
  const std::complex<double> z2 = z * z;
  for (std::size_t k = 0; k < kB2kNum.size(); ++k) {
    const double b = kB2kNum[k] / kB2kDen[k];
    const double twok = 2.0 * static_cast<double>(k + 1);
    sum += b / (twok * (twok - 1.0) * zpow);
    zpow *= z2;
  }
  return sum;
}

}  // namespace

double bernoulli_ratio(int j) {
  if (j < 1 || j > 160) throw Error(ErrorCode::Domain, "bernoulli_ratio index out of range");
  return bernoulli_table()[j];
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::Domain, "log_gamma needs x > 0");
  double shift = 0.0;
  while (x < 15.0) {
    shift += std::log(x);
    x += 1.0;
  }
  return stirling_log_gamma({x, 0.0}).real() - shift;
}

std::complex<double> gamma(std::complex<double> z) {
  if (z.real() < 0.5) {
    const std::complex<double> s = std::sin(kPi * z);
    if (std::abs(s) == 0.0) throw Error(ErrorCode::Pole, "gamma at a non-positive integer");
    return kPi / (s * gamma(1.0 - z));
  }
  std::complex<double> prod = 1.0;
  while (z.real() < 15.0) {
    prod *= z;
    z += 1.0;
  }
  return std::exp(stirling_log_gamma(z)) / prod;
}

double digamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::Domain, "digamma needs x > 0");
  double acc = 0.0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  double result = std::log(x) - 0.5 / x;
  const double x2 = x * x;
  double xpow = x2;
  for (std::size_t k = 0; k < 7; ++k) {
    const double b = kB2kNum[k] / kB2kDen[k];
    result -= b / (2.0 * static_cast<double>(k + 1) * xpow);
    xpow *= x2;
  }
  return acc + result;
}

HurwitzResult hurwitz_zeta(std::complex<double> s, double a, double tolerance) {
  if (s == std::complex<double>(1.0, 0.0)) throw Error(ErrorCode::Pole, "Hurwitz zeta has a pole at s = 1");
  if (!(a > 0.0 && a <= 1.0)) throw Error(ErrorCode::Domain, "Hurwitz zeta needs a in (0, 1]");
  if (std::abs(s) > 100.0) throw Error(ErrorCode::Domain, "Hurwitz zeta supports |s| <= 100");

  struct Attempt {
    HurwitzResult result;
    double truncation = 0.0;
  };
  auto evaluate = [&](int shift, int depth) {
    std::complex<double> head = 0.0;
    double head_rounding = 0.0;  // phase error of exp(-s log(n+a)) grows with |s log(n+a)|
    for (int n = shift - 1; n >= 0; --n) {
      const double l = std::log(n + a);
      const std::complex<double> term = std::exp(-s * l);
      head += term;
      head_rounding += std::abs(term) * (4.0 + std::abs(s) * std::fabs(l));
    }
    const double x = shift + a;
    const double logx = std::log(x);
    const std::complex<double> xs = std::exp(-s * logx);  // x^{-s}
    std::complex<double> tail = x * xs / (s - 1.0) + 0.5 * xs;
    std::complex<double> poch = s;       // (s)_{2j-1}
    std::complex<double> xpow = xs / x;  // x^{-s-2j+1}
    for (int j = 1; j <= depth; ++j) {
      tail += bernoulli_ratio(j) * poch * xpow;
      poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
      xpow /= x * x;
    }
    // Remainder bound: next term times |s+2B+1| / (Re s + 2B + 1).
    const double next = std::abs(bernoulli_ratio(depth + 1) * poch * xpow);
    const double sigma_shift = s.real() + 2.0 * depth + 1.0;
    const double truncation = sigma_shift > 0.0 ? next * std::abs(s + (2.0 * depth + 1.0)) / sigma_shift
                                                 : std::numeric_limits<double>::infinity();
    // Rounding in the head and in the leading tail terms does not shrink with a larger shift.
    const double rounding = std::numeric_limits<double>::epsilon() *
                            (head_rounding + (4.0 + std::abs(s) * logx) * std::abs(x * xs / (s - 1.0)));
    return Attempt{{head + tail, truncation + rounding, shift, depth}, truncation};
  };

  int shift = std::max(50, static_cast<int>(std::ceil(std::abs(s))) + 10);
  int depth = 20;
  std::optional<Attempt> best;
  for (int attempt = 0; attempt < 12 && !best; ++attempt) {
    const Attempt r = evaluate(shift, depth);
    if (r.truncation <= tolerance) best = r;
    shift *= 2;
    depth = std::min(depth + 10, 80);
  }
  if (!best) {
    throw Error(ErrorCode::Precision, "Hurwitz zeta: tolerance " + std::to_string(tolerance) +
                                          " not reached; try a looser precision target");
  }
  // Left of the critical strip the head sum cancels against the tail; a
  // smaller shift with more Bernoulli terms loses less to rounding.
  const int min_shift = std::max(8, static_cast<int>(std::ceil(std::abs(s))) + 5);
  for (int m = best->result.shift / 2; best->result.error_bound > tolerance && m >= min_shift; m /= 2) {
    for (int b : {20, 30, 40, 60, 80}) {
      const Attempt r = evaluate(m, b);
      if (r.truncation <= tolerance && r.result.error_bound < best->result.error_bound) best = r;
    }
  }
  return best->result;
}

}  // namespace modchar
