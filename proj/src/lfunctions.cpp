#include "modchar/lfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>

#include "modchar/error.hpp"
#include "modchar/numeric.hpp"
#include "modchar/special.hpp"

namespace modchar {
namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};

// e^w − 1, accurate for small |w|.
std::complex<double> expm1c(std::complex<double> w) {
  const double x = w.real(), y = w.imag();
  const double half = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * half * half, std::exp(x) * std::sin(y)};
}

// Nearest n for the branch 2πi(a/b + n) − s log p, which is small near a pole.
std::int64_t nearest_branch(std::complex<double> s, double logp, const UnitValue& u) {
  const double frac = static_cast<double>(u.index()) / static_cast<double>(u.order());
  return static_cast<std::int64_t>(std::llround(s.imag() * logp / (2.0 * kPi) - frac));
}

// 1 − u p^{-s}
std::complex<double> one_minus(const UnitValue& u, std::complex<double> s, double logp) {
  if (u.is_zero()) return 1.0;
  const std::int64_t n = nearest_branch(s, logp, u);
  const double angle = 2.0 * kPi * (static_cast<double>(u.index()) / static_cast<double>(u.order()) + static_cast<double>(n));
  return -expm1c(kI * angle - s * logp);
}

std::complex<double> cpow(double base, std::complex<double> e) { return std::exp(e * std::log(base)); }

}  // namespace

std::complex<double> gauss_sum(const Character& chi) {
  const std::uint64_t q = chi.modulus();
  CompensatedComplexSum sum;
  for (std::uint64_t a = 1; a <= q; ++a) {
    const UnitValue v = chi.value(a);
    if (v.is_zero()) continue;
    sum.add((v * UnitValue::root(static_cast<std::int64_t>(a), q)).to_complex());
  }
  return sum.value();
}

LContext::LContext(Character chi, double epsilon) : chi_(std::move(chi)), epsilon_(epsilon) {
  tau_ = modchar::gauss_sum(chi_);
  const std::complex<double> i_kappa = chi_.kappa() == 1 ? kI : std::complex<double>(1.0);
  root_number_ = tau_ / (i_kappa * std::sqrt(static_cast<double>(chi_.modulus())));
}

LValue L_value(const LContext& ctx, std::complex<double> s) {
  const Character& chi = ctx.character();
  const std::uint64_t q = chi.modulus();
  const auto qd = static_cast<double>(q);
  if (s == std::complex<double>(1.0, 0.0)) {
    if (chi.is_principal()) throw Error(ErrorCode::Pole, "L(s, χ₀) has a pole at s = 1");
    CompensatedComplexSum sum;
    for (std::uint64_t a = 1; a < q; ++a) {
      const UnitValue v = chi.value(a);
      if (!v.is_zero()) sum.add(v.to_complex() * digamma(static_cast<double>(a) / qd));
    }
    return {-sum.value() / qd, 1e-14 * static_cast<double>(q)};
  }
  const std::complex<double> scale = cpow(qd, -s);
  const double per_term = ctx.epsilon() / (static_cast<double>(q) * std::max(1.0, std::abs(scale)));
  std::complex<double> sum = 0.0;
  double err = 0.0;
  for (std::uint64_t a = 1; a <= q; ++a) {
    const UnitValue v = chi.value(a);
    if (v.is_zero()) continue;
    const HurwitzResult h = hurwitz_zeta(s, static_cast<double>(a) / qd, per_term);
    sum += v.to_complex() * h.value;
    err += h.error_bound;
  }
  LValue out{scale * sum, std::abs(scale) * err};
  if (out.error_bound > ctx.epsilon() * std::max(1.0, std::abs(out.value))) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "L-value error bound %.3g exceeds the target %.3g; use a looser target (e.g. %.0e)",
                  out.error_bound, ctx.epsilon(), std::pow(10.0, std::ceil(std::log10(out.error_bound))));
    throw Error(ErrorCode::Precision, buf);
  }
  return out;
}

std::string L0Exact::to_string() const {
  if (is_real) return std::to_string(rational.numerator()) + "/" + std::to_string(rational.denominator());
  std::string out;
  for (const auto& [c, u] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + std::to_string(c.numerator()) + "/" + std::to_string(c.denominator()) + ")*" + u.to_string();
  }
  return out.empty() ? "0" : out;
}

L0Exact L0_exact(const Character& chi) {
  if (chi.parity() != -1) throw Error(ErrorCode::WrongParity, "L0_exact needs an odd character; L(0, χ) = 0 for even χ");
  const auto q = static_cast<long long>(chi.modulus());
  std::map<std::pair<std::uint64_t, std::uint64_t>, long long> grouped;
  for (long long a = 1; a < q; ++a) {
    const UnitValue v = chi.value(static_cast<std::uint64_t>(a));
    if (v.is_zero()) continue;
    grouped[{v.order(), v.index()}] += a;
  }
  L0Exact out;
  out.is_real = chi.is_real();
  CompensatedComplexSum numeric;
  for (const auto& [key, weight] : grouped) {
    const UnitValue u = UnitValue::root(static_cast<std::int64_t>(key.second), key.first);
    const Rational c(-weight, q);
    if (c.numerator() == 0) continue;
    out.terms.emplace_back(c, u);
    numeric.add(u.to_complex() * boost::rational_cast<double>(c));
    if (out.is_real) out.rational += c * u.to_int();
  }
  out.numeric = numeric.value();
  return out;
}

Lprime0Result Lprime0(const Character& chi) {
  if (chi.parity() != 1) throw Error(ErrorCode::WrongParity, "Lprime0 needs an even character");
  if (chi.is_principal()) throw Error(ErrorCode::Primitivity, "Lprime0 needs a non-principal character");
  if (!chi.is_primitive()) throw Error(ErrorCode::Primitivity, "Lprime0 needs a primitive character");
  const std::uint64_t q = chi.modulus();
  CompensatedComplexSum sum;
  for (std::uint64_t a = 1; a < q; ++a) {
    const UnitValue v = chi.value(a);
    if (!v.is_zero()) sum.add(v.to_complex() * log_gamma(static_cast<double>(a) / static_cast<double>(q)));
  }
  Lprime0Result out;
  out.via_log_gamma = sum.value();
  const LContext conj_ctx(chi.conj());
  out.via_functional_equation = gauss_sum(chi) * L_value(conj_ctx, 1.0).value / 2.0;
  out.value = out.via_log_gamma;
  out.gap = std::abs(out.via_log_gamma - out.via_functional_equation);
  return out;
}

std::complex<double> euler_pole_location(std::uint64_t p, const UnitValue& fp, std::int64_t n) {
  const double frac = static_cast<double>(fp.index()) / static_cast<double>(fp.order());
  return kI * (2.0 * kPi * (frac + static_cast<double>(n)) / std::log(static_cast<double>(p)));
}

EulerRatio euler_factor_ratio(const ModifiedCharacter& mc, std::complex<double> s) {
  EulerRatio out;
  out.value = 1.0;
  out.pole_distance = std::numeric_limits<double>::infinity();
  for (const auto& m : mc.modifications()) {
    const double logp = std::log(static_cast<double>(m.prime));
    const std::int64_t n = nearest_branch(s, logp, m.value);
    const std::complex<double> pole = euler_pole_location(m.prime, m.value, n);
    const double dist = std::abs(s - pole);
    if (dist == 0.0) {
      throw PoleError(m.prime, n, "s is a pole of the Euler factor at p = " + std::to_string(m.prime) +
                                      " (n = " + std::to_string(n) + ")");
    }
    if (dist < out.pole_distance) {
      out.pole_distance = dist;
      out.pole_prime = m.prime;
      out.pole_n = n;
      out.pole_location = pole;
    }
    if (dist < kNearPoleDistance) out.near_pole = true;
    out.value *= one_minus(mc.base().value(m.prime), s, logp) / one_minus(m.value, s, logp);
  }
  return out;
}

FValue evaluate_F(const ModifiedCharacter& mc, std::complex<double> s, double epsilon) {
  FValue out;
  const EulerRatio ratio = euler_factor_ratio(mc, s);
  const LContext ctx(mc.base(), epsilon);
  out.euler_ratio = ratio.value;
  out.near_pole = ratio.near_pole;
  out.L = L_value(ctx, s).value;
  out.value = out.euler_ratio * out.L;
  out.pole_order_at_zero = mc.base().parity() == -1 ? mc.T() : mc.T() - 1;
  return out;
}

FunctionalEquationCheck functional_equation_check(const LContext& ctx, std::complex<double> s) {
  const Character& chi = ctx.character();
  if (!chi.is_primitive()) throw Error(ErrorCode::Primitivity, "functional equation needs a primitive character");
  const auto q = static_cast<double>(chi.modulus());
  const LContext conj_ctx(chi.conj(), ctx.epsilon());
  FunctionalEquationCheck out;
  out.root_number = ctx.root_number();
  out.lhs = L_value(ctx, s).value;
  const std::complex<double> factor = cpow(2.0, s) * cpow(kPi, s - 1.0) * cpow(q, 0.5 - s) * gamma(1.0 - s) *
                                      std::sin(0.5 * kPi * (s + static_cast<double>(chi.kappa())));
  out.rhs = out.root_number * L_value(conj_ctx, 1.0 - s).value * factor;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

const char* to_string(FactorGroup g) {
  switch (g) {
    case FactorGroup::FIsOne:
      return "f(p)=1";
    case FactorGroup::ChiIsOne:
      return "chi(p)=1";
    case FactorGroup::Neither:
      return "f(p),chi(p)!=1";
  }
  return "";
}

LeadingCoefficient leading_coefficient(const ModifiedCharacter& mc, int k) {
  if (k < 0) throw Error(ErrorCode::Domain, "Riesz order must be >= 0");
  const Character& chi = mc.base();
  LeadingCoefficient out;
  out.k = k;
  out.T = mc.T();
  out.N = mc.N();
  out.trusted = mc.trusted();
  out.pole_order = chi.parity() == -1 ? out.T : out.T - 1;

  if (chi.parity() == -1) {
    const L0Exact l0 = L0_exact(chi);
    out.c_chi = l0.numeric;
    out.c_chi_exact = l0.to_string();
  } else {
    const Lprime0Result d = Lprime0(chi);
    out.c_chi_route_gap = d.gap;
    if (d.gap > 1e-8) {
      throw Error(ErrorCode::Precision, "L'(0, χ) routes disagree by " + std::to_string(d.gap));
    }
    out.c_chi = d.value;
  }

  std::complex<double> product = 1.0;
  for (const auto& m : mc.modifications()) {
    FactorTerm term;
    term.prime = m.prime;
    term.f = m.value;
    term.chi = chi.value(m.prime);
    const double logp = std::log(static_cast<double>(m.prime));
    const std::complex<double> one_minus_chi = 1.0 - term.chi.to_complex();
    const std::complex<double> one_minus_f = 1.0 - term.f.to_complex();
    if (term.f.is_one()) {
      term.group = FactorGroup::FIsOne;
      term.value = one_minus_chi / logp;
    } else if (term.chi.is_one()) {
      term.group = FactorGroup::ChiIsOne;
      term.value = logp / one_minus_f;
    } else {
      term.group = FactorGroup::Neither;
      term.value = one_minus_chi / one_minus_f;
    }
    product *= term.value;
    out.factors.push_back(term);
  }

  // k!/(N+k)!
  double ratio = 1.0;
  for (int i = 1; i <= out.N; ++i) ratio /= static_cast<double>(k + i);
  out.value = out.c_chi * ratio * product;

  out.effective_degree = k + out.pole_order;
  out.degree_mismatch = out.pole_order < 0;
  if (out.effective_degree < 0) {
    out.effective_value = 0.0;
  } else {
    // k!/(k+pole_order)!
    double eff = 1.0;
    if (out.pole_order >= 0) {
      for (int i = 1; i <= out.pole_order; ++i) eff /= static_cast<double>(k + i);
    } else {
      for (int i = 0; i < -out.pole_order; ++i) eff *= static_cast<double>(k - i);
    }
    out.effective_value = out.c_chi * eff * product;
  }
  return out;
}

}  // namespace modchar
