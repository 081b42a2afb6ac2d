#pragma once

// L(s, χ), its functional equation, the special values at s = 0, the Dirichlet
// series F(s) of a modified character and the leading Riesz coefficient.
//
//   F(s) = ∏_{p∈S} (1 − χ(p)p^{-s}) / (1 − f(p)p^{-s}) · L(s, χ)

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "modchar/characters.hpp"
#include "modchar/modified.hpp"

namespace modchar {

using Rational = boost::rational<long long>;

struct LValue {
  std::complex<double> value;
  double error_bound = 0.0;
};

class LContext {
 public:
  explicit LContext(Character chi, double epsilon = 1e-12);

  const Character& character() const noexcept { return chi_; }
  double epsilon() const noexcept { return epsilon_; }
  /// τ(χ) = Σ_a χ(a) e(a/q).
  std::complex<double> gauss_sum() const noexcept { return tau_; }
  /// ε(χ) = τ(χ) / (i^κ √q).
  std::complex<double> root_number() const noexcept { return root_number_; }

 private:
  Character chi_;
  double epsilon_;
  std::complex<double> tau_;
  std::complex<double> root_number_;
};

std::complex<double> gauss_sum(const Character& chi);

/// L(s, χ) = q^{-s} Σ_{a=1}^{q} χ(a) ζ(s, a/q); at s = 1 (non-principal χ) uses
/// L(1, χ) = −(1/q) Σ χ(a) ψ(a/q).
LValue L_value(const LContext& ctx, std::complex<double> s);

struct L0Exact {
  /// True when χ is real; then `rational` holds the value.
  bool is_real = false;
  Rational rational;
  /// Exact cyclotomic form Σ c_i ζ_i (always filled).
  std::vector<std::pair<Rational, UnitValue>> terms;
  std::complex<double> numeric;
  std::string to_string() const;
};

/// L(0, χ) = −(1/q) Σ_{a<q} a χ(a) for odd χ.
L0Exact L0_exact(const Character& chi);

struct Lprime0Result {
  std::complex<double> value;  // the log-Γ route
  std::complex<double> via_log_gamma;
  std::complex<double> via_functional_equation;
  double gap = 0.0;
};

/// L'(0, χ) for even primitive non-principal χ, by Σ χ(a) log Γ(a/q) and by
/// τ(χ) L(1, χ̄) / 2.
Lprime0Result Lprime0(const Character& chi);

/// Pole of 1/(1 − f(p) p^{-s}) with f(p) = e(a/b): s = 2πi (a/b + n) / log p.
std::complex<double> euler_pole_location(std::uint64_t p, const UnitValue& fp, std::int64_t n);

struct EulerRatio {
  std::complex<double> value;
  bool near_pole = false;
  std::uint64_t pole_prime = 0;
  std::int64_t pole_n = 0;
  std::complex<double> pole_location;
  double pole_distance = 0.0;
};

inline constexpr double kNearPoleDistance = 1e-8;

EulerRatio euler_factor_ratio(const ModifiedCharacter& mc, std::complex<double> s);

struct FValue {
  std::complex<double> value;
  std::complex<double> euler_ratio;
  std::complex<double> L;
  bool near_pole = false;
  /// Order of the pole of F at s = 0 (negative: order of the zero).
  int pole_order_at_zero = 0;
};

FValue evaluate_F(const ModifiedCharacter& mc, std::complex<double> s, double epsilon = 1e-12);

struct FunctionalEquationCheck {
  std::complex<double> lhs;
  std::complex<double> rhs;
  std::complex<double> root_number;
  double residual = 0.0;
};

/// |L(s,χ) − ε(χ) L(1−s,χ̄) 2^s π^{s−1} q^{1/2−s} Γ(1−s) sin(π(s+κ)/2)|.
FunctionalEquationCheck functional_equation_check(const LContext& ctx, std::complex<double> s);

enum class FactorGroup { FIsOne, ChiIsOne, Neither };
const char* to_string(FactorGroup g);

struct FactorTerm {
  std::uint64_t prime = 0;
  FactorGroup group = FactorGroup::Neither;
  UnitValue f;
  UnitValue chi;
  std::complex<double> value;
};

struct LeadingCoefficient {
  int N = 0;
  int k = 0;
  int T = 0;
  /// T for odd χ, T − 1 for even χ: the order of the pole of F at 0.
  int pole_order = 0;
  std::complex<double> c_chi;
  /// Exact text of c_χ when available (odd χ).
  std::string c_chi_exact;
  std::vector<FactorTerm> factors;
  /// c_χ k!/(N+k)! ∏ factors.
  std::complex<double> value;
  /// Degree and top coefficient of the Riesz polynomial: k + pole_order and
  /// c_χ k!/(k+pole_order)! ∏ factors. They differ from N + k and value only
  /// when pole_order < 0, where F vanishes at 0.
  int effective_degree = 0;
  std::complex<double> effective_value;
  bool degree_mismatch = false;
  bool trusted = true;
  /// Both c_χ routes for even χ.
  double c_chi_route_gap = 0.0;
};

LeadingCoefficient leading_coefficient(const ModifiedCharacter& mc, int k);

}  // namespace modchar
