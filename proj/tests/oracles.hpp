#pragma once

// Slow, independent reference computations used by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "modchar/characters.hpp"
#include "modchar/modified.hpp"

namespace oracle {

inline std::vector<std::pair<std::uint64_t, int>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline bool prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// f(n) by trial division, with values at primes taken from chi or the modification table.
inline modchar::UnitValue f_value(const modchar::Character& chi, const std::map<std::uint64_t, modchar::UnitValue>& S,
                                  std::uint64_t n) {
  modchar::UnitValue v = modchar::UnitValue::one();
  for (auto [p, e] : trial_factor(n)) {
    auto it = S.find(p);
    const modchar::UnitValue fp = it != S.end() ? it->second : chi.value(p % chi.modulus());
    v = v * fp.pow(static_cast<std::uint64_t>(e));
  }
  return v;
}

inline std::map<std::uint64_t, modchar::UnitValue> table(const modchar::ModifiedCharacter& mc) {
  std::map<std::uint64_t, modchar::UnitValue> S;
  for (const auto& m : mc.modifications()) S[m.prime] = m.value;
  return S;
}

inline std::complex<long double> as_complex(const modchar::UnitValue& v) {
  if (v.is_zero()) return 0.0L;
  if (v.order() == 1) return 1.0L;
  if (v.order() == 2) return -1.0L;
  if (v.order() == 4) return {0.0L, v.index() == 1 ? 1.0L : -1.0L};
  const long double t = 2.0L * std::numbers::pi_v<long double> * v.index() / v.order();
  return {std::cos(t), std::sin(t)};
}

// Σ_{n<=x} f(n) (log(x/n))^k, term by term in long double.
inline std::complex<long double> riesz_direct(const modchar::ModifiedCharacter& mc, double x, int k) {
  const auto S = table(mc);
  std::complex<long double> sum = 0.0L;
  for (std::uint64_t n = 1; static_cast<double>(n) <= x; ++n) {
    const long double w = std::pow(std::log(static_cast<long double>(x) / n), k);
    sum += as_complex(f_value(mc.base(), S, n)) * w;
  }
  return sum;
}

// The least g that generates (Z/p^2 Z)*, by brute force.
inline std::uint64_t least_primitive_root_mod_p2(std::uint64_t p) {
  const std::uint64_t m = p * p, phi = p * (p - 1);
  for (std::uint64_t g = 2;; ++g) {
    if (g % p == 0) continue;
    std::uint64_t x = 1, ord = 0;
    do {
      x = x * g % m;
      ++ord;
    } while (x != 1);
    if (ord == phi) return g;
  }
}

// Conrey character chi_p(m, n) for an odd prime p as an angle a/(p-1).
inline modchar::UnitValue conrey_odd_prime(std::uint64_t p, std::uint64_t m, std::uint64_t n) {
  if (n % p == 0) return modchar::UnitValue::zero();
  const std::uint64_t g = least_primitive_root_mod_p2(p) % p;
  auto ind = [&](std::uint64_t a) {
    std::uint64_t x = 1;
    for (std::uint64_t e = 0;; ++e) {
      if (x == a % p) return e;
      x = x * g % p;
    }
  };
  return modchar::UnitValue::root(static_cast<std::int64_t>(ind(m) * ind(n) % (p - 1)), p - 1);
}

// Smallest d | q such that chi is trivial on units congruent to 1 mod d.
inline std::uint64_t conductor(const modchar::Character& chi) {
  const std::uint64_t q = chi.modulus();
  for (std::uint64_t d = 1; d <= q; ++d) {
    if (q % d) continue;
    bool ok = true;
    for (std::uint64_t n = 1; n < q && ok; ++n) {
      if (gcd(n, q) == 1 && n % d == 1 % d && !chi.value(n).is_one()) ok = false;
    }
    if (ok) return d;
  }
  return q;
}

// Hurwitz zeta for Re s > 1: direct sum plus a short Euler-Maclaurin tail, in long double.
inline std::complex<long double> hurwitz_direct(std::complex<long double> s, long double a, int terms = 20000) {
  std::complex<long double> sum = 0.0L;
  for (int n = terms - 1; n >= 0; --n) sum += std::exp(-s * std::log(n + a));
  const long double x = terms + a;
  const auto xs = std::exp(-s * std::log(x));
  sum += x * xs / (s - 1.0L) + 0.5L * xs + s * xs / (12.0L * x) - s * (s + 1.0L) * (s + 2.0L) * xs / (720.0L * x * x * x);
  return sum;
}

struct RandomConfig {
  modchar::Character chi;
  std::vector<modchar::Modification> mods;
};

// Random primitive non-principal character with q <= 20 and up to four
// modifications whose values have order <= 12.
inline RandomConfig random_config(std::mt19937_64& rng) {
  std::vector<modchar::Character> pool;
  for (std::uint64_t q = 3; q <= 20; ++q) {
    for (const auto& c : modchar::enumerate_characters(q))
      if (!c.is_principal() && c.is_primitive()) pool.push_back(c);
  }
  const auto& chi = pool[rng() % pool.size()];
  static const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  const std::size_t count = rng() % 5;
  std::vector<modchar::Modification> mods;
  std::vector<std::uint64_t> used;
  while (mods.size() < count) {
    const std::uint64_t p = primes[rng() % std::size(primes)];
    if (std::find(used.begin(), used.end(), p) != used.end()) continue;
    const std::uint64_t b = 1 + rng() % 12;
    const auto v = modchar::UnitValue::root(static_cast<std::int64_t>(rng() % b), b);
    if (v == chi.value(p % chi.modulus())) continue;
    used.push_back(p);
    mods.push_back({p, v});
  }
  return {chi, mods};
}

}  // namespace oracle
