#include "modchar/characters.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "modchar/arith.hpp"
#include "modchar/error.hpp"

namespace modchar {
namespace {

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
  }
  if (old_r != 1) throw Error(ErrorCode::InvalidModulus, "inverse_mod of non-unit");
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

// CRT lift: x ≡ g mod pp and x ≡ 1 mod q/pp.
std::uint64_t lift(std::uint64_t g, std::uint64_t pp, std::uint64_t q) {
  const std::uint64_t rest = q / pp;
  if (rest == 1) return g % q;
  const std::uint64_t t = arith::mulmod((g + pp - 1) % pp, inverse_mod(rest % pp, pp), pp);
  return (1 + rest * t) % q;
}

}  // namespace

CharacterGroup::CharacterGroup(std::uint64_t modulus) : modulus_(modulus), phi_(0), exponent_(1) {
  if (modulus == 0) throw Error(ErrorCode::InvalidModulus, "modulus must be >= 1");
  if (modulus > (1ULL << 31)) throw Error(ErrorCode::InvalidModulus, "modulus too large");
  phi_ = arith::euler_phi(modulus);
  for (auto [p, e] : arith::factorize(modulus)) {
    std::uint64_t pp = 1;
    for (unsigned i = 0; i < e; ++i) pp *= p;
    if (p == 2) {
      if (e == 1) continue;
      GroupComponent minus{2, pp, pp - 1, 0, 2, std::vector<std::int32_t>(pp, -1)};
      if (e == 2) {
        minus.dlog[1] = 0;
        minus.dlog[3] = 1;
        components_.push_back(std::move(minus));
        continue;
      }
      GroupComponent five{2, pp, 5, 0, pp / 4, std::vector<std::int32_t>(pp, -1)};
      std::uint64_t v = 1;
      for (std::uint64_t b = 0; b < pp / 4; ++b) {
        minus.dlog[v] = 0;
        minus.dlog[pp - v] = 1;
        five.dlog[v] = static_cast<std::int32_t>(b);
        five.dlog[pp - v] = static_cast<std::int32_t>(b);
        v = v * 5 % pp;
      }
      components_.push_back(std::move(minus));
      components_.push_back(std::move(five));
    } else {
      const std::uint64_t g = arith::primitive_root_prime_power(p);
      const std::uint64_t order = pp / p * (p - 1);
      GroupComponent comp{p, pp, g % pp, 0, order, std::vector<std::int32_t>(pp, -1)};
      std::uint64_t v = 1;
      for (std::uint64_t k = 0; k < order; ++k) {
        comp.dlog[v] = static_cast<std::int32_t>(k);
        v = v * (g % pp) % pp;
      }
      components_.push_back(std::move(comp));
    }
  }
  for (auto& c : components_) {
    c.lifted = lift(c.generator, c.prime_power, modulus_);
    exponent_ = arith::lcm(exponent_, c.order);
  }
}

std::vector<std::uint64_t> CharacterGroup::dlog(std::uint64_t n) const {
  std::vector<std::uint64_t> out;
  out.reserve(components_.size());
  if (modulus_ % 2 == 0 && n % 2 == 0) {
    throw Error(ErrorCode::InvalidCharacter, std::to_string(n) + " is not a unit mod " + std::to_string(modulus_));
  }
  for (const auto& c : components_) {
    const std::int32_t d = c.dlog[n % c.prime_power];
    if (d < 0) throw Error(ErrorCode::InvalidCharacter, std::to_string(n) + " is not a unit mod " + std::to_string(modulus_));
    out.push_back(static_cast<std::uint64_t>(d));
  }
  return out;
}

Character::Character(std::shared_ptr<const CharacterGroup> group, std::vector<std::uint64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  const auto& comps = group_->components();
  if (exponents_.size() != comps.size()) {
    throw Error(ErrorCode::InvalidCharacter, "exponent vector has " + std::to_string(exponents_.size()) +
                                                 " entries, expected " + std::to_string(comps.size()));
  }
  for (std::size_t j = 0; j < comps.size(); ++j) {
    if (exponents_[j] >= comps[j].order) {
      throw Error(ErrorCode::InvalidCharacter, "exponent " + std::to_string(exponents_[j]) + " out of range [0, " +
                                                   std::to_string(comps[j].order) + ")");
    }
  }
}

std::int64_t Character::value_exponent(std::uint64_t n) const {
  const auto& comps = group_->components();
  const std::uint64_t lambda = group_->exponent();
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    const auto& c = comps[j];
    const std::int32_t d = c.dlog[n % c.prime_power];
    if (d < 0) return -1;
    acc = (acc + arith::mulmod(exponents_[j], static_cast<std::uint64_t>(d), c.order) * (lambda / c.order)) % lambda;
  }
  // The 2-part of q = 2 mod 4 has no component, so even n must be caught here.
  if (modulus() % 2 == 0 && n % 2 == 0) return -1;
  return static_cast<std::int64_t>(acc);
}

UnitValue Character::value(std::uint64_t n) const {
  const std::int64_t e = value_exponent(n);
  if (e < 0) return UnitValue::zero();
  return UnitValue::root(e, group_->exponent());
}

std::vector<UnitValue> Character::value_table() const {
  std::vector<UnitValue> table;
  table.reserve(modulus());
  for (std::uint64_t n = 0; n < modulus(); ++n) table.push_back(value(n));
  return table;
}

bool Character::is_principal() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](std::uint64_t e) { return e == 0; });
}

std::uint64_t Character::order() const {
  const auto& comps = group_->components();
  std::uint64_t ord = 1;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    ord = arith::lcm(ord, comps[j].order / std::gcd(exponents_[j], comps[j].order));
  }
  return ord;
}

bool Character::is_real() const { return order() <= 2; }

int Character::parity() const {
  if (modulus() <= 2) return 1;
  return value(modulus() - 1).to_int();
}

std::uint64_t Character::conductor() const {
  const auto& comps = group_->components();
  const std::uint64_t lambda = group_->exponent();
  std::uint64_t conductor = 1;
  std::size_t j = 0;
  while (j < comps.size()) {
    const std::uint64_t p = comps[j].prime;
    const std::uint64_t pp = comps[j].prime_power;
    std::size_t end = j;
    while (end < comps.size() && comps[end].prime == p) ++end;
    auto local = [&](std::uint64_t u) {
      std::uint64_t acc = 0;
      for (std::size_t i = j; i < end; ++i) {
        const auto d = static_cast<std::uint64_t>(comps[i].dlog[u]);
        acc = (acc + exponents_[i] * d % comps[i].order * (lambda / comps[i].order)) % lambda;
      }
      return acc;
    };
    // Smallest p^c such that the local character is trivial on units ≡ 1 mod p^c.
    std::uint64_t pc = 1;
    while (pc < pp) {
      bool trivial = true;
      for (std::uint64_t u = 1; u < pp; u += pc) {
        if (comps[j].dlog[u] < 0) continue;
        if (local(u) != 0) {
          trivial = false;
          break;
        }
      }
      if (trivial) break;
      pc *= p;
    }
    conductor *= pc;
    j = end;
  }
  return conductor;
}

Character Character::conj() const {
  const auto& comps = group_->components();
  std::vector<std::uint64_t> exps(exponents_.size());
  for (std::size_t j = 0; j < comps.size(); ++j) exps[j] = (comps[j].order - exponents_[j]) % comps[j].order;
  return Character(group_, std::move(exps));
}

std::uint64_t Character::conrey_index() const {
  const auto& comps = group_->components();
  const std::uint64_t q = modulus();
  std::uint64_t m = 1 % q;
  for (std::size_t j = 0; j < comps.size(); ++j) m = arith::mulmod(m, arith::powmod(comps[j].lifted, exponents_[j], q), q);
  return q == 1 ? 1 : m;
}

std::string Character::label() const { return std::to_string(modulus()) + "." + std::to_string(conrey_index()); }

std::vector<Character> enumerate_characters(std::uint64_t q) {
  auto group = std::make_shared<const CharacterGroup>(q);
  const auto& comps = group->components();
  std::vector<Character> out;
  out.reserve(group->phi());
  std::vector<std::uint64_t> exps(comps.size(), 0);
  while (true) {
    out.emplace_back(group, exps);
    std::size_t j = 0;
    while (j < comps.size()) {
      if (++exps[j] < comps[j].order) break;
      exps[j] = 0;
      ++j;
    }
    if (j == comps.size()) break;
  }
  return out;
}

Character principal_character(std::uint64_t q) {
  auto group = std::make_shared<const CharacterGroup>(q);
  std::vector<std::uint64_t> exps(group->components().size(), 0);
  return Character(group, std::move(exps));
}

Character character_from_exponents(std::uint64_t q, const std::vector<std::uint64_t>& exponents) {
  return Character(std::make_shared<const CharacterGroup>(q), exponents);
}

Character character_from_conrey(std::uint64_t q, std::uint64_t m) {
  auto group = std::make_shared<const CharacterGroup>(q);
  if (arith::gcd(m % q, q) != 1 && q != 1) {
    throw Error(ErrorCode::InvalidCharacter, "Conrey index " + std::to_string(m) + " is not coprime to " + std::to_string(q));
  }
  auto exps = q == 1 ? std::vector<std::uint64_t>{} : group->dlog(m % q);
  return Character(group, std::move(exps));
}

Character character_from_label(const std::string& label) {
  const auto dot = label.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == label.size()) {
    throw Error(ErrorCode::InvalidCharacter, "label '" + label + "' is not of the form q.m");
  }
  std::uint64_t q = 0, m = 0;
  try {
    std::size_t used = 0;
    q = std::stoull(label.substr(0, dot), &used);
    if (used != dot) throw std::invalid_argument("q");
    const std::string rest = label.substr(dot + 1);
    m = std::stoull(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("m");
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidCharacter, "label '" + label + "' is not of the form q.m");
  }
  return character_from_conrey(q, m);
}

UnitValue eval_char(const Character& chi, std::uint64_t n) { return chi.value(n); }

}  // namespace modchar
