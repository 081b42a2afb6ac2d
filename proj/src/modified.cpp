#include "modchar/modified.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "modchar/arith.hpp"
#include "modchar/error.hpp"

namespace modchar {

ModifiedCharacter build_modified(const Character& base, std::vector<Modification> mods, const BuildOptions& options) {
  if (base.is_principal()) {
    throw Error(ErrorCode::Primitivity, "base character " + base.label() + " is principal; f ≡ χ₀ is not a modified character");
  }
  ModifiedCharacter mc(base);
  if (!base.is_primitive()) {
    if (!options.allow_imprimitive) {
      throw Error(ErrorCode::Primitivity, "base character " + base.label() + " has conductor " +
                                              std::to_string(base.conductor()) + " and is not primitive");
    }
    mc.trusted_ = false;
    mc.warnings_.push_back("base character is not primitive; theoretical outputs are untrusted");
  }

  std::map<std::uint64_t, UnitValue> unique;
  for (const auto& m : mods) {
    if (!arith::is_prime(m.prime)) {
      throw Error(ErrorCode::InvalidPrime, "modification key " + std::to_string(m.prime) + " is not prime");
    }
    if (m.value.is_zero()) {
      throw Error(ErrorCode::InvalidModification, "f(" + std::to_string(m.prime) + ") = 0 is not unimodular");
    }
    auto [it, inserted] = unique.emplace(m.prime, m.value);
    if (!inserted && !(it->second == m.value)) {
      throw Error(ErrorCode::InvalidModification, "conflicting values for f(" + std::to_string(m.prime) + ")");
    }
  }
  for (const auto& [p, v] : unique) {
    if (base.value(p) == v) {
      mc.warnings_.push_back("dropped f(" + std::to_string(p) + ") = " + v.to_string() + " since it equals chi(" +
                             std::to_string(p) + ")");
      continue;
    }
    mc.mods_.push_back({p, v});
  }
  mc.T_ = compute_T(mc);
  mc.N_ = compute_N(mc);
  return mc;
}

UnitValue ModifiedCharacter::at_prime(std::uint64_t p) const {
  auto it = std::lower_bound(mods_.begin(), mods_.end(), p,
                             [](const Modification& m, std::uint64_t key) { return m.prime < key; });
  if (it != mods_.end() && it->prime == p) return it->value;
  return base_.value(p);
}

std::string ModifiedCharacter::canonical_string() const {
  std::string s = "chi=" + base_.label() + ";S=";
  for (const auto& m : mods_) s += std::to_string(m.prime) + ":" + m.value.to_string() + ",";
  return s;
}

std::string ModifiedCharacter::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_string()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int compute_T(const ModifiedCharacter& mc) {
  int t = 0;
  for (const auto& m : mc.modifications()) {
    if (m.value.is_one()) ++t;
    if (mc.base().value(m.prime).is_one()) --t;
  }
  return t;
}

int compute_N(const ModifiedCharacter& mc) {
  const int t = compute_T(mc);
  return mc.base().parity() == -1 ? std::max(0, t) : std::max(0, t - 1);
}

UnitValue eval_f_oracle(const ModifiedCharacter& mc, std::uint64_t n) {
  UnitValue acc = UnitValue::one();
  for (auto [p, e] : arith::factorize(n)) acc *= mc.at_prime(p).pow(e);
  return acc;
}

}  // namespace modchar
