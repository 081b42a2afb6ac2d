#pragma once

// Dirichlet characters mod q with exact root-of-unity values.
//
// (Z/qZ)* is decomposed by CRT into cyclic components: -1 and 5 for 2^e
// (e >= 3), -1 for 4, and a primitive root for each odd prime power. The odd
// generator is the least g that is primitive mod p^2, which is the generator
// used by Conrey labels, so a character with exponent vector dlog(m) is
// exactly the Conrey character q.m.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "modchar/unit_value.hpp"

namespace modchar {

struct GroupComponent {
  std::uint64_t prime = 0;        // p
  std::uint64_t prime_power = 0;  // local modulus p^e
  std::uint64_t generator = 0;    // generator mod p^e
  std::uint64_t lifted = 0;       // generator lifted by CRT to mod q (1 at the other prime powers)
  std::uint64_t order = 0;        // cyclic order of the generator
  std::vector<std::int32_t> dlog; // discrete log of n mod p^e, -1 for non-units
};

class CharacterGroup {
 public:
  explicit CharacterGroup(std::uint64_t modulus);

  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t phi() const noexcept { return phi_; }
  /// Exponent of the group (lcm of component orders).
  std::uint64_t exponent() const noexcept { return exponent_; }
  const std::vector<GroupComponent>& components() const noexcept { return components_; }

  /// Discrete logs of a unit n in the component basis. Throws for non-units.
  std::vector<std::uint64_t> dlog(std::uint64_t n) const;

 private:
  std::uint64_t modulus_;
  std::uint64_t phi_;
  std::uint64_t exponent_;
  std::vector<GroupComponent> components_;
};

class Character {
 public:
  /// Character sending the j-th generator to e^{2πi exps[j]/order_j}.
  Character(std::shared_ptr<const CharacterGroup> group, std::vector<std::uint64_t> exponents);

  std::uint64_t modulus() const noexcept { return group_->modulus(); }
  const CharacterGroup& group() const noexcept { return *group_; }
  std::shared_ptr<const CharacterGroup> group_ptr() const noexcept { return group_; }
  const std::vector<std::uint64_t>& exponents() const noexcept { return exponents_; }

  UnitValue value(std::uint64_t n) const;
  /// χ(n) as an exponent in units of 1/group().exponent(); -1 when χ(n) = 0.
  std::int64_t value_exponent(std::uint64_t n) const;
  /// value(0..q-1).
  std::vector<UnitValue> value_table() const;

  bool is_principal() const;
  bool is_real() const;
  /// Order of χ in the character group.
  std::uint64_t order() const;
  /// χ(-1) as ±1.
  int parity() const;
  /// 0 for even, 1 for odd.
  int kappa() const { return parity() == 1 ? 0 : 1; }
  std::uint64_t conductor() const;
  bool is_primitive() const { return conductor() == modulus(); }
  Character conj() const;
  /// Conrey index m with χ = χ_q(m, ·).
  std::uint64_t conrey_index() const;
  std::string label() const;

  friend bool operator==(const Character& a, const Character& b) {
    return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
  }

 private:
  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::uint64_t> exponents_;
};

/// All φ(q) characters mod q, principal first.
std::vector<Character> enumerate_characters(std::uint64_t q);

Character principal_character(std::uint64_t q);
Character character_from_exponents(std::uint64_t q, const std::vector<std::uint64_t>& exponents);
/// Conrey label "q.m" with gcd(m, q) = 1.
Character character_from_label(const std::string& label);
Character character_from_conrey(std::uint64_t q, std::uint64_t m);

UnitValue eval_char(const Character& chi, std::uint64_t n);

}  // namespace modchar
