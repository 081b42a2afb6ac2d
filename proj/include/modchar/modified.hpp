#pragma once

// Completely multiplicative modifications f of a primitive character χ:
// f(p) = χ(p) off a finite prime set S, |f(p)| = 1 on S.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "modchar/characters.hpp"
#include "modchar/unit_value.hpp"

namespace modchar {

struct Modification {
  std::uint64_t prime = 0;
  UnitValue value;

  friend bool operator==(const Modification&, const Modification&) = default;
};

struct BuildOptions {
  /// Accept a non-primitive base; every theoretical output is then marked untrusted.
  bool allow_imprimitive = false;
};

class ModifiedCharacter {
 public:
  const Character& base() const noexcept { return base_; }
  /// The set S with values, sorted by prime.
  const std::vector<Modification>& modifications() const noexcept { return mods_; }
  std::size_t size_S() const noexcept { return mods_.size(); }
  int T() const noexcept { return T_; }
  int N() const noexcept { return N_; }
  /// False when the base was accepted through allow_imprimitive.
  bool trusted() const noexcept { return trusted_; }
  /// Dropped entries (f(p) = χ(p)) and similar notes collected at construction.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// f(p) for a prime p.
  UnitValue at_prime(std::uint64_t p) const;
  /// Largest prime in S, 0 if empty.
  std::uint64_t max_prime() const noexcept { return mods_.empty() ? 0 : mods_.back().prime; }
  /// Stable text description used for config digests.
  std::string canonical_string() const;
  /// FNV-1a of canonical_string(), hex.
  std::string digest() const;

 private:
  friend ModifiedCharacter build_modified(const Character&, std::vector<Modification>, const BuildOptions&);
  explicit ModifiedCharacter(Character base) : base_(std::move(base)) {}

  Character base_;
  std::vector<Modification> mods_;
  int T_ = 0;
  int N_ = 0;
  bool trusted_ = true;
  std::vector<std::string> warnings_;
};

ModifiedCharacter build_modified(const Character& base, std::vector<Modification> mods,
                                 const BuildOptions& options = {});

/// #{p ∈ S : f(p) = 1} − #{p ∈ S : χ(p) = 1}.
int compute_T(const ModifiedCharacter& mc);
/// max{0, T} for odd χ, max{0, T − 1} for even χ.
int compute_N(const ModifiedCharacter& mc);

/// Independent trial-factorization evaluation of f(n), n >= 1.
UnitValue eval_f_oracle(const ModifiedCharacter& mc, std::uint64_t n);

}  // namespace modchar
