#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace modchar {

enum class ErrorCode {
  InvalidModulus,
  InvalidCharacter,
  Primitivity,
  InvalidPrime,
  InvalidModification,
  BlockSize,
  OrderTooLarge,
  Domain,
  Pole,
  Precision,
  WrongParity,
  Fit,
  Config,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when s lands exactly on a pole 2*pi*i*(a/b + n)/log p of an Euler factor.
class PoleError : public Error {
 public:
  PoleError(std::uint64_t prime, std::int64_t n, const std::string& what)
      : Error(ErrorCode::Pole, what), prime_(prime), n_(n) {}
  std::uint64_t prime() const noexcept { return prime_; }
  std::int64_t n() const noexcept { return n_; }

 private:
  std::uint64_t prime_;
  std::int64_t n_;
};

}  // namespace modchar
