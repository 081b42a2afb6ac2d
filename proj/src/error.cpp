#include "modchar/error.hpp"

namespace modchar {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidModulus: return "invalid-modulus";
    case ErrorCode::InvalidCharacter: return "invalid-character";
    case ErrorCode::Primitivity: return "primitivity";
    case ErrorCode::InvalidPrime: return "invalid-prime";
    case ErrorCode::InvalidModification: return "invalid-modification";
    case ErrorCode::BlockSize: return "block-size";
    case ErrorCode::OrderTooLarge: return "order-too-large";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Pole: return "pole";
    case ErrorCode::Precision: return "precision";
    case ErrorCode::WrongParity: return "wrong-parity";
    case ErrorCode::Fit: return "fit";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

}  // namespace modchar
