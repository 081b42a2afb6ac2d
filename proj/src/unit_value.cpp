#include "modchar/unit_value.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "modchar/arith.hpp"
#include "modchar/error.hpp"

namespace modchar {

UnitValue UnitValue::root(std::int64_t a, std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidModification, "root of unity with order 0");
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t r = a % mm;
  if (r < 0) r += mm;
  const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(r), m);
  UnitValue v;
  v.order_ = m / g;
  v.index_ = static_cast<std::uint64_t>(r) / g;
  return v;
}

UnitValue UnitValue::operator*(const UnitValue& rhs) const {
  if (zero_ || rhs.zero_) return zero();
  const std::uint64_t m = arith::lcm(order_, rhs.order_);
  const std::uint64_t a = (index_ * (m / order_) + rhs.index_ * (m / rhs.order_)) % m;
  return root(static_cast<std::int64_t>(a), m);
}

UnitValue UnitValue::pow(std::uint64_t e) const {
  if (zero_) return e == 0 ? one() : zero();
  return root(static_cast<std::int64_t>(arith::mulmod(index_, e, order_)), order_);
}

UnitValue UnitValue::conj() const {
  if (zero_) return zero();
  return root(-static_cast<std::int64_t>(index_), order_);
}

std::complex<double> UnitValue::to_complex() const {
  if (zero_) return {0.0, 0.0};
  switch (order_) {
    case 1:
      return {1.0, 0.0};
    case 2:
      return {-1.0, 0.0};
    case 4:
      return index_ == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
    default:
      break;
  }
  // Reduce to an angle in (-π, π] for accuracy.
  auto a = static_cast<double>(index_);
  const auto m = static_cast<double>(order_);
  if (2 * index_ > order_) a -= m;
  const double theta = 2.0 * std::numbers::pi * a / m;
  return {std::cos(theta), std::sin(theta)};
}

int UnitValue::to_int() const {
  if (zero_) return 0;
  if (order_ == 1) return 1;
  if (order_ == 2) return -1;
  throw Error(ErrorCode::Domain, "to_int on a non-real root of unity " + to_string());
}

std::string UnitValue::to_string() const {
  if (zero_) return "0";
  if (order_ == 1) return "1";
  if (order_ == 2) return "-1";
  return "e(" + std::to_string(index_) + "/" + std::to_string(order_) + ")";
}

}  // namespace modchar
