#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace modchar {

/// An exact value in {0} ∪ μ_∞: either zero or e^{2πi·index/order} with the
/// fraction index/order in lowest terms and 0 <= index < order.
class UnitValue {
 public:
  /// Defaults to 1.
  constexpr UnitValue() = default;

  static UnitValue zero() {
    UnitValue v;
    v.zero_ = true;
    v.order_ = 1;
    v.index_ = 0;
    return v;
  }
  static UnitValue one() { return UnitValue(); }
  static UnitValue minus_one() { return root(1, 2); }

  /// e^{2πi a/m}; a may be any integer, m >= 1.
  static UnitValue root(std::int64_t a, std::uint64_t m);

  bool is_zero() const noexcept { return zero_; }
  bool is_one() const noexcept { return !zero_ && index_ == 0; }
  /// True for 0, 1 and -1.
  bool is_real() const noexcept { return zero_ || order_ <= 2; }
  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t index() const noexcept { return index_; }

  UnitValue operator*(const UnitValue& rhs) const;
  UnitValue& operator*=(const UnitValue& rhs) { return *this = *this * rhs; }
  UnitValue pow(std::uint64_t e) const;
  UnitValue conj() const;

  /// Exact for orders 1, 2 and 4; otherwise cos/sin of the reduced angle.
  std::complex<double> to_complex() const;
  /// Real value for a real-valued UnitValue (0, 1 or -1).
  int to_int() const;

  /// "0", "1", "-1" or "e(a/m)".
  std::string to_string() const;

  friend bool operator==(const UnitValue& a, const UnitValue& b) noexcept {
    return a.zero_ == b.zero_ && a.order_ == b.order_ && a.index_ == b.index_;
  }

 private:
  bool zero_ = false;
  std::uint64_t order_ = 1;
  std::uint64_t index_ = 0;
};

}  // namespace modchar
