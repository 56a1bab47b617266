#pragma once

#include <algorithm>
#include <stdexcept>

#include "normlab/rational.hpp"

namespace normlab {

/// Midpoint-radius enclosure of a real number with exact rational endpoints.
///
/// An enclosure represents the closed interval [mid - rad, mid + rad].
/// Every operation returns an enclosure containing the exact image interval,
/// so containment claims are exact and testable; there is no directed
/// floating-point rounding anywhere.
class BoundedReal {
 public:
  BoundedReal() : mid_(0), rad_(0) {}
  explicit BoundedReal(const Rational& exact) : mid_(exact), rad_(0) {}
  BoundedReal(const Rational& mid, const Rational& rad) : mid_(mid), rad_(rad) {
    if (rad.sign() < 0) throw std::domain_error("enclosure: negative radius");
  }

  static BoundedReal from_endpoints(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw std::domain_error("enclosure: hi < lo");
    Rational half(1, 2);
    return BoundedReal((lo + hi) * half, (hi - lo) * half);
  }

  const Rational& mid() const { return mid_; }
  const Rational& rad() const { return rad_; }
  Rational lower() const { return mid_ - rad_; }
  Rational upper() const { return mid_ + rad_; }
  bool is_exact() const { return rad_.is_zero(); }

  /// Upper bound on |x| over the enclosure.
  Rational abs_upper() const { return mid_.abs() + rad_; }

  BoundedReal operator-() const { return BoundedReal(-mid_, rad_); }
  BoundedReal operator+(const BoundedReal& o) const {
    return BoundedReal(mid_ + o.mid_, rad_ + o.rad_);
  }
  BoundedReal operator-(const BoundedReal& o) const {
    return BoundedReal(mid_ - o.mid_, rad_ + o.rad_);
  }
  /// Exact interval hull of the product.
  BoundedReal operator*(const BoundedReal& o) const {
    Rational a = lower(), b = upper(), c = o.lower(), d = o.upper();
    Rational p1 = a * c, p2 = a * d, p3 = b * c, p4 = b * d;
    Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return from_endpoints(lo, hi);
  }
  BoundedReal& operator+=(const BoundedReal& o) { return *this = *this + o; }
  BoundedReal& operator-=(const BoundedReal& o) { return *this = *this - o; }

  BoundedReal operator*(const Rational& s) const {
    return BoundedReal(mid_ * s, rad_ * s.abs());
  }
  BoundedReal operator/(const Rational& s) const {
    return BoundedReal(mid_ / s, rad_ / s.abs());
  }
  BoundedReal operator+(const Rational& s) const { return BoundedReal(mid_ + s, rad_); }
  BoundedReal operator-(const Rational& s) const { return BoundedReal(mid_ - s, rad_); }

  bool contains(const Rational& x) const { return lower() <= x && x <= upper(); }
  bool contains(const BoundedReal& o) const {
    return lower() <= o.lower() && o.upper() <= upper();
  }
  bool intersects(const BoundedReal& o) const {
    return !(upper() < o.lower() || o.upper() < lower());
  }

  /// Widen the radius by a nonnegative amount.
  BoundedReal inflated(const Rational& extra) const {
    return BoundedReal(mid_, rad_ + extra);
  }

  /// Shift by an integer so the midpoint lands in [0, 1).  Sound modulo 1.
  BoundedReal reduced_mod1() const { return BoundedReal(mid_.frac(), rad_); }

  /// Outward rounding to dyadic midpoint/radius with denominator 2^bits.
  /// Keeps denominators from blowing up in long accumulations; the result
  /// contains the original enclosure.
  BoundedReal compressed(long bits) const {
    Rational scale = pow2(bits);
    // round mid to nearest multiple of 2^-bits
    Rational scaled = mid_ * scale;
    Int half_up = (scaled + Rational(1, 2)).floor();
    Rational new_mid = Rational(half_up) / scale;
    Rational err = (new_mid - mid_).abs();
    // round radius up to a multiple of 2^-bits
    Rational r = (rad_ + err) * scale;
    Rational new_rad = Rational(r.ceil()) / scale;
    return BoundedReal(new_mid, new_rad);
  }

 private:
  Rational mid_;
  Rational rad_;
};

inline BoundedReal operator*(const Rational& s, const BoundedReal& e) { return e * s; }

}  // namespace normlab
