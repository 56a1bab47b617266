#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace normlab {

using Int = mpz_class;

/// Exact rational number, always in lowest terms with positive denominator.
///
/// Thin value wrapper around GMP's mpq_class that enforces canonical form on
/// every construction path and turns division by zero into std::domain_error
/// instead of undefined behaviour.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(const Int& n) : v_(n) {}
  Rational(long num, long den) : Rational(Int(num), Int(den)) {}
  Rational(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  static Rational from_mpq(const mpq_class& q) {
    Rational r;
    r.v_ = q;
    r.v_.canonicalize();
    return r;
  }

  Int numerator() const { return v_.get_num(); }
  Int denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational operator-() const { return from_canonical(-v_); }
  Rational operator+(const Rational& o) const { return from_canonical(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return from_canonical(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return from_canonical(v_ * o.v_); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("rational: division by zero");
    return from_canonical(v_ / o.v_);
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Int floor() const {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }
  Int ceil() const {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  /// Fractional part in [0, 1): x - floor(x).
  Rational frac() const { return *this - Rational(floor()); }

  Rational reciprocal() const {
    if (is_zero()) throw std::domain_error("rational: reciprocal of zero");
    return Rational(denominator(), numerator());
  }

  /// Integer power; exponent may be negative when the value is nonzero.
  Rational pow(long e) const {
    if (e < 0) return reciprocal().pow(-e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    Rational r;
    r.v_ = mpq_class(num, den);  // already canonical: gcd(a,b)=1 => gcd(a^e,b^e)=1
    return r;
  }

  double to_double() const { return v_.get_d(); }

  std::string str() const {
    if (is_integer()) return numerator().get_str();
    return numerator().get_str() + "/" + denominator().get_str();
  }

 private:
  static Rational from_canonical(const mpq_class& q) {
    Rational r;
    r.v_ = q;  // mpq arithmetic preserves canonical form
    return r;
  }

  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

/// 2^e as a rational, e may be negative.
inline Rational pow2(long e) {
  Int one = 1;
  Int p;
  mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(p) : Rational(Int(1), p);
}

/// base^e for integer base >= 1 and e >= 0, as an exact integer.
inline Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace normlab
