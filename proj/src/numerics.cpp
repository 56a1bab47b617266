#include "normlab/numerics.hpp"

#include <stdexcept>

#include "normlab/bbp.hpp"

namespace normlab {

Int mod_pow(const Int& base, const Int& exponent, const Int& modulus) {
  if (modulus < 1) throw std::domain_error("mod_pow: modulus must be >= 1");
  if (exponent < 0) throw std::domain_error("mod_pow: negative exponent");
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Int lcm_int(const std::vector<Int>& values) {
  if (values.empty()) throw std::invalid_argument("empty lcm");
  Int acc = 1;
  for (const Int& v : values) {
    if (v == 0) throw std::invalid_argument("lcm of zero");
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_mpz_t());
  }
  return acc;
}

BoundedReal const_pi(long precision_bits) {
  if (precision_bits < 8) precision_bits = 8;
  return eval_theta(preset_spec("pi-base16"), precision_bits);
}

namespace {

// e^x for |x| <= 1/2 by Taylor series.  Tail after K terms is bounded by
// |x|^K/K! * 1/(1 - |x|/(K+1)) <= 2 |x|^K / K! once K >= 1.
BoundedReal exp_small(const Rational& x, long bits) {
  Rational term(1);
  Rational sum(1);
  Rational ax = x.abs();
  Rational limit = pow2(-bits - 2);
  long k = 1;
  Int fact = 1;
  Rational xpow(1);
  while (true) {
    xpow = xpow * x;
    fact *= k;
    term = xpow / Rational(fact);
    sum += term;
    Rational tail_bound = term.abs() * ax / Rational(k + 1) * Rational(2);
    if (tail_bound < limit) {
      return BoundedReal(sum, tail_bound).compressed(bits + 16);
    }
    ++k;
  }
}

}  // namespace

BoundedReal exp_real(const Rational& x, long precision_bits) {
  long bits = precision_bits < 8 ? 8 : precision_bits;
  // halve the argument until |x| <= 1/2, then square back up
  long s = 0;
  Rational y = x;
  Rational half(1, 2);
  while (y.abs() > half) {
    y = y * half;
    ++s;
  }
  // each squaring can roughly double the relative error; work with headroom
  BoundedReal e = exp_small(y, bits + 4 * s + 16);
  for (long i = 0; i < s; ++i) {
    e = (e * e).compressed(bits + 4 * (s - i) + 16);
  }
  return e.compressed(bits + 8);
}

BoundedReal exp_real(const BoundedReal& x, long precision_bits) {
  if (x.is_exact()) return exp_real(x.mid(), precision_bits);
  // exp is increasing: the image of [lo, hi] is [exp lo, exp hi]
  BoundedReal lo = exp_real(x.lower(), precision_bits + 2);
  BoundedReal hi = exp_real(x.upper(), precision_bits + 2);
  return BoundedReal::from_endpoints(lo.lower(), hi.upper());
}

namespace {

// atanh(u) = sum u^(2k+1)/(2k+1) for |u| < 1, with geometric tail bound
// |u|^(2K+1) / ((2K+1)(1 - u^2)).
BoundedReal atanh_series(const Rational& u, long bits) {
  Rational u2 = u * u;
  if (u2 >= Rational(1)) throw std::domain_error("atanh: |u| >= 1");
  Rational sum(0);
  Rational upow = u;
  Rational limit = pow2(-bits - 2);
  Rational inv_gap = Rational(1) / (Rational(1) - u2);
  long k = 0;
  while (true) {
    sum += upow / Rational(2 * k + 1);
    Rational tail = upow.abs() * u2 * inv_gap / Rational(2 * k + 3);
    if (tail < limit) return BoundedReal(sum, tail).compressed(bits + 16);
    upow = upow * u2;
    ++k;
  }
}

// log 2 = 2 atanh(1/3)
BoundedReal log2_enclosure(long bits) {
  return atanh_series(Rational(1, 3), bits + 2) * Rational(2);
}

}  // namespace

BoundedReal log_real(const Rational& x, long precision_bits) {
  if (x.sign() <= 0) throw std::domain_error("log: nonpositive argument");
  long bits = precision_bits < 8 ? 8 : precision_bits;
  // write x = m * 2^e with m in [1, 2)
  long e = static_cast<long>(mpz_sizeinbase(x.numerator().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.denominator().get_mpz_t(), 2));
  Rational m = x * pow2(-e);
  while (m < Rational(1)) {
    m = m * Rational(2);
    --e;
  }
  while (m >= Rational(2)) {
    m = m * Rational(1, 2);
    ++e;
  }
  // log x = e log 2 + 2 atanh((m-1)/(m+1)), with (m-1)/(m+1) in [0, 1/3]
  Rational u = (m - Rational(1)) / (m + Rational(1));
  BoundedReal r = atanh_series(u, bits + 8) * Rational(2);
  if (e != 0) r += log2_enclosure(bits + 8 + 64) * Rational(e);
  return r.compressed(bits + 8);
}

BoundedReal log_real(const BoundedReal& x, long precision_bits) {
  if (x.lower().sign() <= 0) throw std::domain_error("log: enclosure touches zero");
  if (x.is_exact()) return log_real(x.mid(), precision_bits);
  BoundedReal lo = log_real(x.lower(), precision_bits + 2);
  BoundedReal hi = log_real(x.upper(), precision_bits + 2);
  return BoundedReal::from_endpoints(lo.lower(), hi.upper());
}

BoundedReal log_of_int(const Int& n, long precision_bits) {
  if (n <= 0) throw std::domain_error("log: nonpositive integer");
  return log_real(Rational(n), precision_bits);
}

}  // namespace normlab
