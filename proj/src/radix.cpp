#include "normlab/radix.hpp"

#include <map>
#include <stdexcept>

namespace normlab {

namespace {

void check_domain(const Rational& x0, long base) {
  if (base < 2) throw std::invalid_argument("invalid base");
  if (x0.sign() < 0 || x0 >= Rational(1))
    throw std::invalid_argument("initial point must lie in [0,1)");
}

}  // namespace

RadixOrbit b_orbit(const Rational& x0, long base, long steps) {
  check_domain(x0, base);
  if (steps < 0) throw std::invalid_argument("negative step count");
  RadixOrbit orbit;
  orbit.base = base;
  orbit.initial = x0;
  orbit.remainders.reserve(steps);
  orbit.digits.reserve(steps);
  Rational x = x0;
  Rational b(base);
  for (long n = 0; n < steps; ++n) {
    Rational scaled = x * b;
    Int digit = scaled.floor();
    x = scaled - Rational(digit);
    orbit.digits.push_back(digit.get_si());
    orbit.remainders.push_back(x);
  }
  return orbit;
}

PeriodReport detect_period(const Rational& x0, long base) {
  check_domain(x0, base);
  // a rational with denominator D has at most D distinct remainders, so the
  // first repeated state closes the cycle
  std::map<Rational, long> seen;
  std::vector<Rational> states{x0};
  seen[x0] = 0;
  Rational x = x0;
  Rational b(base);
  while (true) {
    Rational scaled = x * b;
    x = scaled - Rational(scaled.floor());
    auto it = seen.find(x);
    if (it != seen.end()) {
      PeriodReport rep;
      rep.preperiod_length = it->second;
      rep.period_length = static_cast<long>(states.size()) - it->second;
      rep.cycle.assign(states.begin() + it->second, states.end());
      return rep;
    }
    seen[x] = static_cast<long>(states.size());
    states.push_back(x);
  }
}

DigitReading digits_of_real(const BoundedReal& theta, long base, long count) {
  if (base < 2) throw std::invalid_argument("invalid base");
  if (count < 1) throw std::invalid_argument("digit count must be >= 1");
  // Work on the fractional part; the three streams (lo, mid, hi) are long
  // division on exact rationals.  Digits come from the midpoint; digit j is
  // confident iff floor(b^j lo) == floor(b^j hi), i.e. lo and hi still agree
  // through digit j.  Cell boundaries at depth j are nested in those at
  // depth j+1, so once indeterminate, always indeterminate.
  BoundedReal frac = theta.reduced_mod1();
  Rational lo = frac.lower(), mi = frac.mid(), hi = frac.upper();
  Rational b(base);
  DigitReading out;
  out.digits.reserve(count);
  out.confident.reserve(count);
  bool determined = true;
  for (long j = 0; j < count; ++j) {
    lo = lo * b;
    mi = mi * b;
    hi = hi * b;
    Int flo = lo.floor(), fmi = mi.floor(), fhi = hi.floor();
    if (determined && flo != fhi) {
      determined = false;
      if (j == 0) throw std::domain_error("insufficient precision");
    }
    out.digits.push_back(fmi.get_si());
    out.confident.push_back(determined);
    lo = lo - Rational(flo);
    mi = mi - Rational(fmi);
    hi = hi - Rational(fhi);
  }
  return out;
}

Rational toroidal_distance(const Rational& u, const Rational& v) {
  Rational d = (u - v).abs().frac();
  Rational other = Rational(1) - d;
  return d <= other ? d : other;
}

}  // namespace normlab
