#pragma once

#include <vector>

#include "normlab/bounded_real.hpp"
#include "normlab/rational.hpp"

namespace normlab {

/// Exact orbit of the b-transformation T_b(x) = b*x mod 1.
///
/// remainders[n] is x_{n+1} and digits[n] is d_{n+1} for n = 0..steps-1, so
/// the recurrence reads remainders[n] = b*remainders[n-1] - digits[n] with
/// remainders[-1] meaning the initial point.
struct RadixOrbit {
  long base = 2;
  Rational initial;
  std::vector<Rational> remainders;
  std::vector<long> digits;
};

RadixOrbit b_orbit(const Rational& x0, long base, long steps);

/// Preperiod and minimal period of the (eventually periodic) rational orbit.
struct PeriodReport {
  long preperiod_length = 0;
  long period_length = 1;
  std::vector<Rational> cycle;
};

PeriodReport detect_period(const Rational& x0, long base);

/// Base-b digits of the fractional part of an enclosed real.
///
/// A digit is confident when the whole enclosure lies inside a single
/// half-open digit cell at that depth; an enclosure straddling a cell
/// boundary makes that digit and all deeper ones indeterminate.
struct DigitReading {
  std::vector<long> digits;     // read at the midpoint
  std::vector<bool> confident;  // per digit
};

DigitReading digits_of_real(const BoundedReal& theta, long base, long count);

/// Distance on R/Z: min(|u-v|, 1-|u-v|) for u, v in [0,1).
Rational toroidal_distance(const Rational& u, const Rational& v);

}  // namespace normlab
