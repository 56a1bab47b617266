#pragma once

#include <vector>

#include "normlab/bounded_real.hpp"
#include "normlab/rational.hpp"

namespace normlab {

/// base^exponent mod modulus, in [0, modulus).  O(log exponent) multiplications.
Int mod_pow(const Int& base, const Int& exponent, const Int& modulus);

/// Least common multiple of the absolute values; all inputs must be nonzero.
Int lcm_int(const std::vector<Int>& values);

/// Enclosure of pi with radius <= 2^-precision_bits.
///
/// Produced by the built-in base-16 digit-extraction series preset, so the
/// constant comes out of the same machinery as every other evaluated number.
BoundedReal const_pi(long precision_bits);

/// Enclosure of e^x with radius <= 2^-precision_bits.
BoundedReal exp_real(const Rational& x, long precision_bits);
BoundedReal exp_real(const BoundedReal& x, long precision_bits);

/// Enclosure of the natural log of a positive rational.
BoundedReal log_real(const Rational& x, long precision_bits);
BoundedReal log_real(const BoundedReal& x, long precision_bits);

/// Enclosure of log of an exact positive integer (used for lcm growth data).
BoundedReal log_of_int(const Int& n, long precision_bits);

}  // namespace normlab
