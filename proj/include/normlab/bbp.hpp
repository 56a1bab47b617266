#pragma once

#include <string>
#include <vector>

#include "normlab/bounded_real.hpp"
#include "normlab/polynomial.hpp"
#include "normlab/radix.hpp"
#include "normlab/rational.hpp"

namespace normlab {

/// Ratio of two integer polynomials; the term generator p(n)/q(n).
struct RationalFunction {
  IntPoly p;
  IntPoly q;

  RationalFunction() : q(IntPoly::constant(1)) {}
  RationalFunction(IntPoly num, IntPoly den);
  static RationalFunction from_longs(const std::vector<long>& p,
                                     const std::vector<long>& q);

  Rational eval(long n) const;
  /// deg q > deg p, i.e. p(n)/q(n) -> 0.
  bool vanishing() const { return q.degree() > p.degree(); }
};

/// theta = sum_{n >= start_index} p(n)/q(n) * base^-n.
struct BbpSpec {
  long base = 2;
  RationalFunction r;
  int start_index = 1;
};

/// Structural checks: base, polynomial coprimality, and absence of integer
/// roots of q at indices the series actually visits.  Empty result = valid.
std::vector<std::string> validate_spec(const BbpSpec& spec);
/// Throws std::invalid_argument listing every validation error.
void require_valid(const BbpSpec& spec);

/// Exact term p(n)/q(n) in lowest terms, n >= start_index.
Rational epsilon(const BbpSpec& spec, long n);

/// The driving term of step k >= 1 of the perturbed dynamics, normalized so
/// that theta = sum_k drive(k) base^-k regardless of start_index.
Rational drive_epsilon(const BbpSpec& spec, long k);
/// Rational function generating drive_epsilon (start-1 normal form).
RationalFunction drive_rf(const BbpSpec& spec);

/// Enclosure of sum_{j>=1} rf(N+j) * base^-j with radius <= 2^-precision_bits.
/// Requires q(n) != 0 for n > N; N may be -1.
BoundedReal geometric_tail(const RationalFunction& rf, long N, long base,
                           long precision_bits);

/// Enclosure of theta with radius <= 2^-precision_bits.
BoundedReal eval_theta(const BbpSpec& spec, long precision_bits);

/// Enclosure of sum_{n>=start_index} rf(n) * z^n for z = +1 or -1.
/// Requires deg q >= deg p + 2 (absolute convergence on the boundary).
BoundedReal eval_boundary(const RationalFunction& rf, int z, int start_index,
                          long precision_bits);

/// Digits of frac(base^position * theta) read from a spigot accumulator.
struct DigitExtraction {
  long position = 0;
  long base = 2;
  std::vector<long> digits;
  std::vector<bool> confident;
  Rational error_radius;
  /// Diagnostic: size in bits of the largest integer retained while summing;
  /// stays polylogarithmic in position.
  long peak_integer_bits = 0;
};

/// Spigot extraction: digits at `position` without computing earlier ones.
/// Terms with n <= position are reduced modulo q(n) by modular exponentiation
/// and only a fixed-width fractional accumulator is kept.
DigitExtraction extract_digits(const BbpSpec& spec, long position, long count,
                               long guard_bits = 64);

/// Built-in named specifications.
struct Preset {
  std::string name;
  BbpSpec spec;
  /// 0 for a radix series; +1 or -1 for a boundary series evaluated at z.
  int boundary_z = 0;
  std::string note;
};

const std::vector<Preset>& presets();
/// Lookup by name; throws std::invalid_argument for unknown names.
const Preset& preset(const std::string& name);
BbpSpec preset_spec(const std::string& name);

}  // namespace normlab
