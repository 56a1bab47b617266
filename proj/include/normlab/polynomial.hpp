#pragma once

#include <utility>
#include <vector>

#include "normlab/rational.hpp"

namespace normlab {

/// Polynomial with integer coefficients, ascending degree, no trailing zeros.
/// The zero polynomial has an empty coefficient vector and degree -1.
struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
  static IntPoly constant(const Int& k) { return IntPoly(std::vector<Int>{k}); }
  static IntPoly from_longs(const std::vector<long>& v);

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Int leading() const { return c.empty() ? Int(0) : c.back(); }
  Int coeff(int i) const {
    return (i < 0 || i >= static_cast<int>(c.size())) ? Int(0) : c[i];
  }

  Int eval(const Int& x) const;          // Horner
  Rational eval(const Rational& x) const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Int& k) const;
  IntPoly operator-() const;
  bool operator==(const IntPoly& o) const { return c == o.c; }

  IntPoly derivative() const;
  /// Composition p(a*x + b) with integer a, b.
  IntPoly compose_linear(const Int& a, const Int& b) const;

  /// gcd of |coefficients| (0 for the zero polynomial).
  Int content() const;
  /// Sum of |coefficients|.
  Int abs_coeff_sum() const;
};

/// Polynomial with rational coefficients, same conventions as IntPoly.
struct QPoly {
  std::vector<Rational> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }
  static QPoly from_int(const IntPoly& p);
  static QPoly constant(const Rational& k) { return QPoly(std::vector<Rational>{k}); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Rational coeff(int i) const {
    return (i < 0 || i >= static_cast<int>(c.size())) ? Rational(0) : c[i];
  }

  Rational eval(const Rational& x) const;

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const Rational& k) const;
  bool operator==(const QPoly& o) const;

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
  /// Composition p(x + s).
  QPoly shift(const Rational& s) const;
  /// Clear denominators: primitive integer polynomial with the same roots.
  IntPoly primitive() const;
};

/// Monic gcd over Q; gcd(0, 0) = 0.
QPoly poly_gcd(const QPoly& a, const QPoly& b);

/// All rational roots of a nonzero integer polynomial, with multiplicities.
/// Complete: uses the rational root theorem over a full factorization of the
/// constant and leading coefficients.
std::vector<std::pair<Rational, int>> rational_roots(const IntPoly& p);

/// All positive divisors of |n|, n != 0.
std::vector<Int> divisors(const Int& n);

/// Prime factorization of n >= 2 (Pollard rho + Miller-Rabin).
std::vector<std::pair<Int, int>> factorize(const Int& n);

/// M-th cyclotomic polynomial.
IntPoly cyclotomic(long M);

/// Stirling numbers of the second kind S(n, k) for 0 <= k <= n.
std::vector<std::vector<Int>> stirling2_table(int n);

/// Coefficients a'_j with p(x) = sum_j a'_j * binomial(x, j)
/// (forward differences of p at 0).
std::vector<Int> binomial_basis(const IntPoly& p);

}  // namespace normlab
