#pragma once

#include <string>
#include <utility>
#include <vector>

#include "normlab/bbp.hpp"
#include "normlab/bounded_real.hpp"
#include "normlab/polynomial.hpp"
#include "normlab/rational.hpp"

namespace normlab {

/// q(x) = constant * prod (l_j x + m_j)^multiplicity * nonlinear_remainder,
/// with each (l_j, m_j) coprime, l_j > 0, and the remainder free of rational
/// roots (degree 0 or >= 2).
struct LinearFactor {
  Int l;
  Int m;
  int multiplicity = 1;
};

struct Factorization {
  Rational constant;
  std::vector<LinearFactor> linear_factors;
  IntPoly nonlinear_remainder;  // normalized with positive leading coefficient
};

Factorization factor_denominator(const IntPoly& q);

/// Power-series classification: sum p(n)/q(n) z^n has geometric denominator
/// growth iff q splits into linear factors over Q.  The lcm profile of the
/// reduced coefficient denominators is reported as evidence.
struct ClassificationReport {
  bool is_g_series = false;
  std::string reason;
  std::vector<std::pair<long, double>> lcm_profile;  // (n, log g_n)
  double linear_slope = 0.0;       // log g_N / N
  double superlinear_ratio = 0.0;  // log g_N / (N log N)
};

ClassificationReport classify_g(const RationalFunction& rf, long profile_n = 500);

/// Exact lcm(1..m) together with an enclosure of its natural log.
std::pair<Int, BoundedReal> lcm_growth_integers(long m);

/// Differential operator D = d^(l+1)/dz^(l+1) (1-z)^(l+1) q(z d/dz), stored
/// normal-ordered as sum_i c_i(z) d^i/dz^i; annihilates the full power series
/// sum_{n>=0} p(n)/q(n) z^n.
struct AnnihilatorOperator {
  std::vector<IntPoly> coeff_by_order;  // c_i, index = derivative order
  std::vector<Int> binomial_coeffs;     // a'_j with p(x) = sum a'_j C(x, j)
  int p_degree = 0;
  int q_degree = 0;
};

AnnihilatorOperator build_annihilator(const RationalFunction& rf);

/// Coefficients of D applied to the truncated series sum_{n=start}^{order}
/// rf(n) z^n.  Entries with index in [start, order - (deg p + 1) - deg q]
/// are exact and must vanish.
std::vector<Rational> apply_annihilator(const AnnihilatorOperator& op,
                                        const RationalFunction& rf,
                                        int start_index, int truncation_order);

/// Exact partial fraction decomposition over Q; requires a split denominator.
struct PfTerm {
  Rational coefficient;
  Rational root;
  int multiplicity = 1;  // coefficient / (x - root)^multiplicity
};

struct PartialFractions {
  QPoly poly_part;
  std::vector<PfTerm> terms;
};

PartialFractions partial_fractions(const RationalFunction& rf);

/// One logarithmic term coeff * log(1 - zeta_M^k * z), with the coefficient
/// given exactly by rational coordinates over the power basis of Q(zeta_M).
struct LogTerm {
  std::vector<Rational> coeff;
  long k = 0;
  long M = 1;
  Rational z;
};

struct PolylogTerm {
  Rational coefficient;
  int order = 2;
  Rational argument;
};

/// theta = rational_part + sum log_terms + sum polylog_terms.
struct ClosedForm {
  Rational rational_part;
  std::vector<LogTerm> log_terms;
  std::vector<PolylogTerm> polylog_terms;
  BoundedReal numeric_value;
  bool numeric_supported = true;
  long cyclotomic_order = 1;
};

ClosedForm closed_form_eval(const BbpSpec& spec, long precision_bits = 128);

/// Enclosure of Li_k(z) = sum z^n/n^k for |z| < 1 (k = 1 is -log(1-z)).
BoundedReal polylog(int order, const Rational& z, long precision_bits);

/// Decide rationality through the closed form: exact vanishing of every log
/// coefficient proves rationality; a numerically nonzero log combination is
/// reported as transcendental_numeric (a certificate level, not a proof).
struct RationalityResult {
  enum class Kind { rational, transcendental_numeric, undecided };
  Kind kind = Kind::undecided;
  Rational value;            // set when kind == rational
  BoundedReal log_combination;  // set when evaluated numerically
};

RationalityResult rationality_probe(const BbpSpec& spec, long precision_bits);

const char* to_string(RationalityResult::Kind k);

}  // namespace normlab
