#pragma once

#include <vector>

#include "normlab/bbp.hpp"
#include "normlab/bounded_real.hpp"
#include "normlab/rational.hpp"

namespace normlab {

/// Exact orbit of the perturbed b-transformation
///   y_{k} = b*y_{k-1} + e_k  (mod 1),
/// driven by e_k = drive_epsilon(spec, k).  remainders[k-1] = y_k and
/// digits[k-1] = floor(b*y_{k-1} + e_k); early digits may be any integer,
/// but lie in {-1, 0, ..., b} once |e_k| < 1.
struct PerturbedOrbit {
  long base = 2;
  Rational y0;
  std::vector<Rational> remainders;
  std::vector<Int> digits;
};

PerturbedOrbit perturbed_orbit(const BbpSpec& spec, const Rational& y0, long steps);

/// Enclosure of the tail t_n = sum_{j>=1} e_{n+j} base^-j.
struct TailBound {
  long index = 0;
  BoundedReal enclosure;
};

TailBound tail(const BbpSpec& spec, long n, long precision_bits);

/// Check that the independently computed base-b remainders of theta match the
/// perturbed remainders plus the tail, on the torus, at every step.
struct CorrelationReport {
  long checked_range = 0;
  BoundedReal max_toroidal_defect;
  std::vector<Rational> tail_magnitudes;  // upper bounds on |t_n|
  bool pass = false;
  /// Fraction of checked steps whose b-expansion digit equals the perturbed
  /// digit.  Informational only; no limit statement is asserted.
  double digit_agreement_rate = 0.0;
};

CorrelationReport verify_correlation(const BbpSpec& spec, long steps,
                                     long precision_bits);

enum class DichotomyClass { finite_limit_points, apparently_dense, inconclusive };

struct OrbitCluster {
  Rational center;
  long count = 0;
  Rational diameter;
};

/// Empirical probe of the finite-limit-points vs equidistribution dichotomy
/// over the last half of a finite orbit.  "apparently-dense" is an empirical
/// label: a finite run cannot certify density.
struct DichotomyReport {
  DichotomyClass verdict = DichotomyClass::inconclusive;
  std::vector<OrbitCluster> clusters;
  Rational max_gap;           // largest cyclic gap between late points
  Rational early_deviation;   // max distance to nearest center, first window
  Rational late_deviation;    // same, second window
  long steps = 0;
};

DichotomyReport dichotomy_probe(const BbpSpec& spec, long steps,
                                const Rational& cluster_radius = Rational(1, 64));

const char* to_string(DichotomyClass c);

}  // namespace normlab
