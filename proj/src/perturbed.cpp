#include "normlab/perturbed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "normlab/radix.hpp"
#include "normlab/stats.hpp"

namespace normlab {

PerturbedOrbit perturbed_orbit(const BbpSpec& spec, const Rational& y0, long steps) {
  require_valid(spec);
  if (y0.sign() < 0 || y0 >= Rational(1))
    throw std::invalid_argument("initial point must lie in [0,1)");
  if (steps < 0) throw std::invalid_argument("negative step count");
  PerturbedOrbit orbit;
  orbit.base = spec.base;
  orbit.y0 = y0;
  orbit.remainders.reserve(steps);
  orbit.digits.reserve(steps);
  Rational y = y0;
  Rational b(spec.base);
  for (long k = 1; k <= steps; ++k) {
    Rational lifted = y * b + drive_epsilon(spec, k);
    Int digit = lifted.floor();
    y = lifted - Rational(digit);
    orbit.digits.push_back(digit);
    orbit.remainders.push_back(y);
  }
  return orbit;
}

TailBound tail(const BbpSpec& spec, long n, long precision_bits) {
  require_valid(spec);
  if (n < 0) throw std::invalid_argument("negative tail index");
  TailBound t;
  t.index = n;
  if (spec.r.p.is_zero()) {
    t.enclosure = BoundedReal(Rational(0));
    return t;
  }
  if (!spec.r.vanishing()) throw std::domain_error("perturbation does not vanish");
  t.enclosure = geometric_tail(drive_rf(spec), n, spec.base, precision_bits);
  return t;
}

CorrelationReport verify_correlation(const BbpSpec& spec, long steps,
                                     long precision_bits) {
  require_valid(spec);
  if (steps < 1) throw std::invalid_argument("step count must be >= 1");
  if (!spec.r.vanishing() && !spec.r.p.is_zero())
    throw std::domain_error("perturbation does not vanish");
  long log_b = static_cast<long>(std::ceil(std::log2(static_cast<double>(spec.base))));
  long theta_bits = steps * log_b + precision_bits + 64;
  if (theta_bits > (1L << 26))
    throw std::domain_error("insufficient precision for requested steps");

  BoundedReal theta = eval_theta(spec, theta_bits);
  PerturbedOrbit orbit = perturbed_orbit(spec, Rational(0), steps);

  CorrelationReport rep;
  rep.checked_range = steps;
  rep.pass = true;
  rep.tail_magnitudes.reserve(steps);

  Rational x_mid = theta.mid().frac();
  Rational x_rad = theta.rad();
  Rational b(spec.base);
  Rational defect_lo(0), defect_hi(0);
  long digit_hits = 0;
  for (long n = 1; n <= steps; ++n) {
    Rational lifted = x_mid * b;
    Int expansion_digit = lifted.floor();  // d_n read at the midpoint
    x_mid = lifted - Rational(expansion_digit);
    x_rad = x_rad * b;
    TailBound t = tail(spec, n, precision_bits + 8);
    rep.tail_magnitudes.push_back(t.enclosure.abs_upper());

    Rational y_plus_t = (orbit.remainders[n - 1] + t.enclosure.mid()).frac();
    Rational defect = toroidal_distance(x_mid, y_plus_t);
    Rational slack = x_rad + t.enclosure.rad();
    if (defect > slack) rep.pass = false;
    defect_lo = std::max(defect_lo, std::max(Rational(0), defect - slack));
    defect_hi = std::max(defect_hi, defect + slack);

    if (orbit.digits[n - 1] == expansion_digit) ++digit_hits;
  }
  rep.max_toroidal_defect = BoundedReal::from_endpoints(defect_lo, defect_hi);
  rep.digit_agreement_rate = static_cast<double>(digit_hits) / steps;
  return rep;
}

const char* to_string(DichotomyClass c) {
  switch (c) {
    case DichotomyClass::finite_limit_points: return "finite-limit-points";
    case DichotomyClass::apparently_dense: return "apparently-dense";
    case DichotomyClass::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DichotomyReport dichotomy_probe(const BbpSpec& spec, long steps,
                                const Rational& cluster_radius) {
  if (steps < 16) throw std::invalid_argument("too few steps");
  if (cluster_radius.sign() <= 0)
    throw std::invalid_argument("cluster radius must be positive");
  require_valid(spec);
  if (!spec.r.vanishing() && !spec.r.p.is_zero())
    throw std::domain_error("perturbation does not vanish");

  PerturbedOrbit orbit = perturbed_orbit(spec, Rational(0), steps);
  std::vector<Rational> late(orbit.remainders.begin() + steps / 2,
                             orbit.remainders.end());

  DichotomyReport rep;
  rep.steps = steps;
  auto clusters = cluster_limit_points(late, cluster_radius);
  rep.clusters.reserve(clusters.size());
  for (const auto& c : clusters) rep.clusters.push_back({c.center, c.count, c.diameter});

  // largest cyclic gap between sorted late points; a gap of at most
  // 2*radius everywhere means the points form a radius-net of the torus
  std::vector<Rational> sorted = late;
  std::sort(sorted.begin(), sorted.end());
  Rational max_gap(0);
  for (size_t i = 0; i + 1 < sorted.size(); ++i)
    max_gap = std::max(max_gap, sorted[i + 1] - sorted[i]);
  max_gap = std::max(max_gap, Rational(1) - sorted.back() + sorted.front());
  rep.max_gap = max_gap;

  constexpr long kClusterCap = 64;
  if (max_gap <= cluster_radius * Rational(2)) {
    rep.verdict = DichotomyClass::apparently_dense;
    return rep;
  }

  // deviation from the nearest cluster center over two consecutive windows;
  // shrinking deviation is the finite-limit-points signature
  auto deviation = [&](size_t from, size_t to) {
    Rational worst(0);
    for (size_t i = from; i < to; ++i) {
      Rational best(1);
      for (const auto& c : rep.clusters)
        best = std::min(best, toroidal_distance(late[i], c.center));
      worst = std::max(worst, best);
    }
    return worst;
  };
  size_t half = late.size() / 2;
  rep.early_deviation = deviation(0, half);
  rep.late_deviation = deviation(half, late.size());

  if (static_cast<long>(rep.clusters.size()) <= kClusterCap &&
      rep.late_deviation <= rep.early_deviation) {
    rep.verdict = DichotomyClass::finite_limit_points;
  } else {
    rep.verdict = DichotomyClass::inconclusive;
  }
  return rep;
}

}  // namespace normlab
