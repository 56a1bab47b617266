#include "normlab/stats.hpp"

#include <algorithm>
#include <stdexcept>

#include "normlab/perturbed.hpp"
#include "normlab/radix.hpp"

namespace normlab {

Rational star_discrepancy(const std::vector<Rational>& samples) {
  if (samples.empty()) throw std::invalid_argument("empty sample");
  std::vector<Rational> u = samples;
  std::sort(u.begin(), u.end());
  long N = static_cast<long>(u.size());
  Rational best(0);
  for (long i = 1; i <= N; ++i) {
    const Rational& ui = u[i - 1];
    best = std::max(best, Rational(i, N) - ui);
    best = std::max(best, ui - Rational(i - 1, N));
  }
  return best;
}

namespace {

char digit_char(long d) {
  static const char* alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
  return alphabet[d];
}

}  // namespace

BlockCensus block_census(const std::vector<long>& digits, long base, int m) {
  if (m < 1) throw std::invalid_argument("block length must be >= 1");
  if (static_cast<long>(digits.size()) < m)
    throw std::invalid_argument("digit sequence shorter than block length");
  if (base < 2 || base > 36) throw std::invalid_argument("census base out of range");

  BlockCensus census;
  census.base = base;
  census.block_length = m;
  census.total_windows = static_cast<long>(digits.size()) - m + 1;
  for (long i = 0; i + m <= static_cast<long>(digits.size()); ++i) {
    std::string key;
    key.reserve(m);
    for (int j = 0; j < m; ++j) {
      long d = digits[i + j];
      if (d < 0 || d >= base) {
        key += '?';  // out-of-alphabet digit (perturbed digits can stray)
      } else {
        key += digit_char(d);
      }
    }
    census.counts[key]++;
  }

  // chi-square against the uniform expectation total * base^-m, exact
  Rational expected = Rational(census.total_windows) / Rational(ipow(Int(base), m));
  Rational chi(0);
  long legal_blocks_seen = 0;
  for (const auto& [key, cnt] : census.counts) {
    if (key.find('?') != std::string::npos) continue;
    ++legal_blocks_seen;
    Rational diff = Rational(cnt) - expected;
    chi += diff * diff / expected;
  }
  // blocks never seen contribute expected each
  Int total_blocks = ipow(Int(base), m);
  Rational missing = Rational(total_blocks - legal_blocks_seen);
  chi += missing * expected;
  census.chi_square = BoundedReal(chi);
  census.all_blocks_present = Rational(legal_blocks_seen) == Rational(total_blocks);
  return census;
}

std::vector<SampleCluster> cluster_limit_points(const std::vector<Rational>& samples,
                                                const Rational& radius) {
  if (samples.empty()) throw std::invalid_argument("empty sample");
  std::vector<Rational> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.push_back(s.frac());
  std::sort(pts.begin(), pts.end());

  // chains of consecutive points with gaps <= radius; the circle closes, so
  // a small wrap-around gap merges the first and last chain
  struct Chain {
    size_t from, to;  // index range [from, to] in pts
  };
  std::vector<Chain> chains;
  size_t start = 0;
  for (size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] - pts[i - 1] > radius) {
      chains.push_back({start, i - 1});
      start = i;
    }
  }
  chains.push_back({start, pts.size() - 1});

  bool wrap = false;
  if (chains.size() > 1) {
    Rational wrap_gap = Rational(1) - pts.back() + pts.front();
    if (wrap_gap <= radius) wrap = true;
  }

  std::vector<SampleCluster> out;
  size_t n_chains = chains.size();
  size_t limit = wrap ? n_chains - 1 : n_chains;
  for (size_t ci = 0; ci < limit; ++ci) {
    Chain c = chains[ci];
    Rational lo = pts[c.from], hi = pts[c.to];
    long count = static_cast<long>(c.to - c.from + 1);
    Rational diam = hi - lo;
    Rational center = (lo + hi) * Rational(1, 2);
    if (wrap && ci == 0) {
      // join the last chain across 1.0
      Chain last = chains.back();
      count += static_cast<long>(last.to - last.from + 1);
      Rational lo_shift = pts[last.from] - Rational(1);
      diam = hi - lo_shift;
      center = ((lo_shift + hi) * Rational(1, 2)).frac();
    }
    out.push_back({center, count, diam});
  }
  if (out.empty()) out.push_back({pts.front(), static_cast<long>(pts.size()),
                                  pts.back() - pts.front()});
  return out;
}

namespace {

// sup-distance between the empirical CDFs of two sorted samples
Rational kolmogorov_distance(const std::vector<Rational>& a,
                             const std::vector<Rational>& b) {
  Rational best(0);
  size_t i = 0, j = 0;
  long na = static_cast<long>(a.size()), nb = static_cast<long>(b.size());
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i] <= b[j]))
      ++i;
    else
      ++j;
    Rational fa(static_cast<long>(i), na);
    Rational fb(static_cast<long>(j), nb);
    best = std::max(best, (fa - fb).abs());
  }
  return best;
}

}  // namespace

StabilityReport measure_stability(const std::vector<Rational>& samples) {
  if (samples.size() < 4) throw std::invalid_argument("need at least 4 samples");
  StabilityReport rep;
  for (long N = 4; N <= static_cast<long>(samples.size()); N *= 2) {
    long half = (N + 1) / 2;
    std::vector<Rational> a(samples.begin(), samples.begin() + N);
    std::vector<Rational> b(samples.begin(), samples.begin() + half);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    rep.distances.emplace_back(N, kolmogorov_distance(a, b));
  }
  return rep;
}

DiscrepancyReport discrepancy_report(const std::vector<Rational>& samples) {
  DiscrepancyReport rep;
  rep.sample_size = static_cast<long>(samples.size());
  rep.star_discrepancy = star_discrepancy(samples);
  rep.uniform_verdict_note =
      "empirical discrepancy of a finite orbit; no distribution claim";
  return rep;
}

namespace {

// strip perfect powers: smallest c with n = c^k
long primitive_power_base(long n) {
  Int m(n);
  bool reduced = true;
  while (reduced) {
    reduced = false;
    long maxk = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
    for (long k = maxk; k >= 2; --k) {
      Int root;
      if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(k)) != 0) {
        if (root > 1) {
          m = root;
          reduced = true;
          break;
        }
      }
    }
  }
  return m.get_si();
}

}  // namespace

bool multiplicatively_independent(long a, long b) {
  if (a < 2 || b < 2) throw std::invalid_argument("bases must be >= 2");
  return primitive_power_base(a) != primitive_power_base(b);
}

JointBaseReport joint_base_report(const BbpSpec& a, const BbpSpec& b, long N,
                                  long precision_bits) {
  require_valid(a);
  require_valid(b);
  if (!multiplicatively_independent(a.base, b.base))
    throw std::domain_error("bases multiplicatively dependent");

  BoundedReal ta = eval_theta(a, precision_bits);
  BoundedReal tb = eval_theta(b, precision_bits);
  JointBaseReport rep;
  rep.specs_agree = ta.intersects(tb);
  if (!rep.specs_agree) throw std::domain_error("specs disagree");

  auto run = [&](const BbpSpec& spec, DiscrepancyReport& disc, BlockCensus& census) {
    PerturbedOrbit orbit = perturbed_orbit(spec, Rational(0), N);
    disc = discrepancy_report(orbit.remainders);
    std::vector<long> digits;
    digits.reserve(orbit.digits.size());
    for (const auto& d : orbit.digits) digits.push_back(d.get_si());
    census = block_census(digits, spec.base, 2);
  };
  run(a, rep.first, rep.first_census);
  run(b, rep.second, rep.second_census);
  return rep;
}

}  // namespace normlab
