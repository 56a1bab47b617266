#pragma once

#include <map>
#include <string>
#include <vector>

#include "normlab/bbp.hpp"
#include "normlab/bounded_real.hpp"
#include "normlab/rational.hpp"

namespace normlab {

/// Exact star discrepancy of a finite sample in [0,1):
/// D*_N = max_i max(i/N - u_(i), u_(i) - (i-1)/N).
Rational star_discrepancy(const std::vector<Rational>& samples);

/// Sliding-window census of digit blocks of length m.
struct BlockCensus {
  long base = 2;
  int block_length = 1;
  std::map<std::string, long> counts;
  long total_windows = 0;
  BoundedReal chi_square;  // exact; against the uniform expectation
  bool all_blocks_present = false;
};

BlockCensus block_census(const std::vector<long>& digits, long base, int m);

struct SampleCluster {
  Rational center;
  long count = 0;
  Rational diameter;
};

/// Single-linkage clustering on the torus at the given merge radius.
std::vector<SampleCluster> cluster_limit_points(const std::vector<Rational>& samples,
                                                const Rational& radius);

/// Kolmogorov distances between nested empirical measures at N and ceil(N/2),
/// for N in doubling steps.
struct StabilityReport {
  std::vector<std::pair<long, Rational>> distances;
};

StabilityReport measure_stability(const std::vector<Rational>& samples);

struct DiscrepancyReport {
  long sample_size = 0;
  Rational star_discrepancy;
  std::string uniform_verdict_note;
};

DiscrepancyReport discrepancy_report(const std::vector<Rational>& samples);

/// a and b are multiplicatively dependent iff both are integer powers of a
/// common integer c >= 2 (checked by perfect-power decomposition).
bool multiplicatively_independent(long a, long b);

/// Joint diagnostics for one constant carried by two expansions in
/// multiplicatively independent bases.
struct JointBaseReport {
  bool specs_agree = false;
  DiscrepancyReport first;
  DiscrepancyReport second;
  BlockCensus first_census;
  BlockCensus second_census;
};

JointBaseReport joint_base_report(const BbpSpec& a, const BbpSpec& b, long N,
                                  long precision_bits);

}  // namespace normlab
