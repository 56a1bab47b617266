#include "normlab/bbp.hpp"

#include <cmath>
#include <stdexcept>

#include "normlab/numerics.hpp"

namespace normlab {

RationalFunction::RationalFunction(IntPoly num, IntPoly den)
    : p(std::move(num)), q(std::move(den)) {
  if (q.is_zero()) throw std::invalid_argument("rational function: zero denominator");
  if (p.is_zero()) q = IntPoly::constant(1);  // canonical zero
}

RationalFunction RationalFunction::from_longs(const std::vector<long>& p,
                                              const std::vector<long>& q) {
  return RationalFunction(IntPoly::from_longs(p), IntPoly::from_longs(q));
}

Rational RationalFunction::eval(long n) const {
  Int den = q.eval(Int(n));
  if (den == 0) throw std::domain_error("pole in perturbation");
  return Rational(p.eval(Int(n)), den);
}

std::vector<std::string> validate_spec(const BbpSpec& spec) {
  std::vector<std::string> errors;
  if (spec.base < 2) errors.push_back("base < 2");
  if (spec.start_index != 0 && spec.start_index != 1)
    errors.push_back("start index must be 0 or 1");
  if (spec.r.q.is_zero()) {
    errors.push_back("q is zero");
    return errors;
  }
  if (!spec.r.p.is_zero()) {
    for (const auto& [root, mult] : rational_roots(spec.r.q)) {
      if (!root.is_integer()) continue;
      Int n = root.numerator();
      if (n >= spec.start_index)
        errors.push_back("q has nonnegative integer root n=" + n.get_str());
    }
    QPoly g = poly_gcd(QPoly::from_int(spec.r.p), QPoly::from_int(spec.r.q));
    if (g.degree() > 0) errors.push_back("p,q not coprime");
  }
  return errors;
}

void require_valid(const BbpSpec& spec) {
  auto errors = validate_spec(spec);
  if (errors.empty()) return;
  std::string msg = "invalid spec:";
  for (const auto& e : errors) msg += " [" + e + "]";
  throw std::invalid_argument(msg);
}

Rational epsilon(const BbpSpec& spec, long n) {
  if (n < spec.start_index)
    throw std::invalid_argument("term index precedes series start");
  return spec.r.eval(n);
}

RationalFunction drive_rf(const BbpSpec& spec) {
  if (spec.start_index == 1) return spec.r;
  // re-index a start-0 series as an equivalent start-1 series:
  // sum_{n>=0} R(n) b^-n == sum_{k>=1} b*R(k-1) b^-k
  IntPoly p = spec.r.p.compose_linear(Int(1), Int(-1)) * Int(spec.base);
  IntPoly q = spec.r.q.compose_linear(Int(1), Int(-1));
  return RationalFunction(std::move(p), std::move(q));
}

Rational drive_epsilon(const BbpSpec& spec, long k) {
  if (k < 1) throw std::invalid_argument("drive index must be >= 1");
  if (spec.start_index == 1) return spec.r.eval(k);
  return spec.r.eval(k - 1) * Rational(spec.base);
}

namespace {

// |R(n)| <= coeff * n^exponent for integer n >= threshold (>= 1).
struct Envelope {
  Rational coeff;
  long exponent = 0;
  long threshold = 1;
};

Envelope rf_envelope(const RationalFunction& rf) {
  Envelope env;
  if (rf.p.is_zero()) {
    env.coeff = Rational(0);
    return env;
  }
  int l = rf.p.degree();
  int d = rf.q.degree();
  Int lead = ::abs(rf.q.leading());
  // |q(n)| >= |q_d| n^d - (sum of lower |coeffs|) n^(d-1) >= |q_d| n^d / 2
  // once n >= 2 * (sum of lower |coeffs|) / |q_d|
  Int lower = rf.q.abs_coeff_sum() - lead;
  Rational thr = Rational(Int(2) * lower, lead);
  env.threshold = std::max(1L, static_cast<long>(thr.ceil().get_si()));
  env.coeff = Rational(Int(2) * rf.p.abs_coeff_sum(), lead);
  env.exponent = l - d;
  return env;
}

Rational pow_long(const Rational& x, long e) { return x.pow(e); }

}  // namespace

BoundedReal geometric_tail(const RationalFunction& rf, long N, long base,
                           long precision_bits) {
  if (base < 2) throw std::invalid_argument("invalid base");
  if (rf.p.is_zero()) return BoundedReal(Rational(0));
  long bits = std::max(precision_bits, 8L);
  Envelope env = rf_envelope(rf);
  Rational inv_b(Int(1), Int(base));
  Rational target = pow2(-bits - 1);

  BoundedReal sum;
  Rational bpow(1);  // base^-j
  long work_bits = bits + 64;
  for (long j = 1;; ++j) {
    bpow = bpow * inv_b;
    long n = N + j;
    sum += BoundedReal(rf.eval(n) * bpow);
    if (j % 32 == 0) sum = sum.compressed(work_bits);

    if (n < env.threshold) continue;
    // remaining terms m > n: |R(m)| <= C m^E; the term envelope shrinks by at
    // least rho = (1/b)((n+1)/n)^max(E,0) per step, so a geometric bound holds
    Rational rho = inv_b;
    if (env.exponent > 0)
      rho = rho * pow_long(Rational(Int(n + 1), Int(n)), env.exponent);
    if (rho >= Rational(1)) continue;
    Rational first = env.coeff * pow_long(Rational(Int(n + 1)), env.exponent) *
                     bpow * inv_b;
    Rational rem = first / (Rational(1) - rho);
    if (rem <= target) {
      sum = sum.inflated(rem);
      return sum.compressed(work_bits);
    }
  }
}

BoundedReal eval_theta(const BbpSpec& spec, long precision_bits) {
  require_valid(spec);
  long bits = std::max(precision_bits, 8L);
  if (spec.r.p.is_zero()) return BoundedReal(Rational(0));
  if (spec.start_index == 1) return geometric_tail(spec.r, 0, spec.base, bits);
  // start 0: theta = b * sum_{j>=1} R(j-1) b^-j
  BoundedReal t = geometric_tail(spec.r, -1, spec.base, bits + 1 + 64);
  return (t * Rational(spec.base)).compressed(bits + 8);
}

// ---------------------------------------------------------------------------
// Boundary series at z = +1 / -1.
//
// Direct summation converges like 1/N, far too slow for tight enclosures, so
// the tail is expanded over the inverse rising-factorial basis
//   F_j(x) = 1/(x(x+1)...(x+j-1)),
// whose tails telescope exactly:
//   sum_{n>N} F_j(n) = 1/((j-1)(N+1)...(N+j-1)).
// Peeling gamma_j F_j off the summand raises its decay order by one each
// step; the final remainder is bounded by integral comparison.
// ---------------------------------------------------------------------------

namespace {

struct TailExpansion {
  Rational exact;   // sum of exact basis tails
  Rational bound;   // rigorous bound on the remaining sum, or -1 if not reached
};

// sum_{n>N} num(x) / (scale * q(x) * x(x+1)...(x+phi-1)) with target accuracy.
TailExpansion factorial_tail(const IntPoly& p, const IntPoly& q, long N,
                             const Rational& target) {
  TailExpansion out;
  out.exact = Rational(0);
  out.bound = Rational(-1);

  IntPoly num = p;
  Int scale = 1;
  long phi = 0;  // den = scale * q * x(x+1)...(x+phi-1)
  int d = q.degree();
  Int q_lead = ::abs(q.leading());
  Int q_lower = q.abs_coeff_sum() - q_lead;
  Rational thr = Rational(Int(2) * q_lower, q_lead);
  long q_threshold = std::max(1L, static_cast<long>(thr.ceil().get_si()));
  if (N < q_threshold) return out;  // caller retries with larger N

  Rational basis_tail_den(Int(N + 1));  // (N+1)...(N+j-1) built incrementally

  const long max_terms = 64;
  for (long j = 2; j <= max_terms + 2; ++j) {
    // den currently has degree d + phi; extend the factorial part to length j
    while (phi < j) {
      num = num * IntPoly(std::vector<Int>{Int(phi), Int(1)});  // *(x + phi)
      ++phi;
    }
    if (j > 2) basis_tail_den *= Rational(Int(N + j - 1));

    if (!num.is_zero() && num.degree() == d + phi - j) {
      // peel gamma_j / (x(x+1)...(x+j-1))
      Rational gamma = Rational(num.leading(), scale * q.leading());
      Int a = gamma.numerator(), b = gamma.denominator();
      num = num * b - q * (a * Int(scale));
      scale *= b;
      Int g = num.content();
      if (g > 1) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scale.get_mpz_t());
        if (g > 1) {
          for (auto& c : num.c) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
          mpz_divexact(scale.get_mpz_t(), scale.get_mpz_t(), g.get_mpz_t());
        }
      }
      out.exact += gamma / (Rational(Int(j - 1)) * basis_tail_den);
    }
    if (num.is_zero()) {
      out.bound = Rational(0);
      return out;
    }

    // remainder envelope: |num(n)| <= sum|coeffs| n^deg; den >= scale *
    // (|q_d|/2) n^d * n^phi for n >= q_threshold; decay exponent E <= -(j+1)
    long E = num.degree() - d - phi;
    if (E >= -1) continue;
    Rational C = Rational(Int(2) * num.abs_coeff_sum(), Int(scale) * q_lead);
    // sum_{n>N} n^E <= integral_N^inf x^E dx = N^(E+1)/(-E-1)
    Rational rem = C * pow_long(Rational(Int(N)), E + 1) / Rational(-E - 1);
    if (rem <= target) {
      out.bound = rem;
      return out;
    }
  }
  return out;  // not converged; caller increases N
}

void check_no_poles_from(const IntPoly& q, long start) {
  for (const auto& [root, mult] : rational_roots(q)) {
    if (root.is_integer() && root >= Rational(start))
      throw std::domain_error("q has nonnegative integer root n=" +
                              root.numerator().get_str());
  }
}

}  // namespace

BoundedReal eval_boundary(const RationalFunction& rf, int z, int start_index,
                          long precision_bits) {
  if (z != 1 && z != -1) throw std::invalid_argument("boundary z must be +1 or -1");
  if (start_index != 0 && start_index != 1)
    throw std::invalid_argument("start index must be 0 or 1");
  if (rf.p.is_zero()) return BoundedReal(Rational(0));
  if (rf.q.degree() < rf.p.degree() + 2)
    throw std::domain_error("boundary evaluation not absolutely convergent");
  check_no_poles_from(rf.q, start_index);
  long bits = std::max(precision_bits, 8L);

  if (z == -1) {
    // pair consecutive terms: sum_{n>=s} (-1)^n R(n)
    //   = (-1)^s sum_{m>=0} [R(s+2m) - R(s+1+2m)]
    Int two(2), s(start_index), s1(start_index + 1);
    IntPoly p0 = rf.p.compose_linear(two, s), q0 = rf.q.compose_linear(two, s);
    IntPoly p1 = rf.p.compose_linear(two, s1), q1 = rf.q.compose_linear(two, s1);
    RationalFunction paired(p0 * q1 - p1 * q0, q0 * q1);
    BoundedReal v = eval_boundary(paired, 1, 0, bits);
    return (start_index % 2 == 0) ? v : -v;
  }

  Rational target = pow2(-bits - 1);
  long N = 64;
  const long max_N = 1L << 22;
  while (true) {
    TailExpansion tail = factorial_tail(rf.p, rf.q, N, target);
    if (tail.bound.sign() >= 0) {
      BoundedReal sum;
      long work_bits = bits + 64;
      for (long n = start_index; n <= N; ++n) {
        sum += BoundedReal(rf.eval(n));
        if (n % 32 == 0) sum = sum.compressed(work_bits);
      }
      sum += BoundedReal(tail.exact, tail.bound);
      return sum.compressed(work_bits);
    }
    N *= 2;
    if (N > max_N)
      throw std::domain_error("boundary tail expansion did not converge");
  }
}

// ---------------------------------------------------------------------------
// Spigot digit extraction
// ---------------------------------------------------------------------------

DigitExtraction extract_digits(const BbpSpec& spec, long position, long count,
                               long guard_bits) {
  require_valid(spec);
  if (!spec.r.vanishing() && !spec.r.p.is_zero())
    throw std::domain_error("digit extraction requires a vanishing perturbation");
  if (position < 0) throw std::invalid_argument("negative digit position");
  if (count < 1) throw std::invalid_argument("digit count must be >= 1");
  if (guard_bits < 8) guard_bits = 8;

  long digit_bits =
      static_cast<long>(std::ceil(count * std::log2(static_cast<double>(spec.base)))) + 1;
  long W = guard_bits + digit_bits;

  DigitExtraction out;
  out.position = position;
  out.base = spec.base;
  long peak = 0;
  auto note = [&peak](const Int& v) {
    long b = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
    if (b > peak) peak = b;
  };

  // head: frac(b^(d-n) p(n)/q(n)) accumulated at W fractional bits
  Int acc = 0;  // accumulator value acc / 2^W, fractional part only
  Rational err(0);
  Int b(spec.base);
  Int two_W = ipow(Int(2), static_cast<unsigned long>(W));
  for (long n = spec.start_index; n <= position; ++n) {
    Rational term = spec.r.eval(n);  // lowest terms
    Int v = term.denominator();
    Int u = term.numerator() % v;  // in [0, v) by GMP mod semantics
    if (u < 0) u += v;
    Int w = mod_pow(b, Int(position - n), v);
    Int m = (w * u) % v;
    // add m/v at W bits, truncated
    Int scaled = (m * two_W) / v;
    acc += scaled;
    err += pow2(-W);
    // keep only the fractional part
    acc %= two_W;
    note(v);
    note(w);
    note(acc);
  }

  // tail: sum_{j>=1} R(position+j) b^-j
  BoundedReal tail = geometric_tail(spec.r, position, spec.base, W + 8);
  note(tail.mid().denominator());

  BoundedReal value =
      (BoundedReal(Rational(acc, two_W), err) + tail).reduced_mod1();

  Rational cell = Rational(Int(1), ipow(b, static_cast<unsigned long>(count)));
  if (value.rad() * Rational(2) >= cell)
    throw std::domain_error("insufficient guard bits");

  // read digits; straddling a cell boundary is reported via flags
  Rational lo = value.lower(), mi = value.mid(), hi = value.upper();
  Rational base_q(spec.base);
  bool determined = true;
  for (long j = 0; j < count; ++j) {
    lo = lo * base_q;
    mi = mi * base_q;
    hi = hi * base_q;
    Int flo = lo.floor(), fmi = mi.floor(), fhi = hi.floor();
    if (determined && flo != fhi) determined = false;
    out.digits.push_back(fmi.get_si());
    out.confident.push_back(determined);
    lo = lo - Rational(flo);
    mi = mi - Rational(fmi);
    hi = hi - Rational(fhi);
  }
  out.error_radius = value.rad();
  out.peak_integer_bits = peak;
  return out;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = [] {
    std::vector<Preset> t;
    t.push_back({"log2-base2",
                 {2, RationalFunction::from_longs({1}, {0, 1}), 1},
                 0,
                 "log 2 = sum 1/(n 2^n)"});
    t.push_back({"log2-base9",
                 {9, RationalFunction::from_longs({6}, {-1, 2}), 1},
                 0,
                 "log 2 = sum 6/((2n-1) 9^n)"});
    t.push_back({"pi-base16",
                 {16, RationalFunction::from_longs({47, 151, 120},
                                                   {15, 194, 712, 1024, 512}),
                  0},
                 0,
                 "pi via the base-16 digit-extraction series"});
    t.push_back({"one-base2",
                 {2, RationalFunction::from_longs({2, 1}, {0, 1, 1}), 1},
                 0,
                 "sum (n+2)/(n(n+1)) 2^-n = 1 exactly"});
    t.push_back({"li2-base2",
                 {2, RationalFunction::from_longs({1}, {0, 0, 1}), 1},
                 0,
                 "Li_2(1/2)"});
    t.push_back({"lehmer",
                 {2, RationalFunction::from_longs({1}, {1, 7, 14, 8}), 0},
                 1,
                 "sum 1/((n+1)(2n+1)(4n+1)) = pi/3; boundary series, base unused"});
    t.push_back({"flajolet-salvy",
                 {2, RationalFunction::from_longs({2}, {1, 0, 1}), 1},
                 -1,
                 "sum (-1)^n 2/(n^2+1) = 2pi/(e^pi - e^-pi) - 1; boundary "
                 "series, base unused"});
    t.push_back({"bombieri-h",
                 {2, RationalFunction::from_longs({1}, {0, 1, 0, 1}), 1},
                 1,
                 "h(1) = sum 1/(n(n^2+1)); boundary series, base unused"});
    return t;
  }();
  return table;
}

const Preset& preset(const std::string& name) {
  for (const Preset& p : presets())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown preset: " + name);
}

BbpSpec preset_spec(const std::string& name) { return preset(name).spec; }

}  // namespace normlab
