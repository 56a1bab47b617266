#include "normlab/gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "normlab/numerics.hpp"

namespace normlab {

Factorization factor_denominator(const IntPoly& q) {
  if (q.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  Factorization f;
  IntPoly product = IntPoly::constant(Int(1));
  for (const auto& [root, mult] : rational_roots(q)) {
    LinearFactor lf;
    lf.l = root.denominator();
    lf.m = -root.numerator();
    lf.multiplicity = mult;
    f.linear_factors.push_back(lf);
    IntPoly lin(std::vector<Int>{lf.m, lf.l});
    for (int i = 0; i < mult; ++i) product = product * lin;
  }
  auto [w, rem] = QPoly::from_int(q).divmod(QPoly::from_int(product));
  if (!rem.is_zero()) throw std::logic_error("linear factor division not exact");
  IntPoly prim = w.primitive();
  if (prim.leading() < 0) prim = -prim;
  f.nonlinear_remainder = prim.degree() >= 1 ? prim : IntPoly::constant(Int(1));
  // w is a rational scalar times the remainder
  f.constant = w.coeff(w.degree()) / Rational(f.nonlinear_remainder.leading());
  return f;
}

namespace {

double log_of_mpz_approx(const Int& n) {
  long exp2 = 0;
  double d = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(d) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace

ClassificationReport classify_g(const RationalFunction& rf, long profile_n) {
  if (rf.q.is_zero()) throw std::invalid_argument("zero denominator");
  ClassificationReport rep;
  Factorization f = factor_denominator(rf.q);
  rep.is_g_series = f.nonlinear_remainder.degree() == 0;
  rep.reason = rep.is_g_series
                   ? "denominator splits into linear factors over Q"
                   : "denominator has an irreducible factor of degree >= 2";
  if (rf.p.is_zero()) return rep;

  Int g = 1;
  rep.lcm_profile.reserve(profile_n);
  for (long n = 1; n <= profile_n; ++n) {
    Int qn = rf.q.eval(Int(n));
    if (qn == 0) throw std::domain_error("q vanishes at a positive integer");
    Int pn = rf.p.eval(Int(n));
    // reduced coefficient denominator: |q(n)| / gcd(p(n), q(n))
    Int common;
    mpz_gcd(common.get_mpz_t(), pn.get_mpz_t(), qn.get_mpz_t());
    Int den = ::abs(qn) / common;
    mpz_lcm(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
    rep.lcm_profile.emplace_back(n, log_of_mpz_approx(g));
  }
  double logg = rep.lcm_profile.back().second;
  rep.linear_slope = logg / static_cast<double>(profile_n);
  rep.superlinear_ratio =
      logg / (static_cast<double>(profile_n) * std::log(static_cast<double>(profile_n)));
  return rep;
}

std::pair<Int, BoundedReal> lcm_growth_integers(long m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  Int g = 1;
  for (long k = 2; k <= m; ++k) mpz_lcm(g.get_mpz_t(), g.get_mpz_t(), Int(k).get_mpz_t());
  BoundedReal lg = (g == 1) ? BoundedReal(Rational(0)) : log_of_int(g, 64);
  return {g, lg};
}

AnnihilatorOperator build_annihilator(const RationalFunction& rf) {
  AnnihilatorOperator op;
  int l = std::max(rf.p.degree(), 0);
  int m = std::max(rf.q.degree(), 0);
  op.p_degree = l;
  op.q_degree = m;
  op.binomial_coeffs = binomial_basis(rf.p);

  // q(z d/dz) = sum_i (sum_j q_j S(j,i)) z^i d^i (Stirling normal ordering)
  auto S = stirling2_table(m);
  std::vector<IntPoly> coeff(m + 1);
  for (int i = 0; i <= m; ++i) {
    Int a = 0;
    for (int j = i; j <= m; ++j) a += rf.q.coeff(j) * S[j][i];
    if (a == 0) continue;
    std::vector<Int> mono(i + 1, Int(0));
    mono[i] = a;
    coeff[i] = IntPoly(std::move(mono));
  }

  // multiply by (1-z)^(l+1) on the left (acts as a plain function factor)
  IntPoly one_minus_z(std::vector<Int>{Int(1), Int(-1)});
  IntPoly omz_pow = IntPoly::constant(Int(1));
  for (int i = 0; i <= l; ++i) omz_pow = omz_pow * one_minus_z;
  for (auto& c : coeff) c = c * omz_pow;

  // compose with d/dz on the left, (l+1) times:
  // d/dz (c(z) d^i) = c'(z) d^i + c(z) d^(i+1)
  for (int rep = 0; rep <= l; ++rep) {
    std::vector<IntPoly> next(coeff.size() + 1);
    for (size_t i = 0; i < coeff.size(); ++i) {
      if (coeff[i].is_zero()) continue;
      next[i] = next[i] + coeff[i].derivative();
      next[i + 1] = next[i + 1] + coeff[i];
    }
    coeff = std::move(next);
  }
  op.coeff_by_order = std::move(coeff);
  return op;
}

std::vector<Rational> apply_annihilator(const AnnihilatorOperator& op,
                                        const RationalFunction& rf,
                                        int start_index, int truncation_order) {
  if (truncation_order < 1) throw std::invalid_argument("truncation order must be >= 1");
  int T = truncation_order;
  std::vector<Rational> series(T + 1, Rational(0));
  for (int n = start_index; n <= T; ++n) series[n] = rf.eval(n);

  std::vector<Rational> out(T + 1, Rational(0));
  for (size_t i = 0; i < op.coeff_by_order.size(); ++i) {
    const IntPoly& c = op.coeff_by_order[i];
    if (c.is_zero()) continue;
    // d^i series: coefficient n is (n+i)!/n! * a_{n+i}
    std::vector<Rational> deriv(T + 1, Rational(0));
    for (int n = 0; n + static_cast<int>(i) <= T; ++n) {
      Int fall = 1;
      for (size_t t = 0; t < i; ++t) fall *= Int(n + static_cast<int>(i) - static_cast<int>(t));
      deriv[n] = series[n + i] * Rational(fall);
    }
    for (int e = 0; e <= c.degree(); ++e) {
      if (c.coeff(e) == 0) continue;
      Rational ce(c.coeff(e));
      for (int n = 0; n + e <= T; ++n) out[n + e] += deriv[n] * ce;
    }
  }
  return out;
}

PartialFractions partial_fractions(const RationalFunction& rf) {
  if (rf.q.is_zero()) throw std::invalid_argument("zero denominator");
  Factorization f = factor_denominator(rf.q);
  if (f.nonlinear_remainder.degree() >= 1)
    throw std::domain_error("nonlinear denominator factor");

  PartialFractions pf;
  QPoly pq = QPoly::from_int(rf.p);
  QPoly qq = QPoly::from_int(rf.q);
  auto [quot, num] = pq.divmod(qq);
  pf.poly_part = quot;
  if (num.is_zero()) return pf;

  for (const auto& lf : f.linear_factors) {
    Rational root(-lf.m, lf.l);
    int mu = lf.multiplicity;
    // q = (l x + m)^mu * D with D(root) != 0;
    // num/q = (1/l^mu) * [series of num/D around root] / (x-root)^mu + ...
    QPoly lin(std::vector<Rational>{Rational(lf.m), Rational(lf.l)});
    QPoly D = qq;
    for (int i = 0; i < mu; ++i) {
      auto [d2, r2] = D.divmod(lin);
      if (!r2.is_zero()) throw std::logic_error("inexact factor division");
      D = d2;
    }
    QPoly num_s = num.shift(root);
    QPoly den_s = D.shift(root);
    // power series division to order mu-1
    std::vector<Rational> s(mu, Rational(0));
    Rational d0 = den_s.coeff(0);
    for (int t = 0; t < mu; ++t) {
      Rational acc = num_s.coeff(t);
      for (int i = 0; i < t; ++i) acc -= s[i] * den_s.coeff(t - i);
      s[t] = acc / d0;
    }
    Rational l_pow = Rational(lf.l).pow(mu);
    for (int t = 0; t < mu; ++t) {
      Rational coeff = s[t] / l_pow;
      if (coeff.is_zero()) continue;
      pf.terms.push_back({coeff, root, mu - t});
    }
  }
  return pf;
}

BoundedReal polylog(int order, const Rational& z, long precision_bits) {
  if (order < 1) throw std::invalid_argument("polylog order must be >= 1");
  if (z.abs() >= Rational(1)) throw std::domain_error("outside convergence domain");
  if (z.is_zero()) return BoundedReal(Rational(0));
  long bits = std::max(precision_bits, 8L);
  Rational az = z.abs();
  Rational inv_gap = Rational(1) / (Rational(1) - az);
  Rational target = pow2(-bits - 1);
  BoundedReal sum;
  Rational zpow(1);
  long work_bits = bits + 64;
  for (long n = 1;; ++n) {
    zpow = zpow * z;
    Rational nk = Rational(Int(n)).pow(order);
    sum += BoundedReal(zpow / nk);
    if (n % 32 == 0) sum = sum.compressed(work_bits);
    // remaining terms: sum_{m>n} |z|^m / m^k <= |z|^(n+1)/((n+1)^k (1-|z|))
    Rational rem = zpow.abs() * az * inv_gap / Rational(Int(n + 1)).pow(order);
    if (rem <= target) return sum.inflated(rem).compressed(work_bits);
  }
}

namespace {

// Arithmetic in Q(zeta_M) over the power basis 1, zeta, ..., zeta^(phi(M)-1).
struct Cyclotomic {
  long M = 1;
  IntPoly phi;           // cyclotomic polynomial
  int dim = 1;           // phi(M) = deg
  std::vector<std::vector<Rational>> zeta_pow;  // zeta^e for e in [0, M)

  explicit Cyclotomic(long order) : M(order), phi(cyclotomic(order)) {
    dim = phi.degree();
    QPoly mod = QPoly::from_int(phi);
    QPoly x(std::vector<Rational>{Rational(0), Rational(1)});
    QPoly cur = QPoly::constant(Rational(1));
    for (long e = 0; e < M; ++e) {
      QPoly red = cur.divmod(mod).second;
      std::vector<Rational> v(dim, Rational(0));
      for (int i = 0; i <= red.degree(); ++i) v[i] = red.coeff(i);
      zeta_pow.push_back(std::move(v));
      cur = cur * x;
    }
  }
};

void add_scaled(std::vector<Rational>& acc, const std::vector<Rational>& v,
                const Rational& s) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += v[i] * s;
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

struct LogGroupKey {
  long k;  // exponent of zeta_M in the argument 1 - zeta^k z
  Rational z;
  bool operator<(const LogGroupKey& o) const {
    if (k != o.k) return k < o.k;
    return z < o.z;
  }
};

// Exact value of sum_{n=0}^t n^e z^n ... helper for the polynomial part:
// sum_{n>=0} n^t z^n = sum_i S(t,i) i! z^i / (1-z)^(i+1), |z| < 1.
Rational power_sum_full(int t, const Rational& z) {
  auto S = stirling2_table(t);
  Rational acc(0);
  Rational omz = Rational(1) - z;
  Int fact = 1;
  for (int i = 0; i <= t; ++i) {
    if (i > 0) fact *= i;
    if (S[t][i] == 0) continue;
    acc += Rational(S[t][i] * fact) * z.pow(i) / omz.pow(i + 1);
  }
  return acc;
}

}  // namespace

ClosedForm closed_form_eval(const BbpSpec& spec, long precision_bits) {
  require_valid(spec);
  long bits = std::max(precision_bits, 8L);
  ClosedForm cf;
  cf.rational_part = Rational(0);
  if (spec.r.p.is_zero()) {
    cf.numeric_value = BoundedReal(Rational(0));
    return cf;
  }

  Rational z(Int(1), Int(spec.base));
  int s = spec.start_index;
  PartialFractions pf = partial_fractions(spec.r);

  // choose the cyclotomic order: lcm of the denominators of non-integer roots
  long M = 1;
  for (const auto& term : pf.terms) {
    if (term.root.is_integer()) continue;
    long v = term.root.denominator().get_si();
    M = std::lcm(M, v);
  }
  cf.cyclotomic_order = M;
  Cyclotomic cyc(M);

  std::map<LogGroupKey, std::vector<Rational>> log_groups;
  auto add_log = [&](long k, const Rational& w, const std::vector<Rational>& coeff) {
    LogGroupKey key{((k % M) + M) % M, w};
    auto it = log_groups.find(key);
    if (it == log_groups.end())
      log_groups.emplace(key, coeff);
    else
      add_scaled(it->second, coeff, Rational(1));
  };
  auto rational_coeff = [&](const Rational& c) {
    std::vector<Rational> v(cyc.dim, Rational(0));
    v[0] = c;
    return v;
  };

  // polynomial part of the decomposition: an exact rational value
  if (!pf.poly_part.is_zero()) {
    for (int t = 0; t <= pf.poly_part.degree(); ++t) {
      Rational pt = pf.poly_part.coeff(t);
      if (pt.is_zero()) continue;
      Rational full = power_sum_full(t, z);
      if (s == 1 && t == 0) full -= Rational(1);  // drop the n=0 term (n^0 = 1)
      cf.rational_part += pt * full;
    }
  }

  for (const auto& term : pf.terms) {
    const Rational& c = term.coefficient;
    if (term.root.is_integer()) {
      // c/(x - t)^m with integer t < start: shift the index to n - t
      long t = term.root.numerator().get_si();
      int m = term.multiplicity;
      Rational zt = z.pow(t);
      // sum_{n>=s} z^n/(n-t)^m = z^t [ Li_m(z) - sum_{j=1}^{s-t-1} z^j/j^m ]
      Rational heads(0);
      Rational zj(1);
      for (long j = 1; j <= s - t - 1; ++j) {
        zj = zj * z;
        heads += zj / Rational(Int(j)).pow(m);
      }
      cf.rational_part -= c * zt * heads;
      if (m == 1) {
        // Li_1(z) = -log(1-z)
        add_log(0, z, rational_coeff(-c * zt));
      } else {
        cf.polylog_terms.push_back({c * zt, m, z});
      }
    } else {
      if (term.multiplicity > 1)
        throw std::domain_error(
            "unsupported root pattern: repeated non-integer rational root");
      // c/(x - u/v): needs w = z^(1/v) rational, i.e. base a perfect v-th power
      if (!mpz_fits_slong_p(term.root.numerator().get_mpz_t()) ||
          !mpz_fits_slong_p(term.root.denominator().get_mpz_t()))
        throw std::domain_error("unsupported root pattern: oversized root");
      Int u = term.root.numerator();
      long v = term.root.denominator().get_si();
      Int beta;
      int exact = mpz_root(beta.get_mpz_t(), Int(spec.base).get_mpz_t(),
                           static_cast<unsigned long>(v));
      if (!exact)
        throw std::domain_error(
            "unsupported root pattern: base is not a perfect power matching "
            "the root denominator");
      Rational w(Int(1), beta);

      // c/(x - u/v) = c v/(v x - u); heads with v n - u < 0 are plain terms
      long n0 = term.root.floor().get_si() + 1;  // first n with v n - u > 0
      long n1 = std::max<long>(s, n0);
      for (long n = s; n < n1; ++n)
        cf.rational_part += c * Rational(v) * z.pow(n) / Rational(Int(v) * Int(n) - u);

      // substitute m = v n - u >= 1, m == a (mod v), a = -u mod v:
      //   sum -> c v w^u sum_{m >= m1, m == a} w^m / m
      long a = static_cast<long>((((-u) % v) + v) % v);
      Int m1 = Int(v) * Int(n1) - u;
      // roots-of-unity filter:
      //   sum_{m>=1, m==a (v)} x^m/m = (1/v) sum_k zeta^(-ak) (-log(1 - zeta^k x))
      Rational wu = w.pow(static_cast<long>(u.get_si()));
      long step = M / v;
      for (long k = 0; k < v; ++k) {
        long zexp = ((-a * k) % v + v) % v;  // zeta_v^(-ak)
        std::vector<Rational> coeff = cyc.zeta_pow[(zexp * step) % M];
        for (auto& x : coeff) x *= -(c * wu);  // times -(c v w^u) / v
        add_log(k * step, w, coeff);
      }
      // subtract the finitely many m < m1 in the progression
      for (Int mm = Int(a == 0 ? v : a); mm < m1; mm += v) {
        long mexp = static_cast<long>(mm.get_si());
        cf.rational_part -= c * Rational(v) * wu * w.pow(mexp) / Rational(mm);
      }
    }
  }

  // assemble exact log terms, dropping groups that cancel to zero
  for (auto& [key, coeff] : log_groups) {
    if (all_zero(coeff)) continue;
    cf.log_terms.push_back({coeff, key.k, M, key.z});
  }

  // numeric evaluation: supported when every surviving log argument is real,
  // i.e. zeta^k is 1 or -1; coefficients are then plain rationals
  BoundedReal total{cf.rational_part};
  for (const auto& lt : cf.log_terms) {
    bool real_arg = (lt.k == 0) || (M % 2 == 0 && lt.k == M / 2);
    bool rational_coeff_only = true;
    for (size_t i = 1; i < lt.coeff.size(); ++i)
      if (!lt.coeff[i].is_zero()) rational_coeff_only = false;
    if (!real_arg || !rational_coeff_only) {
      cf.numeric_supported = false;
      break;
    }
  }
  if (cf.numeric_supported) {
    for (const auto& lt : cf.log_terms) {
      Rational sign = (lt.k == 0) ? Rational(1) : Rational(-1);  // zeta^k = +-1
      Rational arg = Rational(1) - sign * lt.z;
      total += log_real(arg, bits + 8) * lt.coeff[0];
    }
    for (const auto& plt : cf.polylog_terms)
      total += polylog(plt.order, plt.argument, bits + 8) * plt.coefficient;
    cf.numeric_value = total.compressed(bits + 8);
  }
  return cf;
}

RationalityResult rationality_probe(const BbpSpec& spec, long precision_bits) {
  require_valid(spec);
  RationalityResult res;
  if (spec.r.p.is_zero()) {
    res.kind = RationalityResult::Kind::rational;
    res.value = Rational(0);
    return res;
  }
  Factorization f = factor_denominator(spec.r.q);
  if (f.nonlinear_remainder.degree() >= 1)
    throw std::domain_error("nonlinear denominator factor");
  for (const auto& lf : f.linear_factors)
    if (lf.multiplicity > 1)
      throw std::domain_error("Theorem applies to distinct roots only");

  ClosedForm cf = closed_form_eval(spec, precision_bits);
  if (cf.log_terms.empty() && cf.polylog_terms.empty()) {
    res.kind = RationalityResult::Kind::rational;
    res.value = cf.rational_part;
    return res;
  }
  if (!cf.numeric_supported) {
    res.kind = RationalityResult::Kind::undecided;
    return res;
  }
  // evaluate the log combination alone
  BoundedReal logsum;
  for (const auto& lt : cf.log_terms) {
    Rational sign = (lt.k == 0) ? Rational(1) : Rational(-1);
    logsum += log_real(Rational(1) - sign * lt.z, precision_bits + 8) * lt.coeff[0];
  }
  res.log_combination = logsum;
  Rational floor_mag = logsum.mid().abs() - logsum.rad();
  if (floor_mag > pow2(-precision_bits / 2))
    res.kind = RationalityResult::Kind::transcendental_numeric;
  else
    res.kind = RationalityResult::Kind::undecided;
  return res;
}

const char* to_string(RationalityResult::Kind k) {
  switch (k) {
    case RationalityResult::Kind::rational: return "rational";
    case RationalityResult::Kind::transcendental_numeric:
      return "transcendental_numeric";
    case RationalityResult::Kind::undecided: return "undecided";
  }
  return "undecided";
}

}  // namespace normlab
