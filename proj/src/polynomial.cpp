#include "normlab/polynomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace normlab {

IntPoly IntPoly::from_longs(const std::vector<long>& v) {
  std::vector<Int> c;
  c.reserve(v.size());
  for (long x : v) c.emplace_back(x);
  return IntPoly(std::move(c));
}

Int IntPoly::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
  for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator-() const {
  std::vector<Int> r = c;
  for (auto& x : r) x = -x;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<Int> r(c.size() + o.c.size() - 1, Int(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Int& k) const {
  std::vector<Int> r = c;
  for (auto& x : r) x *= k;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
  if (c.size() <= 1) return IntPoly();
  std::vector<Int> r(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Int(static_cast<long>(i));
  return IntPoly(std::move(r));
}

IntPoly IntPoly::compose_linear(const Int& a, const Int& b) const {
  // Horner in the polynomial ring: p(ax+b) = (...(c_n (ax+b) + c_{n-1})...)
  IntPoly lin(std::vector<Int>{b, a});
  IntPoly acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    acc = acc * lin + IntPoly::constant(*it);
  return acc;
}

Int IntPoly::content() const {
  Int g = 0;
  for (const Int& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Int IntPoly::abs_coeff_sum() const {
  Int s = 0;
  for (const Int& x : c) s += ::abs(x);
  return s;
}

QPoly QPoly::from_int(const IntPoly& p) {
  std::vector<Rational> r;
  r.reserve(p.c.size());
  for (const Int& x : p.c) r.emplace_back(x);
  return QPoly(std::move(r));
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rational> r(std::max(c.size(), o.c.size()), Rational(0));
  for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
  return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + o * Rational(-1); }

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  std::vector<Rational> r(c.size() + o.c.size() - 1, Rational(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
  return QPoly(std::move(r));
}

QPoly QPoly::operator*(const Rational& k) const {
  std::vector<Rational> r = c;
  for (auto& x : r) x *= k;
  return QPoly(std::move(r));
}

bool QPoly::operator==(const QPoly& o) const {
  if (c.size() != o.c.size()) return false;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != o.c[i]) return false;
  return true;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  QPoly rem = *this;
  std::vector<Rational> quot;
  int dd = d.degree();
  if (rem.degree() >= dd) quot.assign(rem.degree() - dd + 1, Rational(0));
  while (!rem.is_zero() && rem.degree() >= dd) {
    int k = rem.degree() - dd;
    Rational f = rem.c.back() / d.c.back();
    quot[k] = f;
    for (int i = 0; i <= dd; ++i) rem.c[k + i] -= f * d.c[i];
    rem.trim();
  }
  return {QPoly(std::move(quot)), rem};
}

QPoly QPoly::shift(const Rational& s) const {
  QPoly lin(std::vector<Rational>{s, Rational(1)});
  QPoly acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    acc = acc * lin + QPoly::constant(*it);
  return acc;
}

IntPoly QPoly::primitive() const {
  if (is_zero()) return IntPoly();
  Int den = 1;
  for (const Rational& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.denominator().get_mpz_t());
  std::vector<Int> r;
  r.reserve(c.size());
  for (const Rational& x : c) {
    Rational scaled = x * Rational(den);
    r.push_back(scaled.numerator());
  }
  IntPoly p(std::move(r));
  Int g = p.content();
  if (g > 1)
    for (auto& x : p.c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return p;
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = x.divmod(y).second;
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  return x * x.c.back().reciprocal();  // monic
}

namespace {

bool miller_rabin(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0; }

Int pollard_rho(const Int& n) {
  // n composite, odd, not a prime power handled outside; returns a proper factor
  if (n % 2 == 0) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0xb5297a4d);
  while (true) {
    Int x = rng.get_z_range(n - 2) + 2;
    Int y = x;
    Int cadd = rng.get_z_range(n - 1) + 1;
    Int d = 1;
    while (d == 1) {
      x = (x * x + cadd) % n;
      y = (y * y + cadd) % n;
      y = (y * y + cadd) % n;
      Int diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    out[n]++;
    return;
  }
  Int d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(const Int& n) {
  if (n < 2) throw std::domain_error("factorize: n must be >= 2");
  std::map<Int, int> acc;
  Int m = n;
  // strip small primes first; rho only sees hard cofactors
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    while (m % p == 0) {
      acc[Int(p)]++;
      m /= p;
    }
  }
  if (m > 1) factor_rec(m, acc);
  return {acc.begin(), acc.end()};
}

std::vector<Int> divisors(const Int& n) {
  if (n == 0) throw std::domain_error("divisors of zero");
  Int a = ::abs(n);
  std::vector<Int> ds{Int(1)};
  if (a == 1) return ds;
  for (const auto& [p, e] : factorize(a)) {
    size_t base = ds.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::vector<std::pair<Rational, int>> rational_roots(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("rational_roots of zero polynomial");
  std::vector<std::pair<Rational, int>> roots;
  QPoly cur = QPoly::from_int(p);

  // root at 0
  int zero_mult = 0;
  while (!cur.is_zero() && cur.c[0].is_zero()) {
    cur.c.erase(cur.c.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) roots.emplace_back(Rational(0), zero_mult);
  if (cur.degree() < 1) return roots;

  IntPoly prim = cur.primitive();
  std::vector<Int> nums = divisors(prim.c.front());
  std::vector<Int> dens = divisors(prim.leading());
  for (const Int& a : nums) {
    for (const Int& b : dens) {
      Int g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      if (g != 1) continue;  // only lowest-terms candidates
      for (int s : {1, -1}) {
        Rational cand(s > 0 ? a : Int(-a), b);
        if (cur.eval(cand).is_zero()) {
          int mult = 0;
          QPoly lin(std::vector<Rational>{-cand, Rational(1)});
          while (true) {
            auto [q, r] = cur.divmod(lin);
            if (!r.is_zero()) break;
            cur = q;
            ++mult;
          }
          roots.emplace_back(cand, mult);
        }
      }
    }
  }
  return roots;
}

IntPoly cyclotomic(long M) {
  if (M < 1) throw std::domain_error("cyclotomic: M >= 1 required");
  // Phi_M = (x^M - 1) / prod_{d | M, d < M} Phi_d
  std::vector<Int> xm(M + 1, Int(0));
  xm[0] = -1;
  xm[M] = 1;
  QPoly num = QPoly::from_int(IntPoly(std::move(xm)));
  for (long d = 1; d < M; ++d) {
    if (M % d != 0) continue;
    auto [q, r] = num.divmod(QPoly::from_int(cyclotomic(d)));
    if (!r.is_zero()) throw std::logic_error("cyclotomic division not exact");
    num = q;
  }
  return num.primitive();
}

std::vector<std::vector<Int>> stirling2_table(int n) {
  std::vector<std::vector<Int>> s(n + 1);
  for (int i = 0; i <= n; ++i) {
    s[i].assign(i + 1, Int(0));
    s[i][0] = (i == 0) ? 1 : 0;
    for (int k = 1; k <= i; ++k)
      s[i][k] = (k < i ? s[i - 1][k] * Int(k) : Int(0)) + (k - 1 <= i - 1 ? s[i - 1][k - 1] : Int(0));
  }
  return s;
}

std::vector<Int> binomial_basis(const IntPoly& p) {
  int d = std::max(p.degree(), 0);
  std::vector<Int> vals(d + 1);
  for (int j = 0; j <= d; ++j) vals[j] = p.eval(Int(j));
  // forward differences in place: after pass j, vals[j] = Delta^j p(0)
  std::vector<Int> out(d + 1);
  for (int j = 0; j <= d; ++j) {
    out[j] = vals[0];
    for (int i = 0; i + 1 < static_cast<int>(vals.size()); ++i) vals[i] = vals[i + 1] - vals[i];
    vals.pop_back();
  }
  return out;
}

}  // namespace normlab
