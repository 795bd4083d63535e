#pragma once

#include <algorithm>
#include <vector>

#include "tr/poly.hpp"

namespace tr {

// All roots of a rational polynomial, each of which must itself be rational.
// Rational-root candidates come from divisors of the cleared trailing/leading
// integers; each hit is deflated out (with multiplicity) before moving on.
inline std::vector<Rat> rational_roots_all(Poly<Rat> p) {
  check(!p.is_zero(), Err::ZeroPolynomial, "root-finding on zero polynomial");
  std::vector<Rat> roots;
  while (p.deg() > 0 && FT<Rat>::is_zero(p.c[0])) {
    roots.push_back(Rat(0));
    p.c.erase(p.c.begin());
  }
  while (p.deg() > 0) {
    mpz_class den = 1;
    for (auto& q : p.c) {
      mpz_class d = q.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
      den = den / g * d;
    }
    std::vector<mpz_class> ic;
    for (auto& q : p.c) ic.push_back(mpz_class(q * den));
    mpz_class a0 = abs(ic.front()), an = abs(ic.back());
    auto divisors = [](const mpz_class& n) {
      std::vector<mpz_class> d;
      for (mpz_class i = 1; i * i <= n; i++)
        if (n % i == 0) {
          d.push_back(i);
          if (i * i != n) d.push_back(n / i);
        }
      return d;
    };
    bool found = false;
    for (auto& pnum : divisors(a0)) {
      for (auto& qden : divisors(an)) {
        for (int sg : {1, -1}) {
          Rat cand(sg * pnum, qden);
          cand.canonicalize();
          if (FT<Rat>::is_zero(p.eval(cand))) {
            roots.push_back(cand);
            p = p.divide_linear(cand).first;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found)
      fail(Err::IrrationalRootsInExactMode,
           "polynomial of degree " + std::to_string(p.deg()) + " has no rational root");
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Durand-Kerner with a residual acceptance contract: every returned root r
// must satisfy |p(r)| < eps * mag(p). Newton polish after the sweep.
inline std::vector<CNum> numeric_roots_all(const Poly<CNum>& p) {
  check(!p.is_zero(), Err::ZeroPolynomial, "root-finding on zero polynomial");
  long n = p.deg();
  if (n == 0) return {};
  Poly<CNum> monic = p;
  CNum leadinv = FT<CNum>::one() / monic.c.back();
  for (auto& x : monic.c) x = x * leadinv;
  Poly<CNum> dp = p.derivative();

  Real radius = Real(1);
  for (long i = 0; i < n; i++) {
    Real m = monic.c[i].abs();
    if (radius < m) radius = m;
  }
  radius = radius + Real(1);

  // seeds r/2 * e^{i(theta0 + 2 pi k/n)}, theta0 irrationally offset
  std::vector<CNum> z(n);
  Real theta0 = Real::pi() / Real(2 * n + 1);
  for (long i = 0; i < n; i++) {
    Real ang = theta0 + (Real::pi() * Real(2 * i)) / Real(n);
    z[i] = CNum(Real(0), ang).exp() * CNum(radius / Real(2), Real(0));
  }

  long iters = 64 + 2 * Prec::bits;
  for (long it = 0; it < iters; it++) {
    Real worst = Real(0);
    for (long i = 0; i < n; i++) {
      CNum num = monic.eval(z[i]);
      CNum den = FT<CNum>::one();
      for (long j = 0; j < n; j++)
        if (j != i) den = den * (z[i] - z[j]);
      CNum delta = num / den;
      z[i] = z[i] - delta;
      Real d = delta.abs();
      if (worst < d) worst = d;
    }
    if (worst < Real::eps()) break;
  }
  for (long i = 0; i < n; i++) {
    for (int it = 0; it < 8; it++) {
      CNum pv = p.eval(z[i]);
      CNum dv = dp.eval(z[i]);
      if (FT<CNum>::is_zero(dv)) break;
      z[i] = z[i] - pv / dv;
    }
  }
  Real scale{Rat(poly_mag(p))};
  for (long i = 0; i < n; i++) {
    Real resid = p.eval(z[i]).abs();
    check(resid < Real::eps() * scale, Err::BadValuation,
          "root residual " + resid.str() + " exceeds contract");
  }
  std::sort(z.begin(), z.end());
  return z;
}

template <class F>
std::vector<F> roots_all(const Poly<F>& p);

template <>
inline std::vector<Rat> roots_all<Rat>(const Poly<Rat>& p) {
  return rational_roots_all(p);
}
template <>
inline std::vector<CNum> roots_all<CNum>(const Poly<CNum>& p) {
  return numeric_roots_all(p);
}

}  // namespace tr
