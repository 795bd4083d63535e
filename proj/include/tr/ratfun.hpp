#pragma once

#include <string>
#include <utility>

#include "tr/series.hpp"

namespace tr {

// valuation with the mode's tolerance; coefficients below it are noise from
// shifting a polynomial to a numerically located root
template <class F>
long poly_small_val(const Poly<F>& p) {
  long v = 0;
  while (v <= p.deg() && FT<F>::small(p.coeff(v))) v++;
  return v;  // deg+1 when every coefficient is negligible
}

template <class F>
Series<F> poly_tail_series(const Poly<F>& p, long v, long bound) {
  std::vector<F> cc;
  for (long e = v; e <= p.deg() && e < bound; e++) cc.push_back(p.coeff(e));
  return Series<F>(v, bound, std::move(cc));
}

// Rational function num/den in one variable. No gcd reduction is attempted
// beyond stripping shared roots of the value field; expansions divide the
// local series directly, which is exact in both scalar modes.
template <class F>
struct RatFun {
  Poly<F> num, den;

  RatFun() : num(), den(Poly<F>::constant(FT<F>::one())) {}
  RatFun(Poly<F> n, Poly<F> d) : num(std::move(n)), den(std::move(d)) {
    check(!den.is_zero(), Err::ZeroPolynomial, "rational function with zero denominator");
  }
  static RatFun from_poly(Poly<F> p) { return RatFun(std::move(p), Poly<F>::constant(FT<F>::one())); }
  static RatFun var() { return from_poly(Poly<F>::x()); }
  static RatFun constant(const F& k) { return from_poly(Poly<F>::constant(k)); }

  bool is_zero() const { return num.is_zero(); }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num * b.num, a.den * b.den);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    check(!b.num.is_zero(), Err::ZeroPolynomial, "division by zero rational function");
    return RatFun(a.num * b.den, a.den * b.num);
  }
  RatFun operator-() const { return RatFun(-num, den); }

  F eval(const F& x) const {
    F d = den.eval(x);
    check(!FT<F>::small(d), Err::MissingPole, "evaluation at a pole");
    return num.eval(x) / d;
  }

  RatFun derivative() const {
    return RatFun(num.derivative() * den - num * den.derivative(), den * den);
  }
  // f'/f as a rational function
  RatFun dlog() const {
    check(!num.is_zero(), Err::ZeroPolynomial, "dlog of zero");
    return RatFun(num.derivative() * den - num * den.derivative(), num * den);
  }

  // Laurent expansion in t = x - a, trusted through t^{bound-1}
  Series<F> series_at(const F& a, long bound) const {
    Poly<F> n = num.shifted(a), d = den.shifted(a);
    check(!d.is_zero(), Err::ZeroPolynomial, "expansion with zero denominator");
    long vd = poly_small_val(d);
    check(vd <= d.deg(), Err::BadValuation, "denominator numerically zero at expansion point");
    long vn = poly_small_val(n);
    if (vn > n.deg()) return Series<F>::zero(bound);
    long L = std::max(bound + 2 * vd + 4, vn + 1);
    return (poly_tail_series(n, vn, L) * poly_tail_series(d, vd, L).inverse()).truncated(bound);
  }

  // expansion at infinity in the local coordinate s = 1/x
  Series<F> series_at_infinity(long bound) const {
    auto flip = [](const Poly<F>& p) {
      std::vector<F> cc(p.c.rbegin(), p.c.rend());
      return Poly<F>(std::move(cc));
    };
    if (num.is_zero()) return Series<F>::zero(bound);
    long shift = den.deg() - num.deg();
    Poly<F> n = flip(num), d = flip(den);
    long vd = poly_small_val(d);
    check(vd <= d.deg(), Err::BadValuation, "denominator numerically zero at infinity");
    long vn = poly_small_val(n);
    if (vn > n.deg()) return Series<F>::zero(bound);
    long L = std::max(bound - shift + 2 * vd + 4, vn + 1);
    Series<F> q = poly_tail_series(n, vn, L) * poly_tail_series(d, vd, L).inverse();
    q.val += shift;
    q.bound += shift;
    return q.truncated(bound);
  }

  // order of vanishing at a finite point (negative for a pole)
  long order_at(const F& a) const {
    check(!num.is_zero(), Err::ZeroPolynomial, "order of zero function");
    Poly<F> n = num.shifted(a), d = den.shifted(a);
    long vn = poly_small_val(n), vd = poly_small_val(d);
    check(vn <= n.deg() && vd <= d.deg(), Err::BadValuation,
          "function numerically indeterminate at point");
    return vn - vd;
  }
  long order_at_infinity() const {
    check(!num.is_zero(), Err::ZeroPolynomial, "order of zero function");
    auto flip = [](const Poly<F>& p) {
      std::vector<F> cc(p.c.rbegin(), p.c.rend());
      return Poly<F>(std::move(cc));
    };
    long vn = poly_small_val(flip(num)), vd = poly_small_val(flip(den));
    check(vn <= num.deg() && vd <= den.deg(), Err::BadValuation,
          "function numerically indeterminate at infinity");
    return (den.deg() - num.deg()) + vn - vd;
  }

  std::string str() const { return "(" + num.str() + ")/(" + den.str() + ")"; }
};

}  // namespace tr
