#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tr/poly.hpp"

namespace tr {

// Truncated Laurent series  sum_{e=val}^{bound-1} c[e-val] t^e.
// `bound` is the exclusive exponent up to which coefficients are trusted;
// every operation propagates the tightest sound bound, and coefficient
// reads past it raise TruncationTooShort instead of silently returning 0.
template <class F>
struct Series {
  long val = 0;
  long bound = 0;
  std::vector<F> c;

  Series() = default;
  Series(long v, long b, std::vector<F> cc) : val(v), bound(b), c(std::move(cc)) {
    normalize();
  }

  static Series zero(long b) { return Series(b, b, {}); }
  static Series constant(const F& k, long b) { return Series(0, b, {k}); }
  static Series t_power(long e, long b) {
    std::vector<F> cc{FT<F>::one()};
    return Series(e, b, std::move(cc));
  }
  static Series from_poly(const Poly<F>& p, long b) {
    std::vector<F> cc(p.c.begin(), p.c.end());
    if ((long)cc.size() > b) cc.resize(std::max<long>(b, 0));
    return Series(0, b, std::move(cc));
  }

  void normalize() {
    size_t lead = 0;
    while (lead < c.size() && FT<F>::is_zero(c[lead])) lead++;
    if (lead) {
      c.erase(c.begin(), c.begin() + lead);
      val += (long)lead;
    }
    if ((long)c.size() > bound - val) c.resize(std::max<long>(bound - val, 0));
    while (!c.empty() && FT<F>::is_zero(c.back())) c.pop_back();
    if (c.empty()) val = bound;
  }

  bool known_zero() const { return c.empty(); }

  // all stored coefficients below the mode's tolerance
  bool negligible() const {
    for (auto& x : c)
      if (!FT<F>::small(x)) return false;
    return true;
  }

  // drop coefficients below t^v; they must be negligible (exact zeros in
  // rational mode, rounding noise in numeric mode)
  Series chopped(long v, Err code, const char* what) const {
    Series r = *this;
    while (!r.c.empty() && r.val < v) {
      check(FT<F>::small(r.c.front()), code, std::string(what));
      r.c.erase(r.c.begin());
      r.val++;
    }
    if (r.c.empty()) r.val = r.bound;
    r.normalize();
    return r;
  }

  // coefficient of t^e; e must be below the trust bound
  F coeff(long e) const {
    check(e < bound, Err::TruncationTooShort,
          "coefficient t^" + std::to_string(e) + " beyond bound " + std::to_string(bound));
    if (e < val || e >= val + (long)c.size()) return FT<F>::zero();
    return c[e - val];
  }

  F lead() const {
    check(!c.empty(), Err::ZeroPolynomial, "leading coefficient of zero series");
    return c[0];
  }

  Series truncated(long b) const {
    Series r = *this;
    r.bound = std::min(r.bound, b);
    r.normalize();
    return r;
  }

  friend Series operator+(const Series& a, const Series& b) {
    long bound = std::min(a.bound, b.bound);
    long v = std::min(a.val, b.val);
    long top = std::min(bound, std::max(a.val + (long)a.c.size(), b.val + (long)b.c.size()));
    if (top < v) top = v;
    std::vector<F> cc(top - v, FT<F>::zero());
    for (size_t i = 0; i < a.c.size(); i++)
      if (a.val + (long)i < top) cc[a.val + i - v] = cc[a.val + i - v] + a.c[i];
    for (size_t i = 0; i < b.c.size(); i++)
      if (b.val + (long)i < top) cc[b.val + i - v] = cc[b.val + i - v] + b.c[i];
    return Series(v, bound, std::move(cc));
  }
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
  Series operator-() const {
    Series r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }

  friend Series operator*(const Series& a, const Series& b) {
    if (a.known_zero() || b.known_zero()) {
      long bound = std::min(a.known_zero() ? a.bound + b.val : a.val + b.bound,
                            b.known_zero() ? b.bound + a.val : b.val + a.bound);
      return Series::zero(bound);
    }
    long v = a.val + b.val;
    long bound = std::min(a.bound + b.val, b.bound + a.val);
    long len = std::max<long>(0, bound - v);
    std::vector<F> cc(len, FT<F>::zero());
    for (size_t i = 0; i < a.c.size(); i++)
      for (size_t j = 0; j < b.c.size(); j++) {
        long e = (long)(i + j);
        if (e < len) cc[e] = cc[e] + a.c[i] * b.c[j];
      }
    return Series(v, bound, std::move(cc));
  }

  Series operator*(const F& k) const {
    Series r = *this;
    for (auto& x : r.c) x = x * k;
    r.normalize();
    return r;
  }

  // multiplicative inverse; lowest known coefficient must be nonzero
  Series inverse() const {
    check(!c.empty(), Err::ZeroPolynomial, "inverse of (truncation-)zero series");
    long rel = bound - val;         // known relative orders
    long v = -val;
    std::vector<F> cc(rel, FT<F>::zero());
    F inv0 = FT<F>::one() / c[0];
    cc[0] = inv0;
    for (long k = 1; k < rel; k++) {
      F acc = FT<F>::zero();
      for (long j = 1; j <= k && j < (long)c.size(); j++) acc = acc + c[j] * cc[k - j];
      cc[k] = -(acc * inv0);
    }
    return Series(v, v + rel, std::move(cc));
  }

  friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

  Series derivative() const {
    std::vector<F> cc;
    cc.reserve(c.size());
    for (size_t i = 0; i < c.size(); i++) {
      long e = val + (long)i;
      cc.push_back(c[i] * FT<F>::from_long(e));
    }
    return Series(val - 1, bound - 1, std::move(cc));
  }

  // antiderivative with zero constant; a t^{-1} term is an obstruction
  Series integrate() const {
    if (!FT<F>::small(residue_unchecked()))
      fail(Err::ResidueObstruction, "integrating a series with nonzero t^-1 coefficient");
    std::vector<F> cc;
    cc.reserve(c.size());
    for (size_t i = 0; i < c.size(); i++) {
      long e = val + (long)i;
      if (e == -1) { cc.push_back(FT<F>::zero()); continue; }
      cc.push_back(c[i] / FT<F>::from_long(e + 1));
    }
    return Series(val + 1, bound + 1, std::move(cc));
  }

  F residue() const { return coeff(-1); }
  F residue_unchecked() const {
    if (-1 < val || -1 >= val + (long)c.size()) return FT<F>::zero();
    return c[-1 - val];
  }

  // log(S) for S = 1 + u with val(u) >= 1 up to rounding; rejects other shapes
  Series log1() const {
    check(val == 0, Err::LogOfZeroValuation,
          "series log needs valuation 0, got " + std::to_string(val));
    check(!c.empty() && FT<F>::small(c[0] - FT<F>::one()), Err::LogOfZeroValuation,
          "series log needs unit constant term");
    // log(1+u) via integration of u'/(1+u)
    Series u = *this - constant(FT<F>::one(), bound);
    if (u.known_zero()) return Series::zero(bound);
    return (u.derivative() * inverse()).integrate().truncated(bound);
  }

  // exp(S), val(S) >= 1 up to rounding
  Series expS() const {
    Series s = chopped(1, Err::BadValuation, "series exp needs valuation >= 1");
    // Newton: E <- E (1 + S - log E)
    Series e = constant(FT<F>::one(), bound);
    for (long step = 0; step < 64; step++) {
      Series corr = s - e.log1();
      if (corr.negligible() || corr.val >= bound) break;
      e = (e * (constant(FT<F>::one(), bound) + corr)).truncated(bound);
    }
    return e;
  }

  // sqrt(S) for S = 1 + u; Newton iteration, exact in rational mode
  Series sqrt1() const {
    check(val == 0 && !c.empty() && FT<F>::small(c[0] - FT<F>::one()), Err::BadValuation,
          "series sqrt needs constant term 1");
    Series r = constant(FT<F>::one(), bound);
    F half = FT<F>::one() / FT<F>::from_long(2);
    for (long step = 0; step < 64; step++) {
      Series next = (r + *this * r.inverse()) * half;
      next = next.truncated(bound);
      Series diff = next - r;
      r = next;
      if (diff.negligible() || diff.val >= bound) break;
    }
    return r;
  }

  // composition S(T(t)); requires val(T) == 1
  Series compose(const Series& T) const {
    check(T.val == 1, Err::BadValuation, "composition target must have valuation 1");
    long relT = T.bound - T.val;
    long bout = std::min(val + relT, bound);
    if (known_zero()) return Series::zero(bout);
    // positive powers via Horner on ascending coefficients, negative via inverse
    Series Tinv = T.inverse();
    Series acc = Series::zero(bout);
    // negative exponent part
    long nneg = val < 0 ? -val : 0;
    if (nneg > 0) {
      Series p = Tinv;  // T^{-1}
      std::vector<Series> negpow;
      negpow.push_back(p);
      for (long k = 2; k <= nneg; k++) negpow.push_back((negpow.back() * Tinv).truncated(bout));
      for (long e = val; e < 0 && e < val + (long)c.size(); e++) {
        const F& k = c[e - val];
        if (FT<F>::is_zero(k)) continue;
        acc = acc + negpow[-e - 1] * k;
      }
    }
    // nonnegative part, Horner from the top
    long top = val + (long)c.size() - 1;
    if (top >= 0) {
      Series h = Series::zero(bout);
      for (long e = top; e >= 0; e--) {
        h = (h * T).truncated(bout);
        F k = (e >= val) ? c[e - val] : FT<F>::zero();
        if (!(e >= val) || FT<F>::is_zero(k)) continue;
        h = h + constant(k, bout);
      }
      acc = acc + h;
    }
    return acc.truncated(bout);
  }

  // compositional inverse of a valuation-1 series
  Series reversion() const {
    check(val == 1, Err::BadValuation, "reversion needs valuation 1");
    check(!c.empty(), Err::ZeroPolynomial, "reversion of zero series");
    long rel = bound - val;
    long bout = 1 + rel;
    F inv1 = FT<F>::one() / c[0];
    Series g(1, 2, {inv1});
    g.bound = bout;
    for (long step = 0; step < 64; step++) {
      Series fg = compose(g).truncated(bout);
      Series err = fg - t_power(1, bout);
      if (err.negligible() || err.val >= bout) break;
      Series dfg = derivative().compose(g).truncated(bout);
      g = (g - err * dfg.inverse()).truncated(bout);
    }
    return g;
  }

  std::string str() const {
    if (c.empty()) return "O(t^" + std::to_string(bound) + ")";
    std::string s;
    for (size_t i = 0; i < c.size(); i++) {
      if (FT<F>::is_zero(c[i])) continue;
      if (!s.empty()) s += " + ";
      s += FT<F>::str(c[i]) + "*t^" + std::to_string(val + (long)i);
    }
    return s + " + O(t^" + std::to_string(bound) + ")";
  }
};

}  // namespace tr
