#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdlib>
#include <string>
#include <utility>

#include "tr/errors.hpp"

namespace tr {

using Rat = mpq_class;

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat rat_parse(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) fail(Err::ConfigError, "bad rational literal '" + s + "'");
  q.canonicalize();
  return q;
}

// Global working precision for numeric mode, set once per process before
// any Real is built.
struct Prec {
  static inline long bits = 256;
};

class Real {
 public:
  Real() { mpfr_init2(v_, Prec::bits); mpfr_set_zero(v_, 1); }
  explicit Real(long x) { mpfr_init2(v_, Prec::bits); mpfr_set_si(v_, x, MPFR_RNDN); }
  explicit Real(const Rat& q) { mpfr_init2(v_, Prec::bits); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  Real operator-() const { Real r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sgn() const { return mpfr_sgn(v_); }
  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  bool operator<(const Real& o) const { return cmp(o) < 0; }
  bool operator==(const Real& o) const { return cmp(o) == 0; }

  Real abs() const { Real r; mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
  Real sqrt() const { Real r; mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }
  Real log() const { Real r; mpfr_log(r.v_, v_, MPFR_RNDN); return r; }
  Real exp() const { Real r; mpfr_exp(r.v_, v_, MPFR_RNDN); return r; }
  friend Real atan2(const Real& y, const Real& x) { Real r; mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN); return r; }

  static Real pi() { Real r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
  static Real eps() { Real r; mpfr_set_ui_2exp(r.v_, 1, -(Prec::bits / 2), MPFR_RNDN); return r; }
  static Real pow2(long e) { Real r; mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN); return r; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string str() const {
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e;
    long digits = (long)(Prec::bits * 0.30103) + 3;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    std::string sign;
    if (mant[0] == '-') { sign = "-"; mant = mant.substr(1); }
    while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
    return sign + mant.substr(0, 1) + (mant.size() > 1 ? "." + mant.substr(1) : "") +
           "e" + std::to_string((long)e - 1);
  }

 private:
  mpfr_t v_;
};

struct CNum {
  Real re, im;

  CNum() = default;
  explicit CNum(long x) : re(x), im(0) {}
  explicit CNum(const Rat& q) : re(q), im(0) {}
  CNum(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  friend CNum operator+(const CNum& a, const CNum& b) { return {a.re + b.re, a.im + b.im}; }
  friend CNum operator-(const CNum& a, const CNum& b) { return {a.re - b.re, a.im - b.im}; }
  friend CNum operator*(const CNum& a, const CNum& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CNum operator/(const CNum& a, const CNum& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  CNum operator-() const { return {-re, -im}; }
  CNum& operator+=(const CNum& o) { re += o.re; im += o.im; return *this; }
  CNum& operator-=(const CNum& o) { re -= o.re; im -= o.im; return *this; }
  CNum& operator*=(const CNum& o) { *this = *this * o; return *this; }
  CNum& operator/=(const CNum& o) { *this = *this / o; return *this; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Real abs2() const { return re * re + im * im; }
  Real abs() const { return abs2().sqrt(); }

  CNum log_principal() const { return {abs().log(), atan2(im, re)}; }
  CNum exp() const {
    Real m = re.exp();
    // cos/sin via mpfr
    Real c, s;
    mpfr_sin_cos(s.raw(), c.raw(), im.raw(), MPFR_RNDN);
    return {m * c, m * s};
  }
  CNum sqrt() const { return pow_rat(Rat(1, 2)); }
  CNum pow_rat(const Rat& e) const { return (log_principal() * CNum(e)).exp(); }

  bool operator==(const CNum& o) const { return re == o.re && im == o.im; }
  // lexicographic order on (re, im), used for canonical labelings
  bool operator<(const CNum& o) const {
    int c = re.cmp(o.re);
    if (c != 0) return c < 0;
    return im.cmp(o.im) < 0;
  }

  std::string str() const {
    if (im.is_zero()) return re.str();
    std::string s = re.str();
    s += (im.sgn() < 0) ? "-" : "+";
    s += im.abs().str() + "i";
    return s;
  }
};

// field plug for the templated kernel
template <class F>
struct FT;

template <>
struct FT<Rat> {
  static constexpr bool exact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static Rat from_rat(const Rat& q) { return q; }
  static Rat from_long(long x) { return Rat(x); }
  static bool is_zero(const Rat& x) { return x == 0; }
  static bool small(const Rat& x) { return x == 0; }  // exact mode tolerance
  static std::string str(const Rat& x) { return rat_str(x); }
  static double mag(const Rat& x) { return std::abs(x.get_d()); }
};

template <>
struct FT<CNum> {
  static constexpr bool exact = false;
  static CNum zero() { return CNum(0L); }
  static CNum one() { return CNum(1L); }
  static CNum from_rat(const Rat& q) { return CNum(q); }
  static CNum from_long(long x) { return CNum(x); }
  static bool is_zero(const CNum& x) { return x.is_zero(); }
  static bool small(const CNum& x) { return x.abs().cmp(Real::eps()) < 0; }
  static std::string str(const CNum& x) { return x.str(); }
  static double mag(const CNum& x) { return x.abs().to_double(); }
};

}  // namespace tr
