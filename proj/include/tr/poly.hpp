#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tr/scalar.hpp"

namespace tr {

// dense univariate polynomial, ascending coefficients, exact zeros trimmed
template <class F>
struct Poly {
  std::vector<F> c;

  Poly() = default;
  explicit Poly(F k) : c{std::move(k)} { trim(); }
  explicit Poly(std::vector<F> v) : c(std::move(v)) { trim(); }

  static Poly x() { return Poly(std::vector<F>{FT<F>::zero(), FT<F>::one()}); }
  static Poly constant(F k) { return Poly(std::move(k)); }

  void trim() {
    while (!c.empty() && FT<F>::is_zero(c.back())) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long deg() const { return (long)c.size() - 1; }
  const F& operator[](size_t i) const { return c[i]; }

  F coeff(long i) const {
    if (i < 0 || i >= (long)c.size()) return FT<F>::zero();
    return c[i];
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c.size(), b.c.size()), FT<F>::zero());
    for (size_t i = 0; i < a.c.size(); i++) r[i] = r[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r[i] = r[i] + b.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c.size(), b.c.size()), FT<F>::zero());
    for (size_t i = 0; i < a.c.size(); i++) r[i] = r[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r[i] = r[i] - b.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<F> r(a.c.size() + b.c.size() - 1, FT<F>::zero());
    for (size_t i = 0; i < a.c.size(); i++)
      for (size_t j = 0; j < b.c.size(); j++) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    return Poly(std::move(r));
  }
  Poly operator*(const F& k) const {
    Poly r = *this;
    for (auto& x : r.c) x = x * k;
    r.trim();
    return r;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }

  F eval(const F& x) const {
    F r = FT<F>::zero();
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<F> r(c.size() - 1, FT<F>::zero());
    for (size_t i = 1; i < c.size(); i++) r[i - 1] = c[i] * FT<F>::from_long((long)i);
    return Poly(std::move(r));
  }

  // Taylor shift: returns p(a + t) as a polynomial in t
  Poly shifted(const F& a) const {
    Poly r;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      r = r * Poly(std::vector<F>{a, FT<F>::one()});
      r = r + Poly(*it);
    }
    return r;
  }

  // synthetic division by (x - a); remainder is p(a)
  std::pair<Poly, F> divide_linear(const F& a) const {
    if (is_zero()) return {Poly(), FT<F>::zero()};
    std::vector<F> q(c.size() > 1 ? c.size() - 1 : 0, FT<F>::zero());
    F rem = c.back();
    for (long i = (long)c.size() - 2; i >= 0; i--) {
      q[i] = rem;
      rem = c[i] + rem * a;
    }
    return {Poly(std::move(q)), rem};
  }

  std::string str(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < c.size(); i++) {
      if (FT<F>::is_zero(c[i])) continue;
      if (!s.empty()) s += " + ";
      s += FT<F>::str(c[i]);
      if (i >= 1) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }
};

// one-norm style magnitude for residual contracts
template <class F>
double poly_mag(const Poly<F>& p) {
  double m = 0;
  for (auto& x : p.c) m += FT<F>::mag(x);
  return m;
}

}  // namespace tr
