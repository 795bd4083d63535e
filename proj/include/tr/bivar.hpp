#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tr/poly.hpp"

namespace tr {

// Bivariate power series in (w1, w2) truncated by total degree < cap.
// Sparse map keyed by (i, j); used by the annulus kernel where the diagonal
// subtraction must be performed before any specialization.
template <class F>
struct BiSeries {
  long cap = 0;  // exclusive total-degree bound
  std::map<std::pair<long, long>, F> c;

  explicit BiSeries(long cap_) : cap(cap_) {}

  void add(long i, long j, const F& v) {
    if (i + j >= cap || FT<F>::is_zero(v)) return;
    auto it = c.find({i, j});
    if (it == c.end()) {
      c.emplace(std::make_pair(i, j), v);
    } else {
      it->second = it->second + v;
      if (FT<F>::is_zero(it->second)) c.erase(it);
    }
  }
  F coeff(long i, long j) const {
    auto it = c.find({i, j});
    return it == c.end() ? FT<F>::zero() : it->second;
  }

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
    BiSeries r(std::min(a.cap, b.cap));
    for (auto& [k, v] : a.c) r.add(k.first, k.second, v);
    for (auto& [k, v] : b.c) r.add(k.first, k.second, v);
    return r;
  }
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b) {
    BiSeries r(std::min(a.cap, b.cap));
    for (auto& [k, v] : a.c) r.add(k.first, k.second, v);
    for (auto& [k, v] : b.c) r.add(k.first, k.second, -v);
    return r;
  }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    BiSeries r(std::min(a.cap, b.cap));
    for (auto& [ka, va] : a.c)
      for (auto& [kb, vb] : b.c) r.add(ka.first + kb.first, ka.second + kb.second, va * vb);
    return r;
  }

  // inverse when the constant term is a unit
  BiSeries inverse() const {
    F c00 = coeff(0, 0);
    check(!FT<F>::is_zero(c00), Err::ZeroPolynomial, "bivariate inverse needs unit constant");
    F i0 = FT<F>::one() / c00;
    BiSeries u = *this;
    u.c.erase({0, 0});
    // geometric series in  -i0*u
    BiSeries r(cap);
    r.add(0, 0, i0);
    BiSeries pw(cap);
    pw.add(0, 0, FT<F>::one());
    for (long k = 1; k < cap; k++) {
      pw = pw * u;
      if (pw.c.empty()) break;
      F sgn = (k % 2 == 0) ? FT<F>::one() : -FT<F>::one();
      F fac = sgn * i0;
      for (long e = 0; e < k; e++) fac = fac * i0;
      BiSeries term = pw;
      for (auto& [kk, vv] : term.c) vv = vv * fac;
      r = r + term;
    }
    return r;
  }

  // exact division by (w1 - w2); the remainder (the w1 = w2 restriction)
  // must vanish. With res given, the per-degree remainders are appended
  // there instead of being checked, one entry per total degree from zero up.
  BiSeries divide_diagonal(std::vector<F>* res = nullptr) const {
    // process coefficients by descending i for each fixed total degree:
    // c[i][j] = q[i-1][j] - q[i][j-1]  =>  q[i-1][j] = c[i][j] + q[i][j-1]
    std::map<std::pair<long, long>, F> out;
    // group by total degree
    std::map<long, std::map<long, F>> byDeg;  // total degree -> (i -> coeff)
    long top = -1;
    for (auto& [k, v] : c) {
      byDeg[k.first + k.second][k.first] = v;
      top = std::max(top, k.first + k.second);
    }
    for (long d = 0; d <= top; d++) {
      auto rit = byDeg.find(d);
      static const std::map<long, F> kEmpty;
      const std::map<long, F>& row = rit == byDeg.end() ? kEmpty : rit->second;
      // solve q entries of total degree d-1
      F carry = FT<F>::zero();  // q[i][d-1-i] accumulated going down in i
      for (long i = d; i >= 1; i--) {
        F ci = FT<F>::zero();
        auto it = row.find(i);
        if (it != row.end()) ci = it->second;
        F qi = ci + carry;  // q[i-1][d-i]
        if (!FT<F>::is_zero(qi)) out[{i - 1, d - i}] = qi;
        carry = qi;
      }
      F c0 = FT<F>::zero();
      auto it0 = row.find(0L);
      if (it0 != row.end()) c0 = it0->second;
      F residual = c0 + carry;  // must vanish for divisibility
      if (res)
        res->push_back(residual);
      else
        check(FT<F>::small(residual), Err::DiagonalResidual,
              "diagonal remainder at total degree " + std::to_string(d));
    }
    BiSeries q2(cap);
    q2.c = std::move(out);
    return q2;
  }

  // restriction to the diagonal w1 = w2 = w, as coefficients of w^k
  std::vector<F> diagonal(long len) const {
    std::vector<F> r(len, FT<F>::zero());
    for (auto& [k, v] : c) {
      long d = k.first + k.second;
      if (d < len) r[d] = r[d] + v;
    }
    return r;
  }
};

}  // namespace tr
