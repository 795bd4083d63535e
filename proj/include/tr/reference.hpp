#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "tr/recursion.hpp"

namespace tr {

// Serial re-derivation of the correlators, used to cross-check OmegaTable.
// Stores one coefficient per ordered tuple of principal-part slots, recurses
// on the first variable instead of the last, and enumerates variable subsets
// by bitmask, so every multiplicity weight in the parallel engine has to come
// out as an honest count here. No OpenMP, no shared caches, no test hooks.
template <class F>
class RefTable {
 public:
  using Tup = std::vector<Slot>;

  explicit RefTable(SpectralCurve<F>& curve) : cur_(curve) {}

  const std::map<Tup, F>& omega(long g, long n) {
    check(g >= 0 && n >= 1, Err::ConfigError, "invalid correlator indices");
    check(2 * g - 2 + n > 0, Err::UnstablePair, "reference correlator is initial data");
    auto it = memo_.find({g, n});
    if (it != memo_.end()) return it->second;
    long K = 2 * (3 * g - 3 + n) + 12;
    std::map<Tup, F> w;
    try {
      w = compute(g, n, K);
    } catch (const Error& e) {
      if (e.code() != Err::TruncationTooShort) throw;
      w = compute(g, n, 2 * K);
    }
    return memo_.emplace(std::pair<long, long>{g, n}, std::move(w)).first->second;
  }

  // collapse ordered tuples to sorted keys; every arrangement of a key must
  // be present and carry the same coefficient
  MeroForm<F> canonical(long g, long n) {
    const auto& w = omega(g, n);
    MeroForm<F> m;
    m.g = g;
    m.n = n;
    std::map<Key, long> seen;
    for (auto& kv : w) {
      Tup s = kv.first;
      std::sort(s.begin(), s.end());
      auto it = m.c.find(s);
      if (it == m.c.end())
        m.c.emplace(s, kv.second);
      else
        check(FT<F>::small(it->second - kv.second), Err::IdentityViolation,
              "reference correlator not symmetric at " + key_str(s));
      seen[s]++;
    }
    for (auto& kv : m.c) {
      long num = 1, den = 1;
      for (long i = 2; i <= n; i++) num *= i;
      for (size_t i = 0; i < kv.first.size();) {
        size_t j = i;
        while (j < kv.first.size() && kv.first[j] == kv.first[i]) j++;
        for (long x = 2; x <= (long)(j - i); x++) den *= x;
        i = j;
      }
      check(seen[kv.first] == num / den, Err::IdentityViolation,
            "reference tuple arrangements missing at " + key_str(kv.first));
    }
    return m;
  }

 private:
  SpectralCurve<F>& cur_;
  std::map<std::pair<long, long>, std::map<Tup, F>> memo_;

  std::map<Tup, F> compute(long g, long n, long K) {
    long Kb = 2 * (3 * g - 3 + n) + 2;
    long jatt = Kb, jout = Kb + 1;

    const std::map<Tup, F>* A = nullptr;
    if (g >= 1 && !(g == 1 && n == 1)) A = &omega(g - 1, n + 1);
    long m = n - 1;
    for (long g1 = 0; g1 <= g; g1++)
      for (long nI = 0; nI <= m; nI++) {
        if (g1 == 0 && nI <= 1) continue;
        if (2 * g1 - 2 + nI + 1 > 0 && !(g1 == g && nI == m)) omega(g1, nI + 1);
      }

    cur_.ensure_ram(K);
    const auto& rams = cur_.ram();

    std::map<Tup, F> out;
    for (int a = 0; a < (int)rams.size(); a++) {
      const RamPoint<F>& rp = rams[a];
      long B = rp.tbar.bound;
      Series<F> t1 = Series<F>::t_power(1, B);
      std::vector<Series<F>> tbp{Series<F>::t_power(0, B)};
      for (long j = 1; j <= jout; j++) tbp.push_back(tbp.back() * rp.tbar);

      std::map<Slot, Series<F>> st, sb;
      auto slot_series = [&](const Slot& f, bool bar) -> const Series<F>& {
        auto& cache = bar ? sb : st;
        auto it = cache.find(f);
        if (it != cache.end()) return it->second;
        Series<F> v;
        if (f.first == a) {
          if (!bar)
            v = Series<F>::t_power(-f.second, B);
          else {
            v = rp.tbar.inverse();
            Series<F> one = v;
            for (long k = 1; k < f.second; k++) v = v * one;
          }
        } else {
          Series<F> base =
              (Series<F>::constant(rp.a - rams[f.first].a, B) + (bar ? rp.tbar : t1)).inverse();
          v = base;
          for (long k = 1; k < f.second; k++) v = v * base;
        }
        return cache.emplace(f, std::move(v)).first->second;
      };

      std::map<Tup, Series<F>> bucket;
      auto add = [&](Tup r, const Series<F>& s) {
        auto it = bucket.find(r);
        if (it == bucket.end())
          bucket.emplace(std::move(r), s);
        else
          it->second = it->second + s;
      };

      if (g == 1 && n == 1) {
        Series<F> d = t1 - rp.tbar;
        add({}, rp.tbarp * (d * d).inverse());
      }
      if (A) {
        for (auto& kv : *A) {
          const Tup& T = kv.first;
          add(Tup(T.begin() + 2, T.end()),
              slot_series(T[0], false) * slot_series(T[1], true) * rp.tbarp * kv.second);
        }
      }

      for (long mask = 0; mask < (1L << m); mask++) {
        std::vector<int> I, J;
        for (int i = 0; i < m; i++) ((mask >> i) & 1 ? I : J).push_back(i);
        auto place = [&](const Tup& TI, const Tup& TJ) {
          Tup r((size_t)m);
          for (size_t i = 0; i < I.size(); i++) r[I[i]] = TI[i];
          for (size_t j = 0; j < J.size(); j++) r[J[j]] = TJ[j];
          return r;
        };
        auto tail = [](const Tup& T) { return Tup(T.begin() + 1, T.end()); };
        for (long g1 = 0; g1 <= g; g1++) {
          long g2 = g - g1;
          long nI = (long)I.size(), nJ = (long)J.size();
          if (g1 == 0 && nI == 0) continue;
          if (g2 == 0 && nJ == 0) continue;
          bool bL = (g1 == 0 && nI == 1), bR = (g2 == 0 && nJ == 1);
          if (!bL && !bR) {
            for (auto& kv1 : memo_.at({g1, nI + 1}))
              for (auto& kv2 : memo_.at({g2, nJ + 1}))
                add(place(tail(kv1.first), tail(kv2.first)),
                    slot_series(kv1.first[0], false) * slot_series(kv2.first[0], true) *
                        rp.tbarp * (kv1.second * kv2.second));
          } else if (bL && !bR) {
            for (long j1 = 0; j1 <= jatt; j1++)
              for (auto& kv2 : memo_.at({g2, nJ + 1}))
                add(place({Slot{a, j1 + 2}}, tail(kv2.first)),
                    Series<F>::t_power(j1, B) * slot_series(kv2.first[0], true) * rp.tbarp *
                        (kv2.second * FT<F>::from_long(j1 + 1)));
          } else if (!bL && bR) {
            for (auto& kv1 : memo_.at({g1, nI + 1}))
              for (long j2 = 0; j2 <= jatt; j2++)
                add(place(tail(kv1.first), {Slot{a, j2 + 2}}),
                    slot_series(kv1.first[0], false) * tbp[j2] * rp.tbarp *
                        (kv1.second * FT<F>::from_long(j2 + 1)));
          } else {
            for (long j1 = 0; j1 <= jatt; j1++)
              for (long j2 = 0; j2 <= jatt; j2++)
                add(place({Slot{a, j1 + 2}}, {Slot{a, j2 + 2}}),
                    Series<F>::t_power(j1, B) * tbp[j2] * rp.tbarp *
                        FT<F>::from_long((j1 + 1) * (j2 + 1)));
          }
        }
      }

      for (long j = 1; j <= jout; j++) {
        Series<F> Rj = (tbp[j] - Series<F>::t_power(j, B + j)) * rp.Dinv;
        for (auto& bv : bucket) {
          if (bv.second.known_zero()) continue;
          F r = (bv.second * Rj).residue();
          bool over = j + 1 > Kb;
          for (auto& f : bv.first) over = over || f.second > Kb;
          if (over) {
            check(FT<F>::small(r), Err::IdentityViolation,
                  "reference pole order bound exceeded");
            continue;
          }
          if (FT<F>::small(r)) continue;
          Tup key;
          key.reserve((size_t)n);
          key.push_back(Slot{a, j + 1});
          key.insert(key.end(), bv.first.begin(), bv.first.end());
          auto [it, fresh] = out.emplace(std::move(key), r);
          if (!fresh) it->second = it->second + r;
        }
      }
    }
    return out;
  }
};

}  // namespace tr
