#include "tr/recursion.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <set>

namespace tr {

bool& kernel_sign_flip() {
  static bool v = false;
  return v;
}

std::string key_str(const Key& k) {
  std::string s = "[";
  for (size_t i = 0; i < k.size(); i++) {
    if (i) s += ",";
    s += "(" + std::to_string(k[i].first) + "," + std::to_string(k[i].second) + ")";
  }
  return s + "]";
}

namespace {

Key with_slot(Key r, Slot f) {
  r.insert(std::upper_bound(r.begin(), r.end(), f), f);
  return r;
}

Key without_one(const Key& k, const Slot& f) {
  Key r = k;
  r.erase(std::find(r.begin(), r.end(), f));
  return r;
}

Key merge_keys(const Key& a, const Key& b) {
  Key r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

std::vector<Slot> distinct_slots(const Key& k) {
  std::vector<Slot> d;
  for (auto& f : k)
    if (d.empty() || !(d.back() == f)) d.push_back(f);
  return d;
}

long mult_of(const Key& k, const Slot& f) { return std::count(k.begin(), k.end(), f); }

long binom(long a, long b) {
  if (b < 0 || b > a) return 0;
  long r = 1;
  for (long i = 1; i <= b; i++) r = r * (a - b + i) / i;
  return r;
}

// number of ways a fixed value assignment of E splits into the two factors'
// rest sets, the left one carrying the multiset `left`
long split_weight(const Key& E, const Key& left) {
  long w = 1;
  for (size_t i = 0; i < left.size();) {
    size_t j = i;
    while (j < left.size() && left[j] == left[i]) j++;
    w *= binom(mult_of(E, left[i]), (long)(j - i));
    i = j;
  }
  return w;
}

// slot series caches at one ramification point
template <class F>
struct Bank {
  long B = 0;
  Series<F> t1, tbar, tbarp;
  std::vector<Series<F>> tpow, tbpow;  // t^j, tbar^j
  std::vector<Series<F>> Rj;           // (tbar^j - t^j) / D(t)
  std::map<Slot, Series<F>> s, sb;     // child slot series at p and at pbar
};

template <class F>
Bank<F> build_bank(const SpectralCurve<F>& cur, int alpha, const std::set<Slot>& slots,
                   long jmax) {
  const auto& rams = cur.ram();
  const RamPoint<F>& rp = rams[alpha];
  Bank<F> b;
  b.B = rp.tbar.bound;
  b.t1 = Series<F>::t_power(1, b.B);
  b.tbar = rp.tbar;
  b.tbarp = rp.tbarp;
  b.tpow.push_back(Series<F>::t_power(0, b.B));
  b.tbpow.push_back(Series<F>::t_power(0, b.B));
  for (long j = 1; j <= jmax; j++) {
    b.tpow.push_back(Series<F>::t_power(j, b.B + j));
    b.tbpow.push_back(b.tbpow.back() * b.tbar);
  }
  bool flip = kernel_sign_flip();
  for (long j = 0; j <= jmax; j++) {
    Series<F> rj = (b.tbpow[j] - b.tpow[j]) * rp.Dinv;
    b.Rj.push_back(flip ? -rj : rj);
  }
  Series<F> tbinv = b.tbar.inverse();
  std::vector<Series<F>> tbinv_pow{Series<F>::t_power(0, b.B), tbinv};
  std::map<int, std::vector<Series<F>>> spow, sbpow;  // cross-point bases, by beta
  for (auto& f : slots) {
    int beta = f.first;
    long k = f.second;
    if (beta == alpha) {
      b.s.emplace(f, Series<F>::t_power(-k, b.B));
      while ((long)tbinv_pow.size() <= k) tbinv_pow.push_back(tbinv_pow.back() * tbinv);
      b.sb.emplace(f, tbinv_pow[k]);
    } else {
      auto& sp = spow[beta];
      auto& sbp = sbpow[beta];
      if (sp.empty()) {
        F d = rp.a - rams[beta].a;
        sp = {Series<F>::t_power(0, b.B), (Series<F>::constant(d, b.B) + b.t1).inverse()};
        sbp = {Series<F>::t_power(0, b.B), (Series<F>::constant(d, b.B) + b.tbar).inverse()};
      }
      while ((long)sp.size() <= k) sp.push_back(sp.back() * sp[1]);
      while ((long)sbp.size() <= k) sbp.push_back(sbp.back() * sbp[1]);
      b.s.emplace(f, sp[k]);
      b.sb.emplace(f, sbp[k]);
    }
  }
  return b;
}

}  // namespace

template <class F>
const MeroForm<F>& OmegaTable<F>::omega(long g, long n) {
  check(g >= 0 && n >= 1, Err::ConfigError, "invalid correlator indices");
  check(2 * g - 2 + n > 0, Err::UnstablePair,
        "omega_{" + std::to_string(g) + "," + std::to_string(n) + "} is initial data");
  auto it = memo_.find({g, n});
  if (it != memo_.end()) return it->second;
  MeroForm<F> w = compute(g, n);
  return memo_.emplace(std::pair<long, long>{g, n}, std::move(w)).first->second;
}

template <class F>
MeroForm<F> OmegaTable<F>::compute(long g, long n) {
  long K = 2 * (3 * g - 3 + n) + 12 + extra_;
  try {
    return compute_at(g, n, K);
  } catch (const Error& e) {
    if (e.code() != Err::TruncationTooShort) throw;
  }
  return compute_at(g, n, 2 * K);
}

template <class F>
MeroForm<F> OmegaTable<F>::compute_at(long g, long n, long K) {
  long Kb = pole_bound(g, n);
  long jatt = Kb;      // Bergman attachments carry slot orders up to Kb + 2
  long jout = Kb + 1;  // residues probe output orders through Kb + 2

  // children first, so ensure_ram ends at this level's K
  const MeroForm<F>* A = nullptr;
  if (g >= 1 && !(g == 1 && n == 1)) A = &omega(g - 1, n + 1);
  std::vector<std::pair<const MeroForm<F>*, const MeroForm<F>*>> splits;
  for (long g1 = 0; g1 <= g; g1++)
    for (long m1 = 0; m1 <= n - 1; m1++) {
      long g2 = g - g1, m2 = (n - 1) - m1;
      if (g1 == 0 && m1 == 0) continue;  // omega_{0,1} = 0
      if (g2 == 0 && m2 == 0) continue;
      const MeroForm<F>* L = (g1 == 0 && m1 == 1) ? nullptr : &omega(g1, m1 + 1);
      const MeroForm<F>* Rr = (g2 == 0 && m2 == 1) ? nullptr : &omega(g2, m2 + 1);
      splits.emplace_back(L, Rr);  // nullptr marks a Bergman factor
    }

  cur_.ensure_ram(K);
  const auto& rams = cur_.ram();
  int R = (int)rams.size();

  std::set<Slot> needed;
  auto note = [&needed](const MeroForm<F>* f) {
    if (!f) return;
    for (auto& kv : f->c)
      for (auto& sl : kv.first) needed.insert(sl);
  };
  note(A);
  for (auto& pr : splits) {
    note(pr.first);
    note(pr.second);
  }

  std::vector<Bank<F>> banks;
  banks.reserve(R);
  for (int a = 0; a < R; a++) banks.push_back(build_bank(cur_, a, needed, jout));

  // contribution tasks in a fixed order; outputs are merged in task order so
  // the result does not depend on the thread count
  struct Contrib {
    Key rest;
    Series<F> ser;
  };
  std::vector<std::function<std::vector<Contrib>()>> tasks;
  std::vector<int> task_alpha;
  auto push_task = [&](int a, std::function<std::vector<Contrib>()> fn) {
    tasks.push_back(std::move(fn));
    task_alpha.push_back(a);
  };

  for (int a = 0; a < R; a++) {
    const Bank<F>* bk = &banks[a];
    if (g == 1 && n == 1) {
      // the single-child term degenerates to the Bergman kernel B(p, pbar)
      push_task(a, [bk]() {
        Series<F> d = bk->t1 - bk->tbar;
        return std::vector<Contrib>{{Key{}, bk->tbarp * (d * d).inverse()}};
      });
    }
    if (A) {
      for (auto& kv : A->c) {
        const Key* mc = &kv.first;
        const F* cc = &kv.second;
        push_task(a, [bk, mc, cc]() {
          std::vector<Contrib> out;
          std::vector<Slot> D = distinct_slots(*mc);
          for (size_t x = 0; x < D.size(); x++)
            for (size_t y = x; y < D.size(); y++) {
              if (x == y && mult_of(*mc, D[x]) < 2) continue;
              Key rest = without_one(without_one(*mc, D[x]), D[y]);
              Series<F> ser = bk->s.at(D[x]) * bk->sb.at(D[y]);
              if (x != y) ser = ser + bk->s.at(D[y]) * bk->sb.at(D[x]);
              out.push_back({std::move(rest), ser * bk->tbarp * (*cc)});
            }
          return out;
        });
      }
    }
    for (auto& pr : splits) {
      const MeroForm<F>* L = pr.first;
      const MeroForm<F>* Rr = pr.second;
      if (L && Rr) {
        for (auto& kv1 : L->c)
          for (auto& kv2 : Rr->c) {
            const Key* m1 = &kv1.first;
            const F* c1 = &kv1.second;
            const Key* m2 = &kv2.first;
            const F* c2 = &kv2.second;
            push_task(a, [bk, m1, c1, m2, c2]() {
              std::vector<Contrib> out;
              for (auto& f1 : distinct_slots(*m1))
                for (auto& f2 : distinct_slots(*m2)) {
                  Key r1 = without_one(*m1, f1);
                  Key E = merge_keys(r1, without_one(*m2, f2));
                  F w = FT<F>::from_long(split_weight(E, r1)) * (*c1) * (*c2);
                  out.push_back({std::move(E), bk->s.at(f1) * bk->sb.at(f2) * bk->tbarp * w});
                }
              return out;
            });
          }
      } else if (L && !Rr) {
        for (auto& kv1 : L->c) {
          const Key* m1 = &kv1.first;
          const F* c1 = &kv1.second;
          push_task(a, [bk, m1, c1, a, jatt]() {
            std::vector<Contrib> out;
            for (auto& f1 : distinct_slots(*m1)) {
              Key r1 = without_one(*m1, f1);
              for (long j2 = 0; j2 <= jatt; j2++) {
                Key E = with_slot(r1, Slot{a, j2 + 2});
                F w = FT<F>::from_long((j2 + 1) * split_weight(E, r1)) * (*c1);
                out.push_back({std::move(E), bk->s.at(f1) * bk->tbpow[j2] * bk->tbarp * w});
              }
            }
            return out;
          });
        }
      } else if (!L && Rr) {
        for (auto& kv2 : Rr->c) {
          const Key* m2 = &kv2.first;
          const F* c2 = &kv2.second;
          push_task(a, [bk, m2, c2, a, jatt]() {
            std::vector<Contrib> out;
            for (long j1 = 0; j1 <= jatt; j1++) {
              Key r1{Slot{a, j1 + 2}};
              for (auto& f2 : distinct_slots(*m2)) {
                Key E = merge_keys(r1, without_one(*m2, f2));
                F w = FT<F>::from_long((j1 + 1) * split_weight(E, r1)) * (*c2);
                out.push_back({std::move(E), bk->tpow[j1] * bk->sb.at(f2) * bk->tbarp * w});
              }
            }
            return out;
          });
        }
      } else {
        push_task(a, [bk, a, jatt]() {
          std::vector<Contrib> out;
          for (long j1 = 0; j1 <= jatt; j1++)
            for (long j2 = 0; j2 <= jatt; j2++) {
              Key r1{Slot{a, j1 + 2}};
              Key E = with_slot(r1, Slot{a, j2 + 2});
              F w = FT<F>::from_long((j1 + 1) * (j2 + 1) * split_weight(E, r1));
              out.push_back({std::move(E), bk->tpow[j1] * bk->tbpow[j2] * bk->tbarp * w});
            }
          return out;
        });
      }
    }
  }

  std::vector<std::vector<Contrib>> outs(tasks.size());
  std::exception_ptr eptr;
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < tasks.size(); i++) {
    try {
      outs[i] = tasks[i]();
    } catch (...) {
#pragma omp critical
      if (!eptr) eptr = std::current_exception();
    }
  }
  if (eptr) std::rethrow_exception(eptr);

  std::vector<std::map<Key, Series<F>>> buckets((size_t)R);
  for (size_t i = 0; i < outs.size(); i++)
    for (auto& cb : outs[i]) {
      auto& bucket = buckets[task_alpha[i]];
      auto it = bucket.find(cb.rest);
      if (it == bucket.end())
        bucket.emplace(std::move(cb.rest), std::move(cb.ser));
      else
        it->second = it->second + cb.ser;
    }

  // residues against the kernel columns; candidate per (key, variable slot)
  std::map<Key, std::map<Slot, F>> cand;
  for (int a = 0; a < R; a++)
    for (auto& bv : buckets[a]) {
      const Series<F>& S = bv.second;
      if (S.known_zero()) continue;
      for (long j = 1; j <= jout; j++) {
        Slot f{a, j + 1};
        cand[with_slot(bv.first, f)][f] = (S * banks[a].Rj[j]).residue();
      }
    }

  MeroForm<F> out;
  out.g = g;
  out.n = n;
  for (auto& kv : cand) {
    const Key& M = kv.first;
    bool over = false;
    for (auto& f : M) over = over || f.second > Kb;
    if (over) {
      // beyond the pole-order bound every designated residue must vanish
      for (auto& sv : kv.second)
        check(FT<F>::small(sv.second), Err::IdentityViolation,
              "pole order bound exceeded at key " + key_str(M));
      continue;
    }
    Slot fstar = M.back();
    auto it = kv.second.find(fstar);
    F c0 = it == kv.second.end() ? FT<F>::zero() : it->second;
    for (auto& f : distinct_slots(M)) {
      auto jt = kv.second.find(f);
      F v = jt == kv.second.end() ? FT<F>::zero() : jt->second;
      check(FT<F>::small(v - c0), Err::IdentityViolation,
            "correlator not symmetric at key " + key_str(M));
    }
    if (!FT<F>::small(c0)) out.c.emplace(M, c0);
  }

  // local parity: the principal part in any one variable cancels against its
  // deck pullback, which also forces zero residues at every ramification point
  for (int a = 0; a < R; a++) {
    std::map<Key, Series<F>> prin;
    for (auto& kv : out.c)
      for (auto& f : distinct_slots(kv.first)) {
        if (f.first != a) continue;
        Key rest = without_one(kv.first, f);
        Series<F> part = Series<F>::t_power(-f.second, banks[a].B) * kv.second;
        auto it = prin.find(rest);
        if (it == prin.end())
          prin.emplace(std::move(rest), std::move(part));
        else
          it->second = it->second + part;
      }
    for (auto& pv : prin) {
      Series<F> Q = pv.second + pv.second.compose(banks[a].tbar) * banks[a].tbarp;
      for (size_t i = 0; i < Q.c.size() && Q.val + (long)i <= -1; i++)
        check(FT<F>::small(Q.c[i]), Err::IdentityViolation,
              "principal part fails the deck parity property");
    }
  }
  return out;
}

template <class F>
F OmegaTable<F>::free_energy(long g) {
  check(g >= 2, Err::GenusTooLow, "closed free energy needs genus >= 2");
  const MeroForm<F>& w = omega(g, 1);
  const auto& rams = cur_.ram();
  F total = FT<F>::zero();
  for (int a = 0; a < (int)rams.size(); a++) {
    const RamPoint<F>& rp = rams[a];
    long B = rp.ys.bound;
    Series<F> PP = Series<F>::zero(B);
    for (auto& kv : w.c)
      if (kv.first[0].first == a)
        PP = PP + Series<F>::t_power(-kv.first[0].second, B) * kv.second;
    if (PP.known_zero()) continue;
    // no residue against x^ itself: the potential's constant term (and in
    // particular log Y(a)) cannot enter, keeping the value in the base field
    check(FT<F>::small((PP * rp.Fz).residue()), Err::IdentityViolation,
          "free energy residue against x^ does not vanish");
    Series<F> psi = (rp.ys * rp.Fz.derivative()).integrate();
    total = total + (PP * psi).residue();
  }
  return total / FT<F>::from_long(2 * g - 2);
}

template class OmegaTable<Rat>;
template class OmegaTable<CNum>;

}  // namespace tr
