#include "tr/potentials.hpp"

#include <algorithm>
#include <functional>

#include "tr/bivar.hpp"

namespace tr {

namespace {

template <class F>
F spow(const F& b, long e) {
  F r = FT<F>::one();
  for (long i = 0; i < (e < 0 ? -e : e); i++) r = r * b;
  if (e < 0) r = FT<F>::one() / r;
  return r;
}

// Gamma(m + 1/2) / sqrt(pi), continued to negative m
Rat gamma_half_ratio(long m) {
  Rat r(1);
  if (m >= 0)
    for (long j = 1; j <= m; j++) r *= Rat(2 * j - 1, 2);
  else
    for (long j = m; j <= -1; j++) r = r * 2 / (2 * j + 1);
  return r;
}

template <class F>
const Puncture<F>& brane_puncture(const SpectralCurve<F>& c, long ell) {
  check(!c.brane.empty(), Err::ConfigError, "no brane edge configured");
  check(ell >= 0 && ell < (long)c.brane.size(), Err::ConfigError,
        "branch index out of range");
  return c.punctures[c.brane[ell]];
}

template <class F>
Series<F> spow_series(const Series<F>& b, long e) {
  Series<F> r = b;
  for (long i = 1; i < e; i++) r = r * b;
  return r;
}

template <class F>
BiSeries<F> in_w1(const Series<F>& s, long cap) {
  BiSeries<F> b(cap);
  for (long e = std::max<long>(0, s.val); e < s.bound && e < cap; e++) b.add(e, 0, s.coeff(e));
  return b;
}

template <class F>
BiSeries<F> in_w2(const Series<F>& s, long cap) {
  BiSeries<F> b(cap);
  for (long e = std::max<long>(0, s.val); e < s.bound && e < cap; e++) b.add(0, e, s.coeff(e));
  return b;
}

template <class F>
BiSeries<F> recap(const BiSeries<F>& a, long cap) {
  BiSeries<F> b(cap);
  for (auto& [k, v] : a.c) b.add(k.first, k.second, v);
  return b;
}

// branch difference of log Y along the brane chart, as a series in the
// boundary variable
template <class F>
Series<F> disk_logdiff(const SpectralCurve<F>& c, const Puncture<F>& p, long D) {
  check(p.ordY == 0, Err::BranchMismatch,
        "Y is singular at the brane puncture, branch tags cannot match");
  Series<F> rho = c.brane_rho(p, D + 2);
  Series<F> ys = c.puncture_series(p, c.Y, D + 2);
  F y0 = ys.coeff(0);
  check(!FT<F>::small(y0), Err::BranchMismatch, "Y vanishes at the brane puncture");
  return (ys.compose(rho) * (FT<F>::one() / y0)).log1();
}

// coincident-branch annulus integrand with the double pole subtracted and
// the diagonal divided out twice; capped so integration stays within D
template <class F>
BiSeries<F> annulus_coincident_q(const SpectralCurve<F>& c, const Puncture<F>& p, long D,
                                 std::vector<F>* res) {
  Series<F> rho = c.brane_rho(p, D + 2);
  long big = 2 * D + 1;
  BiSeries<F> S(big);
  for (long k = 1; k <= D + 1; k++) {
    F rk = rho.coeff(k);
    if (FT<F>::is_zero(rk)) continue;
    for (long i = 0; i < k; i++) S.add(i, k - 1 - i, rk);
  }
  Series<F> dr = rho.derivative();
  BiSeries<F> SS = S * S;
  BiSeries<F> N = in_w1(dr, big) * in_w2(dr, big) - SS;
  BiSeries<F> Q = N.divide_diagonal(res).divide_diagonal(res);
  long cap = D - 1;  // integrating lifts total degree by two
  return recap(Q, cap) * recap(SS, cap).inverse();
}

// Bergman kernel pulled back to two distinct brane charts
template <class F>
BiSeries<F> annulus_distinct_a(const SpectralCurve<F>& c, const Puncture<F>& pa,
                               const Puncture<F>& pb, long D) {
  long cap = D - 1;
  Series<F> ra = c.brane_rho(pa, D + 2), rb = c.brane_rho(pb, D + 2);
  BiSeries<F> dra = in_w1(ra.derivative(), cap), drb = in_w2(rb.derivative(), cap);
  if (!pa.at_inf && !pb.at_inf) {
    Series<F> ga = Series<F>::constant(pa.z0, ra.bound) + ra;
    Series<F> gb = Series<F>::constant(pb.z0, rb.bound) + rb;
    BiSeries<F> den = in_w1(ga, cap) - in_w2(gb, cap);
    return dra * drb * (den * den).inverse();
  }
  // one chart at infinity: z = 1/u turns the kernel into -u' r' / (1 - u(z+r))^2
  bool swap = pb.at_inf;
  const Series<F>& u = swap ? rb : ra;
  Series<F> gf = swap ? Series<F>::constant(pa.z0, ra.bound) + ra
                      : Series<F>::constant(pb.z0, rb.bound) + rb;
  BiSeries<F> prod = swap ? in_w1(gf, cap) * in_w2(u, cap) : in_w1(u, cap) * in_w2(gf, cap);
  BiSeries<F> one(cap);
  one.add(0, 0, FT<F>::one());
  BiSeries<F> den = one - prod;
  BiSeries<F> A = dra * drb * (den * den).inverse();
  for (auto& [k, v] : A.c) v = -v;
  return A;
}

template <class F>
void integrate_bi(const BiSeries<F>& a, long D, std::map<std::vector<long>, F>& out) {
  for (auto& [k, v] : a.c) {
    long d1 = k.first + 1, d2 = k.second + 1;
    if (d1 + d2 > D) continue;
    F cv = v / FT<F>::from_long(d1 * d2);
    if (!FT<F>::small(cv)) out.emplace(std::vector<long>{d1, d2}, cv);
  }
}

// one-form xi_{alpha,k} dz pulled back to a brane chart
template <class F>
Series<F> pull_slot(const Puncture<F>& p, const Series<F>& rho, const F& a, long k) {
  if (!p.at_inf) {
    Series<F> base = Series<F>::constant(p.z0 - a, rho.bound) + rho;
    return spow_series(base.inverse(), k) * rho.derivative();
  }
  Series<F> lin = Series<F>::constant(FT<F>::one(), rho.bound) - rho * a;
  Series<F> pw = spow_series(lin.inverse(), k);
  if (k > 2) pw = pw * spow_series(rho, k - 2);
  return -(pw * rho.derivative());
}

}  // namespace

Rat gaussian_moment(long j) {
  if (j % 2 != 0) return Rat(0);
  return gamma_half_ratio(j / 2);
}

template <class F>
OpenPotential<F> disk_potential(const SpectralCurve<F>& c, long D) {
  check(D >= 1, Err::ConfigError, "degree must be positive");
  OpenPotential<F> out;
  out.g = 0;
  out.n = 1;
  out.degree = D;
  check(!c.brane.empty(), Err::ConfigError, "no brane edge configured");
  for (long ell = 0; ell < (long)c.brane.size(); ell++) {
    Series<F> lg = disk_logdiff(c, brane_puncture(c, ell), D);
    std::map<std::vector<long>, F> ser;
    for (long d = 1; d <= D; d++) {
      F cd = lg.coeff(d) / FT<F>::from_long(d);
      if (!FT<F>::small(cd)) ser.emplace(std::vector<long>{d}, cd);
    }
    out.comp.emplace(std::vector<long>{ell}, std::move(ser));
  }
  return out;
}

template <class F>
std::vector<F> annulus_diagonal(const SpectralCurve<F>& c, long ell, long D) {
  std::vector<F> res;
  annulus_coincident_q(c, brane_puncture(c, ell), D, &res);
  return res;
}

template <class F>
OpenPotential<F> annulus_potential(const SpectralCurve<F>& c, long D) {
  check(D >= 2, Err::ConfigError, "annulus needs degree >= 2");
  OpenPotential<F> out;
  out.g = 0;
  out.n = 2;
  out.degree = D;
  check(!c.brane.empty(), Err::ConfigError, "no brane edge configured");
  long m = (long)c.brane.size();
  for (long la = 0; la < m; la++)
    for (long lb = 0; lb < m; lb++) {
      std::vector<F>* nores = nullptr;
      BiSeries<F> A =
          la == lb ? annulus_coincident_q(c, brane_puncture(c, la), D, nores)
                   : annulus_distinct_a(c, brane_puncture(c, la), brane_puncture(c, lb), D);
      std::map<std::vector<long>, F> ser;
      integrate_bi(A, D, ser);
      out.comp.emplace(std::vector<long>{la, lb}, std::move(ser));
    }
  return out;
}

template <class F>
OpenPotential<F> open_potential(OmegaTable<F>& t, long g, long n, long D) {
  check(D >= 1, Err::ConfigError, "degree must be positive");
  const MeroForm<F>& W = t.omega(g, n);
  SpectralCurve<F>& c = t.curve();
  check(!c.brane.empty(), Err::ConfigError, "no brane edge configured");
  long m = (long)c.brane.size();
  const auto& rams = c.ram();

  std::vector<Series<F>> rhos;
  for (long ell = 0; ell < m; ell++) rhos.push_back(c.brane_rho(brane_puncture(c, ell), D + 2));
  std::map<std::pair<long, Slot>, Series<F>> pulls;
  for (auto& kv : W.c)
    for (auto& f : kv.first)
      for (long ell = 0; ell < m; ell++) {
        auto key = std::pair<long, Slot>{ell, f};
        if (!pulls.count(key))
          pulls.emplace(key, pull_slot(brane_puncture(c, ell), rhos[ell],
                                       rams[f.first].a, f.second));
      }

  OpenPotential<F> out;
  out.g = g;
  out.n = n;
  out.degree = D;
  std::vector<long> comp((size_t)n, 0);
  while (true) {
    std::map<std::vector<long>, F> acc;
    for (auto& kv : W.c) {
      Key arr = kv.first;
      do {
        std::vector<long> exps((size_t)n, 0);
        std::function<void(long, long, const F&)> rec = [&](long i, long budget, const F& prod) {
          if (i == n) {
            auto it = acc.find(exps);
            if (it == acc.end())
              acc.emplace(exps, prod);
            else
              it->second = it->second + prod;
            return;
          }
          const Series<F>& s = pulls.at({comp[i], arr[i]});
          for (long e = std::max<long>(0, s.val); e <= budget - (n - 1 - i) && e < s.bound; e++) {
            F ce = s.coeff(e);
            if (FT<F>::is_zero(ce)) continue;
            exps[i] = e;
            rec(i + 1, budget - e - 1, prod * ce);
          }
        };
        rec(0, D - n, kv.second);
      } while (std::next_permutation(arr.begin(), arr.end()));
    }
    std::map<std::vector<long>, F> ser;
    for (auto& av : acc) {
      std::vector<long> d = av.first;
      long denom = 1;
      for (auto& e : d) {
        e += 1;
        denom *= e;
      }
      F cv = av.second / FT<F>::from_long(denom);
      if (!FT<F>::small(cv)) ser.emplace(std::move(d), cv);
    }
    out.comp.emplace(comp, std::move(ser));
    long i = n - 1;
    while (i >= 0 && comp[i] == m - 1) comp[i--] = 0;
    if (i < 0) break;
    comp[i]++;
  }
  return out;
}

template <class F>
PeriodData<F> a_period(const SpectralCurve<F>& c, long puncture_index) {
  check(puncture_index >= 0 && puncture_index < (long)c.punctures.size(), Err::ConfigError,
        "puncture index out of range");
  const Puncture<F>& p = c.punctures[puncture_index];
  check(p.mult == 1, Err::NonIsolatedPuncture,
        "puncture carries multiplicity > 1, its loop is not a single cycle");
  PeriodData<F> out;
  out.puncture = p.at_inf ? "inf" : FT<F>::str(p.z0);
  out.ord_xhat = p.ord_xhat;
  out.ord_y = p.ordY;
  out.monodromy = p.ordY * p.ord_xhat;
  long B = 10;
  Series<F> ys = c.puncture_series(p, c.Y, B);
  check(ys.val == p.ordY, Err::IdentityViolation, "Y valuation disagrees with puncture data");
  out.y_lead = ys.coeff(ys.val);
  Series<F> unit = ys * Series<F>::t_power(-p.ordY, B) * (FT<F>::one() / out.y_lead);
  Series<F> xh = c.puncture_series(p, c.Xhat, B + 2);
  Series<F> dlog = xh.derivative() * xh.inverse();
  out.residue = (unit.log1() * dlog).residue();
  return out;
}

template <class F>
LaplaceSeries<F> laplace_transform(OmegaTable<F>& t, long g, long n, long orders) {
  check(orders >= 1, Err::ConfigError, "orders must be positive");
  const MeroForm<F>& W = t.omega(g, n);
  const auto& rams = t.curve().ram();
  LaplaceSeries<F> out;
  out.g = g;
  out.n = n;
  for (auto& r : rams) {
    out.u.push_back(r.xhat_a);
    out.s2.push_back(r.c2);
  }

  // ascending even Gaussian moments of each slot form, taken in the odd
  // canonical coordinate; entries pair the half-integer exponent's numerator
  // with an exact coefficient
  std::map<Slot, std::vector<std::pair<long, F>>> mom;
  for (auto& kv : W.c)
    for (auto& f : kv.first)
      if (!mom.count(f)) {
        const RamPoint<F>& rp = rams[f.first];
        Series<F> ser = spow_series(rp.eta_inv.inverse(), f.second) * rp.eta_inv.derivative();
        check(FT<F>::small(ser.residue()), Err::IdentityViolation,
              "transform of a form with nonzero residue at the critical point");
        std::vector<std::pair<long, F>> entries;
        long e = -f.second;
        if (e % 2 != 0) e++;
        for (long got = 0; got < orders; got++, e += 2) {
          check(e < ser.bound, Err::OddTruncation,
                "requested moment order exceeds the stored expansion");
          long mm = e / 2;
          F coef = ser.coeff(e) * FT<F>::from_rat(gaussian_moment(e)) * spow(rp.c2, -mm);
          entries.emplace_back(2 * mm + 1, coef);
        }
        mom.emplace(f, std::move(entries));
      }

  for (auto& kv : W.c) {
    Key arr = kv.first;
    std::map<std::vector<std::pair<int, long>>, F> acc;
    do {
      std::vector<std::pair<int, long>> lab((size_t)n);
      std::function<void(long, const F&)> rec = [&](long i, const F& prod) {
        if (i == n) {
          auto it = acc.find(lab);
          if (it == acc.end())
            acc.emplace(lab, prod);
          else
            it->second = it->second + prod;
          return;
        }
        for (auto& en : mom.at(arr[i])) {
          if (FT<F>::is_zero(en.second)) continue;
          lab[i] = {arr[i].first, en.first};
          rec(i + 1, prod * en.second);
        }
      };
      rec(0, kv.second);
    } while (std::next_permutation(arr.begin(), arr.end()));
    for (auto& av : acc) {
      if (!std::is_sorted(av.first.begin(), av.first.end())) continue;
      auto it = out.c.find(av.first);
      if (it == out.c.end())
        out.c.emplace(av.first, av.second);
      else
        it->second = it->second + av.second;
    }
  }
  for (auto it = out.c.begin(); it != out.c.end();)
    it = FT<F>::small(it->second) ? out.c.erase(it) : std::next(it);
  return out;
}

#define TR_POT_INST(F)                                                           \
  template OpenPotential<F> disk_potential<F>(const SpectralCurve<F>&, long);    \
  template OpenPotential<F> annulus_potential<F>(const SpectralCurve<F>&, long); \
  template std::vector<F> annulus_diagonal<F>(const SpectralCurve<F>&, long, long); \
  template OpenPotential<F> open_potential<F>(OmegaTable<F>&, long, long, long); \
  template PeriodData<F> a_period<F>(const SpectralCurve<F>&, long);             \
  template LaplaceSeries<F> laplace_transform<F>(OmegaTable<F>&, long, long, long);

TR_POT_INST(Rat)
TR_POT_INST(CNum)

}  // namespace tr
