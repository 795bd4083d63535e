#include "tr/curve.hpp"

#include <algorithm>
#include <numeric>

#include "tr/roots.hpp"

namespace tr {

namespace {

RatFun<Rat> ratpow(const RatFun<Rat>& f, long e) {
  RatFun<Rat> r = RatFun<Rat>::constant(Rat(1));
  RatFun<Rat> b = e < 0 ? RatFun<Rat>(f.den, f.num) : f;
  for (long k = std::abs(e); k > 0; k--) r = r * b;
  return r;
}

template <class F>
bool near_zero(const F& v) {
  return FT<F>::small(v);
}

// series must agree with zero through its bound
template <class F>
void assert_small(const Series<F>& s, Err code, const char* what) {
  for (auto& c : s.c)
    check(FT<F>::small(c), code, std::string(what));
}

}  // namespace

Parametrized parametrize(const MirrorPolynomial& H) {
  long m0 = 0, m1 = 0, n0 = 0, n1 = 0;
  bool first = true;
  for (auto& [pt, c] : H.terms) {
    if (first) {
      m0 = m1 = pt.x;
      n0 = n1 = pt.y;
      first = false;
      continue;
    }
    m0 = std::min(m0, pt.x), m1 = std::max(m1, pt.x);
    n0 = std::min(n0, pt.y), n1 = std::max(n1, pt.y);
  }
  check(!first, Err::ZeroPolynomial, "empty mirror polynomial");

  auto linear_solve = [&](bool swap_xy) {
    // write X^{-m0}Y^{-n0} H = A(v) + B(v) w with v the kept variable
    Poly<Rat> A, B;
    for (auto& [pt, c] : H.terms) {
      long vm = swap_xy ? pt.y - n0 : pt.x - m0;
      long wm = swap_xy ? pt.x - m0 : pt.y - n0;
      Poly<Rat>& dst = (wm == 0) ? A : B;
      std::vector<Rat> mono(vm + 1, Rat(0));
      mono[vm] = c;
      dst = dst + Poly<Rat>(std::move(mono));
    }
    check(!B.is_zero(), Err::NotLinear, "mirror polynomial independent of one variable");
    RatFun<Rat> v = RatFun<Rat>::var();
    RatFun<Rat> w(-A, B);
    Parametrized out;
    out.X = swap_xy ? w : v;
    out.Y = swap_xy ? v : w;
    // H(X(z), Y(z)) must vanish identically
    RatFun<Rat> acc;
    for (auto& [pt, c] : H.terms)
      acc = acc + RatFun<Rat>::constant(c) * ratpow(out.X, pt.x - m0) * ratpow(out.Y, pt.y - n0);
    check(acc.num.is_zero(), Err::IdentityViolation, "parametrization does not satisfy H = 0");
    return out;
  };

  if (n1 - n0 <= 1) return linear_solve(false);
  if (m1 - m0 <= 1) return linear_solve(true);
  fail(Err::NotLinear, "mirror polynomial has degree > 1 in both X and Y");
}

template <class F>
SpectralCurve<F> SpectralCurve<F>::from_mirror(const ToricDiagram& d, const MirrorPolynomial& H,
                                               long framing,
                                               std::optional<std::array<Pt, 2>> brane_edge) {
  SpectralCurve<F> c;
  c.multiplicative = true;
  c.framing = framing;
  c.has_diagram = true;
  c.diagram = d;
  c.cts = counts(d);
  check(c.cts.fg == 0, Err::NotGenusZero,
        "diagram has " + std::to_string(c.cts.fg) + " interior points");
  Parametrized par = parametrize(H);
  c.X = ratfun_cast<F>(par.X);
  c.Y = ratfun_cast<F>(par.Y);
  RatFun<Rat> xh = par.X * ratpow(par.Y, framing);
  c.Xhat = ratfun_cast<F>(xh);
  c.build_punctures(brane_edge);
  return c;
}

template <class F>
SpectralCurve<F> SpectralCurve<F>::from_parametrization(const RatFun<Rat>& X,
                                                        const RatFun<Rat>& Y, bool additive) {
  SpectralCurve<F> c;
  c.multiplicative = !additive;
  c.framing = 0;
  c.has_diagram = false;
  c.X = ratfun_cast<F>(X);
  c.Y = ratfun_cast<F>(Y);
  c.Xhat = c.X;  // additive curves take xhat = x; no framing twist
  check(additive, Err::ConfigError,
        "multiplicative user parametrizations need a diagram for puncture data");
  return c;
}

template <class F>
void SpectralCurve<F>::build_punctures(std::optional<std::array<Pt, 2>> brane_sel) {
  // candidate locations: zeros and poles of X and Y, plus infinity
  std::vector<F> cand;
  for (const Poly<F>* p : {&X.num, &X.den, &Y.num, &Y.den}) {
    if (p->deg() < 1) continue;
    for (auto& r : roots_all<F>(*p)) cand.push_back(r);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](const F& a, const F& b) { return near_zero<F>(a - b); }),
             cand.end());

  const auto& hull = diagram.polytope_vertices;
  size_t ne = hull.size();
  auto edge_normal = [&](size_t i) {
    Pt dir = hull[(i + 1) % ne] - hull[i];
    long g = std::abs(std::gcd(dir.x, dir.y));
    return Pt{-dir.y / g, dir.x / g};  // primitive inward normal (CCW hull)
  };
  auto edge_len = [&](size_t i) {
    Pt dir = hull[(i + 1) % ne] - hull[i];
    return std::abs(std::gcd(dir.x, dir.y));
  };

  auto classify = [&](long vx, long vy, bool at_inf, const F& z0) {
    if (vx == 0 && vy == 0) return;  // interior point of (C*)^2, not a puncture
    Puncture<F> p;
    p.at_inf = at_inf;
    p.z0 = z0;
    p.ordX = vx;
    p.ordY = vy;
    p.ord_xhat = vx + framing * vy;
    for (size_t e = 0; e < ne; e++) {
      Pt nu = edge_normal(e);
      if (vx * nu.y != vy * nu.x) continue;
      long d = nu.x != 0 ? vx / nu.x : vy / nu.y;
      if (d < 1 || d * nu.x != vx || d * nu.y != vy) continue;
      p.edge = (long)e;
      p.mult = d;
      break;
    }
    check(p.edge >= 0, Err::PunctureCollision,
          "valuation vector (" + std::to_string(vx) + "," + std::to_string(vy) +
              ") matches no boundary edge");
    check(p.ord_xhat != 0, Err::DegenerateFraming,
          "X^ has order 0 at a puncture; framing " + std::to_string(framing) + " is degenerate");
    punctures.push_back(std::move(p));
  };

  for (auto& z0 : cand) classify(X.order_at(z0), Y.order_at(z0), false, z0);
  classify(X.order_at_infinity(), Y.order_at_infinity(), true, FT<F>::zero());

  std::sort(punctures.begin(), punctures.end(), [](const Puncture<F>& a, const Puncture<F>& b) {
    if (a.at_inf != b.at_inf) return b.at_inf;
    return a.z0 < b.z0;
  });

  // per-edge multiplicity must exhaust the lattice length of the edge
  long vx_tot = 0, vy_tot = 0, xh_tot = 0, d_tot = 0;
  std::vector<long> per_edge(ne, 0);
  for (auto& p : punctures) {
    vx_tot += p.ordX;
    vy_tot += p.ordY;
    xh_tot += p.ord_xhat;
    d_tot += p.mult;
    per_edge[p.edge] += p.mult;
  }
  check(vx_tot == 0 && vy_tot == 0 && xh_tot == 0, Err::IdentityViolation,
        "divisor degrees of X, Y, X^ must vanish on P^1");
  for (size_t e = 0; e < ne; e++)
    check(per_edge[e] == edge_len(e), Err::PunctureCollision,
          "edge " + std::to_string(e) + " meets the curve non-generically");
  check(d_tot == cts.fn, Err::IdentityViolation, "puncture count does not match fn");

  if (!brane_sel) return;
  Pt b0 = (*brane_sel)[0], b1 = (*brane_sel)[1];
  for (size_t e = 0; e < ne; e++) {
    Pt h0 = hull[e], h1 = hull[(e + 1) % ne];
    if ((h0 == b0 && h1 == b1) || (h0 == b1 && h1 == b0)) brane_edge = (long)e;
  }
  check(brane_edge >= 0, Err::ConfigError, "brane_edge is not a boundary edge of P");
  long m = edge_len(brane_edge);
  for (size_t i = 0; i < punctures.size(); i++) {
    const auto& p = punctures[i];
    if (p.edge != brane_edge) continue;
    check(p.mult == 1, Err::PunctureCollision, "brane divisor meets the curve tangentially");
    check(p.ord_xhat == 1, Err::DegenerateFraming,
          "X^ is not a coordinate on the brane chart at this framing");
    brane.push_back((long)i);
  }
  check((long)brane.size() == m, Err::WrongMultiplicity,
        "expected " + std::to_string(m) + " brane punctures, found " +
            std::to_string(brane.size()));
}

template <class F>
Series<F> SpectralCurve<F>::puncture_series(const Puncture<F>& p, const RatFun<F>& f,
                                            long bound) const {
  return p.at_inf ? f.series_at_infinity(bound) : f.series_at(p.z0, bound);
}

template <class F>
Series<F> SpectralCurve<F>::brane_rho(const Puncture<F>& p, long bound) const {
  Series<F> xh = puncture_series(p, Xhat, bound)
                     .chopped(1, Err::DegenerateFraming, "X^ has a constant term on the brane chart");
  check(!xh.known_zero() && xh.val == 1, Err::DegenerateFraming,
        "X^ does not vanish simply on the brane chart");
  return xh.reversion().truncated(bound);
}

template <class F>
void SpectralCurve<F>::locate_ram() {
  // zeros of d log X^ away from the punctures, as one exact numerator:
  //   (Xn' Xd - Xn Xd') Yn Yd + f (Yn' Yd - Yn Yd') Xn Xd      (multiplicative)
  //   Xn' Xd - Xn Xd'                                          (additive)
  Poly<F> num;
  if (multiplicative) {
    Poly<F> dX = X.num.derivative() * X.den - X.num * X.den.derivative();
    Poly<F> dY = Y.num.derivative() * Y.den - Y.num * Y.den.derivative();
    Poly<F> f = Poly<F>::constant(FT<F>::from_long(framing));
    num = dX * Y.num * Y.den + f * dY * X.num * X.den;
  } else {
    num = X.num.derivative() * X.den - X.num * X.den.derivative();
  }
  check(!num.is_zero(), Err::DegenerateFraming, "d log X^ vanishes identically");

  std::vector<F> locs;
  for (auto& r : roots_all<F>(num)) {
    // discard zeros of the combined numerator that sit at poles of d log X^
    bool at_punct = near_zero<F>(X.den.eval(r));
    if (multiplicative)
      at_punct = at_punct || near_zero<F>(X.num.eval(r)) || near_zero<F>(Y.den.eval(r)) ||
                 near_zero<F>(Y.num.eval(r));
    if (at_punct) continue;
    locs.push_back(r);
  }
  std::sort(locs.begin(), locs.end());
  for (size_t i = 0; i + 1 < locs.size(); i++)
    check(!near_zero<F>(locs[i] - locs[i + 1]), Err::DegenerateFraming,
          "ramification points collide (non-simple)");
  if (has_diagram)
    check((long)locs.size() == expected_ram_count(), Err::DegenerateFraming,
          "found " + std::to_string(locs.size()) + " ramification points, expected " +
              std::to_string(expected_ram_count()));
  ram_.clear();
  for (auto& a : locs) {
    RamPoint<F> r;
    r.a = a;
    ram_.push_back(std::move(r));
  }
  ram_built_ = true;
}

template <class F>
void SpectralCurve<F>::expand_ram(RamPoint<F>& r, long K) const {
  long L = K + 6;
  Series<F> xh = multiplicative ? Xhat.series_at(r.a, L) : X.series_at(r.a, L);
  r.xhat_a = xh.coeff(0);
  Series<F> Fz;
  if (multiplicative) {
    check(!FT<F>::small(r.xhat_a), Err::DegenerateFraming, "X^ vanishes at a critical point");
    Fz = (xh * (FT<F>::one() / r.xhat_a)).log1();
  } else {
    Fz = xh - Series<F>::constant(r.xhat_a, L);
  }
  Fz = Fz.chopped(2, Err::IdentityViolation, "dX^/X^ does not vanish at located point");
  check(!FT<F>::small(Fz.coeff(2)), Err::DegenerateFraming,
        "critical point is not holomorphic Morse");
  r.Fz = Fz;
  r.c2 = Fz.coeff(2);

  Series<F> t = Series<F>::t_power(1, L);
  Series<F> norm = Fz * Series<F>::t_power(-2, L) * (FT<F>::one() / r.c2);
  r.eta = (t * norm.sqrt1()).truncated(L - 1);
  r.eta_inv = r.eta.reversion();
  r.tbar = r.eta_inv.compose(-r.eta);
  r.tbarp = r.tbar.derivative();

  // deck checks: involution, eta-antisymmetry, invariance of xhat
  assert_small(r.tbar.compose(r.tbar) - t, Err::IdentityViolation, "deck is not an involution");
  assert_small(r.eta.compose(r.tbar) + r.eta, Err::IdentityViolation,
               "deck does not negate the odd coordinate");
  assert_small(r.Fz.compose(r.tbar) - r.Fz, Err::IdentityViolation,
               "deck does not preserve X^");
  assert_small(r.Fz - r.eta * r.eta * r.c2, Err::IdentityViolation,
               "x^ - u != zeta^2 at this order");

  Series<F> yser = Y.series_at(r.a, L);
  r.y_a = yser.coeff(0);
  if (multiplicative) {
    check(!FT<F>::small(r.y_a), Err::DegenerateFraming, "Y vanishes at a critical point");
    r.ys = (yser * (FT<F>::one() / r.y_a)).log1();
  } else {
    r.ys = yser - Series<F>::constant(r.y_a, L);
  }

  r.Dt = (r.ys - r.ys.compose(r.tbar)) * r.Fz.derivative() * FT<F>::from_long(2);
  // kernel shape: in the odd coordinate the denominator over d(eta) is an
  // even deck-invariant series starting at eta^2 (simple ramification)
  Series<F> C = r.Dt * r.eta.derivative().inverse();
  check(C.val >= 2, Err::NonSimpleRamification,
        "kernel denominator has wrong valuation at a ramification point");
  check(!FT<F>::small(C.coeff(2)), Err::NonSimpleRamification,
        "kernel denominator eta^2 coefficient vanishes");
  Series<F> Ceta = C.compose(r.eta_inv);
  for (size_t i = 0; i < Ceta.c.size(); i++)
    if ((Ceta.val + (long)i) % 2 != 0)
      check(FT<F>::small(Ceta.c[i]), Err::NonSimpleRamification,
            "kernel denominator is not even in the odd coordinate");
  r.Dinv = r.Dt.inverse();
  r.K = K;
}

template <class F>
void SpectralCurve<F>::ensure_ram(long K) {
  if (!ram_built_) locate_ram();
  if (K <= Kcur_) return;
  std::exception_ptr err;
#pragma omp parallel for schedule(static)
  for (size_t i = 0; i < ram_.size(); i++) {
    try {
      expand_ram(ram_[i], K);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  Kcur_ = K;
}

template <class F>
const std::vector<RamPoint<F>>& SpectralCurve<F>::ram() const {
  check(ram_built_, Err::ConfigError, "ramification data not built; call ensure_ram");
  return ram_;
}

template class SpectralCurve<Rat>;
template class SpectralCurve<CNum>;

}  // namespace tr
