#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tr/ratfun.hpp"
#include "tr/toric.hpp"

namespace tr {

template <class F>
Poly<F> poly_cast(const Poly<Rat>& p) {
  std::vector<F> c;
  c.reserve(p.c.size());
  for (auto& q : p.c) c.push_back(FT<F>::from_rat(q));
  return Poly<F>(std::move(c));
}
template <class F>
RatFun<F> ratfun_cast(const RatFun<Rat>& r) {
  return RatFun<F>(poly_cast<F>(r.num), poly_cast<F>(r.den));
}

template <class F>
struct Puncture {
  bool at_inf = false;
  F z0{};
  long ordX = 0, ordY = 0;  // valuation vector
  long ord_xhat = 0;        // ordX + f ordY
  long edge = -1;           // index into hull edge list
  long mult = 1;            // valuation vector = mult * primitive inward normal
};

// Local data at one simple ramification point, all series in t = z - a.
template <class F>
struct RamPoint {
  F a{};
  F xhat_a{};  // X^(a) (multiplicative) or x(a) (additive): carrier of u
  F y_a{};
  F c2{};      // quadratic coefficient of Fz; zeta = sqrt(c2) eta
  long K = 0;
  Series<F> Fz;       // xhat(a+t) - u; valuation exactly 2
  Series<F> eta;      // odd local coordinate, eta^2 = Fz / c2
  Series<F> eta_inv;  // compositional inverse of eta
  Series<F> tbar;     // deck transform: eta(tbar) = -eta
  Series<F> tbarp;
  Series<F> ys;       // log(Y/Y(a)) (mult) or Y - Y(a) (add)
  Series<F> Dt;       // 2(Phi(p) - Phi(pbar)) / dt
  Series<F> Dinv;
};

struct Parametrized {
  RatFun<Rat> X, Y;
};

// Rational parametrization of a genus-zero mirror curve: z = X when H is
// linear in Y, the transposed convention otherwise.
Parametrized parametrize(const MirrorPolynomial& H);

template <class F>
class SpectralCurve {
 public:
  using Scalar = F;

  bool multiplicative = true;  // xhat = log XY^f vs xhat = X
  long framing = 1;
  RatFun<F> X, Y, Xhat;

  bool has_diagram = false;
  ToricDiagram diagram;
  ToricCounts cts;
  std::vector<Puncture<F>> punctures;  // sorted by location, infinity last
  long brane_edge = -1;
  std::vector<long> brane;  // puncture indices in ell order

  static SpectralCurve from_mirror(const ToricDiagram& validated, const MirrorPolynomial& H,
                                   long framing, std::optional<std::array<Pt, 2>> brane_edge);
  static SpectralCurve from_parametrization(const RatFun<Rat>& X, const RatFun<Rat>& Y,
                                            bool additive);

  long expected_ram_count() const { return cts.fn - 2; }

  // lazy: locates critical points on first call, re-expands when K grows
  void ensure_ram(long K);
  const std::vector<RamPoint<F>>& ram() const;
  long ram_order() const { return Kcur_; }

  // local expansion of a rational function at a puncture, in s = z - z0
  // (finite) or s = 1/z (infinite)
  Series<F> puncture_series(const Puncture<F>& p, const RatFun<F>& f, long bound) const;

  // brane chart: rho = local inverse of Xhat at the puncture, plus Y data
  Series<F> brane_rho(const Puncture<F>& p, long bound) const;

 private:
  std::vector<RamPoint<F>> ram_;
  bool ram_built_ = false;
  long Kcur_ = 0;

  void locate_ram();
  void expand_ram(RamPoint<F>& r, long K) const;
  void build_punctures(std::optional<std::array<Pt, 2>> brane_edge);
};

}  // namespace tr
