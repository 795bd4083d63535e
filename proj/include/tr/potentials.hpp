#pragma once

#include <map>
#include <string>
#include <vector>

#include "tr/recursion.hpp"

namespace tr {

// Componentwise open potential: branch tuple (ell_1..ell_n) maps to a
// truncated power series in the boundary variables, stored sparsely as
// exponent tuple -> coefficient. Exponents start at 1 (no constant terms).
template <class F>
struct OpenPotential {
  long g = 0, n = 0;
  long degree = 0;
  std::map<std::vector<long>, std::map<std::vector<long>, F>> comp;
};

// Formal steepest-descent transform of omega_{g,n}. Per variable the result
// reads  sqrt(pi)/sqrt(s2_alpha) * e^{u_alpha/z} * sum c (-z)^{num/2}  with
// u_alpha carried by xhat(a_alpha) (its log for multiplicative curves).
// Keys pair each variable's ramification point with the odd numerator of the
// half-integer power, sorted, one coefficient per distinct arrangement.
template <class F>
struct LaplaceSeries {
  long g = 0, n = 0;
  std::vector<F> u, s2;
  std::map<std::vector<std::pair<int, long>>, F> c;
};

// Loop integral of Phi = log Y dXhat/Xhat around a puncture, split into the
// pieces that survive a branch choice: ord_xhat * log(y_lead), a rational
// residue, and an integer multiple of the log ambiguity.
template <class F>
struct PeriodData {
  std::string puncture;
  long ord_xhat = 0;
  long ord_y = 0;
  F y_lead{};
  long monodromy = 0;
  F residue{};
};

// formal Gaussian moment of zeta^j dzeta against e^{-zeta^2/z}: the exact
// coefficient of sqrt(pi) (-z)^{(j+1)/2}. Odd j vanish; j = 0 gives 1.
Rat gaussian_moment(long j);

template <class F>
OpenPotential<F> disk_potential(const SpectralCurve<F>& c, long D);

template <class F>
OpenPotential<F> annulus_potential(const SpectralCurve<F>& c, long D);

// diagonal-pole coefficients of the subtracted coincident-branch integrand,
// one entry per division step and degree; every entry must vanish
template <class F>
std::vector<F> annulus_diagonal(const SpectralCurve<F>& c, long ell, long D);

template <class F>
OpenPotential<F> open_potential(OmegaTable<F>& t, long g, long n, long D);

template <class F>
PeriodData<F> a_period(const SpectralCurve<F>& c, long puncture_index);

template <class F>
LaplaceSeries<F> laplace_transform(OmegaTable<F>& t, long g, long n, long orders);

}  // namespace tr
