#!/usr/bin/env python3
"""Freeze open-potential, period and Laplace fixtures.

Disk coefficients for C^3 at framing 1 are checked against the classical
localization values 1/d^2 * prod_{a<d}(df+a)/(d-1)! before freezing.
"""

import json
import os
import sys

import sympy as sp

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from eo import V, Curve, omega, ser_coeffs, revert, coeff_of

z, w, w1, w2 = sp.symbols("z w w1 w2")


def local_inverse(Xhat, z0, D):
    """rho(w) with Xhat(rho(w)) = w, rho(0) = z0, as a sympy poly in w."""
    f = ser_coeffs(Xhat.subs(z, z0 + z), z, D + 1)
    assert f[0] == 0 and f[1] != 0
    tau = revert(f, D)
    return z0 + tau.subs(sp.Symbol("w"), w)


def disk_series(Xhat, Y, z0, D):
    rho = local_inverse(Xhat, z0, D)
    y0 = Y.subs(z, z0)
    g = sp.log(Y.subs(z, rho) / y0)
    gc = ser_coeffs(g, w, D)
    assert gc[0] == 0
    return {d: sp.Rational(gc[d], d) for d in range(1, D + 1) if gc[d] != 0}


# dense bivariate series as {(i,j): Rational}, truncated at total degree cap
def bv_mul(A, B, cap):
    out = {}
    for (i, j), a in A.items():
        for (k, l), b in B.items():
            if i + k + j + l > cap:
                continue
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + a * b
    return {k: v for k, v in out.items() if v != 0}


def bv_inv(A, cap):
    c0 = A.get((0, 0), 0)
    assert c0 != 0
    inv = {(0, 0): sp.Rational(1, 1) / c0}
    rest = {k: v for k, v in A.items() if k != (0, 0)}
    term = dict(inv)
    for _ in range(cap):
        term = bv_mul(term, {k: -v / c0 for k, v in rest.items()}, cap)
        if not term:
            break
        for k, v in term.items():
            inv[k] = inv.get(k, 0) + v
    chk = bv_mul(A, inv, cap)
    assert all((v == 0 if k != (0, 0) else v == 1) for k, v in chk.items())
    return inv


def bv_from_poly(p, cap):
    p = sp.expand(p)
    out = {}
    for term in sp.Add.make_args(p):
        c, m = term.as_coeff_Mul()
        i = sp.degree(m, w1) if m.has(w1) else 0
        j = sp.degree(m, w2) if m.has(w2) else 0
        c = sp.Rational(sp.nsimplify(term / (w1 ** i * w2 ** j)))
        if i + j <= cap:
            out[(int(i), int(j))] = out.get((int(i), int(j)), 0) + c
    return {k: v for k, v in out.items() if v != 0}


def integrate_bv(A, D):
    out = {}
    for (i, j), c in A.items():
        d1, d2 = i + 1, j + 1
        if d1 + d2 <= D:
            out[(d1, d2)] = c / (d1 * d2)
    return out


def annulus_coincident(Xhat, z0, D):
    rho = local_inverse(Xhat, z0, D + 1)
    rc = ser_coeffs(rho - z0, w, D + 1)
    cap = D - 2
    S = sum(
        sp.Rational(rc[k]) * sum(w1 ** i * w2 ** (k - 1 - i) for i in range(k))
        for k in range(1, D + 2)
    ) + sp.Integer(0)
    dr1 = sp.diff(rho, w).subs(w, w1)
    dr2 = sp.diff(rho, w).subs(w, w2)
    N = sp.expand(dr1 * dr2 - S ** 2)
    Q = sp.cancel(N / (w1 - w2) ** 2)
    qn, qd = sp.fraction(sp.together(Q))
    assert not qd.has(w1) and not qd.has(w2), "numerator not divisible twice"
    A = bv_from_poly(Q, cap)
    S2inv = bv_inv(bv_from_poly(sp.expand(S ** 2), cap), cap)
    return integrate_bv(bv_mul(A, S2inv, cap), D)


def annulus_distinct(Xhat, za, zb, D):
    ra = local_inverse(Xhat, za, D)
    rb = local_inverse(Xhat, zb, D)
    cap = D - 2
    dra = sp.diff(ra, w).subs(w, w1)
    drb = sp.diff(rb, w).subs(w, w2)
    den = sp.expand((ra.subs(w, w1) - rb.subs(w, w2)) ** 2)
    A = bv_mul(bv_from_poly(sp.expand(dra * drb), cap), bv_inv(bv_from_poly(den, cap), cap), cap)
    return integrate_bv(A, D)


def open_1_1(curve, Xhat, z0, D):
    W = omega(curve, 1, 1)
    rho = local_inverse(Xhat, z0, D + 1)
    pull = W.subs(V[0], rho) * sp.diff(rho, w)
    pc = ser_coeffs(pull, w, D)
    return {d: sp.Rational(pc[d - 1], d) for d in range(1, D + 1) if pc[d - 1] != 0}


def period_data(Xhat, Y, punct):
    if punct is sp.oo:
        var = sp.Symbol("vv")
        Xl, Yl = Xhat.subs(z, 1 / var), Y.subs(z, 1 / var)
    else:
        var = sp.Symbol("vv")
        Xl, Yl = Xhat.subs(z, punct + var), Y.subs(z, punct + var)

    def val_lead(expr):
        num, den = sp.fraction(sp.cancel(expr))
        pn, pd = sp.Poly(num, var), sp.Poly(den, var)
        vn = min(m[0] for m in pn.monoms())
        vd = min(m[0] for m in pd.monoms())
        lead = sp.Rational(pn.coeff_monomial(var ** vn), pd.coeff_monomial(var ** vd))
        return vn - vd, lead

    xord, _ = val_lead(Xl)
    e, yc = val_lead(Yl)
    return {
        "puncture": "inf" if punct is sp.oo else str(punct),
        "ord_xhat": int(xord),
        "y_lead": str(yc),
        "ord_y": int(e),
        "monodromy": int(e * xord),
    }


def laplace_entries(entries):
    """Map {sorted key tuple: coeff} with slots zeta^-k dzeta to the formal
    transform Gamma(m+1/2)(-z)^(m+1/2) per slot, 2m = -k.  Coefficients are
    frozen in units of sqrt(pi)^n."""
    out = {}
    for keys, c in entries.items():
        powers = []
        val = sp.Rational(c)
        for (_, k) in keys:
            assert k % 2 == 0
            m = sp.Rational(-k, 2)
            g = sp.gamma(m + sp.Rational(1, 2)) / sp.sqrt(sp.pi)
            val *= sp.nsimplify(g)
            powers.append(str(m + sp.Rational(1, 2)))
        key = ",".join(sorted(powers, key=sp.Rational))
        out[key] = out.get(key, 0) + val
    return {k: str(v) for k, v in out.items() if v != 0}


def fmt(d):
    return {",".join(str(x) for x in (k if isinstance(k, tuple) else (k,))): str(v) for k, v in sorted(d.items())}


def main():
    data = {}

    # C^3, framing 1: Xhat = X Y, X = z, Y = -1-z, brane puncture z = 0
    q = sp.Rational(1, 5)
    c3_X = -z - z ** 2
    c3_Y = -1 - z
    disk_c3 = disk_series(c3_X, c3_Y, sp.Integer(0), 8)
    for d, c in disk_c3.items():
        known = sp.Rational(1, d * d) * sp.prod(
            [sp.Rational(d + a, 1) for a in range(1, d)]
        ) / sp.factorial(d - 1)
        assert abs(c) == known, (d, c, known)
    data["c3_f1_disk"] = {"0": fmt(disk_c3)}

    # resolved conifold, framing 1, q = 1/5: Y = -(1+z)/(1+qz), brane z = 0
    con_Y = -(1 + z) / (1 + q * z)
    con_X = z * con_Y
    data["conifold_f1_q1_5_disk"] = {"0": fmt(disk_series(con_X, con_Y, sp.Integer(0), 8))}

    # outer leg of the Z3 quotient: X = -(1+Y+11Y^2/36+Y^3/36), Y = z,
    # framing 1, punctures z = -6, -3, -2 (label order sorted)
    leg_X = -(1 + z + sp.Rational(11, 36) * z ** 2 + sp.Rational(1, 36) * z ** 3) * z
    leg_Y = z
    leg_punct = [sp.Integer(-6), sp.Integer(-3), sp.Integer(-2)]
    data["c3z3_leg_f1_disk"] = {
        str(l): fmt(disk_series(leg_X, leg_Y, p, 5)) for l, p in enumerate(leg_punct)
    }

    data["c3_f1_annulus"] = {"0,0": fmt(annulus_coincident(c3_X, sp.Integer(0), 6))}
    data["c3z3_leg_f1_annulus"] = {
        "0,0": fmt(annulus_coincident(leg_X, leg_punct[0], 3)),
        "0,1": fmt(annulus_distinct(leg_X, leg_punct[0], leg_punct[1], 3)),
        "1,2": fmt(annulus_distinct(leg_X, leg_punct[1], leg_punct[2], 3)),
    }

    c3f1 = Curve("c3_f1", "mult", z, c3_X, c3_Y, -1 - z, [sp.Rational(-1, 2)])
    data["c3_f1_open_1_1"] = {"0": fmt(open_1_1(c3f1, c3_X, sp.Integer(0), 6))}

    conifold_punct = [sp.Integer(0), sp.Integer(-1), -1 / q, sp.oo]
    data["conifold_f1_q1_5_periods"] = [period_data(con_X, con_Y, p) for p in conifold_punct]

    data["airy_laplace"] = {
        "1,1": laplace_entries({((0, 4),): sp.Rational(1, 16)}),
        "0,3": laplace_entries({((0, 2), (0, 2), (0, 2)): sp.Rational(1, 2)}),
        "1,2": laplace_entries(
            {((0, 2), (0, 6)): sp.Rational(5, 32), ((0, 4), (0, 4)): sp.Rational(3, 32)}
        ),
    }

    here = os.path.dirname(os.path.abspath(__file__))
    dest = os.path.join(here, "..", "data", "oracle_potentials.json")
    with open(dest, "w") as f:
        json.dump(data, f, indent=1, sort_keys=True)
        f.write("\n")
    print("wrote", os.path.normpath(dest))


if __name__ == "__main__":
    main()
