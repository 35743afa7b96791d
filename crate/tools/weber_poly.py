#!/usr/bin/env python3
"""Compute the Weber modular polynomial Phi_d(u, v) with Phi_d(f(tau), f(d*tau)) = 0.

f is the Weber function q^(-1/48) prod_{n>=1} (1 + q^(n-1/2)). The polynomial has
degree d+1 in each variable; its integer coefficients are found as the one-dimensional
kernel of the linear system given by the q-expansion of all admissible monomials.

Usage: weber_poly.py d > data/phi<d>.txt
"""
import sys
from fractions import Fraction


def series_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(0, n - i):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def product_series(step, n):
    # prod_{k>=1} (1 + y^(step*(2k-1))) truncated to n coefficients in y
    s = [0] * n
    s[0] = 1
    k = 1
    while step * (2 * k - 1) < n:
        e = step * (2 * k - 1)
        for i in range(n - 1, e - 1, -1):
            s[i] += s[i - e]
        k += 1
    return s


def power_table(base, maxp, n):
    tab = [[1] + [0] * (n - 1)]
    for _ in range(maxp):
        tab.append(series_mul(tab[-1], base, n))
    return tab


def kernel(rows, ncols):
    # exact rational row reduction, returns a basis of the right kernel
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def weber_poly(d):
    deg = d + 1
    res = deg % 24
    mons = [(i, j) for i in range(deg + 1) for j in range(deg + 1) if (i + d * j) % 24 == res]
    emax = max(i + d * j for i, j in mons)
    shift_max = max((emax - (i + d * j)) // 24 for i, j in mons)
    n = shift_max + 3 * len(mons) + 40
    a = product_series(1, n)
    b = product_series(d, n)
    pa = power_table(a, deg, n)
    pb = power_table(b, deg, n)
    cols = []
    for i, j in mons:
        s = (emax - (i + d * j)) // 24
        prod = series_mul(pa[i], pb[j], n)
        cols.append([0] * s + prod[: n - s])
    rows = [[cols[c][k] for c in range(len(mons))] for k in range(n)]
    ker = kernel(rows, len(mons))
    if len(ker) != 1:
        raise SystemExit(f"kernel dimension {len(ker)} for d={d}")
    v = ker[0]
    lead = v[mons.index((deg, 0))]
    v = [x / lead for x in v]
    from math import lcm
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    return {m: int(x * den) for m, x in zip(mons, v) if x != 0}


def main():
    d = int(sys.argv[1])
    poly = weber_poly(d)
    print(f"# weber degree={d} form=raw24")
    print(f"# Phi_{d}(u, v) with Phi_{d}(f(tau), f({d}*tau)) = 0, f the Weber function")
    print("# generated by tools/weber_poly.py from exact q-expansions (kernel of the monomial system)")
    for (i, j), c in sorted(poly.items(), key=lambda t: (t[0][0] + t[0][1], t[0][0])):
        print(f"{c} {i} {j}")


if __name__ == "__main__":
    main()
