#!/usr/bin/env python3
# Reference values for the Debye-subtracted remainder B'(nu, x) in
# tests/test_freeenergy.cpp. The exact d_{n,k}, m_{n,k}(c) are read from
# `casimir dump` (path to the binary as argv[1]); Bessel functions from mpmath.
import csv
import io
import subprocess
import sys
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 50
exe = sys.argv[1] if len(sys.argv) > 1 else "build/casimir"
rows = list(csv.DictReader(io.StringIO(subprocess.check_output(
    [exe, "dump", "--dim", "3", "--bc", "neumann", "--order", "4"], text=True))))


def coeffs(c):
    out = {}
    for r in rows:
        if r["c"] == c:
            out[(int(r["n"]), int(r["k"]))] = Fraction(r["value"])
    return out


dir_c, rob_c = coeffs(""), coeffs("-1/2")


def poly(tab, n, t):
    return sum(mp.mpf(v.numerator) / v.denominator * t ** (n + 2 * k) for (nn, k), v in tab.items() if nn == n)


def bprime(nu, x, N, c=None):
    nu, x = mp.mpf(nu), mp.mpf(x)
    r = mp.sqrt(nu * nu + x * x)
    t = nu / r
    I, K = mp.besseli(nu, x), mp.besselk(nu, x)
    if c is None:
        v = -mp.log(I * K) + mp.log(1 / (2 * r))
        tab = dir_c
    else:
        c = mp.mpf(c)
        Ip = (mp.besseli(nu - 1, x) + mp.besseli(nu + 1, x)) / 2
        Kp = -(mp.besselk(nu - 1, x) + mp.besselk(nu + 1, x)) / 2
        v = -mp.log((c * I + x * Ip) * (-c * K - x * Kp)) + mp.log(r) - mp.log(2)
        tab = rob_c
    v += 2 * sum(poly(tab, 2 * i, t) / nu ** (2 * i) for i in range(1, N + 1))
    return v


for nu, x, N, c in [(1.5, 0.5, 2, None), (2.5, 3.0, 2, None), (7.5, 20.0, 2, None), (100, 1, 2, None),
                    (100, 1, 4, None), (3.5, 2.0, 2, "-0.5"), (1.5, 0.25, 2, "-0.5"), (11.5, 30.0, 3, "-0.5"),
                    (5.5, 0.001, 2, "-0.5"), (12.5, 1.0, 3, None), (12.5, 10.0, 3, None), (16, 5.0, 3, None),
                    (12.5, 3.0, 3, "-0.5"), (14, 40, 3, "-0.5")]:
    print(f"{{{nu}, {x}, {N}, {1 if c else 0}, {mp.nstr(bprime(nu, x, N, c), 17)}}},")
