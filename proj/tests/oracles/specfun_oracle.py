#!/usr/bin/env python3
# Regenerates the literal reference values in tests/test_specfun.cpp and
# tests/test_freeenergy.cpp. Needs mpmath; values printed with 17 digits.
import mpmath as mp

mp.mp.dps = 60


def f(x):
    return mp.nstr(x, 17, min_fixed=-4, max_fixed=4)


def section(name):
    print(f"// {name}")


section("lgamma")
for x in ["0.1", "0.5", "1.5", "3.7", "10.25", "50.5", "400.125"]:
    print(f"{{{x}, {f(mp.loggamma(mp.mpf(x)))}}},")

section("digamma")
for x in ["0.1", "0.5", "1", "2.5", "7.75", "100.5"]:
    print(f"{{{x}, {f(mp.digamma(mp.mpf(x)))}}},")

section("hurwitz (s, chi, value)")
for s in ["1.5", "2", "3.25", "0.5", "-0.5", "-2.5", "-1.75"]:
    for chi in ["0.5", "1", "2.5", "7"]:
        print(f"{{{s}, {chi}, {f(mp.zeta(mp.mpf(s), mp.mpf(chi)))}}},")

section("hurwitz_deriv (s, chi, value)")
for s in ["1.5", "3.25", "0.5", "-1.5", "-3"]:
    for chi in ["0.5", "1", "2.5", "7"]:
        print(f"{{{s}, {chi}, {f(mp.zeta(mp.mpf(s), mp.mpf(chi), 1))}}},")

section("hurwitz_deriv_neg_int (j, chi, value)")
for j in range(0, 7):
    for chi in ["0.5", "1", "1.5", "2", "3", "4.5"]:
        print(f"{{{j}, {chi}, {f(mp.zeta(-j, mp.mpf(chi), 1))}}},")

section("riemann_zeta (s, value)")
for s in ["1.5", "2", "3", "4.5", "9", "0.5", "-0.5"]:
    print(f"{{{s}, {f(mp.zeta(mp.mpf(s)))}}},")

section("riemann_zeta_deriv_neg_int (j, value)")
for j in range(0, 10):
    print(f"{{{j}, {f(mp.zeta(-j, 1, 1))}}},")

section("bessel (nu, x, ln_i, ln_k, i_ratio, k_ratio)")
for nu in ["0.5", "1.5", "2.25", "7", "30.5", "200"]:
    for x in ["0.001", "0.5", "3", "40", "900"]:
        n, xx = mp.mpf(nu), mp.mpf(x)
        I, K = mp.besseli(n, xx), mp.besselk(n, xx)
        Ip = (mp.besseli(n - 1, xx) + mp.besseli(n + 1, xx)) / 2
        Kp = -(mp.besselk(n - 1, xx) + mp.besselk(n + 1, xx)) / 2
        print(f"{{{nu}, {x}, {f(mp.log(I))}, {f(mp.log(K))}, {f(Ip / I)}, {f(Kp / K)}}},")

section("lngamma_moment_integral (j, c, D, sign, value)")
for j, c, D, sg in [(1, "0.5", 3, 1), (2, "1", 4, 1), (3, "-0.5", 5, 1), (1, "1.5", 4, -1), (4, "1", 6, -1), (2, "-1", 4, 1)]:
    cc = mp.mpf(c)
    v = mp.quad(lambda u: u ** (j - 1) * mp.loggamma(mp.mpf(D) / 2 + sg * u), [0, cc])
    print(f"{{{j}, {c}, {D}, {sg}, {f(v)}}},")


# Brute-force Xi(s, alpha; chi; c) - Xi_singular. The inner p-sum minus its
# singular part is exponentially small, so the outer sum is cut at n = 80.
def xi_reg_brute(s, alpha, chi, c):
    s, chi, c = mp.mpf(s), mp.mpf(chi), mp.mpf(c)
    tot = mp.mpf(0)
    for n in range(80):
        nu = n + chi
        inner = nu ** (-2 * s) + 2 * mp.nsum(lambda p: (nu * nu + (c * p) ** 2) ** (-s), [1, mp.inf])
        sing = mp.sqrt(mp.pi) / c * mp.gamma(s - 0.5) / mp.gamma(s) * nu ** (1 - 2 * s)
        tot += nu ** alpha * (inner - sing)
    return tot


section("xi_regular (s, alpha, chi, c, value)")
for s, alpha, chi, c in [("1.5", 0, "1.5", 2 * mp.pi), ("2.5", 2, "1.5", 2 * mp.pi), ("1.5", 1, "0.5", mp.pi),
                         ("2.5", 0, "2", 4 * mp.pi)]:
    print(f"{{{s}, {alpha}, {chi}, {f(c)}, {f(xi_reg_brute(s, alpha, chi, c))}}},")

section("x_regular (s, D, aT, value)")
for s, D, aT in [("1.5", 4, "1"), ("2.5", 3, "0.5"), ("1.5", 6, "3")]:
    s_, q, c = mp.mpf(s), mp.mpf(D) / 2, 2 * mp.pi * mp.mpf(aT)
    inner = q ** (-2 * s_) + 2 * mp.nsum(lambda p: (q * q + (c * p) ** 2) ** (-s_), [1, mp.inf])
    sing = mp.sqrt(mp.pi) / c * mp.gamma(s_ - 0.5) / mp.gamma(s_) * q ** (1 - 2 * s_)
    print(f"{{{s}, {D}, {aT}, {f(inner - sing)}}},")
