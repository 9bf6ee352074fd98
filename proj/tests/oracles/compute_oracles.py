"""Independent reference values frozen into the C++ test suites.

Everything here is computed by brute force, enumeration, root bracketing
or direct quadrature with mpmath/scipy, without touching the C++ code.
Run: python3 tests/oracles/compute_oracles.py
"""
import itertools
import math

import mpmath as mp

mp.mp.dps = 40


def breakpoints(perm):
    n = len(perm)
    r = [0]
    for i in range(1, n + 1):
        if set(perm[: i - 1]) == set(range(1, i)) and perm[i - 1] == i:
            r.append(i)
    r.append(n + 1)
    return r


def overlap_counts(n):
    f = [0] * (n + 1)
    for p in itertools.permutations(range(1, n + 1)):
        f[len(breakpoints(p)) - 2] += 1
    return f


def extinction(c):
    return mp.findroot(lambda x: x - mp.e ** (c * (x - 1)), (mp.mpf("1e-9"), mp.mpf(1) - mp.mpf("1e-9")), solver="bisect")


def log_R(n, k):
    return ((2 * n - 2 * k) * mp.log(2) + (2 * n - k) - (2 * n - k) * mp.log(2 * n - k)
            - 0.5 * mp.log(n - k) - 0.5 * mp.log(2 * n - k))


def oriented_edges(n):
    return [(v, j) for v in range(1 << n) for j in range(n) if not v >> j & 1]


def exact_connection(n, p, oriented):
    edges = oriented_edges(n)
    top = (1 << n) - 1
    total = mp.mpf(0)
    for cfg in range(1 << len(edges)):
        adj = {}
        for b, (v, j) in enumerate(edges):
            if cfg >> b & 1:
                w = v | 1 << j
                adj.setdefault(v, []).append(w)
                if not oriented:
                    adj.setdefault(w, []).append(v)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj.get(v, []):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if top in seen:
            k = bin(cfg).count("1")
            total += mp.mpf(p) ** k * (1 - mp.mpf(p)) ** (len(edges) - k)
    return total


def wilson(s, t, z=1.959963984540054):
    ph = s / t
    den = 1 + z * z / t
    centre = (ph + z * z / (2 * t)) / den
    half = z * math.sqrt(ph * (1 - ph) / t + z * z / (4 * t * t)) / den
    return centre - half, centre + half


def joint_tail(n, k):
    # P(S_n <= 1, S_n' <= 1) = int_0^1 gamma_k(u) P(S_{n-k} <= 1-u)^2 du
    def dens(u):
        return mp.e ** (-u) * u ** (k - 1) / mp.factorial(k - 1)

    def tail(m, u):
        return mp.gammainc(m, 0, u, regularized=True)

    return mp.quad(lambda u: dens(u) * tail(n - k, 1 - u) ** 2, [0, 1])


def btp_m2_top(n, t):
    # Brute force over all y and i with mpmath quadrature.
    def m1(x, s):
        lvl = bin(x).count("1")
        return mp.e ** (n * s) * ((1 - mp.e ** (-2 * s)) / 2) ** lvl * ((1 + mp.e ** (-2 * s)) / 2) ** (n - lvl)

    top = (1 << n) - 1

    def integrand(s):
        acc = mp.mpf(0)
        for y in range(1 << n):
            for i in range(n):
                acc += m1(y, s) * m1(top ^ y, t - s) * m1(top ^ y ^ (1 << i), t - s)
        return acc

    return m1(top, t) + 2 * mp.quad(integrand, [0, t])


if __name__ == "__main__":
    print("f(3) =", overlap_counts(3))
    for n in range(1, 8):
        print("f(%d) =" % n, overlap_counts(n))
    print("x(2) =", extinction(2))
    xe = extinction(mp.e)
    print("x(e) =", xe, "(1-x)^2 =", (1 - xe) ** 2)
    print("R(4,2) =", mp.e ** log_R(4, 2))
    print("log(3*8!) =", mp.log(3 * math.factorial(8)))
    print("log large-k bound (9,8) =", mp.log(2 * (2 * mp.mpf(9) ** (mp.mpf(7) / 8))))
    for n in (1, 2, 3):
        for p in (0.5, 0.9):
            print("exact oriented n=%d p=%s" % (n, p), exact_connection(n, p, True))
            print("exact unoriented n=%d p=%s" % (n, p), exact_connection(n, p, False))
    print("wilson(0,100) =", wilson(0, 100))
    print("wilson(50,100) =", wilson(50, 100))
    print("erlang(1,1) =", 1 - mp.e ** -1)
    print("erlang(5,1) =", mp.gammainc(5, 0, 1, regularized=True))
    jt = joint_tail(6, 3)
    scale = mp.binomial(6, 3) / mp.factorial(9)
    print("joint tail (6,3) =", jt, "bracket", mp.e ** -2 * scale, 9 * mp.e ** -1 * scale)
    ofpp = mp.factorial(20) * mp.e ** mp.mpf(0.8) * mp.gammainc(20, 0, 0.8, regularized=True)
    print("ofpp bound (20,0.2,0) =", ofpp)
    u = mp.log(1 + mp.sqrt(2)) + mp.mpf("0.1")
    print("V(0.1) =", -mp.log(2 * mp.e ** u / (mp.e ** (2 * u) - 1)))
    print("m2(top, t=1, n=3) =", btp_m2_top(3, 1))
    print("m1(top, t=1, n=3) =", mp.sinh(1) ** 3)
    print("m1(top, 0.6, n=8) =", mp.sinh(mp.mpf("0.6")) ** 8)
    print("lipschitz (3,1,1) =", mp.e ** -1 * mp.gammainc(3, 0, 1, regularized=True), mp.e ** 2 * mp.gammainc(3, 0, 1, regularized=True))
    print("consts", mp.log(1 + mp.sqrt(2)), 2 * mp.log(4 + 2 * mp.sqrt(3)) + 3, 4 * mp.log(4 + 2 * mp.sqrt(3)) + 6, mp.log(2 + mp.sqrt(5)) / 2 + mp.log(2))
