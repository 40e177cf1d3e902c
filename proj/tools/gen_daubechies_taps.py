#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the embedded Daubechies low-pass taps (db2..db10).

Spectral factorization at 60-digit precision; prints decomposition low-pass
taps in convolution order, 17 significant digits.
"""
import mpmath as mp

mp.mp.dps = 60


def daubechies_rec_lo(n):
    # |Q(w)|^2 = P(sin^2(w/2)), P(y) = sum_k C(n-1+k, k) y^k, y = (2 - z - 1/z)/4
    # z^(n-1) P(y(z)) as a polynomial in z
    poly = [mp.mpf(0)] * (2 * n - 1)  # coefficients of z^0 .. z^(2n-2)
    for k in range(n):
        c = mp.binomial(n - 1 + k, k) / mp.mpf(4) ** k
        # (2 - z - 1/z)^k * z^(n-1)  ->  (-1)^k (z - 1)^(2k) z^(n-1-k)
        for j in range(2 * k + 1):
            coeff = c * (-1) ** k * mp.binomial(2 * k, j) * (-1) ** (2 * k - j)
            poly[n - 1 - k + j] += coeff
    roots = mp.polyroots(list(reversed(poly)), maxsteps=500, extraprec=200) if n > 1 else []
    inside = [r for r in roots if abs(r) < 1]
    # h(z) = ((1 + z)^n) * prod (z - r)
    h = [mp.mpc(1)]
    for _ in range(n):
        h = [a + b for a, b in zip(h + [0], [0] + h)]
    for r in inside:
        h = [a - r * b for a, b in zip([0] + h, h + [0])]
    h = [mp.re(x) for x in h]
    s = mp.fsum(h)
    h = [x * mp.sqrt(2) / s for x in h]
    # orientation matching the usual tabulation (largest taps first)
    if abs(h[0]) < abs(h[-1]):
        h = list(reversed(h))
    return h


if __name__ == "__main__":
    for n in range(2, 11):
        rec_lo = daubechies_rec_lo(n)
        dec_lo = list(reversed(rec_lo))
        print(f"// db{n}")
        print("{" + ", ".join(mp.nstr(x, 17, strip_zeros=False) for x in dec_lo) + "},")
