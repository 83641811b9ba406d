#!/usr/bin/env python3
"""Walkthrough: renewal intensity for a mixture of exponential laws.

Inter-arrival times are Exp(r) with the rate r itself random: here
r in {1, 3} with equal probability.  The renewal intensity u(x) (density
of renewals at age x) has the closed form 3/2 + e^{-2x}/2, and the same
transform identity that solves the discrete problem produces it directly.
"""

import math

from mixrenewal import MixtureMeasure, Atom, nu_continuous, intensity
from mixrenewal.expmix import intensity_oracle

mu = MixtureMeasure([Atom(1.0, 0.5), Atom(3.0, 0.5)],
                    domain="halfline", probability=True)
nu = nu_continuous(mu)

print("  x    intensity        closed form      series oracle")
for x in (0.1, 0.5, 1.0, 2.0, 4.0):
    u = intensity(mu, x, nu=nu)
    closed = 1.5 + 0.5 * math.exp(-2.0 * x)
    oracle = intensity_oracle(mu, x, 60)
    print("%4.1f   %.12f   %.12f   %.12f" % (x, u, closed, oracle))

print()
print("u(0+)  -> mean rate      :", intensity(mu, 1e-8, nu=nu))
print("u(inf) -> 1 / E[1/r]     :", intensity(mu, 60.0, nu=nu))
print("                  exact  :", 1.0 / mu.weighted_integral("inv_x"))
