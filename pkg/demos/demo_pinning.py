#!/usr/bin/env python3
"""Walkthrough: the pinning phase transition for the arcsine family.

The inter-arrival laws K_v built from mu_v = Beta(1-v, v) have tail
exponent 1+v.  Rewarding each renewal contact by e^beta produces a
localization transition: the free energy F(beta) is zero up to beta_c and
positive beyond it.  For this family everything is available in closed
form, which makes it a good end-to-end check of the generic machinery.
"""

import math

from mixrenewal import (
    mu_v, free_energy_arcsine, free_energy, contact_fraction,
    partition_oracle, PolymerState,
)

v = 0.5
mu = mu_v(v)

print("v = %g, beta_c = 0 (mu_v has full mass, no defect)" % v)
print()
print(" beta    F closed form     F generic        contact fraction")
for beta in (-0.5, 0.0, 0.25, math.log(2.0), 1.0, 2.0):
    f_closed = free_energy_arcsine(v, beta)
    f_generic = free_energy(mu, beta)
    c = contact_fraction(mu, beta)
    print("%6.3f   %.12f   %.12f   %.12f" % (beta, f_closed, f_generic, c))

# the partition function grows like e^{N F(beta)} above the transition
beta = math.log(2.0)
state = PolymerState(mu, beta)
z = partition_oracle(mu, beta, 300)
print()
print("beta = log 2: F =", state.free_energy, "(exact: log(4/3))")
print("log Z_300 / 300 =", math.log(z[300]) / 300.0)
print("Z_300 e^{-300 F} =", z[300] * math.exp(-300.0 * state.free_energy),
      " ->  F'(beta) =", state.contact_fraction)
