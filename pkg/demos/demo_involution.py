#!/usr/bin/env python3
"""Walkthrough: from a mixture of geometric laws to its spectral measure.

Take K ~ Geometric(1-x) with x drawn from mu = (delta_{1/4} + delta_{3/4})/2
and build the renewal set tau = {0, K_1, K_1+K_2, ...}.  The probabilities
u_N = P(N in tau) turn out to be the moments of a second measure nu, which
this script computes and cross-checks against the direct convolution
recursion.
"""

from mixrenewal import MixtureMeasure, Atom, involute, renewal_oracle

mu = MixtureMeasure([Atom(0.25, 0.5), Atom(0.75, 0.5)], probability=True)
nu = involute(mu)

print("mu  =", mu.atoms)
print("nu  =", nu.atoms)
print()

# the moments of nu are exactly the renewal probabilities
u = renewal_oracle(mu, 20)
print(" N   moment of nu      convolution oracle")
for n in (0, 1, 2, 5, 10, 20):
    print("%2d   %.15f  %.15f" % (n, nu.moment(n), u[n]))

# the long-run renewal density is the mass of the atom at 1
print()
print("atom at 1:", nu.atom_at(1.0).mass)
print("1 / E[K] :", 1.0 / mu.mean_interarrival())

# applying the construction twice returns the original measure
back = involute(nu)
print()
print("double involution:", back.atoms)
