"""Exchanging two identical spinning particles.

A TypeII exchange moves both particles the same way round one rotation
orbit. The pair never collides and the motion composes to a 2 pi rotation,
so the phase picked up in the bundle is the 2 pi rotation sign (-1)^n.
That sign fixes which permutation lift (Bose or Fermi) is compatible.

Run:  python3 demos/02_spin_statistics.py
"""

import numpy as np

from spinstat import TYPE_I, TYPE_II, DiracBundle, Hopf, algebra
from spinstat.exchange import (lift_pair, adjoint_exchange_massive, build_any_exchange,
                               classify_statistics, diagonal_crossing, exchange_details)

rng = np.random.default_rng(1)

print("Hopf_n bundles over the spin-n/2 sphere:")
print("   n  exchange phase  verdict")
for n in range(7):
    b = Hopf(n)
    pairs = [(b.base.random_point(rng), b.base.random_point(rng)) for _ in range(5)]
    v = classify_statistics(b, pairs, rng)
    print(f"  {n:2d}  {v.phase.real:+.0f}              f = {v.f} ({'Fermi' if v.f else 'Bose'})")

a, c = Hopf(1).base.random_point(rng), Hopf(1).base.random_point(rng)
crossed, sep, t = diagonal_crossing(build_any_exchange(a, c, TYPE_I))
print(f"\nTypeI exchange (opposite directions): collides at t = {t:.3f}, crossed = {crossed}")
sep2 = diagonal_crossing(build_any_exchange(a, c, TYPE_II))[1]
print(f"TypeII exchange: closest approach {sep2:.3f}")

print("\nMassive spinning particles on the Dirac bundles (equal momenta):")
for n in (1, 2, 3):
    b = DiracBundle(n, 1.0)
    p1 = b.base.random_point(rng)
    j = rng.normal(size=3)
    j /= np.linalg.norm(j)
    boost = algebra.sl2c_to_lorentz(algebra.boost_to(p1.coords[3:7])).matrix
    p2 = type(p1)(b.base, np.concatenate([rng.normal(size=3), p1.coords[3:7],
                                          boost @ np.concatenate([[0.0], j])]))
    res = exchange_details(b, build_any_exchange(p1, p2), lift_pair(b, p1, p2, rng))
    print(f"  n = {n}  raw phase {res.raw_phase:.12f}  min separation {res.min_separation:.3f}")

print("\nThe phase does not depend on the Lorentz frame (n = 1):")
b = DiracBundle(1, 1.0)
xs, psis = [], []
for jz in ([0, 0.6, 0.8], [0.8, 0, -0.6]):
    y = b.lift(np.concatenate([rng.normal(size=3), [1.0, 0, 0, 0, 0.0], jz]))
    xs.append(y[:3])
    psis.append(y[3:7] + 1j * y[7:11])
for rapidity in (0.0, 0.5, 1.5):
    lam = algebra.sl2c_to_lorentz(algebra.boost_to([np.cosh(rapidity), np.sinh(rapidity), 0, 0]))
    z = adjoint_exchange_massive(b, lam, xs, psis, details=True).raw_phase
    print(f"  boost rapidity {rapidity:3.1f}:  phase {z:.12f}")
