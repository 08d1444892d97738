"""The spin sphere, its flux, and loop holonomy on the Hopf bundles.

Run:  python3 demos/01_spin_sphere_and_hopf.py
"""

import numpy as np

from spinstat import Hopf, SpinSphere, integrality_check, surface_flux
from spinstat.holonomy import cap_flux, line_holonomy, section_lift, sphere_path, star_loop

# The sphere of spin s carries the area form s * x.(u x v); its total flux is 4 pi s.
print("Sphere flux on an icosphere mesh (depth 5):")
for s in (0.5, 1.0, 1.5, 2.0):
    rep = surface_flux(SpinSphere(s), 5)
    print(f"  s = {s:3.1f}  flux = {rep.total:.6f}  4 pi s = {4 * np.pi * s:.6f}  "
          f"extrapolated = {rep.extrapolated:.9f}")

# A circle bundle with that curvature exists only if flux / 2 pi is an integer.
print("\nQuantisable spins (flux / 2 pi integral):")
for s in (0.0, 0.25, 0.5, 0.7, 1.0, 1.5):
    ok, n = integrality_check(s)
    print(f"  s = {s:4.2f}  ->  {'n = ' + str(n) if ok else 'not quantisable'}")

# Holonomy around a loop equals exp(i * enclosed flux).
print("\nHolonomy vs enclosed flux on Hopf_1, three wobbly loops:")
rng = np.random.default_rng(0)
b = Hopf(1)
for _ in range(3):
    c = rng.normal(size=3)
    c /= np.linalg.norm(c)
    loop = sphere_path(b.base, star_loop(c, rng.uniform(0.3, 1.0), rng, 513, 0.15))
    flux = cap_flux(b.base, loop, c)
    hol = line_holonomy(b, section_lift(b, loop, c))
    print(f"  flux = {flux:+.6f}  holonomy = {hol:.6f}  |difference| = {abs(hol - np.exp(1j * flux)):.1e}")
