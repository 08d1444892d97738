"""Cases without a spin sign: spin zero, 2+1 dimensions, and anyons.

Run:  python3 demos/03_bose_only_and_anyons.py
"""

import numpy as np

from spinstat import AnyonBundle, FreeRel, ThreeD, TrivialU1
from spinstat.exchange import anyon_exchange, anyon_exchange_phases, classify_statistics

rng = np.random.default_rng(2)

# The prequantum bundles here are trivial; the lifted exchange acts trivially on fibers.
for sp in (FreeRel(1.0), ThreeD(1.0, 0.5)):
    pairs = [(sp.random_point(rng), sp.random_point(rng)) for _ in range(4)]
    v = classify_statistics(TrivialU1(sp), pairs, rng)
    print(f"{type(sp).__name__:8s} -> {v.kind}")

# In the plane the relative coordinate lives on a punctured plane, whose universal
# cover carries a deck-twisted bundle labelled by alpha.
print("\nAnyon exchange phases (-1)^f e^{i l alpha}:")
for label, alpha in (("0", 0.0), ("pi/3", np.pi / 3), ("pi", np.pi)):
    phases = anyon_exchange_phases(alpha)
    shown = ", ".join(f"{np.angle(z) / np.pi:+.3f} pi" for z in phases)
    b = AnyonBundle(alpha)
    raw, windings, selected = anyon_exchange(b, b.base.random_point(rng))
    print(f"  alpha = {label:5s} {len(phases)} phases [{shown}]; "
          f"half-turn exchange winds {windings} time(s), selects arg {np.angle(selected) / np.pi:+.3f} pi")
