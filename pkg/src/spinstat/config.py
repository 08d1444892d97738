"""Numerical tolerances.

All checks read the active :class:`Tolerances` through :func:`get`. Use
:func:`override` to change them for a block of code::

    with config.override(eps_alg=1e-12):
        ...
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses


@dataclasses.dataclass(frozen=True)
class Tolerances:
    eps_alg: float = 1e-10       # group-element invariants
    eps_norm: float = 1e-9       # spinor normalisation constraints
    eps_geom: float = 1e-9       # phase-space / bundle constraint surfaces
    eps_fd: float = 1e-5         # finite-difference agreement
    fd_step: float = 1e-4        # central-difference step
    eps_quad: float = 1e-6       # holonomy refinement stability
    eps_int: float = 1e-3        # flux / 2 pi integer test
    eps_diag: float = 1e-6       # diagonal proximity
    eps_snap: float = 1e-6       # exchange phase snapping
    canon_modulus: float = 1e-6  # first "significant" spinor component
    max_step: float = 0.5        # largest chart jump between path samples


_current: contextvars.ContextVar[Tolerances] = contextvars.ContextVar(
    "spinstat_tolerances", default=Tolerances())


def get() -> Tolerances:
    return _current.get()


@contextlib.contextmanager
def override(**changes):
    token = _current.set(dataclasses.replace(_current.get(), **changes))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
