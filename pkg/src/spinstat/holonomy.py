"""Line holonomy, horizontal lifts and surface fluxes.

Orientation: the sphere carries its outward normal and loops are traversed
counterclockwise as seen from outside, so ``int_{S^2} Omega = +4 pi s`` and
the transport around a loop bounding flux ``F`` is ``e^{-iF}``.
"""

from __future__ import annotations

import dataclasses
import functools

import numpy as np

from . import config
from .errors import DomainError, UnsupportedOperationError
from .phasespaces import PhaseSpace, SpinSphere
from .prequant import Bundle, BundlePoint, Hopf, spinor_along

INTERPOLATIONS = ("geodesic", "linear", "normalized")


@dataclasses.dataclass(frozen=True, eq=False)
class SampledPath:
    """Samples of a curve on a phase space or on a bundle's total space."""

    owner: object
    t: np.ndarray
    points: np.ndarray
    interpolation: str = "linear"

    def __post_init__(self):
        t = np.array(self.t, float)
        pts = np.array(self.points, float)
        if pts.ndim != 2 or len(pts) != len(t) or len(t) < 2:
            raise DomainError("a path needs at least two samples with one parameter each")
        if np.any(np.diff(t) <= 0):
            raise DomainError("path parameters must be strictly increasing")
        if self.interpolation not in INTERPOLATIONS:
            raise DomainError(f"unknown interpolation {self.interpolation!r}")
        jump = np.linalg.norm(np.diff(pts, axis=0), axis=1).max()
        if jump > config.get().max_step:
            raise DomainError(f"consecutive samples are {jump:.3g} apart; refine the path")
        t.setflags(write=False)
        pts.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.t)

    @property
    def closed(self):
        a, b = self.points[0], self.points[-1]
        return np.abs(a - b).max() <= config.get().eps_geom * max(1.0, np.abs(a).max())

    def reversed(self):
        return SampledPath(self.owner, 1.0 - self.t[::-1] if self.t[0] == 0 else -self.t[::-1],
                           self.points[::-1], self.interpolation)

    def every_other(self):
        if len(self) % 2 == 0:
            raise DomainError("halving needs an odd number of samples")
        return SampledPath(self.owner, self.t[::2], self.points[::2], self.interpolation)


def sphere_path(space: SpinSphere, points, t=None) -> SampledPath:
    pts = np.asarray(points, float)
    pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    t = np.linspace(0.0, 1.0, len(pts)) if t is None else t
    return SampledPath(space, t, pts, "geodesic")


# ---------------------------------------------------------------------------
# holonomy


def _check_on_bundle(b: Bundle, path: SampledPath):
    if path.owner != b:
        raise DomainError("path does not live on this bundle")
    for y in path.points:
        b.check_coords(y)


def _midpoint_sum(b: Bundle, pts):
    mids = 0.5 * (pts[1:] + pts[:-1])
    steps = np.diff(pts, axis=0)
    return sum(b.connection(m, s) for m, s in zip(mids, steps))


def connection_integral(b: Bundle, lifted: SampledPath):
    """``(int omega, error estimate)`` by the midpoint rule with one Richardson step."""
    _check_on_bundle(b, lifted)
    fine = _midpoint_sum(b, lifted.points)
    if len(lifted) % 2 == 0 or len(lifted) < 5:
        return float(fine), float("nan")
    coarse = _midpoint_sum(b, lifted.points[::2])
    return float((4.0 * fine - coarse) / 3.0), float(abs(fine - coarse) / 3.0)


def line_holonomy(b: Bundle, lifted: SampledPath) -> complex:
    """``exp(i int omega)`` along a sampled path on the total space."""
    integral, _ = connection_integral(b, lifted)
    return complex(np.exp(1j * integral))


def horizontal_lift(b: Bundle, base: SampledPath, xi0: BundlePoint) -> SampledPath:
    """Parallel transport of ``xi0`` along ``base``.

    Each step lifts the next base point and removes the discrete connection of
    the step by a fiber rotation. On the Hopf bundles the step is the
    Pancharatnam projection, exact for geodesic segments.
    """
    if base.owner != b.base and type(base.owner) is not type(b.base):
        raise DomainError("base path lives on another space")
    if xi0.bundle != b:
        raise DomainError("initial point belongs to another bundle")
    start = b.project(xi0.y)
    tol = config.get().eps_geom
    if np.abs(start - base.points[0]).max() > tol * 100 * max(1.0, np.abs(start).max()):
        raise DomainError("initial point does not project to the start of the path")
    ys = [np.asarray(xi0.y, float)]
    for c in base.points[1:]:
        try:
            b.base.check_coords(c)
        except DomainError as exc:
            raise DomainError(f"base path leaves the phase space: {exc}") from None
        ys.append(b.lift(c, ref=ys[-1]))
    interp = "normalized" if isinstance(b, Hopf) else "linear"
    return SampledPath(b, base.t, np.array(ys), interp)


def transport_phase(b: Bundle, lifted: SampledPath) -> complex:
    """Fiber element taking the first lifted point to the last one (base path closed)."""
    return BundlePoint(b, lifted.points[0]).phase_to(BundlePoint(b, lifted.points[-1]))


def section_lift(b: Hopf, loop: SampledPath, center) -> SampledPath:
    """Lift a sphere path through the smooth local section centred at ``center``.

    The section ``x -> (1 + x.sigma) xi_c / |...|`` is smooth away from ``-center``.
    """
    xi_c = spinor_along(np.asarray(center, float))
    ys = []
    for x in loop.points:
        xi = spinor_along(x, xi_c)
        ys.append(np.array([xi[0].real, xi[0].imag, xi[1].real, xi[1].imag]))
    return SampledPath(b, loop.t, np.array(ys), "normalized")


# ---------------------------------------------------------------------------
# fluxes


@dataclasses.dataclass(frozen=True)
class FluxReport:
    total: float
    depth: int
    estimated_error: float
    extrapolated: float

    def as_dict(self):
        return dataclasses.asdict(self)


_PHI = (1 + 5 ** 0.5) / 2


@functools.lru_cache(maxsize=None)
def _icosphere(depth: int):
    verts = np.array([[-1, _PHI, 0], [1, _PHI, 0], [-1, -_PHI, 0], [1, -_PHI, 0],
                      [0, -1, _PHI], [0, 1, _PHI], [0, -1, -_PHI], [0, 1, -_PHI],
                      [_PHI, 0, -1], [_PHI, 0, 1], [-_PHI, 0, -1], [-_PHI, 0, 1]], float)
    verts /= np.linalg.norm(verts, axis=1, keepdims=True)
    faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11), (1, 5, 9), (5, 11, 4),
             (11, 10, 2), (10, 7, 6), (7, 1, 8), (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8),
             (3, 8, 9), (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    tri = verts[np.array(faces)]
    for _ in range(depth):
        a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]

        def mid(p, q):
            m = p + q
            return m / np.linalg.norm(m, axis=1, keepdims=True)

        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        tri = np.concatenate([np.stack(s, axis=1) for s in
                              ((a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca))])
    tri.setflags(write=False)
    return tri


def _mesh_flux(s, depth):
    tri = _icosphere(depth)
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    centroid = a + b + c
    centroid /= np.linalg.norm(centroid, axis=1, keepdims=True)
    # Omega = s x.(u x v) on the flat triangle's edge vectors, at the projected centroid
    return float(0.5 * s * np.einsum("ij,ij->", centroid, np.cross(b - a, c - a)))


def surface_flux(space: PhaseSpace, depth: int) -> FluxReport:
    """Integral of the symplectic form over the icosphere of the given refinement depth."""
    if not isinstance(space, SpinSphere):
        raise UnsupportedOperationError("surface flux is only defined for the compact SpinSphere")
    if depth < 0:
        raise DomainError("mesh depth must be nonnegative")
    fine = _mesh_flux(space.s, depth)
    finer = _mesh_flux(space.s, depth + 1)
    # error is O(4^-depth); one Richardson step estimates it
    extrapolated = finer + (finer - fine) / 3.0
    return FluxReport(fine, depth, abs(fine - extrapolated), extrapolated)


def integrality_check(s: float, depth: int = 5, eps_int: float | None = None):
    """``(quantizable, n)``: is the sphere's flux an integer multiple of ``2 pi``?"""
    if s < 0:
        raise DomainError("spin must be nonnegative")
    eps_int = config.get().eps_int if eps_int is None else eps_int
    report = surface_flux(SpinSphere(s), depth)
    q = report.extrapolated / (2 * np.pi)
    n = int(round(q))
    return (True, n) if abs(q - n) <= eps_int else (False, None)


def _solid_angles(center, p, q):
    """Signed solid angles of the geodesic triangles ``(center, p_i, q_i)``."""
    num = np.einsum("j,ij->i", center, np.cross(p, q))
    den = 1.0 + p @ center + np.einsum("ij,ij->i", p, q) + q @ center
    return 2.0 * np.arctan2(num, den)


def _fan_flux(s, center, pts):
    return s * float(np.sum(_solid_angles(center, pts[:-1], pts[1:])))


def cap_flux(space: SpinSphere, loop: SampledPath, center=None, extrapolate=True) -> float:
    """Flux of ``Omega`` through the cap bounded by a closed loop and containing ``center``.

    The cap is fanned into geodesic triangles from ``center``; the polygon
    error is removed with one Richardson step over the halved sampling;
    ``extrapolate=False`` returns the flux of the geodesic polygon itself.
    """
    if not isinstance(space, SpinSphere):
        raise UnsupportedOperationError("cap flux is defined on the SpinSphere")
    pts = np.asarray(loop.points, float)
    if center is None:
        center = pts.mean(axis=0)
    center = np.asarray(center, float) / np.linalg.norm(center)
    fine = _fan_flux(space.s, center, pts)
    if not extrapolate or len(pts) % 2 == 0 or len(pts) < 5:
        return fine
    coarse = _fan_flux(space.s, center, pts[::2])
    return (4.0 * fine - coarse) / 3.0


def star_loop(center, radius, rng=None, n_samples=513, wobble=0.0, n_modes=3):
    """Closed star-shaped loop around ``center`` (counterclockwise seen from outside)."""
    c = np.asarray(center, float)
    c = c / np.linalg.norm(c)
    helper = np.eye(3)[np.argmin(np.abs(c))]
    e1 = np.cross(c, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(c, e1)
    phi = np.linspace(0.0, 2 * np.pi, n_samples)
    r = np.full_like(phi, radius)
    if wobble and rng is not None:
        for k in range(1, n_modes + 1):
            a, b = rng.normal(scale=wobble / k, size=2)
            r = r + a * np.cos(k * phi) + b * np.sin(k * phi)
    pts = (np.cos(r)[:, None] * c + np.sin(r)[:, None] * (np.cos(phi)[:, None] * e1
                                                          + np.sin(phi)[:, None] * e2))
    pts[-1] = pts[0]
    return pts


__all__ = [
    "FluxReport", "SampledPath", "cap_flux", "connection_integral", "horizontal_lift",
    "integrality_check", "line_holonomy", "section_lift", "sphere_path", "star_loop",
    "surface_flux", "transport_phase",
]
