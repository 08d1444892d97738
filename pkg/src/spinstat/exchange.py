"""Exchange paths along one-parameter subgroup orbits and the statistics they force.

An exchange of two identical systems at ``p1, p2`` uses two group elements
``g1 = exp(Z1)`` and ``g2 = exp(Z2)`` from one Lie-algebra direction with
``g1 p1 = p2`` and ``g2 p2 = p1``. Moving the pair by ``t -> (exp(t Z1) p1,
exp(t Z2) p2)`` and lifting to the bundle gives
``[g1 xi1, g2 xi2] = e^{i theta} [xi2, xi1]``; the phase ``e^{i theta}`` fixes
which permutation lift (Bose or Fermi) is compatible with the group action.

``TypeII`` exchanges (both particles moving the same way round the circle)
never meet and have ``g2 g1`` a rotation by an odd multiple of ``2 pi``;
``TypeI`` exchanges (opposite directions) always collide halfway.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Sequence

import numpy as np

from . import algebra, config
from .algebra import LorentzElement, SU2Element, minkowski
from .errors import (AmbiguousAxisError, DegenerateInputError, DiagonalViolationError,
                     DomainError, InconsistencyError)
from .phasespaces import (Anyon, FreeRel, MassiveSpin, PhasePoint, PlaneRotation, Poincare,
                          SpinSphere, ThreeD)
from .prequant import (AnyonBundle, Bundle, BundlePoint, DiracBundle, Hopf, PairClass,
                       SpinorPoincare, TrivialU1)

TYPE_I = "TypeI"
TYPE_II = "TypeII"
DEFAULT_SAMPLES = 1025


@dataclasses.dataclass(frozen=True, eq=False)
class Composite:
    """Product ``elements[0] @ elements[1] @ ...``; the last one acts first."""

    elements: tuple

    def base(self):
        return Composite(tuple(_base_element(g) for g in self.elements))


def _base_element(g):
    if isinstance(g, SpinorPoincare):
        return g.base_element()
    if isinstance(g, Composite):
        return g.base()
    return g


def apply(owner, g, coords):
    """Act with ``g`` (possibly a :class:`Composite`) on coordinates of a space or bundle."""
    if isinstance(g, Composite):
        for h in reversed(g.elements):
            coords = apply(owner, h, coords)
        return coords
    return owner.act(g, coords)


def _su2_turn(axis, angle):
    if angle >= 0:
        return algebra.su2_exp(axis, angle)
    return algebra.su2_exp(axis, -angle).inverse()


# ---------------------------------------------------------------------------
# path types


@dataclasses.dataclass(frozen=True, eq=False)
class PairPath:
    """Two sampled paths driven by ``exp(t Z1)`` and ``exp(t Z2)`` on a shared grid.

    ``angle1``/``angle2`` are the signed rotation angles of the generators
    about the common axis; ``element1(t)``/``element2(t)`` return the lifted
    group elements (acting on bundles), whose base images produced the paths.
    """

    space: object
    t: np.ndarray
    path1: np.ndarray
    path2: np.ndarray
    mode: str
    axis: np.ndarray
    angle1: float
    angle2: float
    element1: Callable[[float], object]
    element2: Callable[[float], object]
    info: dict = dataclasses.field(default_factory=dict)

    @property
    def net_rotation(self):
        """Rotation angle of ``g2 g1`` about the common axis."""
        return self.angle1 + self.angle2

    @property
    def generators(self):
        return self.angle1 * self.axis, self.angle2 * self.axis

    def check_endpoints(self):
        tol = config.get().eps_geom * 1e3
        a = np.abs(self.path1[-1] - self.path2[0]).max()
        b = np.abs(self.path2[-1] - self.path1[0]).max()
        if max(a, b) > tol * max(1.0, np.abs(self.path1).max()):
            raise InconsistencyError(f"exchange endpoints do not swap the pair ({max(a, b):.2e})")
        return self


def _fold(g):
    """Multiply out a composite of Poincare elements."""
    if isinstance(g, Composite) and all(isinstance(h, Poincare) for h in g.elements):
        out = g.elements[0]
        for h in g.elements[1:]:
            out = out @ h
        return out
    return g


def _apply_base(space, g, coords):
    g = _fold(g)
    if isinstance(g, Poincare) and isinstance(space, (FreeRel, MassiveSpin, ThreeD)):
        # the product of slice-preserving elements, applied in one step
        return space.act(g, coords, allow_time=True)
    return apply(space, g, coords)


def _sample_pair(space, start1, start2, base1, base2, n_samples):
    """Sample both legs; ``base1``/``base2`` give the base-space elements at ``t``."""
    t = np.linspace(0.0, 1.0, n_samples)
    p1 = np.array([_apply_base(space, base1(s), start1) for s in t])
    p2 = np.array([_apply_base(space, base2(s), start2) for s in t])
    return t, p1, p2


def _legs(mode, theta, extra_turns, unbalanced_turns):
    if extra_turns < 0 or unbalanced_turns < 0:
        raise DomainError("turn counts must be nonnegative")
    if mode == TYPE_II:
        a1 = theta + 2 * math.pi * (extra_turns + unbalanced_turns)
        a2 = 2 * math.pi - theta + 2 * math.pi * extra_turns
    elif mode == TYPE_I:
        if extra_turns or unbalanced_turns:
            raise DomainError("extra turns apply to TypeII exchanges only")
        a1, a2 = theta, -theta
    else:
        raise DomainError(f"unknown exchange mode {mode!r}")
    return a1, a2


# ---------------------------------------------------------------------------
# the sphere


@dataclasses.dataclass(frozen=True)
class Circle:
    axis: np.ndarray
    gamma: float        # arc from x1 to x2, counterclockwise about axis
    gamma_prime: float  # the rest of the circle, from x2 back to x1


def _coords(p):
    return np.asarray(p.coords if isinstance(p, PhasePoint) else p, float)


def common_circle(x1, x2, axis=None) -> Circle:
    """The orbit circle of a one-parameter rotation group through both points.

    Without ``axis`` the circle is the one about the bisector ``x1 + x2``, on
    which the two points split it into equal arcs. A supplied axis must make
    equal angles with both points.
    """
    a, b = _coords(x1), _coords(x2)
    tol = config.get().eps_geom
    if np.linalg.norm(a - b) <= 1e3 * tol:
        raise DegenerateInputError("the two points coincide (diagonal configuration)")
    if axis is None:
        bis = a + b
        if np.linalg.norm(bis) <= 1e-9:
            raise AmbiguousAxisError("antipodal points: every great circle through them works; pass an axis")
        k = bis / np.linalg.norm(bis)
    else:
        k = np.asarray(axis, float)
        if abs(np.linalg.norm(k) - 1.0) > 1e-9:
            raise DomainError("axis must be a unit vector")
        if abs(k @ a - k @ b) > 1e-9:
            raise DomainError("axis does not generate a circle through both points")
    pa, pb = a - (k @ a) * k, b - (k @ b) * k
    if np.linalg.norm(pa) < 1e-12:
        raise DegenerateInputError("points lie on the rotation axis")
    theta = math.atan2(k @ np.cross(pa, pb), pa @ pb) % (2 * math.pi)
    return Circle(k, theta, 2 * math.pi - theta)


def build_exchange(x1, x2, mode=TYPE_II, extra_turns=0, axis=None, unbalanced_turns=0,
                   n_samples=DEFAULT_SAMPLES) -> PairPath:
    """Exchange path of two points on a spin sphere.

    ``extra_turns`` adds a full turn to both legs (net ``2 pi (2k + 1)``);
    ``unbalanced_turns`` adds turns to the first leg only, which gives an even
    net rotation at the price of running through the other particle.
    """
    space = x1.space if isinstance(x1, PhasePoint) else SpinSphere(0.5)
    a, b = _coords(x1), _coords(x2)
    circ = common_circle(a, b, axis)
    a1, a2 = _legs(mode, circ.gamma, extra_turns, unbalanced_turns)
    k = circ.axis

    def e1(t):
        return _su2_turn(k, a1 * t)

    def e2(t):
        return _su2_turn(k, a2 * t)

    t = np.linspace(0.0, 1.0, n_samples)
    p1 = _rodrigues_path(k, a1 * t, a)
    p2 = _rodrigues_path(k, a2 * t, b)
    return PairPath(space, t, p1, p2, mode, k, a1, a2, e1, e2,
                    {"gamma": circ.gamma, "gamma_prime": circ.gamma_prime}).check_endpoints()


def _rodrigues_path(k, angles, x):
    """Rotations of ``x`` about ``k`` by each of ``angles`` (vectorised)."""
    c, s = np.cos(angles)[:, None], np.sin(angles)[:, None]
    return c * x + s * np.cross(k, x) + (1 - c) * (k @ x) * k


# ---------------------------------------------------------------------------
# massive spinning particles


def _rest_boost(i):
    """SpinorPoincare element taking the unit timelike ``i`` to rest."""
    return SpinorPoincare(algebra.boost_to(i).inverse())


def _line_rotation(k, angle, center):
    alpha = _su2_turn(k, angle).as_sl2c()
    rot = algebra.rotation_matrix(k, angle)
    shift = np.concatenate([[0.0], center - rot @ center])
    return SpinorPoincare(alpha, shift)


def _line_rotation_base(k, angle, center):
    rot = algebra.rotation_matrix(k, angle)
    return Poincare(_rotation_embed(rot), np.concatenate([[0.0], center - rot @ center]))


def _rest_frame_circle(x1, j1, x2, j2, axis):
    d = x2 - x1
    tol = 1e-9
    if np.linalg.norm(d) < tol and np.linalg.norm(j1 - j2) < tol:
        raise DegenerateInputError("the two particles coincide")
    if axis is None:
        k = np.cross(j1 - j2, d) if np.linalg.norm(d) > tol else np.cross(j1, j2)
        if np.linalg.norm(k) < 1e-9:
            raise AmbiguousAxisError("no unique rotation line through this pair; pass an axis")
        k = k / np.linalg.norm(k)
    else:
        k = np.asarray(axis, float)
        if abs(np.linalg.norm(k) - 1) > 1e-9 or abs(k @ d) > 1e-9 or abs(k @ (j1 - j2)) > 1e-9:
            raise DomainError("axis must be a unit vector with k.(x1 - x2) = 0 and k.(j1 - j2) = 0")
    p1, p2 = j1 - (k @ j1) * k, j2 - (k @ j2) * k
    if np.linalg.norm(p1) < 1e-12:
        theta = math.pi
    else:
        theta = math.atan2(k @ np.cross(p1, p2), p1 @ p2) % (2 * math.pi)
    if theta < 1e-12:
        raise AmbiguousAxisError("spin vectors agree; no rotation about a line swaps the positions")
    half = 0.5 * np.linalg.norm(d)
    if half < tol:
        center = x1.copy()
    else:
        n_hat = np.cross(k, d / (2 * half))
        center = 0.5 * (x1 + x2) + half / math.tan(theta / 2) * n_hat
    return k, theta, center


def build_dirac_exchange(p1, p2, mode=TYPE_II, extra_turns=0, axis=None, frame=None,
                         unbalanced_turns=0, n_samples=DEFAULT_SAMPLES) -> PairPath:
    """Exchange of two massive spinning particles with equal momentum.

    The pair is boosted to the common rest frame, swapped there by rotations
    about a line, and boosted back; ``frame`` (a SpinorPoincare element)
    conjugates the whole construction further.
    """
    space = p1.space
    if not isinstance(space, MassiveSpin) or p2.space != space:
        raise DomainError("both points must lie on the same MassiveSpin space")
    c1, c2 = p1.coords, p2.coords
    if np.abs(c1[3:7] - c2[3:7]).max() > 1e-8:
        raise DomainError("the exchange needs equal momenta I1 = I2 (use the common rest frame)")
    to_rest = _rest_boost(c1[3:7])
    back = to_rest.inverse()
    r1 = apply(space, to_rest.base_element(), c1)
    r2 = apply(space, to_rest.base_element(), c2)
    k, theta, center = _rest_frame_circle(r1[:3], r1[8:11], r2[:3], r2[8:11], axis)
    a1, a2 = _legs(mode, theta, extra_turns, unbalanced_turns)
    outer = (back,) if frame is None else (frame, back)
    inner = (to_rest,) if frame is None else (to_rest, frame.inverse())

    def e1(t):
        return Composite(outer + (_line_rotation(k, a1 * t, center),) + inner)

    def e2(t):
        return Composite(outer + (_line_rotation(k, a2 * t, center),) + inner)

    outer_b = tuple(g.base_element() for g in outer)
    inner_b = tuple(g.base_element() for g in inner)

    def b1(t):
        return Composite(outer_b + (_line_rotation_base(k, a1 * t, center),) + inner_b)

    def b2(t):
        return Composite(outer_b + (_line_rotation_base(k, a2 * t, center),) + inner_b)

    s1 = c1 if frame is None else apply(space, frame.base_element(), c1)
    s2 = c2 if frame is None else apply(space, frame.base_element(), c2)
    t, q1, q2 = _sample_pair(space, s1, s2, b1, b2, n_samples)
    return PairPath(space, t, q1, q2, mode, k, a1, a2, e1, e2,
                    {"gamma": theta, "gamma_prime": 2 * math.pi - theta,
                     "center": center}).check_endpoints()


# ---------------------------------------------------------------------------
# spin-zero and 2+1 particles


def _boost_matrix(u):
    """Pure boost taking rest to the unit timelike ``u`` (any dimension)."""
    u = np.asarray(u, float)
    d = len(u)
    m = np.eye(d)
    m[0, 0] = u[0]
    m[0, 1:] = u[1:]
    m[1:, 0] = u[1:]
    m[1:, 1:] += np.outer(u[1:], u[1:]) / (1.0 + u[0])
    return LorentzElement(m)


def _rotation_embed(rot):
    m = np.eye(len(rot) + 1)
    m[1:, 1:] = rot
    return LorentzElement(m)


def build_relativistic_exchange(p1, p2, mode=TYPE_II, extra_turns=0, axis=None,
                                unbalanced_turns=0, n_samples=DEFAULT_SAMPLES) -> PairPath:
    """Exchange for ``FreeRel`` / ``ThreeD``: a rotation about the midpoint in the centre-of-momentum frame."""
    space = p1.space
    if not isinstance(space, (FreeRel, ThreeD)) or p2.space != space:
        raise DomainError("both points must lie on the same FreeRel or ThreeD space")
    d = space.spatial_dim
    c1, c2 = p1.coords, p2.coords
    total = space.i_of(c1) + space.i_of(c2)
    u = total / math.sqrt(minkowski(total, total))
    boost = _boost_matrix(u)
    back, to_cm = Poincare(boost), Poincare(boost.inverse())
    q1 = space.act(to_cm, c1)
    q2 = space.act(to_cm, c2)
    x1, x2 = q1[:d], q2[:d]
    mom = space.i_of(q1)[1:]
    sep = x1 - x2
    if np.linalg.norm(sep) < 1e-9 and np.linalg.norm(mom) < 1e-9:
        raise DegenerateInputError("the two particles coincide")
    mid = 0.5 * (x1 + x2)
    if d == 2:
        k = np.array([0.0, 0.0, 1.0])
    elif axis is not None:
        k = np.asarray(axis, float)
        if abs(np.linalg.norm(k) - 1) > 1e-9 or abs(k @ sep) > 1e-9 or abs(k @ mom) > 1e-9:
            raise DomainError("axis must be a unit vector orthogonal to separation and momentum")
    else:
        k = np.cross(mom, sep)
        if np.linalg.norm(k) < 1e-9:
            ref = sep if np.linalg.norm(sep) > 1e-9 else mom
            k = np.cross(ref, np.eye(3)[np.argmin(np.abs(ref))])
        k = k / np.linalg.norm(k)
    a1, a2 = _legs(mode, math.pi, extra_turns, unbalanced_turns)

    def turn(angle):
        rot = algebra.rotation_matrix(k, angle)[:d, :d] if d == 3 else np.array(
            [[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
        return Poincare(_rotation_embed(rot), np.concatenate([[0.0], mid - rot @ mid]))

    def e1(t):
        return Composite((back, turn(a1 * t), to_cm))

    def e2(t):
        return Composite((back, turn(a2 * t), to_cm))

    t, r1, r2 = _sample_pair(space, c1, c2, e1, e2, n_samples)  # already base elements
    return PairPath(space, t, r1, r2, mode, k, a1, a2, e1, e2,
                    {"gamma": math.pi, "gamma_prime": math.pi}).check_endpoints()


def build_any_exchange(p1, p2, mode=TYPE_II, extra_turns=0, axis=None, **kw) -> PairPath:
    space = p1.space
    if isinstance(space, SpinSphere):
        return build_exchange(p1, p2, mode, extra_turns, axis, **kw)
    if isinstance(space, MassiveSpin):
        return build_dirac_exchange(p1, p2, mode, extra_turns, axis, **kw)
    if isinstance(space, (FreeRel, ThreeD)):
        return build_relativistic_exchange(p1, p2, mode, extra_turns, axis, **kw)
    raise DomainError(f"no exchange construction for {type(space).__name__}")


# ---------------------------------------------------------------------------
# diagonal test


def diagonal_crossing(p: PairPath):
    """``(crossed, min_separation, t_min)`` using the grid plus per-segment refinement."""
    diff = np.asarray(p.path1) - np.asarray(p.path2)
    d0, d1 = diff[:-1], diff[1:]
    step = d1 - d0
    den = np.einsum("ij,ij->i", step, step)
    with np.errstate(invalid="ignore", divide="ignore"):
        tau = np.where(den > 0, -np.einsum("ij,ij->i", d0, step) / den, 0.0)
    tau = np.clip(tau, 0.0, 1.0)
    closest = d0 + tau[:, None] * step
    dist = np.linalg.norm(closest, axis=1)
    i = int(np.argmin(dist))
    t_min = p.t[i] + tau[i] * (p.t[i + 1] - p.t[i])
    sep = float(dist[i])
    return sep < config.get().eps_diag, sep, float(t_min)


def pair_separations(p: PairPath):
    return np.linalg.norm(np.asarray(p.path1) - np.asarray(p.path2), axis=1)


# ---------------------------------------------------------------------------
# phases


ADMISSIBLE = (1.0 + 0j, -1.0 + 0j)


def _snap(phase, admissible):
    dists = [abs(phase - a) for a in admissible]
    i = int(np.argmin(dists))
    if dists[i] > config.get().eps_snap:
        raise InconsistencyError(f"exchange phase {phase:.6g} is not in the admissible set")
    return admissible[i]


@dataclasses.dataclass(frozen=True)
class ExchangeResult:
    phase: complex
    raw_phase: complex
    min_separation: float
    net_rotation: float
    leg_integrals: tuple


def _lifted_leg(b: Bundle, element, y0, t):
    return np.array([apply(b, element(s), y0) for s in t])


def _translation_integral(b: Bundle, ys):
    """``int m I^i dx^i`` along a lifted Dirac leg (the translational part of the connection)."""
    total = 0.0
    for y0, y1 in zip(ys[:-1], ys[1:]):
        i0, i1 = b.project(y0)[3:7], b.project(y1)[3:7]
        total += b.m * np.dot(0.5 * (i0[1:] + i1[1:]), y1[:3] - y0[:3])
    return total


def exchange_details(b: Bundle, p: PairPath, start: PairClass, legs_every: int = 16) -> ExchangeResult:
    crossed, sep, t_min = diagonal_crossing(p)
    if crossed:
        raise DiagonalViolationError(f"exchange path meets the diagonal at t = {t_min:.4f}")
    if start.bundle != b:
        raise DomainError("start class lives on another bundle")
    tol = 1e3 * config.get().eps_geom
    for pt, path in ((start.first, p.path1), (start.second, p.path2)):
        c = b.project(pt.y)
        if np.abs(c - path[0]).max() > tol * max(1.0, np.abs(c).max()):
            raise DomainError("start class does not project to the start of the exchange path")
    y1 = apply(b, p.element1(1.0), start.first.y)
    y2 = apply(b, p.element2(1.0), start.second.y)
    moved = PairClass(BundlePoint(b, y1), BundlePoint(b, y2))
    swapped = PairClass(start.second, start.first)
    if not (moved.first.same_base(swapped.first) and moved.second.same_base(swapped.second)):
        raise InconsistencyError("lifted exchange does not cover the base exchange")
    raw = swapped.phase_to(moved)
    phase = _snap(raw, ADMISSIBLE)
    legs = ()
    if isinstance(b, DiracBundle):
        ts = p.t[::legs_every] if (len(p.t) - 1) % legs_every == 0 else p.t
        legs = (_translation_integral(b, _lifted_leg(b, p.element1, start.first.y, ts)),
                _translation_integral(b, _lifted_leg(b, p.element2, start.second.y, ts)))
    return ExchangeResult(phase, raw, sep, p.net_rotation, legs)


def exchange_phase(b: Bundle, p: PairPath, start: PairClass) -> complex:
    """``e^{i theta}`` with ``[g1 xi1, g2 xi2] = e^{i theta} [xi2, xi1]``."""
    return exchange_details(b, p, start).phase


def adjoint_exchange_massive(b: DiracBundle, lam: LorentzElement, x_pair, spinor_pair,
                             extra_turns: int = 0, axis=None, details: bool = False):
    """Exchange phase after conjugating the rest-frame exchange by ``lam``.

    ``x_pair`` and ``spinor_pair`` describe the untransformed configuration,
    which must be at rest (``I = (1, 0, 0, 0)`` for both particles).
    ``details=True`` returns the full :class:`ExchangeResult` (unsnapped phase included).
    """
    if not isinstance(b, DiracBundle):
        raise DomainError("adjoint exchange is defined on Dirac bundles")
    xi1 = BundlePoint.from_dirac(b, x_pair[0], spinor_pair[0])
    xi2 = BundlePoint.from_dirac(b, x_pair[1], spinor_pair[1])
    for xi in (xi1, xi2):
        if np.abs(b.project(xi.y)[3:7] - np.array([1.0, 0, 0, 0])).max() > 1e-8:
            raise DomainError("untransformed configuration must be at rest")
    frame = SpinorPoincare(algebra.lorentz_to_sl2c(lam))
    path = build_dirac_exchange(xi1.base_point(), xi2.base_point(), TYPE_II, extra_turns,
                                axis, frame=frame)
    start = PairClass(BundlePoint(b, b.act(frame, xi1.y)), BundlePoint(b, b.act(frame, xi2.y)))
    res = exchange_details(b, path, start)
    return res if details else res.phase


# ---------------------------------------------------------------------------
# anyons


def anyon_exchange_phases(alpha: float):
    """The phases ``(-1)^f e^{i l alpha}``, ``f, l in {0, 1}``, with duplicates merged."""
    out = []
    for f in (0, 1):
        for l in (0, 1):
            z = (-1) ** f * complex(np.exp(1j * l * alpha))
            if all(abs(z - w) > 1e-9 for w in out):
                out.append(z)
    return tuple(sorted(out, key=lambda z: round(math.atan2(z.imag, z.real) % (2 * math.pi), 12)))


def anyon_exchange(b: AnyonBundle, point, extra_turns: int = 0):
    """Run the odd-multiple-of-``2 pi`` rotation of the relative coordinate.

    Returns ``(raw_phase, windings, selected_phase)``: the fiber phase the
    lifted rotation produces, the number of ``2 pi`` turns ``N`` it makes
    (tracked exactly through the cover), and ``e^{i (N mod 2) alpha}``, the
    phase after identifying even windings with the identity.
    """
    if not isinstance(b, AnyonBundle):
        raise DomainError("anyon exchange needs an AnyonBundle")
    coords = point.coords if isinstance(point, PhasePoint) else np.asarray(point, float)
    y0 = b.canonical(b.lift(coords))
    half = PlaneRotation(math.pi * (2 * extra_turns + 1))
    y1 = b.act(half, b.act(half, y0))
    windings = b.winding(y0) - b.winding(y1)
    if not BundlePoint(b, y0).same_base(BundlePoint(b, y1)):
        raise InconsistencyError("double exchange did not return to the start")
    raw = complex(b.overlap_phase(y0, y1))
    expected = complex(np.exp(1j * windings * b.alpha))
    if abs(raw - expected) > config.get().eps_snap:
        raise InconsistencyError("lifted rotation phase disagrees with the winding count")
    selected = complex(np.exp(1j * (windings % 2) * b.alpha))
    return raw, windings, selected


# ---------------------------------------------------------------------------
# classification


@dataclasses.dataclass(frozen=True)
class StatisticsVerdict:
    kind: str                 # "BoseOnly", "SpinStatistics" or "Anyonic"
    f: int | None = None
    l: int | None = None
    phase: complex = 1.0 + 0j
    net_rotation: float = 0.0
    min_separation: float = float("nan")
    accumulated_phase: complex = 1.0 + 0j

    def as_dict(self):
        d = {"kind": self.kind, "net_rotation": self.net_rotation,
             "min_separation": self.min_separation,
             "phase": [self.phase.real, self.phase.imag],
             "accumulated_phase": [self.accumulated_phase.real, self.accumulated_phase.imag]}
        if self.f is not None:
            d["f"] = self.f
        if self.l is not None:
            d["l"] = self.l
        return d


def lift_pair(b: Bundle, p1, p2, rng=None):
    """Pair class over ``(p1, p2)``; ``rng`` randomises both fiber phases."""
    y1, y2 = b.lift(p1.coords), b.lift(p2.coords)
    if rng is not None:
        y1 = b.fiber_act(y1, rng.uniform(0, 2 * math.pi))
        y2 = b.fiber_act(y2, rng.uniform(0, 2 * math.pi))
    return PairClass(BundlePoint(b, y1), BundlePoint(b, y2))


def classify_statistics(b: Bundle, samples: Sequence, rng=None, extra_turns: int = 0,
                        n_samples: int = DEFAULT_SAMPLES) -> StatisticsVerdict:
    """Run TypeII exchanges over ``samples`` and read off the statistics.

    ``samples`` are point pairs on the bundle's base; for an ``AnyonBundle``
    they are single points of the relative coordinate.
    """
    samples = list(samples)
    if not samples:
        raise DomainError("classification needs at least one sample")
    if isinstance(b, AnyonBundle):
        results = [anyon_exchange(b, s, extra_turns) for s in samples]
        chosen = {complex(round(r[2].real, 9), round(r[2].imag, 9)) for r in results}
        if len(chosen) != 1:
            raise InconsistencyError("samples disagree on the anyon phase")
        raw, windings, selected = results[0]
        if abs(selected - np.exp(1j * b.alpha)) > 1e-12 or windings % 2 != 1:
            raise InconsistencyError("odd-rotation rule did not select e^{i alpha}")
        return StatisticsVerdict("Anyonic", 0, 1, selected, 2 * math.pi * windings,
                                 accumulated_phase=raw)
    verdicts = []
    for p1, p2 in samples:
        path = build_any_exchange(p1, p2, TYPE_II, extra_turns, n_samples=n_samples)
        res = exchange_details(b, path, lift_pair(b, p1, p2, rng))
        verdicts.append(res)
    phases = {r.phase for r in verdicts}
    if len(phases) != 1:
        raise InconsistencyError("samples disagree on the exchange phase")
    phase = verdicts[0].phase
    sep = min(r.min_separation for r in verdicts)
    raw = verdicts[0].raw_phase
    if isinstance(b, TrivialU1):
        if phase != 1:
            raise InconsistencyError("trivial bundle produced a nontrivial exchange phase")
        return StatisticsVerdict("BoseOnly", None, None, phase, verdicts[0].net_rotation, sep, raw)
    f = 0 if phase == 1 else 1
    return StatisticsVerdict("SpinStatistics", f, None, phase, verdicts[0].net_rotation, sep, raw)


__all__ = [
    "ADMISSIBLE", "Circle", "Composite", "ExchangeResult", "PairPath", "StatisticsVerdict",
    "TYPE_I", "TYPE_II", "adjoint_exchange_massive", "anyon_exchange", "anyon_exchange_phases",
    "apply", "build_any_exchange", "build_dirac_exchange", "build_exchange",
    "build_relativistic_exchange", "classify_statistics", "common_circle", "diagonal_crossing",
    "exchange_details", "exchange_phase", "lift_pair", "pair_separations",
]
