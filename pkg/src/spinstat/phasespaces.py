"""The six supported symplectic phase spaces.

Every space stores its points as a flat real coordinate vector in an ambient
chart (redundant coordinates with constraints, e.g. unit 4-vectors). The
symplectic form is given by a formula that also makes sense slightly off the
constraint surface, which is what the finite-difference exterior derivative
needs: pulling back commutes with ``d``, so ambient differences along tangent
directions measure the intrinsic ``d Omega``.

Coordinate layouts
------------------
=================  ==========================================  =====
space              coordinates                                 size
=================  ==========================================  =====
SpinSphere(s)      x (unit 3-vector)                           3
FreeRel(m)         x (3, slice x^0 = 0), I (4)                 7
MassiveSpin(m, s)  x (3, slice x^0 = 0), I (4), J (4)          11
Massless(s, chi)   x (4), I (4), J (4)                         12
ThreeD(m, s)       x (2, slice x^0 = 0), I (3)                 5
Anyon(alpha, m)    cover (x1, x2), momentum I (2)              4
=================  ==========================================  =====
"""

from __future__ import annotations

import dataclasses

import numpy as np

from . import algebra, config
from .algebra import (EPS_LOWER, EPS_LOWER_2P1, EPS_UPPER, ETA, ETA3,
                      LorentzElement, SO3Element, SU2Element, minkowski)
from .errors import DomainError

# ---------------------------------------------------------------------------
# group elements acting on phase spaces


@dataclasses.dataclass(frozen=True, eq=False)
class Poincare:
    """``x -> L x + shift`` on events, ``I -> L I``, ``J -> L J``.

    Works in 3+1 and 2+1 dimensions (``shift`` has the matching length).
    """

    lorentz: LorentzElement
    shift: np.ndarray = None

    def __post_init__(self):
        shift = np.zeros(self.lorentz.dim) if self.shift is None else np.asarray(self.shift, float)
        if shift.shape != (self.lorentz.dim,):
            raise DomainError("translation has the wrong dimension")
        object.__setattr__(self, "shift", shift)

    @classmethod
    def identity(cls, dim=4):
        return cls(LorentzElement.identity(dim))

    def __matmul__(self, other):
        lm = self.lorentz.matrix
        return Poincare(self.lorentz @ other.lorentz, lm @ other.shift + self.shift)

    def inverse(self):
        inv = self.lorentz.inverse()
        return Poincare(inv, -inv.matrix @ self.shift)


@dataclasses.dataclass(frozen=True)
class PlaneRotation:
    """Rotation of the punctured plane, lifted to the universal cover.

    Follows the convention ``(x, y) -> (x cos a + y sin a, -x sin a + y cos a)``,
    i.e. clockwise by ``angle``; angles are real numbers, not reduced mod 2 pi.
    """

    angle: float


@dataclasses.dataclass(frozen=True)
class Deck:
    """Deck transformation ``n`` of the anyon cover: a counterclockwise turn by 2 pi n."""

    n: int


def _jacobian(f, x, h=1e-3):
    x = np.asarray(x, float)
    cols = [(f(x + h * e) - f(x - h * e)) / (2 * h) for e in np.eye(len(x))]
    return np.array(cols).T


def _null_space(a, rank):
    _, _, vt = np.linalg.svd(a)
    return vt[rank:].T


def _slice(event, velocity):
    """Slide an event along ``velocity`` back to ``x^0 = 0``; returns spatial part."""
    lam = event[0] / velocity[0]
    return event[1:] - lam * velocity[1:]


def _random_timelike(rng, spatial_dim, scale=0.6):
    p = rng.normal(scale=scale, size=spatial_dim)
    return np.concatenate([[np.sqrt(1.0 + p @ p)], p])


# ---------------------------------------------------------------------------
# phase spaces


class PhaseSpace:
    """Common machinery; subclasses define the layout, constraints and form."""

    size: int
    n_constraints: int = 0

    def constraints(self, c):
        return np.zeros(0)

    def _extra_checks(self, c):
        pass

    def constraint_jacobian(self, c):
        if self.n_constraints == 0:
            return np.zeros((0, self.size))
        return _jacobian(self.constraints, c)

    def tangent_basis(self, c):
        """Orthonormal basis (columns) of the tangent space at ``c``."""
        if self.n_constraints == 0:
            return np.eye(self.size)
        return _null_space(self.constraint_jacobian(c), self.n_constraints)

    def check_coords(self, c):
        c = np.asarray(c, float)
        if c.shape != (self.size,):
            raise DomainError(f"{self} expects {self.size} coordinates, got shape {c.shape}")
        defect = np.abs(self.constraints(c)).max(initial=0.0)
        if defect > config.get().eps_geom * max(1.0, np.abs(c).max() ** 2):
            raise DomainError(f"point violates the {self} constraints (defect {defect:.3e})")
        self._extra_checks(c)
        return c

    def tangency_defect(self, c, u):
        if self.n_constraints == 0:
            return 0.0
        return np.abs(self.constraint_jacobian(c) @ u).max()

    def retract(self, c):
        """Move a nearby ambient point back onto the constraint surface."""
        return np.asarray(c, float)

    def omega(self, c, u, v):
        raise NotImplementedError

    def act(self, g, c):
        raise NotImplementedError

    def pushforward(self, g, c, u, h=1e-6):
        return (self.act(g, c + h * u) - self.act(g, c - h * u)) / (2 * h)

    def random_coords(self, rng):
        raise NotImplementedError

    def random_point(self, rng):
        return PhasePoint(self, self.random_coords(rng))

    def random_tangent(self, rng, p):
        basis = self.tangent_basis(p.coords)
        return TangentVector(p, basis @ rng.normal(size=basis.shape[1]))


@dataclasses.dataclass(frozen=True)
class SpinSphere(PhaseSpace):
    s: float
    size = 3
    n_constraints = 1

    def __post_init__(self):
        if self.s < 0:
            raise DomainError("spin must be nonnegative")

    def constraints(self, c):
        return np.array([c @ c - 1.0])

    def retract(self, c):
        return np.asarray(c, float) / np.linalg.norm(c)

    def omega(self, c, u, v):
        return self.s * np.dot(c, np.cross(u, v))

    def act(self, g, c):
        if isinstance(g, SU2Element):
            g = algebra.su2_to_so3(g)
        if not isinstance(g, SO3Element):
            raise DomainError("SpinSphere is acted on by SO(3) or SU(2)")
        return g.matrix @ c

    def random_coords(self, rng):
        v = rng.normal(size=3)
        return v / np.linalg.norm(v)


class _SlicedRelativistic(PhaseSpace):
    """Shared pieces for spaces with an ``x^0 = 0`` slice and unit timelike ``I``."""

    spatial_dim = 3

    @property
    def _split(self):
        return self.spatial_dim, self.spatial_dim + self.spatial_dim + 1

    def x_of(self, c):
        return c[: self.spatial_dim]

    def i_of(self, c):
        a, b = self._split
        return c[a:b]

    def _extra_checks(self, c):
        if self.i_of(c)[0] <= 0:
            raise DomainError("momentum vector I must be future pointing")

    def _translational(self, u, v):
        # sum_i (dx^i ^ dI^i)(u, v), spatial Euclidean components
        d = self.spatial_dim
        a, b = self._split
        return (np.dot(u[:d], v[a + 1:b]) - np.dot(v[:d], u[a + 1:b]))

    def _act_events(self, g, c, vectors, allow_time=False):
        if not isinstance(g, Poincare):
            raise DomainError(f"{type(self).__name__} is acted on by Poincare elements")
        if g.lorentz.dim != self.spatial_dim + 1:
            raise DomainError("group dimension does not match the space")
        if g.shift[0] != 0.0 and not allow_time:
            # a time shift is equivalent to sliding along I; only products of
            # slice-preserving elements may carry one (``allow_time``)
            raise DomainError("time translations are excluded (x^0 = 0 slice)")
        lm = g.lorentz.matrix
        event = lm @ np.concatenate([[0.0], self.x_of(c)]) + g.shift
        moved = [lm @ w for w in vectors]
        return _slice(event, moved[0]), moved


@dataclasses.dataclass(frozen=True)
class FreeRel(_SlicedRelativistic):
    """Spin-zero relativistic particle, ``Omega = dp^i ^ dx_i = m sum dx^i ^ dI^i``."""

    m: float
    size = 7
    n_constraints = 1

    def __post_init__(self):
        if self.m <= 0:
            raise DomainError("mass must be positive")

    def constraints(self, c):
        i = c[3:7]
        return np.array([minkowski(i, i) - 1.0])

    def retract(self, c):
        c = np.array(c, float)
        p = c[4:7]
        c[3] = np.sqrt(1.0 + p @ p)
        return c

    def omega(self, c, u, v):
        return self.m * self._translational(u, v)

    def act(self, g, c, allow_time=False):
        x, (i,) = self._act_events(g, c, [c[3:7]], allow_time)
        return np.concatenate([x, i])

    def random_coords(self, rng):
        return np.concatenate([rng.normal(size=3), _random_timelike(rng, 3)])


@dataclasses.dataclass(frozen=True)
class MassiveSpin(_SlicedRelativistic):
    """Massive particle with spin: ``m dx^mu ^ dI_mu + s/2 eps I J (dI^dI - dJ^dJ)``."""

    m: float
    s: float
    size = 11
    n_constraints = 3

    def __post_init__(self):
        if self.m <= 0 or self.s <= 0:
            raise DomainError("MassiveSpin needs m > 0 and s > 0")

    def j_of(self, c):
        return c[7:11]

    def constraints(self, c):
        i, j = c[3:7], c[7:11]
        return np.array([minkowski(i, i) - 1.0, minkowski(j, j) + 1.0, minkowski(i, j)])

    def retract(self, c):
        c = np.array(c, float)
        i = c[3:7] / np.sqrt(minkowski(c[3:7], c[3:7]))
        j = c[7:11] - minkowski(c[7:11], i) * i
        j = j / np.sqrt(-minkowski(j, j))
        return np.concatenate([c[:3], i, j])

    def omega(self, c, u, v):
        i, j = c[3:7], c[7:11]
        ui, vi, uj, vj = u[3:7], v[3:7], u[7:11], v[7:11]
        # m dx^mu ^ dI_mu on the slice = -m sum_i dx^i ^ dI^i
        trans = -self.m * self._translational(u, v)
        spin = self.s * (np.einsum("abcd,a,b,c,d->", EPS_LOWER, i, j, ui, vi)
                         - np.einsum("abcd,a,b,c,d->", EPS_LOWER, i, j, uj, vj))
        return trans + spin

    def act(self, g, c, allow_time=False):
        x, (i, j) = self._act_events(g, c, [c[3:7], c[7:11]], allow_time)
        return np.concatenate([x, i, j])

    def random_coords(self, rng):
        i = _random_timelike(rng, 3)
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        boost = algebra.sl2c_to_lorentz(algebra.boost_to(i)).matrix
        j = boost @ np.concatenate([[0.0], n])
        return np.concatenate([rng.normal(size=3), i, j])


@dataclasses.dataclass(frozen=True)
class Massless(PhaseSpace):
    """Massless particle of helicity ``chi``; the form is degenerate (null directions)."""

    s: float
    chi: int
    size = 12
    n_constraints = 3

    def __post_init__(self):
        if self.s <= 0:
            raise DomainError("helicity magnitude s must be positive")
        if self.chi not in (1, -1):
            raise DomainError("helicity sign chi must be +1 or -1")

    def constraints(self, c):
        i, j = c[4:8], c[8:12]
        return np.array([minkowski(i, i), minkowski(j, j), minkowski(i, j) + 1.0])

    def _extra_checks(self, c):
        if c[4] <= 0:
            raise DomainError("momentum vector I must be future pointing")

    def omega(self, c, u, v):
        i, j = c[4:8], c[8:12]
        ui, vi, uj, vj = u[4:8], v[4:8], u[8:12], v[8:12]
        spin = -self.chi * self.s * (np.einsum("abcd,a,b,c,d->", EPS_LOWER, i, j, ui, vj)
                                     - np.einsum("abcd,a,b,c,d->", EPS_LOWER, i, j, vi, uj))
        trans = minkowski(u[:4], vi) - minkowski(v[:4], ui)
        return spin + trans

    def act(self, g, c):
        if not isinstance(g, Poincare) or g.lorentz.dim != 4:
            raise DomainError("Massless is acted on by 3+1 Poincare elements")
        lm = g.lorentz.matrix
        return np.concatenate([lm @ c[:4] + g.shift, lm @ c[4:8], lm @ c[8:12]])

    def random_coords(self, rng):
        k = rng.normal(size=3)
        i = np.concatenate([[np.linalg.norm(k)], k])
        q = rng.normal(size=3)
        qq = np.concatenate([[np.linalg.norm(q)], q])
        j = -qq / minkowski(i, qq)
        return np.concatenate([rng.normal(size=4), i, j])


@dataclasses.dataclass(frozen=True)
class ThreeD(_SlicedRelativistic):
    """Relativistic particle in 2+1 dimensions: ``m dx^mu ^ dI_mu + s m eps I dI ^ dI``."""

    m: float
    s: float
    size = 5
    n_constraints = 1
    spatial_dim = 2

    def __post_init__(self):
        if self.m <= 0:
            raise DomainError("mass must be positive")

    def constraints(self, c):
        i = c[2:5]
        return np.array([minkowski(i, i) - 1.0])

    def retract(self, c):
        c = np.array(c, float)
        p = c[3:5]
        c[2] = np.sqrt(1.0 + p @ p)
        return c

    def omega(self, c, u, v):
        i = c[2:5]
        trans = -self.m * self._translational(u, v)
        spin = 2.0 * self.s * self.m * np.einsum("abc,a,b,c->", EPS_LOWER_2P1, i, u[2:5], v[2:5])
        return trans + spin

    def act(self, g, c, allow_time=False):
        x, (i,) = self._act_events(g, c, [c[2:5]], allow_time)
        return np.concatenate([x, i])

    def random_coords(self, rng):
        return np.concatenate([rng.normal(size=2), _random_timelike(rng, 2)])


def anyon_base_chart(cover):
    """Cover coordinates ``(x1, x2)`` -> punctured-plane coordinates ``(x, y)``."""
    x1, x2 = cover[0], cover[1]
    r = np.exp(0.5 * (x1 + x2))
    th = np.pi * (x1 - x2)
    return np.array([r * np.cos(th), r * np.sin(th)])


def anyon_cover_chart(xy, winding=0):
    """Inverse of :func:`anyon_base_chart` on the sheet with the given winding."""
    x, y = xy
    r2 = x * x + y * y
    if r2 == 0.0:
        raise DomainError("the origin is excised from the anyon configuration space")
    th = np.arctan2(y, x) + 2 * np.pi * winding
    u = 0.5 * np.log(r2)      # (x1 + x2) / 2
    w = th / (2 * np.pi)      # (x1 - x2) / 2
    return np.array([u + w, u - w])


def _anyon_chart_jacobian(cover):
    x, y = anyon_base_chart(cover)
    # d/dx1 (r e^{i th}) = (1/2 + i pi) r e^{i th};  d/dx2 = (1/2 - i pi) r e^{i th}
    return np.array([[0.5 * x - np.pi * y, 0.5 * x + np.pi * y],
                     [0.5 * y + np.pi * x, 0.5 * y - np.pi * x]])


@dataclasses.dataclass(frozen=True)
class Anyon(PhaseSpace):
    """Particle on the punctured plane, in universal-cover coordinates.

    The form is ``m sum dX^i ^ dI^i`` in the plane coordinates ``X = (x, y)``,
    pulled back to the cover.
    """

    alpha: float
    m: float = 1.0
    size = 4
    n_constraints = 0

    def base_xy(self, c):
        return anyon_base_chart(c[:2])

    def omega(self, c, u, v):
        jac = _anyon_chart_jacobian(c[:2])
        du, dv = jac @ u[:2], jac @ v[:2]
        return self.m * (np.dot(du, v[2:4]) - np.dot(dv, u[2:4]))

    def act(self, g, c):
        if isinstance(g, Deck):
            return np.array([c[0] + g.n, c[1] - g.n, c[2], c[3]])
        if isinstance(g, PlaneRotation):
            a = g.angle
            turn = a / (2 * np.pi)
            rot = np.array([[np.cos(a), np.sin(a)], [-np.sin(a), np.cos(a)]])
            return np.concatenate([[c[0] - turn, c[1] + turn], rot @ c[2:4]])
        raise DomainError("Anyon is acted on by deck transformations and plane rotations")

    def random_coords(self, rng):
        return np.concatenate([rng.normal(scale=0.5, size=2), rng.normal(size=2)])


# ---------------------------------------------------------------------------
# points and tangents


@dataclasses.dataclass(frozen=True, eq=False)
class PhasePoint:
    space: PhaseSpace
    coords: np.ndarray

    def __post_init__(self):
        c = self.space.check_coords(self.coords)
        c = np.array(c, float)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def same_as(self, other, tol=None):
        tol = config.get().eps_geom if tol is None else tol
        return (self.space == other.space
                and np.abs(self.coords - other.coords).max() <= tol * max(1.0, np.abs(self.coords).max()))


@dataclasses.dataclass(frozen=True, eq=False)
class TangentVector:
    base: PhasePoint
    components: np.ndarray

    def __post_init__(self):
        u = np.array(self.components, float).reshape(self.base.space.size)
        u.setflags(write=False)
        object.__setattr__(self, "components", u)

    def validate(self):
        sp = self.base.space
        scale = max(1.0, np.abs(self.components).max()) * max(1.0, np.abs(self.base.coords).max())
        if sp.tangency_defect(self.base.coords, self.components) > config.get().eps_geom * scale:
            raise DomainError("vector is not tangent to the constraint surface")
        return self

    def __add__(self, other):
        return TangentVector(self.base, self.components + other.components)

    def __mul__(self, k):
        return TangentVector(self.base, k * self.components)

    __rmul__ = __mul__


def symplectic_eval(p: PhasePoint, u: TangentVector, v: TangentVector) -> float:
    """``Omega_p(u, v)`` for the space of ``p``."""
    for w in (u, v):
        if w.base is not p and not w.base.same_as(p):
            raise DomainError("tangent vector is attached to a different base point")
        w.validate()
    return float(p.space.omega(p.coords, u.components, v.components))


def null_directions_massless(p: PhasePoint, a) -> TangentVector:
    """Degenerate direction of the massless form generated by a 4-vector ``a`` with ``a.I = 0``.

    ``V(a) = a^sigma (chi s d/dx^sigma + eps^{mu nu rho sigma} I_nu J_rho d/dJ^mu)``.
    """
    sp = p.space
    if not isinstance(sp, Massless):
        raise DomainError("null directions are defined on the Massless space")
    a = np.asarray(a, float).reshape(4)
    i, j = p.coords[4:8], p.coords[8:12]
    if abs(minkowski(a, i)) > config.get().eps_geom * max(1.0, np.abs(a).max() * np.abs(i).max()):
        raise DomainError("generator must satisfy a.I = 0")
    dj = np.einsum("mnrs,n,r,s->m", EPS_UPPER, ETA @ i, ETA @ j, ETA @ a)
    return TangentVector(p, np.concatenate([sp.chi * sp.s * a, np.zeros(4), dj]))


def closedness_check(space: PhaseSpace, p: PhasePoint, u, v, w, h=None) -> float:
    """Central-difference estimate of ``dOmega(u, v, w)`` at ``p``."""
    if p.space != space:
        raise DomainError("point belongs to another space")
    h = config.get().fd_step if h is None else h
    vecs = []
    for t in (u, v, w):
        if isinstance(t, TangentVector):
            t.validate()
            t = t.components
        vecs.append(np.asarray(t, float))
    u, v, w = vecs
    c = p.coords

    def deriv(d, a, b):
        return (space.omega(c + h * d, a, b) - space.omega(c - h * d, a, b)) / (2 * h)

    return float(deriv(u, v, w) - deriv(v, u, w) + deriv(w, u, v))


__all__ = [
    "Anyon", "Deck", "FreeRel", "Massless", "MassiveSpin", "PhasePoint", "PhaseSpace",
    "PlaneRotation", "Poincare", "SpinSphere", "TangentVector", "ThreeD",
    "anyon_base_chart", "anyon_cover_chart", "closedness_check",
    "null_directions_massless", "symplectic_eval", "ETA", "ETA3",
]
