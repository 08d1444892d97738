"""Prequantum U(1) bundles over the phase spaces, as explicit quotients.

A bundle point is stored as a flat real vector ``y`` in an ambient chart of
the total space (before the finite quotient):

* ``Hopf(n)``: ``(Re z1, Im z1, Re z2, Im z2)`` of a unit spinor; the orbit
  under the n-th roots of unity is the actual point of ``Y_n``.
* ``DiracBundle(n, m)``: ``(x, Re psi, Im psi)`` with ``x`` on the ``x^0 = 0``
  slice and ``psi`` on the Dirac constraint surface.
* ``TrivialU1(base)``: base coordinates followed by ``(Re u, Im u)``.
* ``AnyonBundle(alpha, m)``: cover coordinates, momentum and ``(Re u, Im u)``;
  the point ``(k . c, I, e^{i k alpha} u)`` is identified with ``(c, I, u)``.

The *fiber action* of ``e^{i beta}`` is the right U(1) action of the bundle;
on ``Hopf(n)`` it multiplies the spinor by ``e^{i beta / n}``, so the overlap
phase of two spinors ``xi, eta`` over the same base point is ``(xi^dag eta)^n``.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import algebra, config
from .algebra import (ETA, GAMMA, GAMMA5, PAULI, DiracSpinor, LorentzElement,
                      SL2CElement, SU2Element, Spinor2, minkowski)
from .errors import DomainError, InconsistencyError
from .phasespaces import (Anyon, Deck, FreeRel, MassiveSpin, PhasePoint,
                          PhaseSpace, PlaneRotation, Poincare, SpinSphere,
                          TangentVector, ThreeD, _jacobian, _null_space,
                          anyon_base_chart)

# ---------------------------------------------------------------------------
# group elements that only make sense on bundles


@dataclasses.dataclass(frozen=True)
class U1Element:
    """Fiber element ``e^{i angle}``."""

    angle: float


@dataclasses.dataclass(frozen=True, eq=False)
class SpinorPoincare:
    """Element of SL(2,C) x| R^4: ``psi -> U(alpha) psi``, ``x -> Lambda(alpha) x + shift``."""

    alpha: SL2CElement
    shift: np.ndarray = None

    def __post_init__(self):
        a = self.alpha.as_sl2c() if isinstance(self.alpha, SU2Element) else self.alpha
        object.__setattr__(self, "alpha", a)
        shift = np.zeros(4) if self.shift is None else np.asarray(self.shift, float).reshape(4)
        object.__setattr__(self, "shift", shift)

    @classmethod
    def identity(cls):
        return cls(SL2CElement.identity())

    def __matmul__(self, other):
        lam = algebra.sl2c_to_lorentz(self.alpha).matrix
        return SpinorPoincare(self.alpha @ other.alpha, lam @ other.shift + self.shift)

    def inverse(self):
        inv = self.alpha.inverse()
        return SpinorPoincare(inv, -algebra.sl2c_to_lorentz(inv).matrix @ self.shift)

    def base_element(self):
        return Poincare(algebra.sl2c_to_lorentz(self.alpha), self.shift)


# ---------------------------------------------------------------------------
# helpers


def _unit(z):
    a = abs(z)
    if a < 1e-14:
        raise InconsistencyError("overlap vanished; points are not over the same base point")
    return z / a


def spinor_along(n, ref=None):
    """Unit spinor ``xi`` with ``xi^dag sigma xi = n``, phase-aligned with ``ref``.

    Uses the projector ``(1 + n.sigma)/2`` so the overlap with ``ref`` is real
    and positive (a Pancharatnam step).
    """
    n = np.asarray(n, float)
    proj = 0.5 * (np.eye(2) + np.einsum("i,iab->ab", n, PAULI))
    if ref is None:
        cands = [proj[:, 0], proj[:, 1]]
        v = max(cands, key=np.linalg.norm)
    else:
        v = proj @ np.asarray(ref, complex)
        if np.linalg.norm(v) < 1e-8:
            raise DomainError("reference spinor is antipodal to the target direction")
    return v / np.linalg.norm(v)


def _gauge_angle(vec):
    """Phase that makes the first significant component of ``vec`` real positive."""
    tol = config.get().canon_modulus
    for c in vec:
        if abs(c) > tol:
            return -math.atan2(c.imag, c.real)
    raise DomainError("vector has no significant component")


def _zn_reduce(vec, n):
    """Orbit member of ``vec`` under n-th roots of unity with first-component arg in [0, 2 pi / n)."""
    if n == 0:
        raise DomainError("Z_n quotient needs n >= 1")
    tol = config.get().canon_modulus
    for c in vec:
        if abs(c) > tol:
            arg = math.atan2(c.imag, c.real) % (2 * math.pi)
            step = 2 * math.pi / n
            r = math.floor(arg / step)
            if arg - r * step > step - 1e-9:
                r += 1
            return vec * np.exp(-1j * r * step)
    raise DomainError("vector has no significant component")


# ---------------------------------------------------------------------------
# bundles


class Bundle:
    """Shared total-space machinery. Subclasses fill in the specifics."""

    base: PhaseSpace
    size: int
    n_constraints: int

    # -- constraint surface
    def constraints(self, y):
        raise NotImplementedError

    def check_coords(self, y):
        y = np.asarray(y, float)
        if y.shape != (self.size,):
            raise DomainError(f"{self} expects {self.size} coordinates, got {y.shape}")
        defect = np.abs(self.constraints(y)).max()
        if defect > config.get().eps_geom * max(1.0, np.abs(y).max() ** 2):
            raise DomainError(f"point is off the {self} total space (defect {defect:.3e})")
        return y

    def tangent_basis(self, y):
        jac = _jacobian(self.constraints, y)
        return _null_space(jac, self.n_constraints)

    def tangency_defect(self, y, w):
        return np.abs(_jacobian(self.constraints, y) @ w).max()

    # -- structure
    def project(self, y):
        """Base-space coordinates of the point."""
        raise NotImplementedError

    def base_key(self, y):
        """Base coordinates in a chart where equal base points have equal keys."""
        return self.project(y)

    def connection(self, y, w):
        """Ambient extension of the connection one-form."""
        raise NotImplementedError

    def vertical(self, y):
        """Generator of the fiber action (``connection(y, vertical(y)) = 1`` unless flat)."""
        raise NotImplementedError

    def raw_rotate(self, y, gamma):
        """Multiply the total-space U(1) coordinate by ``e^{i gamma}``."""
        raise NotImplementedError

    def raw_vector(self, y):
        raise NotImplementedError

    def charge(self):
        """Ratio between raw rotations and the fiber action (``n`` for Hopf and Dirac)."""
        return 1

    def fiber_act(self, y, beta):
        k = self.charge()
        return y if k == 0 else self.raw_rotate(y, beta / k)

    def overlap_phase(self, y1, y2):
        """``e^{i beta}`` with ``y2 = fiber_act(y1, beta)`` (same base point assumed)."""
        raise NotImplementedError

    def canonical(self, y):
        """Canonical representative of the finite-quotient orbit of ``y``."""
        return y

    def act(self, g, y):
        raise NotImplementedError

    def lift(self, base_coords, ref=None):
        """A total-space point over ``base_coords``; phase-aligned with ``ref`` if given."""
        raise NotImplementedError

    def discrete_connection(self, y0, y1):
        """Approximate integral of the connection along a short step ``y0 -> y1``.

        Shifts by ``beta`` when ``y1`` is moved by ``fiber_act(., beta)``.
        """
        raise NotImplementedError

    def random_coords(self, rng):
        base = self.base.random_coords(rng)
        return self.fiber_act(self.lift(base), rng.uniform(0, 2 * np.pi))

    def random_point(self, rng):
        return BundlePoint(self, self.random_coords(rng))


def _spinor_of(y):
    return np.array([y[0] + 1j * y[1], y[2] + 1j * y[3]])


def _pack_spinor(z):
    return np.array([z[0].real, z[0].imag, z[1].real, z[1].imag])


@dataclasses.dataclass(frozen=True)
class Hopf(Bundle):
    """``Y_n = S^3 / Z_n`` over the sphere of spin ``n/2``, connection ``-i n xibar dxi``."""

    n: int
    size = 4
    n_constraints = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError("Hopf bundles are labelled by integers n >= 0")

    @property
    def base(self):
        return SpinSphere(self.n / 2)

    def constraints(self, y):
        return np.array([y @ y - 1.0])

    def project(self, y):
        xi = _spinor_of(y)
        return np.einsum("a,iab,b->i", xi.conj(), PAULI, xi).real

    def connection(self, y, w):
        return self.n * np.imag(np.vdot(_spinor_of(y), _spinor_of(w)))

    def vertical(self, y):
        v = _pack_spinor(1j * _spinor_of(y))
        return v / self.n if self.n else v

    def charge(self):
        return self.n

    def raw_vector(self, y):
        return _spinor_of(y)

    def raw_rotate(self, y, gamma):
        return _pack_spinor(np.exp(1j * gamma) * _spinor_of(y))

    def overlap_phase(self, y1, y2):
        return _unit(np.vdot(_spinor_of(y1), _spinor_of(y2))) ** self.n

    def canonical(self, y):
        return _pack_spinor(_zn_reduce(_spinor_of(y), self.n))

    def act(self, g, y):
        if isinstance(g, U1Element):
            return self.fiber_act(y, g.angle)
        if isinstance(g, SU2Element):
            return _pack_spinor(g.matrix @ _spinor_of(y))
        raise DomainError("Hopf bundles are acted on by SU(2) and U(1) elements")

    def lift(self, base_coords, ref=None):
        ref = None if ref is None else _spinor_of(ref)
        return _pack_spinor(spinor_along(base_coords, ref))

    def discrete_connection(self, y0, y1):
        return self.n * np.angle(np.vdot(_spinor_of(y0), _spinor_of(y1)))


def _dirac_of(y):
    return y[3:7] + 1j * y[7:11]


def _pack_dirac(x, psi):
    return np.concatenate([x, psi.real, psi.imag])


_G0 = GAMMA[0]
_IJ_MATS = np.array([_G0 @ g for g in GAMMA] + [_G0 @ g @ GAMMA5 for g in GAMMA])


def _dirac_currents(psi):
    vals = np.einsum("a,kab,b->k", psi.conj(), _IJ_MATS, psi).real
    return vals[:4], vals[4:]


@dataclasses.dataclass(frozen=True)
class DiracBundle(Bundle):
    """Bundle over the massive spinning particle, built from Dirac spinors.

    Connection ``-i n psibar dpsi - m I_mu dx^mu`` on the ``x^0 = 0`` slice.
    """

    n: int
    m: float
    size = 11
    n_constraints = 2

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("DiracBundle needs an integer n >= 1")
        if self.m <= 0:
            raise DomainError("mass must be positive")

    @property
    def base(self):
        return MassiveSpin(self.m, self.n / 2)

    def constraints(self, y):
        psi = _dirac_of(y)
        bar = psi.conj() @ _G0
        return np.array([(bar @ psi).real - 1.0, (bar @ GAMMA5 @ psi).imag])

    def project(self, y):
        i, j = _dirac_currents(_dirac_of(y))
        return np.concatenate([y[:3], i, j])

    def connection(self, y, w):
        psi = _dirac_of(y)
        i, _ = _dirac_currents(psi)
        spin = self.n * np.imag(psi.conj() @ _G0 @ _dirac_of(w))
        # -m I_mu dx^mu with dx^0 = 0 is +m sum_i I^i dx^i
        return spin + self.m * np.dot(i[1:], w[:3])

    def vertical(self, y):
        return np.concatenate([np.zeros(3), _pack_dirac(np.zeros(0), 1j * _dirac_of(y) / self.n)])

    def charge(self):
        return self.n

    def raw_vector(self, y):
        return _dirac_of(y)

    def raw_rotate(self, y, gamma):
        return _pack_dirac(y[:3], np.exp(1j * gamma) * _dirac_of(y))

    def overlap_phase(self, y1, y2):
        p1, p2 = _dirac_of(y1), _dirac_of(y2)
        return _unit(p1.conj() @ _G0 @ p2) ** self.n

    def canonical(self, y):
        return _pack_dirac(y[:3], _zn_reduce(_dirac_of(y), self.n))

    def act(self, g, y):
        if isinstance(g, U1Element):
            return self.fiber_act(y, g.angle)
        if isinstance(g, (SU2Element, SL2CElement)):
            g = SpinorPoincare(g)
        if not isinstance(g, SpinorPoincare):
            raise DomainError("DiracBundle is acted on by SL(2,C) x| R^4 and U(1) elements")
        if g.shift[0] != 0.0:
            raise DomainError("time translations are excluded (x^0 = 0 slice)")
        psi = g.alpha.dirac_matrix() @ _dirac_of(y)
        lam = algebra.sl2c_to_lorentz(g.alpha).matrix
        event = lam @ np.concatenate([[0.0], y[:3]]) + g.shift
        i_new, _ = _dirac_currents(psi)
        # slide back to x^0 = 0 along I, moving horizontally (phase compensates)
        slide = event[0] / i_new[0]
        x = event[1:] - slide * i_new[1:]
        psi = psi * np.exp(-1j * self.m * slide / self.n)
        return _pack_dirac(x, psi)

    def lift(self, base_coords, ref=None):
        x, i, j = base_coords[:3], base_coords[3:7], base_coords[7:11]
        a_vec, b_vec = 0.5 * (i + j), 0.5 * (i - j)
        ra = spinor_along(a_vec[1:] / np.linalg.norm(a_vec[1:]))
        rb = spinor_along(-b_vec[1:] / np.linalg.norm(b_vec[1:]))
        a = np.sqrt(a_vec[0]) * ra
        b = np.sqrt(b_vec[0]) * rb
        b = b * np.exp(-1j * np.angle(np.vdot(a, b)))
        y = _pack_dirac(np.asarray(x, float), np.concatenate([a, b]))
        if ref is not None:
            y = self.fiber_act(y, -self.discrete_connection(ref, y))
        return y

    def discrete_connection(self, y0, y1):
        p0, p1 = _dirac_of(y0), _dirac_of(y1)
        spin = self.n * np.angle(p0.conj() @ _G0 @ p1)
        i_mid = 0.5 * (_dirac_currents(p0)[0] + _dirac_currents(p1)[0])
        return spin + self.m * np.dot(i_mid[1:], y1[:3] - y0[:3])


def _threed_spin_potential(s, m, i, di):
    """Global potential of ``s m eps I dI ^ dI`` on the mass hyperboloid."""
    return 2.0 * s * m * (i[1] * di[2] - i[2] * di[1]) / (1.0 + i[0])


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


@dataclasses.dataclass(frozen=True)
class TrivialU1(Bundle):
    """Product bundle ``base x U(1)`` for ``FreeRel`` and ``ThreeD``."""

    base: PhaseSpace

    def __post_init__(self):
        if not isinstance(self.base, (FreeRel, ThreeD)):
            raise DomainError("TrivialU1 is defined over FreeRel and ThreeD")

    @property
    def size(self):
        return self.base.size + 2

    @property
    def n_constraints(self):
        return self.base.n_constraints + 1

    def _split(self, y):
        k = self.base.size
        return y[:k], y[k] + 1j * y[k + 1]

    def _pack(self, c, u):
        return np.concatenate([c, [u.real, u.imag]])

    def constraints(self, y):
        c, u = self._split(y)
        return np.concatenate([self.base.constraints(c), [abs(u) ** 2 - 1.0]])

    def project(self, y):
        return self._split(y)[0]

    def _base_potential(self, c, dc):
        sp = self.base
        if isinstance(sp, FreeRel):
            return -sp.m * np.dot(c[3:7][1:], dc[:3])
        i, di = c[2:5], dc[2:5]
        return sp.m * np.dot(i[1:], dc[:2]) + _threed_spin_potential(sp.s, sp.m, i, di)

    def connection(self, y, w):
        c, u = self._split(y)
        dc, du = self._split(w)
        return np.imag(np.conj(u) * du) + self._base_potential(c, dc)

    def vertical(self, y):
        c, u = self._split(y)
        return self._pack(np.zeros_like(c), 1j * u)

    def raw_vector(self, y):
        return np.array([self._split(y)[1]])

    def raw_rotate(self, y, gamma):
        c, u = self._split(y)
        return self._pack(c, u * np.exp(1j * gamma))

    def overlap_phase(self, y1, y2):
        return _unit(np.conj(self._split(y1)[1]) * self._split(y2)[1])

    def _boost_phase(self, lorentz, i):
        """Integral of ``A(L I)(L dI) - A(I)(dI)`` from rest to ``i`` (ThreeD only)."""
        sp = self.base
        lm = lorentz.matrix
        p = i[1:]
        total = 0.0
        for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
            tau = 0.5 * (node + 1.0)
            q = tau * p
            pt = np.concatenate([[np.sqrt(1.0 + q @ q)], q])
            dpt = np.concatenate([[q @ p / pt[0]], p])
            total += 0.5 * weight * (
                _threed_spin_potential(sp.s, sp.m, lm @ pt, lm @ dpt)
                - _threed_spin_potential(sp.s, sp.m, pt, dpt))
        return total

    def act(self, g, y):
        if isinstance(g, U1Element):
            return self.fiber_act(y, g.angle)
        if not isinstance(g, Poincare):
            raise DomainError("TrivialU1 is acted on by Poincare and U(1) elements")
        c, u = self._split(y)
        c_new = self.base.act(g, c)
        sp = self.base
        d = sp.spatial_dim
        lm = g.lorentz.matrix
        event = lm @ np.concatenate([[0.0], c[:d]]) + g.shift
        i_new = lm @ sp.i_of(c)
        slide = event[0] / i_new[0]
        if isinstance(sp, FreeRel):
            phase = sp.m * slide
        else:
            phase = -sp.m * slide - self._boost_phase(g.lorentz, sp.i_of(c))
        return self._pack(c_new, u * np.exp(1j * phase))

    def lift(self, base_coords, ref=None):
        y = self._pack(np.asarray(base_coords, float), 1.0 + 0j)
        if ref is not None:
            y = self.fiber_act(y, -self.discrete_connection(ref, y))
        return y

    def discrete_connection(self, y0, y1):
        c0, u0 = self._split(y0)
        c1, u1 = self._split(y1)
        mid = 0.5 * (c0 + c1)
        return np.angle(np.conj(u0) * u1) + self._base_potential(mid, c1 - c0)


@dataclasses.dataclass(frozen=True)
class AnyonBundle(Bundle):
    """``Y_alpha``: the product bundle over the cover, divided by the deck group.

    Connection ``dphi - m I . dX`` with ``X = (x, y)`` read through the cover chart.
    """

    alpha: float
    m: float = 1.0
    size = 6
    n_constraints = 1

    @property
    def base(self):
        return Anyon(self.alpha, self.m)

    def constraints(self, y):
        return np.array([y[4] ** 2 + y[5] ** 2 - 1.0])

    def project(self, y):
        return np.asarray(y[:4], float)

    @staticmethod
    def winding(y):
        """Sheet index ``k`` with ``pi (x1 - x2) - 2 pi k`` in ``[-pi, pi)``."""
        return int(math.floor(0.5 * (y[0] - y[1]) + 0.5))

    def base_key(self, y):
        return self.project(self.canonical(y))

    def connection(self, y, w):
        from .phasespaces import _anyon_chart_jacobian
        u = y[4] + 1j * y[5]
        du = w[4] + 1j * w[5]
        dx = _anyon_chart_jacobian(y[:2]) @ w[:2]
        return np.imag(np.conj(u) * du) - self.m * np.dot(y[2:4], dx)

    def vertical(self, y):
        return np.array([0, 0, 0, 0, -y[5], y[4]])

    def raw_vector(self, y):
        return np.array([y[4] + 1j * y[5]])

    def raw_rotate(self, y, gamma):
        u = (y[4] + 1j * y[5]) * np.exp(1j * gamma)
        return np.concatenate([y[:4], [u.real, u.imag]])

    def overlap_phase(self, y1, y2):
        a, b = self.canonical(y1), self.canonical(y2)
        return _unit(np.conj(a[4] + 1j * a[5]) * (b[4] + 1j * b[5]))

    def deck(self, y, k):
        """Lifted deck transformation: the identity on ``Y_alpha``, a move on the representative."""
        return self.raw_rotate(np.array([y[0] + k, y[1] - k, y[2], y[3], y[4], y[5]]),
                               k * self.alpha)

    def canonical(self, y):
        return self.deck(y, -self.winding(y))

    def act(self, g, y):
        if isinstance(g, U1Element):
            return self.fiber_act(y, g.angle)
        if isinstance(g, Deck):
            return self.deck(y, g.n)
        if isinstance(g, PlaneRotation):
            return np.concatenate([self.base.act(g, y[:4]), y[4:6]])
        raise DomainError("AnyonBundle is acted on by deck, plane-rotation and U(1) elements")

    def lift(self, base_coords, ref=None):
        y = np.concatenate([np.asarray(base_coords, float), [1.0, 0.0]])
        if ref is not None:
            y = self.fiber_act(y, -self.discrete_connection(ref, y))
        return y

    def discrete_connection(self, y0, y1):
        u0, u1 = y0[4] + 1j * y0[5], y1[4] + 1j * y1[5]
        i_mid = 0.5 * (y0[2:4] + y1[2:4])
        dx = anyon_base_chart(y1[:2]) - anyon_base_chart(y0[:2])
        return np.angle(np.conj(u0) * u1) - self.m * np.dot(i_mid, dx)


# ---------------------------------------------------------------------------
# points and pairs


@dataclasses.dataclass(frozen=True, eq=False)
class BundlePoint:
    bundle: Bundle
    y: np.ndarray

    def __post_init__(self):
        y = np.array(self.bundle.check_coords(self.y), float)
        y.setflags(write=False)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_spinor(cls, bundle: Hopf, xi):
        if isinstance(xi, Spinor2):
            xi = xi.validate().vec
        return cls(bundle, _pack_spinor(np.asarray(xi, complex)))

    @classmethod
    def from_dirac(cls, bundle: DiracBundle, x, psi):
        if isinstance(psi, DiracSpinor):
            psi = psi.validate().components
        return cls(bundle, _pack_dirac(np.asarray(x, float), np.asarray(psi, complex)))

    @classmethod
    def from_phase(cls, bundle, base_point, phase):
        coords = base_point.coords if isinstance(base_point, PhasePoint) else base_point
        return cls(bundle, np.concatenate([coords, [np.real(phase), np.imag(phase)]]))

    @property
    def spinor(self):
        return _spinor_of(self.y)

    @property
    def dirac(self):
        return DiracSpinor(_dirac_of(self.y))

    def base_point(self) -> PhasePoint:
        return PhasePoint(self.bundle.base, self.bundle.project(self.y))

    def same_base(self, other, tol=None):
        tol = config.get().eps_geom * 100 if tol is None else tol
        a, b = self.bundle.base_key(self.y), other.bundle.base_key(other.y)
        return np.abs(a - b).max() <= tol * max(1.0, np.abs(a).max())

    def phase_to(self, other):
        """``e^{i beta}`` such that ``other = e^{i beta} . self`` in the fiber."""
        if not self.same_base(other):
            raise DomainError("points lie over different base points")
        return complex(self.bundle.overlap_phase(self.y, other.y))


@dataclasses.dataclass(frozen=True, eq=False)
class PairClass:
    """Representative ``(first, second)`` of a class ``[xi1, xi2]`` of the combined bundle."""

    first: BundlePoint
    second: BundlePoint

    def __post_init__(self):
        if self.first.bundle != self.second.bundle:
            raise DomainError("both members of a pair must live on the same bundle")

    @property
    def bundle(self):
        return self.first.bundle

    def phase_to(self, other: "PairClass") -> complex:
        """``e^{i theta}`` with ``other = e^{i theta} . self`` (raises if base pairs differ)."""
        if other.bundle != self.bundle:
            raise DomainError("pair classes live on different bundles")
        return self.first.phase_to(other.first) * self.second.phase_to(other.second)

    def same_class(self, other, tol=None) -> bool:
        tol = config.get().eps_snap if tol is None else tol
        try:
            return abs(self.phase_to(other) - 1.0) <= tol
        except DomainError:
            return False

    def fiber_act(self, beta):
        b = self.bundle
        return PairClass(BundlePoint(b, b.fiber_act(self.first.y, beta)), self.second)


# ---------------------------------------------------------------------------
# operations


def hopf_project(xi) -> PhasePoint:
    """``x^i = xibar sigma^i xi``, as a point of the spin-1/2 sphere."""
    if isinstance(xi, BundlePoint):
        return xi.base_point()
    if not isinstance(xi, Spinor2):
        xi = Spinor2.from_vec(xi)
    xi.validate()
    x = np.einsum("a,iab,b->i", xi.vec.conj(), PAULI, xi.vec).real
    return PhasePoint(SpinSphere(0.5), x / np.linalg.norm(x))


def dirac_project(x, psi, m=1.0, n=1) -> PhasePoint:
    """``(x, I = psibar gamma psi, J = psibar gamma gamma5 psi)`` as a point of MassiveSpin(m, n/2)."""
    if not isinstance(psi, DiracSpinor):
        psi = DiracSpinor(psi)
    psi.validate()
    i, j = _dirac_currents(psi.components)
    return PhasePoint(MassiveSpin(m, n / 2), np.concatenate([np.asarray(x, float), i, j]))


def _tangent_array(bundle, point, w):
    if isinstance(w, TangentVector):
        w = w.components
    w = np.asarray(w, float).reshape(bundle.size)
    scale = max(1.0, np.abs(w).max()) * max(1.0, np.abs(point.y).max())
    if bundle.tangency_defect(point.y, w) > config.get().eps_geom * scale:
        raise DomainError("vector is not tangent to the total space")
    return w


def connection_eval(b: Bundle, xi: BundlePoint, w) -> float:
    if xi.bundle != b:
        raise DomainError("point belongs to a different bundle")
    return float(b.connection(xi.y, _tangent_array(b, xi, w)))


def horizontal_vector(b: Bundle, y, u):
    """Horizontal lift of the base tangent ``u`` at the total-space point ``y``."""
    basis = b.tangent_basis(y)
    dpi = _jacobian(b.project, y) @ basis
    coef, *_ = np.linalg.lstsq(dpi, u, rcond=None)
    w = basis @ coef
    v = b.vertical(y)
    wv = b.connection(y, v)
    if abs(wv) > 1e-12:
        w = w - (b.connection(y, w) / wv) * v
    resid = np.abs(dpi @ coef - u).max()
    if resid > 1e-8 * max(1.0, np.abs(u).max()):
        raise DomainError("base vector is not tangent at the projected point")
    return w


def curvature_matches_symplectic(b: Bundle, xi: BundlePoint, u, v, h=None):
    """``(d omega(U, V), Omega(u, v))`` with ``U, V`` horizontal lifts of ``u, v``."""
    h = config.get().fd_step if h is None else h
    base_pt = xi.base_point()
    vecs = []
    for t in (u, v):
        if isinstance(t, TangentVector):
            t.validate()
            t = t.components
        vecs.append(np.asarray(t, float))
    u, v = vecs
    y = xi.y
    big_u, big_v = horizontal_vector(b, y, u), horizontal_vector(b, y, v)

    def d(direction, arg):
        return (b.connection(y + h * direction, arg) - b.connection(y - h * direction, arg)) / (2 * h)

    domega = d(big_u, big_v) - d(big_v, big_u)
    omega = b.base.omega(base_pt.coords, u, v)
    return float(domega), float(omega)


def znq_canonicalize(xi: BundlePoint) -> BundlePoint:
    b = xi.bundle
    if isinstance(b, (Hopf, DiracBundle)) and b.n == 0:
        raise DomainError("Z_n canonical form needs n >= 1")
    return BundlePoint(b, b.canonical(xi.y))


def pair_canonicalize(p: PairClass) -> PairClass:
    """Fix the ``(z, 1/z)`` freedom on the first slot, then the finite factors."""
    b = p.bundle
    y1, y2 = b.canonical(p.first.y), b.canonical(p.second.y)
    gamma = _gauge_angle(b.raw_vector(y1))
    y1 = b.raw_rotate(y1, gamma)
    y2 = b.raw_rotate(y2, -gamma)
    if not (isinstance(b, (Hopf, DiracBundle)) and b.n == 0):
        y2 = b.canonical(y2)
    return PairClass(BundlePoint(b, y1), BundlePoint(b, y2))


def permutation_lift(p: PairClass, f: int) -> PairClass:
    """``[xi1, xi2] -> [xi2, (-1)^f xi1]``, the sign acting on the total-space coordinate."""
    if f not in (0, 1):
        raise DomainError("f must be 0 or 1")
    b = p.bundle
    moved = BundlePoint(b, b.raw_rotate(p.first.y, np.pi * f))
    return PairClass(p.second, moved)


def lifted_group_action(b: Bundle, g, xi: BundlePoint) -> BundlePoint:
    if xi.bundle != b:
        raise DomainError("point belongs to a different bundle")
    return BundlePoint(b, b.act(g, xi.y))


def base_group_element(b: Bundle, g):
    """The element acting on the base that covers ``g``."""
    if isinstance(b, Hopf) and isinstance(g, SU2Element):
        return algebra.su2_to_so3(g)
    if isinstance(b, DiracBundle):
        if isinstance(g, (SU2Element, SL2CElement)):
            g = SpinorPoincare(g)
        if isinstance(g, SpinorPoincare):
            return g.base_element()
    return g


def fiber_phase(xi: BundlePoint, eta: BundlePoint) -> complex:
    return xi.phase_to(eta)


__all__ = [
    "AnyonBundle", "Bundle", "BundlePoint", "DiracBundle", "Hopf", "PairClass",
    "SpinorPoincare", "TrivialU1", "U1Element", "base_group_element",
    "connection_eval", "curvature_matches_symplectic", "dirac_project", "fiber_phase",
    "hopf_project", "horizontal_vector", "lifted_group_action", "pair_canonicalize",
    "permutation_lift", "spinor_along", "znq_canonicalize",
]
