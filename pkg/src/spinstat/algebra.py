"""Small dense complex linear algebra: Pauli and gamma matrices, SU(2) and
SL(2,C) elements, and their two-to-one maps onto SO(3) and SO(3,1).

Conventions
-----------
* Metric signature is (+, -, -, -) throughout the package.
* ``sigma[mu] = (1, sigma_x, sigma_y, sigma_z)`` and
  ``sigma_tilde[mu] = (1, -sigma_x, -sigma_y, -sigma_z)``.
* Chiral gamma matrices ``gamma[mu] = [[0, sigma_tilde], [sigma, 0]]`` and
  ``gamma5 = i g0 g1 g2 g3``.
* Levi-Civita symbols carry ``eps^{0123} = +1`` (so ``eps_{0123} = -1``);
  in 2+1 dimensions ``eps_{012} = +1``.
* An SU(2) element is stored as a unit quaternion ``(w, x, y, z)`` whose
  matrix is ``w 1 - i (x sx + y sy + z sz)``. It rotates R^3 by the angle
  ``2 acos(w)`` counterclockwise about ``(x, y, z)``.
"""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from . import config
from .errors import DomainError

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULI = np.array([SIGMA_X, SIGMA_Y, SIGMA_Z])
SIGMA = np.array([SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z])
SIGMA_TILDE = np.array([SIGMA_0, -SIGMA_X, -SIGMA_Y, -SIGMA_Z])

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
ETA3 = np.diag([1.0, -1.0, -1.0])

_Z2 = np.zeros((2, 2), dtype=complex)
GAMMA = np.array([np.block([[_Z2, SIGMA_TILDE[mu]], [SIGMA[mu], _Z2]])
                  for mu in range(4)])
GAMMA5 = 1j * GAMMA[0] @ GAMMA[1] @ GAMMA[2] @ GAMMA[3]


def _levi_civita(n):
    eps = np.zeros((n,) * n)
    for perm in itertools.permutations(range(n)):
        # parity by counting inversions
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        eps[perm] = -1.0 if inv % 2 else 1.0
    return eps


EPS3 = _levi_civita(3)
EPS_UPPER = _levi_civita(4)          # eps^{mu nu rho sigma}, eps^{0123} = +1
EPS_LOWER = -EPS_UPPER               # eps_{mu nu rho sigma}
EPS_LOWER_2P1 = _levi_civita(3)      # eps_{mu nu rho} in 2+1 dimensions


def minkowski(a, b):
    """(+,-,-,-) inner product of two 4-vectors (or 3-vectors in 2+1)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a[..., 0] * b[..., 0] - np.sum(a[..., 1:] * b[..., 1:], axis=-1)


def _frozen(arr, dtype):
    arr = np.array(arr, dtype=dtype)
    arr.setflags(write=False)
    return arr


# ---------------------------------------------------------------------------
# Spinors


@dataclasses.dataclass(frozen=True, eq=False)
class Spinor2:
    """A unit two-spinor, i.e. a point of S^3 in C^2."""

    z1: complex
    z2: complex

    @classmethod
    def from_vec(cls, v):
        return cls(complex(v[0]), complex(v[1]))

    @property
    def vec(self):
        return np.array([self.z1, self.z2], dtype=complex)

    def norm_defect(self):
        return abs(abs(self.z1) ** 2 + abs(self.z2) ** 2 - 1.0)

    def validate(self):
        if self.norm_defect() > config.get().eps_norm:
            raise DomainError(f"spinor is not unit: defect {self.norm_defect():.3e}")
        return self

    def __mul__(self, c):
        return Spinor2(c * self.z1, c * self.z2)

    __rmul__ = __mul__


@dataclasses.dataclass(frozen=True, eq=False)
class DiracSpinor:
    """Four complex components ``psi = (xi1, conj(xi2))`` in the chiral basis.

    Points of the constraint surface satisfy ``psibar psi = 1`` and
    ``psibar gamma5 psi = 0``; for this basis both together mean
    ``a^dagger b = 1/2`` with ``a, b`` the upper and lower blocks.
    """

    components: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.components, dtype=complex).reshape(4)
        object.__setattr__(self, "components", _frozen(c, complex))

    @classmethod
    def from_two_spinors(cls, xi1, xi2):
        return cls(np.concatenate([np.asarray(xi1, complex),
                                   np.conj(np.asarray(xi2, complex))]))

    @property
    def upper(self):
        return self.components[:2]

    @property
    def lower(self):
        return self.components[2:]

    @property
    def xi1(self):
        return self.components[:2].copy()

    @property
    def xi2(self):
        return np.conj(self.components[2:])

    def bar(self):
        return self.components.conj() @ GAMMA[0]

    def scalar(self):
        """``psibar psi`` (real)."""
        return (self.bar() @ self.components).real

    def pseudoscalar(self):
        """``psibar gamma5 psi`` (purely imaginary in this basis)."""
        return self.bar() @ GAMMA5 @ self.components

    def constraint_defect(self):
        return max(abs(self.scalar() - 1.0), abs(self.pseudoscalar()))

    def validate(self):
        d = self.constraint_defect()
        if d > config.get().eps_norm:
            raise DomainError(f"Dirac spinor violates psibar psi = 1, psibar g5 psi = 0 (defect {d:.3e})")
        return self


# ---------------------------------------------------------------------------
# Group elements


def _quat_mul(p, q):
    w1, x1, y1, z1 = p
    w2, x2, y2, z2 = q
    return np.array([
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    ])


@dataclasses.dataclass(frozen=True, eq=False)
class SU2Element:
    quat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "quat", _frozen(np.asarray(self.quat, float).reshape(4), float))

    @classmethod
    def identity(cls):
        return cls([1.0, 0.0, 0.0, 0.0])

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError("SU(2) element must be 2x2")
        tol = config.get().eps_alg
        if (np.abs(m.conj().T @ m - np.eye(2)).max() > tol
                or abs(np.linalg.det(m) - 1) > tol):
            raise DomainError("matrix is not in SU(2)")
        return cls([m[0, 0].real, -m[0, 1].imag, -m[0, 1].real, -m[0, 0].imag])

    @property
    def matrix(self):
        w, x, y, z = self.quat
        return w * SIGMA_0 - 1j * (x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)

    def validate(self):
        d = abs(np.dot(self.quat, self.quat) - 1.0)
        if d > config.get().eps_alg:
            raise DomainError(f"SU(2) element is not unit (defect {d:.3e})")
        return self

    def inverse(self):
        w, x, y, z = self.quat
        return SU2Element([w, -x, -y, -z])

    def __matmul__(self, other):
        if isinstance(other, SU2Element):
            return SU2Element(_quat_mul(self.quat, other.quat))
        return NotImplemented

    def __neg__(self):
        return SU2Element(-self.quat)

    def as_sl2c(self):
        return SL2CElement(self.matrix)

    def rotation_angle(self):
        """Angle in [0, 4 pi) of the rotation this element covers."""
        w = np.clip(self.quat[0], -1.0, 1.0)
        return 2.0 * np.arccos(w)


@dataclasses.dataclass(frozen=True, eq=False)
class SL2CElement:
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(np.asarray(self.matrix, complex).reshape(2, 2), complex))

    @classmethod
    def identity(cls):
        return cls(np.eye(2))

    def validate(self):
        d = abs(np.linalg.det(self.matrix) - 1.0)
        if d > config.get().eps_alg:
            raise DomainError(f"SL(2,C) element has det != 1 (defect {d:.3e})")
        return self

    def inverse(self):
        (a, b), (c, d) = self.matrix
        return SL2CElement([[d, -b], [-c, a]])

    def __matmul__(self, other):
        if isinstance(other, SU2Element):
            other = other.as_sl2c()
        if isinstance(other, SL2CElement):
            return SL2CElement(self.matrix @ other.matrix)
        return NotImplemented

    def __neg__(self):
        return SL2CElement(-self.matrix)

    def dirac_matrix(self):
        """4x4 action on Dirac spinors: ``diag(alpha, (alpha^dagger)^-1)``."""
        a = self.matrix
        u = np.zeros((4, 4), dtype=complex)
        u[:2, :2] = a
        u[2:, 2:] = np.linalg.inv(a.conj().T)
        return u


@dataclasses.dataclass(frozen=True, eq=False)
class SO3Element:
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(np.asarray(self.matrix, float).reshape(3, 3), float))

    def validate(self):
        m = self.matrix
        tol = config.get().eps_alg
        if np.abs(m.T @ m - np.eye(3)).max() > tol or abs(np.linalg.det(m) - 1) > tol:
            raise DomainError("matrix is not a proper rotation")
        return self

    def __matmul__(self, other):
        if isinstance(other, SO3Element):
            return SO3Element(self.matrix @ other.matrix)
        return NotImplemented


@dataclasses.dataclass(frozen=True, eq=False)
class LorentzElement:
    """Proper orthochronous Lorentz matrix ``L[mu, nu] = Lambda^mu_nu``.

    Works in 3+1 (4x4) and in 2+1 (3x3) dimensions.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, float)
        if m.shape not in ((4, 4), (3, 3)):
            raise DomainError("Lorentz matrix must be 4x4 or 3x3")
        object.__setattr__(self, "matrix", _frozen(m, float))

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim=4):
        return cls(np.eye(dim))

    def metric(self):
        return ETA if self.dim == 4 else ETA3

    def validate(self):
        m = self.matrix
        eta = self.metric()
        tol = config.get().eps_alg
        scale = max(1.0, np.abs(m).max() ** 2)
        if np.abs(m.T @ eta @ m - eta).max() > tol * scale:
            raise DomainError("matrix does not preserve the Minkowski metric")
        if abs(np.linalg.det(m) - 1) > tol * scale or m[0, 0] < 1 - tol:
            raise DomainError("Lorentz matrix is not proper orthochronous")
        return self

    def inverse(self):
        eta = self.metric()
        return LorentzElement(eta @ self.matrix.T @ eta)

    def __matmul__(self, other):
        if isinstance(other, LorentzElement):
            return LorentzElement(self.matrix @ other.matrix)
        return NotImplemented


# ---------------------------------------------------------------------------
# Exponentials and covering maps


def su2_exp(axis, angle, s=0.5):
    """SU(2) element ``cos(s|X|) 1 - (i/|X|) sin(s|X|) sigma.X`` with
    ``X = angle * axis``.

    With the default ``s = 1/2`` this is the double-cover lift of the
    rotation by ``angle`` about ``axis``.
    """
    axis = np.asarray(axis, dtype=float).reshape(3)
    tol = config.get().eps_alg
    if abs(np.linalg.norm(axis) - 1.0) > tol:
        raise DomainError("rotation axis must have unit norm")
    if angle < 0:
        raise DomainError("angle must be nonnegative; use the inverse element")
    n2 = 2.0 * s
    if n2 < 0 or abs(n2 - round(n2)) > tol:
        raise DomainError("s must be a nonnegative half-integer")
    half = s * angle
    # at angle = 0 the sin term vanishes identically (sin(s|X|)/|X| -> s is finite)
    return SU2Element(np.concatenate([[np.cos(half)], np.sin(half) * axis]))


def su2_from_rotvec(rotvec):
    """Double-cover lift (s = 1/2) of the rotation ``exp(rotvec)``; accepts any real 3-vector."""
    rotvec = np.asarray(rotvec, float)
    angle = np.linalg.norm(rotvec)
    if angle == 0.0:
        return SU2Element.identity()
    return su2_exp(rotvec / angle, angle)


def su2_to_so3(alpha: SU2Element) -> SO3Element:
    """``O^{ij} = 1/2 Tr(alpha^dagger sigma^i alpha sigma^j)``."""
    alpha.validate()
    a = alpha.matrix
    o = 0.5 * np.einsum("ab,ibc,cd,jda->ij", a.conj().T, PAULI, a, PAULI).real
    return SO3Element(o)


def so3_to_su2(rot: SO3Element) -> SU2Element:
    """One of the two SU(2) preimages of a rotation (the one with w >= 0)."""
    rot.validate()
    m = rot.matrix
    # Shepperd's method: pick the largest diagonal combination for stability
    tr = np.trace(m)
    cands = [tr, m[0, 0], m[1, 1], m[2, 2]]
    k = int(np.argmax(cands))
    if k == 0:
        w = 0.5 * np.sqrt(1.0 + tr)
        x = (m[2, 1] - m[1, 2]) / (4 * w)
        y = (m[0, 2] - m[2, 0]) / (4 * w)
        z = (m[1, 0] - m[0, 1]) / (4 * w)
    elif k == 1:
        x = 0.5 * np.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2])
        w = (m[2, 1] - m[1, 2]) / (4 * x)
        y = (m[0, 1] + m[1, 0]) / (4 * x)
        z = (m[0, 2] + m[2, 0]) / (4 * x)
    elif k == 2:
        y = 0.5 * np.sqrt(1.0 - m[0, 0] + m[1, 1] - m[2, 2])
        w = (m[0, 2] - m[2, 0]) / (4 * y)
        x = (m[0, 1] + m[1, 0]) / (4 * y)
        z = (m[1, 2] + m[2, 1]) / (4 * y)
    else:
        z = 0.5 * np.sqrt(1.0 - m[0, 0] - m[1, 1] + m[2, 2])
        w = (m[1, 0] - m[0, 1]) / (4 * z)
        x = (m[0, 2] + m[2, 0]) / (4 * z)
        y = (m[1, 2] + m[2, 1]) / (4 * z)
    q = np.array([w, x, y, z])
    q /= np.linalg.norm(q)
    return SU2Element(q if q[0] >= 0 else -q)


def sl2c_exp(generator) -> SL2CElement:
    """``exp(Z)`` for a traceless complex 2x2 matrix ``Z`` (closed form)."""
    z = np.asarray(generator, dtype=complex)
    if abs(np.trace(z)) > config.get().eps_alg * max(1.0, np.abs(z).max()):
        raise DomainError("sl(2,C) generator must be traceless")
    mu = np.sqrt(-np.linalg.det(z) + 0j)   # Z^2 = mu^2 * 1
    if abs(mu) < 1e-8:
        sinhc = 1.0 + mu * mu / 6.0
    else:
        sinhc = np.sinh(mu) / mu
    return SL2CElement(np.cosh(mu) * np.eye(2) + sinhc * z)


def sl2c_to_lorentz(alpha: SL2CElement) -> LorentzElement:
    """Two-to-one map SL(2,C) -> SO(3,1).

    ``Lambda^{mu nu} = 1/2 Tr(alpha^dagger sigma^mu alpha sigma_tilde^nu)``,
    returned with the second index lowered so the matrix acts on
    contravariant vectors, ``I -> Lambda I``.
    """
    alpha.validate()
    a = alpha.matrix
    upper = 0.5 * np.einsum("ab,mbc,cd,nda->mn", a.conj().T, SIGMA, a, SIGMA_TILDE).real
    return LorentzElement(upper @ ETA)


def boost_to(u) -> SL2CElement:
    """Pure boost (Hermitian SL(2,C) element) taking (1,0,0,0) to the unit timelike ``u``."""
    u = np.asarray(u, float)
    if abs(minkowski(u, u) - 1.0) > 1e-8 or u[0] <= 0:
        raise DomainError("boost target must be a future unit timelike vector")
    p = u[1:]
    pn = np.linalg.norm(p)
    if pn == 0.0:
        return SL2CElement.identity()
    rapidity = np.arcsinh(pn)
    n = p / pn
    return SL2CElement(np.cosh(rapidity / 2) * SIGMA_0
                       + np.sinh(rapidity / 2) * np.einsum("i,iab->ab", n, PAULI))


def lorentz_to_sl2c(lam: LorentzElement) -> SL2CElement:
    """One SL(2,C) preimage of ``lam`` (the other is its negative)."""
    lam.validate()
    if lam.dim != 4:
        raise DomainError("expected a 4x4 Lorentz matrix")
    b = boost_to(lam.matrix[:, 0])
    rest = sl2c_to_lorentz(b).inverse() @ lam
    rot = SO3Element(rest.matrix[1:, 1:])
    return b @ so3_to_su2(rot).as_sl2c()


def rotation_matrix(axis, angle):
    """Counterclockwise rotation about ``axis`` (Rodrigues formula)."""
    k = np.asarray(axis, float)
    k = k / np.linalg.norm(k)
    kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + np.sin(angle) * kx + (1 - np.cos(angle)) * kx @ kx


def embed_rotation(rot3):
    """3x3 spatial rotation as a 4x4 Lorentz matrix."""
    m = np.eye(4)
    m[1:, 1:] = rot3
    return LorentzElement(m)
