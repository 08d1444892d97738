import numpy as np
import pytest
from hypothesis import given

from spinstat import algebra
from spinstat.algebra import minkowski
from spinstat.errors import DomainError
from spinstat.phasespaces import (Anyon, Deck, FreeRel, Massless, MassiveSpin, PhasePoint,
                                  PlaneRotation, Poincare, SpinSphere, TangentVector, ThreeD,
                                  anyon_base_chart, anyon_cover_chart, closedness_check,
                                  null_directions_massless, symplectic_eval)

from strategies import rng_from, seeds

SPACES = [SpinSphere(0.5), SpinSphere(2.0), FreeRel(1.3), MassiveSpin(1.0, 0.5),
          MassiveSpin(2.0, 1.5), Massless(0.5, 1), Massless(1.0, -1), ThreeD(1.0, 0.5),
          ThreeD(0.7, 0.0), Anyon(np.pi / 3)]
IDS = [repr(s) for s in SPACES]


def random_poincare(rng, dim=4, time_shift=False):
    if dim == 4:
        z = 0.5 * (rng.normal(size=3) + 1j * rng.normal(size=3))
        lam = algebra.sl2c_to_lorentz(algebra.sl2c_exp(np.einsum("i,iab->ab", z, algebra.PAULI)))
    else:
        rap = rng.normal(scale=0.5, size=2)
        th = rng.uniform(0, 2 * np.pi)
        r = np.eye(3)
        r[1:, 1:] = [[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]]
        b = np.eye(3)
        eta = np.linalg.norm(rap)
        n = rap / eta
        b[0, 0] = np.cosh(eta)
        b[0, 1:] = b[1:, 0] = np.sinh(eta) * n
        b[1:, 1:] += (np.cosh(eta) - 1) * np.outer(n, n)
        lam = algebra.LorentzElement(b @ r)
    shift = rng.normal(size=dim)
    if not time_shift:
        shift[0] = 0.0
    return Poincare(lam, shift)


def group_element(space, rng):
    if isinstance(space, SpinSphere):
        return algebra.su2_from_rotvec(rng.normal(size=3))
    if isinstance(space, Anyon):
        return PlaneRotation(rng.normal(scale=4))
    if isinstance(space, ThreeD):
        return random_poincare(rng, 3)
    return random_poincare(rng, 4, time_shift=isinstance(space, Massless))


@pytest.mark.parametrize("space", SPACES, ids=IDS)
@given(seed=seeds)
def test_random_points_satisfy_constraints(space, seed):
    rng = rng_from(seed)
    p = space.random_point(rng)
    assert np.abs(space.constraints(p.coords)).max(initial=0) < 1e-9
    u = space.random_tangent(rng, p)
    u.validate()


@pytest.mark.parametrize("space", SPACES, ids=IDS)
@given(seed=seeds)
def test_form_is_antisymmetric_and_bilinear(space, seed):
    rng = rng_from(seed)
    p = space.random_point(rng)
    u, v, w = (space.random_tangent(rng, p) for _ in range(3))
    a = symplectic_eval(p, u, v)
    assert abs(a + symplectic_eval(p, v, u)) < 1e-12 * max(1, abs(a))
    assert abs(symplectic_eval(p, u, u)) < 1e-12 * max(1, np.abs(u.components).max() ** 2)
    lhs = symplectic_eval(p, u * 2.0 + w, v)
    rhs = 2 * a + symplectic_eval(p, w, v)
    assert abs(lhs - rhs) < 1e-9 * max(1, abs(lhs))


@pytest.mark.parametrize("space", SPACES, ids=IDS)
def test_form_is_closed(space, rng):
    for _ in range(10):
        p = space.random_point(rng)
        u, v, w = (space.random_tangent(rng, p) for _ in range(3))
        assert abs(closedness_check(space, p, u, v, w)) < 1e-5


@pytest.mark.parametrize("space", SPACES, ids=IDS)
@given(seed=seeds)
def test_group_action_preserves_form(space, seed):
    rng = rng_from(seed)
    p = space.random_point(rng)
    g = group_element(space, rng)
    q = PhasePoint(space, space.act(g, p.coords))
    u, v = space.random_tangent(rng, p), space.random_tangent(rng, p)
    gu = TangentVector(q, space.pushforward(g, p.coords, u.components))
    gv = TangentVector(q, space.pushforward(g, p.coords, v.components))
    before = symplectic_eval(p, u, v)
    after = space.omega(q.coords, gu.components, gv.components)
    scale = max(1.0, abs(before), np.abs(gu.components).max() * np.abs(gv.components).max())
    assert abs(before - after) < 1e-6 * scale


@pytest.mark.parametrize("space,rank", [(SpinSphere(1.0), 2), (FreeRel(1.0), 6),
                                        (MassiveSpin(1.0, 0.5), 8), (ThreeD(1.0, 0.5), 4),
                                        (Anyon(0.4), 4), (Massless(0.5, 1), 6)])
def test_form_rank(space, rank, rng):
    p = space.random_point(rng)
    basis = space.tangent_basis(p.coords)
    k = basis.shape[1]
    mat = np.array([[space.omega(p.coords, basis[:, a], basis[:, b]) for b in range(k)]
                    for a in range(k)])
    assert np.linalg.matrix_rank(mat, tol=1e-8) == rank


def test_massless_null_directions(rng):
    space = Massless(1.5, -1)
    for _ in range(50):
        p = space.random_point(rng)
        i, j = p.coords[4:8], p.coords[8:12]
        a = rng.normal(size=4)
        a -= minkowski(a, i) / minkowski(j, i) * j
        v = null_directions_massless(p, a)
        v.validate()
        w = space.random_tangent(rng, p)
        assert abs(symplectic_eval(p, v, w)) < 1e-8


def test_massless_null_direction_requires_orthogonality(rng):
    p = Massless(0.5, 1).random_point(rng)
    with pytest.raises(DomainError):
        null_directions_massless(p, p.coords[8:12] + p.coords[4:8])


def test_massive_spin_sign_flips_with_spin(rng):
    # the spin term changes sign with J -> -J; orientation check on a rest-frame point
    sp = MassiveSpin(1.0, 0.5)
    c = np.array([0, 0, 0, 1.0, 0, 0, 0, 0, 0, 0, 1.0])
    u = np.zeros(11)
    v = np.zeros(11)
    u[4], v[5] = 1.0, 1.0
    # eps_{mu nu rho sigma} I^mu J^nu u^rho v^sigma with I = e0, J = e3, u = e1, v = e2
    assert np.isclose(sp.omega(c, u, v), sp.s * algebra.EPS_LOWER[0, 3, 1, 2])


def test_sphere_form_is_area(rng):
    sp = SpinSphere(1.5)
    p = PhasePoint(sp, [0, 0, 1.0])
    u = TangentVector(p, [1.0, 0, 0])
    v = TangentVector(p, [0, 1.0, 0])
    assert np.isclose(symplectic_eval(p, u, v), 1.5)


def test_time_translation_is_rejected(rng):
    sp = FreeRel(1.0)
    p = sp.random_point(rng)
    g = Poincare(algebra.LorentzElement.identity(), [1.0, 0, 0, 0])
    with pytest.raises(DomainError):
        sp.act(g, p.coords)


def test_time_shift_equals_slide_along_momentum():
    # with allow_time a pure time shift slides the event back along I
    sp = FreeRel(1.0)
    c = np.array([0.1, 0.2, 0.3, np.sqrt(1 + 0.25), 0.5, 0, 0])
    g = Poincare(algebra.LorentzElement.identity(), [2.0, 0, 0, 0])
    out = sp.act(g, c, allow_time=True)
    assert np.allclose(out[:3], c[:3] - 2.0 / c[3] * c[4:7])


def test_poincare_group_law(rng):
    sp = FreeRel(1.0)
    g, h = random_poincare(rng), random_poincare(rng)
    c = sp.random_coords(rng)
    both = sp.act(g @ h, c, allow_time=True)
    step = sp.act(g, sp.act(h, c, allow_time=True), allow_time=True)
    assert np.allclose(both, step)
    back = sp.act(g.inverse(), sp.act(g, c, allow_time=True), allow_time=True)
    assert np.allclose(back, c)


def test_anyon_chart_roundtrip(rng):
    for _ in range(20):
        cov = rng.normal(size=2)
        xy = anyon_base_chart(cov)
        w = int(np.floor((cov[0] - cov[1]) / 2 + 0.5))
        assert np.allclose(anyon_cover_chart(xy, w), cov)


def test_anyon_deck_and_rotation(rng):
    sp = Anyon(0.5)
    c = sp.random_coords(rng)
    d = sp.act(Deck(1), c)
    assert np.allclose(anyon_base_chart(d[:2]), anyon_base_chart(c[:2]))
    full = sp.act(PlaneRotation(-2 * np.pi), c)
    assert np.allclose(full, sp.act(Deck(1), c))
    quarter = sp.act(PlaneRotation(np.pi / 2), c)
    x, y = anyon_base_chart(c[:2])
    assert np.allclose(anyon_base_chart(quarter[:2]), [y, -x])


def test_coordinate_validation():
    with pytest.raises(DomainError):
        PhasePoint(SpinSphere(0.5), [1.0, 1.0, 0])
    with pytest.raises(DomainError):
        PhasePoint(SpinSphere(0.5), [1.0, 0])
    with pytest.raises(DomainError):
        PhasePoint(FreeRel(1.0), [0, 0, 0, -1.0, 0, 0, 0])
    with pytest.raises(DomainError):
        SpinSphere(-0.5)
    with pytest.raises(DomainError):
        FreeRel(0.0)
    with pytest.raises(DomainError):
        Massless(0.5, 2)
    p = PhasePoint(SpinSphere(0.5), [0, 0, 1.0])
    with pytest.raises(DomainError):
        TangentVector(p, [0, 0, 1.0]).validate()


def test_symplectic_eval_rejects_foreign_vectors(rng):
    sp = SpinSphere(0.5)
    p, q = sp.random_point(rng), sp.random_point(rng)
    with pytest.raises(DomainError):
        symplectic_eval(p, sp.random_tangent(rng, q), sp.random_tangent(rng, p))


def test_retract_projects_onto_constraints(rng):
    for sp in (FreeRel(1.0), MassiveSpin(1.0, 0.5), ThreeD(1.0, 0.5), SpinSphere(1)):
        c = sp.random_coords(rng) + 1e-3 * rng.normal(size=sp.size)
        assert np.abs(sp.constraints(sp.retract(c))).max() < 1e-12
