"""Batch runner for verification scenarios.

A scenario file is a JSON document holding one scenario object, a list of
them, or ``{"scenarios": [...]}``. Each scenario selects a phase space or a
bundle and lists checks::

    {"name": "hopf-1", "bundle": {"kind": "Hopf", "n": 1}, "seed": 7,
     "checks": ["curvature", {"check": "holonomy-stokes", "loops": 20}],
     "tolerances": {"eps_fd": 1e-5}}

Exit codes: 0 when every check passes, 1 when any fails or errors, 2 when
the scenario file cannot be parsed.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import math
import sys
import time
import zlib
from importlib import resources
from typing import Any, Callable

import numpy as np

from . import __version__, algebra, config, exchange, holonomy, phasespaces, prequant
from .errors import ScenarioParseError, SpinstatError

# ---------------------------------------------------------------------------
# scenario model

SPACES = {
    "SpinSphere": (phasespaces.SpinSphere, ("s",)),
    "FreeRel": (phasespaces.FreeRel, ("m",)),
    "MassiveSpin": (phasespaces.MassiveSpin, ("m", "s")),
    "Massless": (phasespaces.Massless, ("s", "chi")),
    "ThreeD": (phasespaces.ThreeD, ("m", "s")),
    "Anyon": (phasespaces.Anyon, ("alpha", "m")),
}

BUNDLES = ("Hopf", "DiracBundle", "TrivialU1", "AnyonBundle")


@dataclasses.dataclass(frozen=True)
class CheckCall:
    name: str
    params: dict


@dataclasses.dataclass(frozen=True)
class Scenario:
    name: str
    space: Any
    bundle: Any
    checks: tuple
    seed: int
    tolerances: dict
    selection: dict


@dataclasses.dataclass
class CheckResult:
    name: str
    status: str                 # pass / fail / error
    measured: Any = None
    expected: Any = None
    tolerance: Any = None
    details: dict = dataclasses.field(default_factory=dict)
    error: str | None = None

    def as_dict(self):
        d = {"check": self.name, "status": self.status, "measured": self.measured,
             "expected": self.expected, "tolerance": self.tolerance, "details": self.details}
        if self.error is not None:
            d["error"] = self.error
        return d


@dataclasses.dataclass
class Report:
    scenario: str
    seed: int
    selection: dict
    tolerances: dict
    checks: list
    wall_time: float
    version: str = __version__

    @property
    def status(self):
        return "pass" if all(c.status == "pass" for c in self.checks) else "fail"

    def as_dict(self, include_time=True):
        d = {"scenario": self.scenario, "seed": self.seed, "selection": self.selection,
             "tolerances": self.tolerances, "version": self.version, "status": self.status,
             "checks": [c.as_dict() for c in self.checks]}
        if include_time:
            d["wall_time"] = round(self.wall_time, 3)
        return d


# ---------------------------------------------------------------------------
# parsing


def _line_of(text: str, needle: str) -> int | None:
    pos = text.find(needle)
    return None if pos < 0 else text.count("\n", 0, pos) + 1


def _number(obj, key, where, text, default=None, integer=False):
    if key not in obj:
        if default is not None:
            return default
        raise ScenarioParseError(f"missing parameter {key!r}", field=f"{where}.{key}",
                                 line=_line_of(text, f'"{where.split(".")[-1]}"'))
    val = obj[key]
    ok = isinstance(val, (int, float)) and not isinstance(val, bool)
    if ok and integer:
        ok = float(val).is_integer()
    if not ok:
        raise ScenarioParseError(f"expected {'an integer' if integer else 'a number'}, got {val!r}",
                                 field=f"{where}.{key}", line=_line_of(text, f'"{key}"'))
    return int(val) if integer else float(val)


def _build_space(obj, where, text):
    kind = obj.get("kind")
    if kind not in SPACES:
        raise ScenarioParseError(f"unknown space kind {kind!r}; choose from {sorted(SPACES)}",
                                 field=f"{where}.kind", line=_line_of(text, f'"{kind}"'))
    cls, keys = SPACES[kind]
    args = {}
    for k in keys:
        if kind == "Anyon" and k == "m":
            args[k] = _number(obj, k, where, text, default=1.0)
        elif k == "chi":
            args[k] = _number(obj, k, where, text, integer=True)
        else:
            args[k] = _number(obj, k, where, text)
    try:
        return cls(**args)
    except SpinstatError as exc:
        raise ScenarioParseError(str(exc), field=where, line=_line_of(text, f'"{kind}"')) from None


def _build_bundle(obj, where, text):
    kind = obj.get("kind")
    line = _line_of(text, f'"{kind}"')
    try:
        if kind == "Hopf":
            return prequant.Hopf(_number(obj, "n", where, text, integer=True))
        if kind == "DiracBundle":
            return prequant.DiracBundle(_number(obj, "n", where, text, integer=True),
                                        _number(obj, "m", where, text, default=1.0))
        if kind == "AnyonBundle":
            return prequant.AnyonBundle(_number(obj, "alpha", where, text),
                                        _number(obj, "m", where, text, default=1.0))
        if kind == "TrivialU1":
            base = obj.get("base")
            if not isinstance(base, dict):
                raise ScenarioParseError("TrivialU1 needs a 'base' space object",
                                         field=f"{where}.base", line=line)
            return prequant.TrivialU1(_build_space(base, f"{where}.base", text))
    except ScenarioParseError:
        raise
    except SpinstatError as exc:
        raise ScenarioParseError(str(exc), field=where, line=line) from None
    raise ScenarioParseError(f"unknown bundle kind {kind!r}; choose from {list(BUNDLES)}",
                             field=f"{where}.kind", line=line)


def _parse_one(obj, idx, text) -> Scenario:
    where = f"scenarios[{idx}]"
    if not isinstance(obj, dict):
        raise ScenarioParseError("a scenario must be a JSON object", field=where)
    name = obj.get("name", f"scenario-{idx}")
    unknown = set(obj) - {"name", "space", "bundle", "checks", "seed", "tolerances", "description"}
    if unknown:
        key = sorted(unknown)[0]
        raise ScenarioParseError(f"unknown scenario field {key!r}", field=f"{where}.{key}",
                                 line=_line_of(text, f'"{key}"'))
    bundle = space = None
    if "bundle" in obj:
        bundle = _build_bundle(obj["bundle"], f"{where}.bundle", text)
        space = bundle.base
    if "space" in obj:
        space = _build_space(obj["space"], f"{where}.space", text)
    checks_raw = obj.get("checks", [])
    if not isinstance(checks_raw, list):
        raise ScenarioParseError("'checks' must be a list", field=f"{where}.checks",
                                 line=_line_of(text, '"checks"'))
    checks = []
    for j, c in enumerate(checks_raw):
        cw = f"{where}.checks[{j}]"
        if isinstance(c, str):
            c = {"check": c}
        if not isinstance(c, dict) or "check" not in c:
            raise ScenarioParseError("a check is a name or an object with a 'check' key", field=cw)
        if c["check"] not in REGISTRY:
            raise ScenarioParseError(f"unknown check {c['check']!r}", field=f"{cw}.check",
                                     line=_line_of(text, f'"{c["check"]}"'))
        checks.append(CheckCall(c["check"], {k: v for k, v in c.items() if k != "check"}))
    randomized = any(REGISTRY[c.name].randomized for c in checks)
    if "seed" not in obj and randomized:
        raise ScenarioParseError("randomized checks need a 'seed'", field=f"{where}.seed",
                                 line=_line_of(text, f'"{name}"'))
    seed = obj.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2 ** 64:
        raise ScenarioParseError("seed must be an unsigned 64-bit integer", field=f"{where}.seed",
                                 line=_line_of(text, '"seed"'))
    tol = obj.get("tolerances", {})
    fields = {f.name for f in dataclasses.fields(config.Tolerances)}
    if not isinstance(tol, dict) or set(tol) - fields:
        bad = sorted(set(tol) - fields) if isinstance(tol, dict) else ["tolerances"]
        raise ScenarioParseError(f"unknown tolerance {bad[0]!r}", field=f"{where}.tolerances",
                                 line=_line_of(text, '"tolerances"'))
    selection = {}
    if "bundle" in obj:
        selection["bundle"] = obj["bundle"]
    if "space" in obj:
        selection["space"] = obj["space"]
    return Scenario(str(name), space, bundle, tuple(checks), seed, dict(tol), selection)


def parse_scenarios(text: str) -> list[Scenario]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if isinstance(doc, dict) and "scenarios" in doc:
        doc = doc["scenarios"]
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list):
        raise ScenarioParseError("top level must be a scenario, a list, or {'scenarios': [...]}")
    return [_parse_one(obj, i, text) for i, obj in enumerate(doc)]


# ---------------------------------------------------------------------------
# checks


@dataclasses.dataclass(frozen=True)
class CheckDef:
    func: Callable
    claim: str
    randomized: bool = True


REGISTRY: dict[str, CheckDef] = {}


def register(name, claim, randomized=True):
    def deco(func):
        REGISTRY[name] = CheckDef(func, claim, randomized)
        return func
    return deco


def _need(scn, kind, what):
    obj = scn.bundle if what == "bundle" else scn.space
    if not isinstance(obj, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SpinstatError(f"check needs a {names} {what}")
    return obj


def _ok(flag):
    return "pass" if flag else "fail"


def _c(z):
    return [float(np.real(z)), float(np.imag(z))]


@register("flux", "sphere flux equals 4 pi s within a relative tolerance", randomized=False)
def _check_flux(scn, p, rng):
    depth = int(p.get("depth", 5))
    rel = float(p.get("rel_tol", 1e-3))
    values = p.get("s", [scn.space.s] if isinstance(scn.space, phasespaces.SpinSphere) else None)
    if values is None:
        raise SpinstatError("flux check needs a SpinSphere space or an 's' list")
    values = values if isinstance(values, list) else [values]
    errs = []
    for s in values:
        rep = holonomy.surface_flux(phasespaces.SpinSphere(float(s)), depth)
        exact = 4 * math.pi * s
        errs.append(abs(rep.total - exact) / exact if exact else abs(rep.total))
    worst = max(errs)
    return CheckResult("flux", _ok(worst <= rel), worst, 0.0, rel,
                       {"depth": depth, "s": values, "relative_errors": errs})


@register("integrality", "sphere flux / 2 pi is an integer exactly when 2s is", randomized=False)
def _check_integrality(scn, p, rng):
    depth = int(p.get("depth", 5))
    if "values" in p:
        values = [float(v) for v in p["values"]]
        expect = p.get("expect", [abs(2 * v - round(2 * v)) < 1e-12 for v in values])
        got = [holonomy.integrality_check(v, depth) for v in values]
        flags = [g[0] for g in got]
        return CheckResult("integrality", _ok(flags == list(expect)), flags, list(expect),
                           config.get().eps_int,
                           {"values": values, "n": [g[1] for g in got], "depth": depth})
    sp = _need(scn, phasespaces.SpinSphere, "space")
    ok, n = holonomy.integrality_check(sp.s, depth)
    return CheckResult("integrality", _ok(ok), n, round(2 * sp.s) if ok else None,
                       config.get().eps_int, {"s": sp.s, "depth": depth, "quantizable": ok})


@register("curvature", "d omega equals the pulled-back symplectic form")
def _check_curvature(scn, p, rng):
    b = _need(scn, prequant.Bundle, "bundle")
    n = int(p.get("points", 100))
    worst = 0.0
    for _ in range(n):
        xi = b.random_point(rng)
        bp = xi.base_point()
        u, v = b.base.random_tangent(rng, bp), b.base.random_tangent(rng, bp)
        d, o = prequant.curvature_matches_symplectic(b, xi, u, v)
        worst = max(worst, abs(d - o))
    tol = config.get().eps_fd
    return CheckResult("curvature", _ok(worst <= tol), worst, 0.0, tol, {"points": n})


@register("holonomy-stokes", "loop holonomy equals exp(i * enclosed flux)")
def _check_stokes(scn, p, rng):
    b = _need(scn, prequant.Hopf, "bundle")
    n = int(p.get("loops", 20))
    tol = float(p.get("tol", 1e-4))
    samples = int(p.get("samples", 513))
    worst = 0.0
    for _ in range(n):
        c = rng.normal(size=3)
        c /= np.linalg.norm(c)
        pts = holonomy.star_loop(c, rng.uniform(0.2, 1.2), rng, n_samples=samples, wobble=0.15)
        loop = holonomy.sphere_path(b.base, pts)
        flux = holonomy.cap_flux(b.base, loop, c)
        hol = holonomy.line_holonomy(b, holonomy.section_lift(b, loop, c))
        worst = max(worst, abs(hol - np.exp(1j * flux)))
    return CheckResult("holonomy-stokes", _ok(worst < tol), worst, 0.0, tol, {"loops": n})


@register("two-pi-rotation", "a lifted 2 pi rotation acts on the fiber by (-1)^n")
def _check_two_pi(scn, p, rng):
    b = _need(scn, (prequant.Hopf, prequant.DiracBundle), "bundle")
    n_pts = int(p.get("points", 10))
    worst = 0.0
    expected = (-1) ** b.n
    for _ in range(n_pts):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        g = algebra.su2_exp(axis, 2 * math.pi)
        xi = b.random_point(rng)
        worst = max(worst, abs(xi.phase_to(prequant.lifted_group_action(b, g, xi)) - expected))
    tol = float(p.get("tol", 1e-9))
    return CheckResult("two-pi-rotation", _ok(worst < tol), worst, expected, tol, {"points": n_pts})


def _random_pairs(scn, rng, n):
    sp = scn.space
    pairs = []
    for _ in range(n):
        a = sp.random_point(rng)
        if isinstance(sp, phasespaces.MassiveSpin):
            # same momentum as the first particle, random position and spin
            j = rng.normal(size=3)
            j /= np.linalg.norm(j)
            boost = algebra.sl2c_to_lorentz(algebra.boost_to(a.coords[3:7])).matrix
            c = np.concatenate([rng.normal(size=3), a.coords[3:7],
                                boost @ np.concatenate([[0.0], j])])
            pairs.append((a, phasespaces.PhasePoint(sp, c)))
        else:
            pairs.append((a, sp.random_point(rng)))
    return pairs


def _expected_verdict(b):
    if isinstance(b, prequant.TrivialU1):
        return {"kind": "BoseOnly"}
    if isinstance(b, prequant.AnyonBundle):
        return {"kind": "Anyonic", "f": 0, "l": 1}
    return {"kind": "SpinStatistics", "f": b.n % 2}


@register("exchange", "TypeII exchange phase is (-1)^n; TypeI exchanges cross the diagonal")
def _check_exchange(scn, p, rng):
    b = _need(scn, (prequant.Hopf, prequant.DiracBundle, prequant.TrivialU1), "bundle")
    n = int(p.get("pairs", 10))
    mode = p.get("mode", exchange.TYPE_II)
    turns = int(p.get("extra_turns", 0))
    pairs = _random_pairs(scn, rng, n)
    if mode == exchange.TYPE_I:
        crossed = [exchange.diagonal_crossing(exchange.build_any_exchange(a, c, mode))[0]
                   for a, c in pairs]
        return CheckResult("exchange", _ok(all(crossed)), sum(crossed), n, None,
                           {"mode": mode, "pairs": n})
    expected = 1 if isinstance(b, prequant.TrivialU1) else (-1) ** b.n
    worst, seps = 0.0, []
    for a, c in pairs:
        path = exchange.build_any_exchange(a, c, mode, turns)
        res = exchange.exchange_details(b, path, exchange.lift_pair(b, a, c, rng))
        worst = max(worst, abs(res.raw_phase - expected))
        seps.append(res.min_separation)
    tol = float(p.get("tol", 1e-9))
    return CheckResult("exchange", _ok(worst < tol), worst, expected, tol,
                       {"mode": mode, "pairs": n, "extra_turns": turns,
                        "min_separation": min(seps)})


@register("classify", "classifier verdict: f = n mod 2, Bose-only, or anyonic (0, 1)")
def _check_classify(scn, p, rng):
    b = _need(scn, prequant.Bundle, "bundle")
    n = int(p.get("pairs", 10))
    if isinstance(b, prequant.AnyonBundle):
        samples = [b.base.random_point(rng) for _ in range(n)]
    else:
        samples = _random_pairs(scn, rng, n)
    verdict = exchange.classify_statistics(b, samples, rng)
    got = verdict.as_dict()
    expect = _expected_verdict(b)
    ok = all(got.get(k) == v for k, v in expect.items())
    if isinstance(b, prequant.AnyonBundle):
        ok = ok and abs(verdict.phase - np.exp(1j * b.alpha)) < 1e-12
    return CheckResult("classify", _ok(ok), got, expect, config.get().eps_snap, {"pairs": n})


@register("anyon-phases", "four exchange phases (-1)^f e^{i l alpha}, two when alpha is a multiple of pi",
          randomized=False)
def _check_anyon(scn, p, rng):
    alpha = float(p.get("alpha", getattr(scn.space, "alpha", 0.0)))
    phases = exchange.anyon_exchange_phases(alpha)
    quantised = abs(alpha / math.pi - round(alpha / math.pi)) < 1e-12
    want = 2 if quantised else 4
    b = prequant.AnyonBundle(alpha)
    pt = phasespaces.PhasePoint(b.base, np.array([0.3, -0.1, 0.5, 0.2]))
    _, windings, selected = exchange.anyon_exchange(b, pt)
    sel_ok = abs(selected - np.exp(1j * alpha)) < 1e-12
    odd_pi = quantised and round(alpha / math.pi) % 2 == 1
    fermi_ok = (abs(selected + 1) < 1e-12) == odd_pi
    double_ok = abs(selected ** 2 - np.exp(2j * alpha)) < 1e-12
    ok = len(phases) == want and sel_ok and fermi_ok and double_ok
    return CheckResult("anyon-phases", _ok(ok), len(phases), want, 1e-12,
                       {"alpha": alpha, "phases": [_c(z) for z in phases],
                        "selected": _c(selected), "windings": windings,
                        "fermi": bool(abs(selected + 1) < 1e-12)})


@register("massless-null", "V(a) lies in the kernel of the massless form")
def _check_null(scn, p, rng):
    sp = _need(scn, phasespaces.Massless, "space")
    n = int(p.get("pairs", 50))
    worst = 0.0
    for _ in range(n):
        pt = sp.random_point(rng)
        i, j = pt.coords[4:8], pt.coords[8:12]
        a = rng.normal(size=4)
        a = a - algebra.minkowski(a, i) / algebra.minkowski(j, i) * j
        v = phasespaces.null_directions_massless(pt, a)
        w = sp.random_tangent(rng, pt)
        worst = max(worst, abs(phasespaces.symplectic_eval(pt, v, w)))
    tol = float(p.get("tol", 1e-8))
    return CheckResult("massless-null", _ok(worst < tol), worst, 0.0, tol, {"pairs": n})


@register("closedness", "the symplectic form is closed")
def _check_closed(scn, p, rng):
    sp = scn.space
    if sp is None:
        raise SpinstatError("closedness needs a space")
    n = int(p.get("points", 20))
    worst = 0.0
    for _ in range(n):
        pt = sp.random_point(rng)
        u, v, w = (sp.random_tangent(rng, pt) for _ in range(3))
        worst = max(worst, abs(phasespaces.closedness_check(sp, pt, u, v, w)))
    tol = config.get().eps_fd
    return CheckResult("closedness", _ok(worst < tol), worst, 0.0, tol, {"points": n})


def _random_sl2c(rng, scale=0.6):
    z = scale * (rng.normal(size=3) + 1j * rng.normal(size=3))
    return algebra.sl2c_exp(np.einsum("i,iab->ab", z, algebra.PAULI))


@register("double-cover", "SU(2) -> SO(3) and SL(2,C) -> SO(3,1) are homomorphisms with kernel {+1, -1}")
def _check_cover(scn, p, rng):
    n = int(p.get("pairs", 100))
    worst = 0.0
    for _ in range(n):
        a = algebra.su2_from_rotvec(rng.normal(size=3) * 2)
        b = algebra.su2_from_rotvec(rng.normal(size=3) * 2)
        lhs = algebra.su2_to_so3(a @ b).matrix
        rhs = algebra.su2_to_so3(a).matrix @ algebra.su2_to_so3(b).matrix
        worst = max(worst, np.abs(lhs - rhs).max())
        c, d = _random_sl2c(rng), _random_sl2c(rng)
        lhs = algebra.sl2c_to_lorentz(c @ d).matrix
        rhs = algebra.sl2c_to_lorentz(c).matrix @ algebra.sl2c_to_lorentz(d).matrix
        worst = max(worst, np.abs(lhs - rhs).max() / max(1.0, np.abs(rhs).max()))
    kernel = []
    for m in (np.eye(2), -np.eye(2)):
        kernel.append(np.abs(algebra.sl2c_to_lorentz(algebra.SL2CElement(m)).matrix - np.eye(4)).max())
        kernel.append(np.abs(algebra.su2_to_so3(algebra.SU2Element.from_matrix(m)).matrix - np.eye(3)).max())
    tol = float(p.get("tol", 1e-9))
    ok = worst < tol and max(kernel) < tol
    return CheckResult("double-cover", _ok(ok), worst, 0.0, tol,
                       {"pairs": n, "kernel_defect": max(kernel)})


@register("adjoint-invariance", "Dirac exchange phase is unchanged by Lorentz conjugation")
def _check_adjoint(scn, p, rng):
    b = _need(scn, prequant.DiracBundle, "bundle")
    n = int(p.get("frames", 10))
    xs, psis = [], []
    for _ in range(2):
        j = rng.normal(size=3)
        j /= np.linalg.norm(j)
        y = b.lift(np.concatenate([rng.normal(size=3), [1.0, 0, 0, 0, 0.0], j]))
        xs.append(y[:3])
        psis.append(y[3:7] + 1j * y[7:11])
    phases = []
    for _ in range(n):
        lam = algebra.sl2c_to_lorentz(_random_sl2c(rng))
        phases.append(exchange.adjoint_exchange_massive(b, lam, xs, psis, details=True).raw_phase)
    expected = (-1) ** b.n
    worst = max(abs(z - expected) for z in phases)
    tol = float(p.get("tol", 1e-9))
    return CheckResult("adjoint-invariance", _ok(worst < tol), worst, expected, tol, {"frames": n})


# ---------------------------------------------------------------------------
# running


def check_rng(seed: int, check_name: str, params: dict | None = None):
    """Counter-based stream keyed by the seed, the check name and its parameters.

    Reordering checks inside a scenario leaves every stream unchanged.
    """
    tag = check_name + json.dumps(params or {}, sort_keys=True)
    key = np.random.SeedSequence([seed, zlib.crc32(tag.encode())])
    return np.random.Generator(np.random.Philox(key))


def _round(obj):
    if isinstance(obj, float):
        return float(f"{obj:.10g}") if math.isfinite(obj) else str(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return _round(obj.item())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def run_scenario(s: Scenario) -> Report:
    start = time.perf_counter()
    results = []
    with config.override(**s.tolerances):
        tolerances = dataclasses.asdict(config.get())
        for call in s.checks:
            rng = check_rng(s.seed, call.name, call.params)
            try:
                res = REGISTRY[call.name].func(s, call.params, rng)
            except (SpinstatError, ValueError, TypeError, KeyError) as exc:
                res = CheckResult(call.name, "error", error=f"{type(exc).__name__}: {exc}")
            res.details = dict(res.details)
            results.append(res)
    return Report(s.name, s.seed, s.selection, tolerances, results, time.perf_counter() - start)


def run_all(scenarios, parallel=False):
    if not parallel or len(scenarios) < 2:
        return [run_scenario(s) for s in scenarios]
    with concurrent.futures.ThreadPoolExecutor() as pool:
        return list(pool.map(run_scenario, scenarios))


def _table(rep: Report) -> str:
    lines = [f"scenario {rep.scenario}  seed={rep.seed}  status={rep.status.upper()}  "
             f"({rep.wall_time:.2f}s, spinstat {rep.version})"]
    lines.append(f"  {'check':<20} {'status':<6} {'measured':<26} {'expected':<26} {'tol':<10}")
    for c in rep.checks:
        def fmt(v):
            v = _round(v)
            text = json.dumps(v, sort_keys=True) if not isinstance(v, str) else v
            return text if len(text) <= 26 else text[:23] + "..."
        tol = "" if c.tolerance is None else f"{c.tolerance:.1e}"
        lines.append(f"  {c.name:<20} {c.status:<6} {fmt(c.measured):<26} {fmt(c.expected):<26} {tol:<10}")
        if c.error:
            lines.append(f"    error: {c.error}")
    return "\n".join(lines)


def emit_report(reports, fmt: str = "json", include_time: bool = True) -> bytes:
    """Serialise one report or a list of them (``json`` keys sorted; ``text`` a fixed-width table)."""
    many = isinstance(reports, (list, tuple))
    reps = list(reports) if many else [reports]
    if fmt == "json":
        payload = [_round(r.as_dict(include_time)) for r in reps]
        doc = {"reports": payload,
               "status": "pass" if all(r.status == "pass" for r in reps) else "fail"} if many else payload[0]
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()
    if fmt == "text":
        return ("\n\n".join(_table(r) for r in reps) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def bundled_suite_path():
    return resources.files("spinstat").joinpath("data/paper-suite.json")


def _read_source(path: str) -> str:
    if path in ("paper-suite", "paper-suite.json"):
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except FileNotFoundError:
            return bundled_suite_path().read_text(encoding="utf-8")
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="spinstat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the checks in a scenario file")
    v.add_argument("scenario_file", help="JSON scenario file ('paper-suite' for the bundled suite)")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--seed", type=int, help="override every scenario's seed")
    v.add_argument("--parallel", action="store_true", help="run scenarios concurrently")
    sub.add_parser("list-checks", help="print the available checks")
    args = parser.parse_args(argv)

    if args.command == "list-checks":
        for name, d in REGISTRY.items():
            print(f"{name:<20} {d.claim}")
        return 0

    try:
        scenarios = parse_scenarios(_read_source(args.scenario_file))
    except OSError as exc:
        print(f"error: cannot read {args.scenario_file}: {exc}", file=sys.stderr)
        return 2
    except ScenarioParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.seed is not None:
        scenarios = [dataclasses.replace(s, seed=args.seed) for s in scenarios]
    reports = run_all(scenarios, args.parallel)
    out = emit_report(reports, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out.decode())
    return 0 if all(r.status == "pass" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
