"""Seeded invariant suites for the CLI verify command.

Each suite runs a set of named property checks over seeded random
inputs and reports the worst residual per property against its
tolerance. Failures are results, not errors; the CLI maps an overall
pass to exit code 0.

Tolerances follow the package-wide convention: 1e-12 absolute for
identities evaluated on exactly representable inputs, 1e-9 relative
elsewhere. Group equivariance suites run at n = 2: for n = 1 the
identity component of the structure group is trivial, so dimension-3
equivariance is exercised with the explicit discrete element instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import decomposition as dec
from . import models
from .group import act, group_element_from_blocks, random_group_element, validate_group_element
from .structure import canonical_structure
from .tensors import (
    inner_product,
    lee_forms,
    membership_residuals,
    random_structure_tensor,
)

__all__ = ["CheckResult", "SUITE_NAMES", "run_suite", "run_suites"]

SUITE_NAMES = ("decomposition", "group", "models", "dim3")

_ATOL = 1e-12
_RTOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    worst: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol


class _Worst:
    """Accumulate the worst residual per named check."""

    def __init__(self):
        self.values = {}

    def add(self, name: str, value: float) -> None:
        self.values[name] = max(self.values.get(name, 0.0), float(value))

    def results(self, tols: dict) -> list:
        return [CheckResult(name, self.values.get(name, 0.0), tol) for name, tol in tols.items()]


def _rel(diff_max: float, scale: float) -> float:
    return diff_max / max(1.0, scale)


def decomposition_suite(seeds: int) -> list:
    w = _Worst()
    for n in (1, 2, 3):
        s = canonical_structure(n)
        for seed in range(seeds):
            f = random_structure_tensor(s, seed)
            scale = f.max_abs()
            d = dec.decompose(s, f)
            w.add("reconstruction", d.reconstruction_residual)
            ip_scale = max(1.0, abs(inner_product(s, f, f)))
            for i in range(dec.NUM_CLASSES):
                for j in range(i + 1, dec.NUM_CLASSES):
                    w.add(
                        "orthogonality",
                        abs(inner_product(s, d.components[i], d.components[j])) / ip_scale,
                    )
            for i in range(1, dec.NUM_CLASSES + 1):
                ci = d.components[i - 1]
                w.add("closure", _rel(max(membership_residuals(s, ci).values()), scale))
                if not dec.satisfies_class(s, ci, i, _RTOL):
                    w.add("class predicates", 1.0)
            projs = [dec.project_w(s, f, i) for i in range(1, 5)]
            total = projs[0]
            for p in projs[1:]:
                total = total + p
            w.add("projector sum", _rel((total - f).max_abs(), scale))
            for i, p in enumerate(projs, start=1):
                w.add("projector idempotency", _rel((dec.project_w(s, p, i) - p).max_abs(), scale))
            g2 = random_structure_tensor(s, seed + 10_000)
            for i in range(1, 5):
                lhs = inner_product(s, dec.project_w(s, f, i), g2)
                rhs = inner_product(s, f, dec.project_w(s, g2, i))
                w.add("projector self-adjointness", _rel(abs(lhs - rhs), abs(rhs)))
            # Lee-form vanishing per block
            lee_p = [lee_forms(s, p) for p in projs]
            xi = s.xi
            h = -(s.phi @ s.phi)
            w.add("lee form table", _rel(abs(lee_p[0].theta @ xi), scale))
            w.add("lee form table", _rel(abs(lee_p[0].theta_star @ xi), scale))
            w.add("lee form table", _rel(np.max(np.abs(lee_p[0].omega)), scale))
            w.add("lee form table", _rel(np.max(np.abs(h.T @ lee_p[1].theta)), scale))
            w.add("lee form table", _rel(np.max(np.abs(h.T @ lee_p[1].theta_star)), scale))
            w.add("lee form table", _rel(np.max(np.abs(lee_p[1].omega)), scale))
            for form in (lee_p[2].theta, lee_p[2].theta_star, lee_p[2].omega):
                w.add("lee form table", _rel(np.max(np.abs(form)), scale))
            for form in (lee_p[3].theta, lee_p[3].theta_star):
                w.add("lee form table", _rel(np.max(np.abs(form)), scale))
            # W2 involution eigenspaces
            plus_l1 = d.components[3] + d.components[4] + d.components[5] + d.components[7]
            minus_l1 = d.components[6] + d.components[8]
            plus_l2 = d.components[7] + d.components[8]
            minus_l2 = d.components[3] + d.components[4] + d.components[5] + d.components[6]
            w.add("w2 eigenspaces", _rel((dec.w2_involution(s, plus_l1, 1) - plus_l1).max_abs(), scale))
            w.add("w2 eigenspaces", _rel((dec.w2_involution(s, minus_l1, 1) + minus_l1).max_abs(), scale))
            w.add("w2 eigenspaces", _rel((dec.w2_involution(s, plus_l2, 2) - plus_l2).max_abs(), scale))
            w.add("w2 eigenspaces", _rel((dec.w2_involution(s, minus_l2, 2) + minus_l2).max_abs(), scale))
            # W2,1 refinement
            w.add("w21 refinement", _rel(abs(lee_forms(s, d.components[3]).theta_star @ xi), scale))
            w.add("w21 refinement", _rel(abs(lee_forms(s, d.components[4]).theta @ xi), scale))
            lf6 = lee_forms(s, d.components[5])
            w.add("w21 refinement", _rel(abs(lf6.theta @ xi), scale))
            w.add("w21 refinement", _rel(abs(lf6.theta_star @ xi), scale))
    tols = {
        "reconstruction": _RTOL,
        "orthogonality": _RTOL,
        "closure": _RTOL,
        "class predicates": 0.5,
        "projector sum": _RTOL,
        "projector idempotency": _RTOL,
        "projector self-adjointness": _RTOL,
        "lee form table": _ATOL,
        "w2 eigenspaces": _RTOL,
        "w21 refinement": _ATOL,
    }
    return w.results(tols)


def group_suite(seeds: int) -> list:
    w = _Worst()
    n = 2
    s = canonical_structure(n)
    for seed in range(seeds):
        elem = random_group_element(n, seed)
        w.add("element validity", 0.0 if validate_group_element(s, elem.a) else 1.0)
        f = random_structure_tensor(s, seed)
        g2 = random_structure_tensor(s, seed + 20_000)
        af = act(s, elem, f)
        scale = f.max_abs()
        w.add("space invariance", _rel(max(membership_residuals(s, af).values()), af.max_abs()))
        w.add(
            "inner product invariance",
            _rel(abs(inner_product(s, af, act(s, elem, g2)) - inner_product(s, f, g2)),
                 abs(inner_product(s, f, g2))),
        )
        other = random_group_element(n, seed + 30_000)
        w.add(
            "representation homomorphism",
            _rel((act(s, elem, act(s, other, f)) - act(s, elem.compose(other), f)).max_abs(), scale),
        )
        for i in range(1, 5):
            w.add(
                "p_i equivariance",
                _rel((dec.project_w(s, af, i) - act(s, elem, dec.project_w(s, f, i))).max_abs(), scale),
            )
        for i in range(1, dec.NUM_CLASSES + 1):
            w.add(
                "component equivariance",
                _rel((dec.component(s, af, i) - act(s, elem, dec.component(s, f, i))).max_abs(), scale),
            )
    # discrete representative at n = 1
    s1 = canonical_structure(1)
    refl = group_element_from_blocks(1, -np.eye(1), np.zeros((1, 1)))
    w.add("element validity", 0.0 if validate_group_element(s1, refl.a) else 1.0)
    for seed in range(min(seeds, 10)):
        f1 = random_structure_tensor(s1, seed)
        af1 = act(s1, refl, f1)
        for i in range(1, dec.NUM_CLASSES + 1):
            w.add(
                "component equivariance",
                _rel((dec.component(s1, af1, i) - act(s1, refl, dec.component(s1, f1, i))).max_abs(),
                     f1.max_abs()),
            )
    tols = {
        "element validity": 0.5,
        "space invariance": _RTOL,
        "inner product invariance": _RTOL,
        "representation homomorphism": _RTOL,
        "p_i equivariance": _RTOL,
        "component equivariance": _RTOL,
    }
    return w.results(tols)


def models_suite(seeds: int) -> list:
    w = _Worst()
    rng = np.random.default_rng(2024)
    for n in (1, 2):
        for _ in range(seeds):
            params = rng.uniform(-2.0, 2.0, size=2 * n)
            spec = models.lie_family(n, params)
            w.add("jacobi", 0.0 if models.check_jacobi(spec) else 1.0)
            conn = models.koszul_connection(spec)
            torsion, compat = models.connection_residuals(spec, conn)
            w.add("koszul torsion", torsion)
            w.add("koszul metric compatibility", compat)
            f = models.structure_tensor_from_connection(spec, conn)
            res = max(membership_residuals(spec.structure, f).values())
            w.add("family membership", _rel(res, f.max_abs()))
            if n == 1:
                a1, a2 = params
                g = conn.gamma
                w.add("family connection values", np.max(np.abs(g[1, 1] - [-a1, 0, 0])))
                w.add("family connection values", np.max(np.abs(g[2, 2] - [-a1, 0, 0])))
                w.add("family connection values", np.max(np.abs(g[0, 1] - [0, 0, -a2])))
                w.add("family connection values", np.max(np.abs(g[0, 2] - [0, -a2, 0])))
                w.add("family connection values", np.max(np.abs(g[1, 0] - [0, a1, 0])))
                w.add("family connection values", np.max(np.abs(g[2, 0] - [0, 0, -a1])))
                c = f.comps
                w.add("family tensor components", abs(c[0, 1, 1] + 2 * a2))
                w.add("family tensor components", abs(c[0, 2, 2] + 2 * a2))
                w.add("family tensor components", abs(c[1, 0, 2] - a1))
                w.add("family tensor components", abs(c[1, 2, 0] - a1))
                w.add("family tensor components", abs(c[2, 0, 1] + a1))
                w.add("family tensor components", abs(c[2, 1, 0] + a1))
                report = dec.classify(spec.structure, f)
                expected = tuple(
                    i for i, nonzero in ((9, a1 != 0.0), (10, a2 != 0.0)) if nonzero
                )
                w.add("family classification", 0.0 if report.present == expected else 1.0)
    # sphere grid
    for n in (1, 2, 3):
        for t in np.linspace(-np.pi / 2, np.pi / 2, 20):
            s, f = models.sphere_structure_tensor(n, float(t))
            lf = lee_forms(s, f)
            w.add("sphere lee values", abs(float(lf.theta @ s.xi) - 2 * n * np.cos(t)))
            w.add("sphere lee values", abs(float(lf.theta_star @ s.xi) - 2 * n * np.sin(t)))
            report = dec.classify(s, f)
            w.add("sphere classification", 0.0 if set(report.present) <= {4, 5} else 1.0)
        s, f = models.sphere_structure_tensor(n, 0.0)
        w.add("sphere classification", 0.0 if dec.classify(s, f).present == (4,) else 1.0)
    tols = {
        "jacobi": 0.5,
        "koszul torsion": _ATOL,
        "koszul metric compatibility": _ATOL,
        "family membership": _RTOL,
        "family connection values": _ATOL,
        "family tensor components": _ATOL,
        "family classification": 0.5,
        "sphere lee values": _ATOL,
        "sphere classification": 0.5,
    }
    return w.results(tols)


def dim3_suite(seeds: int) -> list:
    w = _Worst()
    s = canonical_structure(1)
    for seed in range(seeds):
        f = random_structure_tensor(s, seed)
        for i in (2, 3, 6, 7):
            w.add("components 2,3,6,7 vanish", dec.component(s, f, i).max_abs())
        for i in range(1, dec.NUM_CLASSES + 1):
            w.add(
                "fast path matches general",
                (models.dim3_component(f, i) - dec.component(s, f, i)).max_abs(),
            )
        fast = models.dim3_lee_forms(f)
        general = lee_forms(s, f)
        w.add("lee forms fast path", np.max(np.abs(fast.theta - general.theta)))
        w.add("lee forms fast path", np.max(np.abs(fast.theta_star - general.theta_star)))
        w.add("lee forms fast path", np.max(np.abs(fast.omega - general.omega)))
    tols = {
        "components 2,3,6,7 vanish": _ATOL,
        "fast path matches general": _ATOL,
        "lee forms fast path": _ATOL,
    }
    return w.results(tols)


_SUITES = {
    "decomposition": decomposition_suite,
    "group": group_suite,
    "models": models_suite,
    "dim3": dim3_suite,
}


def run_suite(name: str, seeds: int) -> list:
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    return _SUITES[name](seeds)


def run_suites(names, seeds: int) -> dict:
    """Run the named suites; returns {suite: [CheckResult, ...]}."""
    return {name: run_suite(name, seeds) for name in names}
