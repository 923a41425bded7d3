"""Pointwise almost contact B-metric structures.

A structure on a (2n+1)-dimensional real vector space is a quadruple
(phi, xi, eta, g): an endomorphism phi, a distinguished vector xi (the
Reeb vector), its dual 1-form eta, and a symmetric bilinear form g of
signature (n+1, n), tied together by the algebraic relations

    phi xi = 0,        phi^2 = -Id + eta (x) xi,      eta o phi = 0,
    eta(xi) = 1,       g(phi x, phi y) = -g(x, y) + eta(x) eta(y).

Everything in this package is linear algebra over a fixed basis at a
single point: vectors are coordinate arrays, phi and g are matrices.
The canonical basis ordering everywhere is xi first, then e_1..e_n,
then phi e_1..phi e_n, in which g = diag(1, I_n, -I_n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_ATOL",
    "DEFAULT_RTOL",
    "StructureData",
    "ValidationReport",
    "canonical_structure",
    "validate_structure",
    "associated_metric",
    "h_project",
    "v_project",
    "is_canonical_basis",
]

# Default tolerances: absolute for algebraic identities on exactly
# representable inputs, relative elsewhere.
DEFAULT_ATOL = 1e-12
DEFAULT_RTOL = 1e-9

# Eigenvalues below this magnitude do not count toward the signature.
_SIGNATURE_EIG_TOL = 1e-10


def _as_float_array(value, shape, name: str) -> np.ndarray:
    arr = np.array(value, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class StructureData:
    """A point-wise structure (phi, xi, eta, g) with cached inverse metric.

    Immutable after construction; safe to share across threads. The
    inverse metric is computed on construction unless supplied.
    """

    n: int
    g: np.ndarray
    phi: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    g_inv: np.ndarray = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"contact rank n must be >= 1, got {self.n}")
        d = 2 * self.n + 1
        object.__setattr__(self, "g", _as_float_array(self.g, (d, d), "g"))
        object.__setattr__(self, "phi", _as_float_array(self.phi, (d, d), "phi"))
        object.__setattr__(self, "xi", _as_float_array(self.xi, (d,), "xi"))
        object.__setattr__(self, "eta", _as_float_array(self.eta, (d,), "eta"))
        if self.g_inv is None:
            try:
                g_inv = np.linalg.inv(self.g)
            except np.linalg.LinAlgError as exc:
                raise ValueError("metric g is singular") from exc
        else:
            g_inv = self.g_inv
        object.__setattr__(self, "g_inv", _as_float_array(g_inv, (d, d), "g_inv"))

    @property
    def dim(self) -> int:
        return 2 * self.n + 1


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structure-axiom checks.

    ``residuals`` maps every checked axiom to its worst-case residual;
    ``violations`` lists the (axiom, residual) pairs that exceed the
    tolerance. ``valid`` is true iff no axiom is violated.
    """

    valid: bool
    violations: tuple
    residuals: dict
    tol: float

    def worst(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0


def canonical_structure(n: int) -> StructureData:
    """Structure in the canonical basis {xi, e_1..e_n, phi e_1..phi e_n}.

    g = diag(1, I_n, -I_n); phi sends e_i to e_(n+i), e_(n+i) to -e_i
    and kills xi; eta is the first coordinate form.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValueError(f"n must be an integer, got {n!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    d = 2 * n + 1
    g = np.diag(np.concatenate(([1.0], np.ones(n), -np.ones(n))))
    phi = np.zeros((d, d))
    for i in range(1, n + 1):
        phi[n + i, i] = 1.0
        phi[i, n + i] = -1.0
    xi = np.zeros(d)
    xi[0] = 1.0
    eta = np.zeros(d)
    eta[0] = 1.0
    return StructureData(n=n, g=g, phi=phi, xi=xi, eta=eta)


def _signature_residual(g: np.ndarray, n: int) -> float:
    eigvals = np.linalg.eigvalsh(0.5 * (g + g.T))
    pos = int(np.sum(eigvals > _SIGNATURE_EIG_TOL))
    neg = int(np.sum(eigvals < -_SIGNATURE_EIG_TOL))
    zero = len(eigvals) - pos - neg
    return float(abs(pos - (n + 1)) + abs(neg - n) + zero)


def validate_structure(s: StructureData, tol: float = DEFAULT_RTOL) -> ValidationReport:
    """Check all structure axioms plus symmetry, invertibility and signature of g.

    Returns a report with the largest residual per axiom; a failing
    axiom is data, not an error. Malformed inputs (inconsistent shapes)
    are rejected at StructureData construction time instead.
    """
    d = s.dim
    ident = np.eye(d)
    residuals = {}
    residuals["g_symmetric"] = float(np.max(np.abs(s.g - s.g.T)))
    residuals["g_inverse"] = float(np.max(np.abs(s.g @ s.g_inv - ident)))
    residuals["signature"] = _signature_residual(s.g, s.n)
    residuals["phi_xi"] = float(np.max(np.abs(s.phi @ s.xi)))
    residuals["phi_squared"] = float(
        np.max(np.abs(s.phi @ s.phi + ident - np.outer(s.xi, s.eta)))
    )
    residuals["eta_phi"] = float(np.max(np.abs(s.eta @ s.phi)))
    residuals["eta_xi"] = float(abs(s.eta @ s.xi - 1.0))
    residuals["b_metric"] = float(
        np.max(np.abs(s.phi.T @ s.g @ s.phi + s.g - np.outer(s.eta, s.eta)))
    )
    violations = tuple((k, v) for k, v in residuals.items() if v > tol)
    return ValidationReport(
        valid=not violations, violations=violations, residuals=residuals, tol=tol
    )


def associated_metric(s: StructureData) -> np.ndarray:
    """The companion B-metric g~(x, y) = g(x, phi y) + eta(x) eta(y).

    For a valid structure the result is symmetric, has the same
    signature (n+1, n), and (phi, xi, eta, g~) is again a valid
    structure.
    """
    return s.g @ s.phi + np.outer(s.eta, s.eta)


def h_project(s: StructureData, x) -> np.ndarray:
    """Projection h(x) = -phi^2 x onto the contact distribution ker(eta)."""
    x = np.asarray(x, dtype=float)
    return -(s.phi @ (s.phi @ x))


def v_project(s: StructureData, x) -> np.ndarray:
    """Projection v(x) = eta(x) xi onto the Reeb line."""
    x = np.asarray(x, dtype=float)
    return (s.eta @ x) * s.xi


def is_canonical_basis(s: StructureData, tol: float = DEFAULT_ATOL) -> bool:
    """True when the coordinates of s match canonical_structure(s.n)."""
    c = canonical_structure(s.n)
    return (
        np.max(np.abs(s.g - c.g)) <= tol
        and np.max(np.abs(s.phi - c.phi)) <= tol
        and np.max(np.abs(s.xi - c.xi)) <= tol
        and np.max(np.abs(s.eta - c.eta)) <= tol
    )
