"""Example models and the dimension-3 fast path.

Two sources of concrete structure tensors:

* a family of solvable Lie algebras carrying a left-invariant almost
  contact B-metric structure, where the tensor is computed from the
  structure constants through the Koszul formula for the Levi-Civita
  connection;
* the unit time-like sphere, realized directly from the closed form of
  its structure tensor at a point (the ambient hypersurface derivation
  is out of scope; the closed form fully exercises the classifier).

For dimension 3 the eleven component formulas collapse to a handful of
scalar coefficients; this module provides that fast path and the
explicit dimension-3 Lee forms, both cross-checked in the test suite
against the general machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .structure import DEFAULT_ATOL, DEFAULT_RTOL, StructureData, canonical_structure
from .tensors import LeeForms, Tensor3, _sym_pair

__all__ = [
    "LieAlgebraSpec",
    "Connection",
    "Dim3Coefficients",
    "lie_family",
    "check_jacobi",
    "koszul_connection",
    "connection_residuals",
    "structure_tensor_from_connection",
    "sphere_structure_tensor",
    "dim3_lee_forms",
    "dim3_coefficients",
    "dim3_component",
]


@dataclass(frozen=True, eq=False)
class LieAlgebraSpec:
    """Structure constants over a structured basis.

    c[i, j, k] is the coefficient of E_k in [E_i, E_j]; c must be
    antisymmetric in (i, j) and satisfy the Jacobi identity.
    """

    structure: StructureData
    c: np.ndarray

    def __post_init__(self):
        d = self.structure.dim
        arr = np.array(self.c, dtype=float)
        if arr.shape != (d, d, d):
            raise ValueError(f"structure constants must have shape {(d, d, d)}")
        arr.flags.writeable = False
        object.__setattr__(self, "c", arr)


@dataclass(frozen=True, eq=False)
class Connection:
    """Christoffel coefficients: gamma[i, j, k] is the E_k part of nabla_{E_i} E_j."""

    gamma: np.ndarray


@dataclass(frozen=True)
class Dim3Coefficients:
    """The scalar data of an admissible tensor in dimension 3.

    Each coefficient is the component combination that isolates one
    basic class: theta0 and lam split the symmetric xi-bracket data,
    theta_star0 and mu the skew part, nu is the W3 coefficient and
    omega1, omega2 the W4 pair.
    """

    theta0: float
    theta_star0: float
    lam: float
    mu: float
    nu: float
    omega1: float
    omega2: float


def lie_family(n: int, a) -> LieAlgebraSpec:
    """The 2n-parameter solvable family on the canonical structure.

    Brackets, for i in 1..n and parameters a_1..a_2n:

        [E_0, E_i]     = -a_i E_i - a_(n+i) E_(n+i)
        [E_0, E_(n+i)] = -a_(n+i) E_i + a_i E_(n+i)

    and zero otherwise. In dimension 3 the resulting structure tensor
    lies in the class F9 + F10, with the F9 coefficient a_1 and the
    F10 coefficient -2 a_2.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (2 * n,):
        raise ValueError(f"parameter vector must have length {2 * n}, got {a.shape}")
    s = canonical_structure(n)
    d = s.dim
    c = np.zeros((d, d, d))
    for i in range(1, n + 1):
        c[0, i, i] = -a[i - 1]
        c[0, i, n + i] = -a[n + i - 1]
        c[0, n + i, i] = -a[n + i - 1]
        c[0, n + i, n + i] = a[i - 1]
    c[1:, 0, :] = -c[0, 1:, :]
    return LieAlgebraSpec(structure=s, c=c)


def check_jacobi(spec: LieAlgebraSpec, tol: float = DEFAULT_ATOL) -> bool:
    """True iff the Jacobi cyclic sum vanishes on all basis triples.

    Rejects non-antisymmetric bracket tables outright: antisymmetry is
    a precondition, not a test result.
    """
    c = spec.c
    antisym = float(np.max(np.abs(c + c.transpose(1, 0, 2))))
    if antisym > tol:
        raise PreconditionError(
            f"bracket table is not antisymmetric (residual {antisym:.3e})"
        )
    jac = (
        np.einsum("jkm,iml->ijkl", c, c)
        + np.einsum("kim,jml->ijkl", c, c)
        + np.einsum("ijm,kml->ijkl", c, c)
    )
    return float(np.max(np.abs(jac))) <= tol


def koszul_connection(spec: LieAlgebraSpec) -> Connection:
    """Levi-Civita connection of the left-invariant metric.

    Solves, for every pair (i, j),

        2 g(nabla_{E_i} E_j, E_k) = g([E_i, E_j], E_k)
                                    + g([E_k, E_i], E_j)
                                    + g([E_k, E_j], E_i)

    by a dense linear solve against g per pair. The result is
    torsion-free and metric-compatible on all basis triples.
    """
    g = spec.structure.g
    c = spec.c
    d = spec.structure.dim
    rhs = (
        np.einsum("ijm,mk->ijk", c, g)
        + np.einsum("kim,mj->ijk", c, g)
        + np.einsum("kjm,mi->ijk", c, g)
    )
    gamma = np.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            gamma[i, j] = np.linalg.solve(g, 0.5 * rhs[i, j])
    return Connection(gamma=gamma)


def connection_residuals(spec: LieAlgebraSpec, conn: Connection) -> tuple:
    """(torsion, metric-compatibility) worst-case residuals of a connection."""
    g = spec.structure.g
    gamma = conn.gamma
    torsion = gamma - gamma.transpose(1, 0, 2) - spec.c
    compat = np.einsum("ijm,mk->ijk", gamma, g) + np.einsum("ikm,mj->ijk", gamma, g)
    return float(np.max(np.abs(torsion))), float(np.max(np.abs(compat)))


def structure_tensor_from_connection(spec: LieAlgebraSpec, conn: Connection) -> Tensor3:
    """F(x, y, z) = g((nabla_x phi) y, z) in the left-invariant frame.

    phi has constant components there, so (nabla_{E_i} phi) E_j =
    nabla_{E_i}(phi E_j) - phi(nabla_{E_i} E_j). The result always
    satisfies the two defining identities of the admissible space.
    """
    s = spec.structure
    gamma = conn.gamma
    nabla_phi = np.einsum("mj,iml->ijl", s.phi, gamma) - np.einsum(
        "ijm,lm->ijl", gamma, s.phi
    )
    return Tensor3(np.einsum("ijl,lk->ijk", nabla_phi, s.g))


def sphere_structure_tensor(n: int, t: float) -> tuple:
    """Structure data and tensor of the unit time-like sphere at a point.

    The tensor has the closed form

        F(x,y,z) = -cos t { g(phi x, phi y) eta(z) + g(phi x, phi z) eta(y) }
                   -sin t { g(x, phi y) eta(z) + g(x, phi z) eta(y) }

    so the Lee values satisfy theta(xi) = 2n cos t and theta*(xi) =
    2n sin t, and classification always lands in a subset of {F4, F5}.
    Any real t is accepted; the formula is periodic.
    """
    s = canonical_structure(n)
    gp = s.g @ s.phi
    gpp = s.phi.T @ s.g @ s.phi
    comps = -math.cos(t) * _sym_pair(gpp, s.eta) - math.sin(t) * _sym_pair(gp, s.eta)
    return s, Tensor3(comps)


def _require_dim3(f: Tensor3) -> None:
    if f.dim != 3:
        raise ValueError(f"expected a dimension-3 tensor, got dim {f.dim}")


def dim3_lee_forms(f: Tensor3) -> LeeForms:
    """Lee forms in dimension 3 by the explicit index formulas.

    Assumes the canonical structure. Agrees entrywise with the general
    contractions for any admissible tensor:

        theta  = (F110 - F220, F111 - F221, F112 - F211)
        theta* = (F120 + F210, F112 + F211, F111 + F221)
        omega  = (0, F001, F002)
    """
    _require_dim3(f)
    c = f.comps
    theta = np.array([c[1, 1, 0] - c[2, 2, 0], c[1, 1, 1] - c[2, 2, 1], c[1, 1, 2] - c[2, 1, 1]])
    theta_star = np.array(
        [c[1, 2, 0] + c[2, 1, 0], c[1, 1, 2] + c[2, 1, 1], c[1, 1, 1] + c[2, 2, 1]]
    )
    omega = np.array([0.0, c[0, 0, 1], c[0, 0, 2]])
    return LeeForms(theta=theta, theta_star=theta_star, omega=omega)


# Pairs of index triples that must agree entrywise for any admissible
# tensor in dimension 3 (slot symmetry plus the phi relation); the
# coefficient extraction below relies on them, so they are asserted
# rather than assumed.
_DIM3_EQUAL_PAIRS = (
    ((1, 0, 1), (1, 1, 0)),
    ((2, 0, 2), (2, 2, 0)),
    ((1, 0, 2), (1, 2, 0)),
    ((2, 0, 1), (2, 1, 0)),
    ((0, 1, 1), (0, 2, 2)),
    ((0, 0, 1), (0, 1, 0)),
    ((0, 0, 2), (0, 2, 0)),
    ((1, 1, 1), (1, 2, 2)),
    ((2, 1, 1), (2, 2, 2)),
)
_DIM3_ZERO_TRIPLES = (
    (0, 0, 0),
    (1, 0, 0),
    (2, 0, 0),
    (0, 1, 2),
    (0, 2, 1),
    (1, 1, 2),
    (1, 2, 1),
    (2, 2, 1),
    (2, 1, 2),
)


def dim3_coefficients(f: Tensor3, tol: float = DEFAULT_RTOL) -> Dim3Coefficients:
    """Extract the seven class coefficients of a dimension-3 tensor.

    Reads the representative components, after separating the
    symmetric and skew parts shared between classes:

        theta0 = F110 - F220        lam = (F110 + F220) / 2
        theta*0 = F120 + F210       mu  = (F120 - F210) / 2
        nu = F011                   omega1 = F001,  omega2 = F002

    The consistency equalities between equivalent components (for
    example F101 = F110) are verified first; a violation means the
    tensor is not admissible for the canonical structure.
    """
    _require_dim3(f)
    c = f.comps
    scale = max(1.0, f.max_abs())
    for left, right in _DIM3_EQUAL_PAIRS:
        if abs(c[left] - c[right]) > tol * scale:
            raise PreconditionError(
                f"components {left} and {right} differ by {abs(c[left] - c[right]):.3e};"
                " tensor is not admissible in dimension 3"
            )
    for triple in _DIM3_ZERO_TRIPLES:
        if abs(c[triple]) > tol * scale:
            raise PreconditionError(
                f"component {triple} = {c[triple]:.3e} must vanish for admissible"
                " dimension-3 tensors"
            )
    return Dim3Coefficients(
        theta0=float(c[1, 1, 0] - c[2, 2, 0]),
        theta_star0=float(c[1, 2, 0] + c[2, 1, 0]),
        lam=float(0.5 * (c[1, 1, 0] + c[2, 2, 0])),
        mu=float(0.5 * (c[1, 2, 0] - c[2, 1, 0])),
        nu=float(c[0, 1, 1]),
        omega1=float(c[0, 0, 1]),
        omega2=float(c[0, 0, 2]),
    )


def dim3_component(f: Tensor3, i: int, tol: float = DEFAULT_RTOL) -> Tensor3:
    """Component of a dimension-3 tensor in class F_i by the closed forms.

    Classes F2, F3, F6 and F7 are identically zero in dimension 3.
    Matches the general component formulas entrywise on admissible
    tensors over the canonical structure.
    """
    _require_dim3(f)
    if i not in range(1, 12):
        raise ValueError(f"class index must be 1..11, got {i}")
    out = np.zeros((3, 3, 3))
    if i in (2, 3, 6, 7):
        return Tensor3(out)
    q = dim3_coefficients(f, tol=tol)
    if i == 1:
        lf = dim3_lee_forms(f)
        th1, th2 = lf.theta[1], lf.theta[2]
        out[1, 1, 1] = out[1, 2, 2] = th1
        out[2, 1, 1] = out[2, 2, 2] = -th2
    elif i == 4:
        half = 0.5 * q.theta0
        out[1, 0, 1] = out[1, 1, 0] = half
        out[2, 0, 2] = out[2, 2, 0] = -half
    elif i == 5:
        half = 0.5 * q.theta_star0
        out[1, 0, 2] = out[1, 2, 0] = half
        out[2, 0, 1] = out[2, 1, 0] = half
    elif i == 8:
        out[1, 0, 1] = out[1, 1, 0] = q.lam
        out[2, 0, 2] = out[2, 2, 0] = q.lam
    elif i == 9:
        out[1, 0, 2] = out[1, 2, 0] = q.mu
        out[2, 0, 1] = out[2, 1, 0] = -q.mu
    elif i == 10:
        out[0, 1, 1] = out[0, 2, 2] = q.nu
    else:
        out[0, 1, 0] = out[0, 0, 1] = q.omega1
        out[0, 2, 0] = out[0, 0, 2] = q.omega2
    return Tensor3(out)
