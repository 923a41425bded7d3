"""Rank-3 covariant tensors and the admissible structure-tensor space.

The structure tensor of an almost contact B-metric structure is the
(0,3)-tensor F(x, y, z) = g((nabla_x phi) y, z). Whatever connection it
came from, such a tensor always satisfies two pointwise identities:

    F(x, y, z) = F(x, z, y)
    F(x, y, z) = F(x, phi y, phi z) + eta(y) F(x, xi, z)
                                    + eta(z) F(x, y, xi)

The set of all rank-3 tensors with these properties is the admissible
space decomposed elsewhere into eleven classes. This module provides
membership testing, a canonical surjection onto the space (used to
manufacture admissible test data), seeded random elements, the induced
inner product, and the three Lee forms.

All identity checks quantify over basis vectors only; the identities
are multilinear, so basis verification is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .structure import DEFAULT_RTOL, StructureData

__all__ = [
    "Tensor3",
    "LeeForms",
    "membership_residuals",
    "is_structure_tensor",
    "embed_structure_tensor",
    "random_structure_tensor",
    "inner_product",
    "lee_forms",
]


@dataclass(frozen=True, eq=False)
class Tensor3:
    """A rank-3 covariant tensor by components over a fixed basis.

    comps[i, j, k] is the value on the basis triple (e_i, e_j, e_k),
    first slot outermost. Instances are immutable; the small algebra
    below (addition, scalar multiples) is what the decomposition needs.
    """

    comps: np.ndarray

    def __post_init__(self):
        arr = np.array(self.comps, dtype=float)
        if arr.ndim != 3 or len(set(arr.shape)) != 1:
            raise ValueError(f"comps must be a cube, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("comps contains non-finite entries")
        arr.flags.writeable = False
        object.__setattr__(self, "comps", arr)

    @property
    def dim(self) -> int:
        return self.comps.shape[0]

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.comps)))

    @classmethod
    def zeros(cls, dim: int) -> "Tensor3":
        return cls(np.zeros((dim, dim, dim)))

    def __add__(self, other: "Tensor3") -> "Tensor3":
        return Tensor3(self.comps + other.comps)

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        return Tensor3(self.comps - other.comps)

    def __neg__(self) -> "Tensor3":
        return Tensor3(-self.comps)

    def __mul__(self, scalar) -> "Tensor3":
        return Tensor3(self.comps * float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True)
class LeeForms:
    """The three 1-forms theta, theta*, omega associated with a tensor."""

    theta: np.ndarray
    theta_star: np.ndarray
    omega: np.ndarray


def _check_dims(s: StructureData, *tensors: Tensor3) -> None:
    for t in tensors:
        if t.dim != s.dim:
            raise ValueError(
                f"tensor dimension {t.dim} does not match structure dimension {s.dim}"
            )


def _sym_pair(q: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """Assemble T[i,j,k] = q[i,j] eta[k] + q[i,k] eta[j]."""
    return np.einsum("ij,k->ijk", q, eta) + np.einsum("ik,j->ijk", q, eta)


def membership_residuals(s: StructureData, t: Tensor3) -> dict:
    """Worst-case residuals of the two defining identities, by name."""
    _check_dims(s, t)
    c = t.comps
    sym = float(np.max(np.abs(c - c.transpose(0, 2, 1))))
    phi, xi, eta = s.phi, s.xi, s.eta
    phiphi = np.einsum("iab,aj,bk->ijk", c, phi, phi)
    f_xi_z = np.einsum("iak,a->ik", c, xi)
    f_y_xi = np.einsum("ija,a->ij", c, xi)
    rhs = phiphi + np.einsum("j,ik->ijk", eta, f_xi_z) + np.einsum("k,ij->ijk", eta, f_y_xi)
    rel = float(np.max(np.abs(c - rhs)))
    return {"slot_symmetry": sym, "phi_relation": rel}


def is_structure_tensor(s: StructureData, t: Tensor3, tol: float = DEFAULT_RTOL) -> bool:
    """True iff t satisfies both defining identities of the admissible space.

    tol is relative to the tensor magnitude, with floor 1.
    """
    scale = max(1.0, t.max_abs())
    res = membership_residuals(s, t)
    return max(res.values()) <= tol * scale


def embed_structure_tensor(s: StructureData, t: Tensor3) -> Tensor3:
    """Canonical surjection of an arbitrary rank-3 tensor onto the admissible space.

    With S the symmetrization of t in its last two slots and h = -phi^2,

        G(x,y,z) = (1/2) [S(x, h y, h z) + S(x, phi y, phi z)]
                   + eta(y) S(x, h z, xi) + eta(z) S(x, h y, xi).

    G always satisfies both identities, and G = t whenever t already
    does (the map is idempotent; this follows from phi^2 = -Id +
    eta (x) xi and the forced vanishing of F(x, xi, xi)).
    """
    _check_dims(s, t)
    S = 0.5 * (t.comps + t.comps.transpose(0, 2, 1))
    phi, xi, eta = s.phi, s.xi, s.eta
    h = -(phi @ phi)
    hh = np.einsum("iab,aj,bk->ijk", S, h, h)
    pp = np.einsum("iab,aj,bk->ijk", S, phi, phi)
    s_h_xi = np.einsum("iab,aj,b->ij", S, h, xi)
    out = 0.5 * (hh + pp)
    out += np.einsum("j,ik->ijk", eta, s_h_xi)
    out += np.einsum("k,ij->ijk", eta, s_h_xi)
    return Tensor3(out)


def random_structure_tensor(s: StructureData, seed: int) -> Tensor3:
    """Seeded random element of the admissible space.

    Deterministic in (s, seed): entries drawn uniformly from [-1, 1]
    and pushed through embed_structure_tensor.
    """
    rng = np.random.default_rng(seed)
    d = s.dim
    raw = Tensor3(rng.uniform(-1.0, 1.0, size=(d, d, d)))
    return embed_structure_tensor(s, raw)


def inner_product(s: StructureData, f1: Tensor3, f2: Tensor3) -> float:
    """Full triple contraction <f1, f2> with the inverse metric on all slots.

    Symmetric and bilinear. The metric is indefinite, so <f, f> can be
    negative or zero for nonzero f; magnitudes elsewhere use max-abs of
    components instead.
    """
    _check_dims(s, f1, f2)
    gi = s.g_inv
    return float(
        np.einsum("iq,jr,ks,ijk,qrs->", gi, gi, gi, f1.comps, f2.comps, optimize=True)
    )


def lee_forms(s: StructureData, f: Tensor3) -> LeeForms:
    """The Lee forms of f.

    theta and theta* are metric traces of f over the contact
    distribution: the contraction uses g_inv minus the Reeb-Reeb part
    xi (x) xi, which in a phi-basis is the sum over the 2n non-Reeb
    basis directions. omega(z) = F(xi, xi, z). Restricting the trace to
    the contact distribution is what makes theta and theta* vanish on
    the purely vertical classes, as the decomposition requires; theta*
    is unaffected by the restriction since phi xi = 0.
    """
    _check_dims(s, f)
    c = f.comps
    gi_h = s.g_inv - np.outer(s.xi, s.xi)
    theta = np.einsum("ij,ijk->k", gi_h, c)
    theta_star = np.einsum("ij,aj,iak->k", gi_h, s.phi, c)
    omega = np.einsum("a,b,abk->k", s.xi, s.xi, c)
    return LeeForms(theta=theta, theta_star=theta_star, omega=omega)
