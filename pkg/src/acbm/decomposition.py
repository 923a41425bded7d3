"""The eleven-class orthogonal decomposition of the admissible space.

Four mutually orthogonal blocks W1..W4 are cut out by projectors built
from phi^2 and the Reeb direction:

    p1(F)(x,y,z) = -F(phi^2 x, phi^2 y, phi^2 z)
    p2(F)(x,y,z) = eta(y) F(phi^2 x, xi, phi^2 z)
                   + eta(z) F(phi^2 x, phi^2 y, xi)
    p3(F)(x,y,z) = eta(x) F(xi, phi^2 y, phi^2 z)
    p4(F)(x,y,z) = -eta(x) { eta(y) F(xi, xi, phi^2 z)
                             + eta(z) F(xi, phi^2 y, xi) }

and p1 + p2 + p3 + p4 is the identity on the admissible space. W1
splits into classes F1, F2, F3 (the traceful part, a cyclic part and
its complement on the contact distribution), W2 splits into F4..F9 via
two commuting involutions, W3 = F10 and W4 = F11. Class F0 is the zero
tensor, contained in every class.

Component magnitudes are reported as max-abs of entries, never as the
induced inner product: the metric is indefinite and nonzero components
can be null.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .structure import DEFAULT_RTOL, StructureData
from .tensors import (
    Tensor3,
    _check_dims,
    _sym_pair,
    lee_forms,
    membership_residuals,
)

__all__ = [
    "CLASS_NAMES",
    "NUM_CLASSES",
    "Decomposition",
    "ClassReport",
    "project_w",
    "w2_involution",
    "component",
    "decompose",
    "satisfies_class",
    "in_w_subspace",
    "classify",
]

NUM_CLASSES = 11
CLASS_NAMES = tuple(f"F{i}" for i in range(1, NUM_CLASSES + 1))

DEFAULT_ABS_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class Decomposition:
    """The eleven components of a tensor with their max-abs magnitudes.

    The components sum back to the input within tolerance (residual
    recorded, relative to the input magnitude) and are pairwise
    orthogonal under the induced inner product.
    """

    components: tuple
    magnitudes: np.ndarray
    reconstruction_residual: float


@dataclass(frozen=True, eq=False)
class ClassReport:
    """Classification outcome: which basic classes are present.

    A class index is present when its component magnitude exceeds
    rel_tol * max(input magnitude, abs_floor). is_F0 holds exactly when
    no class is present. All magnitudes are retained for auditability.
    """

    present: tuple
    is_F0: bool
    magnitudes: np.ndarray
    rel_tol: float
    abs_floor: float
    input_magnitude: float
    reconstruction_residual: float

    def class_names(self) -> tuple:
        return tuple(CLASS_NAMES[i - 1] for i in self.present)


def _phi2(s: StructureData) -> np.ndarray:
    return s.phi @ s.phi


def _require_membership(s: StructureData, f: Tensor3, tol: float) -> None:
    res = membership_residuals(s, f)
    scale = max(1.0, f.max_abs())
    bad = {k: v for k, v in res.items() if v > tol * scale}
    if bad:
        detail = ", ".join(f"{k} residual {v:.3e}" for k, v in bad.items())
        raise PreconditionError(f"tensor is not an admissible structure tensor: {detail}")


def _xi_bracket(c: np.ndarray, m1: np.ndarray, m2: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """Matrix Q[i,j] = F(m1 e_i, m2 e_j, xi)."""
    return np.einsum("abc,ai,bj,c->ij", c, m1, m2, xi)


def project_w(s: StructureData, f: Tensor3, i: int) -> Tensor3:
    """Projection p_i(f) onto the block W_i, i in 1..4.

    p4 is computed from its explicit formula; on admissible tensors it
    agrees with f - p1(f) - p2(f) - p3(f).
    """
    _check_dims(s, f)
    if i not in (1, 2, 3, 4):
        raise ValueError(f"block index must be 1..4, got {i}")
    c = f.comps
    xi, eta = s.xi, s.eta
    P = _phi2(s)
    if i == 1:
        return Tensor3(-np.einsum("abc,ai,bj,ck->ijk", c, P, P, P))
    if i == 2:
        m_x_xi_z = np.einsum("abc,ai,b,ck->ik", c, P, xi, P)
        m_x_y_xi = _xi_bracket(c, P, P, xi)
        return Tensor3(
            np.einsum("j,ik->ijk", eta, m_x_xi_z) + np.einsum("k,ij->ijk", eta, m_x_y_xi)
        )
    if i == 3:
        m_yz = np.einsum("abc,a,bj,ck->jk", c, xi, P, P)
        return Tensor3(np.einsum("i,jk->ijk", eta, m_yz))
    u = np.einsum("abc,a,b,ck->k", c, xi, xi, P)
    w = np.einsum("abc,a,bj,c->j", c, xi, P, xi)
    return Tensor3(
        -(np.einsum("i,j,k->ijk", eta, eta, u) + np.einsum("i,k,j->ijk", eta, eta, w))
    )


def w2_involution(s: StructureData, f: Tensor3, j: int, tol: float = DEFAULT_RTOL) -> Tensor3:
    """The involutive isometries L1, L2 of the block W2.

    L1 transposes the first two slots through phi^2; L2 replaces them
    by their phi images:

        L1(F)(x,y,z) = F(phi^2 y, phi^2 x, xi) eta(z)
                       + F(phi^2 z, phi^2 x, xi) eta(y)
        L2(F)(x,y,z) = F(phi x, phi y, xi) eta(z)
                       + F(phi x, phi z, xi) eta(y)

    Their joint eigenspaces carve W2 into the classes F4..F9: L1 fixes
    F4+F5+F6+F8 and negates F7+F9; L2 fixes F8+F9 and negates
    F4+F5+F6+F7. Requires f in W2 (f = p2(f) within tol); both
    operators are involutions only there.
    """
    _check_dims(s, f)
    if j not in (1, 2):
        raise ValueError(f"involution index must be 1 or 2, got {j}")
    scale = max(1.0, f.max_abs())
    w2_residual = (f - project_w(s, f, 2)).max_abs()
    if w2_residual > tol * scale:
        raise PreconditionError(
            f"operand is not in W2: p2 fixed-point residual {w2_residual:.3e}"
        )
    c = f.comps
    xi, eta = s.xi, s.eta
    if j == 1:
        a = _xi_bracket(c, _phi2(s), _phi2(s), xi)
        return Tensor3(_sym_pair(a.T, eta))
    b = _xi_bracket(c, s.phi, s.phi, xi)
    return Tensor3(_sym_pair(b, eta))


def _metric_pairings(s: StructureData):
    """gp[i,j] = g(e_i, phi e_j) and gpp[i,j] = g(phi e_i, phi e_j)."""
    gp = s.g @ s.phi
    gpp = s.phi.T @ s.g @ s.phi
    return gp, gpp


def _component_f1(s: StructureData, f: Tensor3, theta: np.ndarray) -> np.ndarray:
    gp, gpp = _metric_pairings(s)
    t_phi = s.phi.T @ theta
    t_phi2 = _phi2(s).T @ theta
    out = np.einsum("ij,k->ijk", gpp, t_phi2) + np.einsum("ij,k->ijk", gp, t_phi)
    out += np.einsum("ik,j->ijk", gpp, t_phi2) + np.einsum("ik,j->ijk", gp, t_phi)
    return out / (2.0 * s.n)


def _w1_six_terms(c: np.ndarray, phi: np.ndarray, P: np.ndarray):
    """The six slot-permuted pullbacks entering the F2 and F3 formulas."""
    t_xyz = np.einsum("abc,ai,bj,ck->ijk", c, P, P, P)  # F(p x, p y, p z), p = phi^2
    t_yzx = np.einsum("abc,aj,bk,ci->ijk", c, P, P, P)  # F(p y, p z, p x)
    t_yx = np.einsum("abc,aj,bk,ci->ijk", c, phi, P, phi)  # F(phi y, p z, phi x)
    t_xzy = np.einsum("abc,ai,bk,cj->ijk", c, P, P, P)  # F(p x, p z, p y)
    t_zyx = np.einsum("abc,ak,bj,ci->ijk", c, P, P, P)  # F(p z, p y, p x)
    t_zx = np.einsum("abc,ak,bj,ci->ijk", c, phi, P, phi)  # F(phi z, p y, phi x)
    return t_xyz, t_yzx, t_yx, t_xzy, t_zyx, t_zx


def component(s: StructureData, f: Tensor3, i: int) -> Tensor3:
    """The component of f in the basic class F_i, i in 1..11.

    F1, F4, F5, F6 use Lee-form contractions of f; F2, F3 subtract the
    traceful part from slot-permuted pullbacks on the contact
    distribution; F6..F9 are assembled from the symmetrized brackets
    F(phi^2 ., phi^2 ., xi) and F(phi ., phi ., xi); F10 and F11 are
    the W3 and W4 projections.
    """
    _check_dims(s, f)
    if i not in range(1, NUM_CLASSES + 1):
        raise ValueError(f"class index must be 1..{NUM_CLASSES}, got {i}")
    c = f.comps
    phi, xi, eta = s.phi, s.xi, s.eta
    P = _phi2(s)
    two_n = 2.0 * s.n

    if i in (1, 2, 3):
        lf = lee_forms(s, f)
        f1 = _component_f1(s, f, lf.theta)
        if i == 1:
            return Tensor3(f1)
        t_xyz, t_yzx, t_yx, t_xzy, t_zyx, t_zx = _w1_six_terms(c, phi, P)
        if i == 2:
            return Tensor3(-0.25 * (t_xyz + t_yzx - t_yx + t_xzy + t_zyx - t_zx) - f1)
        return Tensor3(-0.25 * (t_xyz - t_yzx + t_yx + t_xzy - t_zyx + t_zx))

    if i in (4, 5, 6):
        lf = lee_forms(s, f)
        gp, gpp = _metric_pairings(s)
        theta_xi = float(lf.theta @ xi)
        theta_star_xi = float(lf.theta_star @ xi)
        if i == 4:
            return Tensor3(-(theta_xi / two_n) * _sym_pair(gpp, eta))
        if i == 5:
            return Tensor3(-(theta_star_xi / two_n) * _sym_pair(gp, eta))
        a = _xi_bracket(c, P, P, xi)
        b = _xi_bracket(c, phi, phi, xi)
        q21 = 0.25 * (a + a.T - b - b.T)
        out = (theta_xi / two_n) * _sym_pair(gpp, eta)
        out += (theta_star_xi / two_n) * _sym_pair(gp, eta)
        out += _sym_pair(q21, eta)
        return Tensor3(out)

    if i in (7, 8, 9):
        a = _xi_bracket(c, P, P, xi)
        b = _xi_bracket(c, phi, phi, xi)
        if i == 7:
            q = 0.25 * (a - a.T - b + b.T)
        elif i == 8:
            q = 0.25 * (a + a.T + b + b.T)
        else:
            q = 0.25 * (a - a.T + b - b.T)
        return Tensor3(_sym_pair(q, eta))

    if i == 10:
        return project_w(s, f, 3)
    return project_w(s, f, 4)


def decompose(
    s: StructureData, f: Tensor3, tol: float = DEFAULT_RTOL, check: bool = True
) -> Decomposition:
    """All eleven components of f with magnitudes and reconstruction residual.

    Requires f admissible (skippable with check=False for benchmarking;
    the component formulas are only meaningful on the admissible
    space). The recorded residual is max-abs(sum of components - f)
    relative to max-abs(f).
    """
    _check_dims(s, f)
    if check:
        _require_membership(s, f, tol)
    comps = tuple(component(s, f, i) for i in range(1, NUM_CLASSES + 1))
    magnitudes = np.array([t.max_abs() for t in comps])
    total = np.zeros_like(f.comps)
    for t in comps:
        total = total + t.comps
    diff = float(np.max(np.abs(total - f.comps)))
    scale = f.max_abs()
    residual = diff / scale if scale > 0.0 else diff
    return Decomposition(
        components=comps, magnitudes=magnitudes, reconstruction_residual=residual
    )


def _class_residual(s: StructureData, f: Tensor3, i: int) -> float:
    """Worst residual of the defining identities of class F_i."""
    c = f.comps
    phi, xi, eta = s.phi, s.xi, s.eta
    lf = lee_forms(s, f)

    def xi_slot_residuals():
        first = np.einsum("ajk,a->jk", c, xi)
        second = np.einsum("iak,a->ik", c, xi)
        return float(np.max(np.abs(first))), float(np.max(np.abs(second)))

    if i == 1:
        return (f - Tensor3(_component_f1(s, f, lf.theta))).max_abs()
    if i == 2:
        r1, r2 = xi_slot_residuals()
        cyc = (
            np.einsum("ijc,ck->ijk", c, phi)
            + np.einsum("jkc,ci->ijk", c, phi)
            + np.einsum("kic,cj->ijk", c, phi)
        )
        return max(r1, r2, float(np.max(np.abs(cyc))), float(np.max(np.abs(lf.theta))))
    if i == 3:
        r1, r2 = xi_slot_residuals()
        cyc = c + c.transpose(1, 2, 0) + c.transpose(2, 0, 1)
        return max(r1, r2, float(np.max(np.abs(cyc))))
    if i == 4:
        return (f - component(s, f, 4)).max_abs()
    if i == 5:
        return (f - component(s, f, 5)).max_abs()
    if i in (6, 7, 8, 9):
        d_mat = np.einsum("ija,a->ij", c, xi)  # F(e_i, e_j, xi)
        b_mat = _xi_bracket(c, phi, phi, xi)  # F(phi e_i, phi e_j, xi)
        recon = float(np.max(np.abs(c - _sym_pair(d_mat, eta))))
        if i == 6:
            return max(
                recon,
                float(np.max(np.abs(d_mat - d_mat.T))),
                float(np.max(np.abs(d_mat + b_mat))),
                float(np.max(np.abs(lf.theta))),
                float(np.max(np.abs(lf.theta_star))),
            )
        if i == 7:
            sym_r = float(np.max(np.abs(d_mat + d_mat.T)))
            phi_r = float(np.max(np.abs(d_mat + b_mat)))
        elif i == 8:
            sym_r = float(np.max(np.abs(d_mat - d_mat.T)))
            phi_r = float(np.max(np.abs(d_mat - b_mat)))
        else:
            sym_r = float(np.max(np.abs(d_mat + d_mat.T)))
            phi_r = float(np.max(np.abs(d_mat - b_mat)))
        return max(recon, sym_r, phi_r)
    if i == 10:
        e_mat = np.einsum("abc,a,bj,ck->jk", c, xi, phi, phi)  # F(xi, phi y, phi z)
        return float(np.max(np.abs(c - np.einsum("i,jk->ijk", eta, e_mat))))
    recon = np.einsum("i,j,k->ijk", eta, eta, lf.omega)
    recon += np.einsum("i,k,j->ijk", eta, eta, lf.omega)
    return float(np.max(np.abs(c - recon)))


def satisfies_class(s: StructureData, f: Tensor3, i: int, tol: float = DEFAULT_RTOL) -> bool:
    """True iff f satisfies the characteristic conditions of class F_i.

    Evaluates the defining identity of the class over all basis
    triples, including auxiliary conditions (vanishing Lee forms for
    F2 and F6, cyclic sums for F2/F3, the symmetry conditions for
    F6..F9), each within tol relative to the tensor magnitude. The zero
    tensor satisfies every class.
    """
    _check_dims(s, f)
    if i not in range(1, NUM_CLASSES + 1):
        raise ValueError(f"class index must be 1..{NUM_CLASSES}, got {i}")
    scale = max(1.0, f.max_abs())
    return _class_residual(s, f, i) <= tol * scale


def in_w_subspace(s: StructureData, f: Tensor3, i: int, tol: float = DEFAULT_RTOL) -> bool:
    """True iff f lies in the block W_i, by the h/v slot characterization.

    W1 tensors vanish whenever any slot is vertical; W2 whenever the
    first slot is vertical or the last two are both horizontal; W3 and
    W4 are the mirror conditions on the first slot.
    """
    _check_dims(s, f)
    if i not in (1, 2, 3, 4):
        raise ValueError(f"block index must be 1..4, got {i}")
    c = f.comps
    xi = s.xi
    h = -_phi2(s)
    scale = max(1.0, f.max_abs())
    v1 = float(np.max(np.abs(np.einsum("ajk,a->jk", c, xi))))
    v2 = float(np.max(np.abs(np.einsum("iak,a->ik", c, xi))))
    v3 = float(np.max(np.abs(np.einsum("ija,a->ij", c, xi))))
    h1 = float(np.max(np.abs(np.einsum("ajk,ai->ijk", c, h))))
    h23 = float(np.max(np.abs(np.einsum("iab,aj,bk->ijk", c, h, h))))
    if i == 1:
        worst = max(v1, v2, v3)
    elif i == 2:
        worst = max(v1, h23)
    elif i == 3:
        worst = max(h1, v2, v3)
    else:
        worst = max(h1, h23)
    return worst <= tol * scale


def classify(
    s: StructureData,
    f: Tensor3,
    rel_tol: float = DEFAULT_RTOL,
    abs_floor: float = DEFAULT_ABS_FLOOR,
    check: bool = True,
) -> ClassReport:
    """Classify f into a direct sum of basic classes.

    Class i is reported present iff its component magnitude exceeds
    rel_tol * max(max-abs(f), abs_floor); F0 means nothing is present.
    Tolerances are echoed in the report for reproducibility.
    """
    dec = decompose(s, f, tol=rel_tol, check=check)
    input_magnitude = f.max_abs()
    threshold = rel_tol * max(input_magnitude, abs_floor)
    present = tuple(
        i for i in range(1, NUM_CLASSES + 1) if dec.magnitudes[i - 1] > threshold
    )
    return ClassReport(
        present=present,
        is_F0=not present,
        magnitudes=dec.magnitudes,
        rel_tol=rel_tol,
        abs_floor=abs_floor,
        input_magnitude=input_magnitude,
        reconstruction_residual=dec.reconstruction_residual,
    )
