"""Pointwise structure-tensor machinery for almost contact B-metric geometry.

The library validates point structures (phi, xi, eta, g), works with
the space of admissible rank-3 structure tensors, decomposes its
elements into the eleven basic classes, checks structure-group
equivariance, and reproduces two classical example models: the unit
time-like sphere and a solvable Lie-group family whose tensor comes
out of the Koszul formula.
"""

from .decomposition import (
    CLASS_NAMES,
    NUM_CLASSES,
    ClassReport,
    Decomposition,
    classify,
    component,
    decompose,
    in_w_subspace,
    project_w,
    satisfies_class,
    w2_involution,
)
from .errors import PreconditionError
from .group import (
    GroupElement,
    act,
    group_element_from_blocks,
    random_group_element,
    validate_group_element,
)
from .models import (
    Connection,
    Dim3Coefficients,
    LieAlgebraSpec,
    check_jacobi,
    connection_residuals,
    dim3_coefficients,
    dim3_component,
    dim3_lee_forms,
    koszul_connection,
    lie_family,
    sphere_structure_tensor,
    structure_tensor_from_connection,
)
from .structure import (
    StructureData,
    ValidationReport,
    associated_metric,
    canonical_structure,
    h_project,
    is_canonical_basis,
    v_project,
    validate_structure,
)
from .tensors import (
    LeeForms,
    Tensor3,
    embed_structure_tensor,
    inner_product,
    is_structure_tensor,
    lee_forms,
    membership_residuals,
    random_structure_tensor,
)

__version__ = "0.1.0"

__all__ = [
    "CLASS_NAMES",
    "NUM_CLASSES",
    "ClassReport",
    "Connection",
    "Decomposition",
    "Dim3Coefficients",
    "GroupElement",
    "LeeForms",
    "LieAlgebraSpec",
    "PreconditionError",
    "StructureData",
    "Tensor3",
    "ValidationReport",
    "act",
    "associated_metric",
    "canonical_structure",
    "check_jacobi",
    "classify",
    "component",
    "connection_residuals",
    "decompose",
    "dim3_coefficients",
    "dim3_component",
    "dim3_lee_forms",
    "embed_structure_tensor",
    "group_element_from_blocks",
    "h_project",
    "in_w_subspace",
    "inner_product",
    "is_canonical_basis",
    "is_structure_tensor",
    "koszul_connection",
    "lee_forms",
    "lie_family",
    "membership_residuals",
    "project_w",
    "random_group_element",
    "random_structure_tensor",
    "satisfies_class",
    "sphere_structure_tensor",
    "structure_tensor_from_connection",
    "v_project",
    "validate_group_element",
    "validate_structure",
    "w2_involution",
]
