import numpy as np
import pytest

from acbm.structure import StructureData, canonical_structure


def random_structure(n: int, seed: int) -> StructureData:
    """A valid non-canonical structure: the canonical one pushed forward
    through a random well-conditioned change of basis."""
    rng = np.random.default_rng(seed)
    d = 2 * n + 1
    t = np.eye(d) + 0.3 * rng.uniform(-1.0, 1.0, size=(d, d))
    if abs(np.linalg.det(t)) < 1e-3:  # pragma: no cover - essentially never
        t = np.eye(d) + 0.1 * rng.uniform(-1.0, 1.0, size=(d, d))
    t_inv = np.linalg.inv(t)
    base = canonical_structure(n)
    return StructureData(
        n=n,
        g=t_inv.T @ base.g @ t_inv,
        phi=t @ base.phi @ t_inv,
        xi=t @ base.xi,
        eta=base.eta @ t_inv,
    )


@pytest.fixture
def s1():
    return canonical_structure(1)


@pytest.fixture
def s2():
    return canonical_structure(2)
