import numpy as np
import pytest

from sphertrans.tuples import OperatorTuple


def cmat(rows) -> np.ndarray:
    return np.array(rows, dtype=np.complex128)


def random_matrix(rng, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def random_psd_matrix(rng, n: int) -> np.ndarray:
    g = random_matrix(rng, n)
    s = g @ np.conj(g.T) / n
    return (s + np.conj(s.T)) / 2


@pytest.fixture
def sharp_column():
    """d = 2 pair ([[1,0],[0,0]], [[0,0],[1,0]]) with defect diag(sqrt(2), 0)."""
    return OperatorTuple(matrices=(
        cmat([[1, 0], [0, 0]]),
        cmat([[0, 0], [1, 0]]),
    ))


@pytest.fixture
def diag_pair():
    """d = 2 pair (diag(1,0), diag(0,1)) with identity defect."""
    return OperatorTuple(matrices=(
        cmat([[1, 0], [0, 0]]),
        cmat([[0, 0], [0, 1]]),
    ))
