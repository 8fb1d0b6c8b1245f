"""Structural classification of tuples and single operators.

Each predicate returns its residual (an operator-norm or eigenvalue
magnitude that vanishes exactly when the property holds) together with
the thresholded flag.  The default tolerance scales with 1 + ||T||^2
since the residuals are quadratic in the entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NotCommutingError
from .norms import spherical_norm
from .tuples import (
    OperatorTuple,
    block_embedding,
    gram_sum,
    spherical_polar,
    tuple_power,
)

PREDICATE_RTOL = 1e-9


@dataclass(frozen=True)
class PredicateResult:
    flag: bool
    residual: float
    tol: float

    def __bool__(self) -> bool:
        return self.flag


def _default_tol(t: OperatorTuple, tol: float | None) -> float:
    if tol is not None:
        return tol
    return PREDICATE_RTOL * (1.0 + spherical_norm(t) ** 2)


def _result(residual: float, tol: float) -> PredicateResult:
    return PredicateResult(flag=residual <= tol, residual=float(residual), tol=tol)


def _single(a) -> OperatorTuple:
    return OperatorTuple(matrices=(a,))


def is_commuting(t: OperatorTuple, tol: float | None = None) -> PredicateResult:
    """max_{i<j} ||T_i T_j - T_j T_i||_op against the tolerance."""
    tol = _default_tol(t, tol)
    residual = 0.0
    for i in range(t.d):
        for j in range(i + 1, t.d):
            residual = max(
                residual, linalg.operator_norm(t[i] @ t[j] - t[j] @ t[i])
            )
    return _result(residual, tol)


def is_normal_single(a, tol: float | None = None) -> PredicateResult:
    a = linalg.as_matrix(a)
    tol = _default_tol(_single(a), tol)
    return _result(
        linalg.operator_norm(linalg.adjoint(a) @ a - a @ linalg.adjoint(a)), tol
    )


def is_normal_tuple(t: OperatorTuple, tol: float | None = None) -> PredicateResult:
    """Commuting and each coordinate normal."""
    tol = _default_tol(t, tol)
    residual = is_commuting(t, tol).residual
    for m in t:
        residual = max(residual, is_normal_single(m, tol).residual)
    return _result(residual, tol)


def is_quasinormal_single(a, tol: float | None = None) -> PredicateResult:
    """||A (A*A) - (A*A) A||_op, i.e. A commutes with A*A."""
    a = linalg.as_matrix(a)
    tol = _default_tol(_single(a), tol)
    s = linalg.adjoint(a) @ a
    return _result(linalg.operator_norm(a @ s - s @ a), tol)


def is_hyponormal_single(a, tol: float | None = None) -> PredicateResult:
    """Residual = most negative eigenvalue of A*A - AA*, clipped at 0."""
    a = linalg.as_matrix(a)
    tol = _default_tol(_single(a), tol)
    gap = linalg.adjoint(a) @ a - a @ linalg.adjoint(a)
    low = float(np.linalg.eigvalsh((gap + linalg.adjoint(gap)) / 2.0)[0])
    return _result(max(0.0, -low), tol)


def commutator_block_matrix(t: OperatorTuple) -> np.ndarray:
    """The d x d block matrix with block (i, j) = [T_j*, T_i]."""
    n, d = t.n, t.d
    out = np.zeros((d * n, d * n), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            tj = linalg.adjoint(t[j])
            out[i * n:(i + 1) * n, j * n:(j + 1) * n] = tj @ t[i] - t[i] @ tj
    return (out + linalg.adjoint(out)) / 2.0


def is_jointly_hyponormal(t: OperatorTuple, tol: float | None = None) -> PredicateResult:
    """The block commutator matrix must be PSD on the d-fold direct sum."""
    tol = _default_tol(t, tol)
    low = float(np.linalg.eigvalsh(commutator_block_matrix(t))[0])
    return _result(max(0.0, -low), tol)


def is_spherically_quasinormal(
    t: OperatorTuple, route: str = "A", tol: float | None = None
) -> PredicateResult:
    """Route A: each T_i commutes with sum_j T_j* T_j (used directly, no
    square root).  Route B: the block matrices satisfy PV = VP; it is only
    defined for commuting tuples and raises NotCommutingError otherwise.
    """
    tol = _default_tol(t, tol)
    if route == "A":
        s = gram_sum(t)
        residual = max(linalg.operator_norm(m @ s - s @ m) for m in t)
        return _result(residual, tol)
    if route == "B":
        if not is_commuting(t, tol):
            raise NotCommutingError(
                "route B of spherical quasinormality needs a commuting tuple"
            )
        blocks = block_embedding(t)
        residual = linalg.operator_norm(
            blocks.p_block @ blocks.v_block - blocks.v_block @ blocks.p_block
        )
        return _result(residual, tol)
    raise ValueError(f"unknown route {route!r}")


def is_square_zero(t: OperatorTuple, tol: float | None = None) -> PredicateResult:
    """All d^2 coordinates of T o T vanish."""
    tol = _default_tol(t, tol)
    residual = max(linalg.operator_norm(m) for m in tuple_power(t, 2))
    return _result(residual, tol)


@dataclass(frozen=True)
class InvertibilityProxy:
    """Necessary-condition proxy for Taylor invertibility: P invertible.

    flag = (smallest eigenvalue of the defect operator exceeds the rank
    tolerance).  This is NOT claimed to be sufficient.
    """

    flag: bool
    min_defect_eigenvalue: float
    rank_tol: float
    note: str = "necessary condition only"

    def __bool__(self) -> bool:
        return self.flag


def taylor_invertibility_proxy(t: OperatorTuple) -> InvertibilityProxy:
    polar = spherical_polar(t)
    low = float(polar.eigvals[0])
    return InvertibilityProxy(
        flag=low > polar.rank_tol,
        min_defect_eigenvalue=low,
        rank_tol=polar.rank_tol,
    )


@dataclass(frozen=True)
class Classification:
    """All predicate outcomes for one tuple at a shared tolerance."""

    tol: float
    commuting: PredicateResult
    normal: PredicateResult
    jointly_hyponormal: PredicateResult
    spherically_quasinormal: PredicateResult          # route A
    spherically_quasinormal_block: PredicateResult | None  # route B, commuting only
    square_zero: PredicateResult
    taylor_proxy: InvertibilityProxy
    coordinate_normal: tuple
    coordinate_quasinormal: tuple
    coordinate_hyponormal: tuple


def classify(t: OperatorTuple, tol: float | None = None) -> Classification:
    tol = _default_tol(t, tol)
    commuting = is_commuting(t, tol)
    route_b = is_spherically_quasinormal(t, "B", tol) if commuting else None
    return Classification(
        tol=tol,
        commuting=commuting,
        normal=is_normal_tuple(t, tol),
        jointly_hyponormal=is_jointly_hyponormal(t, tol),
        spherically_quasinormal=is_spherically_quasinormal(t, "A", tol),
        spherically_quasinormal_block=route_b,
        square_zero=is_square_zero(t, tol),
        taylor_proxy=taylor_invertibility_proxy(t),
        coordinate_normal=tuple(is_normal_single(m, tol) for m in t),
        coordinate_quasinormal=tuple(is_quasinormal_single(m, tol) for m in t),
        coordinate_hyponormal=tuple(is_hyponormal_single(m, tol) for m in t),
    )
