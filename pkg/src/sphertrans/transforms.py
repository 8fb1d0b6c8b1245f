"""Spherical transforms of an operator tuple.

All transforms are built from the canonical decomposition T_i = V_i P:

    duggal:              P V_i
    generalized aluthge: P^t V_i P^(1-t)        (t in [0, 1], P^0 = I)
    aluthge:             the t = 1/2 case
    heinz:               ((gen. aluthge at t) + (gen. aluthge at 1-t)) / 2
    mean:                (T + duggal(T)) / 2
    lambda mean:         lam * T + (1 - lam) * duggal(T)

The public functions recompute the polar decomposition internally; the
*_from_polar variants reuse a precomputed SphericalPolar for hot loops.
"""

from __future__ import annotations

from .errors import InvalidParameterError
from .tuples import (
    OperatorTuple,
    SphericalPolar,
    spherical_polar,
    tuple_add,
    tuple_scale,
)


def _check_unit_interval(name: str, x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise InvalidParameterError(f"{name}={x} outside [0, 1]")


def duggal_from_polar(polar: SphericalPolar) -> OperatorTuple:
    return OperatorTuple(matrices=tuple(polar.p @ v for v in polar.v))


def generalized_aluthge_from_polar(polar: SphericalPolar, t: float) -> OperatorTuple:
    _check_unit_interval("t", t)
    left = polar.p_power(t)
    right = polar.p_power(1.0 - t)
    return OperatorTuple(matrices=tuple(left @ v @ right for v in polar.v))


def heinz_from_polar(polar: SphericalPolar, t: float) -> OperatorTuple:
    _check_unit_interval("t", t)
    a = generalized_aluthge_from_polar(polar, t)
    b = generalized_aluthge_from_polar(polar, 1.0 - t)
    return tuple_scale(0.5, tuple_add(a, b))


def duggal(t: OperatorTuple) -> OperatorTuple:
    """Spherical Duggal transform (P V_1, ..., P V_d)."""
    return duggal_from_polar(spherical_polar(t))


def generalized_aluthge(t: OperatorTuple, s: float) -> OperatorTuple:
    """Coordinates P^s V_i P^(1-s); s = 0 gives T, s = 1 gives duggal(T)."""
    return generalized_aluthge_from_polar(spherical_polar(t), s)


def aluthge(t: OperatorTuple) -> OperatorTuple:
    """Spherical Aluthge transform, the s = 1/2 interpolant."""
    return generalized_aluthge(t, 0.5)


def heinz(t: OperatorTuple, s: float) -> OperatorTuple:
    """Symmetric average of the generalized Aluthge transforms at s and 1-s."""
    return heinz_from_polar(spherical_polar(t), s)


def mean_transform(t: OperatorTuple) -> OperatorTuple:
    """(T + duggal(T)) / 2."""
    return tuple_scale(0.5, tuple_add(t, duggal(t)))


def lambda_mean(t: OperatorTuple, lam: float) -> OperatorTuple:
    """Convex combination lam * T + (1 - lam) * duggal(T)."""
    _check_unit_interval("lambda", lam)
    return tuple_add(tuple_scale(lam, t), tuple_scale(1.0 - lam, duggal(t)))


def mean_from_polar(t: OperatorTuple, polar: SphericalPolar) -> OperatorTuple:
    return tuple_scale(0.5, tuple_add(t, duggal_from_polar(polar)))


def lambda_mean_from_polar(
    t: OperatorTuple, polar: SphericalPolar, lam: float
) -> OperatorTuple:
    _check_unit_interval("lambda", lam)
    return tuple_add(
        tuple_scale(lam, t), tuple_scale(1.0 - lam, duggal_from_polar(polar))
    )
