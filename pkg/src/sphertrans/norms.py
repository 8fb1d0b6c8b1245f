"""Scalar functionals of operator tuples.

Closed-form quantities (spherical, Euclidean and Schatten norms) come
straight from explicit SVD/eigendecompositions.  Supremum quantities
(hypo-norms, joint radii) are estimated with sphere_optimize; each gets
a monotone ascent step derived from the dual element of the norm being
maximized, so a single iteration costs one small factorization.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from . import linalg
from .errors import InvalidPError
from .optimize import (
    BallPoint,
    OptimizerConfig,
    SupremumEstimate,
    gauge_fix,
    power_step,
    sphere_optimize,
)
from .tuples import OperatorTuple, gram_sum

_TWO_PI = 2.0 * np.pi
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def spherical_norm(t: OperatorTuple) -> float:
    """||T|| = ||sum T_k* T_k||^(1/2), the norm of the column operator."""
    return float(np.sqrt(linalg.operator_norm(gram_sum(t))))


def euclidean_norm(t: OperatorTuple) -> float:
    """(sum_k ||T_k||^2)^(1/2)."""
    return float(np.sqrt(sum(linalg.operator_norm(m) ** 2 for m in t)))


def schatten_spherical_norm(t: OperatorTuple, p: float) -> float:
    """[tr(P^p)]^(1/p), computed from the SVD of the stacked column."""
    if p < 1.0:
        raise InvalidPError(f"Schatten exponent p={p} must be >= 1")
    return linalg.schatten_from_singulars(
        np.linalg.svd(t.stacked(), compute_uv=False), p
    )


def _stack(t: OperatorTuple) -> np.ndarray:
    return np.stack(t.matrices)


def _combine(mats: np.ndarray, lam_rows: np.ndarray) -> np.ndarray:
    """sum_k lam[s, k] T_k for each row s."""
    return np.einsum("sk,kij->sij", lam_rows, mats)


def combination(t: OperatorTuple, lam: np.ndarray) -> np.ndarray:
    """The single matrix sum_k lam_k T_k."""
    return np.einsum("k,kij->ij", np.asarray(lam, dtype=np.complex128), _stack(t))


# ---------------------------------------------------------------------------
# hypo-norm: sup ||sum lam_k T_k||_op
# ---------------------------------------------------------------------------

def hypo_norm(
    t: OperatorTuple,
    config: OptimizerConfig | None = None,
    warm_starts=(),
) -> SupremumEstimate:
    """sup over the coefficient ball of the operator norm of sum lam_k T_k."""
    mats = _stack(t)

    def objective(lam):
        return float(np.linalg.svd(combination(t, lam), compute_uv=False)[0])

    def batch_objective(rows):
        return np.linalg.svd(_combine(mats, rows), compute_uv=False)[:, 0]

    def ascend(rows):
        u, s, vh = np.linalg.svd(_combine(mats, rows))
        u1 = np.conj(u[:, :, 0])
        v1 = np.conj(vh[:, 0, :])
        a = np.einsum("si,kij,sj->sk", u1, mats, v1)
        return s[:, 0], power_step(rows, a)

    return sphere_optimize(
        objective,
        t.d,
        config,
        ascend=ascend,
        batch_objective=batch_objective,
        warm_starts=warm_starts,
    )


# ---------------------------------------------------------------------------
# Schatten hypo-p-norm: sup ||sum lam_k T_k||_p
# ---------------------------------------------------------------------------

def _batch_schatten(s: np.ndarray, p: float) -> np.ndarray:
    top = s[:, 0]
    safe = np.where(top > 0.0, top, 1.0)
    vals = safe * np.sum((s / safe[:, None]) ** p, axis=1) ** (1.0 / p)
    return np.where(top > 0.0, vals, 0.0)


def schatten_hypo_norm(
    t: OperatorTuple,
    p: float,
    config: OptimizerConfig | None = None,
    warm_starts=(),
) -> SupremumEstimate:
    """sup over the coefficient ball of the Schatten p-norm of sum lam_k T_k."""
    if p < 1.0:
        raise InvalidPError(f"Schatten exponent p={p} must be >= 1")
    mats = _stack(t)

    def objective(lam):
        return linalg.schatten_norm(combination(t, lam), p)

    def batch_objective(rows):
        return _batch_schatten(
            np.linalg.svd(_combine(mats, rows), compute_uv=False), p
        )

    def ascend(rows):
        u, s, vh = np.linalg.svd(_combine(mats, rows))
        vals = _batch_schatten(s, p)
        top = np.where(s[:, 0] > 0.0, s[:, 0], 1.0)
        vsafe = np.where(vals > 0.0, vals, 1.0)
        # dual-element weights (s_i / ||M||_p)^(p-1), scaled for stability
        w = (s / top[:, None]) ** (p - 1.0) * (top / vsafe)[:, None] ** (p - 1.0)
        w[vals <= 0.0] = 0.0
        b = np.einsum("sli,klm,sim->ski", np.conj(u), mats, np.conj(vh))
        a = np.einsum("si,ski->sk", w, b)
        return vals, power_step(rows, a)

    return sphere_optimize(
        objective,
        t.d,
        config,
        ascend=ascend,
        batch_objective=batch_objective,
        warm_starts=warm_starts,
    )


def schatten_hypo_norm_gram(t: OperatorTuple) -> float:
    """Closed form for p = 2: sqrt of the top eigenvalue of the d x d Gram
    matrix G[j, k] = tr(T_k T_j*).  Independent of the optimizer route.
    """
    mats = _stack(t)
    g = np.einsum("kab,jab->jk", mats, np.conj(mats))
    g = (g + np.conj(g.T)) / 2.0
    return float(np.sqrt(max(np.linalg.eigvalsh(g)[-1], 0.0)))


# ---------------------------------------------------------------------------
# numerical radius of a single matrix: sup_theta lam_max(Re(e^{i theta} A))
# ---------------------------------------------------------------------------

def _herm_rotations(a: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    rotated = np.exp(1j * thetas)[:, None, None] * a[None, :, :]
    return (rotated + np.conj(np.swapaxes(rotated, -1, -2))) / 2.0


def _golden_max(fun, lo: float, hi: float, tol: float):
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = fun(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = fun(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def numerical_radius(
    a: np.ndarray, n_grid: int = 720, theta_tol: float = 1e-10
) -> float:
    """omega(A) via a theta grid plus golden-section refinement."""
    return _radius_witness(a, n_grid, theta_tol)[0]


def _radius_witness(a: np.ndarray, n_grid: int = 720, theta_tol: float = 1e-10):
    """(omega(A), argmax theta, top eigenvector at that theta)."""
    a = linalg.as_matrix(a)
    thetas = np.linspace(0.0, _TWO_PI, n_grid, endpoint=False)
    tops = np.linalg.eigvalsh(_herm_rotations(a, thetas))[:, -1]
    i = int(np.argmax(tops))
    span = _TWO_PI / n_grid

    def g(theta):
        h = _herm_rotations(a, np.array([theta]))[0]
        return float(np.linalg.eigvalsh(h)[-1])

    theta, val = _golden_max(g, thetas[i] - span, thetas[i] + span, theta_tol)
    if tops[i] > val:
        theta, val = float(thetas[i]), float(tops[i])
    h = _herm_rotations(a, np.array([theta]))[0]
    w, q = np.linalg.eigh(h)
    return float(val), float(theta % _TWO_PI), q[:, -1]


def _refine_support_fixed_point(lam0, support_full, step_tol=1e-11, max_iters=30):
    """Polish a coefficient point by iterating an exact support step.

    support_full(lam) returns (value, a) with value the exact objective
    and a the support direction; the coarse-grid ascents used inside the
    optimizers leave an argmax bias that this removes.
    """
    lam = np.asarray(lam0, dtype=np.complex128).copy()
    best_val, best_lam = -np.inf, lam
    for _ in range(max_iters):
        val, a = support_full(lam)
        if val > best_val:
            best_val, best_lam = float(val), lam
        na = np.linalg.norm(a)
        if na <= 0.0:
            break
        nxt = gauge_fix(np.conj(a) / na)
        if np.linalg.norm(nxt - lam) < step_tol:
            val, _ = support_full(nxt)
            if val > best_val:
                best_val, best_lam = float(val), nxt
            break
        lam = nxt
    return best_val, best_lam


# ---------------------------------------------------------------------------
# joint numerical radius: two independent estimators
# ---------------------------------------------------------------------------

def _radius_vector_route(t: OperatorTuple, config: OptimizerConfig):
    """Route (a): sup over unit vectors x of (sum_k |<T_k x, x>|^2)^(1/2).

    The ascent alternates the optimal coefficient vector for fixed x with
    the top eigenvector of Re(sum lam_k T_k) for fixed coefficients.
    """
    mats = _stack(t)

    def coeffs_for(x):
        c = np.einsum("si,kij,sj->sk", np.conj(x), mats, x)
        return c

    def objective(x):
        c = coeffs_for(x.reshape(1, -1))[0]
        return float(np.linalg.norm(c))

    def ascend(xs):
        c = coeffs_for(xs)
        vals = np.linalg.norm(c, axis=1)
        safe = np.where(vals > 0.0, vals, 1.0)
        lam = np.conj(c) / safe[:, None]
        m = _combine(mats, lam)
        h = (m + np.conj(np.swapaxes(m, -1, -2))) / 2.0
        _, q = np.linalg.eigh(h)
        nxt = gauge_fix(q[:, :, -1])
        nxt[vals <= 0.0] = xs[vals <= 0.0]
        return vals, nxt

    est = sphere_optimize(objective, t.n, config, ascend=ascend)
    x = est.argmax.coeffs
    lam = coeffs_for(x.reshape(1, -1))[0]
    nl = np.linalg.norm(lam)
    lam = np.conj(lam) / nl if nl > 0 else np.ones(t.d, dtype=np.complex128) / np.sqrt(t.d)
    return est, gauge_fix(lam)


def _radius_coeff_route(
    t: OperatorTuple, config: OptimizerConfig, n_grid_inner: int = 90
):
    """Route (b): sup over the coefficient ball of omega(sum lam_k T_k)."""
    mats = _stack(t)

    def objective(lam):
        return numerical_radius(combination(t, lam))

    def polish_objective(lam):
        m = combination(t, lam)
        thetas = np.linspace(0.0, _TWO_PI, n_grid_inner, endpoint=False)
        return float(np.max(np.linalg.eigvalsh(_herm_rotations(m, thetas))[:, -1]))

    def ascend(rows):
        m = _combine(mats, rows)
        thetas = np.linspace(0.0, _TWO_PI, n_grid_inner, endpoint=False)
        phases = np.exp(1j * thetas)
        h = m[:, None, :, :] * phases[None, :, None, None]
        h = (h + np.conj(np.swapaxes(h, -1, -2))) / 2.0
        s, nt = h.shape[0], h.shape[1]
        w, q = np.linalg.eigh(h.reshape(s * nt, t.n, t.n))
        tops = w[:, -1].reshape(s, nt)
        best = np.argmax(tops, axis=1)
        vals = tops[np.arange(s), best]
        x = q.reshape(s, nt, t.n, t.n)[np.arange(s), best][:, :, -1]
        c = np.einsum("si,kij,sj->sk", np.conj(x), mats, x)
        a = np.exp(1j * thetas[best])[:, None] * c
        return vals, power_step(rows, a)

    def support_full(lam):
        val, theta, x = _radius_witness(combination(t, lam))
        c = np.einsum("i,kij,j->k", np.conj(x), mats, x)
        return val, np.exp(1j * theta) * c

    est = sphere_optimize(
        objective, t.d, config, ascend=ascend, polish_objective=polish_objective
    )
    val, lam = _refine_support_fixed_point(est.argmax.coeffs, support_full)
    if val >= est.value:
        est = replace(est, value=val, argmax=BallPoint(lam))
    return est


def joint_numerical_radius(
    t: OperatorTuple, config: OptimizerConfig | None = None, route: str = "both"
) -> SupremumEstimate:
    """Joint numerical radius omega(T).

    route "both" (default) runs the vector-sphere estimator and the
    coefficient-sphere estimator, reports the max, and records the gap
    between the two in cross_gap.  "a" / "b" run a single route.
    """
    cfg = config or OptimizerConfig()
    if route not in ("a", "b", "both"):
        raise ValueError(f"unknown route {route!r}")

    candidates = []
    value_a = value_b = None
    if route in ("a", "both"):
        est_a, lam_a = _radius_vector_route(t, cfg)
        value_a = est_a.value
        candidates.append((lam_a, est_a.converged, est_a.starts, est_a.spread))
    if route in ("b", "both"):
        est_b = _radius_coeff_route(t, cfg)
        value_b = est_b.value
        candidates.append(
            (est_b.argmax.coeffs, est_b.converged, est_b.starts, est_b.spread)
        )

    best = None
    for lam, conv, starts, spread in candidates:
        val, theta, _ = _radius_witness(combination(t, lam))
        if best is None or val > best[0]:
            best = (val, lam, theta, conv, starts, spread)
    value, lam, theta, conv, starts, spread = best
    gap = abs(value_a - value_b) if (value_a is not None and value_b is not None) else None
    total_starts = sum(c[2] for c in candidates)
    return SupremumEstimate(
        value=value,
        argmax=BallPoint(lam),
        starts=total_starts,
        converged=conv,
        spread=spread,
        theta=theta,
        cross_gap=gap,
    )


# ---------------------------------------------------------------------------
# Schatten p-numerical radius: sup over (lam, theta) of ||Re(e^{i theta} M)||_p
# ---------------------------------------------------------------------------

def _batch_herm_schatten(evals: np.ndarray, p: float) -> np.ndarray:
    mags = np.abs(evals)
    top = np.max(mags, axis=-1)
    safe = np.where(top > 0.0, top, 1.0)
    vals = safe * np.sum((mags / safe[..., None]) ** p, axis=-1) ** (1.0 / p)
    return np.where(top > 0.0, vals, 0.0)


def _theta_swept_p_norm(m: np.ndarray, p: float, n_grid: int, theta_tol: float):
    """(sup_theta ||Re(e^{i theta} M)||_p, argmax theta) by grid + golden."""
    thetas = np.linspace(0.0, _TWO_PI, n_grid, endpoint=False)
    h = _herm_rotations(m, thetas)
    vals = _batch_herm_schatten(np.linalg.eigvalsh(h), p)
    i = int(np.argmax(vals))
    span = _TWO_PI / n_grid

    def g(theta):
        hh = _herm_rotations(m, np.array([theta]))[0]
        return float(_batch_herm_schatten(np.linalg.eigvalsh(hh)[None, :], p)[0])

    theta, val = _golden_max(g, thetas[i] - span, thetas[i] + span, theta_tol)
    if vals[i] > val:
        theta, val = float(thetas[i]), float(vals[i])
    return float(val), float(theta % _TWO_PI)


def schatten_numerical_radius(
    t: OperatorTuple,
    p: float,
    config: OptimizerConfig | None = None,
    n_grid_theta: int = 360,
    n_grid_inner: int = 60,
    warm_starts=(),
) -> SupremumEstimate:
    """omega_{s,p}(T): outer coefficient-sphere ascent, inner theta sweep.

    Ascent iterations use a coarse inner grid; every reported value comes
    from the full n_grid_theta sweep with golden-section refinement.
    """
    if p < 1.0:
        raise InvalidPError(f"Schatten exponent p={p} must be >= 1")
    mats = _stack(t)

    def objective(lam):
        return _theta_swept_p_norm(combination(t, lam), p, n_grid_theta, 1e-9)[0]

    def polish_objective(lam):
        m = combination(t, lam)
        thetas = np.linspace(0.0, _TWO_PI, n_grid_inner, endpoint=False)
        evals = np.linalg.eigvalsh(_herm_rotations(m, thetas))
        return float(np.max(_batch_herm_schatten(evals, p)))

    def ascend(rows):
        m = _combine(mats, rows)
        thetas = np.linspace(0.0, _TWO_PI, n_grid_inner, endpoint=False)
        phases = np.exp(1j * thetas)
        h = m[:, None, :, :] * phases[None, :, None, None]
        h = (h + np.conj(np.swapaxes(h, -1, -2))) / 2.0
        s, nt = h.shape[0], h.shape[1]
        w, q = np.linalg.eigh(h.reshape(s * nt, t.n, t.n))
        vals_all = _batch_herm_schatten(w, p).reshape(s, nt)
        best = np.argmax(vals_all, axis=1)
        vals = vals_all[np.arange(s), best]
        wb = w.reshape(s, nt, -1)[np.arange(s), best]
        qb = q.reshape(s, nt, t.n, t.n)[np.arange(s), best]
        # Hermitian dual element W = Q diag(sign(h) |h|^(p-1)) Q* / ||H||_p^(p-1)
        mags = np.abs(wb)
        top = np.max(mags, axis=1)
        tsafe = np.where(top > 0.0, top, 1.0)
        vsafe = np.where(vals > 0.0, vals, 1.0)
        wt = (
            np.sign(wb)
            * (mags / tsafe[:, None]) ** (p - 1.0)
            * ((tsafe / vsafe) ** (p - 1.0))[:, None]
        )
        wt[vals <= 0.0] = 0.0
        dual = np.einsum("sij,sj,skj->sik", qb, wt, np.conj(qb))
        a = np.exp(1j * thetas[best])[:, None] * np.einsum(
            "sij,kji->sk", dual, mats
        )
        return vals, power_step(rows, a)

    def support_full(lam):
        m = combination(t, lam)
        val, theta = _theta_swept_p_norm(m, p, n_grid_theta, 1e-10)
        h = _herm_rotations(m, np.array([theta]))[0]
        evals, q = np.linalg.eigh(h)
        mags = np.abs(evals)
        top = float(np.max(mags))
        if top <= 0.0 or val <= 0.0:
            return val, np.zeros(t.d, dtype=np.complex128)
        wt = np.sign(evals) * (mags / top) ** (p - 1.0) * (top / val) ** (p - 1.0)
        dual = (q * wt) @ np.conj(q.T)
        a = np.exp(1j * theta) * np.einsum("ij,kji->k", dual, mats)
        return val, a

    est = sphere_optimize(
        objective,
        t.d,
        config,
        ascend=ascend,
        polish_objective=polish_objective,
        warm_starts=warm_starts,
    )
    val, lam = _refine_support_fixed_point(est.argmax.coeffs, support_full)
    if val < est.value:
        val, lam = est.value, est.argmax.coeffs
    vfinal, theta = _theta_swept_p_norm(combination(t, lam), p, n_grid_theta, 1e-10)
    return SupremumEstimate(
        value=vfinal,
        argmax=BallPoint(lam),
        starts=est.starts,
        converged=est.converged,
        spread=est.spread,
        theta=theta,
    )
