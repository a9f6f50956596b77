"""Approximation operators on C[a, b] built from dual bases.

Two operators share the dual basis D^m = B^m A of a selection s:

* the quasi-interpolant  Q_s f = sum_i (tilde-lambda_{s(i)}^n f) D_i^m — a
  linear projector onto the degree-m space whose data map tilde-Lambda^n
  needs only point values of f at the uniform degree-n nodes (no
  derivatives): tilde-lambda_j^n f = sum_i M_n^{-1}(j, i) f(xi_i^n) with
  M_n = [B_j^n(i/n)] the collocation matrix;

* the Bernstein-like operator  D_m f = sum_i f(xi^n_{s(i)}) D_i^m, which
  generalizes the classical Bernstein operator (the k = 1 symmetric case).

Reports pair a measured sup-error with the provable bound of the declared
smoothness class, plus the two exact norms entering every bound.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .bernstein import (
    BPoly,
    Interval,
    UNIT_INTERVAL,
    bernstein_value,
    de_casteljau_eval,
    xi_nodes,
)
from .ratmat import Mat, inf_norm, mat_inv
from .subspace import DualBasis, SelectionMap, bernstein_embedding, dual_basis

# A sampled function is any deterministic callable on [a, b]; it may be
# called with Fraction arguments when the interval is exact (return exact
# values to stay on the rational path, or floats otherwise).
SampledFunction = Callable


@dataclass(frozen=True)
class OperatorReport:
    """Measured sup-error on a grid, the declared bound, and the norms in it.

    bound_kind is "operator-norm" for the quasi-interpolant report and one of
    "C0-modulus" | "C1" | "C2" for the Bernstein-like report.  norm_minv is
    the inf-norm of the inverse collocation matrix at the degree relevant to
    the bound (ambient n for the quasi-interpolant's data map, subspace m for
    the stability-style constants).
    """

    sup_error: float
    bound: float
    bound_kind: str
    norm_a: Fraction
    norm_minv: Fraction
    near_best_bound: Optional[float] = None
    distance_estimate: Optional[float] = None

    def to_json_obj(self) -> dict:
        return {
            "sup_error": self.sup_error,
            "bound": self.bound,
            "bound_kind": self.bound_kind,
            "norm_A": str(self.norm_a),
            "norm_Minv": str(self.norm_minv),
        }


def collocation_matrix(n: int) -> Mat:
    """Exact M_n with entries B_j^n(i/n); row-affine, interval-invariant."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Mat(
        [[bernstein_value(n, j, Fraction(i, n)) for j in range(n + 1)] for i in range(n + 1)]
    )


@functools.lru_cache(maxsize=None)
def _colloc_inv(n: int) -> Mat:
    return mat_inv(collocation_matrix(n))


def tilde_lambda_apply(n: int, j: int, f: SampledFunction, iv: Interval = UNIT_INTERVAL):
    """tilde-lambda_j^n f = sum_i M_n^{-1}(j, i) f(xi_i^n).

    Dual to B^n using point values only; exact when f returns exact values
    at the exact uniform nodes.  |result| <= sup|f| * inf_norm(M_n^{-1}).
    """
    if not 0 <= j <= n:
        raise ValueError(f"index {j} out of range 0..{n}")
    minv = _colloc_inv(n)
    nodes = xi_nodes(n, iv)
    return sum(minv[j, i] * f(nodes[i]) for i in range(n + 1))


def _dual(m: int, n: int, s: SelectionMap, iv: Interval) -> DualBasis:
    return dual_basis(bernstein_embedding(m, n), s, iv)


def quasi_interpolant(
    m: int, n: int, s: SelectionMap, f: SampledFunction, iv: Interval = UNIT_INTERVAL
) -> BPoly:
    """Q_s f as a degree-m B-form polynomial: coefficients A . v with
    v_i = tilde-lambda_{s(i)}^n f.  Reproduces every polynomial of degree
    <= m (it is a linear projector onto that space)."""
    db = _dual(m, n, s, iv)
    v = [tilde_lambda_apply(n, k, f, iv) for k in s]
    coeffs = tuple(sum(db.A[r, i] * v[i] for i in range(m + 1)) for r in range(m + 1))
    return BPoly(m, iv, coeffs)


def _grid(iv: Interval, samples: int) -> list:
    a, w = float(iv.a), float(iv.width)
    return [a + w * q / (samples - 1) for q in range(samples)]


def distance_to_subspace(
    f: SampledFunction, m: int, iv: Interval = UNIT_INTERVAL, samples: int = 401
) -> float:
    """Grid estimate of the sup-distance from f to the degree-m polynomials.

    Discrete least squares on a uniform grid (Vandermonde in the local
    parameter), reporting the max residual; a cheap independent yardstick for
    near-best-approximation checks (it may under-estimate the true
    distance slightly, so give it a few percent of slack)."""
    ts = _grid(iv, samples)
    us = np.array([(t - float(iv.a)) / float(iv.width) for t in ts])
    vals = np.array([float(f(t)) for t in ts])
    vand = np.vander(us, m + 1, increasing=True)
    coef, *_ = np.linalg.lstsq(vand, vals, rcond=None)
    fit = vand @ coef
    return float(np.max(np.abs(vals - fit)))


def quasi_interpolant_report(
    m: int,
    n: int,
    s: SelectionMap,
    f: SampledFunction,
    iv: Interval = UNIT_INTERVAL,
    samples: int = 201,
) -> OperatorReport:
    """Report for Q_s: grid sup-error |f - Q_s f|, the operator-norm bound
    inf_norm(A) * inf_norm(M_n^{-1}) * sup|f| (which dominates ||Q_s f||),
    and the near-best bound (1 + that operator norm) * d(f, degree-m)."""
    db = _dual(m, n, s, iv)
    p = quasi_interpolant(m, n, s, f, iv)
    ts = _grid(iv, samples)
    fs = [float(f(t)) for t in ts]
    sup_err = max(abs(fv - de_casteljau_eval(p, t)) for fv, t in zip(fs, ts))
    norm_a = inf_norm(db.A)
    norm_minv = inf_norm(_colloc_inv(n))
    sup_f = max(abs(v) for v in fs)
    op_norm = float(norm_a * norm_minv)
    dist = distance_to_subspace(f, m, iv)
    return OperatorReport(
        sup_error=sup_err,
        bound=op_norm * sup_f,
        bound_kind="operator-norm",
        norm_a=norm_a,
        norm_minv=norm_minv,
        near_best_bound=(1.0 + op_norm) * dist,
        distance_estimate=dist,
    )


def bernstein_like(
    m: int, n: int, s: SelectionMap, f: SampledFunction, iv: Interval = UNIT_INTERVAL
) -> BPoly:
    """D_m f = sum_i f(xi^n_{s(i)}) D_i^m, as a degree-m B-form polynomial.

    Coefficients are A . (f at the selected ambient nodes); reproduces affine
    functions exactly (linear precision of the dual basis)."""
    db = _dual(m, n, s, iv)
    nodes = xi_nodes(n, iv)
    v = [f(nodes[k]) for k in s]
    coeffs = tuple(sum(db.A[r, i] * v[i] for i in range(m + 1)) for r in range(m + 1))
    return BPoly(m, iv, coeffs)


def modulus_of_continuity(
    f: SampledFunction, h, iv: Interval = UNIT_INTERVAL, grid_n: int = 1024
) -> float:
    """Grid approximation of omega(f, h) = max |f(x) - f(y)| over |x - y| <= h.

    Samples grid_n + 1 uniform points and takes the largest (max - min) over
    windows spanning parameter distance <= h; a lower bound for the true
    modulus, converging as the grid refines.
    """
    width = float(iv.width)
    if not 0 < h <= width:
        raise ValueError(f"need 0 < h <= b - a = {width}, got h={h}")
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    a = float(iv.a)
    vals = [float(f(a + width * q / grid_n)) for q in range(grid_n + 1)]
    span = int((float(h) * grid_n) / width + 1e-9)  # indices within distance h
    span = max(1, min(span, grid_n))
    best = 0.0
    hi: deque = deque()  # decreasing values -> window max at left
    lo: deque = deque()  # increasing values -> window min at left
    for q, v in enumerate(vals):
        while hi and vals[hi[-1]] <= v:
            hi.pop()
        hi.append(q)
        while lo and vals[lo[-1]] >= v:
            lo.pop()
        lo.append(q)
        start = q - span
        if hi[0] < start:
            hi.popleft()
        if lo[0] < start:
            lo.popleft()
        best = max(best, vals[hi[0]] - vals[lo[0]])
    return best


_BOUND_KINDS = {"c0": "C0-modulus", "c1": "C1", "c2": "C2"}


def bernstein_like_report(
    m: int,
    n: int,
    s: SelectionMap,
    f: SampledFunction,
    smoothness: str,
    iv: Interval = UNIT_INTERVAL,
    d1: Optional[float] = None,
    d2: Optional[float] = None,
    samples: int = 201,
    modulus_grid: int = 1024,
) -> OperatorReport:
    """Report for the Bernstein-like operator with the bound of the declared
    smoothness class (w = b - a, ||A|| = inf_norm(A)):

        c0:  ||f - D_m f|| <= ||A|| * omega(f, w)
        c1:  ||f - D_m f|| <= w * ||A|| * ||f'||      (d1 = analytic sup|f'|)
        c2:  ||f - D_m f|| <= w^2/2 * ||A|| * ||f''||  (d2 = analytic sup|f''|)

    Derivative norms are caller-supplied closed-form values; nothing is
    differentiated numerically."""
    kind = _BOUND_KINDS.get(smoothness.lower())
    if kind is None:
        raise ValueError(f"smoothness must be one of c0|c1|c2, got {smoothness!r}")
    db = _dual(m, n, s, iv)
    p = bernstein_like(m, n, s, f, iv)
    ts = _grid(iv, samples)
    sup_err = max(abs(float(f(t)) - de_casteljau_eval(p, t)) for t in ts)
    norm_a = inf_norm(db.A)
    w = float(iv.width)
    if kind == "C0-modulus":
        bound = float(norm_a) * modulus_of_continuity(f, w, iv, modulus_grid)
    elif kind == "C1":
        if d1 is None:
            raise ValueError("c1 bound needs d1 = sup|f'| over the interval")
        bound = w * float(norm_a) * d1
    else:
        if d2 is None:
            raise ValueError("c2 bound needs d2 = sup|f''| over the interval")
        bound = 0.5 * w * w * float(norm_a) * d2
    return OperatorReport(
        sup_error=sup_err,
        bound=bound,
        bound_kind=kind,
        norm_a=norm_a,
        norm_minv=inf_norm(_colloc_inv(m)),
    )


@dataclass(frozen=True)
class StabilityReport:
    lower: float
    p_norm: float
    upper: float


def stability_report(db: DualBasis, alpha: Sequence) -> StabilityReport:
    """Two-sided stability of the dual basis: for p = sum_i alpha_i D_i^m,

        max|alpha| / inf_norm(M_m^{-1})  <=  ||p||  <=  inf_norm(A) * max|alpha|.

    p is sampled on a grid that includes the uniform nodes i/m (the points
    through which the lower bound is proved), and the sandwich is checked
    with multiplicative slack 1 + 1e-9; violation raises RuntimeError since
    it would signal an internal inconsistency."""
    if len(alpha) != db.m + 1:
        raise ValueError(f"alpha must have length {db.m + 1}")
    beta = [
        sum(db.A[r, i] * alpha[i] for i in range(db.m + 1)) for r in range(db.m + 1)
    ]  # B-form coefficients of p
    p = BPoly(db.m, db.interval, tuple(float(b) for b in beta))
    ts = _grid(db.interval, 201)
    a, w = float(db.interval.a), float(db.interval.width)
    ts += [a + w * i / db.m for i in range(db.m + 1)]
    p_norm = max(abs(de_casteljau_eval(p, t)) for t in ts)
    alpha_norm = max(abs(float(x)) for x in alpha)
    lower = alpha_norm / float(inf_norm(_colloc_inv(db.m)))
    upper = float(inf_norm(db.A)) * alpha_norm
    slack = 1 + 1e-9
    if not (lower <= p_norm * slack and p_norm <= upper * slack):
        raise RuntimeError(
            f"stability sandwich violated: lower={lower} p_norm={p_norm} upper={upper}"
        )
    return StabilityReport(lower=lower, p_norm=p_norm, upper=upper)
