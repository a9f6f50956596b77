"""Bernstein basis machinery over a general interval [a, b].

The degree-m Bernstein basis in the local parameter u = (t - a)/(b - a) is

    B_i^m(t) = C(m, i) * (1 - u)^(m - i) * u^i,          i = 0..m,

a nonnegative partition of unity.  This module provides evaluation (direct
and de Casteljau), the degree-elevation matrix E with B^m = B^n E, the Pascal
matrix and power-basis conversion, the endpoint dual functionals lambda_k^n
(left and right forms), their real-index generalization, and uniform node
vectors.

Exactness convention: whenever inputs are ints or Fractions, results are
exact Fractions; float inputs flow through as floats.  All matrices returned
here are exact (:class:`dualbern.ratmat.Mat`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ratmat import Mat, binomial


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


@dataclass(frozen=True)
class Interval:
    """A nondegenerate interval [a, b], a < b.

    Endpoints may be ints/Fractions (exact mode) or floats.
    """

    a: object = 0
    b: object = 1

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def width(self):
        return self.b - self.a

    def is_exact(self) -> bool:
        return _is_exact(self.a) and _is_exact(self.b)

    def to_local(self, t):
        """Map t in [a,b] to u in [0,1].  Exact when everything is exact."""
        if self.is_exact() and _is_exact(t):
            return Fraction(t - self.a, 1) / Fraction(self.b - self.a, 1)
        return (t - self.a) / (self.b - self.a)

    def from_local(self, u):
        return self.a + u * (self.b - self.a)


UNIT_INTERVAL = Interval(0, 1)


@dataclass(frozen=True)
class BPoly:
    """A polynomial in B-form: degree, interval, and m+1 coefficients.

    p(t) = sum_i coeffs[i] * B_i^m(t) with the basis taken over `interval`.
    """

    degree: int
    interval: Interval
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(
                f"need {self.degree + 1} coefficients for degree {self.degree}, "
                f"got {len(self.coeffs)}"
            )

    def __call__(self, t):
        return de_casteljau_eval(self, t)


@dataclass(frozen=True)
class NodeVector:
    """Uniform nodes xi_i = a + (i/n)(b - a), i = 0..n (strictly increasing)."""

    n: int
    interval: Interval
    nodes: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if len(self.nodes) != self.n + 1:
            raise ValueError("node count must be n+1")
        if any(x >= y for x, y in zip(self.nodes, self.nodes[1:])):
            raise ValueError("nodes must be strictly increasing")

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, i):
        return self.nodes[i]


def bernstein_value(m: int, i: int, t, iv: Interval = UNIT_INTERVAL):
    """Value of B_i^m(t) over the interval; exact for exact inputs."""
    if not 0 <= i <= m:
        raise IndexError(f"basis index {i} out of range 0..{m}")
    u = iv.to_local(t)
    return binomial(m, i) * (1 - u) ** (m - i) * u**i


def de_casteljau_eval(p: BPoly, t):
    """Evaluate a B-form polynomial by repeated affine combinations.

    Works in the local parameter u = (t-a)/(b-a); each sweep replaces
    b_i <- (1-u) b_i + u b_{i+1}.  Numerically stable for u in [0,1] (convex
    combinations) and exact on exact inputs.
    """
    u = p.interval.to_local(t)
    b = list(p.coeffs)
    w = 1 - u
    for sweep in range(1, len(b)):
        for i in range(len(b) - sweep):
            b[i] = w * b[i] + u * b[i + 1]
    return b[0]


def elevation_matrix(m: int, n: int) -> Mat:
    """The (n+1) x (m+1) degree-elevation matrix E with B^m = B^n E.

    E(i, j) = C(n-i, m-j) * C(i, j) / C(n, m).  Every row sums to 1
    (Chu–Vandermonde), rows 0 and n are unit rows e_0 and e_m, and all
    entries are nonnegative.
    """
    if m > n:
        raise ValueError(f"elevation needs m <= n, got m={m} n={n}")
    if m < 0:
        raise ValueError("degrees must be nonnegative")
    denom = binomial(n, m)
    return Mat(
        [[binomial(n - i, m - j) * binomial(i, j) / denom for j in range(m + 1)]
         for i in range(n + 1)]
    )


def pascal_matrix(n: int) -> Mat:
    """Lower-triangular Pascal matrix T(i, j) = C(i, j), size (n+1) x (n+1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Mat([[binomial(i, j) for j in range(n + 1)] for i in range(n + 1)])


def power_to_bform(power_coeffs: Sequence, n: int, iv: Interval = UNIT_INTERVAL) -> BPoly:
    """B-form of p(u) = sum_j c_j u^j (local parameter), elevated to degree n.

    Shorter coefficient lists are zero-padded.  The conversion is
    alpha_i = sum_j [C(i, j)/C(n, j)] c_j  (i.e. alpha = T_n D_n^{-1} c with
    T_n the Pascal matrix and D_n = diag C(n, j)); exact on exact input.
    """
    c = list(power_coeffs)
    if len(c) > n + 1:
        raise ValueError(f"{len(c)} power coefficients exceed degree {n}")
    c += [0] * (n + 1 - len(c))
    support = [j for j, v in enumerate(c) if v != 0]  # zero terms add nothing
    alpha = [
        sum((binomial(i, j) / binomial(n, j)) * c[j] for j in support if j <= i)
        for i in range(n + 1)
    ]
    return BPoly(n, iv, tuple(alpha))


def bform_to_power(p: BPoly) -> tuple:
    """Local power coefficients c with p(u) = sum_j c_j u^j, u the local parameter.

    c_j = C(n, j) * (Delta^j alpha)(0), the j-th forward difference of the
    B-form coefficient sequence (equivalently c = D_n T_n^{-1} alpha with the
    closed-form Pascal inverse T^{-1}(j, i) = (-1)^(j-i) C(j, i)).  When a
    difference row vanishes identically every remaining coefficient is
    provably zero, so a low-degree polynomial carried at high degree converts
    in O(n * true degree) arithmetic instead of O(n^2).
    """
    n = p.degree
    zero = p.coeffs[0] * 0  # 0 or 0.0, matching the coefficient arithmetic
    row = list(p.coeffs)
    out = []
    for j in range(n + 1):
        if not any(row):
            out.extend([zero] * (n + 1 - j))
            break
        out.append(binomial(n, j) * row[0])
        row = [row[q + 1] - row[q] for q in range(len(row) - 1)]
    return tuple(out)


def _support_degree(c) -> int:
    """Largest index with a nonzero entry (0 for the zero sequence)."""
    for j in range(len(c) - 1, -1, -1):
        if c[j] != 0:
            return j
    return 0


def _check_functional_args(n: int, k: int, p: BPoly, iv):
    if not 0 <= k <= n:
        raise ValueError(f"functional index {k} out of range 0..{n}")
    if p.degree > n:
        raise ValueError(f"polynomial degree {p.degree} exceeds ambient degree {n}")
    if iv is not None and iv != p.interval:
        raise ValueError(
            "functional interval must match the polynomial's interval "
            "(values are interval-invariant; re-express p first)"
        )


def dual_functional_apply(n: int, k: int, p: BPoly, iv: Interval | None = None):
    """The left-endpoint dual functional lambda_k^n applied to p.

    lambda_k^n = sum_{j=0}^{k} [C(k,j)/C(n,j)] (b-a)^j / j! * (D^j at a);
    in terms of the local power coefficients c of p this collapses to

        lambda_k^n p = sum_{j=0}^{min(k, deg p)} [C(k,j)/C(n,j)] c_j

    because the (b-a)^j factor cancels the chain rule exactly.  These
    functionals are dual to the Bernstein basis: lambda_k^n B_i^n = delta_ki.
    """
    _check_functional_args(n, k, p, iv)
    c = bform_to_power(p)
    top = min(k, _support_degree(c))  # dropped terms have c_j = 0
    return sum((binomial(k, j) / binomial(n, j)) * c[j] for j in range(top + 1))


def dual_functional_apply_right(n: int, k: int, p: BPoly, iv: Interval | None = None):
    """The same functional in its right-endpoint form.

    lambda_k^n p = sum_{j=0}^{n-k} (-1)^j [C(n-k,j)/C(n,j)] d_j where
    d_j = q^{(j)}(1)/j! = sum_{l>=j} C(l,j) c_l are the local Taylor
    coefficients at u = 1.  Agrees with the left form for every p of degree
    <= n; for higher-degree arguments the two forms may disagree (the
    functionals only coincide on that space).
    """
    _check_functional_args(n, k, p, iv)
    c = bform_to_power(p)
    deg = _support_degree(c)  # entries beyond it contribute nothing
    top = min(n - k, deg)
    d = [sum(binomial(l, j) * c[l] for l in range(j, deg + 1)) for j in range(top + 1)]
    return sum((-1) ** j * (binomial(n - k, j) / binomial(n, j)) * d[j] for j in range(top + 1))


def generalized_dual_apply(n: int, x, p: BPoly):
    """Real-index dual functional lambda_{xn}^n applied to p, 0 <= x <= 1.

    The binomial ratio generalizes through falling factorials:

        C(xn, j)/C(n, j) = prod_{t=0}^{j-1} (xn - t)/(n - t),

    so no gamma function is needed.  The sum runs to min(floor(xn), deg p).
    As n grows, lambda_{xn}^n p -> p(x) at rate O(1/n).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    xn = Fraction(x) * n if _is_exact(x) else x * n
    c = bform_to_power(p)
    top = min(math.floor(xn), _support_degree(c))
    out = c[0]
    ratio = 1
    for j in range(1, top + 1):
        ratio = ratio * (xn - (j - 1)) / (n - (j - 1))
        out = out + ratio * c[j]
    return out


def xi_nodes(n: int, iv: Interval = UNIT_INTERVAL) -> NodeVector:
    """Uniform node vector xi_i = a + (i/n)(b-a); exact for exact intervals."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if iv.is_exact():
        nodes = tuple(iv.a + Fraction(i, n) * iv.width for i in range(n + 1))
    else:
        nodes = tuple(iv.a + (i / n) * iv.width for i in range(n + 1))
    return NodeVector(n, iv, nodes)
