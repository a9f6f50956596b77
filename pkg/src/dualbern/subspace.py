"""Selection-based dual bases of polynomial subspaces.

A degree-m subspace sits inside degree n through an embedding matrix E with
Phi^m = Phi^n E (Bernstein: the elevation matrix; power basis: the identity
block I(:, 0:m)).  Picking m+1 of the n+1 ambient dual functionals via an
injective selection map s gives the square matrix E(s,:); when it is
invertible, the dual basis of the subspace is

    D^m = B^m A,      A = E(s,:)^{-1},

biorthogonal to the selected functionals.  For the Bernstein embedding every
selection works (completeness); for the power basis only s = (0..m) does.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .bernstein import (
    BPoly,
    Interval,
    UNIT_INTERVAL,
    bernstein_value,
    dual_functional_apply,
    dual_functional_apply_right,
    elevation_matrix,
    xi_nodes,
)
from .ratmat import Mat, SingularMatrixError, mat_inv, row_select


class SelectionError(ValueError):
    """Invalid selection map."""


class NotInjectiveError(SelectionError):
    pass


class IndexOutOfRangeError(SelectionError):
    pass


class WrongLengthError(SelectionError):
    pass


@dataclass(frozen=True)
class SelectionMap:
    """Injective map s : {0..m} -> {0..n}, stored as the tuple (s(0), ..., s(m)).

    Iterating yields the selected indices, so a SelectionMap can be passed
    anywhere a list of row indices is expected.
    """

    m: int
    n: int
    indices: tuple

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __getitem__(self, i):
        return self.indices[i]


def make_selection(m: int, n: int, indices) -> SelectionMap:
    """Validate and build a selection map; raises a SelectionError subclass."""
    idx = tuple(int(i) for i in indices)
    if len(idx) != m + 1:
        raise WrongLengthError(f"selection needs {m + 1} indices, got {len(idx)}")
    for i in idx:
        if not 0 <= i <= n:
            raise IndexOutOfRangeError(f"selection index {i} outside 0..{n}")
    if len(set(idx)) != len(idx):
        raise NotInjectiveError(f"selection indices must be distinct, got {idx}")
    return SelectionMap(m, n, idx)


@dataclass(frozen=True)
class Embedding:
    """An embedding of the degree-m space into degree n: Phi^m = Phi^n E."""

    kind: str  # "bernstein" | "power"
    m: int
    n: int
    E: Mat


def bernstein_embedding(m: int, n: int) -> Embedding:
    return Embedding("bernstein", m, n, elevation_matrix(m, n))


def power_embedding(m: int, n: int) -> Embedding:
    """Power-basis embedding: E = I(:, 0:m), an (n+1) x (m+1) identity block."""
    if m > n:
        raise ValueError(f"embedding needs m <= n, got m={m} n={n}")
    E = Mat([[Fraction(int(i == j)) for j in range(m + 1)] for i in range(n + 1)])
    return Embedding("power", m, n, E)


@dataclass(frozen=True)
class DualBasis:
    """The basis D^m = B^m A with A = E(s,:)^{-1}, over an interval.

    Element i has B-form coefficients A(:, i); duality means E(s,:) A = I,
    i.e. the selected ambient functionals are biorthogonal to the D_i.
    """

    m: int
    n: int
    s: SelectionMap
    A: Mat
    interval: Interval
    kind: str = "bernstein"


def dual_basis(emb: Embedding, s: SelectionMap, iv: Interval = UNIT_INTERVAL) -> DualBasis:
    """Construct the dual basis for a selection; raises SingularMatrixError
    when the selected functionals are not linearly independent on the
    subspace (expected for power-basis selections other than (0..m))."""
    if (s.m, s.n) != (emb.m, emb.n):
        raise SelectionError(
            f"selection ({s.m},{s.n}) does not match embedding ({emb.m},{emb.n})"
        )
    A = mat_inv(row_select(emb.E, s))
    return DualBasis(emb.m, emb.n, s, A, iv, emb.kind)


def dual_basis_eval(db: DualBasis, i: int, t):
    """D_i^m(t) = sum_j B_j^m(t) A(j, i).  (B-form evaluation; Bernstein kind.)"""
    if db.kind != "bernstein":
        raise ValueError("dual_basis_eval evaluates Bernstein-embedding bases only")
    if not 0 <= i <= db.m:
        raise IndexError(f"dual basis index {i} out of range 0..{db.m}")
    return sum(bernstein_value(db.m, j, t, db.interval) * db.A[j, i] for j in range(db.m + 1))


def _basis_element(db: DualBasis, i: int) -> BPoly:
    return BPoly(db.m, db.interval, db.A.col(i))


def verify_duality(db: DualBasis) -> bool:
    """Exact check that the selected functionals are biorthogonal to D^m.

    Bernstein embedding: applies the left-endpoint functionals
    lambda_{s(i)}^n to each basis element (a degree-m polynomial inside the
    degree-n space) and compares with the identity matrix, exactly.  For the
    power embedding (whose dual functionals are endpoint derivatives against
    monomials rather than the Bernstein family) the equivalent exact matrix
    identity E(s,:) A = I is checked instead.
    """
    if db.kind != "bernstein":
        E = power_embedding(db.m, db.n).E
        identity = Mat.identity(db.m + 1)
        product = Mat(
            [
                [sum(E[k, c] * db.A[c, j] for c in range(db.m + 1)) for j in range(db.m + 1)]
                for k in db.s
            ]
        )
        return product == identity
    for col in range(db.m + 1):
        d = _basis_element(db, col)
        for row, k in enumerate(db.s):
            if dual_functional_apply(db.n, k, d) != (1 if row == col else 0):
                return False
    return True


def is_complete(emb: Embedding) -> bool:
    """True iff EVERY increasing selection of m+1 ambient functionals is
    linearly independent on the subspace, i.e. every E(s,:) is invertible.

    Enumerates all C(n+1, m+1) selections; refuses n > 12 to keep the
    enumeration desk-scale.
    """
    if emb.n > 12:
        raise ValueError(f"completeness enumeration capped at n <= 12, got n={emb.n}")
    for comb in itertools.combinations(range(emb.n + 1), emb.m + 1):
        sub = row_select(emb.E, comb)
        try:
            mat_inv(sub)
        except SingularMatrixError:
            return False
    return True


def data_map_invariance_check(m: int, n: int, s: SelectionMap) -> bool:
    """Build the dual-basis matrix against the left- and right-endpoint
    functional families separately and compare exactly.

    Both Gram matrices G(i, j) = lambda_{s(i)}^n(B_j^m) equal E(s,:) since
    the two families are dual to the same ambient basis, so the resulting
    dual bases must coincide; this check exercises both functional code
    paths end to end.
    """
    unit = UNIT_INTERVAL

    def gram(apply_fn):
        rows = []
        for k in s:
            row = []
            for j in range(m + 1):
                basis_j = BPoly(m, unit, tuple(Fraction(int(i == j)) for i in range(m + 1)))
                row.append(apply_fn(n, k, basis_j))
            rows.append(row)
        return Mat(rows)

    a_left = mat_inv(gram(dual_functional_apply))
    a_right = mat_inv(gram(dual_functional_apply_right))
    return a_left == a_right


def linear_precision_check(db: DualBasis, samples: int = 101) -> float:
    """Max deviation of sum_i xi^n_{s(i)} D_i^m(t) from t over a uniform grid.

    The dual basis reproduces the identity with the SELECTED ambient nodes as
    coefficients; for a correct basis this is zero up to rounding.
    """
    nodes = xi_nodes(db.n, db.interval)
    coeff = [nodes[k] for k in db.s]
    a, width = db.interval.a, db.interval.width
    worst = 0.0
    for q in range(samples):
        t = a + width * q / (samples - 1)
        val = sum(float(coeff[i]) * dual_basis_eval(db, i, t) for i in range(db.m + 1))
        worst = max(worst, abs(val - t))
    return worst
