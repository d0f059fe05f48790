"""Classical and quantum Yang-Baxter checks, and the coefficient hierarchy.

Checks run at three levels:

* the classical equation for a single two-leg tensor (:func:`cybe_check`),
* the quantum equation for ``1 + r[h]`` over three unitalisation legs
  (:func:`toy_qybe_check`), together with its expanded no-unit form,
* the quantum equation for a two-leg tensor-space series such as a double
  product integral (:func:`qybe_check`), plus the grid-product identities
  that reduce the latter to the former (:func:`grid_product`,
  :func:`triple_grid_check`).

Order-by-order, the quantum condition on ``1 + r[h]`` is an inhomogeneous
linear equation for each coefficient of ``r`` given the lower ones;
:func:`hierarchy_residual` evaluates one level of it exactly and
:func:`hierarchy_solve` solves for the next coefficient by exact row
reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .algebra import AlgebraDef, LegTensor, commutator
from .hseries import HSeries, unit_series
from .linalg import solve_affine
from .tensorhopf import MultiTensorElt


@dataclass(frozen=True)
class YbeReport:
    """Outcome of a Yang-Baxter style identity check.

    For failures, ``order`` is the lowest deformation order with a nonzero
    residual, ``witness`` the smallest offending basis key at that order,
    ``rank`` its joint rank, and ``residual`` the full residual coefficient
    (which re-evaluates to nonzero by construction).
    """

    holds: bool
    order: int | None = None
    witness: tuple | None = None
    rank: tuple | None = None
    residual: Any | None = None

    def __bool__(self) -> bool:
        return self.holds


def _rank_of_key(key: tuple) -> tuple[int, ...]:
    # leg-tensor keys hold symbols (rank 0 for the unit), multi-tensor keys words
    return tuple(
        len(part) if isinstance(part, tuple) else (0 if part < 0 else 1)
        for part in key
    )


def _report(residual: HSeries) -> YbeReport:
    for k, coeff in enumerate(residual.coeffs):
        if not coeff.is_zero():
            witness = min(coeff.terms)
            return YbeReport(
                holds=False,
                order=k,
                witness=witness,
                rank=_rank_of_key(witness),
                residual=coeff,
            )
    return YbeReport(holds=True)


def _embed_series(x: HSeries, positions: Sequence[int], legs: int) -> HSeries:
    return HSeries(tuple(c.embed(positions, legs) for c in x.coeffs))


# -- classical level ---------------------------------------------------------


def cybe_residual(r1: LegTensor) -> LegTensor:
    """The classical Yang-Baxter expression
    ``[r^{12}, r^{13}] + [r^{12}, r^{23}] + [r^{13}, r^{23}]`` on three legs."""
    r12 = r1.embed((1, 2), 3)
    r13 = r1.embed((1, 3), 3)
    r23 = r1.embed((2, 3), 3)
    return commutator(r12, r13) + commutator(r12, r23) + commutator(r13, r23)


def cybe_check(r1: LegTensor) -> YbeReport:
    """Whether a two-leg tensor satisfies the classical Yang-Baxter equation."""
    residual = cybe_residual(r1)
    if residual.is_zero():
        return YbeReport(holds=True)
    witness = min(residual.terms)
    return YbeReport(
        holds=False,
        order=None,
        witness=witness,
        rank=_rank_of_key(witness),
        residual=residual,
    )


# -- quantum level over the unitalisation -------------------------------------


def toy_qybe_residual(r: HSeries) -> HSeries:
    """LHS minus RHS of the quantum Yang-Baxter equation for ``1 + r[h]``.

    Computed on three unitalisation legs.  The same difference is also
    evaluated in its expanded form (units cancelled), and the two are checked
    to agree identically before returning.
    """
    if not r.coeffs[0].is_zero():
        raise ValueError("expected a series with zero constant term")
    alg = r.coeffs[0].algebra
    order = r.order
    one = unit_series(LegTensor.unit(alg, 3), order)
    r12 = _embed_series(r, (1, 2), 3)
    r13 = _embed_series(r, (1, 3), 3)
    r23 = _embed_series(r, (2, 3), 3)
    rho12, rho13, rho23 = one + r12, one + r13, one + r23
    residual = rho12 * rho13 * rho23 - rho23 * rho13 * rho12
    expanded = (
        r12 * r13
        + r12 * r23
        + r13 * r23
        + r12 * r13 * r23
        - r13 * r12
        - r23 * r12
        - r23 * r13
        - r23 * r13 * r12
    )
    if residual != expanded:
        raise AssertionError("unit cancellation identity failed; multiplication bug")
    return residual


def toy_qybe_check(r: HSeries) -> YbeReport:
    """Whether ``1 + r[h]`` satisfies the quantum Yang-Baxter equation
    over three unitalisation legs, at the truncation order of ``r``."""
    return _report(toy_qybe_residual(r))


# -- grid products -------------------------------------------------------------


def _grid_sequence(m: int, n: int, legs_total: int, offset_row: int, offset_col: int):
    """Leg pairs ``(row + j, col + m + n + 1 - k)`` in nested grid order."""
    return [
        (offset_row + j, offset_col + m + n + 1 - k)
        for j in range(1, m + 1)
        for k in range(1, n + 1)
    ]


def grid_product(
    rho: HSeries, m: int, n: int, prescription: str = "first"
) -> HSeries:
    """The ordered grid product ``prod_{(j,k)} rho^{j, m+n+1-k}`` on ``m+n`` legs.

    ``prescription="first"`` nests the column loop inside the row loop,
    ``"second"`` the other way around; the two orderings give the same
    element (tested, and relied on throughout).
    """
    if m < 1 or n < 1:
        raise ValueError("grid sides must be at least 1")
    alg = rho.coeffs[0].algebra
    legs = m + n
    if prescription == "first":
        pairs = [(j, m + n + 1 - k) for j in range(1, m + 1) for k in range(1, n + 1)]
    elif prescription == "second":
        pairs = [(j, m + n + 1 - k) for k in range(1, n + 1) for j in range(1, m + 1)]
    else:
        raise ValueError("prescription must be 'first' or 'second'")
    acc = unit_series(LegTensor.unit(alg, legs), rho.order)
    for j, k in pairs:
        acc = acc * _embed_series(rho, (j, k), legs)
    return acc


def triple_grid_residual(rho: HSeries, m: int, n: int, p: int) -> HSeries:
    """LHS minus RHS of the three-grid reversal identity on ``m+n+p`` legs.

    The left side multiplies the (rows x columns) grids ``(m,n)``, ``(m,p)``,
    ``(n,p)`` in that order, the right side in reverse order; at
    ``m = n = p = 1`` this is exactly the quantum Yang-Baxter equation for
    ``rho``.
    """
    if min(m, n, p) < 1:
        raise ValueError("grid sides must be at least 1")
    alg = rho.coeffs[0].algebra
    legs = m + n + p
    grid_a = [(j, m + n + 1 - k) for j in range(1, m + 1) for k in range(1, n + 1)]
    grid_b = [(j, m + n + p + 1 - l) for j in range(1, m + 1) for l in range(1, p + 1)]
    grid_c = [
        (m + k, m + n + p + 1 - l) for k in range(1, n + 1) for l in range(1, p + 1)
    ]

    def product(seq) -> HSeries:
        acc = unit_series(LegTensor.unit(alg, legs), rho.order)
        for j, k in seq:
            acc = acc * _embed_series(rho, (j, k), legs)
        return acc

    return product(grid_a + grid_b + grid_c) - product(grid_c + grid_b + grid_a)


def triple_grid_check(rho: HSeries, m: int, n: int, p: int) -> YbeReport:
    return _report(triple_grid_residual(rho, m, n, p))


# -- quantum level over the tensor space ----------------------------------------


def qybe_residual(R: HSeries) -> HSeries:
    """LHS minus RHS of the quantum Yang-Baxter equation on three tensor-space legs."""
    first = R.coeffs[0]
    if not isinstance(first, MultiTensorElt) or first.legs != 2:
        raise TypeError("expected a series of two-leg tensor-space elements")
    if first != first.unit_like():
        raise ValueError("expected a series with unit constant term")
    r12 = _embed_series(R, (1, 2), 3)
    r13 = _embed_series(R, (1, 3), 3)
    r23 = _embed_series(R, (2, 3), 3)
    return r12 * r13 * r23 - r23 * r13 * r12


def qybe_check(R: HSeries) -> YbeReport:
    """Whether a two-leg tensor-space series satisfies the quantum Yang-Baxter
    equation, reporting the lowest failing order and a witnessing joint rank."""
    return _report(qybe_residual(R))


# -- the coefficient hierarchy ----------------------------------------------------


def hierarchy_residual(r_list: Sequence[LegTensor], level: int) -> LegTensor:
    """The level-``level`` coefficient equation of the quantum condition.

    With ``r_list = [r_1, r_2, ...]`` this is the three-leg tensor

    ``sum_{s+t=level+1} ([r_s^{12}, r_t^{13}] + [r_s^{12}, r_t^{23}] +
    [r_s^{13}, r_t^{23}]) + sum_{s+t+u=level+1} (r_s^{12} r_t^{13} r_u^{23}
    - r_u^{23} r_t^{13} r_s^{12})``

    over positive indices.  At ``level = 1`` it reduces to the classical
    Yang-Baxter expression for ``r_1``.
    """
    if level < 1:
        raise ValueError("level must be at least 1")
    if len(r_list) < level:
        raise ValueError(f"need coefficients r_1..r_{level}, got {len(r_list)}")
    alg = r_list[0].algebra
    emb = {
        (s, pos): r_list[s - 1].embed(pos, 3)
        for s in range(1, level + 1)
        for pos in ((1, 2), (1, 3), (2, 3))
    }
    total = LegTensor(alg, 3, {})
    for s in range(1, level + 1):
        t = level + 1 - s
        if t < 1:
            continue
        total = (
            total
            + commutator(emb[(s, (1, 2))], emb[(t, (1, 3))])
            + commutator(emb[(s, (1, 2))], emb[(t, (2, 3))])
            + commutator(emb[(s, (1, 3))], emb[(t, (2, 3))])
        )
    for s in range(1, level):
        for t in range(1, level + 1 - s):
            u = level + 1 - s - t
            if u < 1:
                continue
            total = total + (
                emb[(s, (1, 2))] * emb[(t, (1, 3))] * emb[(u, (2, 3))]
                - emb[(u, (2, 3))] * emb[(t, (1, 3))] * emb[(s, (1, 2))]
            )
    return total


@dataclass(frozen=True)
class SolutionSet:
    """The affine solution space of one hierarchy level.

    ``particular`` is None when the linear system is inconsistent (a reported
    outcome, not an error).  ``contains`` substitutes a candidate back into
    the defining residual, so it is independent of the row reduction.
    """

    level: int
    prior: tuple[LegTensor, ...]
    particular: LegTensor | None
    kernel: tuple[LegTensor, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    def contains(self, candidate: LegTensor) -> bool:
        return hierarchy_residual(list(self.prior) + [candidate], self.level).is_zero()


def hierarchy_solve(r_prev: Sequence[LegTensor]) -> SolutionSet:
    """Solve the next hierarchy level for the unknown coefficient.

    Given ``r_1 .. r_{N-1}``, level ``N`` of the coefficient equations is
    affine in ``r_N``: the unknown enters only through the six commutators
    that pair it with ``r_1``.  The linear system over the ``dim**2`` unknown
    coordinates is solved by exact row reduction; the inhomogeneous part is
    the residual with the unknown set to zero.
    """
    if not r_prev:
        raise ValueError("need at least r_1 to solve for the next coefficient")
    alg = r_prev[0].algebra
    level = len(r_prev) + 1
    r1 = r_prev[0]
    r1_12 = r1.embed((1, 2), 3)
    r1_13 = r1.embed((1, 3), 3)
    r1_23 = r1.embed((2, 3), 3)

    def unknown_part(rho: LegTensor) -> LegTensor:
        return (
            commutator(rho.embed((1, 2), 3), r1_13)
            + commutator(rho.embed((1, 2), 3), r1_23)
            + commutator(r1_12, rho.embed((1, 3), 3))
            + commutator(rho.embed((1, 3), 3), r1_23)
            + commutator(r1_13, rho.embed((2, 3), 3))
            + commutator(r1_12, rho.embed((2, 3), 3))
        )

    unknowns = [
        LegTensor(alg, 2, {(a, b): Fraction(1)})
        for a in range(alg.dim)
        for b in range(alg.dim)
    ]
    images = [unknown_part(u) for u in unknowns]
    inhom = hierarchy_residual(list(r_prev) + [LegTensor(alg, 2, {})], level)

    keys = sorted(set().union(*(set(img.terms) for img in images), set(inhom.terms)))
    if not keys:
        # no constraints at all: every coefficient tensor solves the level
        return SolutionSet(
            level=level,
            prior=tuple(r_prev),
            particular=LegTensor(alg, 2, {}),
            kernel=tuple(unknowns),
        )
    rows = [[img.coefficient(key) for img in images] for key in keys]
    rhs = [-inhom.coefficient(key) for key in keys]
    particular, kernel = solve_affine(rows, rhs)

    def to_tensor(vec: Sequence[Fraction]) -> LegTensor:
        terms = {}
        idx = 0
        for a in range(alg.dim):
            for b in range(alg.dim):
                if vec[idx] != 0:
                    terms[(a, b)] = vec[idx]
                idx += 1
        return LegTensor(alg, 2, terms)

    return SolutionSet(
        level=level,
        prior=tuple(r_prev),
        particular=None if particular is None else to_tensor(particular),
        kernel=tuple(to_tensor(v) for v in kernel),
    )
