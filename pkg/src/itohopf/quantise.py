"""The quantisation pipeline.

From a two-leg tensor series ``r`` with zero constant term this builds the
double product integral ``R`` and its inverse (via the quasi-inverse of
``r``), checks the quasitriangularity identities, conjugates the
deconcatenation coproduct into the deformed coproduct ``R Δ(·) R⁻¹``, verifies
its coassociativity, and extracts the semiclassical cobracket.

Every deformed-coproduct component is computed along two independent routes:
the direct triple product in the two-leg tensor space, and the
grid-projection method that works entirely with unitalisation legs ("pure
Itô" terms) and picks out one joint rank at a time.  Their agreement is the
strongest available guard against leg-ordering mistakes and is asserted by
default.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraDef, AlgebraElt, LegTensor, commutator
from .hseries import HSeries, invert, quasi_inverse, unit_series
from .prodint import DoubleProduct, double_bf, double_fb
from .tensorhopf import MultiTensorElt, TensorElt, Word, pure_ito_part


@dataclass(frozen=True)
class CheckResult:
    """A named pass/fail outcome with an optional human-readable detail."""

    name: str
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class QuantisationContext:
    """An algebra, a driving series, and the cached double products.

    Built by :func:`build_context`, which verifies that the two cached series
    are mutually inverse and agree with order-by-order inversion.
    """

    algebra: AlgebraDef
    r: HSeries
    r_prime: HSeries
    forward_backward: DoubleProduct
    backward_forward: DoubleProduct

    @property
    def order(self) -> int:
        return self.r.order

    @property
    def R(self) -> HSeries:
        return self.forward_backward.series

    @property
    def R_inv(self) -> HSeries:
        return self.backward_forward.series

    def unitalised_r(self) -> HSeries:
        """The series ``1 + r`` over two unitalisation legs."""
        return self.r + unit_series(LegTensor.unit(self.algebra, 2), self.order)

    def unitalised_r_prime(self) -> HSeries:
        return self.r_prime + unit_series(LegTensor.unit(self.algebra, 2), self.order)


def build_context(r: HSeries) -> QuantisationContext:
    """Build and verify the quantisation context for a driving series.

    ``r`` must be a series of two-leg tensors with all legs in the base
    algebra and zero constant term.  The double product of ``r`` and the
    reverse-oriented double product of its quasi-inverse are computed (each
    by both iterated constructions), then checked to be mutually inverse and
    equal to the order-by-order inverse; any failure raises, since it would
    signal an internal convention bug.
    """
    first = r.coeffs[0]
    if not isinstance(first, LegTensor) or first.legs != 2:
        raise TypeError("expected a series of two-leg tensors over the base algebra")
    if not first.is_zero():
        raise ValueError("the driving series must have zero constant term")
    algebra = first.algebra
    r_prime = quasi_inverse(r)
    fb = double_fb(r)
    bf = double_bf(r_prime)
    one = unit_series(MultiTensorElt.unit(algebra, 2), r.order)
    if fb.series * bf.series != one or bf.series * fb.series != one:
        raise AssertionError(
            "double products of r and its quasi-inverse are not mutually inverse"
        )
    if invert(fb.series) != bf.series:
        raise AssertionError(
            "reverse-oriented double product differs from the series inverse"
        )
    return QuantisationContext(
        algebra=algebra,
        r=r,
        r_prime=r_prime,
        forward_backward=fb,
        backward_forward=bf,
    )


# -- quasitriangularity ---------------------------------------------------------


def _coproduct_on_series_leg(x: HSeries, leg: int, parts: int) -> HSeries:
    return HSeries(tuple(c.coproduct_on_leg(leg, parts) for c in x.coeffs))


def _embed_series(x: HSeries, positions, legs: int) -> HSeries:
    return HSeries(tuple(c.embed(positions, legs) for c in x.coeffs))


def coproduct_grid(ctx: QuantisationContext, m: int, n: int) -> HSeries:
    """The grid product ``prod_{(j,k)} R^{j, m+n+1-k}`` on ``m+n`` tensor-space legs."""
    R = ctx.R
    legs = m + n
    acc = unit_series(MultiTensorElt.unit(ctx.algebra, legs), R.order)
    for j in range(1, m + 1):
        for k in range(1, n + 1):
            acc = acc * _embed_series(R, (j, m + n + 1 - k), legs)
    return acc


def quasitriangularity_check(
    ctx: QuantisationContext, grid_max: int = 3
) -> list[CheckResult]:
    """Check the quasitriangularity identities of the cached double products.

    Covers ``(Δ⊗id)R = R^{13}R^{23}`` and ``(id⊗Δ)R = R^{13}R^{12}``, the
    reversed identities for the inverse, and the iterated-coproduct grid
    identity ``(Δ^{(m)}⊗Δ^{(n)})R = prod R^{j,m+n+1-k}`` for
    ``m, n <= grid_max``.
    """
    R, Rinv = ctx.R, ctx.R_inv
    results = []

    def record(name: str, lhs: HSeries, rhs: HSeries) -> None:
        ok = lhs == rhs
        results.append(
            CheckResult(name, ok, "" if ok else "series differ")
        )

    r13 = _embed_series(R, (1, 3), 3)
    record("coproduct-left", _coproduct_on_series_leg(R, 1, 2), r13 * _embed_series(R, (2, 3), 3))
    record("coproduct-right", _coproduct_on_series_leg(R, 2, 2), r13 * _embed_series(R, (1, 2), 3))
    i13 = _embed_series(Rinv, (1, 3), 3)
    record(
        "coproduct-left-inverse",
        _coproduct_on_series_leg(Rinv, 1, 2),
        _embed_series(Rinv, (2, 3), 3) * i13,
    )
    record(
        "coproduct-right-inverse",
        _coproduct_on_series_leg(Rinv, 2, 2),
        _embed_series(Rinv, (1, 2), 3) * i13,
    )
    for m in range(1, grid_max + 1):
        for n in range(1, grid_max + 1):
            lhs = _coproduct_on_series_leg(_coproduct_on_series_leg(R, 1, m), m + 1, n)
            record(f"coproduct-grid-{m}-{n}", lhs, coproduct_grid(ctx, m, n))
    return results


# -- the deformed coproduct -------------------------------------------------------


@dataclass(frozen=True)
class DeformedCoproduct:
    """The value of the deformed coproduct on one tensor, with a rank view."""

    context: QuantisationContext
    argument: TensorElt
    series: HSeries

    def component(self, m: int, n: int) -> HSeries:
        """The joint-rank ``(m, n)`` component, as a series."""
        return HSeries(tuple(c.rank_project((m, n)) for c in self.series.coeffs))

    def support_ranks(self) -> list[tuple[int, int]]:
        ranks = set()
        for c in self.series.coeffs:
            ranks.update(c.joint_ranks())
        return sorted(ranks)  # type: ignore[arg-type]


def _prune_units(x: HSeries, order: int, coverage: frozenset) -> HSeries:
    """Drop terms that can no longer reach the all-legs-occupied component.

    A driving factor occupies at most two unit legs per power of the
    deformation parameter, so a term at order ``q`` with more than
    ``2*(order-q)`` unit legs cannot contribute to the final projection;
    neither can a term with a unit leg outside the positions the remaining
    factors touch (``coverage``, 0-based).
    """
    from .algebra import UNIT

    coeffs = []
    for q, lt in enumerate(x.coeffs):
        budget = 2 * (order - q)
        kept = {}
        for k, v in lt.terms.items():
            units = [i for i, s in enumerate(k) if s == UNIT]
            if len(units) <= budget and all(i in coverage for i in units):
                kept[k] = v
        coeffs.append(LegTensor(lt.algebra, lt.legs, kept))
    return HSeries(tuple(coeffs))


def projection_component(
    ctx: QuantisationContext, alpha: TensorElt, m: int, n: int
) -> HSeries:
    """One joint-rank component of the deformed coproduct, by grid projection.

    Works entirely over ``m+n`` unitalisation legs: multiplies the grid of
    ``1+r`` factors, the single-letter part of the ``(m+n)``-fold coproduct
    of ``alpha``, and the reversed grid of ``1+r'`` factors, then keeps the
    terms with every leg in the base algebra.  Word lengths never decrease
    under the sticky shuffle, so these "pure Itô" terms are exactly what the
    bottom joint rank of the full product receives.
    """
    order = ctx.order
    if m == 0 and n == 0:
        scalar = alpha.counit()
        unit2 = MultiTensorElt.unit(ctx.algebra, 2)
        return unit_series(unit2.scale(scalar) if scalar else unit2.zero_like(), order)
    legs = m + n
    rho = ctx.unitalised_r()
    rho_prime = ctx.unitalised_r_prime()
    mid = pure_ito_part(alpha.iterated_coproduct(legs))
    # anchor the accumulation on the sparse middle factor: right-associate
    # the left grid, left-associate the right grid, pruning as we go
    left_pairs = [
        (j, m + n + 1 - k) for j in range(1, m + 1) for k in range(1, n + 1)
    ]
    right_pairs = [
        (m + 1 - j, m + k) for j in range(1, m + 1) for k in range(1, n + 1)
    ]
    schedule = [("L",) + p for p in reversed(left_pairs)] + [
        ("R",) + p for p in right_pairs
    ]
    suffix_cover = []
    cover: frozenset = frozenset()
    for step in reversed(schedule):
        suffix_cover.append(cover)
        cover = cover | {step[1] - 1, step[2] - 1}
    suffix_cover.reverse()
    acc = _prune_units(HSeries.constant(mid, order), order, cover)
    for (side, j, k), remaining in zip(schedule, suffix_cover):
        if acc.is_zero():
            break
        if side == "L":
            acc = _embed_series(rho, (j, k), legs) * acc
        else:
            acc = acc * _embed_series(rho_prime, (j, k), legs)
        acc = _prune_units(acc, order, remaining)
    coeffs = []
    for lt in acc.coeffs:
        body = lt.body_part()
        terms: dict[tuple[Word, Word], Fraction] = {}
        for key, c in body.terms.items():
            word = tuple(key)
            terms[(word[:m], word[m:])] = c
        coeffs.append(MultiTensorElt(ctx.algebra, 2, terms))
    return HSeries(tuple(coeffs))


def deformed_coproduct(
    ctx: QuantisationContext, alpha: TensorElt, cross_check: bool = True
) -> DeformedCoproduct:
    """Conjugate the coproduct of ``alpha`` by the cached double products.

    With ``cross_check`` (the default) every joint-rank component that could
    possibly be supported is recomputed by :func:`projection_component`; a
    mismatch raises, as it would signal a leg-convention bug.  A warning is
    emitted when ``alpha`` is not a symmetric tensor (the deformation's
    natural domain), but the computation proceeds.
    """
    if not alpha.is_symmetric():
        warnings.warn(
            "deformed coproduct applied outside the symmetric subspace",
            stacklevel=2,
        )
    delta = HSeries.constant(alpha.coproduct(), ctx.order)
    series = ctx.R * delta * ctx.R_inv
    value = DeformedCoproduct(context=ctx, argument=alpha, series=series)
    if cross_check:
        # each power of the deformation parameter adds at most two to the
        # total rank, so (m, n) with m+n beyond 2*order + rank is empty
        bound = ctx.order + alpha.max_rank()
        total = 2 * ctx.order + alpha.max_rank()
        seen = set(value.support_ranks())
        for m in range(bound + 1):
            for n in range(bound + 1):
                if m + n > total:
                    continue
                direct = value.component(m, n)
                projected = projection_component(ctx, alpha, m, n)
                if direct != projected:
                    raise AssertionError(
                        f"deformed coproduct components disagree at joint rank ({m}, {n})"
                    )
                seen.discard((m, n))
        if seen:
            raise AssertionError(f"support outside the swept rank range: {sorted(seen)}")
    return value


def counit_side(series: HSeries, leg: int) -> HSeries:
    """Apply the counit to one leg of a two-leg series, yielding a tensor series."""
    return HSeries(tuple(c.apply_counit(leg).as_tensor() for c in series.coeffs))


def coassociativity_check(ctx: QuantisationContext, alpha: TensorElt) -> CheckResult:
    """Compare the two ways of iterating the deformed coproduct on ``alpha``.

    The deformed coproduct of a two-leg value applies the plain coproduct to
    the appropriate leg and conjugates by the double product embedded on the
    corresponding leg pair; the check asserts the left and right iterates
    agree at the truncation order.
    """
    d1 = deformed_coproduct(ctx, alpha, cross_check=False).series
    r12 = _embed_series(ctx.R, (1, 2), 3)
    r12_inv = _embed_series(ctx.R_inv, (1, 2), 3)
    r23 = _embed_series(ctx.R, (2, 3), 3)
    r23_inv = _embed_series(ctx.R_inv, (2, 3), 3)
    left = r12 * _coproduct_on_series_leg(d1, 1, 2) * r12_inv
    right = r23 * _coproduct_on_series_leg(d1, 2, 2) * r23_inv
    ok = left == right
    return CheckResult("coassociativity", ok, "" if ok else "iterates differ")


# -- the semiclassical cobracket ----------------------------------------------------


def cobracket_closed_form(ctx: QuantisationContext, x: AlgebraElt) -> LegTensor:
    """``[r_1 - flip(r_1), x⊗1 + 1⊗x]`` on two unitalisation legs."""
    r1 = ctx.r.coeffs[1] if ctx.order >= 1 else LegTensor(ctx.algebra, 2, {})
    skew = r1 - r1.flip()
    spread = x.embedded(1, 2) + x.embedded(2, 2)
    return commutator(skew, spread)


def cobracket(ctx: QuantisationContext, x: AlgebraElt) -> LegTensor:
    """The semiclassical cobracket of a basis-space element.

    Extracts the first-order coefficient of the deformed coproduct minus its
    flip, restricted to joint rank ``(1, 1)``, and asserts that it matches
    the closed form :func:`cobracket_closed_form` before returning it.
    """
    if ctx.order < 1:
        raise ValueError("need truncation order at least 1 to extract the cobracket")
    dc = deformed_coproduct(
        ctx, TensorElt.from_algebra_elt(x), cross_check=False
    ).series
    flipped = HSeries(tuple(c.flip() for c in dc.coeffs))
    diff = (dc - flipped).coeffs[1].rank_project((1, 1))
    extracted = LegTensor(
        ctx.algebra,
        2,
        {(a[0], b[0]): c for (a, b), c in diff.terms.items()},
    )
    closed = cobracket_closed_form(ctx, x)
    if extracted != closed:
        raise AssertionError(
            "cobracket extraction disagrees with its closed form; convention bug"
        )
    return extracted
