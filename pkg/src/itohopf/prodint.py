"""Directed product integrals as truncated series.

A *driving element* is a series with zero constant term whose coefficients
pair an algebra-valued part (in any unital algebra ``A``) with a generator
letter of the base algebra: an element of ``h(A ⊗ L)[[h]]`` or
``h(L ⊗ A)[[h]]`` depending on which side the algebra leg sits.

The forward product integral is the series ``1 + sum_n (ordered n-fold
products)``: term ``n`` places the ``n`` generator letters as a rank-``n``
word on a tensor-space leg while the matching algebra parts multiply in
ascending slot order; the backward integral multiplies them in descending
slot order.  Decapitated integrals omit the leading unit (and therefore make
sense for a nonunital ``A``); they have zero constant term, so they qualify
as driving elements themselves.

Double product integrals arise by nesting: the inner decapitated integral
over the base algebra produces a driving element whose algebra side is the
tensor space itself (with the sticky-shuffle product), and the outer integral
over that algebra yields an element of the two-leg tensor space.  Each
orientation has two such nestings (inner-first-leg or inner-second-leg);
they agree, and :func:`double_fb` / :func:`double_bf` verify this agreement
by default.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal, Mapping

from .algebra import UNIT, AlgebraDef, AlgebraElt, LegTensor, rat
from .hseries import HSeries
from .tensorhopf import MultiTensorElt, TensorElt, Word

Side = Literal["left", "right"]


def _is_zero(value: Any) -> bool:
    return value.is_zero() if hasattr(value, "is_zero") else value == 0


@dataclass(frozen=True)
class MixedTensor:
    """A sum of (algebra part ⊗ generator letter) terms.

    ``parts`` maps a generator basis index to the algebra-valued coefficient
    standing on the other leg; ``algebra_side`` records which leg the algebra
    part occupies.
    """

    algebra: AlgebraDef
    algebra_side: Side
    parts: Mapping[int, Any]

    def __post_init__(self):
        object.__setattr__(
            self, "parts", {g: a for g, a in self.parts.items() if not _is_zero(a)}
        )

    def is_zero(self) -> bool:
        return not self.parts

    def zero_like(self) -> "MixedTensor":
        return MixedTensor(self.algebra, self.algebra_side, {})

    def scale(self, factor) -> "MixedTensor":
        f = rat(factor)
        return MixedTensor(
            self.algebra, self.algebra_side, {g: a * f for g, a in self.parts.items()}
        )

    def __add__(self, other: "MixedTensor") -> "MixedTensor":
        if self.algebra_side != other.algebra_side:
            raise ValueError("cannot add mixed tensors with different algebra sides")
        out = dict(self.parts)
        for g, a in other.parts.items():
            out[g] = out[g] + a if g in out else a
        return MixedTensor(self.algebra, self.algebra_side, out)

    def __neg__(self) -> "MixedTensor":
        return self.scale(-1)

    def __sub__(self, other: "MixedTensor") -> "MixedTensor":
        return self + (-other)


@dataclass(frozen=True)
class HalfTensor:
    """A sum of (algebra part ⊗ tensor-space word) terms.

    The value space of product integrals: ``parts`` maps a word on the
    tensor-space leg to the algebra-valued coefficient on the other leg.
    """

    algebra: AlgebraDef
    algebra_side: Side
    parts: Mapping[Word, Any]

    def __post_init__(self):
        object.__setattr__(
            self, "parts", {w: a for w, a in self.parts.items() if not _is_zero(a)}
        )

    def is_zero(self) -> bool:
        return not self.parts

    def zero_like(self) -> "HalfTensor":
        return HalfTensor(self.algebra, self.algebra_side, {})

    def scale(self, factor) -> "HalfTensor":
        f = rat(factor)
        return HalfTensor(
            self.algebra, self.algebra_side, {w: a * f for w, a in self.parts.items()}
        )

    def __add__(self, other: "HalfTensor") -> "HalfTensor":
        if self.algebra_side != other.algebra_side:
            raise ValueError("cannot add half tensors with different algebra sides")
        out = dict(self.parts)
        for w, a in other.parts.items():
            out[w] = out[w] + a if w in out else a
        return HalfTensor(self.algebra, self.algebra_side, out)

    def __neg__(self) -> "HalfTensor":
        return self.scale(-1)

    def __sub__(self, other: "HalfTensor") -> "HalfTensor":
        return self + (-other)

    def word_coefficient(self, word: Word) -> Any:
        """The algebra-valued coefficient of a word (None if absent)."""
        return self.parts.get(tuple(word))

    def counit_on_words(self) -> Any:
        """Apply the counit to the word leg: the coefficient of the empty word."""
        return self.parts.get(())


def driving_from_leg_pairs(
    r: HSeries, algebra_side: Side
) -> HSeries:
    """Read a two-leg tensor series as a driving element over the base algebra.

    The leg named by ``algebra_side`` supplies algebra-valued parts (as
    :class:`AlgebraElt`), the other leg the generator letters.  Every
    coefficient must be free of unit legs (i.e. lie in ``L ⊗ L``).
    """
    out = []
    for lt in r.coeffs:
        if not isinstance(lt, LegTensor) or lt.legs != 2:
            raise TypeError("expected a series of two-leg tensors")
        parts: dict[int, AlgebraElt] = {}
        for (a, b), c in lt.terms.items():
            if a == UNIT or b == UNIT:
                raise ValueError("driving coefficients must have no unit legs")
            g, vec = (a, b) if algebra_side == "right" else (b, a)
            coeffs = [Fraction(0)] * lt.algebra.dim
            coeffs[vec] = c
            elt = AlgebraElt(lt.algebra, tuple(coeffs))
            parts[g] = parts[g] + elt if g in parts else elt
        out.append(MixedTensor(lt.algebra, algebra_side, parts))
    return HSeries(tuple(out))


def _ordered_terms(
    l: HSeries, ascending: bool
) -> dict[int, dict[Word, Any]]:
    """Expand the ordered product terms of a driving element.

    Returns ``{h_order: {generator_word: algebra_part}}`` for all word ranks
    ``n >= 1``; each driving factor carries at least one power of the
    deformation parameter, so ``n`` never exceeds the truncation order.
    """
    if not l.coeffs[0].is_zero():
        raise ValueError("a driving element must have zero constant term")
    order = l.order
    letters = [
        (k, g, a)
        for k in range(1, order + 1)
        for g, a in l.coeffs[k].parts.items()
    ]
    out: dict[int, dict[Word, Any]] = {}
    frontier: dict[tuple[int, Word], Any] = {}
    for k, g, a in letters:
        key = (k, (g,))
        frontier[key] = frontier[key] + a if key in frontier else a
    while frontier:
        for (h, word), acc in frontier.items():
            bucket = out.setdefault(h, {})
            bucket[word] = bucket[word] + acc if word in bucket else acc
        nxt: dict[tuple[int, Word], Any] = {}
        for (h, word), acc in frontier.items():
            for k, g, a in letters:
                if h + k > order:
                    continue
                prod = acc * a if ascending else a * acc
                if _is_zero(prod):
                    continue
                key = (h + k, word + (g,))
                nxt[key] = nxt[key] + prod if key in nxt else prod
        frontier = nxt
    return out


def _integral(
    l: HSeries, ascending: bool, include_unit: bool, unit: Any
) -> HSeries:
    sample = l.coeffs[0]
    side = sample.algebra_side
    if include_unit and unit is None:
        for c in l.coeffs:
            for a in c.parts.values():
                unit = a.unit_like()
                break
            if unit is not None:
                break
        if unit is None:
            raise ValueError("cannot infer the algebra unit from a zero driving element")
    terms = _ordered_terms(l, ascending)
    coeffs = []
    for h in range(l.order + 1):
        parts = dict(terms.get(h, {}))
        if h == 0 and include_unit:
            parts[()] = unit
        coeffs.append(HalfTensor(sample.algebra, side, parts))
    return HSeries(tuple(coeffs))


def single_forward(l: HSeries, unit: Any = None) -> HSeries:
    """The forward product integral of a driving element (unit term included).

    Algebra parts multiply in ascending slot order.  Applying the counit to
    the word leg recovers the unit of ``A`` (the defining initial condition).
    """
    return _integral(l, ascending=True, include_unit=True, unit=unit)


def single_backward(l: HSeries, unit: Any = None) -> HSeries:
    """The backward product integral: algebra parts in descending slot order."""
    return _integral(l, ascending=False, include_unit=True, unit=unit)


def decapitated_forward(l: HSeries) -> HSeries:
    """The forward integral without its unit term (``A`` may be nonunital)."""
    return _integral(l, ascending=True, include_unit=False, unit=None)


def decapitated_backward(l: HSeries) -> HSeries:
    """The backward integral without its unit term (``A`` may be nonunital)."""
    return _integral(l, ascending=False, include_unit=False, unit=None)


def decapitate(y: HSeries) -> HSeries:
    """Drop the initial unit term (the whole order-0 coefficient)."""
    return HSeries((y.coeffs[0].zero_like(),) + y.coeffs[1:])


def _inner_to_outer(inner: HSeries) -> HSeries:
    """Re-read an inner decapitated integral as a driving element for the outer one.

    The word leg becomes the algebra side (the tensor space with the sticky
    shuffle); the base-algebra values become generator letters.
    """
    out = []
    for ht in inner.coeffs:
        side: Side = "left" if ht.algebra_side == "right" else "right"
        parts: dict[int, TensorElt] = {}
        for word, elt in ht.parts.items():
            for g, c in elt.terms().items():
                t = TensorElt(ht.algebra, {word: c})
                parts[g] = parts[g] + t if g in parts else t
        out.append(MixedTensor(ht.algebra, side, parts))
    return HSeries(tuple(out))


def _assemble(outer: HSeries) -> HSeries:
    """Collect an outer integral over the tensor space into two-leg tensors."""
    coeffs = []
    for ht in outer.coeffs:
        alg = ht.algebra
        terms: dict[tuple[Word, Word], Fraction] = {}
        for word_gen, tens in ht.parts.items():
            for word_alg, c in tens.terms.items():
                key = (
                    (word_alg, word_gen)
                    if ht.algebra_side == "left"
                    else (word_gen, word_alg)
                )
                terms[key] = terms.get(key, Fraction(0)) + c
        coeffs.append(MultiTensorElt(alg, 2, terms))
    return HSeries(tuple(coeffs))


@dataclass(frozen=True)
class DoubleProduct:
    """A double product integral: a two-leg tensor series plus its orientation."""

    orientation: Literal["fb", "bf"]
    series: HSeries

    @property
    def order(self) -> int:
        return self.series.order

    def rank_component(self, m: int, n: int) -> HSeries:
        return HSeries(tuple(c.rank_project((m, n)) for c in self.series.coeffs))


def _double(
    r: HSeries,
    orientation: Literal["fb", "bf"],
    construction: Literal["first", "second", "both"],
) -> HSeries:
    sample = r.coeffs[0]
    unit = TensorElt.unit(sample.algebra)
    # Each orientation admits two nestings; "first" builds words from the
    # first legs inside, "second" from the second legs.  The direction
    # assignment is pinned by the quasitriangularity identities: "fb" is the
    # orientation with (Δ⊗id)R = R^{13}R^{23} and (id⊗Δ)R = R^{13}R^{12},
    # "bf" its mirror satisfying the reversed identities.
    plans = {
        ("fb", "first"): ("right", True, False),
        ("fb", "second"): ("left", False, True),
        ("bf", "first"): ("right", False, True),
        ("bf", "second"): ("left", True, False),
    }

    def run(which: str) -> HSeries:
        side, inner_asc, outer_asc = plans[(orientation, which)]
        inner = _integral(
            driving_from_leg_pairs(r, side), inner_asc, include_unit=False, unit=None
        )
        outer = _integral(
            _inner_to_outer(inner), outer_asc, include_unit=True, unit=unit
        )
        return _assemble(outer)

    if construction == "both":
        first = run("first")
        second = run("second")
        if first != second:
            raise AssertionError(
                "the two iterated constructions of the double product disagree; "
                "this indicates an ordering-convention bug"
            )
        return first
    return run(construction)


def double_fb(
    r: HSeries, construction: Literal["first", "second", "both"] = "both"
) -> DoubleProduct:
    """The quasitriangular-orientation double product integral of ``r``.

    ``r`` is a two-leg tensor series with zero constant term, all legs in the
    base algebra.  The result is ``1 + r + (terms of joint rank (m, n) with
    m, n >= 1 and max > 1)`` and satisfies the quasitriangularity identities
    ``(Δ⊗id)R = R^{13}R^{23}`` and ``(id⊗Δ)R = R^{13}R^{12}``.  With
    ``construction="both"`` (the default) the two equivalent iterated
    constructions are computed and compared exactly.
    """
    if not r.coeffs[0].is_zero():
        raise ValueError("the double product needs a vanishing constant term")
    return DoubleProduct("fb", _double(r, "fb", construction))


def double_bf(
    r: HSeries, construction: Literal["first", "second", "both"] = "both"
) -> DoubleProduct:
    """The mirror-orientation double product integral of ``r``.

    Same expansion shape as :func:`double_fb` but satisfying the reversed
    quasitriangularity identities; the inverse of ``double_fb(r)`` is
    ``double_bf`` of the quasi-inverse of ``r``.
    """
    if not r.coeffs[0].is_zero():
        raise ValueError("the double product needs a vanishing constant term")
    return DoubleProduct("bf", _double(r, "bf", construction))
