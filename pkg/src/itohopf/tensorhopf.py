"""The Itô Hopf algebra of tensors over a structure-constant algebra.

The underlying vector space is spanned by *words*: finite sequences of basis
indices, the empty word being the unit.  The product is the sticky shuffle
(quasi-shuffle): summing over all interleavings of two words in which aligned
letters may also merge via the algebra product.  The coproduct is
deconcatenation.  Together these make the tensor space a Hopf algebra whose
symmetric part is the universal enveloping algebra of the commutator Lie
algebra.

:class:`MultiTensorElt` extends this to several tensor-space legs with the
same superscript calculus as :class:`~itohopf.algebra.LegTensor`, graded by
the *joint rank* (the tuple of word lengths of a term).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from .algebra import (
    UNIT,
    AlgebraDef,
    AlgebraElt,
    LegCountError,
    LegTensor,
    _clean,
    _same_algebra,
    rat,
)

Word = tuple[int, ...]

_ONE = Fraction(1)


def sticky_shuffle(algebra: AlgebraDef, u: Word, v: Word) -> Mapping[Word, Fraction]:
    """All sticky shuffles of two basis words, as a word -> coefficient map.

    Interleavings are enumerated by the standard quasi-shuffle recursion:
    the first output letter comes from ``u``, from ``v``, or from merging
    ``u[0]·v[0]`` through the algebra product.  Results are cached per
    algebra; callers must not mutate them.
    """
    cache = algebra._ito_cache
    key = (u, v)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not u:
        result: dict[Word, Fraction] = {v: _ONE}
    elif not v:
        result = {u: _ONE}
    else:
        result = {}
        for w, c in sticky_shuffle(algebra, u[1:], v).items():
            ww = (u[0],) + w
            result[ww] = result.get(ww, Fraction(0)) + c
        for w, c in sticky_shuffle(algebra, u, v[1:]).items():
            ww = (v[0],) + w
            result[ww] = result.get(ww, Fraction(0)) + c
        merged = algebra.basis_product(u[0], v[0])
        if merged:
            tail = sticky_shuffle(algebra, u[1:], v[1:])
            for sym, d in merged.items():
                for w, c in tail.items():
                    ww = (sym,) + w
                    result[ww] = result.get(ww, Fraction(0)) + c * d
        result = _clean(result)
    cache[key] = result
    return result


@dataclass(frozen=True)
class TensorElt:
    """A finitely supported rational combination of words."""

    algebra: AlgebraDef
    terms: Mapping[Word, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "terms", _clean(dict(self.terms)))

    # -- constructors ------------------------------------------------------

    @classmethod
    def unit(cls, algebra: AlgebraDef) -> "TensorElt":
        return cls(algebra, {(): _ONE})

    @classmethod
    def from_word(cls, algebra: AlgebraDef, word: Sequence[int]) -> "TensorElt":
        return cls(algebra, {tuple(word): _ONE})

    @classmethod
    def word(cls, algebra: AlgebraDef, *names: str) -> "TensorElt":
        """The basis word with the given letter names, e.g. ``word(alg, "L", "K")``."""
        return cls.from_word(algebra, tuple(algebra.index(n) for n in names))

    @classmethod
    def from_algebra_elt(cls, x: AlgebraElt) -> "TensorElt":
        return cls(x.algebra, {(i,): c for i, c in x.terms().items()})

    def zero_like(self) -> "TensorElt":
        return TensorElt(self.algebra, {})

    def unit_like(self) -> "TensorElt":
        return TensorElt.unit(self.algebra)

    # -- linear structure --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def counit(self) -> Fraction:
        """The coefficient of the empty word."""
        return self.terms.get((), Fraction(0))

    def scale(self, factor) -> "TensorElt":
        f = rat(factor)
        if f == 0:
            return self.zero_like()
        return TensorElt(self.algebra, {k: v * f for k, v in self.terms.items()})

    def __add__(self, other: "TensorElt") -> "TensorElt":
        _same_algebra(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return TensorElt(self.algebra, out)

    def __neg__(self) -> "TensorElt":
        return self.scale(-1)

    def __sub__(self, other: "TensorElt") -> "TensorElt":
        return self + (-other)

    # -- the sticky-shuffle product -----------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TensorElt):
            return NotImplemented
        _same_algebra(self, other)
        alg = self.algebra
        out: dict[Word, Fraction] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                c = cu * cv
                for w, d in sticky_shuffle(alg, u, v).items():
                    out[w] = out.get(w, Fraction(0)) + c * d
        return TensorElt(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- grading and coproducts ---------------------------------------------

    def max_rank(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def rank_component(self, rank: int) -> "TensorElt":
        return TensorElt(
            self.algebra, {w: c for w, c in self.terms.items() if len(w) == rank}
        )

    def coproduct(self) -> "MultiTensorElt":
        """Deconcatenation: the sum of all two-part splits of each word."""
        out: dict[tuple[Word, ...], Fraction] = {}
        for w, c in self.terms.items():
            for j in range(len(w) + 1):
                key = (w[:j], w[j:])
                out[key] = out.get(key, Fraction(0)) + c
        return MultiTensorElt(self.algebra, 2, out)

    def iterated_coproduct(self, parts: int) -> "MultiTensorElt":
        """All ordered splits of each word into ``parts`` (possibly empty) pieces.

        ``parts = 1`` is the identity viewed on one leg; ``parts = 0`` returns
        the counit as a zero-leg scalar.
        """
        if parts < 0:
            raise ValueError("the number of parts must be nonnegative")
        if parts == 0:
            eps = self.counit()
            return MultiTensorElt(self.algebra, 0, {(): eps} if eps else {})
        out: dict[tuple[Word, ...], Fraction] = {}
        for w, c in self.terms.items():
            for key in _splits(w, parts):
                out[key] = out.get(key, Fraction(0)) + c
        return MultiTensorElt(self.algebra, parts, out)

    def as_multi(self) -> "MultiTensorElt":
        return MultiTensorElt(self.algebra, 1, {(w,): c for w, c in self.terms.items()})

    # -- the symmetric subspace ----------------------------------------------

    def symmetrized(self) -> "TensorElt":
        """Rank-wise average over all permutations of the letters of each word."""
        out: dict[Word, Fraction] = {}
        for w, c in self.terms.items():
            n = len(w)
            if n <= 1:
                out[w] = out.get(w, Fraction(0)) + c
                continue
            perms = list(permutations(w))
            share = c / len(perms)
            for p in perms:
                out[p] = out.get(p, Fraction(0)) + share
        return TensorElt(self.algebra, out)

    def is_symmetric(self) -> bool:
        return self == self.symmetrized()

    def sorted_items(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        names = self.algebra.basis_names
        bits = []
        for w, c in self.sorted_items():
            word = "⊗".join(names[s] for s in w) if w else "1"
            bits.append(f"{c}*({word})")
        return " + ".join(bits).replace("+ -", "- ")


def _splits(word: Word, parts: int):
    """Ordered splits of ``word`` into ``parts`` consecutive pieces."""
    if parts == 1:
        yield (word,)
        return
    for j in range(len(word) + 1):
        head = word[:j]
        for rest in _splits(word[j:], parts - 1):
            yield (head,) + rest


@dataclass(frozen=True)
class MultiTensorElt:
    """An element of the ``legs``-fold tensor power of the tensor space.

    Keys of ``terms`` are tuples of words, one per leg; the joint rank of a
    key is the tuple of its word lengths.  The product is the legwise sticky
    shuffle.  Zero legs are allowed (scalars), matching the zero-fold
    coproduct.
    """

    algebra: AlgebraDef
    legs: int
    terms: Mapping[tuple[Word, ...], Fraction]

    def __post_init__(self):
        if self.legs < 0:
            raise LegCountError("leg count must be nonnegative")
        object.__setattr__(self, "terms", _clean(dict(self.terms)))

    # -- constructors ------------------------------------------------------

    @classmethod
    def unit(cls, algebra: AlgebraDef, legs: int) -> "MultiTensorElt":
        return cls(algebra, legs, {((),) * legs: _ONE})

    @classmethod
    def from_words(
        cls, algebra: AlgebraDef, words: Sequence[Sequence[int]]
    ) -> "MultiTensorElt":
        return cls(algebra, len(words), {tuple(tuple(w) for w in words): _ONE})

    @classmethod
    def product_of(cls, factors: Sequence[TensorElt]) -> "MultiTensorElt":
        """The outer tensor product ``t1 ⊗ t2 ⊗ ...`` as a multi-leg element."""
        if not factors:
            raise LegCountError("need at least one factor")
        alg = factors[0].algebra
        keys: list[tuple[tuple[Word, ...], Fraction]] = [((), _ONE)]
        for t in factors:
            _same_algebra(factors[0], t)
            keys = [
                (key + (w,), c * d)
                for key, c in keys
                for w, d in t.terms.items()
            ]
        out: dict[tuple[Word, ...], Fraction] = {}
        for key, c in keys:
            out[key] = out.get(key, Fraction(0)) + c
        return cls(alg, len(factors), out)

    def zero_like(self) -> "MultiTensorElt":
        return MultiTensorElt(self.algebra, self.legs, {})

    def unit_like(self) -> "MultiTensorElt":
        return MultiTensorElt.unit(self.algebra, self.legs)

    # -- linear structure --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: Sequence[Sequence[int]]) -> Fraction:
        return self.terms.get(tuple(tuple(w) for w in key), Fraction(0))

    def scale(self, factor) -> "MultiTensorElt":
        f = rat(factor)
        if f == 0:
            return self.zero_like()
        return MultiTensorElt(
            self.algebra, self.legs, {k: v * f for k, v in self.terms.items()}
        )

    def __add__(self, other: "MultiTensorElt") -> "MultiTensorElt":
        _same_algebra(self, other)
        if self.legs != other.legs:
            raise LegCountError(f"leg counts differ: {self.legs} vs {other.legs}")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return MultiTensorElt(self.algebra, self.legs, out)

    def __neg__(self) -> "MultiTensorElt":
        return self.scale(-1)

    def __sub__(self, other: "MultiTensorElt") -> "MultiTensorElt":
        return self + (-other)

    # -- legwise sticky-shuffle product --------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiTensorElt):
            return NotImplemented
        _same_algebra(self, other)
        if self.legs != other.legs:
            raise LegCountError(f"leg counts differ: {self.legs} vs {other.legs}")
        alg = self.algebra
        out: dict[tuple[Word, ...], Fraction] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                partial: list[tuple[tuple[Word, ...], Fraction]] = [((), va * vb)]
                for u, v in zip(ka, kb):
                    if not u:
                        partial = [(key + (v,), c) for key, c in partial]
                        continue
                    if not v:
                        partial = [(key + (u,), c) for key, c in partial]
                        continue
                    sh = sticky_shuffle(alg, u, v)
                    partial = [
                        (key + (w,), c * d)
                        for key, c in partial
                        for w, d in sh.items()
                    ]
                for key, c in partial:
                    out[key] = out.get(key, Fraction(0)) + c
        return MultiTensorElt(alg, self.legs, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- joint-rank grading ---------------------------------------------------

    def joint_ranks(self) -> set[tuple[int, ...]]:
        return {tuple(len(w) for w in key) for key in self.terms}

    def rank_project(self, ranks: Sequence[int]) -> "MultiTensorElt":
        """The component whose joint rank equals ``ranks`` exactly."""
        ranks = tuple(ranks)
        if len(ranks) != self.legs:
            raise LegCountError("rank tuple length must equal the leg count")
        return MultiTensorElt(
            self.algebra,
            self.legs,
            {
                k: v
                for k, v in self.terms.items()
                if tuple(len(w) for w in k) == ranks
            },
        )

    def max_rank(self) -> int:
        return max((max((len(w) for w in k), default=0) for k in self.terms), default=0)

    # -- leg calculus ---------------------------------------------------------

    def embed(self, positions: Sequence[int], legs: int) -> "MultiTensorElt":
        """Place this element on the named legs (1-based), empty words elsewhere."""
        positions = tuple(positions)
        if len(positions) != self.legs:
            raise LegCountError(f"need {self.legs} positions, got {len(positions)}")
        if any(not 1 <= p <= legs for p in positions):
            raise LegCountError(f"positions {positions} out of range 1..{legs}")
        if any(a >= b for a, b in zip(positions, positions[1:])):
            raise LegCountError(f"positions {positions} must be strictly increasing")
        slot = {p - 1: i for i, p in enumerate(positions)}
        out: dict[tuple[Word, ...], Fraction] = {}
        for key, v in self.terms.items():
            big = tuple(key[slot[i]] if i in slot else () for i in range(legs))
            out[big] = out.get(big, Fraction(0)) + v
        return MultiTensorElt(self.algebra, legs, out)

    def coproduct_on_leg(self, leg: int, parts: int) -> "MultiTensorElt":
        """Apply the ``parts``-fold deconcatenation coproduct to one leg.

        The new legs occupy positions ``leg .. leg+parts-1``; the others are
        untouched.  ``parts = 1`` is the identity.
        """
        if not 1 <= leg <= self.legs:
            raise LegCountError(f"leg {leg} out of range 1..{self.legs}")
        if parts < 1:
            raise ValueError("parts must be at least 1")
        if parts == 1:
            return self
        i = leg - 1
        out: dict[tuple[Word, ...], Fraction] = {}
        for key, c in self.terms.items():
            head, w, tail = key[:i], key[i], key[i + 1 :]
            for piece in _splits(w, parts):
                big = head + piece + tail
                out[big] = out.get(big, Fraction(0)) + c
        return MultiTensorElt(self.algebra, self.legs + parts - 1, out)

    def apply_counit(self, leg: int) -> "MultiTensorElt":
        """Apply the counit to one leg, dropping it."""
        if not 1 <= leg <= self.legs:
            raise LegCountError(f"leg {leg} out of range 1..{self.legs}")
        i = leg - 1
        out: dict[tuple[Word, ...], Fraction] = {}
        for key, c in self.terms.items():
            if key[i]:
                continue
            big = key[:i] + key[i + 1 :]
            out[big] = out.get(big, Fraction(0)) + c
        return MultiTensorElt(self.algebra, self.legs - 1, out)

    def flip(self) -> "MultiTensorElt":
        """Exchange the two legs of a two-leg element."""
        if self.legs != 2:
            raise LegCountError("flip is defined for two-leg elements")
        return MultiTensorElt(
            self.algebra, 2, {(b, a): v for (a, b), v in self.terms.items()}
        )

    def as_tensor(self) -> TensorElt:
        """View a one-leg element as a plain tensor."""
        if self.legs != 1:
            raise LegCountError("only one-leg elements convert to a tensor")
        return TensorElt(self.algebra, {key[0]: v for key, v in self.terms.items()})

    def sorted_items(self) -> list[tuple[tuple[Word, ...], Fraction]]:
        return sorted(
            self.terms.items(),
            key=lambda kv: (tuple(len(w) for w in kv[0]), kv[0]),
        )

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        names = self.algebra.basis_names
        bits = []
        for key, c in self.sorted_items():
            legs = " | ".join(
                "⊗".join(names[s] for s in w) if w else "1" for w in key
            )
            bits.append(f"{c}*({legs})")
        return " + ".join(bits).replace("+ -", "- ")


def lift_leg_tensor(x: LegTensor) -> MultiTensorElt:
    """Inject a leg tensor into the multi-tensor space.

    Unit legs map to empty words, basis legs to one-letter words.  This is
    the linear embedding of the p-fold unitalisation power as the rank
    (<=1, ..., <=1) part of the p-fold tensor-space power.
    """
    out: dict[tuple[Word, ...], Fraction] = {}
    for key, v in x.terms.items():
        big = tuple(() if s == UNIT else (s,) for s in key)
        out[big] = v
    return MultiTensorElt(x.algebra, x.legs, out)


def pure_ito_part(x: MultiTensorElt) -> LegTensor:
    """Project onto the terms whose legs all have rank at most one.

    This is the left inverse of :func:`lift_leg_tensor`: word lengths never
    decrease under the sticky shuffle, so this projection intertwines the
    multi-tensor product with the legwise unitalisation product ("pure Itô"
    terms are the only ones that can contribute at the bottom rank).
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for key, v in x.terms.items():
        if any(len(w) > 1 for w in key):
            continue
        small = tuple(UNIT if not w else w[0] for w in key)
        out[small] = out.get(small, Fraction(0)) + v
    return LegTensor(x.algebra, x.legs, out)
