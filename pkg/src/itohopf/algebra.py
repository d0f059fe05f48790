"""Exact structure-constant algebras and multi-leg tensors over their unitalisation.

A finite-dimensional, not necessarily unital, associative algebra is specified
by rational structure constants on a chosen basis.  On top of that this module
provides exact arithmetic for

* elements of the algebra itself (:class:`AlgebraElt`),
* elements of the unitalisation, i.e. the algebra with a unit adjoined
  (:class:`UnitalElt`),
* "leg tensors" (:class:`LegTensor`): elements of the p-fold tensor power of
  the unitalisation, with embeddings that place a tensor on selected legs
  (the familiar ``r^{j,k}`` superscript calculus), componentwise products,
  commutators, and the two-leg flip.

Every coefficient is a ``fractions.Fraction``; nothing here ever rounds.
All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

#: Leg symbol representing the adjoined unit of the unitalisation.
UNIT = -1


class AlgebraMismatchError(ValueError):
    """Raised when two values over different algebras are combined."""


class LegCountError(ValueError):
    """Raised when leg counts of multi-leg tensors do not match."""


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, ``Fraction`` instances and strings such as ``"-3/7"``.
    Floats are rejected: this library is exact by contract.
    """
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not allowed; use Fraction or 'p/q'")
    return Fraction(value)


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if v != 0}


class AlgebraDef:
    """A finite-dimensional associative algebra given by structure constants.

    ``table[(i, j)]`` maps a basis index ``k`` to the coefficient of ``e_k``
    in the product ``e_i e_j``; absent pairs multiply to zero.  Basis indices
    are 0-based internally (file formats and reports are 1-based).

    Associativity is *not* assumed at construction; call
    :meth:`associativity_failures` (or :meth:`require_associative`) to check
    it explicitly.
    """

    __slots__ = ("dim", "basis_names", "_table", "_name_index", "_ito_cache")

    def __init__(
        self,
        basis_names: Sequence[str],
        table: Mapping[tuple[int, int], Mapping[int, Fraction]],
    ):
        names = tuple(basis_names)
        if len(set(names)) != len(names) or not names:
            raise ValueError("basis names must be nonempty and distinct")
        dim = len(names)
        clean_table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), combo in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"structure-constant pair ({i}, {j}) out of range")
            entry = {}
            for k, c in combo.items():
                if not 0 <= k < dim:
                    raise ValueError(f"structure-constant target {k} out of range")
                c = rat(c)
                if c != 0:
                    entry[k] = c
            if entry:
                clean_table[(i, j)] = entry
        self.dim = dim
        self.basis_names = names
        self._table = clean_table
        self._name_index = {name: i for i, name in enumerate(names)}
        # cache of sticky-shuffle expansions, shared by the tensor algebra
        self._ito_cache: dict = {}

    @classmethod
    def from_structure(
        cls,
        basis_names: Sequence[str],
        products: Mapping[tuple[str, str], Mapping[str, int | str | Fraction]],
    ) -> "AlgebraDef":
        """Build a definition from basis-name keyed products.

        ``products[("L", "K")] = {"L": 1}`` declares ``L·K = L``; pairs not
        listed multiply to zero.
        """
        index = {name: i for i, name in enumerate(basis_names)}
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (a, b), combo in products.items():
            table[(index[a], index[b])] = {index[c]: rat(v) for c, v in combo.items()}
        return cls(basis_names, table)

    def basis_product(self, i: int, j: int) -> Mapping[int, Fraction]:
        """The product ``e_i e_j`` as a sparse coefficient mapping."""
        return self._table.get((i, j), _EMPTY)

    def index(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise KeyError(f"unknown basis name {name!r}; have {self.basis_names}") from None

    def associativity_failures(self) -> list[tuple[int, int, int]]:
        """All basis triples ``(i, j, k)`` with ``(e_i e_j) e_k != e_i (e_j e_k)``.

        An empty list means the structure constants define an associative
        algebra.  The check is exhaustive over all ``dim**3`` triples.
        """
        failures = []
        rng = range(self.dim)
        for i in rng:
            for j in rng:
                ij = self.basis_product(i, j)
                for k in rng:
                    left: dict[int, Fraction] = {}
                    for m, c in ij.items():
                        for t, d in self.basis_product(m, k).items():
                            left[t] = left.get(t, Fraction(0)) + c * d
                    right: dict[int, Fraction] = {}
                    for m, c in self.basis_product(j, k).items():
                        for t, d in self.basis_product(i, m).items():
                            right[t] = right.get(t, Fraction(0)) + c * d
                    if _clean(left) != _clean(right):
                        failures.append((i, j, k))
        return failures

    def require_associative(self) -> None:
        failures = self.associativity_failures()
        if failures:
            shown = ", ".join(
                "({}, {}, {})".format(*(n + 1 for n in t)) for t in failures[:5]
            )
            raise ValueError(
                f"structure constants are not associative; "
                f"failing triples (1-based): {shown}"
                + ("..." if len(failures) > 5 else "")
            )

    def basis_element(self, i: int) -> "AlgebraElt":
        coeffs = [Fraction(0)] * self.dim
        coeffs[i] = Fraction(1)
        return AlgebraElt(self, tuple(coeffs))

    def element(self, combo: Mapping[str, int | str | Fraction]) -> "AlgebraElt":
        """An element from a name-keyed coefficient mapping."""
        coeffs = [Fraction(0)] * self.dim
        for name, c in combo.items():
            coeffs[self.index(name)] = rat(c)
        return AlgebraElt(self, tuple(coeffs))

    def zero(self) -> "AlgebraElt":
        return AlgebraElt(self, (Fraction(0),) * self.dim)

    def __eq__(self, other: Any) -> bool:
        if self is other:
            return True
        if not isinstance(other, AlgebraDef):
            return NotImplemented
        return self.basis_names == other.basis_names and self._table == other._table

    def __hash__(self) -> int:
        return hash(self.basis_names)

    def __repr__(self) -> str:
        return f"AlgebraDef(dim={self.dim}, basis={list(self.basis_names)})"


_EMPTY: Mapping[int, Fraction] = {}


def _same_algebra(a: Any, b: Any) -> None:
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise AlgebraMismatchError("values belong to different algebra definitions")


@dataclass(frozen=True)
class AlgebraElt:
    """An element of the algebra: an exact coefficient vector over its basis."""

    algebra: AlgebraDef
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dim:
            raise ValueError("coefficient vector length must equal the algebra dimension")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def scale(self, factor: int | Fraction) -> "AlgebraElt":
        f = rat(factor)
        return AlgebraElt(self.algebra, tuple(c * f for c in self.coeffs))

    def __add__(self, other: "AlgebraElt") -> "AlgebraElt":
        _same_algebra(self, other)
        return AlgebraElt(
            self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "AlgebraElt":
        return self.scale(-1)

    def __sub__(self, other: "AlgebraElt") -> "AlgebraElt":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, AlgebraElt):
            return NotImplemented
        _same_algebra(self, other)
        out = [Fraction(0)] * self.algebra.dim
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                for k, c in self.algebra.basis_product(i, j).items():
                    out[k] += a * b * c
        return AlgebraElt(self.algebra, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def zero_like(self) -> "AlgebraElt":
        return self.algebra.zero()

    def embedded(self, position: int, legs: int) -> "LegTensor":
        """This element on leg ``position`` (1-based) with units elsewhere."""
        return self.as_leg_tensor().embed((position,), legs)

    def as_leg_tensor(self) -> "LegTensor":
        return LegTensor(
            self.algebra, 1, {(i,): c for i, c in enumerate(self.coeffs) if c != 0}
        )

    def terms(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coeffs) if c != 0}

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        bits = []
        for i, c in enumerate(self.coeffs):
            if c != 0:
                bits.append(f"{c}*{self.algebra.basis_names[i]}")
        return " + ".join(bits).replace("+ -", "- ")


@dataclass(frozen=True)
class UnitalElt:
    """An element ``unit_part·1 + body`` of the unitalisation."""

    unit_part: Fraction
    body: AlgebraElt

    @property
    def algebra(self) -> AlgebraDef:
        return self.body.algebra

    @classmethod
    def from_scalar(cls, algebra: AlgebraDef, value: int | Fraction) -> "UnitalElt":
        return cls(rat(value), algebra.zero())

    @classmethod
    def from_body(cls, body: AlgebraElt) -> "UnitalElt":
        return cls(Fraction(0), body)

    def is_zero(self) -> bool:
        return self.unit_part == 0 and self.body.is_zero()

    def scale(self, factor: int | Fraction) -> "UnitalElt":
        f = rat(factor)
        return UnitalElt(self.unit_part * f, self.body.scale(f))

    def __add__(self, other: "UnitalElt") -> "UnitalElt":
        _same_algebra(self, other)
        return UnitalElt(self.unit_part + other.unit_part, self.body + other.body)

    def __neg__(self) -> "UnitalElt":
        return self.scale(-1)

    def __sub__(self, other: "UnitalElt") -> "UnitalElt":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UnitalElt):
            return NotImplemented
        _same_algebra(self, other)
        body = (
            self.body.scale(other.unit_part)
            + other.body.scale(self.unit_part)
            + self.body * other.body
        )
        return UnitalElt(self.unit_part * other.unit_part, body)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented


def _symbol_product(
    algebra: AlgebraDef, s: int, t: int
) -> Mapping[int, Fraction] | None:
    """Product of two leg symbols in the unitalisation.

    Returns a sparse mapping symbol -> coefficient, or None for the pure
    unit result (so callers can avoid allocating for the common case).
    """
    if s == UNIT:
        return None if t == UNIT else {t: _ONE}
    if t == UNIT:
        return {s: _ONE}
    return algebra.basis_product(s, t)


_ONE = Fraction(1)


@dataclass(frozen=True)
class LegTensor:
    """An element of the p-fold tensor power of the unitalisation.

    Keys of ``terms`` are length-``legs`` tuples of leg symbols: a basis index
    of the algebra, or :data:`UNIT` for the adjoined unit.  Legs are numbered
    from 1 throughout the public API, matching the ``r^{j,k}`` superscript
    convention.
    """

    algebra: AlgebraDef
    legs: int
    terms: Mapping[tuple[int, ...], Fraction]

    def __post_init__(self):
        if self.legs < 1:
            raise LegCountError("a leg tensor needs at least one leg")
        object.__setattr__(self, "terms", _clean(dict(self.terms)))

    # -- constructors ------------------------------------------------------

    @classmethod
    def unit(cls, algebra: AlgebraDef, legs: int) -> "LegTensor":
        return cls(algebra, legs, {(UNIT,) * legs: _ONE})

    @classmethod
    def pure(
        cls, algebra: AlgebraDef, symbols: Sequence[str | int | None]
    ) -> "LegTensor":
        """A pure tensor from basis names; ``1`` / ``None`` denote the unit."""
        key = []
        for s in symbols:
            if s is None or s == 1 or s == "1":
                key.append(UNIT)
            elif isinstance(s, str):
                key.append(algebra.index(s))
            else:
                raise TypeError(f"bad leg symbol {s!r}")
        return cls(algebra, len(key), {tuple(key): _ONE})

    def zero_like(self) -> "LegTensor":
        return LegTensor(self.algebra, self.legs, {})

    def unit_like(self) -> "LegTensor":
        return LegTensor.unit(self.algebra, self.legs)

    # -- linear structure --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(key), Fraction(0))

    def scale(self, factor: int | Fraction) -> "LegTensor":
        f = rat(factor)
        if f == 0:
            return self.zero_like()
        return LegTensor(self.algebra, self.legs, {k: v * f for k, v in self.terms.items()})

    def __add__(self, other: "LegTensor") -> "LegTensor":
        _same_algebra(self, other)
        if self.legs != other.legs:
            raise LegCountError(f"leg counts differ: {self.legs} vs {other.legs}")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LegTensor(self.algebra, self.legs, out)

    def __neg__(self) -> "LegTensor":
        return self.scale(-1)

    def __sub__(self, other: "LegTensor") -> "LegTensor":
        return self + (-other)

    # -- multiplicative structure -----------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LegTensor):
            return NotImplemented
        _same_algebra(self, other)
        if self.legs != other.legs:
            raise LegCountError(f"leg counts differ: {self.legs} vs {other.legs}")
        alg = self.algebra
        out: dict[tuple[int, ...], Fraction] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                # legs where both symbols sit in the base algebra need the
                # structure constants; everywhere else the unit absorbs
                base = list(ka)
                clash: list[int] = []
                for i, t in enumerate(kb):
                    if t != UNIT:
                        if base[i] == UNIT:
                            base[i] = t
                        else:
                            clash.append(i)
                if not clash:
                    key = tuple(base)
                    out[key] = out.get(key, Fraction(0)) + va * vb
                    continue
                partial: list[tuple[list[int], Fraction]] = [(base, va * vb)]
                dead = False
                for i in clash:
                    combo = alg.basis_product(ka[i], kb[i])
                    if not combo:
                        dead = True
                        break
                    nxt = []
                    for key_list, v in partial:
                        for sym, c in combo.items():
                            kk = list(key_list)
                            kk[i] = sym
                            nxt.append((kk, v * c))
                    partial = nxt
                if dead:
                    continue
                for key_list, v in partial:
                    key = tuple(key_list)
                    out[key] = out.get(key, Fraction(0)) + v
        return LegTensor(alg, self.legs, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- leg calculus ------------------------------------------------------

    def embed(self, positions: Sequence[int], legs: int) -> "LegTensor":
        """Place this tensor on the named legs (1-based), units elsewhere.

        ``positions`` must be strictly increasing and within ``1..legs``.
        The embedding is multiplicative: ``(xy)^{J} = x^{J} y^{J}``.
        """
        positions = tuple(positions)
        if len(positions) != self.legs:
            raise LegCountError(
                f"need {self.legs} positions, got {len(positions)}"
            )
        if any(not 1 <= p <= legs for p in positions):
            raise LegCountError(f"positions {positions} out of range 1..{legs}")
        if any(a >= b for a, b in zip(positions, positions[1:])):
            raise LegCountError(f"positions {positions} must be strictly increasing")
        out: dict[tuple[int, ...], Fraction] = {}
        slot = {p - 1: i for i, p in enumerate(positions)}
        for key, v in self.terms.items():
            big = tuple(
                key[slot[i]] if i in slot else UNIT for i in range(legs)
            )
            out[big] = out.get(big, Fraction(0)) + v
        return LegTensor(self.algebra, legs, out)

    def flip(self) -> "LegTensor":
        """Exchange the two legs of a two-leg tensor."""
        if self.legs != 2:
            raise LegCountError("flip is defined for two-leg tensors")
        return LegTensor(
            self.algebra, 2, {(b, a): v for (a, b), v in self.terms.items()}
        )

    def rank_pattern(self, key: tuple[int, ...]) -> tuple[int, ...]:
        """0/1 per leg: 0 where the leg holds the unit."""
        return tuple(0 if s == UNIT else 1 for s in key)

    def body_part(self) -> "LegTensor":
        """The component with every leg in the algebra (no unit legs)."""
        return LegTensor(
            self.algebra,
            self.legs,
            {k: v for k, v in self.terms.items() if UNIT not in k},
        )

    def sorted_items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        names = self.algebra.basis_names
        bits = []
        for key, v in self.sorted_items():
            word = "⊗".join("1" if s == UNIT else names[s] for s in key)
            bits.append(f"{v}*({word})")
        return " + ".join(bits).replace("+ -", "- ")


def commutator(a: LegTensor, b: LegTensor) -> LegTensor:
    """The commutator ``ab - ba`` of two leg tensors."""
    return a * b - b * a
