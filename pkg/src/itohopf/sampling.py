"""Seeded random generators for algebras, tensors, and driving series.

Used by the randomized test suites and the CLI selftest.  Everything is
driven by an explicit ``random.Random`` instance, so runs are reproducible
from the recorded seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import AlgebraDef, LegTensor
from .hseries import HSeries
from .tensorhopf import TensorElt


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    num = rng.randint(-3, 3)
    while nonzero and num == 0:
        num = rng.randint(-3, 3)
    den = rng.choice((1, 1, 1, 2))
    return Fraction(num, den)


def random_leg_pair(rng: random.Random, algebra: AlgebraDef, max_terms: int = 3) -> LegTensor:
    """A sparse two-leg tensor with all legs in the base algebra."""
    terms: dict[tuple[int, int], Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        key = (rng.randrange(algebra.dim), rng.randrange(algebra.dim))
        terms[key] = terms.get(key, Fraction(0)) + random_rational(rng, nonzero=True)
    return LegTensor(algebra, 2, terms)


def random_r_series(
    rng: random.Random,
    algebra: AlgebraDef,
    order: int,
    max_h: int = 2,
    max_terms: int = 2,
) -> HSeries:
    """A sparse driving series: zero constant term, support at low orders."""
    zero = LegTensor(algebra, 2, {})
    coeffs = [zero]
    for k in range(1, order + 1):
        if k <= max_h:
            coeffs.append(random_leg_pair(rng, algebra, max_terms))
        else:
            coeffs.append(zero)
    return HSeries(tuple(coeffs))


def random_word(rng: random.Random, algebra: AlgebraDef, max_rank: int) -> tuple[int, ...]:
    return tuple(rng.randrange(algebra.dim) for _ in range(rng.randint(0, max_rank)))


def random_tensor(
    rng: random.Random, algebra: AlgebraDef, max_rank: int = 3, max_terms: int = 3
) -> TensorElt:
    terms: dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        w = random_word(rng, algebra, max_rank)
        terms[w] = terms.get(w, Fraction(0)) + random_rational(rng, nonzero=True)
    return TensorElt(algebra, terms)


def random_associative_algebra(
    rng: random.Random, dim: int = 2, max_attempts: int = 10000
) -> AlgebraDef:
    """A random sparse associative algebra with at least one nonzero product.

    Samples small-integer structure constants and keeps the first associative
    candidate; deterministic for a fixed generator state.
    """
    names = tuple(chr(ord("a") + i) for i in range(dim))
    for _ in range(max_attempts):
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i in range(dim):
            for j in range(dim):
                if rng.random() < 0.5:
                    k = rng.randrange(dim)
                    c = Fraction(rng.choice((-1, 1, 1, 2)))
                    table[(i, j)] = {k: c}
        if not table:
            continue
        candidate = AlgebraDef(names, table)
        if not candidate.associativity_failures():
            return candidate
    raise RuntimeError("failed to sample an associative algebra")
