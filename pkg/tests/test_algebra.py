import random
from fractions import Fraction

import pytest

from itohopf import (
    UNIT,
    AlgebraDef,
    AlgebraMismatchError,
    LegCountError,
    LegTensor,
    UnitalElt,
    commutator,
    rat,
)


def test_rat_coercion():
    assert rat("3/7") == Fraction(3, 7)
    assert rat(-2) == Fraction(-2)
    with pytest.raises(TypeError):
        rat(0.5)


def test_algebra_def_validation():
    with pytest.raises(ValueError):
        AlgebraDef(("a", "a"), {})
    with pytest.raises(ValueError):
        AlgebraDef(("a",), {(0, 1): {0: 1}})
    with pytest.raises(ValueError):
        AlgebraDef(("a",), {(0, 0): {3: 1}})


def test_sec6_products(sec6):
    L = sec6.basis_element(0)
    K = sec6.basis_element(1)
    assert L * K == L
    assert (K * L).is_zero()
    assert K * K == K
    assert (L * L).is_zero()
    assert (sec6.zero() * L).is_zero()
    assert (L * sec6.zero()).is_zero()


def test_mul_is_bilinear(sec6):
    rng = random.Random(11)

    def rand_elt():
        return sec6.element(
            {"L": Fraction(rng.randint(-3, 3), rng.choice((1, 2))),
             "K": Fraction(rng.randint(-3, 3), rng.choice((1, 2)))}
        )

    for _ in range(50):
        a, b, c = rand_elt(), rand_elt(), rand_elt()
        s = Fraction(rng.randint(-2, 2))
        assert (a + b) * c == a * c + b * c
        assert a * (b + c) == a * b + a * c
        assert (a.scale(s)) * b == (a * b).scale(s)


def test_mul_is_associative_when_check_passes(sec6):
    assert sec6.associativity_failures() == []
    rng = random.Random(7)
    for _ in range(60):
        elts = [
            sec6.element({"L": rng.randint(-2, 2), "K": rng.randint(-2, 2)})
            for _ in range(3)
        ]
        a, b, c = elts
        assert (a * b) * c == a * (b * c)


def test_associativity_failure_reported():
    # e1*e1 = e2 and e2*e1 = e1: (e1 e1)e1 = e1 but e1(e1 e1) = 0
    bad = AlgebraDef(("x", "y"), {(0, 0): {1: 1}, (1, 0): {0: 1}})
    failures = bad.associativity_failures()
    assert (0, 0, 0) in failures
    with pytest.raises(ValueError, match="not associative"):
        bad.require_associative()


def test_one_dimensional_idempotent_is_associative():
    alg = AlgebraDef(("e",), {(0, 0): {0: 1}})
    assert alg.associativity_failures() == []


def test_algebra_mismatch(sec6):
    other = AlgebraDef.from_structure(
        ("L", "K"), {("L", "K"): {"L": 1}, ("K", "K"): {"K": 1}}
    )
    assert sec6 == other  # structural equality
    different = AlgebraDef(("a", "b"), {(0, 0): {1: 1}})
    with pytest.raises(AlgebraMismatchError):
        sec6.basis_element(0) + different.basis_element(0)


def test_unital_elt(sec6):
    L = sec6.basis_element(0)
    K = sec6.basis_element(1)
    one = UnitalElt.from_scalar(sec6, 1)
    uL = UnitalElt.from_body(L)
    uK = UnitalElt.from_body(K)
    assert one * uL == uL and uL * one == uL
    # restricted to zero unit part the product is the algebra product
    assert uL * uK == UnitalElt.from_body(L * K)
    assert (uK * uL).is_zero()
    mixed = (one + uK) * uL
    assert mixed == UnitalElt.from_body(L + K * L)


# -- leg tensors ------------------------------------------------------------


def test_leg_unit_is_identity(sec6, r1):
    one = LegTensor.unit(sec6, 2)
    assert one * r1 == r1
    assert r1 * one == r1


def test_leg_product_examples(sec6):
    L1 = LegTensor.pure(sec6, ("L", 1))
    K1 = LegTensor.pure(sec6, ("K", 1))
    assert L1 * K1 == L1  # legwise: L*K = L, 1*1 = 1
    assert (K1 * L1).is_zero()


def test_triple_product_vanishes(sec6, r1):
    a = r1.embed((1, 2), 3) * r1.embed((1, 3), 3) * r1.embed((2, 3), 3)
    b = r1.embed((2, 3), 3) * r1.embed((1, 3), 3) * r1.embed((1, 2), 3)
    assert a.is_zero() and b.is_zero()


def test_r1_squares_to_zero(sec6, r1):
    assert (r1 * r1).is_zero()


def test_embed_placement(sec6, r1):
    e12 = r1.embed((1, 2), 3)
    assert e12 == LegTensor.pure(sec6, ("L", "K", 1)) - LegTensor.pure(
        sec6, ("K", "L", 1)
    )
    e13 = r1.embed((1, 3), 3)
    assert e13 == LegTensor.pure(sec6, ("L", 1, "K")) - LegTensor.pure(
        sec6, ("K", 1, "L")
    )
    unit = LegTensor.unit(sec6, 1)
    assert unit.embed((2,), 4) == LegTensor.unit(sec6, 4)


def test_embed_is_multiplicative(sec6):
    rng = random.Random(3)
    for _ in range(40):
        terms_x = {
            (rng.randrange(2), rng.randrange(2)): Fraction(rng.randint(-2, 2))
            for _ in range(2)
        }
        terms_y = {
            (rng.randrange(2), rng.randrange(2)): Fraction(rng.randint(-2, 2))
            for _ in range(2)
        }
        x = LegTensor(sec6, 2, terms_x)
        y = LegTensor(sec6, 2, terms_y)
        assert (x * y).embed((2, 4), 4) == x.embed((2, 4), 4) * y.embed((2, 4), 4)


def test_disjoint_embeddings_commute(sec6, r1):
    a = r1.embed((1, 2), 4)
    b = r1.embed((3, 4), 4)
    assert a * b == b * a


def test_embed_errors(sec6, r1):
    with pytest.raises(LegCountError):
        r1.embed((1,), 3)
    with pytest.raises(LegCountError):
        r1.embed((2, 1), 3)
    with pytest.raises(LegCountError):
        r1.embed((1, 4), 3)
    with pytest.raises(LegCountError):
        r1 * LegTensor.unit(sec6, 3)


def test_commutators_with_basis_legs(sec6, r1):
    L = sec6.basis_element(0)
    K = sec6.basis_element(1)
    LL = LegTensor.pure(sec6, ("L", "L"))
    LK = LegTensor.pure(sec6, ("L", "K"))
    KL = LegTensor.pure(sec6, ("K", "L"))
    assert commutator(r1, L.embedded(1, 2)) == LL
    assert commutator(r1, L.embedded(2, 2)) == -LL
    assert commutator(r1, K.embedded(1, 2)) == LK
    assert commutator(r1, K.embedded(2, 2)) == -KL
    assert commutator(r1, r1).is_zero()


def test_flip(sec6, r1):
    LK = LegTensor.pure(sec6, ("L", "K"))
    KL = LegTensor.pure(sec6, ("K", "L"))
    assert LK.flip() == KL
    assert r1.flip() == -r1
    assert r1.flip().flip() == r1
    with pytest.raises(LegCountError):
        LegTensor.unit(sec6, 3).flip()


def test_flip_compatible_with_product(sec6):
    rng = random.Random(5)
    for _ in range(40):
        x = LegTensor(
            sec6,
            2,
            {(rng.randrange(2), rng.randrange(2)): Fraction(rng.randint(-2, 2))},
        )
        y = LegTensor(
            sec6,
            2,
            {(rng.randrange(2), rng.randrange(2)): Fraction(rng.randint(-2, 2))},
        )
        assert (x * y).flip() == x.flip() * y.flip()


def test_body_part_and_rank_pattern(sec6, r1):
    mixed = r1 + LegTensor.pure(sec6, ("L", 1))
    assert mixed.body_part() == r1
    assert mixed.rank_pattern((0, UNIT)) == (1, 0)
