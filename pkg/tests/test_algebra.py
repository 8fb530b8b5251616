"""Signed monomial arithmetic and the finite group it generates.

mono_mul is checked against an independent oracle that simulates the
generator relations symbol-by-symbol (bubble the concatenated word into
sorted order counting transpositions, then cancel squares), so the bitmask
sign rule never verifies itself.
"""

from fractions import Fraction

import numpy as np
import pytest

from cuwcodes.algebra import (
    AlgebraElement,
    GroupSpec,
    SignedMonomial,
    enumerate_group,
    inverse,
    mono_mul,
    verify_group_structure,
)

ONE = SignedMonomial.one()
MINUS_ONE = SignedMonomial.minus_one()


def mono(sign, gammas=(), deltas=()):
    gm = 0
    for k in gammas:
        gm |= 1 << (k - 1)
    dm = 0
    for k in deltas:
        dm |= 1 << (k - 1)
    return SignedMonomial(sign, gm, dm)


def slow_mul(x: SignedMonomial, y: SignedMonomial) -> SignedMonomial:
    """Oracle: explicit word rewriting under the generator relations."""
    word = []
    for src in (x, y):
        for k in range(src.gamma_mask.bit_length()):
            if src.gamma_mask >> k & 1:
                word.append(k + 1)
    sign = x.sign * y.sign
    # bubble into ascending order; each adjacent swap of distinct gammas
    # flips the sign (deltas commute with everything, so they are handled
    # separately below)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
    # cancel equal neighbours: gamma_k * gamma_k = -1
    out = []
    for k in word:
        if out and out[-1] == k:
            out.pop()
            sign = -sign
        else:
            out.append(k)
    gm = 0
    for k in out:
        gm |= 1 << (k - 1)
    # delta_k * delta_k = +1, no ordering cost
    return SignedMonomial(sign, gm, x.delta_mask ^ y.delta_mask)


# ----------------------------------------------------------- hand cases

def test_gamma_squares_to_minus_one():
    s = GroupSpec(2, 0)
    assert mono_mul(mono(1, [1]), mono(1, [1]), s) == MINUS_ONE


def test_anticommutation():
    s = GroupSpec(2, 0)
    g1, g2 = mono(1, [1]), mono(1, [2])
    assert mono_mul(g1, g2, s) == -mono_mul(g2, g1, s)
    assert mono_mul(g1, g2, s) == mono(1, [1, 2])


def test_hand_products():
    s = GroupSpec(3, 1)
    assert mono_mul(mono(1, [1, 2]), mono(1, [1]), s) == mono(1, [2])
    assert mono_mul(mono(1, [2]), mono(1, [1, 2]), s) == mono(1, [1])
    assert mono_mul(mono(1, [1]), mono(1, [1, 2]), s) == mono(-1, [2])
    assert mono_mul(mono(1, [1], [1]), mono(1, [], [1]), s) == mono(1, [1])
    assert mono_mul(mono(-1, [1, 3]), mono(1, [2]), s) == mono(1, [1, 2, 3])


def test_delta_commutes_and_squares_plus_one():
    s = GroupSpec(2, 2)
    d1 = mono(1, [], [1])
    assert mono_mul(d1, d1, s) == ONE
    for other in enumerate_group(s):
        assert mono_mul(d1, other, s) == mono_mul(other, d1, s)


def test_mono_mul_matches_oracle_exhaustively():
    for n, a in [(3, 2), (4, 1), (2, 0), (0, 2)]:
        s = GroupSpec(n, a)
        elements = enumerate_group(s)
        for x in elements:
            for y in elements:
                assert mono_mul(x, y, s) == slow_mul(x, y), (x, y)


def test_mask_out_of_range_raises():
    s = GroupSpec(2, 1)
    with pytest.raises(ValueError):
        mono_mul(mono(1, [3]), ONE, s)
    with pytest.raises(ValueError):
        mono_mul(ONE, mono(1, [], [2]), s)
    with pytest.raises(ValueError):
        inverse(mono(1, [3]), s)


# -------------------------------------------------------------- inverses

def test_inverse_hand_values():
    s = GroupSpec(4, 2)
    # one gamma: gamma^-1 = -gamma ; two gammas: the negation again only
    # when ceil(m/2) is odd
    assert inverse(mono(1, [1]), s) == mono(-1, [1])
    assert inverse(mono(1, [1, 2]), s) == mono(-1, [1, 2])
    assert inverse(mono(1, [1, 2, 3]), s) == mono(1, [1, 2, 3])
    assert inverse(mono(1, [1, 2, 3, 4]), s) == mono(1, [1, 2, 3, 4])
    assert inverse(mono(1, [], [1, 2]), s) == mono(1, [], [1, 2])
    assert inverse(MINUS_ONE, s) == MINUS_ONE


def test_inverse_is_two_sided_everywhere():
    s = GroupSpec(4, 2)
    for x in enumerate_group(s):
        inv = inverse(x, s)
        assert mono_mul(x, inv, s) == ONE
        assert mono_mul(inv, x, s) == ONE


def test_inverse_matches_brute_force():
    s = GroupSpec(3, 1)
    elements = enumerate_group(s)
    for x in elements:
        candidates = [y for y in elements if mono_mul(x, y, s) == ONE]
        assert candidates == [inverse(x, s)]


# ----------------------------------------------------------- enumeration

def test_enumerate_sizes():
    assert len(enumerate_group(GroupSpec(0, 0))) == 2
    assert len(enumerate_group(GroupSpec(1, 1))) == 8
    assert len(enumerate_group(GroupSpec(4, 3))) == 2**8
    for n in range(5):
        for a in range(4):
            s = GroupSpec(n, a)
            elems = enumerate_group(s)
            assert len(elems) == s.order == 2 ** (n + a + 1)
            assert len(set(elems)) == len(elems)


def test_enumerate_canonical_order():
    elems = enumerate_group(GroupSpec(2, 1))
    assert elems[0] == ONE
    assert elems[1] == mono(1, [1])
    assert elems[2] == mono(1, [2])
    assert elems[3] == mono(1, [1, 2])
    assert elems[4] == mono(1, [], [1])
    # negatives follow all positives, in the same mask order
    half = len(elems) // 2
    assert all(e.sign == 1 for e in elems[:half])
    assert all(e.sign == -1 for e in elems[half:])
    assert [(-e) for e in elems[half:]] == elems[:half]


def test_spec_properties():
    s = GroupSpec(3, 2)
    assert s.lam == 4
    assert s.g == 4
    assert s.order == 64
    with pytest.raises(ValueError):
        GroupSpec(-1, 0)
    with pytest.raises(ValueError):
        SignedMonomial(2, 0, 0)


# -------------------------------------------------------- group structure

def test_group_structure_small_grid():
    for n in range(4):
        for a in range(3):
            report = verify_group_structure(GroupSpec(n, a))
            assert report.passed, (n, a, report.to_dict())
            assert {c.name for c in report.checks} == {
                "closure",
                "inverses",
                "factorization",
                "commutation",
            }


def test_group_structure_delta_only():
    report = verify_group_structure(GroupSpec(0, 2))
    assert report.passed


def test_broken_sign_rule_is_caught():
    def negated(x, y, spec):
        return -mono_mul(x, y, spec)

    report = verify_group_structure(GroupSpec(2, 1), mult=negated)
    assert not report.passed
    closure = report.check("closure")
    assert not closure.passed
    assert closure.witness is not None


def test_dropped_transposition_sign_is_caught():
    def sloppy(x, y, spec):
        p = mono_mul(x, y, spec)
        # pretend gammas commute: strip the transposition sign
        sign = x.sign * y.sign
        c = (x.gamma_mask & y.gamma_mask).bit_count()
        if c & 1:
            sign = -sign
        return SignedMonomial(sign, p.gamma_mask, p.delta_mask)

    report = verify_group_structure(GroupSpec(2, 0), mult=sloppy)
    assert not report.passed


def test_verbose_collects_multiple_witnesses():
    def negated(x, y, spec):
        return -mono_mul(x, y, spec)

    report = verify_group_structure(GroupSpec(2, 1), mult=negated, verbose=True)
    closure = report.check("closure")
    assert len(closure.witnesses) > 1


# ---------------------------------------------------------- associativity

def test_associativity_exhaustive_up_to_64():
    for n, a in [(1, 1), (2, 1), (3, 2)]:
        s = GroupSpec(n, a)
        elements = enumerate_group(s)
        assert len(elements) <= 64
        for x in elements:
            for y in elements:
                xy = mono_mul(x, y, s)
                for z in elements:
                    assert mono_mul(xy, z, s) == mono_mul(x, mono_mul(y, z, s), s)


def test_associativity_randomized_large():
    s = GroupSpec(4, 3)
    elements = enumerate_group(s)
    rng = np.random.default_rng(21)
    for _ in range(2000):
        x, y, z = (elements[int(i)] for i in rng.integers(0, len(elements), 3))
        assert mono_mul(mono_mul(x, y, s), z, s) == mono_mul(x, mono_mul(y, z, s), s)


# -------------------------------------------------------- algebra elements

def test_algebra_element_ring_ops():
    s = GroupSpec(2, 1)
    g1 = AlgebraElement.from_monomial(s, mono(1, [1]))
    g2 = AlgebraElement.from_monomial(s, mono(1, [2]))
    one = AlgebraElement.one(s)
    assert g1 * g1 == -one
    assert g1 * g2 + g2 * g1 == AlgebraElement.zero(s)
    assert (g1 + g2) * (g1 + g2) == -2 * one
    assert one * g1 == g1
    half = Fraction(1, 2) * (one + AlgebraElement.from_monomial(s, mono(1, [], [1])))
    # (1 + d1)/2 is idempotent since d1^2 = 1
    assert half * half == half


def test_algebra_element_distributes_over_mono_mul():
    s = GroupSpec(3, 1)
    elements = enumerate_group(s)
    rng = np.random.default_rng(22)
    for _ in range(20):
        xs = [elements[int(i)] for i in rng.integers(0, len(elements), 3)]
        ys = [elements[int(i)] for i in rng.integers(0, len(elements), 3)]
        ax = sum(
            (AlgebraElement.from_monomial(s, m) for m in xs),
            AlgebraElement.zero(s),
        )
        ay = sum(
            (AlgebraElement.from_monomial(s, m) for m in ys),
            AlgebraElement.zero(s),
        )
        expected = AlgebraElement.zero(s)
        for mx in xs:
            for my in ys:
                expected = expected + AlgebraElement.from_monomial(s, mono_mul(mx, my, s))
        assert ax * ay == expected


def test_algebra_element_rejects_out_of_range_keys():
    s = GroupSpec(1, 0)
    with pytest.raises(ValueError):
        AlgebraElement(s, {(2, 0): 1})
