"""Located cuts and cocuts, their conversions, and the decision family."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubeprop.errors import PreconditionError, PromiseViolation
from cubeprop.reals import (ConsistentInUpTo, DefinitelyOut, InC, InL, NotInC,
                            NotInL, NotInX, RHolds, cocut_answers_consistent,
                            cocut_roundtrip_consistent, cocut_to_cut,
                            cut_roundtrip_consistent, member_up_to, neg_cut,
                            negneg_decide, random_pairs, rational_cocut,
                            rational_cut, sqrt_cocut, weakly_pi01)

# exact membership oracles, independent of any locator
MEMBERS = {
    "cocut(0)": (lambda: rational_cocut(0), lambda a: a >= 0),
    "cocut(1/2)": (lambda: rational_cocut(F(1, 2)), lambda a: a >= F(1, 2)),
    "cocut(-3/7)": (lambda: rational_cocut(F(-3, 7)), lambda a: a >= F(-3, 7)),
    "sqrt(2)": (lambda: sqrt_cocut(2), lambda a: a > 0 and a * a >= 2),
    "sqrt(3)": (lambda: sqrt_cocut(3), lambda a: a > 0 and a * a >= 3),
}

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=100)


def test_sqrt2_examples():
    C = sqrt_cocut(2)
    assert C.locate(1, F(3, 2)) == InC(F(3, 2))
    assert C.locate(F(7, 5), F(141, 100)) == NotInC(F(7, 5))


def test_rational_cocut_examples():
    assert rational_cocut(F(1, 2)).locate(0, 1) == NotInC(F(0))
    assert rational_cocut(0).locate(1, 2) == InC(F(2))


def test_cut_of_cocut_examples():
    L = cocut_to_cut(rational_cocut(0))
    assert L.locate(-2, -1) == InL(F(-2))
    assert L.locate(1, 2) == NotInL(F(2))


def test_neg_cut_examples():
    N = neg_cut(rational_cut(0))
    assert N.locate(-1, 1) == NotInC(F(-1))
    assert N.locate(1, 2) == InC(F(2))


def test_locate_requires_order():
    with pytest.raises(PreconditionError):
        rational_cocut(0).locate(1, 1)


def test_sqrt_rejects_squares():
    with pytest.raises(ValueError):
        sqrt_cocut(4)
    with pytest.raises(ValueError):
        sqrt_cocut(0)


@pytest.mark.parametrize("name", sorted(MEMBERS))
@settings(max_examples=60, deadline=None)
@given(a=rationals, gap=st.fractions(min_value=F(1, 1000), max_value=3,
                                     max_denominator=1000))
def test_locator_answers_are_true(name, a, gap):
    make, member = MEMBERS[name]
    C = make()
    b = a + gap
    ans = C.locate(a, b)
    if isinstance(ans, InC):
        assert member(b)
    else:
        assert not member(a)


@pytest.mark.parametrize("name", sorted(MEMBERS))
@settings(max_examples=40, deadline=None)
@given(a=rationals, gap=st.fractions(min_value=F(1, 1000), max_value=3,
                                     max_denominator=1000))
def test_cut_of_cocut_answers_are_true(name, a, gap):
    make, member = MEMBERS[name]
    L = cocut_to_cut(make())
    b = a + gap
    ans = L.locate(a, b)
    if isinstance(ans, InL):
        # some non-member lies strictly above a
        assert not member((a + b) / 2) and a < (a + b) / 2
    else:
        assert member(b)


@pytest.mark.parametrize("name", sorted(MEMBERS))
@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_roundtrips_consistent(name, seed):
    make, _ = MEMBERS[name]
    C = make()
    pairs = random_pairs(random.Random(seed), 50, centre=C.bound_in)
    assert cocut_roundtrip_consistent(C, pairs)
    assert cut_roundtrip_consistent(cocut_to_cut(C), pairs)


def test_answer_consistency_predicate():
    assert cocut_answers_consistent([NotInC(F(0)), InC(F(1))])
    assert not cocut_answers_consistent([NotInC(F(1)), InC(F(1))])
    assert cocut_answers_consistent([])


def test_member_up_to_examples():
    C = rational_cocut(0)
    assert member_up_to(C, -1, 5) == DefinitelyOut(F(-1), 1)
    out = member_up_to(C, 1, 4)
    assert isinstance(out, ConsistentInUpTo) and len(out.witnesses) == 4
    # just below 0 is refuted at once; the member 1/2 never is
    assert isinstance(member_up_to(C, F(-1, 100), 50), DefinitelyOut)
    assert isinstance(member_up_to(rational_cocut(F(1, 2)), F(1, 2), 50),
                      ConsistentInUpTo)


def test_weakly_pi01_examples():
    d = weakly_pi01(rational_cocut(0))
    assert d(1, 3) == RHolds(F(1), 3)
    assert d(-1, 1) == NotInX(F(-1))
    assert d(1, 3).point == F(4, 3)
    rows = d.to_json([0, -1], [1])["rows"]
    assert rows == [{"a": "0", "n": 1, "branch": "R"},
                    {"a": "-1", "n": 1, "branch": "notX"}]


@pytest.mark.parametrize("name", sorted(MEMBERS))
@settings(max_examples=60, deadline=None)
@given(a=rationals, n=st.integers(1, 60))
def test_decision_family_sound(name, a, n):
    make, member = MEMBERS[name]
    out = weakly_pi01(make())(a, n)
    if isinstance(out, RHolds):
        assert member(a + F(1, n))
    else:
        assert not member(a)


def test_negneg_decide():
    d = weakly_pi01(sqrt_cocut(2))
    assert negneg_decide(d, F(3, 2), 10) == RHolds(F(3, 2), 10)
    with pytest.raises(PromiseViolation):
        negneg_decide(d, 1, 10)
