"""Dedekind left cuts and cocuts presented by their locatedness oracles.

A real is never stored as a set of rationals.  A left cut ``L`` is a function
that, given rationals ``a < b``, answers either ``InL(a)`` (``a`` is in ``L``)
or ``NotInL(b)`` (``b`` is not); a cocut ``C`` answers ``NotInC(a)`` or
``InC(b)``.  Set-level equalities between cuts become consistency of sampled
answers: no rational may be reported both in and out, and answers must
respect downward (cuts) or upward (cocuts) closure.

Rationals are :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Union

from .errors import PreconditionError, PromiseViolation

Rat = Fraction


@dataclass(frozen=True)
class InL:
    value: Fraction


@dataclass(frozen=True)
class NotInL:
    value: Fraction


@dataclass(frozen=True)
class InC:
    value: Fraction


@dataclass(frozen=True)
class NotInC:
    value: Fraction


CutAnswer = Union[InL, NotInL]
CocutAnswer = Union[InC, NotInC]


def _check_pair(a, b):
    if not a < b:
        raise PreconditionError(f"locate needs a < b, got {a} and {b}")


@dataclass(frozen=True)
class LocatedCut:
    locate_fn: Callable[[Fraction, Fraction], CutAnswer] = field(repr=False)
    bound_in: Fraction
    bound_out: Fraction
    name: str = "L"

    def __post_init__(self):
        if not self.bound_in < self.bound_out:
            raise PreconditionError("a left cut needs bound_in < bound_out")

    def locate(self, a, b) -> CutAnswer:
        a, b = Fraction(a), Fraction(b)
        _check_pair(a, b)
        ans = self.locate_fn(a, b)
        if ans != InL(a) and ans != NotInL(b):
            raise PreconditionError(
                f"{self.name}.locate({a}, {b}) returned {ans!r}")
        return ans


@dataclass(frozen=True)
class Cocut:
    locate_fn: Callable[[Fraction, Fraction], CocutAnswer] = field(repr=False)
    bound_out: Fraction
    bound_in: Fraction
    name: str = "C"

    def __post_init__(self):
        if not self.bound_out < self.bound_in:
            raise PreconditionError("a cocut needs bound_out < bound_in")

    def locate(self, a, b) -> CocutAnswer:
        a, b = Fraction(a), Fraction(b)
        _check_pair(a, b)
        ans = self.locate_fn(a, b)
        if ans != NotInC(a) and ans != InC(b):
            raise PreconditionError(
                f"{self.name}.locate({a}, {b}) returned {ans!r}")
        return ans


def neg_cut(L: LocatedCut) -> Cocut:
    """The complement of a left cut, as a cocut."""
    def locate(a, b):
        return NotInC(a) if L.locate(a, b) == InL(a) else InC(b)
    return Cocut(locate, bound_out=L.bound_in, bound_in=L.bound_out,
                 name=f"not({L.name})")


def cocut_to_cut(C: Cocut) -> LocatedCut:
    """The left cut of rationals strictly below some non-member of ``C``.

    Locating ``a < b`` asks ``C`` about the midpoint and ``b``: a non-member
    midpoint puts ``a`` strictly below a non-member, while ``b`` in ``C``
    rules ``b`` out of the cut.
    """
    def locate(a, b):
        mid = (a + b) / 2
        return InL(a) if C.locate(mid, b) == NotInC(mid) else NotInL(b)
    return LocatedCut(locate, bound_in=C.bound_out - 1, bound_out=C.bound_in,
                      name=f"lt(not({C.name}))")


def rational_cocut(q) -> Cocut:
    """``{a : a >= q}``; when ``a < q`` the ``NotInC`` branch is preferred."""
    q = Fraction(q)

    def locate(a, b):
        return NotInC(a) if a < q else InC(b)
    return Cocut(locate, bound_out=q - 1, bound_in=q, name=f"cocut({q})")


def rational_cut(q) -> LocatedCut:
    """``{a : a < q}``."""
    q = Fraction(q)

    def locate(a, b):
        return InL(a) if a < q else NotInL(b)
    return LocatedCut(locate, bound_in=q - 1, bound_out=q, name=f"cut({q})")


def sqrt_cocut(n: int) -> Cocut:
    """``{a : a > 0 and a*a >= n}`` for a non-square positive integer ``n``.

    ``b`` is tested first: if ``b`` is a member the answer is ``InC(b)``,
    otherwise ``b`` lies below the root and so does ``a``.
    """
    if n <= 0:
        raise ValueError("sqrt_cocut needs a positive integer")
    if math.isqrt(n) ** 2 == n:
        raise ValueError(f"{n} is a perfect square; use rational_cocut")

    def locate(a, b):
        return InC(b) if b > 0 and b * b >= n else NotInC(a)
    return Cocut(locate, bound_out=Fraction(0), bound_in=Fraction(n),
                 name=f"sqrt({n})")


# -- consistency predicates --------------------------------------------------

def cocut_answers_consistent(answers: Iterable[CocutAnswer]) -> bool:
    """Every reported non-member lies strictly below every reported member."""
    answers = list(answers)
    outs = [x.value for x in answers if isinstance(x, NotInC)]
    ins = [x.value for x in answers if isinstance(x, InC)]
    return not outs or not ins or max(outs) < min(ins)


def cut_answers_consistent(answers: Iterable[CutAnswer]) -> bool:
    answers = list(answers)
    ins = [x.value for x in answers if isinstance(x, InL)]
    outs = [x.value for x in answers if isinstance(x, NotInL)]
    return not outs or not ins or max(ins) < min(outs)


def random_pairs(rng: random.Random, count: int, centre=0, spread: int = 4,
                 denom: int = 64) -> list[tuple[Fraction, Fraction]]:
    """Random rational pairs ``a < b`` clustered around ``centre``."""
    centre = Fraction(centre)
    out = []
    while len(out) < count:
        a = centre + Fraction(rng.randint(-spread * denom, spread * denom),
                              rng.randint(1, denom))
        b = a + Fraction(rng.randint(1, 2 * denom), rng.randint(1, denom) * denom)
        out.append((a, b))
    return out


def cocut_roundtrip_consistent(C: Cocut, pairs) -> bool:
    """``C`` and ``not((not C)^<)`` never disagree on the sampled pairs."""
    back = neg_cut(cocut_to_cut(C))
    answers = []
    for a, b in pairs:
        answers.append(C.locate(a, b))
        answers.append(back.locate(a, b))
    return cocut_answers_consistent(answers)


def cut_roundtrip_consistent(L: LocatedCut, pairs) -> bool:
    """``L`` and ``(not not L)^<`` never disagree on the sampled pairs."""
    back = cocut_to_cut(neg_cut(L))
    answers = []
    for a, b in pairs:
        answers.append(L.locate(a, b))
        answers.append(back.locate(a, b))
    return cut_answers_consistent(answers)


# -- closedness and the weakly Pi01 presentation -------------------------------

@dataclass(frozen=True)
class DefinitelyOut:
    a: Fraction
    n: int


@dataclass(frozen=True)
class ConsistentInUpTo:
    N: int
    witnesses: tuple[InC, ...]


def member_up_to(C: Cocut, a, N: int) -> DefinitelyOut | ConsistentInUpTo:
    """Probe ``a + 1/n`` for ``n = 1..N``; stop at the first ``NotInC(a)``."""
    a = Fraction(a)
    if N < 1:
        raise ValueError("N must be positive")
    seen = []
    for n in range(1, N + 1):
        ans = C.locate(a, a + Fraction(1, n))
        if isinstance(ans, NotInC):
            return DefinitelyOut(a, n)
        seen.append(ans)
    return ConsistentInUpTo(N, tuple(seen))


@dataclass(frozen=True)
class NotInX:
    a: Fraction


@dataclass(frozen=True)
class RHolds:
    a: Fraction
    n: int

    @property
    def point(self) -> Fraction:
        return self.a + Fraction(1, self.n)


class DecisionFamily:
    """``d(a, n)``: either ``a`` is not in ``C`` or ``a + 1/n`` is."""

    def __init__(self, C: Cocut):
        self.cocut = C

    def __call__(self, a, n: int) -> NotInX | RHolds:
        if n < 1:
            raise ValueError("n must be positive")
        a = Fraction(a)
        ans = self.cocut.locate(a, a + Fraction(1, n))
        return NotInX(a) if isinstance(ans, NotInC) else RHolds(a, n)

    def sample(self, points: Iterable, ns: Iterable[int]) -> dict:
        ns = list(ns)
        return {(Fraction(a), n): self(a, n) for a in points for n in ns}

    def to_json(self, points: Iterable, ns: Iterable[int]) -> dict:
        """Sampled family as ``{"a": ..., "n": ..., "branch": "R"|"notX"}`` rows."""
        rows = []
        for (a, n), d in self.sample(points, ns).items():
            rows.append({"a": str(a), "n": n,
                         "branch": "R" if isinstance(d, RHolds) else "notX"})
        return {"cocut": self.cocut.name, "rows": rows}


def weakly_pi01(C: Cocut) -> DecisionFamily:
    return DecisionFamily(C)


def negneg_decide(d: DecisionFamily, a, n: int) -> RHolds:
    """Use a double-negated membership of ``a`` to extract ``R_{a,n}``.

    The decision family offers ``R_{a,n}`` or a refutation of ``a in C``;
    the refutation contradicts the caller's promise, reported as
    :class:`PromiseViolation`.
    """
    out = d(a, n)
    if isinstance(out, NotInX):
        raise PromiseViolation(
            f"{Fraction(a)} is not in {d.cocut.name} (refuted at n = {n})")
    return out
