"""Dimension-truncated cubical sets, their morphisms and subobjects.

A :class:`TCSet` stores, for each dimension ``n <= trunc``, an ordered tuple of
opaque string elements, and for each cube morphism ``s : [m] -> [n]`` with
``m, n <= trunc`` the restriction function ``X_s : X_n -> X_m`` as a dict.
Every constructor validates functoriality (or naturality, for morphisms)
before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..cube import (CubeMor, all_morphisms, composable_pairs,
                    enum_homs, format_mor, identity)
from ..errors import FunctorialityError, NaturalityError, PreconditionError


@dataclass(frozen=True, eq=False)
class TCSet:
    trunc: int
    levels: tuple[tuple[str, ...], ...]
    action: Mapping[CubeMor, Mapping[str, str]]

    def level(self, n: int) -> tuple[str, ...]:
        return self.levels[n]

    def act(self, s: CubeMor, x: str) -> str:
        return self.action[s][x]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(lv) for lv in self.levels)

    def elements(self):
        for n, lv in enumerate(self.levels):
            for x in lv:
                yield n, x

    def is_empty(self) -> bool:
        return not any(self.levels)

    def same_as(self, other: TCSet) -> bool:
        """Literal equality of level sets and action tables."""
        return (self.trunc == other.trunc
                and all(set(a) == set(b)
                        for a, b in zip(self.levels, other.levels))
                and self.action == other.action)

    def __repr__(self):
        return f"TCSet(trunc={self.trunc}, sizes={self.sizes})"


def validate(trunc: int, levels: Sequence[Sequence[str]],
             action: Mapping[CubeMor, Mapping[str, str]]) -> TCSet:
    """Build a :class:`TCSet`, filling in identity actions and checking laws.

    Raises :class:`FunctorialityError` naming the first failing equation.
    """
    if trunc < 0:
        raise FunctorialityError("truncation dimension must be >= 0")
    if len(levels) != trunc + 1:
        raise FunctorialityError(
            f"expected {trunc + 1} levels, got {len(levels)}")
    lv = tuple(tuple(level) for level in levels)
    for n, level in enumerate(lv):
        if len(set(level)) != len(level):
            raise FunctorialityError(f"duplicate element at level {n}")
        for x in level:
            if not isinstance(x, str):
                raise FunctorialityError(
                    f"element {x!r} at level {n} is not a string")
    table: dict[CubeMor, dict[str, str]] = {}
    for s in all_morphisms(trunc):
        given = action.get(s)
        if given is None:
            if s.dom == s.cod and s == identity(s.dom):
                given = {x: x for x in lv[s.cod]}
            else:
                raise FunctorialityError(
                    f"missing action for {format_mor(s)}", witness=(s,))
        row = dict(given)
        src, tgt = lv[s.cod], set(lv[s.dom])
        if set(row) != set(src):
            raise FunctorialityError(
                f"action of {format_mor(s)} is not defined exactly on "
                f"level {s.cod}", witness=(s,))
        for x in src:
            if row[x] not in tgt:
                raise FunctorialityError(
                    f"action of {format_mor(s)} sends {x!r} to "
                    f"{row[x]!r}, not in level {s.dom}", witness=(s, x))
        table[s] = row
    extra = set(action) - set(table)
    if extra:
        s = min(extra)
        raise FunctorialityError(
            f"action given for {format_mor(s)} outside truncation {trunc}",
            witness=(s,))
    X = TCSet(trunc, lv, table)
    check_functorial(X)
    return X


def check_functorial(X: TCSet) -> None:
    for n in range(X.trunc + 1):
        ident = identity(n)
        for x in X.levels[n]:
            if X.action[ident][x] != x:
                raise FunctorialityError(
                    f"identity on [{n}] moves {x!r}", witness=(ident, x))
    levels = X.levels
    for s, t, ts in composable_pairs(X.trunc):
        Xs, Xt, Xts = X.action[s], X.action[t], X.action[ts]
        for x in levels[t.cod]:
            if Xts[x] != Xs[Xt[x]]:
                raise FunctorialityError(
                    f"X_(t.s) != X_s . X_t for "
                    f"s = {format_mor(s)}, t = {format_mor(t)} "
                    f"at {x!r}", witness=(s, t, x))


@dataclass(frozen=True, eq=False)
class TCSetMor:
    source: TCSet
    target: TCSet
    components: tuple[Mapping[str, str], ...]

    def __call__(self, n: int, x: str) -> str:
        return self.components[n][x]

    @property
    def trunc(self) -> int:
        return self.source.trunc

    def same_as(self, other: TCSetMor) -> bool:
        return (self.source.same_as(other.source)
                and self.target.same_as(other.target)
                and all(dict(a) == dict(b) for a, b in
                        zip(self.components, other.components)))

    def __repr__(self):
        return f"TCSetMor({self.source!r} -> {self.target!r})"


def morphism(source: TCSet, target: TCSet,
             components: Sequence[Mapping[str, str]]) -> TCSetMor:
    """Build and validate a natural transformation between truncated sets."""
    if source.trunc != target.trunc:
        raise NaturalityError(
            f"truncations differ: {source.trunc} vs {target.trunc}")
    if len(components) != source.trunc + 1:
        raise NaturalityError("one component per level is required")
    comps = []
    for n, comp in enumerate(components):
        comp = dict(comp)
        if set(comp) != set(source.levels[n]):
            raise NaturalityError(
                f"component {n} is not defined exactly on the source level")
        tgt = set(target.levels[n])
        for x, y in comp.items():
            if y not in tgt:
                raise NaturalityError(
                    f"component {n} sends {x!r} to {y!r}, not in the target",
                    witness=(n, x))
        comps.append(comp)
    f = TCSetMor(source, target, tuple(comps))
    check_natural(f)
    return f


def check_natural(f: TCSetMor) -> None:
    X, Y = f.source, f.target
    for s in all_morphisms(X.trunc):
        Xs, Ys = X.action[s], Y.action[s]
        fm, fn = f.components[s.dom], f.components[s.cod]
        for x in X.levels[s.cod]:
            if fm[Xs[x]] != Ys[fn[x]]:
                raise NaturalityError(
                    f"f_m . X_s != Y_s . f_n for s = {format_mor(s)} at {x!r}",
                    witness=(s, x))


def identity_mor(X: TCSet) -> TCSetMor:
    return TCSetMor(X, X, tuple({x: x for x in lv} for lv in X.levels))


def compose_mor(g: TCSetMor, f: TCSetMor) -> TCSetMor:
    """``g . f``, with ``f`` applied first."""
    if f.target is not g.source and not f.target.same_as(g.source):
        raise NaturalityError("morphisms are not composable")
    return TCSetMor(f.source, g.target, tuple(
        {x: gc[y] for x, y in fc.items()}
        for fc, gc in zip(f.components, g.components)))


def is_mono(f: TCSetMor) -> bool:
    return all(len(set(c.values())) == len(c) for c in f.components)


def is_epi(f: TCSetMor) -> bool:
    return all(set(c.values()) == set(lv)
               for c, lv in zip(f.components, f.target.levels))


def is_iso(f: TCSetMor) -> bool:
    return is_mono(f) and is_epi(f)


def fibers(f: TCSetMor, n: int) -> dict[str, list[str]]:
    """Map each element of ``Y_n`` to its (ordered) preimage in ``X_n``."""
    out = {y: [] for y in f.target.levels[n]}
    for x in f.source.levels[n]:
        out[f.components[n][x]].append(x)
    return out


@dataclass(frozen=True, eq=False)
class Subobject:
    ambient: TCSet
    members: tuple[frozenset[str], ...]

    def __contains__(self, item):
        n, y = item
        return y in self.members[n]

    def same_as(self, other: Subobject) -> bool:
        return self.members == other.members

    def is_full(self) -> bool:
        return all(len(a) == len(lv)
                   for a, lv in zip(self.members, self.ambient.levels))

    def is_empty(self) -> bool:
        return not any(self.members)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.members)

    def as_tcset(self) -> TCSet:
        Y = self.ambient
        levels = tuple(tuple(y for y in lv if y in a)
                       for lv, a in zip(Y.levels, self.members))
        action = {s: {y: row[y] for y in levels[s.cod]}
                  for s, row in Y.action.items()}
        return TCSet(Y.trunc, levels, action)

    def inclusion(self) -> TCSetMor:
        A = self.as_tcset()
        return TCSetMor(A, self.ambient,
                        tuple({y: y for y in lv} for lv in A.levels))

    def __repr__(self):
        return f"Subobject(sizes={self.sizes()} of {self.ambient.sizes})"


def subobject(Y: TCSet, members: Sequence) -> Subobject:
    """Wrap level subsets of ``Y``, checking they are closed under the action."""
    if len(members) != Y.trunc + 1:
        raise PreconditionError("one member set per level is required")
    mem = tuple(frozenset(a) for a in members)
    for n, a in enumerate(mem):
        stray = a - set(Y.levels[n])
        if stray:
            raise PreconditionError(
                f"{sorted(stray)[0]!r} is not an element of level {n}")
    for s in all_morphisms(Y.trunc):
        row = Y.action[s]
        for y in mem[s.cod]:
            if row[y] not in mem[s.dom]:
                raise PreconditionError(
                    f"subobject not closed: {format_mor(s)} sends {y!r} "
                    f"outside it")
    return Subobject(Y, mem)


def closure(Y: TCSet, generators) -> Subobject:
    """The smallest subobject containing the given ``(level, element)`` pairs."""
    mem = [set() for _ in range(Y.trunc + 1)]
    for n, y in generators:
        if y not in Y.action[identity(n)]:
            raise PreconditionError(f"{y!r} is not an element of level {n}")
        for m in range(Y.trunc + 1):
            for s in enum_homs(m, n):
                mem[m].add(Y.action[s][y])
    return Subobject(Y, tuple(frozenset(a) for a in mem))


def image(f: TCSetMor) -> Subobject:
    return Subobject(f.target,
                     tuple(frozenset(c.values()) for c in f.components))


def full(Y: TCSet) -> Subobject:
    return Subobject(Y, tuple(frozenset(lv) for lv in Y.levels))


def empty_sub(Y: TCSet) -> Subobject:
    return Subobject(Y, tuple(frozenset() for _ in Y.levels))
