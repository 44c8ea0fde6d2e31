"""Backtracking search for natural transformations between truncated sets.

Every element ``x`` of the source at level ``n`` is a variable whose value is
an element of the target at level ``n``.  Naturality links ``x`` to each
restriction ``X_s(x)``; choosing a value for ``x`` fixes the values of its
whole orbit, which is how choices at one level propagate to every other level.
Candidate sets are first pruned to arc consistency.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Iterator

from ..cube import all_morphisms
from .core import TCSet, TCSetMor, fibers, morphism

Allowed = Callable[[int, str], Iterable[str]]


def _orbits(X: TCSet):
    nbrs = {}
    for n, x in X.elements():
        nbrs[(n, x)] = []
    for s in all_morphisms(X.trunc):
        row = X.action[s]
        for x in X.levels[s.cod]:
            nbrs[(s.cod, x)].append((s, (s.dom, row[x])))
    return nbrs


def natural_maps(X: TCSet, Y: TCSet, allowed: Allowed | None = None, *,
                 injective: bool = False, rng: random.Random | None = None,
                 ) -> Iterator[TCSetMor]:
    """Yield every natural map ``X -> Y`` whose values respect ``allowed``.

    ``allowed(n, x)`` lists the admissible images of ``x`` in ``Y_n``;
    ``injective`` restricts to level-wise injective maps.  With ``rng`` the
    candidate order is shuffled, so the first solution is a random one.
    """
    if X.trunc != Y.trunc:
        raise ValueError("truncations differ")
    nbrs = _orbits(X)
    dom = {}
    for n, x in X.elements():
        cands = Y.levels[n] if allowed is None else allowed(n, x)
        dom[(n, x)] = list(dict.fromkeys(cands))
    if not _arc_consistent(nbrs, dom, Y):
        return
    order = sorted(dom, key=lambda v: (len(dom[v]), -v[0], v[1]))
    if rng is not None:
        for v in order:
            rng.shuffle(dom[v])
    assigned: dict = {}
    used = [set() for _ in range(X.trunc + 1)]

    def assign(v, y, trail):
        """Assign ``v := y`` and everything naturality forces; False on conflict."""
        stack = [(v, y)]
        while stack:
            u, val = stack.pop()
            if u in assigned:
                if assigned[u] != val:
                    return False
                continue
            if val not in dom_sets[u]:
                return False
            if injective and val in used[u[0]]:
                return False
            assigned[u] = val
            if injective:
                used[u[0]].add(val)
            trail.append(u)
            for s, w in nbrs[u]:
                stack.append((w, Y.action[s][val]))
        return True

    def undo(trail):
        for u in reversed(trail):
            val = assigned.pop(u)
            if injective:
                used[u[0]].discard(val)

    dom_sets = {v: set(c) for v, c in dom.items()}

    def solve(i):
        while i < len(order) and order[i] in assigned:
            i += 1
        if i == len(order):
            comps = [{} for _ in range(X.trunc + 1)]
            for (n, x), y in assigned.items():
                comps[n][x] = y
            yield morphism(X, Y, comps)
            return
        v = order[i]
        for y in dom[v]:
            trail = []
            if assign(v, y, trail):
                yield from solve(i + 1)
            undo(trail)

    yield from solve(0)


def _arc_consistent(nbrs, dom, Y: TCSet) -> bool:
    sets = {v: set(c) for v, c in dom.items()}
    changed = True
    while changed:
        changed = False
        for v, cands in dom.items():
            keep = [y for y in cands
                    if all(Y.action[s][y] in sets[w] for s, w in nbrs[v])]
            if len(keep) != len(cands):
                if not keep:
                    return False
                dom[v] = keep
                sets[v] = set(keep)
                changed = True
    return True


def first_natural_map(X, Y, allowed=None, **kw) -> TCSetMor | None:
    return next(natural_maps(X, Y, allowed, **kw), None)


def find_iso(X: TCSet, Y: TCSet) -> TCSetMor | None:
    """Search for a natural isomorphism; ``None`` if there is none."""
    if X.trunc != Y.trunc or X.sizes != Y.sizes:
        return None
    return first_natural_map(X, Y, injective=True)


def find_section(p: TCSetMor, rng=None) -> TCSetMor | None:
    """A natural ``s`` with ``p . s = id``, or ``None``."""
    fib = [fibers(p, n) for n in range(p.trunc + 1)]
    return first_natural_map(p.target, p.source,
                             lambda n, b: fib[n][b], rng=rng)
