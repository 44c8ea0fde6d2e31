"""Representables, the adjoint triple Delta -| Gamma -| Nabla, and (co)limits.

All limits and colimits are computed level-wise.  Constructed elements get
readable names (``(x,y)`` for pairs, ``inl(x)``/``inr(y)`` for coproduct
injections, ``<z0,z1,...>`` for functions on points); the structure maps are
returned alongside so nothing ever parses these names back.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from ..cube import (CubeMor, all_morphisms, bang, compose, enum_homs,
                    format_coords, points)
from ..errors import InvariantError, PreconditionError
from .core import TCSet, TCSetMor, morphism, validate


def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


def tuple_name(values: Sequence[str]) -> str:
    return "<" + ",".join(values) + ">"


def build(trunc: int, levels: Sequence[Sequence[str]],
          act: Callable[[CubeMor, str], str]) -> TCSet:
    """Tabulate ``act`` over every cube morphism and validate the result."""
    levels = [list(lv) for lv in levels]
    for n, lv in enumerate(levels):
        if len(set(lv)) != len(lv):
            raise InvariantError(f"element names collide at level {n}")
    action = {s: {x: act(s, x) for x in levels[s.cod]}
              for s in all_morphisms(trunc)}
    return validate(trunc, levels, action)


def yoneda(n: int, trunc: int) -> TCSet:
    """The representable ``y[n]``: level m is ``Hom([m], [n])``."""
    homs = {format_coords(g.coords): g
            for m in range(trunc + 1) for g in enum_homs(m, n)}
    levels = [[format_coords(g.coords) for g in enum_homs(m, n)]
              for m in range(trunc + 1)]

    def act(s, name):
        g = CubeMor(s.cod, n, homs[name].coords)
        return format_coords(compose(g, s).coords)

    return build(trunc, levels, act)


def yoneda_element(g: CubeMor) -> str:
    """Name of ``g : [m] -> [n]`` as an element of ``yoneda(n, D)`` at level m."""
    return format_coords(g.coords)


def delta_const(Z: Iterable[str], trunc: int) -> TCSet:
    Z = list(Z)
    return build(trunc, [Z] * (trunc + 1), lambda s, z: z)


def delta_map(h: Mapping[str, str], source: TCSet, target: TCSet) -> TCSetMor:
    """``Delta(h)`` between two constant truncated sets."""
    return morphism(source, target, [dict(h)] * (source.trunc + 1))


def gamma(X: TCSet) -> tuple[str, ...]:
    """Global sections; since ``1 = y[0]`` this is just level 0."""
    return X.levels[0]


def gamma_map(f: TCSetMor) -> dict[str, str]:
    return dict(f.components[0])


def terminal(trunc: int) -> TCSet:
    return delta_const(["*"], trunc)


def initial(trunc: int) -> TCSet:
    return delta_const([], trunc)


def to_terminal(X: TCSet) -> TCSetMor:
    T = terminal(X.trunc)
    return morphism(X, T, [{x: "*" for x in lv} for lv in X.levels])


def _point_index(n: int) -> dict[CubeMor, int]:
    return {p: i for i, p in enumerate(points(n))}


class NablaData(NamedTuple):
    obj: TCSet
    functions: Mapping[str, tuple[str, ...]]


def nabla_data(Z: Iterable[str], trunc: int) -> NablaData:
    """``Nabla(Z)``: level n is all functions ``points(n) -> Z``.

    ``functions`` maps each element name to its value tuple, listed in the
    order of ``points(n)``.
    """
    import itertools
    Z = list(Z)
    funcs: dict[str, tuple[str, ...]] = {}
    levels = []
    for n in range(trunc + 1):
        lv = []
        for vals in itertools.product(Z, repeat=len(points(n))):
            name = tuple_name(vals)
            if name in funcs and funcs[name] != vals:
                raise InvariantError("function names collide")
            funcs[name] = vals
            lv.append(name)
        levels.append(lv)
    idx = {n: _point_index(n) for n in range(trunc + 1)}

    def act(s, name):
        h = funcs[name]
        return tuple_name([h[idx[s.cod][compose(s, p)]] for p in points(s.dom)])

    return NablaData(build(trunc, levels, act), funcs)


def nabla(Z: Iterable[str], trunc: int) -> TCSet:
    return nabla_data(Z, trunc).obj


# -- adjunction transposes -------------------------------------------------

def delta_transpose(h: Mapping[str, str], Z: Sequence[str],
                    X: TCSet) -> TCSetMor:
    """The map ``Delta Z -> X`` corresponding to ``h : Z -> Gamma X``."""
    DZ = delta_const(Z, X.trunc)
    comps = [{z: X.action[bang(n)][h[z]] for z in Z}
             for n in range(X.trunc + 1)]
    return morphism(DZ, X, comps)


def nabla_transpose(h: Mapping[str, str], X: TCSet,
                    Z: Sequence[str]) -> TCSetMor:
    """The map ``X -> Nabla Z`` corresponding to ``h : Gamma X -> Z``."""
    NZ = nabla(Z, X.trunc)
    comps = [{x: tuple_name([h[X.action[p][x]] for p in points(n)])
              for x in X.levels[n]} for n in range(X.trunc + 1)]
    return morphism(X, NZ, comps)


def nabla_untranspose(phi: TCSetMor, data: NablaData) -> dict[str, str]:
    """Inverse of :func:`nabla_transpose`: read off the level-0 component."""
    return {x: data.functions[phi.components[0][x]][0]
            for x in phi.source.levels[0]}


# -- limits ----------------------------------------------------------------

class Product(NamedTuple):
    obj: TCSet
    proj1: TCSetMor
    proj2: TCSetMor


def product(X: TCSet, Y: TCSet) -> Product:
    _same_trunc(X, Y)
    pairs = {}
    levels = []
    for n in range(X.trunc + 1):
        lv = []
        for x in X.levels[n]:
            for y in Y.levels[n]:
                name = pair_name(x, y)
                pairs[name] = (x, y)
                lv.append(name)
        levels.append(lv)

    def act(s, name):
        x, y = pairs[name]
        return pair_name(X.action[s][x], Y.action[s][y])

    P = build(X.trunc, levels, act)
    p1 = morphism(P, X, [{p: pairs[p][0] for p in lv} for lv in P.levels])
    p2 = morphism(P, Y, [{p: pairs[p][1] for p in lv} for lv in P.levels])
    return Product(P, p1, p2)


def pullback(f: TCSetMor, g: TCSetMor) -> Product:
    """``X x_Z Y`` for ``f : X -> Z`` and ``g : Y -> Z``, with both projections."""
    if not f.target.same_as(g.target):
        raise PreconditionError("pullback needs a common codomain")
    X, Y = f.source, g.source
    pairs = {}
    levels = []
    for n in range(X.trunc + 1):
        over = {}
        for y in Y.levels[n]:
            over.setdefault(g.components[n][y], []).append(y)
        lv = []
        for x in X.levels[n]:
            for y in over.get(f.components[n][x], ()):
                name = pair_name(x, y)
                pairs[name] = (x, y)
                lv.append(name)
        levels.append(lv)

    def act(s, name):
        x, y = pairs[name]
        return pair_name(X.action[s][x], Y.action[s][y])

    P = build(X.trunc, levels, act)
    p1 = morphism(P, X, [{p: pairs[p][0] for p in lv} for lv in P.levels])
    p2 = morphism(P, Y, [{p: pairs[p][1] for p in lv} for lv in P.levels])
    return Product(P, p1, p2)


def check_pullback_universal(f: TCSetMor, g: TCSetMor, pb: Product) -> bool:
    """Exhaustive cone check against every representable ``y[n]``.

    By Yoneda a cone from ``y[n]`` is a pair ``(x, y)`` at level n with
    ``f(x) = g(y)``; the universal property says these correspond one-to-one
    with elements of the pullback at level n via the two projections.
    """
    for n in range(f.trunc + 1):
        cones = {(x, y) for x in f.source.levels[n] for y in g.source.levels[n]
                 if f.components[n][x] == g.components[n][y]}
        mediated = [(pb.proj1.components[n][p], pb.proj2.components[n][p])
                    for p in pb.obj.levels[n]]
        if len(set(mediated)) != len(mediated) or set(mediated) != cones:
            return False
    return True


class Coproduct(NamedTuple):
    obj: TCSet
    inl: TCSetMor
    inr: TCSetMor


def coproduct(X: TCSet, Y: TCSet) -> Coproduct:
    _same_trunc(X, Y)
    levels = [[f"inl({x})" for x in X.levels[n]] + [f"inr({y})" for y in Y.levels[n]]
              for n in range(X.trunc + 1)]
    back = {}
    for n in range(X.trunc + 1):
        for x in X.levels[n]:
            back[f"inl({x})"] = (X, x, "inl")
        for y in Y.levels[n]:
            back[f"inr({y})"] = (Y, y, "inr")

    def act(s, name):
        obj, x, tag = back[name]
        return f"{tag}({obj.action[s][x]})"

    S = build(X.trunc, levels, act)
    inl = morphism(X, S, [{x: f"inl({x})" for x in lv} for lv in X.levels])
    inr = morphism(Y, S, [{y: f"inr({y})" for y in lv} for lv in Y.levels])
    return Coproduct(S, inl, inr)


def copair(f: TCSetMor, g: TCSetMor, cp: Coproduct) -> TCSetMor:
    """The map out of a coproduct induced by ``f`` and ``g``."""
    comps = []
    for n in range(cp.obj.trunc + 1):
        c = {}
        for x, name in cp.inl.components[n].items():
            c[name] = f.components[n][x]
        for y, name in cp.inr.components[n].items():
            c[name] = g.components[n][y]
        comps.append(c)
    return morphism(cp.obj, f.target, comps)


def truncate(X: TCSet, k: int) -> TCSet:
    """Restrict to dimensions ``0..k``."""
    if not 0 <= k <= X.trunc:
        raise PreconditionError(f"cannot truncate at {k}")
    action = {s: row for s, row in X.action.items()
              if s.dom <= k and s.cod <= k}
    return TCSet(k, X.levels[:k + 1], action)


def truncate_mor(f: TCSetMor, k: int) -> TCSetMor:
    return TCSetMor(truncate(f.source, k), truncate(f.target, k),
                    f.components[:k + 1])


class Quotient(NamedTuple):
    obj: TCSet
    quotient_map: TCSetMor


def quotient(X: TCSet, identify: Iterable[tuple[int, str, str]]) -> Quotient:
    """Quotient by the smallest congruence containing the given pairs.

    Each pair ``(n, x, x')`` identifies two elements of level n.  The
    congruence is closed under every restriction map, so identifying two
    points also identifies their degeneracies at all higher levels.
    Classes are named by their first element in level order.
    """
    parent = {}

    def find(u):
        while parent.get(u, u) != u:
            parent[u] = parent.get(parent[u], parent[u])
            u = parent[u]
        return u

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[rv] = ru
        return True

    pending = [((n, a), (n, b)) for n, a, b in identify]
    while pending:
        u, v = pending.pop()
        if not union(u, v):
            continue
        (n, a), (_, b) = u, v
        for s in all_morphisms(X.trunc):
            if s.cod == n:
                pending.append(((s.dom, X.action[s][a]), (s.dom, X.action[s][b])))
    # union-find merges by arbitrary root; pick canonical names afterwards
    rep = {}
    levels = []
    for n, lv in enumerate(X.levels):
        out = []
        for x in lv:
            r = find((n, x))
            if r not in rep:
                rep[r] = x
                out.append(x)
        levels.append(out)
    qmap = [{x: rep[find((n, x))] for x in lv} for n, lv in enumerate(X.levels)]
    Q = build(X.trunc, levels,
              lambda s, c: qmap[s.dom][X.action[s][c]])
    return Quotient(Q, morphism(X, Q, qmap))


def _same_trunc(X: TCSet, Y: TCSet) -> None:
    if X.trunc != Y.trunc:
        raise PreconditionError(
            f"truncations differ: {X.trunc} vs {Y.trunc}")
