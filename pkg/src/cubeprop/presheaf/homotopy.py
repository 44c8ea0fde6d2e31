"""Path objects, h-propositions, point lifts and the Gamma-transfer argument.

Kan fibration structure is replaced throughout by a *point-lifting
structure*: chosen fillers for squares whose left side is a point inclusion
``y[0] -> y[n]``.  Those inclusions are trivial cofibrations, and they are the
only lifting problems used by the naturality-square and classifier arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from ..cube import (CubeMor, enum_homs, extend, face, format_mor, points,
                    projection)
from ..errors import InstanceTooLarge, PreconditionError, TruncationError
from .constructions import (NablaData, Product, delta_const, gamma,
                            nabla_data, nabla_transpose, pair_name, pullback,
                            truncate, truncate_mor, tuple_name)
from .core import TCSet, TCSetMor, fibers, is_mono, morphism
from .search import find_section


def interval_exponential(X: TCSet) -> TCSet:
    """``X^I`` truncated one level lower: level n is ``X_{n+1}``."""
    if X.trunc < 1:
        raise TruncationError("the interval exponential needs trunc >= 1")
    D = X.trunc - 1
    levels = X.levels[1:]
    action = {}
    for m in range(D + 1):
        for n in range(D + 1):
            for s in enum_homs(m, n):
                action[s] = X.action[extend(s)]
    return TCSet(D, levels, action)


def exp_mor(f: TCSetMor) -> TCSetMor:
    return TCSetMor(interval_exponential(f.source),
                    interval_exponential(f.target), f.components[1:])


def constant_paths(X: TCSet) -> TCSetMor:
    """``X -> X^I`` (on ``X`` truncated to ``trunc - 1``)."""
    XI = interval_exponential(X)
    Xt = truncate(X, XI.trunc)
    return morphism(Xt, XI, [{x: X.action[projection(n)][x] for x in Xt.levels[n]}
                             for n in range(XI.trunc + 1)])


def endpoint(X: TCSet, e: int) -> TCSetMor:
    """Evaluation ``X^I -> X`` at the end ``e`` of the interval."""
    XI = interval_exponential(X)
    Xt = truncate(X, XI.trunc)
    return morphism(XI, Xt, [{x: X.action[face(n, e)][x] for x in XI.levels[n]}
                             for n in range(XI.trunc + 1)])


class PathObject(NamedTuple):
    obj: TCSet
    boundary: TCSetMor
    fiber_product: Product


def path_object(f: TCSetMor) -> PathObject:
    """``Path_Y(X)`` with its boundary map to ``X x_Y X``, at ``trunc - 1``.

    ``Path_Y(X)`` is the pullback of ``X^I -> Y^I`` along the constant-path
    map ``Y -> Y^I``: paths in ``X`` lying over a constant path of ``Y``.
    """
    X, Y = f.source, f.target
    if X.trunc < 1:
        raise TruncationError("path objects need trunc >= 1")
    D = X.trunc - 1
    paths = pullback(exp_mor(f), constant_paths(Y))
    ft = truncate_mor(f, D)
    xx = pullback(ft, ft)
    comps = []
    for n in range(D + 1):
        d0, d1 = face(n, 0), face(n, 1)
        comps.append({
            p: pair_name(X.action[d0][x], X.action[d1][x])
            for p, x in paths.proj1.components[n].items()})
    boundary = morphism(paths.obj, xx.obj, comps)
    return PathObject(paths.obj, boundary, xx)


def is_hprop(f: TCSetMor, limit: int | None = 64) -> TCSetMor | None:
    """A section of ``Path_Y(X) -> X x_Y X`` (levels up to ``trunc - 1``).

    Returns ``None`` when no section exists.  ``limit`` bounds the level
    sizes of ``X`` the search is attempted on.
    """
    if f.trunc < 1:
        raise TruncationError("h-proposition checks need trunc >= 1")
    if limit is not None and max(f.source.sizes) > limit:
        raise InstanceTooLarge(
            f"level sizes {f.source.sizes} exceed the search cap {limit}")
    po = path_object(f)
    return find_section(po.boundary)


# -- point lifts -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PointLiftStructure:
    """Chosen fillers ``x'`` for every point-lifting problem of ``carrier``.

    ``table[(n, p, x, y)] = x'`` where ``p : [0] -> [n]``, ``x`` in ``X_0``,
    ``y`` in ``Y_n`` with ``f_0(x) = Y_p(y)``; the filler satisfies
    ``f_n(x') = y`` and ``X_p(x') = x``.
    """
    carrier: TCSetMor
    table: Mapping[tuple[int, CubeMor, str, str], str] = field(repr=False)

    def lift(self, n, p, x, y):
        return self.table[(n, p, x, y)]

    def verify(self) -> bool:
        f = self.carrier
        X = f.source
        expected = set(_lifting_problems(f))
        if set(self.table) != expected:
            return False
        for (n, p, x, y), xl in self.table.items():
            if f.components[n][xl] != y or X.action[p][xl] != x:
                return False
        return True


def _lifting_problems(f: TCSetMor):
    Y = f.target
    over0 = fibers(f, 0)
    for n in range(f.trunc + 1):
        for p in points(n):
            for y in Y.levels[n]:
                for x in over0[Y.action[p][y]]:
                    yield (n, p, x, y)


def find_point_lifts(f: TCSetMor) -> PointLiftStructure | None:
    """Brute-force a total lift table; ``None`` if some problem has no filler."""
    X = f.source
    fib = [fibers(f, n) for n in range(f.trunc + 1)]
    table = {}
    for n, p, x, y in _lifting_problems(f):
        sols = [xl for xl in fib[n][y] if X.action[p][xl] == x]
        if not sols:
            return None
        table[(n, p, x, y)] = sols[0]
    return PointLiftStructure(f, table)


@dataclass
class NatPullbackReport:
    s: CubeMor
    ok: bool
    counterexample: tuple | None = None

    def describe(self) -> str:
        if self.ok:
            return f"naturality square at {format_mor(self.s)} is a pullback"
        y, fib, target_fib = self.counterexample
        return (f"naturality square at {format_mor(self.s)} is not a pullback: "
                f"fiber over {y!r} is {fib}, restricted fiber is {target_fib}")


def check_nat_pullback(f: TCSetMor, s: CubeMor) -> NatPullbackReport:
    """Check that the naturality square of ``f`` at ``s : [m] -> [n]`` is a pullback.

    The square is ``X_n -> X_m`` over ``Y_n -> Y_m``; it is a pullback iff for
    every ``y`` in ``Y_n``, ``X_s`` restricts to a bijection from the fiber of
    ``f_n`` over ``y`` onto the fiber of ``f_m`` over ``Y_s(y)``.
    Holds for monomorphisms with point lifts; without lifts it can fail.
    """
    X, Y = f.source, f.target
    m, n = s.dom, s.cod
    fib_n, fib_m = fibers(f, n), fibers(f, m)
    Xs = X.action[s]
    for y in Y.levels[n]:
        src = fib_n[y]
        tgt = fib_m[Y.action[s][y]]
        image = [Xs[x] for x in src]
        if len(set(image)) != len(image) or set(image) != set(tgt):
            return NatPullbackReport(s, False, (y, src, tgt))
    return NatPullbackReport(s, True)


# -- de-truncation over a constant base ------------------------------------

class NablaRel(NamedTuple):
    obj: TCSet
    proj: TCSetMor
    unit: TCSetMor
    to_nabla: TCSetMor
    nabla: NablaData


def nabla_rel(Z, f: TCSetMor) -> NablaRel:
    """``Nabla_Z Gamma W`` for ``f : W -> Delta Z``.

    Built literally as the pullback of ``Nabla(Gamma f) : Nabla Gamma W ->
    Nabla Z`` along the transpose ``Delta Z -> Nabla Z`` of the unit
    isomorphism.  Also returns the canonical map ``W -> Nabla_Z Gamma W``
    induced by the unit of ``Gamma -| Nabla``.
    """
    W = f.source
    Z = list(Z)
    DZ = f.target
    if set(gamma(DZ)) != set(Z) or not DZ.same_as(delta_const(Z, W.trunc)):
        raise PreconditionError("target of f must be delta_const(Z)")
    D = W.trunc
    nz = nabla_data(Z, D)
    nw = nabla_data(gamma(W), D)
    gf = f.components[0]
    into_nz = morphism(nw.obj, nz.obj, [
        {h: tuple_name([gf[w] for w in nw.functions[h]]) for h in nw.obj.levels[n]}
        for n in range(D + 1)])
    const = nabla_transpose({z: z for z in Z}, DZ, Z)
    pb = pullback(const, into_nz)
    unit_w = nabla_transpose({w: w for w in gamma(W)}, W, gamma(W))
    unit = morphism(W, pb.obj, [
        {w: pair_name(f.components[n][w], unit_w.components[n][w])
         for w in W.levels[n]} for n in range(D + 1)])
    return NablaRel(pb.obj, pb.proj1, unit, pb.proj2, nw)


def gamma_section_transfer(Z, f: TCSetMor, rel: NablaRel,
                           section: TCSetMor) -> dict[str, str]:
    """Turn a section of ``Nabla_Z Gamma W -> Delta Z`` into one of ``Gamma W -> Z``.

    The level-0 component of the section picks, for each ``z``, a function on
    the single point of ``[0]``; its value is the chosen element of ``W_0``.
    """
    for n in range(section.trunc + 1):
        for z, e in section.components[n].items():
            if rel.proj.components[n][e] != z:
                raise PreconditionError(f"not a section at {z!r}, level {n}")
    out = {}
    for z in Z:
        h = rel.to_nabla.components[0][section.components[0][z]]
        (w,) = rel.nabla.functions[h]
        out[z] = w
    gf = f.components[0]
    for z, w in out.items():
        if gf[w] != z:
            raise PreconditionError(f"transferred section misses {z!r}")
    return out


def mono_has_point_lifts(f: TCSetMor) -> bool:
    return is_mono(f) and find_point_lifts(f) is not None
