"""Seeded instance generators for truncated cubical sets and maps.

Every generator takes a :class:`random.Random` (or a seed) and returns
objects that already passed :func:`~cubeprop.presheaf.validate`; equal seeds
give byte-identical serialisations.

Recipes
-------
constant
    ``Delta Z`` on ``size`` fresh names.
representable
    ``y[n]``.
subobject-of-product
    ``Y = A x B`` for two random small base pieces, and a union of
    point-graph components of ``Y`` (see :func:`components`).  Its inclusion
    is a mono with point lifts.
negation-image
    ``neg_map`` of a subobject-of-product inclusion; again a mono with
    point lifts, since the complement of a union of components is one.
random-quotient
    A random base piece quotiented by the congruence generated by one to
    three random pairs at random levels.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .errors import PreconditionError
from .presheaf import (Subobject, TCSet, TCSetMor, build, closure, coproduct,
                       delta_const, morphism, nabla, neg_map, product, quotient,
                       subobject, yoneda)
from .cube import points

KINDS = ("constant", "representable", "subobject-of-product",
         "negation-image", "random-quotient")


def _rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def loop(trunc: int) -> TCSet:
    """``y[1]`` with its two endpoints glued."""
    Y = yoneda(1, trunc)
    return quotient(Y, [(0, "[c0]", "[c1]")]).obj


def base_pieces(trunc: int, size: int) -> list[tuple[str, TCSet]]:
    """Small named building blocks whose level sizes are at most ``size``."""
    return [(name, X) for name, X in _pieces(trunc) if max(X.sizes) <= size]


@lru_cache(maxsize=None)
def _pieces(trunc: int):
    return (
        ("1", yoneda(0, trunc)),
        ("D2", delta_const(["a", "b"], trunc)),
        ("D3", delta_const(["a", "b", "c"], trunc)),
        ("y1", yoneda(1, trunc)),
        ("L", loop(trunc)),
        ("N2", nabla(["0", "1"], trunc)),
        ("y2", yoneda(2, trunc)),
    )


def random_base(rng, trunc: int, size: int) -> tuple[str, TCSet]:
    """A coproduct of one to three base pieces, within the level-size cap."""
    rng = _rng(rng)
    pieces = base_pieces(trunc, size)
    if not pieces:
        raise PreconditionError(f"no base piece fits level size {size}")
    name, X = rng.choice(pieces)
    for _ in range(rng.randint(0, 2)):
        n2, X2 = rng.choice(pieces)
        if max(a + b for a, b in zip(X.sizes, X2.sizes)) > size:
            break
        X = coproduct(X, X2).obj
        name = f"{name}+{n2}"
    return name, X


def components(Y: TCSet) -> list[frozenset[str]]:
    """Classes of ``Y_0`` under "both are points of one element"."""
    parent = {y: y for y in Y.levels[0]}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for n in range(1, Y.trunc + 1):
        for y in Y.levels[n]:
            ends = [Y.action[p][y] for p in points(n)]
            for e in ends[1:]:
                ra, rb = find(ends[0]), find(e)
                if ra != rb:
                    parent[rb] = ra
    groups: dict[str, list[str]] = {}
    for y in Y.levels[0]:
        groups.setdefault(find(y), []).append(y)
    return [frozenset(g) for g in groups.values()]


def component_subobject(Y: TCSet, chosen) -> Subobject:
    """Elements all (equivalently, some) of whose points lie in ``chosen``."""
    chosen = set(chosen)
    members = [{y for y in Y.levels[n]
                if Y.action[points(n)[0]][y] in chosen}
               for n in range(Y.trunc + 1)]
    return subobject(Y, members)


def random_component_subobject(rng, Y: TCSet) -> Subobject:
    rng = _rng(rng)
    chosen = set()
    for comp in components(Y):
        if rng.random() < 0.5:
            chosen |= comp
    return component_subobject(Y, chosen)


# -- the five CLI kinds ----------------------------------------------------------

def gen_constant(size: int = 3, trunc: int = 2) -> TCSet:
    return delta_const([f"z{i}" for i in range(size)], trunc)


def gen_representable(n: int = 1, trunc: int = 2) -> TCSet:
    return yoneda(n, trunc)


def gen_subobject_of_product(seed, trunc: int = 2, size: int = 6) -> TCSetMor:
    """A mono with point lifts into a product of two base pieces."""
    rng = _rng(seed)
    pieces = base_pieces(trunc, size)
    while True:
        (_, A), (_, B) = rng.choice(pieces), rng.choice(pieces)
        if max(a * b for a, b in zip(A.sizes, B.sizes)) <= size:
            break
    Y = product(A, B).obj
    return random_component_subobject(rng, Y).inclusion()


def gen_negation_image(seed, trunc: int = 2, size: int = 6) -> TCSetMor:
    return neg_map(gen_subobject_of_product(seed, trunc, size))


def gen_random_quotient(seed, trunc: int = 2, size: int = 6) -> TCSet:
    rng = _rng(seed)
    _, X = random_base(rng, trunc, size)
    pairs = []
    for _ in range(rng.randint(1, 3)):
        n = rng.randrange(trunc + 1)
        if len(X.levels[n]) < 2:
            continue
        a, b = rng.sample(list(X.levels[n]), 2)
        pairs.append((n, a, b))
    return quotient(X, pairs).obj


def generate(kind: str, *, seed=0, trunc: int = 2, size: int = 6,
             n: int = 1) -> TCSet | TCSetMor:
    if kind == "constant":
        return gen_constant(size if size <= 6 else 3, trunc)
    if kind == "representable":
        return gen_representable(n, trunc)
    if kind == "subobject-of-product":
        return gen_subobject_of_product(seed, trunc, size)
    if kind == "negation-image":
        return gen_negation_image(seed, trunc, size)
    if kind == "random-quotient":
        return gen_random_quotient(seed, trunc, size)
    raise PreconditionError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


# -- corpora used by the verification suites -----------------------------------

def mono_with_lifts(seed, trunc: int = 2, size: int = 6) -> tuple[str, TCSetMor]:
    """A random base ``Y`` (coproduct of pieces) with a union of components."""
    rng = _rng(seed)
    name, Y = random_base(rng, trunc, size)
    A = random_component_subobject(rng, Y)
    return f"{name}/{'.'.join(map(str, A.sizes()))}", A.inclusion()


def random_subobject(seed, trunc: int = 2, size: int = 6) -> tuple[str, Subobject]:
    """Closure of a few random generators: usually without point lifts."""
    rng = _rng(seed)
    name, Y = random_base(rng, trunc, size)
    gens = []
    for _ in range(rng.randint(0, 3)):
        n = rng.randrange(trunc + 1)
        if Y.levels[n]:
            gens.append((n, rng.choice(list(Y.levels[n]))))
    return f"{name}/gens={len(gens)}", closure(Y, gens)


def fibred_nablas(seed, trunc: int = 2, max_fibre: int = 2, z_max: int = 3,
                  allow_empty: bool = False) -> tuple[str, list[str], TCSetMor]:
    """``W = sum_z Nabla(S_z) -> Delta Z``, an h-proposition over ``Delta Z``."""
    rng = _rng(seed)
    Z = [f"z{i}" for i in range(rng.randint(1, z_max))]
    lo = 0 if allow_empty else 1
    sizes = [rng.randint(lo, max_fibre) for _ in Z]
    W = _tagged_sum(Z, sizes, trunc)
    f = morphism(W, delta_const(Z, trunc),
                 [{w: w.split(":", 1)[0] for w in lv} for lv in W.levels])
    return f"Z={len(Z)}/S={''.join(map(str, sizes))}", Z, f


def _tagged_sum(Z, sizes, trunc) -> TCSet:
    parts = {z: nabla([f"{z}.{j}" for j in range(k)], trunc)
             for z, k in zip(Z, sizes)}
    levels = [[f"{z}:{w}" for z in Z for w in parts[z].levels[n]]
              for n in range(trunc + 1)]

    def act(s, name):
        z, w = name.split(":", 1)
        return f"{z}:{parts[z].action[s][w]}"
    return build(trunc, levels, act)


def codiscrete_over(seed, trunc: int = 2, size: int = 4) -> tuple[str, TCSetMor]:
    """The projection ``Y x Nabla(S) -> Y``: an h-proposition that is not mono
    when ``|S| = 2``."""
    rng = _rng(seed)
    name, Y = rng.choice(base_pieces(trunc, size))
    k = rng.randint(1, 2)
    P = product(Y, nabla([str(i) for i in range(k)], trunc))
    return f"{name}xN{k}", P.proj1
