"""Extensional monomorphisms of finite sets and their internalisation.

The metatheory here is ordinary (classical) Python, so the double-negation
classifier is just ``true : 1 -> 2`` and every finite mono is stable.  What the
module exercises is the *construction*: classifying maps computed fibre by
fibre, their naturality, and the reconstruction of a monomorphism of
truncated cubical sets as a pullback of ``Delta(g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .cube import enum_homs, points
from .errors import (ClassificationError, InvariantError, NotStableError,
                     PreconditionError)
from .presheaf import (Subobject, TCSet, TCSetMor, compose_mor, delta_const,
                       double_neg, fibers, find_point_lifts,
                       first_natural_map, image, is_hprop, is_iso, is_mono,
                       level0_neg, morphism, pair_name, product,
                       pullback, subobject)
from .presheaf.homotopy import PointLiftStructure
from .reals import Cocut, RHolds, weakly_pi01
from .report import FAIL, PASS, Record


@dataclass(frozen=True)
class SetMono:
    """An injective map of finite sets ``source -> target``."""
    source: tuple[str, ...]
    target: tuple[str, ...]
    mapping: Mapping[str, str] = field(repr=False)

    def image(self) -> frozenset[str]:
        return frozenset(self.mapping.values())


def set_mono(source: Sequence[str], target: Sequence[str],
             mapping: Mapping[str, str]) -> SetMono:
    source, target = tuple(source), tuple(target)
    if set(mapping) != set(source):
        raise PreconditionError("mapping must be defined exactly on the source")
    if not set(mapping.values()) <= set(target):
        raise PreconditionError("mapping leaves the target")
    if len(set(mapping.values())) != len(mapping):
        raise PreconditionError("map is not injective")
    return SetMono(source, target, dict(mapping))


def subset_mono(target: Sequence[str], members) -> SetMono:
    members = [t for t in target if t in set(members)]
    return set_mono(members, target, {t: t for t in members})


@dataclass(frozen=True)
class ExtMono:
    """An extensional mono ``Q -> P`` stored as ``P`` plus its inhabited points.

    ``Q`` is identified with ``inhabited`` (a mono is determined up to iso by
    its image).  Extensionality says inhabitation is injective on ``P``.
    """
    base: tuple[str, ...]
    inhabited: frozenset[str]

    def __post_init__(self):
        if not self.inhabited <= set(self.base):
            raise PreconditionError("inhabited points must lie in the base")
        if len(set(self.base)) != len(self.base):
            raise PreconditionError("duplicate base points")
        values = [p in self.inhabited for p in self.base]
        if len(set(values)) != len(values):
            raise PreconditionError("not extensional: two points share "
                                    "the same fibre inhabitation")

    def point_for(self, inhabited: bool) -> str | None:
        for p in self.base:
            if (p in self.inhabited) == inhabited:
                return p
        return None

    def as_set_mono(self) -> SetMono:
        return subset_mono(self.base, self.inhabited)


OMEGA_NOT_NOT = ExtMono(("false", "true"), frozenset({"true"}))


def is_extensional(m: SetMono) -> bool:
    """Fibre inhabitation is an injective function on the target."""
    _require_injective(m)
    img = m.image()
    values = [p in img for p in m.target]
    return len(set(values)) == len(values)


def _require_injective(m: SetMono):
    if len(set(m.mapping.values())) != len(m.mapping):
        raise PreconditionError("map is not injective")


def set_pullback(g: ExtMono, chi: Mapping[str, str]) -> frozenset[str]:
    """Image in ``Y`` of the pullback of ``g`` along ``chi : Y -> P``."""
    return frozenset(y for y, p in chi.items() if p in g.inhabited)


def is_classifying(f: SetMono, g: ExtMono | SetMono, chi) -> bool:
    inhabited = g.inhabited if isinstance(g, ExtMono) else g.image()
    return frozenset(y for y, p in chi.items() if p in inhabited) == f.image()


def classifying_maps(f: SetMono, g: ExtMono | SetMono) -> list[dict]:
    """Every ``chi : Y -> P`` pulling ``g`` back to ``f`` (exhaustive)."""
    base = g.base if isinstance(g, ExtMono) else g.target
    out = []
    for vals in itertools.product(base, repeat=len(f.target)):
        chi = dict(zip(f.target, vals))
        if is_classifying(f, g, chi):
            out.append(chi)
    return out


EXHAUSTIVE_LIMIT = 4


def classify_set(f: SetMono, g: ExtMono) -> dict[str, str]:
    """The unique ``chi`` with ``f`` the pullback of ``g`` along ``chi``.

    For ``|Y| <= 4`` uniqueness is re-checked by enumerating every map
    ``Y -> P``.
    """
    img = f.image()
    chi = {}
    for y in f.target:
        p = g.point_for(y in img)
        if p is None:
            raise ClassificationError(
                f"no point of the classifier has the fibre inhabitation "
                f"of {y!r}", element=y)
        chi[y] = p
    if len(f.target) <= EXHAUSTIVE_LIMIT:
        alts = classifying_maps(f, g)
        if alts != [chi]:
            raise InvariantError(
                f"expected exactly one classifying map, found {len(alts)}")
    return chi


def extensional_via_uniqueness(m: SetMono) -> bool:
    """Decide extensionality through uniqueness of classifying maps.

    Builds ``Y = {(p, p') : Q_p <-> Q_p'}``, pulls ``m`` back along the first
    projection, and asks whether the second projection classifies the same
    mono.  It always does; the two maps coincide exactly when equally
    inhabited points are equal.
    """
    _require_injective(m)
    img = m.image()
    pairs = [(p, q) for p in m.target for q in m.target
             if (p in img) == (q in img)]
    names = [pair_name(p, q) for p, q in pairs]
    chi = {pair_name(p, q): p for p, q in pairs}
    chi2 = {pair_name(p, q): q for p, q in pairs}
    f = subset_mono(names, [pair_name(p, q) for p, q in pairs if p in img])
    if not (is_classifying(f, m, chi) and is_classifying(f, m, chi2)):
        raise InvariantError("projections failed to classify the pulled-back mono")
    return chi == chi2


def is_subterminal(g: ExtMono) -> bool:
    """At most one point of the base has an inhabited fibre."""
    return len(g.inhabited) <= 1


def make_extensional(m: SetMono) -> tuple[ExtMono, dict[str, str]]:
    """Quotient the target by equal fibre inhabitation.

    Returns the extensional mono and the quotient map ``q : P -> P'``;
    classes are named ``[p]`` after their first member.  Checks that ``m``
    is recovered as the pullback along ``q``.
    """
    _require_injective(m)
    img = m.image()
    classes: dict[bool, str] = {}
    q = {}
    for p in m.target:
        key = p in img
        if key not in classes:
            classes[key] = f"[{p}]"
        q[p] = classes[key]
    base = tuple(classes.values())
    ext = ExtMono(base, frozenset(c for k, c in classes.items() if k))
    if set_pullback(ext, q) != img:
        raise InvariantError("quotient does not recover the original mono")
    return ext, q


# -- internalisation in truncated cubical sets ---------------------------------

@dataclass
class Internalisation:
    chi: TCSetMor
    classifier: ExtMono
    pullback_obj: TCSet
    pullback_proj: TCSetMor
    iso: TCSetMor

    def chi_at(self, n: int) -> dict[str, str]:
        return dict(self.chi.components[n])


def level_mono(f: TCSetMor, n: int) -> SetMono:
    return set_mono(f.source.levels[n], f.target.levels[n], f.components[n])


def delta_classifier(g: ExtMono, trunc: int) -> TCSetMor:
    """``Delta(g) : Delta(Q) -> Delta(P)``."""
    P = delta_const(g.base, trunc)
    Q = delta_const([p for p in g.base if p in g.inhabited], trunc)
    return morphism(Q, P, [{p: p for p in Q.levels[0]}] * (trunc + 1))


def internalise(f: TCSetMor, g: ExtMono,
                lifts: PointLiftStructure | None = None) -> Internalisation:
    """Exhibit a mono with point lifts as a pullback of ``Delta(g)``.

    ``chi_n`` classifies ``f_n`` against ``g`` level by level; naturality of
    ``chi`` is then checked at every cube morphism, and the pullback of
    ``Delta(g)`` along ``chi`` is compared with ``f`` over ``Y``.
    """
    if not is_mono(f):
        raise PreconditionError("internalise needs a monomorphism")
    if lifts is None:
        lifts = find_point_lifts(f)
    if lifts is None or lifts.carrier is not f:
        raise PreconditionError("internalise needs point lifts for f")
    Y = f.target
    D = f.trunc
    try:
        classify_set(level_mono(f, 0), g)
    except ClassificationError as exc:
        raise PreconditionError(
            f"Gamma(f) is not classified by g: {exc}") from None
    comps = []
    for n in range(D + 1):
        try:
            comps.append(classify_set(level_mono(f, n), g))
        except ClassificationError as exc:
            raise InvariantError(
                f"level {n} unclassifiable despite point lifts: {exc}") from None
    for s_dom in range(D + 1):
        for s_cod in range(D + 1):
            for s in enum_homs(s_dom, s_cod):
                for y in Y.levels[s_cod]:
                    if comps[s_dom][Y.action[s][y]] != comps[s_cod][y]:
                        raise InvariantError(
                            f"chi is not natural at {s} on {y!r}")
    DP = delta_const(g.base, D)
    chi = morphism(Y, DP, comps)
    dg = delta_classifier(g, D)
    pb = pullback(chi, dg)
    iso = morphism(f.source, pb.obj, [
        {x: pair_name(f.components[n][x], comps[n][f.components[n][x]])
         for x in f.source.levels[n]} for n in range(D + 1)])
    if not is_iso(iso):
        raise InvariantError("pullback of Delta(g) is not isomorphic to f")
    if not compose_mor(pb.proj1, iso).same_as(f):
        raise InvariantError("reconstruction is not over Y")
    return Internalisation(chi, g, pb.obj, pb.proj1, iso)


@dataclass
class NegNegClassification:
    chi: TCSetMor
    internalisation: Internalisation
    stability: TCSetMor
    forward: TCSetMor
    backward: TCSetMor
    hprop_witness: TCSetMor
    classified: Subobject


def find_stability_map(f: TCSetMor, nn: Subobject) -> TCSetMor | None:
    """A map ``not not X -> X`` over ``Y``, if one exists."""
    fib = [fibers(f, n) for n in range(f.trunc + 1)]
    return first_natural_map(nn.as_tcset(), f.source,
                             lambda n, y: fib[n][y])


def classify_negneg(f: TCSetMor, witness: TCSetMor | None = None, *,
                    limit: int | None = 64) -> NegNegClassification:
    """Classify a double-negation-stable h-proposition by ``Delta(true)``.

    Replaces ``f`` by the mono ``not not X -> Y``, internalises that against
    ``true : 1 -> 2``, and returns ``chi`` with maps both ways between ``X``
    and the classified subobject over ``Y``.
    """
    if witness is None:
        witness = is_hprop(f, limit=limit)
    if witness is None:
        raise PreconditionError("f is not an h-proposition")
    nn = double_neg(image(f))
    stab = find_stability_map(f, nn)
    if stab is None:
        raise NotStableError("no map from the double negation back to X over Y")
    incl = nn.inclusion()
    lifts = find_point_lifts(incl)
    if lifts is None:
        raise PreconditionError(
            "the double negation has no point lifts, so f is not a "
            "fibration in the point-lifting sense")
    res = internalise(incl, OMEGA_NOT_NOT, lifts)
    D = f.trunc
    P = res.pullback_obj
    forward = morphism(f.source, P, [
        {x: pair_name(f.components[n][x], "true") for x in f.source.levels[n]}
        for n in range(D + 1)])
    backward = morphism(P, f.source, [
        {e: stab.components[n][res.pullback_proj.components[n][e]]
         for e in P.levels[n]} for n in range(D + 1)])
    if not compose_mor(res.pullback_proj, forward).same_as(f):
        raise InvariantError("forward map is not over Y")
    if not compose_mor(f, backward).same_as(res.pullback_proj):
        raise InvariantError("backward map is not over Y")
    classified = image(res.pullback_proj)
    if double_neg(classified).members != classified.members:
        raise InvariantError("classified subobject is not double-negation stable")
    return NegNegClassification(res.chi, res, stab, forward, backward,
                                witness, classified)


# -- Pi01 presentations --------------------------------------------------------

@dataclass(frozen=True)
class BoundedPi01Witness:
    base: tuple[str, ...]
    index: tuple
    g: Mapping[tuple[str, object], int] = field(repr=False)

    def holds(self, b: str) -> bool:
        return all(self.g[(b, k)] == 0 for k in self.index)

    def sequence(self, b: str) -> str:
        return "".join(str(self.g[(b, k)]) for k in self.index)


def pi01_classifier(index: Sequence) -> tuple[ExtMono, Callable[[str], str]]:
    """Finite stand-in for ``1 -> Omega_Pi01``.

    The extensional quotient of the non-extensional mono picking the all-zero
    sequence in ``2^K``.  It has two classes, named (as in
    :func:`make_extensional`) after their first members in lexicographic
    order, so it is built directly instead of enumerating ``2^K``; see
    :func:`pi01_classifier_explicit` for the enumerated version.  Returns the
    classifier and the quotient map on bit strings.
    """
    k = len(index)
    if k == 0:
        return ExtMono(("[]",), frozenset({"[]"})), lambda seq: "[]"
    zero, first = "0" * k, "0" * (k - 1) + "1"
    ext = ExtMono((f"[{zero}]", f"[{first}]"), frozenset({f"[{zero}]"}))

    def q(seq: str) -> str:
        if len(seq) != k or set(seq) - {"0", "1"}:
            raise PreconditionError(f"not a bit string of length {k}: {seq!r}")
        return ext.base[0] if seq == zero else ext.base[1]
    return ext, q


def pi01_classifier_explicit(index: Sequence) -> tuple[ExtMono, dict[str, str]]:
    """:func:`make_extensional` on all of ``2^K``; only for small ``K``."""
    seqs = ["".join(bits) for bits in itertools.product("01", repeat=len(index))]
    return make_extensional(subset_mono(seqs, ["0" * len(index)]))


@dataclass
class WeaklyPi01Witness:
    """Finite-index data presenting ``f : X -> Y`` as weakly Pi01.

    ``relation`` is a map into ``Y x Delta(K)`` (see :func:`relation_base`);
    ``decision[(y, k)]`` is ``("inl", r)`` with ``r`` in ``R_0`` over
    ``(y, k)`` or ``("inr", y)`` with ``y`` outside the image of ``f_0``.
    ``forward[(x, k)]`` gives an element of ``R_0`` over ``(f_0 x, k)``;
    ``backward[y]`` gives an element of ``X_0`` over ``y`` whenever every
    ``R_{y,k}`` is inhabited.
    """
    base: TCSetMor
    index: tuple
    relation: TCSetMor
    decision: Mapping[tuple[str, object], tuple[str, str]]
    forward: Mapping[tuple[str, object], str]
    backward: Mapping[str, str]
    name: str = "witness"

    def problems(self) -> list[str]:
        f, R = self.base, self.relation
        Y = f.target
        out = []
        YK = relation_base(Y, self.index)
        if not R.target.same_as(YK.obj):
            return ["relation must land in Y x Delta(K)"]
        over = fibers(R, 0)
        over_x = fibers(f, 0)
        not_x = level0_neg(image(f))
        for y in Y.levels[0]:
            for k in self.index:
                d = self.decision.get((y, k))
                yk = pair_name(y, str(k))
                if d is None:
                    out.append(f"decision missing at ({y}, {k})")
                elif d[0] == "inl":
                    if d[1] not in over[yk]:
                        out.append(f"inl({d[1]}) is not over ({y}, {k})")
                elif d[0] == "inr":
                    if d[1] != y or y not in not_x:
                        out.append(f"inr at ({y}, {k}) but the fibre is inhabited")
                else:
                    out.append(f"bad decision tag {d[0]!r}")
            all_r = all(over[pair_name(y, str(k))] for k in self.index)
            if over_x[y]:
                for x in over_x[y]:
                    for k in self.index:
                        r = self.forward.get((x, k))
                        if r is None or r not in over[pair_name(y, str(k))]:
                            out.append(f"forward map fails at ({x}, {k})")
            if all_r:
                x = self.backward.get(y)
                if x is None or f.components[0][x] != y:
                    out.append(f"backward map fails at {y}")
        return out

    def verify(self) -> bool:
        return not self.problems()


def relation_base(Y: TCSet, index: Sequence):
    return product(Y, delta_const([str(k) for k in index], Y.trunc))


@dataclass
class Pi01Extraction:
    family: dict[str, str]
    bounded: BoundedPi01Witness
    internalisation: Internalisation
    classifier: ExtMono
    record: Record


def extract_pi01(w: WeaklyPi01Witness) -> Pi01Extraction:
    """Read off binary sequences from the decision data and classify.

    ``g'_y(k) = 0`` exactly when the decision at ``(y, k)`` lands in the
    ``R`` summand.  The fibre of ``Gamma(f)`` over ``y`` must be inhabited iff
    ``g'_y`` is all zero; the double negation of ``f`` is then internalised
    against the finite Pi01 classifier and its level-0 classifying map is
    compared with the quotient class of each ``g'_y``.
    """
    probs = w.problems()
    if probs:
        raise PreconditionError("invalid weakly Pi01 witness: " + probs[0])
    f = w.base
    Y = f.target
    g = {(y, k): 0 if w.decision[(y, k)][0] == "inl" else 1
         for y in Y.levels[0] for k in w.index}
    bounded = BoundedPi01Witness(Y.levels[0], w.index, g)
    over = fibers(f, 0)
    for y in Y.levels[0]:
        if bool(over[y]) != bounded.holds(y):
            raise PreconditionError(
                f"fibre over {y!r} disagrees with its sequence {bounded.sequence(y)}")
    ext, q = pi01_classifier(w.index)
    nn = double_neg(image(f)).inclusion()
    lifts = find_point_lifts(nn)
    if lifts is None:
        raise PreconditionError("the double negation of f has no point lifts")
    res = internalise(nn, ext, lifts)
    family = {y: bounded.sequence(y) for y in Y.levels[0]}
    mismatch = [y for y in Y.levels[0]
                if res.chi.components[0][y] != q(family[y])]
    status = PASS if not mismatch else FAIL
    record = Record("pi01-extract", w.name, status,
                    {"sequences": family,
                     "chi0": dict(res.chi.components[0]),
                     "mismatch": mismatch})
    if mismatch:
        raise InvariantError(f"sequence classes disagree with chi at {mismatch}")
    return Pi01Extraction(family, bounded, res, ext, record)


def subobject_witness(f: TCSetMor, index: Sequence,
                      g: Mapping[tuple[str, object], int],
                      name: str = "witness") -> WeaklyPi01Witness:
    """Witness for a mono ``f`` from a level-0 table ``g`` constant on fibres
    of the action (i.e. ``g(Y_p y, k)`` is the same for every point ``p``)."""
    Y = f.target
    YK = relation_base(Y, index)
    members = []
    for n in range(Y.trunc + 1):
        keep = set()
        for y in Y.levels[n]:
            for k in index:
                if all(g[(Y.action[p][y], k)] == 0 for p in points(n)):
                    keep.add(pair_name(y, str(k)))
        members.append(keep)
    R = subobject(YK.obj, members).inclusion()
    return _assemble(f, index, R, g, name)


def _assemble(f, index, R, g, name):
    Y = f.target
    over = fibers(R, 0)
    decision = {}
    for y in Y.levels[0]:
        for k in index:
            rs = over[pair_name(y, str(k))]
            decision[(y, k)] = ("inl", rs[0]) if g[(y, k)] == 0 else ("inr", y)
    forward = {}
    for x in f.source.levels[0]:
        y = f.components[0][x]
        for k in index:
            rs = over[pair_name(y, str(k))]
            if rs:
                forward[(x, k)] = rs[0]
    backward = {}
    over_x = fibers(f, 0)
    for y in Y.levels[0]:
        if over_x[y]:
            backward[y] = over_x[y][0]
    return WeaklyPi01Witness(f, tuple(index), R, decision, forward, backward, name)


def cocut_witness(C: Cocut, sample: Sequence, N: int,
                  member: Callable[[Fraction], bool], trunc: int = 1,
                  name: str | None = None) -> WeaklyPi01Witness:
    """Finite-sample weakly Pi01 witness for membership in a cocut.

    ``Y`` is the constant set on the sample, ``X`` the members (judged by the
    exact predicate ``member``), ``R_{a,n}`` is ``a + 1/n in C`` and the
    decision comes from the cocut's locator via :func:`weakly_pi01`.
    """
    sample = [Fraction(a) for a in sample]
    names = [str(a) for a in sample]
    index = tuple(range(1, N + 1))
    Y = delta_const(names, trunc)
    X = subobject(Y, [[str(a) for a in sample if member(a)]] * (trunc + 1))
    f = X.inclusion()
    YK = relation_base(Y, index)
    keep = [pair_name(str(a), str(n)) for a in sample for n in index
            if member(a + Fraction(1, n))]
    R = subobject(YK.obj, [keep] * (trunc + 1)).inclusion()
    d = weakly_pi01(C)
    decision = {}
    for a in sample:
        for n in index:
            out = d(a, n)
            if isinstance(out, RHolds):
                decision[(str(a), n)] = ("inl", pair_name(str(a), str(n)))
            else:
                decision[(str(a), n)] = ("inr", str(a))
    forward = {(str(a), n): pair_name(str(a), str(n))
               for a in sample if member(a) for n in index}
    backward = {str(a): str(a) for a in sample if member(a)}
    return WeaklyPi01Witness(f, index, R, decision, forward, backward,
                             name or f"{C.name}/N={N}")
