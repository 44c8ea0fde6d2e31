"""Per-theorem verification suites.

Each suite is a top-level function ``suite(cfg) -> list[Record]`` registered
under a tag in :data:`SUITES`.  Instance-based suites also expose a single
instance checker in :data:`REPLAYERS` so that a FAIL record's instance file
can be re-run on its own.  Suites are independent and may run in separate
processes; :func:`run_suites` sorts the merged records.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from . import classifier as cl
from . import generate as gen
from . import kleene as kl
from . import reals as rl
from .cube import CubeMor, all_morphisms, compose, enum_homs, identity
from .errors import CubepropError, InvariantError
from .presheaf import (TCSet, TCSetMor, closure, coproduct, delta_const,
                       delta_transpose, find_point_lifts, find_section,
                       gamma, gamma_section_transfer, image,
                       interval_exponential, is_hprop, is_iso, is_mono,
                       level0_neg, morphism, nabla_data, nabla_rel,
                       nabla_transpose, nabla_untranspose, natural_maps,
                       neg_by_morphisms, neg_by_points, neg_map, neg_sub,
                       pair_name, product, pullback, yoneda)
from .presheaf.homotopy import check_nat_pullback
from .presheaf.io import mor_from_dict, mor_to_dict
from .report import FAIL, INCONCLUSIVE, PASS, Record, sort_records


@dataclass(frozen=True)
class SuiteConfig:
    trunc: int = 2
    seed: int = 0
    size: int = 6
    count: int | None = None
    fuel: int = 10 ** 5
    only: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.trunc < 1:
            raise ValueError("trunc must be at least 1 (path objects need it)")
        if self.size < 1 or self.fuel < 1 or (self.count is not None and self.count < 1):
            raise ValueError("size, count and fuel must be positive")

    def n(self, default: int) -> int:
        return default if self.count is None else self.count

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    def seeds(self, tag: str, k: int) -> list[int]:
        r = self.rng(tag)
        return [r.randrange(2 ** 32) for _ in range(k)]


def _replay_doc(tag: str, instance: str, f: TCSetMor) -> dict:
    return {"theorem": tag, "instance": instance, "input": mor_to_dict(f)}


def _guard(tag: str, instance: str, f: TCSetMor | None, fn) -> Record:
    """Run ``fn() -> (status, witness)``; exceptions become FAIL records."""
    try:
        status, witness = fn()
    except CubepropError as exc:
        status, witness = FAIL, {"error": type(exc).__name__, "message": str(exc)}
    rec = Record(tag, instance, status, witness)
    if status == FAIL and f is not None:
        rec.replay = _replay_doc(tag, instance, f)
    return rec


# -- cube-laws -----------------------------------------------------------------

def suite_cube_laws(cfg: SuiteConfig) -> list[Record]:
    recs = []
    for m in range(5):
        for n in range(5):
            got = len(enum_homs(m, n))
            direct = len(set(itertools.product(range(m + 2), repeat=n)))
            ok = got == direct == (m + 2) ** n
            recs.append(Record("cube-laws", f"homs {m}->{n}",
                               PASS if ok else FAIL, {"count": got}))
    D = 2
    triples = bad = 0
    for f in all_morphisms(D):
        for g_cod in range(D + 1):
            for g in enum_homs(f.cod, g_cod):
                for h_cod in range(D + 1):
                    for h in enum_homs(g.cod, h_cod):
                        triples += 1
                        if compose(h, compose(g, f)) != compose(compose(h, g), f):
                            bad += 1
    recs.append(Record("cube-laws", "associativity dims<=2",
                       PASS if not bad else FAIL,
                       {"triples": triples, "failures": bad}))
    bad = sum(compose(identity(f.cod), f) != f or compose(f, identity(f.dom)) != f
              for f in all_morphisms(D))
    recs.append(Record("cube-laws", "identity dims<=2", PASS if not bad else FAIL,
                       {"morphisms": len(all_morphisms(D)), "failures": bad}))
    return recs


# -- adjunction ----------------------------------------------------------------

def adjunction_objects(trunc: int) -> list[tuple[str, TCSet]]:
    """Small objects with every level of size at most 3."""
    cands = [("1", yoneda(0, trunc)), ("D2", delta_const(["a", "b"], trunc)),
             ("D3", delta_const(["a", "b", "c"], trunc)), ("L", gen.loop(trunc)),
             ("y1", yoneda(1, trunc)), ("0", delta_const([], trunc))]
    return [(n, X) for n, X in cands if max(X.sizes, default=0) <= 3]


def suite_adjunction(cfg: SuiteConfig) -> list[Record]:
    D = cfg.trunc
    recs = []
    for k in range(5):
        Z = [f"z{i}" for i in range(k)]
        ok = list(gamma(delta_const(Z, D))) == Z
        recs.append(Record("adjunction", f"gamma.delta |Z|={k}",
                           PASS if ok else FAIL))
    for name, X in adjunction_objects(D):
        for k in range(3):
            Z = [f"z{i}" for i in range(k)]
            recs.append(_guard("adjunction", f"delta-gamma {name} |Z|={k}", None,
                               lambda: _delta_gamma(Z, X)))
            recs.append(_guard("adjunction", f"gamma-nabla {name} |Z|={k}", None,
                               lambda: _gamma_nabla(Z, X)))
    return recs


def _functions(dom, cod):
    dom = list(dom)
    for vals in itertools.product(list(cod), repeat=len(dom)):
        yield dict(zip(dom, vals))


def _key(f: TCSetMor):
    return tuple(tuple(sorted(c.items())) for c in f.components)


def _delta_gamma(Z, X):
    DZ = delta_const(Z, X.trunc)
    homs = {_key(f) for f in natural_maps(DZ, X)}
    images = [_key(delta_transpose(h, Z, X)) for h in _functions(Z, gamma(X))]
    ok = len(set(images)) == len(images) and set(images) == homs
    return (PASS if ok else FAIL), {"hom": len(homs), "fun": len(images)}


def _gamma_nabla(Z, X):
    data = nabla_data(Z, X.trunc)
    homs = list(natural_maps(X, data.obj))
    funs = list(_functions(gamma(X), Z))
    images = [_key(nabla_transpose(h, X, Z)) for h in funs]
    ok = (len(set(images)) == len(images) and set(images) == {_key(f) for f in homs}
          and all(nabla_untranspose(nabla_transpose(h, X, Z), data) == h
                  for h in funs))
    return (PASS if ok else FAIL), {"hom": len(homs), "fun": len(funs)}


# -- delta-preserves -------------------------------------------------------------

def _named_iso(X: TCSet, Y: TCSet) -> TCSetMor:
    """The name-preserving map ``X -> Y``; validated as natural and invertible."""
    if [sorted(a) for a in X.levels] != [sorted(b) for b in Y.levels]:
        raise InvariantError("element names differ")
    f = morphism(X, Y, [{x: x for x in lv} for lv in X.levels])
    if not is_iso(f):
        raise InvariantError("name-preserving map is not invertible")
    return f


def _delta_preserves(rng, D):
    A = [f"a{i}" for i in range(rng.randint(0, 3))]
    B = [f"b{i}" for i in range(rng.randint(0, 3))]
    C = [f"c{i}" for i in range(rng.randint(1, 3))]
    fa = {a: rng.choice(C) for a in A}
    fb = {b: rng.choice(C) for b in B}
    DA, DB, DC = (delta_const(S, D) for S in (A, B, C))
    _named_iso(delta_const([pair_name(a, b) for a in A for b in B], D),
               product(DA, DB).obj)
    _named_iso(delta_const([f"inl({a})" for a in A] + [f"inr({b})" for b in B], D),
               coproduct(DA, DB).obj)
    pb = pullback(morphism(DA, DC, [fa] * (D + 1)), morphism(DB, DC, [fb] * (D + 1)))
    _named_iso(delta_const([pair_name(a, b) for a in A for b in B
                            if fa[a] == fb[b]], D), pb.obj)
    _named_iso(delta_const(A, D - 1), interval_exponential(DA))
    return PASS, {"A": len(A), "B": len(B), "C": len(C)}


def suite_delta_preserves(cfg: SuiteConfig) -> list[Record]:
    return [_guard("delta-preserves", f"seed={s}", None,
                   lambda: _delta_preserves(random.Random(s), cfg.trunc))
            for s in cfg.seeds("delta-preserves", cfg.n(50))]


# -- corpus of monos with point lifts --------------------------------------------

def lifted_monos(cfg: SuiteConfig, k: int) -> list[tuple[str, TCSetMor]]:
    out = []
    for s in cfg.seeds("monos", k):
        name, f = gen.mono_with_lifts(s, cfg.trunc, cfg.size)
        out.append((f"seed={s}:{name}", f))
    return out


def check_natpb(f: TCSetMor):
    lifts = find_point_lifts(f)
    if not is_mono(f) or lifts is None or not lifts.verify():
        return INCONCLUSIVE, {"reason": "input is not a mono with point lifts"}
    bad = [check_nat_pullback(f, s) for s in all_morphisms(f.trunc)]
    bad = [r.describe() for r in bad if not r.ok]
    return (FAIL, {"squares": bad}) if bad else (PASS, {"squares": len(all_morphisms(f.trunc))})


def natpb_control(trunc: int) -> TCSetMor:
    """``Delta{c0} -> y[1]``: a mono without point lifts."""
    Y = yoneda(1, trunc)
    return closure(Y, [(0, "[c0]")]).inclusion()


def suite_natpb(cfg: SuiteConfig) -> list[Record]:
    recs = [_guard("natpb", name, f, lambda: check_natpb(f))
            for name, f in lifted_monos(cfg, cfg.n(100))]
    f = natpb_control(cfg.trunc)
    s = CubeMor(0, 1, (0,))
    rep = check_nat_pullback(f, s)
    ok = not rep.ok and find_point_lifts(f) is None
    recs.append(Record("natpb", "control Delta{c0}->y[1] at 0->1:[c0]",
                       PASS if ok else FAIL,
                       {"expected": "square is not a pullback",
                        "observed": rep.describe()}))
    return recs


def check_internalise(f: TCSetMor):
    res = cl.internalise(f, cl.OMEGA_NOT_NOT)
    return PASS, {"chi0": dict(res.chi.components[0])}


def suite_internalise(cfg: SuiteConfig) -> list[Record]:
    return [_guard("internalise", name, f, lambda: check_internalise(f))
            for name, f in lifted_monos(cfg, cfg.n(100))]


# -- negation --------------------------------------------------------------------

def _neg_corpus(cfg: SuiteConfig, tag: str, k: int):
    out = []
    for i, s in enumerate(cfg.seeds(tag, k)):
        if i % 2:
            name, f = gen.mono_with_lifts(s, cfg.trunc, cfg.size)
        else:
            name, A = gen.random_subobject(s, cfg.trunc, cfg.size)
            f = A.inclusion()
        out.append((f"seed={s}:{name}", f))
    return out


def check_negmono(f: TCSetMor):
    g = neg_map(f)
    return (PASS if is_mono(g) else FAIL), {"sizes": list(g.source.sizes)}


def check_negpoints(f: TCSetMor):
    A = image(f)
    pts, mors = neg_by_points(A), neg_by_morphisms(A)
    level0 = neg_sub(A).members[0] == level0_neg(A)
    ok = pts == mors and level0
    return (PASS if ok else FAIL), {"level0": level0, "levelwise": pts == mors}


def suite_negmono(cfg: SuiteConfig) -> list[Record]:
    return [_guard("negmono", name, f, lambda: check_negmono(f))
            for name, f in _neg_corpus(cfg, "negmono", cfg.n(200))]


def suite_negpoints(cfg: SuiteConfig) -> list[Record]:
    return [_guard("negpoints", name, f, lambda: check_negpoints(f))
            for name, f in _neg_corpus(cfg, "negpoints", cfg.n(200))]


def hprop_corpus(cfg: SuiteConfig, k: int) -> list[tuple[str, TCSetMor]]:
    """Monos with point lifts, fibred codiscrete maps over constant bases and
    codiscrete projections over small non-constant bases."""
    out = []
    for i, s in enumerate(cfg.seeds("hprops", k)):
        if i % 3 == 1:
            name, f = gen.mono_with_lifts(s, cfg.trunc, cfg.size)
        elif i % 3 == 2:
            name, f = gen.codiscrete_over(s, cfg.trunc, min(cfg.size, 4))
        else:
            name, _, f = gen.fibred_nablas(s, cfg.trunc, allow_empty=True)
        out.append((f"seed={s}:{name}", f))
    return out


def check_negneg(f: TCSetMor):
    res = cl.classify_negneg(f)
    return PASS, {"chi0": dict(res.chi.components[0]),
                  "classified": list(res.classified.sizes())}


def suite_negneg(cfg: SuiteConfig) -> list[Record]:
    return [_guard("negneg-classifier", name, f, lambda: check_negneg(f))
            for name, f in hprop_corpus(cfg, cfg.n(40))]


# -- detruncate ------------------------------------------------------------------

def check_detruncate(f: TCSetMor):
    Z = list(gamma(f.target))
    rel = nabla_rel(Z, f)
    if is_hprop(rel.proj) is None:
        return FAIL, {"reason": "Nabla_Z Gamma W -> Delta Z is not an h-proposition"}
    sec = find_section(rel.proj)
    if sec is None:
        return INCONCLUSIVE, {"reason": "no section of Nabla_Z Gamma W -> Delta Z"}
    return PASS, {"section": gamma_section_transfer(Z, f, rel, sec)}


def suite_detruncate(cfg: SuiteConfig) -> list[Record]:
    recs = []
    for s in cfg.seeds("detruncate", cfg.n(50)):
        name, _, f = gen.fibred_nablas(s, cfg.trunc)
        recs.append(_guard("detruncate", f"seed={s}:{name}", f,
                           lambda: check_detruncate(f)))
    return recs


# -- extensional (finite sets) --------------------------------------------------

def suite_extensional(cfg: SuiteConfig) -> list[Record]:
    recs = []
    for k in range(4):
        P = [f"p{i}" for i in range(k)]
        for r in range(k + 1):
            for img in itertools.combinations(P, r):
                m = cl.subset_mono(P, img)
                a, b = cl.is_extensional(m), cl.extensional_via_uniqueness(m)
                ext, q = cl.make_extensional(m)
                ok = a == b and cl.is_extensional(ext.as_set_mono())
                ok = ok and cl.set_pullback(ext, q) == m.image()
                ok = ok and cl.is_subterminal(ext)
                recs.append(Record("extensional", f"P={k} image={','.join(img) or '-'}",
                                   PASS if ok else FAIL,
                                   {"extensional": a, "classes": len(ext.base)}))
    for k in range(5):
        Y = [f"y{i}" for i in range(k)]
        for r in range(k + 1):
            for img in itertools.combinations(Y, r):
                f = cl.subset_mono(Y, img)
                recs.append(_guard("extensional", f"classify |Y|={k} {','.join(img) or '-'}",
                                   None, lambda: (PASS, cl.classify_set(f, cl.OMEGA_NOT_NOT))))
    return recs


# -- reals -----------------------------------------------------------------------

SAMPLE_CUTS = {"0": 0, "1/2": Fraction(1, 2), "-3/7": Fraction(-3, 7)}
SAMPLE_ROOTS = (2, 3)


def sample_cocuts():
    out = {f"cocut({k})": rl.rational_cocut(q) for k, q in SAMPLE_CUTS.items()}
    out.update({f"sqrt({n})": rl.sqrt_cocut(n) for n in SAMPLE_ROOTS})
    return out


def sample_cuts():
    out = {f"cut({k})": rl.rational_cut(q) for k, q in SAMPLE_CUTS.items()}
    out.update({f"lt(sqrt({n}))": rl.cocut_to_cut(rl.sqrt_cocut(n))
                for n in SAMPLE_ROOTS})
    return out


def _centre(C):
    return (C.bound_out + C.bound_in) / 2 if C.name.startswith("sqrt") else C.bound_in


def suite_reals(cfg: SuiteConfig) -> list[Record]:
    recs = []
    rng = cfg.rng("reals")
    for name, C in sample_cocuts().items():
        pairs = rl.random_pairs(rng, 100, centre=_centre(C), spread=2)
        ok = rl.cocut_roundtrip_consistent(C, pairs)
        recs.append(Record("reals", f"roundtrip {name}", PASS if ok else FAIL,
                           {"pairs": len(pairs)}))
    for name, L in sample_cuts().items():
        pairs = rl.random_pairs(rng, 100, centre=L.bound_out, spread=2)
        ok = rl.cut_roundtrip_consistent(L, pairs)
        recs.append(Record("reals", f"roundtrip {name}", PASS if ok else FAIL,
                           {"pairs": len(pairs)}))
    for k, q in SAMPLE_CUTS.items():
        C = rl.rational_cocut(q)
        q = Fraction(q)
        inside = rl.member_up_to(C, q, 50)
        below = rl.member_up_to(C, q - Fraction(1, 100), 50)
        ok = (isinstance(inside, rl.ConsistentInUpTo) and inside.N == 50
              and isinstance(below, rl.DefinitelyOut))
        recs.append(Record("reals", f"member_up_to boundary cocut({k})",
                           PASS if ok else FAIL,
                           {"at_q": type(inside).__name__,
                            "below_q": type(below).__name__}))
    return recs


# -- pi01 ------------------------------------------------------------------------

def _member(C, a: Fraction) -> bool:
    """Exact membership for the sample cocuts, independent of their locators."""
    if C.name.startswith("sqrt("):
        n = int(C.name[5:-1])
        return a > 0 and a * a >= n
    return a >= C.bound_in


def pi01_samples(C, N: int = 50):
    """Sample points; non-members closer than ``1/N`` to the boundary are
    dropped, since no index ``n <= N`` can refute them."""
    base = C.bound_in if not C.name.startswith("sqrt") else None
    if base is not None:
        pts = [base - 1, base - Fraction(1, 3), base, base + Fraction(1, 7), base + 2]
    else:
        pts = [Fraction(1), Fraction(13, 10), Fraction(3, 2), Fraction(17, 10),
               Fraction(3)]
    return [a for a in pts if _member(C, a) or not _member(C, a + Fraction(1, N))]


def suite_pi01(cfg: SuiteConfig) -> list[Record]:
    recs = []
    for name, C in sample_cocuts().items():
        d = rl.weakly_pi01(C)
        pts = pi01_samples(C)
        table = d.sample(pts, range(1, 21))
        bad = [(str(a), n) for (a, n), out in table.items()
               if isinstance(out, rl.RHolds) and not _member(C, a + Fraction(1, n))
               or isinstance(out, rl.NotInX) and _member(C, a)]
        recs.append(Record("pi01", f"decision family {name}", FAIL if bad else PASS,
                           {"queries": len(table), "bad": bad}))
        for a in pts:
            recs.append(_guard("pi01", f"negneg_decide {name} a={a}", None,
                               lambda: _negneg_decide(C, d, a)))
    for name, C in sample_cocuts().items():
        for N in (5, 10, 20, 50):
            pts = pi01_samples(C, N)
            w = cl.cocut_witness(C, pts, N, lambda a, C=C: _member(C, a),
                                 name=f"{name}/N={N}")
            recs.append(_guard("pi01", f"extract {w.name}", None,
                               lambda: _extract(w)))
    return recs


def _negneg_decide(C, d, a):
    if _member(C, a):
        for n in range(1, 51):
            rl.negneg_decide(d, a, n)
        return PASS, {"member": True}
    for n in range(1, 51):
        try:
            rl.negneg_decide(d, a, n)
        except rl.PromiseViolation:
            return PASS, {"member": False, "raised_at": n}
    return FAIL, {"member": False, "raised_at": None}


def _extract(w):
    res = cl.extract_pi01(w)
    return res.record.status, res.record.witness


# -- ect -------------------------------------------------------------------------

ECT_EXAMPLES = (
    ("id", "identity", PASS),
    ("succ", "successor", PASS),
    ("succ@even", "successor", PASS),
    ("id@even", "id_even", PASS),
    ("square", "square", PASS),
    ("id", "successor", FAIL),
)


def suite_ect(cfg: SuiteConfig) -> list[Record]:
    recs = []
    for name in sorted(kl.PROGRAMS):
        e = kl.program_code(name)
        for x in range(10):
            recs.append(_guard("ect", f"T/U {name} x={x}", None,
                               lambda: _t_u(e, x, cfg.fuel)))
    for spec, prog, want in ECT_EXAMPLES:
        rep = kl.ect_check(kl.parse_fn(spec), kl.program_code(prog), range(10), cfg.fuel)
        recs.append(Record("ect", f"ect_check {spec} vs {prog}",
                           PASS if rep.status == want else FAIL,
                           {"expected": want, "observed": rep.status}))
    return recs


def _t_u(e, x, fuel):
    out = kl.run(e, x, fuel)
    z = kl.trace(e, x, fuel)
    if isinstance(out, kl.Timeout):
        return (PASS if isinstance(z, kl.Timeout) else FAIL), {"halted": False}
    ok = (kl.kleene_T(e, x, z) and kl.kleene_U(z) == out
          and kl.run(e, x, kl.steps(z)) == out
          and not kl.kleene_T(e, x, z + 1))
    return (PASS if ok else FAIL), {"halted": True, "output": out, "steps": kl.steps(z)}


# -- registry --------------------------------------------------------------------

SUITES = {
    "cube-laws": suite_cube_laws,
    "adjunction": suite_adjunction,
    "delta-preserves": suite_delta_preserves,
    "natpb": suite_natpb,
    "internalise": suite_internalise,
    "negmono": suite_negmono,
    "negpoints": suite_negpoints,
    "negneg-classifier": suite_negneg,
    "detruncate": suite_detruncate,
    "extensional": suite_extensional,
    "reals": suite_reals,
    "pi01": suite_pi01,
    "ect": suite_ect,
}

REPLAYERS = {
    "natpb": check_natpb,
    "internalise": check_internalise,
    "negmono": check_negmono,
    "negpoints": check_negpoints,
    "negneg-classifier": check_negneg,
    "detruncate": check_detruncate,
}


def _run_one(args):
    tag, cfg = args
    return SUITES[tag](cfg)


def run_suites(cfg: SuiteConfig, jobs: int = 1) -> list[Record]:
    tags = list(cfg.only) if cfg.only else list(SUITES)
    unknown = [t for t in tags if t not in SUITES]
    if unknown:
        raise ValueError(f"unknown tags: {', '.join(unknown)}")
    work = [(t, cfg) for t in tags]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_run_one, work))
    else:
        chunks = [_run_one(w) for w in work]
    return sort_records([r for c in chunks for r in c])


def replay(doc: dict) -> Record:
    """Re-run a single-instance check from a FAIL record's instance file."""
    tag = doc.get("theorem")
    if tag not in REPLAYERS:
        raise ValueError(f"no replayable check for tag {tag!r}")
    f = mor_from_dict(doc["input"], "$.input")
    return _guard(tag, doc.get("instance", "replay"), f, lambda: REPLAYERS[tag](f))


def with_tags(cfg: SuiteConfig, tags) -> SuiteConfig:
    return replace(cfg, only=tuple(tags))
