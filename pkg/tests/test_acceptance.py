"""Acceptance criteria 1-10, each run through the verification suites.

Every criterion prints one ``criterion N: PASS|FAIL`` line (also with
pytest's output capture on).  Run directly with ``python
tests/test_acceptance.py`` for just the summary.
"""

from __future__ import annotations

import sys
from functools import lru_cache

import pytest

from cubeprop.verify import SUITES, SuiteConfig

CFG = SuiteConfig()  # defaults: trunc 2, seed 0, size 6, fuel 10**5


@lru_cache(maxsize=None)
def records(tag):
    return tuple(SUITES[tag](CFG))


def by_prefix(tag, prefix):
    return [r for r in records(tag) if r.instance.startswith(prefix)]


def all_pass(recs):
    bad = [f"{r.theorem}:{r.instance}" for r in recs if r.status != "PASS"]
    return not bad, f"; not passing: {bad[:3]}" if bad else ""


# each check returns (ok, detail)

def crit_cube_laws():
    recs = records("cube-laws")
    homs = by_prefix("cube-laws", "homs ")
    sizes_ok = len(homs) == 25 and all(
        r.witness["count"] == (int(r.instance[5]) + 2) ** int(r.instance[8])
        for r in homs)
    (assoc,) = by_prefix("cube-laws", "associativity")
    (ident,) = by_prefix("cube-laws", "identity")
    ok, bad = all_pass(recs)
    ok = ok and sizes_ok and assoc.witness["triples"] >= 10**4 \
        and assoc.witness["failures"] == 0 and ident.witness["failures"] == 0
    return ok, f"{assoc.witness['triples']} triples, 25 hom-sets{bad}"


def crit_adjunction():
    recs = records("adjunction")
    gd = by_prefix("adjunction", "gamma.delta")
    pairs = [r for r in recs if r.instance.startswith(("delta-gamma", "gamma-nabla"))]
    ok, bad = all_pass(recs)
    ok = ok and len(gd) == 5 and pairs and all(
        r.witness["hom"] == r.witness["fun"] for r in pairs)
    return ok, f"{len(recs)} records{bad}"


def crit_delta_preserves():
    recs = records("delta-preserves")
    ok, bad = all_pass(recs)
    return ok and len(recs) == 50, f"{len(recs)} instances{bad}"


def crit_natpb():
    recs = records("natpb")
    control = by_prefix("natpb", "control")
    main = [r for r in recs if r not in control]
    ok, bad = all_pass(recs)
    ok = ok and len(main) >= 100 and len(control) == 1 and all(
        r.witness["squares"] == 41 for r in main)
    return ok, f"{len(main)} instances + control{bad}"


def crit_internalise():
    recs = records("internalise")
    ok, bad = all_pass(recs)
    return ok and len(recs) >= 100, f"{len(recs)} instances{bad}"


def crit_negation():
    mono, pts, nn = records("negmono"), records("negpoints"), records("negneg-classifier")
    ok, bad = all_pass(mono + pts + nn)
    ok = ok and len(mono) == 200 and len(pts) == 200 and len(nn) >= 1 and all(
        r.witness["level0"] and r.witness["levelwise"] for r in pts)
    return ok, f"{len(mono)}/{len(pts)}/{len(nn)}{bad}"


def crit_detruncate():
    recs = records("detruncate")
    ok, bad = all_pass(recs)
    return ok and len(recs) == 50, f"{len(recs)} instances{bad}"


def crit_reals():
    rt = by_prefix("reals", "roundtrip")
    mu = by_prefix("reals", "member_up_to")
    ok, bad = all_pass(records("reals"))
    ok = ok and len(rt) == 10 and all(r.witness["pairs"] == 100 for r in rt) \
        and len(mu) == 3
    return ok, f"{len(rt)} roundtrips, {len(mu)} boundary checks{bad}"


def crit_pi01():
    fam = by_prefix("pi01", "decision family")
    dec = by_prefix("pi01", "negneg_decide")
    ext = by_prefix("pi01", "extract")
    ok, bad = all_pass(records("pi01"))
    ok = ok and fam and dec and len(ext) == 20
    ok = ok and all(r.witness["raised_at"] <= 50 for r in dec
                    if not r.witness["member"])
    return ok, f"{len(fam)} families, {len(dec)} decides, {len(ext)} extractions{bad}"


def crit_ect():
    tu = by_prefix("ect", "T/U")
    checks = by_prefix("ect", "ect_check")
    programs = {r.instance.split()[1] for r in tu}
    ok, bad = all_pass(records("ect"))
    ok = ok and len(programs) >= 20 and len(tu) == 10 * len(programs) \
        and CFG.fuel == 10**5 \
        and any(r.witness["expected"] == "FAIL" for r in checks) \
        and all(r.witness["expected"] == r.witness["observed"] for r in checks)
    return ok, f"{len(programs)} programs x 10 inputs, {len(checks)} ECT instances{bad}"


CRITERIA = [
    (1, "cube laws", crit_cube_laws),
    (2, "adjunctions", crit_adjunction),
    (3, "Delta preservation", crit_delta_preserves),
    (4, "naturality squares", crit_natpb),
    (5, "internalisation", crit_internalise),
    (6, "negation and not-not classifier", crit_negation),
    (7, "Gamma-section transfer", crit_detruncate),
    (8, "located reals", crit_reals),
    (9, "Pi01 extraction", crit_pi01),
    (10, "Kleene T/U and ECT", crit_ect),
]


def run_criterion(n, label, check):
    try:
        ok, detail = check()
    except Exception as exc:  # report, then let the test fail below
        ok, detail = False, f"error: {exc!r}"
    return bool(ok), f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {label} ({detail})"


@pytest.mark.parametrize("n,label,check", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(n, label, check, capsys):
    ok, line = run_criterion(n, label, check)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
