"""Command-line front end: ``cubeprop <group> <command> ...``.

Exit codes: 0 when nothing FAILed, 1 on a FAIL or invalid input file,
2 on usage errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import kleene as kl
from . import reals as rl
from .cube import enum_homs, format_mor
from .errors import CubepropError
from .generate import KINDS, generate
from .presheaf import TCSetMor
from .presheaf.io import dumps, load_file, loads, mor_to_dict, tcset_to_dict
from .report import FAIL, INCONCLUSIVE, PASS, to_json
from .verify import SUITES, SuiteConfig, replay, run_suites


def _nat(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text}")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _tags(text: str) -> tuple[str, ...]:
    tags = tuple(t.strip() for t in text.split(",") if t.strip())
    bad = [t for t in tags if t not in SUITES]
    if bad or not tags:
        raise argparse.ArgumentTypeError(
            f"unknown tag(s) {', '.join(bad) or '(none)'}; known: {', '.join(SUITES)}")
    return tags


# -- cube ------------------------------------------------------------------------

def cmd_cube_homs(args) -> int:
    homs = enum_homs(args.m, args.n)
    if not args.count:
        for f in homs:
            print(format_mor(f))
    print(f"# {len(homs)} morphisms [{args.m}] -> [{args.n}]")
    return 0


# -- psh -------------------------------------------------------------------------

def cmd_psh_validate(args) -> int:
    try:
        obj = load_file(args.file)
    except CubepropError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return 1
    if isinstance(obj, TCSetMor):
        print(f"valid morphism, trunc {obj.trunc}: sizes "
              f"{list(obj.source.sizes)} -> {list(obj.target.sizes)}")
    else:
        print(f"valid object, trunc {obj.trunc}: sizes {list(obj.sizes)}")
    return 0


# -- verify / replay ---------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = SuiteConfig(trunc=args.trunc, seed=args.seed, size=args.size,
                      count=args.count, fuel=args.fuel, only=args.only)
    records = run_suites(cfg, jobs=args.jobs)
    # keep stdout clean when it carries the JSON report
    out = sys.stderr if args.json == "-" else sys.stdout
    if not args.quiet:
        for r in records:
            if args.verbose or r.status != PASS:
                print(r.line(), file=out)
    counts = {s: sum(r.status == s for r in records) for s in (PASS, FAIL, INCONCLUSIVE)}
    by_tag = {}
    for r in records:
        by_tag.setdefault(r.theorem, []).append(r.status)
    for tag, sts in by_tag.items():
        print(f"{tag:<18} {sts.count(PASS):>4} pass {sts.count(FAIL):>3} fail "
              f"{sts.count(INCONCLUSIVE):>3} inconclusive", file=out)
    print(f"total: {counts[PASS]} pass, {counts[FAIL]} fail, "
          f"{counts[INCONCLUSIVE]} inconclusive", file=out)
    if args.json:
        doc = to_json(records, config={"trunc": cfg.trunc, "seed": cfg.seed,
                                       "size": cfg.size, "count": cfg.count,
                                       "fuel": cfg.fuel,
                                       "only": list(cfg.only or SUITES)})
        if args.json == "-":
            sys.stdout.write(doc)
        else:
            Path(args.json).write_text(doc)
    if args.out:
        dest = Path(args.out)
        dest.mkdir(parents=True, exist_ok=True)
        for i, r in enumerate(x for x in records if x.status == FAIL and x.replay):
            safe = re.sub(r"[^A-Za-z0-9_.=-]+", "_", r.instance)[:60]
            (dest / f"{r.theorem}-{i:03d}-{safe}.json").write_text(dumps(r.replay))
    return 1 if counts[FAIL] else 0


def cmd_replay(args) -> int:
    try:
        doc = loads(Path(args.file).read_text(), args.file)
        rec = replay(doc)
    except (CubepropError, ValueError, KeyError) as exc:
        print(f"cannot replay: {exc}", file=sys.stderr)
        return 1
    print(rec.line())
    print(json.dumps(rec.witness, indent=2, default=str))
    return 1 if rec.status == FAIL else 0


# -- generate ---------------------------------------------------------------------

def cmd_generate(args) -> int:
    obj = generate(args.kind, seed=args.seed, trunc=args.trunc, size=args.size,
                   n=args.n)
    doc = mor_to_dict(obj) if isinstance(obj, TCSetMor) else tcset_to_dict(obj)
    text = dumps(doc)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# -- reals ------------------------------------------------------------------------

def parse_real(text: str) -> rl.Cocut:
    m = re.fullmatch(r"sqrt(\d+)", text)
    if m:
        return rl.sqrt_cocut(int(m.group(1)))
    return rl.rational_cocut(Fraction(text))


def cmd_reals_demo(args) -> int:
    try:
        C = parse_real(args.real)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"bad real {args.real!r}: {exc}", file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    centre = C.bound_in if not C.name.startswith("sqrt") else (C.bound_out + C.bound_in) / 2
    pairs = rl.random_pairs(rng, args.queries, centre=centre, spread=2, denom=16)
    back = rl.neg_cut(rl.cocut_to_cut(C))
    print(f"# locate transcript for {C.name} and not((not {C.name})^<)")
    answers = []
    for a, b in pairs:
        x, y = C.locate(a, b), back.locate(a, b)
        answers += [x, y]
        print(f"locate({a}, {b}): {_show(x):<22} roundtrip: {_show(y)}")
    ok = rl.cocut_answers_consistent(answers)
    print(f"# consistent: {ok}")
    d = rl.weakly_pi01(C)
    probe = sorted({a for a, _ in pairs[:3]})
    print("# decision family d(a, n)")
    for a in probe:
        row = " ".join("R" if isinstance(d(a, n), rl.RHolds) else "-"
                       for n in range(1, 11))
        res = rl.member_up_to(C, a, 50)
        tag = f"out at n={res.n}" if isinstance(res, rl.DefinitelyOut) else "in up to 50"
        print(f"a={a}: {row}  ({tag})")
    return 0 if ok else 1


def _show(ans) -> str:
    return f"{type(ans).__name__}({ans.value})"


# -- ect --------------------------------------------------------------------------

def _load_program(ref: str) -> int:
    if ref.startswith("builtin:"):
        name = ref.split(":", 1)[1]
        if name not in kl.PROGRAMS:
            raise CubepropError(f"no builtin program {name!r}")
        return kl.program_code(name)
    return kl.load_code(Path(ref).read_text())


def cmd_ect_check(args) -> int:
    try:
        f = kl.parse_fn(args.fn)
        e = _load_program(args.code)
    except CubepropError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read {args.code}: {exc.strerror}", file=sys.stderr)
        return 2
    rep = kl.ect_check(f, e, range(args.range), args.fuel)
    if args.json:
        sys.stdout.write(json.dumps(rep.to_dict(), indent=2) + "\n")
    else:
        for p in rep.points:
            detail = "" if p.status == INCONCLUSIVE else f" got {p.got}"
            print(f"x={p.x:<4} {p.status:<12} want {p.expected}{detail}")
        skipped = args.range - len(rep.points)
        print(f"{rep.status}: {args.fn} against code {e} "
              f"({len(rep.points)} checked, {skipped} outside the domain)")
    return 1 if rep.status == FAIL else 0


def cmd_ect_programs(args) -> int:
    for name in sorted(kl.PROGRAMS):
        print(f"{name:<12} {kl.program_code(name)}")
    return 0


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubeprop",
                                description="Finite checks for truncated cubical sets, "
                                            "located reals and Kleene's T.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="group", required=True)

    cube = sub.add_parser("cube", help="cube category").add_subparsers(dest="cmd", required=True)
    h = cube.add_parser("homs", help="list morphisms [m] -> [n]")
    h.add_argument("m", type=_nat)
    h.add_argument("n", type=_nat)
    h.add_argument("--count", action="store_true", help="only print the count")
    h.set_defaults(func=cmd_cube_homs)

    psh = sub.add_parser("psh", help="truncated cubical sets").add_subparsers(dest="cmd", required=True)
    v = psh.add_parser("validate", help="validate an object or morphism file")
    v.add_argument("file")
    v.set_defaults(func=cmd_psh_validate)

    vr = sub.add_parser("verify", help="run the verification suites")
    vr.add_argument("--trunc", type=_pos, default=2, help="truncation D (default 2)")
    vr.add_argument("--seed", type=int, default=0)
    vr.add_argument("--size", type=_pos, default=6, help="max level size of random instances")
    vr.add_argument("--count", type=_pos, default=None,
                    help="instances per randomised suite (default: per-suite)")
    vr.add_argument("--fuel", type=_pos, default=10 ** 5)
    vr.add_argument("--only", type=_tags, default=None,
                    help=f"comma-separated tags from: {', '.join(SUITES)}")
    vr.add_argument("--jobs", type=_pos, default=1, help="worker processes")
    vr.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    vr.add_argument("--out", metavar="DIR", help="write replayable files for FAIL records")
    vr.add_argument("-v", "--verbose", action="store_true", help="print every record")
    vr.add_argument("-q", "--quiet", action="store_true", help="only print the summary")
    vr.set_defaults(func=cmd_verify)

    rp = sub.add_parser("replay", help="re-run a FAIL instance file")
    rp.add_argument("file")
    rp.set_defaults(func=cmd_replay)

    g = sub.add_parser("generate", help="emit a generated instance as JSON")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--trunc", type=_nat, default=2)
    g.add_argument("--size", type=_pos, default=6)
    g.add_argument("--n", type=_nat, default=1, help="dimension for 'representable'")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    reals = sub.add_parser("reals", help="located cuts and cocuts").add_subparsers(dest="cmd", required=True)
    d = reals.add_parser("demo", help="print a locate transcript")
    d.add_argument("--real", default="sqrt2", help="a rational such as 1/2, or sqrtN")
    d.add_argument("--queries", type=_pos, default=10)
    d.add_argument("--seed", type=int, default=0)
    d.set_defaults(func=cmd_reals_demo)

    ect = sub.add_parser("ect", help="Kleene T/U and ECT instances").add_subparsers(dest="cmd", required=True)
    c = ect.add_parser("check", help="check a partial function against a program")
    c.add_argument("--fn", required=True,
                   help="value[@domain], e.g. succ@even, const:3@lt:5")
    c.add_argument("--code", required=True,
                   help="assembly file, file holding a code number, or builtin:NAME")
    c.add_argument("--range", type=_pos, default=10, help="check x = 0..N-1")
    c.add_argument("--fuel", type=_pos, default=10 ** 5)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_ect_check)
    pr = ect.add_parser("programs", help="list the built-in programs and their codes")
    pr.set_defaults(func=cmd_ect_programs)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CubepropError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
