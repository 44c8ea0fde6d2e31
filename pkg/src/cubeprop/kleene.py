"""A three-instruction register machine with Kleene's T predicate and U.

Instructions::

    INC r        R[r] += 1, continue
    DECJZ r j    if R[r] == 0 jump to j, else R[r] -= 1 and continue
    HALT         stop

Running past the last instruction (or jumping there) also halts.  Input and
output live in R0; every other register starts at 0.  One step is one executed
INC or DECJZ, so a program that halts immediately takes 0 steps.

Encoding of natural sequences
-----------------------------
``encode_seq([v1, ..., vk])`` is the integer whose binary expansion is ``1``
followed by the Elias-gamma codes of ``v1 + 1, ..., vk + 1``.  The gamma code
of ``m >= 1`` is ``len(bin(m)) - 1`` zeros followed by ``bin(m)``.  The empty
sequence is ``1``; ``0`` and any integer whose expansion does not parse
exactly decode to ``None``.

Programs are sequences ``[tag, a, b, tag, a, b, ...]`` with tag 0 = INC a
(b ignored, must be 0), 1 = DECJZ a b, 2 = HALT (a, b must be 0).  Any
integer that is not a well-formed program code decodes to the diverging
program ``DECJZ 1 0``.

A trace for input ``x`` that halts after ``t`` steps with output ``u`` is
``encode_seq([x, t, u, R, pc_0, r_0..r_{R-1}, ..., pc_t, r_0..r_{R-1}])`` with
``R`` the register count of the program and one snapshot per state.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import ParseError
from .report import FAIL, INCONCLUSIVE, PASS


class Timeout(NamedTuple):
    fuel: int

    def __repr__(self):
        return f"TIMEOUT(fuel={self.fuel})"


TIMEOUT = Timeout


class Instr(NamedTuple):
    op: str
    reg: int = 0
    target: int = 0

    def __str__(self):
        if self.op == "INC":
            return f"INC {self.reg}"
        if self.op == "DECJZ":
            return f"DECJZ {self.reg} {self.target}"
        return "HALT"


DIVERGE = (Instr("DECJZ", 1, 0),)


# -- sequence coding -----------------------------------------------------------

def _gamma(m: int) -> str:
    b = bin(m)[2:]
    return "0" * (len(b) - 1) + b


def encode_seq(values: Iterable[int]) -> int:
    bits = ["1"]
    for v in values:
        if v < 0:
            raise ValueError("sequence entries must be natural numbers")
        bits.append(_gamma(v + 1))
    return int("".join(bits), 2)


def decode_seq(code: int) -> list[int] | None:
    if code < 1:
        return None
    bits = bin(code)[3:]
    out, i, n = [], 0, len(bits)
    while i < n:
        z = 0
        while i < n and bits[i] == "0":
            z += 1
            i += 1
        if i + z + 1 > n:
            return None
        out.append(int(bits[i:i + z + 1], 2) - 1)
        i += z + 1
    return out


# -- programs ------------------------------------------------------------------

def encode_program(prog: Sequence[Instr]) -> int:
    flat = []
    for ins in prog:
        tag = {"INC": 0, "DECJZ": 1, "HALT": 2}[ins.op]
        flat += [tag, ins.reg, ins.target if ins.op == "DECJZ" else 0]
    return encode_seq(flat)


def decode_program(e: int) -> tuple[Instr, ...]:
    flat = decode_seq(e)
    if flat is None or len(flat) % 3:
        return DIVERGE
    prog = []
    for i in range(0, len(flat), 3):
        tag, a, b = flat[i:i + 3]
        if tag == 0 and b == 0:
            prog.append(Instr("INC", a))
        elif tag == 1:
            prog.append(Instr("DECJZ", a, b))
        elif tag == 2 and a == 0 and b == 0:
            prog.append(Instr("HALT"))
        else:
            return DIVERGE
    return tuple(prog)


def register_count(prog: Sequence[Instr]) -> int:
    return max([ins.reg for ins in prog] + [0]) + 1


_LINE = re.compile(r"^(?:(\w+):)?\s*(.*)$")


def assemble(text: str) -> tuple[Instr, ...]:
    """Parse assembly: one instruction per line, ``label:`` prefixes, ``#``
    comments.  ``JMP label`` expands to ``DECJZ z label`` with ``z`` a scratch
    register no other instruction touches (never R0, which holds the input)."""
    rows = []
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        label, rest = m.group(1), m.group(2).strip()
        if label:
            if label in labels:
                raise ParseError(f"duplicate label {label!r}", f"line {lineno}")
            labels[label] = len(rows)
        if rest:
            rows.append((lineno, rest.split()))
    scratch = 1
    for lineno, words in rows:
        if words[0].upper() in ("INC", "DECJZ") and len(words) > 1:
            try:
                scratch = max(scratch, int(words[1]) + 1)
            except ValueError:
                raise ParseError(f"bad register {words[1]!r}",
                                 f"line {lineno}") from None

    def target(word, lineno):
        if word in labels:
            return labels[word]
        try:
            return int(word)
        except ValueError:
            raise ParseError(f"unknown label {word!r}", f"line {lineno}") from None

    prog = []
    for lineno, words in rows:
        op = words[0].upper()
        args = words[1:]
        arity = {"INC": 1, "DECJZ": 2, "HALT": 0, "JMP": 1}.get(op)
        if arity is None:
            raise ParseError(f"unknown instruction {words[0]!r}", f"line {lineno}")
        if len(args) != arity:
            raise ParseError(f"{op} takes {arity} operand(s)", f"line {lineno}")
        if op == "INC":
            prog.append(Instr("INC", int(args[0])))
        elif op == "DECJZ":
            prog.append(Instr("DECJZ", int(args[0]), target(args[1], lineno)))
        elif op == "JMP":
            prog.append(Instr("DECJZ", scratch, target(args[0], lineno)))
        else:
            prog.append(Instr("HALT"))
    if labels and max(labels.values()) > len(prog):
        raise ParseError("label past the end of the program", "end")
    return tuple(prog)


def disassemble(prog: Sequence[Instr]) -> str:
    return "".join(f"{ins}\n" for ins in prog)


# -- execution -----------------------------------------------------------------

def _halted(prog, pc):
    return pc >= len(prog) or prog[pc].op == "HALT"


def _step(prog, pc, regs):
    ins = prog[pc]
    if ins.op == "INC":
        regs[ins.reg] += 1
        return pc + 1
    if regs[ins.reg] == 0:
        return ins.target
    regs[ins.reg] -= 1
    return pc + 1


def _execute(e: int, x: int, fuel: int, keep: bool):
    if x < 0 or fuel < 0:
        raise ValueError("input and fuel must be natural numbers")
    prog = decode_program(e)
    regs = [0] * register_count(prog)
    regs[0] = x
    pc = 0
    snaps = [(pc, tuple(regs))] if keep else None
    t = 0
    while not _halted(prog, pc):
        if t == fuel:
            return Timeout(fuel), t, snaps
        pc = _step(prog, pc, regs)
        t += 1
        if keep:
            snaps.append((pc, tuple(regs)))
    return regs[0], t, snaps


def run(e: int, x: int, fuel: int):
    """Output of program ``e`` on ``x``, or ``Timeout`` after ``fuel`` steps."""
    return _execute(e, x, fuel, keep=False)[0]


def trace(e: int, x: int, fuel: int):
    """The trace code ``z`` of a halting run, or ``Timeout``."""
    out, t, snaps = _execute(e, x, fuel, keep=True)
    if isinstance(out, Timeout):
        return out
    flat = [x, t, out, len(snaps[0][1])]
    for pc, regs in snaps:
        flat.append(pc)
        flat.extend(regs)
    return encode_seq(flat)


@dataclass(frozen=True)
class DecodedTrace:
    x: int
    steps: int
    output: int
    snapshots: tuple


def decode_trace(z: int) -> DecodedTrace | None:
    flat = decode_seq(z)
    if flat is None or len(flat) < 4:
        return None
    x, t, u, R = flat[:4]
    body = flat[4:]
    if R < 1 or len(body) != (t + 1) * (R + 1):
        return None
    snaps = tuple((body[i], tuple(body[i + 1:i + 1 + R]))
                  for i in range(0, len(body), R + 1))
    return DecodedTrace(x, t, u, snaps)


def kleene_T(e: int, x: int, z: int) -> bool:
    """``z`` codes the halting computation of ``e`` on ``x``."""
    d = decode_trace(z)
    if d is None or d.x != x:
        return False
    prog = decode_program(e)
    R = register_count(prog)
    if len(d.snapshots[0][1]) != R:
        return False
    regs = [0] * R
    regs[0] = x
    pc = 0
    if d.snapshots[0] != (pc, tuple(regs)):
        return False
    for i in range(1, d.steps + 1):
        if _halted(prog, pc):
            return False
        pc = _step(prog, pc, regs)
        if d.snapshots[i] != (pc, tuple(regs)):
            return False
    return _halted(prog, pc) and regs[0] == d.output


def kleene_U(z: int) -> int:
    """Output recorded in a trace code (0 for codes that are not traces)."""
    d = decode_trace(z)
    return 0 if d is None else d.output


def steps(z: int) -> int:
    d = decode_trace(z)
    return 0 if d is None else d.steps


# -- partial functions and the ECT instance check ------------------------------

@dataclass(frozen=True)
class PartialFn:
    """A total decision oracle for the domain plus a value on accepted points."""
    domain: Callable[[int], bool] = field(repr=False)
    value: Callable[[int], int] = field(repr=False)
    name: str = "f"

    def accepts(self, x: int) -> bool:
        return bool(self.domain(x))

    def __call__(self, x: int) -> int:
        if not self.accepts(x):
            raise ValueError(f"{self.name} is undefined at {x}")
        return self.value(x)


_VALUES = {
    "id": lambda k: (lambda x: x),
    "succ": lambda k: (lambda x: x + 1),
    "pred": lambda k: (lambda x: max(x - 1, 0)),
    "zero": lambda k: (lambda x: 0),
    "double": lambda k: (lambda x: 2 * x),
    "half": lambda k: (lambda x: x // 2),
    "square": lambda k: (lambda x: x * x),
    "const": lambda k: (lambda x: k),
    "add": lambda k: (lambda x: x + k),
}
_DOMAINS = {
    "all": lambda k: (lambda x: True),
    "even": lambda k: (lambda x: x % 2 == 0),
    "odd": lambda k: (lambda x: x % 2 == 1),
    "lt": lambda k: (lambda x: x < k),
    "ge": lambda k: (lambda x: x >= k),
    "none": lambda k: (lambda x: False),
}
_NEEDS_ARG = {"const", "add", "lt", "ge"}


def _lookup(table, word, what):
    name, _, arg = word.partition(":")
    if name not in table:
        raise ParseError(f"unknown {what} {name!r}; expected one of "
                         f"{', '.join(sorted(table))}", word)
    if (name in _NEEDS_ARG) != bool(arg):
        raise ParseError(f"{what} {name!r} "
                         + ("needs" if name in _NEEDS_ARG else "takes no")
                         + " ':N' argument", word)
    try:
        k = int(arg) if arg else 0
    except ValueError:
        raise ParseError(f"bad argument {arg!r}", word) from None
    return table[name](k)


def parse_fn(spec: str) -> PartialFn:
    """``value[@domain]``, e.g. ``id``, ``succ@even``, ``const:3@lt:5``."""
    value, _, domain = spec.partition("@")
    return PartialFn(_lookup(_DOMAINS, domain or "all", "domain"),
                     _lookup(_VALUES, value, "function"), spec)


@dataclass
class EctPoint:
    x: int
    status: str
    expected: int | None = None
    got: int | None = None
    z: int | None = None


@dataclass
class EctReport:
    fn: str
    code: int
    fuel: int
    points: list[EctPoint]

    @property
    def status(self) -> str:
        st = {p.status for p in self.points}
        if FAIL in st:
            return FAIL
        if INCONCLUSIVE in st:
            return INCONCLUSIVE
        return PASS

    def to_dict(self) -> dict:
        return {"fn": self.fn, "code": str(self.code), "fuel": self.fuel,
                "status": self.status,
                "points": [{"x": p.x, "status": p.status, "expected": p.expected,
                            "got": p.got} for p in self.points]}


def ect_check(f: PartialFn, e: int, xs: Iterable[int], fuel: int) -> EctReport:
    """Check ``f`` against ``phi_e`` on the accepted points of ``xs``.

    Points outside the domain are skipped.  A wrong or missing trace value is
    FAIL; running out of fuel is INCONCLUSIVE.
    """
    points = []
    for x in xs:
        if not f.accepts(x):
            continue
        want = f.value(x)
        z = trace(e, x, fuel)
        if isinstance(z, Timeout):
            points.append(EctPoint(x, INCONCLUSIVE, want))
            continue
        if not kleene_T(e, x, z):
            points.append(EctPoint(x, FAIL, want, None, z))
            continue
        got = kleene_U(z)
        points.append(EctPoint(x, PASS if got == want else FAIL, want, got, z))
    return EctReport(f.name, e, fuel, points)


# -- hand-assembled programs ----------------------------------------------------

PROGRAMS: dict[str, str] = {
    "identity": "HALT\n",
    "successor": "INC 0\nHALT\n",
    "zero": """
        loop: DECJZ 0 end
              JMP loop
        end:  HALT
    """,
    "pred": "DECJZ 0 end\nend: HALT\n",
    "add2": "INC 0\nINC 0\n",
    "const3": """
        loop: DECJZ 0 set
              JMP loop
        set:  INC 0
              INC 0
              INC 0
    """,
    "double": """
        loop: DECJZ 0 back
              INC 1
              INC 1
              JMP loop
        back: DECJZ 1 end
              INC 0
              JMP back
        end:  HALT
    """,
    "triple": """
        loop: DECJZ 0 back
              INC 1
              INC 1
              INC 1
              JMP loop
        back: DECJZ 1 end
              INC 0
              JMP back
        end:  HALT
    """,
    "half": """
        loop: DECJZ 0 back
              DECJZ 0 back
              INC 1
              JMP loop
        back: DECJZ 1 end
              INC 0
              JMP back
        end:  HALT
    """,
    "div3": """
        loop: DECJZ 0 back
              DECJZ 0 back
              DECJZ 0 back
              INC 1
              JMP loop
        back: DECJZ 1 end
              INC 0
              JMP back
        end:  HALT
    """,
    "parity": """
        loop: DECJZ 0 even
              DECJZ 0 odd
              JMP loop
        even: HALT
        odd:  INC 0
    """,
    "mod3": """
        loop: DECJZ 0 r0
              DECJZ 0 r1
              DECJZ 0 r2
              JMP loop
        r0:   HALT
        r1:   INC 0
              HALT
        r2:   INC 0
              INC 0
    """,
    "is_zero": """
              DECJZ 0 z
        clr:  DECJZ 0 end
              JMP clr
        z:    INC 0
        end:  HALT
    """,
    "min3": """
              DECJZ 0 z0
              DECJZ 0 z1
              DECJZ 0 z2
        clr:  DECJZ 0 set
              JMP clr
        set:  INC 0
              INC 0
              INC 0
              HALT
        z0:   HALT
        z1:   INC 0
              HALT
        z2:   INC 0
              INC 0
    """,
    "sub3": """
              DECJZ 0 end
              DECJZ 0 end
              DECJZ 0 end
        end:  HALT
    """,
    "square": """
        copy: DECJZ 0 mul
              INC 1
              INC 2
              JMP copy
        mul:  DECJZ 1 end
        add:  DECJZ 2 rest
              INC 0
              INC 3
              JMP add
        rest: DECJZ 3 mul
              INC 2
              JMP rest
        end:  HALT
    """,
    "triangular": """
        copy: DECJZ 0 add
              INC 1
              JMP copy
        add:  DECJZ 1 rest
              INC 0
              INC 2
              JMP add
        rest: DECJZ 2 dec
              INC 1
              JMP rest
        dec:  DECJZ 1 end
              JMP add
        end:  HALT
    """,
    "exp2": """
        copy: DECJZ 0 one
              INC 1
              JMP copy
        one:  INC 0
        next: DECJZ 1 end
        dbl:  DECJZ 0 move
              INC 2
              INC 2
              JMP dbl
        move: DECJZ 2 next
              INC 0
              JMP move
        end:  HALT
    """,
    "diverge": "loop: JMP loop\n",
    "id_even": """
        loop: DECJZ 0 even
              DECJZ 0 odd
              INC 1
              INC 1
              JMP loop
        odd:  JMP odd
        even: DECJZ 1 end
              INC 0
              JMP even
        end:  HALT
    """,
    "succ_even": """
        loop: DECJZ 0 even
              DECJZ 0 odd
              INC 1
              INC 1
              JMP loop
        odd:  JMP odd
        even: DECJZ 1 end
              INC 0
              JMP even
        end:  INC 0
    """,
    "id_lt5": """
              DECJZ 0 back
              INC 1
              DECJZ 0 back
              INC 1
              DECJZ 0 back
              INC 1
              DECJZ 0 back
              INC 1
              DECJZ 0 back
              INC 1
        hang: JMP hang
        back: DECJZ 1 end
              INC 0
              JMP back
        end:  HALT
    """,
}


def program_code(name: str) -> int:
    return encode_program(assemble(PROGRAMS[name]))


def load_code(text: str) -> int:
    """A bare decimal integer is taken as a code; anything else is assembled."""
    stripped = text.strip()
    if stripped.isdigit():
        return int(stripped)
    return encode_program(assemble(text))
