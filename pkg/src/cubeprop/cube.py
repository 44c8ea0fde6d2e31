"""The cartesian cube category.

Objects are natural numbers ``n`` standing for the n-fold power ``[n]`` of the
interval.  A morphism ``[m] -> [n]`` is an n-tuple of terms in m variables,
each term being one of the two point constants or a variable.

Terms are stored as small integers so that their natural order is the
canonical one::

    0 -> c0 (Const0)    1 -> c1 (Const1)    i + 2 -> v<i> (Var(i))
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import CompositionError, ParseError

CONST0 = 0
CONST1 = 1


def var(i: int) -> int:
    return i + 2


def term_str(t: int) -> str:
    return f"c{t}" if t < 2 else f"v{t - 2}"


@dataclass(frozen=True, order=True)
class CubeMor:
    dom: int
    cod: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0:
            raise ValueError("cube dimensions must be non-negative")
        if len(self.coords) != self.cod:
            raise ValueError(
                f"expected {self.cod} coordinates, got {len(self.coords)}")
        for t in self.coords:
            if not 0 <= t < self.dom + 2:
                raise ValueError(
                    f"term {t} out of range for domain [{self.dom}]")

    def __matmul__(self, other: CubeMor) -> CubeMor:
        return compose(self, other)

    def __str__(self):
        return format_mor(self)

    @property
    def is_point(self) -> bool:
        return self.dom == 0

    @property
    def is_identity(self) -> bool:
        return self.dom == self.cod and self.coords == tuple(
            var(i) for i in range(self.cod))


def identity(n: int) -> CubeMor:
    return CubeMor(n, n, tuple(var(i) for i in range(n)))


def compose(g: CubeMor, f: CubeMor) -> CubeMor:
    """Return ``g . f``; ``f`` is applied first."""
    if f.cod != g.dom:
        raise CompositionError(
            f"cannot compose {format_mor(g)} after {format_mor(f)}: "
            f"[{f.cod}] != [{g.dom}]")
    coords = tuple(t if t < 2 else f.coords[t - 2] for t in g.coords)
    return CubeMor(f.dom, g.cod, coords)


@lru_cache(maxsize=None)
def enum_homs(m: int, n: int) -> tuple[CubeMor, ...]:
    """All ``(m + 2) ** n`` morphisms ``[m] -> [n]`` in lexicographic order."""
    return tuple(
        CubeMor(m, n, coords)
        for coords in itertools.product(range(m + 2), repeat=n))


def points(n: int) -> tuple[CubeMor, ...]:
    return enum_homs(0, n)


def all_morphisms(trunc: int) -> tuple[CubeMor, ...]:
    """Every morphism between objects of dimension at most ``trunc``."""
    return tuple(
        s for m in range(trunc + 1) for n in range(trunc + 1)
        for s in enum_homs(m, n))


@lru_cache(maxsize=None)
def composable_pairs(trunc: int) -> tuple[tuple[CubeMor, CubeMor, CubeMor], ...]:
    """Every ``(s, t, t . s)`` with all dimensions at most ``trunc``."""
    return tuple((s, t, compose(t, s))
                 for s in all_morphisms(trunc)
                 for k in range(trunc + 1) for t in enum_homs(s.cod, k))


def product(f: CubeMor, g: CubeMor) -> CubeMor:
    """``f x g : [m + m'] -> [n + n']`` using the first m variables for f."""
    shift = lambda t: t if t < 2 else t + f.dom
    return CubeMor(f.dom + g.dom, f.cod + g.cod,
                   f.coords + tuple(shift(t) for t in g.coords))


def pair(f: CubeMor, g: CubeMor) -> CubeMor:
    """``<f, g> : [m] -> [n + k]`` for ``f : [m] -> [n]`` and ``g : [m] -> [k]``."""
    if f.dom != g.dom:
        raise CompositionError("pairing needs a common domain")
    return CubeMor(f.dom, f.cod + g.cod, f.coords + g.coords)


def split(f: CubeMor, n: int) -> tuple[CubeMor, CubeMor]:
    """Inverse of :func:`pair`: split the coordinates after position ``n``."""
    if not 0 <= n <= f.cod:
        raise ValueError(f"split position {n} outside 0..{f.cod}")
    return (CubeMor(f.dom, n, f.coords[:n]),
            CubeMor(f.dom, f.cod - n, f.coords[n:]))


def projection(n: int, k: int = 1) -> CubeMor:
    """The projection ``[n + k] -> [n]`` dropping the last k coordinates."""
    return CubeMor(n + k, n, tuple(var(i) for i in range(n)))


def face(n: int, e: int) -> CubeMor:
    """``[n] -> [n + 1]`` setting the last coordinate to the constant ``e``."""
    return CubeMor(n, n + 1, tuple(var(i) for i in range(n)) + (e,))


def extend(s: CubeMor) -> CubeMor:
    """``s x [1]``: act on the first coordinates, keep the last one free."""
    return product(s, identity(1))


def bang(n: int) -> CubeMor:
    """The unique map ``[n] -> [0]``."""
    return CubeMor(n, 0, ())


def format_coords(coords) -> str:
    return "[" + ",".join(term_str(t) for t in coords) + "]"


def format_mor(f: CubeMor) -> str:
    return f"{f.dom}->{f.cod}:{format_coords(f.coords)}"


_MOR_RE = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*:\s*\[(.*)\]\s*$")
_TERM_RE = re.compile(r"^(c[01]|v\d+)$")


def parse_terms(body: str) -> tuple[int, ...]:
    body = body.strip()
    if not body:
        return ()
    out = []
    for raw in body.split(","):
        tok = raw.strip()
        if not _TERM_RE.match(tok):
            raise ParseError(f"bad term {tok!r}")
        out.append(int(tok[1:]) if tok[0] == "c" else var(int(tok[1:])))
    return tuple(out)


def parse_mor(text: str) -> CubeMor:
    """Parse the ``m->n:[t,...]`` form produced by :func:`format_mor`."""
    match = _MOR_RE.match(text)
    if match is None:
        raise ParseError(f"not a cube morphism: {text!r}")
    dom, cod = int(match.group(1)), int(match.group(2))
    try:
        return CubeMor(dom, cod, parse_terms(match.group(3)))
    except ValueError as exc:
        raise ParseError(f"{exc} in {text!r}") from None
