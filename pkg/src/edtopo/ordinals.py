"""Ordinals below ω³+1, the tree O_{ω^ω} under Kleene–Brouwer, and the
label classifiers behind the Arens and Roy spaces."""

from __future__ import annotations

import enum
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .enumop import string_code, string_decode, tup, untup

INF = math.inf


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


# ---------------------------------------------------------------------------
# ω³ + 1


@dataclass(frozen=True)
class Ord:
    """ω²·j + ω·k + n, or TOP = ω³ when ``top`` is set."""

    j: int = 0
    k: int = 0
    n: int = 0
    top: bool = False

    def __post_init__(self):
        if min(self.j, self.k, self.n) < 0:
            raise ValueError("ordinal coefficients must be naturals")
        if self.top and (self.j or self.k or self.n):
            raise ValueError("TOP carries no coefficients")

    def key(self):
        return (1, 0, 0, 0) if self.top else (0, self.j, self.k, self.n)

    def __lt__(self, o): return self.key() < o.key()
    def __le__(self, o): return self.key() <= o.key()
    def __gt__(self, o): return self.key() > o.key()
    def __ge__(self, o): return self.key() >= o.key()

    def is_zero(self):
        return not self.top and self.j == self.k == self.n == 0

    def is_successor(self):
        return not self.top and self.n > 0

    def succ(self) -> "Ord":
        if self.top:
            raise ValueError("ω³ has no successor below ω³+1")
        return Ord(self.j, self.k, self.n + 1)

    def pred(self) -> "Ord":
        if not self.is_successor():
            raise ValueError(f"{self} is not a successor")
        return Ord(self.j, self.k, self.n - 1)

    def __str__(self):
        if self.top:
            return "w3"
        return f"w2*{self.j}+w*{self.k}+{self.n}"


TOP = Ord(top=True)


def w2(j: int) -> Ord:
    return Ord(j, 0, 0)


_TERM = re.compile(r"^(w3|w2\*(\d+)|w2|w\*(\d+)|w|(\d+))$")


def parse_ord(text: str) -> Ord:
    """Parse "w2*j + w*k + n" (any subset of terms, in order) or "w3"."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty ordinal")
    parts = s.split("+")
    j = k = n = 0
    rank = 3
    for p in parts:
        m = _TERM.match(p)
        if not m:
            raise ValueError(f"bad ordinal term {p!r} in {text!r}")
        if p == "w3":
            if len(parts) != 1:
                raise ValueError("w3 must stand alone")
            return TOP
        if p.startswith("w2"):
            r, val = 2, int(m.group(2)) if m.group(2) is not None else 1
        elif p.startswith("w"):
            r, val = 1, int(m.group(3)) if m.group(3) is not None else 1
        else:
            r, val = 0, int(m.group(4))
        if r >= rank:
            raise ValueError(f"terms out of order in {text!r}")
        rank = r
        if r == 2:
            j = val
        elif r == 1:
            k = val
        else:
            n = val
    return Ord(j, k, n)


def ord_code(a: Ord) -> int:
    """TOP ↦ 0, ω²j+ωk+n ↦ <j,k,n> + 1 (a bijection onto ω)."""
    return 0 if a.top else tup(a.j, a.k, a.n) + 1


def ord_decode(c: int) -> Ord:
    if c == 0:
        return TOP
    return Ord(*untup(c - 1, 3))


def ords_below(bound: int) -> Iterator[Ord]:
    """All ω²j+ωk+n with j,k,n < bound (lexicographic order)."""
    for j, k, n in itertools.product(range(bound), repeat=3):
        yield Ord(j, k, n)


# ---------------------------------------------------------------------------
# Arens labels


@dataclass(frozen=True)
class ArensLabel:
    """kind ∈ {nat, inf, zeta, infbar, bar}; ``n`` is the index.

    nat n (n ≥ 0) is n, bar n is n̄, zeta n (n ∈ ℤ) is n_ζ.
    """

    kind: str
    n: int = 0

    KINDS = ("nat", "inf", "zeta", "infbar", "bar")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown label kind {self.kind}")
        if self.kind in ("nat", "bar") and self.n < 0:
            raise ValueError("label index must be natural")
        if self.kind in ("inf", "infbar") and self.n != 0:
            raise ValueError("∞ labels carry no index")

    def key(self):
        i = self.KINDS.index(self.kind)
        return (i, -self.n if self.kind == "bar" else self.n)

    def __lt__(self, o): return self.key() < o.key()
    def __le__(self, o): return self.key() <= o.key()

    def in_plus(self) -> bool:
        """Membership in L⁺ = L ∖ {0, 0̄, 0_ζ, ∞, ∞̄}."""
        return self.kind in ("nat", "bar", "zeta") and self.n != 0

    def __str__(self):
        if self.kind == "nat":
            return str(self.n)
        if self.kind == "bar":
            return f"{self.n}bar"
        if self.kind == "zeta":
            return f"{self.n}z"
        return self.kind

    def code(self) -> int:
        i = self.KINDS.index(self.kind)
        n = self.n
        if self.kind == "zeta":
            n = 2 * n if n >= 0 else -2 * n - 1
        return tup(i, n)

    @classmethod
    def decode(cls, c: int) -> "ArensLabel":
        i, n = untup(c, 2)
        if i >= len(cls.KINDS):
            raise ValueError("not a label code")
        kind = cls.KINDS[i]
        if kind == "zeta":
            n = n // 2 if n % 2 == 0 else -(n + 1) // 2
        return cls(kind, n)

    @classmethod
    def parse(cls, s: str) -> "ArensLabel":
        s = s.strip()
        if s in ("inf", "infbar"):
            return cls(s)
        if s.endswith("bar"):
            return cls("bar", int(s[:-3]))
        if s.endswith("z"):
            return cls("zeta", int(s[:-1]))
        return cls("nat", int(s))


L0 = ArensLabel("nat", 0)
L0BAR = ArensLabel("bar", 0)
L0Z = ArensLabel("zeta", 0)
LINF = ArensLabel("inf")
LINFBAR = ArensLabel("infbar")


def arens_classify(a: Ord) -> set[ArensLabel]:
    """All labels x with a ∈ I_x."""
    if a.is_zero():
        raise ValueError("0 is outside the partition of (ω³+1)∖{0}")
    if a.top:
        return {L0, L0BAR}
    k, n = a.k, a.n
    if n == 0:
        if k == 0:
            return {L0Z}
        return {LINF} if k % 2 == 1 else {LINFBAR}
    if k % 2 == 0:
        if n % 2 == 1:
            return {ArensLabel("nat", (n + 1) // 2)}
        return {ArensLabel("zeta", -(n // 2))}
    if n % 2 == 1:
        return {ArensLabel("bar", (n + 1) // 2)}
    return {ArensLabel("zeta", n // 2)}


def arens_label_of(a: Ord) -> ArensLabel:
    """The label of a non-TOP ordinal (unique there)."""
    (lab,) = arens_classify(a)
    return lab


# ---------------------------------------------------------------------------
# h : ω³+1 → ℚ, the four clauses taken verbatim


def h_embed(a: Ord) -> Fraction:
    """h(ω³)=0, h(ω²j)=2^-j, h(ω²j+ωk)=2^-j(1+2^-k) for k ≥ 1,
    h(ω²j+ωk+ℓ)=2^-j(1+2^-k(1+2^-ℓ)) for ℓ ≥ 1."""
    if not isinstance(a, Ord):
        raise TypeError("h_embed expects an Ord")
    if a.top:
        return Fraction(0)
    j, k, l = a.j, a.k, a.n
    base = Fraction(1, 2 ** j)
    if k == 0 and l == 0:
        return base
    if l == 0:
        return base * (1 + Fraction(1, 2 ** k))
    return base * (1 + Fraction(1, 2 ** k) * (1 + Fraction(1, 2 ** l)))


# ---------------------------------------------------------------------------
# O_{ω^ω}


def is_kb_node(s) -> bool:
    s = tuple(s)
    if any((not isinstance(a, int)) or a < 0 for a in s):
        return False
    return len(s) == 0 or len(s) <= s[0] + 1


def check_kb(s) -> tuple[int, ...]:
    s = tuple(s)
    if not is_kb_node(s):
        raise ValueError(f"{list(s)} violates |σ| ≤ σ(0)+1")
    return s


def is_leaf(s) -> bool:
    s = check_kb(s)
    return len(s) > 0 and len(s) == s[0] + 1


def _kb_lt(s, t) -> bool:
    if s == t:
        return False
    m = min(len(s), len(t))
    for i in range(m):
        if s[i] != t[i]:
            return s[i] < t[i]
    return len(s) > len(t)


def kb_lt(s, t) -> bool:
    return _kb_lt(tuple(s), tuple(t))


def kb_le(s, t) -> bool:
    s, t = tuple(s), tuple(t)
    return s == t or _kb_lt(s, t)


def kb_compare(s, t) -> Cmp:
    s, t = check_kb(s), check_kb(t)
    if s == t:
        return Cmp.EQ
    return Cmp.LT if _kb_lt(s, t) else Cmp.GT


def kb_interval_member(g, s, j: int) -> bool:
    """γ ∈ (σj, σ]_KB = {τ : τ = σ or τ ⪰ σ⌢k for some k > j}."""
    g, s = check_kb(g), check_kb(s)
    if is_leaf(s):
        raise ValueError("interval base must not be a leaf")
    if g == s:
        return True
    return len(g) > len(s) and g[:len(s)] == s and g[len(s)] > j


def kb_pred_leaf(s) -> Optional[tuple[int, ...]]:
    """KB-predecessor of a leaf, None for the minimum ⟨0⟩.

    Writing σ = τ⌢a⌢0^r with a > 0, the largest node below σ is τ⌢(a−1).
    """
    s = check_kb(s)
    if not is_leaf(s):
        raise ValueError("only leaves have predecessors")
    i = len(s) - 1
    while i >= 0 and s[i] == 0:
        i -= 1
    if i < 0:
        return None
    return s[:i] + (s[i] - 1,)


def kb_nodes(max_first: int, max_entry: int) -> Iterator[tuple[int, ...]]:
    """All nodes with σ(0) ≤ max_first and later entries ≤ max_entry."""
    yield ()
    for a in range(max_first + 1):
        for length in range(1, a + 2):
            for rest in itertools.product(range(max_entry + 1), repeat=length - 1):
                yield (a,) + rest


def parse_kb(text: str) -> tuple[int, ...]:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"KB node must be a bracketed list, got {text!r}")
    body = s[1:-1].strip()
    node = tuple(int(x) for x in body.split(",")) if body else ()
    return check_kb(node)


def fmt_kb(s) -> str:
    return "[" + ",".join(str(a) for a in s) + "]"


def kb_code(s) -> int:
    return string_code(s)


def kb_decode(c: int) -> Optional[tuple[int, ...]]:
    s = string_decode(c)
    return s if is_kb_node(s) else None


# Roy labels are naturals or INF


def roy_classify(s) -> set:
    s = check_kb(s)
    if not s:
        return {0, INF}
    if len(s) >= 2 and len(s) == s[0] + 1:
        last = max((i for i in range(1, len(s)) if s[i] > 0), default=0)
        if last <= 1:
            return {1}
        return {2 * (last - 1) + 1}
    return {2 * len(s)}


def fmt_roy_label(x) -> str:
    return "inf" if x == INF else str(x)
