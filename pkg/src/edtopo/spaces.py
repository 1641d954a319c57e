"""Point specifications, Nbase encoders and membership oracles.

Each space class holds a finitary description of a point (power spaces use
a finite override table plus a periodic default), decides membership of an
atom in the point's coded neighbourhood filter, and produces a name stream
that enumerates exactly that filter.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator, Optional

from .enumop import (
    NameStream,
    SetSpec,
    dovetail,
    finset_decode,
    oracle_stream,
    pair,
    rational_code,
    rational_or_none,
    string_code,
    string_decode,
    tup,
    unpair,
    untup,
)
from .ordinals import (
    INF,
    TOP,
    ArensLabel,
    Ord,
    arens_classify,
    check_kb,
    fmt_kb,
    is_kb_node,
    is_leaf,
    kb_interval_member,
    ord_code,
    ord_decode,
    parse_kb,
    parse_ord,
    roy_classify,
)

INF_STAR = "inf*"


# ---------------------------------------------------------------------------
# finite + periodic sequences


class Periodic:
    """n ↦ overrides[n] if present, else default[n mod len(default)]."""

    def __init__(self, default, overrides=None):
        self.default = tuple(default)
        if not self.default:
            raise ValueError("periodic default must be nonempty")
        self.overrides = dict(overrides or {})
        if any((not isinstance(k, int)) or k < 0 for k in self.overrides):
            raise ValueError("override indices must be naturals")

    def __getitem__(self, n: int):
        if n in self.overrides:
            return self.overrides[n]
        return self.default[n % len(self.default)]

    def values(self):
        return list(self.default) + list(self.overrides.values())

    def horizon(self) -> int:
        """Index past which the sequence is purely periodic."""
        return max(self.overrides, default=-1) + 1

    def prefix(self, n: int) -> list:
        return [self[i] for i in range(n)]

    def __repr__(self):
        return f"Periodic({self.default!r}, {self.overrides!r})"


class FuncSeq:
    """Sequence given by a function of the index, for builder outputs that
    are computable but not eventually periodic.  Values are cached; only the
    first ``check`` values are validated when a point is constructed."""

    overrides: dict = {}

    def __init__(self, fn: Callable[[int], object], check: int = 64):
        self.fn = fn
        self.check = check
        self._cache: dict[int, object] = {}

    def __getitem__(self, n: int):
        v = self._cache.get(n, self._cache)
        if v is self._cache:
            v = self._cache[n] = self.fn(n)
        return v

    def values(self):
        return [self[i] for i in range(self.check)]

    def prefix(self, n: int) -> list:
        return [self[i] for i in range(n)]

    def __repr__(self):
        return f"FuncSeq({self.prefix(6)!r}...)"


def periodic(values, tail) -> Periodic:
    """Sequence listing ``values`` and then repeating ``tail`` forever."""
    values = list(values)
    tail = list(tail)
    n = len(values)
    # realign so that index n starts the tail
    default = [tail[(i - n) % len(tail)] for i in range(len(tail))]
    return Periodic(default, {i: v for i, v in enumerate(values)})


# ---------------------------------------------------------------------------
# helpers


def shell(arity: int) -> Iterator[tuple[int, ...]]:
    """All arity-tuples of naturals, by max entry then lexicographically."""
    for r in itertools.count():
        for t in itertools.product(range(r + 1), repeat=arity):
            if max(t, default=0) == r or (r == 0):
                yield t
        if arity == 0:
            return


def interleave(*its) -> Iterator:
    """Round-robin over iterators, dropping exhausted ones."""
    its = [iter(i) for i in its]
    while its:
        alive = []
        for it in its:
            try:
                yield next(it)
            except StopIteration:
                continue
            alive.append(it)
        its = alive


def filtered(cands: Iterator, member: Callable[[int], bool]) -> Iterator[Optional[int]]:
    for c in cands:
        yield c if member(c) else None


def _untup_safe(c: int, k: int):
    return untup(c, k)


def omega_hat_le(a, b) -> bool:
    return a <= b


def _fmt_hat(v) -> str:
    if v == INF:
        return "inf"
    if v == INF_STAR:
        return "inf*"
    return str(v)


def _parse_hat(s: str, star=False):
    s = s.strip()
    if s == "inf":
        return INF
    if star and s == "inf*":
        return INF_STAR
    v = int(s)
    if v < 0:
        raise ValueError("negative value")
    return v


def split_top(s: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside brackets and parentheses."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced brackets in {s!r}")
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced brackets in {s!r}")
    out.append("".join(cur).strip())
    return out


def _strip_parens(s: str) -> str:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"expected a parenthesised pair, got {s!r}")
    return s[1:-1]


# ---------------------------------------------------------------------------
# base


class Point:
    tag = "?"

    def member(self, atom: int) -> bool:
        raise NotImplementedError

    def nbase(self) -> NameStream:
        raise NotImplementedError

    # schedule bound: atoms below this code are guaranteed within 10^4 pulls
    complete_below = 500


class PowerPoint(Point):
    """ω-power: coordinates come from a Periodic sequence."""

    def __init__(self, seq: Periodic):
        self.seq = seq
        for v in seq.values():
            self.check_value(v)

    def check_value(self, v):
        pass

    def __getitem__(self, n):
        return self.seq[n]

    def coord_atoms(self, n: int) -> Iterator[Optional[int]]:
        raise NotImplementedError

    def nbase(self) -> NameStream:
        return NameStream(dovetail(self.coord_atoms), oracle=self.member)

    def fmt_value(self, v) -> str:
        return str(v)

    @classmethod
    def parse_value(cls, s: str):
        raise NotImplementedError

    def to_text(self) -> str:
        if not isinstance(self.seq, Periodic):
            raise ValueError("this point has no finite text form (its sequence is not eventually periodic)")
        lines = [f"space: {self.tag}"]
        for n in sorted(self.seq.overrides):
            lines.append(f"coord {n} = {self.fmt_value(self.seq.overrides[n])}")
        d = ", ".join(self.fmt_value(v) for v in self.seq.default)
        lines.append(f"default = periodic({d})")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# ℝ_< and the Hilbert cube


def dyadic_value(s: SetSpec) -> Fraction:
    """Σ_{n∈S} 2^{-n-1}, exact (eventually periodic bits give a rational)."""
    p, q = len(s.prefix), len(s.period)
    head = sum(Fraction(b, 2 ** (i + 1)) for i, b in enumerate(s.prefix))
    cyc = sum(Fraction(b, 2 ** (i + 1)) for i, b in enumerate(s.period))
    # tail = 2^-p * cyc * (1 / (1 - 2^-q))
    return head + Fraction(1, 2 ** p) * cyc / (1 - Fraction(1, 2 ** q))


class LowerReal(Point):
    tag = "lower-real"

    def __init__(self, value):
        if isinstance(value, SetSpec):
            self.bits = value
            value = dyadic_value(value)
        else:
            self.bits = None
        self.value = Fraction(value)

    def member(self, atom):
        q = rational_or_none(atom)
        return q is not None and q < self.value

    def nbase(self):
        return oracle_stream(self.member, scan=16)

    def to_text(self):
        if self.bits is not None:
            return f"space: {self.tag}\ndyadic = {self.bits.text()}\n"
        return f"space: {self.tag}\nvalue = {self.value}\n"


class Hilbert(PowerPoint):
    """[0,1]^ω; atoms ⟨n,s,p⟩ with |x(n) − p| < 2^-s."""

    tag = "hilbert"

    def check_value(self, v):
        if not (0 <= Fraction(v) <= 1):
            raise ValueError("Hilbert coordinates lie in [0,1]")

    def member(self, atom):
        n, s, pc = untup(atom, 3)
        p = rational_or_none(pc)
        if p is None:
            return False
        return abs(Fraction(self.seq[n]) - p) < Fraction(1, 2 ** s)

    def coord_atoms(self, n):
        x = Fraction(self.seq[n])

        def useful():
            # dyadic centres first: the nearest multiple of 2^-(s+1)
            for s in itertools.count():
                p = Fraction(round(x * 2 ** (s + 1)), 2 ** (s + 1))
                yield tup(n, s, rational_code(p))

        scan = (tup(n, *unpair(r)) for r in itertools.count())
        return filtered(interleave(useful(), scan), self.member)

    @classmethod
    def parse_value(cls, s):
        return Fraction(s.strip())


# ---------------------------------------------------------------------------
# ω̂^ω and telophase


class OmegaHatPower(PowerPoint):
    """Atoms ⟨0,n,k⟩ (x(n)=k) and ⟨1,n,k⟩ (x(n) ≥ k)."""

    tag = "omega-hat"

    def check_value(self, v):
        if not (v == INF or (isinstance(v, int) and v >= 0)):
            raise ValueError(f"bad ω̂ value {v!r}")

    def member(self, atom):
        i, n, k = untup(atom, 3)
        x = self.seq[n]
        if i == 0:
            return x == k
        if i == 1:
            return x >= k
        return False

    def coord_atoms(self, n):
        x = self.seq[n]
        if x != INF:
            yield tup(0, n, x)
        for k in itertools.count():
            if x != INF and k > x:
                return
            yield tup(1, n, k)

    fmt_value = staticmethod(_fmt_hat)

    @classmethod
    def parse_value(cls, s):
        return _parse_hat(s)


def telo_le(m: int, x, top) -> bool:
    """m ≤ x ≤ top in the telophase order, top ∈ {INF, INF_STAR}."""
    if x == top:
        return True
    return isinstance(x, int) and x >= m


class TelophasePower(PowerPoint):
    """Atoms ⟨n,0,m⟩ (x=m), ⟨n,1,m⟩ (m ≤ x ≤ ∞), ⟨n,2,m⟩ (m ≤ x ≤ ∞★)."""

    tag = "telophase"

    def check_value(self, v):
        if not (v in (INF, INF_STAR) or (isinstance(v, int) and v >= 0)):
            raise ValueError(f"bad telophase value {v!r}")

    def member(self, atom):
        n, i, m = untup(atom, 3)
        x = self.seq[n]
        if i == 0:
            return x == m and isinstance(x, int)
        if i == 1:
            return telo_le(m, x, INF)
        if i == 2:
            return telo_le(m, x, INF_STAR)
        return False

    def coord_atoms(self, n):
        x = self.seq[n]
        if isinstance(x, int):
            yield tup(n, 0, x)
            for m in range(x + 1):
                yield tup(n, 1, m)
                yield tup(n, 2, m)
            return
        i = 1 if x == INF else 2
        for m in itertools.count():
            yield tup(n, i, m)

    fmt_value = staticmethod(_fmt_hat)

    @classmethod
    def parse_value(cls, s):
        return _parse_hat(s, star=True)


# ---------------------------------------------------------------------------
# double origin


@dataclass(frozen=True)
class DOPt:
    """A point of P_DO: (a, b) with a ∈ ω̂ and b ∈ ω ∪ {*} ∪ ω̄, or 𝟎★.

    ``bk`` is 'w' (b = bj ∈ ω, the negative side), '*' or 'bar' (b = b̄j).
    """

    a: object = INF
    bk: str = "*"
    bj: int = 0
    star: bool = False

    def __post_init__(self):
        if self.star:
            return
        if not (self.a == INF or (isinstance(self.a, int) and self.a >= 0)):
            raise ValueError(f"bad first coordinate {self.a!r}")
        if self.bk not in ("w", "*", "bar"):
            raise ValueError(f"bad second coordinate kind {self.bk!r}")
        if self.bj < 0:
            raise ValueError("negative index")

    def is_origin(self):
        return self.star or (self.a == INF and self.bk == "*")

    def cx(self) -> Fraction:
        if self.star or self.a == INF:
            return Fraction(0)
        return Fraction(1, 2 ** (self.a + 1))

    def cy(self) -> Fraction:
        if self.star or self.bk == "*":
            return Fraction(0)
        v = Fraction(1, 2 ** (self.bj + 1))
        return v if self.bk == "bar" else -v

    def __str__(self):
        if self.star:
            return "o*"
        a = "inf" if self.a == INF else str(self.a)
        b = "*" if self.bk == "*" else (f"{self.bj}bar" if self.bk == "bar" else str(self.bj))
        return f"({a}, {b})"

    @classmethod
    def parse(cls, s: str) -> "DOPt":
        s = s.strip()
        if s == "o*":
            return ORIGIN_STAR
        if s == "o":
            return ORIGIN
        a, b = split_top(_strip_parens(s))
        a = _parse_hat(a)
        b = b.strip()
        if b == "*":
            return cls(a, "*", 0)
        if b.endswith("bar"):
            return cls(a, "bar", int(b[:-3]))
        return cls(a, "w", int(b))


ORIGIN = DOPt(INF, "*", 0)
ORIGIN_STAR = DOPt(star=True)

_RAT_CACHE: dict[int, Optional[Fraction]] = {}


def _rat(c: int) -> Optional[Fraction]:
    v = _RAT_CACHE.get(c, False)
    if v is False:
        v = rational_or_none(c)
        if v is not None and not (-1 < v < 1):
            v = None
        if len(_RAT_CACHE) < 200000:
            _RAT_CACHE[c] = v
    return v


def do_intervals(v: Fraction) -> Iterator[tuple[Fraction, Fraction]]:
    """Open rational intervals (p, q) ⊂ (−1,1) containing v: tight ones that
    isolate v among the values of the embedding, interleaved with all
    intervals in code order."""

    def tight():
        if v > 0:
            e = 0
            while Fraction(1, 2 ** (e + 1)) != v:
                e += 1
            yield (Fraction(3, 2 ** (e + 3)), min(Fraction(3, 2 ** (e + 2)), Fraction(7, 8)))
        elif v < 0:
            e = 0
            while -Fraction(1, 2 ** (e + 1)) != v:
                e += 1
            yield (max(-Fraction(3, 2 ** (e + 2)), -Fraction(7, 8)), -Fraction(3, 2 ** (e + 3)))
        for i in itertools.count():
            w = Fraction(1, 2 ** (i + 2))
            if v == 0:
                yield (-w, w)
            else:
                # shrinking intervals keep every box family complete
                yield (v - w * abs(v), v + w * abs(v))

    def every():
        for c in itertools.count():
            cp, cq = unpair(c)
            p, q = _rat(cp), _rat(cq)
            if p is not None and q is not None and p < v < q:
                yield (p, q)

    return interleave(tight(), every())


class DoubleOriginPower(PowerPoint):
    """Atoms ⟨n,0,p,q,r,s⟩, ⟨n,1,k,ℓ⟩, ⟨n,2,k,ℓ⟩ (k, ℓ ≥ 1)."""

    tag = "double-origin"
    complete_below = 500

    def check_value(self, v):
        if not isinstance(v, DOPt):
            raise ValueError(f"bad double-origin value {v!r}")

    def member(self, atom):
        n, i, rest = untup(atom, 3)
        z = self.seq[n]
        if i == 0:
            p, q, r, s = (_rat(c) for c in untup(rest, 4))
            if None in (p, q, r, s) or z.is_origin():
                return False
            return p < z.cx() < q and r < z.cy() < s
        if i in (1, 2):
            k, l = untup(rest, 2)
            if k < 1 or l < 1:
                return False
            if i == 1 and z == ORIGIN:
                return True
            if i == 2 and z.star:
                return True
            if z.is_origin():
                return False
            cy = z.cy()
            if abs(z.cx()) >= Fraction(1, k):
                return False
            if i == 1:
                return 0 < cy < Fraction(1, l)
            return -Fraction(1, l) < cy < 0
        return False

    def coord_atoms(self, n):
        z = self.seq[n]

        def kl(i):
            for k, l in shell(2):
                yield tup(n, i, k, l)

        def boxes():
            xs, ys = [], []
            xi, yi = do_intervals(z.cx()), do_intervals(z.cy())
            for r in itertools.count():
                xs.append(next(xi))
                ys.append(next(yi))
                for a in range(r + 1):
                    for b in (r,) if a < r else range(r + 1):
                        (p, q), (rr, s) = xs[a], ys[b]
                        yield tup(n, 0, rational_code(p), rational_code(q),
                                  rational_code(rr), rational_code(s))
                        if a < r and b == r:
                            (p, q), (rr, s) = xs[r], ys[a]
                            yield tup(n, 0, rational_code(p), rational_code(q),
                                      rational_code(rr), rational_code(s))

        srcs = [filtered(kl(1), self.member), filtered(kl(2), self.member)]
        if not z.is_origin():
            srcs.append(boxes())
        return interleave(*srcs)

    def fmt_value(self, v):
        return str(v)

    @classmethod
    def parse_value(cls, s):
        return DOPt.parse(s)


# ---------------------------------------------------------------------------
# irregular lattice


class IrrLatticePower(PowerPoint):
    """Points (ω × ω̂) ∪ {(∞,∞)}; atoms ⟨0,n,a,b⟩, ⟨1,n,a,b⟩, ⟨2,n,a,b⟩."""

    tag = "irr-lattice"

    def check_value(self, v):
        a, b = v
        ok_b = b == INF or (isinstance(b, int) and b >= 0)
        ok_a = (a == INF and b == INF) or (isinstance(a, int) and a >= 0)
        if not (ok_a and ok_b):
            raise ValueError(f"bad irregular-lattice point {v!r}")

    def member(self, atom):
        i, n, a, b = untup(atom, 4)
        x, y = self.seq[n]
        if i == 0:
            return x == a and y == b
        if i == 1:
            return x == a and b <= y
        if i == 2:
            return (x == INF and y == INF) or (a <= x < INF and b <= y < INF)
        return False

    def coord_atoms(self, n):
        x, y = self.seq[n]

        def gen():
            if x != INF and y != INF:
                yield tup(0, n, x, y)
            if x != INF:
                for b in itertools.count():
                    if y != INF and b > y:
                        break
                    yield tup(1, n, x, b)
            if x == INF:
                for a, b in shell(2):
                    yield tup(2, n, a, b)
            elif y != INF:
                for a in range(x + 1):
                    for b in range(y + 1):
                        yield tup(2, n, a, b)

        return gen()

    def fmt_value(self, v):
        return f"({_fmt_hat(v[0])}, {_fmt_hat(v[1])})"

    @classmethod
    def parse_value(cls, s):
        a, b = split_top(_strip_parens(s))
        return (_parse_hat(a), _parse_hat(b))


# ---------------------------------------------------------------------------
# Arens


def arens_family3(j, k, l, x: ArensLabel, y: Ord) -> bool:
    if j < 1 or y.top:
        return False
    lo = Ord(k, 2 * l, 2 * j - 1)
    hi = Ord(k, 2 * l + 1, 0)
    return ArensLabel("nat", j) <= x <= ArensLabel("zeta", -j) and lo < y <= hi


def arens_family4(j, k, l, x: ArensLabel, y: Ord) -> bool:
    if j < 1 or y.top:
        return False
    lo = Ord(k, 2 * l + 1, 2 * j - 1)
    hi = Ord(k, 2 * l + 2, 0)
    return ArensLabel("zeta", j) <= x <= ArensLabel("bar", j) and lo < y <= hi


class ArensPower(PowerPoint):
    """Points (x, y) with y ∈ I_x; six atom families ⟨i,n,…⟩."""

    tag = "arens"

    def check_value(self, v):
        x, y = v
        if not isinstance(x, ArensLabel) or not isinstance(y, Ord):
            raise ValueError(f"bad Arens pair {v!r}")
        if y.is_zero() or x not in arens_classify(y):
            raise ValueError(f"Arens pair violates y ∈ I_x: ({x}, {y})")

    @staticmethod
    def point_member(x: ArensLabel, y: Ord, i: int, rest: int) -> bool:
        if i in (0, 1):
            j = rest
            side = x.kind == "nat" if i == 0 else x.kind == "bar"
            return side and y > Ord(j, 0, 0)
        if i == 2:
            j, k = untup(rest, 2)
            return x.kind == "zeta" and Ord(j, k, 0) < y <= Ord(j + 1, 0, 0)
        if i == 3:
            return arens_family3(*untup(rest, 3), x, y)
        if i == 4:
            return arens_family4(*untup(rest, 3), x, y)
        if i == 5:
            xc, yc = untup(rest, 2)
            try:
                lab = ArensLabel.decode(xc)
            except ValueError:
                return False
            return x.in_plus() and lab == x and ord_decode(yc) == y
        return False

    def member(self, atom):
        i, n, rest = untup(atom, 3)
        x, y = self.seq[n]
        return self.point_member(x, y, i, rest)

    @staticmethod
    def point_atoms(n: int, x: ArensLabel, y: Ord) -> Iterator[Optional[int]]:
        """Members of coordinate n, in a fair order."""

        def fam5():
            if x.in_plus():
                yield tup(5, n, x.code(), ord_code(y))

        def fam01():
            i = 0 if x.kind == "nat" else 1 if x.kind == "bar" else None
            if i is None:
                return
            for j in itertools.count():
                if not (y > Ord(j, 0, 0)):
                    return
                yield tup(i, n, j)

        def fam2():
            if x.kind != "zeta":
                return
            if y.k == 0 and y.n == 0:
                j = y.j - 1
                for k in itertools.count():
                    yield tup(2, n, j, k)
            else:
                for k in range(y.k):
                    yield tup(2, n, y.j, k)
                if y.n > 0:
                    yield tup(2, n, y.j, y.k)

        def fam34():
            if y.top or (y.k == 0 and y.n == 0):
                return
            k = y.j
            # y ∈ (ω²k+ωu+2j−1, ω²k+ω(u+1)]: u = y.k (n > 0) or y.k − 1 (n = 0)
            u = y.k if y.n > 0 else y.k - 1
            fam, l = (3, u // 2) if u % 2 == 0 else (4, u // 2)
            jmax = (y.n + 1) // 2 if y.n > 0 else None
            for j in itertools.count(1):
                if jmax is not None and 2 * j - 1 >= y.n:
                    return
                yield tup(fam, n, j, k, l)

        return interleave(fam5(), fam01(), fam2(), fam34())

    def coord_atoms(self, n):
        x, y = self.seq[n]
        return self.point_atoms(n, x, y)

    def fmt_value(self, v):
        return f"({v[0]}, {v[1]})"

    @classmethod
    def parse_value(cls, s):
        a, b = split_top(_strip_parens(s))
        return (ArensLabel.parse(a), parse_ord(b))


# ---------------------------------------------------------------------------
# Roy


def roy_ok(x, y) -> bool:
    return is_kb_node(y) and x in roy_classify(y)


class RoyPower(PowerPoint):
    """Points (x, y), x ∈ ω̂, y ∈ I_x; atoms ⟨0,n,k,σ⟩, ⟨1,n,k,σ⌢j⟩, ⟨2,n,k⟩."""

    tag = "roy"

    def check_value(self, v):
        x, y = v
        if not (x == INF or (isinstance(x, int) and x >= 0)):
            raise ValueError(f"bad Roy label {x!r}")
        check_kb(y)
        if x not in roy_classify(y):
            raise ValueError(f"Roy pair violates y ∈ I_x: ({x}, {fmt_kb(y)})")

    @staticmethod
    def point_member(x, y, i: int, rest: int) -> bool:
        if i == 0:
            k, sc = untup(rest, 2)
            return x == 2 * k + 1 and y == string_decode(sc)
        if i == 1:
            k, tc = untup(rest, 2)
            t = string_decode(tc)
            if not t or not is_kb_node(t):
                return False
            s, j = t[:-1], t[-1]
            if not is_kb_node(s) or is_leaf(s):
                return False
            return abs(x - 2 * k) <= 1 and kb_interval_member(y, s, j)
        if i == 2:
            return x > 2 * rest
        return False

    def member(self, atom):
        i, n, rest = untup(atom, 3)
        x, y = self.seq[n]
        return self.point_member(x, tuple(y), i, rest)

    @staticmethod
    def point_atoms(n, x, y) -> Iterator[Optional[int]]:
        y = tuple(y)

        def fam0():
            if x != INF and x % 2 == 1:
                yield tup(0, n, (x - 1) // 2, string_code(y))

        def fam1():
            if x == INF:
                return
            ks = [k for k in (x // 2, (x + 1) // 2) if abs(x - 2 * k) <= 1]
            ks = sorted(set(ks))
            for k in ks:
                for m in range(len(y)):
                    for j in range(y[m]):
                        yield tup(1, n, k, string_code(y[:m] + (j,)))
            if not (y and is_leaf(y)):
                for j in itertools.count():
                    for k in ks:
                        yield tup(1, n, k, string_code(y + (j,)))

        def fam2():
            for k in itertools.count():
                if not x > 2 * k:
                    return
                yield tup(2, n, k)

        return interleave(fam0(), fam1(), fam2())

    def coord_atoms(self, n):
        x, y = self.seq[n]
        return self.point_atoms(n, x, y)

    def fmt_value(self, v):
        return f"({_fmt_hat(v[0])}, {fmt_kb(v[1])})"

    @classmethod
    def parse_value(cls, s):
        a, b = split_top(_strip_parens(s))
        return (_parse_hat(a), parse_kb(b))


# ---------------------------------------------------------------------------
# cofinite power, cocylinder, Golomb


class CofinitePower(PowerPoint):
    """(ω_cof)^ω; atoms ⟨n,D⟩ with x(n) ∉ D."""

    tag = "cofinite"

    def check_value(self, v):
        if not (isinstance(v, int) and v >= 0):
            raise ValueError(f"bad natural {v!r}")

    def member(self, atom):
        n, e = unpair(atom)
        return not (e >> self.seq[n]) & 1

    def coord_atoms(self, n):
        x = self.seq[n]
        return (pair(n, e) if not (e >> x) & 1 else None for e in itertools.count())

    @classmethod
    def parse_value(cls, s):
        return int(s)


def is_prefix(s, t) -> bool:
    return len(s) <= len(t) and tuple(t[:len(s)]) == tuple(s)


class CocylinderPoint(PowerPoint):
    """(ω^ω)_co; atoms are string codes σ with σ not a prefix of x."""

    tag = "cocylinder"

    def check_value(self, v):
        if not (isinstance(v, int) and v >= 0):
            raise ValueError(f"bad natural {v!r}")

    def member(self, atom):
        s = string_decode(atom)
        return tuple(self.seq.prefix(len(s))) != s

    def nbase(self):
        return oracle_stream(self.member, scan=8)

    @classmethod
    def parse_value(cls, s):
        return int(s)


def golomb_member(x: int, a: int, b: int) -> bool:
    return 0 < a <= b and gcd(a, b) == 1 and x % b == a % b


class Golomb(Point):
    """Golomb space on the positive integers; atoms ⟨a,b⟩ with x ≡ a mod b."""

    tag = "golomb"

    def __init__(self, value: int):
        if not (isinstance(value, int) and value >= 1):
            raise ValueError("Golomb points are positive integers")
        self.value = value

    def member(self, atom):
        return golomb_member(self.value, *unpair(atom))

    def nbase(self):
        return oracle_stream(self.member, scan=8)

    def to_text(self):
        return f"space: {self.tag}\nvalue = {self.value}\n"


class GolombPower(PowerPoint):
    tag = "golomb-power"

    def check_value(self, v):
        if not (isinstance(v, int) and v >= 1):
            raise ValueError("Golomb points are positive integers")

    def member(self, atom):
        n, a, b = untup(atom, 3)
        return golomb_member(self.seq[n], a, b)

    def coord_atoms(self, n):
        x = self.seq[n]
        return (tup(n, a, b) if golomb_member(x, a, b) else None
                for a, b in (unpair(r) for r in itertools.count()))

    @classmethod
    def parse_value(cls, s):
        return int(s)


# ---------------------------------------------------------------------------
# maximal antichain space


class AmaxPoint(Point):
    """Complement X of a maximal antichain; atoms are finite-set codes D
    (of string codes) with D ⊆ X.

    scheme ("len", n): the antichain of all strings of length n.
    scheme ("sigma", σ, ℓ): {σ} ∪ {τ of length ℓ : σ ⋠ τ}, ℓ > |σ|.
    """

    tag = "amax"

    def __init__(self, scheme):
        scheme = tuple(scheme)
        if scheme[0] == "len":
            if scheme[1] < 0:
                raise ValueError("negative length")
        elif scheme[0] == "sigma":
            s, l = tuple(scheme[1]), scheme[2]
            if l <= len(s):
                raise ValueError("ℓ must exceed |σ|")
            scheme = ("sigma", s, l)
        else:
            raise ValueError(f"unknown antichain scheme {scheme[0]!r}")
        self.scheme = scheme

    def in_antichain(self, s) -> bool:
        s = tuple(s)
        if self.scheme[0] == "len":
            return len(s) == self.scheme[1]
        sig, l = self.scheme[1], self.scheme[2]
        return s == sig or (len(s) == l and not is_prefix(sig, s))

    def in_X(self, code: int) -> bool:
        return not self.in_antichain(string_decode(code))

    def member(self, atom):
        return all(self.in_X(c) for c in finset_decode(atom))

    def nbase(self):
        return oracle_stream(self.member, scan=8)

    def to_text(self):
        if self.scheme[0] == "len":
            return f"space: {self.tag}\nantichain = length {self.scheme[1]}\n"
        return f"space: {self.tag}\nantichain = sigma {fmt_kb(self.scheme[1])} {self.scheme[2]}\n"


# ---------------------------------------------------------------------------
# spec file format

POWER_SPACES = {c.tag: c for c in (Hilbert, OmegaHatPower, TelophasePower, DoubleOriginPower,
                                   IrrLatticePower, ArensPower, RoyPower, CofinitePower,
                                   CocylinderPoint, GolombPower)}
SPACE_TAGS = sorted(list(POWER_SPACES) + ["lower-real", "golomb", "amax"])


class SpecError(ValueError):
    pass


def parse_point(text: str) -> Point:
    """Parse the line-oriented point format; errors carry line numbers."""
    tag = None
    coords: dict[int, str] = {}
    default = None
    single: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("space"):
                key, _, val = line.partition(":") if ":" in line else line.partition("=")
                if key.strip() != "space":
                    raise SpecError("expected 'space: <tag>'")
                tag = val.strip().strip('"')
                if tag not in SPACE_TAGS:
                    raise SpecError(f"unknown space {tag!r}")
            elif line.startswith("coord"):
                head, _, val = line.partition("=")
                parts = head.split()
                if len(parts) != 2 or not parts[1].isdigit():
                    raise SpecError("expected 'coord <n> = <value>'")
                coords[int(parts[1])] = (lineno, val.strip())
            elif line.startswith("default"):
                _, _, val = line.partition("=")
                val = val.strip()
                if not (val.startswith("periodic(") and val.endswith(")")):
                    raise SpecError("expected 'default = periodic(v1,...,vk)'")
                default = (lineno, split_top(val[len("periodic("):-1]))
            else:
                key, sep, val = line.partition("=")
                if not sep:
                    key, sep, val = line.partition(":")
                if not sep:
                    raise SpecError(f"cannot parse {line!r}")
                single[key.strip()] = (lineno, val.strip())
        except SpecError as e:
            raise SpecError(f"line {lineno}: {e}") from None
    if tag is None:
        raise SpecError("missing 'space:' line")
    if tag in POWER_SPACES:
        cls = POWER_SPACES[tag]
        if default is None:
            raise SpecError("missing 'default = periodic(...)' line")
        lineno, vals = default
        try:
            dvals = [cls.parse_value(v) for v in vals]
        except (ValueError, TypeError) as e:
            raise SpecError(f"line {lineno}: {e}") from None
        over = {}
        for n, (lineno, v) in coords.items():
            try:
                over[n] = cls.parse_value(v)
            except (ValueError, TypeError) as e:
                raise SpecError(f"line {lineno}: {e}") from None
        try:
            return cls(Periodic(dvals, over))
        except ValueError as e:
            raise SpecError(str(e)) from None
    try:
        if tag == "lower-real":
            if "value" in single:
                return LowerReal(Fraction(single["value"][1]))
            if "dyadic" in single:
                return LowerReal(SetSpec.parse(single["dyadic"][1]))
            raise SpecError("lower-real needs 'value = a/b' or 'dyadic = bits(period)'")
        if tag == "golomb":
            if "value" not in single:
                raise SpecError("golomb needs 'value = <positive integer>'")
            return Golomb(int(single["value"][1]))
        if tag == "amax":
            if "antichain" not in single:
                raise SpecError("amax needs 'antichain = length n' or 'antichain = sigma [..] l'")
            lineno, val = single["antichain"]
            parts = val.split()
            if parts[0] == "length" and len(parts) == 2:
                return AmaxPoint(("len", int(parts[1])))
            if parts[0] == "sigma" and len(parts) == 3:
                return AmaxPoint(("sigma", string_decode(0) + tuple(
                    int(x) for x in parts[1].strip("[]").split(",") if x.strip()), int(parts[2])))
            raise SpecError(f"line {lineno}: bad antichain scheme {val!r}")
    except ValueError as e:
        if isinstance(e, SpecError):
            raise
        raise SpecError(str(e)) from None
    raise SpecError(f"unsupported space {tag!r}")


def nbase(p: Point) -> NameStream:
    return p.nbase()


def nbase_member(p: Point, atom: int) -> bool:
    if atom < 0:
        return False
    try:
        return bool(p.member(atom))
    except (ValueError, IndexError):
        return False


# ---------------------------------------------------------------------------
# random specs for tests and the CLI


def _rand_hat(rng, star=False, top=8):
    r = rng.random()
    if r < 0.2:
        return INF
    if star and r < 0.4:
        return INF_STAR
    return rng.randrange(top)


def _rand_seq(rng, gen, max_over=4, max_period=3) -> Periodic:
    default = [gen() for _ in range(rng.randint(1, max_period))]
    over = {rng.randrange(8): gen() for _ in range(rng.randint(0, max_over))}
    return Periodic(default, over)


def random_do_point(rng) -> DOPt:
    r = rng.random()
    if r < 0.15:
        return ORIGIN
    if r < 0.3:
        return ORIGIN_STAR
    a = INF if rng.random() < 0.25 else rng.randrange(6)
    if a == INF:
        bk = rng.choice(["w", "bar"])
    else:
        bk = rng.choice(["w", "*", "bar"])
    return DOPt(a, bk, rng.randrange(6) if bk != "*" else 0)


def random_arens_pair(rng, bound=4):
    if rng.random() < 0.15:
        return (rng.choice([ArensLabel("nat", 0), ArensLabel("bar", 0)]), TOP)
    while True:
        y = Ord(rng.randrange(bound), rng.randrange(bound), rng.randrange(bound))
        if not y.is_zero():
            break
    (x,) = arens_classify(y)
    return (x, y)


def random_kb(rng, bound=4):
    if rng.random() < 0.1:
        return ()
    a = rng.randrange(1, bound)
    length = rng.randint(1, a + 1)
    return (a,) + tuple(rng.randrange(bound) for _ in range(length - 1))


def random_roy_pair(rng, bound=4, allow_min_leaf=False):
    while True:
        y = random_kb(rng, bound)
        labels = roy_classify(y)
        x = rng.choice(sorted(labels, key=lambda v: (v == INF, v)))
        if y == (0,) and not allow_min_leaf:
            continue
        return (x, y)


def random_point(tag: str, rng: random.Random) -> Point:
    if tag == "lower-real":
        return LowerReal(Fraction(rng.randrange(-20, 20), rng.randrange(1, 12)))
    if tag == "hilbert":
        return Hilbert(_rand_seq(rng, lambda: Fraction(rng.randrange(0, 9), 8)))
    if tag == "omega-hat":
        return OmegaHatPower(_rand_seq(rng, lambda: _rand_hat(rng)))
    if tag == "telophase":
        return TelophasePower(_rand_seq(rng, lambda: _rand_hat(rng, star=True)))
    if tag == "double-origin":
        return DoubleOriginPower(_rand_seq(rng, lambda: random_do_point(rng)))
    if tag == "irr-lattice":
        def g():
            if rng.random() < 0.2:
                return (INF, INF)
            return (rng.randrange(6), _rand_hat(rng, top=6))
        return IrrLatticePower(_rand_seq(rng, g))
    if tag == "arens":
        return ArensPower(_rand_seq(rng, lambda: random_arens_pair(rng)))
    if tag == "roy":
        return RoyPower(_rand_seq(rng, lambda: random_roy_pair(rng)))
    if tag == "cofinite":
        return CofinitePower(_rand_seq(rng, lambda: rng.randrange(6)))
    if tag == "cocylinder":
        return CocylinderPoint(_rand_seq(rng, lambda: rng.randrange(3)))
    if tag == "golomb":
        return Golomb(rng.randrange(1, 40))
    if tag == "golomb-power":
        return GolombPower(_rand_seq(rng, lambda: rng.randrange(1, 20)))
    if tag == "amax":
        if rng.random() < 0.5:
            return AmaxPoint(("len", rng.randrange(0, 3)))
        s = tuple(rng.randrange(2) for _ in range(rng.randrange(0, 2)))
        return AmaxPoint(("sigma", s, len(s) + rng.randint(1, 2)))
    raise ValueError(f"unknown space {tag!r}")
