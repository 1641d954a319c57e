"""Quasi-Polish name surjections, the Golomb and antichain embeddings, and
cototality operators for G_δ presentations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Iterator, Optional

import sympy

from .enumop import EnumOperator, NameStream, Reactor, finset_code, finset_decode, string_code, string_decode
from .ordinals import INF, TOP, ArensLabel, L0, L0BAR, L0Z, LINF, LINFBAR, Ord, arens_classify
from .reductions import Knowledge, KnowledgeOperator
from .spaces import INF_STAR, ORIGIN, ORIGIN_STAR, AmaxPoint, DOPt, interleave, is_prefix


class _Marker:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


UNDETERMINED = _Marker("UNDETERMINED")
DOMAIN_ERROR = _Marker("DOMAIN_ERROR")


# ---------------------------------------------------------------------------
# surjection tables
#
# Every word in the domain of these surjections is a finite head followed by
# 0^ω, or a head after which the value is already fixed (the τ shapes).  A
# finite word is evaluated by reading it left to right; a shape is pinned
# once the value cannot depend on the rest of the word.


class _Reader:
    def __init__(self, w):
        self.w = list(w)
        self.i = 0

    def more(self) -> bool:
        return self.i < len(self.w)

    def take(self):
        v = self.w[self.i]
        self.i += 1
        return v

    def zeros(self) -> int:
        z = 0
        while self.i < len(self.w) and self.w[self.i] == 0:
            self.i += 1
            z += 1
        return z

    def rest_zero(self) -> bool:
        return all(v == 0 for v in self.w[self.i:])


class _Incomplete(Exception):
    pass


class _Bad(Exception):
    pass


def _need(r: _Reader):
    if not r.more():
        raise _Incomplete
    return r.take()


def _telophase_eval(r: _Reader):
    j = _need(r)
    if j not in (0, 1):
        raise _Bad
    n = r.zeros()
    if not r.more():
        raise _Incomplete
    if r.take() != 1 or not r.rest_zero():
        raise _Bad
    return n


def _do_eval(r: _Reader):
    h = _need(r)
    if h == 0:
        n = _need(r)
        m = r.zeros()
        if not r.more():
            raise _Incomplete
        c = r.take()
        if c not in (1, 2) or not r.rest_zero():
            raise _Bad
        return DOPt(n, "w" if c == 1 else "bar", m)
    if h not in (1, 2):
        raise _Bad
    s = r.zeros()
    if not r.more():
        raise _Incomplete
    if r.take() != 1:
        raise _Bad
    m = _need(r)
    n = r.zeros()
    if not r.more():
        raise _Incomplete
    if r.take() != 1 or not r.rest_zero():
        raise _Bad
    return DOPt(n + s, "w" if h == 1 else "bar", m + s)


def _arens_eval(r: _Reader):
    h = _need(r)
    if h in (0, 1):
        if h == 0:
            z = r.zeros()
            if not r.more():
                raise _Incomplete
            j = z
        else:
            j = r.zeros()
            if not r.more():
                raise _Incomplete
        if r.take() != 1:
            raise _Bad
        k = _need(r)
        l = _need(r)
        if h == 0:
            return (ArensLabel("nat", l + 1), Ord(j, 2 * k, 2 * l + 1))
        return (ArensLabel("bar", l + 1), Ord(j, 2 * k + 1, 2 * l + 1))
    if h == 2:
        k = _need(r)
        z = r.zeros()
        if not r.more():
            raise _Incomplete
        if r.take() != 1:
            raise _Bad
        l = _need(r)
        j, odd = divmod(z, 2)
        if odd:
            return (ArensLabel("zeta", l + 1), Ord(k, 2 * j + 1, 2 * l + 2))
        return (ArensLabel("zeta", -l - 1), Ord(k, 2 * j, 2 * l + 2))
    if h in (3, 4):
        k = _need(r)
        l = _need(r)
        z = r.zeros()
        if not r.more():
            raise _Incomplete
        if r.take() != 1:
            raise _Bad
        j, odd = divmod(z, 2)
        if h == 3:
            if odd:
                return (ArensLabel("zeta", -j - 1), Ord(k, 2 * l, 2 * j + 2))
            return (ArensLabel("nat", j + 1), Ord(k, 2 * l, 2 * j + 1))
        if odd:
            return (ArensLabel("zeta", j + 1), Ord(k, 2 * l + 1, 2 * j + 2))
        return (ArensLabel("bar", j + 1), Ord(k, 2 * l + 1, 2 * j + 1))
    raise _Bad


def _irr_eval(r: _Reader):
    h = _need(r)
    if h == 0:
        j = r.zeros()
        if not r.more():
            raise _Incomplete
        a = r.take()
        b = _need(r)
        return (j + a, j + b)
    if h == 1:
        n = _need(r)
        j = r.zeros()
        if not r.more():
            raise _Incomplete
        if r.take() != 1:
            raise _Bad
        return (n, j)
    raise _Bad


def _limit_value(tag: str, head: tuple):
    """Value of head⌢0^ω for the shapes that are only pinned in the limit."""
    if tag == "telophase":
        if head == (0,):
            return INF
        if head == (1,):
            return INF_STAR
    elif tag == "doubleorigin":
        if len(head) == 2 and head[0] == 0:
            return DOPt(head[1], "*", 0)
        if head == (1,):
            return ORIGIN_STAR
        if head == (2,):
            return ORIGIN
        if len(head) >= 3 and head[0] in (1, 2) and head[-2] == 1:
            s = len(head) - 3
            if all(v == 0 for v in head[1:-2]):
                return DOPt(INF, "w" if head[0] == 1 else "bar", head[-1] + s)
    elif tag == "arens":
        if head == (0,):
            return (L0, TOP)
        if head == (1,):
            return (L0BAR, TOP)
        if len(head) == 2 and head[0] == 2:
            return (L0Z, Ord(head[1] + 1, 0, 0))
        if len(head) == 3 and head[0] == 3:
            return (LINF, Ord(head[1], 2 * head[2] + 1, 0))
        if len(head) == 3 and head[0] == 4:
            return (LINFBAR, Ord(head[1], 2 * head[2] + 2, 0))
    elif tag == "irrlattice":
        if head == (0,):
            return (INF, INF)
        if len(head) == 2 and head[0] == 1:
            return (head[1], INF)
    raise ValueError(f"{head} is not a limit shape of the {tag} table")


_EVAL = {"telophase": _telophase_eval, "doubleorigin": _do_eval,
         "arens": _arens_eval, "irrlattice": _irr_eval}


@dataclass(frozen=True)
class Shape:
    """A domain word head⌢0^ω (``limit``) or head⌢τ (value fixed by head)."""

    head: tuple
    value: object
    limit: bool

    def word(self, length: int) -> tuple:
        return tuple(self.head) + (0,) * max(0, length - len(self.head))

    def in_cylinder(self, sigma) -> bool:
        sigma = tuple(sigma)
        return self.word(len(sigma))[:len(sigma)] == sigma


class SurjectionTable:
    def __init__(self, tag: str):
        if tag not in _EVAL:
            raise ValueError(f"no surjection table for {tag!r}; choose from {sorted(_EVAL)}")
        self.tag = tag

    def eval(self, w: Iterable[int], budget: Optional[int] = None):
        """Point pinned by the finite word w, UNDETERMINED, or DOMAIN_ERROR."""
        w = list(w)
        if budget is not None:
            w = w[:budget]
        if any(not isinstance(v, int) or v < 0 for v in w):
            return DOMAIN_ERROR
        try:
            return _EVAL[self.tag](_Reader(w))
        except _Incomplete:
            return UNDETERMINED
        except _Bad:
            return DOMAIN_ERROR

    def shapes(self, bound: int) -> Iterator[Shape]:
        """All table shapes whose parameters are below ``bound``."""
        B = range(bound)
        t = self.tag
        if t == "telophase":
            yield Shape((0,), INF, True)
            yield Shape((1,), INF_STAR, True)
            for j, n in itertools.product((0, 1), B):
                yield Shape((j,) + (0,) * n + (1,), n, False)
        elif t == "doubleorigin":
            yield Shape((1,), ORIGIN_STAR, True)
            yield Shape((2,), ORIGIN, True)
            for n in B:
                yield Shape((0, n), DOPt(n, "*", 0), True)
                for m in B:
                    yield Shape((0, n) + (0,) * m + (1,), DOPt(n, "w", m), False)
                    yield Shape((0, n) + (0,) * m + (2,), DOPt(n, "bar", m), False)
            for h, s, m in itertools.product((1, 2), B, B):
                kind = "w" if h == 1 else "bar"
                base = (h,) + (0,) * s + (1, m)
                yield Shape(base, DOPt(INF, kind, m + s), True)
                for n in B:
                    yield Shape(base + (0,) * n + (1,), DOPt(n + s, kind, m + s), False)
        elif t == "arens":
            yield Shape((0,), (L0, TOP), True)
            yield Shape((1,), (L0BAR, TOP), True)
            for j, k, l in itertools.product(B, B, B):
                for head in ((0,) + (0,) * j + (1, k, l), (1,) + (0,) * j + (1, k, l)):
                    yield Shape(head, self.eval(head), False)
            for k in B:
                yield Shape((2, k), _limit_value("arens", (2, k)), True)
                for z, l in itertools.product(range(2 * bound), B):
                    head = (2, k) + (0,) * z + (1, l)
                    yield Shape(head, self.eval(head), False)
            for h, k, l in itertools.product((3, 4), B, B):
                yield Shape((h, k, l), _limit_value("arens", (h, k, l)), True)
                for z in range(2 * bound):
                    head = (h, k, l) + (0,) * z + (1,)
                    yield Shape(head, self.eval(head), False)
        else:
            yield Shape((0,), (INF, INF), True)
            for j, a, b in itertools.product(B, range(1, bound), B):
                head = (0,) + (0,) * j + (a, b)
                yield Shape(head, (j + a, j + b), False)
            for n in B:
                yield Shape((1, n), (n, INF), True)
                for j in B:
                    yield Shape((1, n) + (0,) * j + (1,), (n, j), False)


def qp_surjection_eval(tag: str, w, budget: Optional[int] = None):
    return SurjectionTable(tag).eval(w, budget)


# ---------------------------------------------------------------------------
# preimage displays

def _cyl(*sigmas):
    return lambda sh: any(sh.in_cylinder(s) for s in sigmas)


def _telophase_displays(n: int):
    """(name, open set as a value predicate, corrected preimage, literal preimage)."""
    z = (0,) * n
    yield ("{n}", lambda v: v == n,
           _cyl((0,) + z + (1,), (1,) + z + (1,)), _cyl((0,) + z + (1,), (1,) + z + (1,)))
    yield ("[n,inf]", lambda v: v == INF or (isinstance(v, int) and v >= n),
           lambda sh: sh.in_cylinder((0,) + z) or (sh.head[0] == 1 and not sh.limit and len(sh.head) - 2 >= n),
           _cyl((0,) + z))
    yield ("[n,inf*]", lambda v: v == INF_STAR or (isinstance(v, int) and v >= n),
           lambda sh: sh.in_cylinder((1,) + z) or (sh.head[0] == 0 and not sh.limit and len(sh.head) - 2 >= n),
           _cyl((1,) + z))


class _ShapeIndex:
    """Shapes indexed by word prefix and by value, so that displayed unions
    of cylinders and of fibres become set unions."""

    def __init__(self, shapes: list, length: int):
        self.shapes = shapes
        self.pref: dict[tuple, set] = {}
        self.val: dict[tuple, set] = {}
        for i, sh in enumerate(shapes):
            w = sh.word(length)
            for k in range(len(w) + 1):
                self.pref.setdefault(w[:k], set()).add(i)
            self.val.setdefault(self.key(sh.value), set()).add(i)
        self.avals = sorted({v.a for v in (sh.value for sh in shapes)
                             if not v.star and v.a != INF})

    @staticmethod
    def key(v: DOPt):
        return ("star",) if v.star else (v.a, v.bk, v.bj)

    def cyl(self, *sigmas) -> set:
        out: set = set()
        for s in sigmas:
            out |= self.pref.get(tuple(s), set())
        return out

    def at(self, a, kind, j) -> set:
        return self.val.get((a, kind, j), set())


def _do_display_sets(ix: _ShapeIndex, n: int, m: int, top: int):
    """(name, true preimage, corrected display, literal display) as shape-id sets."""
    finite_a = ix.avals
    js = range(top)

    def bar_cyl(s, tail_one):
        return (2,) + (0,) * s + (1, m - s) + (0,) * max(n - s, 0) + ((1,) if tail_one else ())

    # {(n, m̄)}
    want = ix.at(n, "bar", m)
    head = (0, n) + (0,) * m + (2,)
    lit = ix.cyl(head, *[bar_cyl(s, False) for s in range(m + 1)])
    cor = ix.cyl(head, *[bar_cyl(s, True) for s in range(min(m, n) + 1)])
    yield "{(n,m-bar)}", want, cor, lit

    # [n,∞] × {m}
    want = set().union(*[ix.at(a, "w", m) for a in finite_a if a >= n], ix.at(INF, "w", m))
    disp = ix.cyl(*[(1,) + (0,) * s + (1, m - s) + (0,) * max(n - s, 0) for s in range(m + 1)])
    disp |= set().union(*[ix.at(k, "w", m) for k in finite_a if k >= n])
    yield "[n,inf]x{m}", want, disp, disp

    # {n} × [m, m̄]
    row = [ix.at(n, "w", j) for j in js] + [ix.at(n, "*", 0)] + [ix.at(n, "bar", j) for j in js]
    want = set().union(*[ix.at(n, "w", j) for j in js if j >= m], ix.at(n, "*", 0),
                       *[ix.at(n, "bar", j) for j in js if j >= m])
    base = ix.cyl((0, n) + (0,) * m)
    yield "{n}x[m,m-bar]", want, base | want, base | set().union(*row)

    # ([n,∞] × (*, n̄]) ∪ {𝟎}
    bars = set().union(*[ix.at(a, "bar", j) for a in finite_a + [INF] if a >= n
                         for j in js if j >= n])
    want = bars | ix.at(INF, "*", 0)
    disp = ix.cyl((2,) + (0,) * n) | bars
    yield "([n,inf]x(*,n-bar])+{0}", want, disp, disp


def _do_universe(bound: int) -> list:
    """Double origin shapes whose point coordinates are below ``bound``."""
    out = [Shape((1,), ORIGIN_STAR, True), Shape((2,), ORIGIN, True)]
    for n in range(bound):
        out.append(Shape((0, n), DOPt(n, "*", 0), True))
        for m in range(bound):
            out.append(Shape((0, n) + (0,) * m + (1,), DOPt(n, "w", m), False))
            out.append(Shape((0, n) + (0,) * m + (2,), DOPt(n, "bar", m), False))
    for h, s in itertools.product((1, 2), range(bound)):
        kind = "w" if h == 1 else "bar"
        for m in range(bound - s):
            base = (h,) + (0,) * s + (1, m)
            out.append(Shape(base, DOPt(INF, kind, m + s), True))
            for n in range(bound - s):
                out.append(Shape(base + (0,) * n + (1,), DOPt(n + s, kind, m + s), False))
    return out


@dataclass
class PreimageReport:
    tag: str
    bound: int
    checked: int
    failures: list
    literal_mismatches: dict

    @property
    def ok(self) -> bool:
        return not self.failures


def qp_preimage_check(tag: str, bound: int = 20) -> PreimageReport:
    """For every displayed open set with parameters < bound, compare the
    true preimage with the displayed one over all shapes with parameters
    < bound.  ``failures`` uses the corrected displays; the literal ones are
    tallied in ``literal_mismatches``."""
    failures, mism = [], {}
    checked = 0
    if tag == "telophase":
        shapes = list(SurjectionTable(tag).shapes(bound))
        for n in range(bound):
            for name, U, cor, lit in _telophase_displays(n):
                for sh in shapes:
                    checked += 1
                    want = U(sh.value)
                    if cor(sh) != want:
                        failures.append((name, n, sh.head))
                    if lit(sh) != want:
                        mism[name] = mism.get(name, 0) + 1
    elif tag == "doubleorigin":
        top = bound + 2
        ix = _ShapeIndex(_do_universe(top), 3 * top + 4)
        for n, m in itertools.product(range(bound), range(bound)):
            for name, want, cor, lit in _do_display_sets(ix, n, m, top):
                checked += len(ix.shapes)
                for i in want ^ cor:
                    failures.append((name, (n, m), ix.shapes[i].head))
                if want != lit:
                    mism[name] = mism.get(name, 0) + len(want ^ lit)
    else:
        raise ValueError(f"no preimage displays for {tag!r}; use check_table for derived checks")
    return PreimageReport(tag, bound, checked, failures, mism)


def check_table(tag: str, bound: int = 6) -> list:
    """Derived checks: every shape evaluates consistently on its prefixes and
    lands on a valid point.  Returns a list of problems."""
    table = SurjectionTable(tag)
    bad = []
    for sh in table.shapes(bound):
        w = sh.word(len(sh.head) + 3)
        prev = UNDETERMINED
        for i in range(len(w) + 1):
            v = table.eval(w[:i])
            if v is DOMAIN_ERROR or (prev is not UNDETERMINED and v != prev):
                bad.append(("prefix", sh.head, i, v))
                break
            prev = v
        final = prev
        if sh.limit and final is not UNDETERMINED:
            bad.append(("limit pinned", sh.head, final))
        if not sh.limit and final != sh.value:
            bad.append(("value", sh.head, final, sh.value))
        if tag == "arens":
            x, y = sh.value
            if x not in arens_classify(y):
                bad.append(("arens label", sh.head, sh.value))
        if tag == "irrlattice":
            x, y = sh.value
            if x == INF and y != INF:
                bad.append(("lattice", sh.head, sh.value))
    return bad


# ---------------------------------------------------------------------------
# Golomb embedding of the dyadic rationals
#
# p_{n(s)} is the least prime above 1 + Σ_{i<s} r_i and r_s the product of
# all primes up to p_{n(s)}.  r_0 = 2, r_1 = 30, r_2 = 7420738134810 (twelve
# primes), so p_{n(3)} ≈ 7.4·10¹² is still exact but r_3 is a primorial with
# about 3·10¹² digits: anything that needs r_s or p_{n(s+1)} for s ≥ 3
# raises GolombInfeasible rather than running forever.

PRIMORIAL_LIMIT = 10 ** 6


class GolombInfeasible(ArithmeticError):
    pass


class GolombEmbedding:
    def __init__(self):
        self._P: list[int] = []
        self._r: list[int] = []

    def bound(self, s: int) -> int:
        """1 + Σ_{i<s} r_i."""
        return 1 + sum(self.r(i) for i in range(s))

    def P(self, s: int) -> int:
        """The prime p_{n(s)}."""
        while len(self._P) <= s:
            k = len(self._P)
            self._P.append(sympy.nextprime(self.bound(k)))
        return self._P[s]

    def n(self, s: int) -> int:
        """The index n(s); only for primes small enough to count."""
        p = self.P(s)
        if p > 10 ** 9:
            raise GolombInfeasible(f"index of the prime {p} is not computed (n({s}))")
        return int(sympy.primepi(p)) - 1

    def r(self, s: int) -> int:
        while len(self._r) <= s:
            k = len(self._r)
            p = self.P(k)
            if p > PRIMORIAL_LIMIT:
                raise GolombInfeasible(f"r_{k} is the product of all primes up to {p}")
            self._r.append(int(sympy.primorial(p, nth=False)))
        return self._r[s]

    def inequality(self, s: int) -> bool:
        """1 + Σ_{i<s} r_i < p_{n(s)}, with p_{n(s)} minimal and increasing."""
        b, p = self.bound(s), self.P(s)
        ok = b < p and sympy.prevprime(p) <= b if p > 2 else b < p
        return ok and (s == 0 or self.P(s - 1) < p)

    def embed(self, bits) -> int:
        return 1 + sum(self.r(i) for i, b in enumerate(bits) if b)

    def residue(self, bits, v: int) -> int:
        """h(b) mod v using only the terms that v does not divide."""
        bits = list(bits)
        total = 1
        fac = None
        for i, b in enumerate(bits):
            if not b:
                continue
            try:
                total += self.r(i)
            except GolombInfeasible:
                # r_i is squarefree and divisible by every prime below p_{n(3)}
                fac = fac or sympy.factorint(v)
                if any(e > 1 for e in fac.values()) or max(fac, default=1) >= self.P(3):
                    raise
        return total % v

    def decode(self, oracle: Callable[[int, int], bool], length: int) -> list[int]:
        """Recover b_0 … b_{length-1} from an oracle for "x ≡ a mod v"."""
        bits: list[int] = []
        for s in range(length):
            p = self.P(s + 1)
            h = 1 + sum(self.r(i) for i in range(s) if bits[i])
            zero, one = h % p, (h + self.r(s)) % p
            if gcd(zero, p) != 1 or gcd(one, p) != 1:
                raise AssertionError("congruence query would not be coprime")
            if oracle(zero, p):
                bits.append(0)
            elif oracle(one, p):
                bits.append(1)
            else:
                raise ValueError(f"oracle answers neither residue at bit {s}; not an h-image")
        return bits


_GOLOMB = GolombEmbedding()


def golomb_embed(bits) -> int:
    return _GOLOMB.embed(list(bits))


def golomb_oracle(x: int) -> Callable[[int, int], bool]:
    """Congruence oracle of the Golomb point x."""
    return lambda a, v: x % v == a % v


def golomb_image_oracle(bits) -> Callable[[int, int], bool]:
    """Congruence oracle of h(b) evaluated symbolically (h(b) itself may be
    too large to write down)."""
    bits = list(bits)
    return lambda a, v: _GOLOMB.residue(bits, v) == a % v


def golomb_decode(oracle: Callable[[int, int], bool], length: int) -> list[int]:
    return _GOLOMB.decode(oracle, length)


# ---------------------------------------------------------------------------
# maximal antichains


def antichain_embed(n: int) -> AmaxPoint:
    """ω_cof → A_max^co: n ↦ the complement of all strings of length n."""
    return AmaxPoint(("len", n))


def _comparable(s, t) -> bool:
    return is_prefix(s, t) or is_prefix(t, s)


class _AmaxKnowledge(Knowledge):
    def __init__(self):
        self.anti: set[tuple] = set()
        self.below: set[tuple] = set()   # proper prefixes of antichain strings

    def learn(self, atom):
        d = finset_decode(atom)
        if len(d) == 1:
            (c,) = d
            t = string_decode(c)
            self.anti.add(t)
            self.below.update(t[:i] for i in range(len(t)))

    def covered(self, s: tuple) -> bool:
        """Some τ ≠ s comparable with s has been seen."""
        return s in self.below or any(s[:i] in self.anti for i in range(len(s)))

    def holds(self, atom):
        return all(self.covered(string_decode(c)) for c in finset_decode(atom))


def amax_cototal_operator() -> KnowledgeOperator:
    """c̄Nbase(X) → Nbase(X): σ ∈ X once some τ ≠ σ comparable with σ is
    seen in the antichain (as a singleton atom of the complement)."""
    return KnowledgeOperator(_AmaxKnowledge, name="amax-cototal")


class _WReactor(Reactor):
    def __init__(self, W: Iterable[tuple[int, Iterable[int]]]):
        super().__init__()
        self.W = W
        self.pending: list[tuple[int, frozenset]] = []

    def start(self):
        for e, d in self.W:
            d = frozenset(d)
            if d <= self.seen:
                yield e
            else:
                self.pending.append((e, d))
                yield None

    def feed(self, atom):
        out, keep = [], []
        for e, d in self.pending:
            (out if d <= self.seen else keep).append((e, d))
        self.pending = keep
        return [e for e, _ in out]


class GdeltaOperator(EnumOperator):
    """e ∈ output iff some ⟨e, D⟩ ∈ W has D ⊆ input.  ``W`` is a factory
    returning a fresh (possibly infinite) iterable of pairs."""

    def __init__(self, W: Callable[[], Iterable[tuple[int, Iterable[int]]]]):
        self.W = W

    def reactor(self):
        return _WReactor(self.W())


def gdelta_cototal_operator(W) -> GdeltaOperator:
    if callable(W):
        return GdeltaOperator(W)
    table = [(e, frozenset(d)) for e, d in W]
    return GdeltaOperator(lambda: iter(table))


def amax_W(limit: Optional[int] = None) -> Iterator[tuple[int, frozenset]]:
    """The A_max^co presentation: ⟨D, {{τ_σ} : σ ∈ D}⟩ for every choice of
    τ_σ ≠ σ comparable with σ, enumerated by growing code bound."""
    done = set()
    for r in itertools.count(1):
        if limit is not None and r > limit:
            return
        strings = [string_decode(c) for c in range(r)]
        for dc in range(r):
            d = sorted(finset_decode(dc))
            choices = [[string_code(t) for t in strings if t != string_decode(c)
                        and _comparable(string_decode(c), t)] for c in d]
            for pick in itertools.product(*choices):
                key = (dc, pick)
                if key in done:
                    continue
                done.add(key)
                yield dc, frozenset(finset_code([t]) for t in pick)


def amax_complement_name(p: AmaxPoint) -> NameStream:
    """A name of c̄Nbase(X): singleton atoms {τ} (τ in the antichain) are
    interleaved by string code with a code-order scan of the rest, since
    2^code(τ) is far out of reach of a plain scan."""
    def singles():
        for c in itertools.count():
            yield finset_code([c]) if p.in_antichain(string_decode(c)) else None

    def rest():
        for a in itertools.count():
            yield None if p.member(a) else a

    return NameStream(interleave(singles(), rest()), oracle=lambda a: not p.member(a))


@dataclass
class AmaxReport:
    scheme: tuple
    bound: int
    emitted: int
    unsound: list
    missing: list

    @property
    def ok(self) -> bool:
        return not self.unsound and not self.missing


def amax_check(p: AmaxPoint, bound: int = 64, pulls: int = 4000, budget: int = 32) -> AmaxReport:
    """Run the cototality operator on a complement name of p and compare
    the output against Nbase(p) for atom codes below ``bound``."""
    got = amax_cototal_operator().stream(amax_complement_name(p), budget).collect(pulls)
    unsound = sorted(a for a in got if not p.member(a))
    missing = [a for a in range(bound) if p.member(a) and a not in got]
    return AmaxReport(p.scheme, bound, len(got), unsound, missing)
