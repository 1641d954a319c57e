"""Atom codings, name streams and enumeration operators.

Everything downstream talks in plain naturals.  Structured atoms go through
the codings defined here, streams are pull-based iterators that emit either
``PAUSE`` (``None``) or an atom, and operators are axiom collections that can
be applied to finite sets or driven by a stream.
"""

from __future__ import annotations

import heapq
import itertools
import random
from collections import deque
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Iterable, Iterator, Optional

PAUSE = None


# ---------------------------------------------------------------------------
# codings


def pair(a: int, b: int) -> int:
    """Cantor pairing <a,b> = (a+b)(a+b+1)/2 + b."""
    if a < 0 or b < 0:
        raise ValueError("pair of negative numbers")
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(c: int) -> tuple[int, int]:
    if c < 0:
        raise ValueError("negative code")
    w = (isqrt(8 * c + 1) - 1) // 2
    b = c - w * (w + 1) // 2
    return w - b, b


def tup(*xs: int) -> int:
    """Right-nested tuple code <a,b,c,...> = <a,<b,<c,...>>>."""
    if not xs:
        raise ValueError("empty tuple")
    code = xs[-1]
    for x in reversed(xs[:-1]):
        code = pair(x, code)
    return code


def untup(c: int, k: int) -> tuple[int, ...]:
    if k < 1:
        raise ValueError("arity must be positive")
    out = []
    for _ in range(k - 1):
        a, c = unpair(c)
        out.append(a)
    out.append(c)
    return tuple(out)


def finset_code(d: Iterable[int]) -> int:
    e = 0
    for i in set(d):
        if i < 0:
            raise ValueError("negative element")
        e |= 1 << i
    return e


def finset_decode(e: int) -> frozenset[int]:
    if e < 0:
        raise ValueError("negative code")
    out = []
    i = 0
    while e:
        if e & 1:
            out.append(i)
        e >>= 1
        i += 1
    return frozenset(out)


def string_code(s: Iterable[int]) -> int:
    c = 0
    for a in s:
        c = pair(c, a) + 1
    return c


def string_decode(c: int) -> tuple[int, ...]:
    out = []
    while c > 0:
        c, a = unpair(c - 1)
        out.append(a)
    return tuple(reversed(out))


def zigzag(n: int) -> int:
    return 2 * n if n >= 0 else -2 * n - 1


def unzigzag(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


def rational_code(q) -> int:
    q = Fraction(q)
    return pair(zigzag(q.numerator), q.denominator - 1)


def rational_decode(c: int) -> Fraction:
    """Inverse of rational_code; raises ValueError outside its range."""
    z, d = unpair(c)
    num, den = unzigzag(z), d + 1
    if gcd(num, den) != 1:
        raise ValueError(f"code {c} is not a lowest-terms rational")
    return Fraction(num, den)


def rational_or_none(c: int) -> Optional[Fraction]:
    try:
        return rational_decode(c)
    except ValueError:
        return None


def join_code(i: int, n: int, k: int = 2) -> int:
    """Atom n of the i-th component of a k-way join."""
    return k * n + i


def join_split(c: int, k: int = 2) -> tuple[int, int]:
    """Return (component, atom)."""
    return c % k, c // k


# ---------------------------------------------------------------------------
# decidable sets


class SetSpec:
    """Eventually periodic set: characteristic sequence prefix + period^ω."""

    __slots__ = ("prefix", "period")

    def __init__(self, prefix="", period="0"):
        self.prefix = tuple(int(b) for b in prefix)
        self.period = tuple(int(b) for b in period)
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(b not in (0, 1) for b in self.prefix + self.period):
            raise ValueError("SetSpec words must be bit words")

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < len(self.prefix):
            return bool(self.prefix[n])
        return bool(self.period[(n - len(self.prefix)) % len(self.period)])

    def bit(self, n: int) -> int:
        return int(n in self)

    def __eq__(self, other):
        if not isinstance(other, SetSpec):
            return NotImplemented
        m = max(len(self.prefix), len(other.prefix)) + len(self.period) * len(other.period)
        return all((i in self) == (i in other) for i in range(m))

    def __hash__(self):
        return hash(self.normalized().__repr__())

    def __repr__(self):
        p = "".join(map(str, self.prefix))
        q = "".join(map(str, self.period))
        return f"SetSpec({p!r}, {q!r})"

    def normalized(self) -> "SetSpec":
        period = list(self.period)
        for d in range(1, len(period) + 1):
            if len(period) % d == 0 and period == period[:d] * (len(period) // d):
                period = period[:d]
                break
        prefix = list(self.prefix)
        # roll the period backwards into the prefix while it matches
        while prefix and prefix[-1] == period[-1]:
            prefix.pop()
            period = [period[-1]] + period[:-1]
        return SetSpec(prefix, period)

    @classmethod
    def of(cls, members: Iterable[int], cofinite_from: Optional[int] = None) -> "SetSpec":
        """Finite set (or finite set plus [cofinite_from, ∞))."""
        ms = set(members)
        size = max(ms, default=-1) + 1
        if cofinite_from is not None:
            size = max(size, cofinite_from)
        bits = [1 if (i in ms or (cofinite_from is not None and i >= cofinite_from)) else 0
                for i in range(size)]
        return cls(bits, "1" if cofinite_from is not None else "0")

    @classmethod
    def empty(cls) -> "SetSpec":
        return cls("", "0")

    @classmethod
    def full(cls) -> "SetSpec":
        return cls("", "1")

    @classmethod
    def random(cls, rng: random.Random, max_prefix=6, max_period=4, density=0.5) -> "SetSpec":
        pre = [int(rng.random() < density) for _ in range(rng.randint(0, max_prefix))]
        per = [int(rng.random() < density) for _ in range(rng.randint(1, max_period))]
        return cls(pre, per)

    def _combine(self, other: "SetSpec", fn) -> "SetSpec":
        lp = max(len(self.prefix), len(other.prefix))
        per = len(self.period) * len(other.period) // gcd(len(self.period), len(other.period))
        pre = [fn(i in self, i in other) for i in range(lp)]
        cyc = [fn(i in self, i in other) for i in range(lp, lp + per)]
        return SetSpec([int(b) for b in pre], [int(b) for b in cyc])

    def __or__(self, other):
        return self._combine(as_setspec(other), lambda a, b: a or b)

    def __and__(self, other):
        return self._combine(as_setspec(other), lambda a, b: a and b)

    def __sub__(self, other):
        return self._combine(as_setspec(other), lambda a, b: a and not b)

    def complement(self) -> "SetSpec":
        return SetSpec([1 - b for b in self.prefix], [1 - b for b in self.period])

    def members(self, bound: int) -> list[int]:
        return [i for i in range(bound) if i in self]

    def is_finite(self) -> bool:
        return not any(self.period)

    def text(self) -> str:
        p = "".join(map(str, self.prefix))
        q = "".join(map(str, self.period))
        return f"{p}({q})"

    @classmethod
    def parse(cls, s: str) -> "SetSpec":
        """Parse "0110(01)" style text: prefix bits then the period in brackets."""
        s = s.strip()
        if "(" not in s or not s.endswith(")"):
            raise ValueError(f"bad set spec {s!r}: expected prefix(period)")
        pre, per = s[:-1].split("(", 1)
        return cls(pre, per)


class PredicateSet:
    """Decidable set given by a membership predicate (used for derived sets)."""

    def __init__(self, pred: Callable[[int], bool], name: str = "pred"):
        self.pred = pred
        self.name = name

    def __contains__(self, n: int) -> bool:
        return n >= 0 and bool(self.pred(n))

    def __repr__(self):
        return f"PredicateSet({self.name})"

    def complement(self) -> "PredicateSet":
        return PredicateSet(lambda n: not self.pred(n), f"co-{self.name}")


def as_setspec(s) -> SetSpec:
    if isinstance(s, SetSpec):
        return s
    raise TypeError(f"expected SetSpec, got {type(s).__name__}")


def complement(s):
    if isinstance(s, (SetSpec, PredicateSet)):
        return s.complement()
    return PredicateSet(lambda n: n not in s, "complement")


# ---------------------------------------------------------------------------
# name streams


class NameStream:
    """A pull-based name: each pull yields PAUSE (None) or an atom.

    A finite source is padded with PAUSE forever.  ``oracle`` optionally
    decides membership in the represented set.
    """

    def __init__(self, source: Iterable[Optional[int]], oracle: Optional[Callable[[int], bool]] = None):
        self._it = iter(source)
        self._done = False
        self.oracle = oracle
        self.pulls = 0

    def __iter__(self):
        return self

    def __next__(self) -> Optional[int]:
        self.pulls += 1
        if self._done:
            return PAUSE
        try:
            return next(self._it)
        except StopIteration:
            self._done = True
            return PAUSE

    next = __next__

    def take(self, n: int) -> list[Optional[int]]:
        return [next(self) for _ in range(n)]

    def wire(self, n: int) -> list[int]:
        return [to_wire(s) for s in self.take(n)]

    def collect(self, n: int) -> set[int]:
        return {s for s in self.take(n) if s is not None}


def to_wire(sym: Optional[int]) -> int:
    return 0 if sym is None else sym + 1


def from_wire(w: int) -> Optional[int]:
    if w < 0:
        raise ValueError("negative wire symbol")
    return None if w == 0 else w - 1


def dump_stream(symbols: Iterable[Optional[int]]) -> str:
    return "".join(f"{to_wire(s)}\n" for s in symbols)


def load_stream(text: str) -> NameStream:
    syms = [from_wire(int(tok)) for tok in text.split()]
    return NameStream(syms)


def stream_of(atoms: Iterable[Optional[int]], oracle=None) -> NameStream:
    return NameStream(atoms, oracle)


def canonical_stream(s) -> NameStream:
    """Canonical enumeration: at stage t emit t if t is in s, else PAUSE."""
    return NameStream((t if t in s else PAUSE for t in itertools.count()),
                      oracle=lambda a: a in s)


def oracle_stream(member: Callable[[int], bool], scan: int = 8,
                  candidates: Optional[Iterable[int]] = None) -> NameStream:
    """Scan candidates (default: 0,1,2,...) and emit members in that order.

    Each pull examines at most ``scan`` candidates, so pauses appear when
    members are sparse.
    """
    cand = iter(candidates) if candidates is not None else itertools.count()

    def gen():
        while True:
            for _ in range(scan):
                try:
                    c = next(cand)
                except StopIteration:
                    return
                if member(c):
                    yield c
                    break
            else:
                yield PAUSE

    return NameStream(gen(), oracle=member)


def dovetail(open_source: Callable[[int], Optional[Iterator[Optional[int]]]],
             limit: Optional[int] = None) -> Iterator[Optional[int]]:
    """Fair interleaving of infinitely many per-index sources.

    Round r opens source r (``open_source(r)`` may return None for an empty
    source); every open source then advances one step.  Sources yield atoms
    or None for an idle step.  The result yields one symbol per step, with
    PAUSE where a source idled.
    """
    active: list[Iterator] = []
    pending: deque = deque()
    r = 0
    while True:
        if limit is None or r < limit:
            src = open_source(r)
            if src is not None:
                active.append(iter(src))
        elif not active and not pending:
            return
        r += 1
        alive = []
        for it in active:
            try:
                v = next(it)
            except StopIteration:
                continue
            alive.append(it)
            if v is not None:
                pending.append(v)
        active = alive
        # one symbol per source step keeps the pace roughly linear
        emitted = False
        while pending:
            yield pending.popleft()
            emitted = True
        if not emitted:
            yield PAUSE


def join(*streams: NameStream) -> NameStream:
    """k-way join; pull i goes to stream i mod k, atom a becomes k*a + i."""
    k = len(streams)
    if k < 1:
        raise ValueError("join of nothing")

    def gen():
        for t in itertools.count():
            i = t % k
            s = next(streams[i])
            yield PAUSE if s is None else k * s + i

    oracles = [s.oracle for s in streams]
    oracle = None
    if all(o is not None for o in oracles):
        oracle = lambda a: oracles[a % k](a // k)
    return NameStream(gen(), oracle)


# ---------------------------------------------------------------------------
# operators


class Reactor:
    """Incremental state of an operator applied to a growing input set.

    The driver adds each new input atom to ``seen`` and then calls
    ``feed``.  ``start`` and ``feed`` return iterables of outputs; None
    entries are idle steps so that long searches can be interleaved.
    """

    def __init__(self):
        self.seen: set[int] = set()

    def start(self) -> Iterable[Optional[int]]:
        return ()

    def feed(self, atom: int) -> Iterable[Optional[int]]:
        return ()


class EnumOperator:
    """Base class: subclasses provide ``reactor()``."""

    def reactor(self) -> Reactor:
        raise NotImplementedError

    def finite(self, d: Iterable[int], steps: int = 20000) -> set[int]:
        return _drain(self.reactor(), d, steps)

    def stream(self, p: NameStream, budget: int = 32) -> NameStream:
        return NameStream(_drive(self.reactor(), p, budget))

    def __call__(self, d: Iterable[int]) -> set[int]:
        return self.finite(d)


class _TableReactor(Reactor):
    def __init__(self, axioms):
        super().__init__()
        self.axioms = axioms
        self.missing = [len(d) for _, d in axioms]
        self.watch: dict[int, list[int]] = {}
        for idx, (_, d) in enumerate(axioms):
            for a in d:
                self.watch.setdefault(a, []).append(idx)

    def start(self):
        return [n for n, d in self.axioms if not d]

    def feed(self, atom):
        out = []
        for idx in self.watch.get(atom, ()):
            self.missing[idx] -= 1
            if self.missing[idx] == 0:
                out.append(self.axioms[idx][0])
        return out


class TableOperator(EnumOperator):
    """Operator given by a finite axiom table of (n, D) pairs."""

    def __init__(self, axioms: Iterable[tuple[int, Iterable[int]]]):
        self.axioms = [(int(n), frozenset(d)) for n, d in axioms]

    def reactor(self):
        return _TableReactor(self.axioms)

    def finite(self, d, steps=None):
        d = set(d)
        return {n for n, h in self.axioms if h <= d}

    def dumps(self) -> str:
        lines = []
        for n, d in self.axioms:
            lines.append(f"{n} :" + "".join(f" {a}" for a in sorted(d)))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def loads(cls, text: str) -> "TableOperator":
        axioms = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if ":" not in line:
                raise ValueError(f"line {lineno}: expected 'n : a1 a2 ...'")
            head, tail = line.split(":", 1)
            try:
                axioms.append((int(head), [int(t) for t in tail.split()]))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        return cls(axioms)

    @classmethod
    def identity(cls, bound: int) -> "TableOperator":
        return cls((n, {n}) for n in range(bound))

    @classmethod
    def random(cls, rng: random.Random, n_axioms=10, universe=20, max_hyp=3) -> "TableOperator":
        axioms = []
        for _ in range(n_axioms):
            k = rng.randint(0, max_hyp)
            axioms.append((rng.randrange(universe), rng.sample(range(universe), k)))
        return cls(axioms)


class RuleOperator(EnumOperator):
    """Operator given by callbacks.

    ``on_atom(atom, seen)`` returns the outputs of axioms whose hypothesis
    contains ``atom`` and lies inside ``seen``; ``on_start()`` returns the
    outputs of empty-hypothesis axioms.
    """

    def __init__(self, on_atom: Callable[[int, set], Iterable[Optional[int]]],
                 on_start: Callable[[], Iterable[Optional[int]]] = lambda: ()):
        self.on_atom = on_atom
        self.on_start = on_start

    def reactor(self):
        r = Reactor()
        r.start = self.on_start
        r.feed = lambda a: self.on_atom(a, r.seen)
        return r


class ComposedOperator(EnumOperator):
    """outer ∘ inner, evaluated by chaining."""

    def __init__(self, outer: EnumOperator, inner: EnumOperator):
        self.outer = outer
        self.inner = inner

    def finite(self, d, steps=20000):
        return self.outer.finite(self.inner.finite(d, steps), steps)

    def stream(self, p, budget=32):
        return self.outer.stream(self.inner.stream(p, budget), budget)

    def reactor(self):
        raise TypeError("composed operators are evaluated by chaining, not by a single reactor")


def compose(op1: EnumOperator, op2: EnumOperator) -> EnumOperator:
    """Return op1 ∘ op2.  Finite tables compose exactly into a table."""
    if isinstance(op1, TableOperator) and isinstance(op2, TableOperator):
        by_out: dict[int, list[frozenset]] = {}
        for n, d in op2.axioms:
            by_out.setdefault(n, []).append(d)
        axioms = []
        for n, e in op1.axioms:
            choices = [by_out.get(a, []) for a in sorted(e)]
            if any(not c for c in choices):
                continue
            for combo in itertools.product(*choices):
                axioms.append((n, frozenset().union(*combo)))
        return TableOperator(axioms)
    return ComposedOperator(op1, op2)


def apply_finite(op: EnumOperator, d: Iterable[int], steps: int = 20000) -> set[int]:
    return op.finite(d, steps)


def apply_stream(op: EnumOperator, p: NameStream, budget: int = 32) -> NameStream:
    return op.stream(p, budget)


def _drain(reactor: Reactor, d: Iterable[int], steps: int) -> set[int]:
    gens = deque([iter(reactor.start())])
    for a in sorted(set(d)):
        reactor.seen.add(a)
        gens.append(iter(reactor.feed(a)))
    out = set()
    while gens and steps > 0:
        g = gens.popleft()
        try:
            v = next(g)
        except StopIteration:
            continue
        steps -= 1
        gens.append(g)
        if v is not None:
            out.add(v)
    return out


def _drive(reactor: Reactor, source: Iterator[Optional[int]], budget: int) -> Iterator[Optional[int]]:
    """Fair schedule: one input pull, then round-robin generator steps.

    Each output pull advances pending generators by at most
    max(budget, #generators) steps (capped at 16 * budget) and emits the
    smallest output not yet emitted, or PAUSE.
    """
    gens: deque = deque([iter(reactor.start())])
    heap: list[int] = []
    emitted: set[int] = set()
    queued: set[int] = set()
    seen = reactor.seen
    while True:
        sym = next(source)
        if sym is not None and sym not in seen:
            seen.add(sym)
            gens.append(iter(reactor.feed(sym)))
        steps = min(max(budget, len(gens)), 16 * budget)
        while steps > 0 and gens:
            g = gens.popleft()
            steps -= 1
            try:
                v = next(g)
            except StopIteration:
                continue
            gens.append(g)
            if v is not None and v not in queued:
                queued.add(v)
                heapq.heappush(heap, v)
        if heap:
            a = heapq.heappop(heap)
            emitted.add(a)
            yield a
        else:
            yield PAUSE
