"""Constructive e-equivalences between neighbourhood filters of points and
the combinatorial set shapes that characterise their degrees.

Every reduction is a pair of stream transducers.  Most of them are
"knowledge operators": the incoming atoms are folded into a monotone state
(``learn``), and a fair rescan emits every output code whose membership the
state already certifies (``holds``).  Because ``holds`` only ever flips from
False to True as atoms arrive, and each certificate rests on finitely many
atoms, such an operator is an enumeration operator.
"""

from __future__ import annotations

import heapq
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .enumop import (
    PAUSE,
    EnumOperator,
    NameStream,
    PredicateSet,
    Reactor,
    SetSpec,
    oracle_stream,
    pair,
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
    L0,
    L0BAR,
    L0Z,
    Ord,
    arens_classify,
    arens_label_of,
    is_kb_node,
    is_leaf,
    kb_decode,
    kb_le,
    kb_lt,
    kb_pred_leaf,
    ord_decode,
)
from .spaces import (
    INF_STAR,
    ORIGIN,
    ORIGIN_STAR,
    ArensPower,
    CocylinderPoint,
    CofinitePower,
    DOPt,
    DoubleOriginPower,
    FuncSeq,
    IrrLatticePower,
    Periodic,
    Point,
    RoyPower,
    TelophasePower,
    _rat,
    is_prefix,
    nbase_member,
    random_point,
)

BOT0 = "bot0"
BOT1 = "bot1"


# ---------------------------------------------------------------------------
# knowledge operators


class Knowledge:
    """Monotone state built from input atoms in arrival order."""

    def learn(self, atom: int) -> None:
        pass

    def holds(self, atom: int) -> bool:
        return False


class _KnowledgeReactor(Reactor):
    def __init__(self, state: Knowledge, scan_step: int):
        super().__init__()
        self.state = state
        self.scan_step = scan_step

    def start(self):
        return self._scan()

    def feed(self, atom):
        self.state.learn(atom)
        return ()

    def _scan(self):
        # round r re-examines every undecided code below scan_step * r
        done = set()
        holds = self.state.holds
        for r in itertools.count(1):
            for c in range(self.scan_step * r):
                if c in done:
                    continue
                if holds(c):
                    done.add(c)
                    yield c
                else:
                    yield None


class KnowledgeOperator(EnumOperator):
    def __init__(self, factory: Callable[[], Knowledge], scan_step: int = 64, name: str = ""):
        self.factory = factory
        self.scan_step = scan_step
        self.name = name

    def reactor(self):
        return _KnowledgeReactor(self.factory(), self.scan_step)


class _Passthrough(Knowledge):
    def __init__(self):
        self.seen = set()

    def learn(self, atom):
        self.seen.add(atom)

    def holds(self, atom):
        return atom in self.seen


def identity_operator() -> KnowledgeOperator:
    return KnowledgeOperator(_Passthrough, name="identity")


def _kb_max(a, b):
    if a is None:
        return b
    return b if kb_lt(a, b) else a


def _kb_min(a, b):
    if a is None:
        return b
    return b if kb_lt(b, a) else a


def _ord_max(a, b):
    return b if a is None or a < b else a


def _ord_min(a, b):
    return b if a is None or b < a else a


def _max(d: dict, k, v):
    if k not in d or d[k] < v:
        d[k] = v


# ---------------------------------------------------------------------------
# reduction pairs and the round-trip harness


@dataclass
class DirectionReport:
    pulls: int
    emitted: int
    unsound: list
    missing: list

    @property
    def ok(self) -> bool:
        return not self.unsound and not self.missing


@dataclass
class RoundTrip:
    name: str
    forward: DirectionReport
    backward: DirectionReport

    @property
    def ok(self) -> bool:
        return self.forward.ok and self.backward.ok


def _members_below(member: Callable[[int], bool], k: int, least: int = 0,
                   scan: int = 100000) -> list:
    """Members with code < k, topped up with the next smallest members until
    there are ``least`` of them (sparse sets otherwise carry no obligation)."""
    out = [(c,) for c in range(k) if member(c)]
    c = k
    while len(out) < least and c < scan:
        if member(c):
            out.append((c,))
        c += 1
    return out


@dataclass
class ReductionPair:
    """forward: source name → target set; backward: target set → source name.

    ``source_oracle`` decides the source set (Nbase of the point, or the
    data target for data-to-data reductions), ``target_oracle`` the target.
    Medvedev-style pairs whose forward output is one of several valid sets
    override ``forward_ok`` / ``target_required`` with constraint checks.
    """

    name: str
    forward: object
    backward: object
    source_oracle: Callable[[int], bool]
    target_oracle: Callable[[int], bool]
    source_stream: Callable[[], NameStream]
    target_stream: Optional[Callable[[], NameStream]] = None
    forward_ok: Optional[Callable[[int], bool]] = None
    target_required: Optional[Callable[[int], list]] = None
    source_required: Optional[Callable[[int], list]] = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.target_stream is None:
            self.target_stream = lambda: oracle_stream(self.target_oracle)
        if self.forward_ok is None:
            self.forward_ok = self.target_oracle
        if self.target_required is None:
            self.target_required = lambda k: _members_below(self.target_oracle, k)
        if self.source_required is None:
            self.source_required = self._default_source_required

    def _default_source_required(self, k: int, least: int = 0) -> list:
        return _members_below(self.source_oracle, k, least)

    def run_forward(self, k=50, pulls=20000, budget=32) -> DirectionReport:
        return run_direction(self.forward, self.source_stream(), self.forward_ok,
                             self.target_required(k), pulls, budget)

    def _source_required(self, k, least):
        if least and self.source_required == self._default_source_required:
            return self._default_source_required(k, least)
        return self.source_required(k)

    def run_backward(self, k=50, pulls=20000, budget=32, least=0) -> DirectionReport:
        return run_direction(self.backward, self.target_stream(), self.source_oracle,
                             self._source_required(k, least), pulls, budget)

    def roundtrip(self, k=50, pulls=20000, budget=32, least=0) -> RoundTrip:
        return RoundTrip(self.name, self.run_forward(k, pulls, budget),
                         self.run_backward(k, pulls, budget, least))

    def composite(self, k=50, pulls=20000, budget=32) -> DirectionReport:
        """backward ∘ forward applied to the source name, checked against
        the source oracle."""
        mid = self.forward.stream(self.source_stream(), budget)
        return run_direction(self.backward, mid, self.source_oracle,
                             self._source_required(k, 0), pulls, budget)


def run_direction(op, source: NameStream, ok: Callable[[int], bool], required: list,
                  pulls: int = 20000, budget: int = 32, check_every: int = 50) -> DirectionReport:
    """Pull ``op``'s output; every emitted atom must satisfy ``ok``, and every
    group in ``required`` must have a member emitted within ``pulls``."""
    out = op.stream(source, budget)
    got: set[int] = set()
    bad = []
    remaining = [frozenset(g) for g in required]
    t = 0
    while t < pulls:
        t += 1
        a = next(out)
        if a is not None and a not in got:
            got.add(a)
            if not ok(a):
                bad.append(a)
        if t % check_every == 0:
            remaining = [g for g in remaining if not (g & got)]
            if not remaining:
                break
    remaining = [g for g in remaining if not (g & got)]
    return DirectionReport(t, len(got), bad, sorted(min(g) for g in remaining))


class StreamProcedure:
    """A transducer given directly as a function of the input stream."""

    def __init__(self, fn: Callable[[NameStream], Iterator[Optional[int]]], name=""):
        self.fn = fn
        self.name = name

    def stream(self, p: NameStream, budget: int = 32) -> NameStream:
        return NameStream(self.fn(p))


# ---------------------------------------------------------------------------
# data types


def check_bound(*sets, default: int = 256) -> int:
    """Index up to which set constraints are validated: past every prefix
    and a full common period for SetSpecs, ``default`` otherwise."""
    if sets and all(isinstance(s, SetSpec) for s in sets):
        pre = max(len(s.prefix) for s in sets)
        per = 1
        for s in sets:
            per = per * len(s.period) // math.gcd(per, len(s.period))
        return pre + per
    return default


def _disjoint(names_sets: dict, bound: int):
    items = list(names_sets.items())
    for n in range(bound):
        hit = [name for name, s in items if n in s]
        if len(hit) > 1:
            raise ValueError(f"{' and '.join(hit)} both contain {n}")


def _join_member(k: int, parts: list) -> Callable[[int], bool]:
    def member(c):
        return parts[c % k](c // k)
    return member


@dataclass
class TelographData:
    """g : ω → ω with threshold b; target c̄Graph(g) ⊕ TGraph_b(g)."""

    g: object
    b: int = 2

    def value(self, n):
        return self.g[n]

    def target(self, c: int) -> bool:
        n, m = unpair(c // 2)
        v = self.g[n]
        if c % 2 == 0:
            return v != m
        return v == m and m >= self.b


@dataclass
class CoDCEAData:
    """X, A, P with A ∩ P = ∅; target X ⊕ X̄ ⊕ (A ∪ P)."""

    X: object
    A: object
    P: object

    def __post_init__(self):
        _disjoint({"A": self.A, "P": self.P}, check_bound(self.A, self.P))

    def target(self, c: int) -> bool:
        i, a = c % 3, c // 3
        if i == 0:
            return a in self.X
        if i == 1:
            return a not in self.X
        return a in self.A or a in self.P


@dataclass
class DCodCEAData:
    """X, A, B, P, N (A, B, P, N pairwise disjoint);
    target X ⊕ X̄ ⊕ (A ∪ P) ⊕ (B ∪ N)."""

    X: object
    A: object
    B: object
    P: object
    N: object

    def __post_init__(self):
        sets = {"A": self.A, "B": self.B, "P": self.P, "N": self.N}
        _disjoint(sets, check_bound(*sets.values()))

    def target(self, c: int) -> bool:
        i, a = c % 4, c // 4
        if i == 0:
            return a in self.X
        if i == 1:
            return a not in self.X
        if i == 2:
            return a in self.A or a in self.P
        return a in self.B or a in self.N

    def outside(self, n) -> bool:
        """n ∈ c̄(A ∪ B)."""
        return n not in self.A and n not in self.B


@dataclass
class SepData:
    """X, A, B with A ∩ B = ∅."""

    X: object
    A: object
    B: object

    def __post_init__(self):
        _disjoint({"A": self.A, "B": self.B}, check_bound(self.A, self.B))

    def source(self, c: int) -> bool:
        """X ⊕ X̄ ⊕ c̄A."""
        i, a = c % 3, c // 3
        if i == 0:
            return a in self.X
        if i == 1:
            return a not in self.X
        return a not in self.A

    def target(self, c: int, C) -> bool:
        """X ⊕ X̄ ⊕ C ⊕ C̄ for a separator C."""
        i, a = c % 4, c // 4
        if i == 0:
            return a in self.X
        if i == 1:
            return a not in self.X
        if i == 2:
            return a in C
        return a not in C


@dataclass
class ArensData:
    Y: object
    L: object
    R: object
    N: object
    J_L: object
    J_R: object
    J_M: object
    H_L: object
    H_R: object

    def __post_init__(self):
        sets = [self.L, self.R, self.N, self.J_L, self.J_R, self.J_M, self.H_L, self.H_R]
        bound = check_bound(*sets)
        _disjoint({"L": self.L, "R": self.R, "N": self.N}, bound)
        _disjoint({"J_L": self.J_L, "J_R": self.J_R, "J_M": self.J_M}, bound)
        _disjoint({"H_L": self.H_L, "H_R": self.H_R}, bound)
        for n in range(bound):
            inN = n in self.N
            for name, s in (("J_L", self.J_L), ("J_R", self.J_R), ("J_M", self.J_M)):
                if n in s and not inN:
                    raise ValueError(f"{name} ∌ N at {n}")
            if inN != (n in self.H_L or n in self.H_R):
                raise ValueError(f"H_L, H_R do not partition N at {n}")
            if n in self.J_L and n not in self.H_L:
                raise ValueError(f"J_L ⊄ H_L at {n}")
            if n in self.J_R and n not in self.H_R:
                raise ValueError(f"J_R ⊄ H_R at {n}")

    def in_M(self, n) -> bool:
        return n not in self.L and n not in self.R and n not in self.N

    def target(self, c: int) -> bool:
        i, a = c % 5, c // 5
        if i == 0:
            return a in self.Y
        if i == 1:
            return a not in self.Y
        if i == 2:
            return a in self.L or a in self.J_L
        if i == 3:
            return a in self.R or a in self.J_R
        return self.in_M(a) or a in self.J_M


def _is_nat(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def halfgraph_plus(f, a: int) -> bool:
    """Membership of a in HalfGraph⁺(f)."""
    n, m = unpair(a // 2)
    v = f[n]
    if a % 2 == 0:
        return v == BOT0 or (_is_nat(v) and v <= 2 * m)
    return v == BOT1 or (_is_nat(v) and v >= 2 * m)


def halfgraph(f, a: int) -> bool:
    n, m = unpair(a // 2)
    v = f[n]
    if not _is_nat(v):
        return False
    return v == 2 * m if a % 2 == 0 else v >= 2 * m


@dataclass
class HalfGraphData:
    """f : ω → ω ∪ {⊥₀, ⊥₁}, Y; target Y ⊕ Ȳ ⊕ HalfGraph⁺(f)."""

    f: object
    Y: object

    def __post_init__(self):
        vals = self.f.values() if hasattr(self.f, "values") else []
        for v in vals:
            if not (v in (BOT0, BOT1) or (_is_nat(v) and v >= 0)):
                raise ValueError(f"bad halfgraph value {v!r}")

    def target(self, c: int) -> bool:
        i, a = c % 3, c // 3
        if i == 0:
            return a in self.Y
        if i == 1:
            return a not in self.Y
        return halfgraph_plus(self.f, a)


# ---------------------------------------------------------------------------
# telophase ↔ 2-telograph


def telophase_g(x: TelophasePower) -> FuncSeq:
    def g(n):
        v = x[n]
        if v == INF:
            return 0
        if v == INF_STAR:
            return 1
        return v + 2
    return FuncSeq(g)


class _TeloFwd(Knowledge):
    def __init__(self):
        self.exact, self.lb1, self.lb2 = {}, {}, {}

    def learn(self, atom):
        n, i, m = untup(atom, 3)
        if i == 0:
            self.exact[n] = m
        elif i == 1:
            _max(self.lb1, n, m)
        elif i == 2:
            _max(self.lb2, n, m)

    def neq(self, n, m) -> bool:
        """x(n) ≠ m is certified."""
        e = self.exact.get(n)
        return (e is not None and e != m) or self.lb1.get(n, -1) > m or self.lb2.get(n, -1) > m

    def holds(self, c):
        n, m = unpair(c // 2)
        if c % 2 == 0:
            if m == 0:
                return n in self.exact or n in self.lb2
            if m == 1:
                return n in self.exact or n in self.lb1
            return self.neq(n, m - 2)
        return m >= 2 and self.exact.get(n) == m - 2


class _TeloBwd(Knowledge):
    def __init__(self):
        self.cg: dict[int, set] = {}
        self.tg: dict[int, int] = {}

    def learn(self, atom):
        n, m = unpair(atom // 2)
        if atom % 2 == 0:
            self.cg.setdefault(n, set()).add(m)
        else:
            self.tg[n] = m

    def holds(self, atom):
        n, i, m = untup(atom, 3)
        if i == 0:
            return self.tg.get(n) == m + 2
        if i in (1, 2):
            s = self.cg.get(n, ())
            return (1 if i == 1 else 0) in s and all(j + 2 in s for j in range(m))
        return False


def telophase_telograph(x: TelophasePower) -> ReductionPair:
    data = TelographData(telophase_g(x), 2)
    return ReductionPair(
        "telophase<->telograph",
        KnowledgeOperator(_TeloFwd, name="telophase->telograph"),
        KnowledgeOperator(_TeloBwd, name="telograph->telophase"),
        source_oracle=lambda a: nbase_member(x, a),
        target_oracle=data.target,
        source_stream=x.nbase,
        extras={"data": data},
    )


# ---------------------------------------------------------------------------
# b-telograph collapse


def collapse_g(g, b: int) -> FuncSeq:
    """g̃(bn+i) = g_i(n)."""
    def gt(q):
        n, i = divmod(q, b)
        v = g[n]
        if v == i:
            return 0
        if v < b:
            return 1
        return v - b + 2
    return FuncSeq(gt)


def total_one_telograph(g) -> Callable[[int], bool]:
    """Oracle of G = {⟨n,m,0⟩ : g(n) ≠ m+1} ∪ {⟨n,m,1⟩ : g(n) = m+1}."""
    def member(c):
        n, m, i = untup(c, 3)
        if i == 0:
            return g[n] != m + 1
        if i == 1:
            return g[n] == m + 1
        return False
    return member


class _Graph(Knowledge):
    """Known pairs of c̄Graph and TGraph from a 2-way telograph join."""

    def __init__(self):
        self.cg: set = set()
        self.tg: set = set()

    def learn(self, atom):
        nm = unpair(atom // 2)
        (self.cg if atom % 2 == 0 else self.tg).add(nm)


class _OneFwd(_Graph):
    def holds(self, c):
        n, m, i = untup(c, 3)
        if i == 0:
            return (n, m + 1) in self.cg
        if i == 1:
            return (n, m + 1) in self.tg
        return False


class _OneBwd(Knowledge):
    def __init__(self):
        self.zero: set = set()
        self.one: dict = {}

    def learn(self, atom):
        n, m, i = untup(atom, 3)
        if i == 0:
            self.zero.add((n, m))
        elif i == 1:
            self.one[n] = m

    def holds(self, c):
        n, m = unpair(c // 2)
        if c % 2 == 0:
            if m == 0:
                return n in self.one
            return (n, m - 1) in self.zero
        return m >= 1 and self.one.get(n) == m - 1


class _OneComplement(Knowledge):
    """Ḡ from G: the two tags swap, other tags are never in G."""

    def __init__(self):
        self.seen = set()

    def learn(self, atom):
        self.seen.add(atom)

    def holds(self, c):
        n, m, i = untup(c, 3)
        if i > 1:
            return True
        return tup(n, m, 1 - i) in self.seen


def _collapse_fwd(b):
    class Fwd(_Graph):
        def holds(self, c):
            q, m = unpair(c // 2)
            n, i = divmod(q, b)
            if c % 2 == 0:
                if m == 0:
                    return (n, i) in self.cg
                if m == 1:
                    return all((n, j) in self.cg for j in range(b) if j != i)
                return (n, m - 2 + b) in self.cg
            return m >= 2 and (n, m - 2 + b) in self.tg
    return Fwd


def _collapse_bwd(b):
    class Bwd(_Graph):
        def holds(self, c):
            n, j = unpair(c // 2)
            if c % 2 == 0:
                if j < b:
                    return (b * n + j, 0) in self.cg
                return (b * n, j - b + 2) in self.cg
            return j >= b and (b * n, j - b + 2) in self.tg
    return Bwd


def telograph_collapse(g, b: int) -> ReductionPair:
    """b = 1: the total set G; b ≥ 2: the 2-telograph form of g̃."""
    if b < 1:
        raise ValueError("b must be at least 1")
    src = TelographData(g, b)

    def src_stream():
        return oracle_stream(src.target)

    if b == 1:
        member = total_one_telograph(g)
        return ReductionPair(
            "telograph<->total", KnowledgeOperator(_OneFwd), KnowledgeOperator(_OneBwd),
            source_oracle=src.target, target_oracle=member, source_stream=src_stream,
            extras={"complement": KnowledgeOperator(_OneComplement), "data": src},
        )
    if b == 2:
        return ReductionPair(
            "telograph<->telograph", identity_operator(), identity_operator(),
            source_oracle=src.target, target_oracle=src.target, source_stream=src_stream,
            extras={"data": src, "g_tilde": g},
        )
    tgt = TelographData(collapse_g(g, b), 2)
    return ReductionPair(
        f"telograph{b}<->telograph2", KnowledgeOperator(_collapse_fwd(b)),
        KnowledgeOperator(_collapse_bwd(b)),
        source_oracle=src.target, target_oracle=tgt.target, source_stream=src_stream,
        extras={"data": src, "g_tilde": tgt.g},
    )


# ---------------------------------------------------------------------------
# telophase ↔ {X} × Sep(A, B)


def telophase_X(x: TelophasePower) -> Callable[[int], bool]:
    """X = {2⟨n,m⟩ : x(n) = m} ∪ {2⟨n,m⟩+1 : x(n) ≠ m}."""
    def member(a):
        n, m = unpair(a // 2)
        eq = x[n] == m
        return eq if a % 2 == 0 else not eq
    return member


class _TeloSepFwd(_TeloFwd):
    def __init__(self):
        super().__init__()
        self.first: dict[int, int] = {}

    def learn(self, atom):
        n, i, m = untup(atom, 3)
        if i > 2:
            return
        self.first.setdefault(n, i)
        super().learn(atom)

    def holds(self, c):
        slot, a = c % 4, c // 4
        if slot == 2:
            return self.first.get(a, 2) in (0, 1)
        if slot == 3:
            return self.first.get(a) == 2
        n, m = unpair(a // 2)
        eq = self.exact.get(n) == m
        ne = self.neq(n, m)
        if a % 2 == 1:
            eq, ne = ne, eq
        return eq if slot == 0 else ne


class _TeloSepBwd(Knowledge):
    def __init__(self):
        self.exact: dict[int, int] = {}
        self.neq: dict[int, set] = {}
        self.C: set = set()
        self.Cbar: set = set()

    def learn(self, atom):
        slot, a = atom % 4, atom // 4
        if slot == 0:
            n, m = unpair(a // 2)
            if a % 2 == 0:
                self.exact[n] = m
            else:
                self.neq.setdefault(n, set()).add(m)
        elif slot == 2:
            self.C.add(a)
        elif slot == 3:
            self.Cbar.add(a)

    def holds(self, atom):
        n, i, m = untup(atom, 3)
        e = self.exact.get(n)
        if i == 0:
            return e == m
        if i in (1, 2):
            if e is not None and m <= e:
                return True
            side = self.C if i == 1 else self.Cbar
            if n not in side:
                return False
            s = self.neq.get(n, ())
            return all(j in s for j in range(m))
        return False


def telophase_sep(x: TelophasePower, separator=None) -> ReductionPair:
    """Forward output X ⊕ X̄ ⊕ C ⊕ C̄ with C chosen by the first atom seen at
    each coordinate; ``separator`` is the C fed to the backward direction
    (default {n : x(n) ≠ ∞★})."""
    X = telophase_X(x)
    A = PredicateSet(lambda n: x[n] == INF, "A")
    B = PredicateSet(lambda n: x[n] == INF_STAR, "B")
    C = separator if separator is not None else PredicateSet(lambda n: x[n] != INF_STAR, "C")

    def target(c):
        slot, a = c % 4, c // 4
        if slot == 0:
            return X(a)
        if slot == 1:
            return not X(a)
        return (a in C) == (slot == 2)

    def ok(c):
        slot, a = c % 4, c // 4
        if slot == 0:
            return X(a)
        if slot == 1:
            return not X(a)
        return a not in B if slot == 2 else a not in A

    def required(k):
        groups = [(c,) for c in range(k) if c % 4 < 2 and target(c)]
        groups += [(4 * n + 2, 4 * n + 3) for n in range(k) if 4 * n + 2 < k]
        return groups

    return ReductionPair(
        "telophase<->sep", KnowledgeOperator(_TeloSepFwd), KnowledgeOperator(_TeloSepBwd),
        source_oracle=lambda a: nbase_member(x, a), target_oracle=target,
        source_stream=x.nbase, forward_ok=ok, target_required=required,
        extras={"A": A, "B": B, "X": PredicateSet(X, "X")},
    )


def build_telophase_point(X, A, B) -> TelophasePower:
    """x(2n) = X(n); x(2n+1) = ∞ on A, ∞★ on B, else the confirmation stage n."""
    _disjoint({"A": A, "B": B}, check_bound(A, B))

    def fn(i):
        n, odd = divmod(i, 2)
        if not odd:
            return 1 if n in X else 0
        if n in A:
            return INF
        if n in B:
            return INF_STAR
        return n
    return TelophasePower(FuncSeq(fn))


# ---------------------------------------------------------------------------
# double origin ↔ doubled co-d-CEA

# Second coordinates are keyed in the order of their embedding values:
# b = j ↦ (0, j), * ↦ (1, 0), b̄ = j̄ ↦ (2, -j).
_YMIN, _YMAX, _YSTAR = (0, 0), (2, 0), (1, 0)


def _pow_range(lo: Fraction, hi: Fraction):
    """{e ≥ 0 : lo < 2^-(e+1) < hi} as (first, last), last possibly INF."""
    if hi <= 0:
        return None
    e1 = 0
    while Fraction(1, 2 ** (e1 + 1)) >= hi:
        e1 += 1
    if lo <= 0:
        return (e1, INF)
    if lo >= Fraction(1, 2):
        return None
    e2 = 0
    while Fraction(1, 2 ** (e2 + 2)) > lo:
        e2 += 1
    return (e1, e2) if e1 <= e2 else None


def _x_interval(p, q):
    """First coordinates a ∈ ω̂ with p < c(a) < q, as an interval [lo, hi]."""
    r = _pow_range(p, q)
    has_inf = p < 0 < q
    if r is None:
        return (INF, INF) if has_inf else None
    return r


def _y_interval(r, s):
    neg = _pow_range(-s, -r)
    star = r < 0 < s
    pos = _pow_range(r, s)
    if neg is None and not star and pos is None:
        return None
    lo = (0, neg[0]) if neg else (_YSTAR if star else (2, -pos[1]))
    hi = (2, -pos[0]) if pos else (_YSTAR if star else (0, neg[1]))
    return (lo, hi)


def _cx(a) -> Fraction:
    return Fraction(0) if a == INF else Fraction(1, 2 ** (a + 1))


def _cy(key) -> Fraction:
    side, j = key
    if side == 1:
        return Fraction(0)
    if j in (INF, -INF):
        return Fraction(0)
    v = Fraction(1, 2 ** (abs(j) + 1))
    return -v if side == 0 else v


def _do_merged(z: DOPt):
    if z.is_origin():
        return INF, _YSTAR
    key = {"w": (0, z.bj), "*": _YSTAR, "bar": (2, -z.bj)}[z.bk]
    return z.a, key


def _do_x_truth(a, y, i, k):
    """Membership of ⟨n,i,k⟩ in the total code X for merged coordinates (a, y)."""
    if i == 0:
        return a == k
    if i == 1:
        return a >= k
    if i == 2:
        return y == (0, k)
    if i == 3:
        return (0, k) <= y <= (2, -k)
    if i == 4:
        return y == (2, -k)
    return False


def _interval_truth(xl, xh, yl, yh, i, k):
    """True / False if every / no value in the box satisfies atom ⟨·,i,k⟩,
    None otherwise."""
    if i >= 5:
        return False
    if i == 0:
        if xl == xh == k:
            return True
        return False if (k < xl or k > xh) else None
    if i == 1:
        if xl >= k:
            return True
        return False if xh < k else None
    if i in (2, 4):
        key = (0, k) if i == 2 else (2, -k)
        if yl == yh == key:
            return True
        return False if (key < yl or key > yh) else None
    lo, hi = (0, k), (2, -k)
    if yl >= lo and yh <= hi:
        return True
    return False if (yh < lo or yl > hi) else None


class _DOFwd(Knowledge):
    def __init__(self):
        self.box: dict[int, list] = {}
        self.AP: set = set()
        self.BN: set = set()

    def _narrow(self, n, xi, yi):
        b = self.box.setdefault(n, [0, INF, _YMIN, _YMAX])
        if xi is not None:
            b[0], b[1] = max(b[0], xi[0]), min(b[1], xi[1])
        if yi is not None:
            b[2], b[3] = max(b[2], yi[0]), min(b[3], yi[1])

    def learn(self, atom):
        n, i, rest = untup(atom, 3)
        if i == 0:
            p, q, r, s = (_rat(c) for c in untup(rest, 4))
            if None in (p, q, r, s):
                return
            xi, yi = _x_interval(p, q), _y_interval(r, s)
            if xi is None or yi is None:
                return
            self._narrow(n, xi, yi)
        elif i in (1, 2):
            k, l = untup(rest, 2)
            if k < 1 or l < 1:
                return
            xi = _x_interval(-Fraction(1, k), Fraction(1, k))
            e = _pow_range(Fraction(0), Fraction(1, l))[0]
            if i == 1:
                self._narrow(n, xi, (_YSTAR, (2, -e)))
                self.AP.add(n)
            else:
                self._narrow(n, xi, ((0, e), _YSTAR))
                self.BN.add(n)

    def holds(self, c):
        slot, a = c % 4, c // 4
        if slot == 2:
            return a in self.AP
        if slot == 3:
            return a in self.BN
        n, i, k = untup(a, 3)
        if i >= 5:
            return slot == 1
        b = self.box.get(n)
        if b is None:
            return False
        t = _interval_truth(*b, i, k)
        return t is (slot == 0)


class _DOBwd(Knowledge):
    def __init__(self):
        self.xe, self.xl, self.ye, self.y3 = {}, {}, {}, {}
        self.nonorigin: set = set()
        self.AP: set = set()
        self.BN: set = set()

    def learn(self, atom):
        slot, a = atom % 4, atom // 4
        if slot == 2:
            self.AP.add(a)
        elif slot == 3:
            self.BN.add(a)
        elif slot == 0:
            n, i, k = untup(a, 3)
            if i == 0:
                self.xe[n] = k
                self.nonorigin.add(n)
            elif i == 1:
                _max(self.xl, n, k)
            elif i == 2:
                self.ye[n] = (0, k)
                self.nonorigin.add(n)
            elif i == 3:
                _max(self.y3, n, k)
            elif i == 4:
                self.ye[n] = (2, -k)
                self.nonorigin.add(n)

    def _box(self, n):
        if n in self.xe:
            xl = xh = self.xe[n]
        else:
            xl, xh = self.xl.get(n, 0), INF
        if n in self.ye:
            yl = yh = self.ye[n]
        elif n in self.y3:
            m = self.y3[n]
            yl, yh = (0, m), (2, -m)
        else:
            yl, yh = _YMIN, _YMAX
        return xl, xh, yl, yh

    def holds(self, atom):
        n, i, rest = untup(atom, 3)
        if i == 0:
            if n not in self.nonorigin:
                return False
            p, q, r, s = (_rat(c) for c in untup(rest, 4))
            if None in (p, q, r, s):
                return False
            xl, xh, yl, yh = self._box(n)
            return _cx(xh) > p and _cx(xl) < q and _cy(yl) > r and _cy(yh) < s
        if i in (1, 2):
            k, l = untup(rest, 2)
            if k < 1 or l < 1:
                return False
            if n not in (self.AP if i == 1 else self.BN):
                return False
            xl, xh, yl, yh = self._box(n)
            if _cx(xl) >= Fraction(1, k):
                return False
            if i == 1:
                return _cy(yh) < Fraction(1, l)
            return _cy(yl) > -Fraction(1, l)
        return False


def doubleorigin_decode(z: DoubleOriginPower) -> DCodCEAData:
    def x_member(a):
        n, i, k = untup(a, 3)
        ax, y = _do_merged(z[n])
        return _do_x_truth(ax, y, i, k)

    def nonorigin(n):
        return not z[n].is_origin()

    return DCodCEAData(
        X=PredicateSet(x_member, "X"),
        A=PredicateSet(lambda n: z[n] == ORIGIN, "A"),
        B=PredicateSet(lambda n: z[n].star, "B"),
        P=PredicateSet(lambda n: nonorigin(n) and z[n].bk == "bar", "P"),
        N=PredicateSet(lambda n: nonorigin(n) and z[n].bk == "w", "N"),
    )


def doubleorigin_codcea(z: DoubleOriginPower) -> ReductionPair:
    d = doubleorigin_decode(z)
    return ReductionPair(
        "doubleorigin<->dcodcea", KnowledgeOperator(_DOFwd), KnowledgeOperator(_DOBwd),
        source_oracle=lambda a: nbase_member(z, a), target_oracle=d.target,
        source_stream=z.nbase, extras={"data": d},
    )


def build_double_origin_point(d: DCodCEAData) -> DoubleOriginPower:
    """Even coordinates code X as (X(n), 0̄); odd coordinate 2n+1 is 𝟎 on A,
    𝟎★ on B, and otherwise (s, ·) with the confirmation stage s = n and
    second coordinate n̄ on P, n on N, * elsewhere."""
    def fn(i):
        n, odd = divmod(i, 2)
        if not odd:
            return DOPt(1 if n in d.X else 0, "bar", 0)
        if n in d.A:
            return ORIGIN
        if n in d.B:
            return ORIGIN_STAR
        if n in d.P:
            return DOPt(n, "bar", n)
        if n in d.N:
            return DOPt(n, "w", n)
        return DOPt(n, "*", 0)
    return DoubleOriginPower(FuncSeq(fn))


# ---------------------------------------------------------------------------
# doubled co-d-CEA → 2-telograph


def dcodcea_g(d: DCodCEAData) -> FuncSeq:
    """g(2n) is 0 off A∪P, 1 on A, t+2 on P; g(2n+1) likewise for B, N.
    The confirmation stage t of n is n."""
    def g(r):
        n, side = divmod(r, 2)
        own, pos = (d.A, d.P) if side == 0 else (d.B, d.N)
        if n in own:
            return 1
        if n in pos:
            return n + 2
        return 0
    return FuncSeq(g)


def dcodcea_g_tilde(d: DCodCEAData) -> FuncSeq:
    """g̃(2q) = X(q) + 2, g̃(2q+1) = g(q): X ⊕ X̄ folded into the telograph."""
    g = dcodcea_g(d)
    return FuncSeq(lambda r: (1 if r // 2 in d.X else 0) + 2 if r % 2 == 0 else g[r // 2])


def _dcod_fwd(d: DCodCEAData):
    class Fwd(Knowledge):
        def __init__(self):
            self.slots = [set(), set(), set(), set()]

        def learn(self, atom):
            self.slots[atom % 4].add(atom // 4)

        def holds(self, c):
            r, m = unpair(c // 2)
            q, odd = divmod(r, 2)
            X, Xbar, AP, BN = self.slots
            if not odd:
                if c % 2 == 0:
                    if m in (0, 1) or m >= 4:
                        return True
                    return q in (X if m == 2 else Xbar)
                return (m == 3 and q in X) or (m == 2 and q in Xbar)
            n, side = divmod(q, 2)
            own, other = (AP, BN) if side == 0 else (BN, AP)
            pos = d.P if side == 0 else d.N
            if c % 2 == 0:
                if m == 0:
                    return n in own
                if m == 1:
                    return d.outside(n) or n in other
                return not (m - 2 == n and n in pos)
            return m - 2 == n and n in pos
    return Fwd


class _DcodBwd(_Graph):
    def holds(self, c):
        slot, a = c % 4, c // 4
        if slot == 0:
            return (2 * a, 3) in self.tg
        if slot == 1:
            return (2 * a, 2) in self.tg
        if slot == 2:
            return (4 * a + 1, 0) in self.cg
        return (4 * a + 3, 0) in self.cg


def dcodcea_to_telograph(d: DCodCEAData) -> tuple[TelographData, ReductionPair]:
    tg = TelographData(dcodcea_g_tilde(d), 2)
    pair_ = ReductionPair(
        "dcodcea->telograph", KnowledgeOperator(_dcod_fwd(d)), KnowledgeOperator(_DcodBwd),
        source_oracle=d.target, target_oracle=tg.target,
        source_stream=lambda: oracle_stream(d.target), extras={"data": tg},
    )
    return tg, pair_


def doubleorigin_to_telograph(z: DoubleOriginPower):
    """Nbase(z) → X ⊕ X̄ ⊕ (A∪P) ⊕ (B∪N) → c̄Graph(g̃) ⊕ TGraph₂(g̃), chained."""
    do = doubleorigin_codcea(z)
    tg, dt = dcodcea_to_telograph(do.extras["data"])
    return do, dt, tg


# ---------------------------------------------------------------------------
# irregular lattice ↔ co-d-CEA


def irrlattice_decode(z: IrrLatticePower) -> CoDCEAData:
    def x_member(c):
        j, t = c % 2, c // 2
        i, n, k = untup(t, 3)
        v = z[n][j]
        if i == 0:
            return v == k
        if i == 1:
            return v >= k
        return False

    return CoDCEAData(
        X=PredicateSet(x_member, "X"),
        A=PredicateSet(lambda n: z[n][0] == INF, "A"),
        P=PredicateSet(lambda n: z[n][1] != INF, "P"),
    )


class _IrrFwd(Knowledge):
    def __init__(self):
        self.exact = ({}, {})
        self.lo = ({}, {})
        self.AP: set = set()

    def learn(self, atom):
        i, n, a, b = untup(atom, 4)
        if i == 0:
            self.exact[0][n], self.exact[1][n] = a, b
            self.AP.add(n)
        elif i == 1:
            self.exact[0][n] = a
            _max(self.lo[1], n, b)
        elif i == 2:
            _max(self.lo[0], n, a)
            _max(self.lo[1], n, b)
            self.AP.add(n)

    def holds(self, c):
        slot, a = c % 3, c // 3
        if slot == 2:
            return a in self.AP
        j, t = a % 2, a // 2
        i, n, k = untup(t, 3)
        if i >= 2:
            return slot == 1
        e = self.exact[j].get(n)
        lo = self.lo[j].get(n, -1)
        if i == 0:
            yes = e == k
            no = (e is not None and e != k) or lo > k
        else:
            yes = (e is not None and e >= k) or lo >= k
            no = e is not None and e < k
        return yes if slot == 0 else no


class _IrrBwd(Knowledge):
    def __init__(self):
        self.xs: set = set()
        self.ys: set = set()
        self.AP: set = set()

    def learn(self, atom):
        slot, a = atom % 3, atom // 3
        if slot == 2:
            self.AP.add(a)
        elif slot == 0:
            (self.xs if a % 2 == 0 else self.ys).add(untup(a // 2, 3))

    def holds(self, atom):
        i, n, a, b = untup(atom, 4)
        if i < 2:
            return (0, n, a) in self.xs and (i, n, b) in self.ys
        if i == 2:
            return (1, n, a) in self.xs and (1, n, b) in self.ys and n in self.AP
        return False


def irrlattice_codcea(z: IrrLatticePower) -> ReductionPair:
    d = irrlattice_decode(z)
    return ReductionPair(
        "irrlattice<->codcea", KnowledgeOperator(_IrrFwd), KnowledgeOperator(_IrrBwd),
        source_oracle=lambda a: nbase_member(z, a), target_oracle=d.target,
        source_stream=z.nbase, extras={"data": d},
    )


def build_irrlattice_point(d: CoDCEAData) -> IrrLatticePower:
    """(x, y)(2n) = (X(n), 0); x(2n+1) = ∞ on A else the stage n;
    y(2n+1) = the stage n on P else ∞."""
    def fn(i):
        n, odd = divmod(i, 2)
        if not odd:
            return (1 if n in d.X else 0, 0)
        if n in d.A:
            return (INF, INF)
        return (n, n if n in d.P else INF)
    return IrrLatticePower(FuncSeq(fn))


# ---------------------------------------------------------------------------
# co-d-CEA ↔ {X} × Sep(A, B)


def _codcea_sep_forward(d: SepData):
    def run(p: NameStream):
        heap: list[int] = []
        decided: set[int] = set()
        for t in itertools.count():
            sym = next(p)
            if sym is not None:
                slot, a = sym % 3, sym // 3
                if slot < 2:
                    heapq.heappush(heap, 4 * a + slot)
                elif a not in decided:
                    # n ∈ c̄A seen before n ∈ c̄B
                    decided.add(a)
                    heapq.heappush(heap, 4 * a + 3)
            # the canonical enumeration of c̄B reaches t at pull t
            if t not in d.B and t not in decided:
                decided.add(t)
                heapq.heappush(heap, 4 * t + 2)
            yield heapq.heappop(heap) if heap else PAUSE
    return StreamProcedure(run, "codcea->sep")


def _codcea_sep_backward(d: SepData):
    class Bwd(Knowledge):
        def __init__(self):
            self.slots = [set(), set(), set(), set()]

        def learn(self, atom):
            self.slots[atom % 4].add(atom // 4)

        def holds(self, c):
            slot, a = c % 3, c // 3
            if slot < 2:
                return a in self.slots[slot]
            return a in self.slots[3] or (a not in d.A and a not in d.B)
    return Bwd


def codcea_sep(d: SepData, separator=None) -> ReductionPair:
    """Forward: X ⊕ X̄ ⊕ c̄A → X ⊕ X̄ ⊕ C ⊕ C̄ by racing c̄A against c̄B;
    backward: a separator (default C = A) back to X ⊕ X̄ ⊕ c̄A."""
    C = separator if separator is not None else d.A

    def ok(c):
        slot, a = c % 4, c // 4
        if slot == 0:
            return a in d.X
        if slot == 1:
            return a not in d.X
        return a not in d.B if slot == 2 else a not in d.A

    def required(k):
        groups = [(c,) for c in range(k) if c % 4 < 2 and ok(c)]
        groups += [(4 * n + 2, 4 * n + 3) for n in range(k) if 4 * n + 2 < k]
        return groups

    return ReductionPair(
        "codcea<->sep", _codcea_sep_forward(d), KnowledgeOperator(_codcea_sep_backward(d)),
        source_oracle=d.source, target_oracle=lambda c: d.target(c, C),
        source_stream=lambda: oracle_stream(d.source), forward_ok=ok,
        target_required=required, extras={"data": d},
    )


# ---------------------------------------------------------------------------
# Arens ↔ Arens co-d-CEA


def arens_decode(z: ArensPower) -> ArensData:
    def lab(n):
        return z[n][0]

    def y_member(c):
        n, oc = unpair(c)
        return ord_decode(oc) < z[n][1]

    L = PredicateSet(lambda n: z[n] == (L0, TOP), "L")
    R = PredicateSet(lambda n: z[n] == (L0BAR, TOP), "R")
    N = PredicateSet(lambda n: z[n][1] != TOP and lab(n) != L0Z, "N")
    return ArensData(
        Y=PredicateSet(y_member, "Y"), L=L, R=R, N=N,
        J_L=PredicateSet(lambda n: lab(n).kind == "nat" and lab(n).n > 0, "J_L"),
        J_R=PredicateSet(lambda n: lab(n).kind == "bar" and lab(n).n > 0, "J_R"),
        J_M=PredicateSet(lambda n: lab(n).kind == "zeta" and lab(n).n != 0, "J_M"),
        H_L=PredicateSet(lambda n: n in N and (lab(n).kind in ("nat", "inf")
                                               or (lab(n).kind == "zeta" and lab(n).n < 0)), "H_L"),
        H_R=PredicateSet(lambda n: n in N and (lab(n).kind in ("bar", "infbar")
                                               or (lab(n).kind == "zeta" and lab(n).n > 0)), "H_R"),
    )


class _ArensFwd(Knowledge):
    def __init__(self):
        self.lb: dict[int, Ord] = {}
        self.ub: dict[int, Ord] = {}
        self.flags = (set(), set(), set())

    def _bound(self, n, lo=None, hi=None):
        if lo is not None:
            self.lb[n] = _ord_max(self.lb.get(n), lo)
        if hi is not None:
            self.ub[n] = _ord_min(self.ub.get(n), hi)

    def learn(self, atom):
        i, n, rest = untup(atom, 3)
        if i in (0, 1):
            self._bound(n, Ord(rest, 0, 0))
            self.flags[i].add(n)
        elif i == 2:
            j, k = untup(rest, 2)
            self._bound(n, Ord(j, k, 0), Ord(j + 1, 0, 0))
            self.flags[2].add(n)
        elif i in (3, 4):
            j, k, l = untup(rest, 3)
            if j < 1:
                return
            u = 2 * l + (i - 3)
            self._bound(n, Ord(k, u, 2 * j - 1), Ord(k, u + 1, 0))
        elif i == 5:
            y = ord_decode(untup(rest, 2)[1])
            if y.is_successor():
                self._bound(n, y.pred(), y)

    def holds(self, c):
        slot, a = c % 5, c // 5
        if slot >= 2:
            return a in self.flags[slot - 2]
        n, oc = unpair(a)
        alpha = ord_decode(oc)
        if slot == 0:
            lb = self.lb.get(n)
            return not alpha.top and lb is not None and alpha <= lb
        ub = self.ub.get(n)
        return alpha.top or (ub is not None and alpha >= ub)


class _ArensBwd(Knowledge):
    def __init__(self):
        self.lb: dict[int, Ord] = {}
        self.ub: dict[int, Ord] = {}
        self.flags = (set(), set(), set())

    def learn(self, atom):
        slot, a = atom % 5, atom // 5
        if slot >= 2:
            self.flags[slot - 2].add(a)
            return
        n, oc = unpair(a)
        alpha = ord_decode(oc)
        if slot == 0:
            self.lb[n] = _ord_max(self.lb.get(n), alpha)
        else:
            self.ub[n] = _ord_min(self.ub.get(n), alpha)

    def holds(self, atom):
        i, n, rest = untup(atom, 3)
        lb, ub = self.lb.get(n), self.ub.get(n)
        if lb is not None and ub is not None and ub.is_successor() and ub.pred() == lb:
            (x,) = arens_classify(ub)
            return ArensPower.point_member(x, ub, i, rest)
        if lb is None:
            return False
        if i in (0, 1):
            return n in self.flags[i] and lb >= Ord(rest, 0, 0)
        if ub is None:
            return False
        if i == 2:
            j, k = untup(rest, 2)
            return n in self.flags[2] and lb >= Ord(j, k, 0) and ub <= Ord(j + 1, 0, 0)
        if i in (3, 4):
            j, k, l = untup(rest, 3)
            if j < 1:
                return False
            u = 2 * l + (i - 3)
            return lb >= Ord(k, u, 2 * j - 1) and ub <= Ord(k, u + 1, 0)
        return False


def arens_codcea(z: ArensPower) -> ReductionPair:
    d = arens_decode(z)
    return ReductionPair(
        "arens<->arens-codcea", KnowledgeOperator(_ArensFwd), KnowledgeOperator(_ArensBwd),
        source_oracle=lambda a: nbase_member(z, a), target_oracle=d.target,
        source_stream=z.nbase, extras={"data": d},
    )


def build_arens_point(d: ArensData) -> ArensPower:
    """z(2n+1) = (1,1) on Y, (2,3) off Y; z(2n) from the staged ordinal
    assignment with all confirmation stages equal to n."""
    def fn(i):
        n, odd = divmod(i, 2)
        if odd:
            return (ArensLabel("nat", 1), Ord(0, 0, 1)) if n in d.Y else (ArensLabel("nat", 2), Ord(0, 0, 3))
        if n in d.L:
            return (L0, TOP)
        if n in d.R:
            return (L0BAR, TOP)
        if n not in d.N:
            return (L0Z, Ord(n + 1, 0, 0))
        j = 1 if n in d.H_L else 2
        if n in d.J_L or n in d.J_R:
            y = Ord(n, 2 * n + j - 1, 2 * n + 1)
        elif n in d.J_M:
            y = Ord(n, 2 * n + j - 1, 2 * (n + 1))
        else:
            y = Ord(n, 2 * n + j, 0)
        return (arens_label_of(y), y)
    return ArensPower(FuncSeq(fn))


# ---------------------------------------------------------------------------
# Roy ↔ halfgraph-above


def roy_decode(z: RoyPower) -> HalfGraphData:
    def f(n):
        x = z[n][0]
        if x == 0:
            return BOT0
        if x == INF:
            return BOT1
        return x - 1

    def y_member(c):
        n, tc = unpair(c)
        t = kb_decode(tc)
        return t is not None and kb_le(tuple(z[n][1]), t)

    return HalfGraphData(FuncSeq(f), PredicateSet(y_member, "Y"))


class _RoyFwd(Knowledge):
    def __init__(self):
        self.lower, self.upper, self.exact = {}, {}, {}
        self.minfam: dict[int, int] = {}
        self.maxk2: dict[int, int] = {}

    def _fam(self, n, k):
        if n not in self.minfam or k < self.minfam[n]:
            self.minfam[n] = k

    def learn(self, atom):
        i, n, rest = untup(atom, 3)
        if i == 0:
            k, sc = untup(rest, 2)
            s = string_decode(sc)
            if not is_kb_node(s):
                return
            self.exact[n] = s
            self.upper[n] = _kb_min(self.upper.get(n), s)
            self._fam(n, k)
        elif i == 1:
            k, tc = untup(rest, 2)
            t = string_decode(tc)
            if not t or not is_kb_node(t) or not is_kb_node(t[:-1]) or is_leaf(t[:-1]):
                return
            self.upper[n] = _kb_min(self.upper.get(n), t[:-1])
            self.lower[n] = _kb_max(self.lower.get(n), t)
            self._fam(n, k)
        elif i == 2:
            _max(self.maxk2, n, rest)
            if rest >= 1:
                self.lower[n] = _kb_max(self.lower.get(n), (rest,))

    def holds(self, c):
        slot, a = c % 3, c // 3
        if slot == 2:
            n, m = unpair(a // 2)
            if a % 2 == 0:
                return self.minfam.get(n, INF) <= m
            return self.maxk2.get(n, -1) >= m
        n, tc = unpair(a)
        t = kb_decode(tc)
        if slot == 0:
            if t is None:
                return False
            u = self.upper.get(n)
            return t == () or (u is not None and kb_le(u, t))
        if t is None:
            return True
        low = self.lower.get(n)
        if low is not None and kb_le(t, low):
            return True
        e = self.exact.get(n)
        return e is not None and kb_lt(t, e)


class _RoyBwd(Knowledge):
    def __init__(self):
        self.lower, self.upper = {}, {}
        self.hg: set = set()

    def learn(self, atom):
        slot, a = atom % 3, atom // 3
        if slot == 2:
            self.hg.add(a)
            return
        n, tc = unpair(a)
        t = kb_decode(tc)
        if t is None:
            return
        if slot == 0:
            self.upper[n] = _kb_min(self.upper.get(n), t)
        else:
            self.lower[n] = _kb_max(self.lower.get(n), t)

    def exact(self, n):
        u = self.upper.get(n)
        if u is None or not is_leaf(u):
            return None
        p = kb_pred_leaf(u)
        if p is None:
            return u
        low = self.lower.get(n)
        return u if low is not None and kb_le(p, low) else None

    def holds(self, atom):
        i, n, rest = untup(atom, 3)
        if i == 2:
            return 2 * pair(n, rest) + 1 in self.hg
        if i not in (0, 1):
            return False
        k, sc = untup(rest, 2)
        if 2 * pair(n, k) not in self.hg:
            return False
        if i == 0:
            return (2 * pair(n, k) + 1 in self.hg and self.exact(n) is not None
                    and self.exact(n) == string_decode(sc))
        if k > 0 and 2 * pair(n, k - 1) + 1 not in self.hg:
            return False
        t = string_decode(sc)
        if not t or not is_kb_node(t) or not is_kb_node(t[:-1]) or is_leaf(t[:-1]):
            return False
        u, low = self.upper.get(n), self.lower.get(n)
        return u is not None and low is not None and kb_le(u, t[:-1]) and kb_le(t, low)


def roy_halfgraph(z: RoyPower) -> ReductionPair:
    for v in z.seq.values():
        if v[0] == 2 and tuple(v[1]) == (0,):
            raise ValueError("coordinate (2, [0]) has no isolating basic set; not supported")
    d = roy_decode(z)
    return ReductionPair(
        "roy<->halfgraph", KnowledgeOperator(_RoyFwd), KnowledgeOperator(_RoyBwd),
        source_oracle=lambda a: nbase_member(z, a), target_oracle=d.target,
        source_stream=z.nbase, extras={"data": d},
    )


def roy_coordinate(n: int, v):
    """Second coordinate built for f(n) = v by the staged KB refinement."""
    if v == BOT0:
        return (0, ())
    if v == BOT1:
        return (INF, ())
    k = (v + 1) // 2 + 1          # dominator value g(n) = 2k - 1 > v
    m = v // 2
    s = [k] + [1 + 2 * pair(n, j) + 1 for j in range(1, m + 1)]
    if v % 2 == 0:
        s.append(1 + 2 * pair(n, m))
    y = tuple(s)
    return (v + 1, y)


def build_roy_point(d: HalfGraphData) -> RoyPower:
    def fn(i):
        n, odd = divmod(i, 2)
        if odd:
            return (1, (1, 1)) if n in d.Y else (1, (1, 0))
        return roy_coordinate(n, d.f[n])
    z = RoyPower(FuncSeq(fn))
    return z


# ---------------------------------------------------------------------------
# co-d-CEA → halfgraph-above → doubled co-d-CEA


def codcea_f(d: CoDCEAData) -> FuncSeq:
    return FuncSeq(lambda n: BOT0 if n in d.A else (0 if n in d.P else 1))


def _codcea_hg_fwd(d: CoDCEAData):
    class Fwd(Knowledge):
        def __init__(self):
            self.slots = [set(), set(), set()]

        def learn(self, atom):
            self.slots[atom % 3].add(atom // 3)

        def holds(self, c):
            slot, a = c % 3, c // 3
            if slot < 2:
                return a in self.slots[slot]
            n, m = unpair(a // 2)
            if a % 2 == 0:
                return m > 0 or n in self.slots[2]
            return m == 0 and n not in d.A
    return Fwd


class _CodceaHgBwd(Knowledge):
    def __init__(self):
        self.slots = [set(), set(), set()]

    def learn(self, atom):
        self.slots[atom % 3].add(atom // 3)

    def holds(self, c):
        slot, a = c % 3, c // 3
        if slot < 2:
            return a in self.slots[slot]
        return 2 * pair(a, 0) in self.slots[2]


def codcea_to_halfgraph(d: CoDCEAData) -> tuple[HalfGraphData, ReductionPair]:
    hd = HalfGraphData(codcea_f(d), d.X)
    rp = ReductionPair(
        "codcea->halfgraph", KnowledgeOperator(_codcea_hg_fwd(d)), KnowledgeOperator(_CodceaHgBwd),
        source_oracle=d.target, target_oracle=hd.target,
        source_stream=lambda: oracle_stream(d.target), extras={"data": hd},
    )
    return hd, rp


def _stage(n, k) -> int:
    """Stage at which 2⟨n,k⟩+1 is confirmed in HalfGraph⁺ (when it is)."""
    return k


def _in_C_from(f, n, k, s) -> bool:
    """n ∈ C_{[2k,∞)}[s]: f(n) ∈ ω, f(n) ≥ 2k, confirmed by stage s."""
    v = f[n]
    return _is_nat(v) and v >= 2 * k and _stage(n, k) <= s


@dataclass
class DoubledFamily:
    """The family Z_i packed as one doubled co-d-CEA set, and the set Q."""

    data: DCodCEAData
    q_member: Callable[[int], bool]


def halfgraph_doubled_data(hd: HalfGraphData) -> DoubledFamily:
    f = hd.f

    def A(c):
        i, b = unpair(c)
        if i % 2 == 0:
            return f[b] == BOT0
        k = (i - 1) // 2
        n, s = unpair(b)
        v = f[n]
        return not _in_C_from(f, n, k, s) or not (_is_nat(v) and v >= 2 * k + 2)

    def P(c):
        i, b = unpair(c)
        if i % 2 == 0:
            return f[b] == 0
        k = (i - 1) // 2
        n, s = unpair(b)
        return _in_C_from(f, n, k, s) and f[n] == 2 * k + 2

    def B(c):
        i, b = unpair(c)
        return i % 2 == 0 and f[b] == BOT1

    def N(c):
        i, b = unpair(c)
        if i % 2:
            return False
        v = f[b]
        return _is_nat(v) and v >= max(i, 2)

    data = DCodCEAData(hd.Y, PredicateSet(A, "A"), PredicateSet(B, "B"),
                       PredicateSet(P, "P"), PredicateSet(N, "N"))

    def q_member(c):
        slot, a = c % 5, c // 5
        if slot == 0:
            return a in hd.Y
        if slot == 1:
            return a not in hd.Y
        if slot == 2:
            return f[a] in (BOT0, 0)
        k, n = unpair(a)
        v = f[n]
        if slot == 3:
            return v == BOT1 or (_is_nat(v) and v >= 2 * k)
        return _is_nat(v) and 2 * k <= v <= 2 * k + 2

    return DoubledFamily(data, q_member)


def _hg_doubled_fwd(f):
    class Fwd(Knowledge):
        def __init__(self):
            self.slots = [set(), set(), set()]

        def learn(self, atom):
            self.slots[atom % 3].add(atom // 3)

        def holds(self, c):
            slot, a = c % 4, c // 4
            if slot < 2:
                return a in self.slots[slot]
            hg = self.slots[2]
            i, b = unpair(a)
            if slot == 2:
                if i % 2 == 0:
                    return 2 * pair(b, 0) in hg
                k = (i - 1) // 2
                n, s = unpair(b)
                if not _in_C_from(f, n, k, s):
                    return True
                return 2 * pair(n, k) + 1 in hg and 2 * pair(n, k + 1) in hg
            if i % 2:
                return False
            return 2 * pair(b, max(i // 2, 1)) + 1 in hg
    return Fwd


def _hg_doubled_bwd(f):
    class Bwd(Knowledge):
        def __init__(self):
            self.slots = [set(), set(), set(), set()]

        def learn(self, atom):
            self.slots[atom % 4].add(atom // 4)

        def _mid(self, n, k) -> bool:
            """n ∈ C_{[2k,2k+2]} witnessed through Z_{2k+1}."""
            s = _stage(n, k)
            return _in_C_from(f, n, k, s) and pair(2 * k + 1, pair(n, s)) in self.slots[2]

        def holds(self, c):
            slot, a = c % 3, c // 3
            if slot < 2:
                return a in self.slots[slot]
            n, m = unpair(a // 2)
            if a % 2 == 0:
                return pair(0, n) in self.slots[2] or any(self._mid(n, k) for k in range(m))
            if m >= 1:
                return pair(2 * m, n) in self.slots[3]
            return pair(0, n) in self.slots[3] or self._mid(n, 0)
    return Bwd


def halfgraph_to_doubled(hd: HalfGraphData) -> tuple[DoubledFamily, ReductionPair]:
    fam = halfgraph_doubled_data(hd)
    rp = ReductionPair(
        "halfgraph->doubled", KnowledgeOperator(_hg_doubled_fwd(hd.f)),
        KnowledgeOperator(_hg_doubled_bwd(hd.f)),
        source_oracle=hd.target, target_oracle=fam.data.target,
        source_stream=lambda: oracle_stream(hd.target), extras={"family": fam},
    )
    return fam, rp


# ---------------------------------------------------------------------------
# separated doubled co-d-CEA → co-d-CEA


@dataclass
class SeparatedForm:
    Z: PredicateSet
    codcea: CoDCEAData


def separated_doubled_to_codcea(d: DCodCEAData, H_P, H_N, bound: Optional[int] = None) -> SeparatedForm:
    """Z = (A ∪ P) ∪ H_P; the co-d-CEA form is over X ⊕ Z with
    A'' = A ⊕ B and P'' = P ⊕ N."""
    bound = bound or check_bound(d.A, d.B, d.P, d.N, H_P, H_N)
    for n in range(bound):
        out = d.outside(n)
        hp, hn = n in H_P, n in H_N
        if hp and hn:
            raise ValueError(f"H_P and H_N overlap at {n}")
        if out != (hp or hn):
            raise ValueError(f"H_P, H_N do not partition the complement of A ∪ B at {n}")
        if n in d.P and not hp:
            raise ValueError(f"P ⊄ H_P at {n}")
        if n in d.N and not hn:
            raise ValueError(f"N ⊄ H_N at {n}")
    Z = PredicateSet(lambda n: n in d.A or n in d.P or n in H_P, "Z")
    X2 = PredicateSet(lambda c: (c // 2 in d.X) if c % 2 == 0 else (c // 2 in Z), "X+Z")
    A2 = PredicateSet(lambda c: c // 2 in (d.A if c % 2 == 0 else d.B), "A+B")
    P2 = PredicateSet(lambda c: c // 2 in (d.P if c % 2 == 0 else d.N), "P+N")
    return SeparatedForm(Z, CoDCEAData(X2, A2, P2))


def separated_identities(d: DCodCEAData, sf: SeparatedForm, H_N, bound: int = 200) -> list:
    """Indices below ``bound`` where one of the three identities fails."""
    bad = []
    Z = sf.Z
    for n in range(bound):
        AB = n in d.A or n in d.B
        ap = n in d.A or n in d.P
        bn = n in d.B or n in d.N
        if ap != (n in Z and (AB or n in d.P)):
            bad.append(("A∪P", n))
        if bn != (n not in Z and (AB or n in d.N)):
            bad.append(("B∪N", n))
        if (n not in Z) != (bn or n in H_N):
            bad.append(("c̄Z", n))
    return bad


# ---------------------------------------------------------------------------
# cocylinder and telophase embeddings

ONE_STAR = "1*"


def _all_ones(x) -> bool:
    if isinstance(x, SetSpec):
        return 0 not in x.prefix and 0 not in x.period
    raise ValueError("cannot decide x = 1^ω for a set without a periodic description")


def ctp_embed(x) -> TelophasePower:
    """C_TP → telophase power: h(x)(0) = n for 1ⁿ0 ≺ x, ∞ for 1^ω, ∞★ for
    1★; h(x)(n+1) = c(x)(n) with c(1★) = 1^ω."""
    star = isinstance(x, str)
    if star and x != ONE_STAR:
        raise ValueError(f"unknown C_TP point {x!r}")

    def bit(n):
        return 1 if star else (1 if n in x else 0)

    if star:
        head = INF_STAR
    elif _all_ones(x):
        head = INF
    else:
        head = next(n for n in itertools.count() if not bit(n))

    def fn(i):
        return head if i == 0 else bit(i - 1)
    return TelophasePower(FuncSeq(fn))


def check_value_of(xs, m, j):
    return xs[m][j]


def cocyl_power_to_cofinite(xs) -> CofinitePower:
    """x̌(j) = code of the interleaving x_0↾j ⊕ … ⊕ x_{k-1}↾j."""
    xs = [x.seq if isinstance(x, CocylinderPoint) else x for x in xs]
    k = len(xs)

    def fn(j):
        return string_code(tuple(xs[m][i] for i in range(j) for m in range(k)))
    # string codes grow doubly exponentially in length, so validate few values
    return CofinitePower(FuncSeq(fn, check=4))


def baire_member(f, atom: int) -> bool:
    """Nbase of f in Baire space: string codes of prefixes of f."""
    s = string_decode(atom)
    return all(f[i] == v for i, v in enumerate(s))


class _BaireToCocyl(Knowledge):
    def __init__(self):
        self.prefixes = []

    def learn(self, atom):
        self.prefixes.append(string_decode(atom))

    def holds(self, atom):
        t = string_decode(atom)
        return any(not is_prefix(s, t) and not is_prefix(t, s) for s in self.prefixes)


class StallError(RuntimeError):
    pass


def _bounded_strings(g, ell):
    return itertools.product(*(range(g(i)) for i in range(ell)))


def _cocyl_to_baire(g):
    class K(Knowledge):
        def __init__(self):
            self.seen = set()

        def learn(self, atom):
            self.seen.add(atom)

        def holds(self, atom):
            s = string_decode(atom)
            if any(v >= g(i) for i, v in enumerate(s)):
                return False
            return all(string_code(t) in self.seen
                       for t in _bounded_strings(g, len(s)) if t != s)
    return K


def baire_cocyl(f, g: Optional[Callable[[int], int]] = None):
    """(baire→cocylinder, cocylinder→baire or None) for the point f.

    The second operator needs a total bound g with f(n) < g(n); it finds
    f↾ℓ as the unique string of I(g, ℓ) missing from the cocylinder name."""
    seq = f.seq if isinstance(f, CocylinderPoint) else f
    up = KnowledgeOperator(_BaireToCocyl, name="baire->cocylinder")
    down = KnowledgeOperator(_cocyl_to_baire(g), name="cocylinder->baire") if g else None
    return up, down, (lambda a: baire_member(seq, a))


def recover_prefix(p: NameStream, g: Callable[[int], int], ell: int, budget: int = 20000):
    """Read a cocylinder name until all but one string of I(g, ℓ) appeared;
    raise StallError if that has not happened within ``budget`` pulls."""
    cands = {string_code(t): t for t in _bounded_strings(g, ell)}
    left = set(cands)
    for _ in range(budget):
        a = next(p)
        if a is not None:
            left.discard(a)
        if len(left) <= 1:
            break
    if len(left) != 1:
        raise StallError(f"no unique string of I(g,{ell}) left after {budget} pulls "
                         f"({len(left)} candidates); is g a valid bound?")
    return cands[left.pop()]


# ---------------------------------------------------------------------------
# random instances and the registry


def _label_seq(rng: random.Random, labels, weights=None, max_over=4, max_period=4) -> Periodic:
    pick = lambda: rng.choices(labels, weights)[0]
    default = [pick() for _ in range(rng.randint(1, max_period))]
    over = {rng.randrange(10): pick() for _ in range(rng.randint(0, max_over))}
    return Periodic(default, over)


def _sets_from_labels(seq: Periodic, labels) -> dict:
    """SetSpecs {label: {n : seq[n] == label}}."""
    period = len(seq.default)
    h = -(-seq.horizon() // period) * period
    out = {}
    for lab in labels:
        pre = "".join("1" if seq[n] == lab else "0" for n in range(h))
        per = "".join("1" if seq[h + i] == lab else "0" for i in range(period))
        out[lab] = SetSpec(pre, per)
    return out


def random_dcodcea(rng: random.Random) -> DCodCEAData:
    s = _sets_from_labels(_label_seq(rng, "ABPN-"), "ABPN")
    return DCodCEAData(SetSpec.random(rng), s["A"], s["B"], s["P"], s["N"])


def random_codcea(rng: random.Random) -> CoDCEAData:
    s = _sets_from_labels(_label_seq(rng, "AP-"), "AP")
    return CoDCEAData(SetSpec.random(rng), s["A"], s["P"])


def random_sep(rng: random.Random) -> SepData:
    s = _sets_from_labels(_label_seq(rng, "AB-"), "AB")
    return SepData(SetSpec.random(rng), s["A"], s["B"])


def random_halfgraph(rng: random.Random, top: int = 7) -> HalfGraphData:
    vals = [BOT0, BOT1] + list(range(top))
    f = _label_seq(rng, vals)
    return HalfGraphData(f, SetSpec.random(rng))


def random_arens_data(rng: random.Random) -> ArensData:
    # L, R, M, and N split as J_L, J_R, J_M (each in H_L or H_R) or plain H_L/H_R
    labs = ["L", "R", "M", "JL", "JR", "JML", "JMR", "HL", "HR"]
    s = _sets_from_labels(_label_seq(rng, labs), labs)
    N = s["JL"] | s["JR"] | s["JML"] | s["JMR"] | s["HL"] | s["HR"]
    return ArensData(
        Y=SetSpec.random(rng), L=s["L"], R=s["R"], N=N,
        J_L=s["JL"], J_R=s["JR"], J_M=s["JML"] | s["JMR"],
        H_L=s["JL"] | s["JML"] | s["HL"], H_R=s["JR"] | s["JMR"] | s["HR"],
    )


def random_telograph(rng: random.Random, top: int = 7) -> Periodic:
    return _label_seq(rng, list(range(top)))


def _pair_of(fn):
    """Registry entries return the ReductionPair only."""
    def make(rng):
        out = fn(rng)
        return out[1] if isinstance(out, tuple) else out
    return make


REDUCTIONS: dict[str, Callable[[random.Random], ReductionPair]] = {
    "telophase<->telograph": lambda rng: telophase_telograph(random_point("telophase", rng)),
    "telograph<->collapse": lambda rng: telograph_collapse(random_telograph(rng), rng.randint(1, 4)),
    "telophase<->sep": lambda rng: telophase_sep(random_point("telophase", rng)),
    "doubleorigin<->dcodcea": lambda rng: doubleorigin_codcea(random_point("double-origin", rng)),
    "dcodcea->telograph": _pair_of(lambda rng: dcodcea_to_telograph(random_dcodcea(rng))),
    "irrlattice<->codcea": lambda rng: irrlattice_codcea(random_point("irr-lattice", rng)),
    "codcea<->sep": lambda rng: codcea_sep(random_sep(rng)),
    "arens<->arens-codcea": lambda rng: arens_codcea(random_point("arens", rng)),
    "roy<->halfgraph": lambda rng: roy_halfgraph(random_point("roy", rng)),
    "codcea->halfgraph": _pair_of(lambda rng: codcea_to_halfgraph(random_codcea(rng))),
    "halfgraph->doubled": _pair_of(lambda rng: halfgraph_to_doubled(random_halfgraph(rng))),
}


def pair_for_point(p: Point) -> ReductionPair:
    """The reduction whose source is the name of ``p``."""
    table = {
        "telophase": telophase_telograph,
        "double-origin": doubleorigin_codcea,
        "irr-lattice": irrlattice_codcea,
        "arens": arens_codcea,
        "roy": roy_halfgraph,
    }
    if p.tag not in table:
        raise ValueError(f"no reduction starts from the {p.tag} space")
    return table[p.tag](p)
