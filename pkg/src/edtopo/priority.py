"""Replayable finite-injury constructions with per-stage invariant checks.

Two simulators are provided:

* ``run_proper_sigma2`` follows the strategy sketch for a proper-Σ⁰₂
  cylinder-cototal degree: P_{D,Φ,Ψ} strategies on a {∞, f} tree building
  A = Nbase(x) for a point x of the cocylinder space.
* ``run_no_minimal`` follows the five-step strategy table building the
  axiom set Φ of a left-c.e. real y relative to X.

Both return a ``StageTranscript``: one TSV line per stage with fields
stage, req, action, state digest and ``invariants=OK|FAIL:<ids>``.
"""

from __future__ import annotations

import bisect
import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .enumop import SetSpec


@dataclass
class StageLine:
    stage: int
    req: str
    action: str
    digest: str
    failures: tuple = ()

    def tsv(self) -> str:
        inv = "OK" if not self.failures else "FAIL:" + ",".join(self.failures)
        return f"{self.stage}\t{self.req}\t{self.action}\t{self.digest}\tinvariants={inv}"


@dataclass
class StageTranscript:
    name: str
    lines: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(not ln.failures for ln in self.lines) and not self.summary.get("failures")

    def failures(self) -> list:
        return [(ln.stage, ln.failures) for ln in self.lines if ln.failures]

    def to_tsv(self) -> str:
        return "".join(ln.tsv() + "\n" for ln in self.lines)

    def actions(self, req: Optional[str] = None) -> list:
        return [ln.action for ln in self.lines if req is None or ln.req == req]


def _digest(obj) -> str:
    return hashlib.sha256(repr(obj).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# sparse dyadic rationals
#
# y-values add 2^{-m-1} with m = m_{e-1} + 2^p + 1, so denominators grow
# doubly exponentially in p.  A Dyadic keeps the set of bit positions k of
# Σ 2^{-k} and never materializes the sum.

def _sign(rat: Fraction, signed_bits) -> int:
    """Sign of rat + Σ ±2^{-k} over (k, ±1) pairs with distinct k per sign."""
    acc = Fraction(rat)
    bits = sorted(signed_bits)
    for i, (k, sg) in enumerate(bits):
        if acc != 0:
            # what is left sums to less than 2^{-(k-1)} in absolute value
            n, d = abs(acc.numerator), acc.denominator
            if k - 1 > d.bit_length() or n * (1 << max(k - 1, 0)) >= d * (1 << max(1 - k, 0)):
                return 1 if acc > 0 else -1
        acc += sg * (Fraction(1, 1 << k) if k >= 0 else Fraction(1 << -k))
    return (acc > 0) - (acc < 0)


_FP_MOD = (1 << 61) - 1


def _fp_term(k: int) -> int:
    x = (k % _FP_MOD) * 0x9E3779B97F4A7C15 + 0x632BE59BD9B4E019
    return (x ^ (x >> 29)) % _FP_MOD


class Dyadic:
    __slots__ = ("bits", "fp")

    def __init__(self, bits=(), fp: Optional[int] = None):
        self.bits = tuple(sorted(bits))
        self.fp = fp if fp is not None else sum(map(_fp_term, self.bits)) % _FP_MOD

    def add_pow(self, k: int) -> "Dyadic":
        """self + 2^{-k}."""
        bits, fp = list(self.bits), self.fp
        i = bisect.bisect_left(bits, k)
        # carry: equal bits merge upward into k - 1, which sits just before
        while i < len(bits) and bits[i] == k:
            del bits[i]
            fp -= _fp_term(k)
            k -= 1
            i = bisect.bisect_left(bits, k, 0, i)
        bits.insert(i, k)
        out = Dyadic.__new__(Dyadic)
        out.bits, out.fp = tuple(bits), (fp + _fp_term(k)) % _FP_MOD
        return out

    def cmp(self, other: "Dyadic") -> int:
        a, b = self.bits, other.bits
        for x, y in zip(a, b):
            if x != y:
                return 1 if x < y else -1
        return (len(a) > len(b)) - (len(a) < len(b))

    def cmp_frac(self, q: Fraction) -> int:
        return _sign(-Fraction(q), [(k, 1) for k in self.bits])

    def __eq__(self, other):
        return isinstance(other, Dyadic) and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __lt__(self, other):
        return self.cmp(other) < 0

    def fingerprint(self) -> str:
        """Short stable summary (bit positions may be huge integers)."""
        return f"{len(self.bits)}:{self.fp:016x}"

    def to_fraction(self, max_pos: int = 4096) -> Fraction:
        if self.bits and self.bits[-1] > max_pos:
            raise OverflowError("dyadic too fine to materialize")
        return sum((Fraction(1, 1 << k) if k >= 0 else Fraction(1 << -k) for k in self.bits), Fraction(0))

    def __repr__(self):
        if not self.bits or self.bits[-1] <= 64:
            return f"Dyadic({self.to_fraction()})"
        return f"Dyadic(<{self.fingerprint()}>)"


ZERO = Dyadic()


def alpha_catches_up(alpha: Fraction, y: Dyadic, m: int) -> bool:
    """α ≥ y − 2^{-m-2}, decided exactly."""
    terms = [(k, -1) for k in y.bits] + [(m + 2, 1)]
    return _sign(Fraction(alpha), terms) >= 0


# ---------------------------------------------------------------------------
# Δ⁰₂ approximations of X

class XApproximation:
    """X_s = (X ∩ [0, s)) ∪ G_s with at most one wrong guess in G_s.

    The guess is the least non-member above the next member m ≥ s of X; it
    leaves exactly when m is revealed, so every departure is paired with a
    smaller enumeration, as the construction requires.  ``guesses=False``
    gives the plain approximation with no departures.
    """

    def __init__(self, X: SetSpec, guesses: bool = True, pace: int = 1):
        if pace < 1:
            raise ValueError("pace must be positive")
        self.X = X
        self.guesses = guesses
        self.pace = pace
        self._horizon = len(X.prefix) + 2 * len(X.period) + 2

    def _next_member(self, k: int) -> Optional[int]:
        for n in range(k, max(k, len(self.X.prefix)) + self._horizon):
            if n in self.X:
                return n
        return None

    def _next_nonmember(self, k: int) -> Optional[int]:
        for n in range(k, max(k, len(self.X.prefix)) + self._horizon):
            if n not in self.X:
                return n
        return None

    def frontier(self, s: int) -> int:
        """Positions below this are revealed at stage s."""
        return max(s, 0) // self.pace

    def guess(self, s: int) -> Optional[int]:
        if not self.guesses or s < 0:
            return None
        m = self._next_member(self.frontier(s))
        if m is None:
            return None
        return self._next_nonmember(m + 1)

    def member(self, n: int, s: int) -> bool:
        if s < 0:
            return False
        return (n < self.frontier(s) and n in self.X) or n == self.guess(s)

    def finite(self, s: int) -> frozenset:
        g = self.guess(s)
        return frozenset([n for n in range(self.frontier(s)) if n in self.X] + ([g] if g is not None else []))

    def subset(self, t: int, a: int, b: int, s: int) -> bool:
        """X_t ∩ [a, b) ⊆ X_s."""
        lo, hi = max(a, 0, self.frontier(s)), min(b, self.frontier(t))
        # revealed members below min(t, s) are in both
        if any(n in self.X and not self.member(n, s) for n in range(lo, hi)):
            return False
        g = self.guess(t)
        return g is None or not (a <= g < b) or self.member(g, s)

    def convention_ok(self, s: int) -> bool:
        """Anything leaving between s-1 and s is paired with a smaller arrival.

        Revealed members never leave, so only the guess can depart."""
        if s <= 0:
            return True
        g = self.guess(s - 1)
        if g is None or self.member(g, s):
            return True
        arrived = [n for n in range(self.frontier(s - 1), self.frontier(s)) if n in self.X]
        h = self.guess(s)
        if h is not None and h != g:
            arrived.append(h)
        return any(m < g for m in arrived)


# ---------------------------------------------------------------------------
# no ℝ_<-quasi-minimal degree

class Target:
    """Staged rational approximation α_{e,s}: listed values, then the last
    value forever, or a callable."""

    def __init__(self, values=None, fn: Optional[Callable[[int], Fraction]] = None, name: str = ""):
        if (values is None) == (fn is None):
            raise ValueError("give exactly one of values or fn")
        self.values = [Fraction(v) for v in values] if values is not None else None
        self.fn = fn
        self.name = name
        if self.values is not None and not self.values:
            raise ValueError("empty target")

    def __call__(self, s: int) -> Fraction:
        if self.values is not None:
            return self.values[min(s, len(self.values) - 1)]
        return Fraction(self.fn(s))

    def check(self, stages: int) -> None:
        prev = None
        for s in range(stages + 1):
            v = self(s)
            if prev is not None and v < prev:
                raise ValueError(f"target {self.name or ''} decreases at stage {s}: {prev} > {v}")
            prev = v

    @staticmethod
    def parse(text: str) -> "Target":
        """``q`` constant; ``lim:q`` for q(1 - 2^{-s}); ``steps:q0,q1,...``."""
        text = text.strip()
        if text.startswith("lim:"):
            q = Fraction(text[4:])
            return Target(fn=lambda s, q=q: q * (1 - Fraction(1, 1 << min(s, 4096))), name=text)
        if text.startswith("steps:"):
            return Target([Fraction(v) for v in text[6:].split(",")], name=text)
        return Target([Fraction(text)], name=text)


@dataclass
class _Strategy:
    init: bool = False
    active: bool = True
    y: Dyadic = ZERO
    m: int = 0
    sminus: int = 0
    s: int = 0
    p: int = 0

    def params(self):
        return (self.y, self.m, self.sminus, self.s, self.p)

    def snap(self):
        return (self.init, self.active, self.y.fingerprint(), self.m, self.sminus, self.s, self.p)


def run_no_minimal(stages: int, X: SetSpec, targets: Sequence, guesses: bool = True,
                   pace: int = 1) -> StageTranscript:
    """Simulate the strategies building Φ with y = sup{q : (q, D) ∈ Φ, D ⊆ X}
    and y ≠ α_e.  Axioms are stored as (y, t, p) meaning D = X_t ↾ p."""
    targets = [t if isinstance(t, Target) else Target.parse(t) if isinstance(t, str) else Target(t)
               for t in targets]
    for t in targets:
        t.check(stages)
    xa = XApproximation(X, guesses, pace)
    n = len(targets)
    S = [_Strategy() for _ in range(n)]
    inits = [0] * n
    history: list[list] = [[] for _ in range(n)]   # (stage, params) while active
    axioms: list[tuple] = []
    unscoped = 0
    tr = StageTranscript("no-minimal")
    chain = _digest(("no-minimal", X.text(), n, guesses, pace))

    def prev(e):
        if e == 0:
            return ZERO, 0, 0
        return S[e - 1].y, S[e - 1].m, S[e - 1].p

    def initialize_below(e):
        for f in range(e + 1, n):
            inits[f] += 1
            S[f] = _Strategy()
            history[f] = []

    def phi_value(s) -> Dyadic:
        best = ZERO
        for y, t, p in axioms:
            if xa.subset(t, 0, p, s) and best < y:
                best = y
        return best

    def enumerate_axiom(st, s, fails):
        ax = (st.y, st.s, st.p)
        # verification form: (y_{e,s+1}, X_{s_{e,s+1}} ↾ p_{e,s+1}) with s_{e,s+1} = s
        if st.s != s:
            fails.add("axiom")
        axioms.append(ax)

    for s in range(stages):
        for e in range(n):
            if S[e].init and S[e].active:
                history[e].append((s, S[e].params()))
        req, action = "-", "pass"
        fails: set = set()
        before = list(inits)
        for e in range(min(s, n - 1) + 1):
            st = S[e]
            y1, m1, p1 = prev(e)
            if not st.init:
                # (1) first action after initialization
                st.m = m1 + (1 << p1) + 1
                st.y = y1.add_pow(st.m + 1)
                st.p, st.s, st.sminus = p1, s + 1, s + 1
                st.init, st.active = True, True
                req, action = str(e), "1"
                initialize_below(e)
                break
            if st.active:
                if xa.subset(st.s, p1, st.p, s):
                    if alpha_catches_up(targets[e](s), st.y, st.m):
                        # (4a)
                        st.p += 1
                        st.m = m1 + (1 << st.p) + 1
                        st.y = st.y.add_pow(st.m + 1)
                        st.sminus, st.s = st.s, s
                        enumerate_axiom(st, s, fails)
                        req, action = str(e), "4a"
                        initialize_below(e)
                        break
                    continue                                    # (4b)
                if not xa.subset(st.sminus, p1, st.p - 1, s):
                    st.y = phi_value(s)                         # (3b)
                    st.active = False
                    req, action = str(e), "3b"
                    initialize_below(e)
                    break
                st.y = st.y.add_pow(st.m + 1)                   # (3c)
                st.s = s
                enumerate_axiom(st, s, fails)
                req, action = str(e), "3c"
                initialize_below(e)
                break
            # inactive: (5)
            if xa.subset(s - 1, p1, st.p, s):
                continue                                        # (5a) acts as (4b)
            val = phi_value(s)
            if not st.y < val:
                # (5b) stay inactive and act as (3b); at equality nothing
                # was restored and (3b) leaves y unchanged
                st.y = val
                req, action = str(e), "5b-stay"
                initialize_below(e)
                break
            back = [(t, ps) for t, ps in history[e] if t < s and xa.finite(t) <= xa.finite(s)]
            if not back:
                fails.add("recover")
                req, action = str(e), "5b-norecover"
                break
            t, ps = back[-1]
            st.y, st.m, st.sminus, st.s, st.p = ps
            st.active = True
            req, action = str(e), f"5b-recover@{t}"
            initialize_below(e)
            break

        # stage invariants
        # y_{e,s} ≤ y_{e',s} for e ≤ e' is argued while strategies stay
        # active; a (3b) value Φ(X_s) may sit below a y set by step (1),
        # which has no axiom behind it, so those pairs are only counted
        live = [S[e] for e in range(n) if S[e].init]
        pairs = [(a, b) for i, a in enumerate(live) for b in live[i + 1:] if b.y < a.y]
        if any(a.active and b.active for a, b in pairs):
            fails.add("ymono")
        if pairs:
            unscoped += 1
        if not xa.convention_ok(s):
            fails.add("xconv")
        # an action of e initializes exactly the strategies below e
        if req != "-" and action != "5b-norecover" and \
                any(inits[f] - before[f] != (f > int(req)) for f in range(n)):
            fails.add("injury")
        if any(inits[e] > inits[e + 1] for e in range(n - 1)):
            fails.add("injury")
        chain = _digest((chain, s, req, action, tuple(x.snap() for x in S), len(axioms)))
        tr.lines.append(StageLine(s, req, action, chain, tuple(sorted(fails))))

    tr.summary = {
        "stages": stages,
        "targets": n,
        "axioms": len(axioms),
        "initializations": inits,
        "p": [st.p for st in S],
        "active": [st.active for st in S],
        "y": [st.y.fingerprint() for st in S],
        "inactive_below_higher_y": unscoped,
    }
    return tr


# ---------------------------------------------------------------------------
# proper-Σ⁰₂ cylinder-cototal degree
#
# Strings are tuples of naturals; A = Nbase(x) collects strings that are not
# initial segments of x.  Tree nodes are words over {"i", "f"} (i = ∞,
# ordered ∞ < f); node ξ works for adversary len(ξ).

@dataclass
class Adversary:
    """A finite (D-approximation, Φ-table, Ψ-table) triple.

    d: change points [(stage, finite set)], first at stage 0;
    phi: axioms (string, F) meaning string ∈ Φ(D) once F ⊆ D;
    psi: axioms (n, G) meaning n ∈ Ψ(A) once G ⊆ A.
    """

    d: list
    phi: list
    psi: list

    def __post_init__(self):
        try:
            d = [(int(t), frozenset(int(x) for x in D)) for t, D in self.d]
            phi = [(tuple(int(x) for x in sig), frozenset(int(x) for x in F)) for sig, F in self.phi]
            psi = [(int(k), frozenset(tuple(int(x) for x in g) for g in G)) for k, G in self.psi]
        except (TypeError, ValueError) as exc:
            raise ValueError(f"malformed adversary table: {exc}") from None
        if not d or d[0][0] != 0:
            raise ValueError("D-approximation must start at stage 0")
        if any(d[i][0] >= d[i + 1][0] for i in range(len(d) - 1)):
            raise ValueError("D-approximation change points must strictly increase")
        if any(x < 0 for _, D in d for x in D) or any(x < 0 for _, F in phi for x in F) \
                or any(k < 0 for k, _ in psi) or any(x < 0 for _, F in phi for x in F):
            raise ValueError("negative numbers in adversary table")
        if any(x < 0 for sig, _ in phi for x in sig) or any(x < 0 for _, G in psi for g in G for x in g):
            raise ValueError("strings must be over ω")
        self.d, self.phi, self.psi = d, phi, psi

    def D(self, s: int) -> frozenset:
        cur = self.d[0][1]
        for t, D in self.d:
            if t > s:
                break
            cur = D
        return cur


def _comparable(a, b) -> bool:
    k = min(len(a), len(b))
    return a[:k] == b[:k]


class _CocylA:
    """A_s: explicit overrides on top of rules "every string incomparable
    with r is in A"."""

    def __init__(self):
        self.over: dict = {}
        self.roots: list = []

    def __contains__(self, t) -> bool:
        if t in self.over:
            return self.over[t]
        return any(not _comparable(t, r) for r in self.roots)

    def add(self, t):
        self.over[t] = True

    def remove(self, t):
        self.over[t] = False

    def add_root(self, r) -> list:
        """Enumerate every string incomparable with r; returns the explicitly
        removed strings this re-enumerates."""
        if r not in self.roots:
            self.roots.append(r)
        back = [t for t, b in self.over.items() if not b and not _comparable(t, r)]
        for t in back:
            del self.over[t]
        return back

    def state(self):
        return (tuple(sorted(self.over.items())), tuple(self.roots))


@dataclass
class _Node:
    step: int = 0          # 0 = not started; otherwise the step being waited on
    sigma: Optional[tuple] = None
    F: frozenset = frozenset()
    G: frozenset = frozenset()
    loops: int = 0


def run_proper_sigma2(stages: int, adversaries: Sequence[Adversary]) -> StageTranscript:
    """Simulate the P_{D,Φ,Ψ} strategies.

    Per visit a node performs at most one wait-step transition; steps 3→4→5
    and 6→7 have no waits between them and run in the same stage.  The
    outcome is ∞ exactly at stages where step 5 runs.  Conflicts the sketch
    leaves open are noted in the action field with a "!" marker:
    ``!declared`` (a removal would drop a declared string; it is skipped)
    and ``!reenum`` (a selection rule re-enumerated a string some strategy
    had removed).
    """
    advs = list(adversaries)
    n = len(advs)
    A = _CocylA()
    declared: set = set()
    chosen: set = set()
    nodes: dict[str, _Node] = {}
    events: list = []          # (stage, initiator, subtree root)
    tr = StageTranscript("proper-sigma2")
    chain = _digest(("proper-sigma2", n))

    def node(xi) -> _Node:
        return nodes.setdefault(xi, _Node())

    def remove(t, notes):
        if t in declared:
            notes.append("!declared")
        else:
            A.remove(t)

    def initialize_right_of(xi, o, s):
        # the subtree below xi^f lies to the right of xi^∞
        if o != "i":
            return
        right = xi + "f"
        events.append((s, xi, right))
        for k in [k for k in nodes if k.startswith(right)]:
            nodes[k] = _Node()

    def init_count(nu) -> int:
        return sum(1 for _, _, r in events if nu.startswith(r))

    def visit(xi, s):
        adv = advs[len(xi)]
        st = node(xi)
        D = adv.D(s)
        notes: list = []
        if st.step == 0:
            # selection: ζ maximal with ζ^∞ ⪯ ξ
            zeta = next((xi[:k] for k in range(len(xi) - 1, -1, -1) if xi[k] == "i"), None)
            base = nodes[zeta].sigma if zeta is not None else ()
            i = 0
            while base + (i,) in chosen or base + (i,) in declared:
                i += 1
            sig = base + (i,)
            chosen.add(sig)
            st.sigma = sig
            if zeta is not None and A.add_root(base):
                notes.append("!reenum")
            for k in range(len(sig)):
                remove(sig[:k], notes)
            A.add(sig)                                   # (1)
            st.step = 2
            return "1", "f", notes
        sig = st.sigma
        if st.step == 2:
            for tau, F in adv.phi:
                if tau == sig and F <= D and sig in A:
                    st.F = F
                    st.step = 3
                    return "2", "f", notes
            return "w2", "f", notes
        if st.step == 3:
            G: set = set()
            for k in sorted(st.F):
                use = next((U for j, U in adv.psi if j == k and all(g in A for g in U)), None)
                if use is None:
                    return "w3", "f", notes
                G |= use
            st.G = frozenset(G)
            declared.update(G - {sig})                   # (4)
            remove(sig, notes)                           # (5)
            st.step = 6
            return "3-5", "i", notes
        if st.step == 6:
            if not st.F <= D:
                A.add(sig)                               # (7)
                st.step = 8
                return "6-7", "f", notes
            return "w6", "f", notes
        if st.step == 8:
            if st.F <= D:
                remove(sig, notes)                       # back to (5)
                st.step = 6
                st.loops += 1
                return "8-5", "i", notes
            return "w8", "f", notes
        raise AssertionError(f"bad step {st.step}")

    for s in range(stages):
        xi = ""
        acts = []
        fails: set = set()
        for depth in range(min(s, n - 1) + 1):
            before = node(xi).step
            action, o, notes = visit(xi, s)
            legal = {0: {"1"}, 2: {"2", "w2"}, 3: {"3-5", "w3"}, 6: {"6-7", "w6"}, 8: {"8-5", "w8"}}
            if action not in legal[before]:
                fails.add("step")
            if (o == "i") != (action in ("3-5", "8-5")):
                fails.add("outcome")
            acts.append(f"{xi or '()'}:{action}" + "".join(notes))
            initialize_right_of(xi, o, s)
            xi += o
        if any(t not in A for t in declared):
            fails.add("declared")
        sigmas = [v.sigma for v in nodes.values() if v.step]
        if len(sigmas) != len(set(sigmas)):
            fails.add("unique")
        # initializations come only from strictly higher priority nodes
        if any(st == s and not (r.startswith(ini) and len(ini) < len(r)) for st, ini, r in events):
            fails.add("injury")
        if any(init_count(k) < init_count(k[:-1]) for k in nodes if k):
            fails.add("injury")
        state = (A.state(), tuple(sorted(declared)),
                 tuple(sorted((k, v.step, v.sigma, tuple(sorted(v.F)), v.loops) for k, v in nodes.items())))
        chain = _digest((chain, s, tuple(acts), state))
        req = xi[:-1] or "()"
        tr.lines.append(StageLine(s, req, ";".join(acts), chain, tuple(sorted(fails))))

    tr.summary = {
        "stages": stages,
        "adversaries": n,
        "A_rules": [list(r) for r in A.roots],
        "A_overrides": {",".join(map(str, t)) or "()": b for t, b in sorted(A.over.items())},
        "declared": sorted(declared),
        "loops": {k or "()": v.loops for k, v in sorted(nodes.items())},
        "steps": {k or "()": v.step for k, v in sorted(nodes.items())},
        "initializations": {k or "()": init_count(k) for k in sorted(nodes)},
    }
    return tr


# ---------------------------------------------------------------------------
# canned inputs used by the CLI and the acceptance suite

def scripted_adversaries(count: int = 3) -> list[Adversary]:
    """Adversary 0 follows steps 2-8 once: Φ(D) puts ⟨0⟩ in with use {5},
    Ψ recovers 5 from {⟨0⟩, ⟨1⟩}, D drops 5 at stage 6 and restores it at
    stage 10.  Further adversaries never enumerate their σ_ξ."""
    out = [Adversary(d=[(0, {5}), (6, set()), (10, {5})],
                     phi=[((0,), {5})],
                     psi=[(5, {(0,), (1,)})])]
    for i in range(1, count):
        out.append(Adversary(d=[(0, {i})], phi=[((9, i), {i})], psi=[(i, {(9,)})]))
    return out


def default_targets() -> list[Target]:
    """Three approximations converging to 13/64; with X the even numbers
    revealed at pace 25 they drive steps (1), (3b), (4a) and (5b)."""
    return [Target.parse("lim:13/64") for _ in range(3)]


DEFAULT_X = SetSpec("", "10")
DEFAULT_PACE = 25
