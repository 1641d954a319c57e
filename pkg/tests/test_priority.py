from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from edtopo.enumop import SetSpec
from edtopo.priority import (
    DEFAULT_PACE, DEFAULT_X, ZERO, Adversary, Target, XApproximation,
    alpha_catches_up, default_targets, run_no_minimal, run_proper_sigma2, scripted_adversaries,
)


# sparse dyadics

def _dyadic(bits):
    d = ZERO
    for k in bits:
        d = d.add_pow(k)
    return d


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 40), max_size=12), st.fractions(0, 3, max_denominator=64))
def test_dyadic_exact(bits, q):
    d = _dyadic(bits)
    value = sum((Fraction(1, 2 ** k) for k in bits), Fraction(0))
    assert d.to_fraction() == value
    assert d.cmp_frac(q) == (value > q) - (value < q)


@given(st.lists(st.integers(0, 30), max_size=8), st.lists(st.integers(0, 30), max_size=8))
def test_dyadic_fingerprint_and_order(a, b):
    x, y = _dyadic(a), _dyadic(b)
    if x.to_fraction() == y.to_fraction():
        assert x.fingerprint() == y.fingerprint() and x.cmp(y) == 0
    else:
        assert x.cmp(y) == (1 if x.to_fraction() > y.to_fraction() else -1)


def test_alpha_catches_up():
    y = _dyadic([2])  # 1/4
    assert alpha_catches_up(Fraction(1, 4), y, 1)
    assert alpha_catches_up(Fraction(1, 8), y, 1)       # 1/4 - 1/8
    assert not alpha_catches_up(Fraction(1, 9), y, 1)


# X approximations

def test_x_approximation_convention():
    for spec in [SetSpec("", "10"), SetSpec("0110", "01"), SetSpec("", "1")]:
        xa = XApproximation(spec, pace=3)
        for s in range(1, 200):
            assert xa.convention_ok(s)


def test_targets():
    t = Target.parse("steps:0,1/4,1/2")
    assert [t(s) for s in range(5)] == [0, Fraction(1, 4), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)]
    lim = Target.parse("lim:1/2")
    assert lim(0) == 0 and lim(1) == Fraction(1, 4)
    with pytest.raises(ValueError, match="decreases"):
        Target.parse("steps:1,0").check(3)
    with pytest.raises(ValueError):
        run_no_minimal(5, DEFAULT_X, ["steps:1/2,1/4"])


# no-minimal construction

def test_no_minimal_zero_stages():
    tr = run_no_minimal(0, DEFAULT_X, default_targets())
    assert tr.lines == []
    assert tr.summary["axioms"] == 0
    assert tr.summary["p"] == [0, 0, 0]


def test_no_minimal_steady_x_increments_p():
    tr = run_no_minimal(200, SetSpec("", "1"), ["lim:1/2"])
    assert tr.ok
    assert set(tr.actions()) == {"1", "4a"}
    assert tr.summary["p"] == [tr.actions().count("4a")]


def test_no_minimal_small_runs_ok():
    for targets in (["lim:1/3"], ["1/5", "lim:1/2"], ["steps:0,1/8,1/4", "lim:3/4", "1/16"]):
        tr = run_no_minimal(500, SetSpec("01", "110"), targets, pace=3)
        assert tr.ok, tr.failures()[:3]


def test_no_minimal_default_run():
    a = run_no_minimal(10 ** 4, DEFAULT_X, default_targets(), pace=DEFAULT_PACE)
    b = run_no_minimal(10 ** 4, DEFAULT_X, default_targets(), pace=DEFAULT_PACE)
    assert a.to_tsv() == b.to_tsv()
    assert a.ok, a.failures()[:3]
    acts = set(a.actions())
    assert {"1", "3b", "4a", "5b-stay"} <= acts
    # finite injury: each strategy is initialized a bounded number of times
    inits = a.summary["initializations"]
    assert inits[0] == 0 and all(i < 10 ** 4 for i in inits)


# proper Σ2 construction

def test_proper_sigma2_zero_stages():
    tr = run_proper_sigma2(0, scripted_adversaries())
    assert tr.lines == [] and tr.summary["loops"] == {}


def test_proper_sigma2_idle_adversary():
    idle = [Adversary(d=[(0, {1})], phi=[((9, 1), {1})], psi=[(1, {(9,)})])]
    tr = run_proper_sigma2(100, idle)
    assert tr.ok
    acts = tr.actions()
    assert acts[0] == "():1" and set(acts[1:]) == {"():w2"}
    assert tr.summary["loops"] == {"()": 0}


def test_proper_sigma2_loop_once():
    tr = run_proper_sigma2(300, scripted_adversaries())
    assert tr.ok
    assert tr.summary["loops"]["()"] == 1
    root = [a.split(";")[0] for a in tr.actions()]
    order = [a for a in root if a in ("():3-5", "():6-7", "():8-5")]
    assert order == ["():3-5", "():6-7", "():8-5"]


def test_proper_sigma2_default_run():
    a = run_proper_sigma2(10 ** 4, scripted_adversaries())
    b = run_proper_sigma2(10 ** 4, scripted_adversaries())
    assert a.to_tsv() == b.to_tsv()
    assert a.ok, a.failures()[:3]


def test_transcript_format():
    tr = run_proper_sigma2(3, scripted_adversaries())
    line = tr.to_tsv().splitlines()[0].split("\t")
    assert line[0] == "0" and len(line[3]) == 16 and line[4] == "invariants=OK"


@pytest.mark.parametrize("bad", [
    dict(d=[], phi=[], psi=[]),
    dict(d=[(1, {0})], phi=[], psi=[]),
    dict(d=[(0, {0}), (0, {1})], phi=[], psi=[]),
    dict(d=[(0, {-1})], phi=[], psi=[]),
    dict(d=[(0, {0})], phi=[(("a",), {0})], psi=[]),
])
def test_malformed_adversaries(bad):
    with pytest.raises(ValueError):
        Adversary(**bad)
