import random
from fractions import Fraction

import pytest

from edtopo.enumop import finset_code, pair, rational_code, string_code, tup
from edtopo.ordinals import INF
from edtopo.spaces import (
    AmaxPoint, ArensPower, CocylinderPoint, Golomb, LowerReal, OmegaHatPower, Periodic,
    SpecError, TelophasePower, nbase, nbase_member, parse_point, random_point,
)

TAGS = ["lower-real", "hilbert", "omega-hat", "telophase", "double-origin", "irr-lattice",
        "arens", "roy", "cofinite", "cocylinder", "golomb", "golomb-power", "amax"]


def test_lower_real():
    p = LowerReal(Fraction(1, 3))
    assert nbase_member(p, rational_code(0))
    assert not nbase_member(p, rational_code(Fraction(1, 2)))


def test_telophase_inf():
    p = TelophasePower(Periodic([0], {0: INF}))
    for m in range(30):
        assert nbase_member(p, tup(0, 1, m))
    assert not nbase_member(p, tup(0, 2, 1))


def test_cocylinder_zero_sequence():
    p = CocylinderPoint(Periodic([0]))
    assert nbase_member(p, string_code((1,)))
    assert not nbase_member(p, string_code((0,)))


def test_golomb_five():
    p = Golomb(5)
    assert nbase_member(p, pair(2, 3))
    assert not nbase_member(p, pair(1, 3))
    assert not nbase_member(p, pair(2, 4))  # not coprime


def test_omega_hat_inf():
    p = OmegaHatPower(Periodic([0], {0: INF}))
    for k in range(30):
        assert nbase_member(p, tup(1, 0, k))
        assert not nbase_member(p, tup(0, 0, k))


def test_amax_schemes():
    p = AmaxPoint(("len", 1))
    assert nbase_member(p, finset_code({string_code(()), string_code((0, 0))}))
    assert not nbase_member(p, finset_code({string_code((3,))}))
    q = AmaxPoint(("sigma", (0,), 2))
    assert not nbase_member(q, finset_code({string_code((0,))}))
    assert not nbase_member(q, finset_code({string_code((1, 4))}))
    assert nbase_member(q, finset_code({string_code((0, 4))}))
    with pytest.raises(ValueError):
        AmaxPoint(("sigma", (0, 1), 2))


def test_arens_rejects_mismatched_pair():
    from edtopo.ordinals import LINF, Ord
    with pytest.raises(ValueError):
        ArensPower(Periodic([(LINF, Ord(0, 2, 0))]))


@pytest.mark.parametrize("tag", TAGS)
def test_nbase_sound_and_complete(tag):
    for seed in range(20):
        p = random_point(tag, random.Random(seed))
        got = {a for a in nbase(p).take(10 ** 4) if a is not None}
        assert all(nbase_member(p, a) for a in got)
        missing = [a for a in range(p.complete_below) if nbase_member(p, a) and a not in got]
        assert missing == []


@pytest.mark.parametrize("tag", [t for t in TAGS if t not in ("lower-real", "golomb", "amax")])
def test_spec_text_roundtrip(tag):
    for seed in range(5):
        p = random_point(tag, random.Random(seed))
        q = parse_point(p.to_text())
        assert all(p.member(a) == q.member(a) for a in range(2000))


def test_single_point_specs():
    assert parse_point("space: golomb\nvalue = 7\n").value == 7
    assert parse_point("space: lower-real\nvalue = 1/3\n").value == Fraction(1, 3)
    assert parse_point("space: lower-real\ndyadic = 0(1)\n").value == Fraction(1, 2)
    a = parse_point("space: amax\nantichain = sigma [0] 2\n")
    assert a.scheme == ("sigma", (0,), 2)


def test_spec_errors_carry_line_numbers():
    with pytest.raises(SpecError, match="line 2"):
        parse_point("space: telophase\ncoord x = 3\ndefault = periodic(0)\n")
    with pytest.raises(SpecError, match="line 3"):
        parse_point("space: telophase\ncoord 0 = 3\ndefault = periodic(banana)\n")
    with pytest.raises(SpecError, match="missing"):
        parse_point("coord 0 = 3\n")
    with pytest.raises(SpecError, match="unknown space"):
        parse_point("space: moon\n")


def test_hausdorff_points_separate():
    # distinct cocylinder and Golomb points disagree on some small atom
    rng = random.Random(5)
    for _ in range(20):
        a, b = rng.sample(range(1, 60), 2)
        pa, pb = Golomb(a), Golomb(b)
        assert any(pa.member(c) and not pb.member(c) for c in range(20000))
