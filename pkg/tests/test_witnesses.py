import itertools

import pytest

from edtopo.enumop import finset_code, string_code, string_decode
from edtopo.spaces import AmaxPoint, DOPt
from edtopo.witnesses import (
    DOMAIN_ERROR, UNDETERMINED, GolombEmbedding, GolombInfeasible, SurjectionTable,
    amax_W, amax_check, amax_complement_name, amax_cototal_operator, antichain_embed,
    check_table, gdelta_cototal_operator, golomb_decode, golomb_embed, golomb_image_oracle,
    golomb_oracle, qp_preimage_check, qp_surjection_eval,
)


# surjections

def test_telophase_surjection():
    assert qp_surjection_eval("telophase", [0, 0, 0, 1]) == 2
    assert qp_surjection_eval("telophase", [1, 0, 0]) is UNDETERMINED
    assert qp_surjection_eval("telophase", [1, 0, 1]) == 1
    assert qp_surjection_eval("telophase", [2]) is DOMAIN_ERROR


def test_doubleorigin_surjection():
    assert qp_surjection_eval("doubleorigin", [2]) is UNDETERMINED
    assert qp_surjection_eval("doubleorigin", [2, 0, 0, 0]) is UNDETERMINED
    # after a leading 2 only the 𝟎 limit or 1⌢m shapes remain; 3 fits neither
    assert qp_surjection_eval("doubleorigin", [2, 3, 0, 0]) is DOMAIN_ERROR
    assert qp_surjection_eval("doubleorigin", [0, 4, 0, 0, 1]) == DOPt(4, "w", 2)


def test_budget_truncates_word():
    assert qp_surjection_eval("telophase", [0, 0, 0, 1], budget=3) is UNDETERMINED


def test_unknown_table():
    with pytest.raises(ValueError):
        SurjectionTable("moon")


@pytest.mark.parametrize("tag", ["telophase", "doubleorigin", "arens", "irrlattice"])
def test_tables_prefix_monotone(tag):
    assert check_table(tag, bound=5) == []


def test_prefix_monotone_random_words():
    table = SurjectionTable("doubleorigin")
    for w in itertools.product(range(3), repeat=6):
        prev = UNDETERMINED
        for i in range(len(w) + 1):
            v = table.eval(w[:i])
            if prev is DOMAIN_ERROR:
                assert v is DOMAIN_ERROR
            elif prev is not UNDETERMINED and v is not DOMAIN_ERROR:
                # extensions either leave the domain or keep the answer
                assert v == prev
            prev = v


@pytest.mark.parametrize("tag", ["telophase", "doubleorigin"])
def test_preimage_displays(tag):
    rep = qp_preimage_check(tag, bound=20)
    assert rep.ok, rep.failures[:5]
    assert rep.checked > 0


def test_telophase_literal_display_counts():
    # the ray displays as printed miss the words 10^k1 with k >= n
    rep = qp_preimage_check("telophase", bound=20)
    assert rep.literal_mismatches == {"[n,inf]": 210, "[n,inf*]": 210}


# Golomb

def test_golomb_examples():
    assert golomb_embed([]) == 1
    assert golomb_embed([0, 0, 0]) == 1
    assert golomb_embed([1]) == 3
    assert golomb_embed([1, 1]) == 33


def test_golomb_parameters():
    g = GolombEmbedding()
    assert [g.n(s) for s in range(3)] == [0, 2, 11]
    assert [g.r(s) for s in range(3)] == [2, 30, 7420738134810]
    assert g.P(3) == 7420738134871
    assert all(g.inequality(s) for s in range(4))
    with pytest.raises(GolombInfeasible):
        g.r(3)


def test_golomb_decode_short_words():
    for length in range(4):
        for bits in itertools.product((0, 1), repeat=length):
            x = golomb_embed(bits)
            assert golomb_decode(golomb_oracle(x), length) == list(bits)


def test_golomb_symbolic_oracle_agrees():
    for bits in itertools.product((0, 1), repeat=3):
        x = golomb_embed(bits)
        sym = golomb_image_oracle(bits)
        for v in (2, 3, 5, 7, 31, 97):
            for a in range(1, v + 1):
                assert sym(a, v) == golomb_oracle(x)(a, v)


def test_golomb_long_words_infeasible():
    with pytest.raises(GolombInfeasible):
        golomb_decode(golomb_image_oracle([1, 0, 1, 1]), 4)


def test_golomb_decode_rejects_non_image():
    with pytest.raises(ValueError):
        golomb_decode(lambda a, v: False, 2)


# maximal antichains

def test_antichain_embed():
    p = antichain_embed(2)
    assert p.member(finset_code([string_code((0,))]))
    assert not p.member(finset_code([string_code((0, 0))]))


def test_cototal_operator_waits_for_witness():
    op = amax_cototal_operator()
    target = finset_code([string_code((0,))])
    before = op.finite({finset_code([string_code((1, 0))])})
    after = op.finite({finset_code([string_code((0, 0))])})
    assert target not in before
    assert target in after


def test_cototal_root_antichain():
    op = amax_cototal_operator()
    out = op.finite({finset_code([string_code(())])})
    for s in [(0,), (1,), (0, 0)]:
        assert finset_code([string_code(s)]) in out


@pytest.mark.parametrize("scheme", [("len", 0), ("len", 2), ("len", 3),
                                    ("sigma", (), 1), ("sigma", (0,), 3), ("sigma", (1, 0), 4)])
def test_amax_cototal_matches_oracle(scheme):
    rep = amax_check(AmaxPoint(scheme))
    assert rep.ok, rep


def test_complement_name_sound():
    p = AmaxPoint(("sigma", (0,), 2))
    for a in amax_complement_name(p).take(3000):
        assert a is None or not p.member(a)


def test_gdelta_empty_hypothesis():
    op = gdelta_cototal_operator([(4, set()), (5, {1})])
    assert op.finite(set()) == {4}
    assert op.finite({1, 2}) == {4, 5}


def test_gdelta_monotone():
    W = [(e, {e % 3, e % 5}) for e in range(30)]
    op = gdelta_cototal_operator(W)
    prev = set()
    for k in range(6):
        cur = op.finite(set(range(k)))
        assert prev <= cur
        prev = cur


def test_gdelta_w_agrees_with_amax_operator():
    W = list(amax_W(limit=10))
    gd = gdelta_cototal_operator(W)
    am = amax_cototal_operator()
    for scheme in [("len", 1), ("sigma", (0,), 2)]:
        p = AmaxPoint(scheme)
        inputs = {finset_code([c]) for c in range(10) if p.in_antichain(string_decode(c))}
        a = {d for d in gd.finite(inputs) if d < 10}
        b = {d for d in am.finite(inputs) if d < 10}
        assert a == b
