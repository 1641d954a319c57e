import random

import pytest

from edtopo.enumop import SetSpec, oracle_stream, pair, string_code, string_decode, tup
from edtopo.ordinals import INF, Ord, is_leaf
from edtopo.reductions import (
    BOT0, BOT1, REDUCTIONS, CoDCEAData, DCodCEAData, HalfGraphData, SepData, StallError,
    arens_codcea, arens_decode, baire_cocyl, build_arens_point,
    build_double_origin_point, build_irrlattice_point, build_roy_point, build_telophase_point,
    codcea_f, codcea_sep, codcea_to_halfgraph, cocyl_power_to_cofinite, collapse_g, ctp_embed,
    dcodcea_g, doubleorigin_codcea, doubleorigin_decode, doubleorigin_to_telograph,
    halfgraph_plus, halfgraph_to_doubled, irrlattice_codcea, irrlattice_decode,
    random_dcodcea, recover_prefix, roy_decode, roy_halfgraph, separated_doubled_to_codcea,
    separated_identities, telograph_collapse, telophase_g, telophase_sep, telophase_telograph,
    total_one_telograph,
)
from edtopo.spaces import (
    INF_STAR, ORIGIN, ORIGIN_STAR, CocylinderPoint, Periodic, TelophasePower, nbase_member,
    random_point,
)

K, PULLS = 50, 20000


@pytest.mark.parametrize("name", sorted(REDUCTIONS))
def test_roundtrip_families(name):
    for seed in range(20):
        rt = REDUCTIONS[name](random.Random(seed)).roundtrip(K, PULLS)
        assert rt.forward.unsound == [] and rt.backward.unsound == [], (seed, rt)
        assert rt.forward.missing == [] and rt.backward.missing == [], (seed, rt)


@pytest.mark.parametrize("name", ["telophase<->telograph", "irrlattice<->codcea", "roy<->halfgraph"])
def test_composite_returns_source(name):
    for seed in range(5):
        rep = REDUCTIONS[name](random.Random(seed)).composite(K, PULLS)
        assert rep.ok, (seed, rep)


# telophase

def test_telophase_g():
    x = TelophasePower(Periodic([INF_STAR], {0: INF, 1: 3}))
    g = telophase_g(x)
    assert g.prefix(4) == [0, 5, 1, 1]
    data = telophase_telograph(x).extras["data"]
    assert data.target(2 * pair(1, 5) + 1)
    assert not data.target(2 * pair(1, 5))


def test_collapse_b3():
    g = Periodic([7], {0: 0, 1: 1, 2: 2, 3: 5})
    gt = collapse_g(g, 3)
    assert gt.prefix(12) == [0, 1, 1, 1, 0, 1, 1, 1, 0, 4, 4, 4]
    rt = telograph_collapse(g, 3).roundtrip(K, PULLS)
    assert rt.ok


def test_collapse_b1_total():
    g = Periodic([2, 0, 5])
    member = total_one_telograph(g)
    # exactly one of ⟨n,m,0⟩, ⟨n,m,1⟩ is in G
    for n in range(6):
        for m in range(6):
            assert member(tup(n, m, 0)) != member(tup(n, m, 1))
    rp = telograph_collapse(g, 1)
    assert rp.roundtrip(K, PULLS).ok
    comp = rp.extras["complement"].stream(oracle_stream(member)).collect(PULLS)
    assert all(not member(c) for c in comp)


def test_collapse_b2_identity():
    rp = telograph_collapse(Periodic([3, 0]), 2)
    assert rp.name == "telograph<->telograph"
    assert rp.roundtrip(K, PULLS).ok


def test_telophase_sep_first_seen():
    x = TelophasePower(Periodic([2, INF_STAR], {0: INF}))
    rp = telophase_sep(x)
    out = rp.forward.stream(x.nbase()).collect(5000)
    assert 4 * 0 + 2 in out and 4 * 0 + 3 not in out
    # x(2) = 2: the X atom 2⟨2,2⟩ leads back to ⟨2,0,2⟩
    back = rp.backward.stream(rp.target_stream()).collect(5000)
    assert tup(2, 0, 2) in back


def test_build_telophase_point():
    X, A, B = SetSpec("", "01"), SetSpec("1", "0"), SetSpec("01", "0")
    x = build_telophase_point(X, A, B)
    assert [x[i] for i in range(6)] == [0, INF, 1, INF_STAR, 0, 2]
    assert telophase_sep(x).roundtrip(K, PULLS).ok


# double origin

def test_double_origin_decode_examples():
    for seed in range(10):
        z = random_point("double-origin", random.Random(seed))
        d = doubleorigin_decode(z)
        for n in range(8):
            assert (n in d.A) == (z[n] == ORIGIN)
            assert (n in d.B) == (z[n] == ORIGIN_STAR)
            assert nbase_member(z, tup(n, 1, 1, 1)) == (n in d.A or n in d.P)


def test_double_origin_builder():
    d = DCodCEAData(SetSpec("", "01"), SetSpec("1", "0"), SetSpec(), SetSpec("01", "0"), SetSpec())
    z = build_double_origin_point(d)
    assert z[1] == ORIGIN
    dd = doubleorigin_decode(z)
    # odd coordinates carry A, B, P, N
    for n in range(20):
        assert (2 * n + 1 in dd.A) == (n in d.A)
        assert (2 * n + 1 in dd.P) == (n in d.P)
        assert (2 * n + 1 in dd.B) == (2 * n + 1 in dd.N) == False
    assert doubleorigin_codcea(z).roundtrip(K, PULLS).ok


def test_dcodcea_g_cases():
    d = DCodCEAData(SetSpec(), SetSpec("1", "0"), SetSpec("01", "0"), SetSpec("001", "0"), SetSpec("0001", "0"))
    g = dcodcea_g(d)
    assert g[0] == 1       # 0 ∈ A
    assert g[4] == 4       # 2 ∈ P, stage 2
    assert g[3] == 1       # 1 ∈ B
    assert g[7] == 5       # 3 ∈ N
    assert g[8] == g[9] == 0


def test_doubleorigin_to_telograph_chain():
    z = random_point("double-origin", random.Random(3))
    do, dt, tg = doubleorigin_to_telograph(z)
    mid = do.forward.stream(z.nbase())
    out = dt.forward.stream(mid).collect(PULLS)
    assert out and all(tg.target(a) for a in out)
    assert [a for a in range(K) if tg.target(a) and a not in out] == []


# irregular lattice, co-d-CEA, Sep

def test_irrlattice_builder():
    d = CoDCEAData(SetSpec("", "10"), SetSpec("1", "0"), SetSpec("01", "0"))
    z = build_irrlattice_point(d)
    assert z[1] == (INF, INF) and z[3] == (1, 1) and z[5] == (2, INF)
    dd = irrlattice_decode(z)
    assert 1 in dd.A and 3 in dd.P and 5 not in dd.P
    assert irrlattice_codcea(z).roundtrip(K, PULLS).ok


def test_irrlattice_n_in_a_or_p():
    for seed in range(10):
        z = random_point("irr-lattice", random.Random(seed))
        d = irrlattice_decode(z)
        for n in range(8):
            hit = any(nbase_member(z, tup(2, n, a, b)) for a in range(4) for b in range(4))
            if n not in d.A and n not in d.P:
                assert not hit


def test_codcea_sep_race():
    d = SepData(SetSpec("", "01"), SetSpec("1", "0"), SetSpec("01", "0"))
    rp = codcea_sep(d)
    out = rp.forward.stream(oracle_stream(d.source)).collect(4000)
    assert 4 * 0 + 2 in out and 4 * 0 + 3 not in out   # 0 ∈ A ⇒ 0 ∈ C
    assert 4 * 1 + 3 in out and 4 * 1 + 2 not in out   # 1 ∈ B ⇒ 1 ∉ C
    back = rp.backward.stream(rp.target_stream()).collect(4000)
    co_a = {c // 3 for c in back if c % 3 == 2}
    assert 0 not in co_a
    assert set(range(1, 200)) <= co_a
    assert all(d.source(c) for c in back)


# Arens

def test_arens_decode_l_jl():
    for seed in range(10):
        z = random_point("arens", random.Random(seed))
        d = arens_decode(z)
        for n in range(6):
            hit = any(nbase_member(z, tup(0, n, j)) for j in range(12))
            assert hit == (n in d.L or n in d.J_L)


def test_arens_builder():
    from edtopo.reductions import random_arens_data
    d = random_arens_data(random.Random(4))
    z = build_arens_point(d)
    for n in range(10):
        if n in d.Y:
            assert z[2 * n + 1] == (z[2 * n + 1][0], Ord(0, 0, 1))
        if d.in_M(n):
            assert z[2 * n][1] == Ord(n + 1, 0, 0)
    assert arens_codcea(z).roundtrip(K, PULLS).ok


# Roy and halfgraphs

def test_roy_halfgraph_atom_equivalence():
    for seed in range(10):
        z = random_point("roy", random.Random(seed))
        f = roy_decode(z).f
        for n in range(6):
            for k in range(6):
                assert halfgraph_plus(f, 2 * pair(n, k) + 1) == nbase_member(z, tup(2, n, k))


def test_roy_builder_roundtrip():
    f = Periodic([1], {0: BOT0, 1: 0, 2: 4, 3: BOT1})
    hd = HalfGraphData(f, SetSpec("", "10"))
    z = build_roy_point(hd)
    assert is_leaf(z[4][1])  # f(2) = 4 is even
    back = roy_decode(z)
    assert [back.f[2 * n] for n in range(4)] == [BOT0, 0, 4, BOT1]
    assert roy_halfgraph(z).roundtrip(K, PULLS).ok


def test_codcea_to_halfgraph():
    d = CoDCEAData(SetSpec("", "01"), SetSpec("1", "0"), SetSpec("01", "0"))
    f = codcea_f(d)
    assert f.prefix(3) == [BOT0, 0, 1]
    for n in range(30):
        assert halfgraph_plus(f, 2 * pair(n, 0)) == (n in d.A or n in d.P)
    hd, rp = codcea_to_halfgraph(d)
    assert rp.roundtrip(K, PULLS).ok


def test_halfgraph_doubled_one_finite_value():
    hd = HalfGraphData(Periodic([BOT0], {2: 3}), SetSpec("", "1"))
    fam, rp = halfgraph_to_doubled(hd)
    assert rp.roundtrip(K, PULLS).ok


# separated doubled co-d-CEA

def test_separated_trivial_case():
    d = DCodCEAData(SetSpec("", "01"), SetSpec("1", "0"), SetSpec("01", "0"), SetSpec(), SetSpec())
    H_P = SetSpec("00", "1")
    sf = separated_doubled_to_codcea(d, H_P, SetSpec())
    for n in range(100):
        assert (n in sf.Z) == (n in d.A or not (n in d.A or n in d.B))
    assert separated_identities(d, sf, SetSpec()) == []


def test_separated_random_and_rejects():
    rng = random.Random(0)
    for _ in range(20):
        d = random_dcodcea(rng)
        # pick H_P = c̄(A∪B) ∖ N, H_N = N on a finite window
        H_P = {n for n in range(400) if d.outside(n) and n not in d.N}
        H_N = {n for n in range(400) if n in d.N}
        sf = separated_doubled_to_codcea(d, H_P, H_N, bound=400)
        assert separated_identities(d, sf, H_N, bound=400) == []
    d = DCodCEAData(SetSpec(), SetSpec(), SetSpec(), SetSpec("1", "0"), SetSpec())
    with pytest.raises(ValueError):
        separated_doubled_to_codcea(d, set(), set(range(10)), bound=10)


# embeddings

def test_ctp_embed_all_ones():
    x = ctp_embed(SetSpec("", "1"))
    assert x[0] == INF and x[1] == 1
    y = ctp_embed(SetSpec("110", "0"))
    assert y[0] == 2 and [y[i] for i in range(1, 5)] == [1, 1, 0, 0]
    assert ctp_embed("1*")[0] == INF_STAR


def test_x_check_interleave():
    xs = [CocylinderPoint(Periodic([0])), CocylinderPoint(Periodic([1]))]
    xc = cocyl_power_to_cofinite(xs)
    assert xc[2] == string_code((0, 1, 0, 1))
    assert xc[0] == string_code(())


def test_baire_cocylinder():
    f = Periodic([0])
    up, down, member = baire_cocyl(f, lambda n: 2)
    name = oracle_stream(member, candidates=(string_code((0,) * i) for i in range(6)))
    cocyl = up.stream(name).collect(2000)
    for c in cocyl:
        s = string_decode(c)
        assert s != (0,) * len(s)
    cocyl_name = oracle_stream(lambda c: c in cocyl or False, candidates=sorted(cocyl))
    assert recover_prefix(cocyl_name, lambda n: 2, 3) == (0, 0, 0)


def test_recover_prefix_stalls_without_bound():
    with pytest.raises(StallError):
        recover_prefix(oracle_stream(lambda c: False, candidates=range(50)), lambda n: 3, 2, budget=200)
