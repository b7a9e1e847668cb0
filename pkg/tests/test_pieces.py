from itertools import combinations

import pytest

from partialconj.affine import ExtAffineElement, affine_group, identity, translation
from partialconj.coxeter import CoxeterError, preset
from partialconj.partial import TwistSetting, i_set
from partialconj.pieces import (
    AFFINE_K,
    COMPACTIFICATION,
    GROUP_PIECE,
    compactification_closure,
    compactification_pieces,
    compactification_poset,
    decompose_WS,
    group_piece_closure,
    group_piece_codim,
    group_piece_poset,
    group_pieces,
    k_piece_closure,
    k_piece_poset,
    k_pieces,
    specialization_fiber,
    specialize,
)

from oracles import affine_min_in_finite_coset, all_orbits, bruhat_table, finite_lengths, parabolic

S3, S4 = preset("A2"), preset("A3")


def subsets(S):
    S = sorted(S)
    return [frozenset(c) for r in range(len(S) + 1) for c in combinations(S, r)]


# -- G-stable pieces -------------------------------------------------------------

def test_group_pieces_s4_J12():
    ts = TwistSetting(S4, {1, 2})
    recs = group_pieces(ts)
    assert len(recs) == 4
    assert sorted(r.codim for r in recs) == [0, 1, 2, 3]
    for r in recs:
        assert r.codim == 3 - r.w.length
        assert r.kind == GROUP_PIECE
    assert recs[0].id == "Z:J=[1,2]:w=[]"


def test_group_pieces_extremes():
    full = group_pieces(TwistSetting(S4, {1, 2, 3}))
    assert [(r.w, r.codim) for r in full] == [(S4.identity, 0)]
    assert full[0].annotations["orbits"] == 5  # conjugacy classes of S4
    empty = group_pieces(TwistSetting(S4, set()))
    assert len(empty) == 24
    assert all(r.codim == 6 - r.w.length for r in empty)


def test_orbit_annotation_counts_orbits_in_fibre():
    W = S4
    for J in subsets(W.generators):
        ts = TwistSetting(W, J)
        orbits = all_orbits(W, J, ts.delta)
        for r in group_pieces(ts):
            fibre_orbits = [o for o in orbits if any(
                W.min_coset_rep(v, J) == r.w and
                W.in_parabolic(r.w.inverse() * v, i_set(ts, r.w)) for v in o)]
            assert r.annotations["orbits"] == len(fibre_orbits)


def test_group_piece_closure_examples():
    ts = TwistSetting(S4, {1, 2})
    assert group_piece_closure(ts, S4.identity) == {S4.identity}
    top = max(S4.coset_reps(ts.J), key=lambda w: w.length)
    assert group_piece_closure(ts, top) == set(S4.coset_reps(ts.J))
    assert group_piece_closure(ts, S4.simple(3)) == {S4.identity, S4.simple(3)}
    with pytest.raises(CoxeterError):
        group_piece_closure(ts, S4.simple(1))


def test_group_piece_closure_by_brute_force():
    below = bruhat_table(S4)
    lengths = finite_lengths(S4)
    for J in subsets(S4.generators):
        ts = TwistSetting(S4, J)
        orbits = all_orbits(S4, J, ts.delta)
        mins = {}
        for o in orbits:
            m = min(lengths[v] for v in o)
            for v in o:
                mins[v] = {u for u in o if lengths[u] == m}
        reps = S4.coset_reps(J)
        for w in reps:
            top = next(iter(mins[w]))
            expected = {v for v in reps if any(u in below[top] for u in mins[v])}
            assert group_piece_closure(ts, w) == expected


def test_group_piece_poset_dot():
    P = group_piece_poset(TwistSetting(S4, {1, 2}))
    assert P.is_partial_order()
    dot = P.to_dot()
    assert dot.count("->") == 3  # a chain of four pieces


def test_orientation_flag():
    ts = TwistSetting(S4, {1, 2})
    r = [r for r in group_pieces(ts) if r.w.length == 2][0]
    data = r.to_json(inverse=True)
    assert data["orientation"] == "w^-1"
    assert S4.from_word(data["w"]) == r.w.inverse()
    assert r.to_json()["w"] == S4.reduced_word(r.w)


# -- wonderful compactification -----------------------------------------------------

def test_compactification_counts():
    for W in (S3, S4):
        recs = compactification_pieces(W)
        n = len(W.elements())
        assert len(recs) == sum(n // len(parabolic(W, J)) for J in subsets(W.generators))
        for r in recs:
            assert r.kind == COMPACTIFICATION
            assert r.codim == r.w.length + len(W.generators - r.J)
    opens = [r for r in compactification_pieces(S4) if r.codim == 0]
    assert len(opens) == 1 and opens[0].J == S4.generators


def test_compactification_closure_examples():
    everything = {(r.J, r.w) for r in compactification_pieces(S3)}
    assert compactification_closure(S3, S3.generators, S3.identity) == everything
    w0 = S3.longest_element()
    assert compactification_closure(S3, set(), w0) == {(frozenset(), w0)}


def test_compactification_closure_s3_J1_s2():
    # brute force: K subset of {1}, w' in W^K, some minimal v of the W_{1}-orbit of s2 below w'
    below = bruhat_table(S3)
    orbit = {S3.identity * S3.simple(2), S3.simple(1) * S3.simple(2) * S3.simple(1)}
    m = min(v.length for v in orbit)
    mins = {v for v in orbit if v.length == m}
    expected = {(K, v) for K in subsets({1}) for v in S3.coset_reps(K)
                if any(u in below[v] for u in mins)}
    assert compactification_closure(S3, {1}, S3.simple(2)) == expected
    assert len(expected) == 6


@pytest.mark.parametrize("W", [S3, S4], ids=["A2", "A3"])
def test_compactification_closure_transitive_and_graded(W):
    recs = compactification_pieces(W)
    closures = {(r.J, r.w): compactification_closure(W, r.J, r.w) for r in recs}
    codim = {(r.J, r.w): r.codim for r in recs}
    for a, cl in closures.items():
        assert a in cl
        for b in cl:
            assert closures[b] <= cl
            if b != a:
                assert codim[b] > codim[a]


def test_compactification_poset():
    P = compactification_poset(S3)
    assert P.is_partial_order()
    assert len(P) == 13


# -- K-stable pieces ----------------------------------------------------------------

def test_k_pieces_n2_bound3():
    recs = k_pieces(2, 3)
    ws = [r.w for r in recs]
    G = affine_group(2)
    # brute force: filter all elements by minimality in the finite coset
    expected = [x for x in G.elements_up_to(3)
                if x.length == min(y.length for y in affine_min_in_finite_coset(x))]
    assert set(ws) == set(expected)
    assert identity(2) in ws and G.tau in ws
    assert all(r.codim is None and r.kind == AFFINE_K for r in recs)
    assert [r.id for r in recs][:2] == ["K:w=[1,2];[0,0]", "K:w=[2,1];[1,0]"]


def test_k_piece_closure_and_poset():
    P = k_piece_poset(2, 4)
    assert P.is_partial_order()
    for r in k_pieces(2, 4):
        cl = k_piece_closure(r.w)
        assert r.w in cl
        assert all(v.length <= r.w.length for v in cl)
    with pytest.raises(CoxeterError):
        k_piece_closure(affine_group(2).simple(1))


# -- specialization ---------------------------------------------------------------------

def test_specialize_examples():
    assert specialize(identity(3)) == (frozenset({1, 2}), preset("A2").identity)
    J, y = specialize(translation((-1, 0)))
    assert J == frozenset() and y == preset("A1").identity
    with pytest.raises(CoxeterError):
        specialize(affine_group(2).simple(1))


def test_decompose_WS():
    x = ExtAffineElement((1, 0), (1, 0))
    y, lam = decompose_WS(x)
    assert y == (1, 0) and lam == (0, -1)


def _WS_elements(n, bound):
    """Brute force: every (perm, trans) with |trans_i| <= bound minimal in its finite coset."""
    from itertools import permutations, product
    out = []
    for p in permutations(range(n)):
        for t in product(range(-bound, bound + 1), repeat=n):
            x = ExtAffineElement(p, t)
            if x.length == min(y.length for y in affine_min_in_finite_coset(x)):
                out.append(x)
    return out


def test_specialization_fibres_n2():
    W = preset("A1")
    elems = _WS_elements(2, 2)
    for J in subsets(W.generators):
        for x in W.coset_reps(J):
            fib = set(specialization_fiber(J, x, 2))
            assert fib == {z for z in elems if specialize(z) == (J, x)}
