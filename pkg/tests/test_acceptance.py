"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (the summary lines are
also printed at the end of any pytest run that includes this module).
"""
import functools
import statistics
import time
from itertools import combinations, permutations, product
from pathlib import Path

from conftest import ACCEPTANCE
from oracles import (
    affine_bfs,
    affine_min_in_finite_coset,
    all_orbits,
    bruhat_table,
    delta_map,
    finite_lengths,
    is_min_coset,
    twisted_orbit,
)
from partialconj.adlv import AdlvQuery, adlv_dim, adlv_nonempty, lowest_cell_member, translation_regular
from partialconj.affine import (
    ExtAffineElement,
    NewtonDatum,
    _act,
    affine_group,
    good_rep,
    is_distinguished,
    newton_to_element,
)
from partialconj.bnpair import FiniteGroupCtx, lemma1_check, partial_conj_cover, verify_axioms
from partialconj.coxeter import diagram_automorphisms, preset
from partialconj.partial import (
    TwistSetting,
    check_path,
    fiber,
    fiber_twist,
    i_set,
    leq_J_delta,
    pi_map,
    reduce_to_min,
    twisted_classes,
)
from partialconj.pieces import (
    compactification_closure,
    compactification_pieces,
    group_piece_closure,
    group_piece_codim,
    specialization_fiber,
    specialize,
)

ROOT = Path(__file__).resolve().parents[1]


def gate(number, limit=None):
    """Record PASS/FAIL for a criterion; ``limit`` bounds the whole test's wall time."""
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs) or ""
            except BaseException as exc:
                ACCEPTANCE[number] = (False, f"{type(exc).__name__}: {str(exc)[:160]}")
                print(f"criterion {number}: FAIL {ACCEPTANCE[number][1]}")
                raise
            elapsed = time.perf_counter() - t0
            ok = limit is None or elapsed < limit
            limit_txt = f" (limit {limit}s)" if limit else ""
            ACCEPTANCE[number] = (ok, f"{detail} [{elapsed:.3f}s{limit_txt}]")
            print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {ACCEPTANCE[number][1]}")
            assert ok, f"criterion {number} took {elapsed:.3f}s, limit {limit}s"
        return wrapper
    return deco


def median_runtime(fn, repeats=25):
    fn()  # warm caches shared by all calls (group presets)
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def subsets(S):
    S = sorted(S)
    return [frozenset(c) for r in range(len(S) + 1) for c in combinations(S, r)]


def all_settings(W):
    out = []
    for J in subsets(W.generators):
        for Jp in subsets(W.generators):
            for d in diagram_automorphisms(W, J, Jp):
                out.append(TwistSetting(W, J, d))
    return out


def nonincreasing_reach(ts, w):
    """Independent BFS of w -> w' with raw multiplications."""
    W = ts.group
    lengths = finite_lengths(W)
    seen, stack = {w}, [w]
    while stack:
        v = stack.pop()
        for i in ts.J:
            u = W.simple(ts.delta[i]) * v * W.simple(i)
            if lengths[u] <= lengths[v] and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


# -- 1, 2: two reductions in S4 ------------------------------------------------------

@gate(1)
def test_criterion_01_pi_s4_J12():
    W = preset("A3")

    def compute():
        ts = TwistSetting(W, {1, 2})
        w = W.from_word([2, 3, 2, 1, 2])
        target, path = reduce_to_min(ts, w)
        return ts, w, W.min_coset_rep(target, ts.J), target, path

    ts, w, base, target, path = compute()
    assert W.reduced_word(base) == [1, 2, 3]
    assert check_path(ts, w, path) == target  # raises on a length increase
    assert len(path) <= 6
    t = median_runtime(compute)
    assert t < 1e-3, f"median runtime {t * 1e3:.3f} ms"
    return f"pi = s1 s2 s3, path {path}, median {t * 1e3:.3f} ms (limit 1 ms)"


@gate(2)
def test_criterion_02_pi_s4_J13():
    W = preset("A3")

    def compute():
        ts = TwistSetting(W, {1, 3})
        w = W.from_word([2, 1, 3, 2, 1])
        base = pi_map(ts, w)
        return ts, base, i_set(ts, base)

    ts, base, iset = compute()
    assert W.reduced_word(base) == [2, 1, 3, 2]
    assert iset == {1, 3}
    t = median_runtime(compute)
    assert t < 1e-3, f"median runtime {t * 1e3:.3f} ms"
    return f"pi = s2 s1 s3 s2, I = {{1,3}}, median {t * 1e3:.3f} ms (limit 1 ms)"


# -- 3: partition into fibres and the orbit count in each fibre ---------------------------

@gate(3, limit=10)
def test_criterion_03_partition():
    checked = 0
    for name in ("A1", "A2", "A3"):
        W = preset(name)
        elements = set(finite_lengths(W))
        for ts in all_settings(W):
            orbits = all_orbits(W, ts.J, ts.delta)
            owner = {v: k for k, o in enumerate(orbits) for v in o}
            union = set()
            for w in W.coset_reps(ts.J):
                f = fiber(ts, w)
                assert not (union & f), "fibres overlap"
                union |= f
                # the fibre is a union of orbits; count them against twisted classes of W_I
                ids = {owner[v] for v in f}
                assert set().union(*(orbits[k] for k in ids)) == f
                I = i_set(ts, w)
                tau = fiber_twist(ts, w)
                brute = {twisted_orbit(W, delta_map(W, tau, I), v)
                         for v in delta_map(W, {k: k for k in I}, I)}
                assert len(ids) == len(brute) == len(twisted_classes(W, I, tau))
                checked += 1
            assert union == elements, "fibres do not cover W"
    return f"{checked} fibres over S2, S3, S4 with every J and twist"


# -- 4: reduction to a minimal element w'x ------------------------------------------------

@gate(4, limit=5)
def test_criterion_04_reduction():
    W = preset("A3")
    cases = 0
    for J in subsets(W.generators):
        ts = TwistSetting(W, J)
        for w in W.elements():
            target, path = reduce_to_min(ts, w)
            assert check_path(ts, w, path) == target
            base = W.min_coset_rep(target, J)
            assert base == pi_map(ts, w)
            assert W.in_parabolic(base.inverse() * target, i_set(ts, base))
            if w.length == base.length:
                assert base in nonincreasing_reach(ts, w) and w in nonincreasing_reach(ts, base)
            cases += 1
    assert cases == 24 * 8
    return f"{cases} (w, J) cases"


# -- 5: Bruhat-minimal = length-minimal, and "some or any" --------------------------------

@gate(5, limit=10)
def test_criterion_05_minimal_elements():
    W = preset("A3")
    below = bruhat_table(W)
    lengths = finite_lengths(W)
    counterexamples = 0
    for ts in all_settings(W):
        reps = set(W.coset_reps(ts.J))
        orbit_of = {}
        for o in all_orbits(W, ts.J, ts.delta):
            for v in o:
                orbit_of[v] = o
        mins = {}
        for w in reps:
            o = orbit_of[w]
            m = min(lengths[v] for v in o)
            by_length = {v for v in o if lengths[v] == m}
            by_bruhat = {v for v in o if not any(u != v and u in below[v] for u in o)}
            counterexamples += by_length != by_bruhat
            mins[w] = by_length
        for w in reps:
            for wp in reps:
                answers = {any(v in below[vp] for v in mins[w]) for vp in mins[wp]}
                counterexamples += len(answers) != 1
                counterexamples += answers != {leq_J_delta(ts, w, wp)}
    assert counterexamples == 0
    return "zero counterexamples over S4, every J and twist"


# -- 6: closure posets --------------------------------------------------------------------

@gate(6, limit=10)
def test_criterion_06_closures():
    W = preset("A3")
    for ts in all_settings(W):
        reps = W.coset_reps(ts.J)
        closure = {w: group_piece_closure(ts, w) for w in reps}
        for w, cl in closure.items():
            assert w in cl
            for v in cl:
                assert closure[v] <= cl, "closure is not transitively closed"
                if v != w:
                    assert group_piece_codim(ts, v) > group_piece_codim(ts, w)
    S3 = preset("A2")
    below = bruhat_table(S3)
    lengths = finite_lengths(S3)
    recs = compactification_pieces(S3)
    cl = {(r.J, r.w): compactification_closure(S3, r.J, r.w) for r in recs}
    codim = {(r.J, r.w): r.codim for r in recs}
    for (J, w), c in cl.items():
        o = next(o for o in all_orbits(S3, J, {j: j for j in J}) if w in o)
        m = min(lengths[v] for v in o)
        mins = [v for v in o if lengths[v] == m]
        expected = {(K, v) for K in subsets(J) for v in S3.coset_reps(K)
                    if any(u in below[v] for u in mins)}
        assert c == expected
        for b in c:
            assert cl[b] <= c
            if b != (J, w):
                assert codim[b] > codim[(J, w)]
    return "S4 group pieces (all J, twists) and S3 compactification pieces"


# -- 7: the finite BN-pair simulator --------------------------------------------------------

@gate(7, limit=60)
def test_criterion_07_bn_pairs():
    runs = 0
    for n, q in [(2, 2), (2, 3), (3, 2)]:
        ctx = FiniteGroupCtx(n, q)
        rep = verify_axioms(ctx)
        assert rep["pass"], rep["violations"]
        for J in subsets(range(1, n)):
            cover = partial_conj_cover(ctx, J)
            assert cover["pass"], cover["counterexamples"]
            lemma = lemma1_check(ctx, J)
            assert lemma["pass"], lemma["failures"]
            runs += 1
    ctx = FiniteGroupCtx(3, 2)
    assert partial_conj_cover(ctx, {1}, (1, 2, 0))["pass"]
    assert lemma1_check(ctx, {1}, (1, 2, 0))["pass"]
    return f"GL2(F2), GL2(F3), GL3(F2): axioms and {runs} (group, J) cover/lemma runs, plus a twisted sigma"


# -- 8: affine length ---------------------------------------------------------------------

@gate(8, limit=30)
def test_criterion_08_affine_length():
    total = 0
    for n in (2, 3):
        G = affine_group(n)
        bfs = affine_bfs(G, 8)
        mismatches = sum(1 for x, d in bfs.items() if x.length != d)
        assert mismatches == 0
        # completeness: every element of length <= 8 with kappa in [0, n) is reached
        box = range(-10, 11)
        found = set()
        for p in permutations(range(n)):
            for t in product(box, repeat=n):
                if 0 <= sum(t) < n:
                    x = ExtAffineElement(p, t)
                    if x.length <= 8:
                        found.add(x)
        assert found == set(bfs)
        total += len(bfs)
    return f"{total} elements, zero mismatches"


# -- 9: specialization ----------------------------------------------------------------------

@gate(9, limit=10)
def test_criterion_09_specialization():
    checked = 0
    for n in (2, 3):
        W = preset(f"A{n - 1}")
        lengths = finite_lengths(W)
        w0 = W.longest_element()
        images = {}
        for lam in product(range(4, -5, -1), repeat=n):
            if any(lam[i] < lam[i + 1] for i in range(n - 1)):
                continue
            I_lam = frozenset(i for i in range(1, n) if lam[i - 1] == lam[i])
            neg = tuple(-a for a in reversed(lam))
            J = frozenset(i for i in range(1, n) if neg[i - 1] == neg[i])
            for x in W.coset_reps(I_lam):
                z = ExtAffineElement(W.to_permutation(x), tuple(-a for a in _act(W.to_permutation(x), lam)))
                coset = affine_min_in_finite_coset(z)
                assert z.length == min(y.length for y in coset), "x eps^-lam is not in W~^S"
                got = specialize(z)
                assert got == (J, w0 * x * w0)
                assert is_min_coset(W, got[1], J, lengths)
                images.setdefault(got, set()).add(z)
                checked += 1
        for J in subsets(W.generators):
            for x in W.coset_reps(J):
                assert set(specialization_fiber(J, x, 4)) == images.get((J, x), set())
    return f"{checked} elements x eps^-lam, all fibres match"


# -- 10: good elements, distinguished classes and the dimension formula -----------------------

def _good(x, k=6):
    return all((x ** j).length == j * x.length for j in range(1, k + 1))


def _compositions(n):
    if n == 0:
        yield ()
        return
    for a in range(1, n + 1):
        for rest in _compositions(n - a):
            yield (a,) + rest


@gate(10, limit=60)
def test_criterion_10_affine_coherence():
    G = affine_group(2)
    conjugators = G.elements_up_to(6, kappas=range(-2, 3))
    classes = 0
    for x in G.elements_up_to(6, kappas=range(-1, 3)):
        has_good = any(_good(g * x * g.inverse()) for g in conjugators)
        assert is_distinguished(x) == has_good, x
        classes += 1
    data = 0
    for n in (1, 2, 3):
        for comp in _compositions(n):
            choices = [[(ni, k, kp) for k in range(-2, 3) for kp in range(ni)] for ni in comp]
            for blocks in product(*choices):
                d = NewtonDatum(blocks)
                rep = good_rep(d)
                assert _good(rep)
                assert rep.length == min(y.length for y in affine_min_in_finite_coset(rep))
                b = newton_to_element(d)
                assert any(ExtAffineElement(p, (0,) * n) * b * ExtAffineElement(p, (0,) * n).inverse() == rep
                           for p in permutations(range(n)))
                data += 1
    queries = 0
    basic = {}
    for k in range(-3, 3):
        basic.setdefault(2 * k, []).extend([NewtonDatum(((1, k, 0), (1, k, 0))), NewtonDatum(((2, k, 0),))])
        basic.setdefault(2 * k + 1, []).append(NewtonDatum(((2, k, 1),)))
    for w in G.elements_up_to(10, kappas=range(-2, 3)):
        if not lowest_cell_member(w) or not translation_regular(w):
            continue
        for b in basic[sum(w.trans)]:
            q = AdlvQuery(w, b)
            if adlv_nonempty(q):
                assert adlv_dim(q) >= 0  # raises on odd or negative values
                queries += 1
    assert queries > 0
    return f"{classes} elements, {data} Newton data, {queries} dimension queries"


# -- 11: documented non-reproductions ------------------------------------------------------

@gate(11)
def test_criterion_11_documented_scope():
    readme = " ".join((ROOT / "README.md").read_text(encoding="utf-8").lower().split())
    for phrase in ("point count", "closure of sigma-conjugacy classes", "borel-moore homology"):
        assert phrase in readme, f"README does not document: {phrase}"
    return "README lists what is not computed"
