"""Exhaustive checks of BN-pair statements in GL_n(F_q) for tiny n and prime q.

B is the upper triangular subgroup, W the permutation matrices (w e_j =
e_{w(j)}).  Every group element is enumerated once; matrices are encoded as
integers in base q so that batches of products can be looked up with numpy.
"""
from __future__ import annotations

import time
from itertools import product

import numpy as np

from .coxeter import _as_subset, preset
from .partial import TwistSetting, _reach, i_set, pi_map


def bruhat_label(g, q: int) -> tuple[int, ...]:
    """The permutation w with g in B w B (0-based images), by pivoting.

    Pivots are taken at the lowest available row of each column; rows above
    the pivot are cleared with row operations (left multiplication by B) and
    entries to its right with column operations (right multiplication by B).
    """
    A = np.array(g, dtype=np.int64) % q
    n = A.shape[0]
    perm = [0] * n
    used = set()
    for j in range(n):
        rows = [i for i in range(n) if i not in used and A[i, j]]
        if not rows:
            raise ValueError("singular matrix")
        i = max(rows)
        perm[j] = i
        used.add(i)
        inv = pow(int(A[i, j]), -1, q)
        for r in range(i):
            if A[r, j]:
                A[r] = (A[r] - A[r, j] * inv * A[i]) % q
        for c in range(j + 1, n):
            if A[i, c]:
                A[:, c] = (A[:, c] - A[i, c] * inv * A[:, j]) % q
    return tuple(perm)


def perm_matrix(w) -> np.ndarray:
    n = len(w)
    P = np.zeros((n, n), dtype=np.int64)
    for j, i in enumerate(w):
        P[i, j] = 1
    return P


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


class FiniteGroupCtx:
    """GL_n(F_q) with all elements, their Bruhat labels and the Borel subgroup."""

    def __init__(self, n: int, q: int):
        if q not in (2, 3):
            raise ValueError("only q in {2, 3} is supported")
        if not 1 <= n <= 3:
            raise ValueError("only 1 <= n <= 3 is supported")
        self.n, self.q = n, q
        allm = np.array(list(product(range(q), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)
        det = np.rint(np.linalg.det(allm)).astype(np.int64) % q
        self.mats = allm[det != 0]
        self.size = len(self.mats)
        self._pow = q ** np.arange(n * n, dtype=np.int64).reshape(n, n)
        self.codes = self.encode(self.mats)
        self._lookup = np.full(q ** (n * n), -1, dtype=np.int64)
        self._lookup[self.codes] = np.arange(self.size)
        self.weyl = preset(f"A{n - 1}")
        self.perms = [self.weyl.to_permutation(w) for w in self.weyl.elements()]
        self._perm_id = {p: k for k, p in enumerate(self.perms)}
        self.labels = np.array([self._perm_id[bruhat_label(g, q)] for g in self.mats], dtype=np.int64)
        upper = np.all(np.tril(self.mats, -1) == 0, axis=(1, 2))
        self.borel = np.flatnonzero(upper)
        self.inverses = self._inverses()

    def __repr__(self):
        return f"FiniteGroupCtx(GL_{self.n}(F_{self.q}), |G|={self.size})"

    def encode(self, mats) -> np.ndarray:
        return np.tensordot(np.asarray(mats) % self.q, self._pow, axes=([-2, -1], [0, 1]))

    def index(self, mats) -> np.ndarray:
        idx = self._lookup[self.encode(mats)]
        if np.any(idx < 0):
            raise ValueError("matrix outside GL_n(F_q)")
        return idx

    def _inverses(self) -> np.ndarray:
        # adjugate / det, exact for these tiny integer matrices
        m = self.mats.astype(float)
        det = np.rint(np.linalg.det(m)).astype(np.int64)
        adj = np.rint(np.linalg.inv(m) * det[:, None, None]).astype(np.int64)
        dinv = np.array([pow(int(d) % self.q, -1, self.q) for d in det], dtype=np.int64)
        return (adj * dinv[:, None, None]) % self.q

    def mul(self, a, b) -> np.ndarray:
        return np.matmul(a, b) % self.q

    def label_of(self, mats) -> np.ndarray:
        """Bruhat-label ids of a batch of matrices."""
        return self.labels[self.index(mats)]

    def perm_of_label(self, k: int) -> tuple[int, ...]:
        return self.perms[k]

    def levi(self, J) -> np.ndarray:
        """Indices of the block-diagonal Levi subgroup L_J."""
        J = _as_subset(J)
        block = [0] * self.n
        for k in range(1, self.n):
            block[k] = block[k - 1] if k in J else block[k - 1] + 1
        mask = np.array([[block[r] != block[c] for c in range(self.n)] for r in range(self.n)])
        ok = np.all(self.mats[:, mask] == 0, axis=1)
        return np.flatnonzero(ok)


def bruhat_label_of(ctx: FiniteGroupCtx, g) -> tuple[int, ...]:
    return bruhat_label(g, ctx.q)


def verify_axioms(ctx: FiniteGroupCtx) -> dict:
    """Axiom (4), both multiplication rules for B s_i B w B and B w B s_i B, and cell sizes."""
    W = ctx.weyl
    B = ctx.mats[ctx.borel]
    violations = []
    for w_el in W.elements():
        w = W.to_permutation(w_el)
        Pw = perm_matrix(w)
        for i in sorted(W.generators):
            s = perm_matrix(W.to_permutation(W.simple(i)))
            sw = ctx._perm_id[W.to_permutation(W.lmul(i, w_el))]
            ws = ctx._perm_id[W.to_permutation(W.rmul(w_el, i))]
            wid = ctx._perm_id[w]
            left = set(ctx.label_of(ctx.mul(ctx.mul(s, B), Pw)).tolist())
            right = set(ctx.label_of(ctx.mul(ctx.mul(Pw, B), s)).tolist())
            if not left <= {sw, wid}:
                violations.append({"rule": "axiom4", "i": i, "w": W.reduced_word(w_el)})
            exp_left = {sw} if W.lmul(i, w_el).length > w_el.length else {sw, wid}
            exp_right = {ws} if W.rmul(w_el, i).length > w_el.length else {ws, wid}
            if left != exp_left:
                violations.append({"rule": "left", "i": i, "w": W.reduced_word(w_el)})
            if right != exp_right:
                violations.append({"rule": "right", "i": i, "w": W.reduced_word(w_el)})
    counts = np.bincount(ctx.labels, minlength=len(ctx.perms))
    cells_ok = ctx.size == gl_order(ctx.n, ctx.q) and all(
        counts[k] == len(B) * ctx.q ** W.from_permutation(p).length for k, p in enumerate(ctx.perms)
    )
    if not cells_ok:
        violations.append({"rule": "cells"})
    return {"pass": not violations, "violations": violations,
            "group_order": ctx.size, "borel_order": len(B)}


def _sigma_setup(ctx: FiniteGroupCtx, J, sigma):
    """Return (P, delta, L_J indices) after checking sigma is admissible."""
    J = _as_subset(J)
    W = ctx.weyl
    n = ctx.n
    P = perm_matrix(tuple(range(n)) if sigma in (None, "identity") else tuple(sigma))
    Pinv = P.T
    delta = {}
    simple_perm = {i: W.to_permutation(W.simple(i)) for i in W.generators}
    for j in J:
        image = tuple(int(np.argmax(col)) for col in (P @ perm_matrix(simple_perm[j]) @ Pinv).T)
        match = [k for k, p in simple_perm.items() if p == image]
        if not match:
            raise ValueError("sigma does not send simple reflections of L_J to simple reflections")
        delta[j] = match[0]
    Jp = frozenset(delta.values())
    L = ctx.levi(J)
    Lp = ctx.levi(Jp)
    conj = ctx.index(ctx.mul(ctx.mul(P, ctx.mats[L]), Pinv))
    if set(conj.tolist()) != set(Lp.tolist()):
        raise ValueError("sigma does not map L_J onto L_J'")
    borel = set(ctx.borel.tolist())
    BL = [k for k in L.tolist() if k in borel]
    BLp = {k for k in Lp.tolist() if k in borel}
    if set(ctx.index(ctx.mul(ctx.mul(P, ctx.mats[BL]), Pinv)).tolist()) != BLp:
        raise ValueError("sigma does not send B cap L_J to B cap L_J'")
    return P, delta, L


def _orbits(ctx: FiniteGroupCtx, P, L):
    """Orbit id of every element under l . g = sigma(l) g l^-1."""
    Lm = ctx.mats[L]
    sL = ctx.mul(ctx.mul(P, Lm), P.T)
    Linv = ctx.inverses[L]
    orbit_id = np.full(ctx.size, -1, dtype=np.int64)
    k = 0
    for g in range(ctx.size):
        if orbit_id[g] >= 0:
            continue
        members = ctx.index(ctx.mul(ctx.mul(sL, ctx.mats[g]), Linv))
        orbit_id[members] = k
        k += 1
    return orbit_id


def partial_conj_cover(ctx: FiniteGroupCtx, J, sigma=None) -> dict:
    """Check G = U_{w in W^J, x in W_I(J,w,delta)} L_J ._sigma B w x B element by element."""
    J = _as_subset(J)
    P, delta, L = _sigma_setup(ctx, J, sigma)
    W = ctx.weyl
    ts = TwistSetting(W, J, delta)
    allowed = set()
    for w in W.coset_reps(J):
        for x in W.parabolic_elements(i_set(ts, w)):
            allowed.add(ctx._perm_id[W.to_permutation(w * x)])
    orbit_id = _orbits(ctx, P, L)
    n_orb = int(orbit_id.max()) + 1
    labels_by_orbit = [set() for _ in range(n_orb)]
    for g in range(ctx.size):
        labels_by_orbit[orbit_id[g]].add(int(ctx.labels[g]))
    covered_orbits = [bool(s & allowed) for s in labels_by_orbit]
    bad = [g for g in range(ctx.size) if not covered_orbits[orbit_id[g]]]
    # the base point pi(label(g)) should cover the orbit of g
    pi_hits = 0
    for g in range(ctx.size):
        v = W.from_permutation(ctx.perms[ctx.labels[g]])
        w = pi_map(ts, v)
        fibre = {ctx._perm_id[W.to_permutation(w * x)] for x in W.parabolic_elements(i_set(ts, w))}
        pi_hits += bool(labels_by_orbit[orbit_id[g]] & fibre)
    return {
        "pass": not bad,
        "covered": ctx.size - len(bad),
        "total": ctx.size,
        "orbits": n_orb,
        "delta": {str(k): v for k, v in sorted(delta.items())},
        "pi_consistent": pi_hits,
        "counterexamples": [ctx.mats[g].tolist() for g in bad[:5]],
    }


def lemma1_check(ctx: FiniteGroupCtx, J, sigma=None) -> dict:
    """Equal saturations for ~-related pairs; non-terminal cells fall into shorter ones."""
    J = _as_subset(J)
    P, delta, L = _sigma_setup(ctx, J, sigma)
    W = ctx.weyl
    ts = TwistSetting(W, J, delta)
    orbit_id = _orbits(ctx, P, L)
    touched = {k: set() for k in range(len(ctx.perms))}
    for g in range(ctx.size):
        touched[int(ctx.labels[g])].add(int(orbit_id[g]))
    elements = W.elements()
    key = {w: ctx._perm_id[W.to_permutation(w)] for w in elements}
    failures = []
    pairs = 0
    nonterminal = 0
    for w in elements:
        reach = _reach(ts, w, monotone=True)
        for v in reach:
            if v.length == w.length and v != w:
                pairs += 1
                if touched[key[w]] != touched[key[v]]:
                    failures.append({"part": 1, "w": W.reduced_word(w), "v": W.reduced_word(v)})
        if any(v.length < w.length for v in reach):
            nonterminal += 1
            lower = set().union(*(touched[key[v]] for v in elements if v.length < w.length))
            if not touched[key[w]] <= lower:
                failures.append({"part": 2, "w": W.reduced_word(w)})
    return {"pass": not failures, "approx_pairs": pairs, "nonterminal": nonterminal,
            "failures": failures[:10]}


def bn_verify(n: int, q: int, J, sigma=None) -> dict:
    """All three checks with timings, as printed by the command line."""
    timings = {}
    t0 = time.perf_counter()
    ctx = FiniteGroupCtx(n, q)
    timings["setup"] = time.perf_counter() - t0
    out = {"n": n, "q": q, "J": sorted(_as_subset(J))}
    for name, fn in (("axioms", lambda: verify_axioms(ctx)),
                     ("cover", lambda: partial_conj_cover(ctx, J, sigma)),
                     ("lemma1", lambda: lemma1_check(ctx, J, sigma))):
        t = time.perf_counter()
        out[name] = fn()
        timings[name] = time.perf_counter() - t
    out["timings"] = {k: round(v, 4) for k, v in timings.items()}
    return out
