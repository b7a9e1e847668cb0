"""Index sets, codimensions and closure posets of G-stable and K-stable pieces.

Everything here is combinatorial: a piece is a record (kind, J, w) and the
closure relation is computed from the partial order <=_{J,delta}.  The
geometric facts (smoothness, semi-normality, cellular decompositions) are
not computed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .affine import (
    ExtAffineElement,
    _act,
    affine_group,
    perm_compose,
    perm_inverse,
)
from .bruhat import PosetSlice
from .coxeter import CoxeterError, _as_subset, preset
from .partial import TwistSetting, fiber_twist, i_set, leq_J_delta, twisted_classes

GROUP_PIECE = "group-piece"
COMPACTIFICATION = "compactification"
AFFINE_K = "affine-K"


def _word_label(word) -> str:
    return "[" + ",".join(map(str, word)) + "]"


def _affine_label(x: ExtAffineElement) -> str:
    return f"{_word_label(a + 1 for a in x.perm)};{_word_label(x.trans)}"


@dataclass(frozen=True)
class PieceRecord:
    """One stratum.  ``codim`` is None for K-stable pieces (infinite-dimensional ambient)."""

    kind: str
    J: frozenset | None
    w: object
    codim: int | None
    annotations: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def id(self) -> str:
        if self.kind == AFFINE_K:
            return f"K:w={_affine_label(self.w)}"
        tag = "Z" if self.kind == GROUP_PIECE else "X"
        return f"{tag}:J={_word_label(sorted(self.J))}:w={_word_label(self.w.group.reduced_word(self.w))}"

    def to_json(self, inverse: bool = False) -> dict:
        """``inverse=True`` exports w^-1, the orientation of R_{J,sigma} . B w^-1 B."""
        out = {"id": self.id, "kind": self.kind, "codim": self.codim}
        if self.kind == AFFINE_K:
            out["w"] = self.w.to_json()
        else:
            w = self.w.inverse() if inverse else self.w
            out["J"] = sorted(self.J)
            out["w"] = w.group.reduced_word(w)
            out["orientation"] = "w^-1" if inverse else "w"
        for k, v in self.annotations.items():
            out[k] = sorted(v) if isinstance(v, frozenset) else v
        return out


def _subsets(S):
    S = sorted(S)
    return [frozenset(c) for r in range(len(S) + 1) for c in combinations(S, r)]


# -- G-stable pieces of (G x G)/R_{J,sigma} -----------------------------------

def group_piece_codim(ts: TwistSetting, w) -> int:
    g = ts.group
    return (g.longest_element(ts.J) * g.longest_element()).length - w.length


def group_pieces(ts: TwistSetting) -> list[PieceRecord]:
    """One record per w in W^J, annotated with the number of diagonal orbits."""
    g = ts.group
    out = []
    for w in g.coset_reps(ts.J, "right"):
        I = i_set(ts, w)
        n_orbits = len(twisted_classes(g, I, fiber_twist(ts, w)))
        out.append(PieceRecord(GROUP_PIECE, ts.J, w, group_piece_codim(ts, w),
                               {"iset": I, "orbits": n_orbits}))
    return out


def group_piece_closure(ts: TwistSetting, w) -> set:
    """{w' in W^J : w' <=_{J,delta} w}."""
    g = ts.group
    if not g.is_min_coset_rep(w, ts.J, "right"):
        raise CoxeterError("closure needs w in W^J")
    return {v for v in g.coset_reps(ts.J, "right") if leq_J_delta(ts, v, w)}


def group_piece_poset(ts: TwistSetting) -> PosetSlice:
    records = group_pieces(ts)
    nodes = [r.w for r in records]
    labels = {r.w: r.id for r in records}
    return PosetSlice.from_relation(nodes, lambda a, b: leq_J_delta(ts, a, b), labels.__getitem__)


# -- pieces of the wonderful compactification --------------------------------

def compactification_pieces(system) -> list[PieceRecord]:
    out = []
    S = system.generators
    for J in _subsets(S):
        for w in system.coset_reps(J, "right"):
            out.append(PieceRecord(COMPACTIFICATION, J, w, w.length + len(S - J)))
    return out


def compactification_closure(system, J, w) -> set[tuple[frozenset, object]]:
    """{(K, w') : K in J, w' in W^K, w <=_{J,id} w'} using the general-element form."""
    J = _as_subset(J)
    ts = TwistSetting(system, J)
    if not system.is_min_coset_rep(w, J, "right"):
        raise CoxeterError("closure needs w in W^J")
    out = set()
    for K in _subsets(J):
        for v in system.coset_reps(K, "right"):
            if leq_J_delta(ts, w, v, general=True):
                out.add((K, v))
    return out


def compactification_poset(system) -> PosetSlice:
    records = compactification_pieces(system)
    nodes = [(r.J, r.w) for r in records]
    closures = {}

    def below(a, b):
        # a lies in the closure of b
        if b not in closures:
            closures[b] = compactification_closure(system, *b)
        return a in closures[b]

    ids = {(r.J, r.w): r.id for r in records}
    return PosetSlice.from_relation(nodes, below, ids.__getitem__)


# -- K-stable pieces of the loop group -------------------------------------------

def k_pieces(n: int, length_bound: int, kappas=None) -> list[PieceRecord]:
    """All w in W~^S with l(w) <= bound (kappa in ``kappas``), annotated with I(S, w, id)."""
    G = affine_group(n)
    ts = TwistSetting(G, G.finite_generators)
    out = []
    for w in G.elements_up_to(length_bound, kappas):
        if G.is_in_WS(w):
            out.append(PieceRecord(AFFINE_K, None, w, None, {"iset": i_set(ts, w), "length": w.length}))
    return out


def k_piece_closure(w: ExtAffineElement, length_bound: int | None = None, kappas=None) -> set:
    """{w' in W~^S, l(w') <= bound : w' <=_{S,id} w}."""
    G = w.group
    if not G.is_in_WS(w):
        raise CoxeterError("closure needs w in W~^S")
    bound = w.length if length_bound is None else length_bound
    ts = TwistSetting(G, G.finite_generators)
    if kappas is None:
        kappas = [sum(w.trans)]
    return {r.w for r in k_pieces(G.n, bound, kappas) if leq_J_delta(ts, r.w, w)}


def k_piece_poset(n: int, length_bound: int, kappas=None) -> PosetSlice:
    G = affine_group(n)
    ts = TwistSetting(G, G.finite_generators)
    records = k_pieces(n, length_bound, kappas)
    ids = {r.w: r.id for r in records}
    return PosetSlice.from_relation([r.w for r in records], lambda a, b: leq_J_delta(ts, a, b),
                                    ids.__getitem__)


# -- specialization from K-stable pieces to the wonderful compactification ---------

def _I_of(lam) -> frozenset[int]:
    """I(lam) = {i : <lam, alpha_i> = 0} for GL_n coweights."""
    return frozenset(i for i in range(1, len(lam)) if lam[i - 1] == lam[i])


def is_dominant(lam) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def decompose_WS(x: ExtAffineElement):
    """Write x in W~^S as y * eps^{-lam}; returns (y as a permutation, lam)."""
    y = x.perm
    lam = tuple(-a for a in _act(perm_inverse(y), x.trans))
    return y, lam


def specialize(x: ExtAffineElement):
    """(J, y) with s(K_x) = X_{J,y}: J = I(-w0 lam), y = w0 x w0."""
    G = x.group
    n = G.n
    if not G.is_in_WS(x):
        raise CoxeterError("specialize needs x in W~^S")
    y, lam = decompose_WS(x)
    W = preset(f"A{n - 1}")
    yw = W.from_permutation(y)
    I_lam = _I_of(lam)
    if not is_dominant(lam) or not W.is_min_coset_rep(yw, I_lam, "right"):
        raise CoxeterError("element is not of the form x eps^-lam with lam dominant, x in W^I(lam)")
    neg_w0_lam = tuple(-a for a in reversed(lam))
    J = _I_of(neg_w0_lam)
    if J != W.star_subset(I_lam):
        raise AssertionError("I(-w0 lam) differs from I(lam)*")
    w0 = W.longest_element()
    image = w0 * yw * w0
    if not W.is_min_coset_rep(image, J, "right"):
        raise AssertionError("w0 x w0 is not in W^{I(-w0 lam)}")
    return J, image


def specialization_fiber(J, x, lam_bound: int) -> list[ExtAffineElement]:
    """{w0 x w0 eps^-lam : lam dominant, I(lam) = J*, |lam_i| <= bound} for x in W^J (type A)."""
    W = x.system
    n = W.rank + 1
    J = _as_subset(J)
    if not W.is_min_coset_rep(x, J, "right"):
        raise CoxeterError("x must lie in W^J")
    w0 = W.longest_element()
    y = W.to_permutation(w0 * x * w0)
    target = W.star_subset(J)
    out = []
    for lam in product(range(lam_bound, -lam_bound - 1, -1), repeat=n):
        if is_dominant(lam) and _I_of(lam) == target:
            trans = tuple(-a for a in _act(y, lam))
            out.append(ExtAffineElement(y, trans))
    return out
