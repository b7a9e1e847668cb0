"""Nonemptiness and dimension of affine Deligne-Lusztig varieties X_w(b), GL_n, b basic.

Only the closed formula is evaluated: for w in the lowest two-sided cell,
X_w(b) is nonempty iff kappa(w) = kappa(b) and eta(w) has full support, and
for regular translation part

    dim X_w(b) = (l(w) + l(eta(w)) - def(b)) / 2.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .affine import (
    ExtAffineElement,
    NewtonDatum,
    defect,
    eta,
    kappa,
    perm_length,
    perm_support,
    proper_subsets,
)


class AdlvHypothesisError(ValueError):
    """The query violates a hypothesis of the dimension formula."""


@dataclass(frozen=True)
class AdlvQuery:
    w: ExtAffineElement
    b: NewtonDatum

    def __post_init__(self):
        if self.w.n != self.b.n:
            raise ValueError("w and b must have the same rank n")

    @property
    def n(self) -> int:
        return self.w.n


def _longest_lengths(G):
    return {K: G.longest_element(K).length for K in proper_subsets(G)}


def lowest_cell_member(w: ExtAffineElement) -> bool:
    """w = x * w_K * z with lengths adding, W_K finite and l(w_K) = l(w_0).

    Scans every right factor y of w (w = x y, lengths adding); w_K is a left
    factor of y exactly when K is contained in the left descent set of y.
    """
    G = w.group
    n = G.n
    top = n * (n - 1) // 2
    if n < 2 or w.length < top:
        return False
    Ks = [K for K, l in _longest_lengths(G).items() if l == top]
    seen = {w}
    queue = deque([w])
    while queue:
        y = queue.popleft()
        D = G.left_descents(y)
        if any(K <= D for K in Ks):
            return True
        for i in D:
            z = G.lmul(i, y)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return False


def translation_regular(w: ExtAffineElement) -> bool:
    return len(set(w.trans)) == len(w.trans)


def _check(q: AdlvQuery):
    if not q.b.is_basic:
        raise AdlvHypothesisError("b must be basic (a single slope)")
    if not lowest_cell_member(q.w):
        raise AdlvHypothesisError("w is not in the lowest two-sided cell")


def adlv_nonempty(q: AdlvQuery) -> bool:
    _check(q)
    if kappa(q.w) != q.b.kappa:
        return False
    return perm_support(eta(q.w)[2]) == frozenset(range(1, q.n))


def adlv_dim(q: AdlvQuery) -> int:
    if not adlv_nonempty(q):
        raise AdlvHypothesisError("X_w(b) is empty")
    if not translation_regular(q.w):
        raise AdlvHypothesisError("translation part of w is not regular")
    twice = q.w.length + perm_length(eta(q.w)[2]) - defect(q.b)
    if twice % 2:
        raise ArithmeticError(f"l(w) + l(eta(w)) - def(b) = {twice} is odd")
    if twice < 0:
        raise ArithmeticError("negative dimension")
    return twice // 2


def adlv_report(q: AdlvQuery) -> dict:
    """Everything the command line prints for one query."""
    e1, e2, e = eta(q.w)
    out = {
        "kappa": {"w": kappa(q.w), "b": q.b.kappa},
        "defect": defect(q.b) if q.b.is_basic else None,
        "eta": {"eta1": [a + 1 for a in e1], "eta2": [a + 1 for a in e2], "eta": [a + 1 for a in e]},
        "lowest_cell": lowest_cell_member(q.w),
        "regular": translation_regular(q.w),
    }
    try:
        out["nonempty"] = adlv_nonempty(q)
    except AdlvHypothesisError as exc:
        out["nonempty"] = None
        out["error"] = str(exc)
        out["dim"] = None
        return out
    out["dim"] = adlv_dim(q) if out["nonempty"] and out["regular"] else None
    return out
