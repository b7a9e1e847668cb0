"""Twisted partial conjugation of a parabolic subgroup W_J on W.

W_J acts on W by u . w = delta(u) w u^-1, where delta: W_J -> W_J' comes
from a bijection J -> J' of simple reflections respecting the Coxeter
matrix.  The orbit decomposition is indexed by W^J; for each base point w
the fibre is W_J . (w W_I) with I = I(J, w, delta).

All routines only use the group interface of :class:`CoxeterGroupMixin`,
so they run unchanged on finite Weyl groups and on extended affine Weyl
groups (with W_J finite).
"""
from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache

from .bruhat import bruhat_leq
from .coxeter import CoxeterError, _as_subset, preset


class OrbitBoundError(RuntimeError):
    """Orbit enumeration passed its length ceiling before closing up."""


class TwistSetting:
    """The data (J, J', delta) for the delta-twisted action of W_J."""

    def __init__(self, group, J: Iterable[int], delta: Mapping[int, int] | None = None):
        J = _as_subset(J)
        for j in J:
            group._check_generator(j)
        if not group.is_finite_parabolic(J):
            raise CoxeterError(f"W_J must be finite, got J={sorted(J)}")
        delta = {j: j for j in J} if delta is None else {int(a): int(b) for a, b in delta.items()}
        if set(delta) != set(J):
            raise CoxeterError("delta must be defined exactly on J")
        if len(set(delta.values())) != len(J):
            raise CoxeterError("delta must be injective")
        for b in delta.values():
            group._check_generator(b)
        for a in J:
            for b in J:
                if group.coxeter_entry(delta[a], delta[b]) != group.coxeter_entry(a, b):
                    raise CoxeterError("delta does not preserve the Coxeter matrix")
        self.group = group
        self.J = J
        self.delta = delta
        self.Jprime = frozenset(delta.values())
        self._key = (J, tuple(sorted(delta.items())))

    def __eq__(self, other):
        return isinstance(other, TwistSetting) and self.group == other.group and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if all(a == b for a, b in self.delta.items()):
            return f"TwistSetting(J={sorted(self.J)})"
        return f"TwistSetting(J={sorted(self.J)}, delta={dict(sorted(self.delta.items()))})"

    @property
    def is_identity(self) -> bool:
        return all(a == b for a, b in self.delta.items())

    def apply(self, u):
        """delta(u) for u in W_J, extended along a reduced word."""
        return self.group.from_word(self.delta[i] for i in self.group.reduced_word(u))

    def act(self, u, w):
        """u ._delta w = delta(u) w u^-1."""
        return self.apply(u) * w * u.inverse()

    def step(self, w, i: int):
        """s_{delta(i)} w s_i."""
        g = self.group
        return g.lmul(self.delta[i], g.rmul(w, i))


# -- I(J, w, delta) and fibres -------------------------------------------------

def i_set(ts: TwistSetting, w) -> frozenset[int]:
    """Largest K in J with w s_k w^-1 a simple reflection of delta(K) for every k in K."""
    g = ts.group
    if not g.is_min_coset_rep(w, ts.J, "right"):
        raise CoxeterError("i_set needs w in W^J")
    K = ts.J
    while True:
        targets = frozenset(ts.delta[k] for k in K)
        new = frozenset(k for k in K if g.conjugate_simple_index(w, k, targets) is not None)
        if new == K:
            return K
        K = new


def fiber_twist(ts: TwistSetting, w) -> dict[int, int]:
    """The automorphism Ad(w)^-1 o delta of W_I on simple reflections, I = I(J, w, delta)."""
    g = ts.group
    I = i_set(ts, w)
    tau = {}
    for k in I:
        # w s_j w^-1 = s_{delta(k)} for a unique j in I
        for j in I:
            if g.conjugate_simple_index(w, j, (ts.delta[k],)) is not None:
                tau[k] = j
                break
    return tau


def _reach(ts: TwistSetting, w, *, monotone: bool, length_bound: int | None = None):
    """BFS over elementary steps; returns {element: (parent, i)}."""
    parents = {w: None}
    queue = deque([w])
    gens = sorted(ts.J)
    while queue:
        x = queue.popleft()
        for i in gens:
            y = ts.step(x, i)
            if y in parents:
                continue
            if monotone and y.length > x.length:
                continue
            if length_bound is not None and y.length > length_bound:
                raise OrbitBoundError(f"orbit exceeded length bound {length_bound}")
            parents[y] = (x, i)
            queue.append(y)
    return parents


def _path_to(parents, target) -> list[int]:
    path = []
    while parents[target] is not None:
        target, i = parents[target]
        path.append(i)
    return path[::-1]


def orbit_members(ts: TwistSetting, w, length_bound: int | None = None) -> frozenset:
    """The W_J-orbit of w under twisted conjugation."""
    if length_bound is not None and w.length > length_bound:
        raise OrbitBoundError(f"orbit exceeded length bound {length_bound}")
    return frozenset(_reach(ts, w, monotone=False, length_bound=length_bound))


@lru_cache(maxsize=65536)
def orbit_min(ts: TwistSetting, w) -> tuple:
    """Minimal-length members of W_J . w, ShortLex ordered."""
    members = orbit_members(ts, w)
    m = min(v.length for v in members)
    return tuple(sorted((v for v in members if v.length == m), key=ts.group.sort_key))


def fiber(ts: TwistSetting, w) -> frozenset:
    """W_J ._delta (w W_I) for w in W^J."""
    g = ts.group
    out = set()
    for x in g.parabolic_elements(i_set(ts, w)):
        out |= orbit_members(ts, w * x)
    return frozenset(out)


def _is_base_form(ts: TwistSetting, v):
    """Return u if v = u x with u in W^J and x in W_{I(J,u,delta)}, else None."""
    g = ts.group
    u = g.min_coset_rep(v, ts.J, "right")
    x = u.inverse() * v
    return u if g.in_parabolic(x, i_set(ts, u)) else None


def reduce_to_min(ts: TwistSetting, w):
    """Witness chain w -> w' x ending at a minimal element of the orbit.

    Returns ``(target, path)`` where ``path`` lists the indices i of the
    steps v -> s_{delta(i)} v s_i, none of which increases length, and the
    target has the form w' x with w' in W^J and x in W_{I(J,w',delta)}.
    Among admissible targets the one with the shortest chain is returned.
    """
    parents = _reach(ts, w, monotone=True)
    m = min(v.length for v in parents)
    for v in parents:  # BFS insertion order = shortest chains first
        if v.length == m and _is_base_form(ts, v) is not None:
            return v, _path_to(parents, v)
    raise CoxeterError("no minimal element of the form w'x reached")  # pragma: no cover


def pi_map(ts: TwistSetting, w):
    """The base point in W^J of the fibre containing w."""
    target, _ = reduce_to_min(ts, w)
    return ts.group.min_coset_rep(target, ts.J, "right")


def check_path(ts: TwistSetting, w, path: Iterable[int]):
    """Replay a chain of steps; raise if some step increases length. Returns the endpoint."""
    for i in path:
        if i not in ts.J:
            raise CoxeterError(f"step index {i} is not in J")
        y = ts.step(w, i)
        if y.length > w.length:
            raise CoxeterError(f"step by {i} increases length")
        w = y
    return w


def reaches(ts: TwistSetting, w, target) -> bool:
    """w ->_{J,delta} target."""
    return target in _reach(ts, w, monotone=True)


def approx(ts: TwistSetting, w, v) -> bool:
    """w ~_{J,delta} v: reachable both ways, equivalently reachable with equal length."""
    return w.length == v.length and reaches(ts, w, v)


def is_terminal(ts: TwistSetting, w) -> bool:
    """No strictly shorter element is reachable from w."""
    return all(v.length == w.length for v in _reach(ts, w, monotone=True))


@dataclass
class OrbitRecord:
    base: object
    iset: frozenset
    members: frozenset
    min_elements: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        g = self.base.group
        return {
            "base": g.reduced_word(self.base),
            "iset": sorted(self.iset),
            "size": len(self.members),
            "min": [g.reduced_word(v) for v in self.min_elements],
        }


def orbit(ts: TwistSetting, w, length_bound: int | None = None) -> OrbitRecord:
    members = orbit_members(ts, w, length_bound)
    m = min(v.length for v in members)
    mins = tuple(sorted((v for v in members if v.length == m), key=ts.group.sort_key))
    base = pi_map(ts, w)
    return OrbitRecord(base, i_set(ts, base), members, mins)


# -- the order <=_{J,delta} ----------------------------------------------------

def leq_J_delta(ts: TwistSetting, w, wprime, *, general: bool | None = None) -> bool:
    """w <=_{J,delta} wprime for w in W^J.

    With wprime in W^J (and ``general`` unset) the orbit-minimum comparison
    is used: some minimal v of W_J.w lies below the first minimal element of
    W_J.wprime.  With ``general=True`` (the default when wprime is not in
    W^J) the test is "some minimal v of W_J.w lies below wprime".
    """
    g = ts.group
    if not g.is_min_coset_rep(w, ts.J, "right"):
        raise CoxeterError("leq_J_delta needs w in W^J")
    if general is None:
        general = not g.is_min_coset_rep(wprime, ts.J, "right")
    top = wprime if general else orbit_min(ts, wprime)[0]
    return any(bruhat_leq(v, top) for v in orbit_min(ts, w))


# -- twisted conjugacy classes -----------------------------------------------

def twisted_classes(group, K: Iterable[int], tau: Mapping[int, int] | None = None) -> list[frozenset]:
    """Classes of W_K under v' -> tau(v) v' v^-1 (plain conjugacy when tau is None)."""
    K = _as_subset(K)
    tau = {k: k for k in K} if tau is None else dict(tau)
    if set(tau) != set(K) or set(tau.values()) != set(K):
        raise CoxeterError("tau must be a permutation of K")
    for a in K:
        for b in K:
            if group.coxeter_entry(tau[a], tau[b]) != group.coxeter_entry(a, b):
                raise CoxeterError("tau does not preserve the Coxeter matrix")
    elements = group.parabolic_elements(K)
    seen = set()
    classes = []
    for v in elements:
        if v in seen:
            continue
        cls = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for k in K:
                y = group.lmul(tau[k], group.rmul(x, k))
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        seen |= cls
        classes.append(frozenset(cls))
    return classes


# -- the two-sided variant ----------------------------------------------------

def _check_product_decomposition(system, J1, J2):
    if J1 & J2:
        raise CoxeterError("J1 and J2 must be disjoint")
    for a in J1:
        for b in J2:
            if system.coxeter_entry(a, b) != 2:
                raise CoxeterError("W_J must be the direct product W_J1 x W_J2")


def k_sequence(system, w, J1: Iterable[int], J2: Iterable[int]) -> list[frozenset]:
    """K_0 = J2, K_i = {s in J1 : w s = s' w for some s' in K_(i-1)}, until it repeats."""
    J1, J2 = _as_subset(J1), _as_subset(J2)
    winv = w.inverse()
    seq = []
    K = J2
    while K not in seq:
        seq.append(K)
        K = frozenset(k for k in (system.conjugate_simple_index(winv, s, J1) for s in K) if k is not None)
    return seq


def script_W(system, J1: Iterable[int], J2: Iterable[int]) -> list:
    """Index set W(J1, J2) of the two-sided decomposition.

    Elements w minimal in w W_{J1 u J2} with no left descent in any K_i(w).
    Conjugating by w^-1 and taking the base set W^{J1 u J2} is the reading
    under which the pieces W_J2 pi^-1(w) W_J2 partition W.
    """
    J1, J2 = _as_subset(J1), _as_subset(J2)
    _check_product_decomposition(system, J1, J2)
    out = []
    for w in system.coset_reps(J1 | J2, "right"):
        if all(system.is_min_coset_rep(w, K, "left") for K in k_sequence(system, w, J1, J2)):
            out.append(w)
    return out


def two_sided_decomposition(system, J1: Iterable[int], J2: Iterable[int]) -> dict:
    """{w: W_J2 pi_{J1,id}^-1(w) W_J2} for w in W(J1, J2); checked to partition W."""
    J1, J2 = _as_subset(J1), _as_subset(J2)
    index = script_W(system, J1, J2)
    ts = TwistSetting(system, J1)
    fibres: dict = {}
    for v in system.elements():
        fibres.setdefault(pi_map(ts, v), set()).add(v)
    W2 = system.parabolic_elements(J2)
    parts = {}
    for w in index:
        parts[w] = frozenset(a * v * b for v in fibres.get(w, ()) for a in W2 for b in W2)
    total = sum(len(p) for p in parts.values())
    covered = frozenset().union(*parts.values()) if parts else frozenset()
    if total != len(covered) or len(covered) != len(system.elements()):
        raise CoxeterError("two-sided pieces do not partition W")
    return parts


def _gl_blocks(n: int, i: int):
    return frozenset(range(1, i)), frozenset(range(i + 1, n))


def count_glN_pieces(n: int) -> int:
    """Sum over i and w in W(J1, J2) of the number of Ad(w)-twisted classes on W_I(J1,w,id)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    system = preset(f"A{n - 1}")
    total = 0
    for i in range(n + 1):
        J1, J2 = _gl_blocks(n, i)
        ts = TwistSetting(system, J1)
        for w in script_W(system, J1, J2):
            I = i_set(ts, w)
            ad = {k: system.conjugate_simple_index(w, k, I) for k in I}
            total += len(twisted_classes(system, I, ad))
    return total


def count_glN_orbits(n: int) -> int:
    """Sum over i of |W(J1, J2)|: one orbit per index element."""
    if n < 1:
        raise ValueError("n must be >= 1")
    system = preset(f"A{n - 1}")
    return sum(len(script_W(system, *_gl_blocks(n, i))) for i in range(n + 1))
