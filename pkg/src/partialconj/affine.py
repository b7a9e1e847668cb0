"""The extended affine Weyl group S_n x| Z^n of GL_n.

An element t_lam * w acts on R^n by x -> w.x + lam, where permutations act
on coordinates by (w.x)_{w(i)} = x_i.  Permutations are stored 0-based
(``perm[i]`` is the image of i); JSON uses 1-based images.  The base alcove
is {x_1 > x_2 > ... > x_n > x_1 - 1}, so lengths follow the
Iwahori-Matsumoto count

    l(t_lam w) = sum_{a>0, w^-1 a>0} |<lam,a>| + sum_{a>0, w^-1 a<0} |<lam,a> - 1|.

Simple affine reflections are s_1..s_{n-1} (adjacent transpositions) and
s_0 = t_theta s_theta with theta = e_1 - e_n.  tau = t_{e_1} c with
c(i) = i+1 mod n generates the length-zero elements.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, permutations

from .coxeter import INF, CoxeterError, CoxeterGroupMixin, _as_subset
from .partial import TwistSetting, i_set


# -- permutations ----------------------------------------------------------

def perm_compose(u, v) -> tuple[int, ...]:
    """(u v)(i) = u(v(i))."""
    return tuple(u[i] for i in v)


def perm_inverse(u) -> tuple[int, ...]:
    out = [0] * len(u)
    for i, j in enumerate(u):
        out[j] = i
    return tuple(out)


def perm_length(u) -> int:
    n = len(u)
    return sum(1 for i in range(n) for j in range(i + 1, n) if u[i] > u[j])


def perm_support(u) -> frozenset[int]:
    """Simple reflections s_i (1-based) occurring in any reduced word of u."""
    out = set()
    for i in range(1, len(u)):
        # s_i is needed iff u does not preserve {0..i-1}
        if max(u[:i]) != i - 1:
            out.add(i)
    return frozenset(out)


def perm_order(u) -> int:
    seen = set()
    order = 1
    for i in range(len(u)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = u[j]
            k += 1
        order = order * k // math.gcd(order, k)
    return order


def _act(u, vec):
    out = [0] * len(u)
    for i, j in enumerate(u):
        out[j] = vec[i]
    return out


# -- elements ----------------------------------------------------------------

@dataclass(frozen=True)
class ExtAffineElement:
    """t_trans * perm, with perm 0-based."""

    perm: tuple[int, ...]
    trans: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(a) for a in self.perm))
        object.__setattr__(self, "trans", tuple(int(a) for a in self.trans))
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.trans) != len(self.perm):
            raise ValueError("perm must be a permutation of 0..n-1 and trans must have length n")

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def group(self) -> "AffineWeylGroup":
        return affine_group(self.n)

    @cached_property
    def length(self) -> int:
        return aff_length(self)

    def __mul__(self, other: "ExtAffineElement") -> "ExtAffineElement":
        if not isinstance(other, ExtAffineElement):
            return NotImplemented
        return aff_multiply(self, other)

    def __pow__(self, k: int) -> "ExtAffineElement":
        x = self if k >= 0 else self.inverse()
        out = identity(self.n)
        for _ in range(abs(k)):
            out = out * x
        return out

    def inverse(self) -> "ExtAffineElement":
        winv = perm_inverse(self.perm)
        return ExtAffineElement(winv, tuple(-a for a in _act(winv, self.trans)))

    def act_on_point(self, p):
        """Image of a point of R^n (any numeric type)."""
        q = _act(self.perm, list(p))
        return [a + b for a, b in zip(q, self.trans)]

    def to_json(self) -> dict:
        return {"perm": [a + 1 for a in self.perm], "trans": list(self.trans)}

    @classmethod
    def from_json(cls, data) -> "ExtAffineElement":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(a - 1 for a in data["perm"]), tuple(data["trans"]))

    def __repr__(self):
        return f"ExtAffineElement(perm={[a + 1 for a in self.perm]}, trans={list(self.trans)})"


def identity(n: int) -> ExtAffineElement:
    return ExtAffineElement(tuple(range(n)), (0,) * n)


def translation(lam) -> ExtAffineElement:
    return ExtAffineElement(tuple(range(len(lam))), tuple(lam))


def aff_length(x: ExtAffineElement) -> int:
    """Iwahori-Matsumoto length."""
    n = x.n
    lam = x.trans
    winv = perm_inverse(x.perm)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            d = lam[i] - lam[j]
            total += abs(d) if winv[i] < winv[j] else abs(d - 1)
    return total


def aff_multiply(x: ExtAffineElement, y: ExtAffineElement) -> ExtAffineElement:
    """(t_lam u)(t_mu v) = t_{lam + u.mu} uv."""
    if x.n != y.n:
        raise ValueError("size mismatch")
    mu = _act(x.perm, y.trans)
    return ExtAffineElement(perm_compose(x.perm, y.perm), tuple(a + b for a, b in zip(x.trans, mu)))


def kappa(x: ExtAffineElement) -> int:
    """Component index in pi_0 of the loop group: sum of the translation entries."""
    return sum(x.trans)


# -- the group ---------------------------------------------------------------

class AffineWeylGroup(CoxeterGroupMixin):
    """W~ = S_n x| Z^n with simple reflections s_0..s_{n-1}."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.generators = frozenset(range(n)) if n >= 2 else frozenset()
        self.identity = identity(n)
        self._simple = {}
        for i in self.generators:
            if i == 0:
                p = list(range(n))
                p[0], p[n - 1] = p[n - 1], p[0]
                t = [0] * n
                t[0], t[n - 1] = 1, -1
                self._simple[0] = ExtAffineElement(tuple(p), tuple(t))
            else:
                p = list(range(n))
                p[i - 1], p[i] = p[i], p[i - 1]
                self._simple[i] = ExtAffineElement(tuple(p), (0,) * n)
        self.tau = ExtAffineElement(tuple((i + 1) % n for i in range(n)), (1,) + (0,) * (n - 1))
        self.finite_generators = frozenset(range(1, n))

    def __eq__(self, other):
        return isinstance(other, AffineWeylGroup) and other.n == self.n

    def __hash__(self):
        return hash(("AffineWeylGroup", self.n))

    def __repr__(self):
        return f"AffineWeylGroup({self.n})"

    def simple(self, i: int) -> ExtAffineElement:
        self._check_generator(i)
        return self._simple[i]

    def lmul(self, i, x):
        return self._simple[i] * x

    def rmul(self, x, i):
        return x * self._simple[i]

    def coxeter_entry(self, i: int, j: int):
        if i == j:
            return 1
        if self.n == 2:
            return INF
        return 3 if (i - j) % self.n in (1, self.n - 1) else 2

    def is_finite_parabolic(self, J) -> bool:
        J = _as_subset(J)
        return J <= self.generators and J != self.generators

    def length_zero(self, k: int) -> ExtAffineElement:
        """tau^k."""
        return self.tau ** k

    def sort_key(self, x):
        return (x.length, self.reduced_word(x), x.trans, x.perm)

    def finite_part(self, x) -> ExtAffineElement:
        return ExtAffineElement(x.perm, (0,) * self.n)

    def elements_up_to(self, length_bound: int, kappas=None) -> list[ExtAffineElement]:
        """All elements with length <= bound and kappa in ``kappas`` (default 0..n-1).

        Every element differs from one of these by a central translation.
        """
        kappas = range(self.n) if kappas is None else kappas
        start = [self.length_zero(k) for k in kappas]
        seen = set(start)
        queue = deque(start)
        while queue:
            x = queue.popleft()
            for i in sorted(self.generators):
                y = x * self._simple[i]
                if y.length > x.length and y.length <= length_bound and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen, key=self.sort_key)

    def is_in_WS(self, x) -> bool:
        """x is a minimal representative of x W (W = finite Weyl group)."""
        return self.is_min_coset_rep(x, self.finite_generators, "right")


@lru_cache(maxsize=None)
def affine_group(n: int) -> AffineWeylGroup:
    return AffineWeylGroup(n)


# -- good elements, minimal length elements, distinguished classes ------------

def is_good(x: ExtAffineElement, n_max: int | None = None) -> bool:
    """l(x^k) = k l(x) for k = 1..n_max (default twice the order of the finite part)."""
    kmax = n_max if n_max is not None else 2 * perm_order(x.perm)
    y = x
    for k in range(1, kmax + 1):
        if y.length != k * x.length:
            return False
        y = y * x
    return True


TAU, TAU_INV = "tau", "tau^-1"


def _conj_steps(G: AffineWeylGroup, x):
    for i in sorted(G.generators):
        s = G._simple[i]
        yield i, s * x * s
    tinv = G.tau.inverse()
    yield TAU, G.tau * x * tinv
    yield TAU_INV, tinv * x * G.tau


def min_set(x: ExtAffineElement, length_bound: int | None = None):
    """Minimal-length stratum reachable from x by length-nonincreasing conjugations.

    Steps are u -> s u s for simple affine reflections s and conjugation by
    tau^{+-1}.  Returns ``(elements, paths)`` where ``paths[v]`` is a chain of
    step labels (ints for s_i, ``"tau"``/``"tau^-1"``) leading from x to v.
    """
    if length_bound is not None and x.length > length_bound:
        raise OrbitBoundErrorAff(f"length {x.length} exceeds bound {length_bound}")
    G = x.group
    parents = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for label, y in _conj_steps(G, u):
            if y.length <= u.length and y not in parents:
                parents[y] = (u, label)
                queue.append(y)
    m = min(v.length for v in parents)
    mins = sorted((v for v in parents if v.length == m), key=G.sort_key)
    paths = {}
    for v in mins:
        path, cur = [], v
        while parents[cur] is not None:
            cur, lab = parents[cur]
            path.append(lab)
        paths[v] = path[::-1]
    return frozenset(mins), paths


class OrbitBoundErrorAff(RuntimeError):
    """Requested length bound is below the starting element's length."""


def proper_subsets(G: AffineWeylGroup):
    gens = sorted(G.generators)
    for r in range(len(gens)):
        for c in combinations(gens, r):
            yield frozenset(c)


def in_script_W_J(G: AffineWeylGroup, v, J) -> tuple[bool, bool]:
    """(v lies in {u y : u in W~^J, y in W_I(J,u,id)}, and if so whether y = e)."""
    u = G.min_coset_rep(v, J, "right")
    y = u.inverse() * v
    if y == G.identity:
        return True, True
    return G.in_parabolic(y, i_set(TwistSetting(G, J), u)), False


def is_distinguished(x: ExtAffineElement, length_bound: int | None = None) -> bool:
    """O_min meets each script-W_J (J proper) only inside W~^J, tested on the min stratum of x."""
    G = x.group
    mins, _ = min_set(x, length_bound)
    for J in proper_subsets(G):
        if not J:
            continue
        for v in mins:
            member, trivial = in_script_W_J(G, v, J)
            if member and not trivial:
                return False
    return True


@dataclass
class DistinguishedClass:
    representative: ExtAffineElement
    min_set: frozenset
    length: int


def distinguished_class(x: ExtAffineElement, length_bound: int | None = None) -> DistinguishedClass:
    """Class record for x; the representative is the ShortLex-first minimal element."""
    if not is_distinguished(x, length_bound):
        raise ValueError("the conjugacy class of x is not distinguished")
    mins, _ = min_set(x, length_bound)
    rep = min(mins, key=x.group.sort_key)
    return DistinguishedClass(rep, mins, rep.length)


def class_leq(c: DistinguishedClass, x: ExtAffineElement) -> bool:
    """O <= x: some minimal element of O lies below x in Bruhat order."""
    from .bruhat import bruhat_leq
    return any(bruhat_leq(v, x) for v in c.min_set)


# -- Newton data -------------------------------------------------------------

@dataclass(frozen=True)
class NewtonDatum:
    """Blocks (n_i, k_i, k'_i) of the standard sigma-conjugacy representative."""

    blocks: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        blocks = tuple(tuple(int(a) for a in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise ValueError("a Newton datum needs at least one block")
        for ni, _, kp in blocks:
            if ni < 1 or not 0 <= kp < ni:
                raise ValueError(f"invalid block {(ni, _, kp)}: need n_i >= 1 and 0 <= k'_i < n_i")

    @property
    def n(self) -> int:
        return sum(b[0] for b in self.blocks)

    @property
    def kappa(self) -> int:
        return sum(k * ni + kp for ni, k, kp in self.blocks)

    @property
    def slopes(self) -> list[Fraction]:
        return [Fraction(k * ni + kp, ni) for ni, k, kp in self.blocks]

    @property
    def is_basic(self) -> bool:
        return len(set(self.slopes)) == 1

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data) -> "NewtonDatum":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(tuple(b) for b in data["blocks"]))


def newton_to_element(d: NewtonDatum) -> ExtAffineElement:
    """Image in W~ of the block-diagonal monomial matrix of d."""
    perm, trans = [], []
    offset = 0
    n = d.n
    trans = [0] * n
    perm = [0] * n
    for ni, k, kp in d.blocks:
        # columns 0..ni-kp-1 carry eps^k down by kp rows; the rest eps^(k+1) up
        for j in range(ni):
            if j < ni - kp:
                row, e = j + kp, k
            else:
                row, e = j - (ni - kp), k + 1
            perm[offset + j] = offset + row
            trans[offset + row] = e
        offset += ni
    return ExtAffineElement(tuple(perm), tuple(trans))


def good_rep(d: NewtonDatum) -> ExtAffineElement:
    """The unique W~^S member of the S_n-conjugacy class of the image of d."""
    b = newton_to_element(d)
    n = d.n
    G = affine_group(n)
    orbit = set()
    for p in permutations(range(n)):
        u = ExtAffineElement(p, (0,) * n)
        orbit.add(u * b * u.inverse())
    reps = [y for y in orbit if G.is_in_WS(y)]
    if len(reps) != 1:
        raise AssertionError(f"expected one W~^S element in the S_n-class, found {len(reps)}")
    rep = reps[0]
    if not is_good(rep):
        raise AssertionError("W~^S representative is not a good element")
    return rep


def defect(d: NewtonDatum) -> int:
    """n - gcd(n, kappa) for basic d (rank of GL_n minus rank of its sigma-centralizer)."""
    if not d.is_basic:
        raise ValueError("defect is only defined here for basic Newton data")
    return d.n - math.gcd(d.n, d.kappa)


# -- eta maps ----------------------------------------------------------------

def base_alcove_barycenter(n: int) -> list[Fraction]:
    """Average of the vertices (1,..,1,0,..,0) (k ones, k=0..n-1)."""
    return [Fraction(n - 1 - i, n) for i in range(n)]


def eta(x: ExtAffineElement):
    """(eta1, eta2, eta) as 0-based permutations.

    eta1 is the finite part, eta2 the Weyl chamber of the alcove x(A),
    eta = eta2^-1 eta1 eta2.
    """
    y = x.act_on_point(base_alcove_barycenter(x.n))
    if len(set(y)) != len(y):
        raise AssertionError("alcove barycenter landed on a root hyperplane")
    # eta2(j) = position of the j-th largest coordinate, so eta2^-1 y is decreasing
    eta2 = tuple(sorted(range(x.n), key=lambda i: -y[i]))
    eta1 = x.perm
    e = perm_compose(perm_inverse(eta2), perm_compose(eta1, eta2))
    return eta1, eta2, e
