"""Coxeter systems and finite Weyl groups.

Elements of a finite crystallographic Weyl group are stored by their action
on the simple roots: ``w.images[j]`` is the coordinate vector of w(alpha_j)
in the simple-root basis.  That tuple is the canonical form of the element,
so equality and hashing never go through words.

Simple reflections are indexed from 1, matching s_1, ..., s_r.
"""
from __future__ import annotations

import json
import math
from collections import deque
from collections.abc import Iterable, Sequence
from itertools import permutations

import numpy as np

INF = math.inf
_LMUL_CACHE_MAX = 1 << 18  # entries; products are recomputed after a reset

FINITE_CRYSTALLOGRAPHIC = "finite-crystallographic"
OTHER = "other"

# m_ij -> |a_ij * a_ji| for crystallographic pairs
_CARTAN_PRODUCT = {2: 0, 3: 1, 4: 2, 6: 3}


class CoxeterError(ValueError):
    """Invalid Coxeter data or an operation outside the supported types."""


def _as_subset(J: Iterable[int] | None) -> frozenset[int]:
    return frozenset() if J is None else frozenset(int(j) for j in J)


class CoxeterGroupMixin:
    """Algorithms shared by every group that knows its simple reflections.

    A concrete group provides ``generators``, ``identity``, ``simple(i)``,
    ``lmul(i, x)`` (= s_i x), ``rmul(x, i)`` (= x s_i), ``coxeter_entry(i, j)``
    and ``is_finite_parabolic(J)``; elements expose ``length``, ``inverse()``
    and ``*``.
    """

    # parabolic enumeration refuses to run past this many elements
    max_parabolic_size = 200_000

    def has_left_descent(self, x, i: int) -> bool:
        return self.lmul(i, x).length < x.length

    def has_right_descent(self, x, i: int) -> bool:
        return self.rmul(x, i).length < x.length

    def left_descents(self, x) -> frozenset[int]:
        return frozenset(i for i in self.generators if self.has_left_descent(x, i))

    def right_descents(self, x) -> frozenset[int]:
        return frozenset(i for i in self.generators if self.has_right_descent(x, i))

    def from_word(self, word: Iterable[int]):
        x = self.identity
        for i in word:
            self._check_generator(i)
            x = self.rmul(x, i)
        return x

    def _check_generator(self, i: int) -> None:
        if i not in self.generators:
            raise CoxeterError(f"{i} is not a simple reflection index of this group")

    def reduced_word(self, x) -> list[int]:
        """Reduced word built by always removing the smallest left descent.

        For groups with length-zero elements (extended affine Weyl groups)
        the word covers the Coxeter part only: x = s_{i1}...s_{ik} * rho with
        rho of length 0.
        """
        word = []
        while x.length > 0:
            for i in self.generators:
                y = self.lmul(i, x)
                if y.length < x.length:
                    word.append(i)
                    x = y
                    break
            else:  # pragma: no cover - every element of positive length has a descent
                raise CoxeterError("no left descent found for element of positive length")
        return word

    def support(self, x) -> frozenset[int]:
        return frozenset(self.reduced_word(x))

    def min_coset_rep(self, x, J: Iterable[int], side: str = "right"):
        """Minimal representative of x W_J (side='right') or W_J x (side='left')."""
        J = _as_subset(J)
        if side not in ("left", "right"):
            raise CoxeterError("side must be 'left' or 'right'")
        changed = True
        while changed:
            changed = False
            for i in sorted(J):
                y = self.rmul(x, i) if side == "right" else self.lmul(i, x)
                if y.length < x.length:
                    x, changed = y, True
                    break
        return x

    def coset_decomposition(self, x, J: Iterable[int]):
        """Return (u, y) with x = u * y, u in W^J and y in W_J."""
        u = self.min_coset_rep(x, J, "right")
        return u, u.inverse() * x

    def is_min_coset_rep(self, x, J: Iterable[int], side: str = "right") -> bool:
        J = _as_subset(J)
        if side == "right":
            return not any(self.has_right_descent(x, i) for i in J)
        return not any(self.has_left_descent(x, i) for i in J)

    def in_parabolic(self, x, J: Iterable[int]) -> bool:
        """True iff x lies in the standard parabolic subgroup W_J."""
        return self.min_coset_rep(x, J, "right") == self.identity

    def longest_element(self, J: Iterable[int] | None = None):
        J = self.generators if J is None else _as_subset(J)
        if not self.is_finite_parabolic(J):
            raise CoxeterError(f"W_J is infinite for J={sorted(J)}")
        x = self.identity
        grown = True
        while grown:
            grown = False
            for i in sorted(J):
                y = self.rmul(x, i)
                if y.length > x.length:
                    x, grown = y, True
                    break
        return x

    def parabolic_elements(self, J: Iterable[int] | None = None) -> list:
        """All elements of W_J, ShortLex ordered by reduced word."""
        J = self.generators if J is None else _as_subset(J)
        if not self.is_finite_parabolic(J):
            raise CoxeterError(f"W_J is infinite for J={sorted(J)}")
        seen = {self.identity}
        queue = deque([self.identity])
        gens = sorted(J)
        while queue:
            x = queue.popleft()
            for i in gens:
                y = self.rmul(x, i)
                if y not in seen:
                    if len(seen) >= self.max_parabolic_size:
                        raise CoxeterError("parabolic subgroup exceeds enumeration bound")
                    seen.add(y)
                    queue.append(y)
        return sorted(seen, key=self.sort_key)

    def sort_key(self, x):
        return (x.length, self.reduced_word(x))

    def conjugate_simple_index(self, x, i: int, targets: Iterable[int]) -> int | None:
        """Index k in ``targets`` with x s_i x^-1 = s_k, or None."""
        y = x * self.simple(i) * x.inverse()
        if y.length != 1:
            return None
        for k in targets:
            if y == self.simple(k):
                return k
        return None


class WeylElement:
    """Element of a finite Weyl group, stored as images of the simple roots."""

    __slots__ = ("system", "images", "inv_images", "length", "_word")

    def __init__(self, system: "CoxeterSystem", images, inv_images, length: int):
        self.system = system
        self.images = images
        self.inv_images = inv_images
        self.length = length
        self._word = None

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.images == other.images and self.system is other.system

    def __hash__(self):
        return hash(self.images)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if not isinstance(other, WeylElement):
            return NotImplemented
        if other.system is not self.system:
            raise CoxeterError("cannot multiply elements of different Coxeter systems")
        return self.system.multiply(self, other)

    def inverse(self) -> "WeylElement":
        return WeylElement(self.system, self.inv_images, self.images, self.length)

    @property
    def group(self) -> "CoxeterSystem":
        return self.system

    @property
    def word(self) -> list[int]:
        if self._word is None:
            self._word = self.system.reduced_word(self)
        return list(self._word)

    @property
    def matrix(self) -> np.ndarray:
        """Integer matrix whose columns are the images of the simple roots."""
        return np.array(self.images, dtype=np.int64).T.reshape(self.system.rank, self.system.rank)

    def __repr__(self):
        w = self.word
        return "e" if not w else "s" + "*s".join(map(str, w))


class CoxeterSystem(CoxeterGroupMixin):
    """A Coxeter matrix, with a root system when the type is finite crystallographic."""

    def __init__(self, coxeter_matrix, *, cartan_matrix=None, positive_roots=None, name=None):
        self.coxeter_matrix = coxeter_matrix
        self.rank = len(coxeter_matrix)
        self.cartan_matrix = cartan_matrix
        self.positive_roots = positive_roots
        self.name = name
        self.type_tag = FINITE_CRYSTALLOGRAPHIC if positive_roots is not None else OTHER
        self.generators = frozenset(range(1, self.rank + 1))
        if self.type_tag == FINITE_CRYSTALLOGRAPHIC:
            self._root_index = {r: k for k, r in enumerate(positive_roots)}
            unit = tuple(tuple(int(a == b) for a in range(self.rank)) for b in range(self.rank))
            self.identity = WeylElement(self, unit, unit, 0)
            self._simple = {}
            for i in self.generators:
                imgs = tuple(self._reflect(i - 1, col) for col in unit)
                self._simple[i] = WeylElement(self, imgs, imgs, 1)
        else:
            self.identity = None
            self._simple = {}

    def __repr__(self):
        return f"CoxeterSystem({self.name or self.coxeter_matrix!r})"

    def __eq__(self, other):
        return isinstance(other, CoxeterSystem) and self.coxeter_matrix == other.coxeter_matrix

    def __hash__(self):
        return hash(self.coxeter_matrix)

    @property
    def is_finite(self) -> bool:
        return self.type_tag == FINITE_CRYSTALLOGRAPHIC

    def _require_finite(self):
        if not self.is_finite:
            raise CoxeterError("element arithmetic needs a finite crystallographic type")

    def coxeter_entry(self, i: int, j: int):
        return self.coxeter_matrix[i - 1][j - 1]

    def is_finite_parabolic(self, J) -> bool:
        return self.is_finite and _as_subset(J) <= self.generators

    # -- root arithmetic -------------------------------------------------

    def _reflect(self, i: int, v):
        """s_{i+1} applied to a root-coordinate vector (0-based i)."""
        row = self.cartan_matrix[i]
        c = sum(a * b for a, b in zip(row, v))
        if c == 0:
            return v
        out = list(v)
        out[i] -= c
        return tuple(out)

    @staticmethod
    def _is_negative(v) -> bool:
        for a in v:
            if a:
                return a < 0
        return False

    def _apply(self, images, v):
        r = self.rank
        return tuple(sum(v[k] * images[k][a] for k in range(r)) for a in range(r))

    def act(self, w: WeylElement, v: Sequence[int]) -> tuple[int, ...]:
        """Image w(v) of a root-lattice vector given in simple-root coordinates."""
        return self._apply(w.images, tuple(v))

    # -- element constructors and arithmetic -------------------------------

    def from_word(self, word):
        self._require_finite()
        return super().from_word(word)

    def simple(self, i: int) -> WeylElement:
        self._require_finite()
        self._check_generator(i)
        return self._simple[i]

    def lmul(self, i: int, x: WeylElement) -> WeylElement:
        """s_i * x."""
        cache = self.__dict__.setdefault("_lmul_cache", {})
        key = (i, x.images)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if len(cache) > _LMUL_CACHE_MAX:
            cache.clear()
        cache[key] = out = self._lmul(i, x)
        return out

    def _lmul(self, i: int, x: WeylElement) -> WeylElement:
        k = i - 1
        images = tuple(self._reflect(k, col) for col in x.images)
        row = self.cartan_matrix[k]
        inv = x.inv_images
        ci = inv[k]
        inv_images = tuple(
            col if row[j] == 0 or j == k else tuple(a - row[j] * b for a, b in zip(col, ci))
            for j, col in enumerate(inv)
        )
        inv_images = inv_images[:k] + (tuple(-a for a in ci),) + inv_images[k + 1:]
        step = -1 if self._is_negative(ci) else 1
        return WeylElement(self, images, inv_images, x.length + step)

    def rmul(self, x: WeylElement, i: int) -> WeylElement:
        """x * s_i."""
        return self.lmul(i, x.inverse()).inverse()

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """Composition a*b; the length is recounted from root inversions."""
        self._require_finite()
        images = tuple(self._apply(a.images, col) for col in b.images)
        inv_images = tuple(self._apply(b.inv_images, col) for col in a.inv_images)
        length = sum(1 for r in self.positive_roots if self._is_negative(self._apply(images, r)))
        return WeylElement(self, images, inv_images, length)

    def conjugate_simple_index(self, x, i, targets):
        # x s_i x^-1 is the reflection in x(alpha_i)
        v = x.images[i - 1]
        if self._is_negative(v):
            v = tuple(-a for a in v)
        for k in targets:
            if v[k - 1] == 1 and sum(v) == 1:
                return k
        return None

    def inversion_set(self, w: WeylElement) -> list[tuple[int, ...]]:
        """Positive roots sent to negative roots by w."""
        return [r for r in self.positive_roots if self._is_negative(self._apply(w.images, r))]

    def has_left_descent(self, x, i):
        return self._is_negative(x.inv_images[i - 1])

    def has_right_descent(self, x, i):
        return self._is_negative(x.images[i - 1])

    def reduced_word(self, x) -> list[int]:
        if x._word is not None:
            return list(x._word)
        word = []
        y = x
        while y.length > 0:
            i = min(j for j in self.generators if self._is_negative(y.inv_images[j - 1]))
            word.append(i)
            y = self.lmul(i, y)
        x._word = tuple(word)
        return word

    def elements(self, J: Iterable[int] | None = None) -> list[WeylElement]:
        """All of W_J (all of W when J is None)."""
        return self.parabolic_elements(J)

    def coset_reps(self, J: Iterable[int], side: str = "right") -> list[WeylElement]:
        """W^J (side='right') or ^J W (side='left'), ShortLex ordered."""
        J = _as_subset(J)
        return [w for w in self.elements() if self.is_min_coset_rep(w, J, side)]

    def double_coset_reps(self, K: Iterable[int], J: Iterable[int]) -> list[WeylElement]:
        """^K W^J."""
        K, J = _as_subset(K), _as_subset(J)
        return [w for w in self.elements()
                if self.is_min_coset_rep(w, J, "right") and self.is_min_coset_rep(w, K, "left")]

    def star(self, i: int) -> int:
        """Index j with w0 s_i w0 = s_j (the involution induced by -w0)."""
        self._require_finite()
        self._check_generator(i)
        w0 = self.longest_element()
        image = tuple(-a for a in w0.images[i - 1])
        for j in self.generators:
            if image == tuple(int(a == j - 1) for a in range(self.rank)):
                return j
        raise CoxeterError("-w0 does not permute the simple roots")  # pragma: no cover

    def star_subset(self, J: Iterable[int]) -> frozenset[int]:
        return frozenset(self.star(j) for j in _as_subset(J))

    # -- type A bridge -------------------------------------------------------

    def _require_type_a(self):
        n = self.rank
        expected = tuple(
            tuple(1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)) for i in range(n)
        )
        if self.coxeter_matrix != expected:
            raise CoxeterError("permutation bridge is only defined for type A")

    def to_permutation(self, w: WeylElement) -> tuple[int, ...]:
        """Permutation of {0..rank} (0-based images) for a type A element; s_i swaps i-1, i."""
        self._require_type_a()
        perm = list(range(self.rank + 1))
        for i in self.reduced_word(w):
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return tuple(perm)

    def from_permutation(self, perm: Sequence[int]) -> WeylElement:
        """Inverse of :meth:`to_permutation` (0-based images)."""
        self._require_type_a()
        perm = list(perm)
        if sorted(perm) != list(range(self.rank + 1)):
            raise CoxeterError("not a permutation of the right size")
        # sorting by adjacent swaps peels off right factors s_k
        swaps = []
        changed = True
        while changed:
            changed = False
            for k in range(len(perm) - 1):
                if perm[k] > perm[k + 1]:
                    perm[k], perm[k + 1] = perm[k + 1], perm[k]
                    swaps.append(k + 1)
                    changed = True
        return self.from_word(reversed(swaps))


def _parse_entry(v):
    if v is None or v == INF:
        return INF
    if isinstance(v, str):
        if v.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return INF
        v = int(v)
    if isinstance(v, float) and v.is_integer():
        v = int(v)
    if not isinstance(v, int) or v < 1:
        raise CoxeterError(f"invalid Coxeter matrix entry {v!r}")
    return v


def _cartan_from_coxeter(m) -> tuple[tuple[int, ...], ...] | None:
    n = len(m)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            prod = _CARTAN_PRODUCT.get(m[i][j])
            if prod is None:
                return None
            if prod:
                a[i][j] = -1
                a[j][i] = -prod
    return tuple(tuple(r) for r in a)


def _positive_roots(cartan, bound: int):
    n = len(cartan)
    simple = [tuple(int(a == b) for a in range(n)) for b in range(n)]
    roots = list(simple)
    seen = set(simple)
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for i in range(n):
            c = sum(a * b for a, b in zip(cartan[i], v))
            if c == 0:
                continue
            u = list(v)
            u[i] -= c
            u = tuple(u)
            if min(u) < 0 or u in seen:
                continue
            if len(roots) >= bound:
                return None
            seen.add(u)
            roots.append(u)
            queue.append(u)
    roots.sort(key=lambda r: (sum(r), tuple(-a for a in r)))
    return tuple(roots)


def make_system(coxeter_matrix, *, crystallographic: bool | None = None,
                root_bound: int = 1000, name: str | None = None) -> CoxeterSystem:
    """Build a Coxeter system from its matrix.

    Entries may be integers, ``None``/``"inf"``/``math.inf`` for infinity.
    With ``crystallographic=None`` a finite crystallographic realization is
    attempted and the system silently falls back to ``type_tag='other'``;
    with ``crystallographic=True`` failure raises :class:`CoxeterError`.
    """
    m = tuple(tuple(_parse_entry(v) for v in row) for row in coxeter_matrix)
    n = len(m)
    if any(len(row) != n for row in m):
        raise CoxeterError("Coxeter matrix must be square")
    for i in range(n):
        if m[i][i] != 1:
            raise CoxeterError("diagonal entries of a Coxeter matrix must be 1")
        for j in range(n):
            if i != j and (m[i][j] != m[j][i] or m[i][j] < 2):
                raise CoxeterError("off-diagonal entries must be symmetric and >= 2")
    if crystallographic is False:
        return CoxeterSystem(m, name=name)
    cartan = _cartan_from_coxeter(m)
    roots = _positive_roots(cartan, root_bound) if cartan is not None else None
    if roots is None:
        if crystallographic:
            raise CoxeterError("no finite crystallographic root system for this matrix")
        return CoxeterSystem(m, name=name)
    return CoxeterSystem(m, cartan_matrix=cartan, positive_roots=roots, name=name)


def coxeter_matrix_of_type(name: str) -> list[list]:
    """Coxeter matrix for a preset: A_n, B_n/C_n, D_n, G2, F4, E6-E8."""
    family, n = name[0].upper(), int(name[1:])
    if n < 0 or (n == 0 and family != "A"):
        raise CoxeterError(f"unknown type {name!r}")
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]

    def edge(i, j, v=3):
        m[i][j] = m[j][i] = v

    if family == "A":
        for i in range(n - 1):
            edge(i, i + 1)
    elif family in "BC":
        for i in range(n - 1):
            edge(i, i + 1, 4 if i == n - 2 else 3)
    elif family == "D" and n >= 4:
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)
    elif family == "G" and n == 2:
        edge(0, 1, 6)
    elif family == "F" and n == 4:
        edge(0, 1)
        edge(1, 2, 4)
        edge(2, 3)
    elif family == "E" and n in (6, 7, 8):
        edge(0, 2)
        edge(1, 3)
        edge(2, 3)
        for i in range(3, n - 1):
            edge(i, i + 1)
    else:
        raise CoxeterError(f"unknown type {name!r}")
    return m


_PRESETS: dict[str, CoxeterSystem] = {}


def preset(name: str) -> CoxeterSystem:
    """Cached system for a named type such as ``"A3"``."""
    key = name.upper()
    if key not in _PRESETS:
        _PRESETS[key] = make_system(coxeter_matrix_of_type(key), crystallographic=True, name=key)
    return _PRESETS[key]


def system_from_json(data) -> CoxeterSystem:
    """Accept ``{"rank": n, "m": [[...]]}`` (dict or JSON text) or a preset name."""
    if isinstance(data, str):
        text = data.strip()
        if not text.startswith("{"):
            return preset(text)
        data = json.loads(text)
    m = data["m"]
    if "rank" in data and data["rank"] != len(m):
        raise CoxeterError("rank does not match the matrix size")
    return make_system(m, name=data.get("name"))


def system_to_json(system: CoxeterSystem) -> dict:
    return {
        "rank": system.rank,
        "m": [[None if v == INF else v for v in row] for row in system.coxeter_matrix],
    }


def diagram_automorphisms(system: CoxeterSystem, J: Iterable[int], Jprime: Iterable[int]):
    """All bijections J -> J' preserving Coxeter matrix entries, as dicts."""
    J = sorted(_as_subset(J))
    Jp = sorted(_as_subset(Jprime))
    if len(J) != len(Jp):
        return []
    out = []
    for image in permutations(Jp):
        d = dict(zip(J, image))
        if all(system.coxeter_entry(d[a], d[b]) == system.coxeter_entry(a, b) for a in J for b in J):
            out.append(d)
    return out
