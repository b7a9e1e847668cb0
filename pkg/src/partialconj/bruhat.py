"""Bruhat order and finite poset utilities (cover relations, DOT/JSON export)."""
from __future__ import annotations

import json
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np


def bruhat_leq(u, w) -> bool:
    """Return True iff u <= w in the Bruhat order.

    Works in any group whose elements carry ``.group`` (finite Weyl groups
    and extended affine Weyl groups).  One reduced word of w is scanned left
    to right; whenever the current letter is a left descent of u it is
    stripped from u.  At the end u must have been reduced to the length-zero
    part of w.
    """
    group = w.group
    if u.group != group:
        raise ValueError("elements live in different groups")
    if u.length > w.length:
        return False
    word = group.reduced_word(w)
    rho = group.from_word(word).inverse() * w
    x = u
    for i in word:
        y = group.lmul(i, x)
        if y.length < x.length:
            x = y
    return x == rho


def lower_set(w, universe: Iterable) -> set:
    """All members of ``universe`` below w in Bruhat order."""
    if isinstance(universe, PosetSlice):
        universe = universe.nodes
    return {u for u in universe if bruhat_leq(u, w)}


@dataclass
class PosetSlice:
    """A finite poset: nodes plus a boolean matrix with leq[i, j] <=> nodes[i] <= nodes[j]."""

    nodes: list
    leq: np.ndarray
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.leq = np.asarray(self.leq, dtype=bool)
        if not self.labels:
            self.labels = [str(v) for v in self.nodes]
        self._index = {v: k for k, v in enumerate(self.nodes)}

    @classmethod
    def from_relation(cls, nodes: Sequence, relation: Callable, label: Callable = str) -> "PosetSlice":
        nodes = list(nodes)
        n = len(nodes)
        leq = np.zeros((n, n), dtype=bool)
        for a in range(n):
            for b in range(n):
                leq[a, b] = a == b or bool(relation(nodes[a], nodes[b]))
        return cls(nodes, leq, [label(v) for v in nodes])

    @classmethod
    def bruhat(cls, nodes: Sequence, label: Callable = str) -> "PosetSlice":
        return cls.from_relation(nodes, bruhat_leq, label)

    def __len__(self):
        return len(self.nodes)

    def index(self, v) -> int:
        return self._index[v]

    def is_reflexive(self) -> bool:
        return bool(np.all(np.diag(self.leq)))

    def is_antisymmetric(self) -> bool:
        both = self.leq & self.leq.T
        return bool(np.array_equal(both, np.eye(len(self), dtype=bool)))

    def is_transitive(self) -> bool:
        m = self.leq.astype(np.int64)
        return bool(np.all(~((m @ m) > 0) | self.leq))

    def is_partial_order(self) -> bool:
        return self.is_reflexive() and self.is_antisymmetric() and self.is_transitive()

    def down_set(self, v) -> list:
        j = self._index[v]
        return [self.nodes[i] for i in np.flatnonzero(self.leq[:, j])]

    def up_set(self, v) -> list:
        i = self._index[v]
        return [self.nodes[j] for j in np.flatnonzero(self.leq[i, :])]

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (i, j): i < j with nothing strictly between."""
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        s = strict.astype(np.int64)
        between = (s @ s) > 0
        cov = strict & ~between
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]

    def to_json(self) -> dict:
        return {"nodes": list(self.labels), "covers": [list(c) for c in self.covers()]}

    def to_dot(self, name: str = "poset") -> str:
        lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;"]
        for k, lab in enumerate(self.labels):
            lines.append(f"  n{k} [label={json.dumps(lab)}];")
        for i, j in self.covers():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def poset_from_json(data) -> tuple[list[str], list[tuple[int, int]]]:
    """Read back the ``{"nodes", "covers"}`` export."""
    if isinstance(data, str):
        data = json.loads(data)
    return list(data["nodes"]), [tuple(c) for c in data["covers"]]
