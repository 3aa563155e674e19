"""Labeled simple connected graphs and their Laplacians.

Edges of K_n are numbered (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
so bit ``b`` of an edge mask selects edge number ``b``.  Enumeration walks
the masks in increasing order, which makes a graph's position in the list
and its mask both stable identities.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

DEFAULT_MAX_ORDER = 6

IntMatrix = tuple[tuple[int, ...], ...]


class OrderOutOfRange(ValueError):
    """Requested graph order is outside the enumeration bounds."""


def max_order() -> int:
    return int(os.environ.get("QWDIST_MAX_ORDER", DEFAULT_MAX_ORDER))


def edge_list(n: int) -> list[tuple[int, int]]:
    """All edges of K_n in bit order."""
    return [(j, k) for k in range(n) for j in range(k)]


def edge_bit(j: int, k: int) -> int:
    if j > k:
        j, k = k, j
    return k * (k - 1) // 2 + j


@dataclass(frozen=True)
class LabeledGraph:
    order: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("graph order must be positive")
        norm = set()
        for e in self.edges:
            j, k = e
            if j == k:
                raise ValueError(f"self-loop at vertex {j}")
            if not (0 <= j < self.order and 0 <= k < self.order):
                raise ValueError(f"edge {e} outside vertex range 0..{self.order - 1}")
            norm.add((min(j, k), max(j, k)))
        object.__setattr__(self, "edges", frozenset(norm))
        if not _connected(self.order, self.edges):
            raise ValueError("graph is not connected")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "LabeledGraph":
        es = edge_list(n)
        if mask < 0 or mask >> len(es):
            raise ValueError(f"edge mask {mask:#b} has bits beyond the {len(es)} edges of K{n}")
        return cls(n, frozenset(e for b, e in enumerate(es) if mask >> b & 1))

    @property
    def mask(self) -> int:
        return sum(1 << edge_bit(j, k) for j, k in self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.order
        for j, k in self.edges:
            deg[j] += 1
            deg[k] += 1
        return deg

    def to_json(self) -> dict:
        return {"order": self.order, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, obj: dict) -> "LabeledGraph":
        return cls(int(obj["order"]), frozenset(tuple(e) for e in obj["edges"]))


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    adj = [[] for _ in range(n)]
    for j, k in edges:
        adj[j].append(k)
        adj[k].append(j)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def enumerate_labeled_connected(n: int, limit: int | None = None) -> list[LabeledGraph]:
    """Every connected spanning edge subset of K_n, ordered by edge mask."""
    limit = max_order() if limit is None else limit
    if not 1 <= n <= limit:
        raise OrderOutOfRange(f"order must be between 1 and {limit}, got {n}")
    es = edge_list(n)
    out = []
    for mask in range(1 << len(es)):
        chosen = [e for b, e in enumerate(es) if mask >> b & 1]
        if len(chosen) >= n - 1 and _connected(n, chosen):
            out.append(LabeledGraph(n, frozenset(chosen)))
    return out


def complete_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, frozenset(edge_list(n)))


def adjacency(g: LabeledGraph) -> IntMatrix:
    a = [[0] * g.order for _ in range(g.order)]
    for j, k in g.edges:
        a[j][k] = a[k][j] = 1
    return tuple(map(tuple, a))


def degree_matrix(g: LabeledGraph) -> IntMatrix:
    deg = g.degrees()
    return tuple(tuple(deg[j] if j == k else 0 for k in range(g.order)) for j in range(g.order))


def laplacian(g: LabeledGraph) -> IntMatrix:
    """L = D - A."""
    a = adjacency(g)
    d = degree_matrix(g)
    return tuple(tuple(d[j][k] - a[j][k] for k in range(g.order)) for j in range(g.order))


def is_path_graph(g: LabeledGraph) -> bool:
    n = g.order
    if len(g.edges) != n - 1:
        return False
    if n <= 2:
        return True
    deg = g.degrees()
    return deg.count(1) == 2 and deg.count(2) == n - 2


def path_sequence(g: LabeledGraph) -> list[int] | None:
    """Vertex sequence of a path graph starting at its smaller endpoint, else None."""
    if not is_path_graph(g):
        return None
    if g.order == 1:
        return [0]
    adj = {v: [] for v in range(g.order)}
    for j, k in g.edges:
        adj[j].append(k)
        adj[k].append(j)
    start = min(v for v in adj if len(adj[v]) == 1)
    seq = [start]
    prev = None
    while len(seq) < g.order:
        nxt = next(w for w in adj[seq[-1]] if w != prev)
        prev = seq[-1]
        seq.append(nxt)
    return seq
