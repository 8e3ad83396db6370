"""Coupling graphs of physical qubits and distance queries."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

# Canonical grid shapes for the benchmark widths.
CANONICAL_GRIDS: dict[int, tuple[int, int]] = {
    4: (2, 2),
    6: (2, 3),
    8: (2, 4),
    10: (2, 5),
    12: (3, 4),
    14: (2, 7),
}


@dataclass(frozen=True, eq=False)
class Topology:
    num_physical: int
    edges: frozenset[tuple[int, int]]
    dist: np.ndarray = field(repr=False)
    shape: tuple[int, int] | None = None

    @classmethod
    def from_edges(cls, num_physical: int, edges: Iterable[tuple[int, int]],
                   shape: tuple[int, int] | None = None) -> Topology:
        norm = set()
        for p, q in edges:
            p, q = int(p), int(q)
            if p == q:
                raise ValueError(f"self-loop on qubit {p}")
            if not (0 <= p < num_physical and 0 <= q < num_physical):
                raise ValueError(f"edge ({p}, {q}) outside 0..{num_physical - 1}")
            norm.add((min(p, q), max(p, q)))
        dist = _all_pairs_bfs(num_physical, norm)
        if (dist < 0).any():
            raise ValueError("coupling graph is not connected")
        dist.setflags(write=False)
        return cls(num_physical, frozenset(norm), dist, shape)

    def neighbors(self, p: int) -> list[int]:
        return [q for q in range(self.num_physical) if self.dist[p, q] == 1]

    def adjacent(self, p: int, q: int) -> bool:
        return self.dist[p, q] == 1

    @property
    def diameter(self) -> int:
        return int(self.dist.max())

    def shortest_path(self, p: int, q: int) -> list[int]:
        """Lexicographically smallest shortest path from p to q (inclusive)."""
        path = [p]
        cur = p
        while cur != q:
            target = self.dist[cur, q] - 1
            cur = next(v for v in self.neighbors(cur) if self.dist[v, q] == target)
            path.append(cur)
        return path

    def coords(self, p: int) -> tuple[int, int]:
        if self.shape is None:
            raise ValueError("topology is not a grid")
        return divmod(p, self.shape[1])

    def to_config(self) -> dict:
        if self.shape is not None:
            return {"grid": list(self.shape)}
        return {"num_physical": self.num_physical, "edges": sorted(list(e) for e in self.edges)}


def _all_pairs_bfs(n: int, edges: set[tuple[int, int]]) -> np.ndarray:
    adj: list[list[int]] = [[] for _ in range(n)]
    for p, q in edges:
        adj[p].append(q)
        adj[q].append(p)
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        dist[s, s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[s, v] < 0:
                    dist[s, v] = dist[s, u] + 1
                    queue.append(v)
    return dist


def make_grid(rows: int, cols: int) -> Topology:
    """rows x cols lattice; qubit r*cols + c sits at (r, c)."""
    if rows < 1 or cols < 1:
        raise ValueError(f"grid dimensions must be positive, got {rows}x{cols}")
    if rows * cols < 2:
        raise ValueError("a grid needs at least two qubits")
    edges = []
    for r in range(rows):
        for c in range(cols):
            p = r * cols + c
            if c + 1 < cols:
                edges.append((p, p + 1))
            if r + 1 < rows:
                edges.append((p, p + cols))
    return Topology.from_edges(rows * cols, edges, shape=(rows, cols))


def swap_distance(topology: Topology, p: int, q: int) -> int:
    """SWAPs needed to make p and q adjacent: shortest-path length minus one."""
    if p == q:
        raise ValueError("swap distance needs two distinct qubits")
    return int(topology.dist[p, q]) - 1


def grid_for_width(n: int) -> Topology:
    if n < 2:
        raise ValueError(f"need at least 2 qubits, got {n}")
    if n in CANONICAL_GRIDS:
        return make_grid(*CANONICAL_GRIDS[n])
    if n == 2:
        return make_grid(1, 2)
    exact = [r for r in range(2, math.isqrt(n) + 1) if n % r == 0]
    if exact:
        return make_grid(exact[-1], n // exact[-1])
    # prime width: smallest two-row-or-more grid that fits, most square on ties
    best = min(
        (r * math.ceil(n / r), math.ceil(n / r) - r, r)
        for r in range(2, math.isqrt(n) + 2)
        if r <= math.ceil(n / r)
    )
    return make_grid(best[2], math.ceil(n / best[2]))


def topology_from_config(spec: Mapping | str) -> Topology:
    """Accepts ``{"grid": [r, c]}``, ``{"num_physical": n, "edges": [...]}`` or ``"grid:RxC"``."""
    if isinstance(spec, str):
        kind, _, dims = spec.partition(":")
        if kind != "grid" or "x" not in dims:
            raise ValueError(f"unrecognised topology {spec!r}; expected grid:RxC")
        r, c = dims.split("x")
        return make_grid(int(r), int(c))
    if "grid" in spec:
        r, c = spec["grid"]
        return make_grid(int(r), int(c))
    if "edges" in spec:
        edges = [tuple(e) for e in spec["edges"]]
        n = spec.get("num_physical", 1 + max(max(e) for e in edges))
        return Topology.from_edges(int(n), edges)
    raise ValueError(f"unrecognised topology config {dict(spec)!r}")
