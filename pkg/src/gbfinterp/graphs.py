"""Weighted undirected graphs and the normalized graph Laplacian.

Graphs are stored densely. The target scale (up to a few thousand nodes)
needs the full eigendecomposition downstream anyway, so sparse storage
would buy nothing and would complicate the exact-symmetry guarantees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateEdgeError,
    IndexOutOfRangeError,
    InvalidParamError,
    IsolatedNodeError,
    NonPositiveWeightError,
    NotSymmetricError,
    SelfLoopError,
)

Edge = tuple[int, int, float]

GENERATOR_KINDS = ("path", "cycle", "complete", "grid", "random_geometric")


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected weighted graph on nodes ``0..n-1``.

    The adjacency matrix is symmetric with nonnegative weights and a zero
    diagonal (self loops are rejected because they would make the degree
    convention ambiguous). Instances are immutable after construction; the
    stored arrays are marked read-only, so a graph can be shared freely
    between threads.
    """

    n: int
    adjacency: np.ndarray
    node_labels: tuple[str, ...] | None = None
    coords: np.ndarray | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidParamError(f"node count must be a positive integer, got {self.n!r}")
        adj = np.array(self.adjacency, dtype=float, order="C")
        if adj.shape != (self.n, self.n):
            raise InvalidParamError(
                f"adjacency shape {adj.shape} does not match n={self.n}"
            )
        if not np.array_equal(adj, adj.T):
            raise NotSymmetricError("adjacency matrix must be exactly symmetric")
        if np.any(adj < 0.0):
            raise NonPositiveWeightError("adjacency weights must be nonnegative")
        if np.any(np.diag(adj) != 0.0):
            raise SelfLoopError("adjacency diagonal must be zero")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        if self.node_labels is not None:
            labels = tuple(str(s) for s in self.node_labels)
            if len(labels) != self.n:
                raise InvalidParamError("need one label per node")
            object.__setattr__(self, "node_labels", labels)
        if self.coords is not None:
            pts = np.array(self.coords, dtype=float, order="C")
            if pts.ndim != 2 or pts.shape[0] != self.n or pts.shape[1] not in (2, 3):
                raise InvalidParamError(
                    f"coords must have shape (n, 2) or (n, 3), got {pts.shape}"
                )
            pts.setflags(write=False)
            object.__setattr__(self, "coords", pts)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Weighted degree of every node (row sums of the adjacency)."""
        deg = self.adjacency.sum(axis=1)
        deg.setflags(write=False)
        return deg

    def isolated_nodes(self) -> list[int]:
        """Nodes with degree exactly zero.

        Generators never raise on such graphs; the Laplacian does. Callers
        that need a usable graph (for example the random geometric
        generator's retry loop) check this list and regenerate.
        """
        return [int(i) for i in np.flatnonzero(self.degrees == 0.0)]

    def edge_count(self) -> int:
        return int(np.count_nonzero(self.adjacency) // 2)


def build_graph(
    n: int,
    edges: Iterable[Edge],
    node_labels: Sequence[str] | None = None,
    coords: np.ndarray | None = None,
) -> Graph:
    """Assemble a graph from an explicit weighted edge list.

    Each edge is a triple ``(i, j, w)`` with 0-based endpoints and strictly
    positive weight. Violations raise immediately; an isolated node is not
    an error here and only surfaces once the Laplacian is requested.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidParamError(f"node count must be a positive integer, got {n!r}")
    adj = np.zeros((n, n))
    seen: set[tuple[int, int]] = set()
    for i, j, w in edges:
        i, j = int(i), int(j)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRangeError(f"edge ({i}, {j}) outside 0..{n - 1}")
        if i == j:
            raise SelfLoopError(f"self loop at node {i}")
        w = float(w)
        if not w > 0.0:
            raise NonPositiveWeightError(f"edge ({i}, {j}) has weight {w}, need > 0")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdgeError(f"edge ({i}, {j}) listed twice")
        seen.add(key)
        adj[i, j] = w
        adj[j, i] = w
    return Graph(n=n, adjacency=adj, node_labels=node_labels, coords=coords)


def normalized_laplacian(graph: Graph) -> np.ndarray:
    """Symmetric normalized Laplacian ``I - D^{-1/2} A D^{-1/2}``.

    The scaled adjacency is formed as ``A * outer(w, w)`` with
    ``w = 1/sqrt(degrees)`` so the result is symmetric bit for bit, which
    the eigendecomposition later re-checks. Its eigenvalues lie in [0, 2].
    """
    isolated = graph.isolated_nodes()
    if isolated:
        raise IsolatedNodeError(
            f"normalized Laplacian undefined, isolated nodes: {isolated}"
        )
    w = 1.0 / np.sqrt(graph.degrees)
    lap = np.eye(graph.n) - graph.adjacency * np.outer(w, w)
    return lap


def is_connected(graph: Graph) -> bool:
    """Breadth-first connectivity over edges with positive weight."""
    n = graph.n
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        for u in np.flatnonzero(graph.adjacency[v] > 0.0):
            if not seen[u]:
                seen[u] = True
                stack.append(int(u))
    return bool(seen.all())


def generate_graph(
    kind: str,
    *,
    n: int | None = None,
    rows: int | None = None,
    cols: int | None = None,
    radius: float | None = None,
    seed: int | None = None,
) -> Graph:
    """Construct one of the standard test graphs.

    Kinds: ``path``, ``cycle``, ``complete`` (parameter ``n``), ``grid``
    (``rows``, ``cols``, 4-neighbour lattice) and ``random_geometric``
    (``n``, ``radius``, mandatory ``seed``). All weights are 1. Every kind
    attaches plotting coordinates. The random geometric generator draws
    points uniformly in the unit square from a PCG64 stream seeded with
    ``seed`` and joins pairs closer than ``radius``; for a fixed seed the
    result is reproducible byte for byte. It may contain isolated nodes,
    which is reported through :meth:`Graph.isolated_nodes`, not an error.
    """
    if kind == "path":
        n = _require_n(kind, n, minimum=2)
        edges = [(i, i + 1, 1.0) for i in range(n - 1)]
        coords = np.column_stack([np.arange(n, dtype=float), np.zeros(n)])
        return build_graph(n, edges, coords=coords)
    if kind == "cycle":
        n = _require_n(kind, n, minimum=3)
        edges = [(i, (i + 1) % n, 1.0) for i in range(n)]
        return build_graph(n, edges, coords=_circle_coords(n))
    if kind == "complete":
        n = _require_n(kind, n, minimum=2)
        edges = [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)]
        return build_graph(n, edges, coords=_circle_coords(n))
    if kind == "grid":
        if rows is None or cols is None:
            raise InvalidParamError("grid needs rows= and cols=")
        rows, cols = int(rows), int(cols)
        if rows < 1 or cols < 1 or rows * cols < 2:
            raise InvalidParamError(f"grid {rows}x{cols} is too small")
        n = rows * cols
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1, 1.0))
                if r + 1 < rows:
                    edges.append((v, v + cols, 1.0))
        coords = np.array([[c, r] for r in range(rows) for c in range(cols)], dtype=float)
        return build_graph(n, edges, coords=coords)
    if kind == "random_geometric":
        n = _require_n(kind, n, minimum=2)
        if radius is None or not float(radius) > 0.0:
            raise InvalidParamError("random_geometric needs radius > 0")
        if seed is None:
            raise InvalidParamError("random_geometric needs an explicit seed")
        return _random_geometric(n, float(radius), int(seed))
    raise InvalidParamError(f"unknown graph kind {kind!r}, expected one of {GENERATOR_KINDS}")


def connected_random_geometric(
    n: int, radius: float, seed: int, max_tries: int = 64
) -> Graph:
    """Random geometric graph, regenerated until connected.

    Retries with consecutive seeds ``seed, seed+1, ...`` whenever the draw
    has an isolated node or is disconnected, so the result is still fully
    determined by the arguments.
    """
    for attempt in range(max_tries):
        g = generate_graph("random_geometric", n=n, radius=radius, seed=seed + attempt)
        if not g.isolated_nodes() and is_connected(g):
            return g
    raise InvalidParamError(
        f"no connected draw in {max_tries} attempts (n={n}, radius={radius}); "
        "increase the radius"
    )


def _require_n(kind: str, n: int | None, minimum: int) -> int:
    if n is None:
        raise InvalidParamError(f"{kind} needs n=")
    n = int(n)
    if n < minimum:
        raise InvalidParamError(f"{kind} needs n >= {minimum}, got {n}")
    return n


def _circle_coords(n: int) -> np.ndarray:
    angles = 2.0 * math.pi * np.arange(n) / n
    return np.column_stack([np.cos(angles), np.sin(angles)])


def _random_geometric(n: int, radius: float, seed: int) -> Graph:
    rng = np.random.Generator(np.random.PCG64(seed))
    pts = rng.random((n, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    adj = (dist < radius).astype(float)
    np.fill_diagonal(adj, 0.0)
    return Graph(n=n, adjacency=adj, coords=pts)
