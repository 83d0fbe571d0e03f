"""Core graph model: weighted simple graphs, components, separator verification.

Vertex IDs are dense 0-based integers. Weights are non-negative 64-bit
integers so that all conservation checks are exact equalities.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain

import numpy as np

from .errors import (
    BadVertexId,
    DuplicateEdge,
    Disconnected,
    Overflow,
    SelfLoop,
)

MAX_TOTAL_WEIGHT = 2**63 - 1


@dataclass
class Graph:
    """Undirected simple graph with non-negative integer vertex weights."""

    n: int
    adjacency: list[list[int]]
    weights: list[int]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def excess(self) -> int:
        """r = m - n; equals -1 for a tree."""
        return self.m - self.n

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self):
        """Yield each undirected edge once, as (u, v) with u < v."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        a, b = (u, v) if len(self.adjacency[u]) <= len(self.adjacency[v]) else (v, u)
        return b in self.adjacency[a]

    def csr(self):
        """Adjacency in CSR form (indptr, indices), cached; graphs are immutable."""
        cached = self.__dict__.get("_csr_cache")
        if cached is None:
            deg = np.fromiter(
                (len(a) for a in self.adjacency), dtype=np.int64, count=self.n
            )
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(deg, out=indptr[1:])
            indices = np.fromiter(
                chain.from_iterable(self.adjacency),
                dtype=np.int64,
                count=int(indptr[-1]),
            )
            cached = (indptr, indices)
            self.__dict__["_csr_cache"] = cached
        return cached

    def weight_array(self):
        cached = self.__dict__.get("_w_cache")
        if cached is None:
            cached = np.asarray(self.weights, dtype=np.int64)
            self.__dict__["_w_cache"] = cached
        return cached


@dataclass
class EdgeSet:
    """A set of undirected edges, stored as (u, v) pairs with u < v."""

    edges: list[tuple[int, int]]

    def endpoints(self) -> list[int]:
        """Sorted list of distinct endpoint vertex IDs."""
        seen = set()
        for u, v in self.edges:
            seen.add(u)
            seen.add(v)
        return sorted(seen)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass
class SpanningTree:
    """Rooted spanning tree in parent-pointer form; parent[root] == root."""

    root: int
    parent: list[int]
    order: list[int] = field(default_factory=list)  # BFS visit order from root

    @property
    def n(self) -> int:
        return len(self.parent)

    def tree_edges(self) -> list[tuple[int, int]]:
        return [
            (min(v, p), max(v, p))
            for v, p in enumerate(self.parent)
            if p != v
        ]

    def is_tree_edge(self, u: int, v: int) -> bool:
        return self.parent[u] == v or self.parent[v] == u

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p != v:
                adj[v].append(p)
                adj[p].append(v)
        return adj


def build_graph(n: int, edges, weights=None) -> Graph:
    """Validate and build a Graph from an edge list.

    Raises BadVertexId, SelfLoop, DuplicateEdge or Overflow on bad input.
    """
    if n < 0:
        raise BadVertexId(f"negative vertex count {n}")
    if weights is None:
        weights = [1] * n
    else:
        weights = list(weights)
    if len(weights) != n:
        raise BadVertexId(f"expected {n} weights, got {len(weights)}")
    total = 0
    for v, w in enumerate(weights):
        if w < 0:
            raise Overflow(f"negative weight {w} at vertex {v}")
        total += w
        if total > MAX_TOTAL_WEIGHT:
            raise Overflow("total weight exceeds 64 bits")

    adjacency: list[list[int]] = [[] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise BadVertexId(f"edge ({u}, {v}) out of range [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
        adjacency[u].append(v)
        adjacency[v].append(u)
    return Graph(n=n, adjacency=adjacency, weights=weights)


# below this vertex count, plain BFS beats the sparse-matrix setup cost
_SCIPY_MIN_N = 2048


def connected_components(G: Graph, removed=None) -> list[int]:
    """Component ID per vertex; removed vertices (if given) get ID -1.

    IDs are assigned in order of each component's lowest vertex.
    """
    if G.n >= _SCIPY_MIN_N:
        return _connected_components_sparse(G, removed)
    comp = [-1] * G.n
    blocked = removed if removed is not None else frozenset()
    next_id = 0
    queue = deque()
    for s in range(G.n):
        if comp[s] != -1 or s in blocked:
            continue
        comp[s] = next_id
        queue.append(s)
        while queue:
            u = queue.popleft()
            for v in G.adjacency[u]:
                if comp[v] == -1 and v not in blocked:
                    comp[v] = next_id
                    queue.append(v)
        next_id += 1
    return comp


def _connected_components_sparse(G: Graph, removed=None) -> list[int]:
    from scipy.sparse import csr_array
    from scipy.sparse.csgraph import connected_components as _scipy_cc

    n = G.n
    indptr, indices = G.csr()
    keep = np.ones(n, dtype=bool)
    if removed:
        keep[list(removed)] = False
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
        mask = keep[src] & keep[indices]
        src, dst = src[mask], indices[mask]
        A = csr_array(
            (np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n)
        )
    else:
        A = csr_array(
            (np.ones(len(indices), dtype=np.int8), indices, indptr), shape=(n, n)
        )
    _, labels = _scipy_cc(A, directed=False)
    comp = np.full(n, -1, dtype=np.int64)
    kept_labels = labels[keep]
    uniq, first, inv = np.unique(kept_labels, return_index=True, return_inverse=True)
    # renumber so that IDs follow each component's lowest vertex
    renum = np.empty(len(uniq), dtype=np.int64)
    renum[np.argsort(first, kind="stable")] = np.arange(len(uniq))
    comp[keep] = renum[inv]
    return comp.tolist()


def component_weights(G: Graph, comp: list[int]) -> list[int]:
    """Total weight per component ID; exact 64-bit integer sums."""
    ncomp = max(comp, default=-1) + 1
    if G.n >= _SCIPY_MIN_N:
        sums = np.zeros(ncomp + 1, dtype=np.int64)
        np.add.at(sums, np.asarray(comp) + 1, G.weight_array())
        return sums[1:].tolist()
    comp_w = [0] * ncomp
    for v in range(G.n):
        if comp[v] >= 0:
            comp_w[comp[v]] += G.weights[v]
    return comp_w


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    return max(connected_components(G)) == 0


@dataclass
class VerifyReport:
    """Outcome of checking a vertex set against the balance contract."""

    separator_size: int
    total_weight: int
    component_weights: list[int]
    beta: Fraction
    passed: bool

    @property
    def max_component_weight(self) -> int:
        return max(self.component_weights, default=0)

    @property
    def max_fraction(self) -> float:
        if self.total_weight == 0:
            return 0.0
        return self.max_component_weight / self.total_weight


def verify_separator(G: Graph, S, beta=Fraction(2, 3)) -> VerifyReport:
    """Check that every component of G - S weighs at most beta * W.

    Separator vertices' weight counts toward W but toward no component.
    """
    beta = Fraction(beta)
    sset = set(S)
    for v in sset:
        if not (0 <= v < G.n):
            raise BadVertexId(f"separator vertex {v} out of range")
    comp = connected_components(G, removed=sset)
    comp_w = component_weights(G, comp)
    W = G.total_weight
    max_w = max(comp_w, default=0)
    passed = max_w * beta.denominator <= W * beta.numerator
    return VerifyReport(
        separator_size=len(sset),
        total_weight=W,
        component_weights=comp_w,
        beta=beta,
        passed=passed,
    )
