"""Separator pipeline for planar graphs that are almost trees.

Given a connected planar graph with n vertices and n+r edges, reduce it
to a compressed planar graph of size O(r): take a BFS spanning tree, the
r+1 non-tree edges, the minimal subtree spanning their endpoints, and
contract that subtree's bare paths into weighted subdivision nodes.
Separate the compressed graph with the Lipton-Tarjan module, lift the
result back, and repair the rare imbalance introduced by lifting. The
final separator always verifies at the requested balance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, sqrt
from time import perf_counter_ns

import numpy as np

from .errors import (
    Disconnected,
    EmptyTerminals,
    EmptyTree,
    RepairCapExceeded,
    ZeroTotalWeight,
)
from .fileformat import format_graph
from .graph import (
    EdgeSet,
    Graph,
    SpanningTree,
    component_weights,
    connected_components,
    verify_separator,
)
from .planar import lt_separator


# frontiers below this size step through plain Python; larger ones vectorize
_VEC_MIN_FRONTIER = 128


def _frontier_neighbors(indptr, indices, frontier):
    """All neighbors of the frontier (with repetition), plus per-vertex counts."""
    starts = indptr[frontier]
    counts = indptr[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return indices[:0], counts
    cum = np.cumsum(counts)
    pos = np.arange(total, dtype=np.int64) - np.repeat(cum - counts, counts)
    return indices[np.repeat(starts, counts) + pos], counts


def compute_spanning_tree(G: Graph, root: int = 0) -> SpanningTree:
    """BFS spanning tree; raises Disconnected if some vertex is unreachable.

    Levels are visited in ascending vertex-ID order; within a level, the
    parent of a newly found vertex is its first discoverer. Big frontiers
    run as vectorized level steps over the CSR adjacency.
    """
    parent = np.full(G.n, -1, dtype=np.int64)
    parent[root] = root
    adjacency = G.adjacency
    indptr = indices = None
    frontier = [root]
    order = [root]
    visited = 1
    while frontier:
        if len(frontier) < _VEC_MIN_FRONTIER:
            new = []
            for u in frontier:
                for v in adjacency[u]:
                    if parent[v] == -1:
                        parent[v] = u
                        new.append(v)
            new.sort()
            frontier = new
        else:
            if indptr is None:
                indptr, indices = G.csr()
            fr = np.asarray(frontier, dtype=np.int64)
            nbrs, counts = _frontier_neighbors(indptr, indices, fr)
            src = np.repeat(fr, counts)
            undisc = parent[nbrs] == -1
            nb, sr = nbrs[undisc], src[undisc]
            uniq, first = np.unique(nb, return_index=True)
            parent[uniq] = sr[first]
            frontier = uniq.tolist()
        order.extend(frontier)
        visited += len(frontier)
    if visited != G.n:
        raise Disconnected(f"only {visited} of {G.n} vertices reachable from {root}")
    return SpanningTree(root=root, parent=parent.tolist(), order=order)


def extra_edges(G: Graph, T: SpanningTree) -> EdgeSet:
    """Non-tree edges R = E(G) \\ E(T); |R| = m - n + 1."""
    if G.n < _VEC_MIN_FRONTIER:
        return EdgeSet(edges=[(u, v) for u, v in G.edges() if not T.is_tree_edge(u, v)])
    indptr, indices = G.csr()
    src = np.repeat(np.arange(G.n, dtype=np.int64), np.diff(indptr))
    once = src < indices
    u, v = src[once], indices[once]
    parent = np.asarray(T.parent, dtype=np.int64)
    nontree = ~((parent[u] == v) | (parent[v] == u))
    return EdgeSet(edges=list(zip(u[nontree].tolist(), v[nontree].tolist())))


@dataclass
class SteinerSubtree:
    """Minimal subtree of the spanning tree containing all terminals."""

    member: list[bool]
    adjacency: dict[int, list[int]]

    def vertices(self) -> list[int]:
        return sorted(self.adjacency)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [
            (u, v) for u, nbrs in self.adjacency.items() for v in nbrs if u < v
        ]


def steiner_subtree(T: SpanningTree, terminals) -> SteinerSubtree:
    """Minimal subtree of T containing all terminals.

    Walks each terminal's root path until it meets an already-marked
    vertex, then prunes non-terminal leaves off the marked union. Work is
    proportional to the marked region, not to n.
    """
    terms = set(terminals)
    if not terms:
        raise EmptyTerminals("steiner subtree needs at least one terminal")
    parent = T.parent
    member = [False] * T.n
    marked: list[int] = []
    for t in sorted(terms):
        v = t
        while not member[v]:
            member[v] = True
            marked.append(v)
            if parent[v] == v:
                break
            v = parent[v]
    # every marked vertex except the root chains to a marked parent
    adj: dict[int, list[int]] = {v: [] for v in marked}
    for v in marked:
        p = parent[v]
        if p != v:
            adj[v].append(p)
            adj[p].append(v)
    deg = {v: len(a) for v, a in adj.items()}
    queue = deque(v for v in marked if deg[v] <= 1 and v not in terms)
    while queue:
        v = queue.popleft()
        if not member[v]:
            continue
        member[v] = False
        for u in adj[v]:
            if member[u]:
                deg[u] -= 1
                if deg[u] <= 1 and u not in terms:
                    queue.append(u)
    sub_adj = {
        v: sorted(u for u in adj[v] if member[u])
        for v in sorted(adj)
        if member[v]
    }
    return SteinerSubtree(member=member, adjacency=sub_adj)


@dataclass
class BranchSet:
    """Terminals plus every subtree vertex of degree three or more."""

    members: set[int]

    def __len__(self) -> int:
        return len(self.members)


def branch_vertices(T1: SteinerSubtree, terminals) -> BranchSet:
    members = set(terminals)
    for v in T1.adjacency:
        if T1.degree(v) >= 3:
            members.add(v)
    return BranchSet(members=members)


@dataclass
class PathDecomposition:
    """Maximal branch-to-branch paths with branch-free interiors."""

    paths: list[list[int]]

    def __len__(self) -> int:
        return len(self.paths)


def decompose_paths(T1: SteinerSubtree, U: BranchSet) -> PathDecomposition:
    """Edge-disjoint cover of the subtree by maximal U-to-U paths."""
    paths = []
    used: set[tuple[int, int]] = set()

    def edge_key(a, b):
        return (a, b) if a < b else (b, a)

    for u in sorted(U.members):
        for v in T1.adjacency.get(u, ()):
            if edge_key(u, v) in used:
                continue
            path = [u]
            prev, cur = u, v
            used.add(edge_key(u, v))
            while cur not in U.members:
                path.append(cur)
                nxt = next(x for x in T1.adjacency[cur] if x != prev)
                used.add(edge_key(cur, nxt))
                prev, cur = cur, nxt
            path.append(cur)
            paths.append(path)
    return PathDecomposition(paths=paths)


@dataclass
class CollapsedWeights:
    """Weights after every outside vertex donates to its nearest subtree vertex."""

    wprime: list[int]
    attach: list[int]


def _tree_csr(T: SpanningTree):
    n = T.n
    parent = np.asarray(T.parent, dtype=np.int64)
    child = np.flatnonzero(parent != np.arange(n, dtype=np.int64))
    src = np.concatenate((child, parent[child]))
    dst = np.concatenate((parent[child], child))
    order = np.argsort(src, kind="stable")
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, dst[order]


def collapse_weights(G: Graph, T: SpanningTree, T1: SteinerSubtree) -> CollapsedWeights:
    """Multi-source BFS over T from the subtree; exact weight conservation.

    Each vertex attaches to its nearest subtree vertex by tree distance,
    distance ties going to the lowest attachment ID. Levels propagate the
    minimum attachment among same-level discoverers, which keeps that
    tie-break exact; big frontiers run vectorized over the tree's CSR.
    """
    n = G.n
    attach = np.full(n, -1, dtype=np.int64)
    indptr, indices = _tree_csr(T)
    frontier = T1.vertices()
    attach[frontier] = frontier
    while frontier:
        if len(frontier) < _VEC_MIN_FRONTIER:
            new: dict[int, int] = {}
            for u in frontier:
                au = int(attach[u])
                for v in indices[indptr[u]:indptr[u + 1]]:
                    if attach[v] == -1:
                        prev = new.get(v)
                        if prev is None or au < prev:
                            new[v] = au
            frontier = sorted(new)
            for v in frontier:
                attach[v] = new[v]
        else:
            fr = np.asarray(frontier, dtype=np.int64)
            nbrs, counts = _frontier_neighbors(indptr, indices, fr)
            att = np.repeat(attach[fr], counts)
            undisc = attach[nbrs] == -1
            nb, at = nbrs[undisc], att[undisc]
            order = np.lexsort((at, nb))
            nb, at = nb[order], at[order]
            uniq, first = np.unique(nb, return_index=True)
            attach[uniq] = at[first]
            frontier = uniq.tolist()
    wprime = np.zeros(n, dtype=np.int64)
    np.add.at(wprime, attach, G.weight_array())
    return CollapsedWeights(wprime=wprime.tolist(), attach=attach.tolist())


@dataclass
class CompressedGraph:
    """Branch nodes plus one weighted subdivision node per path.

    Node IDs: 0..|U|-1 are branch nodes (``orig`` maps them to original
    vertex IDs), the rest are subdivision nodes. ``back_map`` keeps each
    path's interior order together with prefix sums of the collapsed
    weights, for lifting and repairs.
    """

    node_weights: list[int]
    edges: list[tuple[int, int]]
    orig: list[int | None]
    back_map: dict[int, tuple[list[int], list[int]]]
    path_ends: dict[int, tuple[int, int]]
    has_parallel: bool = False

    @property
    def num_nodes(self) -> int:
        return len(self.node_weights)

    def simple_graph(self) -> Graph:
        """Parallel edges collapsed; vertex separators are unaffected."""
        dedup = sorted({(min(a, b), max(a, b)) for a, b in self.edges if a != b})
        return Graph(
            n=self.num_nodes,
            adjacency=_adjacency(self.num_nodes, dedup),
            weights=list(self.node_weights),
        )


def _adjacency(n, edges):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def build_compressed_graph(
    U: BranchSet, Pi: PathDecomposition, R: EdgeSet, cw: CollapsedWeights
) -> CompressedGraph:
    u_list = sorted(U.members)
    node_of = {u: i for i, u in enumerate(u_list)}
    node_weights = [cw.wprime[u] for u in u_list]
    orig: list[int | None] = list(u_list)
    edges: list[tuple[int, int]] = []
    back_map: dict[int, tuple[list[int], list[int]]] = {}
    path_ends: dict[int, tuple[int, int]] = {}
    for path in Pi.paths:
        interior = path[1:-1]
        sub = len(node_weights)
        node_weights.append(sum(cw.wprime[v] for v in interior))
        orig.append(None)
        prefix = []
        acc = 0
        for v in interior:
            acc += cw.wprime[v]
            prefix.append(acc)
        back_map[sub] = (interior, prefix)
        path_ends[sub] = (path[0], path[-1])
        edges.append((node_of[path[0]], sub))
        edges.append((sub, node_of[path[-1]]))
    for u, v in R.edges:
        edges.append((node_of[u], node_of[v]))
    seen = set()
    has_parallel = False
    for a, b in edges:
        key = (min(a, b), max(a, b))
        if key in seen:
            has_parallel = True
        seen.add(key)
    return CompressedGraph(
        node_weights=node_weights,
        edges=edges,
        orig=orig,
        back_map=back_map,
        path_ends=path_ends,
        has_parallel=has_parallel,
    )


@dataclass
class PathFragment:
    """Leftover piece of a path interior after its cut vertex was lifted."""

    vertices: list[int]
    wprime: list[int]


def _median_cut(vertices: list[int], weights: list[int]) -> int:
    """Vertex minimizing the heavier of the two remaining sides; ties -> lower ID."""
    total = sum(weights)
    best_v, best_cost = None, None
    left = 0
    for v, w in zip(vertices, weights):
        cost = max(left, total - left - w)
        if best_cost is None or cost < best_cost or (cost == best_cost and v < best_v):
            best_v, best_cost = v, cost
        left += w
    return best_v


def lift_separator(Sc, C: CompressedGraph):
    """Map a compressed separator back to original vertex IDs.

    Branch nodes lift to themselves. A selected subdivision node lifts to
    the weighted-median vertex of its path interior; interior-free paths
    lift to an endpoint not already covered. Returns the lifted set plus
    the leftover interior fragments (for the repair loop).
    """
    lifted: set[int] = set()
    fragments: list[PathFragment] = []
    subs = []
    for node in sorted(Sc):
        if C.orig[node] is not None:
            lifted.add(C.orig[node])
        else:
            subs.append(node)
    for node in subs:
        interior, prefix = C.back_map[node]
        if not interior:
            a, b = C.path_ends[node]
            for cand in sorted((a, b)):
                if cand not in lifted:
                    lifted.add(cand)
                    break
            continue
        weights = [prefix[0]] + [
            prefix[i] - prefix[i - 1] for i in range(1, len(prefix))
        ]
        cut = _median_cut(interior, weights)
        i = interior.index(cut)
        lifted.add(cut)
        if interior[:i]:
            fragments.append(PathFragment(interior[:i], weights[:i]))
        if interior[i + 1:]:
            fragments.append(PathFragment(interior[i + 1:], weights[i + 1:]))
    return lifted, fragments


def tree_centroid(vertices, adjacency, weights) -> int:
    """Vertex of a weighted tree whose removal leaves parts of weight <= W/2."""
    verts = sorted(vertices)
    if not verts:
        raise EmptyTree("centroid of an empty tree")
    root = verts[0]
    parent = {root: root}
    order = []
    stack = [root]
    while stack:
        u = stack.pop()
        order.append(u)
        for v in adjacency[u]:
            if v not in parent:
                parent[v] = u
                stack.append(v)
    subtree = {v: weights[v] for v in order}
    for u in reversed(order):
        if u != root:
            subtree[parent[u]] += subtree[u]
    total = subtree[root]
    best_v, best_cost = None, None
    for v in verts:
        heaviest = total - subtree[v]
        for c in adjacency[v]:
            if c != parent[v]:
                heaviest = max(heaviest, subtree[c])
        if best_cost is None or heaviest < best_cost or (
            heaviest == best_cost and v < best_v
        ):
            best_v, best_cost = v, heaviest
    return best_v


@dataclass
class Separator:
    """Final separator with its balance statistics."""

    vertices: set[int]
    size: int
    max_component_weight: int
    total_weight: int
    repairs: int

    @property
    def max_fraction(self) -> float:
        if self.total_weight == 0:
            return 0.0
        return self.max_component_weight / self.total_weight


def heavy_vertex_fixup(
    G: Graph,
    S,
    beta=Fraction(2, 3),
    fragments: list[PathFragment] = (),
    cap: int | None = None,
) -> Separator:
    """Repair loop for the lifted separator.

    While a component is too heavy: a tree component gets its weighted
    centroid added; otherwise the heaviest leftover path fragment inside
    the component is cut at its weighted median. The loop is capped; the
    cap signals an algorithmic bug, it is never expected to fire.
    """
    S = set(S)
    beta = Fraction(beta)
    W = G.total_weight
    if cap is None:
        r = max(G.excess, 0)
        cap = 2 + ceil(4 * sqrt(r + 1))
    repairs = 0
    while True:
        comp = connected_components(G, removed=S)
        comp_w = component_weights(G, comp)
        heavy_id, hw = -1, -1
        for cid, w in enumerate(comp_w):
            if w > hw:
                heavy_id, hw = cid, w
        if heavy_id < 0 or hw * beta.denominator <= W * beta.numerator:
            break
        heaviest = [v for v in range(G.n) if comp[v] == heavy_id]
        if repairs >= cap:
            raise RepairCapExceeded(
                f"still unbalanced after {repairs} repairs (cap {cap})"
            )
        hset = set(heaviest)
        inner_edges = sum(
            1 for u in heaviest for v in G.adjacency[u] if v in hset
        ) // 2
        if inner_edges == len(heaviest) - 1:
            adj = {
                u: [v for v in G.adjacency[u] if v in hset] for u in heaviest
            }
            S.add(tree_centroid(heaviest, adj, G.weights))
        else:
            runs: list[tuple[int, list[int], list[int]]] = []
            for frag in fragments:
                cur_v: list[int] = []
                cur_w: list[int] = []
                for v, w in zip(frag.vertices, frag.wprime):
                    if v in hset:
                        cur_v.append(v)
                        cur_w.append(w)
                    elif cur_v:
                        runs.append((sum(cur_w), cur_v, cur_w))
                        cur_v, cur_w = [], []
                if cur_v:
                    runs.append((sum(cur_w), cur_v, cur_w))
            if runs:
                _, verts, ws = max(runs, key=lambda t: (t[0], -t[1][0]))
                S.add(_median_cut(verts, ws))
            else:
                # no fragment reaches into the component: fall back to the
                # centroid of a BFS spanning tree of it
                adj = {u: [] for u in heaviest}
                start = min(heaviest)
                queue = deque([start])
                seen = {start}
                while queue:
                    u = queue.popleft()
                    for v in G.adjacency[u]:
                        if v in hset and v not in seen:
                            seen.add(v)
                            adj[u].append(v)
                            adj[v].append(u)
                            queue.append(v)
                S.add(tree_centroid(heaviest, adj, G.weights))
        repairs += 1
    report = verify_separator(G, S, beta)
    return Separator(
        vertices=S,
        size=len(S),
        max_component_weight=report.max_component_weight,
        total_weight=W,
        repairs=repairs,
    )


@dataclass
class TraceStage:
    name: str
    graph: Graph
    selected: list[int] = field(default_factory=list)


@dataclass
class StageTrace:
    stages: list[TraceStage]

    def names(self) -> list[str]:
        return [s.name for s in self.stages]


def format_trace(trace: StageTrace) -> str:
    out = []
    for stage in trace.stages:
        out.append(f"stage {stage.name}\n")
        out.append(format_graph(stage.graph))
        for v in sorted(stage.selected):
            out.append(f"s {v + 1}\n")
    return "".join(out)


def _subgraph_same_vertices(G: Graph, edges) -> Graph:
    return Graph(n=G.n, adjacency=_adjacency(G.n, list(edges)), weights=list(G.weights))


def separate(
    G: Graph,
    beta=Fraction(2, 3),
    root: int = 0,
    trace: bool = False,
    timings: dict[str, int] | None = None,
):
    """Full pipeline; returns a verified Separator (and a StageTrace if asked).

    Pass a dict as ``timings`` to collect per-stage wall times in ns.
    """
    clock = perf_counter_ns if timings is not None else None

    def tick(name, t0):
        if timings is not None:
            timings[name] = perf_counter_ns() - t0
        return perf_counter_ns() if clock else 0

    beta = Fraction(beta)
    W = G.total_weight
    if W == 0:
        raise ZeroTotalWeight("all vertex weights are zero")
    t0 = perf_counter_ns() if clock else 0
    T = compute_spanning_tree(G, root=root)  # raises Disconnected
    t0 = tick("spanning_tree", t0)

    stages: list[TraceStage] = []
    if trace:
        stages.append(TraceStage("input", G))

    if G.excess < 0:
        adj = {v: list(G.adjacency[v]) for v in range(G.n)}
        c = tree_centroid(range(G.n), adj, G.weights)
        report = verify_separator(G, {c}, beta)
        sep = Separator(
            vertices={c},
            size=1,
            max_component_weight=report.max_component_weight,
            total_weight=W,
            repairs=0,
        )
        if trace:
            stages.append(TraceStage("separator", G, sorted(sep.vertices)))
            return sep, StageTrace(stages)
        return sep

    R = extra_edges(G, T)
    t0 = tick("extra_edges", t0)
    terminals = R.endpoints()
    T1 = steiner_subtree(T, terminals)
    t0 = tick("steiner_subtree", t0)
    U = branch_vertices(T1, terminals)
    Pi = decompose_paths(T1, U)
    t0 = tick("decompose_paths", t0)
    cw = collapse_weights(G, T, T1)
    t0 = tick("collapse_weights", t0)
    C = build_compressed_graph(U, Pi, R, cw)
    Gc = C.simple_graph()
    t0 = tick("build_compressed", t0)
    lt = lt_separator(Gc, beta=beta)
    t0 = tick("lt_separator", t0)
    lifted, fragments = lift_separator(lt.vertices, C)
    sep = heavy_vertex_fixup(G, lifted, beta, fragments)
    tick("lift_and_repair", t0)

    if trace:
        stages.append(TraceStage("spanning_tree", _subgraph_same_vertices(G, T.tree_edges())))
        stages.append(TraceStage("extra_edges", _subgraph_same_vertices(G, R.edges)))
        stages.append(
            TraceStage("steiner_subtree", _subgraph_same_vertices(G, T1.edges()), T1.vertices())
        )
        stages.append(
            TraceStage("branch_set", _subgraph_same_vertices(G, T1.edges()), sorted(U.members))
        )
        stages.append(TraceStage("compressed", Gc))
        stages.append(TraceStage("compressed_separator", Gc, sorted(lt.vertices)))
        repair_added = sorted(sep.vertices - lifted)
        stages.append(TraceStage("repairs", G, repair_added))
        stages.append(TraceStage("separator", G, sorted(sep.vertices)))
        return sep, StageTrace(stages)
    return sep


def dump_stages(G: Graph, beta=Fraction(2, 3)) -> StageTrace:
    """Intermediate stages of the pipeline, one record per construction step."""
    _, trace = separate(G, beta=beta, trace=True)
    return trace
