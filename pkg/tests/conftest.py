"""Shared builders for small fixture graphs."""

from atsep.graph import Graph, build_graph


def cycle(n: int, weights=None) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)], weights)


def path(n: int, weights=None) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)], weights)


def star(n: int, weights=None) -> Graph:
    """Center 0, leaves 1..n-1."""
    return build_graph(n, [(0, v) for v in range(1, n)], weights)


def complete(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def theta() -> Graph:
    """C8 plus the chord 0-4: n=8, m=9, excess r=1."""
    return build_graph(8, [(i, (i + 1) % 8) for i in range(8)] + [(0, 4)])


def random_parent_tree(rng, n: int) -> Graph:
    """Tree where each vertex v >= 1 hangs off a random earlier vertex."""
    return build_graph(n, [(v, rng.randrange(v)) for v in range(1, n)])
