"""Edge-list text format.

Layout::

    c optional comment lines
    p <n> <m>
    e <u> <v>        (m lines, 1-based vertex IDs)
    w <v> <weight>   (optional; vertices without a w line get weight 1)

Weights may be written as decimals when loading with a fixed-point
``weight_scale``; they are stored internally as integers.
"""

from __future__ import annotations

from decimal import Decimal

from .errors import ParseError
from .graph import Graph, build_graph


def parse_graph(text: str, weight_scale: int = 1) -> Graph:
    n = None
    m = None
    edges: list[tuple[int, int]] = []
    weights: list[int] | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate p line", line_no)
            if len(parts) != 3:
                raise ParseError("expected 'p <n> <m>'", line_no)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("expected 'p <n> <m>'", line_no) from None
            weights = [weight_scale] * n
        elif tag == "e":
            if n is None:
                raise ParseError("e line before p line", line_no)
            if len(parts) != 3:
                raise ParseError("expected 'e <u> <v>'", line_no)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise ParseError("expected 'e <u> <v>'", line_no) from None
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex out of range in '{line}'", line_no)
            edges.append((u, v))
        elif tag == "w":
            if n is None or weights is None:
                raise ParseError("w line before p line", line_no)
            if len(parts) != 3:
                raise ParseError("expected 'w <v> <weight>'", line_no)
            try:
                v = int(parts[1]) - 1
                w = int(Decimal(parts[2]) * weight_scale)
            except (ValueError, ArithmeticError):
                raise ParseError("expected 'w <v> <weight>'", line_no) from None
            if not 0 <= v < n:
                raise ParseError(f"vertex out of range in '{line}'", line_no)
            weights[v] = w
        else:
            raise ParseError(f"unknown line tag '{tag}'", line_no)
    if n is None:
        raise ParseError("missing p line")
    if m is not None and m != len(edges):
        raise ParseError(f"p line promises {m} edges, found {len(edges)}")
    return build_graph(n, edges, weights)


def format_graph(G: Graph) -> str:
    lines = [f"p {G.n} {G.m}"]
    for u, v in G.edges():
        lines.append(f"e {u + 1} {v + 1}")
    for v, w in enumerate(G.weights):
        if w != 1:
            lines.append(f"w {v + 1} {w}")
    return "\n".join(lines) + "\n"


def load_graph(path, weight_scale: int = 1) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return parse_graph(f.read(), weight_scale=weight_scale)


def save_graph(G: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_graph(G))


def parse_vertex_list(text: str) -> list[int]:
    """Whitespace-separated 1-based vertex IDs -> sorted 0-based list."""
    ids = []
    for tok in text.split():
        try:
            ids.append(int(tok) - 1)
        except ValueError:
            raise ParseError(f"bad vertex ID '{tok}'") from None
    return sorted(set(ids))
