"""Seeded instance generators: strict extremal instances, relaxed random
instances, branch-targeting gadgets, and digraphs with a minimum out-degree."""

from __future__ import annotations

import itertools
import math
import random

from .core import ColoredGraph
from .girth import Digraph

DEFAULT_CAP = 4000


class InfeasibleError(ValueError):
    pass


class SizeCapError(ValueError):
    pass


def rotation_coloring(n: int) -> ColoredGraph:
    """Color ``K_n`` (``n`` odd) by the rotation decomposition into near-perfect matchings.

    Edge ``{a, b}`` gets color ``i + 1`` where ``2i = a + b (mod n)``; color
    ``i + 1`` is a matching of ``(n-1)/2`` edges missing vertex ``i``.  No
    vertex sees a color twice.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"rotation coloring needs odd n >= 3, got {n}")
    half = pow(2, -1, n)
    edges, colors = [], []
    for a in range(n):
        for b in range(a + 1, n):
            edges.append((a, b))
            colors.append((a + b) * half % n + 1)
    return ColoredGraph(n, edges, colors)


def gen_equitable_complete(k: int, cap: int = DEFAULT_CAP) -> ColoredGraph:
    """``K_{2s+1}`` with ``s = ceil(43 f(k))`` and every class exactly ``s`` edges.

    The smallest complete graph on which the class-size hypothesis holds
    with equality.  ``cap`` bounds the vertex count.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    s = math.ceil(43 * 7 * k * math.log2(k))
    n = 2 * s + 1
    if n > cap:
        raise SizeCapError(f"n = {n} exceeds cap {cap}")
    return rotation_coloring(n)


def gen_relaxed(n: int, class_size: int, seed: int = 0) -> ColoredGraph:
    """Random simple graph on ``n`` vertices whose ``n`` classes each have ``class_size`` edges."""
    m = n * class_size
    if m > n * (n - 1) // 2:
        raise InfeasibleError(f"{m} edges do not fit in K_{n} ({n * (n - 1) // 2} edges)")
    rng = random.Random(seed)
    edges = rng.sample(list(itertools.combinations(range(n), 2)), m)
    colors = [i // class_size + 1 for i in range(m)]
    return ColoredGraph(n, edges, colors)


def gen_random_colored(n: int, p: float, num_colors: int | None = None, seed: int = 0) -> ColoredGraph:
    """G(n, p) with independent uniform colors in ``1..num_colors`` (default ``n``)."""
    rng = random.Random(seed)
    C = n if num_colors is None else num_colors
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return ColoredGraph(n, edges, [rng.randint(1, C) for _ in edges], C)


def gen_min_outdeg_digraph(n: int, k: int, seed: int = 0) -> Digraph:
    """Every vertex gets exactly ``k`` distinct random out-neighbors."""
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got n={n}, k={k}")
    rng = random.Random(seed)
    arcs = []
    for v in range(n):
        others = [u for u in range(n) if u != v]
        arcs.extend((v, u) for u in rng.sample(others, k))
    return Digraph(n, arcs)


def gen_graph_with_edges(n: int, m: int, seed: int = 0) -> list[tuple[int, int]]:
    """``m`` distinct random edges on ``n`` vertices."""
    if m > n * (n - 1) // 2:
        raise InfeasibleError(f"{m} edges do not fit on {n} vertices")
    rng = random.Random(seed)
    if m > n * (n - 1) // 4:
        return rng.sample(list(itertools.combinations(range(n), 2)), m)
    seen: set[tuple[int, int]] = set()
    while len(seen) < m:
        u, v = rng.sample(range(n), 2)
        seen.add((min(u, v), max(u, v)))
    return sorted(seen)


# ---------------------------------------------------------------------------
# Relaxed gadgets, one per branch of the nice-set construction.  The
# docstrings give the f(k) each gadget is tuned for.


def gadget_tournament(n: int) -> ColoredGraph:
    """Every color is dominant: ``K_n`` oriented as the rotational tournament, edges colored by tail.

    Edge ``{i, i+j mod n}`` for ``j = 1..(n-1)/2`` gets color ``i + 1``, so
    vertex ``i`` carries a star of ``(n-1)/2`` edges of its own color and
    sees every other color once.  With ``7 f <= (n-1)/2`` every vertex is a
    representative and the auxiliary digraph is the tournament itself.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"needs odd n >= 3, got {n}")
    edges, colors = [], []
    for i in range(n):
        for j in range(1, (n - 1) // 2 + 1):
            edges.append((i, (i + j) % n))
            colors.append(i + 1)
    return ColoredGraph(n, edges, colors)


def gadget_branch_a() -> ColoredGraph:
    """Nine vertices, three dominant stars (tuned for ``f = 3/7``).

    Vertices 0, 1, 2 carry stars of colors 1, 2, 3 and a rainbow triangle
    in colors 4, 5, 6; colors 7, 8, 9 are single edges inside the rest.
    ``V \\ S`` has 6 vertices, which shrinks to 3 by dropping the lowest id.
    """
    triples = [
        (0, 3, 1), (0, 4, 1), (0, 5, 1),
        (1, 5, 2), (1, 6, 2), (1, 7, 2),
        (2, 7, 3), (2, 8, 3), (2, 3, 3),
        (0, 1, 4), (1, 2, 5), (0, 2, 6),
        (3, 4, 7), (5, 6, 8), (7, 8, 9),
    ]
    return ColoredGraph.from_triples(9, triples)


def gadget_recursion(m: int = 7) -> ColoredGraph:
    """Star of color 1 at vertex 0 plus a rotation-colored ``K_m`` on ``1..m`` (tuned for ``f = 3/7``).

    All ``m`` non-dominant colors live inside ``V \\ S = {1..m}``, so the
    shrinking step cannot remove anything and hands ``K_m`` to the
    induction.
    """
    inner = rotation_coloring(m)
    triples = [(0, 1, 1), (0, 2, 1), (0, 3, 1)]
    triples += [(u + 1, v + 1, c + 1) for u, v, c in inner.triples()]
    return ColoredGraph.from_triples(m + 1, triples)
