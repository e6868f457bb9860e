"""Shortest-cycle finders: directed, undirected and rainbow.

All searches are deterministic: sources are scanned in a fixed order and a
candidate only replaces the incumbent when strictly shorter.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Sequence

from .core import ColoredGraph, CycleWitness, Graph, GraphError


class BudgetExceeded(RuntimeError):
    """The node-expansion budget ran out before the search finished."""

    def __init__(self, budget: int, best_bound: int | None = None):
        super().__init__(f"search budget of {budget} expansions exhausted")
        self.budget = budget
        self.best_bound = best_bound


class PreconditionError(ValueError):
    pass


class NotFoundError(RuntimeError):
    pass


class Digraph:
    """Simple digraph on ``0..n-1``.

    ``provenance`` optionally maps each arc to ``(edge id, color)`` in a
    source :class:`ColoredGraph`; ``labels`` maps local vertex ids back to
    source vertex ids.
    """

    def __init__(
        self,
        n: int,
        arcs: Iterable[tuple[int, int]],
        provenance: dict[tuple[int, int], tuple[int, int]] | None = None,
        labels: Sequence[int] | None = None,
    ):
        self.n = int(n)
        self.arcs = tuple(sorted(set(arcs)))
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            if u == v:
                raise GraphError(f"loop arc at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"arc ({u}, {v}) outside 0..{self.n - 1}")
            out[u].append(v)
        self._out = tuple(tuple(x) for x in out)
        self.provenance = provenance
        self.labels = tuple(labels) if labels is not None else None

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


def min_out_degree(d: Digraph) -> int:
    if d.n < 1:
        raise ValueError("min out-degree of an empty digraph is undefined")
    return min(d.out_degree(v) for v in range(d.n))


def shortest_directed_cycle(d: Digraph) -> CycleWitness | None:
    """Exact directed girth by one breadth-first search per source.

    A shortest cycle through ``s`` closes with an arc ``v -> s`` where ``v``
    minimizes ``dist(s, v)``.  Returns ``None`` for acyclic digraphs.
    """
    best: list[int] | None = None
    for s in range(d.n):
        limit = len(best) if best else d.n + 1
        parent = {s: -1}
        dist = {s: 0}
        queue = deque([s])
        closing = None
        while queue and closing is None:
            u = queue.popleft()
            if dist[u] + 1 >= limit:
                break
            for w in d.out_neighbors(u):
                if w == s:
                    closing = u
                    break
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
        if closing is not None:
            path = []
            x = closing
            while x != -1:
                path.append(x)
                x = parent[x]
            path.reverse()
            if best is None or len(path) < len(best):
                best = path
                if len(best) == 2:
                    break
    if best is None:
        return None
    colors = ()
    if d.provenance is not None:
        L = len(best)
        colors = tuple(d.provenance[(best[i], best[(i + 1) % L])][1] for i in range(L))
    return CycleWitness.make(best, colors, kind="directed", provenance="shortest_directed_cycle")


def shortest_cycle_undirected(g: Graph) -> CycleWitness | None:
    """Exact girth of a simple graph, or ``None`` for a forest.

    Breadth-first search from every vertex; a non-tree edge ``uw`` closes the
    cycle formed by the tree paths from their lowest common ancestor.  That
    cycle is simple and no longer than ``dist(u) + dist(w) + 1``; the minimum
    over all sources is the girth.
    """
    best: list[int] | None = None
    n = g.n
    for s in range(n):
        bound = len(best) if best else n + 1
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            # any cycle found from here on has length >= 2*dist[u] + 1
            if 2 * dist[u] + 1 >= bound:
                break
            for w in g.neighbors(u):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u] and dist[w] >= dist[u]:
                    if dist[u] + dist[w] + 1 >= bound:
                        continue
                    cyc = _tree_cycle(u, w, parent, dist)
                    if len(cyc) < bound:
                        best, bound = cyc, len(cyc)
        if best is not None and len(best) == 3:
            break
    if best is None:
        return None
    colors = ()
    if isinstance(g, ColoredGraph):
        return CycleWitness.in_graph(g, best, provenance="shortest_cycle_undirected")
    return CycleWitness.make(best, colors, provenance="shortest_cycle_undirected")


def _tree_cycle(u: int, w: int, parent: list[int], dist: list[int]) -> list[int]:
    left, right = [u], [w]
    a, b = u, w
    while dist[a] > dist[b]:
        a = parent[a]
        left.append(a)
    while dist[b] > dist[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the ancestor; right also ends there, drop the duplicate
    return left[::-1] + right[:-1]


# ---------------------------------------------------------------------------
# Rainbow cycles


def shortest_rainbow_cycle_exact(
    g: ColoredGraph, max_len: int | None = None, budget: int | None = None
) -> CycleWitness | None:
    """Minimum-length rainbow cycle of length at most ``max_len``.

    Iterative deepening over the cycle length.  For each length, every cycle
    is searched from its lowest-ranked vertex (anchors ranked by ascending
    degree, then id), extending only through vertices ranked above the
    anchor along edges whose colors are still unused.  A breadth-first distance table per
    anchor prunes paths that cannot return in time.

    ``budget`` caps the number of DFS node expansions; exhausting it raises
    :class:`BudgetExceeded`, which is distinct from returning ``None``.
    Exponential in ``max_len``; meant for small hosts.
    """
    n = g.n
    limit = n if max_len is None else min(max_len, n)
    if limit < 3:
        return None
    order = sorted(range(n), key=lambda v: (g.degree(v), v))
    rank = [0] * n
    for r, v in enumerate(order):
        rank[v] = r
    colors = g.colors
    adj = [
        sorted(
            ((w, colors[e]) for w, e in zip(g.neighbors(v), g.incident(v)) if rank[w] > rank[v]),
            key=lambda t: rank[t[0]],
        )
        for v in range(n)
    ]
    full_adj = [list(zip(g.neighbors(v), (colors[e] for e in g.incident(v)))) for v in range(n)]
    spent = [0]

    def distances(s: int) -> list[int]:
        # distances back to s through vertices ranked above s
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        rs = rank[s]
        while queue:
            u = queue.popleft()
            for w, _ in full_adj[u]:
                if dist[w] < 0 and rank[w] > rs:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    dist_cache: dict[int, list[int]] = {}

    for L in range(3, limit + 1):
        for s in order:
            if len(adj[s]) < 2:
                continue
            dist = dist_cache.get(s)
            if dist is None:
                dist = dist_cache[s] = distances(s)
            path = [s]
            path_colors: list[int] = []
            on_path = {s}
            closing = {w: c for w, c in adj[s]}

            def extend(v: int, used: frozenset) -> bool:
                spent[0] += 1
                if budget is not None and spent[0] > budget:
                    raise BudgetExceeded(budget)
                depth = len(path) - 1
                if depth == L - 1:
                    c = closing.get(v)
                    if c is not None and c not in used and v != s:
                        path_colors.append(c)
                        return True
                    return False
                for w, c in full_adj[v]:
                    if w in on_path or c in used:
                        continue
                    dw = dist[w]  # negative for vertices ranked below the anchor
                    if dw < 0 or depth + 1 + dw > L:
                        continue
                    path.append(w)
                    path_colors.append(c)
                    on_path.add(w)
                    if extend(w, used | {c}):
                        return True
                    path.pop()
                    path_colors.pop()
                    on_path.discard(w)
                return False

            if extend(s, frozenset()):
                return CycleWitness.make(
                    path, path_colors, provenance="shortest_rainbow_cycle_exact"
                )
    return None


def greedy_rainbow_cycle(
    g: ColoredGraph, max_len: int, max_anchors: int = 64
) -> CycleWitness | None:
    """Heuristic: grow a breadth-first tree of rainbow paths from an anchor.

    A vertex joins the tree only along an edge whose color is new to its
    tree path.  A non-tree edge joining two different branches closes a
    cycle when the two path color sets and the edge color are pairwise
    disjoint.  Returns the first such cycle of length ``<= max_len``; may
    miss cycles that exist.
    """
    n = g.n
    colors = g.colors
    for s in range(min(n, max_anchors)):
        parent = {s: -1}
        depth = {s: 0}
        branch = {s: -1}
        used = {s: frozenset()}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * depth[u] + 1 > max_len:
                break
            for w, e in zip(g.neighbors(u), g.incident(u)):
                c = colors[e]
                if w == parent[u]:
                    continue
                if w not in depth:
                    if c in used[u]:
                        continue
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    branch[w] = w if u == s else branch[u]
                    used[w] = used[u] | {c}
                    queue.append(w)
                    continue
                if w == s:
                    if depth[u] >= 2 and c not in used[u] and depth[u] + 1 <= max_len:
                        return CycleWitness.make(
                            _root_path(u, parent), _path_colors(g, _root_path(u, parent), close=True),
                            provenance="greedy_rainbow_cycle",
                        )
                    continue
                if u == s or branch[w] == branch[u]:
                    continue
                if depth[u] + depth[w] + 1 > max_len:
                    continue
                cu, cw = used[u], used[w]
                if c in cu or c in cw or not cu.isdisjoint(cw):
                    continue
                left = _root_path(u, parent)
                right = _root_path(w, parent)[1:]
                cyc = left + right[::-1]
                return CycleWitness.make(
                    cyc, _path_colors(g, cyc, close=True), provenance="greedy_rainbow_cycle"
                )
    return None


def _root_path(v: int, parent: dict[int, int]) -> list[int]:
    out = []
    while v != -1:
        out.append(v)
        v = parent[v]
    return out[::-1]


def _path_colors(g: ColoredGraph, verts: list[int], close: bool) -> list[int]:
    L = len(verts)
    stop = L if close else L - 1
    return [g.color_of(verts[i], verts[(i + 1) % L]) for i in range(stop)]


def devos_case_search(
    g: ColoredGraph, budget: int | None = None, max_anchors: int = 64
) -> CycleWitness:
    """Rainbow cycle of length at most ``ceil(n/2) + 1`` when every class has >= 2 edges.

    A greedy pass runs first; the exact iterative-deepening search is the
    fallback.  Raises :class:`PreconditionError` if some color class has
    fewer than two edges and :class:`NotFoundError` if no cycle is found,
    which should not happen on valid input.
    """
    sizes = g.class_sizes()
    small = [i for i in range(1, g.num_colors + 1) if sizes[i] < 2]
    if small:
        raise PreconditionError(f"color classes smaller than 2: {small[:10]}")
    cap = -(-g.n // 2) + 1
    w = greedy_rainbow_cycle(g, cap, max_anchors=max_anchors)
    if w is not None:
        return w.with_provenance("devos_case_search/greedy")
    w = shortest_rainbow_cycle_exact(g, cap, budget=budget)
    if w is None:
        raise NotFoundError(f"no rainbow cycle of length <= {cap}")
    return w.with_provenance("devos_case_search/exact")


# ---------------------------------------------------------------------------
# Closed-form bounds (log base 2)


def bound_bollobas(n: int, k: float) -> float:
    """``2(n+k)/(3k) * (log k + log log k + 4)``: girth bound for ``n + k`` edges."""
    if n < 4 or k < 2:
        raise ValueError(f"needs n >= 4 and k >= 2, got n={n}, k={k}")
    return 2 * (n + k) / (3 * k) * (math.log2(k) + math.log2(math.log2(k)) + 4)


def bound_shen(n: int, k: int) -> int:
    """``ceil(n/k) + 73``: directed girth bound when every out-degree is >= k."""
    if n < 1 or k < 1:
        raise ValueError(f"needs n >= 1 and k >= 1, got n={n}, k={k}")
    return -(-n // k) + 73
