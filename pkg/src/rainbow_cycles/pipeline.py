"""Constructive search for a rainbow cycle of length at most ``ceil(n/k)``.

The driver follows the induction on the number of vertices:

1. classify dominant (vertex, color) pairs;
2. build a nice vertex set of size ``ceil(6 f)``, which may instead
   produce a short rainbow cycle directly (no dominant colors, or a short
   cycle in the auxiliary digraph of representatives) or hand a smaller
   instance to the induction;
3. shrink it to a stable set ``H'`` of size ``>= ceil(2 f)``;
4. keep one edge per color outside ``H'``.  That subgraph has at least
   ``ceil(f)`` more edges than vertices, so its girth is small, and every
   cycle in it is rainbow because no color repeats.

Every step where the argument says "contradiction" returns the cycle it
found.  In strict mode each inequality the argument relies on is asserted
and a failure raises :class:`ProofStepError`; in relaxed mode failures are
logged, recorded in the trace, and the search continues best-effort.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .core import ColoredGraph, CycleWitness, PipelineParams, validate, verify_witness
from .girth import (
    Digraph,
    NotFoundError,
    PreconditionError,
    bound_bollobas,
    bound_shen,
    devos_case_search,
    min_out_degree,
    shortest_cycle_undirected,
    shortest_directed_cycle,
    shortest_rainbow_cycle_exact,
)

log = logging.getLogger(__name__)


class ProofStepError(AssertionError):
    """A strict-mode inequality failed; names the step and the check."""


class NotFound(RuntimeError):
    """Relaxed-mode search ended without a short enough rainbow cycle."""

    def __init__(self, reason: str, best: CycleWitness | None = None):
        super().__init__(reason)
        self.best = best


class EarlyCycle(Exception):
    """Carries a rainbow cycle found before a nice set was needed."""

    def __init__(self, witness: CycleWitness):
        super().__init__(f"rainbow cycle of length {witness.length}")
        self.witness = witness


class RecursionRequired(Exception):
    """The shrinking step is stuck; recurse on a strictly smaller instance.

    ``subgraph`` has vertex set ``H_j`` (relabelled ``0..|H_j|-1``) and the
    edges of the blocked colors, which all lie inside ``H_j``.  ``vertex_map``
    and ``color_map`` translate the subgraph's ids back to the parent.
    """

    def __init__(self, subgraph: ColoredGraph, vertex_map: tuple[int, ...], color_map: tuple[int, ...]):
        super().__init__(f"recurse on {subgraph.n} vertices")
        self.subgraph = subgraph
        self.vertex_map = vertex_map
        self.color_map = color_map

    def lift(self, parent: ColoredGraph, w: CycleWitness) -> CycleWitness:
        verts = [self.vertex_map[v] for v in w.vertices]
        lifted = CycleWitness.in_graph(parent, verts, provenance=f"recursion/{w.provenance}")
        assert lifted.colors == tuple(self.color_map[c] for c in w.colors)
        return lifted


# ---------------------------------------------------------------------------
# Data


@dataclass(frozen=True)
class DominanceTable:
    dominant_pairs: frozenset[tuple[int, int]]
    vertex_dominating_colors: frozenset[int]
    representatives: dict[int, int]
    S: frozenset[int]

    def dominant_vertices(self, color: int) -> list[int]:
        return sorted(v for v, i in self.dominant_pairs if i == color)

    def colors_represented_by(self, v: int) -> list[int]:
        return sorted(i for i, r in self.representatives.items() if r == v)


@dataclass(frozen=True)
class NiceSet:
    H: frozenset[int]
    blocked_colors: frozenset[int]


@dataclass(frozen=True)
class NiceViolation:
    H: frozenset[int]
    condition: int
    offending_colors: tuple[int, ...]
    blocked_colors: frozenset[int]

    def __str__(self) -> str:
        if self.condition == 1:
            return f"dominant colors {list(self.offending_colors)} have no dominant vertex outside H"
        return f"{len(self.blocked_colors)} blocked colors exceed |H| = {len(self.H)}"


@dataclass(frozen=True)
class RefinementResult:
    C: frozenset[int]
    D: frozenset[int]
    J_edges: tuple[tuple[int, int], ...]
    H_prime: frozenset[int]
    colors_outside: int


@dataclass(frozen=True)
class DenseWitness:
    vertex_set: frozenset[int]
    chosen_edges: dict[int, tuple[int, int]]

    @property
    def excess(self) -> int:
        return len(self.chosen_edges) - len(self.vertex_set)

    def as_graph(self, n: int, num_colors: int) -> ColoredGraph:
        items = sorted(self.chosen_edges.items())
        return ColoredGraph(n, [e for _, e in items], [c for c, _ in items], num_colors)


@dataclass
class Trace:
    """Step records exported as a JSON array."""

    records: list[dict] = field(default_factory=list)

    def add(self, step: str, depth: int, branch: str | None = None, **sizes) -> dict:
        rec = {"step": step, "depth": depth, "branch": branch, "sizes": sizes, "assertions": {}}
        self.records.append(rec)
        return rec


def _require(p: PipelineParams, rec: dict | None, name: str, ok: bool, detail: str = "") -> bool:
    if rec is not None:
        rec["assertions"][name] = bool(ok)
    if not ok:
        msg = f"{rec['step'] if rec else '?'}: {name} failed" + (f" ({detail})" if detail else "")
        if p.strict_mode:
            raise ProofStepError(msg)
        log.info("relaxed mode: %s", msg)
    return ok


# ---------------------------------------------------------------------------
# Dominance and nice sets


def build_dominance(g: ColoredGraph, p: PipelineParams) -> DominanceTable:
    """Pairs ``(v, i)`` with at least ``7 f(k)`` edges of color ``i`` at ``v``.

    Each vertex-dominating color's representative is its lowest-id dominant
    vertex.
    """
    thr = p.dominance_threshold
    colors = g.colors
    pairs = set()
    for v in range(g.n):
        counts: dict[int, int] = {}
        for e in g.incident(v):
            c = colors[e]
            counts[c] = counts.get(c, 0) + 1
        for c, cnt in counts.items():
            if cnt >= thr:
                pairs.add((v, c))
    reps: dict[int, int] = {}
    for v, c in sorted(pairs):
        reps.setdefault(c, v)
    return DominanceTable(
        frozenset(pairs), frozenset(reps), dict(sorted(reps.items())), frozenset(reps.values())
    )


def blocked_colors(g: ColoredGraph, dom: DominanceTable, H) -> frozenset[int]:
    """Non-dominating colors all of whose edges meet ``H`` (vacuous for empty classes)."""
    H = set(H)
    out = []
    for i in range(1, g.num_colors + 1):
        if i in dom.vertex_dominating_colors:
            continue
        if all(g.edges[e][0] in H or g.edges[e][1] in H for e in g.color_class(i)):
            out.append(i)
    return frozenset(out)


def is_nice(g: ColoredGraph, p: PipelineParams, dom: DominanceTable, H) -> NiceSet | NiceViolation:
    H = frozenset(H)
    outside_dominant = {i for v, i in dom.dominant_pairs if v not in H}
    missing = tuple(sorted(dom.vertex_dominating_colors - outside_dominant))
    blocked = blocked_colors(g, dom, H)
    if missing:
        return NiceViolation(H, 1, missing, blocked)
    if len(blocked) > len(H):
        return NiceViolation(H, 2, tuple(sorted(blocked)), blocked)
    return NiceSet(H, blocked)


def shrink_nice_set(
    g: ColoredGraph,
    p: PipelineParams,
    dom: DominanceTable,
    start: NiceSet,
    *,
    debug: bool = False,
    on_step=None,
) -> NiceSet:
    """Remove vertices one at a time, keeping the set nice, until ``|H| = ceil(6 f)``.

    With ``C`` the blocked colors of the current ``H``:

    * ``|C| < |H|``: drop the lowest-id vertex of ``H``;
    * otherwise drop the ``H``-side end of the first edge (lowest color,
      then lexicographic edge order) of a blocked color that leaves ``H``;
    * if no blocked color has such an edge, raise :class:`RecursionRequired`
      for the subgraph on ``H`` with the blocked colors' edges.

    ``debug`` re-derives niceness from scratch after every removal.
    ``on_step(H, blocked)`` is called for every intermediate set.
    """
    target = p.nice_size
    n = g.n
    H = set(start.H)
    if not (target <= len(H) < n):
        raise ValueError(f"need {target} <= |H| < {n}, got |H| = {len(H)}")
    edges, colors = g.edges, g.colors
    vdom = dom.vertex_dominating_colors
    # edges of each color with both ends outside H
    free = [0] * (g.num_colors + 1)
    for e, (u, v) in enumerate(edges):
        if u not in H and v not in H:
            free[colors[e]] += 1
    C = {i for i in range(1, g.num_colors + 1) if i not in vdom and free[i] == 0}
    if on_step:
        on_step(frozenset(H), frozenset(C))
    while len(H) > target:
        if len(C) < len(H):
            v = min(H)
        else:
            v = _crossing_endpoint(g, H, C)
            if v is None:
                raise _recursion_instance(g, H, C)
        H.discard(v)
        for u, e in zip(g.neighbors(v), g.incident(v)):
            if u not in H:
                c = colors[e]
                free[c] += 1
                C.discard(c)
        if debug:
            res = is_nice(g, p, dom, H)
            if not isinstance(res, NiceSet):
                raise ProofStepError(f"shrink_nice_set: intermediate set not nice: {res}")
            if res.blocked_colors != C:
                raise ProofStepError("shrink_nice_set: incremental blocked set drifted")
        if on_step:
            on_step(frozenset(H), frozenset(C))
    return NiceSet(frozenset(H), frozenset(C))


def _crossing_endpoint(g: ColoredGraph, H: set[int], C: set[int]) -> int | None:
    for i in sorted(C):
        for e in g.color_class(i):
            u, v = g.edges[e]
            if (u in H) != (v in H):
                return u if u in H else v
    return None


def _recursion_instance(g: ColoredGraph, H: set[int], C: set[int]) -> RecursionRequired:
    verts = tuple(sorted(H))
    cols = tuple(sorted(C))
    vid = {v: j for j, v in enumerate(verts)}
    cid = {c: j + 1 for j, c in enumerate(cols)}
    edges, new_colors = [], []
    for c in cols:
        for e in g.color_class(c):
            u, v = g.edges[e]
            edges.append((vid[u], vid[v]))
            new_colors.append(cid[c])
    sub = ColoredGraph(len(verts), edges, new_colors, num_colors=len(cols))
    return RecursionRequired(sub, verts, (0,) + cols)


# ---------------------------------------------------------------------------
# Auxiliary digraph on representatives


def build_aux_digraph(
    g: ColoredGraph, p: PipelineParams, dom: DominanceTable, rec: dict | None = None
) -> Digraph:
    """Digraph on the representatives with ``v_i -> v_j`` when edge ``v_i v_j`` has color ``i``.

    A vertex representing several colors gets an arc for each of them.
    Provenance maps every arc to ``(edge id, color)``.  When fewer than
    ``6 f`` vertices lie outside the representatives, every out-degree is at
    least ``f``; strict mode asserts it.
    """
    if not dom.S:
        raise ValueError("no representatives: the auxiliary digraph is empty")
    labels = sorted(dom.S)
    local = {v: j for j, v in enumerate(labels)}
    arcs, prov = [], {}
    for v in labels:
        mine = set(dom.colors_represented_by(v))
        for u, e in zip(g.neighbors(v), g.incident(v)):
            c = g.colors[e]
            if c in mine and u in local:
                a = (local[v], local[u])
                arcs.append(a)
                prov[a] = (e, c)
    d = Digraph(len(labels), arcs, provenance=prov, labels=labels)
    if g.n - len(dom.S) < 6 * p.f_k:
        delta = min_out_degree(d)
        if rec is not None:
            rec["sizes"]["min_out_degree"] = delta
        _require(p, rec, "min_out_degree >= f(k)", delta >= p.f_k, f"{delta} < {float(p.f_k):.3f}")
    return d


def aux_cycle_to_rainbow(g: ColoredGraph, d: Digraph, w: CycleWitness) -> CycleWitness:
    verts = [d.labels[v] for v in w.vertices]
    return CycleWitness.in_graph(g, verts, provenance="aux_digraph")


# ---------------------------------------------------------------------------
# Building a nice set of the right size


def build_nice_set(
    g: ColoredGraph,
    p: PipelineParams,
    dom: DominanceTable,
    *,
    trace: Trace | None = None,
    depth: int = 0,
    debug: bool = False,
    budget: int | None = None,
) -> NiceSet:
    """Produce a nice set of size ``ceil(6 f)`` from ``H = V \\ S``.

    Branches on ``|H|``:

    (a) ``ceil(6f) <= |H| < n``: shrink ``H``;
    (b) ``|H| = n`` (no dominant colors): find a rainbow cycle ``K`` of
        length ``<= ceil(n/2) + 1``; if it is already short enough raise
        :class:`EarlyCycle`, else shrink ``V \\ V(K)``;
    (c) ``|H| < 6f``: a shortest directed cycle of the auxiliary digraph is a
        rainbow cycle of ``g``; raise :class:`EarlyCycle` with it.

    May also raise :class:`RecursionRequired` (from shrinking) or, in
    relaxed mode, :class:`NotFound`.  In relaxed mode a nice set smaller
    than ``ceil(6 f)`` may be returned when no larger one is available.
    """
    trace = trace if trace is not None else Trace()
    n = g.n
    target = p.target_length(n)
    H = frozenset(range(n)) - dom.S
    rec = trace.add("build_nice_set", depth, S=len(dom.S), H=len(H), n=n, nice_size=p.nice_size)

    def shrink_from(start: NiceSet) -> NiceSet:
        if len(start.H) < p.nice_size:
            _require(p, rec, "|H| >= ceil(6f)", False, f"|H| = {len(start.H)}")
            return start
        srec = trace.add("shrink_nice_set", depth, start=len(start.H), target=p.nice_size)
        try:
            out = shrink_nice_set(g, p, dom, start, debug=debug)
        except RecursionRequired as r:
            srec["branch"] = "recursion"
            srec["sizes"].update(H_j=r.subgraph.n, C_j=r.subgraph.num_colors)
            raise
        srec["sizes"].update(H=len(out.H), C_j=len(out.blocked_colors))
        return out

    if len(H) == n:
        rec["branch"] = "b"
        try:
            K = devos_case_search(g, budget=budget)
        except (PreconditionError, NotFoundError) as exc:
            _require(p, rec, "rainbow cycle of length <= ceil(n/2)+1", False, str(exc))
            if p.relaxed:
                try:
                    K = shortest_rainbow_cycle_exact(g, target, budget=budget)
                except Exception:
                    K = None
                if K is not None:
                    raise EarlyCycle(K.with_provenance("branch_b/exact")) from None
            raise NotFound(f"branch (b): {exc}") from None
        rec["sizes"]["devos_length"] = K.length
        _require(p, rec, "devos length <= ceil(n/2)+1", K.length <= -(-n // 2) + 1)
        if K.length <= target:
            raise EarlyCycle(K.with_provenance(f"branch_b/{K.provenance}"))
        start = is_nice(g, p, dom, frozenset(range(n)) - set(K.vertices))
        if not isinstance(start, NiceSet):
            raise ProofStepError(f"build_nice_set: V \\ V(K) not nice: {start}")
        rec["sizes"]["H_after_K"] = len(start.H)
        _require(p, rec, "n/2 - 1 >= 6f", len(start.H) >= 6 * p.f_k)
        return shrink_from(start)

    start = is_nice(g, p, dom, H)
    if not isinstance(start, NiceSet):
        raise ProofStepError(f"build_nice_set: V \\ S not nice: {start}")

    if len(H) >= 6 * p.f_k:
        rec["branch"] = "a"
        return shrink_from(start)

    rec["branch"] = "c"
    d = build_aux_digraph(g, p, dom, rec)
    dw = shortest_directed_cycle(d)
    if dw is not None:
        K = aux_cycle_to_rainbow(g, d, dw)
        rec["sizes"]["aux_girth"] = K.length
        rec["sizes"]["shen_bound"] = bound_shen(len(dom.S), max(1, math.floor(p.f_k)))
        if _require(p, rec, "aux cycle length <= ceil(n/k)", K.length <= target):
            raise EarlyCycle(K)
    else:
        _require(p, rec, "auxiliary digraph has a cycle", False)
    rec["sizes"]["fallback_H"] = len(start.H)
    return start


# ---------------------------------------------------------------------------
# Refinement and the dense subgraph


def greedy_stable_set(vertices, edges) -> frozenset[int]:
    """Repeatedly take a minimum-degree vertex (lowest id on ties) and delete its neighborhood.

    On a graph with at most as many edges as vertices this returns at least
    a third of the vertices.
    """
    nbrs: dict[int, set[int]] = {v: set() for v in vertices}
    for a, b in edges:
        if a != b:
            nbrs[a].add(b)
            nbrs[b].add(a)
    chosen = []
    while nbrs:
        v = min(nbrs, key=lambda x: (len(nbrs[x]), x))
        chosen.append(v)
        gone = nbrs[v] | {v}
        for x in gone:
            for y in nbrs.pop(x):
                if y in nbrs:
                    nbrs[y].discard(x)
    return frozenset(chosen)


def refine_nice_set(
    g: ColoredGraph,
    p: PipelineParams,
    dom: DominanceTable,
    nice: NiceSet,
    rec: dict | None = None,
) -> RefinementResult:
    """Find a stable ``H' ⊆ H`` such that all colors outside a small set ``D`` keep an edge off ``H'``.

    ``D`` holds the blocked colors whose edges leaving ``H`` all share one
    ``H``-endpoint.  For every other blocked color the two lowest-id
    ``H``-endpoints of its leaving edges become an edge of an auxiliary
    graph ``J`` on ``H``, and ``H'`` is a greedy stable set of ``J``.
    """
    H = nice.H
    C = blocked_colors(g, dom, H)
    D, J = set(), []
    for i in sorted(C):
        ends = set()
        for e in g.color_class(i):
            u, v = g.edges[e]
            if (u in H) != (v in H):
                ends.add(u if u in H else v)
        if len(ends) <= 1:
            D.add(i)
        else:
            a, b = sorted(ends)[:2]
            J.append((a, b))
    Hp = greedy_stable_set(H, J)
    outside = _colors_with_edge_outside(g, Hp)
    if rec is not None:
        rec["sizes"].update(H=len(H), C=len(C), D=len(D), J_edges=len(J), H_prime=len(Hp), colors_outside=outside)
    _require(p, rec, "|D| <= ceil(f)-1", len(D) <= p.f_ceil - 1, f"|D| = {len(D)}")
    _require(p, rec, "|E(J)| <= |V(J)|", len(J) <= len(H))
    _require(p, rec, "|H'| >= |H|/3", 3 * len(Hp) >= len(H))
    _require(p, rec, "|H'| >= ceil(2f)", len(Hp) >= p.stable_size, f"|H'| = {len(Hp)}")
    _require(p, rec, "|H'| < 7f", len(Hp) < 7 * p.f_k)
    _require(p, rec, "colors with edge outside H' >= n - |D|", outside >= g.num_colors - len(D))
    return RefinementResult(frozenset(C), frozenset(D), tuple(J), Hp, outside)


def _colors_with_edge_outside(g: ColoredGraph, Hp) -> int:
    return sum(
        1
        for i in range(1, g.num_colors + 1)
        if any(g.edges[e][0] not in Hp and g.edges[e][1] not in Hp for e in g.color_class(i))
    )


def build_dense_witness(g: ColoredGraph, H_prime) -> DenseWitness:
    """One edge per color (the lexicographically least) with both ends outside ``H_prime``."""
    Hp = frozenset(H_prime)
    chosen = {}
    for i in range(1, g.num_colors + 1):
        for e in g.color_class(i):
            u, v = g.edges[e]
            if u not in Hp and v not in Hp:
                chosen[i] = (u, v)
                break
    return DenseWitness(frozenset(range(g.n)) - Hp, chosen)


# ---------------------------------------------------------------------------
# Driver


def find_short_rainbow_cycle(
    g: ColoredGraph,
    p: PipelineParams,
    *,
    trace: Trace | None = None,
    debug: bool = False,
    budget: int | None = None,
    _depth: int = 0,
) -> CycleWitness:
    """Return a rainbow cycle of ``g`` with length at most ``ceil(n/k)``.

    Strict mode requires the hypotheses (``validate(g, p).overall``) and
    raises :class:`ProofStepError` if any step's inequality fails, which
    would mean a bug or invalid input.  Relaxed mode accepts anything and
    raises :class:`NotFound` when it cannot finish.  Step records are
    appended to ``trace``.
    """
    trace = trace if trace is not None else Trace()
    n = g.n
    target = p.target_length(n)
    rec = trace.add("validate", _depth, n=n, m=g.m, target=target)
    report = validate(g, p)
    rec["sizes"]["min_class_size"] = report.min_class_size
    _require(p, rec, "hypotheses hold", report.overall, "; ".join(report.notes) or "undersized classes")
    _require(p, rec, "n > 43f", n > p.class_size_req)

    dom = build_dominance(g, p)
    trace.add(
        "build_dominance", _depth,
        dominant_pairs=len(dom.dominant_pairs), vertex_dominating=len(dom.vertex_dominating_colors), S=len(dom.S),
    )
    try:
        nice = build_nice_set(g, p, dom, trace=trace, depth=_depth, debug=debug, budget=budget)
    except EarlyCycle as ec:
        w = ec.witness
        rrec = trace.add("early_cycle", _depth, w.provenance, length=w.length, target=target)
        _require(p, rrec, "length <= ceil(n/k)", w.length <= target)
        return _checked(g, w, target, p, rrec)
    except RecursionRequired as r:
        sub = r.subgraph
        rrec = trace.add("recurse", _depth, "recursion", n_sub=sub.n, colors_sub=sub.num_colors)
        _require(p, rrec, "subinstance strictly smaller", sub.n < n)
        if sub.n >= n:
            raise NotFound("recursion would not shrink the instance") from None
        sub_w = find_short_rainbow_cycle(sub, p, trace=trace, debug=debug, budget=budget, _depth=_depth + 1)
        w = r.lift(g, sub_w)
        return _checked(g, w, target, p, rrec)

    rrec = trace.add("refine_nice_set", _depth)
    ref = refine_nice_set(g, p, dom, nice, rrec)
    dense = build_dense_witness(g, ref.H_prime)
    drec = trace.add(
        "dense_subgraph", _depth, vertices=len(dense.vertex_set), edges=len(dense.chosen_edges), excess=dense.excess
    )
    _require(p, drec, "excess >= ceil(f)", dense.excess >= p.f_ceil)
    cyc = shortest_cycle_undirected(dense.as_graph(n, g.num_colors))
    if cyc is None:
        _require(p, drec, "dense subgraph has a cycle", False)
        raise NotFound("dense subgraph is a forest")
    drec["sizes"]["girth"] = cyc.length
    nv, ex = len(dense.vertex_set), dense.excess
    if nv >= 4 and ex >= 2:
        b = bound_bollobas(nv, ex)
        drec["sizes"]["bollobas_bound"] = b
        _require(p, drec, "girth <= sparse-graph girth bound", cyc.length <= b)
    if p.f_k >= 2 and n >= 4:
        drec["sizes"]["bollobas_at_f"] = bound_bollobas(n, p.f_k)
    w = CycleWitness.in_graph(g, cyc.vertices, provenance="dense_subgraph")
    if not _require(p, drec, "length <= ceil(n/k)", w.length <= target):
        raise NotFound(f"dense subgraph girth {w.length} exceeds {target}", best=w)
    return _checked(g, w, target, p, drec)


def _checked(g: ColoredGraph, w: CycleWitness, target: int, p: PipelineParams, rec: dict) -> CycleWitness:
    problems = verify_witness(g, w, target)
    if problems:
        if p.relaxed and problems == [f"length {w.length} exceeds {target}"]:
            raise NotFound(problems[0], best=w)
        raise ProofStepError(f"{rec['step']}: witness failed verification: {problems}")
    rec["assertions"]["witness verified"] = True
    return w
