import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from rainbow_cycles.core import ColoredGraph, CycleWitness, PipelineParams, verify_witness
from rainbow_cycles.gen import (
    gadget_branch_a,
    gadget_recursion,
    gadget_tournament,
    gen_random_colored,
    rotation_coloring,
)
from rainbow_cycles.girth import shortest_directed_cycle
from rainbow_cycles.pipeline import (
    EarlyCycle,
    NiceSet,
    NiceViolation,
    NotFound,
    ProofStepError,
    RecursionRequired,
    Trace,
    aux_cycle_to_rainbow,
    build_aux_digraph,
    build_dense_witness,
    build_dominance,
    build_nice_set,
    find_short_rainbow_cycle,
    greedy_stable_set,
    is_nice,
    refine_nice_set,
    shrink_nice_set,
)

F37 = PipelineParams.relaxed_with(2, Fraction(3, 7))  # dominant at 3 edges, nice size 3


def independent_nice(g, thr, H):
    return oracles.is_nice(g, thr, H)


def independent_blocked(g, dom_colors, H):
    return oracles.blocked_colors(g.edges, g.colors, g.num_colors, dom_colors, H)


# -- dominance


def test_star_meets_threshold_exactly():
    p = PipelineParams.relaxed_with(2, Fraction(2, 7))
    g = ColoredGraph.from_triples(5, [(0, 1, 5), (0, 2, 5), (3, 4, 1)])
    dom = build_dominance(g, p)
    assert (0, 5) in dom.dominant_pairs
    assert dom.representatives == {5: 0} and dom.S == {0}


def test_matchings_have_no_dominance():
    dom = build_dominance(rotation_coloring(9), PipelineParams.relaxed_with(2, Fraction(2, 7)))
    assert not dom.dominant_pairs and not dom.S


def test_representative_is_lowest_id():
    p = PipelineParams.relaxed_with(2, Fraction(2, 7))
    g = ColoredGraph.from_triples(5, [(1, 2, 3), (1, 3, 3), (0, 2, 3), (0, 4, 3)])
    dom = build_dominance(g, p)
    assert dom.dominant_vertices(3) == [0, 1, 2]
    assert dom.representatives[3] == 0


def test_dominance_on_strict_instance_matches_recount(k1205):
    g, p = k1205
    dom = build_dominance(g, p)
    seen = {}
    for (u, v), c in zip(g.edges, g.colors):
        seen[(u, c)] = seen.get((u, c), 0) + 1
        seen[(v, c)] = seen.get((v, c), 0) + 1
    expected = {key for key, x in seen.items() if x >= 7 * p.f_k}
    assert dom.dominant_pairs == expected == set()
    assert max(seen.values()) == 1


# -- nice sets


def test_empty_set_is_nice():
    g = rotation_coloring(7)
    dom = build_dominance(g, F37)
    res = is_nice(g, F37, dom, set())
    assert isinstance(res, NiceSet) and res.blocked_colors == frozenset()


def test_whole_vertex_set_is_nice_without_dominance():
    g = rotation_coloring(7)
    dom = build_dominance(g, F37)
    res = is_nice(g, F37, dom, range(7))
    assert isinstance(res, NiceSet) and len(res.blocked_colors) == 7


def test_unique_dominant_vertex_inside_violates_condition_one():
    g = gadget_branch_a()
    dom = build_dominance(g, F37)
    res = is_nice(g, F37, dom, {0, 4})
    assert isinstance(res, NiceViolation) and res.condition == 1 and res.offending_colors == (1,)


def test_too_many_blocked_colors_violates_condition_two():
    g = rotation_coloring(7)
    dom = build_dominance(g, F37)
    res = is_nice(g, F37, dom, {0, 1, 2, 3, 4, 5})
    assert isinstance(res, NiceViolation) and res.condition == 2


def test_empty_classes_count_as_blocked():
    g = ColoredGraph.from_triples(4, [(0, 1, 1)])
    dom = build_dominance(g, F37)
    res = is_nice(g, F37, dom, set())
    assert isinstance(res, NiceViolation) and res.blocked_colors == {2, 3, 4}


# -- shrinking


SHRINK_GADGET = [(0, 1, 5), (0, 2, 1), (0, 3, 2), (0, 4, 2), (1, 2, 2), (1, 3, 3), (1, 4, 3), (2, 3, 5)]
F16 = PipelineParams.relaxed_with(2, Fraction(1, 6))  # dominant at 2 edges, target size 1


def test_shrink_unchanged_at_target():
    g = gadget_branch_a()
    dom = build_dominance(g, F37)
    start = is_nice(g, F37, dom, {6, 7, 8})
    assert isinstance(start, NiceSet)
    assert shrink_nice_set(g, F37, dom, start) == start


def test_shrink_drops_lowest_ids_while_slack():
    g = ColoredGraph.from_triples(5, SHRINK_GADGET)
    dom = build_dominance(g, F16)
    assert dom.S == {0, 1}
    start = is_nice(g, F16, dom, {2, 3, 4})
    steps = []
    out = shrink_nice_set(g, F16, dom, start, debug=True, on_step=lambda h, c: steps.append((h, c)))
    assert out.H == {4}
    assert [sorted(h) for h, _ in steps] == [[2, 3, 4], [3, 4], [4]]
    for h, c in steps:
        assert independent_nice(g, 7 * F16.f_k, h)
        assert c == independent_blocked(g, dom.vertex_dominating_colors, h)
    assert all(len(c) < len(h) for h, c in steps[:-1])


def test_shrink_raises_recursion_with_blocked_edges():
    g = gadget_recursion(7)
    dom = build_dominance(g, F37)
    start = is_nice(g, F37, dom, range(1, 8))
    with pytest.raises(RecursionRequired) as info:
        shrink_nice_set(g, F37, dom, start)
    r = info.value
    sub = r.subgraph
    assert sub.n == 7 and sub.num_colors == 7 and sub.n < g.n
    # every edge of the blocked colors, relabelled
    lifted = {
        (r.vertex_map[u], r.vertex_map[v], r.color_map[c]) for u, v, c in sub.triples()
    }
    assert lifted == {t for t in g.triples() if t[2] != 1}


def test_shrink_uses_crossing_edge_when_tight():
    # H = {1..7} with star color 1 at vertex 0, and blocked color 2 also has an edge to vertex 0
    base = gadget_recursion(7).triples()
    triples = [t for t in base] + [(0, 5, 2)]
    g = ColoredGraph.from_triples(8, triples)
    dom = build_dominance(g, F37)
    start = is_nice(g, F37, dom, range(1, 8))
    steps = []
    try:
        shrink_nice_set(g, F37, dom, start, debug=True, on_step=lambda h, c: steps.append(h))
    except RecursionRequired:
        pass
    assert 5 not in steps[1]


@pytest.mark.parametrize("seed", range(100))
def test_shrink_keeps_niceness_on_random_gadgets(seed):
    rng = random.Random(seed)
    n = rng.randint(6, 14)
    g = gen_random_colored(n, rng.uniform(0.3, 0.9), seed=seed)
    p = PipelineParams.relaxed_with(2, Fraction(rng.randint(1, 3), 7))
    dom = build_dominance(g, p)
    H = set(range(n)) - dom.S
    if not (p.nice_size <= len(H) < n):
        H = set(range(n)) - dom.S - {0} if dom.S else set(range(1, n))
    start = is_nice(g, p, dom, H)
    if not isinstance(start, NiceSet) or not p.nice_size <= len(start.H) < n:
        pytest.skip("random instance has no usable start set")
    steps = []
    try:
        shrink_nice_set(g, p, dom, start, debug=True, on_step=lambda h, c: steps.append(h))
    except RecursionRequired as r:
        assert r.subgraph.n < n
    for h in steps:
        assert independent_nice(g, 7 * p.f_k, h)


# -- auxiliary digraph


P27 = PipelineParams.relaxed_with(2, Fraction(2, 7))  # dominant at 2 edges


def test_aux_single_arc():
    g = ColoredGraph.from_triples(5, [(0, 1, 1), (0, 2, 1), (1, 3, 2), (1, 4, 2)])
    dom = build_dominance(g, P27)
    d = build_aux_digraph(g, P27, dom)
    assert d.labels == (0, 1)
    assert d.arcs == ((0, 1),)
    assert d.provenance[(0, 1)] == (g.edge_index(0, 1), 1)


def test_aux_ignores_unrepresented_color():
    g = ColoredGraph.from_triples(5, [(0, 1, 3), (0, 2, 1), (0, 3, 1), (1, 3, 2), (1, 4, 2)])
    dom = build_dominance(g, P27)
    assert dom.S == {0, 1}
    assert build_aux_digraph(g, P27, dom).arcs == ()


def test_aux_shared_representative():
    triples = [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 2), (0, 5, 2), (3, 5, 3), (3, 4, 3)]
    g = ColoredGraph.from_triples(6, triples)
    dom = build_dominance(g, P27)
    assert dom.representatives == {1: 0, 2: 0, 3: 3}
    d = build_aux_digraph(g, P27, dom)
    lab = {v: j for j, v in enumerate(d.labels)}
    assert d.arcs == ((lab[0], lab[3]),)
    assert d.provenance[(lab[0], lab[3])][1] == 1


def test_aux_min_out_degree_asserted_in_strict_mode():
    # strict params on a toy graph: the degree bound f(2) = 14 cannot hold
    g = gadget_tournament(7)
    dom = build_dominance(g, F37)
    strict = PipelineParams.strict(2)
    with pytest.raises(ProofStepError, match="min_out_degree"):
        build_aux_digraph(g, strict, dom, {"step": "aux", "sizes": {}, "assertions": {}})


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_aux_cycles_replay_to_rainbow_cycles(n):
    g = gadget_tournament(n)
    p = PipelineParams.relaxed_with(2, Fraction((n - 1) // 2, 7))
    dom = build_dominance(g, p)
    d = build_aux_digraph(g, p, dom)
    cycles = oracles.directed_cycles(d.n, d.arcs)
    assert cycles
    for cyc in cycles[:500]:
        colors = [d.provenance[(cyc[i], cyc[(i + 1) % len(cyc)])][1] for i in range(len(cyc))]
        tails = [dom.colors_represented_by(d.labels[v]) for v in cyc]
        assert all(c in t for c, t in zip(colors, tails))
        assert len(set(colors)) == len(colors)
        w = CycleWitness.make([d.labels[v] for v in cyc], colors)
        assert verify_witness(g, w) == []


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_aux_cycles_rainbow_on_planted_stars(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 10)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    triples = [(u, v, rng.randint(1, n)) for u, v in pairs[: rng.randint(n, len(pairs))]]
    g = ColoredGraph.from_triples(n, triples)
    dom = build_dominance(g, P27)
    if not dom.S:
        return
    d = build_aux_digraph(g, P27, dom)
    for cyc in oracles.directed_cycles(d.n, d.arcs)[:200]:
        w = CycleWitness.in_graph(g, [d.labels[v] for v in cyc])
        if len(cyc) >= 3:
            assert w.rainbow and verify_witness(g, w) == []
        else:
            raise AssertionError("2-cycle in auxiliary digraph")


# -- building the nice set


def test_branch_b_early_cycle():
    g = rotation_coloring(7)
    dom = build_dominance(g, F37)
    with pytest.raises(EarlyCycle) as info:
        build_nice_set(g, F37, dom)
    assert info.value.witness.length == 3
    assert verify_witness(g, info.value.witness) == []


def test_branch_c_early_cycle_replays_provenance():
    g = gadget_tournament(7)
    dom = build_dominance(g, F37)
    assert dom.S == set(range(7))
    trace = Trace()
    with pytest.raises(EarlyCycle) as info:
        build_nice_set(g, F37, dom, trace=trace)
    w = info.value.witness
    assert trace.records[-1]["branch"] == "c"
    assert w.rainbow and verify_witness(g, w) == []
    # each edge's color is the color its tail represents
    for i, v in enumerate(w.vertices):
        assert dom.representatives[w.colors[i]] == v


def test_branch_a_nice_set_of_exact_size():
    g = gadget_branch_a()
    dom = build_dominance(g, F37)
    trace = Trace()
    out = build_nice_set(g, F37, dom, trace=trace)
    assert trace.records[0]["branch"] == "a"
    assert len(out.H) == F37.nice_size == 3
    assert isinstance(is_nice(g, F37, dom, out.H), NiceSet)
    assert independent_nice(g, 3, out.H)


def test_branch_b_continues_when_cycle_too_long():
    g = rotation_coloring(9)
    p = PipelineParams.relaxed_with(9, Fraction(3, 7))
    dom = build_dominance(g, p)
    out = build_nice_set(g, p, dom)
    assert len(out.H) == p.nice_size
    assert independent_nice(g, 3, out.H)


# -- refinement


@pytest.mark.parametrize("t", [1, 2, 5, 10])
def test_stable_set_on_paths_of_length_two(t):
    edges = []
    for j in range(t):
        a, b, c = 3 * j, 3 * j + 1, 3 * j + 2
        edges += [(a, b), (b, c)]
    S = greedy_stable_set(range(3 * t), edges)
    assert len(S) >= t
    assert not any(a in S and b in S for a, b in edges)


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))))
@settings(max_examples=300, deadline=None)
def test_stable_set_third_bound(data):
    n, edges = data
    S = greedy_stable_set(range(n), edges)
    assert len(S) >= math.ceil(n / 3)
    assert not any(a in S and b in S for a, b in edges if a != b)


def test_refine_with_no_blocked_colors():
    g = rotation_coloring(9)
    p = PipelineParams.relaxed_with(9, Fraction(3, 7))
    dom = build_dominance(g, p)
    H = NiceSet(frozenset({0, 1, 2}), frozenset())
    assert isinstance(is_nice(g, p, dom, H.H), NiceSet)
    res = refine_nice_set(g, p, dom, H)
    assert res.C == frozenset() and res.D == frozenset() and res.J_edges == ()
    assert res.H_prime == H.H and len(res.H_prime) >= p.stable_size


REFINE_GADGET = [(0, 1, 6), (0, 2, 3), (0, 3, 5), (0, 4, 1), (0, 5, 2), (1, 2, 5), (1, 4, 4),
                 (2, 3, 3), (2, 4, 6), (2, 5, 2), (3, 5, 1), (4, 5, 4)]


def test_refine_single_cut_vertex_color_goes_to_D():
    g = ColoredGraph.from_triples(6, REFINE_GADGET)
    p = PipelineParams.relaxed_with(2, Fraction(1, 3))
    dom = build_dominance(g, p)
    nice = is_nice(g, p, dom, {1, 3, 5})
    assert isinstance(nice, NiceSet)
    res = refine_nice_set(g, p, dom, nice)
    assert res.D == {2}  # edges (0,5), (2,5) leave H only through vertex 5
    assert not any(a in res.H_prime and b in res.H_prime for a, b in res.J_edges)
    rescan = oracles.colors_outside(g, res.H_prime)
    assert rescan == res.colors_outside >= g.num_colors - len(res.D)


# -- dense subgraph


def test_dense_witness_with_empty_H_prime():
    g = ColoredGraph.from_triples(5, [(0, 1, 1), (0, 2, 1), (1, 2, 2), (3, 4, 3)])
    dense = build_dense_witness(g, set())
    assert dense.chosen_edges == {1: (0, 1), 2: (1, 2), 3: (3, 4)}
    assert dense.excess == 3 - 5


def test_dense_witness_triangle_minus_vertex():
    g = ColoredGraph.from_triples(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])
    dense = build_dense_witness(g, {0})
    assert dense.chosen_edges == {2: (1, 2)}
    assert dense.vertex_set == {1, 2}


def test_strict_chain_on_equitable_complete(k1205):
    """Run the nice-set construction, refinement and dense subgraph strictly on K_1205."""
    from rainbow_cycles.girth import devos_case_search, shortest_cycle_undirected

    g, p = k1205
    dom = build_dominance(g, p)
    K = devos_case_search(g)
    start = is_nice(g, p, dom, set(range(g.n)) - set(K.vertices))
    assert isinstance(start, NiceSet) and len(start.H) >= 6 * p.f_k
    nice = shrink_nice_set(g, p, dom, start)
    assert len(nice.H) == 84
    rec = {"step": "refine", "sizes": {}, "assertions": {}}
    res = refine_nice_set(g, p, dom, nice, rec)
    assert all(rec["assertions"].values())
    dense = build_dense_witness(g, res.H_prime)
    assert dense.excess >= 14
    # recount the excess independently
    assert oracles.colors_outside(g, res.H_prime) - (g.n - len(res.H_prime)) == dense.excess
    cyc = shortest_cycle_undirected(dense.as_graph(g.n, g.num_colors))
    assert cyc.length <= 603


# -- driver


def test_driver_early_cycle_triangle():
    g = rotation_coloring(7)
    w = find_short_rainbow_cycle(g, F37)
    assert w.length == 3 and verify_witness(g, w, 4) == []


def test_driver_recursion_lifts_colors():
    g = gadget_recursion(7)
    trace = Trace()
    w = find_short_rainbow_cycle(g, F37, trace=trace, debug=True)
    assert any(r["step"] == "recurse" for r in trace.records)
    assert max(r["depth"] for r in trace.records) == 1
    assert w.provenance.startswith("recursion/")
    assert verify_witness(g, w, 4) == []
    assert 1 not in w.colors  # the sub-instance only holds colors 2..8


def test_driver_strict_rejects_invalid_input():
    with pytest.raises(ProofStepError, match="hypotheses"):
        find_short_rainbow_cycle(rotation_coloring(7), PipelineParams.strict(2))


def test_driver_relaxed_not_found_is_correct():
    g = rotation_coloring(9)
    with pytest.raises(NotFound):
        find_short_rainbow_cycle(g, PipelineParams.relaxed_with(9, Fraction(3, 7)))
    # ceil(9/9) = 1: no cycle that short exists at all
    assert oracles.girth(9, g.edges) == 3


def test_driver_relaxed_forest():
    g = ColoredGraph.from_triples(4, [(0, 1, 1), (1, 2, 2), (2, 3, 3)])
    with pytest.raises(NotFound):
        find_short_rainbow_cycle(g, PipelineParams.relaxed_with(1, Fraction(1, 7)))


def test_driver_is_deterministic():
    for seed in range(20):
        g = gen_random_colored(10, 0.5, seed=seed)
        p = PipelineParams.relaxed_with(2, Fraction(1, 3))
        t1, t2 = Trace(), Trace()
        try:
            a = find_short_rainbow_cycle(g, p, trace=t1)
        except NotFound:
            a = None
        try:
            b = find_short_rainbow_cycle(g, p, trace=t2)
        except NotFound:
            b = None
        assert a == b and t1.records == t2.records


@pytest.mark.parametrize("seed", range(80))
def test_driver_witnesses_always_verify(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 12)
    g = gen_random_colored(n, rng.uniform(0.3, 0.9), seed=seed)
    p = PipelineParams.relaxed_with(rng.choice([1, 2, 3]), Fraction(rng.randint(1, 4), 7))
    try:
        w = find_short_rainbow_cycle(g, p, debug=True)
    except NotFound as exc:
        if exc.best is not None:
            assert exc.best.length > p.target_length(n)
        return
    assert verify_witness(g, w, p.target_length(n)) == []
