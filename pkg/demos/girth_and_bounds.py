"""Shortest cycles by breadth-first search, compared with the classical bounds.

A graph with n vertices and n + k edges has girth at most about
2 (n/k + 1) log2 k.  A digraph with minimum out-degree k has a directed
cycle of length at most n/k + 73.
"""

from rainbow_cycles import Graph, bound_bollobas, bound_shen, shortest_cycle_undirected, shortest_directed_cycle
from rainbow_cycles.gen import gen_graph_with_edges, gen_min_outdeg_digraph

print("undirected: n, k, girth, bound")
for n, k in [(20, 2), (50, 10), (100, 40), (200, 200)]:
    g = Graph(n, gen_graph_with_edges(n, n + k, seed=n))
    w = shortest_cycle_undirected(g)
    print(f"  {n:>4} {k:>4} {w.length:>4} {bound_bollobas(n, k):8.1f}   cycle {w.vertices}")

print("directed: n, k, girth, bound")
for n, k in [(10, 1), (50, 7), (300, 3), (500, 12)]:
    d = gen_min_outdeg_digraph(n, k, seed=n)
    w = shortest_directed_cycle(d)
    print(f"  {n:>4} {k:>4} {w.length:>4} {bound_shen(n, k):8d}")
