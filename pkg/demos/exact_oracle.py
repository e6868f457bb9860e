"""The exact rainbow-cycle search, and how it disagrees with plain girth.

In a complete graph any rainbow 4-cycle has a chord, and one of the two
triangles through that chord is rainbow too.  Deleting both chords removes
that escape: the graph below has no rainbow triangle but does have a
rainbow 4-cycle.
"""

from rainbow_cycles import ColoredGraph, shortest_cycle_undirected, shortest_rainbow_cycle_exact
from rainbow_cycles.girth import BudgetExceeded

triples = [(0, 1, 3), (0, 3, 4), (0, 4, 5), (1, 2, 2), (1, 4, 5), (2, 3, 1), (2, 4, 5), (3, 4, 5)]
g = ColoredGraph.from_triples(5, triples)
print("girth:", shortest_cycle_undirected(g).length)
w = shortest_rainbow_cycle_exact(g)
print(f"shortest rainbow cycle: {w.vertices} colors {w.colors}")

# A monochromatic K_8 has no rainbow cycle at all; a small budget makes the search give up instead.
mono = ColoredGraph.from_triples(8, [(a, b, 1) for a in range(8) for b in range(a + 1, 8)])
print("monochromatic K_8:", shortest_rainbow_cycle_exact(mono))
try:
    shortest_rainbow_cycle_exact(mono, budget=50)
except BudgetExceeded as exc:
    print("with budget 50:", exc)
