"""Many small color classes, merged into n large ones.

Each new color is a union of whole old colors, so a cycle that is rainbow
after merging was already rainbow before.  The search runs on the merged
coloring and the cycle is re-checked against the original one.
"""

import itertools
import random
from fractions import Fraction

from rainbow_cycles import ColoredGraph, PipelineParams
from rainbow_cycles.bounds import corollary_recolor, find_via_corollary

rng = random.Random(1)
n = 9
edges = list(itertools.combinations(range(n), 2))
t = 3 * n
colors = list(range(1, t + 1)) + [rng.randint(1, t) for _ in range(len(edges) - t)]
rng.shuffle(colors)
g = ColoredGraph(n, edges, colors, t)

merged = corollary_recolor(g, 1, block_size=3, relaxed=True)
print(f"{t} colors merged into {merged.num_colors}; class sizes {merged.class_sizes()[1:]}")

w = find_via_corollary(g, PipelineParams.relaxed_with(1, Fraction(1, 7)), block_size=3)
print(f"cycle {w.vertices}")
print(f"  original colors {w.colors}")
print(f"  merged colors   {tuple(merged.color_of(w.vertices[i], w.vertices[(i + 1) % w.length]) for i in range(w.length))}")
