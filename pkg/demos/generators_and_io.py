"""Seeded generators and the plain-text graph format.

The format is a header line "n m" followed by one "u v color" line per
edge; lines starting with # are comments.
"""

import io

from rainbow_cycles import PipelineParams, read_colored_graph, validate, write_colored_graph
from rainbow_cycles.gen import InfeasibleError, gen_relaxed

g = gen_relaxed(8, 2, seed=42)
assert g == gen_relaxed(8, 2, seed=42)  # same seed, same graph

buf = io.StringIO()
write_colored_graph(g, buf, ["8 vertices, 8 classes of 2 edges, seed 42"])
print(buf.getvalue())
assert read_colored_graph(buf.getvalue()) == g

print("strict hypotheses:", validate(g, PipelineParams.strict(2)).overall)
print("relaxed with f = 2/43:", validate(g, PipelineParams.relaxed_with(2, 2 / 43)).overall)

try:
    gen_relaxed(10, 5)
except InfeasibleError as exc:
    print("10 classes of 5 edges:", exc)
