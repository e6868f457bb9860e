"""Find a short rainbow cycle in the smallest instance the guarantee covers.

For k = 2 the color classes must hold at least 301 k log2 k = 602 edges.
The complete graph on 1205 vertices, colored by rotation, splits into 1205
matchings of exactly 602 edges each, so it meets the requirement with no
room to spare.  The guarantee then promises a rainbow cycle of length at
most ceil(1205 / 2) = 603.
"""

from rainbow_cycles import PipelineParams, Trace, find_short_rainbow_cycle, validate, verify_witness
from rainbow_cycles.gen import gen_equitable_complete

g = gen_equitable_complete(2)
p = PipelineParams.strict(2)
report = validate(g, p)
print(f"n = {g.n}, m = {g.m}, smallest class = {report.min_class_size}, hypotheses hold: {report.overall}")

trace = Trace()
w = find_short_rainbow_cycle(g, p, trace=trace)
print(f"cycle {w.vertices} with colors {w.colors} (found by {w.provenance})")

# The witness is checked again against the host graph, independently of the search.
assert verify_witness(g, w, p.target_length(g.n)) == []
print(f"length {w.length} <= {p.target_length(g.n)}: verified")

for rec in trace.records:
    print(f"  {rec['step']:<16} branch={rec['branch']} {rec['sizes']}")
