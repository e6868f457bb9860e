"""Walk the nice-set construction through each of its branches on small gadgets.

Real instances are far too large to see every branch, so these run in
relaxed mode with a small stand-in value of f.  With f = 3/7 a color is
dominant at a vertex once 3 of its edges meet there, and the nice set the
construction aims for has 3 vertices.
"""

from fractions import Fraction

from rainbow_cycles import PipelineParams, Trace, find_short_rainbow_cycle, verify_witness
from rainbow_cycles.gen import gadget_branch_a, gadget_recursion, gadget_tournament, rotation_coloring
from rainbow_cycles.pipeline import NotFound

gadgets = [
    ("three dominant stars, shrink then refine", gadget_branch_a(), 2),
    ("no dominant colors, early cycle", rotation_coloring(7), 2),
    ("every color dominant, auxiliary digraph", gadget_tournament(7), 2),
    ("blocked colors stuck inside H, recurse", gadget_recursion(7), 2),
    ("cycle of length 1 requested, nothing to find", rotation_coloring(9), 9),
]

for title, g, k in gadgets:
    p = PipelineParams.relaxed_with(k, Fraction(3, 7))
    trace = Trace()
    print(f"\n{title} (n={g.n}, target length {p.target_length(g.n)})")
    try:
        w = find_short_rainbow_cycle(g, p, trace=trace)
    except NotFound as exc:
        print(f"  not found: {exc}")
    else:
        ok = verify_witness(g, w, p.target_length(g.n)) == []
        print(f"  cycle {w.vertices}, colors {w.colors}, via {w.provenance}, verified={ok}")
    for rec in trace.records:
        print(f"    depth {rec['depth']} {rec['step']:<16} branch={rec['branch']}")
