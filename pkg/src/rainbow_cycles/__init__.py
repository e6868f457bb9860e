"""Short rainbow cycles in edge-colored graphs.

The main entry point is :func:`find_short_rainbow_cycle`, which returns a
rainbow cycle of length at most ``ceil(n/k)`` when every one of the ``n``
color classes has at least ``301 k log2 k`` edges, together with exact
girth oracles, inequality checkers and instance generators.
"""

from .core import (
    ColoredGraph,
    CycleWitness,
    Graph,
    GraphError,
    PipelineParams,
    ValidationReport,
    read_colored_graph,
    read_witness,
    validate,
    verify_witness,
    write_colored_graph,
    write_witness,
)
from .girth import (
    BudgetExceeded,
    Digraph,
    bound_bollobas,
    bound_shen,
    devos_case_search,
    min_out_degree,
    shortest_cycle_undirected,
    shortest_directed_cycle,
    shortest_rainbow_cycle_exact,
)
from .pipeline import NotFound, ProofStepError, Trace, find_short_rainbow_cycle

__version__ = "0.1.0"
