"""Numeric checks of the closed-form inequalities behind the cycle-length guarantee,
and the recoloring that reduces many small color classes to ``n`` large ones.

Each check evaluates an inequality ``lhs <= rhs`` twice, with two different
arithmetic orderings, over a grid of ``k``.  A sample is *marginal* when the
two sides are within a relative ``1e-9`` of each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import ColoredGraph, CycleWitness, PipelineParams, verify_witness

REL_GUARD = 1e-9
LN2 = math.log(2)


class HypothesisViolation(ValueError):
    pass


def default_k_grid(k_min: float = 2, k_max: float = 2**20, samples: int = 200) -> list[int]:
    """Every integer in ``[k_min, 64]`` plus a geometric grid up to ``k_max``."""
    lo = max(1, math.ceil(k_min))
    dense = range(lo, min(64, int(k_max)) + 1)
    geo = np.rint(np.geomspace(max(lo, 1), k_max, samples)).astype(np.int64)
    return sorted(set(dense) | {int(x) for x in geo if lo <= x <= k_max})


@dataclass
class InequalityReport:
    name: str
    k_min: float
    k_max: float
    samples: int = 0
    passed: bool = True
    failure_k: float | None = None
    marginal_ks: list = field(default_factory=list)
    skipped_ks: list = field(default_factory=list)
    reeval_agree: bool = True
    worst_slack: float = math.inf

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "k_range": [self.k_min, self.k_max],
            "samples": self.samples,
            "pass": self.passed,
            "failure_k": self.failure_k,
            "marginal": self.marginal_ks,
            "skipped": self.skipped_ks,
            "reeval_agree": self.reeval_agree,
            "worst_relative_slack": self.worst_slack,
        }


def _f(k: float) -> float:
    return 7 * k * math.log2(k)


def _f_alt(k: float) -> float:
    return k * math.log(k) * (7 / LN2)


def _run(
    name: str,
    ks: Iterable[float],
    sides: Callable[[float], Sequence[tuple[float, float]]],
    sides_alt: Callable[[float], Sequence[tuple[float, float]]],
    k_floor: float = 2,
) -> InequalityReport:
    """Apply ``lhs <= rhs`` for every pair ``sides(k)`` returns."""
    ks = list(ks)
    rep = InequalityReport(name, min(ks, default=0), max(ks, default=0))
    for k in ks:
        if k < k_floor:
            rep.skipped_ks.append(k)
            continue
        rep.samples += 1
        for (lhs, rhs), (lhs2, rhs2) in zip(sides(k), sides_alt(k)):
            if not (_close(lhs, lhs2) and _close(rhs, rhs2)):
                rep.reeval_agree = False
            scale = max(abs(lhs), abs(rhs), 1e-300)
            slack = (rhs - lhs) / scale
            rep.worst_slack = min(rep.worst_slack, slack)
            if abs(slack) <= REL_GUARD:
                rep.marginal_ks.append(k)
            elif slack < 0 or (rhs2 - lhs2) < 0:
                rep.passed = False
                if rep.failure_k is None:
                    rep.failure_k = k
    if rep.marginal_ks or not rep.reeval_agree:
        rep.passed = False
    return rep


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=REL_GUARD, abs_tol=0.0) or a == b


def check_shen_gap(ks: Iterable[float] | None = None) -> InequalityReport:
    """``74 k f(k) <= 43 f(k) (f(k) - k)``: with ``n >= 43 f``, ``n/f + 74 <= n/k``."""
    ks = default_k_grid() if ks is None else list(ks)

    def sides(k):
        f = _f(k)
        return [(74 * k * f, 43 * f * (f - k))]

    def sides_alt(k):
        f = _f_alt(k)
        return [(f * k * 74, (f * f - k * f) * 43)]

    return _run("shen_gap", ks, sides, sides_alt)


def g_margin(k: float, coef: float = 88 / 129) -> float:
    """``7 log k - coef (log log f + log f + 4)``; nonnegative for all ``k >= 2``."""
    f = _f(k)
    return 7 * math.log2(k) - coef * (math.log2(math.log2(f)) + math.log2(f) + 4)


def check_g_positive(ks: Iterable[float] | None = None, coef: float = 88 / 129) -> InequalityReport:
    """``g(k) >= 0`` plus the derivative estimate used to show ``g`` increases.

    The derivative chain checked per sample is
    ``f'(k) (1/(log f ln 2) + 1) < 21 (1 + log k) <= 49 log k``.
    ``coef`` exists so a self-test can break the inequality on purpose.
    """
    ks = default_k_grid() if ks is None else list(ks)

    def sides(k):
        f = _f(k)
        lf = math.log2(f)
        df = 7 * math.log2(k) + 7 / LN2
        g = 7 * math.log2(k) - coef * (math.log2(lf) + lf + 4)
        return [
            (0.0, g),
            (df * (1 / (lf * LN2) + 1), 21 * (1 + math.log2(k))),
            (21 * (1 + math.log2(k)), 49 * math.log2(k)),
        ]

    def sides_alt(k):
        f = _f_alt(k)
        lf = math.log(f) / LN2
        lk = math.log(k) / LN2
        df = 7 * (math.log(k) + 1) / LN2
        g = 7 * lk - coef * 4 - coef * lf - coef * math.log(lf) / LN2
        return [
            (0.0, g),
            (df + df / (lf * LN2), 21 + 21 * lk),
            (21 + 21 * lk, 49 * lk),
        ]

    rep = _run("g_positive", ks, sides, sides_alt)
    # a zero left side makes the relative slack of g >= 0 meaningless; measure against 7 log k
    for k in ks:
        if k >= 2 and 0 <= g_margin(k, coef) <= REL_GUARD * 7 * math.log2(k):
            rep.marginal_ks.append(k)
            rep.passed = False
    return rep


def check_D_bound(ks: Iterable[float] | None = None, coef: float = 36) -> InequalityReport:
    """``(f-1) * 36 f >= 49 f^2 / 2 >= (6f + 1)^2 / 2``, bounding the set D."""
    ks = default_k_grid() if ks is None else list(ks)

    def sides(k):
        f = _f(k)
        mid = 49 * f * f / 2
        return [(mid, (f - 1) * (coef * f)), ((6 * f + 1) ** 2 / 2, mid)]

    def sides_alt(k):
        f = _f_alt(k)
        mid = 24.5 * f**2
        return [(mid, coef * f**2 - coef * f), (18 * f**2 + 6 * f + 0.5, mid)]

    return _run("D_bound", ks, sides, sides_alt)


def all_checks(ks: Iterable[float] | None = None) -> list[InequalityReport]:
    ks = default_k_grid() if ks is None else list(ks)
    return [check_shen_gap(ks), check_g_positive(ks), check_D_bound(ks)]


# ---------------------------------------------------------------------------
# Many colors -> n colors


def corollary_block_size(k: int) -> int:
    return math.ceil(301 * math.log2(k)) if k > 1 else 1


def recolor_map(t: int, n: int) -> list[int]:
    """Round-robin map ``{1..t} -> {1..n}``; ``out[j]`` is the new color of ``j`` (index 0 unused)."""
    return [0] + [(j - 1) % n + 1 for j in range(1, t + 1)]


def corollary_recolor(
    g: ColoredGraph, k: int, *, block_size: int | None = None, relaxed: bool = False
) -> ColoredGraph:
    """Merge the ``t = g.num_colors`` classes into ``n`` groups of at least ``ceil(301 log k)``.

    Requires every original class to have at least ``k`` edges and, unless
    ``relaxed``, ``t >= 303 n log n``.  Each new class is a union of whole
    original classes, so a cycle rainbow under the new coloring is rainbow
    under the old one.  ``block_size`` overrides ``ceil(301 log k)``.
    """
    n, t = g.n, g.num_colors
    sizes = g.class_sizes()
    small = [i for i in range(1, t + 1) if sizes[i] < k]
    if small:
        raise HypothesisViolation(f"classes smaller than k={k}: {small[:10]}")
    if not relaxed and t < 303 * n * math.log2(max(n, 1)):
        raise HypothesisViolation(f"t={t} < 303 n log n = {303 * n * math.log2(n):.1f}")
    b = corollary_block_size(k) if block_size is None else block_size
    if t < n * b:
        raise HypothesisViolation(f"t={t} colors cannot fill {n} parts of size {b}")
    fmap = recolor_map(t, n)
    return ColoredGraph(n, g.edges, [fmap[c] for c in g.colors], num_colors=n)


def find_via_corollary(g: ColoredGraph, p: PipelineParams, *, block_size: int | None = None, **kw) -> CycleWitness:
    """Recolor, run the main search, and re-check the cycle under the original colors."""
    from .pipeline import ProofStepError, find_short_rainbow_cycle

    merged = corollary_recolor(g, p.k, block_size=block_size, relaxed=p.relaxed)
    w = find_short_rainbow_cycle(merged, p, **kw)
    original = CycleWitness.in_graph(g, w.vertices, provenance=f"corollary/{w.provenance}")
    problems = verify_witness(g, original, p.target_length(g.n))
    if problems:
        raise ProofStepError(f"corollary: cycle not rainbow under original coloring: {problems}")
    return original
