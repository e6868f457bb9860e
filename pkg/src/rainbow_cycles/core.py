"""Edge-colored simple graphs, cycle witnesses, validation and text/JSON I/O.

Vertices are dense integer ids ``0..n-1`` and colors are ``1..num_colors``
(``num_colors`` defaults to ``n``).  Graphs are immutable once built.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence


class GraphError(ValueError):
    """Structural problem with a graph (loop, duplicate edge, bad color...)."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class LoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class ColorRangeError(GraphError):
    pass


class Graph:
    """Undirected graph on vertices ``0..n-1`` with an edge list.

    Edges are stored canonically as ``(u, v)`` with ``u <= v`` and sorted.
    Loops and duplicates are tolerated only when ``check=False`` (so that
    :func:`validate` has something to report); they never enter the
    adjacency index.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], *, check: bool = True):
        self.n = int(n)
        self.edges: tuple[tuple[int, int], ...] = tuple(
            sorted((min(u, v), max(u, v)) for u, v in edges)
        )
        if check:
            self._raise_structural()
        self._build_index()

    def _raise_structural(self) -> None:
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            if (u, v) in seen:
                raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    def _build_index(self) -> None:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        eids: list[list[int]] = [[] for _ in range(self.n)]
        index: dict[tuple[int, int], int] = {}
        for e, (u, v) in enumerate(self.edges):
            if u == v or (u, v) in index or not (0 <= u < self.n and 0 <= v < self.n):
                continue
            index[(u, v)] = e
            nbrs[u].append(v)
            eids[u].append(e)
            nbrs[v].append(u)
            eids[v].append(e)
        self._nbrs = tuple(tuple(x) for x in nbrs)
        self._eids = tuple(tuple(x) for x in eids)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids incident to ``v``, aligned with :meth:`neighbors`."""
        return self._eids[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def edge_index(self, u: int, v: int) -> int | None:
        return self._index.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_index(u, v) is not None

    def structural_problems(self) -> dict[str, list]:
        loops, dups, outside = [], [], []
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                outside.append((u, v))
            elif u == v:
                loops.append((u, v))
            elif (u, v) in seen:
                dups.append((u, v))
            seen.add((u, v))
        return {"loops": loops, "duplicates": dups, "out_of_range_vertices": outside}

    def adjacency_consistent(self) -> bool:
        """Re-derive the adjacency index from the edge list and compare."""
        expected: list[set[tuple[int, int]]] = [set() for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            if u != v and self._index.get((u, v)) == e:
                expected[u].add((v, e))
                expected[v].add((u, e))
        return all(
            set(zip(self._nbrs[v], self._eids[v])) == expected[v]
            and len(self._nbrs[v]) == len(expected[v])
            for v in range(self.n)
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, m={self.m})"


class ColoredGraph(Graph):
    """Simple graph with an edge coloring ``c: E -> {1..num_colors}``.

    ``colors[e]`` is the color of ``edges[e]``.  The coloring need not be
    proper and color classes may be empty.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        colors: Iterable[int],
        num_colors: int | None = None,
        *,
        check: bool = True,
    ):
        pairs = [((min(u, v), max(u, v)), int(c)) for (u, v), c in _zip_strict(edges, colors)]
        pairs.sort()
        super().__init__(n, (p for p, _ in pairs), check=check)
        self.colors: tuple[int, ...] = tuple(c for _, c in pairs)
        self.num_colors = self.n if num_colors is None else int(num_colors)
        if check:
            for (u, v), c in zip(self.edges, self.colors):
                if not 1 <= c <= self.num_colors:
                    raise ColorRangeError(
                        f"edge ({u}, {v}) has color {c} outside 1..{self.num_colors}"
                    )
        classes: list[list[int]] = [[] for _ in range(self.num_colors + 1)]
        for e, c in enumerate(self.colors):
            if 1 <= c <= self.num_colors:
                classes[c].append(e)
        self._classes = tuple(tuple(x) for x in classes)

    @classmethod
    def from_triples(
        cls, n: int, triples: Iterable[tuple[int, int, int]], num_colors: int | None = None, **kw
    ) -> "ColoredGraph":
        triples = list(triples)
        return cls(n, [(u, v) for u, v, _ in triples], [c for _, _, c in triples], num_colors, **kw)

    def triples(self) -> list[tuple[int, int, int]]:
        return [(u, v, c) for (u, v), c in zip(self.edges, self.colors)]

    def color_of(self, u: int, v: int) -> int | None:
        e = self.edge_index(u, v)
        return None if e is None else self.colors[e]

    def color_class(self, i: int) -> tuple[int, ...]:
        """Edge ids of color ``i`` in canonical (lexicographic) order."""
        return self._classes[i]

    def class_sizes(self) -> list[int]:
        """``sizes[i] = |c^-1(i)|``; index 0 is unused and always 0."""
        return [len(x) for x in self._classes]

    def out_of_range_colors(self) -> list[tuple[int, int, int]]:
        return [
            (u, v, c)
            for (u, v), c in zip(self.edges, self.colors)
            if not 1 <= c <= self.num_colors
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.num_colors == other.num_colors
            and self.edges == other.edges
            and self.colors == other.colors
        )

    __hash__ = None  # type: ignore[assignment]


def _zip_strict(a, b):
    a, b = list(a), list(b)
    if len(a) != len(b):
        raise GraphError(f"{len(a)} edges but {len(b)} colors")
    return zip(a, b)


# ---------------------------------------------------------------------------
# Parameters


@dataclass(frozen=True)
class PipelineParams:
    """Thresholds derived from ``k``.

    In strict mode ``f_k = 7 k log2 k`` and colour classes must have at
    least ``43 f_k = 301 k log2 k`` edges.  Relaxed mode lets the caller pick
    ``f_k`` (a float or an exact :class:`~fractions.Fraction`) to exercise
    every code path on small graphs; no guarantee is implied there.
    """

    k: int
    f_k: float | Fraction
    relaxed: bool = False

    def __post_init__(self):
        if not self.relaxed:
            if self.k < 2:
                raise ValueError(f"strict mode needs k >= 2, got {self.k}")
            if self.f_k != f_of_k(self.k):
                raise ValueError("strict f_k must equal 7 k log2 k")
        elif self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        if self.f_k < 0:
            raise ValueError("f_k must be non-negative")

    @classmethod
    def strict(cls, k: int) -> "PipelineParams":
        return cls(k, f_of_k(k), relaxed=False)

    @classmethod
    def relaxed_with(cls, k: int, f_k: float | Fraction | None = None) -> "PipelineParams":
        if f_k is None:
            f_k = f_of_k(k) if k >= 1 else 0.0
        return cls(k, f_k, relaxed=True)

    @property
    def strict_mode(self) -> bool:
        return not self.relaxed

    @property
    def class_size_req(self):
        return 43 * self.f_k

    @property
    def dominance_threshold(self):
        return 7 * self.f_k

    @property
    def nice_size(self) -> int:
        return math.ceil(6 * self.f_k)

    @property
    def stable_size(self) -> int:
        return math.ceil(2 * self.f_k)

    @property
    def f_ceil(self) -> int:
        return math.ceil(self.f_k)

    def target_length(self, n: int) -> int:
        """``ceil(n / k)``, the promised cycle length."""
        return -(-n // self.k)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "f_k": float(self.f_k),
            "class_size_req": float(self.class_size_req),
            "relaxed": self.relaxed,
        }


def f_of_k(k: float) -> float:
    return 7 * k * math.log2(k)


# ---------------------------------------------------------------------------
# Witnesses


@dataclass(frozen=True)
class CycleWitness:
    """A cycle ``vertices[0] -> vertices[1] -> ... -> vertices[0]``.

    ``colors[i]`` is the color of the edge leaving ``vertices[i]``; it is
    empty for uncolored hosts.  ``length`` and ``rainbow`` are stored so a
    deserialized witness can be checked for internal consistency.
    """

    vertices: tuple[int, ...]
    colors: tuple[int, ...]
    length: int
    rainbow: bool
    kind: str = "undirected"
    provenance: str = ""

    @classmethod
    def make(cls, vertices, colors=(), kind="undirected", provenance="") -> "CycleWitness":
        vertices, colors = tuple(vertices), tuple(colors)
        rainbow = bool(colors) and len(set(colors)) == len(colors)
        return cls(vertices, colors, len(vertices), rainbow, kind, provenance)

    @classmethod
    def in_graph(cls, g: ColoredGraph, vertices, kind="undirected", provenance="") -> "CycleWitness":
        """Build a witness for ``vertices`` reading edge colors from ``g``."""
        vertices = tuple(vertices)
        L = len(vertices)
        cols = []
        for i in range(L):
            a, b = vertices[i], vertices[(i + 1) % L]
            c = g.color_of(a, b)
            if c is None:
                raise GraphError(f"({a}, {b}) is not an edge")
            cols.append(c)
        return cls.make(vertices, cols, kind, provenance)

    def with_provenance(self, provenance: str) -> "CycleWitness":
        return CycleWitness(
            self.vertices, self.colors, self.length, self.rainbow, self.kind, provenance
        )

    def problems(self) -> list[str]:
        """Internal-consistency problems; empty when the witness is well formed."""
        out = []
        L = len(self.vertices)
        if self.kind not in ("undirected", "directed"):
            out.append(f"unknown kind {self.kind!r}")
        if self.length != L:
            out.append(f"length {self.length} != {L} vertices")
        if len(set(self.vertices)) != L:
            out.append("repeated vertex")
        if L < (3 if self.kind == "undirected" else 2):
            out.append(f"too short for a {self.kind} cycle")
        if self.colors and len(self.colors) != L:
            out.append(f"{len(self.colors)} colors for {L} edges")
        rainbow = bool(self.colors) and len(set(self.colors)) == len(self.colors)
        if self.rainbow != rainbow:
            out.append(f"rainbow flag {self.rainbow} but colors give {rainbow}")
        return out

    def check(self) -> None:
        bad = self.problems()
        if bad:
            raise GraphError("; ".join(bad))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "colors": list(self.colors),
            "length": self.length,
            "rainbow": self.rainbow,
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CycleWitness":
        return cls(
            tuple(d["vertices"]),
            tuple(d["colors"]),
            int(d["length"]),
            bool(d["rainbow"]),
            d.get("kind", "undirected"),
            d.get("provenance", ""),
        )


def verify_witness(g: ColoredGraph, w: CycleWitness, max_len: int | None = None) -> list[str]:
    """Independent re-check of ``w`` against the host graph's adjacency.

    Walks the cycle through ``g.neighbors`` rather than trusting the
    witness's own fields.  Returns a list of problems (empty means valid
    rainbow cycle of ``g`` within ``max_len``).
    """
    problems = []
    verts = list(w.vertices)
    L = len(verts)
    if L < 3:
        problems.append(f"undirected cycle needs >= 3 vertices, got {L}")
    if len(set(verts)) != L:
        problems.append("vertices repeat")
    if any(not (0 <= v < g.n) for v in verts):
        return problems + ["vertex outside host"]
    seen_colors = []
    for i in range(L):
        a, b = verts[i], verts[(i + 1) % L]
        nb = g.neighbors(a)
        if b not in nb:
            problems.append(f"({a}, {b}) not adjacent in host")
            continue
        e = g.incident(a)[nb.index(b)]
        seen_colors.append(g.colors[e])
    if len(seen_colors) == L:
        if tuple(seen_colors) != tuple(w.colors):
            problems.append("witness colors disagree with host coloring")
        if len(set(seen_colors)) != L:
            problems.append("cycle is not rainbow in host")
    if w.length != L:
        problems.append("stored length disagrees with vertex count")
    if not w.rainbow:
        problems.append("witness not flagged rainbow")
    if max_len is not None and L > max_len:
        problems.append(f"length {L} exceeds {max_len}")
    return problems


# ---------------------------------------------------------------------------
# Validation


@dataclass
class ValidationReport:
    simple: bool
    loops: list
    duplicates: list
    out_of_range_vertices: list
    out_of_range_colors: list
    adjacency_consistent: bool
    class_sizes: dict[int, int]
    class_size_req: float
    undersized_colors: list[int]
    k_ok: bool
    overall: bool
    relaxed: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def min_class_size(self) -> int:
        return min(self.class_sizes.values(), default=0)

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "simple": self.simple,
            "loops": self.loops,
            "duplicates": self.duplicates,
            "out_of_range_vertices": self.out_of_range_vertices,
            "out_of_range_colors": self.out_of_range_colors,
            "adjacency_consistent": self.adjacency_consistent,
            "class_size_req": float(self.class_size_req),
            "min_class_size": self.min_class_size,
            "undersized_colors": self.undersized_colors,
            "k_ok": self.k_ok,
            "relaxed": self.relaxed,
            "notes": self.notes,
        }


def validate(g: ColoredGraph, p: PipelineParams) -> ValidationReport:
    """Check the class-size hypotheses on ``g``; never raises.

    ``overall`` is true iff the graph is simple, every color lies in
    ``1..n``, every one of the ``n`` classes has at least ``43 f(k)``
    edges, and ``k >= 2``.
    """
    probs = g.structural_problems()
    bad_colors = g.out_of_range_colors()
    sizes = g.class_sizes()
    class_sizes = {i: sizes[i] for i in range(1, g.num_colors + 1)}
    req = p.class_size_req
    undersized = [i for i, s in class_sizes.items() if s < req]
    simple = not (probs["loops"] or probs["duplicates"] or probs["out_of_range_vertices"])
    adj_ok = g.adjacency_consistent()
    notes = []
    if g.num_colors != g.n:
        notes.append(f"coloring uses {g.num_colors} colors, hypotheses need exactly n={g.n}")
    k_ok = p.k >= 2
    overall = (
        simple
        and not bad_colors
        and adj_ok
        and not undersized
        and k_ok
        and g.num_colors == g.n
        and g.n > 0
    )
    return ValidationReport(
        simple=simple,
        loops=probs["loops"],
        duplicates=probs["duplicates"],
        out_of_range_vertices=probs["out_of_range_vertices"],
        out_of_range_colors=bad_colors,
        adjacency_consistent=adj_ok,
        class_sizes=class_sizes,
        class_size_req=req,
        undersized_colors=undersized,
        k_ok=k_ok,
        overall=overall,
        relaxed=p.relaxed,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# Text format: "n m" header, then m lines "u v c"; '#' starts a comment line.


def _text_lines(source) -> Iterable[str]:
    if isinstance(source, str):
        source = io.StringIO(source)
    elif isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    for raw in source:
        yield raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw


def read_colored_graph(source, num_colors: int | None = None) -> ColoredGraph:
    """Parse the colored-graph text format from a string, bytes, or a text or binary stream.

    Raises :class:`ParseError` (with line number) on malformed lines, and
    :class:`LoopError`, :class:`DuplicateEdgeError` or
    :class:`ColorRangeError` for structurally invalid content.
    """
    header = None
    triples = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, line in enumerate(_text_lines(source), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise ParseError(lineno, f"expected integers, got {s!r}") from None
        if header is None:
            if len(nums) != 2 or nums[0] < 0 or nums[1] < 0:
                raise ParseError(lineno, "header must be 'n m' with n, m >= 0")
            header = nums
            n = nums[0]
            C = n if num_colors is None else num_colors
            continue
        if len(nums) != 3:
            raise ParseError(lineno, f"edge line needs 'u v c', got {s!r}")
        u, v, c = nums
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"vertex out of range 0..{n - 1}")
        if u == v:
            raise LoopError(f"line {lineno}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(
                f"line {lineno}: duplicate edge {key} (first on line {seen[key]})"
            )
        if not 1 <= c <= C:
            raise ColorRangeError(f"line {lineno}: color {c} outside 1..{C}")
        seen[key] = lineno
        triples.append((key[0], key[1], c))
    if header is None:
        raise ParseError(0, "missing 'n m' header")
    if len(triples) != header[1]:
        raise ParseError(lineno if triples else 1, f"header promises {header[1]} edges, found {len(triples)}")
    return ColoredGraph.from_triples(header[0], triples, num_colors)


def write_colored_graph(g: ColoredGraph, sink: IO, comments: Sequence[str] = ()) -> None:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v} {c}" for u, v, c in g.triples())
    _write_text(sink, "\n".join(lines) + "\n")


def write_witness(w: CycleWitness, sink: IO) -> None:
    """Serialize ``w`` as one JSON object followed by a newline."""
    w.check()
    _write_text(sink, json.dumps(w.to_dict()) + "\n")


def read_witness(source: IO) -> CycleWitness:
    data = source.read()
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    return CycleWitness.from_dict(json.loads(data))


def _write_text(sink: IO, text: str) -> None:
    if isinstance(sink, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(sink, "mode", ""):
        sink.write(text.encode("utf-8"))
    else:
        sink.write(text)
