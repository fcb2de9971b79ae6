"""Graphs as immutable edge sets with per-vertex adjacency bitmasks.

Vertices are 0-indexed everywhere.  Edges are unordered pairs stored in a
canonical lexicographic order, which pins down the meaning of edge bitmasks
across runs and serializations.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path

from .errors import GraphSpecError, SizeLimitError

# Exact minimum-vertex-cover search is capped; it only serves as an upper
# bound on persistency, never as a large-scale primitive.
MAX_COVER_VERTICES = 24

_FAMILY_RE = re.compile(r"^([a-z0-9]+):(.+)$")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``n`` vertices.

    ``edges`` is normalized to a sorted tuple of ``(i, j)`` pairs with
    ``i < j``; ``adjacency[v]`` is the neighbor bitmask of vertex ``v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphSpecError(f"vertex count must be positive, got {self.n}")
        canon = []
        seen = set()
        for e in self.edges:
            i, j = e
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphSpecError(f"edge {e!r} out of range for n={self.n}")
            if i == j:
                raise GraphSpecError(f"self-loop at vertex {i}")
            a, b = (i, j) if i < j else (j, i)
            if (a, b) in seen:
                raise GraphSpecError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
            canon.append((a, b))
        canon.sort()
        object.__setattr__(self, "edges", tuple(canon))
        adj = [0] * self.n
        for i, j in canon:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        object.__setattr__(self, "adjacency", tuple(adj))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adjacency)


@dataclass(frozen=True)
class EdgeMask:
    """Bitmask over the canonical edge ordering of a parent graph.

    Bit ``k`` set means edge ``k`` is present; ``width`` is the parent's
    edge count.
    """

    bits: int
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise ValueError(f"negative mask width {self.width}")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"mask {self.bits:#x} does not fit width {self.width}")

    @classmethod
    def full(cls, width: int) -> "EdgeMask":
        return cls((1 << width) - 1, width)

    @classmethod
    def empty(cls, width: int) -> "EdgeMask":
        return cls(0, width)

    @property
    def edge_total(self) -> int:
        return self.bits.bit_count()


def _positive_sizes(parts, spec, minimum=1):
    try:
        sizes = [int(s) for s in parts]
    except ValueError:
        raise GraphSpecError(f"non-integer size in {spec!r}") from None
    if any(s < minimum for s in sizes):
        raise GraphSpecError(f"size out of range in {spec!r}")
    return sizes


def generate(spec: str) -> Graph:
    """Build a named graph family from a ``family:size`` descriptor.

    Families: ``empty:N``, ``complete:N``, ``star:N`` (center = vertex 0),
    ``path:N``, ``cycle:N`` (N >= 3), ``grid:MxN``, ``grid3:IxJxK``.
    """
    m = _FAMILY_RE.match(spec.strip())
    if not m:
        raise GraphSpecError(f"cannot parse graph spec {spec!r}")
    family, arg = m.groups()

    if family in ("empty", "complete", "star", "path", "cycle"):
        (n,) = _positive_sizes([arg], spec, minimum=3 if family == "cycle" else 1)
        if family == "empty":
            return Graph(n, ())
        if family == "complete":
            return Graph(n, tuple(combinations(range(n), 2)))
        if family == "star":
            return Graph(n, tuple((0, i) for i in range(1, n)))
        if family == "path":
            return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))

    if family == "grid":
        parts = arg.split("x")
        if len(parts) != 2:
            raise GraphSpecError(f"grid spec needs MxN, got {spec!r}")
        rows, cols = _positive_sizes(parts, spec)
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return Graph(rows * cols, tuple(edges))

    if family == "grid3":
        parts = arg.split("x")
        if len(parts) != 3:
            raise GraphSpecError(f"grid3 spec needs IxJxK, got {spec!r}")
        ni, nj, nk = _positive_sizes(parts, spec)
        edges = []
        for a in range(ni):
            for b in range(nj):
                for c in range(nk):
                    v = (a * nj + b) * nk + c
                    if c + 1 < nk:
                        edges.append((v, v + 1))
                    if b + 1 < nj:
                        edges.append((v, v + nk))
                    if a + 1 < ni:
                        edges.append((v, v + nj * nk))
        return Graph(ni * nj * nk, tuple(edges))

    raise GraphSpecError(f"unknown graph family {family!r}")


def symmetric_difference(g: Graph, f: Graph) -> Graph:
    """Graph keeping the edges present in exactly one of ``g``, ``f``."""
    if g.n != f.n:
        raise ValueError(f"vertex counts differ: {g.n} != {f.n}")
    return Graph(g.n, tuple(set(g.edges) ^ set(f.edges)))


def subgraph_from_mask(g: Graph, mask: EdgeMask) -> Graph:
    """Spanning subgraph of ``g`` keeping exactly the masked edges."""
    if mask.width != g.edge_count:
        raise ValueError(f"mask width {mask.width} != edge count {g.edge_count}")
    kept = tuple(e for k, e in enumerate(g.edges) if (mask.bits >> k) & 1)
    return Graph(g.n, kept)


def class_counts(g: Graph) -> tuple[int, int, int]:
    """Cardinalities of the 1- and 2-edge subset classes of ``g``.

    Returns ``(m1, m2_star, m2_disjoint)``: the number of single edges, of
    vertex-sharing edge pairs, and of disjoint edge pairs.
    """
    m1 = g.edge_count
    m2_star = sum(comb(d, 2) for d in g.degrees())
    m2_disjoint = comb(m1, 2) - m2_star
    return m1, m2_star, m2_disjoint


def min_vertex_cover(g: Graph) -> int:
    """Size of a minimum vertex cover, by exact branch and bound.

    Branches on a maximum-degree vertex (either it or its whole
    neighborhood joins the cover) and prunes with a greedy-matching lower
    bound.  Capped at ``MAX_COVER_VERTICES`` vertices.
    """
    if g.n > MAX_COVER_VERTICES:
        raise SizeLimitError(
            f"exact vertex cover capped at n={MAX_COVER_VERTICES}, got n={g.n}")
    if not g.edges:
        return 0

    adj = g.adjacency

    def vertices_of(mask):
        while mask:
            v = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            yield v

    def matching_bound(alive):
        used = 0
        size = 0
        for v in vertices_of(alive):
            if (used >> v) & 1:
                continue
            nb = adj[v] & alive & ~used
            if nb:
                used |= (1 << v) | (nb & -nb)
                size += 1
        return size

    best = g.n

    def search(alive, size):
        nonlocal best
        if size >= best:
            return
        top, top_degree = -1, 0
        for v in vertices_of(alive):
            d = (adj[v] & alive).bit_count()
            if d > top_degree:
                top, top_degree = v, d
        if top_degree == 0:
            best = size
            return
        if top_degree == 1:
            # what remains is a perfect matching of isolated edges
            edges_left = sum(1 for v in vertices_of(alive) if adj[v] & alive) // 2
            best = min(best, size + edges_left)
            return
        if size + matching_bound(alive) >= best:
            return
        neighborhood = adj[top] & alive
        search(alive & ~neighborhood & ~(1 << top), size + top_degree)
        search(alive & ~(1 << top), size + 1)

    search((1 << g.n) - 1, 0)
    return best


def _graph_from_json(doc) -> Graph:
    if not isinstance(doc, dict) or set(doc) != {"n", "edges"}:
        raise GraphSpecError('graph JSON must be {"n": int, "edges": [[i,j],...]}')
    n = doc["n"]
    if not isinstance(n, int):
        raise GraphSpecError("graph JSON field 'n' must be an integer")
    edges = []
    for e in doc["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise GraphSpecError(f"bad edge entry {e!r}")
        i, j = e
        if not i < j:
            raise GraphSpecError(f"edge [{i}, {j}] must satisfy i < j")
        edges.append((i, j))
    return Graph(n, tuple(edges))


def parse_graph(text: str) -> Graph:
    """Parse a graph from a family spec, a JSON document, or ``file:PATH``."""
    s = text.strip()
    if s.startswith("{"):
        try:
            doc = json.loads(s)
        except json.JSONDecodeError as exc:
            raise GraphSpecError(f"invalid graph JSON: {exc}") from None
        return _graph_from_json(doc)
    if s.startswith("file:"):
        path = Path(s[len("file:"):])
        try:
            doc = json.loads(path.read_text())
        except OSError as exc:
            raise GraphSpecError(f"cannot read graph file {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise GraphSpecError(f"invalid graph JSON in {path}: {exc}") from None
        return _graph_from_json(doc)
    return generate(s)


def serialize_graph(g: Graph) -> str:
    """Canonical JSON document for ``g``; ``parse_graph`` round-trips it."""
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]},
                      separators=(",", ":"))
