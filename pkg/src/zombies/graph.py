"""Graphs, hop distances, generators and edge-list / DOT I/O.

All graphs are simple, undirected and connected.  Vertices are the integers
``0..n-1``; an optional ``labels`` tuple attaches structural metadata
(product coordinates, hypercube bit vectors, petal positions) used only for
reporting and by the strategies that need coordinate projections.
"""
from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

DistanceMatrix = np.ndarray


class GraphError(ValueError):
    """Invalid graph (loop, duplicate edge, disconnected, bad vertex id)."""


class ParseError(GraphError):
    """Malformed edge-list text."""


@dataclass(frozen=True)
class Graph:
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[Hashable, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.adjacency)
        if n == 0:
            raise GraphError("graph must have at least one vertex")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"vertex {v}: duplicate or unsorted neighbours")
            for w in nbrs:
                if not 0 <= w < n:
                    raise GraphError(f"edge {v}-{w}: vertex out of range")
                if w == v:
                    raise GraphError(f"self-loop at {v}")
                if v not in self.adjacency[w]:
                    raise GraphError(f"edge {v}-{w} is not symmetric")
        if self.labels is not None:
            if len(self.labels) != n:
                raise GraphError("labels must cover every vertex")
            if len(set(self.labels)) != n:
                raise GraphError("labels must be distinct")
        if len(_bfs(self.adjacency, 0)) != n:
            raise GraphError("graph is disconnected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        if n < 1:
            raise GraphError("graph must have at least one vertex")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v}: vertex out of range")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge {u}-{v}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(tuple(sorted(a)) for a in adj),
                   None if labels is None else tuple(labels))

    @property
    def n(self) -> int:
        return len(self.adjacency)

    vertex_count = n

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def distances(self) -> DistanceMatrix:
        return distances(self)

    @cached_property
    def vertex_of(self) -> dict:
        """Inverse of ``labels``."""
        if self.labels is None:
            return {v: v for v in range(self.n)}
        return {lab: v for v, lab in enumerate(self.labels)}

    def label(self, v: int):
        return v if self.labels is None else self.labels[v]

    @cached_property
    def _geodesic_table(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        d = self.distances
        return tuple(
            tuple(tuple(w for w in self.adjacency[a] if d[w, b] == d[a, b] - 1) for b in range(self.n))
            for a in range(self.n)
        )

    def geodesic_successors(self, frm: int, to: int) -> tuple[int, ...]:
        """Neighbours of ``frm`` one step closer to ``to`` (sorted)."""
        if frm == to:
            raise ValueError("no geodesic move from a vertex to itself")
        return self._geodesic_table[frm][to]

    def relabel(self, labels) -> "Graph":
        return Graph(self.adjacency, None if labels is None else tuple(labels))


def _bfs(adjacency, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distances(g: Graph) -> DistanceMatrix:
    """All-pairs hop distances by one BFS per source.

    The result is a read-only ``int32`` array.
    """
    n = g.n
    d = np.empty((n, n), dtype=np.int32)
    for s in range(n):
        row = _bfs(g.adjacency, s)
        for v, dv in row.items():
            d[s, v] = dv
    d.setflags(write=False)
    return d


def geodesic_successors(d: DistanceMatrix, g: Graph, frm: int, to: int) -> frozenset[int]:
    if frm == to:
        raise ValueError("no geodesic move from a vertex to itself")
    return frozenset(w for w in g.neighbors(frm) if d[w, to] == d[frm, to] - 1)


# -- generators -----------------------------------------------------------

def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def hypercube(n: int) -> Graph:
    """Q_n; vertex ``v`` has label the bit tuple of ``v`` (most significant first)."""
    if n < 1:
        raise GraphError("hypercube needs n >= 1")
    size = 1 << n
    edges = [(v, v ^ (1 << b)) for v in range(size) for b in range(n) if v < v ^ (1 << b)]
    labels = [tuple((v >> (n - 1 - b)) & 1 for b in range(n)) for v in range(size)]
    return Graph.from_edges(size, edges, labels)


def petal_cycle_length(i: int) -> int:
    return 2 ** (i + 2) - 3


@dataclass(frozen=True)
class PetalCycle:
    copy: int
    index: int
    vertices: tuple[int, ...]  # clockwise, starts and ends at the hub

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class PetalDescriptor:
    k: int
    hub: int
    cycles: tuple[PetalCycle, ...]

    def cycle(self, copy: int, index: int) -> PetalCycle:
        return self.cycles[(copy - 1) * self.k + (index - 1)]

    @cached_property
    def position(self) -> dict[int, tuple[int, int, int]]:
        """Vertex -> (copy, cycle index, clockwise position); hub -> (0, 0, 0)."""
        pos = {self.hub: (0, 0, 0)}
        for c in self.cycles:
            for p, v in enumerate(c.vertices[1:-1], start=1):
                pos[v] = (c.copy, c.index, p)
        return pos

    @staticmethod
    def vertex_count(k: int) -> int:
        return 1 + k * sum(petal_cycle_length(i) - 1 for i in range(1, k + 1))


def petal(k: int) -> tuple[Graph, PetalDescriptor]:
    """k copies of each cycle C_{2^(i+2)-3}, i = 1..k, glued at hub vertex 0."""
    if k < 1:
        raise GraphError("petal graph needs k >= 1")
    labels: list[tuple[int, int, int]] = [(0, 0, 0)]
    edges = []
    cycles = []
    for copy in range(1, k + 1):
        for i in range(1, k + 1):
            length = petal_cycle_length(i)
            verts = [0]
            for p in range(1, length):
                verts.append(len(labels))
                labels.append((copy, i, p))
            verts.append(0)
            edges.extend(zip(verts, verts[1:]))
            cycles.append(PetalCycle(copy, i, tuple(verts)))
    g = Graph.from_edges(len(labels), edges, labels)
    return g, PetalDescriptor(k, 0, tuple(cycles))


def petal_descriptor(g: Graph) -> PetalDescriptor:
    """Recover the descriptor of a graph built by :func:`petal`."""
    if g.labels is None or g.labels[0] != (0, 0, 0):
        raise GraphError("not a labelled petal graph")
    k = max(lab[0] for lab in g.labels)
    cycles = []
    for copy in range(1, k + 1):
        for i in range(1, k + 1):
            length = petal_cycle_length(i)
            verts = [0] + [g.vertex_of[(copy, i, p)] for p in range(1, length)] + [0]
            cycles.append(PetalCycle(copy, i, tuple(verts)))
    return PetalDescriptor(k, 0, tuple(cycles))


def generate(family: str, n: int) -> Graph:
    """Build a named family.  For ``petal`` the parameter is k."""
    builders = {
        "path": path_graph,
        "cycle": cycle_graph,
        "complete": complete_graph,
        "hypercube": hypercube,
        "petal": lambda k: petal(k)[0],
    }
    try:
        return builders[family](n)
    except KeyError:
        raise GraphError(f"unknown family {family!r}") from None


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


# -- transformations ------------------------------------------------------

def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H with vertex ``a * |H| + x`` labelled ``(a, x)``."""
    nh = h.n
    edges = []
    for a in range(g.n):
        for x, y in h.edges:
            edges.append((a * nh + x, a * nh + y))
    for a, b in g.edges:
        for x in range(nh):
            edges.append((a * nh + x, b * nh + x))
    labels = [(a, x) for a in range(g.n) for x in range(nh)]
    return Graph.from_edges(g.n * nh, edges, labels)


def add_pendants(g: Graph, attachments: Sequence[int]) -> Graph:
    """Attach one new degree-1 vertex to each listed vertex (repeats allowed)."""
    edges = list(g.edges)
    n = g.n
    for v in attachments:
        if not 0 <= v < g.n:
            raise GraphError(f"invalid attachment vertex {v}")
        edges.append((v, n))
        n += 1
    return Graph.from_edges(n, edges)


def subdivide_and_keep(g: Graph, k: int) -> Graph:
    """Replace each edge by a path through ``k`` new vertices, keeping the edge too."""
    if k < 0:
        raise GraphError("k must be nonnegative")
    if k == 0:
        return g
    edges = []
    n = g.n
    for u, v in g.edges:
        chain = [u] + list(range(n, n + k)) + [v]
        n += k
        edges.extend(zip(chain, chain[1:]))
        edges.append((u, v))
    return Graph.from_edges(n, edges)


# -- I/O ------------------------------------------------------------------

def from_edge_list(text: str) -> Graph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {raw!r}") from None
        if len(nums) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}")
        if header is None:
            header = nums
        else:
            edges.append((nums[0], nums[1]))
    if header is None:
        raise ParseError("missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def _dot_label(label) -> str:
    if isinstance(label, tuple):
        label = "(" + ",".join(str(x) for x in label) + ")"
    return str(label).replace('"', r"\"")


def to_dot(g: Graph) -> str:
    lines = ["graph {"]
    if g.labels is not None:
        for v in range(g.n):
            lines.append(f'  {v} [label="{_dot_label(g.labels[v])}"];')
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def resolve(name: str) -> Graph:
    """Parse a short family name such as ``c5``, ``p3``, ``k4``, ``q3``,
    ``hypercube3`` or ``petal2``."""
    m = re.fullmatch(r"(petal|hypercube|cycle|path|complete|q|c|p|k)(\d+)", name.lower())
    if not m:
        raise GraphError(f"unrecognised graph name {name!r}")
    short = {"q": "hypercube", "c": "cycle", "p": "path", "k": "complete"}
    family = short.get(m.group(1), m.group(1))
    return generate(family, int(m.group(2)))


__all__ = [
    "Graph", "GraphError", "ParseError", "DistanceMatrix", "PetalCycle", "PetalDescriptor",
    "distances", "geodesic_successors", "path_graph", "cycle_graph", "complete_graph",
    "hypercube", "petal", "petal_descriptor", "petal_cycle_length", "generate",
    "random_connected_graph", "cartesian_product", "add_pendants", "subdivide_and_keep",
    "from_edge_list", "to_edge_list", "to_dot", "resolve",
]
