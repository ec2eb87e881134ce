"""Simple undirected graphs and their degree / adjacency / Laplacian matrices.

Vertices are 1-based in edge-list files and 0-based everywhere in Python.

Edge-list format::

    # comment
    N
    i j
    ...
"""
from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DuplicateEdge, ParseError, RangeError, SelfLoop
from .linalg import EigenDecomposition, sym_eig

ZERO_TOL = 1e-10


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple  # sorted (i, j) pairs, 0-based, i < j

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a graph needs at least one vertex")
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise SelfLoop(f"self-loop at vertex {i + 1}")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise RangeError(f"edge ({i + 1}, {j + 1}) outside 1..{self.vertex_count}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise DuplicateEdge(f"duplicate edge {key[0] + 1} {key[1] + 1}")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, n, edges):
        return cls(int(n), tuple((int(i), int(j)) for i, j in edges))


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph.from_edges(n, combinations(range(n), 2))


def star_graph(n):
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def parse_edge_list(text):
    """Parse the edge-list format into a :class:`Graph`."""
    n = None
    edges = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError(f"expected vertex count, got {line!r}", lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"vertex count is not an integer: {fields[0]!r}", lineno) from None
            if n < 1:
                raise ParseError(f"vertex count must be >= 1, got {n}", lineno)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'i j', got {line!r}", lineno)
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        for v in (i, j):
            if not 1 <= v <= n:
                raise RangeError(f"vertex {v} outside 1..{n}", lineno)
        if i == j:
            raise SelfLoop(f"self-loop at vertex {i}", lineno)
        key = (min(i, j) - 1, max(i, j) - 1)
        if key in seen:
            raise DuplicateEdge(
                f"edge {key[0] + 1} {key[1] + 1} already given on line {seen[key]}", lineno)
        seen[key] = lineno
        edges.append(key)
    if n is None:
        raise ParseError("missing vertex count")
    return Graph(n, tuple(edges))


def format_edge_list(g):
    lines = [str(g.vertex_count)]
    lines += [f"{i + 1} {j + 1}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


def degrees(g):
    d = np.zeros(g.vertex_count, dtype=int)
    for i, j in g.edges:
        d[i] += 1
        d[j] += 1
    return d


def degree_matrix(g):
    return np.diag(degrees(g).astype(float))


def adjacency_matrix(g):
    a = np.zeros((g.vertex_count, g.vertex_count))
    for i, j in g.edges:
        a[i, j] = a[j, i] = 1.0
    return a


def laplacian(g):
    return degree_matrix(g) - adjacency_matrix(g)


def connected_components(g):
    """Vertex sets of the connected components, by breadth-first search."""
    nbrs = [[] for _ in range(g.vertex_count)]
    for i, j in g.edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    seen = [False] * g.vertex_count
    comps = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        comp = []
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in nbrs[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        comps.append(frozenset(comp))
    return comps


def degree_extremes(g):
    """(largest degree, smallest degree)."""
    d = degrees(g)
    return int(d.max()), int(d.min())


@dataclass(frozen=True)
class StructuralFlags:
    is_connected: bool
    is_regular: bool
    regularity_degree: int | None
    is_complete: bool
    has_null_vertex: bool


def structural_predicates(g):
    d = degrees(g)
    n = g.vertex_count
    regular = bool(np.all(d == d[0]))
    return StructuralFlags(
        is_connected=len(connected_components(g)) == 1,
        is_regular=regular,
        regularity_degree=int(d[0]) if regular else None,
        is_complete=len(g.edges) == n * (n - 1) // 2,
        has_null_vertex=bool(np.any(d == 0)),
    )


@dataclass(frozen=True)
class GraphSpectrum:
    laplacian: np.ndarray
    eigen: EigenDecomposition
    components: int
    algebraic_connectivity: float


def spectrum(g, tol=ZERO_TOL):
    """Laplacian spectrum with component count and algebraic connectivity.

    ``components`` counts eigenvalues below ``tol * max(1, nu_1)``. The
    algebraic connectivity is the second-smallest eigenvalue (0 for
    disconnected graphs and for N = 1).
    """
    lap = laplacian(g)
    eig = sym_eig(lap)
    scale = max(1.0, float(eig.values[0]))
    zeros = int(np.sum(np.abs(eig.values) < tol * scale))
    ac = float(eig.values[-2]) if g.vertex_count > 1 else 0.0
    return GraphSpectrum(lap, eig, zeros, ac)
