"""Simple undirected labeled graphs with the traversals the other modules need."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class LabelOutOfRange(GraphError):
    pass


class Graph:
    """Immutable simple graph on vertex set [0, n).

    Neighbor lists are kept sorted so adjacency queries are cheap and
    equality is canonical. Construction is single-threaded; reads are safe
    from any number of threads.
    """

    __slots__ = ("n", "adj", "edge_count", "_adjsets")

    def __init__(self, n: int, adj: tuple[tuple[int, ...], ...], edge_count: int):
        self.n = n
        self.adj = adj
        self.edge_count = edge_count
        self._adjsets = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise LabelOutOfRange(f"edge ({u},{v}) outside [0,{n})")
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
            m += 1
        return cls(n, tuple(tuple(sorted(a)) for a in adj), m)

    @property
    def adjsets(self) -> tuple[frozenset, ...]:
        if self._adjsets is None:
            self._adjsets = tuple(frozenset(a) for a in self.adj)
        return self._adjsets

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjsets[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def connected_components(g: Graph) -> list[tuple[list[int], int]]:
    """Partition vertices into components; returns (vertices, edge_count) per part."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = []
        deg_sum = 0
        queue = deque([s])
        seen[s] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            deg_sum += len(g.adj[v])
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        out.append((comp, deg_sum // 2))
    return out


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(connected_components(g)) == 1


def two_core(g: Graph) -> tuple[Graph, list[int]]:
    """Iteratively peel degree <= 1 vertices; returns (core graph, label map).

    The label map sends core labels back to labels in g. The result is
    independent of deletion order (it is the unique maximal subgraph of
    minimum degree >= 2).
    """
    deg = g.degrees()
    alive = [True] * g.n
    queue = deque(v for v in range(g.n) if deg[v] <= 1)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] <= 1:
                    queue.append(w)
    keep = [v for v in range(g.n) if alive[v]]
    return induced_subgraph(g, keep)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by `vertices`, relabeled densely; returns the label map."""
    labels = sorted(set(vertices))
    index = {v: i for i, v in enumerate(labels)}
    edges = [
        (index[u], index[v])
        for u in labels
        for v in g.adj[u]
        if u < v and v in index
    ]
    return Graph.from_edges(len(labels), edges), labels


# --- edge-list text format -------------------------------------------------
#
# Header "n m", then m lines "u v" with u < v, edges sorted. Deterministic.


def to_edge_list_text(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list_text(text: str) -> Graph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise GraphError("empty edge-list input")
    try:
        n, m = map(int, lines[0].split())
    except ValueError:
        raise GraphError(f"bad header line {lines[0]!r}")
    edges = []
    for ln in lines[1 : m + 1]:
        u, v = map(int, ln.split())
        edges.append((u, v))
    if len(edges) != m:
        raise GraphError(f"expected {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def load_graph_file(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list_text(fh.read())


def save_graph_file(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_edge_list_text(g))
