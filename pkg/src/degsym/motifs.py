"""Detectors for the structures that drive symmetry (cherries, pendant
triangles) and for the forbidden configurations behind the asymmetry
argument (few-high-degree cycles, degree-1 path separation, dense
subgraphs, excess-branching trees)."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .degseq import DegreeSequence
from .graphs import Graph, connected_components, induced_subgraph


class NotATree(ValueError):
    pass


class Degenerate(ValueError):
    """Log arguments outside the regime the length scales assume."""


INFINITY = math.inf


def _check_degrees(g: Graph, d: DegreeSequence) -> None:
    if tuple(g.degrees()) != d.degrees:
        raise ValueError("graph degrees do not match the degree sequence")


def count_cherries(g: Graph, d: DegreeSequence) -> tuple[int, list[tuple[int, int, int]]]:
    """Unordered pairs of degree-1 vertices sharing a neighbor, as (u, v, w)."""
    _check_degrees(g, d)
    deg = g.degrees()
    witnesses = []
    for w in range(g.n):
        leaves = [u for u in g.adj[w] if deg[u] == 1]
        for u, v in combinations(leaves, 2):
            witnesses.append((u, v, w))
    return len(witnesses), witnesses


def count_pendant_triangles(
    g: Graph, d: DegreeSequence
) -> tuple[int, list[tuple[int, int, int]]]:
    """Triangles with at least two degree-2 vertices, each counted once."""
    _check_degrees(g, d)
    deg = g.degrees()
    seen = set()
    witnesses = []
    for v in range(g.n):
        if deg[v] != 2:
            continue
        u, w = g.adj[v]
        if not g.has_edge(u, w):
            continue
        tri = frozenset((v, u, w))
        if tri in seen:
            continue
        seen.add(tri)
        if deg[u] == 2 or deg[w] == 2:
            witnesses.append(tuple(sorted(tri)))
    return len(witnesses), witnesses


def deg1_structure(g: Graph, d: DegreeSequence) -> tuple[int, int]:
    """(number of adjacent degree-1 pairs, max degree-1 neighbors of any vertex)."""
    _check_degrees(g, d)
    deg = g.degrees()
    pairs = sum(
        1 for u, v in g.edges() if deg[u] == 1 and deg[v] == 1
    )
    max_nbrs = 0
    for w in range(g.n):
        max_nbrs = max(max_nbrs, sum(1 for u in g.adj[w] if deg[u] == 1))
    return pairs, max_nbrs


def min_high_on_deg1_path(g: Graph, d: DegreeSequence) -> float:
    """Minimum, over pairs of degree-1 vertices and paths joining them, of the
    number of path vertices of degree >= 3.

    Computed by 0/1 breadth-first search with vertex weight 1 on degree >= 3
    (minimum walk weight equals minimum simple-path weight for nonnegative
    weights). Infinity when fewer than two degree-1 vertices are connected.
    """
    _check_degrees(g, d)
    deg = g.degrees()
    leaves = [v for v in range(g.n) if deg[v] == 1]
    if len(leaves) < 2:
        return INFINITY
    weight = [1 if deg[v] >= 3 else 0 for v in range(g.n)]
    best = INFINITY
    for src in leaves:
        dist = [INFINITY] * g.n
        dist[src] = weight[src]
        dq = deque([src])
        while dq:
            v = dq.popleft()
            dv = dist[v]
            for u in g.adj[v]:
                nd = dv + weight[u]
                if nd < dist[u]:
                    dist[u] = nd
                    if weight[u] == 0:
                        dq.appendleft(u)
                    else:
                        dq.append(u)
        for t in leaves:
            if t != src and dist[t] < best:
                best = dist[t]
    return best


def find_few_high_cycle(g: Graph, d: DegreeSequence) -> Optional[list[int]]:
    """A cycle containing at most two vertices of degree >= 3, or None.

    Contracts maximal degree-2 chains into super-edges between high-degree
    endpoints; a witness exists iff a component is a pure degree-2 cycle, a
    super-edge closes on a single high vertex, or two high vertices are
    joined by two or more distinct super-edges.
    """
    _check_degrees(g, d)
    deg = g.degrees()

    # (a) components that are entirely cycles of degree-2 vertices
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s] or deg[s] != 2:
            continue
        comp = []
        dq = deque([s])
        seen[s] = True
        pure = True
        while dq:
            v = dq.popleft()
            comp.append(v)
            if deg[v] != 2:
                pure = False
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    dq.append(w)
        if pure and comp:
            m = sum(deg[v] for v in comp) // 2
            if m == len(comp):
                return _order_cycle(g, comp)

    # follow each chain leaving a high vertex
    super_edges: dict[tuple[int, int], list[list[int]]] = {}
    for v in range(g.n):
        if deg[v] < 3:
            continue
        for first in g.adj[v]:
            path = [v]
            prev, cur = v, first
            while deg[cur] == 2:
                path.append(cur)
                nxt = g.adj[cur][0] if g.adj[cur][0] != prev else g.adj[cur][1]
                prev, cur = cur, nxt
            if deg[cur] == 1:
                continue  # dead-end chain, not part of any cycle
            path.append(cur)
            if cur == v:
                # chain closes on its own endpoint: 1 high vertex
                return path[:-1]
            if cur < v:
                continue  # each chain is traversed from both ends; keep one
            key = (v, cur)
            bucket = super_edges.setdefault(key, [])
            interior = tuple(path[1:-1])
            if any(tuple(p[1:-1]) == interior for p in bucket):
                continue  # same chain found via its other first-step
            bucket.append(path)
            if len(bucket) >= 2:
                a, b = bucket[0], bucket[1]
                return a[:-1] + list(reversed(b[1:]))
    return None


def _order_cycle(g: Graph, comp: list[int]) -> list[int]:
    start = comp[0]
    cycle = [start]
    prev, cur = None, start
    while True:
        nxt = [w for w in g.adj[cur] if w != prev]
        step = nxt[0]
        if step == start:
            return cycle
        cycle.append(step)
        prev, cur = cur, step


@dataclass(frozen=True)
class ExcessComponent:
    vertices: int
    edges: int
    v1: int
    v2: int
    v1_below_alpha: bool
    v2_below_alpha: bool
    exact_subgraphs_checked: Optional[int]  # None when above the exact cap
    exact_all_below_alpha: Optional[bool]


def excess_subgraph_report(
    g: Graph, d: DegreeSequence, alpha: float, exact_vertex_cap: int = 14,
    exact_edge_cap: int = 20,
) -> list[ExcessComponent]:
    """Per-component report for components with more edges than vertices.

    A component contains a connected subgraph with more edges than vertices
    iff the component itself has more edges than vertices. In exact mode
    (small components) every connected subgraph F with |E(F)| > |V(F)| is
    enumerated over edge subsets and the density property |V_i(F)| <
    alpha*|V(F)| is verified on each; degrees are always measured in g.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    _check_degrees(g, d)
    deg = g.degrees()
    out = []
    for comp, ecount in connected_components(g):
        nv = len(comp)
        if ecount <= nv:
            continue
        v1 = sum(1 for v in comp if deg[v] == 1)
        v2 = sum(1 for v in comp if deg[v] == 2)
        checked = None
        all_ok = None
        if nv <= exact_vertex_cap and ecount <= exact_edge_cap:
            checked, all_ok = _exact_excess_check(g, deg, comp, alpha)
        out.append(
            ExcessComponent(
                vertices=nv,
                edges=ecount,
                v1=v1,
                v2=v2,
                v1_below_alpha=v1 < alpha * nv,
                v2_below_alpha=v2 < alpha * nv,
                exact_subgraphs_checked=checked,
                exact_all_below_alpha=all_ok,
            )
        )
    return out


def _exact_excess_check(g, deg, comp, alpha):
    sub, labels = induced_subgraph(g, comp)
    edges = sub.edges()
    checked = 0
    all_ok = True
    for r in range(1, len(edges) + 1):
        for chosen in combinations(edges, r):
            verts = set()
            for u, v in chosen:
                verts.add(u)
                verts.add(v)
            if len(chosen) <= len(verts):
                continue
            if not _edges_connected(chosen, verts):
                continue
            checked += 1
            gdeg = [deg[labels[v]] for v in verts]
            for i in (1, 2):
                if sum(1 for x in gdeg if x == i) >= alpha * len(verts):
                    all_ok = False
    return checked, all_ok


def _edges_connected(chosen, verts) -> bool:
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in chosen:
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(verts))
    seen = {start}
    dq = deque([start])
    while dq:
        v = dq.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                dq.append(w)
    return len(seen) == len(verts)


def length_scales(
    d: DegreeSequence, c1: float, c2: float, alpha: float
) -> tuple[float, float, float]:
    """(L1, L2^(1), L2^(2)) length scales for the dense-subgraph bounds.

    L1 = ln(M1/Delta^2) / ln(c1*n*Delta^2/M1);
    L2^(i) = ln(M1/Delta^2) / ln(M1/(c2*Delta^2*n_i^alpha*n^(1-alpha))).
    Raises Degenerate when any log argument is <= 1; n_i = 0 yields 0.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    dsq = d.max_degree**2
    top = d.m1 / dsq
    if top <= 1:
        raise Degenerate("M1/Delta^2 <= 1")
    bottom1 = c1 * d.n * dsq / d.m1
    if bottom1 <= 1:
        raise Degenerate("c1*n*Delta^2/M1 <= 1")
    l1 = math.log(top) / math.log(bottom1)
    l2 = []
    for ni in (d.n1, d.n2):
        if ni == 0:
            l2.append(0.0)
            continue
        bottom2 = d.m1 / (c2 * dsq * ni**alpha * d.n ** (1 - alpha))
        if bottom2 <= 1:
            raise Degenerate("M1/(c2*Delta^2*n_i^alpha*n^(1-alpha)) <= 1")
        l2.append(math.log(top) / math.log(bottom2))
    return l1, l2[0], l2[1]


def tree_branch_check(t: Graph) -> bool:
    """True iff every leaf-to-leaf path in the tree contains >= 2 vertices of
    degree >= 3. No tree has this property; used as a structural self-test."""
    if t.n < 2:
        raise NotATree("need at least 2 vertices")
    if t.edge_count != t.n - 1 or len(connected_components(t)) != 1:
        raise NotATree("input is not a tree")
    deg = t.degrees()
    leaves = [v for v in range(t.n) if deg[v] == 1]
    for src in leaves:
        parent = [-1] * t.n
        orderv = [src]
        dq = deque([src])
        seenv = [False] * t.n
        seenv[src] = True
        while dq:
            v = dq.popleft()
            for w in t.adj[v]:
                if not seenv[w]:
                    seenv[w] = True
                    parent[w] = v
                    dq.append(w)
        for dst in leaves:
            if dst <= src:
                continue
            highs = 0
            v = dst
            while v != -1:
                if deg[v] >= 3:
                    highs += 1
                v = parent[v]
            if highs < 2:
                return False
    return True


@dataclass(frozen=True)
class MotifReport:
    cherries: int
    cherry_witnesses: list
    pendant_triangles: int
    pendant_triangle_witnesses: list
    adjacent_deg1_pairs: int
    max_deg1_neighbors: int
    min_high_on_deg1_path: float
    few_high_cycle: Optional[list]
    excess_components: list


def motif_report(g: Graph, d: DegreeSequence, alpha: float = 0.1) -> MotifReport:
    cherries, cw = count_cherries(g, d)
    ptri, pw = count_pendant_triangles(g, d)
    pairs, maxn = deg1_structure(g, d)
    return MotifReport(
        cherries=cherries,
        cherry_witnesses=cw,
        pendant_triangles=ptri,
        pendant_triangle_witnesses=pw,
        adjacent_deg1_pairs=pairs,
        max_deg1_neighbors=maxn,
        min_high_on_deg1_path=min_high_on_deg1_path(g, d),
        few_high_cycle=find_few_high_cycle(g, d),
        excess_components=excess_subgraph_report(g, d, alpha),
    )
