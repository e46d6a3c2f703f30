"""Exact brute-force ground truth at tiny scale.

Enumerates every labeled simple graph with a given degree sequence and
computes exact probabilities/expectations under the uniform measure. All
outputs are integers or Fractions; no floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .degseq import DegreeSequence, is_graphical
from .graphs import Graph


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Realizations:
    degrees: tuple[int, ...]
    graphs: tuple[Graph, ...]

    @property
    def count(self) -> int:
        return len(self.graphs)


def enumerate_realizations(d: DegreeSequence, max_m1: int = 24) -> Realizations:
    """All labeled simple graphs with degree sequence d, each exactly once.

    Backtracking over the adjacency structure: repeatedly complete the
    lowest-index vertex with positive residual degree by choosing its full
    remaining neighborhood, with Erdos-Gallai pruning on the residuals.
    """
    if d.m1 > max_m1:
        raise BudgetExceeded(f"total degree {d.m1} exceeds cap {max_m1}")
    n = d.n
    residual = list(d.degrees)
    adj: list[set[int]] = [set() for _ in range(n)]
    out: list[Graph] = []

    def first_open() -> int:
        for v in range(n):
            if residual[v] > 0:
                return v
        return -1

    def recurse():
        v = first_open()
        if v == -1:
            edges = [(u, w) for u in range(n) for w in adj[u] if u < w]
            out.append(Graph.from_edges(n, edges))
            return
        candidates = [w for w in range(v + 1, n) if residual[w] > 0 and w not in adj[v]]
        need = residual[v]
        if len(candidates) < need:
            return
        for chosen in combinations(candidates, need):
            for w in chosen:
                adj[v].add(w)
                adj[w].add(v)
                residual[w] -= 1
            residual[v] = 0
            if is_graphical_residual(residual):
                recurse()
            residual[v] = need
            for w in chosen:
                adj[v].discard(w)
                adj[w].discard(v)
                residual[w] += 1

    recurse()
    return Realizations(d.degrees, tuple(out))


def is_graphical_residual(residual: Sequence[int]) -> bool:
    """Erdos-Gallai on a residual sequence (zeros allowed); a safe prune."""
    d = sorted((x for x in residual), reverse=True)
    if sum(d) % 2 != 0:
        return False
    prefix = 0
    for k in range(1, len(d) + 1):
        if d[k - 1] == 0:
            break
        prefix += d[k - 1]
        tail = sum(min(x, k) for x in d[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def brute_force_automorphisms(g: Graph, cap_n: int = 8) -> list[tuple[int, ...]]:
    """All automorphisms of g, by exhaustive search over degree-preserving
    permutations (n <= cap_n)."""
    if g.n > cap_n:
        raise BudgetExceeded(f"n={g.n} exceeds brute-force cap {cap_n}")
    deg = g.degrees()
    by_deg: dict[int, list[int]] = {}
    for v in range(g.n):
        by_deg.setdefault(deg[v], []).append(v)
    classes = list(by_deg.values())
    adjsets = g.adjsets
    autos = []

    def assemble(idx: int, mapping: dict[int, int]):
        if idx == len(classes):
            img = tuple(mapping[v] for v in range(g.n))
            for u in range(g.n):
                iu = img[u]
                for w in adjsets[u]:
                    if img[w] not in adjsets[iu]:
                        return
            autos.append(img)
            return
        cls = classes[idx]
        for perm in permutations(cls):
            for a, b in zip(cls, perm):
                mapping[a] = b
            assemble(idx + 1, mapping)

    assemble(0, {})
    return autos


def brute_force_has_nontrivial(g: Graph, cap_n: int = 8) -> Optional[tuple[int, ...]]:
    """First non-identity automorphism by brute force, or None."""
    if g.n > cap_n:
        raise BudgetExceeded(f"n={g.n} exceeds brute-force cap {cap_n}")
    deg = g.degrees()
    by_deg: dict[int, list[int]] = {}
    for v in range(g.n):
        by_deg.setdefault(deg[v], []).append(v)
    classes = list(by_deg.values())
    adjsets = g.adjsets
    identity = tuple(range(g.n))

    found: list[tuple[int, ...]] = []

    def assemble(idx: int, mapping: dict[int, int]) -> bool:
        if idx == len(classes):
            img = tuple(mapping[v] for v in range(g.n))
            if img == identity:
                return False
            for u in range(g.n):
                iu = img[u]
                for w in adjsets[u]:
                    if img[w] not in adjsets[iu]:
                        return False
            found.append(img)
            return True
        cls = classes[idx]
        for perm in permutations(cls):
            for a, b in zip(cls, perm):
                mapping[a] = b
            if assemble(idx + 1, mapping):
                return True
        return False

    assemble(0, {})
    return found[0] if found else None


def exact_p_symmetric(d: DegreeSequence, max_m1: int = 24) -> Fraction:
    """Fraction of realizations having a nontrivial automorphism."""
    real = enumerate_realizations(d, max_m1=max_m1)
    if real.count == 0:
        raise BudgetExceeded("sequence has no realizations")
    sym = sum(1 for g in real.graphs if brute_force_has_nontrivial(g) is not None)
    return Fraction(sym, real.count)


def count_cherries_simple(g: Graph) -> int:
    deg = g.degrees()
    total = 0
    for w in range(g.n):
        leaves = sum(1 for u in g.adj[w] if deg[u] == 1)
        total += leaves * (leaves - 1) // 2
    return total


def count_pendant_triangles_simple(g: Graph) -> int:
    deg = g.degrees()
    seen = set()
    for v in range(g.n):
        if deg[v] != 2:
            continue
        u, w = g.adj[v]
        if g.has_edge(u, w):
            tri = frozenset((v, u, w))
            if tri not in seen and (deg[u] == 2 or deg[w] == 2):
                seen.add(tri)
    return len(seen)


def exact_expectation(
    d: DegreeSequence,
    statistic: str,
    u: int | None = None,
    v: int | None = None,
    subgraph_edges: Iterable[tuple[int, int]] | None = None,
    conditioned_on: Iterable[tuple[int, int]] | None = None,
    max_m1: int = 24,
) -> Fraction:
    """Exact mean of a statistic over the uniform measure on realizations.

    statistic: "cherries" | "pendant_triangles" | "edge" | "subgraph".
    For "edge"/"subgraph" the result is the exact containment probability,
    optionally conditioned on a set of required edges.
    """
    real = enumerate_realizations(d, max_m1=max_m1)
    if real.count == 0:
        raise BudgetExceeded("sequence has no realizations")

    def contains(g: Graph, edges) -> bool:
        return all(g.has_edge(a, b) for a, b in edges)

    pool = real.graphs
    if conditioned_on is not None:
        cond = list(conditioned_on)
        pool = tuple(g for g in pool if contains(g, cond))
        if not pool:
            raise BudgetExceeded("conditioning event has zero probability")

    if statistic == "cherries":
        return Fraction(sum(count_cherries_simple(g) for g in pool), len(pool))
    if statistic == "pendant_triangles":
        return Fraction(sum(count_pendant_triangles_simple(g) for g in pool), len(pool))
    if statistic == "edge":
        if u is None or v is None:
            raise ValueError("edge statistic needs u and v")
        return Fraction(sum(1 for g in pool if g.has_edge(u, v)), len(pool))
    if statistic == "subgraph":
        if subgraph_edges is None:
            raise ValueError("subgraph statistic needs edges")
        edges = list(subgraph_edges)
        return Fraction(sum(1 for g in pool if contains(g, edges)), len(pool))
    raise ValueError(f"unknown statistic {statistic!r}")


def pairing_census(d: DegreeSequence, max_m1: int = 12) -> Fraction:
    """(# simple perfect matchings of the half-edges) / prod(d_i!).

    An independent count of realizations via the pairing model; must equal
    enumerate_realizations(d).count.
    """
    if d.m1 > max_m1:
        raise BudgetExceeded(f"total degree {d.m1} exceeds cap {max_m1}")
    owner = []
    for v, deg in enumerate(d.degrees):
        owner.extend([v] * deg)
    points = list(range(len(owner)))

    simple = 0

    def match(remaining: list[int], edges: list[tuple[int, int]]):
        nonlocal simple
        if not remaining:
            seen = set()
            for a, b in edges:
                if a == b:
                    return
                key = (a, b) if a < b else (b, a)
                if key in seen:
                    return
                seen.add(key)
            simple += 1
            return
        p = remaining[0]
        for i in range(1, len(remaining)):
            q = remaining[i]
            rest = remaining[1:i] + remaining[i + 1 :]
            edges.append((owner[p], owner[q]))
            match(rest, edges)
            edges.pop()

    match(points, [])
    denom = math.prod(math.factorial(deg) for deg in d.degrees)
    return Fraction(simple, denom)
