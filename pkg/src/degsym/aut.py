"""Automorphism detection, witnesses, group orders, and the anatomy of a
(graph, automorphism) pair.

The search colors vertices by degree and refines to the stable neighbor-color
partition. It then descends a stabilizer chain: pick a target vertex v in the
smallest unresolved color class and, for each candidate image w, jointly
refine the two colorings obtained by pinning v (respectively w) with a fresh
color. Class-size mismatch between the two sides rules the candidate out; a
discrete refinement forces a unique map which is then verified; anything in
between falls back to a color-respecting backtracking search. Verdicts are
never wrong: a Nontrivial verdict carries a verified witness, a Trivial
verdict means the search space was exhausted, and running out of node budget
yields Unknown.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .degseq import DegreeSequence
from .graphs import Graph


class SearchBudgetExceeded(RuntimeError):
    pass


class NotAnAutomorphism(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(n)):
            raise ValueError("image is not a bijection on [0, n)")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))

    def support(self) -> frozenset:
        return frozenset(i for i, x in enumerate(self.image) if i != x)

    def fixed(self) -> frozenset:
        return frozenset(i for i, x in enumerate(self.image) if i == x)

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition, fixed points omitted, each cycle starting at
        its smallest element, cycles sorted by that element."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s] or self.image[s] == s:
                seen[s] = True
                continue
            cyc = []
            v = s
            while not seen[v]:
                seen[v] = True
                cyc.append(v)
                v = self.image[v]
            out.append(tuple(cyc))
        return out

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))


def apply_permutation(g: Graph, sigma: Permutation) -> Graph:
    if sigma.n != g.n:
        raise ValueError("permutation length does not match graph order")
    img = sigma.image
    return Graph.from_edges(g.n, [(img[u], img[v]) for u, v in g.edges()])


def is_automorphism(g: Graph, sigma: Permutation) -> bool:
    img = sigma.image
    adjsets = g.adjsets
    for u in range(g.n):
        iu = img[u]
        for w in g.adj[u]:
            if img[w] not in adjsets[iu]:
                return False
    return True


@dataclass(frozen=True)
class AutReport:
    verdict: str  # "trivial" | "nontrivial" | "unknown"
    witness: Optional[Permutation] = None
    nodes: int = 0


class _Ctx:
    """Flat CSR adjacency plus the edge array, shared by all searches on g."""

    __slots__ = ("g", "n", "indptr", "indices", "owner", "degmax", "edges")

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        degs = (
            np.array(g.degrees(), dtype=np.int64)
            if g.n
            else np.zeros(0, dtype=np.int64)
        )
        self.indptr = np.concatenate(([0], np.cumsum(degs)))
        self.indices = np.array(
            [w for nbrs in g.adj for w in nbrs], dtype=np.int64
        )
        self.owner = np.repeat(np.arange(g.n, dtype=np.int64), degs)
        self.degmax = int(degs.max()) if g.n else 0
        self.edges = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)


def _sig_matrix(ctx: _Ctx, cols: np.ndarray) -> np.ndarray:
    """Row v is (color of v, sorted neighbor colors, -1 padding)."""
    vals = cols[ctx.indices]
    order = np.lexsort((vals, ctx.owner))
    sig = np.full((ctx.n, ctx.degmax + 1), -1, dtype=np.int64)
    sig[:, 0] = cols
    owners = ctx.owner[order]
    sig[owners, 1 + np.arange(len(vals)) - ctx.indptr[owners]] = vals[order]
    return sig


def _refine(ctx: _Ctx, both: np.ndarray, budget: "_Budget"):
    """Equitable refinement of one coloring (len n) or a joint pair (len 2n).

    For a pair, class labels are shared between the two halves and the halves
    are compared each round; returns (None, ncls) as soon as some class holds
    different numbers of vertices on the two sides (no map can respect it).
    Otherwise returns the stable (coloring array, class count).
    """
    n = ctx.n
    paired = both.shape[0] == 2 * n
    _, both = np.unique(both, return_inverse=True)
    ncls = int(both.max()) + 1 if both.size else 0
    while True:
        budget.spend()
        if paired and not np.array_equal(
            np.bincount(both[:n], minlength=ncls),
            np.bincount(both[n:], minlength=ncls),
        ):
            return None, ncls
        if ncls >= n:
            return both, ncls
        if paired:
            sigs = np.vstack(
                (_sig_matrix(ctx, both[:n]), _sig_matrix(ctx, both[n:]))
            )
        else:
            sigs = _sig_matrix(ctx, both)
        _, refined = np.unique(sigs, axis=0, return_inverse=True)
        refined = refined.ravel()  # inverse shape differs across numpy versions
        new_ncls = int(refined.max()) + 1
        if new_ncls == ncls:
            # fixpoint; the size check above already ran on this partition
            return both, ncls
        both, ncls = refined, new_ncls


def stable_coloring(g: Graph) -> list[int]:
    """Equitable refinement: start from degrees, repeatedly split classes by
    the multiset of neighbor colors until a fixpoint."""
    if g.n == 0:
        return []
    ctx = _Ctx(g)
    cols, _ = _refine(ctx, np.array(g.degrees(), dtype=np.int64), _Budget(1 << 60))
    return cols.tolist()


def _search_order(g: Graph, colors: list[int]) -> list[int]:
    """Deterministic vertex order: components visited by their smallest-rarity
    root, then breadth-first so nearly every vertex has an earlier neighbor."""
    class_size = {}
    for c in colors:
        class_size[c] = class_size.get(c, 0) + 1
    rank = [(class_size[colors[v]], colors[v], v) for v in range(g.n)]
    seen = [False] * g.n
    order = []
    for _, _, root in sorted(rank):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(g.adj[v], key=lambda x: (class_size[colors[x]], colors[x], x)):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


class _Budget:
    __slots__ = ("left", "used")

    def __init__(self, budget: int):
        self.left = budget
        self.used = 0

    def spend(self):
        self.used += 1
        self.left -= 1
        if self.left < 0:
            raise SearchBudgetExceeded


def _extend(g, cols_dom, cols_img, order, sigma, used, budget) -> bool:
    """Complete the partial map sigma along `order`; a candidate image for v
    must carry the image-side color matching v's domain-side color and agree
    with every already-mapped neighbor in both directions. sigma[v] == -1
    means unassigned; used is indexed by image vertex."""
    adjsets = g.adjsets
    n = g.n
    # iterative DFS; a frame (j, candidates, k) means candidate k-1 of
    # position j is currently assigned and k is the next to try
    frames: list[tuple[int, list[int], int]] = []

    def candidates_for(v):
        mapped_nbrs = [u for u in g.adj[v] if sigma[u] != -1]
        if mapped_nbrs:
            base = adjsets[sigma[mapped_nbrs[0]]]
        else:
            base = range(n)
        cv = cols_dom[v]
        out = []
        for w in base:
            if used[w] or cols_img[w] != cv:
                continue
            ok = True
            for u in mapped_nbrs:
                if sigma[u] not in adjsets[w]:
                    ok = False
                    break
            if not ok:
                continue
            # reverse direction: every already-used neighbor of w must be the
            # image of a neighbor of v
            cnt = 0
            for x in adjsets[w]:
                if used[x]:
                    cnt += 1
            if cnt != len(mapped_nbrs):
                ok = False
            if ok:
                out.append(w)
        return out

    j = 0
    while j < n and sigma[order[j]] != -1:
        j += 1
    if j >= n:
        return True
    frames.append((j, candidates_for(order[j]), 0))
    while frames:
        j, cands, k = frames.pop()
        v = order[j]
        if k > 0:
            # undo previous assignment at this frame
            w_prev = cands[k - 1]
            used[w_prev] = False
            sigma[v] = -1
        if k >= len(cands):
            continue
        budget.spend()
        w = cands[k]
        frames.append((j, cands, k + 1))
        sigma[v] = w
        used[w] = True
        jj = j + 1
        while jj < n and sigma[order[jj]] != -1:
            jj += 1
        if jj >= n:
            return True
        frames.append((jj, candidates_for(order[jj]), 0))
    return False


def _forced_map(ctx: _Ctx, cols_dom, cols_img) -> Optional[Permutation]:
    """When both sides are discrete, the only color-respecting map sends the
    vertex of domain color c to the vertex of image color c. Returns it if it
    is an automorphism, else None."""
    sigma = np.empty(ctx.n, dtype=np.int64)
    sigma[np.argsort(cols_dom, kind="stable")] = np.argsort(cols_img, kind="stable")
    mapped = np.sort(sigma[ctx.edges], axis=1)
    mapped = mapped[np.lexsort((mapped[:, 1], mapped[:, 0]))]
    if not np.array_equal(mapped, ctx.edges):
        return None
    return Permutation(tuple(int(x) for x in sigma))


def _pair_search(ctx: _Ctx, cols, ncls, v, w, budget) -> Optional[Permutation]:
    """Search for an automorphism that preserves `cols` classwise and sends
    v to w. Pins v and w with a fresh shared color, refines jointly, and
    falls back to backtracking when the refinement stays coarse."""
    n = ctx.n
    both = np.concatenate((cols, cols))
    both[v] = ncls
    both[n + w] = ncls
    refined, new_ncls = _refine(ctx, both, budget)
    if refined is None:
        return None
    cols_dom, cols_img = refined[:n], refined[n:]
    if new_ncls >= n:
        return _forced_map(ctx, cols_dom, cols_img)
    g = ctx.g
    order = _search_order(g, cols_dom.tolist())
    sigma = [-1] * n
    used = [False] * n
    if _extend(g, cols_dom, cols_img, order, sigma, used, budget):
        found = Permutation(tuple(sigma))
        assert is_automorphism(g, found)
        return found
    return None


def _target_class(sizes: np.ndarray, n: int) -> int:
    """Smallest class of size >= 2, ties broken by class label."""
    return int(np.argmin(np.where(sizes > 1, sizes, n + 1)))


# strengthen the coloring with distance profiles only in this size window;
# below it the plain search is already cheap, above it the n x n distance
# matrix is too expensive
_PROFILE_MIN_N = 200
_PROFILE_MAX_N = 6000


def _profile_classes(ctx: _Ctx) -> np.ndarray:
    """Class ids grouping vertices by their distance histogram (the number of
    vertices at each hop distance, unreachable lumped at the end). Any
    automorphism preserves distances, so it maps each class to itself. This
    is what splits the classes of nearly regular graphs, where plain
    neighbor-color refinement cannot get off the ground.

    All-pairs BFS runs bit-parallel: row v of `reached` is the bitset of
    vertices within the current distance of v, and one round ORs each row
    with its neighbors' rows.
    """
    n = ctx.n
    words = (n + 63) // 64
    reached = np.zeros((n, words), dtype=np.uint64)
    idx = np.arange(n)
    reached[idx, idx >> 6] = np.uint64(1) << (idx & 63).astype(np.uint64)
    isolated = np.diff(ctx.indptr) == 0
    hists = [np.ones(n, dtype=np.int64)]  # distance 0: the vertex itself
    while True:
        nbr_or = np.bitwise_or.reduceat(
            reached[ctx.indices], ctx.indptr[:-1], axis=0
        )
        nbr_or[isolated] = 0  # reduceat misreads empty segments
        fresh = nbr_or & ~reached
        counts = np.bitwise_count(fresh).sum(axis=1, dtype=np.int64)
        if not counts.any():
            break
        hists.append(counts)
        reached |= fresh
    unreachable = n - np.sum(hists, axis=0)
    hists.append(unreachable)
    _, cls = np.unique(np.column_stack(hists), axis=0, return_inverse=True)
    return cls.ravel()


def _initial_coloring(ctx: _Ctx, budget: "_Budget"):
    """Stable coloring from degrees, strengthened by distance profiles when
    the graph is mid-sized and refinement alone leaves large classes."""
    g = ctx.g
    cols, ncls = _refine(ctx, np.array(g.degrees(), dtype=np.int64), budget)
    if (
        ncls < g.n
        and _PROFILE_MIN_N <= g.n <= _PROFILE_MAX_N
        and int(np.bincount(cols, minlength=ncls).max()) > 32
    ):
        prof = _profile_classes(ctx)
        cols, ncls = _refine(ctx, cols * (int(prof.max()) + 1) + prof, budget)
    return cols, ncls


def find_nontrivial_automorphism(g: Graph, node_budget: int = 2_000_000) -> AutReport:
    """Search for any non-identity automorphism.

    Descends a stabilizer chain: while the stable coloring has a class of two
    or more vertices, pick a target vertex v in the smallest such class and
    try each classmate w as an image for v; failure on all of them means every
    automorphism preserving the current pins fixes v, so v is pinned and the
    coloring re-refined. A discrete coloring certifies triviality.
    """
    if g.n <= 1:
        return AutReport("trivial")
    ctx = _Ctx(g)
    budget = _Budget(node_budget)
    try:
        cols, ncls = _initial_coloring(ctx, budget)
        while ncls < g.n:
            sizes = np.bincount(cols, minlength=ncls)
            cls = _target_class(sizes, g.n)
            members = np.flatnonzero(cols == cls)
            v = int(members[0])
            for w in members[1:]:
                witness = _pair_search(ctx, cols, ncls, v, int(w), budget)
                if witness is not None:
                    assert not witness.is_identity()
                    return AutReport("nontrivial", witness, budget.used)
            pinned = cols.copy()
            pinned[v] = ncls
            cols, ncls = _refine(ctx, pinned, budget)
    except SearchBudgetExceeded:
        return AutReport("unknown", None, budget.used)
    return AutReport("trivial", None, budget.used)


def group_order(g: Graph, node_budget: int = 5_000_000, cap_n: int = 64) -> int:
    """|Aut(g)| via the orbit-stabilizer chain: fix base vertices one at a
    time and multiply the orbit sizes of each next base point inside the
    stabilizer of the previous ones. Each orbit membership test is a single
    pinned-pair search; pinned base points live in the coloring as singleton
    classes, so preserving the coloring means fixing them."""
    if g.n > cap_n:
        raise SearchBudgetExceeded(f"n={g.n} exceeds group-order cap {cap_n}")
    if g.n <= 1:
        return 1
    ctx = _Ctx(g)
    budget = _Budget(node_budget)
    cols, ncls = _refine(ctx, np.array(g.degrees(), dtype=np.int64), budget)
    total = 1
    while ncls < g.n:
        sizes = np.bincount(cols, minlength=ncls)
        cls = _target_class(sizes, g.n)
        members = np.flatnonzero(cols == cls)
        v = int(members[0])
        orbit = 1  # v itself
        for w in members[1:]:
            if _pair_search(ctx, cols, ncls, v, int(w), budget) is not None:
                orbit += 1
        total *= orbit
        pinned = cols.copy()
        pinned[v] = ncls
        cols, ncls = _refine(ctx, pinned, budget)
    return total


# --- anatomy of a (graph, automorphism) pair -------------------------------


@dataclass(frozen=True)
class ParamVector:
    """Counts describing the structure moved by an automorphism.

    a1/a2/a_ge3: moved vertices of degree 1 / 2 / >=3. ell: total degree of
    the moved high-degree vertices. s[i]: i-cycle counts of the permutation
    for 2 <= i <= 6 (1-cycles inside the support cannot occur, s1 is kept at
    0 for index alignment); longer cycles aggregate into s_long. k: edges of
    the subgraph induced on the support. e1: such edges fixed by the induced
    edge permutation. f: edge orbits completely filled; m = k - f.
    """

    a1: int
    a2: int
    a_ge3: int
    ell: int
    s: tuple[int, int, int, int, int, int]  # s1..s6
    s_long: int
    k: int
    e1: int
    f: int
    m: int
    classification: str  # "S1" | "S2"


def parameter_vector(
    g: Graph, sigma: Permutation, d: DegreeSequence, r1: float, r2: float
) -> ParamVector:
    if tuple(g.degrees()) != d.degrees:
        raise ValueError("graph degrees do not match the degree sequence")
    if not is_automorphism(g, sigma):
        raise NotAnAutomorphism("sigma does not preserve the edge set")

    supp = sigma.support()
    deg = g.degrees()
    a1 = sum(1 for v in supp if deg[v] == 1)
    a2 = sum(1 for v in supp if deg[v] == 2)
    a_ge3 = sum(1 for v in supp if deg[v] >= 3)
    ell = sum(deg[v] for v in supp if deg[v] >= 3)

    s = [0] * 6
    s_long = 0
    for cyc in sigma.cycles():
        L = len(cyc)
        if 2 <= L <= 6:
            s[L - 1] += 1
        elif L > 6:
            s_long += 1

    img = sigma.image
    h0_edges = [(u, v) for u, v in g.edges() if u in supp and v in supp]
    h0_set = {frozenset(e) for e in h0_edges}
    k = len(h0_edges)
    e1 = sum(1 for u, v in h0_edges if {img[u], img[v]} == {u, v})

    # orbits of the induced edge permutation restricted to the induced edges
    f = 0
    visited = set()
    for e in h0_set:
        if e in visited:
            continue
        orbit = []
        cur = e
        while cur not in visited:
            visited.add(cur)
            orbit.append(cur)
            u, v = tuple(cur)
            cur = frozenset((img[u], img[v]))
            if cur not in h0_set:
                # the orbit leaves the induced subgraph; cannot happen for an
                # automorphism since the support is invariant, but guard anyway
                break
        if all(x in h0_set for x in orbit) and cur in h0_set:
            f += 1
    m = k - f

    # internal consistency: edge count of the moved-edge subgraph
    h_edge_count = sum(1 for u, v in g.edges() if u in supp or v in supp)
    assert h_edge_count == a1 + 2 * a2 + ell - k
    assert m >= 0 and e1 <= f and e1 <= s[1]  # s[1] counts the 2-cycles

    classification = "S1" if (a_ge3 <= r1 * a1 or a_ge3 <= r2 * a2) else "S2"
    return ParamVector(
        a1=a1,
        a2=a2,
        a_ge3=a_ge3,
        ell=ell,
        s=tuple(s),
        s_long=s_long,
        k=k,
        e1=e1,
        f=f,
        m=m,
        classification=classification,
    )
