"""Closed-form first/second moments and probability bounds for cherries and
pendant triangles, plus the conditional edge probability.

Every value is labeled either "asymptotic" (leading term, the (1+o(1))
factor dropped) or "exact-sum" (the finite-n sum form); consumers should
never mistake one for the other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .degseq import DegreeSequence


class DegenerateZero(ValueError):
    pass


class EdgeInC(ValueError):
    pass


def expected_cherries(d: DegreeSequence) -> tuple[float, float]:
    """(asymptotic, exact-sum) expected number of cherries.

    asymptotic: n1^2 * M2 / (2 * M1^2);
    exact-sum: C(n1,2) * sum_{w not in V1} d_w (d_w - 1) / M1^2.
    """
    if d.n1 < 2 or d.m2 == 0:
        return 0.0, 0.0
    asym = d.n1**2 * d.m2 / (2.0 * d.m1**2)
    s = sum(dw * (dw - 1) for dw in d.degrees if dw != 1)
    exact = (d.n1 * (d.n1 - 1) // 2) * s / d.m1**2
    return asym, exact


def expected_pendant_triangles(d: DegreeSequence) -> tuple[float, float]:
    """(asymptotic, exact-sum) expected number of pendant triangles.

    asymptotic: 2 * n2^2 * M2 / M1^3;
    exact-sum: C(n2,2) * sum_z 4 d_z (d_z - 1) / M1^3.
    """
    if d.n2 < 2 or d.m2 == 0:
        return 0.0, 0.0
    asym = 2.0 * d.n2**2 * d.m2 / d.m1**3
    s = sum(4 * dz * (dz - 1) for dz in d.degrees)
    exact = (d.n2 * (d.n2 - 1) // 2) * s / d.m1**3
    return asym, exact


def second_moments(d: DegreeSequence) -> tuple[float, float]:
    """Leading terms of E[Y(Y-1)] and E[Z(Z-1)]:
    n1^4 M2^2 / (4 M1^4) and 4 n2^4 M2^2 / M1^6."""
    ey2 = d.n1**4 * d.m2**2 / (4.0 * d.m1**4) if d.n1 >= 2 else 0.0
    ez2 = 4.0 * d.n2**4 * d.m2**2 / d.m1**6 if d.n2 >= 2 else 0.0
    return ey2, ez2


def second_moment_error_terms(d: DegreeSequence) -> tuple[float, float]:
    """Magnitudes of the overlapping-pair error terms for the cherry second
    moment: n1^3 M3 / M1^3 and n1^4 M4 / M1^4 (reported, not summed)."""
    return (
        d.n1**3 * d.m3 / d.m1**3,
        d.n1**4 * d.m4 / d.m1**4,
    )


def paley_zygmund(first: float, second: float) -> float:
    """Lower bound (E X)^2 / E[X^2] on P(X > 0) for nonnegative X."""
    if first == 0:
        raise DegenerateZero("first moment is zero")
    if second < first**2:
        raise ValueError("second moment below the square of the first")
    return first**2 / second


def conditional_edge_prob(
    d: DegreeSequence,
    u: int,
    v: int,
    conditioning: Iterable[tuple[int, int]] = (),
    max_c: int = 8,
) -> float:
    """Asymptotic P(u ~ v | C present): (d_u-|C_u|)(d_v-|C_v|) /
    (M1 + (d_u-|C_u|)), with C_x the edges of C incident to x."""
    c = [(int(a), int(b)) for a, b in conditioning]
    if len(c) > max_c:
        raise ValueError(f"|C|={len(c)} exceeds cap {max_c}")
    key = (u, v) if u < v else (v, u)
    if any(((a, b) if a < b else (b, a)) == key for a, b in c):
        raise EdgeInC(f"edge ({u},{v}) is in the conditioning set")
    cu = sum(1 for a, b in c if u in (a, b))
    cv = sum(1 for a, b in c if v in (a, b))
    du = d.degrees[u] - cu
    dv = d.degrees[v] - cv
    if du <= 0 or dv <= 0:
        return 0.0
    return du * dv / (d.m1 + du)


def subgraph_prob_bound(d: DegreeSequence, q: int, c: float = 2.0) -> float:
    """(c * Delta^2 / M1)^q upper bound on the probability that a fixed
    q-edge subgraph appears."""
    if q < 0:
        raise ValueError("q must be >= 0")
    if c <= 0:
        raise ValueError("c must be positive")
    return (c * d.max_degree**2 / d.m1) ** q


def calibrate_subgraph_constant(
    corpus: Sequence[tuple[DegreeSequence, float, int]]
) -> float:
    """Smallest c >= 1 making the bound hold on a corpus of exact
    (sequence, probability, edge count) triples."""
    c = 1.0
    for d, prob, q in corpus:
        if q == 0 or prob == 0:
            continue
        needed = prob ** (1.0 / q) * d.m1 / d.max_degree**2
        c = max(c, needed)
    return c


@dataclass(frozen=True)
class MomentEstimates:
    ey_asymptotic: float
    ey_exactsum: float
    ez_asymptotic: float
    ez_exactsum: float
    ey2_factorial: float
    ez2_factorial: float
    pz_lower_y: float  # 0 when E[Y] = 0
    pz_lower_z: float


def moment_estimates(d: DegreeSequence) -> MomentEstimates:
    ey_a, ey_e = expected_cherries(d)
    ez_a, ez_e = expected_pendant_triangles(d)
    ey2f, ez2f = second_moments(d)
    # E[X^2] = E[X(X-1)] + E[X]; leading terms throughout
    pz_y = ey_a**2 / (ey2f + ey_a) if ey_a > 0 else 0.0
    pz_z = ez_a**2 / (ez2f + ez_a) if ez_a > 0 else 0.0
    return MomentEstimates(
        ey_asymptotic=ey_a,
        ey_exactsum=ey_e,
        ez_asymptotic=ez_a,
        ez_exactsum=ez_e,
        ey2_factorial=ey2f,
        ez2_factorial=ez2f,
        pz_lower_y=pz_y,
        pz_lower_z=pz_z,
    )
