"""Degree sequences: validation, falling-factorial statistics, threshold diagnostics."""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class DegreeSequenceError(ValueError):
    """Base class for degree-sequence validation failures."""


class ZeroDegree(DegreeSequenceError):
    pass


class OddSum(DegreeSequenceError):
    pass


class NotGraphical(DegreeSequenceError):
    pass


class BadConstants(ValueError):
    """Exponent 1/6 - 1/(2*r1) - 1/r2 must be positive."""


def is_graphical(degrees: Sequence[int]) -> bool:
    """Erdos-Gallai test. Assumes all entries >= 0 and even sum."""
    d = sorted(degrees, reverse=True)
    n = len(d)
    if n == 0:
        return False
    if d[0] >= n:
        return False
    prefix = 0
    # running count of entries > k is found with a pointer from the right
    for k in range(1, n + 1):
        prefix += d[k - 1]
        tail = sum(min(x, k) for x in d[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


@dataclass(frozen=True)
class DegreeSequence:
    """A validated positive degree sequence with cached scalar statistics.

    Immutable after construction; safe for concurrent reads.
    """

    degrees: tuple[int, ...]
    n: int = field(init=False)
    n1: int = field(init=False)
    n2: int = field(init=False)
    n_ge3: int = field(init=False)
    m1: int = field(init=False)
    m2: int = field(init=False)
    m3: int = field(init=False)
    m4: int = field(init=False)
    max_degree: int = field(init=False)

    def __post_init__(self):
        counts = Counter(self.degrees)
        object.__setattr__(self, "n", len(self.degrees))
        object.__setattr__(self, "n1", counts.get(1, 0))
        object.__setattr__(self, "n2", counts.get(2, 0))
        object.__setattr__(self, "n_ge3", sum(c for d, c in counts.items() if d >= 3))
        for i in (1, 2, 3, 4):
            mi = sum(c * falling_factorial(d, i) for d, c in counts.items())
            object.__setattr__(self, f"m{i}", mi)
        object.__setattr__(self, "max_degree", max(self.degrees))

    @property
    def avg_degree(self) -> Fraction:
        return Fraction(self.m1, self.n)

    def count_of(self, degree: int) -> int:
        return sum(1 for d in self.degrees if d == degree)

    def __len__(self) -> int:
        return self.n


def falling_factorial(x: int, i: int) -> int:
    out = 1
    for j in range(i):
        out *= x - j
    return out


def validate(degrees: Iterable[int]) -> DegreeSequence:
    """Validate a degree list and return it with caches populated.

    Raises ZeroDegree, OddSum or NotGraphical, naming the violated condition.
    """
    degs = tuple(int(d) for d in degrees)
    if not degs:
        raise DegreeSequenceError("empty degree list")
    if any(d < 1 for d in degs):
        raise ZeroDegree("all degrees must be >= 1")
    if sum(degs) % 2 != 0:
        raise OddSum(f"degree sum {sum(degs)} is odd")
    if not is_graphical(degs):
        raise NotGraphical("sequence fails the Erdos-Gallai condition")
    return DegreeSequence(degs)


def statistics(d: DegreeSequence) -> dict:
    """Exact scalar statistics of a validated sequence."""
    return {
        "n": d.n,
        "n1": d.n1,
        "n2": d.n2,
        "n_ge3": d.n_ge3,
        "m1": d.m1,
        "m2": d.m2,
        "m3": d.m3,
        "m4": d.m4,
        "max_degree": d.max_degree,
        "avg_degree": d.avg_degree,
    }


@dataclass(frozen=True)
class ThresholdDiagnostics:
    """Finite-n ratios for the asymptotic symmetry/asymmetry conditions.

    Each asymptotic condition o(rhs) is rendered as the dimensionless ratio
    lhs/rhs; a ratio well below 1 suggests the asymptotic regime. No boolean
    verdicts are produced: o(.)/omega(.) have no finite-n truth value.
    """

    r_bounded_1: float  # n1 / sqrt(n)
    r_bounded_2: float  # n2 / n
    r_super_1: float    # n1 * sqrt(M2) / M1
    r_super_2: float    # n2 * sqrt(M2 / M1^3)
    sub_ratios: dict    # named lhs/rhs ratios of the asymmetry conditions
    alpha_1: float
    alpha_2: float
    flags: tuple[str, ...]


def diagnostics(d: DegreeSequence, r1: float, r2: float, eps: float) -> ThresholdDiagnostics:
    """Threshold diagnostics at constants (r1, r2, eps).

    r1, r2 must make the exponent c0 = 1/6 - 1/(2*r1) - 1/r2 positive,
    and 0 < eps < 1.
    """
    if r1 <= 0 or r2 <= 0:
        raise BadConstants("r1 and r2 must be positive")
    c0 = 1.0 / 6.0 - 1.0 / (2.0 * r1) - 1.0 / r2
    if c0 <= 0:
        raise BadConstants(f"exponent 1/6 - 1/(2*r1) - 1/r2 = {c0} must be > 0")
    if not 0 < eps < 1:
        raise BadConstants("eps must lie in (0, 1)")

    alpha_2 = 1.0 / (r2 + 4.0)
    alpha_1 = (1.0 - alpha_2) / (r1 + 4.0)

    flags = []
    n = d.n
    if d.m2 == 0:
        flags.append("DegenerateM2")

    r_bounded_1 = d.n1 / math.sqrt(n) if d.n1 > 0 else 0.0
    r_bounded_2 = d.n2 / n if d.n2 > 0 else 0.0
    if d.m2 == 0:
        r_super_1 = 0.0
        r_super_2 = 0.0
    else:
        r_super_1 = d.n1 * math.sqrt(d.m2) / d.m1 if d.n1 > 0 else 0.0
        r_super_2 = d.n2 * math.sqrt(d.m2 / d.m1**3) if d.n2 > 0 else 0.0

    dd = d.m1 / n  # average degree
    ratio = d.max_degree**2 / dd  # Delta^2 / d, the recurring left-hand side

    sub: dict[str, float] = {}
    sub["growth"] = ratio / n**c0
    sub["deg1"] = ratio / (n**0.25 / math.sqrt(d.n1)) if d.n1 > 0 else 0.0
    sub["deg2"] = (
        ratio / (n**(alpha_2 / 2.0) / d.n2**(alpha_2 / 2.0)) if d.n2 > 0 else 0.0
    )
    for i, ni, ai in ((1, d.n1, alpha_1), (2, d.n2, alpha_2)):
        sub[f"density{i}"] = (
            (ni / n) ** (ai * (1.0 - eps)) * ratio ** (2.0 - eps) if ni > 0 else 0.0
        )

    return ThresholdDiagnostics(
        r_bounded_1=r_bounded_1,
        r_bounded_2=r_bounded_2,
        r_super_1=r_super_1,
        r_super_2=r_super_2,
        sub_ratios=sub,
        alpha_1=alpha_1,
        alpha_2=alpha_2,
        flags=tuple(flags),
    )


# --- degree-sequence text format ------------------------------------------
#
# Either one integer per line, or lines "COUNT x DEGREE" (e.g. "200 x 1").
# The two forms may be mixed; parsing preserves order, so the compact writer
# round-trips exactly.

_COMPACT_RE = re.compile(r"^\s*(\d+)\s*x\s*(\d+)\s*$")


def parse_degree_text(text: str) -> list[int]:
    degrees: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _COMPACT_RE.match(line)
        if m:
            count, deg = int(m.group(1)), int(m.group(2))
            degrees.extend([deg] * count)
            continue
        try:
            degrees.append(int(line))
        except ValueError:
            raise DegreeSequenceError(f"line {lineno}: cannot parse {line!r}")
    return degrees


def format_degree_text(degrees: Sequence[int]) -> str:
    """Run-length encode consecutive equal degrees; round-trips exactly."""
    lines = []
    i = 0
    degs = list(degrees)
    while i < len(degs):
        j = i
        while j < len(degs) and degs[j] == degs[i]:
            j += 1
        run = j - i
        if run >= 3:
            lines.append(f"{run} x {degs[i]}")
        else:
            lines.extend(str(degs[i]) for _ in range(run))
        i = j
    return "\n".join(lines) + "\n"


def load_degree_file(path) -> list[int]:
    with open(path) as fh:
        return parse_degree_text(fh.read())


def save_degree_file(degrees: Sequence[int], path) -> None:
    with open(path, "w") as fh:
        fh.write(format_degree_text(degrees))
