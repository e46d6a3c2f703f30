"""Monte Carlo sweeps tracing the symmetry phase transition.

A sweep point draws independent samples of G(d) for a parametrized degree
sequence family, classifies each sample (symmetric / asymmetric / unknown,
connected, motif counts) and aggregates into a CSV row with Wilson 95%
intervals next to the closed-form predictions.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import aut, degseq, moments, motifs, sampler
from .degseq import DegreeSequence
from .graphs import Graph, is_connected


class ConfigError(ValueError):
    pass


CSV_COLUMNS = (
    "family,params,n,trials,unknowns,p_sym,p_sym_lo,p_sym_hi,"
    "p_conn,p_conn_lo,p_conn_hi,meanY,varY,EY_pred,meanZ,varZ,EZ_pred,"
    "pz_lower,r_bounded_1,r_bounded_2,r_super_1,r_super_2,seconds"
)
CSV_SCHEMA_VERSION = 1


# --- degree-sequence families ---------------------------------------------


@dataclass(frozen=True)
class Family:
    name: str

    def degrees(self, n: int) -> tuple[list[int], bool]:
        """(degree list, parity_adjusted). Must validate downstream."""
        raise NotImplementedError

    def params_str(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Bounded(Family):
    """n1 = ceil(c1 * n^b1) degree-1 and n2 = ceil(c2 * n^b2) degree-2
    vertices, the rest at the filler degree (default 3). If the sum comes
    out odd, one filler vertex is bumped by 1 (flagged)."""

    name: str = field(default="bounded", init=False)
    c1: float = 0.0
    b1: float = 0.5
    c2: float = 0.0
    b2: float = 1.0
    filler: int = 3

    def degrees(self, n: int) -> tuple[list[int], bool]:
        n1 = math.ceil(self.c1 * n**self.b1) if self.c1 > 0 else 0
        n2 = math.ceil(self.c2 * n**self.b2) if self.c2 > 0 else 0
        rest = n - n1 - n2
        if rest < 1:
            raise ConfigError(f"family not instantiable at n={n}: no filler left")
        degs = [1] * n1 + [2] * n2 + [self.filler] * rest
        adjusted = False
        if sum(degs) % 2 != 0:
            degs[-1] += 1
            adjusted = True
        return degs, adjusted

    def params_str(self) -> str:
        return (
            f"c1={self.c1:g};b1={self.b1:g};c2={self.c2:g};b2={self.b2:g};"
            f"filler={self.filler}"
        )


@dataclass(frozen=True)
class ExampleGap(Family):
    """n1 = ceil(n^beta) degree-1 vertices, remainder of degree
    ceil(log n); the log base is a parameter (e or 2)."""

    name: str = field(default="example_gap", init=False)
    beta: float = 0.55
    log_base: str = "e"  # "e" | "2"

    def degrees(self, n: int) -> tuple[list[int], bool]:
        n1 = math.ceil(n**self.beta)
        if n1 >= n:
            raise ConfigError(f"family not instantiable at n={n}")
        logn = math.log(n) if self.log_base == "e" else math.log2(n)
        high = math.ceil(logn)
        degs = [1] * n1 + [high] * (n - n1)
        adjusted = False
        if sum(degs) % 2 != 0:
            degs[-1] += 1
            adjusted = True
        return degs, adjusted

    def params_str(self) -> str:
        return f"beta={self.beta:g};log_base={self.log_base}"


@dataclass(frozen=True)
class Regular(Family):
    name: str = field(default="regular", init=False)
    degree: int = 3

    def degrees(self, n: int) -> tuple[list[int], bool]:
        degs = [self.degree] * n
        adjusted = False
        if self.degree * n % 2 != 0:
            degs[-1] += 1
            adjusted = True
        return degs, adjusted

    def params_str(self) -> str:
        return f"degree={self.degree}"


@dataclass(frozen=True)
class Custom(Family):
    name: str = field(default="custom", init=False)
    path: str = ""

    def degrees(self, n: int) -> tuple[list[int], bool]:
        degs = degseq.load_degree_file(self.path)
        if n and n != len(degs):
            raise ConfigError(f"file holds {len(degs)} degrees, point asks n={n}")
        return degs, False

    def params_str(self) -> str:
        return f"path={self.path}"


def family_from_config(name: str, params: dict) -> Family:
    table = {"bounded": Bounded, "example_gap": ExampleGap, "regular": Regular,
             "custom": Custom}
    if name not in table:
        raise ConfigError(f"unknown family {name!r}")
    try:
        return table[name](**params)
    except TypeError as exc:
        raise ConfigError(f"bad params for family {name}: {exc}")


# --- estimation ------------------------------------------------------------


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054):
    """Wilson 95% interval; stable near 0 and 1."""
    if trials == 0:
        return 0.0, 0.0, 1.0
    p = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    center = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials**2)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return p, lo, hi


@dataclass(frozen=True)
class ExperimentRow:
    family: str
    params: str
    n: int
    trials: int
    unknowns: int
    p_sym: float
    p_sym_lo: float
    p_sym_hi: float
    p_conn: float
    p_conn_lo: float
    p_conn_hi: float
    mean_y: float
    var_y: float
    ey_pred: float
    mean_z: float
    var_z: float
    ez_pred: float
    pz_lower: float
    r_bounded_1: float
    r_bounded_2: float
    r_super_1: float
    r_super_2: float
    seconds: float

    def to_csv(self) -> str:
        def fmt(x) -> str:
            if isinstance(x, float):
                return f"{x:.6g}"
            return str(x)

        fields = (
            self.family, self.params, self.n, self.trials, self.unknowns,
            self.p_sym, self.p_sym_lo, self.p_sym_hi,
            self.p_conn, self.p_conn_lo, self.p_conn_hi,
            self.mean_y, self.var_y, self.ey_pred,
            self.mean_z, self.var_z, self.ez_pred, self.pz_lower,
            self.r_bounded_1, self.r_bounded_2, self.r_super_1, self.r_super_2,
            self.seconds,
        )
        return ",".join(fmt(f) for f in fields)


def run_point(
    family: Family,
    n: int,
    trials: int,
    seed: int,
    method: str = "auto",
    aut_budget: int = 2_000_000,
    point_id: int = 0,
) -> ExperimentRow:
    """Estimate the sweep quantities at one (family, n) point.

    Per-trial seeds derive from (seed, point_id, trial), so the aggregation
    is independent of execution order. Budget-exhausted automorphism
    searches land in the `unknowns` tally; p_sym is estimated over the
    decided trials only.
    """
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    t0 = time.monotonic()
    degs, _ = family.degrees(n)
    d = degseq.validate(degs)

    sym = 0
    unknown = 0
    conn = 0
    ys: list[int] = []
    zs: list[int] = []
    for trial in range(trials):
        rng = sampler.derive_rng(seed, point_id, trial)
        g = sampler.sample(d, method=method, rng=rng)
        report = aut.find_nontrivial_automorphism(g, node_budget=aut_budget)
        if report.verdict == "nontrivial":
            sym += 1
        elif report.verdict == "unknown":
            unknown += 1
        if is_connected(g):
            conn += 1
        y, _ = motifs.count_cherries(g, d)
        z, _ = motifs.count_pendant_triangles(g, d)
        # a cherry or pendant triangle forces a nontrivial automorphism
        assert not (y + z > 0 and report.verdict == "trivial")
        ys.append(y)
        zs.append(z)

    decided = trials - unknown
    p_sym, sym_lo, sym_hi = wilson_interval(sym, decided)
    p_conn, conn_lo, conn_hi = wilson_interval(conn, trials)
    est = moments.moment_estimates(d)
    diag = degseq.diagnostics(d, 10.0, 10.0, 0.5)
    pz = 0.0
    if est.ey_asymptotic > 0 or est.ez_asymptotic > 0:
        pz = max(est.pz_lower_y, est.pz_lower_z)
    return ExperimentRow(
        family=family.name,
        params=family.params_str(),
        n=n,
        trials=trials,
        unknowns=unknown,
        p_sym=p_sym,
        p_sym_lo=sym_lo,
        p_sym_hi=sym_hi,
        p_conn=p_conn,
        p_conn_lo=conn_lo,
        p_conn_hi=conn_hi,
        mean_y=_mean(ys),
        var_y=_var(ys),
        ey_pred=est.ey_exactsum,
        mean_z=_mean(zs),
        var_z=_var(zs),
        ez_pred=est.ez_exactsum,
        pz_lower=pz,
        r_bounded_1=diag.r_bounded_1,
        r_bounded_2=diag.r_bounded_2,
        r_super_1=diag.r_super_1,
        r_super_2=diag.r_super_2,
        seconds=time.monotonic() - t0,
    )


def _mean(xs: Sequence[float]) -> float:
    return sum(xs) / len(xs) if xs else 0.0


def _var(xs: Sequence[float]) -> float:
    if len(xs) < 2:
        return 0.0
    m = _mean(xs)
    return sum((x - m) ** 2 for x in xs) / (len(xs) - 1)


# --- sweeps ----------------------------------------------------------------


def parse_config(config: dict) -> dict:
    """Validate a sweep config; raises ConfigError naming the bad field."""
    required = {"family", "params", "n_list", "trials", "seed"}
    missing = required - set(config)
    if missing:
        raise ConfigError(f"missing config fields: {sorted(missing)}")
    if not isinstance(config["n_list"], list) or not all(
        isinstance(x, int) and x > 0 for x in config["n_list"]
    ):
        raise ConfigError("n_list must be a list of positive integers")
    if not isinstance(config["trials"], int) or config["trials"] < 1:
        raise ConfigError("trials must be a positive integer")
    params = config["params"]
    if isinstance(params, dict):
        params = [params]
    if not isinstance(params, list) or not all(isinstance(p, dict) for p in params):
        raise ConfigError("params must be a dict or a list of dicts")
    out = dict(config)
    out["params"] = params
    out.setdefault("method", "auto")
    out.setdefault("aut_budget", 2_000_000)
    out.setdefault("out", None)
    return out


def sweep(config: dict, progress=None) -> list[ExperimentRow]:
    """Rows for the cross product of n_list x params. Duplicate points are
    deduplicated with a warning via `progress`."""
    cfg = parse_config(config)
    rows = []
    seen = set()
    point_id = 0
    for params in cfg["params"]:
        family = family_from_config(cfg["family"], params)
        for n in cfg["n_list"]:
            key = (family.params_str(), n)
            if key in seen:
                if progress:
                    progress(f"duplicate sweep point {key}, skipped")
                continue
            seen.add(key)
            row = run_point(
                family,
                n,
                cfg["trials"],
                cfg["seed"],
                method=cfg["method"],
                aut_budget=cfg["aut_budget"],
                point_id=point_id,
            )
            rows.append(row)
            if progress:
                progress(f"point {key}: p_sym={row.p_sym:.3f} p_conn={row.p_conn:.3f}")
            point_id += 1
    return rows


def rows_to_csv(rows: Sequence[ExperimentRow]) -> str:
    lines = [CSV_COLUMNS]
    lines.extend(row.to_csv() for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(rows: Sequence[ExperimentRow], path) -> None:
    with open(path, "w") as fh:
        fh.write(rows_to_csv(rows))


def any_invalid(rows: Sequence[ExperimentRow], max_unknown_frac: float = 0.01) -> bool:
    """Rows where budgeted searches left >1% unknown are flagged invalid."""
    return any(r.unknowns > max_unknown_frac * r.trials for r in rows)


# --- moment experiment -----------------------------------------------------


@dataclass(frozen=True)
class MomentExperiment:
    trials: int
    mean_y: float
    var_y: float
    se_y: float
    mean_z: float
    var_z: float
    se_z: float
    frac_y_positive: float
    predictions: moments.MomentEstimates


def moment_experiment(
    d: DegreeSequence, trials: int, seed: int, method: str = "auto"
) -> MomentExperiment:
    ys = []
    zs = []
    for trial in range(trials):
        rng = sampler.derive_rng(seed, trial)
        g = sampler.sample(d, method=method, rng=rng)
        y, _ = motifs.count_cherries(g, d)
        z, _ = motifs.count_pendant_triangles(g, d)
        ys.append(y)
        zs.append(z)
    return MomentExperiment(
        trials=trials,
        mean_y=_mean(ys),
        var_y=_var(ys),
        se_y=math.sqrt(_var(ys) / trials) if trials > 1 else 0.0,
        mean_z=_mean(zs),
        var_z=_var(zs),
        se_z=math.sqrt(_var(zs) / trials) if trials > 1 else 0.0,
        frac_y_positive=sum(1 for y in ys if y > 0) / trials,
        predictions=moments.moment_estimates(d),
    )
