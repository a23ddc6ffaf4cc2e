"""Monte Carlo harness: sample graphs, compute metric dimension, summarize.

Replicate i always uses RNG stream i, and results are reduced in replicate
order, so output is byte-identical for a given config no matter how many
worker processes run (cap with the MDIM_WORKERS environment variable).
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import ndtr

from . import asymptotics
from .generators import (
    SeededRng,
    forest_counts,
    sample_gnp,
    sample_uniform_forest,
    sample_uniform_tree,
)
from .metric_dimension import (
    ComponentTooLargeError,
    forest_beta,
    graph_beta,
    slater_tree_beta,
)

MODELS = ("uniform-tree", "uniform-forest", "gnp")
SCHEMA = "mdim-experiment/1"


class DegenerateSampleError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    n: int
    replicates: int
    seed: int
    c: float | None = None
    p_exponent: float | None = None
    output: str | None = None
    format: str = "csv"
    brute_cap: int = 12

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        has_c = self.c is not None
        has_exp = self.p_exponent is not None
        if self.model == "gnp":
            if has_c == has_exp:
                raise ValueError("model gnp requires exactly one of c or p_exponent")
        elif has_c or has_exp:
            raise ValueError(f"model {self.model} takes neither c nor p_exponent")

    def edge_probability(self) -> float:
        if self.c is not None:
            return self.c / self.n
        assert self.p_exponent is not None
        return self.n ** (-self.p_exponent)


@dataclass(frozen=True)
class NormalityStats:
    skewness: float
    excess_kurtosis: float
    ks_statistic: float


def normality_stats(samples) -> NormalityStats:
    """Moments of the standardized sample and its KS distance to a standard normal."""
    x = np.asarray(samples, dtype=float)
    m = x.size
    if m < 100:
        raise ValueError(f"need >= 100 samples, got {m}")
    mean = x.mean()
    var = x.var(ddof=1)
    if var == 0.0:
        raise DegenerateSampleError("zero-variance samples")
    z = (x - mean) / math.sqrt(var)
    m2 = np.mean(z * z)
    m3 = np.mean(z**3)
    m4 = np.mean(z**4)
    skew = float(m3 / m2**1.5)
    exkurt = float(m4 / (m2 * m2) - 3.0)
    zs = np.sort(z)
    cdf = ndtr(zs)
    grid = np.arange(1, m + 1) / m
    ks = float(max(np.max(grid - cdf), np.max(cdf - (grid - 1.0 / m))))
    return NormalityStats(skew, exkurt, ks)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    betas: list[int | None]  # per replicate; None = excluded
    predicted: dict[str, float] = field(default_factory=dict)

    @property
    def included(self) -> list[int]:
        return [b for b in self.betas if b is not None]

    @property
    def excluded_count(self) -> int:
        return sum(1 for b in self.betas if b is None)

    @property
    def exclusion_rate(self) -> float:
        return self.excluded_count / len(self.betas)

    def summary(self) -> dict[str, float]:
        xs = np.asarray(self.included, dtype=float)
        n = self.config.n
        out = {
            "replicates": len(self.betas),
            "included": int(xs.size),
            "excluded": self.excluded_count,
            "exclusion_rate": self.exclusion_rate,
        }
        if xs.size == 0:
            return out
        out["mean"] = float(xs.mean())
        out["variance"] = float(xs.var(ddof=1)) if xs.size > 1 else 0.0
        out["mean_over_n"] = out["mean"] / n
        out["variance_over_n"] = out["variance"] / n
        try:
            stats = normality_stats(xs)
            out["skewness"] = stats.skewness
            out["excess_kurtosis"] = stats.excess_kurtosis
            out["ks_statistic"] = stats.ks_statistic
        except (ValueError, DegenerateSampleError):
            pass
        for k, v in self.predicted.items():
            out[f"predicted_{k}"] = v
        return out


def _replicate_beta(cfg: ExperimentConfig, index: int, table=None) -> int | None:
    rng = SeededRng(cfg.seed, index).generator()
    if cfg.model == "uniform-tree":
        return slater_tree_beta(sample_uniform_tree(cfg.n, rng)).beta
    if cfg.model == "uniform-forest":
        return forest_beta(sample_uniform_forest(cfg.n, rng, table)).beta
    g = sample_gnp(cfg.n, cfg.edge_probability(), rng)
    try:
        return graph_beta(g, brute_cap=cfg.brute_cap).beta
    except ComponentTooLargeError:
        return None


_WORKER_CFG: ExperimentConfig | None = None
_WORKER_TABLE = None


def _worker_init(cfg: ExperimentConfig) -> None:
    global _WORKER_CFG, _WORKER_TABLE
    _WORKER_CFG = cfg
    _WORKER_TABLE = forest_counts(cfg.n) if cfg.model == "uniform-forest" else None


def _worker_run(index: int) -> int | None:
    return _replicate_beta(_WORKER_CFG, index, _WORKER_TABLE)


def _worker_count(replicates: int) -> int:
    cap = os.environ.get("MDIM_WORKERS")
    workers = int(cap) if cap else 1
    return max(1, min(workers, replicates))


def predicted_constants(cfg: ExperimentConfig) -> dict[str, float]:
    if cfg.model in ("uniform-tree", "uniform-forest"):
        const = asymptotics.tree_constants()
        return {"mu": const.mu, "sigma2": const.sigma2}
    if cfg.c is not None:
        return {"C": asymptotics.C_closed(cfg.c)}
    return {"beta_over_n": 1.0}


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run all replicates (stream i for replicate i) and collect statistics."""
    cfg.validate()
    workers = _worker_count(cfg.replicates)
    if workers == 1:
        table = forest_counts(cfg.n) if cfg.model == "uniform-forest" else None
        betas = [_replicate_beta(cfg, i, table) for i in range(cfg.replicates)]
    else:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_worker_init, initargs=(cfg,)
        ) as pool:
            chunk = max(1, cfg.replicates // (4 * workers))
            betas = list(pool.map(_worker_run, range(cfg.replicates), chunksize=chunk))
    return ExperimentResult(cfg, betas, predicted_constants(cfg))


# ---------------------------------------------------------------------------
# Output.
# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def render_csv(result: ExperimentResult) -> str:
    lines = ["replicate,beta"]
    for i, b in enumerate(result.betas):
        lines.append(f"{i},{'' if b is None else b}")
    lines.append("")
    lines.append("# summary")
    lines.append("key,value")
    cfg = result.config
    for k in ("model", "n", "replicates", "seed", "c", "p_exponent"):
        v = getattr(cfg, k)
        if v is not None:
            lines.append(f"{k},{_fmt(v)}")
    for k, v in result.summary().items():
        lines.append(f"{k},{_fmt(v)}")
    return "\n".join(lines) + "\n"


def render_json(result: ExperimentResult) -> str:
    cfg = {k: v for k, v in asdict(result.config).items() if v is not None}
    doc = {
        "schema": SCHEMA,
        "config": cfg,
        "betas": result.betas,
        "summary": result.summary(),
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def emit(result: ExperimentResult, format: str | None = None, path: str | None = None) -> str:
    """Render (and optionally write) the result; returns the rendered text."""
    fmt = format or result.config.format
    if fmt == "csv":
        text = render_csv(result)
    elif fmt == "json":
        text = render_json(result)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    target = path or result.config.output
    if target:
        with open(target, "w") as fh:
            fh.write(text)
    return text


def parse_csv_betas(text: str) -> list[int | None]:
    """Read back the per-replicate column of `render_csv` output."""
    betas: list[int | None] = []
    for line in text.splitlines()[1:]:
        if not line.strip():
            break
        _, _, val = line.partition(",")
        betas.append(int(val) if val else None)
    return betas


# ---------------------------------------------------------------------------
# Tolerance checks shared by the CLI --assert flag and the acceptance suite.
# ---------------------------------------------------------------------------

MEAN_RTOL = 0.03
VAR_RTOL = 0.25
KS_MAX = 0.05
SKEW_MAX = 0.15
SPARSE_BETA_FRACTION = 0.99


def check_tolerances(result: ExperimentResult) -> list[str]:
    """Return a list of human-readable tolerance violations (empty = pass)."""
    cfg = result.config
    s = result.summary()
    if "mean_over_n" not in s:
        return ["all replicates excluded"]
    failures = []

    def rel(name: str, got: float, want: float, rtol: float) -> None:
        err = abs(got - want) / abs(want)
        if err > rtol:
            failures.append(f"{name}: {got:.6g} vs {want:.6g} (rel err {err:.3f} > {rtol})")

    if cfg.model in ("uniform-tree", "uniform-forest"):
        rel("mean/n vs mu", s["mean_over_n"], result.predicted["mu"], MEAN_RTOL)
        rel("variance/n vs sigma2", s["variance_over_n"], result.predicted["sigma2"], VAR_RTOL)
        if "ks_statistic" not in s:
            failures.append("too few replicates for normality diagnostics")
        else:
            if s["ks_statistic"] >= KS_MAX:
                failures.append(f"KS {s['ks_statistic']:.4f} >= {KS_MAX}")
            if abs(s["skewness"]) >= SKEW_MAX:
                failures.append(f"|skewness| {abs(s['skewness']):.4f} >= {SKEW_MAX}")
    elif cfg.c is not None:
        rel("mean/n vs C", s["mean_over_n"], result.predicted["C"], MEAN_RTOL)
        if "ks_statistic" in s and s["ks_statistic"] >= KS_MAX:
            failures.append(f"KS {s['ks_statistic']:.4f} >= {KS_MAX}")
    else:
        frac = s["mean_over_n"]
        if frac <= SPARSE_BETA_FRACTION:
            failures.append(f"beta/n {frac:.4f} <= {SPARSE_BETA_FRACTION}")
    return failures
