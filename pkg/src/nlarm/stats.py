"""Latency statistics: per-command summaries, the paired Student t-test, and
wall-clock timing of the interpret+plan pipeline.

The t distribution's two-tailed tail probability is computed from the
regularized incomplete beta function, evaluated with a Lentz continued
fraction, so no statistics library is needed at runtime.
"""

from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

DATA_DIR = Path(__file__).parent / "data"
LATENCY_FIXTURE_PATH = DATA_DIR / "latency_trials.json"


class StatsError(ValueError):
    pass


@dataclass(frozen=True)
class CommandTimings:
    id: int
    edge: tuple[float, ...]
    cloud: tuple[float, ...]


@dataclass(frozen=True)
class LatencyTable:
    rows: tuple[CommandTimings, ...]

    @staticmethod
    def from_file(path=None) -> "LatencyTable":
        doc = json.loads(Path(path or LATENCY_FIXTURE_PATH).read_text())
        rows = []
        for c in doc["commands"]:
            for side in ("edge", "cloud"):
                if len(c[side]) != 3 or any(v <= 0 for v in c[side]):
                    raise StatsError(f"command {c['id']}: {side} needs 3 positive trials")
            rows.append(CommandTimings(c["id"], tuple(c["edge"]), tuple(c["cloud"])))
        return LatencyTable(tuple(rows))

    def means(self, side: str) -> list[float]:
        return [summarize(getattr(r, side))[0] for r in self.rows]


@dataclass(frozen=True)
class PairedTTest:
    t_statistic: float
    p_value: float
    df: int
    mean_diff: float
    degenerate: bool = False  # zero variance of differences; t undefined


def summarize(trials) -> tuple[float, float]:
    """(arithmetic mean, sample standard deviation with n-1 denominator)."""
    trials = np.asarray(trials, dtype=float)
    if trials.size < 2:
        raise StatsError("need at least 2 values to summarize")
    return float(trials.mean()), float(trials.std(ddof=1))


def round_half_up(x: float, decimals: int = 2) -> float:
    """Presentation rounding; banker's rounding would drift from the
    published tables on exact .xx5 values."""
    scale = 10 ** decimals
    return math.floor(x * scale + 0.5) / scale


def _betacf(a: float, b: float, x: float, max_iter: int = 300,
            rel_tol: float = 1e-12) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < rel_tol:
            return h
    raise StatsError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b), relative error around 1e-12 for moderate arguments."""
    if not 0.0 <= x <= 1.0:
        raise StatsError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    # continued fraction converges fastest on the side of the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_sf(t: float, df: int) -> float:
    """Two-tailed p-value P(|T| >= |t|) for the Student t distribution."""
    if df < 1:
        raise StatsError("df must be >= 1")
    if not math.isfinite(t):
        raise StatsError("t must be finite")
    x = df / (df + t * t)
    return regularized_incomplete_beta(x, df / 2.0, 0.5)


def paired_t_test(a, b) -> PairedTTest:
    """t = mean(d) / (stdev(d) / sqrt(n)) with d = a - b, df = n - 1."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise StatsError("paired samples must be equal-length 1-D sequences")
    n = a.size
    if n < 2:
        raise StatsError("need at least 2 pairs")
    d = a - b
    mean_d, sd_d = summarize(d)
    if sd_d == 0.0:
        return PairedTTest(t_statistic=float("nan") if mean_d else 0.0,
                           p_value=1.0 if mean_d == 0.0 else 0.0,
                           df=n - 1, mean_diff=mean_d, degenerate=True)
    t = mean_d / (sd_d / math.sqrt(n))
    return PairedTTest(t, student_t_sf(t, n - 1), n - 1, mean_d)


def latency_report(table: LatencyTable) -> dict:
    """Recompute every AVG/STDEV cell and the edge-vs-cloud paired t-test
    over the per-command means."""
    rows = []
    for r in table.rows:
        e_mean, e_sd = summarize(r.edge)
        c_mean, c_sd = summarize(r.cloud)
        rows.append({"id": r.id,
                     "edge": list(r.edge), "cloud": list(r.cloud),
                     "edge_avg": round_half_up(e_mean), "edge_stdev": round_half_up(e_sd),
                     "cloud_avg": round_half_up(c_mean), "cloud_stdev": round_half_up(c_sd)})
    test = paired_t_test(table.means("edge"), table.means("cloud"))
    return {"rows": rows,
            "t_test": {"t_statistic": test.t_statistic, "p_value": test.p_value,
                       "df": test.df, "mean_diff": test.mean_diff}}


def format_latency_report(report: dict) -> str:
    lines = ["Command   Edge AVG  Edge SD  Cloud AVG  Cloud SD"]
    for r in report["rows"]:
        lines.append(f"{r['id']:7}   {r['edge_avg']:8.2f} {r['edge_stdev']:8.2f} "
                     f"{r['cloud_avg']:10.2f} {r['cloud_stdev']:9.2f}")
    t = report["t_test"]
    lines.append(f"paired t-test (edge vs cloud means): t = {t['t_statistic']:.3f}, "
                 f"p = {t['p_value']:.3f}, df = {t['df']}")
    return "\n".join(lines)


def time_pipeline(command_text: str, backend, repetitions: int = 3,
                  plan_fn=None) -> list[float]:
    """Monotonic wall-clock seconds per repetition of interpret (+ plan).

    Backend failures are recorded as missing trials with a warning rather
    than aborting the run.
    """
    from .intent import IntentError, interpret_llm

    samples: list[float] = []
    for _ in range(repetitions):
        start = time.monotonic()
        try:
            command = interpret_llm(command_text, backend)
            if plan_fn is not None:
                plan_fn(command)
        except IntentError as exc:
            warnings.warn(f"trial dropped: {exc}", stacklevel=2)
            continue
        samples.append(time.monotonic() - start)
    return samples
