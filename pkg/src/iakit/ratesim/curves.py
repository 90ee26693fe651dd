"""Averaged sum-rate curves over random channel draws, and CSV rendering."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..channels import sample_generic
from .optimize import optimize_sum_rate, time_sharing_rate
from .threephase import PowerConfig, RateSimError

CURVE_RESTARTS = 3
CURVE_ITERATIONS = 140


@dataclass
class CurveReport:
    K: int
    mode: str
    trials: int
    seed: int
    snr_db: list
    ia_sum_rate: list
    ts_sum_rate: list
    per_trial: list = field(default_factory=list)  # populated when verbose


def parse_snr_grid(spec: str):
    """Grid syntax 'start:step:stop' (inclusive), or a comma list of dB values."""
    if ":" in spec:
        start, step, stop = (float(x) for x in spec.split(":"))
        if step <= 0:
            raise RateSimError("snr grid step must be positive")
        out = []
        v = start
        while v <= stop + 1e-9:
            out.append(round(v, 10))
            v += step
        return out
    return [float(x) for x in spec.split(",")]


def monte_carlo_curves(K, mode="oob", snr_grid_db=None, trials=50, seed=0,
                       restarts=CURVE_RESTARTS, iterations=CURVE_ITERATIONS,
                       reciprocal=True, charge_feedback=False, ts_burst=False,
                       verbose=False) -> CurveReport:
    """Average optimized alignment rate vs time sharing over channel draws.

    Channels are standard complex Gaussian; each trial reuses its best
    optimizer parameters as a warm start when stepping up the SNR grid.
    Deterministic per seed.
    """
    if mode != "oob":
        raise RateSimError("rate curves cover the out-of-band three-phase scheme")
    if trials < 1:
        raise RateSimError("need at least one trial")
    snr_grid_db = snr_grid_db or [float(x) for x in range(0, 45, 5)]
    master = np.random.default_rng(seed)
    trial_seeds = [int(master.integers(2**63)) for _ in range(trials)]
    ia = np.zeros(len(snr_grid_db))
    ts = np.zeros(len(snr_grid_db))
    per_trial = []
    for t, tseed in enumerate(trial_seeds):
        channel = sample_generic(K, mode="oob", reciprocal=reciprocal,
                                 seed=tseed, scalar_kind="float")
        warm = None
        rows = []
        for gi, snr in enumerate(snr_grid_db):
            power = PowerConfig.from_snr_db(snr)
            _, rep = optimize_sum_rate(
                channel, power, restarts=restarts, iterations=iterations,
                seed=tseed + gi, charge_feedback=charge_feedback, warm_theta=warm,
            )
            warm = np.array(rep.extra["theta"])
            base = time_sharing_rate(channel, power, burst=ts_burst)
            ia[gi] += rep.sum_rate
            ts[gi] += base
            rows.append({"snr_db": snr, "ia": rep.sum_rate, "ts": base})
        if verbose:
            per_trial.append({"trial": t, "seed": tseed, "rows": rows})
    ia /= trials
    ts /= trials
    return CurveReport(
        K=K, mode=mode, trials=trials, seed=seed,
        snr_db=[float(x) for x in snr_grid_db],
        ia_sum_rate=[float(x) for x in ia],
        ts_sum_rate=[float(x) for x in ts],
        per_trial=per_trial,
    )


def curves_to_csv(report: CurveReport) -> str:
    lines = ["snr_db,ia_sum_rate,ts_sum_rate,trials"]
    for snr, a, b in zip(report.snr_db, report.ia_sum_rate, report.ts_sum_rate):
        lines.append(f"{snr!r},{a!r},{b!r},{report.trials}")
    return "\n".join(lines) + "\n"


def dof_slope(snr_db, rates, lo_db, hi_db) -> float:
    """High-SNR slope in bits per doubling of SNR between two grid points."""
    import math

    lo = snr_db.index(lo_db)
    hi = snr_db.index(hi_db)
    dlog2 = (hi_db - lo_db) / 10.0 * math.log2(10.0)
    return (rates[hi] - rates[lo]) / dlog2
