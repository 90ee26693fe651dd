"""Finite-SNR machinery for the three-phase out-of-band scheme (float).

Signal model per user symbol block:

  phase 1:  y  = H x + n                     (sources at power P_sym)
  phase 2:  f  = G D1 y + n~                 (destinations echo y, scaled)
  phase 3:  y' = H (D2 x + D3 f) + n^
          = B x + H D3 G D1 n + H D3 n~ + n^ ,  B = H D2 + H D3 G D1 H

A destination with alignment ratio lambda_i = B_ij / H_ij (j interfering)
combines z_i = y'_i - lambda_i y_i, leaving the desired coefficient
B_ii - lambda_i H_ii and an exactly tracked noise variance: the phase-1
noise enters both observations and is kept correlated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..channels import OOB, ChannelInstance
from ..schemes.build import THREE_PHASE, scheme_for
from ..schemes.verify import AlignmentSolution

ALIGN_RTOL = 1e-9


class RateSimError(ValueError):
    pass


@dataclass
class PowerConfig:
    power: float
    noise_var: float

    def __post_init__(self):
        if self.power <= 0 or self.noise_var <= 0:
            raise RateSimError("power and noise variance must be positive")

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.power / self.noise_var)

    @classmethod
    def from_snr_db(cls, snr_db: float, noise_var: float = 1.0) -> "PowerConfig":
        return cls(power=noise_var * 10.0 ** (snr_db / 10.0), noise_var=noise_var)


@dataclass
class RateReport:
    snr_db: float
    per_user_sinr: list
    per_user_rate: list
    sum_rate: float
    ts_sum_rate: float
    phase_powers: dict
    forward_slots: int = 2
    charged_slots: int = 2
    extra: dict = field(default_factory=dict)


def channel_arrays(channel: ChannelInstance):
    if channel.mode != OOB or channel.M != 1:
        raise RateSimError("rate simulation covers single-antenna out-of-band channels")
    if channel.scalar == "float":
        H = np.asarray(channel.H, dtype=complex)
        G = np.asarray(channel.G, dtype=complex)
    else:
        H = np.asarray([[x.to_complex() for x in row] for row in channel.H])
        G = np.asarray([[x.to_complex() for x in row] for row in channel.G])
    return H, G


def effective_b(H, G, d1, d2, d3):
    return H * d2[None, :] + (H * d3[None, :]) @ (G * d1[None, :]) @ H


def alignment_residual(H, B):
    """Largest relative violation of the cross-multiplied ratio equalities."""
    K = H.shape[0]
    worst = 0.0
    for i in range(K):
        js = [j for j in range(K) if j != i]
        j0 = js[0]
        for j in js[1:]:
            lhs = B[i, j] * H[i, j0]
            rhs = B[i, j0] * H[i, j]
            scale = max(abs(lhs), abs(rhs), 1e-300)
            worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def combining_lambdas(H, B):
    K = H.shape[0]
    return np.array([B[i, (i + 1) % K] / H[i, (i + 1) % K] for i in range(K)])


def noise_variances(H, G, d1, d3, lam, sigma2):
    """Exact per-user noise variance of z = y' - lambda y.

    The phase-1 noise reaches z both through the echo path (H D3 G D1) and
    directly through -lambda y, so its diagonal contribution is
    |T_ii - lambda_i|^2 rather than a sum of separate powers.
    """
    K = H.shape[0]
    T = (H * d3[None, :]) @ (G * d1[None, :])
    HD3 = H * d3[None, :]
    out = np.empty(K)
    for i in range(K):
        row = T[i].copy()
        row[i] -= lam[i]
        out[i] = sigma2 * (np.sum(np.abs(row) ** 2) + np.sum(np.abs(HD3[i]) ** 2) + 1.0)
    return out


def effective_sinr(channel: ChannelInstance, solution: AlignmentSolution,
                   power: PowerConfig) -> np.ndarray:
    """Per-user SINR of a verified solution under the given power draw."""
    if solution.report is None or not solution.report.ok:
        raise RateSimError("effective_sinr requires a verified solution")
    H, G = channel_arrays(channel)
    d1, d2, d3 = solution_vectors(solution)
    d1, d2, d3, p_sym, _ = scale_to_power(H, G, d1, d2, d3, power)
    return sinr_vector(H, G, d1, d2, d3, p_sym, power.noise_var)


def sinr_vector(H, G, d1, d2, d3, p_sym, sigma2):
    B = effective_b(H, G, d1, d2, d3)
    lam = combining_lambdas(H, B)
    K = H.shape[0]
    sig = np.array([abs(B[i, i] - lam[i] * H[i, i]) ** 2 for i in range(K)]) * p_sym
    return sig / noise_variances(H, G, d1, d3, lam, sigma2)


def solution_vectors(solution: AlignmentSolution):
    def diag_of(name):
        mat = solution.coding[name]
        if solution.scalar == "exact":
            return np.array([mat[i][i].to_complex() for i in range(len(mat))])
        return np.array([complex(mat[i][i]) for i in range(len(mat))])

    return diag_of("D1"), diag_of("D2"), diag_of("D3")


def vectors_to_solution(K, d1, d2, d3) -> AlignmentSolution:
    def as_diag(v):
        return [[complex(v[i]) if i == j else 0j for j in range(K)] for i in range(K)]

    return AlignmentSolution(
        scheme=scheme_for(THREE_PHASE, K),
        scalar="float",
        coding={"D1": as_diag(d1), "D2": as_diag(d2), "D3": as_diag(d3)},
    )


def phase_powers(H, G, d1, d2, d3, p_sym, sigma2):
    """Exact per-node transmit powers of the three phases.

    Phase 3 keeps the x-f correlation: the echo f_j contains the node's own
    symbol through (G D1 H)_jj.
    """
    e_y = np.sum(np.abs(H) ** 2, axis=1) * p_sym + sigma2
    pow2 = np.abs(d1) ** 2 * e_y
    GD1H = (G * d1[None, :]) @ H
    GD1 = G * d1[None, :]
    e_f = (np.sum(np.abs(GD1H) ** 2, axis=1) * p_sym
           + sigma2 * (np.sum(np.abs(GD1) ** 2, axis=1) + 1.0))
    cross = 2.0 * np.real(d2 * np.conj(d3) * np.conj(np.diag(GD1H))) * p_sym
    pow3 = np.abs(d2) ** 2 * p_sym + np.abs(d3) ** 2 * e_f + cross
    pow1 = np.full(H.shape[0], p_sym)
    return pow1, pow2, pow3


def scale_to_power(H, G, d1, d2, d3, power: PowerConfig):
    """Scale the coding vectors so every node meets the per-slot cap tightly.

    Three exactly solvable knobs: the symbol power (set to the cap), a scale
    on D1 compensated inside D3 (so B and the alignment are untouched), and a
    joint scale on (D2, D3).  Joint scaling maps B to c B, preserving
    verification.
    """
    p, sigma2 = power.power, power.noise_var
    p_sym = p
    e_y = np.sum(np.abs(H) ** 2, axis=1) * p_sym + sigma2
    pow2_unit = np.abs(d1) ** 2 * e_y
    top = float(np.max(pow2_unit))
    s1 = math.sqrt(p / top) if top > 0 else 1.0
    d1s = d1 * s1
    d3s = d3 / s1
    _, _, pow3_unit = phase_powers(H, G, d1s, d2, d3s, p_sym, sigma2)
    top3 = float(np.max(pow3_unit))
    c = math.sqrt(p / top3) if top3 > 0 else 1.0
    d2f, d3f = d2 * c, d3s * c
    powers = phase_powers(H, G, d1s, d2f, d3f, p_sym, sigma2)
    return d1s, d2f, d3f, p_sym, powers


def apply_power_constraints(channel: ChannelInstance, solution: AlignmentSolution,
                            power: PowerConfig):
    """Spec surface over :func:`scale_to_power`: returns (scaled solution, P_sym)."""
    if solution.report is None or not solution.report.ok:
        raise RateSimError("apply_power_constraints requires a verified solution")
    H, G = channel_arrays(channel)
    d1, d2, d3 = solution_vectors(solution)
    d1, d2, d3, p_sym, powers = scale_to_power(H, G, d1, d2, d3, power)
    scaled = vectors_to_solution(H.shape[0], d1, d2, d3)
    scaled.extra["phase_powers"] = [list(map(float, pw)) for pw in powers]
    return scaled, p_sym


def mc_noise_variance(H, G, d1, d2, d3, sigma2, draws, seed):
    """Monte Carlo estimate of the combined noise variance per user.

    Draws the three phase noises independently and pushes them through the
    exact signal path; the analytic formula must match within sampling error.
    """
    rng = np.random.default_rng(seed)
    K = H.shape[0]
    B = effective_b(H, G, d1, d2, d3)
    lam = combining_lambdas(H, B)

    def cn(size):
        return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) * math.sqrt(sigma2 / 2.0)

    total = np.zeros(K)
    done = 0
    block = 20000
    while done < draws:
        m = min(block, draws - done)
        n = cn((m, K))
        nt = cn((m, K))
        nh = cn((m, K))
        f_noise = n @ (G * d1[None, :]).T + nt
        yp_noise = f_noise @ (H * d3[None, :]).T + nh
        z = yp_noise - lam[None, :] * n
        total += np.sum(np.abs(z) ** 2, axis=0)
        done += m
    return total / draws
