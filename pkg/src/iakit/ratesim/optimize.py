"""Sum-rate maximization over the alignment-solution manifold.

The alignment equalities with pinned/normalized passthrough leave a linear
system M(d1) v = 0 in the remaining coding entries.  For K=3 the kernel is
two-dimensional for every d1, so the manifold is parameterized directly by
(d1, kernel coordinates).  For K=4 the normalized system is 8x7 and only
drops rank on a codimension-2 locus of d1 space; candidates are projected
onto that locus by alternating a kernel step (smallest singular vector) with
a least-squares update of d1, which is linear in d1 for fixed v.

The search itself is derivative-free adaptive random perturbation with
multiple restarts: the objective (rate after exact power scaling) is cheap
but nonsmooth at the power-cap boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..channels import ChannelInstance
from ..schemes.verify import verify_alignment
from .threephase import (
    PowerConfig,
    RateReport,
    RateSimError,
    alignment_residual,
    channel_arrays,
    effective_b,
    scale_to_power,
    sinr_vector,
    vectors_to_solution,
)

ALIGN_GATE = 1e-9
PROJECT_TOL = 1e-12


def norm_rows_float(H, G, d1):
    """Alignment rows, linear in (d2, d3), with the first d2 column dropped.

    Dropping one passthrough coordinate quotients out the universal solution
    family d2 = c*ones, d3 = 0 (B = c H), which aligns everything and decodes
    nothing.
    """
    K = H.shape[0]
    T = (G * d1[None, :]) @ H  # (G D1 H)_{kj}
    rows = []
    for i in range(K):
        js = [j for j in range(K) if j != i]
        j0 = js[0]
        for j in js[1:]:
            row = np.zeros(2 * K, dtype=complex)
            row[j] += H[i, j] * H[i, j0]
            row[j0] -= H[i, j0] * H[i, j]
            row[K:] = H[i, :] * (T[:, j] * H[i, j0] - T[:, j0] * H[i, j])
            rows.append(row)
    M = np.array(rows)
    return np.delete(M, 0, axis=1)


def embed_kernel(v, K):
    """Kernel coordinates back to full (d2, d3) with the dropped entry zero."""
    d2 = np.concatenate(([0j], v[: K - 1]))
    return d2, v[K - 1 :]


def _as_complex(theta):
    n = theta.size // 2
    return theta[:n] + 1j * theta[n:]


def _as_real(z):
    return np.concatenate((z.real, z.imag))


def minor_pair(H, G, d1):
    """Two maximal minors of the normalized K=4 system, plus the matrix.

    Both vanish exactly on the rank-drop locus where nontrivial solutions
    live (the locus is codimension 2 in d1 space).
    """
    M = norm_rows_float(H, G, d1)
    m0 = np.linalg.det(np.delete(M, 0, axis=0))
    m1 = np.linalg.det(np.delete(M, 1, axis=0))
    return np.array([m0, m1]), M


def newton_to_locus(H, G, base, u, w, iters=14, tol=1e-11):
    """Newton-correct d1 = base + t u + s w onto the rank-drop locus (K=4).

    Roots of the two minors exist on every affine 2-plane over the complex
    numbers, so this is a plain 2-variable Newton iteration with a finite
    difference Jacobian.  Returns (d1, kernel vector, relative rank gap) or
    None when the iteration wanders.
    """
    h = 1e-7
    t = s = 0.0 + 0.0j
    for _ in range(iters):
        d1 = base + t * u + s * w
        F, M = minor_pair(H, G, d1)
        sv = np.linalg.svd(M, compute_uv=False)
        if sv[-1] / max(sv[0], 1e-300) < tol:
            _, _, vh = np.linalg.svd(M)
            return d1, vh[-1].conj(), sv[-1] / sv[0]
        Ft, _ = minor_pair(H, G, base + (t + h) * u + s * w)
        Fs, _ = minor_pair(H, G, base + t * u + (s + h) * w)
        J = np.column_stack([(Ft - F) / h, (Fs - F) / h])
        try:
            delta = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(delta)):
            return None
        nd = float(np.abs(delta).max())
        if nd > 3.0:
            delta *= 3.0 / nd
        t += delta[0]
        s += delta[1]
    return None


@dataclass
class _Candidate:
    rate: float
    theta: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    sinr: np.ndarray
    p_sym: float
    powers: tuple


def _make_evaluator(H, G, K, power: PowerConfig, charged_slots: int):
    sigma2 = power.noise_var

    def finish(theta, d1, d2, d3):
        if not (np.all(np.isfinite(d1)) and np.all(np.isfinite(d2)) and np.all(np.isfinite(d3))):
            return None
        if np.linalg.norm(d2) + np.linalg.norm(d3) < 1e-12:
            return None
        B = effective_b(H, G, d1, d2, d3)
        if alignment_residual(H, B) > ALIGN_GATE:
            return None
        d1s, d2s, d3s, p_sym, powers = scale_to_power(H, G, d1, d2, d3, power)
        sinr = sinr_vector(H, G, d1s, d2s, d3s, p_sym, sigma2)
        if not np.all(np.isfinite(sinr)):
            return None
        rate = float(np.sum(np.log2(1.0 + sinr)) / charged_slots)
        return _Candidate(rate, theta, d1s, d2s, d3s, sinr, p_sym, powers)

    if K == 3:
        dim = 10  # d1 in C^3 plus two kernel coordinates

        def evaluate(theta, frame=None):
            d1 = _as_complex(theta[:6])
            if np.linalg.norm(d1) < 1e-9:
                return None
            M = norm_rows_float(H, G, d1)
            _, s, vh = np.linalg.svd(M)
            if s[0] < 1e-300:
                return None
            kernel = vh[3:].conj()  # dim 5 - rank 3 = 2 for generic d1
            if kernel.shape[0] < 2:
                return None
            c = _as_complex(theta[6:])
            v = c @ kernel
            d2, d3 = embed_kernel(v, 3)
            return finish(theta, d1, d2, d3)

        return dim, evaluate

    if K == 4:
        dim = 8  # d1 in C^4; the kernel direction is forced on the locus

        def evaluate(theta, frame):
            d1 = _as_complex(theta)
            if np.linalg.norm(d1) < 1e-9:
                return None
            hit = newton_to_locus(H, G, d1, frame[0], frame[1])
            if hit is None:
                return None
            d1p, v, _ = hit
            d2, d3 = embed_kernel(v, 4)
            # re-anchor the parameter at the corrected point
            return finish(_as_real(d1p), d1p, d2, d3)

        return dim, evaluate

    raise RateSimError(f"no solvable out-of-band scheme family wired up for K={K}")


def optimize_sum_rate(channel: ChannelInstance, power: PowerConfig,
                      restarts: int = 8, iterations: int = 400, seed: int = 0,
                      charge_feedback: bool = False, warm_theta=None, trace=None):
    """Derivative-free local search over alignment solutions.

    Deterministic per seed.  Returns (verified solution, RateReport); the
    best-so-far rate is nondecreasing within each restart by construction.
    """
    H, G = channel_arrays(channel)
    K = channel.K
    scheme_slots = 2 + (1 if charge_feedback else 0)
    dim, evaluate = _make_evaluator(H, G, K, power, scheme_slots)
    rng = np.random.default_rng(seed)
    frame = None
    if K == 4:
        frame = (rng.standard_normal(4) + 1j * rng.standard_normal(4),
                 rng.standard_normal(4) + 1j * rng.standard_normal(4))
    best = None
    for r in range(restarts):
        if r == 0 and warm_theta is not None and warm_theta.size == dim:
            cur = evaluate(np.array(warm_theta, dtype=float), frame)
        else:
            cur = None
        tries = 0
        while cur is None and tries < 12:
            cur = evaluate(rng.standard_normal(dim), frame)
            tries += 1
        if cur is None:
            continue
        step = 0.5
        for _ in range(iterations):
            cand = evaluate(cur.theta + step * rng.standard_normal(dim), frame)
            if cand is not None and cand.rate > cur.rate:
                cur = cand
                step = min(step * 1.15, 2.0)
            else:
                step = max(step * 0.96, 1e-3)
        if best is None or cur.rate > best.rate:
            best = cur
    if best is None:
        raise RateSimError("optimizer found no aligned candidate (degenerate channel?)")
    solution = vectors_to_solution(K, best.d1, best.d2, best.d3)
    report_v = verify_alignment(channel, solution.scheme, solution)
    if not report_v.ok:
        raise RateSimError("optimizer endpoint failed verification")
    per_rate = [float(x) for x in np.log2(1.0 + best.sinr) / scheme_slots]
    rate_report = RateReport(
        snr_db=power.snr_db,
        per_user_sinr=[float(x) for x in best.sinr],
        per_user_rate=per_rate,
        sum_rate=best.rate,
        ts_sum_rate=time_sharing_rate(channel, power),
        phase_powers={f"phase{k + 1}": [float(x) for x in pw]
                      for k, pw in enumerate(best.powers)},
        forward_slots=2,
        charged_slots=scheme_slots,
        extra={"theta": [float(x) for x in best.theta], "p_sym": best.p_sym},
    )
    return solution, rate_report


def time_sharing_rate(channel: ChannelInstance, power: PowerConfig,
                      burst: bool = False) -> float:
    """Baseline: each user alone in a 1/K slot share at the per-slot cap.

    ``burst`` lets the active user spend K times the per-slot power, the
    alternative convention; the default is the conservative per-slot cap.
    """
    H, _ = channel_arrays(channel)
    K = H.shape[0]
    p_eff = power.power * (K if burst else 1)
    snr = np.abs(np.diag(H)) ** 2 * p_eff / power.noise_var
    return float(np.sum(np.log2(1.0 + snr)) / K)
