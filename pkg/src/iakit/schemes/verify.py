"""Alignment solutions and their verification.

A solution's coding matrices determine the effective matrix B; verification
recomputes B from scratch and checks every cross-multiplied ratio equality
plus the strict inequalities that keep the desired signals alive.  Exact
solutions are checked with exact equality, float solutions with a relative
1e-9 tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..channels import ChannelInstance
from .build import SchemeSpec, effective_matrix

FLOAT_REL_TOL = 1e-9


@dataclass
class ConstraintCheck:
    name: str
    kind: str  # "equality" | "inequality"
    ok: bool


@dataclass
class VerificationReport:
    ok: bool
    checks: list
    lambdas: list
    desired_coefficients: list

    def failures(self):
        return [c for c in self.checks if not c.ok]


@dataclass
class AlignmentSolution:
    scheme: SchemeSpec
    scalar: str  # "exact" | "float"
    coding: dict  # name -> square matrix (block-diagonal)
    effective: list | None = None
    lambdas: list = field(default_factory=list)
    combining: list | None = None  # per-destination M x M matrices (multi-antenna)
    report: VerificationReport | None = None
    extra: dict = field(default_factory=dict)


def _exact_eq(a, b):
    return a == b


def _float_eq(a, b):
    scale = max(abs(a), abs(b))
    return abs(a - b) <= FLOAT_REL_TOL * scale


def _ops(scalar):
    if scalar == "exact":
        from ..algebra.scalars import GaussianRational

        zero = GaussianRational(0)
        return _exact_eq, (lambda a, b: a * b), (lambda a, b: a - b), (lambda a, b: a / b), zero
    return _float_eq, (lambda a, b: a * b), (lambda a, b: a - b), (lambda a, b: a / b), 0j


def interference_ratios(channel: ChannelInstance, scheme: SchemeSpec, B):
    """Per-receive-row combining scalar, from the pivot interfering column."""
    K, M, n = scheme.K, scheme.M, scheme.K * scheme.M
    _, _, _, div, zero = _ops(channel.scalar)
    H = channel.H
    lambdas = []
    for m in range(n):
        i = m // M
        if M == 1:
            j = (i + 1) % K
        else:
            j = [c for c in range(n) if c // M != i][0]
        lambdas.append(div(B[m][j], H[m][j]))
    return lambdas


def combining_matrices(channel: ChannelInstance, scheme: SchemeSpec, B, lambdas):
    """Per-destination desired-signal matrices B - lambda*H restricted to the block."""
    K, M = scheme.K, scheme.M
    _, mul, sub, _, _ = _ops(channel.scalar)
    H = channel.H
    out = []
    for i in range(K):
        block = range(i * M, (i + 1) * M)
        out.append([[sub(B[m][mc], mul(lambdas[m], H[m][mc])) for mc in block] for m in block])
    return out


def _combining_det(channel, mat):
    if channel.scalar == "exact":
        from ..algebra.scalars import QI
        from .. import linalg

        return linalg.det(QI(), mat)
    import numpy as np

    return complex(np.linalg.det(np.asarray(mat, dtype=complex)))


def verify_alignment(channel: ChannelInstance, scheme: SchemeSpec,
                     solution: AlignmentSolution) -> VerificationReport:
    """Recompute B and check every alignment constraint of the scheme.

    Failures are report entries, never exceptions.
    """
    K, M, n = scheme.K, scheme.M, scheme.K * scheme.M
    eq, mul, sub, _, zero = _ops(channel.scalar)
    B = effective_matrix(channel, scheme, solution.coding)
    H = channel.H
    checks = []
    for i in range(K):
        interfering = [j for j in range(n) if j // M != i]
        j0 = interfering[0]
        for m in range(i * M, (i + 1) * M):
            for j in interfering[1:]:
                lhs = mul(B[m][j], H[m][j0])
                rhs = mul(B[m][j0], H[m][j])
                checks.append(ConstraintCheck(f"align[{m},{j}~{j0}]", "equality", eq(lhs, rhs)))
    lambdas = interference_ratios(channel, scheme, B)
    combining = combining_matrices(channel, scheme, B, lambdas)
    desired = []
    for i in range(K):
        if M == 1:
            jw = (i + 1) % K
            lhs = mul(B[i][i], H[i][jw])
            rhs = mul(B[i][jw], H[i][i])
            ok = not eq(lhs, rhs)
            desired.append(sub(B[i][i], mul(lambdas[i], H[i][i])))
        else:
            d = _combining_det(channel, combining[i])
            ok = not eq(d, zero)
            desired.append(d)
        checks.append(ConstraintCheck(f"desire[{i}]", "inequality", ok))
    report = VerificationReport(
        ok=all(c.ok for c in checks),
        checks=checks,
        lambdas=lambdas,
        desired_coefficients=desired,
    )
    solution.effective = B
    solution.lambdas = lambdas
    solution.combining = combining if M > 1 else None
    solution.report = report
    return report


def solution_to_json_dict(solution: AlignmentSolution) -> dict:
    """JSON form of a solution: coding matrices, lambdas, B, verification."""
    from ..channels import _scalar_to_json

    def enc(x):
        return _scalar_to_json(x, solution.scalar)

    def enc_mat(mat):
        return [[enc(x) for x in row] for row in mat]

    out = {
        "scheme": solution.scheme.kind,
        "K": solution.scheme.K,
        "M": solution.scheme.M,
        "scalar": solution.scalar,
        "coding": {name: enc_mat(mat) for name, mat in solution.coding.items()},
    }
    if solution.effective is not None:
        out["effective"] = enc_mat(solution.effective)
    if solution.lambdas:
        out["lambdas"] = [enc(x) for x in solution.lambdas]
    if solution.combining is not None:
        out["combining"] = [enc_mat(m) for m in solution.combining]
    if solution.report is not None:
        out["verification"] = {
            "ok": solution.report.ok,
            "checks": [{"name": c.name, "kind": c.kind, "ok": c.ok}
                       for c in solution.report.checks],
            "desired_coefficients": [enc(x) for x in solution.report.desired_coefficients],
        }
    extra = {}
    for key, val in solution.extra.items():
        if key == "alpha":
            extra[key] = enc(val)
        elif isinstance(val, (int, float, str, bool, list, dict)) or val is None:
            extra[key] = val
    if extra:
        out["extra"] = extra
    return out
