"""Transmission schemes: effective matrices and alignment/neutralization systems.

Each scheme fixes a catalog of diagonal (block-diagonal for multi-antenna)
coding matrices and an effective end-to-end matrix B:

  three-phase out-of-band           B = H D2 + H D3 G D1 H
  three-phase, two reverse slots    B = H D3 + H D4 G D1 H + H D5 G D2 H
  two-phase in-band                 B = H D1 + H D2 U + W D3 H

Alignment demands every interfering column of B be proportional to the same
column of H, row-block by row-block; neutralization demands the interference
vanish outright.  Ratio constraints are cross-multiplied into polynomials so
the systems live in a polynomial ring over the channel's coefficient field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..algebra.poly import GREVLEX, PolyContext, Polynomial
from ..channels import IB, OOB, ChannelInstance

THREE_PHASE = "three-phase-oob"
TWO_REVERSE = "three-phase-oob-two-reverse"
INBAND = "two-phase-inband"
INBAND_MIMO = "two-phase-inband-mimo"


class SchemeError(ValueError):
    pass


@dataclass(frozen=True)
class SchemeSpec:
    kind: str
    K: int
    M: int = 1

    @property
    def mode(self):
        return IB if self.kind in (INBAND, INBAND_MIMO) else OOB

    @property
    def coding_names(self):
        if self.kind == TWO_REVERSE:
            return ("D1", "D2", "D3", "D4", "D5")
        return ("D1", "D2", "D3")

    @property
    def reverse_names(self):
        """Coding matrices applied by nodes other than the phase-1 transmitter."""
        if self.kind == THREE_PHASE:
            return ("D1",)
        if self.kind == TWO_REVERSE:
            return ("D1", "D2")
        return ("D3",)  # in-band: the destinations' matrix

    @property
    def passthrough_name(self):
        """The coding matrix multiplying x directly in the final forward phase.

        Setting it proportional to the identity (others zero) reproduces B = cH,
        which satisfies every alignment equality and no inequality.
        """
        if self.kind == THREE_PHASE:
            return "D2"
        if self.kind == TWO_REVERSE:
            return "D3"
        return "D1"

    @property
    def forward_slots(self):
        return 2

    @property
    def reverse_slots(self):
        if self.kind == TWO_REVERSE:
            return 2
        if self.kind in (INBAND, INBAND_MIMO):
            return 0
        return 1


def scheme_for(kind: str, K: int, M: int = 1) -> SchemeSpec:
    if kind == INBAND_MIMO or (kind == INBAND and M > 1):
        return SchemeSpec(INBAND, K, M)
    if kind in (THREE_PHASE, TWO_REVERSE, INBAND):
        if M != 1 and kind != INBAND:
            raise SchemeError(f"{kind} is single-antenna only")
        return SchemeSpec(kind, K, M)
    raise SchemeError(f"unknown scheme kind {kind!r}")


@dataclass
class AlignmentSystem:
    ctx: PolyContext
    equalities: list
    inequalities: list
    constraint_kind: str  # "alignment" | "neutralization"
    scheme: SchemeSpec
    var_groups: dict  # coding-matrix name -> tuple of variable indices

    @property
    def n_vars(self):
        return self.ctx.nvars

    @property
    def n_eq(self):
        return len(self.equalities)

    @property
    def n_ineq(self):
        return len(self.inequalities)

    @property
    def pin_indices(self):
        """Variables that, once fixed, leave the equalities linear."""
        out = []
        for name in self.scheme.reverse_names:
            out.extend(self.var_groups[name])
        return tuple(out)

    @property
    def free_indices(self):
        pinned = set(self.pin_indices)
        return tuple(i for i in range(self.ctx.nvars) if i not in pinned)

    @property
    def passthrough_indices(self):
        if self.constraint_kind != "alignment":
            return ()
        return self.var_groups[self.scheme.passthrough_name]

    def to_text(self) -> str:
        lines = [f"# variables: {' '.join(self.ctx.variables)}"]
        lines.append(f"# field: {self.ctx.field.name}"
                     + (f" p={self.ctx.field.p}" if self.ctx.field.name == "fp" else ""))
        lines.append(f"# equalities: {self.n_eq}  inequalities: {self.n_ineq}")
        for e in self.equalities:
            lines.append(f"eq: {e}")
        for g in self.inequalities:
            lines.append(f"ineq: {g}")
        return "\n".join(lines) + "\n"


def _var_names(scheme: SchemeSpec):
    names, groups = [], {}
    K, M = scheme.K, scheme.M
    for g in scheme.coding_names:
        idxs = []
        for node in range(K):
            for r in range(M):
                for c in range(M):
                    idxs.append(len(names))
                    if M == 1:
                        names.append(f"{g.lower()}_{node + 1}")
                    else:
                        names.append(f"{g.lower()}_{node + 1}_{r + 1}{c + 1}")
        groups[g] = tuple(idxs)
    return tuple(names), groups


def _coding_poly(ctx, scheme, groups, name):
    """Block-diagonal matrix of variables for one coding matrix."""
    K, M = scheme.K, scheme.M
    n = K * M
    zero = ctx.zero()
    mat = [[zero] * n for _ in range(n)]
    it = iter(groups[name])
    for node in range(K):
        for r in range(M):
            for c in range(M):
                mat[node * M + r][node * M + c] = ctx.variable(next(it))
    return mat


def _const_poly(ctx, mat):
    n = len(mat)
    out = []
    for i in range(n):
        out.append([ctx.const(mat[i][j]) for j in range(n)])
    return out


def _pmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                x = a[i][t]
                y = b[t][j]
                if not x.terms or not y.terms:
                    continue
                prod = x * y
                acc = prod if acc is None else acc + prod
            row.append(acc if acc is not None else a[0][0].ctx.zero())
        out.append(row)
    return out


def _padd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def effective_matrix_poly(field, scheme: SchemeSpec, mats: dict, order=GREVLEX):
    """Symbolic effective matrix B and its polynomial context.

    ``mats`` supplies the channel matrices over ``field`` ('H' plus 'G' or
    'U'/'W' per mode).
    """
    names, groups = _var_names(scheme)
    ctx = PolyContext(names, field, order)
    H = _const_poly(ctx, mats["H"])
    D = {g: _coding_poly(ctx, scheme, groups, g) for g in scheme.coding_names}
    if scheme.kind == THREE_PHASE:
        G = _const_poly(ctx, mats["G"])
        B = _padd(_pmul(H, D["D2"]), _pmul(_pmul(H, D["D3"]), _pmul(G, _pmul(D["D1"], H))))
    elif scheme.kind == TWO_REVERSE:
        G = _const_poly(ctx, mats["G"])
        B = _pmul(H, D["D3"])
        B = _padd(B, _pmul(_pmul(H, D["D4"]), _pmul(G, _pmul(D["D1"], H))))
        B = _padd(B, _pmul(_pmul(H, D["D5"]), _pmul(G, _pmul(D["D2"], H))))
    elif scheme.kind == INBAND:
        U = _const_poly(ctx, mats["U"])
        W = _const_poly(ctx, mats["W"])
        B = _padd(_padd(_pmul(H, D["D1"]), _pmul(_pmul(H, D["D2"]), U)),
                  _pmul(W, _pmul(D["D3"], H)))
    else:
        raise SchemeError(f"unknown scheme kind {scheme.kind!r}")
    return ctx, groups, B


def _poly_det(mat):
    """Determinant of a small matrix of polynomials by cofactor expansion."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    acc = None
    for j in range(n):
        if not mat[0][j].terms:
            continue
        minor = [[mat[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = mat[0][j] * _poly_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else mat[0][0].ctx.zero()


def alignment_system(field, scheme: SchemeSpec, mats: dict, order=GREVLEX,
                     mimo_dets: bool = True) -> AlignmentSystem:
    """Cross-multiplied alignment equalities plus one witness inequality per user.

    For every receive row m in destination i's block, the ratio B[m][j]/H[m][j]
    must agree across all interfering columns j; the first interfering column
    is the pivot.  Single-antenna witness inequalities compare the direct ratio
    against column (i mod K)+1; multi-antenna destinations instead require a
    nonsingular combining matrix, encoded as a determinant inequality.  The
    symbolic determinants grow fast with the block size; solvers that check
    them numerically can pass ``mimo_dets=False`` to skip building them.
    """
    K, M = scheme.K, scheme.M
    n = K * M
    ctx, groups, B = effective_matrix_poly(field, scheme, mats, order)
    H = mats["H"]
    eqs = []
    for i in range(K):
        block = range(i * M, (i + 1) * M)
        interfering = [j for j in range(n) if j // M != i]
        j0 = interfering[0]
        for m in block:
            for j in interfering[1:]:
                eqs.append(B[m][j].scale(H[m][j0]) - B[m][j0].scale(H[m][j]))
    ineqs = []
    if M == 1:
        for i in range(K):
            jw = (i + 1) % K
            ineqs.append(B[i][i].scale(H[i][jw]) - B[i][jw].scale(H[i][i]))
    elif mimo_dets:
        for i in range(K):
            block = list(range(i * M, (i + 1) * M))
            j0 = [j for j in range(n) if j // M != i][0]
            comb = []
            for m in block:
                comb.append([
                    B[m][mc].scale(H[m][j0]) - B[m][j0].scale(H[m][mc])
                    for mc in block
                ])
            ineqs.append(_poly_det(comb))
    return AlignmentSystem(ctx=ctx, equalities=eqs, inequalities=ineqs,
                           constraint_kind="alignment", scheme=scheme, var_groups=groups)


def neutralization_system(field, scheme: SchemeSpec, mats: dict, order=GREVLEX) -> AlignmentSystem:
    """Off-diagonal entries of B forced to zero; diagonal entries nonzero."""
    if scheme.kind != THREE_PHASE or scheme.M != 1:
        raise SchemeError("neutralization is defined for the single-antenna three-phase scheme")
    K = scheme.K
    ctx, groups, B = effective_matrix_poly(field, scheme, mats, order)
    eqs = [B[i][j] for i in range(K) for j in range(K) if i != j]
    ineqs = [B[i][i] for i in range(K)]
    return AlignmentSystem(ctx=ctx, equalities=eqs, inequalities=ineqs,
                           constraint_kind="neutralization", scheme=scheme, var_groups=groups)


def _channel_mats(channel: ChannelInstance) -> dict:
    if channel.scalar != "exact":
        raise SchemeError("polynomial systems require an exact channel instance")
    mats = {"H": channel.H}
    if channel.mode == OOB:
        mats["G"] = channel.G
    else:
        mats["U"] = channel.U
        mats["W"] = channel.W
    return mats


def build_alignment_system(channel: ChannelInstance, scheme: SchemeSpec,
                           order=GREVLEX, mimo_dets: bool = True) -> AlignmentSystem:
    from ..algebra.scalars import QI

    if scheme.mode != channel.mode:
        raise SchemeError(f"scheme mode {scheme.mode!r} does not match channel mode {channel.mode!r}")
    if scheme.K != channel.K or scheme.M != channel.M:
        raise SchemeError("scheme K/M does not match the channel instance")
    return alignment_system(QI(), scheme, _channel_mats(channel), order, mimo_dets=mimo_dets)


def build_neutralization_system(channel: ChannelInstance, order=GREVLEX) -> AlignmentSystem:
    from ..algebra.scalars import QI

    if channel.mode != OOB:
        raise SchemeError("neutralization requires an out-of-band channel")
    scheme = scheme_for(THREE_PHASE, channel.K)
    return neutralization_system(QI(), scheme, _channel_mats(channel), order)


# -- numeric effective matrix -------------------------------------------------


def _check_block_diagonal(mat, K, M, is_zero):
    n = K * M
    for i in range(n):
        for j in range(n):
            if i // M != j // M and not is_zero(mat[i][j]):
                raise SchemeError("coding matrix has support outside its diagonal blocks")


def effective_matrix(channel: ChannelInstance, scheme: SchemeSpec, coding: dict):
    """Numeric effective matrix for concrete coding matrices (exact or float)."""
    K, M = scheme.K, scheme.M
    if channel.scalar == "exact":
        from ..algebra.scalars import QI
        from .. import linalg

        field = QI()
        for name in scheme.coding_names:
            _check_block_diagonal(coding[name], K, M, field.is_zero)
        mm = linalg.mat_mul
        add = linalg.mat_add

        def tri(a, b, c):
            return mm(field, mm(field, a, b), c)

        H = channel.H
        if scheme.kind == THREE_PHASE:
            G = channel.G
            return add(field, mm(field, H, coding["D2"]),
                       tri(mm(field, H, coding["D3"]), G, mm(field, coding["D1"], H)))
        if scheme.kind == TWO_REVERSE:
            G = channel.G
            acc = mm(field, H, coding["D3"])
            acc = add(field, acc, tri(mm(field, H, coding["D4"]), G, mm(field, coding["D1"], H)))
            acc = add(field, acc, tri(mm(field, H, coding["D5"]), G, mm(field, coding["D2"], H)))
            return acc
        U, W = channel.U, channel.W
        acc = mm(field, H, coding["D1"])
        acc = add(field, acc, mm(field, mm(field, H, coding["D2"]), U))
        acc = add(field, acc, mm(field, mm(field, W, coding["D3"]), H))
        return acc

    import numpy as np

    for name in scheme.coding_names:
        _check_block_diagonal(coding[name], K, M, lambda z: z == 0)
    H = np.asarray(channel.H, dtype=complex)
    D = {name: np.asarray(coding[name], dtype=complex) for name in scheme.coding_names}
    if scheme.kind == THREE_PHASE:
        G = np.asarray(channel.G, dtype=complex)
        return H @ D["D2"] + H @ D["D3"] @ G @ D["D1"] @ H
    if scheme.kind == TWO_REVERSE:
        G = np.asarray(channel.G, dtype=complex)
        return (H @ D["D3"] + H @ D["D4"] @ G @ D["D1"] @ H
                + H @ D["D5"] @ G @ D["D2"] @ H)
    U = np.asarray(channel.U, dtype=complex)
    W = np.asarray(channel.W, dtype=complex)
    return H @ D["D1"] + H @ D["D2"] @ U + W @ D["D3"] @ H


# -- multi-phase planning ------------------------------------------------------


@dataclass(frozen=True)
class MultiPhasePlan:
    K: int
    phases: int
    n_vars: int
    n_eq: int
    dof_if_solvable: float
    conjectured: bool


def multiphase_plan(K: int) -> MultiPhasePlan:
    """Smallest phase count giving at least as many variables as equations.

    The achievable degrees of freedom K/(2N) is a conjecture: solvability of
    the resulting polynomial system is not established for general K.
    """
    if K < 2:
        raise SchemeError("need K >= 2")
    n = math.isqrt(K - 1)
    if n * n < K - 1:
        n += 1
    n = max(n, 1)
    n_eq = K * (K - 2)
    return MultiPhasePlan(
        K=K,
        phases=n,
        n_vars=(n * n - 1) * K,
        n_eq=n_eq,
        dof_if_solvable=K / (2 * n),
        conjectured=n_eq > 0,
    )
