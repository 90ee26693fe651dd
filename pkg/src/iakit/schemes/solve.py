"""Constructive solvers: the rank-1 closed form and the linear families.

The linear solvers share one recipe: build the polynomial system, substitute
any pinned coding variables so the equalities become homogeneous linear forms,
take an exact nullspace, then draw random rational points of that nullspace
until one misses every inequality's zero set.  The bad set is a finite union
of proper subspaces, so rejection is a measure-zero event; a bounded retry
cap turns the theoretical impossibility into a loud error.
"""

from __future__ import annotations

import random

from .. import linalg
from ..algebra.poly import linear_rows, poly_eval
from ..algebra.scalars import QI, GaussianRational, mpq
from ..channels import IB, OOB, ChannelInstance
from .build import (
    INBAND,
    THREE_PHASE,
    AlignmentSystem,
    SchemeError,
    SchemeSpec,
    build_alignment_system,
    effective_matrix,
    scheme_for,
)
from .verify import (
    AlignmentSolution,
    combining_matrices,
    interference_ratios,
    verify_alignment,
)

SAMPLER_CAP = 64
MIMO_ANTENNA_CAP = 3


class NonGenericInstanceError(SchemeError):
    """The channel fell on a measure-zero rank degeneracy."""


class DegenerateChannelError(SchemeError):
    """The rank-1 construction's scalar invariant hit its excluded value."""


class UnsupportedSchemeError(SchemeError):
    pass


class UnsupportedScaleError(SchemeError):
    pass


class SamplerExhaustedError(SchemeError):
    """No inequality-respecting nullspace point found within the retry cap."""


def _rand_scalar(rng: random.Random) -> GaussianRational:
    def part():
        num = rng.randint(-12, 12)
        return mpq(num if num else 1, rng.randint(1, 4))

    return GaussianRational(part(), part())


def assemble_point(system: AlignmentSystem, pinned, free_idx, vec):
    field = system.ctx.field
    point = [field.zero] * system.ctx.nvars
    for i, v in pinned.items():
        point[i] = v
    for i, v in zip(free_idx, vec):
        point[i] = v
    return point


def sample_nullspace_point(system: AlignmentSystem, solver, pinned, free_idx, rng,
                           cap=SAMPLER_CAP, accept=None):
    """Solution-space point passing every inequality, or raise after ``cap`` tries.

    ``accept`` overrides the default check (used when inequalities are
    cheaper to evaluate numerically than symbolically).
    """
    field = system.ctx.field
    if accept is None:
        accept = lambda point: all(
            not field.is_zero(poly_eval(g, point)) for g in system.inequalities)
    for _ in range(cap):
        vec = solver.sample(lambda: _rand_scalar(rng))
        point = assemble_point(system, pinned, free_idx, vec)
        if accept(point):
            return point
    raise SamplerExhaustedError(
        f"no inequality-respecting point in {cap} draws (nullspace dim {solver.nullity})"
    )


def assignment_to_coding(system: AlignmentSystem, point) -> dict:
    """Pack a full variable assignment into block-diagonal coding matrices."""
    scheme = system.scheme
    K, M, n = scheme.K, scheme.M, scheme.K * scheme.M
    zero = system.ctx.field.zero
    coding = {}
    for name in scheme.coding_names:
        mat = [[zero] * n for _ in range(n)]
        it = iter(system.var_groups[name])
        for node in range(K):
            for r in range(M):
                for c in range(M):
                    mat[node * M + r][node * M + c] = point[next(it)]
        coding[name] = mat
    return coding


def _equality_matrix(system: AlignmentSystem, pinned: dict):
    free_idx = [i for i in range(system.ctx.nvars) if i not in pinned]
    rows, consts = linear_rows(system.equalities, free_idx, pinned)
    field = system.ctx.field
    if any(not field.is_zero(c) for c in consts):
        raise SchemeError("alignment equalities are not homogeneous")
    return rows, free_idx


def solve_rank1_closed_form(diagonal, u, v):
    """Closed-form neutralizing coding matrices for H = D + u v^T, G = H^T.

    Returns the solution together with the channel scalar alpha; the effective
    matrix is exactly (1 - alpha) D, so alpha = 1 is the excluded degeneracy.
    """
    from ..channels import Rank1PlusDiagonalFamily, StructuredFamilyError, build_structured

    family = Rank1PlusDiagonalFamily(diagonal=list(diagonal), u=list(u), v=list(v))
    channel = build_structured(family)  # validates the Theorem hypotheses
    K = len(diagonal)
    one = GaussianRational(1)
    s = GaussianRational(0)
    for i in range(K):
        s = s + v[i] * u[i] / diagonal[i]
    alpha = GaussianRational(3) + GaussianRational(3) * s + s * s
    if alpha == one:
        raise DegenerateChannelError("alpha = 1: the rank-1 construction degenerates")
    zero = GaussianRational(0)
    d1 = [v[i] / (diagonal[i] * u[i]) for i in range(K)]
    d3 = [u[i] / (diagonal[i] * v[i]) for i in range(K)]
    d2 = [-alpha for _ in range(K)]

    def as_diag(vals):
        return [[vals[i] if i == j else zero for j in range(K)] for i in range(K)]

    scheme = scheme_for(THREE_PHASE, K)
    solution = AlignmentSolution(
        scheme=scheme,
        scalar="exact",
        coding={"D1": as_diag(d1), "D2": as_diag(d2), "D3": as_diag(d3)},
        extra={"alpha": alpha, "family": "rank1-plus-diagonal"},
    )
    verify_alignment(channel, scheme, solution)
    return channel, solution


def solve_3user_linear(channel: ChannelInstance, pin_index: int = 0, seed: int = 0,
                       expect_dims: bool = True) -> AlignmentSolution:
    """Three-user out-of-band alignment via a pinned reverse matrix.

    Pinning D1 to a single unit entry leaves three homogeneous linear
    equations in the six (D2, D3) unknowns.  Generic channels give a solution
    space of dimension 3 whose three inequality-violating subspaces each have
    dimension 2, so a random point works almost surely.
    """
    if channel.K != 3 or channel.mode != OOB or channel.M != 1:
        raise UnsupportedSchemeError("the pinned linear construction is for K=3 out-of-band")
    scheme = scheme_for(THREE_PHASE, 3)
    system = build_alignment_system(channel, scheme)
    field = system.ctx.field
    pinned = {}
    for pos, var in enumerate(system.var_groups["D1"]):
        pinned[var] = field.one if pos == pin_index else field.zero
    rows, free_idx = _equality_matrix(system, pinned)
    solver = linalg.HomogeneousSolver(field, rows, len(free_idx))
    if solver.rank != 3:
        raise NonGenericInstanceError(f"equality rank {solver.rank} != 3")
    subspace_dims = []
    for g in system.inequalities:
        grow, gconst = linear_rows([g], free_idx, pinned)
        if not field.is_zero(gconst[0]):
            raise SchemeError("inequality not homogeneous")
        rk_aug = linalg.rank(field, rows + grow)
        if rk_aug != 4:
            raise NonGenericInstanceError(f"augmented rank {rk_aug} != 4")
        subspace_dims.append(6 - rk_aug)
    rng = random.Random(seed)
    point = sample_nullspace_point(system, solver, pinned, free_idx, rng)
    solution = AlignmentSolution(
        scheme=scheme,
        scalar="exact",
        coding=assignment_to_coding(system, point),
        extra={"nullspace_dim": solver.nullity, "subspace_dims": subspace_dims,
               "pin_index": pin_index},
    )
    verify_alignment(channel, scheme, solution)
    return solution


def inband_equality_matrix(channel: ChannelInstance, mimo_dets: bool = True):
    """The homogeneous linear alignment system of the in-band two-phase scheme."""
    scheme = scheme_for(INBAND, channel.K, channel.M)
    system = build_alignment_system(channel, scheme, mimo_dets=mimo_dets)
    rows, free_idx = _equality_matrix(system, {})
    return system, rows, free_idx


def compose_on_subspace(poly, basis, pinned, free_idx):
    """Restrict a polynomial to a parameterized subspace, symbolically.

    Substitutes x_i = pinned[i] for pinned variables and x_i = sum_k c_k
    basis[k][col(i)] otherwise, returning a polynomial in fresh coordinates
    c_1..c_d.  The restriction is identically zero iff the returned
    polynomial is zero, which decides solvability of linear systems exactly.
    """
    from ..algebra.poly import PolyContext

    field = poly.ctx.field
    d = len(basis)
    sub_ctx = PolyContext(tuple(f"c{k + 1}" for k in range(d)), field, poly.ctx.order)
    col = {v: k for k, v in enumerate(free_idx)}
    forms = {}
    for i in range(poly.ctx.nvars):
        if i in pinned:
            forms[i] = sub_ctx.const(pinned[i])
        else:
            c = col[i]
            terms = {}
            for k in range(d):
                coeff = basis[k][c]
                if not field.is_zero(coeff):
                    mono = tuple(1 if t == k else 0 for t in range(d))
                    terms[mono] = coeff
            forms[i] = sub_ctx.poly(terms)
    acc = sub_ctx.zero()
    for mono, coeff in poly.terms.items():
        term = sub_ctx.const(coeff)
        for i, e in enumerate(mono):
            for _ in range(e):
                term = term * forms[i]
        acc = acc + term
    return acc


def forced_zero_inequalities(system: AlignmentSystem, basis, pinned, free_idx):
    """Indices of inequalities that vanish identically on the solution subspace."""
    out = []
    for k, g in enumerate(system.inequalities):
        if compose_on_subspace(g, basis, pinned, free_idx).is_zero():
            out.append(k)
    return out


def alignment_nullspace_dimension(channel: ChannelInstance) -> int:
    """Diagnostic: solution-space dimension of the in-band linear system.

    Note the dimension is at least 1 for every K: scaling the passthrough
    matrix reproduces B proportional to H, which aligns everything and
    preserves nothing.  Use :func:`inband_linear_diagnosis` to learn whether
    anything beyond that ray exists.
    """
    system, rows, _ = inband_equality_matrix(channel)
    return system.ctx.nvars - linalg.rank(system.ctx.field, rows)


def inband_linear_diagnosis(channel: ChannelInstance):
    """(nullspace dimension, solvable) for the in-band linear system.

    ``solvable`` is decided exactly: the system has an inequality-respecting
    solution iff no inequality vanishes identically on the nullspace.
    """
    system, rows, free_idx = inband_equality_matrix(channel)
    field = system.ctx.field
    basis = linalg.HomogeneousSolver(field, rows, len(free_idx)).basis()
    if not basis:
        return 0, False
    forced = forced_zero_inequalities(system, basis, {}, free_idx)
    return len(basis), not forced


def solve_inband_linear(channel: ChannelInstance, seed: int = 0) -> AlignmentSolution:
    """Two-phase in-band alignment for K = 3 or 4 (single antenna)."""
    if channel.mode != IB or channel.M != 1:
        raise UnsupportedSchemeError("in-band single-antenna channels only")
    if channel.K not in (3, 4):
        dim = alignment_nullspace_dimension(channel)
        raise UnsupportedSchemeError(
            f"K={channel.K}: the in-band linear system has nullspace dimension {dim}; "
            "the dimension argument only applies for K in {3, 4}"
        )
    system, rows, free_idx = inband_equality_matrix(channel)
    field = system.ctx.field
    K = channel.K
    solver = linalg.HomogeneousSolver(field, rows, len(free_idx))
    if solver.rank != K * (K - 2):
        raise NonGenericInstanceError(f"equality rank {solver.rank} != {K * (K - 2)}")
    rng = random.Random(seed)
    point = sample_nullspace_point(system, solver, {}, free_idx, rng)
    solution = AlignmentSolution(
        scheme=system.scheme,
        scalar="exact",
        coding=assignment_to_coding(system, point),
        extra={"nullspace_dim": solver.nullity},
    )
    verify_alignment(channel, system.scheme, solution)
    return solution


def solve_mimo(channel: ChannelInstance, seed: int = 0,
               antenna_cap: int = MIMO_ANTENNA_CAP) -> AlignmentSolution:
    """Four-user in-band alignment with M antennas per node, M <= the desk cap.

    The alignment equations stay linear in the block-diagonal coding entries;
    the per-destination combining matrices must come out nonsingular, checked
    by exact determinant.
    """
    if channel.mode != IB or channel.K != 4:
        raise UnsupportedSchemeError("the block-diagonal construction is for K=4 in-band")
    M = channel.M
    if M > antenna_cap:
        raise UnsupportedScaleError(
            f"M={M} exceeds the desk-scale cap {antenna_cap} (larger M untested here)"
        )
    system, rows, free_idx = inband_equality_matrix(channel, mimo_dets=False)
    field = system.ctx.field
    n_eq = 4 * M * (3 * M - 1)
    solver = linalg.HomogeneousSolver(field, rows, len(free_idx))
    if solver.rank != n_eq:
        raise NonGenericInstanceError(f"equality rank {solver.rank} != {n_eq}")
    rng = random.Random(seed)

    def combining_nonsingular(point):
        coding = assignment_to_coding(system, point)
        B = effective_matrix(channel, system.scheme, coding)
        lams = interference_ratios(channel, system.scheme, B)
        mats = combining_matrices(channel, system.scheme, B, lams)
        return all(bool(linalg.det(field, m)) for m in mats)

    point = sample_nullspace_point(system, solver, {}, free_idx, rng,
                                   accept=combining_nonsingular)
    solution = AlignmentSolution(
        scheme=system.scheme,
        scalar="exact",
        coding=assignment_to_coding(system, point),
        extra={"nullspace_dim": solver.nullity},
    )
    verify_alignment(channel, system.scheme, solution)
    return solution
