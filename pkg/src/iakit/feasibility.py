"""Feasibility verdicts for alignment systems and the genericity protocol.

An alignment system (equalities f_i, inequalities g_j) is solvable over the
algebraic closure iff the reduced system f_i = 0, t*prod(g_j) - 1 = 0 is,
and the latter is decided by whether a Groebner basis contains a nonzero
constant.  That full computation is the ground truth but is expensive in the
feasible direction, so per-trial deciding runs a cascade of sound shortcuts:

  1. all-linear systems are decided exactly by nullspace + restriction;
  2. an explicit witness is hunted by pinning the reverse coding matrices,
     which leaves the equalities linear and turns the hunt into a search for
     rank-deficient points of a small determinantal locus;
  3. each inequality is tested alone (a unit certifies infeasibility);
  4. what remains goes to the full product-form Groebner run.

Every exit is a certificate: "feasible" carries a point, "infeasible" a unit
ideal, and a budget stop is reported as budget-exhausted, never as a verdict.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import linalg
from .algebra.groebner import Budget, BudgetExhausted, buchberger, contains_unit
from .algebra.poly import linear_rows, poly_eval
from .algebra.scalars import GF, QI, random_prime, sqrt_minus_one
from .algebra.univariate import (
    gcd as upoly_gcd,
    _det_fp,
    _lagrange,
    roots as upoly_roots,
    sylvester_resultant_in_second,
)
from .channels import (
    AllOnesFamily,
    ChannelInstance,
    SymmetricZeroDiag4Family,
    sample_generic,
    sample_rank1_family,
    sample_sym4_family,
    build_structured,
)
from .schemes.build import (
    AlignmentSystem,
    alignment_system,
    neutralization_system,
    scheme_for,
)
from .schemes.solve import forced_zero_inequalities

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
EXHAUSTED = "budget-exhausted"
NO_CONSENSUS = "no-consensus"

WITNESS_TRIES = 64
WITNESS_PLANES = 12
PRODUCT_TERM_CAP = 200_000


class FeasibilityError(ValueError):
    pass


@dataclass
class FeasibilityVerdict:
    outcome: str
    backend: str
    prime: int | None = None
    method: str = "groebner"
    basis_size: int | None = None
    reductions: int = 0
    elapsed: float = 0.0
    witness: dict | None = None

    def to_json_dict(self):
        # elapsed wall time is intentionally omitted: reports must be
        # byte-reproducible for fixed seeds
        out = {
            "outcome": self.outcome,
            "backend": self.backend,
            "method": self.method,
            "reductions": self.reductions,
        }
        if self.prime is not None:
            out["prime"] = self.prime
        if self.basis_size is not None:
            out["basis_size"] = self.basis_size
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class GenericityReport:
    scheme: str
    constraint: str
    K: int
    M: int
    mode: str
    reciprocal: bool
    backend: str
    trials: int
    seed: int
    family: str | None
    verdicts: list = dc_field(default_factory=list)
    consensus: str = NO_CONSENSUS
    dissent: int = 0
    anomalies: list = dc_field(default_factory=list)

    def to_json_dict(self):
        return {
            "scheme": self.scheme,
            "constraint": self.constraint,
            "K": self.K,
            "M": self.M,
            "mode": self.mode,
            "reciprocal": self.reciprocal,
            "backend": self.backend,
            "family": self.family,
            "trials": self.trials,
            "seed": self.seed,
            "verdicts": [v.to_json_dict() for v in self.verdicts],
            "consensus": self.consensus,
            "dissent": self.dissent,
            "anomalies": self.anomalies,
        }


# -- the reduction of Lemma "equality+inequality <-> equality" ----------------


def rabinowitsch(system: AlignmentSystem) -> AlignmentSystem:
    """Fold all inequalities into one equation t*prod(g_j) - 1 = 0.

    The output has one extra variable and no inequalities; it is solvable iff
    the input is (t inverts the product exactly when every factor is nonzero).
    """
    if not system.inequalities:
        raise FeasibilityError("nothing to reduce: system has no inequalities")
    ctx2 = system.ctx.extend(("t",))
    t = ctx2.variable(ctx2.nvars - 1)
    prod = ctx2.const(ctx2.field.one)
    for g in system.inequalities:
        prod = prod * ctx2.lift(g)
    ghat = t * prod - ctx2.const(ctx2.field.one)
    return AlignmentSystem(
        ctx=ctx2,
        equalities=[ctx2.lift(e) for e in system.equalities] + [ghat],
        inequalities=[],
        constraint_kind=system.constraint_kind,
        scheme=system.scheme,
        var_groups=system.var_groups,
    )


def rabinowitsch_split(system: AlignmentSystem) -> AlignmentSystem:
    """Variant with one auxiliary variable per inequality (t_j g_j = 1).

    Equivalent solvability, many small generators instead of one huge one;
    preferred for Groebner runs on larger systems.
    """
    if not system.inequalities:
        raise FeasibilityError("nothing to reduce: system has no inequalities")
    m = len(system.inequalities)
    ctx2 = system.ctx.extend(tuple(f"t{j + 1}" for j in range(m)))
    eqs = [ctx2.lift(e) for e in system.equalities]
    one = ctx2.const(ctx2.field.one)
    for j, g in enumerate(system.inequalities):
        tj = ctx2.variable(system.ctx.nvars + j)
        eqs.append(tj * ctx2.lift(g) - one)
    return AlignmentSystem(
        ctx=ctx2, equalities=eqs, inequalities=[],
        constraint_kind=system.constraint_kind, scheme=system.scheme,
        var_groups=system.var_groups,
    )


def decide(system: AlignmentSystem, backend: str | None = None,
           budget: Budget | None = None) -> FeasibilityVerdict:
    """Groebner-basis verdict for an inequality-free system.

    Run :func:`rabinowitsch` first if the system still has inequalities.
    """
    if system.inequalities:
        raise FeasibilityError("decide requires an inequality-free system; run rabinowitsch first")
    field = system.ctx.field
    if backend is not None and backend != field.name:
        raise FeasibilityError(f"backend {backend!r} does not match system field {field.name!r}")
    prime = field.p if field.name == "fp" else None
    budget = budget or Budget()
    start = time.monotonic()
    try:
        basis = buchberger(system.equalities, order=system.ctx.order, budget=budget)
    except BudgetExhausted as stop:
        return FeasibilityVerdict(
            outcome=EXHAUSTED, backend=field.name, prime=prime, method="groebner",
            basis_size=len(stop.partial_basis), reductions=stop.stats.reductions,
            elapsed=time.monotonic() - start,
        )
    outcome = INFEASIBLE if contains_unit(basis) else FEASIBLE
    return FeasibilityVerdict(
        outcome=outcome, backend=field.name, prime=prime, method="groebner",
        basis_size=len(basis), reductions=basis.stats.reductions,
        elapsed=time.monotonic() - start,
    )


# -- witness hunting -----------------------------------------------------------


def _format_point(system: AlignmentSystem, point) -> dict:
    fmt = system.ctx.field.format
    return {name: fmt(v) for name, v in zip(system.ctx.variables, point)}


def _verify_point(system: AlignmentSystem, point) -> bool:
    field = system.ctx.field
    if any(not field.is_zero(poly_eval(e, point)) for e in system.equalities):
        return False
    return all(not field.is_zero(poly_eval(g, point)) for g in system.inequalities)


def _assemble_point(system, pinned, free_idx, vec):
    field = system.ctx.field
    point = [field.zero] * system.ctx.nvars
    for i, v in pinned.items():
        point[i] = v
    for i, v in zip(free_idx, vec):
        point[i] = v
    return point


def _sample_kernel_witness(system, pinned, free_idx, basis, rng, tries=WITNESS_TRIES):
    """Random kernel combinations until all inequalities are nonzero.

    Variables outside ``pinned`` and ``free_idx`` (the normalization column)
    stay zero, which is harmless: inequalities are invariant under shifts
    along the passthrough ray.
    """
    field = system.ctx.field
    if field.name == "fp":
        draw = lambda: rng.randrange(field.p)
    else:
        from .schemes.solve import _rand_scalar

        draw = lambda: _rand_scalar(rng)
    for _ in range(tries):
        vec = linalg.lin_combo(field, basis, [draw() for _ in basis])
        point = _assemble_point(system, pinned, free_idx, vec)
        if _verify_point(system, point):
            return point
    return None


def _pinned_rows(system, pins, pin_values, norm_col_var):
    """Equality coefficient rows at pinned reverse values, normalization column dropped."""
    pinned = dict(zip(pins, pin_values))
    free_idx = [i for i in range(system.ctx.nvars) if i not in pinned]
    rows, consts = linear_rows(system.equalities, free_idx, pinned)
    field = system.ctx.field
    if any(not field.is_zero(c) for c in consts):
        raise FeasibilityError("pinned alignment equalities are not homogeneous")
    if norm_col_var is None:
        return pinned, free_idx, rows, None
    drop = free_idx.index(norm_col_var)
    rows = [r[:drop] + r[drop + 1:] for r in rows]
    free2 = free_idx[:drop] + free_idx[drop + 1:]
    return pinned, free2, rows, drop


def witness_search(system: AlignmentSystem, rng, deadline: float) -> dict | list | None:
    """Hunt an explicit solution by pinning the reverse coding matrices.

    With the pins fixed the equalities are homogeneous linear forms in the
    remaining variables.  Alignment systems additionally quotient out the
    passthrough ray (D_pass = c*I reproduces B = c*H, aligning everything and
    preserving nothing), so a usable solution needs the normalized matrix to
    drop rank.  Depending on the shape this is free (underdetermined), a
    codimension-1 root hunt on a random line, or a codimension-2 hunt via
    the resultant of two minors on a random plane.  Returns a full variable
    assignment or None; never a wrong answer.
    """
    field = system.ctx.field
    pins = list(system.pin_indices)
    passthrough = system.passthrough_indices
    norm_var = passthrough[0] if passthrough else None
    n_eq = len(system.equalities)
    n_free = system.ctx.nvars - len(pins) - (1 if norm_var is not None else 0)

    def out_of_time():
        return time.monotonic() > deadline

    if field.name != "fp":
        if n_eq >= n_free:
            return None  # root hunting needs the finite-field machinery
        from .schemes.solve import _rand_scalar

        for _ in range(8):
            if out_of_time():
                return None
            pin_values = [_rand_scalar(rng) for _ in pins]
            pinned, free_idx, rows, drop = _pinned_rows(system, pins, pin_values, norm_var)
            basis = linalg.nullspace(field, rows)
            if not basis:
                continue
            point = _sample_kernel_witness(system, pinned, free_idx, basis, rng)
            if point is not None:
                return point
        return None

    p = field.p

    if n_eq < n_free:
        for _ in range(8):
            if out_of_time():
                return None
            pin_values = [rng.randrange(1, p) for _ in pins]
            pinned, free_idx, rows, drop = _pinned_rows(system, pins, pin_values, norm_var)
            basis = linalg.nullspace(field, rows)
            if not basis:
                continue
            point = _sample_kernel_witness(system, pinned, free_idx, basis, rng)
            if point is not None:
                return point
        return None

    if n_eq > n_free + 1 or not pins:
        return None  # rank deficiency is high-codimension; not worth hunting

    # degree of any maximal minor in the pin variables: one per coupled column
    # minor degree in the pins: at most one per column coupled to a pin
    coupled = set()
    for name in system.scheme.coding_names:
        if name not in system.scheme.reverse_names and name != system.scheme.passthrough_name:
            coupled.update(system.var_groups[name])
    if system.constraint_kind == "neutralization":
        coupled = set(system.var_groups.get("D3", ()))
    deg = max(1, len(coupled) if coupled else n_free)

    drops = (0,) if n_eq == n_free else (0, 1)

    def minors_at(pin_values):
        pinned, free_idx, rows, drop = _pinned_rows(system, pins, pin_values, norm_var)
        out = []
        for d in drops:
            sub = [rows[r] for r in range(n_eq) if r != d]
            out.append(_det_fp(sub, p))
        return out

    def try_point(pin_values):
        pinned, free_idx, rows, drop = _pinned_rows(system, pins, pin_values, norm_var)
        basis = linalg.nullspace(field, rows)
        if not basis:
            return None
        return _sample_kernel_witness(system, pinned, free_idx, basis, rng)

    npins = len(pins)
    xs = list(range(deg + 1))
    for _ in range(WITNESS_PLANES):
        if out_of_time():
            return None
        a = [rng.randrange(1, p) for _ in range(npins)]
        b = [rng.randrange(1, p) for _ in range(npins)]
        c = [rng.randrange(1, p) for _ in range(npins)]

        def on_plane(tv, sv):
            return [(a[l] + tv * b[l] + sv * c[l]) % p for l in range(npins)]

        def slice_minors(sv):
            vals = [minors_at(on_plane(tv, sv)) for tv in xs]
            polys = []
            for d in range(len(drops)):
                polys.append(_lagrange(xs, [v[d] for v in vals], p))
            return polys

        line = slice_minors(0)
        candidates = []
        if len(drops) == 1:
            for t_star in upoly_roots(line[0], p, rng):
                candidates.append((t_star, 0))
        else:
            g = upoly_gcd(line[0], line[1], p)
            for t_star in upoly_roots(g, p, rng):
                candidates.append((t_star, 0))
            if not candidates and line[0] and line[1]:
                res = sylvester_resultant_in_second(
                    lambda sv: tuple(slice_minors(sv)), deg, deg, 2 * deg * deg, p)
                if res:
                    for s_star in upoly_roots(res, p, rng)[:8]:
                        if out_of_time():
                            return None
                        f0, f1 = slice_minors(s_star)
                        for t_star in upoly_roots(upoly_gcd(f0, f1, p), p, rng):
                            candidates.append((t_star, s_star))
        for tv, sv in candidates:
            if out_of_time():
                return None
            point = try_point(on_plane(tv, sv))
            if point is not None:
                return point
    return None


# -- the per-trial cascade ------------------------------------------------------


def decide_constrained(system: AlignmentSystem, budget: Budget | None = None,
                       seed: int = 0) -> FeasibilityVerdict:
    """Verdict for a system with inequalities, via the shortcut cascade.

    Sound at every exit; completeness within the budget comes from the final
    product-form Groebner run.
    """
    budget = budget or Budget()
    rng = random.Random(seed)
    field = system.ctx.field
    prime = field.p if field.name == "fp" else None
    start = time.monotonic()

    def done(outcome, method, witness=None, basis_size=None, reductions=0):
        return FeasibilityVerdict(
            outcome=outcome, backend=field.name, prime=prime, method=method,
            basis_size=basis_size, reductions=reductions,
            elapsed=time.monotonic() - start, witness=witness,
        )

    if not system.inequalities:
        v = decide(system, budget=budget)
        v.elapsed = time.monotonic() - start
        return v

    # 1) all-linear systems: exact nullspace verdict
    if all(e.total_degree() <= 1 for e in system.equalities):
        free_idx = list(range(system.ctx.nvars))
        rows, consts = linear_rows(system.equalities, free_idx, {})
        if all(field.is_zero(cst) for cst in consts):
            if rows:
                basis = linalg.nullspace(field, rows)
            else:
                basis = linalg.identity(field, system.ctx.nvars)
            if not basis:
                return done(INFEASIBLE, "linear")
            forced = forced_zero_inequalities(system, basis, {}, free_idx)
            if forced:
                return done(INFEASIBLE, "linear")
            point = _sample_kernel_witness(system, {}, free_idx, basis, rng)
            witness = _format_point(system, point) if point is not None else None
            return done(FEASIBLE, "linear", witness=witness)

    # 2) witness hunt
    witness_deadline = start + min(0.25 * budget.max_seconds, 60.0)
    point = witness_search(system, rng, witness_deadline)
    if point is not None:
        return done(FEASIBLE, "witness", witness=_format_point(system, point))

    # 3) single-inequality probes
    n = len(system.inequalities)
    total_reductions = 0
    for g in system.inequalities:
        remaining = budget.max_seconds - (time.monotonic() - start)
        if remaining <= 1.0:
            break
        sub = AlignmentSystem(
            ctx=system.ctx, equalities=system.equalities, inequalities=[g],
            constraint_kind=system.constraint_kind, scheme=system.scheme,
            var_groups=system.var_groups,
        )
        probe_budget = Budget(
            max_reductions=max(1000, budget.max_reductions // (2 * n)),
            max_seconds=min(remaining * 0.8, max(20.0, 0.5 * budget.max_seconds / n)),
            max_basis=budget.max_basis,
        )
        v = decide(rabinowitsch(sub), budget=probe_budget)
        total_reductions += v.reductions
        if v.outcome == INFEASIBLE:
            return done(INFEASIBLE, "probe", basis_size=v.basis_size,
                        reductions=total_reductions)

    # 4) the full reduced run; switch to the split encoding when the single
    # product polynomial would be astronomically large to even write down
    remaining = budget.max_seconds - (time.monotonic() - start)
    if remaining <= 1.0:
        return done(EXHAUSTED, "exhausted", reductions=total_reductions)
    final_budget = Budget(max_reductions=budget.max_reductions,
                          max_seconds=remaining, max_basis=budget.max_basis)
    bound = 1
    for g in system.inequalities:
        bound *= max(1, len(g.terms))
    reduced = rabinowitsch(system) if bound <= PRODUCT_TERM_CAP else rabinowitsch_split(system)
    v = decide(reduced, budget=final_budget)
    v.method = "groebner" if v.outcome != EXHAUSTED else "exhausted"
    v.reductions += total_reductions
    v.elapsed = time.monotonic() - start
    return v


# -- channel sampling per backend ------------------------------------------------


def _fp_matrix(rng, n, p):
    return [[rng.randrange(1, p) for _ in range(n)] for _ in range(n)]


def _fp_transpose(m):
    return [list(col) for col in zip(*m)]


def sample_fp_mats(K, M, mode, reciprocal, family, rng, p) -> dict:
    """Channel matrices over F_p; entries uniform and nonzero (generic draw)."""
    n = K * M
    if family == "sym4":
        if K != 4 or M != 1 or mode != "oob":
            raise FeasibilityError("sym4 family is the 4-user single-antenna out-of-band case")
        h = [rng.randrange(1, p) for _ in range(6)]
        H = [
            [0, h[0], h[1], h[2]],
            [h[0], 0, h[3], h[4]],
            [h[1], h[3], 0, h[5]],
            [h[2], h[4], h[5], 0],
        ]
        return {"H": H, "G": _fp_transpose(H)}
    if family == "all-ones":
        H = [[0 if i == j else 1 for j in range(n)] for i in range(n)]
        return {"H": H, "G": _fp_transpose(H)}
    if family is not None:
        raise FeasibilityError(f"unknown family {family!r} for the fp backend")
    H = _fp_matrix(rng, n, p)
    if mode == "oob":
        G = _fp_transpose(H) if reciprocal else _fp_matrix(rng, n, p)
        return {"H": H, "G": G}
    return {"H": H, "U": _fp_matrix(rng, n, p), "W": _fp_matrix(rng, n, p)}


def reduce_exact_mats(channel: ChannelInstance, p: int) -> dict:
    """Image of an exact instance under Q(i) -> F_p (needs p = 1 mod 4)."""
    omega = sqrt_minus_one(p)

    def red(z):
        out = 0
        for part, mult in ((z.re, 1), (z.im, omega)):
            num = int(part.numerator) % p
            den = int(part.denominator) % p
            if den == 0:
                raise FeasibilityError("denominator divisible by the chosen prime; pick another")
            out = (out + mult * num * pow(den, p - 2, p)) % p
        return out

    mats = {"H": [[red(x) for x in row] for row in channel.H]}
    for name in ("G", "U", "W"):
        m = getattr(channel, name)
        if m is not None:
            mats[name] = [[red(x) for x in row] for row in m]
    return mats


def _qi_mats(K, M, mode, reciprocal, family, trial_seed) -> dict:
    if family == "sym4":
        ch = build_structured(sample_sym4_family(trial_seed))
    elif family == "all-ones":
        ch = build_structured(AllOnesFamily(K=K))
    elif family == "rank1":
        fam = sample_rank1_family(K, trial_seed)
        ch = build_structured(fam)
    elif family is None:
        ch = sample_generic(K, M=M, mode=mode, reciprocal=reciprocal,
                            seed=trial_seed, scalar_kind="exact")
    else:
        raise FeasibilityError(f"unknown family {family!r}")
    mats = {"H": ch.H}
    for name in ("G", "U", "W"):
        m = getattr(ch, name)
        if m is not None:
            mats[name] = m
    return mats


def build_trial_system(scheme_kind, K, M, mode, reciprocal, constraint, family,
                       backend, trial_seed) -> AlignmentSystem:
    rng = random.Random(trial_seed)
    scheme = scheme_for(scheme_kind, K, M)
    if backend == "fp":
        p = random_prime(rng)
        field = GF(p)
        mats = sample_fp_mats(K, M, mode, reciprocal, family, rng, p)
    elif backend == "qi":
        field = QI()
        mats = _qi_mats(K, M, mode, reciprocal, family, trial_seed)
    else:
        raise FeasibilityError(f"unknown backend {backend!r}")
    if constraint == "neutralization":
        return neutralization_system(field, scheme, mats)
    return alignment_system(field, scheme, mats)


def _run_trial(args):
    (scheme_kind, K, M, mode, reciprocal, constraint, family, backend,
     budget_tuple, trial_seed) = args
    system = build_trial_system(scheme_kind, K, M, mode, reciprocal, constraint,
                                family, backend, trial_seed)
    budget = Budget(*budget_tuple)
    return decide_constrained(system, budget=budget, seed=trial_seed)


def build_channel_system(channel: ChannelInstance, scheme_kind, constraint="alignment",
                         backend="qi", seed: int = 0) -> AlignmentSystem:
    """Polynomial system for an explicit exact instance, over the chosen backend."""
    if channel.scalar != "exact":
        raise FeasibilityError("feasibility decisions require an exact channel instance")
    scheme = scheme_for(scheme_kind, channel.K, channel.M)
    if backend == "fp":
        p = random_prime(random.Random(seed))
        field = GF(p)
        mats = reduce_exact_mats(channel, p)
    elif backend == "qi":
        field = QI()
        mats = {"H": channel.H}
        for name in ("G", "U", "W"):
            m = getattr(channel, name)
            if m is not None:
                mats[name] = m
    else:
        raise FeasibilityError(f"unknown backend {backend!r}")
    if constraint == "neutralization":
        return neutralization_system(field, scheme, mats)
    return alignment_system(field, scheme, mats)


def decide_channel(channel: ChannelInstance, scheme_kind, constraint="alignment",
                   backend="qi", budget: Budget | None = None,
                   seed: int = 0) -> GenericityReport:
    """Single-instance verdict for an explicit channel, wrapped as a report."""
    system = build_channel_system(channel, scheme_kind, constraint, backend, seed)
    verdict = decide_constrained(system, budget=budget, seed=seed)
    report = GenericityReport(
        scheme=scheme_kind, constraint=constraint, K=channel.K, M=channel.M,
        mode=channel.mode, reciprocal=channel.reciprocal, backend=backend,
        trials=1, seed=seed, family=None, verdicts=[verdict],
        consensus=verdict.outcome if verdict.outcome != EXHAUSTED else NO_CONSENSUS,
    )
    if verdict.outcome == EXHAUSTED:
        report.anomalies.append("the trial exhausted its budget")
    return report


def generic_feasibility(scheme_kind, K, M=1, mode="oob", reciprocal=True,
                        constraint="alignment", family=None, trials=5,
                        backend="fp", budget: Budget | None = None,
                        seed: int | None = None, jobs: int = 1) -> GenericityReport:
    """Sample channels, decide each instance, and report the consensus.

    Per the genericity theorem the verdict is a zero-one event over the
    channel draw, so completed trials must agree; any dissent among completed
    trials is flagged as an anomaly (a measure-zero draw or a bug).
    """
    if trials < 1:
        raise FeasibilityError("need at least one trial")
    if seed is None:
        raise FeasibilityError("a seed is required (verdicts must be reproducible)")
    budget = budget or Budget()
    master = random.Random(seed)
    trial_seeds = [master.randrange(2**63) for _ in range(trials)]
    args = [
        (scheme_kind, K, M, mode, reciprocal, constraint, family, backend,
         (budget.max_reductions, budget.max_seconds, budget.max_basis), ts)
        for ts in trial_seeds
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_run_trial, args))
    else:
        verdicts = [_run_trial(a) for a in args]

    report = GenericityReport(
        scheme=scheme_kind, constraint=constraint, K=K, M=M, mode=mode,
        reciprocal=reciprocal, backend=backend, trials=trials, seed=seed,
        family=family, verdicts=verdicts,
    )
    completed = [v.outcome for v in verdicts if v.outcome != EXHAUSTED]
    if not completed:
        report.consensus = NO_CONSENSUS
        report.anomalies.append("all trials exhausted their budget")
    elif all(o == completed[0] for o in completed):
        report.consensus = completed[0]
        if len(completed) < trials:
            report.anomalies.append(
                f"{trials - len(completed)} trial(s) exhausted their budget"
            )
    else:
        report.consensus = NO_CONSENSUS
        n_f = completed.count(FEASIBLE)
        n_i = completed.count(INFEASIBLE)
        report.dissent = min(n_f, n_i)
        report.anomalies.append(
            f"completed trials disagree (feasible={n_f}, infeasible={n_i}); "
            "per the genericity theorem this indicates a measure-zero draw or a bug"
        )
    return report
