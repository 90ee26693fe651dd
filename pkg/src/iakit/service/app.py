"""FastAPI service wrapping the core package.

All computation is synchronous request/response: every operation is a pure
function of its (seeded) request, so the service is safe to scale across
workers and responses are byte-reproducible for identical requests.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import channels
from ..algebra.groebner import Budget
from ..channels import AllOnesFamily, ChannelError, build_structured, sample_generic
from ..feasibility import (
    FeasibilityError,
    build_channel_system,
    build_trial_system,
    decide_channel,
    generic_feasibility,
)
from ..ratesim import RateSimError, curves_to_csv, monte_carlo_curves
from ..schemes import (
    SchemeError,
    multiphase_plan,
    solve_3user_linear,
    solve_inband_linear,
    solve_mimo,
    solve_rank1_closed_form,
)
from ..schemes.verify import solution_to_json_dict
from .models import (
    SCHEME_ALIASES,
    ConstructRequest,
    ConstructResponse,
    FeasibilityRequest,
    FeasibilityResponse,
    PlanRequest,
    PlanResponse,
    PlanRow,
    SimulateRequest,
    SimulateResponse,
    VerdictModel,
)

app = FastAPI(title="iakit", version="0.1.0")

_DOMAIN_ERRORS = (ChannelError, FeasibilityError, SchemeError, RateSimError, ValueError)


@app.get("/healthz")
def healthz():
    return {"status": "ok"}


def _scheme_kind(name: str) -> str:
    try:
        return SCHEME_ALIASES[name]
    except KeyError:
        raise HTTPException(status_code=400, detail=f"unknown scheme {name!r}")


@app.post("/v1/feasibility", response_model=FeasibilityResponse)
def feasibility_endpoint(req: FeasibilityRequest) -> FeasibilityResponse:
    kind = _scheme_kind(req.scheme)
    budget = Budget(max_reductions=req.budget_reductions, max_seconds=req.budget_seconds)
    try:
        if req.channel is not None:
            ch = channels.from_json_dict(req.channel)
            report = decide_channel(ch, kind, constraint=req.constraint,
                                    backend=req.backend, budget=budget, seed=req.seed)
            system_text = (build_channel_system(ch, kind, req.constraint, req.backend,
                                                req.seed).to_text()
                           if req.dump_system else None)
        else:
            report = generic_feasibility(
                kind, req.K, M=req.M, mode=req.mode, reciprocal=req.reciprocal,
                constraint=req.constraint, family=req.family, trials=req.trials,
                backend=req.backend, budget=budget, seed=req.seed, jobs=req.jobs,
            )
            system_text = None
            if req.dump_system:
                master_seed = __import__("random").Random(req.seed).randrange(2**63)
                system_text = build_trial_system(
                    kind, req.K, req.M, req.mode, req.reciprocal, req.constraint,
                    req.family, req.backend, master_seed).to_text()
    except _DOMAIN_ERRORS as err:
        raise HTTPException(status_code=400, detail=str(err))
    data = report.to_json_dict()
    data["verdicts"] = [VerdictModel(**v) for v in data["verdicts"]]
    return FeasibilityResponse(**data, system_text=system_text)


@app.post("/v1/construct", response_model=ConstructResponse)
def construct_endpoint(req: ConstructRequest) -> ConstructResponse:
    try:
        if req.target == "family":
            if req.family == "all-ones":
                channel = build_structured(AllOnesFamily(K=req.K))
                fam = channels.Rank1PlusDiagonalFamily(
                    diagonal=[channels.GaussianRational(-1)] * req.K,
                    u=[channels.GaussianRational(1)] * req.K,
                    v=[channels.GaussianRational(1)] * req.K,
                )
            elif req.family == "rank1":
                if req.seed is None:
                    raise HTTPException(status_code=400, detail="rank1 family needs a seed")
                fam = channels.sample_rank1_family(req.K, req.seed)
                channel = build_structured(fam)
            else:
                raise HTTPException(status_code=400,
                                    detail="constructive families: all-ones, rank1")
            channel, solution = solve_rank1_closed_form(fam.diagonal, fam.u, fam.v)
        elif req.target == "sample":
            if req.channel is not None:
                channel = channels.from_json_dict(req.channel)
            else:
                if req.seed is None:
                    raise HTTPException(status_code=400, detail="sampled runs need a seed")
                channel = sample_generic(req.K, mode="oob", reciprocal=req.reciprocal,
                                         seed=req.seed)
            solution = solve_3user_linear(channel, pin_index=req.pin_index,
                                          seed=req.seed or 0)
        else:  # inband
            if req.channel is not None:
                channel = channels.from_json_dict(req.channel)
            else:
                if req.seed is None:
                    raise HTTPException(status_code=400, detail="sampled runs need a seed")
                channel = sample_generic(req.K, M=req.M, mode="ib", seed=req.seed)
            if channel.M > 1:
                solution = solve_mimo(channel, seed=req.seed or 0)
            else:
                solution = solve_inband_linear(channel, seed=req.seed or 0)
    except HTTPException:
        raise
    except _DOMAIN_ERRORS as err:
        raise HTTPException(status_code=400, detail=str(err))
    return ConstructResponse(
        solution=solution_to_json_dict(solution),
        channel=channels.to_json_dict(channel),
        verified=bool(solution.report and solution.report.ok),
    )


@app.post("/v1/simulate", response_model=SimulateResponse)
def simulate_endpoint(req: SimulateRequest) -> SimulateResponse:
    from ..ratesim.curves import CURVE_ITERATIONS, CURVE_RESTARTS, parse_snr_grid

    try:
        grid = parse_snr_grid(req.snr)
        report = monte_carlo_curves(
            req.K, mode=req.mode, snr_grid_db=grid, trials=req.trials, seed=req.seed,
            restarts=req.restarts or CURVE_RESTARTS,
            iterations=req.iterations if req.iterations is not None else CURVE_ITERATIONS,
            reciprocal=req.reciprocal, charge_feedback=req.charge_feedback,
            ts_burst=req.ts_burst, verbose=req.verbose,
        )
    except _DOMAIN_ERRORS as err:
        raise HTTPException(status_code=400, detail=str(err))
    return SimulateResponse(
        K=report.K, mode=report.mode, trials=report.trials, seed=report.seed,
        snr_db=report.snr_db, ia_sum_rate=report.ia_sum_rate,
        ts_sum_rate=report.ts_sum_rate, per_trial=report.per_trial,
    )


@app.post("/v1/plan", response_model=PlanResponse)
def plan_endpoint(req: PlanRequest) -> PlanResponse:
    if req.k_max < req.k_min:
        raise HTTPException(status_code=400, detail="k_max must be >= k_min")
    rows = []
    for k in range(req.k_min, req.k_max + 1):
        plan = multiphase_plan(k)
        rows.append(PlanRow(
            K=plan.K, phases=plan.phases, n_vars=plan.n_vars, n_eq=plan.n_eq,
            dof_if_solvable=plan.dof_if_solvable, conjectured=plan.conjectured,
        ))
    return PlanResponse(rows=rows)
