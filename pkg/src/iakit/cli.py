"""Command-line front end: a thin client of the iakit service.

By default requests are served in-process through an ASGI transport, so no
server needs to be running and results are byte-reproducible per seed; pass
--server to target a remote instance instead.  Machine-readable JSON/CSV
goes to stdout, diagnostics to stderr.

Exit codes for `feasibility`: 0 consensus feasible, 2 consensus infeasible,
3 no consensus or budget exhaustion, 1 usage or transport error.
"""

from __future__ import annotations

import argparse
import json
import sys

import httpx


class _InProcessTransport(httpx.BaseTransport):
    """Serve requests straight from the ASGI app, one event loop per call."""

    def __init__(self, app):
        self._asgi = httpx.ASGITransport(app=app)

    def handle_request(self, request):
        import asyncio

        content = request.read()

        async def go():
            req = httpx.Request(request.method, request.url,
                                headers=request.headers, content=content)
            resp = await self._asgi.handle_async_request(req)
            body = await resp.aread()
            return httpx.Response(resp.status_code, headers=resp.headers, content=body)

        return asyncio.run(go())


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    from .service.app import app

    return httpx.Client(transport=_InProcessTransport(app),
                        base_url="http://iakit.local", timeout=None)


def _post(args, path, payload):
    with _client(args.server) as client:
        resp = client.post(path, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except Exception:
            detail = resp.text
        print(f"error: {detail}", file=sys.stderr)
        raise SystemExit(1)
    return resp.json()


def _emit(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_channel(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        print(f"error: cannot read channel file: {err}", file=sys.stderr)
        raise SystemExit(1)


def cmd_feasibility(args) -> int:
    payload = {
        "scheme": args.scheme,
        "constraint": "neutralization" if args.neutralization else "alignment",
        "K": args.K,
        "M": args.M,
        "mode": args.mode,
        "reciprocal": args.reciprocal,
        "family": args.family,
        "trials": args.trials,
        "backend": args.backend,
        "seed": args.seed,
        "budget_reductions": args.budget_reductions,
        "budget_seconds": args.budget_seconds,
        "jobs": args.jobs,
        "dump_system": args.dump_system is not None,
    }
    if args.channel:
        payload["channel"] = _load_channel(args.channel)
    data = _post(args, "/v1/feasibility", payload)
    system_text = data.pop("system_text", None)
    if args.dump_system and system_text:
        with open(args.dump_system, "w") as fh:
            fh.write(system_text)
    _emit(args, json.dumps(data, indent=1) + "\n")
    consensus = data["consensus"]
    if consensus == "feasible":
        return 0
    if consensus == "infeasible":
        return 2
    return 3


def cmd_construct(args) -> int:
    if args.family:
        target = "family"
    elif args.inband:
        target = "inband"
    elif args.sample or args.channel:
        target = "sample"
    else:
        print("error: choose --family, --sample/--channel, or --inband", file=sys.stderr)
        return 1
    payload = {
        "target": target,
        "family": args.family,
        "K": args.K,
        "M": args.M,
        "seed": args.seed,
        "reciprocal": args.reciprocal,
        "pin_index": args.pin_index,
    }
    if args.channel:
        payload["channel"] = _load_channel(args.channel)
    data = _post(args, "/v1/construct", payload)
    _emit(args, json.dumps(data, indent=1) + "\n")
    return 0 if data["verified"] else 2


def cmd_simulate(args) -> int:
    payload = {
        "K": args.K,
        "mode": args.mode,
        "snr": args.snr,
        "trials": args.trials,
        "seed": args.seed,
        "restarts": args.restarts,
        "iterations": args.iterations,
        "reciprocal": args.reciprocal,
        "charge_feedback": args.charge_feedback,
        "ts_burst": args.ts_burst,
        "verbose": args.verbose,
    }
    data = _post(args, "/v1/simulate", payload)
    if args.verbose:
        _emit(args, json.dumps(data, indent=1) + "\n")
        return 0
    lines = ["snr_db,ia_sum_rate,ts_sum_rate,trials"]
    for snr, a, b in zip(data["snr_db"], data["ia_sum_rate"], data["ts_sum_rate"]):
        lines.append(f"{snr!r},{a!r},{b!r},{data['trials']}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_plan(args) -> int:
    if ":" in args.k:
        lo, hi = (int(x) for x in args.k.split(":"))
    else:
        lo = hi = int(args.k)
    data = _post(args, "/v1/plan", {"k_min": lo, "k_max": hi})
    header = f"{'K':>3} {'N':>3} {'N_v':>6} {'N_e':>6} {'DoF':>7}  note"
    lines = [header]
    for row in data["rows"]:
        note = "conjectured" if row["conjectured"] else ""
        lines.append(f"{row['K']:>3} {row['phases']:>3} {row['n_vars']:>6} "
                     f"{row['n_eq']:>6} {row['dof_if_solvable']:>7.3f}  {note}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iakit",
        description="Interactive interference alignment toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--server", help="remote service URL (default: in-process)")
        p.add_argument("--out", help="write the report to a file instead of stdout")

    p = sub.add_parser("feasibility", help="decide alignment feasibility via the exact engine")
    common(p)
    p.add_argument("--scheme", default="three-phase",
                   choices=["three-phase", "two-reverse", "inband"])
    p.add_argument("--neutralization", action="store_true",
                   help="decide interference neutralization instead of alignment")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--mode", default="oob", choices=["oob", "ib"])
    recip = p.add_mutually_exclusive_group()
    recip.add_argument("--reciprocal", dest="reciprocal", action="store_true", default=True)
    recip.add_argument("--independent-g", dest="reciprocal", action="store_false")
    p.add_argument("--family", choices=["sym4", "all-ones"])
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--backend", default="fp", choices=["fp", "qi"])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget-reductions", type=int, default=1_000_000)
    p.add_argument("--budget-seconds", type=float, default=600.0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--channel", help="decide this channel JSON file instead of sampling")
    p.add_argument("--dump-system", metavar="PATH",
                   help="write the polynomial system in text form")
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("construct", help="build and verify an alignment solution")
    common(p)
    p.add_argument("--family", choices=["all-ones", "rank1"],
                   help="closed-form structured family")
    p.add_argument("--sample", action="store_true",
                   help="sample a generic out-of-band 3-user channel")
    p.add_argument("--inband", action="store_true",
                   help="solve the in-band two-phase scheme (K=3,4; MIMO for M>1)")
    p.add_argument("--channel", help="solve for this channel JSON file")
    p.add_argument("--K", type=int, default=3)
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--seed", type=int)
    recip = p.add_mutually_exclusive_group()
    recip.add_argument("--reciprocal", dest="reciprocal", action="store_true", default=True)
    recip.add_argument("--independent-g", dest="reciprocal", action="store_false")
    p.add_argument("--pin-index", type=int, default=0)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("simulate", help="finite-SNR sum-rate curves vs time sharing")
    common(p)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--mode", default="oob", choices=["oob"])
    p.add_argument("--snr", default="0:5:40", help="grid start:step:stop in dB")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--restarts", type=int)
    p.add_argument("--iterations", type=int)
    recip = p.add_mutually_exclusive_group()
    recip.add_argument("--reciprocal", dest="reciprocal", action="store_true", default=True)
    recip.add_argument("--independent-g", dest="reciprocal", action="store_false")
    p.add_argument("--charge-feedback", action="store_true",
                   help="charge reverse slots in the rate divisor")
    p.add_argument("--ts-burst", action="store_true",
                   help="let the time-sharing baseline burst K-fold power")
    p.add_argument("--verbose", action="store_true", help="JSON per-trial detail")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plan", help="multi-phase variable/equation counting")
    common(p)
    p.add_argument("--k", required=True, help="single K or range lo:hi")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8008)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as stop:
        return int(stop.code or 0)


if __name__ == "__main__":
    sys.exit(main())
