"""Command-line front end.

The CLI is a thin client: every subcommand builds the same pydantic request
model the HTTP service accepts and dispatches it either in-process (default)
or to a running service via --server.  Results are rendered as JSON (with
the config and version embedded) or CSV ('.' decimal, ',' separator, 17
significant digits so doubles round-trip losslessly).

Exit codes: 0 success, 2 validation/precondition error, 1 computational
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from . import __version__
from .errors import AccuracyError, DomainError, InternalError
from .service import handlers, schemas

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_VALIDATION = 2


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _parse_float_list(raw: str) -> list[float]:
    return [float(tok) for tok in raw.split(",") if tok.strip() != ""]


def _parse_coeff_list(raw: str) -> list:
    return [tok.strip() for tok in raw.split(",") if tok.strip() != ""]


def _parse_pattern(raw: str) -> list[str]:
    return [tok.strip() for tok in raw.split(",") if tok.strip() != ""]


def _load_coeffs_file(path: str) -> list:
    # load through the eigenfunction module so the basis field is honored
    from .eigen import load_coefficients

    return list(load_coefficients(path).coeffs)


# -- output rendering ---------------------------------------------------------


def _csv_lambda_table(result: dict) -> str:
    lines = ["d,lambda_d,bound_new,bound_bck,bound_upper,u_d"]
    for row in result["rows"]:
        lines.append(",".join([str(row["d"]), _fmt(row["lambda_d"]), _fmt(row["bound_new"]),
                               _fmt(row["bound_bck"]), _fmt(row["bound_upper"]),
                               _fmt(row["u_d"])]))
    return "\n".join(lines) + "\n"


def _csv_plot_data(result: dict) -> str:
    lines = ["x,value"]
    for x, v in zip(result["xs"], result["values"]):
        lines.append(f"{_fmt(x)},{_fmt(v)}")
    lines.append("# roots")
    for r in result["roots"]:
        lines.append(_fmt(r))
    return "\n".join(lines) + "\n"


def _csv_sign_search(result: dict) -> str:
    lines = ["n"]
    lines.extend(str(n) for n in result["matches"])
    lines.append("# predictor_matches")
    lines.extend(str(n) for n in result["predictor_matches"])
    lines.append("# uncertain")
    lines.extend(str(n) for n in result["uncertain"])
    return "\n".join(lines) + "\n"


def _csv_lower_bound(result: dict) -> str:
    if result.get("report") is not None:
        lines = ["A,h1,h2,sup_term,margin,status"]
        for row in result["report"]["margin_table"]:
            lines.append(",".join([_fmt(row["A"]), _fmt(row["h1"]), _fmt(row["h2"]),
                                   _fmt(row["sup_term"]), _fmt(row["margin"]),
                                   row["status"]]))
        return "\n".join(lines) + "\n"
    return _csv_flat(result["point"])


def _csv_flat(result: dict) -> str:
    lines = ["key,value"]
    for key, value in result.items():
        if isinstance(value, float):
            rendered = _fmt(value)
        elif isinstance(value, (str, int, bool)) or value is None:
            rendered = str(value)
        else:
            rendered = json.dumps(value)
        lines.append(f"{key},{rendered}")
    return "\n".join(lines) + "\n"


_CSV_RENDERERS = {
    "lambda-table": _csv_lambda_table,
    "plot-data": _csv_plot_data,
    "sign-search": _csv_sign_search,
    "lower-bound": _csv_lower_bound,
}


def _render(command: str, config: dict, result: dict, fmt: str) -> str:
    if fmt == "json":
        payload = {"version": __version__, "command": command,
                   "config": config, "result": result}
        return json.dumps(payload, indent=2) + "\n"
    renderer = _CSV_RENDERERS.get(command, _csv_flat)
    return renderer(result)


# -- dispatch -----------------------------------------------------------------


def _dispatch_local(command: str, request) -> dict:
    _, handler = handlers.HANDLERS[command]
    response = handler(request)
    return response.model_dump(mode="json", by_alias=True)


def _dispatch_remote(command: str, request, server: str) -> dict:
    import httpx

    url = server.rstrip("/") + f"/v1/{command}"
    reply = httpx.post(url, json=request.model_dump(mode="json", by_alias=True),
                       timeout=600.0)
    if reply.status_code == 422:
        raise DomainError(f"server rejected the request: {reply.text}")
    if reply.status_code != 200:
        raise InternalError(f"server error {reply.status_code}: {reply.text}")
    return reply.json()


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _run_command(command: str, request, args) -> int:
    if getattr(args, "server", None):
        result = _dispatch_remote(command, request, args.server)
    else:
        result = _dispatch_local(command, request)
    config = request.model_dump(mode="json", by_alias=True)
    _emit(_render(command, config, result, args.format), args.output)
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", default=None, help="write to a file instead of stdout")
    parser.add_argument("--server", default=None,
                        help="dispatch to a running service, e.g. http://localhost:8000")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frlab",
        description="Sign-uncertainty toolkit: Bessel-kernel dimension bounds, "
                    "eigenfunction root certificates, lower-bound verification, "
                    "sign-pattern searches.")
    parser.add_argument("--version", action="version", version=f"frlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda-table", help="per-dimension kernel bounds table")
    p.add_argument("--dmin", type=int, default=2)
    p.add_argument("--dmax", type=int, default=9)
    _add_common(p)

    p = sub.add_parser("candidate", help="root certificate for an eigenfunction")
    p.add_argument("--reference", "--paper", action="store_true", dest="reference",
                   help="use the built-in reference coefficients (default when no coeffs given)")
    p.add_argument("--coeffs", default=None,
                   help="comma-separated coefficients, floats or p/q "
                        "(use --coeffs=... when the first one is negative)")
    p.add_argument("--coeffs-file", default=None, help="coefficient JSON file")
    p.add_argument("--normalize", action="store_true", help="re-solve the top coefficient")
    p.add_argument("--grid-step", type=float, default=1e-3)
    p.add_argument("--report", action="store_true", help="include L1 norm and mean")
    _add_common(p)

    p = sub.add_parser("optimize", help="greedy coordinate descent on the largest root")
    p.add_argument("--coeffs", default=None)
    p.add_argument("--coeffs-file", default=None)
    p.add_argument("--max-basis-index", type=int, default=3)
    p.add_argument("--step-init", type=float, default=1e-2)
    p.add_argument("--step-shrink", type=float, default=0.5)
    p.add_argument("--step-min", type=float, default=1e-7)
    p.add_argument("--max-passes", type=int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--save-coeffs", default=None, help="write final coefficients (JSON)")
    p.add_argument("--log-file", default=None, help="write acceptance log (JSON lines)")
    _add_common(p)

    p = sub.add_parser("lower-bound", help="inequality margin at (A, tau) or full sweep")
    p.add_argument("--A", type=float, default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--report", action="store_true", help="grid sweep plus slope and kernel checks")
    p.add_argument("--a-min", type=float, default=0.26)
    p.add_argument("--a-max", type=float, default=0.4499)
    p.add_argument("--a-count", type=int, default=200)
    _add_common(p)

    p = sub.add_parser("sign-search", help="simultaneous sign-pattern search")
    p.add_argument("--family", choices=("hermite", "phi", "laguerre"), required=True)
    p.add_argument("--points", required=True, help="comma-separated evaluation points")
    p.add_argument("--pattern", default=None, help="comma-separated +/- pattern (hermite)")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--nu", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("ft-check", help="Fourier transform identity checks by quadrature")
    p.add_argument("--target", choices=("candidate", "psi", "laguerre"), default="candidate")
    p.add_argument("--coeffs", default=None)
    p.add_argument("--coeffs-file", default=None)
    p.add_argument("--ys", default=None, help="comma-separated sample points")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_common(p)

    p = sub.add_parser("plot-data", help="dense samples for external plotting")
    p.add_argument("--target", choices=("candidate", "upsilon", "psi"), default="candidate")
    p.add_argument("--coeffs", default=None)
    p.add_argument("--coeffs-file", default=None)
    p.add_argument("--A", type=float, default=None)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=2.5)
    p.add_argument("--step", type=float, default=0.005)
    _add_common(p)

    p = sub.add_parser("verify-all", help="run the acceptance suite")
    p.add_argument("--criteria", default=None, help="comma-separated subset of 1..9")
    _add_common(p)

    p = sub.add_parser("run", help="execute a reproducible run from a JSON config file")
    p.add_argument("--config", required=True, help="path to a run-config JSON file")
    p.add_argument("--server", default=None,
                   help="dispatch to a running service, e.g. http://localhost:8000")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _coeffs_from_args(args) -> list | None:
    if getattr(args, "coeffs_file", None):
        return _load_coeffs_file(args.coeffs_file)
    if getattr(args, "coeffs", None):
        return _parse_coeff_list(args.coeffs)
    return None


def _execute(args) -> int:
    command = args.command
    if command == "lambda-table":
        req = schemas.LambdaTableRequest(dmin=args.dmin, dmax=args.dmax)
        return _run_command(command, req, args)

    if command == "candidate":
        req = schemas.CandidateRequest(coeffs=_coeffs_from_args(args),
                                       normalize=args.normalize,
                                       grid_step=args.grid_step,
                                       report=args.report)
        return _run_command(command, req, args)

    if command == "optimize":
        req = schemas.OptimizeRequest(coeffs=_coeffs_from_args(args),
                                      max_basis_index=args.max_basis_index,
                                      step_init=args.step_init,
                                      step_shrink=args.step_shrink,
                                      step_min=args.step_min,
                                      max_passes=args.max_passes,
                                      seed=args.seed)
        if args.server:
            result = _dispatch_remote(command, req, args.server)
        else:
            result = _dispatch_local(command, req)
        if args.save_coeffs:
            Path(args.save_coeffs).write_text(json.dumps(
                {"coeffs": result["coeffs"], "basis": "unnormalized-H4n"}, indent=2) + "\n")
        if args.log_file:
            lines = [json.dumps(entry) for entry in result["log"]]
            Path(args.log_file).write_text("\n".join(lines) + ("\n" if lines else ""))
        _emit(_render(command, req.model_dump(mode="json", by_alias=True), result,
                      args.format), args.output)
        return EXIT_OK

    if command == "lower-bound":
        req = schemas.LowerBoundRequest(A=args.A, tau=args.tau, report=args.report,
                                        a_min=args.a_min, a_max=args.a_max,
                                        a_count=args.a_count)
        return _run_command(command, req, args)

    if command == "sign-search":
        req = schemas.SignSearchRequest(
            family=args.family,
            points=_parse_float_list(args.points),
            pattern=_parse_pattern(args.pattern) if args.pattern else None,
            nmax=args.nmax, nu=args.nu)
        return _run_command(command, req, args)

    if command == "ft-check":
        req = schemas.FtCheckRequest(target=args.target, coeffs=_coeffs_from_args(args),
                                     ys=_parse_float_list(args.ys) if args.ys else None,
                                     n=args.n, nu=args.nu, d=args.d, tol=args.tol)
        return _run_command(command, req, args)

    if command == "plot-data":
        req = schemas.PlotDataRequest(target=args.target, coeffs=_coeffs_from_args(args),
                                      A=args.A, n=args.n, lo=args.lo, hi=args.hi,
                                      step=args.step)
        return _run_command(command, req, args)

    if command == "verify-all":
        ids = [int(tok) for tok in args.criteria.split(",")] if args.criteria else None
        req = schemas.VerifyAllRequest(criteria=ids)
        if args.server:
            result = _dispatch_remote(command, req, args.server)
        else:
            result = _dispatch_local(command, req)
        for row in result["results"]:
            status = "PASS" if row["passed"] else "FAIL"
            print(f"[{status}] criterion {row['criterion']}: {row['name']} "
                  f"({row['seconds']:.1f}s) {row['detail']}")
        if args.output:
            _emit(_render(command, req.model_dump(mode="json"), result, "json"),
                  args.output)
        return EXIT_OK if result["all_passed"] else EXIT_COMPUTE

    if command == "run":
        cfg = schemas.RunConfig(**json.loads(Path(args.config).read_text()))
        request_model, _ = handlers.HANDLERS[cfg.subcommand]
        params = dict(cfg.parameters)
        if cfg.seed is not None and "seed" in request_model.model_fields:
            params.setdefault("seed", cfg.seed)
        req = request_model(**params)
        if args.server:
            result = _dispatch_remote(cfg.subcommand, req, args.server)
        else:
            result = _dispatch_local(cfg.subcommand, req)
        config = {"run_config": cfg.model_dump(mode="json"),
                  "resolved": req.model_dump(mode="json", by_alias=True)}
        _emit(_render(cfg.subcommand, config, result, cfg.format), cfg.output)
        if cfg.subcommand == "verify-all" and not result["all_passed"]:
            return EXIT_COMPUTE
        return EXIT_OK

    if command == "serve":
        import uvicorn

        from .service.app import app
        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    raise InternalError(f"unhandled command {command}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _execute(args)
    except (DomainError, ValidationError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (AccuracyError, InternalError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
