"""Command line front end; a thin client over the service layer.

Each subcommand builds the same request model the HTTP endpoints accept and
runs it in-process by default, so reports are byte-identical between the
two surfaces; --server posts the request to a running service instead.
Exit codes: 0 certified / all checks pass, 1 refuted / check failure,
2 usage or configuration error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from .errors import ConfigError, PorolabError
from .service import (
    CheckRequest,
    FamiliesRequest,
    NPorousRequest,
    UpperRequest,
    WitnessRequest,
    error_exit_code,
    execute_check,
    execute_families,
    execute_nporous,
    execute_upper,
    execute_witness,
    render_report,
)

_EXECUTORS = {
    "check": (CheckRequest, execute_check),
    "nporous": (NPorousRequest, execute_nporous),
    "upper": (UpperRequest, execute_upper),
    "witness": (WitnessRequest, execute_witness),
    "families": (FamiliesRequest, execute_families),
}


def _family_value(raw: str):
    """A --family value is a preset name or an inline JSON object."""
    if raw.lstrip().startswith("{"):
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed family JSON: {exc}") from None
    return raw


def _int_list(raw: str) -> list[int]:
    raw = raw.strip()
    if not raw:
        return []
    try:
        return [int(part) for part in raw.split(",")]
    except ValueError:
        raise ConfigError(f"expected a comma-separated list of integers, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="porolab",
        description="Bounded porosity verification over the binary sequence space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
        p.add_argument("--pretty", action="store_true", help="indent the JSON report")
        p.add_argument("--server", help="POST the request to a running service at this URL")
        p.add_argument("--seed", type=int, default=None, help="echoed into the report config")

    check = sub.add_parser("check", help="bounded porosity scan of a family")
    check.add_argument("--family", required=True, help="preset name or inline JSON")
    check.add_argument("--M", type=int, default=0, help="strict length threshold (default 0)")
    check.add_argument("--K", type=int, required=True, help="hole budget in extra bits")
    check.add_argument("--D", type=int, required=True, help="verification depth")
    check.add_argument("--jobs", type=int, default=1, help="worker threads for the scan")
    check.add_argument("--budget", type=int, default=None, help="word budget override")
    common(check)

    nporous = sub.add_parser("nporous", help="exact-suffix-length porosity scan")
    nporous.add_argument("--family", required=True)
    nporous.add_argument("--n", type=int, required=True, help="exact suffix length")
    nporous.add_argument("--D", type=int, required=True)
    nporous.add_argument("--jobs", type=int, default=1)
    nporous.add_argument("--budget", type=int, default=None)
    common(nporous)

    upper = sub.add_parser("upper", help="hole depths along a point's prefixes")
    upper.add_argument("--family", required=True)
    upper.add_argument("--K", type=int, required=True)
    upper.add_argument("--D", type=int, required=True)
    upper.add_argument("--x", default=None, help="base point bits (default: all zeros)")
    common(upper)

    witness = sub.add_parser("witness", help="run a staged escape construction")
    witness.add_argument("--theorem", required=True, choices=["sp", "summable", "tryba"])
    witness.add_argument("--stages", type=int, default=6)
    witness.add_argument("--N", type=int, default=None, help="suffix budget (sp only)")
    witness.add_argument("--weights", default="harmonic", help="weight preset (summable only)")
    common(witness)

    families = sub.add_parser("families", help="statistics on an explicit finite set")
    families.add_argument("--elements", required=True, help="comma-separated naturals")
    families.add_argument("--horizon", type=int, default=None)
    families.add_argument("--windows", default="", help="window parameters, comma-separated")
    families.add_argument("--ap-lengths", default="3,4,5", dest="ap_lengths")
    families.add_argument("--p", type=int, default=None, help="gap bound for the block search")
    families.add_argument("--L", type=int, default=None, help="block length for the block search")
    families.add_argument("--weights", default=None)
    common(families)

    return parser


def _request_from_args(args: argparse.Namespace):
    if args.command == "check":
        return CheckRequest(
            family=_family_value(args.family),
            M=args.M,
            K=args.K,
            D=args.D,
            jobs=args.jobs,
            budget=args.budget,
            seed=args.seed,
        )
    if args.command == "nporous":
        return NPorousRequest(
            family=_family_value(args.family),
            n=args.n,
            D=args.D,
            jobs=args.jobs,
            budget=args.budget,
            seed=args.seed,
        )
    if args.command == "upper":
        return UpperRequest(
            family=_family_value(args.family), K=args.K, D=args.D, x=args.x, seed=args.seed
        )
    if args.command == "witness":
        return WitnessRequest(
            theorem=args.theorem,
            stages=args.stages,
            N=args.N,
            weights=args.weights,
            seed=args.seed,
        )
    if args.command == "families":
        return FamiliesRequest(
            elements=_int_list(args.elements),
            horizon=args.horizon,
            windows=_int_list(args.windows),
            ap_lengths=_int_list(args.ap_lengths),
            p=args.p,
            L=args.L,
            weights=args.weights,
            seed=args.seed,
        )
    raise ConfigError(f"unknown command {args.command!r}")


def _run_remote(server: str, command: str, request) -> tuple[str, int]:
    import httpx

    url = server.rstrip("/") + "/" + command
    try:
        response = httpx.post(url, json=request.model_dump(mode="json"), timeout=600.0)
    except httpx.HTTPError as exc:
        raise ConfigError(f"cannot reach {url}: {exc}") from None
    body = response.text
    try:
        code = int(json.loads(body).get("exit_code", 2))
    except (json.JSONDecodeError, TypeError, ValueError):
        code = 2
    return body, code


def _emit(body: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        request = _request_from_args(args)
    except ValidationError as exc:
        print(f"porolab: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"porolab: {exc}", file=sys.stderr)
        return 2
    try:
        if args.server:
            body, code = _run_remote(args.server, args.command, request)
            if args.pretty:
                body = render_report(json.loads(body), pretty=True)
        else:
            report = _EXECUTORS[args.command][1](request)
            body = render_report(report, pretty=args.pretty)
            code = int(report["exit_code"])
    except PorolabError as exc:
        print(f"porolab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return error_exit_code(exc)
    except ValueError as exc:
        print(f"porolab: {exc}", file=sys.stderr)
        return 2
    _emit(body, args.output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
