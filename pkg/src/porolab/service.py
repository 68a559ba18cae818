"""HTTP surface and shared run layer.

The pydantic request models double as the run configuration: the CLI builds
the same models and calls the same ``execute_*`` functions in-process, so a
local run and a service run produce byte-identical reports. Every report is
a single JSON document rendered with sorted keys and no volatile fields
(no timestamps, no floats), embedding the resolved family description and
parameters so it is self-describing and replayable.

Exit code conventions, embedded in each report: 0 certified / constructed
with all checks passing, 1 refuted / check failure (still a valid run),
2 usage or configuration error, 3 budget exceeded.
"""

from __future__ import annotations

import json
from typing import Any, Literal

from fastapi import FastAPI
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .bitseq import BitWord
from .budgets import DEFAULT_WORD_BUDGET, resolve_budget
from .errors import (
    AdversaryBudgetViolation,
    AdversaryLeftP,
    BudgetExceeded,
    ConfigError,
    DepthTooLarge,
    HoleNotFound,
    NoValidCutPoints,
    PorolabError,
)
from .families import (
    FiniteSet,
    contains_ap,
    max_gap,
    max_interval_len,
    partial_weight_sum,
    ps_block_witness,
    weight_preset,
    weight_preset_names,
    window_density,
)
from .oracles import (
    FamilySpec,
    Shifted,
    UnionSpec,
    ap_free_spec,
    build_oracle,
    family_preset_names,
    resolve_family_argument,
    run_free_spec,
    spec_to_json,
    support_preset_names,
    tryba_intervals_support,
)
from .porosity import (
    Outcome,
    PorosityParams,
    check_n_porosity,
    check_porosity,
    check_upper_porosity_at,
)
from .witness import (
    FirstSlotAdversary,
    HoleFinderAdversary,
    OnesFillingAdversary,
    build_sp_escape,
    build_summable_escape,
    build_tryba_escape,
)

SCHEMA_VERSION = "1"


def render_report(report: dict, pretty: bool = False) -> str:
    """Canonical single-document rendering, newline terminated."""
    if pretty:
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def error_exit_code(exc: Exception) -> int:
    if isinstance(exc, (DepthTooLarge, BudgetExceeded)):
        return 3
    return 2


class CheckRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: str | dict
    M: int = Field(0, ge=0)
    K: int = Field(..., ge=1)
    D: int = Field(..., ge=1)
    jobs: int = Field(1, ge=1)
    budget: int | None = Field(None, ge=1)
    seed: int | None = None


class NPorousRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: str | dict
    n: int = Field(..., ge=1)
    D: int = Field(..., ge=0)
    jobs: int = Field(1, ge=1)
    budget: int | None = Field(None, ge=1)
    seed: int | None = None


class UpperRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: str | dict
    K: int = Field(..., ge=1)
    D: int = Field(..., ge=0)
    x: str | None = None
    seed: int | None = None


class WitnessRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    theorem: Literal["sp", "summable", "tryba"]
    stages: int = Field(6, ge=1)
    N: int | None = Field(None, ge=1)
    weights: str = "harmonic"
    seed: int | None = None


class FamiliesRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    elements: list[int]
    horizon: int | None = Field(None, ge=0)
    windows: list[int] = []
    ap_lengths: list[int] = [3, 4, 5]
    p: int | None = Field(None, ge=0)
    L: int | None = Field(None, ge=1)
    weights: str | None = None
    seed: int | None = None


def _envelope(command: str, config: dict, result: dict, exit_code: int) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "result": result,
        "exit_code": exit_code,
    }


def execute_check(req: CheckRequest) -> dict:
    spec = resolve_family_argument(req.family)
    oracle = build_oracle(spec)
    try:
        params = PorosityParams(req.M, req.K, req.D)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    budget = resolve_budget(req.budget, DEFAULT_WORD_BUDGET)
    verdict = check_porosity(oracle, params, budget=budget, jobs=req.jobs)
    config = {
        "family": spec_to_json(spec),
        "M": req.M,
        "K": req.K,
        "D": req.D,
        "jobs": req.jobs,
        "budget": budget,
        "seed": req.seed,
    }
    code = 0 if verdict.outcome is Outcome.CERTIFIED else 1
    return _envelope("check", config, verdict.to_json(), code)


def execute_nporous(req: NPorousRequest) -> dict:
    spec = resolve_family_argument(req.family)
    oracle = build_oracle(spec)
    budget = resolve_budget(req.budget, DEFAULT_WORD_BUDGET)
    verdict = check_n_porosity(oracle, req.n, req.D, budget=budget, jobs=req.jobs)
    config = {
        "family": spec_to_json(spec),
        "n": req.n,
        "D": req.D,
        "jobs": req.jobs,
        "budget": budget,
        "seed": req.seed,
    }
    code = 0 if verdict.outcome is Outcome.CERTIFIED else 1
    return _envelope("nporous", config, verdict.to_json(), code)


def execute_upper(req: UpperRequest) -> dict:
    spec = resolve_family_argument(req.family)
    oracle = build_oracle(spec)
    if req.x is None:
        point = BitWord.zeros(req.D)
    else:
        try:
            point = BitWord.from_str(req.x)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    depths = check_upper_porosity_at(oracle, point, req.K, req.D)
    config = {
        "family": spec_to_json(spec),
        "K": req.K,
        "D": req.D,
        "x": str(point),
        "seed": req.seed,
    }
    result = {"hole_depths": depths, "depth_count": len(depths)}
    return _envelope("upper", config, result, 0 if depths else 1)


def default_sp_script(suffix_budget: int) -> tuple[FamilySpec, ...]:
    """Deterministic script of families each admitting exact-budget holes."""
    run_free = run_free_spec(suffix_budget)
    ap_free = ap_free_spec(suffix_budget)
    return (
        run_free,
        ap_free,
        Shifted(run_free, (0, 2)),
        UnionSpec((run_free, ap_free)),
    )


_CONSTRUCTION_ERRORS = (
    NoValidCutPoints,
    AdversaryBudgetViolation,
    AdversaryLeftP,
    HoleNotFound,
)


def execute_witness(req: WitnessRequest) -> dict:
    config: dict[str, Any] = {
        "theorem": req.theorem,
        "stages": req.stages,
        "seed": req.seed,
    }
    if req.theorem == "sp":
        if req.N is None:
            raise ConfigError("the sp construction needs --N, the per-stage suffix budget")
        script = default_sp_script(req.N)
        config["N"] = req.N
        config["script"] = [spec_to_json(s) for s in script]
        oracles = tuple(build_oracle(s) for s in script)

        def builder():
            return build_sp_escape(req.N, HoleFinderAdversary(oracles, req.N), req.stages)

    elif req.theorem == "summable":
        weights = weight_preset(req.weights)
        config["weights"] = weights.name

        def builder():
            return build_summable_escape(weights, OnesFillingAdversary(), req.stages)

    else:
        support = tryba_intervals_support()
        config["support"] = support.name

        def builder():
            return build_tryba_escape(support, FirstSlotAdversary(), req.stages)
    try:
        trace = builder()
    except _CONSTRUCTION_ERRORS as exc:
        result = {
            "constructed": False,
            "error": type(exc).__name__,
            "detail": str(exc),
        }
        return _envelope("witness", config, result, 1)
    result = {
        "constructed": True,
        "all_checks_pass": trace.all_checks_pass(),
        "trace": trace.to_json(),
    }
    return _envelope("witness", config, result, 0 if trace.all_checks_pass() else 1)


def execute_families(req: FamiliesRequest) -> dict:
    try:
        data = FiniteSet.of(req.elements, req.horizon)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if (req.p is None) != (req.L is None):
        raise ConfigError("block search needs both p and L")
    result: dict[str, Any] = {
        "elements": list(data.elements),
        "horizon": data.horizon,
        "max_interval_len": max_interval_len(data),
        "max_gap": max_gap(data),
        "progressions": {
            str(n): (lambda w: None if w is None else list(w))(contains_ap(data, n))
            for n in req.ap_lengths
        },
    }
    if req.windows:
        densities = {}
        for n in req.windows:
            stats = window_density(data, n)
            densities[str(n)] = {"max_count": stats.max_count, "ratio": str(stats.ratio)}
        result["window_density"] = densities
    if req.p is not None and req.L is not None:
        block = ps_block_witness(data, req.p, req.L)
        result["block_witness"] = {
            "p": req.p,
            "L": req.L,
            "span": None if block is None else list(block),
        }
    if req.weights is not None:
        result["weight_sum"] = str(partial_weight_sum(weight_preset(req.weights), data))
    config = {
        "elements": list(data.elements),
        "horizon": data.horizon,
        "windows": req.windows,
        "ap_lengths": req.ap_lengths,
        "p": req.p,
        "L": req.L,
        "weights": req.weights,
        "seed": req.seed,
    }
    return _envelope("families", config, result, 0)


app = FastAPI(
    title="porolab",
    version=__version__,
    description="Bounded porosity verification over the binary sequence space",
)


def _json_response(report: dict) -> Response:
    return Response(render_report(report), media_type="application/json")


@app.exception_handler(PorolabError)
async def _porolab_error(request, exc: PorolabError):
    return JSONResponse(
        status_code=400,
        content={
            "error": type(exc).__name__,
            "detail": str(exc),
            "exit_code": error_exit_code(exc),
        },
    )


@app.exception_handler(ValueError)
async def _value_error(request, exc: ValueError):
    return JSONResponse(
        status_code=400,
        content={"error": "ValueError", "detail": str(exc), "exit_code": 2},
    )


@app.post("/check")
def post_check(req: CheckRequest) -> Response:
    return _json_response(execute_check(req))


@app.post("/nporous")
def post_nporous(req: NPorousRequest) -> Response:
    return _json_response(execute_nporous(req))


@app.post("/upper")
def post_upper(req: UpperRequest) -> Response:
    return _json_response(execute_upper(req))


@app.post("/witness")
def post_witness(req: WitnessRequest) -> Response:
    return _json_response(execute_witness(req))


@app.post("/families")
def post_families(req: FamiliesRequest) -> Response:
    return _json_response(execute_families(req))


@app.get("/presets")
def get_presets() -> dict:
    return {
        "families": family_preset_names(),
        "weights": weight_preset_names(),
        "supports": support_preset_names(),
    }


@app.get("/healthz")
def get_healthz() -> dict:
    return {"status": "ok"}
