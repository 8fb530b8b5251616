"""FastAPI service exposing construction, verification and simulation.

Stateless JSON in, JSON out.  Designs travel in the same shape as the
design-file format; `/construct?format=file` and `/simulate?format=csv`
return the canonical file bytes / CSV table directly so clients can write
them to disk verbatim.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import PlainTextResponse, Response

from . import __version__
from .algebra import GroupSpec, verify_group_structure
from .designio import DesignFileError, design_from_document, serialize
from .designs import (
    LinearDesign,
    SlotDesign,
    abba_construction,
    blockdiag_construction,
    tensor_construction,
)
from .report import VerificationReport
from .schemas import (
    CheckModel,
    ConstructRequest,
    ConstructResponse,
    DesignDocument,
    GroupCheckResponse,
    RateRow,
    RateTableResponse,
    ServiceInfo,
    SimulatePoint,
    SimulateRequest,
    SimulateResponse,
    VerifyRequest,
    VerifyResponse,
)
from .simulate import DEFAULT_ROTATION, default_signal_set, results_to_csv, run_monte_carlo
from .verify import max_rate, min_nt, verify_cuw, verify_partition_decodable

_RATE_TABLE_LAMBDAS = (1, 2, 4, 8)


def _design_from_model(doc: DesignDocument) -> LinearDesign:
    try:
        return design_from_document(doc.to_plain())
    except DesignFileError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _partition_from_wire(design: LinearDesign, partition: list[list[int]] | None):
    """1-based wire partition to 0-based, with bounds checking."""
    if partition is None:
        return None
    out = []
    for gi, group in enumerate(partition):
        converted = []
        for idx in group:
            if not (1 <= idx <= design.k):
                raise HTTPException(
                    status_code=400,
                    detail=f"partition[{gi}] index {idx} outside 1..{design.k}",
                )
            converted.append(idx - 1)
        out.append(tuple(converted))
    return out


def _report_checks(report: VerificationReport) -> list[CheckModel]:
    return [
        CheckModel(
            name=c.name,
            passed=c.passed,
            witness=c.witness,
            witnesses=list(c.witnesses),
        )
        for c in report.checks
    ]


def _construct(req: ConstructRequest) -> LinearDesign:
    if req.method in ("blockdiag", "tensor"):
        if req.g is None:
            raise HTTPException(status_code=400, detail=f"{req.method} requires g")
        if req.method == "blockdiag":
            return blockdiag_construction(req.g, req.lam)
        return tensor_construction(req.g, req.lam, req.delta_style)
    # abba: lambda = 2^a fixes the block count; g comes from the slot
    slot = SlotDesign.scalar() if req.slot == "scalar" else SlotDesign.alamouti()
    a = req.lam.bit_length() - 1
    if req.lam < 2 or req.lam != 2**a:
        raise HTTPException(status_code=400, detail="abba requires lambda a power of two, >= 2")
    design = abba_construction(slot, a)
    if req.g is not None and req.g != design.g:
        raise HTTPException(
            status_code=400,
            detail=f"abba with the {req.slot} slot has g={design.g}, not {req.g}",
        )
    return design


def create_app() -> FastAPI:
    app = FastAPI(
        title="cuwcodes",
        version=__version__,
        description=(
            "Construction, verification and simulation of multigroup "
            "ML-decodable unitary-weight space-time block codes."
        ),
    )

    @app.get("/", response_model=ServiceInfo)
    def info() -> ServiceInfo:
        return ServiceInfo(
            name="cuwcodes",
            version=__version__,
            endpoints=["/construct", "/verify", "/rate-table", "/simulate", "/group-check"],
        )

    @app.post("/construct", response_model=None)
    def construct(
        req: ConstructRequest,
        format: Literal["json", "file"] = Query(default="json"),
    ):
        try:
            design = _construct(req)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if format == "file":
            return Response(content=serialize(design), media_type="application/json")
        from .designio import design_to_document

        return ConstructResponse(
            design=DesignDocument.model_validate(design_to_document(design)),
            nt=design.nt,
            k=design.k,
            rate=str(design.rate),
            max_rate=str(max_rate(design.g)),
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        design = _design_from_model(req.design)
        structural = verify_cuw(design, verbose=req.verbose)
        try:
            partition = _partition_from_wire(design, req.partition)
            decodable = verify_partition_decodable(design, partition, verbose=req.verbose)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        report = VerificationReport(structural.checks + decodable.checks)
        return VerifyResponse(
            passed=report.passed,
            checks=_report_checks(report),
            rate=str(design.rate),
            max_rate=str(max_rate(design.g)),
        )

    @app.get("/rate-table", response_model=RateTableResponse)
    def rate_table(gmax: int = Query(ge=1, le=64)) -> RateTableResponse:
        rows = [
            RateRow(
                g=g,
                max_rate=str(max_rate(g)),
                min_nt={str(lam): min_nt(g, lam) for lam in _RATE_TABLE_LAMBDAS},
            )
            for g in range(1, gmax + 1)
        ]
        return RateTableResponse(rows=rows)

    @app.post("/simulate", response_model=None)
    def simulate(
        req: SimulateRequest,
        format: Literal["json", "csv"] = Query(default="json"),
    ):
        design = _design_from_model(req.design)
        try:
            partition = _partition_from_wire(design, req.partition)
            rotation = DEFAULT_ROTATION if req.rotation is None else req.rotation
            sets = default_signal_set(
                design, partition, points_per_group=req.points_per_group, rotation=rotation
            )
            rows = run_monte_carlo(
                design,
                req.snr_db,
                trials=req.trials,
                seed=req.seed,
                partition=partition,
                sets=sets,
                nr=req.nr,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if format == "csv":
            return PlainTextResponse(results_to_csv(rows), media_type="text/csv")
        return SimulateResponse(
            rows=[
                SimulatePoint(
                    snr_db=r.snr_db, ser=r.ser, agreement=r.agreement, trials=r.trials
                )
                for r in rows
            ]
        )

    @app.get("/group-check", response_model=GroupCheckResponse)
    def group_check(
        n: int = Query(ge=0, le=8),
        a: int = Query(ge=0, le=8),
        verbose: bool = Query(default=False),
    ) -> GroupCheckResponse:
        spec = GroupSpec(n, a)
        if spec.order > 1024:
            raise HTTPException(
                status_code=400,
                detail=f"group of order {spec.order} is too large for exhaustive checking",
            )
        report = verify_group_structure(spec, verbose=verbose)
        return GroupCheckResponse(
            passed=report.passed,
            checks=_report_checks(report),
            n=n,
            a=a,
            order=spec.order,
        )

    return app


app = create_app()
