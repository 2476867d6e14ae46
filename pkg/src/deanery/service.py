"""HTTP API over the registry.

One writer owns the store: mutations take a lock, apply against the
current snapshot, write through to disk and only then swap the shared
reference. Reads serve whatever snapshot is current, concurrently and
without touching the store. Mutating endpoints require the static API
token when one is configured.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Callable

from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import audit as audit_mod
from . import contingent, documents, monitor, store, sync
from .errors import (
    DomainError,
    EntryNotInCurriculum,
    MalformedFile,
    PreconditionViolated,
    UnknownCurriculumEntry,
    UnknownGroup,
    UnknownStudent,
)
from .model import Funding, PersonName, Registry, Sex, edit_personal, set_delivery
from .rating import DEFAULT_SCALE
from .semesters import load_calendar

TOKEN_ENV = "DEANERY_TOKEN"

_NOT_FOUND = (UnknownStudent, UnknownGroup, UnknownCurriculumEntry, EntryNotInCurriculum)


@dataclass
class ApiConfig:
    root: Path
    token: str | None = None
    host: str = "127.0.0.1"
    port: int = 8000
    calendar_path: Path | None = None


class AuthError(Exception):
    pass


def _status_for(error: DomainError) -> int:
    if isinstance(error, _NOT_FOUND):
        return 404
    if isinstance(error, PreconditionViolated):
        return 409
    return 400


def _parse_date(value: str | None, fallback: date | None = None) -> date | None:
    if value is None or value == "":
        return fallback
    return date.fromisoformat(value)


def _parse_filter(params) -> monitor.StudentFilter:
    kwargs = {}
    if params.get("status"):
        kwargs["status"] = params["status"]
    if params.get("course"):
        kwargs["course"] = int(params["course"])
    if params.get("direction"):
        kwargs["direction"] = params["direction"]
    if params.get("group"):
        kwargs["group"] = params["group"]
    if params.get("funding"):
        kwargs["funding"] = Funding(params["funding"])
    if params.get("sex"):
        kwargs["sex"] = Sex(params["sex"])
    return monitor.StudentFilter(**kwargs)


def _parse_sort(value: str | None) -> tuple[str, bool]:
    if not value:
        return "name", False
    column, _, direction = value.partition(":")
    if direction not in ("", "asc", "desc"):
        raise ValueError(f"sort direction must be asc or desc, got {direction!r}")
    return column, direction == "desc"


def _event_from_body(body: dict, seq: int) -> contingent.MovementEvent:
    kind = body.get("kind", "")
    timestamp = date.fromisoformat(body["date"])
    student = body["student"]
    actor = body.get("actor", "")
    if kind == "enroll":
        return contingent.enroll(
            seq, timestamp, student, group=body["group"],
            name=PersonName(body["name"]["surname"], body["name"]["given_name"],
                            body["name"].get("patronymic", "")),
            card_number=body.get("card_number", ""), funding=Funding(body["funding"]),
            sex=Sex(body["sex"]), mean_score=body.get("mean_score", "0"), actor=actor)
    if kind == "expel":
        return contingent.expel(seq, timestamp, student, reason=body["reason"], actor=actor)
    if kind == "transfer":
        return contingent.transfer(seq, timestamp, student,
                                   from_group=body["from_group"],
                                   to_group=body["to_group"], actor=actor)
    if kind == "leave_start":
        return contingent.leave_start(seq, timestamp, student,
                                      until=date.fromisoformat(body["until"]), actor=actor)
    if kind == "leave_end":
        return contingent.leave_end(seq, timestamp, student, actor=actor)
    if kind == "course_advance":
        return contingent.course_advance(seq, timestamp, student, actor=actor)
    raise ValueError(f"unknown movement kind {kind!r}")


def create_app(config: ApiConfig) -> FastAPI:
    app = FastAPI(title="deanery", version="0.1.0")

    # the browser client is usually served from another origin
    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST", "PUT", "PATCH", "DELETE"],
        allow_headers=["Content-Type", "X-Api-Token", "Authorization"],
    )

    registry = store.load_registry(config.root)
    if config.calendar_path is not None:
        import dataclasses as dc

        registry = dc.replace(registry, calendar=load_calendar(config.calendar_path))

    state = {"registry": registry}
    write_lock = threading.Lock()

    def current() -> Registry:
        return state["registry"]

    def mutate(operation: Callable[[Registry], Registry]) -> Registry:
        with write_lock:
            updated = operation(state["registry"])
            store.save_registry(updated, config.root)
            state["registry"] = updated
            return updated

    def require_token(request: Request) -> None:
        if not config.token:
            return
        header = request.headers.get("authorization", "")
        bearer = header.removeprefix("Bearer ").strip() if header else ""
        supplied = request.headers.get("x-api-token") or bearer
        if supplied != config.token:
            raise AuthError("missing or invalid API token")

    @app.exception_handler(DomainError)
    async def domain_error_handler(request: Request, error: DomainError):
        return JSONResponse(status_code=_status_for(error),
                            content={"error": error.code, "detail": error.detail})

    @app.exception_handler(AuthError)
    async def auth_error_handler(request: Request, error: AuthError):
        return JSONResponse(status_code=401,
                            content={"error": "Unauthenticated", "detail": str(error)})

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, error: ValueError):
        return JSONResponse(status_code=400,
                            content={"error": "InvalidInput", "detail": str(error)})

    @app.exception_handler(KeyError)
    async def key_error_handler(request: Request, error: KeyError):
        return JSONResponse(status_code=400,
                            content={"error": "InvalidInput",
                                     "detail": f"missing field {error}"})

    @app.get("/")
    def root_summary():
        return documents.registry_doc(current())

    @app.get("/students")
    def list_students(request: Request):
        params = request.query_params
        flt = _parse_filter(params)
        as_of = _parse_date(params.get("as_of"))
        column, descending = _parse_sort(params.get("sort"))
        registry = current()
        rows = monitor.pivot(registry, flt, as_of or date.today(), column, descending)
        return [documents.student_doc(registry.student(row.student), as_of) for row in rows]

    @app.get("/students/{student_id}")
    def get_student(student_id: str):
        return documents.student_doc(current().student(student_id))

    @app.patch("/students/{student_id}")
    def patch_student(student_id: str, request: Request, patch: dict = Body(...)):
        require_token(request)
        updated = mutate(lambda r: edit_personal(r, student_id, patch))
        return documents.student_doc(updated.student(student_id))

    @app.put("/students/{student_id}/deliveries/{entry_id}")
    def put_delivery(student_id: str, entry_id: str, request: Request,
                     body: dict = Body(...)):
        require_token(request)
        delivered = date.fromisoformat(body["date"])
        updated = mutate(lambda r: set_delivery(r, student_id, entry_id, delivered))
        return documents.student_doc(updated.student(student_id))

    @app.delete("/students/{student_id}/deliveries/{entry_id}")
    def delete_delivery(student_id: str, entry_id: str, request: Request):
        require_token(request)
        updated = mutate(lambda r: set_delivery(r, student_id, entry_id, None))
        return documents.student_doc(updated.student(student_id))

    @app.get("/pivot")
    def get_pivot(request: Request):
        params = request.query_params
        flt = _parse_filter(params)
        as_of = _parse_date(params.get("as_of"), date.today())
        column, descending = _parse_sort(params.get("sort"))
        rows = monitor.pivot(current(), flt, as_of, column, descending)
        return [documents.pivot_row_doc(row) for row in rows]

    @app.get("/mastery")
    def get_mastery(request: Request):
        as_of = _parse_date(request.query_params.get("as_of"), date.today())
        return [documents.mastery_row_doc(row)
                for row in monitor.mastery_table(current(), as_of)]

    @app.get("/debt-series")
    def get_debt_series(request: Request):
        params = request.query_params
        flt = _parse_filter(params)
        start = _parse_date(params.get("from"))
        end = _parse_date(params.get("to"))
        step = int(params.get("step", "7"))
        points = monitor.debt_series(current(), flt, start, end, step)
        return [documents.series_point_doc(point) for point in points]

    @app.post("/movements", status_code=201)
    def post_movement(request: Request, body: dict = Body(...)):
        require_token(request)
        applied = {}

        def operation(registry: Registry) -> Registry:
            event = _event_from_body(body, registry.last_seq + 1)
            updated = contingent.apply_event(registry, event)
            applied["event"] = updated.log[-1]
            return updated

        mutate(operation)
        return documents.event_doc(applied["event"])

    @app.get("/movements")
    def get_movements(request: Request):
        month = request.query_params.get("month")
        events = current().log
        if month:
            year_s, _, month_s = month.partition("-")
            year, mon = int(year_s), int(month_s)
            events = tuple(e for e in events
                           if e.timestamp.year == year and e.timestamp.month == mon)
        return [documents.event_doc(event) for event in events]

    @app.get("/reports/movement")
    def get_movement_report(request: Request):
        params = request.query_params
        month = params.get("month")
        if not month:
            raise ValueError("month=YYYY-MM is required")
        year_s, _, month_s = month.partition("-")
        registry = current()
        report = contingent.movement_report(registry.log, registry,
                                            int(year_s), int(month_s))
        if params.get("format") == "csv":
            return PlainTextResponse(contingent.format_report_csv(report),
                                     media_type="text/csv; charset=utf-8")
        return documents.report_doc(report)

    @app.get("/audit")
    def get_audit(request: Request):
        as_of = _parse_date(request.query_params.get("as_of"), date.today())
        return [documents.finding_doc(finding)
                for finding in audit_mod.run_audit(current(), as_of)]

    @app.post("/exchange/import")
    async def post_import(request: Request):
        require_token(request)
        text = (await request.body()).decode("utf-8")
        registry = current()
        record = sync.parse_exchange(text, registry.control_codes)
        mutate(lambda r: sync.import_results(r, record, DEFAULT_SCALE))
        entry = sync.resolve_entry(current(), record)
        return {"imported": record.group, "entry": entry.id,
                "lines": len(record.lines)}

    @app.get("/exchange/export/{group_id}/{semester}")
    def get_export(group_id: str, semester: int):
        return PlainTextResponse(
            sync.export_group_for_teacher(current(), group_id, semester),
            media_type="text/csv; charset=utf-8")

    @app.get("/sheets")
    def get_sheet(request: Request):
        params = request.query_params
        name = params.get("file")
        if not name:
            raise ValueError("file=<name under exchange/in> is required")
        if Path(name).name != name:
            raise ValueError("file must be a bare name, not a path")
        path = Path(config.root) / sync.EXCHANGE_IN / name
        if not path.exists():
            raise MalformedFile(path, None, "no such exchange file")
        registry = current()
        record = sync.parse_exchange(path.read_text(encoding="utf-8"),
                                     registry.control_codes, path)
        sheet = sync.build_sheet(registry, record, DEFAULT_SCALE)
        if params.get("format") == "text":
            from .labels import render_sheet_text

            return PlainTextResponse(render_sheet_text(sheet),
                                     media_type="text/plain; charset=utf-8")
        return documents.sheet_doc(sheet)

    return app


def serve(config: ApiConfig) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)
