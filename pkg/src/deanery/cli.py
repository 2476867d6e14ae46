"""Command-line interface.

Every subcommand maps onto one core operation and prints tabular output
(aligned table by default, CSV with ``--format csv``). Report views can
additionally render a figure file next to the delimited output via
``--plot``. Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import csv
import functools
import io
import sys
from datetime import date
from pathlib import Path

import click

from . import audit as audit_mod
from . import contingent, documents, labels, monitor, store, sync
from .errors import DomainError
from .model import Funding, PersonName, Registry, Sex
from .rating import DEFAULT_SCALE
from .service import ApiConfig, TOKEN_ENV


def _fail(message: str) -> "NoReturn":  # noqa: F821
    click.echo(message, err=True)
    sys.exit(1)


def guarded(command):
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except DomainError as error:
            _fail(str(error))
        except ValueError as error:
            _fail(f"InvalidInput: {error}")

    return wrapper


class DateParam(click.ParamType):
    name = "date"

    def convert(self, value, param, ctx):
        if isinstance(value, date):
            return value
        try:
            return date.fromisoformat(value)
        except ValueError:
            self.fail(f"{value!r} is not a YYYY-MM-DD date", param, ctx)


DATE = DateParam()


def emit(rows: list[list[str]], output_format: str) -> None:
    if output_format == "csv":
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(rows)
        click.echo(buffer.getvalue(), nl=False)
        return
    if not rows:
        return
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        click.echo("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())


def _filter_options(command):
    options = [
        click.option("--group", default=None, help="Group id."),
        click.option("--course", type=int, default=None, help="Course number."),
        click.option("--direction", default=None, help="Training direction."),
        click.option("--funding", type=click.Choice(["budget", "contract"]), default=None),
        click.option("--sex", type=click.Choice(["male", "female"]), default=None),
        click.option("--status", type=click.Choice(["active", "leave", "expelled"]),
                     default="active", show_default=True),
        click.option("--filter", "extra_filters", multiple=True, metavar="KEY=VALUE",
                     help="Additional key=value filter, repeatable."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _build_filter(group, course, direction, funding, sex, status,
                  extra_filters) -> monitor.StudentFilter:
    values = {"group": group, "course": course, "direction": direction,
              "funding": funding, "sex": sex, "status": status}
    for item in extra_filters:
        key, sep, value = item.partition("=")
        if not sep:
            raise click.UsageError(f"--filter expects KEY=VALUE, got {item!r}")
        if key not in values:
            raise click.UsageError(f"unknown filter key {key!r}")
        values[key] = value
    if values["course"] is not None:
        values["course"] = int(values["course"])
    if values["funding"] is not None:
        values["funding"] = Funding(values["funding"])
    if values["sex"] is not None:
        values["sex"] = Sex(values["sex"])
    return monitor.StudentFilter(**{k: v for k, v in values.items() if v is not None})


def _load(ctx) -> Registry:
    return store.load_registry(ctx.obj["root"])


def _save(ctx, registry: Registry) -> None:
    store.save_registry(registry, ctx.obj["root"])


@click.group()
@click.option("--root", type=click.Path(path_type=Path), default=Path("."),
              envvar="DEANERY_ROOT", show_default=True,
              help="Data root (holds students/, plans/, report.log).")
@click.pass_context
def main(ctx, root: Path):
    """Teaching-department registry tools."""
    ctx.ensure_object(dict)
    ctx.obj["root"] = root


@main.command("pivot")
@_filter_options
@click.option("--as-of", type=DATE, default=None, help="Evaluate debts as of this date.")
@click.option("--sort", default="name", show_default=True,
              metavar="COLUMN[:asc|desc]", help="Sort column and direction.")
@click.option("--format", "output_format", type=click.Choice(["table", "csv"]),
              default="table", show_default=True)
@click.option("--locale", type=click.Choice(list(labels.LOCALES)), default=labels.RU,
              show_default=True)
@click.pass_context
@guarded
def pivot_cmd(ctx, group, course, direction, funding, sex, status, extra_filters,
              as_of, sort, output_format, locale):
    """Debt pivot table with filtering and sorting."""
    registry = _load(ctx)
    flt = _build_filter(group, course, direction, funding, sex, status, extra_filters)
    column, _, direction_s = sort.partition(":")
    if direction_s not in ("", "asc", "desc"):
        raise click.UsageError(f"sort direction must be asc or desc, got {direction_s!r}")
    rows = monitor.pivot(registry, flt, as_of or date.today(), column,
                         direction_s == "desc")
    group_ids = {row.group for row in rows}
    semesters = sorted({
        s for gid in group_ids for s in registry.groups[gid].semesters()
    })
    emit(labels.pivot_csv_rows(rows, semesters, locale), output_format)


@main.command("mastery")
@click.option("--as-of", type=DATE, default=None)
@click.option("--format", "output_format", type=click.Choice(["table", "csv"]),
              default="table", show_default=True)
@click.option("--locale", type=click.Choice(list(labels.LOCALES)), default=labels.RU,
              show_default=True)
@click.option("--plot", type=click.Path(path_type=Path), default=None,
              help="Also render the table as a bar chart image.")
@click.pass_context
@guarded
def mastery_cmd(ctx, as_of, output_format, locale, plot):
    """Discipline-mastery statistics with red/yellow/green classes."""
    registry = _load(ctx)
    rows = monitor.mastery_table(registry, as_of or date.today())
    emit(labels.mastery_csv_rows(rows, locale), output_format)
    if plot is not None:
        from .plotting import render_mastery

        render_mastery(rows, plot, locale)
        click.echo(f"figure written to {plot}", err=True)


@main.command("series")
@_filter_options
@click.option("--from", "start", type=DATE, required=True)
@click.option("--to", "end", type=DATE, required=True)
@click.option("--step", type=int, default=7, show_default=True, help="Step in days.")
@click.option("--format", "output_format", type=click.Choice(["table", "csv"]),
              default="table", show_default=True)
@click.option("--locale", type=click.Choice(list(labels.LOCALES)), default=labels.RU,
              show_default=True)
@click.option("--plot", type=click.Path(path_type=Path), default=None,
              help="Also render the series as a line chart image.")
@click.pass_context
@guarded
def series_cmd(ctx, group, course, direction, funding, sex, status, extra_filters,
               start, end, step, output_format, locale, plot):
    """Total debts of the filtered students sampled over a date range."""
    registry = _load(ctx)
    flt = _build_filter(group, course, direction, funding, sex, status, extra_filters)
    points = monitor.debt_series(registry, flt, start, end, step)
    emit(labels.series_csv_rows(points, locale), output_format)
    if plot is not None:
        from .plotting import render_debt_series

        render_debt_series(points, plot, locale)
        click.echo(f"figure written to {plot}", err=True)


@main.command("audit")
@click.option("--as-of", type=DATE, default=None)
@click.option("--format", "output_format", type=click.Choice(["table", "csv"]),
              default="table", show_default=True)
@click.pass_context
@guarded
def audit_cmd(ctx, as_of, output_format):
    """Search for stale records (overdue leave, graduation, advancement)."""
    registry = _load(ctx)
    findings = audit_mod.run_audit(registry, as_of or date.today())
    rows = [list(audit_mod.FINDINGS_HEADER)]
    rows += [[f.rule.value, f.student, f.due_date.isoformat(), f.severity, f.detail]
             for f in findings]
    emit(rows, output_format)


@main.command("report")
@click.option("--month", required=True, metavar="YYYY-MM")
@click.option("--format", "output_format", type=click.Choice(["table", "csv"]),
              default="table", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="Also write the CSV report to a file.")
@click.pass_context
@guarded
def report_cmd(ctx, month, output_format, out):
    """Monthly contingent-movement report."""
    registry = _load(ctx)
    year_s, _, month_s = month.partition("-")
    try:
        year, mon = int(year_s), int(month_s)
        date(year, mon, 1)
    except ValueError:
        raise click.UsageError(f"--month expects YYYY-MM, got {month!r}")
    report = contingent.movement_report(registry.log, registry, year, mon)
    text = contingent.format_report_csv(report)
    if output_format == "csv":
        click.echo(text, nl=False)
    else:
        emit(list(csv.reader(io.StringIO(text))), "table")
    if out is not None:
        contingent.export_report(report, out)
        click.echo(f"report written to {out}", err=True)


def _movement_common(command):
    options = [
        click.option("--student", required=True, help="Student id."),
        click.option("--date", "when", type=DATE, required=True, help="Event date."),
        click.option("--actor", default="cli", show_default=True),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@main.group("move")
def move_group():
    """Contingent movement (appends to the log and updates the store)."""


def _apply_and_save(ctx, build_event) -> None:
    registry = _load(ctx)
    event = build_event(registry.last_seq + 1)
    updated = contingent.apply_event(registry, event)
    _save(ctx, updated)
    click.echo(contingent.format_event(updated.log[-1]))


@move_group.command("enroll")
@_movement_common
@click.option("--group", required=True)
@click.option("--surname", required=True)
@click.option("--given-name", required=True)
@click.option("--patronymic", default="")
@click.option("--card", default="")
@click.option("--funding", type=click.Choice(["budget", "contract"]), required=True)
@click.option("--sex", type=click.Choice(["male", "female"]), required=True)
@click.option("--mean-score", default="0", show_default=True)
@click.pass_context
@guarded
def move_enroll(ctx, student, when, actor, group, surname, given_name, patronymic,
                card, funding, sex, mean_score):
    """Enroll a new student into a group."""
    _apply_and_save(ctx, lambda seq: contingent.enroll(
        seq, when, student, group=group,
        name=PersonName(surname, given_name, patronymic), card_number=card,
        funding=Funding(funding), sex=Sex(sex), mean_score=mean_score, actor=actor))


@move_group.command("expel")
@_movement_common
@click.option("--reason", required=True)
@click.pass_context
@guarded
def move_expel(ctx, student, when, actor, reason):
    """Expel a student; the debt count is frozen at the event date."""
    _apply_and_save(ctx, lambda seq: contingent.expel(seq, when, student,
                                                      reason=reason, actor=actor))


@move_group.command("transfer")
@_movement_common
@click.option("--from-group", required=True)
@click.option("--to-group", required=True)
@click.pass_context
@guarded
def move_transfer(ctx, student, when, actor, from_group, to_group):
    """Transfer a student to a group with a compatible curriculum."""
    _apply_and_save(ctx, lambda seq: contingent.transfer(
        seq, when, student, from_group=from_group, to_group=to_group, actor=actor))


@move_group.command("leave-start")
@_movement_common
@click.option("--until", type=DATE, required=True)
@click.pass_context
@guarded
def move_leave_start(ctx, student, when, actor, until):
    """Send a student on academic leave."""
    _apply_and_save(ctx, lambda seq: contingent.leave_start(
        seq, when, student, until=until, actor=actor))


@move_group.command("leave-end")
@_movement_common
@click.pass_context
@guarded
def move_leave_end(ctx, student, when, actor):
    """Return a student from academic leave."""
    _apply_and_save(ctx, lambda seq: contingent.leave_end(seq, when, student, actor=actor))


@move_group.command("advance")
@_movement_common
@click.pass_context
@guarded
def move_advance(ctx, student, when, actor):
    """Advance a student to the next course."""
    _apply_and_save(ctx, lambda seq: contingent.course_advance(seq, when, student,
                                                               actor=actor))


@main.command("set-date")
@click.option("--student", required=True)
@click.option("--entry", required=True, metavar="GROUP:ORDINAL")
@click.option("--date", "when", type=DATE, default=None,
              help="Delivery date to insert; omit together with --clear to remove.")
@click.option("--clear", is_flag=True, help="Clear the delivery instead of setting it.")
@click.pass_context
@guarded
def set_date_cmd(ctx, student, entry, when, clear):
    """Insert or clear one delivery date."""
    if clear == (when is not None):
        raise click.UsageError("provide exactly one of --date or --clear")
    from .model import set_delivery

    registry = _load(ctx)
    updated = set_delivery(registry, student, entry, None if clear else when)
    _save(ctx, updated)
    record = updated.student(student)
    value = record.deliveries.get(entry)
    click.echo(f"{student} {entry} {'cleared' if value is None else value.isoformat()}")


@main.command("edit")
@click.option("--student", required=True)
@click.option("--surname", default=None)
@click.option("--given-name", default=None)
@click.option("--patronymic", default=None)
@click.option("--card", default=None)
@click.option("--mean-score", default=None)
@click.option("--sex", type=click.Choice(["male", "female"]), default=None)
@click.pass_context
@guarded
def edit_cmd(ctx, student, surname, given_name, patronymic, card, mean_score, sex):
    """Edit the personal fields of a student record."""
    from .model import edit_personal

    patch: dict = {}
    name_patch = {k: v for k, v in (("surname", surname), ("given_name", given_name),
                                    ("patronymic", patronymic)) if v is not None}
    if name_patch:
        patch["name"] = name_patch
    if card is not None:
        patch["card_number"] = card
    if mean_score is not None:
        patch["mean_score"] = mean_score
    if sex is not None:
        patch["sex"] = sex
    registry = _load(ctx)
    updated = edit_personal(registry, student, patch)
    _save(ctx, updated)
    import json

    click.echo(json.dumps(documents.student_doc(updated.student(student)),
                          ensure_ascii=False))


@main.command("import")
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.pass_context
@guarded
def import_cmd(ctx, file: Path):
    """Import a teacher exchange file (passing records become deliveries)."""
    registry = _load(ctx)
    record = sync.parse_exchange(file.read_text(encoding="utf-8"),
                                 registry.control_codes, file)
    updated = sync.import_results(registry, record, DEFAULT_SCALE)
    _save(ctx, updated)
    entry = sync.resolve_entry(updated, record)
    applied = sum(1 for line in record.lines
                  if updated.student(line.student).deliveries.get(entry.id) is not None)
    click.echo(f"imported {file.name}: {applied} deliveries on {entry.id}")


@main.command("export")
@click.argument("group")
@click.argument("semester", type=int)
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="Target file (default: exchange/out/<group>-s<semester>.csv).")
@click.pass_context
@guarded
def export_cmd(ctx, group, semester, out):
    """Export a group roster for the teacher workplace."""
    registry = _load(ctx)
    text = sync.export_group_for_teacher(registry, group, semester)
    if out is None:
        out = ctx.obj["root"] / sync.EXCHANGE_OUT / f"{group}-s{semester}.csv"
    store.atomic_write_text(out, text)
    click.echo(f"roster written to {out}")


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--token", default=None, envvar=TOKEN_ENV,
              help=f"Static API token (or set {TOKEN_ENV}).")
@click.pass_context
@guarded
def serve_cmd(ctx, host, port, token):
    """Run the HTTP API over this data root."""
    from .service import serve

    serve(ApiConfig(root=ctx.obj["root"], token=token, host=host, port=port))


if __name__ == "__main__":
    main()
