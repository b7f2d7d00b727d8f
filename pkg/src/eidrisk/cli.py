"""Command line workbench for eID risk registers.

Exit codes: 0 success, 1 validation or domain failure, 2 usage error,
3 filesystem or network problem.
"""
from __future__ import annotations

import functools
import json
import socket
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from .api import create_app
from .errors import EidRiskError, ParseError, ValidationError
from .figures import render_figures
from .model import (
    LikelihoodLevel,
    PriorityWeighting,
    default_context,
    parse_area_ref,
)
from .report import (
    fmt_number,
    level_label,
    render_ranking_csv,
    render_ranking_table,
    render_score_text,
    report_json,
    report_markdown,
    stakeholder_label,
)
from .scoring import WhatIfOverrides, score_risk, what_if
from .samples import example_1, example_2
from .store import (
    load_register,
    new_document,
    remove_risk,
    risk_from_dict,
    save_register,
    upsert_risk,
    utc_now,
)


@dataclass
class Workbench:
    register: Path
    actor: str


def _guarded(fn):
    """Map domain failures to exit 1 and filesystem failures to exit 3."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except EidRiskError as exc:
            for violation in exc.violations():
                click.echo(f"error: {violation}", err=True)
            raise SystemExit(1)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(3)
    return wrapper


def _load(path: Path):
    if not path.exists():
        click.echo(f"error: register '{path}' does not exist "
                   f"(create one with 'eidrisk init')", err=True)
        raise SystemExit(3)
    return load_register(path)


def _read_json_file(path: Path) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"'{path}' is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"'{path}' must contain a JSON object")
    return data


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="eidrisk")
@click.option("--register", "register_path", envvar="EIDRISK_REGISTER",
              default="register.json", show_default=True,
              type=click.Path(path_type=Path),
              help="Register file to operate on.")
@click.option("--actor", envvar="EIDRISK_ACTOR", default="analyst",
              show_default=True, help="Name recorded in the audit log.")
@click.pass_context
def main(ctx: click.Context, register_path: Path, actor: str) -> None:
    """Risk assessment workbench for national eID systems."""
    ctx.obj = Workbench(register=register_path, actor=actor)


@main.command()
@click.option("--title", default="eID risk register", show_default=True)
@click.option("--context-id", default="default", show_default=True)
@click.option("--force", is_flag=True, help="Overwrite an existing register.")
@click.option("--with-samples", is_flag=True,
              help="Seed the register with the two built-in sample risks.")
@click.pass_obj
@_guarded
def init(wb: Workbench, title: str, context_id: str, force: bool,
         with_samples: bool) -> None:
    """Create a new register with the default assessment context."""
    if wb.register.exists() and not force:
        click.echo(f"error: '{wb.register}' already exists (use --force to replace)",
                   err=True)
        raise SystemExit(3)
    doc = new_document(default_context(context_id=context_id, title=title))
    if with_samples:
        for sample in (example_1(), example_2()):
            doc = upsert_risk(doc, sample, wb.actor)
    save_register(doc, wb.register)
    click.echo(f"created '{wb.register}' with {len(doc.risks)} risks")


@main.group()
def risk() -> None:
    """Add, update or remove risk records."""


@risk.command("add")
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.pass_obj
@_guarded
def risk_add(wb: Workbench, file: Path) -> None:
    """Insert the risk described by a JSON file."""
    doc = _load(wb.register)
    record = risk_from_dict(_read_json_file(file), identified_at_default=utc_now())
    if any(r.id == record.id for r in doc.risks):
        raise ValidationError(
            f"risk '{record.id}' already exists; use 'risk edit'",
            code="duplicate_risk")
    doc = upsert_risk(doc, record, wb.actor)
    save_register(doc, wb.register)
    click.echo(f"added '{record.id}' (version 1)")


@risk.command("edit")
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.pass_obj
@_guarded
def risk_edit(wb: Workbench, file: Path) -> None:
    """Update an existing risk from a JSON file carrying its current version."""
    doc = _load(wb.register)
    record = risk_from_dict(_read_json_file(file), identified_at_default=utc_now())
    doc.risk(record.id)
    doc = upsert_risk(doc, record, wb.actor)
    save_register(doc, wb.register)
    click.echo(f"updated '{record.id}' (version {doc.risk(record.id).version})")


@risk.command("rm")
@click.argument("risk_id")
@click.pass_obj
@_guarded
def risk_rm(wb: Workbench, risk_id: str) -> None:
    """Remove a risk from the register."""
    doc = _load(wb.register)
    doc = remove_risk(doc, risk_id, wb.actor)
    save_register(doc, wb.register)
    click.echo(f"removed '{risk_id}'")


@main.command()
@click.argument("risk_id")
@click.pass_obj
@_guarded
def score(wb: Workbench, risk_id: str) -> None:
    """Recompute and print the full score breakdown for one risk."""
    doc = _load(wb.register)
    record = doc.risk(risk_id)
    result = score_risk(record, doc.context)
    click.echo(render_score_text(record, result, doc.context.impact_scale),
               nl=False)


@main.command()
@click.option("--format", "fmt", default="table", show_default=True,
              type=click.Choice(["table", "markdown", "json", "csv"]))
@click.option("--out", type=click.Path(path_type=Path),
              help="Write the report to a file instead of stdout.")
@click.option("--figures", "figures_dir", type=click.Path(path_type=Path),
              help="Also render report figures (PNG) into this directory.")
@click.pass_obj
@_guarded
def report(wb: Workbench, fmt: str, out: Path | None,
           figures_dir: Path | None) -> None:
    """Rank every risk and emit the register report."""
    doc = _load(wb.register)
    renderers = {
        "table": render_ranking_table,
        "markdown": report_markdown,
        "csv": render_ranking_csv,
        "json": lambda d: json.dumps(report_json(d), indent=2) + "\n",
    }
    payload = renderers[fmt](doc)
    if out is not None:
        out.write_text(payload, encoding="utf-8")
    else:
        click.echo(payload, nl=False)
    if figures_dir is not None:
        for path in render_figures(doc, figures_dir):
            click.echo(f"wrote {path}", err=True)


@main.command()
@click.argument("risk_id")
@click.option("--set", "set_values", multiple=True, metavar="CLASS.AREA=VALUE",
              help="Override an impact value, e.g. end_users.psychological=10.")
@click.option("--weight", "set_weights", multiple=True, metavar="CLASS.AREA=RANK",
              help="Override a priority rank before rescoring.")
@click.option("--likelihood", type=click.Choice([l.value for l in LikelihoodLevel]),
              help="Override the likelihood level.")
@click.pass_obj
@_guarded
def whatif(wb: Workbench, risk_id: str, set_values: tuple[str, ...],
           set_weights: tuple[str, ...], likelihood: str | None) -> None:
    """Rescore a risk under hypothetical changes without saving anything."""
    doc = _load(wb.register)
    record = doc.risk(risk_id)
    overrides = _parse_cli_overrides(doc.context, set_values, set_weights,
                                     likelihood)
    result = what_if(record, doc.context, overrides)
    base, mod = result.baseline, result.modified
    lines = [f"{risk_id}: baseline -> modified"]
    for stakeholder, breakdown in base.per_stakeholder.items():
        after = mod.per_stakeholder[stakeholder].score
        lines.append(f"{stakeholder_label(stakeholder)}: "
                     f"{breakdown.score} -> {after} ({after - breakdown.score:+d})")
    lines.append(f"Overall impact: {base.overall_impact} -> {mod.overall_impact} "
                 f"({mod.overall_impact - base.overall_impact:+d})")
    lines.append(f"Likelihood: {level_label(base.likelihood_level)} -> "
                 f"{level_label(mod.likelihood_level)}")
    lines.append(f"Risk value: {fmt_number(base.risk_value)} -> "
                 f"{fmt_number(mod.risk_value)}")
    lines.append(f"Risk level: {level_label(base.risk_level)} -> "
                 f"{level_label(mod.risk_level)}")
    click.echo("\n".join(lines))


def _parse_cli_overrides(context, set_values, set_weights, likelihood):
    values = {}
    for item in set_values:
        ref, _, raw = item.partition("=")
        if not raw or not raw.lstrip("-").isdigit():
            raise ValidationError(
                f"expected CLASS.AREA=VALUE with an integer value, got '{item}'")
        values[parse_area_ref(ref.replace(":", ".", 1))] = int(raw)

    merged: dict = {}
    for item in set_weights:
        ref, _, raw = item.partition("=")
        if not raw or not raw.lstrip("-").isdigit():
            raise ValidationError(
                f"expected CLASS.AREA=RANK with an integer rank, got '{item}'")
        area = parse_area_ref(ref.replace(":", ".", 1))
        base = merged.get(area.stakeholder)
        if base is None:
            base = dict(context.weightings[area.stakeholder].weights)
        base[area.name] = int(raw)
        merged[area.stakeholder] = base

    weightings = {
        stakeholder: PriorityWeighting(stakeholder, weights)
        for stakeholder, weights in merged.items()
    }
    level = LikelihoodLevel(likelihood) if likelihood else None
    return WhatIfOverrides(values=values, weightings=weightings,
                           likelihood_level=level)


@main.command()
@click.option("--addr", default="127.0.0.1:8000", show_default=True,
              help="HOST:PORT to listen on.")
@click.option("--ui", "ui_dir", type=click.Path(exists=True, path_type=Path),
              help="Serve a static workbench UI from this directory under /ui.")
@click.pass_obj
@_guarded
def serve(wb: Workbench, addr: str, ui_dir: Path | None) -> None:
    """Serve the register over HTTP."""
    import uvicorn

    host, _, port_raw = addr.rpartition(":")
    if not host or not port_raw.isdigit():
        raise ValidationError(f"expected HOST:PORT, got '{addr}'")
    port = int(port_raw)
    if not wb.register.exists():
        click.echo(f"error: register '{wb.register}' does not exist "
                   f"(create one with 'eidrisk init')", err=True)
        raise SystemExit(3)
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((host, port))
    except OSError as exc:
        click.echo(f"error: cannot bind {addr}: {exc}", err=True)
        raise SystemExit(3)
    finally:
        probe.close()
    app = create_app(wb.register, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
