"""Text, CSV and JSON rendering of results. Counts are always decimal strings."""

import pandas as pd
from pydantic import BaseModel

from backend.schemas import (
    AuditReport,
    CountGrid,
    CountResult,
    MaxResult,
    OutputFormat,
    ScanReport,
    VerifyResult,
)

GRID_CORNER = "k\\n"


def _frame(rows: list, columns: list) -> pd.DataFrame:
    return pd.DataFrame([[str(v) for v in row] for row in rows], columns=columns, dtype=object)


def _csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, lineterminator="\n")


def _text(df: pd.DataFrame) -> str:
    if df.empty:
        return "  (none)"
    return df.to_string(index=False)


def _json(model: BaseModel) -> str:
    return model.model_dump_json(by_alias=True, indent=2) + "\n"


def _params(params: dict) -> str:
    return ", ".join(f"{key}={value}" for key, value in params.items())


# ── Count grids and single counts ──────────────────────────────────────────────

def render_grid(grid: CountGrid, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return _json(grid)
    n_lo, n_hi = grid.n_range
    columns = [GRID_CORNER] + [str(n) for n in range(n_lo, n_hi + 1)]
    df = _frame([[row.k] + row.values for row in grid.rows], columns)
    if fmt == OutputFormat.CSV:
        return _csv(df)
    return _text(df) + "\n"


def render_count(result: CountResult, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return _json(result)
    df = _frame([[result.k, result.n, result.condition, result.count]], ["k", "n", "condition", "count"])
    if fmt == OutputFormat.CSV:
        return _csv(df)
    return _text(df) + "\n"


# ── Scans ──────────────────────────────────────────────────────────────────────

def _entries_frame(report: ScanReport, entries: list) -> pd.DataFrame:
    columns = report.param_order + ["relation", "lhs", "rhs"]
    rows = [
        [e.params[p] for p in report.param_order]
        + [e.outcome.relation.value, e.outcome.lhs, e.outcome.rhs]
        for e in entries
    ]
    return _frame(rows, columns)


def render_scan(report: ScanReport, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return _json(report)
    if fmt == OutputFormat.CSV:
        return _csv(_entries_frame(report, report.exceptions))

    lines = [
        f"scan: {report.scan}",
        f"statement: {report.statement}",
        "ranges: " + ", ".join(f"{key} in [{lo}, {hi}]" for key, (lo, hi) in report.ranges.items()),
        f"checked: {report.total_checked}",
        f"exceptions: {len(report.exceptions)}",
        _text(_entries_frame(report, report.exceptions)),
        f"ties (Equal, allowed): {len(report.ties)}",
    ]
    if report.appendix:
        lines += ["appendix (outside the stated region):", _text(_entries_frame(report, report.appendix))]
    if report.claimed is not None:
        claimed = "; ".join(_params(c) for c in report.claimed) or "none"
        lines.append(f"claimed in range: {claimed}")
        if report.has_discrepancy:
            lines.append("DISCREPANCY")
            lines += [f"  found but not claimed: {_params(p)}" for p in report.unlisted]
            lines += [f"  claimed but not found: {_params(p)}" for p in report.unconfirmed]
            lines += [
                f"  relation differs at {_params(m.params)}: claimed {m.claimed.value}, found {m.found.value}"
                for m in report.relation_mismatches
            ]
        else:
            lines.append("matches claimed exceptions")
    return "\n".join(lines) + "\n"


# ── Audits ─────────────────────────────────────────────────────────────────────

def render_audit(report: AuditReport, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return _json(report)

    rows = [["collision", c.first, c.second, c.mu, c.nu] for c in report.collisions]
    rows += [["violation", v.source, "", v.mu, v.nu] for v in report.codomain_violations]
    rows += [["unhit", "", "", u.mu, u.nu] for u in report.unhit_codomain_examples]
    df = _frame(rows, ["kind", "input", "other_input", "mu", "nu"])
    if fmt == OutputFormat.CSV:
        return _csv(df)

    variant = f" ({report.variant.value})" if report.variant else ""
    collisions = _frame(
        [[c.first, c.second, c.mu, c.nu] for c in report.collisions],
        ["input", "other_input", "mu", "nu"],
    )
    violations = _frame(
        [[v.source, v.mu, v.nu] for v in report.codomain_violations], ["input", "mu", "nu"]
    )
    unhit = _frame([[u.mu, u.nu] for u in report.unhit_codomain_examples], ["mu", "nu"])
    lines = [
        f"collisions: {len(report.collisions)}",
        _text(collisions),
        f"map: {report.map}_{report.k}{variant} {_params(report.parameters)}",
        f"domain: {report.domain}  size {report.domain_size}",
        f"codomain: {report.codomain}  size {report.codomain_size}",
        f"codomain violations: {len(report.codomain_violations)}",
        _text(violations),
        f"unhit codomain pairs: {report.unhit_count} (showing {len(report.unhit_codomain_examples)})",
        _text(unhit),
        f"injective: {str(report.injective).lower()}",
        f"surjective: {str(report.surjective).lower()}",
    ]
    return "\n".join(lines) + "\n"


# ── Maxima and identity checks ─────────────────────────────────────────────────

def render_max(result: MaxResult, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return _json(result)
    df = _frame(
        [[result.k, result.n, result.value, ",".join(map(str, m))] for m in result.maximizers],
        ["k", "n", "value", "maximizer"],
    )
    if fmt == OutputFormat.CSV:
        return _csv(df)
    return f"max p_-{result.k}({result.n}) [{result.mode.value}]\n" + _text(df) + "\n"


def render_verify(result: VerifyResult, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return _json(result)
    df = _frame([[result.check, _params(result.parameters), str(result.holds).lower()]],
                ["check", "parameters", "holds"])
    if fmt == OutputFormat.CSV:
        return _csv(df)
    lines = [_text(df)]
    lines += [f"  fails at {_params(f)}" for f in result.failures]
    return "\n".join(lines) + "\n"
