"""File output for solves and CEA reports, and the replay CSV reader.

CSV files are UTF-8, comma-separated, LF-terminated, with a header row. Floats
in CSVs are written in scientific notation with 10 significant digits; JSON
keeps full double precision so summaries round-trip exactly.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .cea import CeaRecord, CeaReport
from .errors import ConfigError
from .metrics import OutcomeSummary, efficacy_curves
from .pmp import OptimalSolution
from .strategies import get_strategy

REPLAY_HEADER = ("strategy_id", "infections_averted", "cost", "recoveries")


def fmt_float(x) -> str:
    return "" if x is None else f"{x:.9e}"


def fmt_display(x, digits: int = 5) -> str:
    return "-" if x is None else f"{x:.{digits}g}"


def _write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_trajectory(path, solution: OptimalSolution) -> Path:
    rows = ([fmt_float(t), *map(fmt_float, x)] for t, x in zip(solution.t, solution.states))
    return _write_csv(Path(path), ("t", "S", "E", "I", "A", "R", "B"), rows)


def write_controls(path, solution: OptimalSolution) -> Path:
    rows = ([fmt_float(t), *map(fmt_float, u)] for t, u in zip(solution.t, solution.controls))
    return _write_csv(Path(path), ("t", "u1", "u2", "u3", "u4"), rows)


def write_efficacy(path, solution: OptimalSolution, init) -> Path:
    curves = efficacy_curves(solution, init)
    cols = np.column_stack([curves[k] for k in ("E", "I", "A", "B")])
    rows = ([fmt_float(t), *map(fmt_float, c)] for t, c in zip(solution.t, cols))
    return _write_csv(Path(path), ("t", "E_E", "E_I", "E_A", "E_B"), rows)


def write_summary(path, summary: OutcomeSummary) -> Path:
    path = Path(path)
    path.write_text(json.dumps(summary.to_dict(), indent=2) + "\n", encoding="utf-8")
    return path


def read_summary(path) -> OutcomeSummary:
    return OutcomeSummary.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def read_replay_csv(path) -> list[CeaRecord]:
    """Read ``strategy_id,infections_averted,cost,recoveries`` rows."""
    path = Path(path)
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != REPLAY_HEADER:
            raise ConfigError(f"{path}:1: expected header {','.join(REPLAY_HEADER)}")
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise ConfigError(f"{path}:{line}: expected 4 fields, got {len(row)}")
            try:
                sid = int(row[0])
                get_strategy(sid)
                ia, cost, rec = (float(c) for c in row[1:])
            except (ValueError, KeyError) as exc:
                raise ConfigError(f"{path}:{line}: malformed row ({exc})") from None
            records.append(CeaRecord(sid, ia, cost, rec))
    if not records:
        raise ConfigError(f"{path}: no records")
    return records


def _report_dict(report: CeaReport) -> dict:
    def rec_dict(r: CeaRecord):
        return {
            "strategy_id": r.strategy_id,
            "controls": get_strategy(r.strategy_id).short_name,
            "infections_averted": r.infections_averted,
            "cost": r.total_cost,
            "recoveries": r.recoveries,
            "iar": r.iar,
            "acer": r.acer,
        }

    return {
        "name": report.name,
        "winner": report.winner,
        "elimination_order": report.elimination_order,
        "iar_ranking": report.iar_ranking,
        "acer_ranking": report.acer_ranking,
        "records": [rec_dict(r) for r in sorted(report.records, key=lambda r: r.strategy_id)],
        "rounds": [
            {
                "round": i,
                "eliminated": step.eliminated,
                "reason": step.reason,
                "ladder": [
                    {**rec_dict(e.record), "icer": e.icer, "compared_to": e.compared_to, "deferred": e.deferred}
                    for e in step.ladder
                ],
            }
            for i, step in enumerate(report.rounds, start=1)
        ],
    }


def _slug(name: str) -> str:
    return name.replace(" ", "_") or "report"


def write_cea_reports(out_dir, reports: dict[str, CeaReport], csv_out=True, json_out=True) -> list[Path]:
    """Write the JSON report, one ladder CSV per report and a rounded text rendering."""
    out_dir = Path(out_dir)
    written = []
    if json_out:
        path = out_dir / "cea_report.json"
        payload = {"reports": [_report_dict(r) for r in reports.values()]}
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        written.append(path)
    if csv_out:
        for report in reports.values():
            rows = []
            for i, step in enumerate(report.rounds, start=1):
                for e in step.ladder:
                    r = e.record
                    rows.append([
                        i, r.strategy_id, get_strategy(r.strategy_id).short_name,
                        fmt_float(r.infections_averted), fmt_float(r.total_cost), fmt_float(r.recoveries),
                        fmt_float(r.iar), fmt_float(r.acer), fmt_float(e.icer),
                        "" if e.compared_to is None else e.compared_to,
                        "yes" if step.eliminated == r.strategy_id else "",
                        step.reason if step.eliminated == r.strategy_id else "",
                    ])
            written.append(_write_csv(
                out_dir / f"cea_{_slug(report.name)}.csv",
                ("round", "strategy", "controls", "infections_averted", "cost", "recoveries",
                 "iar", "acer", "icer", "compared_to", "eliminated", "reason"),
                rows,
            ))
        path = out_dir / "cea_report.txt"
        path.write_text(render_reports(reports), encoding="utf-8")
        written.append(path)
    return written


def render_report(report: CeaReport) -> str:
    lines = [f"== {report.name} =="]
    for i, step in enumerate(report.rounds, start=1):
        lines.append(f"round {i}")
        lines.append(f"  {'strategy':<22}{'IA':>12}{'cost':>12}{'IAR':>10}{'ACER':>12}{'ICER':>12}")
        for e in step.ladder:
            r = e.record
            name = f"{r.strategy_id}: {get_strategy(r.strategy_id).short_name}"
            lines.append(
                f"  {name:<22}{fmt_display(r.infections_averted):>12}{fmt_display(r.total_cost):>12}"
                f"{fmt_display(r.iar):>10}{fmt_display(r.acer):>12}{fmt_display(e.icer):>12}"
            )
        if step.eliminated is not None:
            lines.append(f"  -> strategy {step.eliminated} eliminated ({step.reason})")
    lines.append(f"winner: strategy {report.winner}")
    lines.append(f"IAR ranking (best first): {report.iar_ranking}")
    lines.append(f"ACER ranking (best first): {report.acer_ranking}")
    return "\n".join(lines) + "\n"


def render_reports(reports: dict[str, CeaReport]) -> str:
    return "\n".join(render_report(r) for r in reports.values())
