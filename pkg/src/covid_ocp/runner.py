"""Experiment orchestration: solve selected strategies, summarize, run the CEA, write files."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import report
from .cea import CeaRecord, CeaReport, analyze
from .config import RunConfig
from .errors import DomainError
from .metrics import OutcomeSummary, summarize
from .pmp import OptimalSolution, fbs_solve
from .strategies import NO_CONTROL, get_strategy

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_NONCONVERGED = 3


@dataclass
class RunResult:
    summaries: dict[int, OutcomeSummary]
    solutions: dict[int, OptimalSolution]
    baseline: OptimalSolution
    reports: dict[str, CeaReport] = field(default_factory=dict)
    files: list[Path] = field(default_factory=list)

    @property
    def all_converged(self) -> bool:
        return all(s.converged for s in self.summaries.values())

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.all_converged else EXIT_NONCONVERGED


def solve_strategy(config: RunConfig, strategy_id: int) -> OptimalSolution:
    mask = get_strategy(strategy_id) if strategy_id else NO_CONTROL
    return fbs_solve(config.params, config.weights, config.init, mask, config.sweep)


def _write_solution(out: Path, prefix: str, config: RunConfig, solution: OptimalSolution) -> list[Path]:
    if not config.writes_csv:
        return []
    files = [
        report.write_trajectory(out / f"{prefix}_trajectory.csv", solution),
        report.write_controls(out / f"{prefix}_controls.csv", solution),
    ]
    try:
        files.append(report.write_efficacy(out / f"{prefix}_efficacy.csv", solution, config.init))
    except DomainError as exc:
        log.warning("skipping efficacy output for %s: %s", prefix, exc)
    return files


def run(config: RunConfig) -> RunResult:
    """Solve the baseline and each selected strategy, then write all artifacts.

    With ``workers > 1`` strategies are solved in a process pool; files are
    written from the parent only, after the solves join.
    """
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    baseline = solve_strategy(config, 0)

    ids = list(config.strategies)
    if config.workers > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            solved = list(pool.map(solve_strategy, [config] * len(ids), ids))
    else:
        solved = [solve_strategy(config, sid) for sid in ids]
    solutions = dict(zip(ids, solved))

    result = RunResult(summaries={}, solutions=solutions, baseline=baseline)
    result.files += _write_solution(out, "baseline", config, baseline)
    for sid, sol in solutions.items():
        summary = summarize(sol, baseline, config.params, config.weights)
        result.summaries[sid] = summary
        prefix = f"strategy_{sid:02d}"
        result.files += _write_solution(out, prefix, config, sol)
        result.files.append(report.write_summary(out / f"{prefix}_summary.json", summary))
        if not sol.converged:
            log.warning("strategy %d did not converge after %d iterations", sid, sol.iterations)

    if len(ids) > 1:
        records = [CeaRecord.from_summary(s) for s in result.summaries.values()]
        result.reports = analyze(records)
        result.files += report.write_cea_reports(out, result.reports, config.writes_csv, config.writes_json)
    return result


def replay(records_file, out_dir, fmt: str = "both") -> dict[str, CeaReport]:
    """Run the full CEA on tabulated (IA, cost, recoveries) records and write the reports."""
    records = report.read_replay_csv(records_file)
    reports = analyze(records)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.write_cea_reports(out, reports, fmt in ("csv", "both"), fmt in ("json", "both"))
    return reports
