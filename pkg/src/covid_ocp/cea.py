"""Cost-effectiveness analysis: IAR, ACER and ICER with iterative elimination.

Elimination proceeds in rounds. Each round ranks the surviving strategies by
infections averted (IA, ascending) and builds an ICER ladder: the first entry
is compared with the do-nothing origin, every later entry with the entry
immediately before it. Strategies that avert exactly as many infections as the
preceding ladder entry are not ICER-compared; they wait behind it (the costlier
of a tied group sits on the ladder, the cheaper ones are deferred). The entry
with the largest ICER is removed as dominated and the ladder is rebuilt from
scratch. Once every survivor averts the same number of infections, the
costliest is dropped (cost minimization) until one remains.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TieError, UndefinedMetricError
from .strategies import get_strategy

DOMINATED = "dominated"
COST_MINIMIZATION = "cost-minimization"


def iar(infections_averted: float, recoveries: float) -> float:
    """Infections averted per recovered individual; higher is better."""
    if recoveries <= 0:
        raise UndefinedMetricError(f"IAR undefined for recoveries={recoveries!r}")
    return infections_averted / recoveries


def acer(total_cost: float, infections_averted: float) -> float:
    """Cost per infection averted; lower is better."""
    if infections_averted <= 0:
        raise UndefinedMetricError(f"ACER undefined for infections_averted={infections_averted!r}")
    return total_cost / infections_averted


@dataclass(frozen=True)
class CeaRecord:
    strategy_id: int
    infections_averted: float
    total_cost: float
    recoveries: float

    @property
    def iar(self) -> float | None:
        try:
            return iar(self.infections_averted, self.recoveries)
        except UndefinedMetricError:
            return None

    @property
    def acer(self) -> float | None:
        try:
            return acer(self.total_cost, self.infections_averted)
        except UndefinedMetricError:
            return None

    @classmethod
    def from_summary(cls, summary) -> "CeaRecord":
        return cls(summary.strategy_id, summary.infections_averted, summary.total_cost, summary.recoveries)


@dataclass(frozen=True)
class LadderEntry:
    record: CeaRecord
    icer: float | None
    compared_to: int | None  # None: the do-nothing origin
    deferred: bool = False

    @property
    def strategy_id(self) -> int:
        return self.record.strategy_id


@dataclass(frozen=True)
class IcerStep:
    ladder: tuple[LadderEntry, ...]
    eliminated: int | None
    reason: str | None

    @property
    def icers(self) -> dict[int, float | None]:
        return {e.strategy_id: e.icer for e in self.ladder}

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(e.strategy_id for e in self.ladder)


@dataclass
class CeaReport:
    name: str
    records: tuple[CeaRecord, ...]
    rounds: list[IcerStep] = field(default_factory=list)
    winner: int | None = None

    @property
    def elimination_order(self) -> list[int]:
        return [r.eliminated for r in self.rounds if r.eliminated is not None]

    @property
    def iar_ranking(self) -> list[int]:
        """Strategy ids from highest to lowest IAR; undefined IARs last."""
        return _rank(self.records, lambda r: r.iar, reverse=True)

    @property
    def acer_ranking(self) -> list[int]:
        """Strategy ids from lowest to highest ACER; undefined ACERs last."""
        return _rank(self.records, lambda r: r.acer, reverse=False)


def _rank(records, key, reverse):
    defined = [r for r in records if key(r) is not None]
    undefined = [r for r in records if key(r) is None]
    defined.sort(key=lambda r: (-key(r) if reverse else key(r), r.strategy_id))
    return [r.strategy_id for r in defined] + sorted(r.strategy_id for r in undefined)


def _sort_key(record: CeaRecord):
    return (record.infections_averted, -record.total_cost, record.strategy_id)


def icer_ladder(records, ties: str = "defer") -> tuple[LadderEntry, ...]:
    """ICER of each record against its predecessor in ascending-IA order.

    ``ties="defer"`` marks records whose IA equals the preceding ladder entry
    as deferred (no ICER); ``ties="error"`` raises :class:`TieError` instead.
    """
    if ties not in ("defer", "error"):
        raise ValueError("ties must be 'defer' or 'error'")
    records = sorted(records, key=_sort_key)
    if not records:
        raise ValueError("icer_ladder needs at least one record")
    entries = []
    prev = None
    for rec in records:
        if prev is not None and rec.infections_averted == prev.infections_averted:
            if ties == "error":
                raise TieError(
                    f"strategies {prev.strategy_id} and {rec.strategy_id} avert the same number of infections"
                )
            entries.append(LadderEntry(rec, None, prev.strategy_id, deferred=True))
            continue
        base_ia = prev.infections_averted if prev else 0.0
        base_cost = prev.total_cost if prev else 0.0
        d_ia = rec.infections_averted - base_ia
        if d_ia == 0:
            raise UndefinedMetricError(f"strategy {rec.strategy_id} averts no infections relative to the origin")
        entries.append(LadderEntry(rec, (rec.total_cost - base_cost) / d_ia, prev.strategy_id if prev else None))
        prev = rec
    return tuple(entries)


def eliminate(records, name: str = "") -> CeaReport:
    """Run elimination rounds until a single strategy survives.

    Every round is recorded, including its full ladder, so that each input
    strategy appears exactly once: as the winner or as an eliminated entry.
    """
    records = tuple(records)
    if not records:
        raise ValueError("eliminate needs at least one record")
    ids = [r.strategy_id for r in records]
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate strategy ids in {ids}")
    report = CeaReport(name=name, records=records)
    survivors = list(records)
    while len(survivors) > 1:
        ladder = icer_ladder(survivors)
        compared = [e for e in ladder if not e.deferred]
        if len(compared) >= 2:
            victim = max(compared, key=lambda e: (e.icer, e.record.total_cost, e.strategy_id))
            reason = DOMINATED
        else:
            victim = max(ladder, key=lambda e: (e.record.total_cost, e.strategy_id))
            reason = COST_MINIMIZATION
        report.rounds.append(IcerStep(ladder, victim.strategy_id, reason))
        survivors = [r for r in survivors if r.strategy_id != victim.strategy_id]
    report.rounds.append(IcerStep(icer_ladder(survivors), None, None))
    report.winner = survivors[0].strategy_id
    return report


def cross_scenario_report(winners) -> CeaReport:
    """Elimination over the per-scenario winners to find the overall best strategy."""
    return eliminate(winners, name="overall")


def analyze(records) -> dict[str, CeaReport]:
    """Per-scenario elimination followed by the cross-scenario comparison.

    Returns reports keyed by scenario letter, plus ``"overall"`` when more
    than one scenario is represented.
    """
    groups: dict[str, list[CeaRecord]] = {}
    for rec in records:
        groups.setdefault(get_strategy(rec.strategy_id).scenario, []).append(rec)
    reports = {letter: eliminate(group, name=f"scenario {letter}") for letter, group in sorted(groups.items())}
    if len(reports) > 1:
        by_id = {r.strategy_id: r for r in records}
        reports["overall"] = cross_scenario_report([by_id[rep.winner] for rep in reports.values()])
    return reports
