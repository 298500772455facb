"""The fourteen intervention strategies, grouped into scenarios A-D by control count."""
from __future__ import annotations

from dataclasses import dataclass

from .model import ControlVec

__all__ = ["StrategyMask", "CONTROL_LABELS", "all_strategies", "get_strategy", "by_scenario", "apply_mask", "NO_CONTROL"]

CONTROL_LABELS = (
    "practising physical or social distancing protocols",
    "practising personal hygiene by cleaning contaminated surfaces with alcohol based detergents",
    "practising proper and safety measures by exposed, asymptomatic infected and symptomatic infected individuals",
    "fumigating schools in all levels of education, sports facilities, commercial areas and religious worship centres",
)

SCENARIOS = "ABCD"


@dataclass(frozen=True)
class StrategyMask:
    id: int
    scenario: str
    active: tuple[bool, bool, bool, bool]
    label: str

    @property
    def controls(self) -> tuple[int, ...]:
        """1-based indices of the active controls."""
        return tuple(i + 1 for i, on in enumerate(self.active) if on)

    @property
    def short_name(self) -> str:
        return ", ".join(f"u{i}" for i in self.controls) or "none"


# Scenario C covers only three of the four possible triples; (u1, u3, u4) is
# not part of the published set.
_ACTIVE_SETS = (
    (1,), (2,), (3,), (4,),
    (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
    (1, 2, 3), (1, 2, 4), (2, 3, 4),
    (1, 2, 3, 4),
)


def _build() -> tuple[StrategyMask, ...]:
    masks = []
    for sid, combo in enumerate(_ACTIVE_SETS, start=1):
        active = tuple(i + 1 in combo for i in range(4))
        label = " + ".join(CONTROL_LABELS[i - 1] for i in combo)
        if len(combo) == 1:
            label += " only"
        masks.append(StrategyMask(sid, SCENARIOS[len(combo) - 1], active, label))
    return tuple(masks)


_STRATEGIES = _build()
NO_CONTROL = StrategyMask(0, "-", (False, False, False, False), "no control")


def all_strategies() -> list[StrategyMask]:
    return list(_STRATEGIES)


def get_strategy(strategy_id: int) -> StrategyMask:
    if strategy_id == 0:
        return NO_CONTROL
    if not 1 <= strategy_id <= len(_STRATEGIES):
        raise KeyError(f"unknown strategy id {strategy_id}; expected 1..{len(_STRATEGIES)}")
    return _STRATEGIES[strategy_id - 1]


def by_scenario(letter: str) -> list[StrategyMask]:
    letter = letter.upper()
    if letter not in SCENARIOS:
        raise KeyError(f"unknown scenario {letter!r}; expected one of A, B, C, D")
    return [m for m in _STRATEGIES if m.scenario == letter]


def apply_mask(mask: StrategyMask, control) -> ControlVec:
    return ControlVec(*(u if on else 0.0 for u, on in zip(control, mask.active)))
