import pytest

from covid_ocp.model import ControlVec
from covid_ocp.strategies import NO_CONTROL, all_strategies, apply_mask, by_scenario, get_strategy

GOLDEN = [
    (1, "A", (1,)), (2, "A", (2,)), (3, "A", (3,)), (4, "A", (4,)),
    (5, "B", (1, 2)), (6, "B", (1, 3)), (7, "B", (1, 4)), (8, "B", (2, 3)), (9, "B", (2, 4)), (10, "B", (3, 4)),
    (11, "C", (1, 2, 3)), (12, "C", (1, 2, 4)), (13, "C", (2, 3, 4)),
    (14, "D", (1, 2, 3, 4)),
]


def test_golden_list():
    assert [(m.id, m.scenario, m.controls) for m in all_strategies()] == GOLDEN


def test_scenario_sizes_match_active_count():
    sizes = {"A": 1, "B": 2, "C": 3, "D": 4}
    for m in all_strategies():
        assert sum(m.active) == sizes[m.scenario]
    assert len({m.active for m in all_strategies()}) == 14


def test_lookup_examples():
    assert get_strategy(6).controls == (1, 3) and get_strategy(6).scenario == "B"
    assert get_strategy(13).controls == (2, 3, 4) and get_strategy(13).scenario == "C"
    assert len(by_scenario("B")) == 6
    assert get_strategy(0) is NO_CONTROL


def test_unknown_id():
    with pytest.raises(KeyError):
        get_strategy(15)


def test_labels():
    assert get_strategy(6).short_name == "u1, u3"
    assert get_strategy(1).label.endswith(" only")
    assert " + " in get_strategy(14).label


@pytest.mark.parametrize("sid,u,expected", [
    (1, (0.5, 0.5, 0.5, 0.5), (0.5, 0, 0, 0)),
    (14, (0.1, 0.2, 0.3, 0.4), (0.1, 0.2, 0.3, 0.4)),
    (10, (0.9, 0.9, 0.2, 0.3), (0, 0, 0.2, 0.3)),
])
def test_apply_mask(sid, u, expected):
    out = apply_mask(get_strategy(sid), u)
    assert isinstance(out, ControlVec)
    assert out == expected
