"""Published Saudi Arabia CEA inputs and printed ladders, kept as strings so printed precision survives.

Each row: strategy id -> (IA, cost, IAR, ACER) as printed. Ladders list, per
elimination round, the printed (strategy, ICER) pairs in ladder order; ``None``
marks a strategy shown without an ICER because it ties in IA.
"""
import math
from importlib import resources

from covid_ocp.report import read_replay_csv

ROWS = {
    1: ("2.0679e6", "281.1135", "1.5793", "1.3594e-4"),
    2: ("1.6603e6", "1.4077e3", "1.5835", "8.4784e-4"),
    3: ("1.4423e6", "1.4063e3", "1.2325", "9.7498e-4"),
    4: ("1.8000e6", "2.8098e3", "1.2914", "0.0016"),
    5: ("2.2265e6", "1.6871e3", "1.5759", "7.5775e-4"),
    6: ("2.1128e6", "1.3487e3", "1.5239", "6.3834e-4"),
    7: ("2.1751e6", "1.7708e3", "1.4506", "8.1410e-4"),
    8: ("1.9253e6", "2.8104e3", "1.4524", "0.0015"),
    9: ("2.0684e6", "4.1495e3", "1.4077", "0.0020"),
    10: ("1.9809e6", "4.1019e3", "1.3350", "0.0021"),
    11: ("2.2265e6", "2.2464e3", "1.5641", "0.0010"),
    12: ("2.2265e6", "1.8726e3", "1.4706", "8.4107e-4"),
    13: ("2.1053e6", "5.0186e3", "1.4022", "0.0024"),
    14: ("2.2265e6", "2.0437e3", "1.4662", "9.1789e-4"),
}

LADDERS = {
    "A": [
        [(3, "9.7498e-4"), (2, "6.4220e-6"), (4, "0.0100"), (1, "-0.0004")],
        [(3, "9.7504e-4"), (2, "6.4220e-6"), (1, "-0.0028")],
        [(2, "8.4784e-4"), (1, "-0.0028")],
    ],
    "B": [
        [(8, "0.0015"), (10, "0.0232"), (9, "5.4400e-4"), (6, "-0.0631"), (7, "0.0068"), (5, "-0.0016")],
        [(8, "0.0015"), (9, "0.0094"), (6, "-0.0631"), (7, "0.0068"), (5, "-0.0016")],
        [(8, "0.0015"), (6, "-0.0078"), (7, "0.0068"), (5, "-0.0016")],
        [(8, "0.0015"), (6, "-0.0078"), (5, "0.0030")],
        [(8, "0.0015"), (6, "-0.0078")],
    ],
    "C": [
        [(13, "0.0024"), (11, "-0.0229"), (12, None)],
    ],
    "overall": [
        [(1, "1.3594e-4"), (6, "0.0238"), (14, "0.0061"), (12, None)],
        [(1, "1.3594e-4"), (14, "0.0111"), (12, None)],
        [(1, "1.3594e-4"), (12, "0.0100")],
    ],
}

ELIMINATIONS = {"A": [4, 3, 2], "B": [10, 9, 7, 5, 8], "C": [13, 11], "D": [], "overall": [6, 14, 12]}
WINNERS = {"A": 1, "B": 6, "C": 12, "D": 14, "overall": 1}

# The same division is printed 9.7498e-4 in one table and 9.7504e-4 in the next; accepted within 1e-5.
STRATEGY3_ABS_TOL = 1e-5


def published_csv():
    return resources.files("covid_ocp").joinpath("data/published_cea.csv")


def published_records():
    with resources.as_file(published_csv()) as path:
        return read_replay_csv(path)


def printed_tolerance(text: str) -> float:
    """Half a unit in the 4th significant figure, or in the last printed digit when that is coarser."""
    value = float(text)
    mantissa, _, exp = text.lower().partition("e")
    decimals = len(mantissa.partition(".")[2])
    quantum = 10.0 ** (-decimals + (int(exp) if exp else 0))
    fourth = 10.0 ** (math.floor(math.log10(abs(value))) - 3)
    return 0.5 * max(quantum, fourth)


def matches_printed(computed: float, text: str) -> bool:
    return abs(computed - float(text)) <= printed_tolerance(text)


def agrees(strategy_id: int, computed: float, text: str) -> bool:
    if strategy_id == 3:
        return abs(computed - float(text)) <= STRATEGY3_ABS_TOL
    return matches_printed(computed, text)
