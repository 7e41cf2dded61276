"""
Frozen reproduction of the d=3, N=8 bosonic interference landscape.

Three symmetric initial states on the 8-mode hypercube are compared over
all 6435 final states. Final states are grouped by which initial state
first predicts their suppression:

    a  suppressed for r_a (and therefore also for r_b and r_c)
    b  suppressed for r_b, not already in a
    c  suppressed for r_c, not already in a or b
    d  no prediction for any of the three

States, dimension and precedence are fixed here and are deliberately not
derived from command-line input.
"""
from dataclasses import dataclass

from .fock import ModeOccupation
from .interference import Statistics, full_distribution
from .supplaw import Verdict, predict_boson
from .symmetry import invariance_group
from .unitary import build_hc_tensor

FIGURE4_D = 3

R_A = ModeOccupation((3, 0, 1, 0, 0, 3, 0, 1))
R_B = ModeOccupation((0, 0, 2, 2, 0, 0, 2, 2))
R_C = ModeOccupation((1, 1, 1, 1, 1, 1, 1, 1))

INITIAL_STATES = {"a": R_A, "b": R_B, "c": R_C}
SET_LABELS = ("a", "b", "c", "d")


def _groups():
    return {label: invariance_group(state, FIGURE4_D) for label, state in INITIAL_STATES.items()}


def figure4_set(final: ModeOccupation, groups=None) -> str:
    groups = _groups() if groups is None else groups
    for label in ("a", "b", "c"):
        if any(predict_boson(p, final) == Verdict.SUPPRESSED for p in groups[label]):
            return label
    return "d"


@dataclass(frozen=True)
class Figure4Row:
    final: ModeOccupation
    set_label: str
    probabilities: dict[str, float]


def figure4_rows(workers: int | None = None) -> list[Figure4Row]:
    """One row per final state with P(r_a), P(r_b), P(r_c), in enumeration order."""
    unitary = build_hc_tensor(FIGURE4_D)
    groups = _groups()
    columns = {
        label: list(full_distribution(unitary, state, Statistics.BOSON, workers))
        for label, state in INITIAL_STATES.items()
    }
    rows = []
    for index, (final, _) in enumerate(columns["a"]):
        rows.append(Figure4Row(
            final=final,
            set_label=figure4_set(final, groups),
            probabilities={label: columns[label][index][1] for label in INITIAL_STATES},
        ))
    return rows


def figure4_summary(rows: list[Figure4Row]) -> list[dict]:
    """Set sizes and the largest probability each initial state puts in each set."""
    summary = []
    for set_label in SET_LABELS:
        members = [row for row in rows if row.set_label == set_label]
        entry = {"set": set_label, "size": len(members)}
        for label in INITIAL_STATES:
            entry[f"max_p_{label}"] = max((row.probabilities[label] for row in members), default=0.0)
        summary.append(entry)
    return summary
