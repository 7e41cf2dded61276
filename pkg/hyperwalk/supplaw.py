"""
Suppression laws for hypercube interference.

If the initial state is invariant under a composite symmetry S(p), the
Walsh function A(j, p) splits the modes into two halves P(p) (label -1)
and its complement. A final state s is then suppressed

    bosons     when an odd number of particles lands on P(p)
    fermions   when the labels of the occupied modes do not sum to zero

The laws are sufficient, not necessary: ``verify`` fails a run only when a
predicted-suppressed state carries probability, never because some other
state happens to vanish.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np
from django.conf import settings
from django.db import models

from .fock import ModeOccupation, check_enumeration, count_finals
from .interference import Statistics, check_distribution, enumerate_finals, full_distribution
from .symmetry import SymmetrySet, eta as count_independent, invariance_group, is_invariant, walsh_labels
from .unitary import HypercubeSpec, build_unitary

logger = logging.getLogger(__name__)

UNSUPPRESSED = "unsuppressed"


class Verdict(models.TextChoices):
    SUPPRESSED = "suppressed", "Suppressed"
    ALLOWED = "allowed", "Allowed"


# ---------------------------------------------------------------------------
# Predictors
# ---------------------------------------------------------------------------

def _labels_for(p: SymmetrySet, final: ModeOccupation, n: int | None, d: int | None, m: int) -> np.ndarray:
    n = final.n if n is None else n
    if final.n != n:
        raise ValueError(f"Final state {final} has {final.n} modes, expected {n}.")
    if d is not None:
        if n != (2 ** d) * m:
            raise ValueError(f"{n} modes do not match 2^{d} x {m} = {(2 ** d) * m}.")
        if p.max_segmentation > 2 ** d:
            raise ValueError(f"Segmentation {p.max_segmentation} exceeds 2^d = {2 ** d}.")
    return walsh_labels(p, n)


def _boson_verdict(labels: np.ndarray, counts: np.ndarray) -> Verdict:
    on_p = int(counts[labels == -1].sum())
    return Verdict.SUPPRESSED if on_p % 2 else Verdict.ALLOWED


def _fermion_verdict(labels: np.ndarray, counts: np.ndarray) -> Verdict:
    return Verdict.SUPPRESSED if int(labels @ counts) != 0 else Verdict.ALLOWED


def predict_boson(p: SymmetrySet, final: ModeOccupation, n: int | None = None,
                  d: int | None = None, m: int = 1) -> Verdict:
    """Suppressed iff prod_j A(d_j(s), p) = -1."""
    labels = _labels_for(p, final, n, d, m)
    return _boson_verdict(labels, np.asarray(final.counts))


def predict_fermion(p: SymmetrySet, final: ModeOccupation, n: int | None = None,
                    d: int | None = None, m: int = 1) -> Verdict:
    """Suppressed iff sum_j A(d_j(s), p) != 0."""
    if not final.is_fermionic:
        raise ValueError(f"Fermionic prediction needs a 0/1 occupation, got {final}.")
    labels = _labels_for(p, final, n, d, m)
    return _fermion_verdict(labels, np.asarray(final.counts))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PredictionRecord:
    final: ModeOccupation
    verdicts: dict[SymmetrySet, Verdict] = field(default_factory=dict)

    @property
    def any_suppressed(self) -> bool:
        return any(v == Verdict.SUPPRESSED for v in self.verdicts.values())

    @property
    def suppressing_sets(self) -> list[SymmetrySet]:
        return sorted(p for p, v in self.verdicts.items() if v == Verdict.SUPPRESSED)

    @property
    def classification(self) -> str:
        """First suppressing symmetry set in sorted order, e.g. "2,8"."""
        suppressing = self.suppressing_sets
        return str(suppressing[0]) if suppressing else UNSUPPRESSED


def check_law_statistics(initial: ModeOccupation, statistics: Statistics) -> Statistics:
    """Reject statistics the laws do not cover and fermionic states violating Pauli."""
    statistics = Statistics(statistics)
    if statistics == Statistics.DISTINGUISHABLE:
        raise ValueError("Suppression laws apply to bosons and fermions only.")
    if statistics == Statistics.FERMION and not initial.is_fermionic:
        raise ValueError(f"Pauli violation: initial state {initial} has a multiply occupied mode.")
    return statistics


def resolve_symmetries(initial: ModeOccupation, spec: HypercubeSpec,
                       symmetries: list[SymmetrySet] | None = None) -> list[SymmetrySet]:
    """The invariance group of ``initial``, or the named sets after checking invariance."""
    if symmetries is None:
        return invariance_group(initial, spec.d, spec.m)
    for p in symmetries:
        if not is_invariant(p, initial, spec.d, spec.m):
            raise ValueError(f"Initial state {initial} is not invariant under S({p}).")
    return sorted(set(symmetries))


def classify(initial: ModeOccupation, spec: HypercubeSpec, statistics: Statistics,
             symmetries: list[SymmetrySet] | None = None) -> Iterator[PredictionRecord]:
    """Verdicts for every final state under every invariance of ``initial``.

    All group members are evaluated, not just generators: composites
    suppress states their factors individually allow. ``symmetries``
    restricts the verdicts to the named sets.
    """
    statistics = check_law_statistics(initial, statistics)
    group = resolve_symmetries(initial, spec, symmetries)
    count_independent(initial, spec.d, spec.m)
    labels = {p: walsh_labels(p, initial.n) for p in group}
    verdict = _fermion_verdict if statistics == Statistics.FERMION else _boson_verdict
    for final in enumerate_finals(initial, statistics):
        counts = np.asarray(final.counts)
        yield PredictionRecord(final=final, verdicts={p: verdict(lab, counts) for p, lab in labels.items()})


# ---------------------------------------------------------------------------
# Suppression ratios
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioReport:
    statistics: Statistics
    eta: int
    particles: int
    modes: int | None
    exact_suppressed: int | None = None
    exact_total: int | None = None
    approx_ratio: float | None = None
    approx_limit: float | None = None
    error: str = ""

    @property
    def exact_ratio(self) -> Fraction | None:
        if not self.exact_total:
            return None
        return Fraction(self.exact_suppressed, self.exact_total)

    def to_dict(self) -> dict:
        exact = self.exact_ratio
        return {
            "statistics": Statistics(self.statistics).value,
            "eta": self.eta,
            "particles": self.particles,
            "modes": self.modes,
            "exact_suppressed": self.exact_suppressed,
            "exact_total": self.exact_total,
            "exact_ratio": None if exact is None else float(exact),
            "approx_ratio": self.approx_ratio,
            "approx_limit": self.approx_limit,
            "error": self.error,
        }


def _check_divisibility(eta: int, particles: int):
    if eta < 0:
        raise ValueError(f"eta must be >= 0, got {eta}.")
    if particles % (2 ** eta):
        raise ValueError(f"N={particles} is not a multiple of 2^eta = {2 ** eta}.")


def fermion_ratio_exact(eta: int, particles: int, modes: int) -> Fraction:
    """1 - C(n/2^eta, N/2^eta)^(2^eta) / C(n, N)."""
    _check_divisibility(eta, particles)
    classes = 2 ** eta
    if modes % classes:
        raise ValueError(f"n={modes} is not a multiple of 2^eta = {classes}.")
    if particles > modes:
        raise ValueError(f"{particles} fermions do not fit into {modes} modes.")
    balanced = math.comb(modes // classes, particles // classes) ** classes
    return 1 - Fraction(balanced, math.comb(modes, particles))


def fermion_ratio_limit(eta: int, particles: int) -> float:
    """n >> N limit: 1 - N! / (2^(eta N) [(N/2^eta)!]^(2^eta))."""
    _check_divisibility(eta, particles)
    classes = 2 ** eta
    allowed = Fraction(math.factorial(particles),
                       2 ** (eta * particles) * math.factorial(particles // classes) ** classes)
    return float(1 - allowed)


def ratio_approx(eta: int, statistics: Statistics, particles: int | None = None,
                 modes: int | None = None) -> float:
    """Predicted suppressed fraction.

    Bosons: 1 - 2^-eta. Fermions: the exact binomial form when ``modes``
    is given, otherwise its n >> N limit.
    """
    statistics = Statistics(statistics)
    if statistics == Statistics.BOSON:
        if eta < 0:
            raise ValueError(f"eta must be >= 0, got {eta}.")
        if particles is not None:
            _check_divisibility(eta, particles)
        return 1.0 - 2.0 ** -eta
    if statistics == Statistics.FERMION:
        if particles is None:
            raise ValueError("The fermionic ratio needs the particle number N.")
        if modes is None:
            return fermion_ratio_limit(eta, particles)
        return float(fermion_ratio_exact(eta, particles, modes))
    raise ValueError("Suppression ratios are defined for bosons and fermions only.")


def ratio_exact(initial: ModeOccupation, spec: HypercubeSpec, statistics: Statistics) -> RatioReport:
    """Count predicted-suppressed final states by full classification."""
    statistics = check_law_statistics(initial, statistics)
    # parity counting only: no permanent bound applies
    check_enumeration(count_finals(initial.n, initial.particles, statistics == Statistics.FERMION))
    independent = count_independent(initial, spec.d, spec.m)
    suppressed = total = 0
    for record in classify(initial, spec, statistics):
        total += 1
        suppressed += record.any_suppressed
    particles = initial.particles
    if statistics == Statistics.FERMION:
        approx = ratio_approx(independent, statistics, particles, initial.n)
        limit = fermion_ratio_limit(independent, particles)
    else:
        approx = ratio_approx(independent, statistics)
        limit = None
    report = RatioReport(
        statistics=statistics, eta=independent, particles=particles, modes=initial.n,
        exact_suppressed=suppressed, exact_total=total, approx_ratio=approx, approx_limit=limit,
    )
    logger.info("Suppression ratio for %s: %d/%d (approx %.6f)", initial.counts, suppressed, total, approx)
    return report


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    initial: ModeOccupation
    statistics: Statistics
    tolerance: float
    eta: int
    symmetry_sets: list[SymmetrySet]
    predicted_suppressed_count: int
    total_finals: int
    max_predicted_probability: float | None
    extra_zero_count: int
    violations: list[tuple[ModeOccupation, float]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def law_applicable(self) -> bool:
        return bool(self.symmetry_sets)

    def to_dict(self) -> dict:
        return {
            "initial": self.initial.to_json(),
            "eta": self.eta,
            "symmetry_sets": [p.to_json() for p in self.symmetry_sets],
            "predicted_suppressed_count": self.predicted_suppressed_count,
            "total_finals": self.total_finals,
            "max_predicted_probability": self.max_predicted_probability,
            "pass": self.passed,
            "extra_zero_count": self.extra_zero_count,
        }


def verify(initial: ModeOccupation, spec: HypercubeSpec, statistics: Statistics,
           tolerance: float | None = None, workers: int | None = None,
           unitary: np.ndarray | None = None,
           symmetries: list[SymmetrySet] | None = None) -> VerificationReport:
    """Compute every final-state probability and check the predictions.

    ``symmetries`` restricts the check to the named invariances.
    """
    statistics = check_law_statistics(initial, statistics)
    tolerance = settings.HYPERWALK_TOLERANCE if tolerance is None else tolerance
    if initial.n != spec.n:
        raise ValueError(f"Initial state has {initial.n} modes, the hypercube has {spec.n}.")
    check_distribution(initial, statistics)
    group = resolve_symmetries(initial, spec, symmetries)
    independent = count_independent(initial, spec.d, spec.m)
    unitary = build_unitary(spec) if unitary is None else unitary

    predicted = total = extra_zero = 0
    max_predicted = None
    violations = []
    records = classify(initial, spec, statistics, group)
    for record, (final, prob) in zip(records, full_distribution(unitary, initial, statistics, workers)):
        total += 1
        if record.any_suppressed:
            predicted += 1
            max_predicted = prob if max_predicted is None else max(max_predicted, prob)
            if prob >= tolerance:
                violations.append((final, prob))
        elif prob < tolerance:
            extra_zero += 1

    if violations:
        logger.warning("%d predicted-suppressed states exceed tolerance %.1e for %s",
                       len(violations), tolerance, initial.counts)
    return VerificationReport(
        initial=initial, statistics=statistics, tolerance=tolerance, eta=independent,
        symmetry_sets=group, predicted_suppressed_count=predicted, total_finals=total,
        max_predicted_probability=max_predicted, extra_zero_count=extra_zero, violations=violations,
    )
