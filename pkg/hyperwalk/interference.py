"""
Exact many-body transition probabilities.

For an initial occupation r and a final occupation s of the same n modes,
the N x N matrix M collects the unitary entries U[d_j(r), d_k(s)]:

    boson            |perm M|^2 / (prod r_k! prod s_k!)
    fermion          |det M|^2
    distinguishable  perm(|M|^2) / prod s_k!

``probability_oracle`` evaluates the coherent sum over many-particle paths
term by term and exists to cross-check the closed forms.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import permutations
from typing import Iterator

import numpy as np
from django.conf import settings
from django.db import models
from scipy.special import gammaln
from sympy.utilities.iterables import multiset_permutations

from .fock import (
    ModeOccupation,
    ResourceBoundError,
    check_enumeration,
    count_finals,
    enumerate_boson_finals,
    enumerate_fermion_finals,
    to_assignment,
)

logger = logging.getLogger(__name__)

# Ryser subsets evaluated per vectorized step
RYSER_CHUNK = 1 << 14

# Above this particle count factorial prefactors are accumulated in log space
EXACT_FACTORIAL_MAX = 20

PROBABILITY_SLACK = 1e-9


class Statistics(models.TextChoices):
    BOSON = "boson", "Boson"
    FERMION = "fermion", "Fermion"
    DISTINGUISHABLE = "dist", "Distinguishable"


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TransitionProblem:
    """One transition r -> s through the unitary U under given statistics."""

    unitary: np.ndarray
    initial: ModeOccupation
    final: ModeOccupation
    statistics: Statistics

    def __post_init__(self):
        mat = np.asarray(self.unitary, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"Unitary must be square, got shape {mat.shape}.")
        object.__setattr__(self, "unitary", mat)
        object.__setattr__(self, "statistics", Statistics(self.statistics))

        n = mat.shape[0]
        if self.initial.n != n or self.final.n != n:
            raise ValueError(
                f"State lengths {self.initial.n}/{self.final.n} do not match "
                f"the {n}-mode unitary."
            )
        if self.initial.particles != self.final.particles:
            raise ValueError(
                f"Particle number mismatch: initial has {self.initial.particles}, "
                f"final has {self.final.particles}."
            )
        if self.statistics == Statistics.FERMION:
            for label, occ in (("initial", self.initial), ("final", self.final)):
                if not occ.is_fermionic:
                    raise ValueError(f"Pauli violation: {label} state {occ} has a multiply occupied mode.")

    @property
    def particles(self) -> int:
        return self.initial.particles


@dataclass(frozen=True, eq=False)
class Submatrix:
    """M[j][k] = U[rows[j]][cols[k]]; rows/cols are 1-based mode numbers."""

    entries: np.ndarray
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def build_submatrix(tp: TransitionProblem) -> Submatrix:
    rows = to_assignment(tp.initial).modes
    cols = to_assignment(tp.final).modes
    row_idx = np.asarray(rows, dtype=int) - 1
    col_idx = np.asarray(cols, dtype=int) - 1
    entries = tp.unitary[np.ix_(row_idx, col_idx)]
    return Submatrix(entries=entries, rows=rows, cols=cols)


# ---------------------------------------------------------------------------
# Matrix functions
# ---------------------------------------------------------------------------

def _as_square(mat) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {mat.shape}.")
    return mat


def permanent(mat, bound: int | None = None) -> complex:
    """Ryser's formula with Gray-code subset order, O(2^N N).

    perm A = (-1)^N sum_S (-1)^|S| prod_i sum_{j in S} a_ij

    Consecutive Gray codes differ in one column, so row sums are updated
    by adding or removing that column; chunks of subsets are handled with
    a cumulative sum.
    """
    mat = _as_square(mat)
    size = mat.shape[0]
    bound = settings.HYPERWALK_MAX_N if bound is None else bound
    if size > bound:
        raise ResourceBoundError(
            f"Permanent of a {size}x{size} matrix exceeds the bound N <= {bound} (HYPERWALK_MAX_N)."
        )
    if size == 0:
        return 1 + 0j

    total = 0j
    row_sums = np.zeros(size, dtype=complex)
    last = 1 << size
    for start in range(1, last, RYSER_CHUNK):
        k = np.arange(start, min(start + RYSER_CHUNK, last), dtype=np.int64)
        gray = k ^ (k >> 1)
        flipped = k & -k
        column = np.bitwise_count(flipped - 1).astype(np.intp)
        step = np.where(gray & flipped, 1.0, -1.0)
        sums = row_sums + np.cumsum(mat[:, column].T * step[:, None], axis=0)
        row_sums = sums[-1]
        parity = np.where(np.bitwise_count(gray) % 2, -1.0, 1.0)
        total += np.sum(parity * np.prod(sums, axis=1))
    return complex((-1) ** size * total)


def permanent_naive(mat) -> complex:
    """Sum over all N! permutations; only for cross-checks."""
    mat = _as_square(mat)
    size = mat.shape[0]
    if size > settings.HYPERWALK_ORACLE_MAX_N:
        raise ResourceBoundError(
            f"Naive permanent of size {size} exceeds N <= {settings.HYPERWALK_ORACLE_MAX_N}."
        )
    rows = range(size)
    return complex(sum(math.prod(mat[i, sigma[i]] for i in rows) for sigma in permutations(rows)))


def determinant(mat) -> complex:
    """LU with partial pivoting (LAPACK getrf via numpy)."""
    mat = _as_square(mat)
    if mat.shape[0] == 0:
        return 1 + 0j
    return complex(np.linalg.det(mat))


def log_occupation_weight(occ: ModeOccupation) -> float:
    return float(np.sum(gammaln(np.asarray(occ.counts, dtype=float) + 1.0)))


def occupation_weight(occ: ModeOccupation) -> float:
    """prod_k r_k!"""
    if occ.particles <= EXACT_FACTORIAL_MAX:
        return float(math.prod(math.factorial(c) for c in occ.counts))
    return math.exp(log_occupation_weight(occ))


def _normalized(magnitude: float, tp: TransitionProblem, include_initial: bool) -> float:
    """magnitude / (prod s! [* prod r!]), in log space for large N."""
    if magnitude == 0.0:
        return 0.0
    if tp.particles <= EXACT_FACTORIAL_MAX:
        weight = occupation_weight(tp.final)
        if include_initial:
            weight *= occupation_weight(tp.initial)
        return magnitude / weight
    log_weight = log_occupation_weight(tp.final)
    if include_initial:
        log_weight += log_occupation_weight(tp.initial)
    return math.exp(math.log(magnitude) - log_weight)


def _check_probability(value: float, tp: TransitionProblem) -> float:
    if not -PROBABILITY_SLACK <= value <= 1 + PROBABILITY_SLACK:
        raise RuntimeError(f"Probability {value} out of range for {tp.initial} -> {tp.final}.")
    return value


def probability(tp: TransitionProblem, bound: int | None = None) -> float:
    mat = build_submatrix(tp).entries
    if tp.statistics == Statistics.FERMION:
        value = abs(determinant(mat)) ** 2
    elif tp.statistics == Statistics.BOSON:
        value = _normalized(abs(permanent(mat, bound)) ** 2, tp, include_initial=True)
    else:
        value = _normalized(permanent(np.abs(mat) ** 2, bound).real, tp, include_initial=False)
    return _check_probability(value, tp)


def _inversion_sign(values) -> int:
    inversions = sum(1 for a in range(len(values)) for b in range(a + 1, len(values)) if values[a] > values[b])
    return -1 if inversions % 2 else 1


def probability_oracle(tp: TransitionProblem) -> float:
    """Coherent sum over distinct many-particle paths, evaluated literally.

    Paths are the distinct orderings of the final assignment list d(s).
    Bosons and fermions carry the prefactor prod s! / prod r!; for
    distinguishable particles the paths add incoherently.
    """
    guard = settings.HYPERWALK_ORACLE_MAX_N
    if tp.particles > guard:
        raise ResourceBoundError(
            f"Path-sum oracle with N={tp.particles} exceeds N <= {guard} (HYPERWALK_ORACLE_MAX_N)."
        )
    sub = build_submatrix(tp)
    rows = [m - 1 for m in sub.rows]
    fermion = tp.statistics == Statistics.FERMION

    amplitude = 0j
    incoherent = 0.0
    for path in multiset_permutations([m - 1 for m in sub.cols]):
        term = complex(math.prod(tp.unitary[row, col] for row, col in zip(rows, path)))
        if fermion:
            term *= _inversion_sign(path)
        amplitude += term
        incoherent += abs(term) ** 2

    if tp.statistics == Statistics.DISTINGUISHABLE:
        value = incoherent
    else:
        value = abs(amplitude) ** 2 * occupation_weight(tp.final) / occupation_weight(tp.initial)
    return _check_probability(value, tp)


# ---------------------------------------------------------------------------
# Full distributions
# ---------------------------------------------------------------------------

def enumerate_finals(initial: ModeOccupation, statistics: Statistics) -> Iterator[ModeOccupation]:
    if Statistics(statistics) == Statistics.FERMION:
        return enumerate_fermion_finals(initial.n, initial.particles)
    return enumerate_boson_finals(initial.n, initial.particles)


def check_distribution(initial: ModeOccupation, statistics: Statistics) -> int:
    """Refuse infeasible sweeps before any work is done; returns the final count."""
    statistics = Statistics(statistics)
    fermionic = statistics == Statistics.FERMION
    if fermionic and initial.particles > initial.n:
        raise ValueError(f"Pauli principle: {initial.particles} fermions do not fit into {initial.n} modes.")
    if not fermionic and initial.particles > settings.HYPERWALK_MAX_N:
        raise ResourceBoundError(
            f"N={initial.particles} exceeds the permanent bound N <= {settings.HYPERWALK_MAX_N} "
            f"(HYPERWALK_MAX_N)."
        )
    count = count_finals(initial.n, initial.particles, fermionic)
    check_enumeration(count)
    return count


def _evaluate(unitary, initial, statistics, bound, counts):
    final = ModeOccupation(counts)
    return probability(TransitionProblem(unitary, initial, final, statistics), bound)


def full_distribution(
    unitary,
    initial: ModeOccupation,
    statistics: Statistics,
    workers: int | None = None,
) -> Iterator[tuple[ModeOccupation, float]]:
    """Yield (final, probability) for every final state in enumeration order.

    With more than one worker, chunks of final states are evaluated in a
    process pool; results are merged back in enumeration order.
    """
    statistics = Statistics(statistics)
    unitary = np.asarray(unitary, dtype=complex)
    if unitary.shape != (initial.n, initial.n):
        raise ValueError(f"Unitary shape {unitary.shape} does not match {initial.n} modes.")
    count = check_distribution(initial, statistics)
    workers = settings.HYPERWALK_WORKERS if workers is None else workers
    bound = settings.HYPERWALK_MAX_N
    logger.info("Evaluating %d %s final states for initial state %s", count, statistics.value, initial.counts)

    if workers <= 1:
        for final in enumerate_finals(initial, statistics):
            yield final, _evaluate(unitary, initial, statistics, bound, final.counts)
        return

    task = partial(_evaluate, unitary, initial, statistics, bound)
    chunksize = max(1, min(1024, count // (4 * workers) or 1))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        finals = enumerate_finals(initial, statistics)
        values = pool.map(task, (s.counts for s in enumerate_finals(initial, statistics)), chunksize=chunksize)
        for final, value in zip(finals, values):
            yield final, value
