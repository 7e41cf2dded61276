"""
Fock-state representations and final-state enumeration.

A many-particle state over ``n`` modes is either a mode occupation list
(how many particles sit in each mode) or a mode assignment list (the mode
of each particle, sorted). Mode numbers are 1-based everywhere a caller
can see them.

Enumeration order is lexicographically descending on occupation lists,
e.g. (2,0), (1,1), (0,2). This is the order in which
``itertools.combinations_with_replacement`` produces sorted assignments,
so the streams are lazy and need O(n) memory.

Usage:
    from hyperwalk.fock import ModeOccupation, enumerate_boson_finals
    r = ModeOccupation.parse("3,0,1,0,0,3,0,1")
    for s in enumerate_boson_finals(r.n, r.particles):
        ...
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from django.conf import settings

logger = logging.getLogger(__name__)


class ResourceBoundError(RuntimeError):
    """A computation was refused because it exceeds a configured bound."""


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModeOccupation:
    """Occupation list r = (r_1, ..., r_n) of a Fock state."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if not counts:
            raise ValueError("An occupation list needs at least one mode.")
        if any(c < 0 for c in counts):
            raise ValueError(f"Negative occupation in {counts}.")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def parse(cls, text: str) -> "ModeOccupation":
        """Parse the comma-separated CSV form, e.g. ``"3,0,1,0"``."""
        parts = [p.strip() for p in str(text).split(",") if p.strip()]
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"Invalid occupation list '{text}': {exc}") from exc

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def particles(self) -> int:
        """Particle content N."""
        return sum(self.counts)

    @property
    def is_fermionic(self) -> bool:
        """True when every mode holds at most one particle."""
        return all(c <= 1 for c in self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, index):
        return self.counts[index]

    def __iter__(self):
        return iter(self.counts)

    def __str__(self):
        return ",".join(str(c) for c in self.counts)

    def to_json(self) -> list[int]:
        return list(self.counts)


@dataclass(frozen=True)
class ModeAssignment:
    """Sorted mode assignment list d(r); entries are 1-based mode numbers."""

    modes: tuple[int, ...]

    def __post_init__(self):
        modes = tuple(int(m) for m in self.modes)
        if any(a > b for a, b in zip(modes, modes[1:])):
            raise ValueError(f"Mode assignment {modes} is not sorted.")
        if any(m < 1 for m in modes):
            raise ValueError(f"Mode numbers start at 1, got {modes}.")
        object.__setattr__(self, "modes", modes)

    def __len__(self):
        return len(self.modes)

    def __iter__(self):
        return iter(self.modes)


# ---------------------------------------------------------------------------
# Conversions
# ---------------------------------------------------------------------------

def to_assignment(occ: ModeOccupation) -> ModeAssignment:
    """Mode assignment list of an occupation, e.g. (2,0,1) -> (1,1,3)."""
    modes = []
    for mode, count in enumerate(occ.counts, start=1):
        modes.extend([mode] * count)
    return ModeAssignment(tuple(modes))


def from_assignment(ma: ModeAssignment | tuple[int, ...], n: int) -> ModeOccupation:
    """Occupation list over ``n`` modes from a (possibly unsorted) assignment."""
    modes = tuple(ma)
    out_of_range = [m for m in modes if not 1 <= m <= n]
    if out_of_range:
        raise ValueError(f"Mode index {out_of_range[0]} outside 1..{n}.")
    tally = Counter(modes)
    return ModeOccupation(tuple(tally.get(mode, 0) for mode in range(1, n + 1)))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def count_boson_finals(n: int, N: int) -> int:
    """C(N+n-1, N): multisets of size N over n modes."""
    return math.comb(N + n - 1, N)


def count_fermion_finals(n: int, N: int) -> int:
    """C(n, N): 0/1 occupations with N ones."""
    return math.comb(n, N)


def enumerate_boson_finals(n: int, N: int) -> Iterator[ModeOccupation]:
    """Yield every bosonic final state of N particles over n modes once."""
    if n < 1 or N < 0:
        raise ValueError(f"Need n >= 1 and N >= 0, got n={n}, N={N}.")
    for modes in combinations_with_replacement(range(n), N):
        counts = [0] * n
        for m in modes:
            counts[m] += 1
        yield ModeOccupation(tuple(counts))


def enumerate_fermion_finals(n: int, N: int) -> Iterator[ModeOccupation]:
    """Yield every 0/1 occupation with exactly N particles over n modes."""
    if n < 1 or N < 0:
        raise ValueError(f"Need n >= 1 and N >= 0, got n={n}, N={N}.")
    if N > n:
        raise ValueError(f"Pauli principle: {N} fermions do not fit into {n} modes.")
    for modes in combinations(range(n), N):
        counts = [0] * n
        for m in modes:
            counts[m] = 1
        yield ModeOccupation(tuple(counts))


def count_finals(n: int, N: int, fermionic: bool) -> int:
    return count_fermion_finals(n, N) if fermionic else count_boson_finals(n, N)


def check_enumeration(count: int, label: str = "final states"):
    """Warn above HYPERWALK_FINALS_WARN, refuse above HYPERWALK_MAX_FINALS."""
    if count > settings.HYPERWALK_MAX_FINALS:
        raise ResourceBoundError(
            f"{count} {label} exceed the enumeration bound of "
            f"{settings.HYPERWALK_MAX_FINALS} (HYPERWALK_MAX_FINALS)."
        )
    if count > settings.HYPERWALK_FINALS_WARN:
        logger.warning("Enumerating %d %s; this will take a while.", count, label)
