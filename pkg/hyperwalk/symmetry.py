"""
Rademacher and Walsh functions, hypercube reflection symmetries and the
independent-symmetry count eta.

A segmentation value p = 2^l (1 <= l <= d) splits the n modes into p
equal segments; the Rademacher function x(j, p) alternates +1/-1 from
segment to segment. A composite symmetry S(p) is identified by the set of
segmentations it combines; it is encoded canonically as a d-bit mask
(bit l-1 <-> segmentation 2^l). Because the reflections commute and are
self-inverse, composing two symmetries is the XOR of their masks and eta
is the GF(2) rank of the masks an initial state is invariant under.

In generalized mode (every hypercube vertex replaced by an m-mode
subgraph) all functions take the total mode count n = 2^d*m as their
modulus and segmentations are limited to p <= 2^d, so every segment is a
whole number of subgraphs.
"""
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .fock import ModeOccupation


# ---------------------------------------------------------------------------
# Symmetry sets
# ---------------------------------------------------------------------------

def _is_power_of_two(value: int) -> bool:
    return value >= 1 and value & (value - 1) == 0


@dataclass(frozen=True)
class SymmetrySet:
    """Non-empty set of segmentations p = (p_1, p_2, ...) naming S(p)."""

    segmentations: frozenset[int]

    def __post_init__(self):
        values = frozenset(int(p) for p in self.segmentations)
        if not values:
            raise ValueError("A symmetry set needs at least one segmentation.")
        bad = sorted(p for p in values if p < 2 or not _is_power_of_two(p))
        if bad:
            raise ValueError(f"Segmentation {bad[0]} is not a power of two >= 2.")
        object.__setattr__(self, "segmentations", values)

    @classmethod
    def of(cls, *values: int) -> "SymmetrySet":
        return cls(frozenset(values))

    @classmethod
    def parse(cls, text: str) -> "SymmetrySet":
        """Parse the CLI form ``"2,8"``."""
        try:
            return cls(frozenset(int(p) for p in str(text).split(",") if p.strip()))
        except ValueError as exc:
            raise ValueError(f"Invalid symmetry set '{text}': {exc}") from exc

    @classmethod
    def from_mask(cls, mask: int) -> "SymmetrySet":
        values = []
        level = 1
        while mask:
            if mask & 1:
                values.append(2 ** level)
            mask >>= 1
            level += 1
        return cls(frozenset(values))

    @property
    def mask(self) -> int:
        return sum(1 << (p.bit_length() - 2) for p in self.segmentations)

    @property
    def max_segmentation(self) -> int:
        return max(self.segmentations)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.segmentations))

    def __len__(self):
        return len(self.segmentations)

    def __iter__(self):
        return iter(self.sorted())

    def __lt__(self, other: "SymmetrySet"):
        return self.sorted() < other.sorted()

    def __str__(self):
        return ",".join(str(p) for p in self.sorted())

    def to_json(self) -> list[int]:
        return list(self.sorted())


def all_symmetry_sets(d: int) -> list[SymmetrySet]:
    """All 2^d - 1 composite symmetries of the d-dimensional hypercube."""
    if d < 1:
        raise ValueError(f"Dimension must be >= 1, got {d}.")
    return sorted(SymmetrySet.from_mask(mask) for mask in range(1, 2 ** d))


@dataclass(frozen=True)
class PartitionLabeling:
    """Walsh labels of all modes and the two subsets they induce."""

    labels: tuple[int, ...]
    subset_p: frozenset[int]
    subset_pbar: frozenset[int]


# ---------------------------------------------------------------------------
# Rademacher / Walsh functions
# ---------------------------------------------------------------------------

def _check_segmentation(p: int, n: int):
    if p < 2 or not _is_power_of_two(p) or p > n or n % p:
        raise ValueError(f"Segmentation p={p} is not permitted for n={n} modes.")


def rademacher(j: int, p: int, n: int) -> int:
    """x(j, p) = (-1)^floor(p(j-1)/n) for mode j in 1..n."""
    _check_segmentation(p, n)
    if not 1 <= j <= n:
        raise ValueError(f"Mode index {j} outside 1..{n}.")
    return -1 if (p * (j - 1) // n) % 2 else 1


def walsh(j: int, p: SymmetrySet, n: int) -> int:
    """A(j, p): product of Rademacher values over the segmentations in p."""
    value = 1
    for seg in p:
        value *= rademacher(j, seg, n)
    return value


def walsh_labels(p: SymmetrySet, n: int) -> np.ndarray:
    """Vector of A(j, p) for j = 1..n (index 0 holds mode 1)."""
    j = np.arange(n)
    labels = np.ones(n, dtype=int)
    for seg in p:
        _check_segmentation(seg, n)
        labels *= 1 - 2 * ((seg * j // n) % 2)
    return labels


def partition(p: SymmetrySet, n: int) -> PartitionLabeling:
    """Split the modes into P(p) (label -1) and its complement (label +1)."""
    labels = tuple(int(v) for v in walsh_labels(p, n))
    subset_p = frozenset(j for j, v in enumerate(labels, start=1) if v == -1)
    subset_pbar = frozenset(j for j, v in enumerate(labels, start=1) if v == 1)
    return PartitionLabeling(labels=labels, subset_p=subset_p, subset_pbar=subset_pbar)


# ---------------------------------------------------------------------------
# Symmetry operations
# ---------------------------------------------------------------------------

def mode_image(p: SymmetrySet, j: int, n: int) -> int:
    """S_d(p) j = j + sum_k x(j, p_k) n/p_k: the mode j is moved to."""
    image = j
    for seg in p:
        image += rademacher(j, seg, n) * (n // seg)
    return image


def mode_permutation(p: SymmetrySet, n: int) -> np.ndarray:
    """0-based index array ``perm`` with perm[j-1] = S_d(p) j - 1."""
    j = np.arange(n)
    image = j.copy()
    for seg in p:
        _check_segmentation(seg, n)
        image += (1 - 2 * ((seg * j // n) % 2)) * (n // seg)
    return image


def apply_symmetry(p: SymmetrySet, r: ModeOccupation) -> ModeOccupation:
    """[S(p) r]_j = r_{S_d(p) j}; self-inverse, so the image index suffices."""
    perm = mode_permutation(p, r.n)
    counts = np.asarray(r.counts)[perm]
    return ModeOccupation(tuple(int(c) for c in counts))


def _check_generalized(p: SymmetrySet, n: int, d: int, m: int):
    if d < 1 or m < 1:
        raise ValueError(f"Need d >= 1 and m >= 1, got d={d}, m={m}.")
    if n != (2 ** d) * m:
        raise ValueError(f"{n} modes do not match 2^{d} x {m} = {(2 ** d) * m}.")
    if p.max_segmentation > 2 ** d:
        raise ValueError(f"Segmentation {p.max_segmentation} exceeds 2^d = {2 ** d}.")


def generalized_apply(p: SymmetrySet, r: ModeOccupation, d: int, m: int) -> ModeOccupation:
    """Block transposition of whole m-mode subgraphs (exchange-operator form)."""
    _check_generalized(p, r.n, d, m)
    return apply_symmetry(p, r)


def is_invariant(p: SymmetrySet, r: ModeOccupation, d: int | None = None, m: int = 1) -> bool:
    if d is not None:
        return generalized_apply(p, r, d, m) == r
    return apply_symmetry(p, r) == r


def invariance_group(r: ModeOccupation, d: int, m: int = 1) -> list[SymmetrySet]:
    """All composite symmetries leaving r invariant, sorted."""
    if r.n != (2 ** d) * m:
        raise ValueError(f"{r.n} modes do not match 2^{d} x {m} = {(2 ** d) * m}.")
    return [p for p in all_symmetry_sets(d) if is_invariant(p, r, d, m)]


def gf2_rank(masks: Iterable[int]) -> int:
    """Rank of a set of bitmasks viewed as vectors over GF(2)."""
    basis: list[int] = []
    for mask in masks:
        for b in basis:
            mask = min(mask, mask ^ b)
        if mask:
            basis.append(mask)
    return len(basis)


def eta(r: ModeOccupation, d: int, m: int = 1) -> int:
    """Number of independent symmetries of r (0 when there are none)."""
    group = invariance_group(r, d, m)
    rank = gf2_rank(p.mask for p in group)
    # the invariant sets plus identity form a group
    if len(group) + 1 != 2 ** rank:
        raise RuntimeError(f"Invariance set of {r} is not closed under composition.")
    # reflections act without fixed points, so orbits have size 2^eta
    if r.particles % (2 ** rank):
        raise RuntimeError(f"N={r.particles} is not divisible by 2^{rank} for {r}.")
    return rank


def generators(group: Iterable[SymmetrySet]) -> list[SymmetrySet]:
    """A minimal generating set, taken greedily in sorted order."""
    chosen: list[SymmetrySet] = []
    for p in sorted(group):
        if gf2_rank([q.mask for q in chosen] + [p.mask]) > len(chosen):
            chosen.append(p)
    return chosen
