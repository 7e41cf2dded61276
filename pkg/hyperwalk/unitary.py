"""
Hypercube transfer unitaries.

Three independent constructions of the same matrix are provided so that
each can check the others:

  build_hc_tensor           (1/sqrt(n)) [[1, i], [i, 1]]^(tensor d)
  element_closed_form       one entry from the Rademacher phase formula
  build_hamiltonian_oracle  exp(i kappa t A_d), evaluated in the Hadamard
                            eigenbasis of the hypercube adjacency matrix

The generalized hypercube replaces every vertex by an m-mode subgraph
with subunitary A. Modes are ordered subgraph-fast: mode j belongs to
hypercube vertex ceil(j/m) and occupies slot f(j, m) = 1 + (j-1) mod m.

Matrices are plain complex128 numpy arrays. The JSON schema for files is
{"m": int, "re": [[...]], "im": [[...]]} (row-major), with an extra "d"
for exported hypercube unitaries.
"""
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from django.conf import settings
from scipy.linalg import hadamard
from scipy.stats import unitary_group

from .fock import ResourceBoundError
from .symmetry import SymmetrySet, rademacher

logger = logging.getLogger(__name__)

COUPLER = np.array([[1, 1j], [1j, 1]], dtype=complex)

UNITARY_TOL = 1e-10
SUBUNITARY_TOL = 1e-8


# ---------------------------------------------------------------------------
# Validation helpers
# ---------------------------------------------------------------------------

def unitarity_residual(mat: np.ndarray) -> float:
    """max |U^dagger U - I| over all entries."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {mat.shape}.")
    gram = mat.conj().T @ mat
    return float(np.max(np.abs(gram - np.eye(mat.shape[0]))))


def is_unitary(mat: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return unitarity_residual(mat) < tol


def _check_dimension(d: int):
    if d < 1:
        raise ValueError(f"Hypercube dimension must be >= 1, got {d}.")
    bound = settings.HYPERWALK_MAX_DIMENSION
    if d > bound:
        raise ResourceBoundError(
            f"d={d} needs a dense {2 ** d}x{2 ** d} matrix; the bound is d <= {bound} "
            f"(HYPERWALK_MAX_DIMENSION)."
        )


# ---------------------------------------------------------------------------
# Hypercube specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HypercubeSpec:
    """A (generalized) hypercube: dimension d, subgraph size m, subunitary A."""

    d: int
    m: int = 1
    subunitary: np.ndarray | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"Hypercube dimension must be >= 1, got {self.d}.")
        if self.m < 1:
            raise ValueError(f"Subgraph size must be >= 1, got {self.m}.")
        if self.m == 1:
            if self.subunitary is not None and not np.allclose(self.subunitary, np.eye(1)):
                raise ValueError("A bare hypercube (m=1) takes no subunitary.")
            object.__setattr__(self, "subunitary", None)
            return
        if self.subunitary is None:
            raise ValueError(f"Subgraph size m={self.m} needs an {self.m}x{self.m} subunitary.")
        sub = np.asarray(self.subunitary, dtype=complex)
        if sub.shape != (self.m, self.m):
            raise ValueError(f"Subunitary has shape {sub.shape}, expected ({self.m}, {self.m}).")
        residual = unitarity_residual(sub)
        if residual >= SUBUNITARY_TOL:
            raise ValueError(f"Subunitary is not unitary: max|A^dagger A - I| = {residual:.3e}.")
        object.__setattr__(self, "subunitary", sub)

    @property
    def n(self) -> int:
        return (2 ** self.d) * self.m

    @property
    def is_generalized(self) -> bool:
        return self.m > 1


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_hc_tensor(d: int) -> np.ndarray:
    """(1/sqrt(2^d)) [[1, i], [i, 1]]^(tensor d)."""
    _check_dimension(d)
    mat = np.ones((1, 1), dtype=complex)
    for _ in range(d):
        mat = np.kron(mat, COUPLER)
    return mat / math.sqrt(2 ** d)


def element_closed_form(j: int, k: int, d: int) -> complex:
    """U_jk = (1/sqrt n) exp(i pi/4 [d - sum_l x(j,2^l) x(k,2^l)])."""
    n = 2 ** d
    if not (1 <= j <= n and 1 <= k <= n):
        raise ValueError(f"Index ({j}, {k}) outside 1..{n}.")
    overlap = sum(rademacher(j, 2 ** l, n) * rademacher(k, 2 ** l, n) for l in range(1, d + 1))
    return complex(np.exp(1j * np.pi / 4 * (d - overlap)) / math.sqrt(n))


def hypercube_adjacency(d: int) -> np.ndarray:
    """Adjacency matrix: modes adjacent iff their (j-1) labels differ in one bit."""
    _check_dimension(d)
    labels = np.arange(2 ** d)
    diff = labels[:, None] ^ labels[None, :]
    return (np.bitwise_count(diff.astype(np.uint64)) == 1).astype(float)


def build_hamiltonian_oracle(d: int, kappa: float, t: float) -> np.ndarray:
    """exp(i kappa t A_d) from the analytic spectral decomposition.

    The Sylvester-Hadamard columns are eigenvectors of A_d; column k has
    eigenvalue d - 2*popcount(k). Since H is symmetric with H @ H = n I,
    exp(i kappa t A_d) = H diag(exp(i kappa t lambda)) H / n.
    """
    _check_dimension(d)
    if kappa <= 0:
        raise ValueError(f"Coupling rate must be positive, got {kappa}.")
    if t < 0:
        raise ValueError(f"Evolution time must be non-negative, got {t}.")
    n = 2 ** d
    h = hadamard(n).astype(float)
    popcount = np.bitwise_count(np.arange(n, dtype=np.uint64)).astype(float)
    eigenvalues = d - 2 * popcount
    phases = np.exp(1j * kappa * t * eigenvalues)
    return (h * phases[None, :]) @ h / n


def build_generalized(spec: HypercubeSpec) -> np.ndarray:
    """Generalized hypercube unitary, element by element.

    U_jk = A_{f(j), f(k)} (1/sqrt 2^d) exp(i pi/4 [d - sum_l x(j,2^l) x(k,2^l)])
    with Rademacher modulus n = 2^d m. For m = 1 this is build_hc_tensor(d).
    """
    _check_dimension(spec.d)
    d, m, n = spec.d, spec.m, spec.n
    j = np.arange(n)
    # column l-1 holds x(j, 2^l) for every mode
    signs = np.stack([1 - 2 * ((2 ** l * j // n) % 2) for l in range(1, d + 1)], axis=1)
    overlap = signs @ signs.T
    hc_part = np.exp(1j * np.pi / 4 * (d - overlap)) / math.sqrt(2 ** d)
    if m == 1:
        return hc_part
    sub = spec.subunitary
    return hc_part * sub[j[:, None] % m, j[None, :] % m]


def build_unitary(spec: HypercubeSpec) -> np.ndarray:
    """Tensor construction for bare hypercubes, element form otherwise."""
    if spec.is_generalized:
        return build_generalized(spec)
    return build_hc_tensor(spec.d)


def symmetry_phase(j: int, k: int, p: SymmetrySet, n: int) -> int:
    """phi(j, k, p) = sum_m x(j, p_m) x(k, p_m).

    U_{S_d(p) j, k} = U_{j, k} exp(i pi/2 phi(j, k, p)).
    """
    return sum(rademacher(j, seg, n) * rademacher(k, seg, n) for seg in p)


# ---------------------------------------------------------------------------
# Subunitaries and file I/O
# ---------------------------------------------------------------------------

def random_subunitary(m: int, seed: int | None = None) -> np.ndarray:
    """Haar-random m x m unitary."""
    if m < 2:
        raise ValueError(f"Random subunitaries need m >= 2, got {m}.")
    return unitary_group.rvs(m, random_state=np.random.default_rng(seed))


def unitary_from_json(payload: dict) -> np.ndarray:
    try:
        re_part = np.asarray(payload["re"], dtype=float)
        im_part = np.asarray(payload["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"Matrix JSON needs numeric 're' and 'im' arrays: {exc}") from exc
    if re_part.shape != im_part.shape:
        raise ValueError(f"'re' shape {re_part.shape} differs from 'im' shape {im_part.shape}.")
    return re_part + 1j * im_part


def load_subunitary(path: str | Path) -> np.ndarray:
    """Read and validate a subunitary file."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    mat = unitary_from_json(payload)
    m = payload.get("m", mat.shape[0])
    if mat.shape != (m, m):
        raise ValueError(f"{path}: matrix shape {mat.shape} does not match m={m}.")
    residual = unitarity_residual(mat)
    if residual >= SUBUNITARY_TOL:
        raise ValueError(f"{path}: not unitary, max|A^dagger A - I| = {residual:.3e}.")
    logger.info("Loaded %dx%d subunitary from %s (residual %.2e)", m, m, path, residual)
    return mat


def unitary_to_json(mat: np.ndarray, d: int, m: int = 1) -> dict:
    return {
        "d": d,
        "m": m,
        "re": np.real(mat).tolist(),
        "im": np.imag(mat).tolist(),
    }
