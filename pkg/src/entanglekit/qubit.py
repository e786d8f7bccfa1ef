"""
Two-qubit pure states: the determinant test and its consequences.

For ``|psi> = sum a_ij |ij>`` the amplitudes form a 2x2 matrix ``A`` with
``rho_A = A A^dagger``. Because ``Tr A A^dagger = 1``, the Schmidt weights
depend on the state only through ``|det A|``:

    mu_{1,2} = (1 -/+ sqrt(1 - 4 |det A|^2)) / 2

so ``det A = 0`` is exactly the product-state condition and
``|det A| = 1/2`` is maximal entanglement.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from . import linalg
from .errors import DetOutOfRange, NotNormalized

DET_TOL = 1e-9
_RANGE_SLACK = 1e-12
_SQRT_HALF = math.sqrt(0.5)


class Classification(str, Enum):
    UNENTANGLED = "unentangled"
    ENTANGLED = "entangled"
    MAXIMALLY_ENTANGLED = "maximally_entangled"


def _normalized_vector(v, size: int) -> np.ndarray:
    a = np.asarray(v, dtype=complex).reshape(-1)
    if a.shape != (size,):
        raise ValueError(f"expected {size} amplitudes, got {a.size}")
    if not np.all(np.isfinite(a)):
        raise linalg.NonFiniteInput("amplitudes must be finite")
    norm = float(np.sum(np.abs(a) ** 2))
    if abs(norm - 1.0) > linalg.NORM_TOL:
        raise NotNormalized(f"sum |a|^2 = {norm!r}, expected 1")
    return a


@dataclass(frozen=True, eq=False)
class QubitPairState:
    """Amplitudes over ``|00>, |01>, |10>, |11>``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _normalized_vector(self.amplitudes, 4))

    @classmethod
    def from_unnormalized(cls, v) -> "QubitPairState":
        a = np.asarray(v, dtype=complex)
        return cls(a / np.linalg.norm(a))

    a00 = property(lambda self: complex(self.amplitudes[0]))
    a01 = property(lambda self: complex(self.amplitudes[1]))
    a10 = property(lambda self: complex(self.amplitudes[2]))
    a11 = property(lambda self: complex(self.amplitudes[3]))


@dataclass(frozen=True, eq=False)
class BellCoefficients:
    """Coordinates ``(b0, b1, b2, b3)`` on the Bell basis ``|phi_0> .. |phi_3>``."""

    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _normalized_vector(self.coefficients, 4))


def _state(s) -> QubitPairState:
    return s if isinstance(s, QubitPairState) else QubitPairState(s)


def _bell(b) -> BellCoefficients:
    return b if isinstance(b, BellCoefficients) else BellCoefficients(b)


def bell_state(k: int) -> QubitPairState:
    """``|phi_k>`` for ``k = 0..3`` (phi_0 = (|00>+|11>)/sqrt2, phi_1 = (|01>+|10>)/sqrt2,
    phi_2 = (|01>-|10>)/sqrt2, phi_3 = (|00>-|11>)/sqrt2)."""
    return from_bell_basis(np.eye(4)[k])


def amplitude_matrix(s) -> np.ndarray:
    """The matrix ``A[i, j] = a_ij``; rows index subsystem A."""
    return _state(s).amplitudes.reshape(2, 2).copy()


def schmidt_eigenvalues_closed_form(det_a, norm2: float = 1.0) -> tuple[float, float]:
    """Schmidt weights ``(mu_1, mu_2)``, smaller first, from ``det A`` alone.

    ``norm2`` is ``Tr A A^dagger``. It is 1 for a normalised state; passing
    the computed value keeps the radicand exact near ``|det A| = 1/2``, where
    the square root would otherwise amplify rounding in the norm.
    """
    d2 = abs(complex(det_a)) ** 2
    if math.sqrt(d2) > 0.5 * norm2 + _RANGE_SLACK:
        raise DetOutOfRange(f"|det A| = {math.sqrt(d2)!r} exceeds 1/2")
    radicand = norm2 * norm2 - 4.0 * d2
    root = math.sqrt(max(radicand, 0.0))
    # (1 - root) / 2 rewritten to avoid cancellation for small |det A|
    small = 2.0 * d2 / (norm2 + root)
    return small, norm2 - small


def qubit_entropy(abs_det_a: float) -> float:
    """Entanglement entropy (nats) as a function of ``|det A|``."""
    if abs_det_a < 0 or abs_det_a > 0.5 + _RANGE_SLACK:
        raise DetOutOfRange(f"|det A| = {abs_det_a!r} outside [0, 1/2]")
    return linalg.von_neumann_entropy(schmidt_eigenvalues_closed_form(abs_det_a))


@dataclass(frozen=True, eq=False)
class QubitEntanglementReport:
    det_a: complex
    abs_det_a: float
    schmidt_eigenvalues: tuple[float, float]
    oracle_eigenvalues: tuple[float, float]
    schmidt_rank: int
    classification: Classification
    entropy_nats: float
    closed_form_discrepancy: float
    oracle_agrees: bool

    def to_record(self) -> dict:
        return {
            "det_a_re": self.det_a.real,
            "det_a_im": self.det_a.imag,
            "abs_det_a": self.abs_det_a,
            "mu1": self.schmidt_eigenvalues[0],
            "mu2": self.schmidt_eigenvalues[1],
            "oracle_mu1": self.oracle_eigenvalues[0],
            "oracle_mu2": self.oracle_eigenvalues[1],
            "schmidt_rank": self.schmidt_rank,
            "classification": self.classification.value,
            "entropy_nats": self.entropy_nats,
            "closed_form_discrepancy": self.closed_form_discrepancy,
            "oracle_agrees": self.oracle_agrees,
        }


def classify_det(abs_det: float, tol: float = DET_TOL) -> Classification:
    if abs_det <= tol:
        return Classification.UNENTANGLED
    if abs_det >= 0.5 - tol:
        return Classification.MAXIMALLY_ENTANGLED
    return Classification.ENTANGLED


def analyze(s, tol: float = DET_TOL) -> QubitEntanglementReport:
    """Determinant verdict for a two-qubit state, audited against the Schmidt oracle.

    The verdict comes from ``|det A|``; ``oracle_agrees`` records whether
    the oracle Schmidt rank tells the same story.
    """
    a = amplitude_matrix(s)
    d = linalg.det(a)
    norm2 = float(np.vdot(a, a).real)
    abs_d = min(abs(d), 0.5 * norm2)
    mu = schmidt_eigenvalues_closed_form(abs_d, norm2)
    oracle = linalg.schmidt_from_amplitude_matrix(a)
    oracle_mu = (float(oracle.eigenvalues[1]), float(oracle.eigenvalues[0]))
    cls = classify_det(abs(d), tol)
    return QubitEntanglementReport(
        det_a=d,
        abs_det_a=abs(d),
        schmidt_eigenvalues=mu,
        oracle_eigenvalues=oracle_mu,
        schmidt_rank=oracle.rank,
        classification=cls,
        entropy_nats=qubit_entropy(min(abs_d, 0.5)),
        closed_form_discrepancy=max(abs(mu[0] - oracle_mu[0]), abs(mu[1] - oracle_mu[1])),
        oracle_agrees=(cls is Classification.UNENTANGLED) == (oracle.rank == 1),
    )


def to_bell_basis(s) -> BellCoefficients:
    a00, a01, a10, a11 = _state(s).amplitudes
    b = _SQRT_HALF * np.array([a00 + a11, a01 + a10, a01 - a10, a00 - a11])
    return BellCoefficients(b)


def from_bell_basis(b) -> QubitPairState:
    b0, b1, b2, b3 = _bell(b).coefficients
    return QubitPairState(_SQRT_HALF * np.array([b0 + b3, b1 + b2, b1 - b2, b0 - b3]))


def c_matrix(b) -> np.ndarray:
    b0, b1, b2, b3 = _bell(b).coefficients
    return _SQRT_HALF * np.array([[b0 + b3, b1 + b2], [b1 - b2, b0 - b3]])


@dataclass(frozen=True)
class BellCriterion:
    """Two readings of the Bell-basis Schmidt weights.

    ``paper_eigen`` uses ``(1 -/+ sqrt(1 - |det C|^2)) / 2``, the Bell-basis
    eigenvalue form; ``oracle_eigen`` is the exact
    spectrum of ``C C^dagger``. They differ whenever ``det C != 0``.
    """

    det_c: complex
    paper_eigen: tuple[float, float]
    oracle_eigen: tuple[float, float]
    discrepancy: float
    unentangled: bool
    oracle_rank: int


def bell_det_criterion(b, tol: float = DET_TOL) -> BellCriterion:
    c = c_matrix(b)
    dc = linalg.det(c)
    root = math.sqrt(max(1.0 - abs(dc) ** 2, 0.0))
    quoted = (0.5 * (1.0 - root), 0.5 * (1.0 + root))
    oracle = linalg.schmidt_from_amplitude_matrix(c)
    oe = (float(oracle.eigenvalues[1]), float(oracle.eigenvalues[0]))
    return BellCriterion(
        det_c=dc,
        paper_eigen=quoted,
        oracle_eigen=oe,
        discrepancy=max(abs(quoted[0] - oe[0]), abs(quoted[1] - oe[1])),
        unentangled=abs(dc) <= tol,
        oracle_rank=oracle.rank,
    )
