"""
Teleportation of ``alpha|0> + beta|1>`` through ``a00|00> + a11|11>``.

Qubit 1 carries the information, qubits 2 and 3 the resource; Alice holds
qubits 1 and 2. After CNOT(1 -> 2) and a Hadamard on qubit 1 the state is

    |psi_f> = 1/sqrt2 [ |00>(alpha a00|0> + beta a11|1>) + |01>(alpha a11|1> + beta a00|0>)
                      + |10>(alpha a00|0> - beta a11|1>) + |11>(alpha a11|1> - beta a00|0>) ]

Bob's branch weights ``M0, M1`` for a given Alice outcome are the squared
(unrenormalised) amplitudes of ``|outcome>|0>`` and ``|outcome>|1>``. Their
product ``alpha^2 beta^2 (det A)^2 / 4`` is the same for all four outcomes,
and with ``|det A|`` sent alongside the outcome Bob can solve for
``|alpha|`` and ``|beta|``.

Only real amplitudes are handled.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import AmbiguousResource, DegenerateInfoQubit, NotNormalized, Unsolvable

BASES = ("00", "01", "10", "11")
RECOVERY_TOL = 1e-9

# Bob's Pauli correction per Alice outcome, applied to his conditional state
_X = np.array([[0, 1], [1, 0]], dtype=float)
_Z = np.diag([1.0, -1.0])
CORRECTIONS = {"00": np.eye(2), "01": _X, "10": _Z, "11": _Z @ _X}


def _check_unit(x: float, y: float, what: str):
    if not (math.isfinite(x) and math.isfinite(y)):
        raise NotNormalized(f"{what} amplitudes must be finite")
    if abs(x * x + y * y - 1.0) > 1e-10:
        raise NotNormalized(f"{what}: squares sum to {x * x + y * y!r}, expected 1")


@dataclass(frozen=True)
class InformationQubit:
    alpha: float
    beta: float

    def __post_init__(self):
        _check_unit(self.alpha, self.beta, "information qubit")

    @classmethod
    def from_alpha(cls, alpha: float) -> "InformationQubit":
        if abs(alpha) > 1:
            raise NotNormalized("|alpha| must not exceed 1")
        return cls(alpha, math.sqrt(max(0.0, 1.0 - alpha * alpha)))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta])


@dataclass(frozen=True)
class ResourceState:
    a00: float
    a11: float

    def __post_init__(self):
        _check_unit(self.a00, self.a11, "resource")

    @classmethod
    def from_a00(cls, a00: float) -> "ResourceState":
        if abs(a00) > 1:
            raise NotNormalized("|a00| must not exceed 1")
        return cls(a00, math.sqrt(max(0.0, 1.0 - a00 * a00)))

    @property
    def det_a(self) -> float:
        return self.a00 * self.a11


@dataclass(frozen=True)
class BobStats:
    m0: float
    m1: float

    @property
    def product(self) -> float:
        return self.m0 * self.m1

    @property
    def conditional(self) -> tuple[float, float]:
        """``(M0, M1)`` renormalised to the branch probability."""
        t = self.m0 + self.m1
        return (self.m0 / t, self.m1 / t) if t > 0 else (0.0, 0.0)


@dataclass(frozen=True, eq=False)
class TeleportTranscript:
    info: InformationQubit
    resource: ResourceState
    final_state: np.ndarray
    alice_basis: str | None = None
    bob_stats: BobStats | None = None
    fidelity_paper: float | None = None
    fidelity_conditional: float | None = None
    recovered: tuple[float, float] | None = None
    recovery_candidates: tuple[tuple[float, float], ...] = ()
    recovery_error: str | None = None

    @property
    def classical_message(self) -> tuple[str, float] | None:
        if self.alice_basis is None:
            return None
        return self.alice_basis, abs(self.resource.det_a)

    def to_record(self) -> dict:
        s = self.bob_stats
        return {
            "alpha": self.info.alpha,
            "beta": self.info.beta,
            "a00": self.resource.a00,
            "a11": self.resource.a11,
            "alice_basis": self.alice_basis,
            "M0": None if s is None else s.m0,
            "M1": None if s is None else s.m1,
            "product": None if s is None else s.product,
            "abs_det_a": abs(self.resource.det_a),
            "fidelity_paper": self.fidelity_paper,
            "fidelity_conditional": self.fidelity_conditional,
            "recovered_alpha": None if self.recovered is None else self.recovered[0],
            "recovered_beta": None if self.recovered is None else self.recovered[1],
            "recovery_candidates": [list(c) for c in self.recovery_candidates],
            "recovery_error": self.recovery_error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)


def final_state_closed_form(info: InformationQubit, res: ResourceState) -> np.ndarray:
    """The post-circuit 3-qubit amplitudes written out term by term (index = 4 q1 + 2 q2 + q3)."""
    al, be, a, b = info.alpha, info.beta, res.a00, res.a11
    psi = np.zeros(8)
    psi[0b000], psi[0b001] = al * a, be * b
    psi[0b011], psi[0b010] = al * b, be * a
    psi[0b100], psi[0b101] = al * a, -be * b
    psi[0b111], psi[0b110] = al * b, -be * a
    return psi / math.sqrt(2.0)


def cnot_12() -> np.ndarray:
    u = np.zeros((8, 8))
    for idx in range(8):
        q1, q2, q3 = (idx >> 2) & 1, (idx >> 1) & 1, idx & 1
        u[(q1 << 2) | ((q2 ^ q1) << 1) | q3, idx] = 1.0
    return u


def hadamard_1() -> np.ndarray:
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2.0)
    return np.kron(h, np.eye(4))


def final_state_gates(info: InformationQubit, res: ResourceState) -> np.ndarray:
    """Same state obtained by multiplying out the 8x8 gate matrices."""
    resource = np.array([res.a00, 0.0, 0.0, res.a11])
    psi0 = np.kron(info.vector, resource)
    return hadamard_1() @ (cnot_12() @ psi0)


def run_circuit(info: InformationQubit, res: ResourceState) -> TeleportTranscript:
    if not isinstance(info, InformationQubit) or not isinstance(res, ResourceState):
        raise TypeError("run_circuit expects InformationQubit and ResourceState")
    return TeleportTranscript(info, res, final_state_closed_form(info, res))


def _branch(final_state: np.ndarray, basis: str) -> np.ndarray:
    if basis not in BASES:
        raise ValueError(f"alice_basis must be one of {BASES}, got {basis!r}")
    k = int(basis, 2)
    return final_state[2 * k: 2 * k + 2]


def bob_stats(t: TeleportTranscript, alice_basis: str) -> BobStats:
    amp = _branch(t.final_state, alice_basis)
    return BobStats(float(amp[0] ** 2), float(amp[1] ** 2))


def bob_stats_closed_form(info: InformationQubit, res: ResourceState, alice_basis: str) -> BobStats:
    al2, be2, a2, b2 = info.alpha**2, info.beta**2, res.a00**2, res.a11**2
    if alice_basis in ("00", "10"):
        return BobStats(al2 * a2 / 2, be2 * b2 / 2)
    if alice_basis in ("01", "11"):
        return BobStats(be2 * a2 / 2, al2 * b2 / 2)
    raise ValueError(f"alice_basis must be one of {BASES}, got {alice_basis!r}")


def fidelity(info: InformationQubit, a00: float, a11: float | None = None) -> float:
    """``(a00 alpha + a11 beta)^2`` with ``a11 = sqrt(1 - a00^2)`` unless given.

    Passing ``a11`` explicitly allows the sign-flipped resource
    ``-(a00, a11)``, which has the same fidelity.
    """
    if abs(a00) > 1 + 1e-12:
        raise ValueError("|a00| must not exceed 1")
    if a11 is None:
        a11 = math.sqrt(max(0.0, 1.0 - a00 * a00))
    return (a00 * info.alpha + a11 * info.beta) ** 2


def conditional_fidelity(t: TeleportTranscript, alice_basis: str) -> float:
    """Overlap of Bob's corrected, renormalised qubit with the information qubit."""
    amp = CORRECTIONS[alice_basis] @ _branch(t.final_state, alice_basis)
    n = float(np.linalg.norm(amp))
    if n == 0.0:
        return 0.0
    return float(np.dot(t.info.vector, amp / n) ** 2)


def measure(t: TeleportTranscript, alice_basis: str) -> TeleportTranscript:
    """Fill in Bob's statistics and both fidelities for one Alice outcome."""
    return replace(
        t,
        alice_basis=alice_basis,
        bob_stats=bob_stats(t, alice_basis),
        fidelity_paper=fidelity(t.info, t.resource.a00, t.resource.a11),
        fidelity_conditional=conditional_fidelity(t, alice_basis),
    )


def teleport(info: InformationQubit, res: ResourceState, alice_basis: str) -> TeleportTranscript:
    """Run, measure and let Bob recover ``(|alpha|, |beta|)`` from the classical message."""
    t = measure(run_circuit(info, res), alice_basis)
    try:
        rec = recover_information((t.bob_stats.m0, t.bob_stats.m1), abs(res.det_a), alice_basis)
    except AmbiguousResource as exc:
        return replace(t, recovery_candidates=exc.candidates, recovery_error=f"AmbiguousResource: {exc}")
    except Unsolvable as exc:
        return replace(t, recovery_error=f"Unsolvable: {exc}")
    return replace(t, recovered=rec)


@dataclass(frozen=True)
class FidelityExtrema:
    f1: float
    f1_locations: tuple[float, float]
    f2: float
    f2_locations: tuple[float, float]
    grid_max: float
    grid_min: float
    f2_is_grid_max: bool
    f1_is_local_min: bool


def fidelity_extrema(info: InformationQubit, grid_points: int = 10_000) -> FidelityExtrema:
    """Claimed extrema ``F1 = 4 (alpha beta)^2`` at ``a00 = +/-beta`` and ``F2 = 1`` at ``+/-alpha``.

    Both values are evaluated on the sign-consistent resources
    ``+/-(beta, alpha)`` and ``+/-(alpha, beta)``. A grid over
    ``a00 in [-1, 1]`` (with ``a11 >= 0``) checks that nothing beats ``F2``
    and whether ``F1`` is a local minimum of the one-parameter curve.
    """
    al, be = info.alpha, info.beta
    if al * be == 0:
        raise DegenerateInfoQubit("alpha * beta = 0: the two extrema coincide at F = 1")
    f1 = fidelity(info, be, al)
    f2 = fidelity(info, al, be)
    grid = np.linspace(-1.0, 1.0, grid_points)
    fg = (grid * al + np.sqrt(np.clip(1 - grid**2, 0, None)) * be) ** 2
    h = 1e-4
    x = abs(be)
    f1_curve = fidelity(info, x)
    local_min = f1_curve <= fidelity(info, x - h) and f1_curve <= fidelity(info, min(x + h, 1.0))
    return FidelityExtrema(
        f1=f1, f1_locations=(be, -be),
        f2=f2, f2_locations=(al, -al),
        grid_max=float(fg.max()), grid_min=float(fg.min()),
        f2_is_grid_max=bool(fg.max() <= f2 + 1e-9),
        f1_is_local_min=bool(local_min),
    )


def recover_information(stats, abs_det_a: float, alice_basis: str = "00") -> tuple[float, float]:
    """Solve Bob's branch weights for ``(|alpha|, |beta|)``.

    ``a00^2`` is one of the two roots of ``x (1 - x) = |det A|^2``; the root
    that makes ``alpha^2 + beta^2 = 1`` is kept.

    Raises
    ------
    Unsolvable
        If neither root is consistent with the statistics.
    AmbiguousResource
        If both are, with different answers.
    """
    m0, m1 = (float(x) for x in stats)
    if m0 < 0 or m1 < 0:
        raise Unsolvable("branch weights must be non-negative")
    if not 0 < abs_det_a <= 0.5 + 1e-12:
        raise Unsolvable(f"|det A| = {abs_det_a!r} outside (0, 1/2]")
    if alice_basis not in BASES:
        raise ValueError(f"alice_basis must be one of {BASES}, got {alice_basis!r}")
    root = math.sqrt(max(0.0, 1.0 - 4.0 * abs_det_a**2))
    candidates = []
    for x in {(1.0 - root) / 2.0, (1.0 + root) / 2.0}:
        if alice_basis in ("00", "10"):
            al2, be2 = 2 * m0 / x, 2 * m1 / (1 - x)
        else:
            be2, al2 = 2 * m0 / x, 2 * m1 / (1 - x)
        resid = abs(al2 + be2 - 1.0)
        if resid <= RECOVERY_TOL:
            candidates.append((math.sqrt(al2), math.sqrt(be2)))
    if not candidates:
        raise Unsolvable("statistics inconsistent with alpha^2 + beta^2 = 1 for either resource ordering")
    candidates.sort()
    first, last = candidates[0], candidates[-1]
    if max(abs(first[0] - last[0]), abs(first[1] - last[1])) > RECOVERY_TOL:
        raise AmbiguousResource("both resource orderings fit the statistics", candidates)
    return first
