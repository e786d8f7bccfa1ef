"""
Two-qutrit pure states.

The amplitudes form a 3x3 matrix ``P`` with ``rho_A = P P^dagger``. Two
evaluation paths are kept side by side:

* the oracle path diagonalises ``P P^dagger`` (authoritative for the
  verdict and the entropy);
* the closed-form path evaluates the trace/determinant Cardano formulas
  on principal branches, and reports how well its roots
  satisfy the accompanying cubic.

The closed form is *not* exact for generic states: its middle
coefficient ``(2 (Tr P)^2 - 1) / 2`` stands in for the symmetric function
``((Tr P)^2 - Tr P^2) / 2``. :func:`closed_form_audit` quantifies the gap.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ComplexRoots, DegenerateBranch, IndexOutOfRange
from .qubit import Classification, _normalized_vector

DET_TOL = 1e-9
TRACE_TOL = 1e-9
RESIDUAL_TOL = 1e-8
ROOT_TOL = 1e-8
MAXIMAL_TOL = 1e-9

OMEGA = cmath.exp(2j * math.pi / 3)

_S2 = 1 / math.sqrt(2)
_S3 = 1 / math.sqrt(3)
_S6 = 1 / math.sqrt(6)

# (index of |ij> = 3 i + j, amplitude) for each beta state
_BETA = (
    ((0, _S3), (4, _S3), (8, _S3)),
    ((1, _S2), (3, _S2)),
    ((1, _S2), (3, -_S2)),
    ((0, _S2), (4, -_S2)),
    ((2, _S2), (6, _S2)),
    ((2, _S2), (6, -_S2)),
    ((5, _S2), (7, _S2)),
    ((5, _S2), (7, -_S2)),
    ((0, _S6), (4, _S6), (8, -2 * _S6)),
)


@dataclass(frozen=True, eq=False)
class QutritPairState:
    """Amplitudes ``a_ij`` over ``|ij>``, row-major (``|00>, |01>, ..., |22>``)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _normalized_vector(self.amplitudes, 9))

    @classmethod
    def from_unnormalized(cls, v) -> "QutritPairState":
        a = np.asarray(v, dtype=complex).reshape(-1)
        return cls(a / np.linalg.norm(a))


def _state(s) -> QutritPairState:
    return s if isinstance(s, QutritPairState) else QutritPairState(s)


def beta_basis(k: int) -> QutritPairState:
    """The k-th entangled qutrit basis state, ``k = 0..8``."""
    if not isinstance(k, (int, np.integer)) or not 0 <= k <= 8:
        raise IndexOutOfRange(f"beta index must be in 0..8, got {k!r}")
    v = np.zeros(9, dtype=complex)
    for idx, amp in _BETA[k]:
        v[idx] = amp
    return QutritPairState(v)


def p_matrix(s) -> np.ndarray:
    return _state(s).amplitudes.reshape(3, 3).copy()


def _cbrt(z: complex) -> complex:
    # principal branch
    if z == 0:
        return 0j
    return cmath.exp(cmath.log(z) / 3)


def _cubic(mu: complex, tr: complex, dt: complex) -> complex:
    return mu**3 - tr * mu**2 + (2 * tr**2 - 1) / 2 * mu - dt


@dataclass(frozen=True)
class QutritClosedForm:
    tr_p: complex
    det_p: complex
    delta0: complex
    delta1: complex
    c_branch: complex
    roots: tuple[complex, complex, complex]
    cubic_residual: float
    self_consistent: bool

    @property
    def real_nonnegative(self) -> bool:
        return self.status == "ok"

    @property
    def status(self) -> str:
        """``ok``, ``negative_root`` (all real, one below zero) or ``complex_roots``."""
        if any(abs(r.imag) > ROOT_TOL for r in self.roots):
            return "complex_roots"
        if any(r.real < -ROOT_TOL for r in self.roots):
            return "negative_root"
        return "ok"


def closed_form_roots(tr_p, det_p) -> QutritClosedForm:
    """Evaluate the trace/determinant Cardano formulas on principal branches.

    ``Delta1`` uses ``|det P|`` while the cubic's constant term uses the
    signed ``det P``. Nothing is patched when the result is inconsistent;
    inspect ``cubic_residual``.

    Raises
    ------
    DegenerateBranch
        If ``|C| < 1e-14``.
    """
    tr, dt = complex(tr_p), complex(det_p)
    if not (cmath.isfinite(tr) and cmath.isfinite(dt)):
        raise linalg.NonFiniteInput("trace and determinant must be finite")
    d0 = (-(tr**2) + 3) / 2
    d1 = (5 * tr**2 - 9 * tr - 54 * abs(dt)) / 2
    c = _cbrt((d1 + cmath.sqrt(d1**2 - 4 * d0**3)) / 2)
    if abs(c) < 1e-14:
        raise DegenerateBranch(f"C = {c!r} for Tr P = {tr!r}, det P = {dt!r}")
    roots = tuple(tr / 3 + (OMEGA**k * c + d0 / (OMEGA**k * c)) / 3 for k in range(3))
    resid = max(abs(_cubic(r, tr, dt)) for r in roots)
    return QutritClosedForm(tr, dt, d0, d1, c, roots, resid, resid <= RESIDUAL_TOL)


def qutrit_entropy_paper(tr_p, det_p) -> float:
    """``-sum mu ln mu`` over the closed-form roots.

    Raises
    ------
    ComplexRoots
        If some root is not real and non-negative to 1e-8.
    DegenerateBranch
        Propagated from :func:`closed_form_roots`.
    """
    cf = closed_form_roots(tr_p, det_p)
    if not cf.real_nonnegative:
        raise ComplexRoots(f"{cf.status}: roots {cf.roots} are not real and non-negative")
    return linalg.von_neumann_entropy([max(r.real, 0.0) for r in cf.roots])


def trace_det_unentangled(tr_p, det_p) -> bool:
    """``|det P| = 0`` together with ``Tr P = +/-1`` (real part; imaginary part ~ 0)."""
    tr = complex(tr_p)
    return (
        abs(det_p) <= DET_TOL
        and abs(tr.imag) <= TRACE_TOL
        and min(abs(tr.real - 1), abs(tr.real + 1)) <= TRACE_TOL
    )


@dataclass(frozen=True, eq=False)
class QutritEntanglementReport:
    det_p: complex
    tr_p: complex
    oracle_eigenvalues: tuple[float, float, float]
    schmidt_rank: int
    classification: Classification
    entropy_nats: float
    paper_mode_entropy: float | None
    closed_form: QutritClosedForm | None
    closed_form_error: str | None
    trace_det_verdict: bool
    trace_det_agrees: bool

    def to_record(self) -> dict:
        cf = self.closed_form
        return {
            "det_p_re": self.det_p.real,
            "det_p_im": self.det_p.imag,
            "tr_p_re": self.tr_p.real,
            "tr_p_im": self.tr_p.imag,
            "oracle_mu0": self.oracle_eigenvalues[0],
            "oracle_mu1": self.oracle_eigenvalues[1],
            "oracle_mu2": self.oracle_eigenvalues[2],
            "schmidt_rank": self.schmidt_rank,
            "classification": self.classification.value,
            "entropy_nats": self.entropy_nats,
            "paper_mode_entropy": self.paper_mode_entropy,
            "cubic_residual": None if cf is None else cf.cubic_residual,
            "self_consistent": None if cf is None else cf.self_consistent,
            "closed_form_error": self.closed_form_error,
            "trace_det_verdict": self.trace_det_verdict,
            "trace_det_agrees": self.trace_det_agrees,
        }


def analyze(s) -> QutritEntanglementReport:
    p = p_matrix(s)
    dp, tp = linalg.det(p), complex(np.trace(p))
    oracle = linalg.schmidt_from_amplitude_matrix(p)
    mu = tuple(float(x) for x in oracle.eigenvalues)
    if oracle.rank == 1:
        cls = Classification.UNENTANGLED
    elif all(abs(x - 1 / 3) <= MAXIMAL_TOL for x in mu):
        cls = Classification.MAXIMALLY_ENTANGLED
    else:
        cls = Classification.ENTANGLED

    cf = err = cf_entropy = None
    try:
        cf = closed_form_roots(tp, dp)
    except DegenerateBranch as exc:
        err = f"degenerate_branch: {exc}"
    else:
        if cf.real_nonnegative:
            cf_entropy = linalg.von_neumann_entropy([max(r.real, 0.0) for r in cf.roots])
        else:
            err = cf.status

    pt = trace_det_unentangled(tp, dp)
    return QutritEntanglementReport(
        det_p=dp,
        tr_p=tp,
        oracle_eigenvalues=mu,
        schmidt_rank=oracle.rank,
        classification=cls,
        entropy_nats=linalg.von_neumann_entropy(mu),
        paper_mode_entropy=cf_entropy,
        closed_form=cf,
        closed_form_error=err,
        trace_det_verdict=pt,
        trace_det_agrees=pt == (oracle.rank == 1),
    )


@dataclass
class UnentanglementAudit:
    """Counts of agreement between the trace/determinant test and the Schmidt rank."""

    checked: int = 0
    false_entangled: list[int] = field(default_factory=list)
    false_unentangled: list[int] = field(default_factory=list)

    @property
    def counterexamples(self) -> int:
        return len(self.false_entangled) + len(self.false_unentangled)


def unentanglement_test_audit(states) -> UnentanglementAudit:
    """Run the ``det P = 0 and Tr P = +/-1`` test against the oracle on each state.

    ``false_entangled`` lists product states the test calls entangled,
    ``false_unentangled`` the reverse.
    """
    audit = UnentanglementAudit()
    for i, s in enumerate(states):
        r = analyze(s)
        audit.checked += 1
        if r.trace_det_agrees:
            continue
        (audit.false_unentangled if r.trace_det_verdict else audit.false_entangled).append(i)
    return audit


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


@dataclass(frozen=True)
class GridPoint:
    tr_p: float
    det_p_squared: float
    entropy_paper_mode: float | None
    cubic_residual: float | None
    applicable: bool
    status: str
    marker: str = ""


def evaluate_grid_point(tr_p: float, det_p_squared: float, marker: str = "") -> GridPoint:
    """Closed-form entropy at a (Tr P, (det P)^2) point, with ``det P = +sqrt``."""
    dp = math.sqrt(det_p_squared)
    try:
        cf = closed_form_roots(tr_p, dp)
    except DegenerateBranch:
        return GridPoint(tr_p, det_p_squared, None, None, False, "degenerate_branch", marker)
    if not cf.real_nonnegative:
        return GridPoint(tr_p, det_p_squared, None, cf.cubic_residual, False, cf.status, marker)
    s = linalg.von_neumann_entropy([max(r.real, 0.0) for r in cf.roots])
    return GridPoint(tr_p, det_p_squared, s, cf.cubic_residual, True, "ok", marker)


MARKERS = (
    ("unentangled", 1.0, 0.0, 0.0),
    ("maximal", math.sqrt(3.0), 1.0 / 27.0, math.log(3.0)),
)
"""``(label, Tr P, (det P)^2, reference entropy)`` for the two highlighted points."""


def entropy_grid(tr_range=(0.0, math.sqrt(3.0)), det2_range=(0.0, 1.0 / 27.0), points=(50, 50)):
    """Closed-form entropy over a regular grid, plus the marker points inside it."""
    n_tr, n_d = (points, points) if isinstance(points, int) else points
    if n_tr < 2 or n_d < 2:
        raise ValueError("grid needs at least 2 points per axis")
    if not (tr_range[0] < tr_range[1] and det2_range[0] < det2_range[1]):
        raise ValueError("ranges must be increasing")
    if det2_range[0] < 0:
        raise ValueError("(det P)^2 range must be non-negative")
    rows = [
        evaluate_grid_point(float(t), float(d2))
        for t in np.linspace(*tr_range, n_tr)
        for d2 in np.linspace(*det2_range, n_d)
    ]
    for label, t, d2, _ in MARKERS:
        if tr_range[0] <= t <= tr_range[1] and det2_range[0] <= d2 <= det2_range[1]:
            rows.append(evaluate_grid_point(t, d2, marker=label))
    return rows


GRID_COLUMNS = ("tr_p", "det_p_squared", "entropy_paper_mode", "cubic_residual", "applicable", "status",
                "marker")


def grid_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GRID_COLUMNS)
    for r in rows:
        w.writerow([_fmt(r.tr_p), _fmt(r.det_p_squared), _fmt(r.entropy_paper_mode),
                    _fmt(r.cubic_residual), _fmt(r.applicable), r.status, r.marker])
    return buf.getvalue()


@dataclass(frozen=True)
class StateAuditRow:
    label: str
    tr_p: complex
    det_p: complex
    status: str
    cubic_residual: float | None
    closed_form_entropy: float | None
    oracle_entropy: float
    gap: float | None
    squared_root_entropy: float | None = None


@dataclass(frozen=True)
class ClosedFormAudit:
    states: tuple[StateAuditRow, ...]
    grid: tuple[GridPoint, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "label", "tr_p_re", "tr_p_im", "det_p_re", "det_p_im", "det_p_squared",
                    "status", "cubic_residual", "closed_form_entropy", "oracle_entropy", "gap",
                    "squared_root_entropy"])
        for r in self.states:
            w.writerow(["state", r.label, _fmt(r.tr_p.real), _fmt(r.tr_p.imag), _fmt(r.det_p.real),
                        _fmt(r.det_p.imag), _fmt(abs(r.det_p) ** 2), r.status, _fmt(r.cubic_residual),
                        _fmt(r.closed_form_entropy), _fmt(r.oracle_entropy), _fmt(r.gap),
                        _fmt(r.squared_root_entropy)])
        for g in self.grid:
            w.writerow(["grid", g.marker, _fmt(g.tr_p), "0.0", _fmt(math.sqrt(g.det_p_squared)), "0.0",
                        _fmt(g.det_p_squared), g.status, _fmt(g.cubic_residual),
                        _fmt(g.entropy_paper_mode), "", "", ""])
        return buf.getvalue()


def closed_form_audit(states=None, points=50, tr_range=(0.0, math.sqrt(3.0)),
                      det2_range=(0.0, 1.0 / 27.0)) -> ClosedFormAudit:
    """Compare the closed form with the oracle on labelled states and over a grid.

    ``states`` is an iterable of ``(label, state)``; it defaults to the nine
    beta states. ``squared_root_entropy`` treats ``|root|^2`` as the weights,
    which is the right reading whenever the roots are eigenvalues of ``P``
    itself. The grid part has no underlying state, so only the cubic
    residual and applicability are recorded there.
    """
    if states is None:
        states = [(f"beta{k}", beta_basis(k)) for k in range(9)]
    rows = []
    for label, s in states:
        r = analyze(s)
        cf = r.closed_form
        status = "degenerate_branch" if cf is None else cf.status
        gap = None if r.paper_mode_entropy is None else r.paper_mode_entropy - r.entropy_nats
        sq = None if cf is None else linalg.von_neumann_entropy([abs(x) ** 2 for x in cf.roots])
        rows.append(StateAuditRow(label, r.tr_p, r.det_p, status,
                                  None if cf is None else cf.cubic_residual,
                                  r.paper_mode_entropy, r.entropy_nats, gap, sq))
    grid = entropy_grid(tr_range, det2_range, points)
    return ClosedFormAudit(tuple(rows), tuple(grid))
