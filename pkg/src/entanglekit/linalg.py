"""
Fixed-size complex linear algebra for 2x2, 3x3 (and 4x4 products).

Everything here is closed form: cofactor determinants, the quadratic
formula for 2x2 Hermitian matrices and the trigonometric solution of the
characteristic cubic for 3x3 ones. The module is the reference path the
determinant/trace formulas in :mod:`entanglekit.qubit` and
:mod:`entanglekit.qutrit` are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import NonFiniteInput, NotHermitian, NotNormalized

RANK_TOL = 1e-9
HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-10
PHASE_TOL = 1e-9

_TWO_PI_3 = 2.0 * math.pi / 3.0


def as_square(m, dims=(2, 3, 4)) -> np.ndarray:
    """Return ``m`` as a complex square array, rejecting bad shapes and NaN/Inf."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise ValueError(f"expected a square matrix of size {dims}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteInput("matrix has non-finite entries")
    return a


def det(m) -> complex:
    """Cofactor-expansion determinant of a 2x2 or 3x3 matrix."""
    a = as_square(m, (2, 3))
    if a.shape[0] == 2:
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    return complex(
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def commutator(x, y) -> np.ndarray:
    x, y = as_square(x), as_square(y)
    if x.shape != y.shape:
        raise ValueError("commutator of matrices with different sizes")
    return x @ y - y @ x


def anticommutator(x, y) -> np.ndarray:
    x, y = as_square(x), as_square(y)
    if x.shape != y.shape:
        raise ValueError("anticommutator of matrices with different sizes")
    return x @ y + y @ x


def dagger(m) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate ``v`` so that its first component above ``PHASE_TOL`` is real and positive."""
    for c in v:
        if abs(c) > PHASE_TOL:
            return v * (abs(c) / c)
    return v


def _orthonormal_fill(projector: np.ndarray, count: int) -> list[np.ndarray]:
    # Gram-Schmidt of the standard basis inside range(projector); the basis
    # vector with the largest surviving projection is taken first.
    n = projector.shape[0]
    q = projector.copy()
    out = []
    for _ in range(count):
        norms = [np.linalg.norm(q[:, k]) for k in range(n)]
        k = int(np.argmax(norms))
        v = q[:, k] / norms[k]
        out.append(v)
        q = q - np.outer(v, v.conj())
    return out


@dataclass(frozen=True, eq=False)
class HermitianEigenResult:
    """Ascending real eigenvalues with orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def residual(self, h) -> float:
        h = np.asarray(h, dtype=complex)
        r = h @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.linalg.norm(r, axis=0).max())


def _eigh2(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a, d, b = h[0, 0].real, h[1, 1].real, h[0, 1]
    mid = 0.5 * (a + d)
    rad = math.hypot(0.5 * (a - d), abs(b))
    scale = max(abs(a), abs(d), abs(b), 1e-300)
    vals = np.array([mid - rad, mid + rad])
    if rad <= 1e-15 * scale:
        vecs = _orthonormal_fill(np.eye(2, dtype=complex), 2)
        return vals, np.column_stack(vecs)
    lo = vals[0]
    v1 = np.array([b, lo - a], dtype=complex)
    v2 = np.array([lo - d, np.conj(b)], dtype=complex)
    v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
    v = v / np.linalg.norm(v)
    w = np.array([-np.conj(v[1]), np.conj(v[0])])
    return vals, np.column_stack([v, w])


def _null_vector3(k: np.ndarray) -> np.ndarray:
    r0, r1, r2 = k
    crosses = [np.cross(r0, r1), np.cross(r0, r2), np.cross(r1, r2)]
    norms = [np.linalg.norm(c) for c in crosses]
    i = int(np.argmax(norms))
    if norms[i] == 0.0:
        return np.array([1.0, 0.0, 0.0], dtype=complex)
    return crosses[i] / norms[i]


def _eigh3(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q = float(np.trace(h).real) / 3.0
    k = h - q * np.eye(3)
    p = math.sqrt(float(np.sum(np.abs(k) ** 2)) / 6.0)
    scale = max(float(np.abs(h).max()), 1e-300)
    if p <= 1e-15 * scale:
        return np.full(3, q), np.eye(3, dtype=complex)

    r = min(1.0, max(-1.0, det(k / p).real / 2.0))
    phi = math.acos(r) / 3.0
    hi = q + 2.0 * p * math.cos(phi)
    lo = q + 2.0 * p * math.cos(phi + _TWO_PI_3)
    mid = 3.0 * q - hi - lo

    # Solve for the best-separated root first; the remaining pair is then an
    # exact 2x2 problem on its orthogonal complement, which stays accurate
    # when those two roots are (nearly) degenerate.
    iso = lo if (mid - lo) > (hi - mid) else hi
    v = _null_vector3(h - iso * np.eye(3))
    iso = float(np.vdot(v, h @ v).real)
    u = np.column_stack(_orthonormal_fill(np.eye(3) - np.outer(v, v.conj()), 2))
    h2 = u.conj().T @ h @ u
    h2 = 0.5 * (h2 + h2.conj().T)
    vals2, vecs2 = _eigh2(h2)

    vals = np.concatenate([[iso], vals2])
    vecs = np.column_stack([v, u @ vecs2])
    order = np.argsort(vals, kind="stable")
    return vals[order], vecs[:, order]


def hermitian_eigen(h) -> HermitianEigenResult:
    """Analytic eigen-decomposition of a 2x2 or 3x3 Hermitian matrix.

    Raises
    ------
    NotHermitian
        If ``max|H - H^dagger| > 1e-12``.
    """
    h = as_square(h, (2, 3))
    if np.abs(h - h.conj().T).max() > HERMITIAN_TOL:
        raise NotHermitian("matrix is not Hermitian to 1e-12")
    h = 0.5 * (h + h.conj().T)
    vals, vecs = _eigh2(h) if h.shape[0] == 2 else _eigh3(h)
    vecs = np.column_stack([canonical_phase(vecs[:, i]) for i in range(vecs.shape[1])])
    return HermitianEigenResult(np.asarray(vals, dtype=float), vecs)


@dataclass(frozen=True, eq=False)
class SchmidtResult:
    """Schmidt decomposition of a pure bipartite state.

    ``eigenvalues`` are the eigenvalues of the reduced density matrix in
    descending order, ``a_vectors[:, k]`` and ``b_vectors[:, k]`` the
    paired Schmidt vectors, so that
    ``state = sum_k sqrt(eigenvalues[k]) * kron(a_k, b_k)``.
    """

    eigenvalues: np.ndarray
    rank: int
    a_vectors: np.ndarray
    b_vectors: np.ndarray

    @property
    def coefficients(self) -> np.ndarray:
        return np.sqrt(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        d = self.a_vectors.shape[0]
        out = np.zeros(d * d, dtype=complex)
        for s, a, b in zip(self.coefficients, self.a_vectors.T, self.b_vectors.T):
            out += s * np.kron(a, b)
        return out


def schmidt_from_amplitude_matrix(m, rank_tol: float = RANK_TOL) -> SchmidtResult:
    """Schmidt decomposition from the amplitude matrix ``M[i, j] = <ij|psi>``.

    The A-side vectors are eigenvectors of ``M M^dagger``. Each eigenvalue is
    re-evaluated as the Rayleigh quotient ``|M^dagger u|^2``, which keeps tiny
    Schmidt weights accurate to machine precision instead of ``sqrt(eps)``.
    B-side vectors are ``M^T conj(u) / sqrt(mu)``; vanishing weights get a
    deterministic completion of the basis.
    """
    m = as_square(m, (2, 3))
    norm = float(np.sum(np.abs(m) ** 2))
    if abs(norm - 1.0) > NORM_TOL:
        raise NotNormalized(f"Tr(M M^dagger) = {norm!r}, expected 1")
    d = m.shape[0]
    eig = hermitian_eigen(m @ m.conj().T)
    u = eig.eigenvectors[:, ::-1]
    images = [m.T @ np.conj(u[:, k]) for k in range(d)]
    coeffs = np.array([np.linalg.norm(w) for w in images])
    order = np.argsort(-coeffs, kind="stable")
    u = u[:, order]
    images = [images[k] for k in order]
    coeffs = coeffs[order]

    b_vecs: list[np.ndarray | None] = []
    for s, w in zip(coeffs, images):
        if s <= 1e-14:
            b_vecs.append(None)
            continue
        w = w / s
        for prev in b_vecs:
            if prev is not None:
                w = w - np.vdot(prev, w) * prev
        b_vecs.append(w / np.linalg.norm(w))
    known = [w for w in b_vecs if w is not None]
    proj = np.eye(d, dtype=complex) - sum((np.outer(w, w.conj()) for w in known), np.zeros((d, d)))
    fill = iter(_orthonormal_fill(proj, d - len(known)))
    b = np.column_stack([w if w is not None else canonical_phase(next(fill)) for w in b_vecs])

    mu = coeffs**2
    rank = int(np.sum(mu > rank_tol))
    return SchmidtResult(mu, rank, u, b)


def von_neumann_entropy(weights) -> float:
    """``-sum w ln w`` in nats with ``0 ln 0 = 0``; weights below 0 count as 0."""
    w = np.asarray(weights, dtype=float)
    w = w[w > 0.0]
    return float(-np.sum(w * np.log(w))) + 0.0
