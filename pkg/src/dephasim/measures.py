"""Mixedness and entanglement of the channel outputs.

All functions accept a single matrix or a stack ``(..., n, n)`` and return a
float or an array of matching leading shape.  Eigenvalues come from a
cyclic complex Jacobi iteration, written out here because the matrices are
tiny and the method gives small eigenvalues to full absolute accuracy.
"""

from __future__ import annotations

import numpy as np

from .errors import EigenNotConverged, InvalidDensityMatrix
from .states import PairAmplitudes, _as_correlation

__all__ = [
    "SIGMA_Y",
    "eigh_jacobi",
    "eigvals_hermitian_4",
    "validate_density_matrix",
    "linear_entropy_2",
    "linear_entropy_4",
    "concurrence",
    "concurrence_closed",
]

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(SIGMA_Y, SIGMA_Y)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
# eigenvalues above -CLAMP_TOL are rounding dust and are clamped to zero
CLAMP_TOL = 1e-9
JACOBI_TOL = 1e-14
MAX_SWEEPS = 100


def _rotation(app, aqq, apq):
    """Unitary Jacobi rotation zeroing ``apq`` of ``[[app, apq], [apq*, aqq]]``.

    Returns ``(c, s)`` with the rotation ``[[c, s], [-conj(s), c]]``; ``c`` is
    real.  Arrays are processed elementwise.
    """
    mag = np.abs(apq)
    nz = mag > 0
    safe = np.where(nz, mag, 1.0)
    theta = (aqq - app) / (2.0 * safe)
    t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(nz, t, 0.0)
    c = np.sqrt(1.0 / (t * t + 1.0))
    phase = np.where(nz, apq / safe, 1.0)
    return c, t * c * phase


def _off_norm(A):
    n = A.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt(np.sum(np.abs(A[..., mask]) ** 2, axis=-1))


def eigh_jacobi(M, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    """Eigen-decomposition of Hermitian matrices by cyclic Jacobi sweeps.

    Parameters
    ----------
    M : array_like, shape (..., n, n)
        Hermitian to within 1e-10 relative; it is symmetrized first.

    Returns
    -------
    w : ndarray, shape (..., n)
        Eigenvalues in non-increasing order.
    V : ndarray, shape (..., n, n)
        Unitary matrix whose columns are the matching eigenvectors.

    Raises
    ------
    EigenNotConverged
        If the off-diagonal norm is still above ``tol * ||M||_F`` after
        ``max_sweeps`` sweeps.
    """
    M = np.asarray(M, dtype=complex)
    n = M.shape[-1]
    if M.shape[-2] != n:
        raise ValueError("expected square matrices")
    scale = np.linalg.norm(M, axis=(-2, -1))
    asym = np.linalg.norm(M - np.swapaxes(M.conj(), -1, -2), axis=(-2, -1))
    if np.any(asym > 1e-10 * np.maximum(scale, 1.0)):
        raise ValueError("matrix is not Hermitian")
    A = 0.5 * (M + np.swapaxes(M.conj(), -1, -2))
    V = np.broadcast_to(np.eye(n, dtype=complex), A.shape).copy()

    for _ in range(max_sweeps):
        if np.all(_off_norm(A) <= tol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                c, s = _rotation(A[..., p, p].real, A[..., q, q].real, A[..., p, q])
                c, s = c[..., None], s[..., None]
                # columns: A <- A J
                colp, colq = A[..., :, p].copy(), A[..., :, q].copy()
                A[..., :, p] = c * colp - s.conj() * colq
                A[..., :, q] = s * colp + c * colq
                # rows: A <- J^H A
                rowp, rowq = A[..., p, :].copy(), A[..., q, :].copy()
                A[..., p, :] = c * rowp - s * rowq
                A[..., q, :] = s.conj() * rowp + c * rowq
                A[..., p, q] = 0.0
                A[..., q, p] = 0.0
                vp, vq = V[..., :, p].copy(), V[..., :, q].copy()
                V[..., :, p] = c * vp - s.conj() * vq
                V[..., :, q] = s * vp + c * vq
    else:
        if not np.all(_off_norm(A) <= tol * scale):
            raise EigenNotConverged(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.diagonal(A, axis1=-2, axis2=-1).real
    order = np.argsort(-w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    V = np.take_along_axis(V, order[..., None, :], axis=-1)
    return w, V


def eigvals_hermitian_4(M):
    """Eigenvalues of 4x4 Hermitian matrices, non-increasing."""
    M = np.asarray(M)
    if M.shape[-2:] != (4, 4):
        raise ValueError("expected 4x4 matrices")
    return eigh_jacobi(M)[0]


def _singular_values_jacobi(B, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    """Singular values by one-sided (Hestenes) Jacobi on the columns of ``B``.

    Orthogonalizing the columns is the Jacobi method applied implicitly to
    ``B^H B``; reading the singular values as column norms avoids taking
    square roots of eigenvalues near zero, so tiny singular values keep full
    absolute accuracy.
    """
    B = np.array(B, dtype=complex)
    n = B.shape[-1]
    for _ in range(max_sweeps):
        worst = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                bp, bq = B[..., :, p].copy(), B[..., :, q].copy()
                alpha = np.sum(np.abs(bp) ** 2, axis=-1)
                beta = np.sum(np.abs(bq) ** 2, axis=-1)
                gamma = np.sum(bp.conj() * bq, axis=-1)
                denom = np.sqrt(alpha * beta)
                ratio = np.abs(gamma) / np.where(denom > 0, denom, 1.0)
                worst = max(worst, float(np.max(np.where(denom > 0, ratio, 0.0), initial=0.0)))
                c, s = _rotation(alpha, beta, gamma)
                c, s = c[..., None], s[..., None]
                B[..., :, p] = c * bp - s.conj() * bq
                B[..., :, q] = s * bp + c * bq
        if worst <= tol:
            break
    else:
        raise EigenNotConverged(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")
    sv = np.sqrt(np.sum(np.abs(B) ** 2, axis=-2))
    return -np.sort(-sv, axis=-1)


def validate_density_matrix(rho, dim=None):
    """Check Hermiticity, unit trace and positivity; return the eigenvalues.

    Eigenvalues in ``[-1e-9, 0)`` are accepted as rounding noise and clamped
    to zero in the returned array.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim < 2 or rho.shape[-1] != rho.shape[-2]:
        raise InvalidDensityMatrix(f"expected square matrices, got shape {rho.shape}")
    if dim is not None and rho.shape[-1] != dim:
        raise InvalidDensityMatrix(f"expected {dim}x{dim} matrices, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidDensityMatrix("matrix has non-finite entries")
    herm = np.max(np.abs(rho - np.swapaxes(rho.conj(), -1, -2)), axis=(-2, -1))
    if np.any(herm > HERMITIAN_TOL):
        raise InvalidDensityMatrix(f"not Hermitian (deviation {np.max(herm):.3g})")
    trace = np.trace(rho, axis1=-2, axis2=-1)
    if np.any(np.abs(trace - 1.0) > TRACE_TOL):
        raise InvalidDensityMatrix("trace differs from 1")
    w = eigh_jacobi(rho)[0]
    if np.any(w < -CLAMP_TOL):
        raise InvalidDensityMatrix(f"negative eigenvalue {np.min(w):.3g}")
    return np.maximum(w, 0.0)


def _purity(rho):
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return np.sum(np.abs(rho) ** 2, axis=(-2, -1))


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def linear_entropy_2(rho):
    """Normalized linear entropy ``2 [1 - Tr(rho^2)]`` of a qubit state."""
    validate_density_matrix(rho, dim=2)
    s = 2.0 * (1.0 - _purity(np.asarray(rho, dtype=complex)))
    return _scalar(np.clip(s, 0.0, 1.0))


def linear_entropy_4(rho):
    """Normalized linear entropy ``(4/3) [1 - Tr(rho^2)]`` of a two-qubit state."""
    validate_density_matrix(rho, dim=4)
    s = 4.0 / 3.0 * (1.0 - _purity(np.asarray(rho, dtype=complex)))
    return _scalar(np.clip(s, 0.0, 1.0))


def concurrence(rho):
    """Wootters concurrence of two-qubit density matrices.

    With ``rho_tilde = (sy x sy) rho* (sy x sy)`` the square roots of the
    eigenvalues of ``rho rho_tilde`` equal those of the Hermitian matrix
    ``sqrt(rho) rho_tilde sqrt(rho) = M M^H`` where
    ``M = sqrt(rho) (sy x sy) sqrt(rho)* (sy x sy)``.  They are obtained
    directly as singular values of ``M``.
    """
    rho = np.asarray(rho, dtype=complex)
    validate_density_matrix(rho, dim=4)
    w, V = eigh_jacobi(rho)
    w = np.maximum(w, 0.0)
    sqrt_rho = (V * np.sqrt(w)[..., None, :]) @ np.swapaxes(V.conj(), -1, -2)
    K = _YY @ sqrt_rho.conj() @ _YY
    M = sqrt_rho @ K
    sv = _singular_values_jacobi(np.swapaxes(M.conj(), -1, -2))
    c = sv[..., 0] - sv[..., 1] - sv[..., 2] - sv[..., 3]
    return _scalar(np.clip(c, 0.0, 1.0))


def concurrence_closed(amps, G):
    """``2 |a| |b| |G|`` for the dephased state ``a|HH> + b|VV>``."""
    if not isinstance(amps, PairAmplitudes):
        amps = PairAmplitudes(*amps)
    G = _as_correlation(G)
    return _scalar(2.0 * abs(amps.a) * abs(amps.b) * np.abs(G))
