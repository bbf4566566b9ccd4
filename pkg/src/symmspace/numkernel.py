"""Dense matrix primitives: exponential, logarithm, square root, kernel dimension.

Matrices are plain 2-D numpy arrays. Real inputs stay real where the
result is real; complex inputs are returned complex. ``collapse_real``
drops imaginary parts that are at roundoff level.

All tolerances are relative to the input norm unless a docstring says
otherwise. The defaults below are the single tolerance policy used by
every downstream module.
"""
from enum import Enum

import numpy as np
import scipy.linalg as sla

from .errors import (NoLogarithm, NoSquareRoot, NonFiniteError, ShapeError,
                     SingularMatrixError)

__all__ = [
    "MEMBERSHIP_TOL", "RANK_TOL", "ALGEBRA_TOL", "PROJECTION_TOL",
    "KERNEL_ARITH_TOL", "REAL_COLLAPSE_TOL", "BRANCH_BAND", "DISTINCT_TOL",
    "LogPolicy", "as_matrix", "as_square", "collapse_real", "is_normal",
    "mat_exp", "mat_log", "mat_sqrt", "kernel_dim", "numerical_rank",
    "singular_values",
]

MEMBERSHIP_TOL = 1e-8
RANK_TOL = 1e-8
ALGEBRA_TOL = 1e-10
PROJECTION_TOL = 1e-9
KERNEL_ARITH_TOL = 1e-12
REAL_COLLAPSE_TOL = 1e-10
BRANCH_BAND = 1e-10
DISTINCT_TOL = 1e-6

LOG_ROUNDTRIP_TOL = 1e-9
SQRT_ROUNDTRIP_TOL = 1e-8
_NORMAL_FAST_TOL = 1e-12
_SINGULAR_TOL = 1e-13


class LogPolicy(str, Enum):
    PRINCIPAL = "Principal"
    NORMAL_SPECTRAL = "NormalSpectral"


def as_matrix(a):
    """Validate ``a`` as a finite 2-D array and return it as an ndarray."""
    m = np.asarray(a)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.issubdtype(m.dtype, np.number):
        raise ShapeError(f"matrix entries must be numeric, got {m.dtype}")
    if m.dtype.kind not in "fc":
        m = m.astype(float)
    if not np.all(np.isfinite(m)):
        raise NonFiniteError("matrix contains NaN or Inf")
    return m


def as_square(a):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    return m


def collapse_real(m, tol=REAL_COLLAPSE_TOL):
    """Return the real part of ``m`` if every imaginary part is <= ``tol``."""
    m = np.asarray(m)
    if np.iscomplexobj(m) and np.all(np.abs(m.imag) <= tol):
        return np.ascontiguousarray(m.real)
    return m


def is_normal(m, tol=ALGEBRA_TOL):
    """True if ``||M M* - M* M|| <= tol * ||M||^2`` (Frobenius)."""
    mh = m.conj().T
    scale = max(np.linalg.norm(m) ** 2, np.finfo(float).tiny)
    return np.linalg.norm(m @ mh - mh @ m) <= tol * scale


def mat_exp(a):
    """Matrix exponential by scaling and squaring with a Pade core.

    Backed by :func:`scipy.linalg.expm` (Al-Mohy and Higham, 2009).
    """
    a = as_square(a)
    return sla.expm(a)


def _is_real_input(m):
    return not np.iscomplexobj(m) or np.all(m.imag == 0)


def _check_invertible(m):
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= _SINGULAR_TOL * s[0]:
        raise SingularMatrixError(
            f"matrix is numerically singular (sigma_min/sigma_max = {s[-1] / s[0]:.3e})")


def _roundtrip_ok(log_m, m, tol):
    return np.linalg.norm(sla.expm(log_m) - m) <= tol * np.linalg.norm(m)


def _finish_log(log_m, m, real_input):
    if real_input:
        log_m = collapse_real(log_m)
    if not _roundtrip_ok(log_m, m, LOG_ROUNDTRIP_TOL):
        raise NoLogarithm("logarithm failed the exp round-trip check")
    return log_m


def _principal_log(m):
    lam = np.linalg.eigvals(m)
    on_cut = (lam.real < 0) & (np.abs(lam.imag) <= BRANCH_BAND * np.abs(lam))
    if np.any(on_cut):
        bad = complex(lam[on_cut][0])
        raise NoLogarithm(f"eigenvalue {bad:.6g} on the closed negative real axis",
                          eigenvalue=bad)
    if is_normal(m, _NORMAL_FAST_TOL):
        # unitary diagonalization gives the same principal branch, much faster
        t, z = sla.schur(m.astype(complex), output="complex")
        return (z * np.log(np.diag(t))) @ z.conj().T
    return sla.logm(m)


def _normal_spectral_log(m):
    if not is_normal(m):
        raise NoLogarithm("matrix is not normal to tolerance")
    t, z = sla.schur(m.astype(complex), output="complex")
    lam = np.diag(t)
    near_minus_one = np.abs(lam + 1.0) <= BRANCH_BAND
    if np.any(near_minus_one):
        raise NoLogarithm("eigenvalue -1 has no canonical branch", eigenvalue=-1.0 + 0j)
    return (z * np.log(lam)) @ z.conj().T


def mat_log(m, branch_policy=LogPolicy.PRINCIPAL):
    """Matrix logarithm under the given branch policy.

    Parameters
    ----------
    m : array_like, shape (n, n)
        Invertible matrix.
    branch_policy : LogPolicy or str
        ``Principal``: the principal logarithm, undefined when an
        eigenvalue lies on the closed negative real axis. Normal inputs are
        handled by unitary diagonalization, everything else by inverse
        scaling and squaring (:func:`scipy.linalg.logm`).
        ``NormalSpectral``: for normal ``m`` only; takes the principal
        branch eigenvalue by eigenvalue and refuses only eigenvalue -1.

    Returns
    -------
    ndarray
        ``L`` with ``||exp(L) - m|| <= 1e-9 ||m||``.

    Raises
    ------
    NoLogarithm
        The branch cut was hit or the round-trip check failed.
    SingularMatrixError
        ``m`` is numerically singular.
    """
    m = as_square(m)
    policy = LogPolicy(branch_policy)
    _check_invertible(m)
    real_input = _is_real_input(m)
    if policy is LogPolicy.PRINCIPAL:
        log_m = _principal_log(m)
    else:
        log_m = _normal_spectral_log(m)
    return _finish_log(log_m, m, real_input)


def mat_sqrt(m):
    """Square root ``exp(log(m) / 2)``, trying Principal then NormalSpectral.

    Raises :class:`NoSquareRoot` when both logarithm policies fail.
    """
    m = as_square(m)
    reasons = []
    for policy in LogPolicy:
        try:
            log_m = mat_log(m, policy)
        except NoLogarithm as exc:
            reasons.append(f"{policy.value}: {exc}")
            continue
        root = sla.expm(log_m / 2)
        if _is_real_input(m):
            root = collapse_real(root)
        if np.linalg.norm(root @ root - m) <= SQRT_ROUNDTRIP_TOL * np.linalg.norm(m):
            return root
        reasons.append(f"{policy.value}: square failed round-trip check")
    raise NoSquareRoot("; ".join(reasons))


def singular_values(m):
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def kernel_dim(m, tol_rel=RANK_TOL):
    """Count singular values <= ``tol_rel * sigma_max`` (``tol_rel`` if m = 0).

    Only the min(rows, cols) singular values of the full SVD are counted,
    so ``kernel_dim + numerical_rank == min(m.shape)`` always.
    """
    if tol_rel <= 0:
        raise ValueError("tol_rel must be positive")
    s = singular_values(m)
    ref = s[0] if s[0] > 0 else 1.0
    return int(np.count_nonzero(s <= tol_rel * ref))


def numerical_rank(m, tol_rel=RANK_TOL):
    return min(np.shape(m)) - kernel_dim(m, tol_rel)
