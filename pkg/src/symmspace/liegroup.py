"""Classical matrix groups: descriptors, Lie algebra bases, membership, Ad.

Group and algebra elements are plain ``(n, n)`` arrays. The group they
belong to travels separately as a :class:`GroupSpec`.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
import scipy.linalg as sla

from .numkernel import ALGEBRA_TOL, MEMBERSHIP_TOL, as_square, collapse_real
from .errors import ShapeError

__all__ = [
    "Family", "GroupSpec", "AlgebraBasis", "GroupVerdict",
    "algebra_basis", "check_group_membership", "bracket", "adjoint_matrix",
    "ad_matrix", "algebra_residual", "random_element", "random_algebra_element",
]


class Family(str, Enum):
    SL_REAL = "SL_real"
    SU = "SU"
    SO = "SO"
    SO_INDEFINITE = "SO_indefinite"


@dataclass(frozen=True)
class GroupSpec:
    """Which classical group: family, matrix size and (for SO(p,q)) signature.

    Always the connected group; for ``SO_indefinite`` the identity
    component of O(p, q).
    """

    family: Family
    n: int
    signature: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if self.family in (Family.SU, Family.SO) and self.n < 2:
            raise ValueError(f"{self.family.value} needs n >= 2")
        if self.family is Family.SO_INDEFINITE:
            if self.signature is None or len(self.signature) != 2:
                raise ValueError("SO_indefinite needs a signature (p, q)")
            p, q = (int(v) for v in self.signature)
            if p < 0 or q < 0 or p + q != self.n:
                raise ValueError(f"signature {self.signature} does not sum to n={self.n}")
            object.__setattr__(self, "signature", (p, q))
        elif self.signature is not None:
            raise ValueError("signature is only meaningful for SO_indefinite")

    @property
    def is_real(self):
        return self.family is not Family.SU

    @property
    def is_compact(self):
        return self.family in (Family.SU, Family.SO)

    @property
    def dtype(self):
        return float if self.is_real else complex

    @property
    def dim(self):
        n = self.n
        if self.family in (Family.SL_REAL, Family.SU):
            return n * n - 1
        return n * (n - 1) // 2

    @property
    def J(self):
        """The form preserved by the group: identity except for SO(p, q)."""
        if self.family is Family.SO_INDEFINITE:
            p, q = self.signature
            return np.diag(np.r_[np.ones(p), -np.ones(q)])
        return np.eye(self.n)

    def identity(self):
        return np.eye(self.n, dtype=self.dtype)

    def label(self):
        if self.family is Family.SO_INDEFINITE:
            return f"SO({self.signature[0]},{self.signature[1]})"
        if self.family is Family.SL_REAL:
            return f"SL({self.n},R)"
        return f"{self.family.value}({self.n})"


def _realvec(m):
    m = np.asarray(m)
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


@dataclass(frozen=True, eq=False)
class AlgebraBasis:
    """An orthonormal basis of a real subspace of the Lie algebra.

    Orthonormal for ``<X, Y> = Re tr(X* Y)``. ``mats`` has shape
    ``(dim, n, n)``.
    """

    spec: GroupSpec
    mats: np.ndarray

    @property
    def dim(self):
        return self.mats.shape[0]

    @property
    def vectors(self):
        return list(self.mats)

    def _stacked(self):
        d, n, _ = self.mats.shape
        return np.concatenate([self.mats.real.reshape(d, -1),
                               self.mats.imag.reshape(d, -1)], axis=1)

    def coords(self, x):
        """Real coordinates of the orthogonal projection of ``x`` onto the span."""
        return self._stacked() @ _realvec(x)

    def combine(self, c):
        out = np.tensordot(np.asarray(c, dtype=float), self.mats, axes=1)
        return out.real.copy() if self.spec.is_real else out

    def project(self, x):
        return self.combine(self.coords(x))

    def residual(self, x):
        """Distance from ``x`` to the span."""
        return float(np.linalg.norm(np.asarray(x) - self.project(x)))

    def gram(self):
        v = self._stacked()
        return v @ v.T


def _unit(n, i, j):
    e = np.zeros((n, n), dtype=complex)
    e[i, j] = 1.0
    return e


def _canonical_vectors(spec):
    n = spec.n
    fam = spec.family
    out = []
    if fam is Family.SL_REAL:
        for i in range(n):
            for j in range(n):
                if i != j:
                    out.append(_unit(n, i, j))
        for i in range(n - 1):
            out.append(_unit(n, i, i) - _unit(n, i + 1, i + 1))
    elif fam is Family.SU:
        for i in range(n):
            for j in range(i + 1, n):
                out.append(_unit(n, i, j) - _unit(n, j, i))
                out.append(1j * (_unit(n, i, j) + _unit(n, j, i)))
        for i in range(n - 1):
            out.append(1j * (_unit(n, i, i) - _unit(n, i + 1, i + 1)))
    elif fam is Family.SO:
        for i in range(n):
            for j in range(i + 1, n):
                out.append(_unit(n, i, j) - _unit(n, j, i))
    elif fam is Family.SO_INDEFINITE:
        p, _ = spec.signature
        for i in range(n):
            for j in range(i + 1, n):
                same_block = (i < p) == (j < p)
                sign = -1.0 if same_block else 1.0
                out.append(_unit(n, i, j) + sign * _unit(n, j, i))
    else:  # pragma: no cover - Family is closed
        raise ValueError(f"unsupported family {fam}")
    return out


@lru_cache(maxsize=None)
def algebra_basis(spec):
    """Canonical orthonormal basis of the Lie algebra of ``spec``.

    Elementary-matrix generators, Gram-Schmidt orthonormalized in order
    (only the diagonal generators are actually mixed).
    """
    vecs = _canonical_vectors(spec)
    if len(vecs) == 0:
        return AlgebraBasis(spec, np.zeros((0, spec.n, spec.n), dtype=spec.dtype))
    stacked = np.array([_realvec(v) for v in vecs]).T
    q, r = np.linalg.qr(stacked)
    q = q * np.sign(np.diag(r))
    nn = spec.n * spec.n
    mats = (q[:nn].T + 1j * q[nn:].T).reshape(-1, spec.n, spec.n)
    if spec.is_real:
        mats = mats.real.copy()
    mats.setflags(write=False)
    return AlgebraBasis(spec, mats)


def algebra_residual(spec, x):
    """Size of the violation of the algebra's linear relations by ``x``."""
    x = np.asarray(x)
    fam = spec.family
    if fam is Family.SL_REAL:
        return float(abs(np.trace(x)) + np.linalg.norm(x.imag))
    if fam is Family.SU:
        return float(abs(np.trace(x)) + np.linalg.norm(x + x.conj().T))
    J = spec.J
    return float(np.linalg.norm(x.T @ J + J @ x) + np.linalg.norm(x.imag))


@dataclass(frozen=True)
class GroupVerdict:
    """Outcome of a group membership check: ``In`` or ``Out`` with a reason."""

    verdict: str
    relation: str = ""
    residual: float = 0.0

    @property
    def is_in(self):
        return self.verdict == "In"


def check_group_membership(spec, m, tol=MEMBERSHIP_TOL):
    """Check the defining relations of ``spec`` on ``m``.

    Residuals for the quadratic relations are relative:
    ``||m* J m - J|| / ||m||^2``. The determinant residual is ``|det m - 1|``.
    """
    m = as_square(m)
    if m.shape[0] != spec.n:
        raise ShapeError(f"expected {spec.n}x{spec.n}, got {m.shape}")
    checks = []
    if spec.is_real:
        imag = float(np.linalg.norm(np.imag(m)) / max(np.linalg.norm(m), 1.0))
        checks.append(("real entries", imag))
    checks.append(("det = 1", float(abs(np.linalg.det(m) - 1.0))))
    if spec.family is not Family.SL_REAL:
        J = spec.J
        scale = np.linalg.norm(m) ** 2
        quad = np.linalg.norm(m.conj().T @ J @ m - J) / scale
        name = {Family.SU: "m* m = I", Family.SO: "m^T m = I",
                Family.SO_INDEFINITE: "m^T J m = J"}[spec.family]
        checks.append((name, float(quad)))
    for name, res in checks:
        if res > tol:
            return GroupVerdict("Out", name, res)
    if spec.family is Family.SO_INDEFINITE:
        p, q = spec.signature
        mr = np.real(m)
        # identity component of O(p,q): both diagonal blocks have positive det
        blocks = [np.linalg.det(mr[:p, :p]) if p else 1.0,
                  np.linalg.det(mr[p:, p:]) if q else 1.0]
        if min(blocks) <= 0:
            return GroupVerdict("Out", "not in identity component: block determinant sign",
                                float(min(blocks)))
    worst = max(res for _, res in checks)
    return GroupVerdict("In", "", worst)


def bracket(x, y):
    """Lie bracket ``XY - YX``."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape or x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ShapeError(f"bracket needs equal square shapes, got {x.shape} and {y.shape}")
    return x @ y - y @ x


def adjoint_matrix(g, basis):
    """Matrix of ``X -> g X g^-1`` in ``basis`` coordinates."""
    g = as_square(g)
    if g.shape[0] != basis.spec.n:
        raise ShapeError(f"element is {g.shape}, basis is for n={basis.spec.n}")
    g_inv = np.linalg.inv(g)
    conj = np.einsum("ij,djk,kl->dil", g, basis.mats, g_inv)
    return np.array([basis.coords(c) for c in conj]).T


def ad_matrix(x, basis):
    """Matrix of ``Y -> [X, Y]`` in ``basis`` coordinates."""
    return np.array([basis.coords(bracket(x, b)) for b in basis.mats]).T


def random_algebra_element(basis, rng, scale=1.0):
    """Gaussian combination of ``basis`` vectors with standard deviation ``scale``."""
    return basis.combine(scale * rng.standard_normal(basis.dim))


def random_element(spec, seed, scale=1.0):
    """``exp(X)`` for a seeded Gaussian ``X`` in the Lie algebra.

    Deterministic in ``(spec, seed, scale)``.
    """
    rng = np.random.default_rng(int(seed) % 2**64)
    x = random_algebra_element(algebra_basis(spec), rng, scale)
    g = sla.expm(x)
    return collapse_real(g) if spec.is_real else g
