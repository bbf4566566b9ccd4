"""Involutions sigma of the classical groups and the split g = k + p.

``k`` is the +1 eigenspace of d(sigma), ``p`` the -1 eigenspace. K itself is
never built as a set: it is represented through ``k`` (for sampling) and
the fixed-point predicate ``sigma(k) = k`` (for membership).
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg as sla

from .errors import PreconditionError, ValidationFailure
from .liegroup import (AlgebraBasis, GroupSpec, algebra_basis, algebra_residual,
                       bracket, check_group_membership, random_element)
from .numkernel import ALGEBRA_TOL, MEMBERSHIP_TOL, PROJECTION_TOL, as_square

__all__ = [
    "InvolutionKind", "Involution", "SymmetricTriple", "apply_sigma", "dsigma",
    "dsigma_matrix", "split_algebra", "project_p", "project_k",
    "check_involution",
]

_CLOSURE_TOL = 1e-9
_SAMPLE_COUNT = 20


class InvolutionKind(str, Enum):
    TRANSPOSE_INVERSE = "TransposeInverse"
    CONJUGATE_INVERSE = "ConjugateInverse"
    INNER = "Inner"


@dataclass(frozen=True, eq=False)
class Involution:
    """sigma(g) = (g^T)^-1, (g*)^-1 or s g s^-1.

    For ``Inner`` the matrix ``s`` must square to a nonzero multiple of the
    identity so that conjugation by it is involutive.
    """

    kind: InvolutionKind
    s: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, "kind", InvolutionKind(self.kind))
        if self.kind is InvolutionKind.INNER:
            if self.s is None:
                raise PreconditionError("Inner involution requires s")
            s = as_square(self.s)
            s2 = s @ s
            c = np.trace(s2) / s.shape[0]
            if abs(c) == 0 or np.linalg.norm(s2 - c * np.eye(s.shape[0])) > ALGEBRA_TOL * abs(c) * s.shape[0]:
                raise PreconditionError("s^2 must be a nonzero multiple of the identity")
            s = s.copy()
            s.setflags(write=False)
            object.__setattr__(self, "s", s)
            object.__setattr__(self, "_s_inv", np.linalg.inv(s))
        elif self.s is not None:
            raise PreconditionError(f"{self.kind.value} takes no s matrix")

    def describe(self):
        if self.kind is InvolutionKind.INNER:
            return {"kind": self.kind.value,
                    "s": np.real_if_close(self.s).tolist()}
        return {"kind": self.kind.value}


def apply_sigma(inv, g):
    g = as_square(g)
    if inv.kind is InvolutionKind.TRANSPOSE_INVERSE:
        return np.linalg.inv(g.T)
    if inv.kind is InvolutionKind.CONJUGATE_INVERSE:
        return np.linalg.inv(g.conj().T)
    if inv.s.shape != g.shape:
        raise PreconditionError(f"s is {inv.s.shape}, element is {g.shape}")
    return inv.s @ g @ inv._s_inv


def dsigma(inv, x):
    """Differential of sigma applied to the algebra element ``x``."""
    x = np.asarray(x)
    if inv.kind is InvolutionKind.TRANSPOSE_INVERSE:
        return -x.T
    if inv.kind is InvolutionKind.CONJUGATE_INVERSE:
        return -x.conj().T
    return inv.s @ x @ inv._s_inv


def _dsigma_on(inv, basis):
    return np.array([basis.coords(dsigma(inv, b)) for b in basis.mats]).T


def dsigma_matrix(spec, inv, basis=None):
    """Matrix of d(sigma) in ``basis`` coordinates (canonical basis by default)."""
    basis = algebra_basis(spec) if basis is None else basis
    if basis.spec != spec:
        raise PreconditionError("basis belongs to a different group")
    return _dsigma_on(inv, basis)


def _eigenspace_basis(spec, g_basis, projector):
    if projector.shape[0] == 0:
        return AlgebraBasis(spec, np.zeros((0, spec.n, spec.n), dtype=spec.dtype))
    q, r, _ = sla.qr(projector, pivoting=True)
    diag = np.abs(np.diag(r))
    rank = int(np.count_nonzero(diag > 1e-8 * max(diag.max(), 1.0)))
    coeffs = q[:, :rank].T
    mats = np.array([g_basis.combine(c) for c in coeffs]).reshape(rank, spec.n, spec.n)
    mats.setflags(write=False)
    return AlgebraBasis(spec, mats)


@dataclass(frozen=True, eq=False)
class SymmetricTriple:
    """A validated (group, involution) pair with bases of g, k and p.

    ``dsigma_g`` is d(sigma) in ``g_basis`` coordinates; ``k_coords`` and
    ``p_coords`` hold the k- and p-basis vectors in the same coordinates
    (one vector per row).
    """

    spec: GroupSpec
    inv: Involution
    g_basis: AlgebraBasis
    k_basis: AlgebraBasis
    p_basis: AlgebraBasis
    dsigma_g: np.ndarray
    k_coords: np.ndarray
    p_coords: np.ndarray
    triple_id: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def sigma(self, g):
        return apply_sigma(self.inv, g)

    def dsigma(self, x):
        return dsigma(self.inv, x)

    def identity(self):
        return self.spec.identity()

    def with_id(self, triple_id):
        return SymmetricTriple(self.spec, self.inv, self.g_basis, self.k_basis,
                               self.p_basis, self.dsigma_g, self.k_coords,
                               self.p_coords, triple_id)


def project_p(triple, x):
    """(X - d(sigma) X) / 2."""
    x = np.asarray(x)
    return (x - triple.dsigma(x)) / 2


def project_k(triple, x):
    """X - project_p(X), so the two projections sum to X."""
    x = np.asarray(x)
    return x - project_p(triple, x)


def check_involution(spec, inv, seed=0, samples=_SAMPLE_COUNT, tol=MEMBERSHIP_TOL):
    """Statistical check that ``inv`` is an involutive automorphism of ``spec``.

    Returns a list of violation messages (empty when all checks pass).
    """
    problems = []
    for i in range(samples):
        g = random_element(spec, seed + 2 * i)
        h = random_element(spec, seed + 2 * i + 1)
        sg = apply_sigma(inv, g)
        scale = np.linalg.norm(g)
        if not check_group_membership(spec, sg, tol).is_in:
            problems.append(f"sample {i}: sigma(g) leaves the group")
            continue
        twice = np.linalg.norm(apply_sigma(inv, sg) - g) / scale
        if twice > tol:
            problems.append(f"sample {i}: sigma(sigma(g)) != g (residual {twice:.3e})")
        lhs = apply_sigma(inv, g @ h)
        hom = np.linalg.norm(lhs - sg @ apply_sigma(inv, h)) / np.linalg.norm(lhs)
        if hom > tol:
            problems.append(f"sample {i}: sigma(gh) != sigma(g)sigma(h) (residual {hom:.3e})")
    return problems


def _closure_problems(triple):
    problems = []
    k, p = triple.k_basis.mats, triple.p_basis.mats

    def check(a_set, b_set, target_is_k, label):
        worst = 0.0
        for i, a in enumerate(a_set):
            start = i if a_set is b_set else 0
            for b in b_set[start:]:
                c = bracket(a, b)
                off = project_p(triple, c) if target_is_k else project_k(triple, c)
                worst = max(worst, float(np.linalg.norm(off)))
        if worst > _CLOSURE_TOL:
            problems.append(f"{label} violated (residual {worst:.3e})")

    check(k, k, True, "[k,k] in k")
    check(k, p, False, "[k,p] in p")
    check(p, p, True, "[p,p] in k")
    return problems


def split_algebra(spec, inv, triple_id=""):
    """Build the symmetric triple: eigenspace bases of d(sigma) plus validation.

    Raises
    ------
    ValidationFailure
        When d(sigma) does not preserve the algebra, is not involutive,
        fails the bracket relations, or sigma fails its sampled checks.
    """
    g_basis = algebra_basis(spec)
    problems = []
    for b in g_basis.mats:
        img = dsigma(inv, b)
        res = g_basis.residual(img) + algebra_residual(spec, img)
        if res > ALGEBRA_TOL * max(1.0, np.linalg.norm(img)):
            problems.append(f"d(sigma) leaves the algebra (residual {res:.3e})")
            break
    if problems:
        raise ValidationFailure("; ".join(problems))
    d = _dsigma_on(inv, g_basis)
    dim = g_basis.dim
    eye = np.eye(dim)
    if np.linalg.norm(d @ d - eye) > ALGEBRA_TOL * max(dim, 1):
        raise ValidationFailure("d(sigma) does not square to the identity")
    k_basis = _eigenspace_basis(spec, g_basis, (eye + d) / 2)
    p_basis = _eigenspace_basis(spec, g_basis, (eye - d) / 2)
    k_coords = np.array([g_basis.coords(b) for b in k_basis.mats]).reshape(k_basis.dim, dim)
    p_coords = np.array([g_basis.coords(b) for b in p_basis.mats]).reshape(p_basis.dim, dim)
    triple = SymmetricTriple(spec, inv, g_basis, k_basis, p_basis, d,
                             k_coords, p_coords, triple_id)

    if k_basis.dim + p_basis.dim != dim:
        problems.append(f"dim k + dim p = {k_basis.dim + p_basis.dim} != dim g = {dim}")
    for label, basis, sign in (("k", k_basis, 1.0), ("p", p_basis, -1.0)):
        for b in basis.mats:
            res = np.linalg.norm(dsigma(inv, b) - sign * b)
            if res > ALGEBRA_TOL:
                problems.append(f"d(sigma) != {sign:+.0f} on {label} (residual {res:.3e})")
                break
    problems += _closure_problems(triple)
    problems += check_involution(spec, inv)
    if problems:
        raise ValidationFailure("; ".join(problems))
    return triple


def in_p(triple, x, tol=PROJECTION_TOL):
    return float(np.linalg.norm(project_k(triple, x))) <= tol
