"""Realization of G/K as P = exp(p) inside G.

Membership in P, Q = {g sigma(g)^-1} and R = {g : sigma(g) = g^-1}, the
factorization g = p k, the map phi(g) = g sigma(g)^-1 and the twisted
conjugation, component dimensions of R, transversality of cosets gK to P,
and sampled intersections gK n P.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product

import numpy as np
import scipy.linalg as sla

from .errors import (DecomposeFailure, NoLogarithm, NoSquareRoot,
                     PreconditionError, SingularMatrixError, UnsupportedKDimension)
from .involution import InvolutionKind, in_p, project_k
from .liegroup import Family, _realvec, adjoint_matrix, check_group_membership
from .numkernel import (DISTINCT_TOL, MEMBERSHIP_TOL, PROJECTION_TOL, RANK_TOL,
                        LogPolicy, as_square, is_normal, kernel_dim, mat_log,
                        numerical_rank)

__all__ = [
    "Verdict", "MembershipVerdict", "Decomposition", "ComponentReport",
    "IntersectionReport", "SU2Classification",
    "membership_R", "membership_P", "membership_Q", "phi_map",
    "twisted_conjugate", "sqrt_in_P", "decompose", "sandwich",
    "component_dim", "transversal", "intersect_coset", "su2_coset_classify",
    "su2_coset_point", "geodesic_point", "sigma_inverse",
]

_REFINE_ITER = 40
_RANDOM_STARTS = 8
_STARTS_SEED = 20240521


class Verdict(str, Enum):
    IN = "In"
    OUT = "Out"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True, eq=False)
class MembershipVerdict:
    """Verdict on g in P, Q or R.

    ``certificate`` is the log X in p for P, a witness h with
    h sigma(h)^-1 = g for Q, and None for R. ``trail`` lists what each
    decision tier tried.
    """

    verdict: Verdict
    set_name: str
    tier: str
    reason: str = ""
    residual: float = 0.0
    certificate: np.ndarray = None
    trail: tuple = ()

    @property
    def is_in(self):
        return self.verdict is Verdict.IN


@dataclass(frozen=True, eq=False)
class Decomposition:
    p: np.ndarray
    k: np.ndarray
    X: np.ndarray
    residual: float
    sigma_residual: float


@dataclass(frozen=True, eq=False)
class ComponentReport:
    """dim ker(d(sigma) + Ad(g)); a component dimension of R only when in_R."""

    g: np.ndarray
    in_R: bool
    dim: int

    @property
    def meaningful(self):
        return self.in_R


@dataclass(frozen=True, eq=False)
class IntersectionReport:
    coset_rep: np.ndarray
    points: list
    transversal: bool
    exhaustive: bool
    bound_K_cap_P: int = None
    transversal_flags: tuple = ()
    undecided: int = 0


@dataclass(frozen=True, eq=False)
class SU2Classification:
    """Closed-form description of pK n P for SU(2)/SO(2)."""

    kind: str
    a: float
    b: float
    c: float
    points: list = field(default_factory=list)
    exhaustive: bool = True


# ----------------------------------------------------------------------------
# small helpers

def _fro(m):
    return float(np.linalg.norm(m))


def _rel(a, b):
    return _fro(a - b) / max(_fro(b), np.finfo(float).tiny)


def sigma_inverse(triple, g):
    """sigma(g)^-1 computed without inverting twice where possible."""
    inv = triple.inv
    if inv.kind is InvolutionKind.TRANSPOSE_INVERSE:
        return g.T.copy()
    if inv.kind is InvolutionKind.CONJUGATE_INVERSE:
        return g.conj().T.copy()
    return inv.s @ np.linalg.inv(g) @ inv._s_inv


def _as_element(triple, g):
    g = as_square(g)
    if g.shape[0] != triple.spec.n:
        raise PreconditionError(f"expected {triple.spec.n}x{triple.spec.n}, got {g.shape}")
    return g


def _has_exact_form(triple):
    return (triple.spec.family in (Family.SL_REAL, Family.SO_INDEFINITE)
            and triple.inv.kind in (InvolutionKind.TRANSPOSE_INVERSE,
                                    InvolutionKind.CONJUGATE_INVERSE))


# ----------------------------------------------------------------------------
# membership

def membership_R(triple, g, tol=MEMBERSHIP_TOL):
    """In iff ``||sigma(g) - g^-1|| <= tol ||g^-1||``."""
    g = _as_element(triple, g)
    g_inv = np.linalg.inv(g)
    res = _rel(triple.sigma(g), g_inv)
    if res <= tol:
        return MembershipVerdict(Verdict.IN, "R", "R", residual=res)
    return MembershipVerdict(Verdict.OUT, "R", "R",
                             reason=f"sigma(g) != g^-1 (residual {res:.3e})", residual=res)


def _certify(triple, g, x, tol):
    """Return (X_p, residual) if ``x`` is a log of ``g`` lying in p, else None."""
    x = np.asarray(x)
    scale = max(1.0, _fro(x))
    if triple.spec.is_real:
        if _fro(np.imag(x)) > PROJECTION_TOL * scale:
            return None
        x = np.real(x)
    if triple.g_basis.residual(x) > PROJECTION_TOL * scale:
        return None
    if _fro(project_k(triple, x)) > PROJECTION_TOL:
        return None
    xp = triple.p_basis.project(x)
    res = _rel(sla.expm(xp), g)
    if res > tol:
        return None
    return xp, res


def _in_verdict(set_name, tier, cert, trail):
    xp, res = cert
    return MembershipVerdict(Verdict.IN, set_name, tier, residual=res,
                             certificate=xp, trail=tuple(trail))


def _exact_form_verdict(triple, g, tol, trail):
    if _fro(np.imag(g)) > tol * _fro(g):
        return MembershipVerdict(Verdict.OUT, "P", "exact-form", reason="not real",
                                 trail=tuple(trail))
    gr = np.real(g)
    asym = _rel(gr, gr.T)
    if asym > tol:
        return MembershipVerdict(Verdict.OUT, "P", "exact-form",
                                 reason=f"not symmetric (residual {asym:.3e})",
                                 residual=asym, trail=tuple(trail))
    w, v = np.linalg.eigh((gr + gr.T) / 2)
    if w[0] <= 0:
        return MembershipVerdict(Verdict.OUT, "P", "exact-form",
                                 reason=f"not positive-definite (min eigenvalue {w[0]:.6g})",
                                 trail=tuple(trail))
    cert = _certify(triple, g, (v * np.log(w)) @ v.T, tol)
    if cert is not None:
        return _in_verdict("P", "exact-form", cert, trail)
    trail.append("exact-form: symmetric log failed certification")
    return None


def _spectral_candidates(triple, g):
    """Eigenvalue-wise logs of a normal g, with one trace-balanced variant."""
    if not is_normal(g):
        return []
    t, z = sla.schur(np.asarray(g, dtype=complex), output="complex")
    ell = np.log(np.diag(t))
    variants = [ell]
    wraps = int(round(ell.imag.sum() / (2 * np.pi)))
    if wraps != 0:
        order = np.argsort(-ell.imag if wraps > 0 else ell.imag, kind="stable")
        balanced = ell.copy()
        balanced[order[:abs(wraps)]] -= np.sign(wraps) * 2j * np.pi
        variants.append(balanced)
    return [(z * v) @ z.conj().T for v in variants]


def _log_tier(triple, g, tol, trail):
    candidates = []
    for policy in LogPolicy:
        try:
            x = mat_log(g, policy)
        except (NoLogarithm, SingularMatrixError) as exc:
            trail.append(f"log[{policy.value}]: {exc}")
            continue
        cert = _certify(triple, g, x, tol)
        if cert is not None:
            return cert, candidates
        trail.append(f"log[{policy.value}]: logarithm not in p")
        candidates.append(x)
    for x in _spectral_candidates(triple, g):
        cert = _certify(triple, g, x, tol)
        if cert is not None:
            trail.append("log[spectral]: trace-balanced branch")
            return cert, candidates
        candidates.append(x)
    return None, candidates


def _refine_log_in_p(triple, g, c0):
    """Gauss-Newton on p-coordinates c minimizing ||exp(sum c_j P_j) - g||."""
    basis = triple.p_basis
    mats = basis.mats
    target = _realvec(g)
    c = np.array(c0, dtype=float)

    def resid(cv):
        return _realvec(sla.expm(basis.combine(cv))) - target

    r = resid(c)
    rn = np.linalg.norm(r)
    floor = 1e-14 * max(1.0, np.linalg.norm(target))
    for _ in range(_REFINE_ITER):
        if rn <= floor:
            break
        x = basis.combine(c)
        jac = np.array([_realvec(sla.expm_frechet(x, m, compute_expm=False))
                        for m in mats]).T
        step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        t = 1.0
        for _ in range(12):
            trial = c + t * step
            r_trial = resid(trial)
            rn_trial = np.linalg.norm(r_trial)
            if rn_trial < rn:
                break
            t /= 2
        else:
            break
        c, r, rn = trial, r_trial, rn_trial
    return basis.combine(c)


def _newton_tier(triple, g, tol, candidates, trail):
    basis = triple.p_basis
    starts = [basis.coords(x) for x in candidates]
    rng = np.random.default_rng(_STARTS_SEED)
    radius = np.pi * math.sqrt(triple.spec.n)
    for _ in range(_RANDOM_STARTS):
        d = rng.standard_normal(basis.dim)
        starts.append(d / np.linalg.norm(d) * radius * rng.uniform(0.2, 1.0))
    for c0 in starts:
        x = _refine_log_in_p(triple, g, c0)
        cert = _certify(triple, g, x, tol)
        if cert is not None:
            trail.append("newton: converged in p")
            return cert
    trail.append(f"newton: no convergence from {len(starts)} starts")
    return None


def membership_P(triple, g, tol=MEMBERSHIP_TOL):
    """Tiered decision of g in P = exp(p).

    1. Out when g is not in R (P is contained in R).
    2. Exact form for real groups with the Cartan involution g -> (g^T)^-1:
       g in P iff g is symmetric positive-definite.
    3. Logarithm search (Principal, NormalSpectral, trace-balanced spectral
       branches); In when some log lies in p.
    4. Out when dim ker(d(sigma) + Ad(g)) != dim p, since every component of
       R has constant dimension and the one through e is P.
    5. Compact groups only: Gauss-Newton over p-coordinates from every
       candidate log and a fixed set of deterministic starts.

    Otherwise Indeterminate; ``trail`` records what each tier tried.
    """
    g = _as_element(triple, g)
    trail = []
    r = membership_R(triple, g, tol)
    if not r.is_in:
        return MembershipVerdict(Verdict.OUT, "P", "R", reason=f"not in R: {r.reason}",
                                 residual=r.residual, trail=("R: out",))
    if _has_exact_form(triple):
        v = _exact_form_verdict(triple, g, tol, trail)
        if v is not None:
            return v
    cert, candidates = _log_tier(triple, g, tol, trail)
    if cert is not None:
        return _in_verdict("P", "log", cert, trail)
    dim = component_dim(triple, g).dim
    if dim != triple.p_basis.dim:
        trail.append(f"dimension: component dim {dim} != dim p {triple.p_basis.dim}")
        return MembershipVerdict(Verdict.OUT, "P", "dimension",
                                 reason=f"component of R through g has dimension {dim}, "
                                        f"P has dimension {triple.p_basis.dim}",
                                 trail=tuple(trail))
    if triple.spec.is_compact:
        cert = _newton_tier(triple, g, tol, candidates, trail)
        if cert is not None:
            return _in_verdict("P", "newton", cert, trail)
    return MembershipVerdict(Verdict.INDETERMINATE, "P", "none",
                             reason="no certificate and no obstruction found",
                             trail=tuple(trail))


def membership_Q(triple, g, tol=MEMBERSHIP_TOL):
    """g in Q with witness h = exp(X/2) satisfying h sigma(h)^-1 = g."""
    v = membership_P(triple, g, tol)
    if not v.is_in:
        return MembershipVerdict(v.verdict, "Q", v.tier, reason=v.reason,
                                 residual=v.residual, trail=v.trail)
    h = sla.expm(v.certificate / 2)
    res = _rel(h @ sigma_inverse(triple, h), g)
    if res > tol:
        return MembershipVerdict(Verdict.INDETERMINATE, "Q", v.tier,
                                 reason=f"witness check failed (residual {res:.3e})",
                                 trail=v.trail)
    return MembershipVerdict(Verdict.IN, "Q", v.tier, residual=res, certificate=h,
                             trail=v.trail)


# ----------------------------------------------------------------------------
# maps

def phi_map(triple, g):
    """phi(g) = g sigma(g)^-1; constant on cosets gK."""
    g = _as_element(triple, g)
    return g @ sigma_inverse(triple, g)


def twisted_conjugate(triple, g, h):
    """tau_g(h) = g h sigma(g)^-1."""
    g = _as_element(triple, g)
    h = _as_element(triple, h)
    return g @ h @ sigma_inverse(triple, g)


def sqrt_in_P(triple, q, tol=MEMBERSHIP_TOL):
    """Return (exp(X/2), X/2) for the certificate X of q in P.

    Raises
    ------
    PreconditionError
        q is certified outside P.
    NoSquareRoot
        membership of q is Indeterminate, so there is no certificate to halve.
    """
    v = membership_P(triple, q, tol)
    if v.verdict is Verdict.OUT:
        raise PreconditionError(f"element is not in P: {v.reason}")
    if not v.is_in:
        raise NoSquareRoot(f"membership in P undecided: {'; '.join(v.trail)}")
    half = v.certificate / 2
    root = sla.expm(half)
    if triple.spec.is_real:
        root = np.real(root)
    return root, half


def decompose(triple, g, tol=MEMBERSHIP_TOL):
    """Factor g = p k with p in P and sigma(k) = k.

    p is the square root in P of phi(g) = g sigma(g)^-1 = p^2 and k = p^-1 g.
    """
    g = _as_element(triple, g)
    q = phi_map(triple, g)
    try:
        p, half = sqrt_in_P(triple, q, tol)
    except (NoSquareRoot, PreconditionError) as exc:
        raise DecomposeFailure(f"no square root of phi(g) in P: {exc}",
                               spectrum=np.linalg.eigvals(q)) from exc
    k = np.linalg.solve(p, g)
    residual = _rel(p @ k, g)
    sigma_residual = _fro(triple.sigma(k) - k)
    if residual > tol or sigma_residual > tol:
        raise DecomposeFailure(
            f"factorization check failed (residual {residual:.3e}, "
            f"sigma(k)-k {sigma_residual:.3e})", spectrum=np.linalg.eigvals(q))
    return Decomposition(p, k, 2 * half, residual, sigma_residual)


def sandwich(triple, p, p2, tol=MEMBERSHIP_TOL, check=True):
    """p p2 p for p, p2 in P."""
    p = _as_element(triple, p)
    p2 = _as_element(triple, p2)
    if check:
        for name, m in (("p", p), ("p'", p2)):
            if not membership_P(triple, m, tol).is_in:
                raise PreconditionError(f"{name} is not certified in P")
    return p @ p2 @ p


def geodesic_point(triple, x, t):
    """exp(tX) for X in p: the point of P over the geodesic exp(tX) x0."""
    x = np.asarray(x)
    if not in_p(triple, x):
        raise PreconditionError("X is not in p")
    out = sla.expm(t * x)
    return np.real(out) if triple.spec.is_real else out


# ----------------------------------------------------------------------------
# dimensions and transversality

def component_dim(triple, g, tol_rel=RANK_TOL, tol=MEMBERSHIP_TOL):
    """dim ker(d(sigma) + Ad(g)), with in_R telling whether it is meaningful."""
    g = _as_element(triple, g)
    in_r = membership_R(triple, g, tol).is_in
    a = triple.dsigma_g + adjoint_matrix(g, triple.g_basis)
    return ComponentReport(g, in_r, kernel_dim(a, tol_rel))


def _transversal_matrix(triple, p):
    a = adjoint_matrix(np.linalg.inv(p), triple.g_basis) - triple.dsigma_g
    return np.hstack([a, triple.k_coords.T])


def transversal(triple, p, tol_rel=RANK_TOL, check=True):
    """Whether pK meets P transversally at p.

    The tangent of P at p, left-translated to e, is the image of
    X -> Ad(p^-1) X - d(sigma) X (derivative of the twisted orbit); the
    tangent of pK is k. Transversal iff together they span g.
    """
    p = _as_element(triple, p)
    if check and not membership_P(triple, p).is_in:
        raise PreconditionError("p is not certified in P")
    m = _transversal_matrix(triple, p)
    return numerical_rank(m, tol_rel) == triple.g_basis.dim


# ----------------------------------------------------------------------------
# coset intersections

def _k_period(triple, y):
    """Smallest t > 0 with exp(tY) = I, or None when not found."""
    lam = np.linalg.eigvals(y)
    if np.max(np.abs(lam.real)) > 1e-9:
        return None
    mags = np.abs(lam.imag)
    mags = mags[mags > 1e-9]
    if mags.size == 0:
        return None
    top = mags.max()
    mult = 1
    for m in mags:
        den = Fraction(float(m / top)).limit_denominator(24).denominator
        mult = mult * den // math.gcd(mult, den)
    period = 2 * np.pi * mult / top
    if _fro(sla.expm(period * y) - np.eye(y.shape[0])) > 1e-8:
        return None
    return period


def _left_gn(start, k_mats, resid_fn, dresid_fn, tol, max_iter=30):
    """Gauss-Newton over K with updates k <- k exp(sum d_j Y_j)."""
    k = start
    r = resid_fn(k)
    rn = _fro(r)
    for _ in range(max_iter):
        if rn <= tol:
            return k, rn
        jac = np.array([_realvec(dresid_fn(k, y)) for y in k_mats]).T
        step = np.linalg.lstsq(jac, -_realvec(r), rcond=None)[0]
        t = 1.0
        for _ in range(10):
            trial = k @ sla.expm(np.tensordot(t * step, k_mats, axes=1))
            r_trial = resid_fn(trial)
            if _fro(r_trial) < rn:
                break
            t /= 2
        else:
            return k, rn
        k, r, rn = trial, r_trial, _fro(r_trial)
    return k, rn


def _component_reps(triple, base_grid, k_mats):
    """Diagonal sign matrices fixed by sigma that are not in exp(k)."""
    n = triple.spec.n
    if n > 6:
        return []
    eye = np.eye(n, dtype=triple.spec.dtype)

    def in_identity_component(m):
        if not len(k_mats):
            return _fro(m - eye) <= 1e-9
        nearest = base_grid[int(np.argmin(np.linalg.norm(base_grid - m, axis=(1, 2))))]
        _, rn = _left_gn(nearest, k_mats, lambda k: k - m, lambda k, y: k @ y, 1e-10)
        return rn <= 1e-9

    reps = []
    for signs in product((1.0, -1.0), repeat=n):
        if all(s == 1.0 for s in signs):
            continue
        c = np.diag(signs).astype(triple.spec.dtype)
        if not check_group_membership(triple.spec, c).is_in:
            continue
        if _fro(triple.sigma(c) - c) > MEMBERSHIP_TOL:
            continue
        # sign matrices are their own inverses
        if any(in_identity_component(r @ c) for r in [eye] + reps):
            continue
        reps.append(c)
    return reps


def _ring_neighbors(m):
    idx = np.arange(m)
    return [np.array([(i - 1) % m, (i + 1) % m]) for i in idx]


def _box_neighbors(m):
    out = []
    for i in range(m):
        for j in range(m):
            nb = [(a * m + b) for a in (i - 1, i, i + 1) for b in (j - 1, j, j + 1)
                  if 0 <= a < m and 0 <= b < m and (a, b) != (i, j)]
            out.append(np.array(nb, dtype=int))
    return out


def _k_grid(triple, grid_points, seed):
    key = ("k_grid", grid_points, seed)
    cached = triple._cache.get(key)
    if cached is not None:
        return cached
    k_mats = triple.k_basis.mats
    dk = len(k_mats)
    n = triple.spec.n
    rng = np.random.default_rng(seed)
    if dk == 0:
        base = [np.eye(n, dtype=triple.spec.dtype)]
        neighbors = [np.array([], dtype=int)]
    elif dk == 1:
        y = k_mats[0]
        period = _k_period(triple, y) or 2 * np.pi * math.sqrt(n)
        m = max(int(grid_points), 3)
        ts = (np.arange(m) + rng.uniform()) * period / m - period / 2
        base = [sla.expm(t * y) for t in ts]
        neighbors = _ring_neighbors(m)
    else:
        m = max(int(math.ceil(math.sqrt(grid_points))), 3)
        half = np.pi * math.sqrt(n)
        offset = rng.uniform(size=2)
        axis = lambda o: (np.arange(m) + o) * 2 * half / m - half
        base = [sla.expm(a * k_mats[0] + b * k_mats[1])
                for a in axis(offset[0]) for b in axis(offset[1])]
        neighbors = _box_neighbors(m)
    base = np.array(base)
    if triple.spec.is_real:
        base = np.real(base)
    reps = _component_reps(triple, base, k_mats)
    sheets = [base] + [c @ base for c in reps]
    size = len(base)
    grid = np.concatenate(sheets)
    all_neighbors = [nb + s * size for s in range(len(sheets)) for nb in neighbors]
    cached = (grid, all_neighbors)
    triple._cache[key] = cached
    return cached


def intersect_coset(triple, g, grid_points=64, refine_tol=1e-12, seed=0,
                    _with_bound=True):
    """Sample gK n P.

    K is sampled by exponentiating a regular grid in k (a full period ring
    when dim k = 1, a box of half-width pi sqrt(n) when dim k = 2) together
    with translates by sigma-fixed diagonal sign matrices outside exp(k).
    Local minima of ||k sigma(g) k g - I|| are refined by Gauss-Newton
    over K; refined points q = g k with q certified in P are kept.

    Sampling cannot prove completeness, so ``exhaustive`` is always False.
    ``bound_K_cap_P`` is the number of points the same sampler finds at g = e.
    """
    g = _as_element(triple, g)
    k_mats = triple.k_basis.mats
    if len(k_mats) > 2:
        raise UnsupportedKDimension(
            f"coset sampling supports dim k <= 2, this triple has dim k = {len(k_mats)}")
    grid, neighbors = _k_grid(triple, grid_points, seed)
    sg = triple.sigma(g)
    eye = np.eye(triple.spec.n)
    vals = np.linalg.norm(grid @ sg @ grid @ g - eye, axis=(1, 2))
    minima = [i for i, nb in enumerate(neighbors) if nb.size == 0 or np.all(vals[i] <= vals[nb])]
    tol = refine_tol * max(1.0, _fro(g) * _fro(sg))

    def resid(k):
        return k @ sg @ k @ g - eye

    def dresid(k, y):
        ky = k @ y
        return ky @ sg @ k @ g + k @ sg @ ky @ g

    points, flags = [], []
    undecided = 0
    for i in minima:
        k, rn = _left_gn(grid[i], k_mats, resid, dresid, tol) if len(k_mats) else (grid[i], vals[i])
        if rn > max(tol, 1e-12):
            continue
        q = g @ k
        if triple.spec.is_real:
            q = np.real(q)
        if any(_fro(q - other) <= DISTINCT_TOL for other in points):
            continue
        v = membership_P(triple, q)
        if v.verdict is Verdict.INDETERMINATE:
            undecided += 1
        if not v.is_in:
            continue
        points.append(q)
        flags.append(transversal(triple, q, check=False))
    bound = None
    if _with_bound:
        key = ("k_cap_p", grid_points, refine_tol, seed)
        bound = triple._cache.get(key)
        if bound is None:
            bound = len(intersect_coset(triple, eye.astype(triple.spec.dtype), grid_points,
                                        refine_tol, seed, _with_bound=False).points)
            triple._cache[key] = bound
    return IntersectionReport(g, points, bool(points) and all(flags), False, bound,
                              tuple(flags), undecided)


def _require_su2(triple):
    if not (triple.spec.family is Family.SU and triple.spec.n == 2
            and triple.inv.kind is InvolutionKind.TRANSPOSE_INVERSE):
        raise PreconditionError("su2_coset_classify needs the SU(2), (g^T)^-1 triple")


def su2_coset_classify(triple, p, tol=1e-8, check=True):
    """Closed-form pK n P for SU(2)/SO(2) with p = [[a+bi, ci], [ci, a-bi]].

    Generic (|a| > tol): pK n P = {p, -p}. Antipodal (|a| <= tol): the whole
    coset pK lies in P.
    """
    _require_su2(triple)
    p = _as_element(triple, p)
    if check and not membership_P(triple, p).is_in:
        raise PreconditionError("p is not certified in P")
    a, b = float(p[0, 0].real), float(p[0, 0].imag)
    c = float(p[0, 1].imag)
    if abs(a) > tol:
        return SU2Classification("Generic", a, b, c, [p.copy(), -p])
    return SU2Classification("Antipodal", a, b, c, [])


def su2_coset_point(p, theta):
    """p k(theta) with k(theta) the planar rotation by theta."""
    ct, st = math.cos(theta), math.sin(theta)
    return np.asarray(p) @ np.array([[ct, -st], [st, ct]])
