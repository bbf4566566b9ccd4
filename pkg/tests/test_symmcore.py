import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from symmspace.config import load_builtin
from symmspace.errors import (DecomposeFailure, NoSquareRoot, PreconditionError,
                              UnsupportedKDimension)
from symmspace.involution import Involution, in_p, split_algebra
from symmspace.liegroup import GroupSpec, check_group_membership, random_algebra_element, random_element
from symmspace.symmcore import (Verdict, component_dim, decompose, geodesic_point,
                                intersect_coset, membership_P, membership_Q, membership_R,
                                phi_map, sandwich, sqrt_in_P, su2_coset_classify,
                                su2_coset_point, transversal, twisted_conjugate)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
NAMES = ["sl2", "sl3", "su2", "su3", "so5-inner"]
G0 = np.diag([-1.0, -1.0, -1.0, -1.0, 1.0])


def su2_p(a, b, c):
    return np.array([[a + 1j * b, 1j * c], [1j * c, a - 1j * b]])


def random_p(triple, seed, scale=1.0):
    x = random_algebra_element(triple.p_basis, np.random.default_rng(seed), scale)
    return x, sla.expm(x)


def random_k(triple, seed):
    y = random_algebra_element(triple.k_basis, np.random.default_rng(seed))
    return sla.expm(y)


def rel(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


@pytest.fixture(scope="module")
def sl2_diag():
    # sigma(g) = s g s with s = diag(1, -1): K is the diagonal torus, not compact
    return split_algebra(GroupSpec("SL_real", 2), Involution("Inner", np.diag([1.0, -1.0])),
                         triple_id="sl2-diag")


class TestMembershipR:
    def test_identity(self, shipped):
        assert membership_R(shipped, shipped.identity()).is_in

    def test_sl2_minus_identity(self, sl2):
        assert membership_R(sl2, -np.eye(2)).is_in

    def test_exp_p(self, shipped):
        _, p = random_p(shipped, 3)
        assert membership_R(shipped, p).is_in

    def test_generic_out(self, shipped):
        v = membership_R(shipped, random_element(shipped.spec, 17))
        assert v.verdict is Verdict.OUT
        assert v.residual > 1e-8


class TestMembershipP:
    def test_sl2_minus_identity_out(self, sl2):
        v = membership_P(sl2, -np.eye(2))
        assert v.verdict is Verdict.OUT
        assert v.tier == "exact-form"
        assert "positive-definite" in v.reason

    def test_exp_p_recovers_log(self, shipped):
        _, g = random_p(shipped, 5)
        v = membership_P(shipped, g)
        assert v.is_in
        assert in_p(shipped, v.certificate)
        assert np.linalg.norm(sla.expm(v.certificate) - g) <= 1e-8

    @pytest.mark.parametrize("b,c", [(1.0, 0.0), (0.6, 0.8), (0.0, 1.0), (-0.28, 0.96)])
    def test_su2_antipodal_sphere(self, su2, b, c):
        # every point with a = 0 satisfies sigma(p) = p^-1 and lies in P
        p = su2_p(0.0, b, c)
        assert membership_R(su2, p).is_in
        v = membership_P(su2, p)
        assert v.is_in
        assert np.linalg.norm(sla.expm(v.certificate) - p) <= 1e-8

    def test_su2_minus_identity_in(self, su2):
        v = membership_P(su2, -np.eye(2, dtype=complex))
        assert v.is_in
        assert v.tier == "log"

    def test_so5_g0_out_by_dimension(self, so5):
        v = membership_P(so5, G0)
        assert v.verdict is Verdict.OUT
        assert v.tier == "dimension"

    def test_not_in_R(self, shipped):
        v = membership_P(shipped, random_element(shipped.spec, 21))
        assert v.verdict is Verdict.OUT
        assert v.tier == "R"

    def test_su3_degenerate_spectrum(self, su3):
        g = np.diag([-1.0, -1.0, 1.0]).astype(complex)
        v = membership_P(su3, g)
        assert v.is_in
        assert np.linalg.norm(sla.expm(v.certificate) - g) <= 1e-8

    def test_near_antipode(self, su2):
        x = su2.p_basis.combine([np.pi * 0.999, 0.0])
        assert membership_P(su2, sla.expm(x)).is_in

    def test_newton_tier(self, so5):
        # half-turn in the (e1, e2) plane: every spectral log is complex
        g = np.diag([-1.0, -1.0, 1.0, 1.0, 1.0])
        v = membership_P(so5, g)
        assert v.is_in
        assert v.tier == "newton"
        assert np.linalg.norm(sla.expm(v.certificate) - g) <= 1e-8
        assert in_p(so5, v.certificate)

    def test_indeterminate_noncompact(self, sl2_diag):
        # -I = exp(pi [[0, 1], [-1, 0]]) is in P here, but no tier can prove it:
        # its logs are complex and the group is not compact
        v = membership_P(sl2_diag, -np.eye(2))
        assert v.verdict is Verdict.INDETERMINATE
        assert v.trail


class TestMembershipQ:
    def test_witness(self, shipped):
        g = random_element(shipped.spec, 31)
        q = phi_map(shipped, g)
        v = membership_Q(shipped, q)
        assert v.is_in
        h = v.certificate
        assert rel(twisted_conjugate(shipped, h, shipped.identity()), q) <= 1e-8

    def test_out(self, sl2):
        assert membership_Q(sl2, -np.eye(2)).verdict is Verdict.OUT


class TestPhi:
    def test_identity(self, shipped):
        np.testing.assert_allclose(phi_map(shipped, shipped.identity()), shipped.identity())

    def test_k_is_isotropy(self, shipped):
        k = random_k(shipped, 4)
        assert np.linalg.norm(shipped.sigma(k) - k) <= 1e-10
        np.testing.assert_allclose(phi_map(shipped, k), shipped.identity(), atol=1e-10)

    def test_sl3_direct_product(self, sl3):
        g = random_element(sl3.spec, 12)
        np.testing.assert_allclose(phi_map(sl3, g), g @ g.T, rtol=1e-13, atol=1e-13)

    def test_constant_on_cosets(self, shipped):
        g = random_element(shipped.spec, 7)
        k = random_k(shipped, 8)
        assert rel(phi_map(shipped, g @ k), phi_map(shipped, g)) <= 1e-10


class TestTwisted:
    def test_identity_action(self, shipped):
        h = random_element(shipped.spec, 1)
        np.testing.assert_allclose(twisted_conjugate(shipped, shipped.identity(), h), h)

    def test_orbit_of_identity(self, shipped):
        g = random_element(shipped.spec, 2)
        np.testing.assert_allclose(twisted_conjugate(shipped, g, shipped.identity()),
                                   phi_map(shipped, g))

    def test_composition(self, shipped):
        g1, g2, h = (random_element(shipped.spec, s) for s in (3, 4, 5))
        lhs = twisted_conjugate(shipped, g1 @ g2, h)
        rhs = twisted_conjugate(shipped, g1, twisted_conjugate(shipped, g2, h))
        assert rel(lhs, rhs) <= 1e-10

    def test_k_preserves_P(self, shipped):
        _, p = random_p(shipped, 6)
        k = random_k(shipped, 7)
        assert membership_P(shipped, twisted_conjugate(shipped, k, p)).is_in


class TestSqrtInP:
    def test_identity(self, shipped):
        root, half = sqrt_in_P(shipped, shipped.identity())
        np.testing.assert_allclose(root, shipped.identity(), atol=1e-14)
        np.testing.assert_allclose(half, 0, atol=1e-14)

    def test_sl2_diagonal(self, sl2):
        root, _ = sqrt_in_P(sl2, np.diag([4.0, 0.25]))
        np.testing.assert_allclose(root, np.diag([2.0, 0.5]), atol=1e-14)

    def test_square_and_in_P(self, shipped):
        _, q = random_p(shipped, 9)
        root, half = sqrt_in_P(shipped, q)
        assert rel(root @ root, q) <= 1e-8
        assert in_p(shipped, half)

    def test_out_raises(self, sl2):
        with pytest.raises(PreconditionError):
            sqrt_in_P(sl2, -np.eye(2))

    def test_indeterminate_raises(self, sl2_diag):
        with pytest.raises(NoSquareRoot):
            sqrt_in_P(sl2_diag, -np.eye(2))


class TestDecompose:
    def test_identity(self, shipped):
        d = decompose(shipped, shipped.identity())
        np.testing.assert_allclose(d.p, shipped.identity(), atol=1e-14)
        np.testing.assert_allclose(d.k, shipped.identity(), atol=1e-14)

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.sampled_from(NAMES))
    def test_round_trip(self, seed, name):
        t = load_builtin(name)
        g = random_element(t.spec, seed)
        d = decompose(t, g)
        assert rel(d.p @ d.k, g) <= 1e-8
        assert np.linalg.norm(t.sigma(d.k) - d.k) <= 1e-8
        assert membership_P(t, d.p).is_in
        assert check_group_membership(t.spec, d.k).is_in

    @pytest.mark.parametrize("seed", range(10))
    def test_sl3_polar_oracle(self, sl3, seed):
        g = random_element(sl3.spec, seed)
        u, s, vt = np.linalg.svd(g)
        p_polar = (u * s) @ u.T
        d = decompose(sl3, g)
        assert np.linalg.norm(d.p - p_polar) <= 1e-8 * np.linalg.norm(p_polar)
        np.testing.assert_allclose(d.k, u @ vt, atol=1e-8)

    @pytest.mark.parametrize("seed", range(10))
    def test_su2_recovers_p(self, su2, seed):
        rng = np.random.default_rng(seed)
        x = random_algebra_element(su2.p_basis, rng)
        x *= rng.uniform(0.05, 1.5) / np.linalg.norm(x, 2)
        y = random_algebra_element(su2.k_basis, rng)
        g = sla.expm(x) @ sla.expm(y)
        d = decompose(su2, g)
        np.testing.assert_allclose(d.p, sla.expm(x), atol=1e-8)

    def test_failure_carries_spectrum(self, sl2_diag):
        g = np.array([[0.0, 1.0], [-1.0, 0.0]])
        np.testing.assert_allclose(phi_map(sl2_diag, g), -np.eye(2), atol=1e-15)
        with pytest.raises(DecomposeFailure) as info:
            decompose(sl2_diag, g)
        np.testing.assert_allclose(np.sort_complex(info.value.spectrum), [-1, -1], atol=1e-12)


class TestSandwich:
    def test_left_identity(self, shipped):
        _, p2 = random_p(shipped, 1)
        np.testing.assert_allclose(sandwich(shipped, shipped.identity(), p2), p2)

    def test_right_identity(self, shipped):
        _, p = random_p(shipped, 2)
        np.testing.assert_allclose(sandwich(shipped, p, shipped.identity()), p @ p)

    def test_sl3_spd(self, sl3):
        _, p = random_p(sl3, 3)
        _, p2 = random_p(sl3, 4)
        m = sandwich(sl3, p, p2)
        np.testing.assert_allclose(m, m.T, atol=1e-12)
        assert np.linalg.eigvalsh(m).min() > 0

    @settings(max_examples=30, deadline=None)
    @given(seeds, seeds, st.sampled_from(NAMES))
    def test_closure(self, s1, s2, name):
        t = load_builtin(name)
        _, p = random_p(t, s1)
        _, p2 = random_p(t, s2)
        assert membership_P(t, sandwich(t, p, p2)).is_in

    def test_precondition(self, sl2):
        with pytest.raises(PreconditionError):
            sandwich(sl2, -np.eye(2), np.eye(2))


class TestGeodesic:
    def test_zero_time(self, shipped):
        x, _ = random_p(shipped, 1)
        np.testing.assert_allclose(geodesic_point(shipped, x, 0.0), shipped.identity())

    def test_additivity(self, shipped):
        x, _ = random_p(shipped, 2)
        lhs = geodesic_point(shipped, x, 0.3) @ geodesic_point(shipped, x, 0.5)
        assert rel(lhs, geodesic_point(shipped, x, 0.8)) <= 1e-12

    def test_su2_reaches_antipode(self, su2):
        x = np.diag([1j * np.pi / 2, -1j * np.pi / 2])
        assert in_p(su2, x)
        np.testing.assert_allclose(geodesic_point(su2, x, 2.0), -np.eye(2), atol=1e-14)

    def test_not_in_p(self, su2):
        with pytest.raises(PreconditionError):
            geodesic_point(su2, np.array([[0, 1.0], [-1.0, 0]]), 1.0)


class TestComponentDim:
    def test_so5_identity(self, so5):
        rep = component_dim(so5, np.eye(5))
        assert rep.in_R and rep.dim == 4

    def test_so5_g0(self, so5):
        rep = component_dim(so5, G0)
        assert rep.in_R and rep.dim == 6

    def test_identity_is_dim_p(self, shipped):
        assert component_dim(shipped, shipped.identity()).dim == shipped.p_basis.dim

    def test_constant_along_P(self, shipped):
        _, p = random_p(shipped, 5, 0.5)
        assert component_dim(shipped, p).dim == shipped.p_basis.dim

    def test_off_R_flagged(self, shipped):
        rep = component_dim(shipped, random_element(shipped.spec, 6))
        assert not rep.in_R and not rep.meaningful


class TestTransversal:
    def test_identity(self, shipped):
        assert transversal(shipped, shipped.identity())

    def test_su2_antipodal(self, su2):
        assert not transversal(su2, su2_p(0.0, 0.6, 0.8))

    @pytest.mark.parametrize("seed", range(8))
    def test_su2_generic(self, su2, seed):
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(3)
        a, b, c = v / np.linalg.norm(v)
        if abs(a) < 0.05:
            a = 0.05
            b, c = np.sqrt(1 - a * a) * np.array([b, c]) / np.hypot(b, c)
        assert transversal(su2, su2_p(a, b, c))

    def test_precondition(self, sl2):
        with pytest.raises(PreconditionError):
            transversal(sl2, -np.eye(2))


class TestIntersect:
    def test_su2_identity(self, su2):
        rep = intersect_coset(su2, np.eye(2, dtype=complex))
        assert len(rep.points) == 2
        got = sorted(round(float(q[0, 0].real)) for q in rep.points)
        assert got == [-1, 1]
        for q in rep.points:
            assert np.linalg.norm(np.abs(q) - np.eye(2)) <= 1e-8
        assert rep.bound_K_cap_P == 2
        assert not rep.exhaustive

    def test_su2_generic(self, su2):
        p = su2_p(0.6, 0.48, 0.64)
        rep = intersect_coset(su2, p)
        assert len(rep.points) == 2
        for q in rep.points:
            assert min(np.linalg.norm(q - p), np.linalg.norm(q + p)) <= 1e-8
        assert rep.transversal

    @pytest.mark.parametrize("name", ["sl2", "su2", "so3-inner", "so21"])
    def test_contains_representative(self, name):
        t = load_builtin(name)
        _, g = random_p(t, 14)
        rep = intersect_coset(t, g)
        assert min(np.linalg.norm(q - g) for q in rep.points) <= 1e-8
        for q in rep.points:
            k = np.linalg.solve(g, q)
            assert np.linalg.norm(t.sigma(k) - k) <= 1e-8
            assert membership_P(t, q).is_in

    def test_sl2_unique(self, sl2):
        # G/K is the hyperbolic plane: every coset meets P once
        g = random_element(sl2.spec, 3)
        rep = intersect_coset(sl2, g)
        assert len(rep.points) == 1
        assert rep.bound_K_cap_P == 1

    def test_so3_noncompact_fixed_set_not_transversal(self):
        # K n P contains I and a circle of half-turns, so e is not transversal
        t = load_builtin("so3-inner")
        rep = intersect_coset(t, np.eye(3))
        assert len(rep.points) > 2
        assert not rep.transversal

    def test_generic_points_within_bound(self, su2):
        for seed in range(5):
            g = random_element(su2.spec, seed)
            rep = intersect_coset(su2, g)
            assert len(rep.points) <= rep.bound_K_cap_P

    @pytest.mark.parametrize("name", ["sl3", "su3", "so5-inner"])
    def test_unsupported(self, name):
        t = load_builtin(name)
        with pytest.raises(UnsupportedKDimension):
            intersect_coset(t, t.identity())


class TestSU2Classify:
    def test_identity(self, su2):
        cls = su2_coset_classify(su2, np.eye(2, dtype=complex))
        assert cls.kind == "Generic"
        assert len(cls.points) == 2
        np.testing.assert_allclose(cls.points[1], -np.eye(2))

    def test_antipodal(self, su2):
        cls = su2_coset_classify(su2, su2_p(0.0, 1.0, 0.0))
        assert cls.kind == "Antipodal"
        assert cls.exhaustive

    def test_generic_against_dense_grid(self, su2):
        p = su2_p(0.6, 0.8, 0.0)
        cls = su2_coset_classify(su2, p)
        assert cls.kind == "Generic"
        # oracle: p k(theta) is in R only near theta = 0 and pi
        thetas = np.linspace(0, 2 * np.pi, 3600, endpoint=False)
        res = np.array([membership_R(su2, su2_coset_point(p, t)).residual for t in thetas])
        hits = thetas[res <= 1e-8]
        assert sorted(np.round(hits, 6)) == [0.0, round(np.pi, 6)]
        for t, want in zip(hits, cls.points):
            np.testing.assert_allclose(su2_coset_point(p, t), want, atol=1e-12)

    def test_antipodal_whole_coset(self, su2):
        p = su2_p(0.0, 0.6, 0.8)
        for t in np.linspace(0, 2 * np.pi, 16, endpoint=False):
            assert membership_P(su2, su2_coset_point(p, t)).is_in

    def test_wrong_triple(self, sl2):
        with pytest.raises(PreconditionError):
            su2_coset_classify(sl2, np.eye(2))

    def test_not_in_P(self, su2):
        with pytest.raises(PreconditionError):
            su2_coset_classify(su2, random_element(su2.spec, 40))


@settings(max_examples=30, deadline=None)
@given(seeds, seeds, st.sampled_from(NAMES))
def test_phi_equivariance(s1, s2, name):
    t = load_builtin(name)
    g1, g = random_element(t.spec, s1), random_element(t.spec, s2)
    lhs = phi_map(t, g1 @ g)
    rhs = twisted_conjugate(t, g1, phi_map(t, g))
    assert rel(lhs, rhs) <= 1e-8


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(NAMES))
def test_chain_inclusions(seed, name):
    t = load_builtin(name)
    x, p = random_p(t, seed)
    h = sla.expm(x / 2)
    assert membership_R(t, h).is_in
    assert membership_P(t, p).is_in
    np.testing.assert_allclose(phi_map(t, h), h @ h, atol=1e-10 * np.linalg.norm(p))
    assert membership_R(t, phi_map(t, random_element(t.spec, seed + 1))).is_in
