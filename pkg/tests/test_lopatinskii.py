import math

import numpy as np
import pytest

from phasewave import (
    DegeneracyError,
    DomainError,
    Frequency,
    elliptic_eta0_max,
    find_root,
    gamma_coefficients,
    lopatinskii_det,
    normal_modes,
    sigma_vector,
)
from phasewave.lopatinskii import (
    dd1_factorization_residual,
    gamma_alternative_forms,
    gamma_linear_residual,
    lemma4_residuals,
    root_relation_residual,
    sigma_r3_residual,
)
from phasewave.kernel import alpha0

from conftest import fixture_a_boundary, random_boundary, random_frequency

# Root of the canonical configuration, frozen after cross-validation against
# the raw determinant, the minors functional, and the abstract alpha0 sum.
FIXTURE_A_ETA0 = 0.9563775980592719


class TestDeterminant:
    def test_closed_sign_at_zero_eta0(self):
        pb = fixture_a_boundary()
        eta = Frequency(0.0, [1.0])
        m = normal_modes(pb, eta)
        delta = lopatinskii_det(pb, eta, "closed")
        ref = (
            pb.jump_rho
            * pb.jump_u
            * m.frame.upsilon
            * pb.right.u**2
            * abs(pb.left.u * pb.right.u * m.a_l * m.a_r)
        )
        assert delta.real != 0.0
        assert math.copysign(1.0, delta.real) == math.copysign(1.0, ref)

    @pytest.mark.parametrize("d,eta_t", [(2, [1.0]), (3, [0.6, 0.8])])
    def test_raw_vs_closed_fixture(self, d, eta_t):
        pb = fixture_a_boundary(d)
        for frac in (0.1, 0.5, 0.9):
            e0 = frac * elliptic_eta0_max(pb, eta_t)
            eta = Frequency(e0, eta_t)
            raw = lopatinskii_det(pb, eta, "raw")
            closed = lopatinskii_det(pb, eta, "closed")
            assert abs(raw - closed) <= 1e-10 * max(abs(raw), abs(closed))

    def test_raw_determinant_real(self):
        pb = fixture_a_boundary()
        for frac in (0.2, 0.6, 0.85):
            e0 = frac * elliptic_eta0_max(pb, [1.0])
            raw = lopatinskii_det(pb, Frequency(e0, [1.0]), "raw")
            assert abs(raw.imag) <= 1e-12 * abs(raw)

    def test_scan_raw_vs_closed_random(self):
        rng = np.random.default_rng(23)
        pb = random_boundary(rng)
        eta_t = random_frequency(rng, pb).eta_t
        e0_max = elliptic_eta0_max(pb, eta_t)
        for e0 in np.linspace(0.02, 0.98, 100) * e0_max:
            eta = Frequency(float(e0), eta_t)
            raw = lopatinskii_det(pb, eta, "raw")
            closed = lopatinskii_det(pb, eta, "closed")
            assert abs(raw - closed) <= 1e-10 * max(abs(raw), abs(closed))

    def test_nonelliptic_rejected(self):
        pb = fixture_a_boundary()
        with pytest.raises(DomainError):
            lopatinskii_det(pb, Frequency(10.0, [1.0]), "raw")


class TestFindRoot:
    def test_root_function_negative_at_origin(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            pb = random_boundary(rng)
            ht2 = float(pb.d - 1)
            a_l = -pb.left.c * math.sqrt((pb.left.c2 - pb.left.u**2) * ht2)
            a_r = pb.right.c * math.sqrt((pb.right.c2 - pb.right.u**2) * ht2)
            F0 = pb.left.u * pb.right.u * a_l * a_r
            assert F0 < 0.0

    def test_fixture_root_value_and_residual(self, root_a):
        e0 = root_a.eta.eta0
        assert 0.0 < e0 < 1.787
        assert e0 == pytest.approx(FIXTURE_A_ETA0, rel=1e-12)
        delta = lopatinskii_det(root_a.pb, root_a.eta, "closed")
        slope = alpha0(root_a, "closed").real
        assert abs(delta) <= 1e-12 * abs(slope) * e0

    def test_root_scaling_in_wavevector(self):
        pb = fixture_a_boundary()
        t = 2.7
        e0_base = find_root(pb, [1.0]).eta.eta0
        e0_scaled = find_root(pb, [t]).eta.eta0
        assert e0_scaled == pytest.approx(t * e0_base, rel=1e-12)

    def test_root_scaling_d3(self):
        pb = fixture_a_boundary(3)
        base = find_root(pb, [0.6, 0.8]).eta.eta0
        scaled = find_root(pb, [1.2, 1.6]).eta.eta0
        assert scaled == pytest.approx(2.0 * base, rel=1e-12)

    def test_zero_wavevector_rejected(self):
        pb = fixture_a_boundary()
        with pytest.raises(DegeneracyError):
            find_root(pb, [0.0])

    def test_root_relation(self, root_a):
        assert root_relation_residual(root_a) <= 1e-12


class TestSigma:
    def test_annihilates_boundary_columns(self, root_a):
        sig = root_a.sigma.sigma_star
        scale = np.max(np.abs(sig)) * np.max(np.abs(root_a.ops.H))
        for j in range(root_a.pb.d + 1):
            col = root_a.ops.H @ root_a.modes.R_minus[j]
            assert abs(sig @ col) <= 1e-10 * scale

    def test_annihilates_frequency_vector(self, root_a):
        sig = root_a.sigma.sigma_star
        val = sig @ root_a.ops.Jeta
        assert abs(val) <= 1e-10 * np.max(np.abs(sig)) * np.max(np.abs(root_a.ops.Jeta))

    @pytest.mark.parametrize("which", ["root_a", "root_a3"])
    def test_minors_vs_closed(self, which, request):
        root = request.getfixturevalue(which)
        s_minors = sigma_vector(root, "minors").sigma_star
        s_closed = sigma_vector(root, "closed").sigma_star
        scale = np.max(np.abs(s_closed))
        assert np.max(np.abs(s_minors - s_closed)) <= 1e-10 * scale

    def test_dd1_nonzero(self, root_a):
        assert abs(root_a.sigma.Dd1) > 0.0
        assert np.max(np.abs(root_a.sigma.sigma_star)) > 0.0

    def test_lemma4_identities(self, root_a, root_a3):
        for root in (root_a, root_a3):
            assert np.max(lemma4_residuals(root)) <= 1e-10

    def test_dd1_factorizations(self, root_a):
        assert dd1_factorization_residual(root_a) <= 1e-10

    def test_sigma_r3_relation(self, root_a, root_a3):
        for root in (root_a, root_a3):
            assert sigma_r3_residual(root) <= 1e-10


class TestGamma:
    def test_linear_relation(self, root_a):
        assert gamma_linear_residual(root_a) <= 1e-10

    def test_two_printed_forms_agree(self, root_a):
        g1, g2 = root_a.gamma1, root_a.gamma2
        h1, h2 = gamma_alternative_forms(root_a)
        assert abs(g1 - h1) <= 1e-12 * abs(g1)
        assert abs(g2 - h2) <= 1e-12 * abs(g2)

    def test_gamma_coefficients_entry_point(self, root_a):
        g1, g2 = gamma_coefficients(root_a)
        assert g1 == root_a.gamma1
        assert g2 == root_a.gamma2

    def test_ratio_identity(self, root_a):
        # gamma2 * u_r * a_r = gamma1 * i * c_l^2 * eta0 at the root.
        m = root_a.modes
        lhs = root_a.gamma2 * root_a.pb.right.u * m.a_r
        rhs = root_a.gamma1 * 1j * root_a.pb.left.c2 * root_a.eta.eta0
        assert abs(lhs - rhs) <= 1e-12 * abs(lhs)

    def test_random_states(self):
        rng = np.random.default_rng(41)
        for _ in range(10):
            pb = random_boundary(rng)
            eta_t = random_frequency(rng, pb).eta_t
            root = find_root(pb, eta_t)
            assert gamma_linear_residual(root) <= 1e-10
            assert root_relation_residual(root) <= 1e-12
            assert np.max(lemma4_residuals(root)) <= 1e-10
