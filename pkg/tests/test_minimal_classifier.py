from math import sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gl3kit.minimal_classifier import (AmbiguousParameter, Shifted, Unitary, classify_minimal, d1_eigenvalues,
                                       g2_coefficient, g_vectors, lowering_residual, minimal_ktype_parameters,
                                       minimal_nullspace, standard_form, subspace_angle, whittaker_vanishing,
                                       y0_skew_exclusion)
from gl3kit.coefficient_flow import y_action
from gl3kit.wigner import basis_u, basis_v

MU = (0.3 + 0.2j, -0.5 + 0.1j, 0.2 - 0.3j)


def assert_matches_nullspace(d, std):
    cls = classify_minimal(d, std)
    null = minimal_nullspace(d, std.mu())
    basis = cls.matrix()
    assert null.shape[0] == basis.shape[0]
    if basis.shape[0]:
        assert subspace_angle(null, basis) < 1e-8
    for b in basis:
        assert lowering_residual(d, std.mu(), b) < 1e-8
    return cls


class TestStandardForm:
    def test_recognizes_both_forms(self):
        assert standard_form((0.3j, 0.1j, -0.4j)) == Unitary(0.3, 0.1)
        assert standard_form((2 + 0.5j, -1j, -2 + 0.5j)) == Shifted(2, 0.5)

    def test_rejects(self):
        with pytest.raises(ValueError, match="standard form"):
            standard_form((1, 0.5, -1.5))
        with pytest.raises(ValueError):
            Unitary(0.2, 0.2)
        with pytest.raises(ValueError):
            Shifted(-1.0)


class TestGVectors:
    @given(st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3))
    def test_g1_display(self, a, b):
        mu = (a, b, -a - b)
        want = -sqrt(6) * (1 + mu[2]) * np.asarray(basis_u(2, 2, 1)) + (a - b - 1) * np.asarray(basis_u(2, 0, 1))
        np.testing.assert_allclose(np.asarray(g_vectors("g1", 2, mu=mu)), want)

    def test_g2_ratio(self):
        d, k, j = 7, 1, 1
        m1, m2, m3 = MU
        s = 2 * j + k
        ratio = g2_coefficient(d, k, s + 2, MU) / g2_coefficient(d, k, s, MU)
        want = (-sqrt((d - 1 - s) * (d - s)) * (3 * m3 + 2 * d - 1 + s)
                / (sqrt((d + 1 + s) * (d + 2 + s)) * (m1 - m2 - 1 - s)))
        assert ratio == pytest.approx(want)
        assert g2_coefficient(6, 0, 0, MU) == 0.5

    def test_g3_last_coefficient(self):
        d = 5
        v = np.asarray(g_vectors("g3", d, 1, 1, MU))
        b = np.asarray(basis_u(d, d, 1))
        coef = np.vdot(b, v) / np.vdot(b, b)
        assert coef == pytest.approx(g2_coefficient(d, 1, d - 2, MU) / sqrt(d * (2 * d - 1)))

    def test_bad_requests(self):
        with pytest.raises(ValueError):
            g_vectors("g1", 3)
        with pytest.raises(ValueError):
            g_vectors("g4", 4)
        with pytest.raises(ValueError):
            g_vectors("g5", 4)
        with pytest.raises(ValueError):
            g2_coefficient(4, 0, 3, MU)


class TestClassification:
    def test_low_weights_are_everything(self):
        for d in (0, 1):
            cls = classify_minimal(d, Unitary(0.3, 0.7))
            assert cls.case == 2
            assert cls.matrix().shape == (2 * d + 1, 2 * d + 1)

    def test_case4_d7(self):
        cls = assert_matches_nullspace(7, Shifted(3.0, 0.4))
        assert cls.case == 4
        assert [(b.label, b.delta, b.eps) for b in cls.basis] == [("g2", 0, -1), ("g2", 1, 1)]

    def test_case5_d5(self):
        cls = assert_matches_nullspace(5, standard_form((2, 0, -2)))
        assert cls.case == 5
        assert [b.label for b in cls.basis] == ["g2", "g4+", "g4-"]
        # kappa = 3, delta = kappa + 1 mod 2
        assert cls.basis[0].delta == 0

    def test_case6_and_generic(self):
        assert assert_matches_nullspace(3, Shifted(2.0)).case == 6
        assert assert_matches_nullspace(4, Unitary(0.3, 0.71)).case == 1
        assert minimal_nullspace(4, Unitary(0.3, 0.71).mu()).shape[0] == 0
        cls = assert_matches_nullspace(2, Unitary(0.3, 0.71))
        assert cls.case == 3 and cls.basis[0].label == "g1"

    def test_d2_lowering_kernels(self):
        mu = Unitary(0.3, 0.71).mu()
        for j, a in ((0, -1), (2, -1), (1, -2)):
            np.testing.assert_allclose(np.asarray(y_action(a, 2, mu, basis_u(2, j, 1))), 0, atol=1e-13)
        np.testing.assert_allclose(np.asarray(y_action(-2, 2, mu, basis_u(2, 1, -1))), 0, atol=1e-13)
        # the odd-sign top vector is not killed by Y^-1 (confirmed through the Lie-algebra route)
        assert np.abs(np.asarray(y_action(-1, 2, mu, basis_u(2, 2, -1)))).max() > 0.1

    @pytest.mark.parametrize("d", range(2, 9))
    def test_minimal_line_dimensions(self, d):
        assert_matches_nullspace(d, Shifted((d - 1) / 2, 0.37))
        assert_matches_nullspace(d, Shifted((d - 1) / 2, 0.0))

    def test_ambiguity_band(self):
        with pytest.raises(AmbiguousParameter):
            classify_minimal(3, Shifted(1.0 + 1e-7, 0.2))


class TestVanishing:
    def test_trivial_cases(self):
        assert whittaker_vanishing(0, Unitary(0.2, 0.5), np.ones(1)) is False
        assert whittaker_vanishing(3, Shifted(1.0, 0.3), np.zeros(7)) is True

    def test_case4_sum(self):
        d = 5
        mu = Shifted(2.0)
        f = np.asarray(g_vectors("g4", d, 0, 1, mu.mu())) + np.asarray(g_vectors("g4", d, 0, -1, mu.mu()))
        assert whittaker_vanishing(d, mu, f)
        assert not whittaker_vanishing(d, mu, np.asarray(g_vectors("g4", d, 0, 1, mu.mu())))

    def test_case6_top_vector(self):
        assert whittaker_vanishing(3, Shifted(2.0), np.asarray(basis_v(3, 3)))
        assert not whittaker_vanishing(3, Shifted(2.0), np.asarray(basis_u(3, 3, 1)))

    def test_requires_minimal(self):
        with pytest.raises(ValueError):
            whittaker_vanishing(3, Unitary(0.3, 0.71), np.ones(7))
        with pytest.raises(ValueError):
            whittaker_vanishing(3, Unitary(0.3, 0.71), np.ones(5))


class TestKTypesAndSkew:
    def test_parameters(self):
        p3 = minimal_ktype_parameters(3)
        np.testing.assert_allclose(p3.vector, np.asarray(basis_u(3, 3, 1)))
        assert p3.mu(0.2).as_tuple() == pytest.approx((1 + 0.2j, -1 + 0.2j, -0.4j))
        np.testing.assert_allclose(minimal_ktype_parameters(1).vector, np.asarray(basis_u(1, 0, -1)))
        np.testing.assert_allclose(minimal_ktype_parameters(0).vector, [1])
        with pytest.raises(ValueError):
            minimal_ktype_parameters(0).mu(0.0, x=0.6)

    def test_bad_whittaker_exclusion(self):
        diag = y0_skew_exclusion(3, (2, 0, -2))
        assert diag.excluded
        assert diag.eigenvalue == pytest.approx(-2 * sqrt(90) / 6)
        for d in range(2, 7):
            lam = y0_skew_exclusion(d, (d - 1, 0, 1 - d)).eigenvalue
            assert lam == pytest.approx(-(d - 1) * sqrt(6 * d * (2 * d - 1)) / sqrt((d + 1) * (2 * d + 3)))

    def test_d1(self):
        assert not y0_skew_exclusion(1, (0, 0, 0)).excluded
        vals = d1_eigenvalues(MU)
        got = sorted(vals.values(), key=lambda z: (z.real, z.imag))
        want = sorted((-2 * sqrt(3 / 5) * m for m in MU), key=lambda z: (z.real, z.imag))
        assert got == pytest.approx(want)
        imag = d1_eigenvalues((0.3j, 0.1j, -0.4j))
        assert all(abs(v.real) < 1e-14 for v in imag.values())
