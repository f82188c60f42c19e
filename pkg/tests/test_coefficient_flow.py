from fractions import Fraction
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl3kit.coefficient_flow import (adjoint_raising_R, adjoint_raising_R_closed_form, adjoint_y, apply_word,
                                     display_consistency, duality_check, generate_minimal_span,
                                     gram_adjointness_residual, gram_recursion_check, intertwining_compatibility_check,
                                     multiplicities, raising_R, raising_R_closed_form, span_configuration, y_action,
                                     y_action_pointwise_check, y_matrix)
from gl3kit.lie_operators import IwasawaPoint
from gl3kit.minimal_classifier import g_vectors
from gl3kit.wigner import VCharacter, basis_u

coord = st.floats(-2, 2)
complex_mu = st.tuples(coord, coord, coord, coord).map(
    lambda v: (complex(v[0], v[1]), complex(v[2], v[3]), complex(-v[0] - v[2], -v[1] - v[3])))
MU = (0.3 + 0.2j, -0.5 + 0.1j, 0.2 - 0.3j)


def vec(n, seed=0):
    rng = np.random.default_rng(seed)
    return rng.normal(size=n) + 1j * rng.normal(size=n)


class TestYAction:
    def test_weight_zero_is_killed(self):
        for sign in (1, -1):
            np.testing.assert_allclose(np.asarray(y_action(0, 0, MU, basis_u(0, 0, 1))), 0, atol=1e-15)

    @given(complex_mu)
    def test_d1_eigenvector(self, mu):
        u = np.asarray(basis_u(1, 0, -1))
        got = np.asarray(y_action(0, 1, mu, u))
        np.testing.assert_allclose(got, -2 * sqrt(3 / 5) * mu[2] * u, atol=1e-12)

    @given(complex_mu)
    def test_ym2_y0_on_g1(self, mu):
        m1, m2, m3 = mu
        got = sqrt(35) * np.asarray(apply_word((0, -2), 2, mu, g_vectors("g1", 2, mu=mu)))
        want = -8 * sqrt(2) * (m1 - m2 - 1) * (m1 - m3 - 1) * (m2 - m3 - 1) * np.asarray(basis_u(0, 0, 1))
        np.testing.assert_allclose(got, want, rtol=1e-10, atol=1e-10)

    def test_dimensions_and_errors(self):
        assert y_matrix(2, 1, MU).shape == (3, 7)  # acts on row vectors
        assert y_matrix(-2, 2, MU).shape == (5, 1)
        with pytest.raises(ValueError):
            y_action(-2, 1, MU, np.ones(3))
        np.testing.assert_array_equal(np.asarray(y_action(1, 2, MU, np.zeros(5))), 0)

    @pytest.mark.parametrize("mu", [(Fraction(1, 3), Fraction(-2, 5), Fraction(1, 15)),
                                    (Fraction(2), Fraction(-1, 2), Fraction(-3, 2))])
    def test_explicit_displays_exact(self, mu):
        for a in range(-2, 3):
            for d in range(max(0, -a), 6):
                assert display_consistency(a, d, mu), (a, d)

    def test_pointwise_against_lie_algebra(self):
        rng = np.random.default_rng(3)
        p = IwasawaPoint.random(rng)
        assert y_action_pointwise_check(0, 1, MU, vec(3), p) < 1e-6
        assert y_action_pointwise_check(2, 0, MU, vec(1), p) < 1e-6
        assert y_action_pointwise_check(-1, 3, MU, vec(7), p) < 1e-6
        with pytest.raises(ValueError):
            y_action_pointwise_check(-1, 1, MU, vec(3), p)

    def test_unitary_y0_is_skew(self):
        mu = (0.3j, 0.1j, -0.4j)
        for d in range(6):
            m = y_matrix(0, d, mu)
            np.testing.assert_allclose(m, -m.conj().T, atol=1e-13)


class TestAdjoint:
    def test_skew_and_scaled(self):
        v = vec(5)
        np.testing.assert_allclose(np.asarray(adjoint_y(0, 2, MU, v)), -np.asarray(y_action(0, 2, MU, v)))
        v = vec(7, 1)
        np.testing.assert_allclose(np.asarray(adjoint_y(1, 2, MU, v)),
                                   sqrt(7 / 5) * np.asarray(y_action(-1, 3, MU, v)), atol=1e-12)
        np.testing.assert_allclose(np.asarray(adjoint_y(1, 0, MU, vec(3))), [0], atol=1e-14)

    @settings(max_examples=25)
    @given(complex_mu, st.integers(-2, 2), st.integers(2, 5), st.integers(0, 1000))
    def test_pairing(self, mu, a, d, seed):
        dual = tuple(-x.conjugate() for x in mu)
        u, v = vec(2 * d + 1, seed), vec(2 * d + 2 * a + 1, seed + 1)
        lhs = np.vdot(v, np.asarray(y_action(a, d, mu, u)))
        rhs = np.vdot(np.asarray(adjoint_y(a, d, dual, v)), u)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


class TestRaising:
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_variant1_at_j1(self, d):
        m1, m2, m3 = MU
        sign = (-1) ** d
        want = 16 * sqrt(3 * d * (d + 2)) * (m1 - m3 + d) * (m2 - m3 - 1) * np.asarray(basis_u(d + 1, 1, sign))
        np.testing.assert_allclose(np.asarray(raising_R(1, d, MU, 1, sign)), want, rtol=1e-12, atol=1e-10)

    def test_variant2_at_j0(self):
        for d in (2, 4):
            r = np.asarray(raising_R(2, d, MU, 0))
            b = np.asarray(basis_u(d + 2, 0, 1))
            np.testing.assert_allclose(r, np.vdot(b, r) / np.vdot(b, b) * b, atol=1e-10)

    @settings(max_examples=20)
    @given(complex_mu, st.sampled_from([1, 2]), st.integers(1, 4), st.data())
    def test_closed_forms(self, mu, variant, d, data):
        j = data.draw(st.integers(-d, d))
        s = data.draw(st.sampled_from([1, -1]))
        for lhs, rhs in ((raising_R(variant, d, mu, j, s), raising_R_closed_form(variant, d, mu, j, s)),
                         (adjoint_raising_R(variant, d, mu, j, s), adjoint_raising_R_closed_form(variant, d, mu, j, s))):
            lhs, rhs = np.asarray(lhs), np.asarray(rhs)
            np.testing.assert_allclose(lhs, rhs, atol=1e-9 * max(1.0, np.abs(rhs).max()))


class TestGramAndSpan:
    @pytest.mark.parametrize("chi", [VCharacter(1, 1), VCharacter(-1, 1), VCharacter(1, -1), VCharacter(-1, -1)])
    def test_orthonormality_propagates(self, chi):
        mu = (0.4j, 0.1j, -0.5j)
        rep = gram_recursion_check(8, mu, chi, 0)
        assert rep.ok
        assert gram_adjointness_residual(rep, mu, chi, 0) < 1e-10

    def test_d0_one_chain_has_half_diagonal(self):
        rep = gram_recursion_check(8, (0.4j, 0.1j, -0.5j), VCharacter(-1, 1), 0)
        assert rep.d0 == 1
        table = rep.tables[8]
        np.testing.assert_allclose(np.diag(table), 0.5, atol=1e-10)
        np.testing.assert_allclose(table - np.diag(np.diag(table)), 0, atol=1e-10)

    def test_kappa_needs_matching_mu(self):
        with pytest.raises(ValueError):
            gram_recursion_check(5, (0.4j, 0.1j, -0.5j), VCharacter(-1, 1), 3)

    def test_span_examples(self):
        assert generate_minimal_span(0, VCharacter(1, 1), 0, (0.4j, 0.1j, -0.5j), 4).rank == 3
        assert generate_minimal_span(3, VCharacter(-1, 1), 3, (1 + 0.3j, -1 + 0.3j, -0.6j), 5).rank == 2
        assert generate_minimal_span(2, VCharacter(1, 1), 2, (0.5 + 0.3j, -0.5 + 0.3j, -0.6j), 2).rank == 1

    def test_multiplicity_examples(self):
        assert multiplicities(0, 4) == 3
        assert multiplicities(1, 1) == 1
        assert multiplicities(3, 2) == 0
        assert [multiplicities(0, d) for d in range(6)] == [1, 0, 2, 1, 3, 2]
        with pytest.raises(ValueError):
            multiplicities(0, -1)

    @pytest.mark.parametrize("d0", range(4))
    def test_multiplicity_equals_rank(self, d0):
        chi, kappa, mu = span_configuration(d0)
        for d in range(d0, d0 + 5):
            assert generate_minimal_span(d0, chi, kappa, mu, d).rank == multiplicities(d0, d)


class TestSymmetries:
    def test_intertwining(self):
        assert intertwining_compatibility_check(0, 1, MU, "I", vec(3)) == 0
        assert intertwining_compatibility_check(0, 1, MU, "w2", vec(3)) < 1e-8
        assert intertwining_compatibility_check(-1, 2, MU, "w3", vec(5)) < 1e-8
        assert intertwining_compatibility_check(2, 1, MU, "w4", vec(3)) < 1e-8

    @given(complex_mu, st.integers(-2, 2), st.integers(2, 5))
    def test_duality(self, mu, a, d):
        assert duality_check(a, d, mu, vec(2 * d + 1)) < 1e-10 * max(1.0, max(abs(m) for m in mu)) ** 2
        assert duality_check(a, d, mu, np.zeros(2 * d + 1)) == 0
