from math import comb, pi, sqrt

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl3kit.gamma_functional import PoleError
from gl3kit.spectral import minimal_line_mu
from gl3kit.wigner import basis_u
from gl3kit.whittaker_eval import (CharacterParams, ContourSpec, bad_growth_exponent, bad_growth_ratio,
                                   barnes_second_lemma_check, check_minimal_line, g_kernel, g_tilde,
                                   g_vector_component, jacquet_central_oracle, jacquet_full_oracle, lambda_alpha,
                                   lambda_star, ladder_check, mellin_pde_residual, resolve_contour, w_star)

SHIFTED = (2 + 0.1j, 0.4, -2.4 - 0.1j)
CENTRAL_MU = (1 + 0.3j, -1 + 0.3j, -0.6j)

# frozen from the Mellin-Barnes evaluation, cross-checked against the Jacquet reductions
W0_STAR = 2.9744964929034767e-08 + 1.3763346792399874e-09j
W3_STAR_CENTRAL = 1.2191421746238165e-05 + 1.2984760010709234e-06j


class TestFactors:
    def test_lambda_alpha_at_zero(self):
        assert lambda_alpha((0, 0, 0), (0, 0, 0)) == pytest.approx(1)

    def test_lambda_alpha_against_mpmath(self):
        m1, m2, m3 = SHIFTED
        want = (mpmath.pi ** (-1.5 + m3 - m1) * mpmath.gamma((2 + m1 - m2) / 2) * mpmath.gamma((1 + m1 - m3) / 2)
                * mpmath.gamma((2 + m2 - m3) / 2))
        assert lambda_alpha((1, 0, 1), SHIFTED) == pytest.approx(complex(want), rel=1e-12)

    def test_lambda_star(self):
        x = 0.5
        mu = (x / 2, 0, -x / 2)
        want = pi ** (-1.5 - x) * 1 * complex(mpmath.gamma((1 + x) / 2) * mpmath.gamma((2 + x) / 2))
        assert lambda_star(2, mu) == pytest.approx(want)
        assert lambda_star(3, mu) == pytest.approx(-2 * want)
        with pytest.raises(ValueError):
            lambda_star(1, mu)

    def test_kernel_at_origin(self):
        assert g_kernel(0, (0, 0, 0), (0, 0, 0), (1, 1), (0, 0, 0)) == pytest.approx(pi**3)
        with pytest.raises(PoleError):
            g_kernel(0, (0, 0, 0), (0, 0, 0), (0, 1), (0, 0, 0))

    @settings(max_examples=20)
    @given(st.floats(1.2, 3), st.floats(-5, 5), st.floats(1.2, 3), st.floats(-5, 5))
    def test_kernel_against_mpmath(self, a, b, c, e):
        s = (complex(a, b), complex(c, e))
        mu = minimal_line_mu(3, 0.2).as_tuple()
        beta, eta = (3, 0, 1), (0, 3, 2)
        want = mpmath.mpf(1)
        for i in range(3):
            want *= mpmath.gamma((beta[i] + s[0] - mu[i]) / 2) * mpmath.gamma((eta[i] + s[1] + mu[i]) / 2)
        want *= mpmath.rgamma((s[0] + s[1] + sum(beta) + sum(eta) - 6) / 2)
        got = g_kernel(3, beta, eta, s, mu)
        assert got == pytest.approx(complex(want), rel=1e-9, abs=1e-300)
        assert g_tilde(3, (1, 2), s, mu) == got

    def test_vector_components(self):
        s, mu = (2.3 + 0.4j, 1.9 - 0.7j), minimal_line_mu(3, 0.2)
        assert g_vector_component(0, 0, s, (0.1j, 0.2j, -0.3j)) == g_tilde(0, (0, 0), s, (0.1j, 0.2j, -0.3j))
        for mp in (2, -2):
            eps = 1 if mp > 0 else -1
            want = sqrt(comb(6, 5)) * sum(eps**l * comb(2, l) * g_tilde(3, (1, l), s, mu) for l in range(3))
            assert g_vector_component(3, mp, s, mu) == pytest.approx(want)
        with pytest.raises(IndexError):
            g_vector_component(2, 3, s, mu)


class TestBarnes:
    def test_all_halves(self):
        quad, closed, err = barnes_second_lemma_check(0.5, 0.5, 0.5, 0.5, 0.5)
        assert closed == pytest.approx(1)
        assert err < 1e-12

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.builds(complex, st.floats(0.1, 1.5), st.floats(-2, 2)), min_size=5, max_size=5))
    def test_random_parameters(self, p):
        quad, closed, err = barnes_second_lemma_check(*p)
        assert err < 1e-8 * max(1.0, abs(closed))

    def test_shift_invariance(self):
        p = (0.4 + 0.2j, 0.7, 0.3 - 0.5j, 0.9 + 0.1j, 0.6)
        a = barnes_second_lemma_check(*p)[0]
        b = barnes_second_lemma_check(*p, shift=0.3)[0]
        assert abs(a - b) < 1e-9 * abs(a)

    def test_no_separating_line(self):
        with pytest.raises(ValueError):
            barnes_second_lemma_check(-1, 0.5, 0.5, 0.5, 0.5)


class TestContours:
    def test_defaults_right_of_poles(self):
        s1, s2, h = resolve_contour(0, SHIFTED)
        assert s1 > 2 and s2 > 2.4 and h >= 30

    def test_rejects_left_contour(self):
        with pytest.raises(ValueError):
            resolve_contour(0, SHIFTED, ContourSpec(s1=1.0, s2=3.0))

    def test_minimal_line_guard(self):
        check_minimal_line(1, (0.3, 0.1, -0.4))
        with pytest.raises(ValueError, match="mu1 - mu2"):
            check_minimal_line(3, (0.3, 0.1, -0.4))
        with pytest.raises(ValueError):
            w_star(2, (1, 1), (0.3, 0.1, -0.4))
        with pytest.raises(ValueError):
            w_star(0, (0, 1), SHIFTED)

    def test_height_doubling(self):
        mu = (0.3j, 0.1j, -0.4j)
        a = w_star(0, (1, 1), mu, ContourSpec(height=40, adaptive=False)).value[0]
        b = w_star(0, (1, 1), mu, ContourSpec(height=80, adaptive=False)).value[0]
        assert abs(a - b) < 1e-8 * abs(b)

    def test_contour_independence(self):
        a = w_star(0, (1, 1), SHIFTED).value[0]
        b = w_star(0, (1, 1), SHIFTED, ContourSpec(s1=3.5, s2=3.9)).value[0]
        assert abs(a - b) < 1e-9 * abs(a)


class TestValues:
    def test_frozen_d0(self):
        assert w_star(0, (1, 1), SHIFTED).value[0] == pytest.approx(W0_STAR, rel=1e-9)

    def test_frozen_d3_central(self):
        assert w_star(3, (1, 0.8), CENTRAL_MU, components=[0]).value[0] == pytest.approx(W3_STAR_CENTRAL, rel=1e-9)

    def test_decay(self):
        small = abs(w_star(0, (1, 1), SHIFTED).value[0])
        big = abs(w_star(0, (3, 3), SHIFTED).value[0])
        assert big < 1e-6 * small

    def test_d1_components_symmetric_sizes(self):
        mu = (0.5 + 0.2j, -0.1, -0.4 - 0.2j)
        v = w_star(1, (0.9, 1.2), mu).value
        assert v.shape == (3,)
        assert np.all(np.isfinite(v))


@pytest.mark.slow
class TestOracles:
    def test_d0_jacquet(self):
        w, err = jacquet_full_oracle(0, (1, 1), SHIFTED)
        got = lambda_alpha((0, 0, 0), SHIFTED) * np.asarray(w)[0, 0]
        assert got == pytest.approx(W0_STAR, rel=1e-4)

    def test_d1_jacquet_first_row(self):
        mu = (1.2 + 0.1j, 0.3, -1.5 - 0.1j)
        w, _ = jacquet_full_oracle(1, (1.0, 0.9), mu)
        lhs = sqrt(2) * lambda_alpha((0, 1, 1), mu) * np.asarray(basis_u(1, 0, -1)) @ np.asarray(w)
        rhs = w_star(1, (1.0, 0.9), mu).value
        np.testing.assert_allclose(lhs, rhs, rtol=1e-4, atol=1e-4 * np.abs(rhs).max())

    def test_oracle_convergence_guard(self):
        with pytest.raises(ValueError):
            jacquet_full_oracle(0, (1, 1), (0.1j, 0.2j, -0.3j))
        with pytest.raises(ValueError):
            jacquet_full_oracle(2, (1, 1), SHIFTED)

    def test_d3_central(self):
        val, err = jacquet_central_oracle(3, (1, 0.8), 0.3)
        assert lambda_star(3, CENTRAL_MU) * val == pytest.approx(W3_STAR_CENTRAL, rel=1e-6)
        assert jacquet_central_oracle(3, (1, 0.8), 0.3, row=3)[0] == 0
        with pytest.raises(ValueError):
            jacquet_central_oracle(3, (1, 0.8), 0.3, row=1)

    def test_d2_central_at_other_point(self):
        mu = minimal_line_mu(2, -0.25)
        val, _ = jacquet_central_oracle(2, (0.7, 1.1), -0.25)
        want = w_star(2, (0.7, 1.1), mu, components=[0]).value[0]
        assert lambda_star(2, mu) * val == pytest.approx(want, rel=1e-6)


class TestDifferentialEquations:
    @pytest.mark.parametrize("which", [1, 2])
    def test_pde_d4(self, which):
        mu = minimal_line_mu(4, 0.3)
        for s in ((3.3 + 0.4j, 4.1 - 1.2j), (5.2 - 2.0j, 3.7 + 0.3j)):
            for mp in (2, 4, -4, 0):
                res, scale = mellin_pde_residual(4, mp, s, mu, which)
                assert abs(res) < 1e-10 * scale

    def test_pde_d0(self):
        res, scale = mellin_pde_residual(0, 0, (2.2 + 0.3j, 1.7 - 0.8j), (0.3j, 0.1j, -0.4j))
        assert abs(res) < 1e-12 * scale

    def test_ladder_pointwise(self):
        mu = minimal_line_mu(2, 0.3)
        pts = [(3.1 + 0.4j, 2.7 - 0.2j), (4.0 - 1.0j, 3.3 + 0.9j)]
        assert ladder_check(2, 0, 1, None, mu, pointwise_s=pts) < 1e-10
        assert ladder_check(2, 1, -1, None, mu, pointwise_s=pts) < 1e-10
        assert ladder_check(2, 2, 1, None, mu, pointwise_s=pts) < 1e-10  # top entry: right side absent
        with pytest.raises(ValueError):
            ladder_check(2, 0, 0, None, mu)

    def test_ladder_integrated_d1(self):
        mu = (0.5 + 0.2j, -0.1, -0.4 - 0.2j)
        assert ladder_check(1, 0, 1, [(0.9, 1.1)], mu) < 1e-8


@pytest.mark.slow
def test_bad_growth_exceeds_prediction():
    assert bad_growth_ratio(3) > 5 ** (3 - 2)
    assert abs(bad_growth_exponent(3, 0.01) - 1) < 0.05


def test_character_params():
    assert CharacterParams(0, 1).degenerate
    assert not CharacterParams().degenerate
