from math import factorial, pi, sqrt

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl3kit.gamma_functional import (PoleError, case3_anchor_constant, classical_whittaker,
                                     classical_whittaker_matrix, complex_gamma, f_matrix_row,
                                     f_matrix_row_quadrature, gamma_to_classical_quotient, gamma_W, intertwined_row,
                                     intertwined_row_by_matrices, proportionality, reciprocal_gamma, t_matrix,
                                     verify_gdwhittfes)
from gl3kit.wigner import WEYL, basis_u, v_element, wigner_D_array

MU = (0.31 + 0.2j, -0.17 + 0.1j, -0.14 - 0.3j)
# imaginary part kept away from 0 so u avoids the integer poles of Gamma_W
small_complex = st.builds(complex, st.floats(-0.8, 0.8), st.floats(0.1, 3) | st.floats(-3, -0.1))


class TestGamma:
    def test_basics(self):
        assert complex_gamma(1) == pytest.approx(1)
        assert complex_gamma(0.5) == pytest.approx(sqrt(pi))
        with pytest.raises(PoleError):
            complex_gamma(-2)
        assert reciprocal_gamma(-2) == 0

    @given(st.builds(complex, st.floats(-6, 6), st.floats(-6, 6)))
    def test_against_mpmath(self, z):
        if min(abs(z + n) for n in range(8)) < 1e-3:
            return
        assert complex_gamma(z) == pytest.approx(complex(mpmath.gamma(z)), rel=1e-11)
        assert reciprocal_gamma(z) == pytest.approx(complex(mpmath.rgamma(z)), rel=1e-11, abs=1e-300)

    def test_reflection_and_duplication(self):
        z = 2 + 3j
        assert complex_gamma(z) * complex_gamma(1 - z) == pytest.approx(pi / np.sin(pi * z))
        lhs = complex_gamma(z) * complex_gamma(z + 0.5)
        assert lhs == pytest.approx(2 ** (1 - 2 * z) * sqrt(pi) * complex_gamma(2 * z))


class TestClassicalWhittaker:
    def test_zero_argument(self):
        assert classical_whittaker(0, 0, 0.0, 1) == pytest.approx(pi)

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_lowest_entry_at_integral_u(self, d):
        y = 0.37
        want = (2 * pi) ** d * y ** (d - 1) * np.exp(-2 * pi * y) / factorial(d - 1)
        assert classical_whittaker(d, -d, y, d - 1) == pytest.approx(want, rel=1e-10)

    @pytest.mark.parametrize("m,y,u", [(0, 0.4, 1.3 + 0.5j), (1, -0.6, 0.8), (-2, 0.25, 2.1 - 1j), (2, 0.0, 1.5)])
    def test_against_defining_integral(self, m, y, u):
        got = classical_whittaker(2, m, y, u)
        assert got == pytest.approx(classical_whittaker(2, m, y, u, method="quadrature"), rel=1e-7)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 3), small_complex, st.floats(0.3, 2.0), st.sampled_from([1, -1]))
    def test_functional_equation(self, d, u, ay, sgn):
        y = sgn * ay
        left = np.diag(classical_whittaker_matrix(d, y, -u))
        right = (pi * ay) ** (-u) * np.array(gamma_W(d, u, sgn).entries) * np.diag(classical_whittaker_matrix(d, y, u))
        np.testing.assert_allclose(left, right, rtol=1e-8)

    def test_errors(self):
        with pytest.raises(IndexError):
            classical_whittaker(1, 2, 0.5, 1)
        with pytest.raises(ValueError):
            classical_whittaker(1, 0, 0.5, -1, method="quadrature")


class TestGammaW:
    def test_entries(self):
        assert gamma_W(2, 0).entry(0) == pytest.approx(1)
        assert gamma_W(2, 1).entry(1) == pytest.approx(-0.5)

    @given(st.integers(0, 4), small_complex)
    def test_eps_flip(self, d, u):
        plus, minus = gamma_W(d, u, 1), gamma_W(d, u, -1)
        for m in range(-d, d + 1):
            if m in plus.poles:
                continue
            assert minus.entry(-m) == pytest.approx(plus.entry(m))

    def test_poles(self):
        g = gamma_W(2, -1)  # (1 - m - 1)/2 = -m/2 is a pole for m = 0, 2
        assert set(g.poles) == {0, 2}
        with pytest.raises(PoleError):
            g.matrix()
        with pytest.raises(PoleError):
            g.entry(2)
        with pytest.raises(ValueError):
            gamma_W(1, 0.3, 0)

    @pytest.mark.parametrize("d", range(5))
    def test_quotient_is_one(self, d):
        for u in (0.3 + 0.7j, -0.45 - 1.2j):
            np.testing.assert_allclose(gamma_to_classical_quotient(d, u), 1, rtol=1e-10)

    @pytest.mark.parametrize("d", range(5))
    def test_w2_conjugation(self, d):
        g = gamma_W(d, 0.3 - 0.4j).matrix()
        w2 = wigner_D_array(d, WEYL["w2"])
        np.testing.assert_allclose(w2 @ g @ w2, wigner_D_array(d, v_element(-1, 1)) @ g, atol=1e-10)


class TestTMatrix:
    def test_identity_and_scalar(self):
        np.testing.assert_allclose(np.asarray(t_matrix(2, "I", MU)), np.eye(5))
        m1, m2, _ = MU
        want = pi ** (m1 - m2) * complex_gamma((1 + m2 - m1) / 2) / complex_gamma((1 - m2 + m1) / 2)
        assert complex(np.asarray(t_matrix(0, "w2", MU))[0, 0]) == pytest.approx(want)

    @pytest.mark.parametrize("d", range(4))
    def test_path_independence(self, d):
        a = np.asarray(t_matrix(d, "wl", MU, ("w2", "w3", "w2")))
        b = np.asarray(t_matrix(d, "wl", MU, ("w3", "w2", "w3")))
        np.testing.assert_allclose(a, b, rtol=1e-9, atol=1e-12)

    def test_composition(self):
        from gl3kit.wigner import weyl_action
        for w, v in (("w2", "w3"), ("w3", "w2"), ("w4", "w2")):
            from gl3kit.wigner import weyl_product
            lhs = np.asarray(t_matrix(2, weyl_product(w, v), MU))
            rhs = np.asarray(t_matrix(2, w, MU)) @ np.asarray(t_matrix(2, v, weyl_action(MU, w)))
            np.testing.assert_allclose(lhs, rhs, rtol=1e-9, atol=1e-12)

    def test_bad_word(self):
        with pytest.raises(ValueError):
            t_matrix(1, "wl", MU, ("w2", "w3"))

    def test_pole(self):
        with pytest.raises(PoleError):
            t_matrix(1, "w2", (1.0, 0.0, -1.0))


class TestFRows:
    def test_symmetry_and_zero(self):
        for d in (1, 2, 3):
            assert f_matrix_row(d, "last", d, -1.7) == pytest.approx(f_matrix_row(d, "last", -d, -1.7))
            assert f_matrix_row(d, "second_to_last", 0, -1.7) == 0

    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("which", ["last", "second_to_last"])
    def test_against_quadrature(self, d, which):
        for u in (-2.0, -2.3, -3.1):
            for m in range(-d, d + 1):
                want = f_matrix_row_quadrature(d, which, m, u)
                assert f_matrix_row(d, which, m, u) == pytest.approx(want, rel=1e-8, abs=1e-10)

    def test_errors(self):
        with pytest.raises(ValueError):
            f_matrix_row(0, "second_to_last", 0, -2)
        with pytest.raises(ValueError):
            f_matrix_row(2, "first", 0, -2)
        with pytest.raises(IndexError):
            f_matrix_row(1, "last", 2, -2)


class TestIntertwinedRows:
    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_three_routes_agree(self, d):
        for sign in (1, -1):
            for row in ("d", "d-1"):
                for u in (0.37 + 0.4j, (0.37 + 0.4j, -0.21 + 0.1j)):
                    direct = np.asarray(intertwined_row(d, sign, row, u))
                    ratios = np.asarray(intertwined_row(d, sign, row, u, method="ratios"))
                    mats = np.asarray(intertwined_row_by_matrices(d, sign, row, u))
                    scale = max(1.0, np.abs(mats).max())
                    np.testing.assert_allclose(direct, mats, atol=1e-9 * scale)
                    np.testing.assert_allclose(ratios, mats, atol=1e-9 * scale)

    def test_first_ratio_display(self):
        d, u = 6, 0.37 + 0.4j
        row = np.asarray(intertwined_row(d, 1, "d", u))
        coef = {m: np.vdot(np.asarray(basis_u(d, m, 1)), row) / np.vdot(np.asarray(basis_u(d, m, 1)),
                                                                         np.asarray(basis_u(d, m, 1)))
                for m in range(0, d + 1, 2)}
        for m in range(0, d - 1, 2):
            want = -sqrt((d - m) * (d - 1 - m) / ((d + 2 + m) * (d + 1 + m))) * (d - u + m) / (d - 2 - u - m)
            if m == 0:
                want *= 2
            assert coef[m + 2] / coef[m] == pytest.approx(want, rel=1e-10)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            intertwined_row(1, 1, "d-1", 0.3)
        with pytest.raises(ValueError):
            intertwined_row(3, 0, "d", 0.3)


class TestProportionality:
    def test_anchor_formula(self):
        assert case3_anchor_constant(3) == pytest.approx(pi ** -3 * 2.0 ** -3 * 6 * sqrt(120 / 120))
        with pytest.raises(ValueError):
            case3_anchor_constant(5)

    def test_proportionality_helper(self):
        c, r = proportionality([2, 4j], [1, 2j])
        assert c == pytest.approx(2) and r < 1e-15
        assert proportionality([1, 0], [0, 0])[1] == 1.0

    @pytest.mark.parametrize("case,d,t", [(1, 4, 0.2), (1, 3, 0.4), (2, 5, 0.0), (3, 3, 0.0), (4, 3, 0.0)])
    def test_families(self, case, d, t):
        rep = verify_gdwhittfes(case, d, t)
        assert rep.ok, rep.pairs

    def test_family_preconditions(self):
        with pytest.raises(ValueError):
            verify_gdwhittfes(1, 3, 0.0)
        with pytest.raises(ValueError):
            verify_gdwhittfes(2, 3)
