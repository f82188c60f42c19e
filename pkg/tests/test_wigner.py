from math import factorial, pi, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_jacobi
from scipy.spatial.transform import Rotation

from gl3kit.indexed import CenterIndexedMatrix
from gl3kit.suites import PRINTED_D1_W3, PRINTED_D2_W3
from gl3kit.wigner import (V_GROUP, WEYL, VCharacter, basis_u, basis_v, euler_rotation, exact_to_complex,
                           exact_matmul, jacobi_polynomial, rotation_z, sigma_projection, v_element, weyl_action,
                           weyl_element, weyl_name, weyl_product, wigner_D, wigner_D_array, wigner_D_exact,
                           wigner_small_d, wv_commutation)

angles = st.floats(-pi, pi, allow_nan=False)


def reference_small_d(j, mp, m, beta):
    # Wigner's explicit sum, written independently of the Jacobi route
    total = 0.0
    for k in range(2 * j + 1):
        if j + m - k < 0 or k + mp - m < 0 or j - mp - k < 0:
            continue
        total += ((-1) ** (k - m + mp) * np.cos(beta / 2) ** (2 * j + m - mp - 2 * k)
                  * np.sin(beta / 2) ** (2 * k + mp - m)
                  / (factorial(j + m - k) * factorial(k) * factorial(j - mp - k) * factorial(k + mp - m)))
    return total * sqrt(factorial(j + mp) * factorial(j - mp) * factorial(j + m) * factorial(j - m))


def reference_D(j, a, b, g):
    ms = range(-j, j + 1)
    return np.array([[np.exp(-1j * mp * a) * reference_small_d(j, mp, m, b) * np.exp(-1j * m * g) for m in ms]
                     for mp in ms])


class TestJacobi:
    def test_base_cases(self):
        assert jacobi_polynomial(0, 3, 1, 0.7) == 1
        assert jacobi_polynomial(1, 1, 0, 0) == pytest.approx(0.5)
        assert jacobi_polynomial(2, 0, 0, 0.5) == pytest.approx(-0.125)

    @given(st.integers(0, 8), st.integers(0, 5), st.integers(0, 5), st.floats(-1, 1))
    def test_against_scipy(self, n, a, b, x):
        assert jacobi_polynomial(n, a, b, x) == pytest.approx(eval_jacobi(n, a, b, x), rel=1e-10, abs=1e-10)


class TestSmallD:
    def test_lowest_row_closed_form(self):
        for d in range(1, 6):
            for x in (-0.4, 0.2, 0.9):
                want = sqrt(factorial(2 * d)) / (factorial(d) * 2**d) * (1 - x * x) ** (d / 2)
                assert wigner_small_d(d, -d, 0, x) == pytest.approx(want, rel=1e-12)

    def test_identity_at_x_one(self):
        assert wigner_small_d(2, 1, 1, 1.0) == pytest.approx(1.0)
        assert wigner_small_d(2, 1, 0, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_symmetry(self):
        assert wigner_small_d(2, -1, 1, 0.0) == pytest.approx((-1) ** 2 * wigner_small_d(2, 1, -1, 0.0))

    @given(st.integers(0, 5).flatmap(lambda d: st.tuples(st.just(d), st.integers(-d, d), st.integers(-d, d))),
           st.floats(0.01, pi - 0.01))
    def test_against_wigner_sum(self, idx, beta):
        d, mp, m = idx
        assert wigner_small_d(d, mp, m, np.cos(beta)) == pytest.approx(reference_small_d(d, mp, m, beta), abs=1e-11)


class TestWignerD:
    def test_printed_w3(self):
        np.testing.assert_allclose(wigner_D(1, WEYL["w3"]).values, PRINTED_D1_W3, atol=1e-12)
        d2 = wigner_D(2, WEYL["w3"])
        np.testing.assert_allclose(d2.values, PRINTED_D2_W3, atol=1e-12)
        assert d2[-2, 0] == pytest.approx(-sqrt(6) / 4)
        assert d2[0, 0] == pytest.approx(-0.5)

    def test_center_indexing(self):
        m = wigner_D(2, euler_rotation(0.3, 1.1, -0.4))
        assert isinstance(m, CenterIndexedMatrix)
        assert m[2, -1] == m.values[4, 1]
        np.testing.assert_allclose(np.asarray(m.row(1)), m.values[3])

    @settings(max_examples=40)
    @given(st.integers(0, 5), angles, st.floats(0, pi), angles)
    def test_against_reference(self, d, a, b, g):
        got = wigner_D_array(d, euler_rotation(a, b, g))
        np.testing.assert_allclose(got, reference_D(d, a, b, g), atol=1e-10)

    @settings(max_examples=30)
    @given(st.integers(0, 5), st.integers(0, 2**32 - 1))
    def test_homomorphism_and_unitarity(self, d, seed):
        ka, kb = Rotation.random(2, random_state=seed).as_matrix()
        da, db = wigner_D_array(d, ka), wigner_D_array(d, kb)
        np.testing.assert_allclose(da @ db, wigner_D_array(d, ka @ kb), atol=1e-10)
        np.testing.assert_allclose(da @ da.conj().T, np.eye(2 * d + 1), atol=1e-10)

    def test_v_elements(self):
        for d in range(4):
            for eps in (1, -1):
                plus = wigner_D_array(d, v_element(eps, 1))
                np.testing.assert_allclose(plus, np.diag([eps ** (-m) for m in range(-d, d + 1)]), atol=1e-12)
                minus = wigner_D_array(d, v_element(eps, -1))
                want = np.zeros((2 * d + 1, 2 * d + 1))
                for mp in range(-d, d + 1):
                    want[mp + d, -mp + d] = (-1) ** d * eps**mp
                np.testing.assert_allclose(minus, want, atol=1e-12)

    def test_rejects_non_rotations(self):
        with pytest.raises(ValueError):
            wigner_D(1, np.diag([1.0, 1.0, -1.0]))
        with pytest.raises(ValueError):
            wigner_D(1, 2 * np.eye(3))


class TestExact:
    @pytest.mark.parametrize("d", range(6))
    def test_exact_equals_numeric(self, d):
        for name, w in WEYL.items():
            np.testing.assert_allclose(exact_to_complex(wigner_D_exact(d, name)), wigner_D_array(d, w), atol=1e-12)

    def test_exact_products(self):
        for d in (1, 2, 3):
            prod = exact_matmul(wigner_D_exact(d, "w2"), wigner_D_exact(d, "w3"))
            assert (prod.values == wigner_D_exact(d, weyl_product("w2", "w3")).values).all()

    def test_printed_w3_entries_exact(self):
        d2 = wigner_D_exact(2, "w3")
        assert complex(d2[-2, -1]) == pytest.approx(0.5j)


class TestRotations:
    def test_euler_basics(self):
        np.testing.assert_allclose(euler_rotation(0, 0, 0), np.eye(3))
        t = 0.7
        np.testing.assert_allclose(euler_rotation(t, 0, 0)[:2, :2], [[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
        w3 = WEYL["w3"]
        np.testing.assert_allclose(euler_rotation(0, pi, 0), w3 @ rotation_z(-pi) @ w3, atol=1e-15)


class TestProjections:
    def test_trivial(self):
        assert complex(sigma_projection(0, VCharacter(1, 1))[0, 0]) == 1

    def test_row_is_bu(self):
        sig = exact_to_complex(sigma_projection(1, VCharacter(1, -1)))
        np.testing.assert_allclose(sig[1], np.asarray(basis_u(1, 0, -1)))

    @pytest.mark.parametrize("d", range(5))
    def test_idempotent_exactly(self, d):
        for e1 in (1, -1):
            for e2 in (1, -1):
                s = sigma_projection(d, VCharacter(e1, e2))
                assert (exact_matmul(s, s).values == s.values).all()


class TestBasis:
    def test_examples(self):
        np.testing.assert_allclose(np.asarray(basis_u(1, 0, -1)), [0, 1, 0])
        np.testing.assert_allclose(np.asarray(basis_u(2, 2, 1)), [0.5, 0, 0, 0, 0.5])
        np.testing.assert_allclose(np.asarray(basis_v(3, -3)), np.eye(7)[0])

    def test_bad_index(self):
        with pytest.raises(IndexError):
            basis_v(2, 3)
        with pytest.raises((ValueError, IndexError)):
            basis_u(2, 1, 0)


class TestWeyl:
    mu = (0.3 + 0.1j, -0.5, 0.2 - 0.1j)

    def test_action(self):
        assert weyl_action(self.mu, "I") == self.mu
        assert weyl_action(self.mu, "w2") == (self.mu[1], self.mu[0], self.mu[2])
        # right action: mu^(w2 w3) = (mu^w2)^w3
        assert weyl_action(weyl_action(self.mu, "w2"), "w3") == weyl_action(self.mu, weyl_product("w2", "w3"))
        assert weyl_product("w2", "w3") == "w5"

    def test_action_matches_conjugation(self):
        # p_{mu^w}(a) = p_mu(w a w^-1) on diagonal a
        a = np.array([1.3, 0.6, 2.2])
        for name in WEYL:
            w = weyl_element(name)
            conj = np.diag(w @ np.diag(a) @ w.T)
            nu = weyl_action(self.mu, name)
            assert np.prod(a ** np.array(nu)) == pytest.approx(np.prod(conj ** np.array(self.mu)))

    def test_v_commutation(self):
        for v in V_GROUP:
            assert wv_commutation("wl", v) == (v[1], v[0])
            assert wv_commutation("w2", v) == (v[0] * v[1], v[1])
            assert wv_commutation("I", v) == v
            for name in WEYL:
                w = weyl_element(name)
                lhs = w @ v_element(*v)
                rhs = v_element(*wv_commutation(name, v)) @ w
                np.testing.assert_array_equal(lhs, rhs)

    def test_names(self):
        for name, w in WEYL.items():
            assert weyl_name(w) == name
            assert weyl_name(-w) == name
