import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import S
from sympy.physics.wigner import clebsch_gordan, wigner_3j

from gl3kit.clebsch_gordan import cg, cg_float, cg_matrix, cgb_vector, cg_sum_identity, three_j
from gl3kit.suites import printed_cg_tables
from gl3kit.surd import SurdScalar


def sympy_cg(d, k, a, m, i):
    # <k i ; d m | d+a, i+m> in the coupling order used by the package
    return float(clebsch_gordan(S(k), S(d), S(d + a), S(i), S(m), S(i + m)))


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("d", range(7))
def test_against_sympy(d, k):
    for a in range(-k, k + 1):
        if d + a < abs(d - k):
            continue
        got = cg_float(d, k, a)
        want = np.array([[sympy_cg(d, k, a, m, i) for i in range(-k, k + 1)] for m in range(-d, d + 1)])
        np.testing.assert_allclose(got, want, atol=1e-13, err_msg=f"d={d} k={k} a={a}")


def test_printed_tables_exact():
    for (d, k, a), rows in printed_cg_tables().items():
        got = cg_matrix(d, k, a)
        for m, row in enumerate(rows):
            for i, want in enumerate(row):
                assert got[m, i] == want, (d, k, a, m - d, i - k)


def test_known_zero_and_values():
    assert cg(0, 2, -2, 0, 0) == 0
    assert float(cg(1, 1, 0, 0, 0)) == pytest.approx(0.0)
    assert float(cg(2, 1, 0, 0, 1)) == pytest.approx(np.sqrt(0.5))
    assert isinstance(cg(3, 2, 1, 1, -1), SurdScalar)


def test_out_of_range_is_zero():
    assert cg(2, 2, 0, 3, 0) == 0
    assert cg(2, 1, 0, 0, 2) == 0
    assert cg(1, 2, -2, 0, 0) == 0  # triangle fails
    with pytest.raises(ValueError):
        cg(2, 3, 0, 0, 0)


@given(st.integers(0, 9), st.sampled_from([1, 2]), st.data())
def test_symmetry(d, k, data):
    # <k -i ; d -m | d+a, -(i+m)> = (-1)^{k + d - (d+a)} <k i ; d m | d+a, i+m>
    a = data.draw(st.integers(-k, k))
    m = data.draw(st.integers(-d, d))
    i = data.draw(st.integers(-k, k))
    assert cg(d, k, a, -m, -i) == cg(d, k, a, m, i) * (-1) ** ((k - a) % 2)


@pytest.mark.parametrize("d", range(1, 8))
def test_orthonormal_columns(d):
    # for fixed total index the couplings to the allowed d+a form an orthogonal matrix
    for k in (1, 2):
        blocks = [cg_float(d, k, a) for a in range(-k, k + 1) if d + a >= abs(d - k)]
        for big_m in range(-d - k, d + k + 1):
            rows = []
            for blk in blocks:
                rows.append([blk[m + d, big_m - m + k] if abs(big_m - m) <= k else 0.0 for m in range(-d, d + 1)])
            mat = np.array(rows)
            gram = mat @ mat.T
            diag = np.diag(gram)
            np.testing.assert_allclose(gram - np.diag(diag), 0, atol=1e-13)


def test_cgb_vector():
    v = [float(x) for x in cgb_vector(0)]
    np.testing.assert_allclose(v, np.sqrt(6) / 3 * np.array([-2, -3, -3, -2, 0]))
    assert cgb_vector(4)[4] == SurdScalar.make(8, 6) * SurdScalar.make(1, 1) / 3


@pytest.mark.parametrize("d", range(1, 7))
def test_sum_identity(d):
    for a in range(-2, 3):
        for m in range(-d, d + 1):
            assert cg_sum_identity(d, m, a) < 1e-12


def test_cg_matrix_shape():
    assert cg_matrix(3, 2, 1).shape == (7, 5)


@given(st.integers(0, 8), st.sampled_from([1, 2]), st.data())
def test_three_j_against_sympy(j2, j1, data):
    j3 = data.draw(st.integers(abs(j2 - j1), j2 + j1))
    m1 = data.draw(st.integers(-j1, j1))
    m2 = data.draw(st.integers(-j2, j2))
    m3 = -m1 - m2
    if abs(m3) > j3:
        return
    want = float(wigner_3j(j1, j2, j3, m1, m2, m3))
    assert three_j(j1, j2, j3, m1, m2, m3) == pytest.approx(want, abs=1e-13)
    assert three_j(j2, j1, j3, m2, m1, m3) == pytest.approx(float(wigner_3j(j2, j1, j3, m2, m1, m3)), abs=1e-13)
