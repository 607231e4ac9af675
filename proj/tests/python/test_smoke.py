import json

import numpy as np
import pytest

import speck


def test_generator_relations():
    assert speck.multiply([1, 1], [0], [0]) == (1, [])
    assert speck.multiply([1, -1], [1], [1]) == (-1, [])
    assert speck.multiply([1, 1], [1], [0]) == (-1, [0, 1])


def test_clifford_norm():
    x = {"signature": {"squares": [1, 1], "kappa": [1, 1]},
         "coeffs": [{"monomial": [0], "re": 3.0}, {"monomial": [1], "re": 4.0}]}
    assert speck.clifford_norm(json.dumps(x)) == pytest.approx(5.0)


def test_cl20_model():
    e1, e2 = speck.generator_images(2, 0)
    assert np.allclose(e1 @ e1, np.eye(2))
    assert np.allclose(e1 @ e2 + e2 @ e1, 0)


def test_comultiply_closed_form():
    x, y = 0.3, -1.1
    assert speck.comultiply("u", x, y) == pytest.approx(np.exp(-x * x - y * y))
    assert speck.comultiply("v", x, y) == pytest.approx((x + y) * np.exp(-x * x - y * y))


def test_oscillator_spectrum():
    spec = speck.oscillator_spectrum(1, 64, 4, 6)
    assert np.allclose(spec, [0, 2, 2, 4, 4, 6], atol=1e-8)


def test_index_and_graded_index():
    rng = np.random.default_rng(0)
    f = rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
    assert speck.index([f])["index"] == 2
    assert speck.index([np.eye(2), np.zeros((2, 2))])["index"] == [0, 0]
    assert speck.graded_index(2, 1, [np.zeros((3, 3))]) == 1


def test_cayley_and_retraction():
    d = np.array([[0, 1], [1, 0]], dtype=complex)
    u = speck.cayley(d, [1, -1])
    assert np.allclose(u, -1j * d)
    assert np.allclose(speck.unitary_retraction(2 * np.eye(2, dtype=complex), 1.0), np.eye(2))
    with pytest.raises(speck.PreconditionError):
        speck.unitary_retraction(np.zeros((2, 2), dtype=complex), 1.0)


def test_bott_class():
    r = speck.bott_class(1, 64, 4)
    assert r["class"] == 1
    assert r["even_kernel"] == 1


def test_residual_table_decays():
    rows = speck.residual_table(48, 8.0)
    assert [r[0] for r in rows] == [1, 2, 4, 8]
    assert rows[3][1] < 0.5 * rows[1][1]


def test_suite_report():
    report = speck.run_suite("schwartz")
    assert report["passed"]
    assert report["suite"] == "schwartz"
    with pytest.raises(speck.UsageError):
        speck.run_suite("nope")
