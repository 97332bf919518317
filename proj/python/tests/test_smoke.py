import pathlib

import numpy as np
import pytest

import hfa

LIE = pathlib.Path(__file__).resolve().parents[2] / "data" / "lie"


def test_group_law():
    a, b = hfa.GroupElement(1, 2, 3), hfa.GroupElement(4, 5, 6)
    assert a * b == hfa.GroupElement(5, 7, 0.5 * (5 - 8) + 9)
    assert a * a.inverse() == hfa.GroupElement()


def test_rep_matrix_is_unitary():
    g = hfa.GridSpec1D(16, 2.0)
    u = hfa.rep_matrix(0.75, hfa.GroupElement(0.3, -0.2, 0.1), g)
    assert u.shape == (16, 16)
    assert np.allclose(u.conj().T @ u, np.eye(16), atol=1e-12)
    with pytest.raises(hfa.DomainError):
        hfa.rep_matrix(0.0, hfa.GroupElement(), g)


def test_forward_field_and_inverse():
    grid = hfa.GridSpec1D(16, 2.0)
    box = hfa.BoxGrid3D([2.5, 2.5, 3.0], [16, 16, 32])
    f = hfa.SampledFunction3D.sample(box, hfa.ClosedForm.gaussian([0.5, 0.5, 0.6], z_carrier=1.0))
    field = hfa.forward_field(f, hfa.TGrid(0.25, 8), grid)
    assert len(field) == 16
    assert field[0].shape == (16, 16)
    assert hfa.a_norm(field) > 0
    assert np.isfinite(hfa.inverse_transform(field, hfa.GroupElement(), grid))


def test_intertwiner_is_unitary():
    w = hfa.intertwiner(1.0, 0.5, hfa.GridSpec1D(8, 1.5))
    assert np.allclose(w.conj().T @ w, np.eye(64), atol=1e-12)


def test_partial_trace_matches_numpy():
    rng = np.random.default_rng(0)
    r = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    expect = np.einsum("ijkj->ik", r.reshape(4, 4, 4, 4))
    assert np.allclose(hfa.partial_trace_second(r, 4), expect)


def test_lie_corpus():
    assert hfa.lower_central_series_dims(str(LIE / "ut4.txt")) == [6, 3, 1, 0]
    e = hfa.find_h3(str(LIE / "h3.txt"))
    assert e["valid"]
    assert e["z"] == ["0", "0", "1"]
    with pytest.raises(hfa.NotApplicableError):
        hfa.find_h3(str(LIE / "abelian2.txt"))


def test_suites():
    assert "lie" in hfa.suite_names()
    assert hfa.passed(hfa.run_suite("group"))
    with pytest.raises(hfa.ConfigError):
        hfa.run_suite("group", {"n_points": "12"})
