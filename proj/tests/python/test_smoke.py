import math

import numpy as np
import pytest

import witness_forge as wf


def test_catalog_lists_named_families():
    names = wf.catalog_names()
    assert "choi-abc" in names and "robertson4" in names
    m = wf.map_json("choi-abc", [1, 1, 0])
    assert m["kind"] == "gen"
    assert m["a"][0] == [0.5, 0.5, 0.0]


def test_choi_map_certificates():
    c = wf.certify("choi-abc", [1, 1, 0])
    assert c["positive"]["holds"]
    assert not c["cp"]["holds"]
    assert c["cp"]["evidence"]["lambda_min"] == pytest.approx(-1.0, abs=1e-10)
    assert c["witness"]["holds"]


def test_detect_choi_and_even_case():
    choi = wf.detect_cyclic([0.5, 0.5, 0.0])
    assert choi["verdict"] == "indecomposable"
    assert choi["pairing"] == pytest.approx(-0.375, abs=1e-10)
    even = wf.detect_cyclic([0.3, 0.3, 0.3, 0.1])
    assert even["a"] == pytest.approx(2 / 3, abs=1e-12)
    assert even["pairing"] == pytest.approx(-2 / 15, abs=1e-10)
    assert wf.detect_cyclic([1, 0, 0])["gate"] == "theorem4_check"


def test_pairing_matches_numpy_trace():
    rho = wf.detector_state(3, 0.5)
    w = wf.choi_matrix("choi-abc", [1, 1, 0])
    assert np.trace(w @ rho).real == pytest.approx(wf.pairing(rho, "choi-abc", [1, 1, 0]), abs=1e-12)
    assert wf.pairing(rho, "choi-abc", [1, 1, 0]) == pytest.approx(-0.375, abs=1e-10)
    assert wf.lambda_min(wf.partial_transpose(rho, 3, 3)) >= -1e-10


def test_linear_algebra_against_numpy():
    rng = np.random.default_rng(5)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = g + g.conj().T
    assert wf.lambda_min(h) == pytest.approx(np.linalg.eigvalsh(h)[0], abs=1e-10)
    coeffs = wf.char_poly_coeffs(g)
    assert coeffs[-1] == pytest.approx(np.linalg.det(g), abs=1e-9)
    # numpy.poly gives det(lambda I - M) = Sum (-1)^k e_k lambda^(n-k)
    e = np.poly(g) * np.array([(-1) ** k for k in range(5)])
    assert np.allclose(coeffs, e, atol=1e-9)


def test_appendix_and_rotation_family():
    a = wf.appendix_d3(1, 1, 0, -math.pi / 3)
    ref = np.array([[0.5, 0.5, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5]])
    assert np.abs(a - ref).max() <= 1e-12
    r = np.array([[0.5, -math.sqrt(3) / 2], [math.sqrt(3) / 2, 0.5]])
    assert np.abs(wf.rotation_family_a(r, 1.0, 3) - ref).max() <= 1e-12


def test_cd_value_vertex():
    a = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]])
    assert wf.cd_value(a, 1.0, [1, 0, 0]) == 0.0
    with pytest.raises(ValueError):
        wf.cd_value(a, 1.0, [0.5, 0.6, 0.0])


def test_terhal_witness():
    w = wf.terhal_witness()
    assert w["valid"]
    assert w["epsilon"] > 0


def test_cli_in_process():
    code, out, err = wf.run_cli("detect", "choi-abc", 1, 1, 0)
    assert code == 0 and '"indecomposable"' in out
    code, out, err = wf.run_cli("witness", "identity", 3)
    assert code == 1 and "not a witness (PSD)" in err
    code, _, _ = wf.run_cli("catalog", "no-such-map")
    assert code == 2
