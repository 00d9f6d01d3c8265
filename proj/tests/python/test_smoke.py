import numpy as np
import pytest

import asss


def test_mesh_info_matches_closed_form():
    info = asss.mesh_info(6)
    assert info["m"] == 63 * 63
    assert info["theta"] == pytest.approx(1.0851e-4, rel=5e-5)
    assert info["alpha_star"] == pytest.approx(0.75 * info["theta"], rel=1e-14)
    assert info["mu_min"] < info["est_mu_min"] < info["est_mu_max"] < info["mu_max"]


def test_matrices_are_symmetric_and_consistent():
    scipy_sparse = pytest.importorskip("scipy.sparse")
    d = asss.mass_matrix(4)
    mass = scipy_sparse.csr_matrix((d["data"], d["indices"], d["indptr"]), shape=d["shape"])
    k = asss.stiffness_matrix(4)
    stiff = scipy_sparse.csr_matrix((k["data"], k["indices"], k["indptr"]), shape=k["shape"])
    assert mass.shape == (225, 225)
    assert abs(mass - mass.T).max() < 1e-18
    assert abs(stiff - stiff.T).max() < 1e-15
    h = 1 / 16
    assert mass.diagonal() == pytest.approx(np.full(225, 4 * h * h / 9))
    assert stiff.diagonal() == pytest.approx(np.full(225, 8 / 3))


def test_bench_cell():
    rows = asss.bench(["iasss", "p-presb"], k=[3], nu=[1e-2], omega=[1.0])
    assert [r["method"] for r in rows] == ["iasss", "p-presb"]
    for r in rows:
        assert r["status"] == "yes"
        assert r["history"][0] == 1.0
        assert r["history"][-1] <= 1e-6
    assert np.isnan(rows[1]["alpha"])


def test_bench_rejects_unknown_method():
    with pytest.raises(ValueError):
        asss.bench(["sor"], k=[3], nu=[1e-2], omega=[1.0])


def test_preconditioned_spectrum_in_disk():
    b, pb = asss.spectra(3, 1e-2, 1e2)
    assert b.shape == pb.shape == (196,)
    assert np.max(np.abs(pb - 1)) <= 1 + 1e-8
    assert np.min(pb.real) > 0
    assert np.allclose(np.sort_complex(b), np.sort_complex(np.conj(b)), atol=1e-10)
    with pytest.raises(ValueError):
        asss.spectra(5, 1e-2, 1.0)
