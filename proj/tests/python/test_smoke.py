import json
import os
import subprocess

import numpy as np
import pytest

import nvdressed as nv


@pytest.fixture(scope="module")
def consts():
    return nv.PhysicalConstants()


def test_version_and_presets():
    assert nv.__version__
    assert set(nv.field_preset_names()) >= {"main-text", "supplementary"}
    f = nv.field_preset("main-text")
    assert f.b_x == pytest.approx(3.83)
    with pytest.raises(Exception):
        nv.field_preset("nowhere")


def test_hamiltonians_are_hermitian(consts):
    f = nv.field_preset("main-text")
    h3 = nv.electronic_hamiltonian(consts, f)
    h9 = nv.full_hamiltonian(consts, f)
    assert h3.shape == (3, 3) and h9.shape == (9, 9)
    assert np.allclose(h3, h3.conj().T)
    assert np.allclose(h9, h9.conj().T)
    assert abs(np.trace(h9)) < 1e-9
    ref = np.linalg.eigvalsh(h3)
    assert np.allclose(sorted(nv.cubic_eigenvalues_exact(consts, f)), ref, atol=1e-9)


def test_non_hermitian_is_rejected():
    with pytest.raises(ValueError):
        nv.diagonalize_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


def test_resonance_structure(consts):
    f = nv.field_preset("main-text")
    a = nv.resonance_frequencies(consts, f)
    b_par = nv.working_point_b_par(consts, "B")
    f.b_par = b_par
    b = nv.resonance_frequencies(consts, f)
    assert len(a) == 2
    assert len(b) == 3
    assert [r["freq_MHz"] for r in b] == sorted(r["freq_MHz"] for r in b)


def test_fid_fit_recovers_parameters():
    tau = np.arange(0, 6.0001, 0.01)
    comps = [nv.DecayComponent(y0=0.5, a=-0.25, t2=2.6, delta=0.0),
             nv.DecayComponent(y0=0.0, a=-0.25, t2=1.41, delta=0.532)]
    y = np.asarray(nv.fid_signal(comps, list(tau)))
    y += np.random.default_rng(3).normal(0, 0.003, y.size)
    fit = nv.fit_fid(list(tau), list(y), n_components=2, p=1.24, seeds=[0.0, 0.532])
    assert fit["status"] == "converged"
    t2 = [c["T2_us"] for c in fit["components"]]
    assert t2[0] == pytest.approx(2.6, rel=0.1)
    assert t2[1] == pytest.approx(1.41, rel=0.1)


def test_zero_field_splitting_round_trip(consts):
    f = nv.FieldConfiguration(pi_x=-124000.0, pi_y=-94000.0)
    s = nv.zero_field_splitting(f, consts)
    assert 5.0 <= s <= 5.6
    px, py = nv.reconstruct_transverse_pi(s, np.arctan2(-94000.0, -124000.0), consts)
    assert px == pytest.approx(-124000.0, rel=1e-9)
    assert py == pytest.approx(-94000.0, rel=1e-9)


@pytest.mark.skipif("NVDRESSED_CLI" not in os.environ, reason="CLI binary not configured")
def test_cli_spectrum(tmp_path):
    exe = os.environ["NVDRESSED_CLI"]
    run = subprocess.run([exe, "spectrum", "--point", "B", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert run.returncode == 0, run.stderr
    lines = json.loads((tmp_path / "resonances.json").read_text())
    assert len(lines) == 3
    manifest = json.loads((tmp_path / "spectrum.manifest.json").read_text())
    assert manifest["command"] == "spectrum"
    bad = subprocess.run([exe, "spectrum", "--preset", "nowhere", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert bad.returncode == 1
