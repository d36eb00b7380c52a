import os
import subprocess
import sys

import numpy as np
import pytest

from ellipsurf import _kernels


needs_numba = pytest.mark.skipif(not _kernels.NUMBA_AVAILABLE, reason="numba missing")


@pytest.fixture
def batch():
    gen = np.random.Generator(np.random.Philox(key=np.array([11, 0], dtype=np.uint64)))
    x = gen.standard_normal((5000, 7))
    q2 = gen.uniform(0.1, 4.0, size=7)
    return x, q2


@needs_numba
def test_sqrt_qform_variants_agree(batch):
    x, q2 = batch
    a = _kernels.row_sqrt_qform_numpy(x, q2)
    b = _kernels.row_sqrt_qform_numba(x, q2)
    np.testing.assert_allclose(a, b, rtol=1e-12)


@needs_numba
def test_row_norm_variants_agree(batch):
    x, _ = batch
    np.testing.assert_allclose(
        _kernels.row_norm_numpy(x), _kernels.row_norm_numba(x), rtol=1e-12)


@needs_numba
@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 3.0])
def test_row_pnorm_variants_agree(batch, p):
    x, _ = batch
    np.testing.assert_allclose(
        _kernels.row_pnorm_numpy(x, p), _kernels.row_pnorm_numba(x, p), rtol=1e-12)


@needs_numba
def test_sum_log1p_variants_agree(batch):
    _, q2 = batch
    for t in (1e-6, 0.5, 7.0, 1e8):
        a = _kernels.sum_log1p_numpy(q2, t)
        b = _kernels.sum_log1p_numba(q2, t)
        assert abs(a - b) <= 1e-13 * abs(a)


def test_active_kernels_are_deterministic(batch):
    x, q2 = batch
    a = _kernels.row_sqrt_qform(x, q2)
    b = _kernels.row_sqrt_qform(x.copy(), q2.copy())
    assert a.tobytes() == b.tobytes()


def test_no_jit_env_flag_selects_numpy_path():
    code = (
        "import ellipsurf\n"
        "assert not ellipsurf.JIT_ENABLED\n"
        "e = ellipsurf.Ellipsoid([1.0, 2.0])\n"
        "r = ellipsurf.iso_ratio_quad(e)\n"
        "assert abs(r.value - 1.5419644251900493) < 1e-9\n"
        "m = ellipsurf.iso_ratio_mc(e, ellipsurf.McConfig(samples=20000, seed=3))\n"
        "assert abs(m.value - r.value) < 4 * m.abs_error\n"
        "print('fallback-ok')\n"
    )
    env = dict(os.environ, ELLIPSURF_NO_JIT="1")
    proc = subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert "fallback-ok" in proc.stdout


def test_backend_threads_env(monkeypatch):
    monkeypatch.setenv("ELLIPSURF_THREADS", "3")
    assert _kernels.backend_threads() == 3
    monkeypatch.setenv("ELLIPSURF_THREADS", "0")
    assert _kernels.backend_threads() >= 1
    monkeypatch.delenv("ELLIPSURF_THREADS")
    assert _kernels.backend_threads() >= 1
    monkeypatch.setenv("ELLIPSURF_THREADS", "junk")
    with pytest.raises(ValueError):
        _kernels.backend_threads()
