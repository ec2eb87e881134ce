"""Compiled and interpreted kernels must agree."""
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from dualframes import _kernels
from dualframes._jit import USE_NUMBA, python_impl

needs_numba = pytest.mark.skipif(not USE_NUMBA, reason="numba unavailable or disabled")


@needs_numba
def test_jacobi_agrees():
    rng = np.random.default_rng(0)
    for n in (2, 5, 9):
        a = rng.standard_normal((n, n))
        a = a + a.T
        d1, v1, s1, ok1 = _kernels.jacobi_eigh(a, 1e-14, 100)
        d2, v2, s2, ok2 = python_impl(_kernels.jacobi_eigh)(a, 1e-14, 100)
        assert ok1 and ok2 and s1 == s2
        np.testing.assert_allclose(d1, d2, atol=1e-13)
        np.testing.assert_allclose(np.abs(v1), np.abs(v2), atol=1e-12)


@needs_numba
def test_hessenberg_qr_agree():
    rng = np.random.default_rng(1)
    for n in (3, 6, 12):
        a = rng.standard_normal((n, n))
        h1 = _kernels.hessenberg(_kernels.balance(a.copy()))
        h2 = python_impl(_kernels.hessenberg)(python_impl(_kernels.balance)(a.copy()))
        np.testing.assert_allclose(h1, h2, atol=1e-12)
        wr1, wi1, _, ok1 = _kernels.hqr(h1, 30 * n)
        wr2, wi2, _, ok2 = python_impl(_kernels.hqr)(h2, 30 * n)
        assert ok1 and ok2
        np.testing.assert_allclose(wr1, wr2, atol=1e-10)
        np.testing.assert_allclose(wi1, wi2, atol=1e-10)


def test_balance_is_exact_similarity():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((6, 6)) * np.logspace(-6, 6, 6)
    b = _kernels.balance(a.copy())
    np.testing.assert_allclose(np.sort_complex(np.linalg.eigvals(b)),
                               np.sort_complex(np.linalg.eigvals(a)), rtol=1e-8)
    np.testing.assert_allclose(np.trace(b), np.trace(a), rtol=1e-14)


def test_hessenberg_shape():
    rng = np.random.default_rng(3)
    h = _kernels.hessenberg(rng.standard_normal((7, 7)))
    assert np.all(np.tril(h, -2) == 0)


def test_pow2_scale():
    assert _kernels.pow2_scale(np.array([[3.0, -5.0]])) == 4.0
    assert _kernels.pow2_scale(np.zeros((2, 2))) == 0.0


def test_subset_enumeration_is_lexicographic():
    a = np.diag(np.arange(1.0, 6.0))
    radii, failed = _kernels.subset_spectral_radii(a, 2, 10, 30)
    assert failed == -1
    want = [max(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    np.testing.assert_array_equal(radii, want)


def test_degenerate_matrices_converge():
    for n in (5, 14, 15):
        m = np.ones((n, n))
        m[1, n // 2] = 0.0
        wr, wi, ok = _kernels.real_eigvals(m, 30)
        assert ok
        assert wr.sum() == pytest.approx(n, abs=1e-9)
    m = np.full((4, 4), 1e-276)
    m[0, 0] = 1.0
    wr, wi, ok = _kernels.real_eigvals(m, 30)
    assert ok and max(abs(wr)) == pytest.approx(1.0)


_SCRIPT = """
import json, numpy as np
from dualframes import _jit
from dualframes.erasure import measure_report
from dualframes.frame import canonical_dual, frame_from_graph
from dualframes.graph import cycle_graph
from dualframes.linalg import general_eigenvalues, sym_eig
rng = np.random.default_rng(7)
m = rng.standard_normal((8, 8))
out = {
    "jit": _jit.USE_NUMBA,
    "sym": sym_eig(m + m.T).values.tolist(),
    "gen": [[z.real, z.imag] for z in general_eigenvalues(m)],
    "report": measure_report(canonical_dual(frame_from_graph(cycle_graph(6)))).to_dict(),
}
print(json.dumps(out))
"""


def _run(no_jit):
    env = dict(os.environ)
    env.pop("DUALFRAMES_NO_JIT", None)
    if no_jit:
        env["DUALFRAMES_NO_JIT"] = "1"
    out = subprocess.run([sys.executable, "-c", _SCRIPT], env=env, check=True,
                         capture_output=True, text=True)
    return json.loads(out.stdout)


@needs_numba
def test_env_flag_selects_pure_path():
    fast, slow = _run(False), _run(True)
    assert fast["jit"] and not slow["jit"]
    np.testing.assert_allclose(fast["sym"], slow["sym"], atol=1e-12)
    np.testing.assert_allclose(fast["gen"], slow["gen"], atol=1e-10)
    assert fast["report"] == slow["report"]
