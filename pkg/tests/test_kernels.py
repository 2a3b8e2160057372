import json
import os
import subprocess
import sys

import numpy as np

from xilab.kernels import (BACKEND, _fourier_eval_numpy, _residuals_numpy,
                           fourier_eval, master_cost, master_residuals)


def test_fourier_paths_agree():
    rng = np.random.default_rng(0)
    xs = np.sort(rng.uniform(-3, 3, 500))
    env = np.exp(-(xs ** 4)) * rng.uniform(0.5, 1.5, 500)
    zs = np.linspace(0, 20, 37)
    a = fourier_eval(xs, env, zs)          # active backend
    b = _fourier_eval_numpy(xs, env, zs)   # reference path
    assert np.max(np.abs(a - b)) < 1e-12


def test_residual_paths_agree():
    rng = np.random.default_rng(1)
    N = 5
    p = rng.uniform(-np.pi, np.pi, N)
    a = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    a = (a + a.conj().T) / 2
    b = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    b = (b + b.conj().T) / 2
    vp = np.array([0.3, -1.2, 0.7, 0.05], dtype=complex)
    eta = np.zeros((N, N), dtype=complex)
    E1, F1 = master_residuals(p, a, b, vp, 0.21, eta, eta)
    E2, F2 = _residuals_numpy(p, a, b, vp, 0.21, eta, eta)
    assert np.max(np.abs(E1 - E2)) < 1e-12
    assert np.max(np.abs(F1 - F2)) < 1e-12
    assert abs(master_cost(E1, F1) - master_cost(E2, F2)) < 1e-10


def test_numpy_fallback_selected_by_env_flag():
    code = (
        "import json, numpy as np\n"
        "from xilab.kernels import BACKEND, fourier_eval\n"
        "xs = np.linspace(-2, 2, 64)\n"
        "env = np.exp(-xs**2)\n"
        "out = fourier_eval(xs, env, np.array([0.0, 1.5]))\n"
        "print(json.dumps({'backend': BACKEND, 're0': out[0].real, 're1': out[1].real}))\n"
    )
    env = dict(os.environ, XI_LAB_NO_NUMBA="1")
    res = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env, check=True)
    doc = json.loads(res.stdout)
    assert doc["backend"] == "numpy"
    here = fourier_eval(np.linspace(-2, 2, 64),
                        np.exp(-np.linspace(-2, 2, 64) ** 2),
                        np.array([0.0, 1.5]))
    assert abs(doc["re0"] - here[0].real) < 1e-12
    assert abs(doc["re1"] - here[1].real) < 1e-12


def test_active_backend_is_numba_by_default():
    if os.environ.get("XI_LAB_NO_NUMBA", "").strip() in ("1", "true", "yes"):
        assert BACKEND == "numpy"
    else:
        assert BACKEND == "numba"
