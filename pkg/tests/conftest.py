import numpy as np
import pytest
from scipy.optimize import linprog

from mubpoly.mub import generate_mub

SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def bloch_state(sx, sy, sz):
    """Qubit matrix (I + s.sigma) / 2 for a standard Bloch vector."""
    return (np.eye(2) + sx * SIGMA["x"] + sy * SIGMA["y"] + sz * SIGMA["z"]) / 2


_MUB_CACHE = {}


def mub(dim):
    if dim not in _MUB_CACHE:
        _MUB_CACHE[dim] = generate_mub(dim)
    return _MUB_CACHE[dim]


@pytest.fixture
def qubit_mubs():
    return mub(2)


@pytest.fixture
def qutrit_mubs():
    return mub(3)


def _real_vec(M):
    M = np.asarray(M)
    return np.concatenate([M.real.reshape(*M.shape[:-2], -1), M.imag.reshape(*M.shape[:-2], -1)], axis=-1)


def lp_gauge(state, projectors):
    """Independent membership oracle: min sum(a) s.t. sum a (P - I/N) = rho - I/N, a >= 0.

    Works in an orthonormal basis of the vertex span obtained by SVD of the
    vectorised matrices; returns (gauge, off-span residual in D units).
    """
    P = np.asarray(projectors)
    N = P.shape[-1]
    verts = P.reshape(-1, N, N) - np.eye(N) / N
    V = _real_vec(verts)
    _, s, vt = np.linalg.svd(V, full_matrices=False)
    B = vt[s > 1e-9 * s[0]]
    x = _real_vec(np.asarray(state) - np.eye(N) / N)
    coords = B @ x
    resid = np.linalg.norm(x - coords @ B) / np.sqrt(2)
    res = linprog(np.ones(len(V)), A_eq=(V @ B.T).T, b_eq=coords, bounds=(0, None), method="highs")
    if res.status != 0:
        return np.inf, resid
    return res.fun, resid


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args
    if rep.when == "call" or rep.failed:
        ok = rep.passed and _CRITERIA.get(key, True)
        _CRITERIA[key] = ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (number, text), ok in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")
