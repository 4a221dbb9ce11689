"""Metric geometry of unit-trace Hermitian matrices centred at the maximally mixed state.

Distances use D^2(a, b) = Tr(a - b)^2 / 2.  Points are described relative to
a MUB set through deviation coordinates d[m, n] = Tr(rho P[m, n]) - 1/N; the
squared length of the component inside basis m's subspace is sum_n d[m, n]^2 / 2.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadDimension, NonZeroRowSum, ShapeMismatch
from .mub import MubSet, _decode_complex, _encode_complex

HERMITIAN_ATOL = 1e-12
PSD_TOLERANCE = 1e-10


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def check_state(matrix, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate a Hermitian unit-trace matrix and return it as a complex array.

    Positivity is not required: points on the outsphere that are not states
    are legitimate inputs everywhere except :func:`is_density_matrix`.
    """
    M = np.asarray(matrix, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {M.shape}")
    if np.abs(M - M.conj().T).max() > atol:
        raise ShapeMismatch("matrix is not Hermitian")
    if abs(np.trace(M) - 1) > atol:
        raise ShapeMismatch(f"trace {np.trace(M).real:.3g} != 1")
    return M


def _same_shape(a, b):
    a, b = np.asarray(a), np.asarray(b)
    if a.shape[-2:] != b.shape[-2:]:
        raise ShapeMismatch(f"shapes {a.shape} and {b.shape} differ")
    return a, b


def hs_distance_sq(a, b) -> float:
    a, b = _same_shape(a, b)
    diff = a - b
    return 0.5 * np.einsum("...ij,...ji->...", diff, diff).real


def hs_distance(a, b) -> float:
    """D(a, b) = sqrt(Tr(a - b)^2 / 2)."""
    return np.sqrt(np.maximum(hs_distance_sq(a, b), 0.0))


def scalar_product(a, b) -> float:
    """(Tr(a b) - 1/N) / 2, the inner product of a - rho* and b - rho*."""
    a, b = _same_shape(a, b)
    N = a.shape[-1]
    return 0.5 * (np.einsum("...ij,...ji->...", a, b).real - 1.0 / N)


def outsphere_radius(dim: int) -> float:
    if dim < 2:
        raise BadDimension(f"dimension must be >= 2, got {dim}")
    return float(np.sqrt((dim - 1) / (2 * dim)))


@dataclass(frozen=True, eq=False)
class DeviationTable:
    """Coordinates of a point relative to a MUB set.

    ``d[m, n] = p[m, n] - 1/N`` and ``residual`` is the length of the part of
    ``rho - rho*`` orthogonal to every basis subspace.
    """

    dim: int
    d: np.ndarray
    residual: float = 0.0

    @property
    def t(self) -> int:
        return self.d.shape[0]

    @property
    def probabilities(self) -> np.ndarray:
        return self.d + 1.0 / self.dim

    def span_norm_sq(self) -> float:
        return float(0.5 * np.sum(self.d**2))


def probabilities(state, mubs: MubSet) -> np.ndarray:
    """p[..., m, n] = Tr(rho P[m, n]); accepts a single matrix or a stack."""
    state = np.asarray(state)
    if state.shape[-2:] != (mubs.dim, mubs.dim):
        raise ShapeMismatch(f"state of shape {state.shape} vs MUB dimension {mubs.dim}")
    return np.einsum("...ij,mnji->...mn", state, mubs.projectors).real


def deviations(state, mubs: MubSet) -> np.ndarray:
    return probabilities(state, mubs) - 1.0 / mubs.dim


def embed(state, mubs: MubSet) -> DeviationTable:
    state = np.asarray(state, dtype=complex)
    N = mubs.dim
    d = deviations(state, mubs)
    return DeviationTable(N, d, float(_off_span_norm(state, d, mubs)))


def _off_span_norm(state, d, mubs: MubSet):
    # Same quantity as sqrt(D^2(rho, rho*) - sum d^2 / 2), but measured directly
    # against the in-span projection so complete sets give ~1e-16 rather than
    # the sqrt(eps) floor of the subtraction.
    return hs_distance(state, reconstruct_deviations(d, mubs))


def residual_of(state, mubs: MubSet) -> np.ndarray:
    """Vectorised off-span residual for a stack of matrices."""
    return _off_span_norm(state, deviations(state, mubs), mubs)


def reconstruct_deviations(d, mubs: MubSet) -> np.ndarray:
    """rho* + sum d[m, n] P[m, n] for a (..., t, N) array of row-sum-zero deviations."""
    d = np.asarray(d, dtype=float)
    t = d.shape[-2]
    if d.shape[-1] != mubs.dim or t > mubs.t:
        raise ShapeMismatch(f"deviation array {d.shape} does not fit {mubs.t} bases of dimension {mubs.dim}")
    return maximally_mixed(mubs.dim) + np.einsum("...mn,mnij->...ij", d, mubs.projectors[:t])


def reconstruct(table: DeviationTable, mubs: MubSet, atol: float = 1e-12) -> np.ndarray:
    """Inverse of :func:`embed` on the span of the first ``table.t`` bases."""
    if table.dim != mubs.dim:
        raise ShapeMismatch(f"table dimension {table.dim} vs MUB dimension {mubs.dim}")
    if table.t > mubs.t:
        raise ShapeMismatch(f"table has {table.t} rows but the set has {mubs.t} bases")
    sums = np.abs(table.d.sum(axis=1))
    if sums.max() > atol:
        raise NonZeroRowSum(f"row sums up to {sums.max():.3g}")
    return reconstruct_deviations(table.d, mubs)


def is_density_matrix(state, tolerance: float = PSD_TOLERANCE) -> tuple[bool, float]:
    """(smallest eigenvalue >= -tolerance, smallest eigenvalue)."""
    lam = float(np.linalg.eigvalsh(np.asarray(state))[0])
    return lam >= -tolerance, lam


def min_eigenvalues(states) -> np.ndarray:
    return np.linalg.eigvalsh(np.asarray(states))[..., 0]


def _helmert_raw(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalised Helmert columns and their squared norms j(j+1)."""
    raw = np.zeros((dim, dim - 1))
    for j in range(1, dim):
        raw[:j, j - 1] = 1.0
        raw[j, j - 1] = -j
    j = np.arange(1, dim)
    return raw, (j * (j + 1)).astype(float)


def helmert_frame(dim: int) -> np.ndarray:
    """Orthonormal basis of the sum-zero hyperplane of R^dim, shape (dim, dim - 1)."""
    raw, norm_sq = _helmert_raw(dim)
    return raw / np.sqrt(norm_sq)


def span_coordinates(d) -> np.ndarray:
    """Cartesian coordinates (length matches D) of deviations, shape (..., t * (N - 1))."""
    d = np.asarray(d, dtype=float)
    raw, norm_sq = _helmert_raw(d.shape[-1])
    # one sqrt per column keeps qubit coordinates exact
    u = d @ (raw / np.sqrt(2 * norm_sq))
    return u.reshape(*u.shape[:-2], -1)


def deviations_from_span(u, t: int, dim: int) -> np.ndarray:
    """Inverse of :func:`span_coordinates`."""
    u = np.asarray(u, dtype=float).reshape(*np.shape(u)[:-1], t, dim - 1)
    raw, norm_sq = _helmert_raw(dim)
    return u @ (2 * raw / np.sqrt(2 * norm_sq)).T


def state_to_json(matrix) -> dict:
    M = np.asarray(matrix)
    return {"dim": int(M.shape[0]), "matrix": _encode_complex(M)}


def state_from_json(doc: dict, atol: float = 1e-9) -> np.ndarray:
    try:
        dim = int(doc["dim"])
        M = _decode_complex(doc["matrix"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeMismatch(f"malformed state document: {exc}") from exc
    if M.shape != (dim, dim):
        raise ShapeMismatch(f"matrix of shape {M.shape} does not match dim={dim}")
    return check_state(M, atol)


def save_state(matrix, path) -> None:
    Path(path).write_text(json.dumps(state_to_json(matrix)))


def load_state(path) -> np.ndarray:
    return state_from_json(json.loads(Path(path).read_text()))


def deviation_table_to_csv(table: DeviationTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["basis", "outcome", "deviation"])
    for m, row in enumerate(table.d):
        for n, value in enumerate(row):
            w.writerow([m, n, repr(float(value))])
    w.writerow(["residual", "", repr(float(table.residual))])
    return buf.getvalue()


def deviation_table_from_csv(text: str) -> DeviationTable:
    rows = list(csv.reader(io.StringIO(text)))
    if rows[0] != ["basis", "outcome", "deviation"]:
        raise ShapeMismatch("unexpected deviation CSV header")
    residual = 0.0
    cells = {}
    for basis, outcome, value in rows[1:]:
        if basis == "residual":
            residual = float(value)
        else:
            cells[int(basis), int(outcome)] = float(value)
    t = 1 + max(m for m, _ in cells)
    N = 1 + max(n for _, n in cells)
    d = np.zeros((t, N))
    for (m, n), value in cells.items():
        d[m, n] = value
    return DeviationTable(N, d, residual)
