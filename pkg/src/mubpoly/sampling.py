"""Seeded generators for states and for points of a polytope or its span."""

from __future__ import annotations

from math import factorial

import numpy as np

from .bloch import DeviationTable, deviations_from_span
from .errors import BadDimension, BadRadius, RejectionBudgetExceeded
from .gcp import Gcp, gauge_from_deviations
from .streams import CHUNK_SIZE, SeededStream, as_stream, chunks

__all__ = [
    "SeededStream",
    "haar_pure",
    "hs_mixed",
    "propose_simplex_product",
    "rejection_sample_gcp",
    "uniform_in_gcp",
    "uniform_in_span_ball",
]

DEFAULT_MAX_PROPOSALS = 10**7


def _check_dim(dim: int) -> None:
    if dim < 2:
        raise BadDimension(f"dimension must be >= 2, got {dim}")


def _gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_pure(dim: int, stream, size: int | None = None) -> np.ndarray:
    """Projector(s) onto Haar-random unit vectors; shape (dim, dim) or (size, dim, dim)."""
    _check_dim(dim)
    stream = as_stream(stream)
    n = 1 if size is None else size
    out = np.empty((n, dim, dim), dtype=complex)
    for j, m in chunks(n):
        z = _gaussian(stream.generator(j), (m, dim))
        z /= np.linalg.norm(z, axis=-1, keepdims=True)
        start = j * CHUNK_SIZE
        out[start:start + m] = np.einsum("si,sj->sij", z, z.conj())
    return out[0] if size is None else out


def hs_mixed(dim: int, stream, size: int | None = None) -> np.ndarray:
    """Hilbert-Schmidt random density matrices G G^dag / Tr(G G^dag)."""
    _check_dim(dim)
    stream = as_stream(stream)
    n = 1 if size is None else size
    out = np.empty((n, dim, dim), dtype=complex)
    for j, m in chunks(n):
        G = _gaussian(stream.generator(j), (m, dim, dim))
        rho = G @ G.conj().transpose(0, 2, 1)
        rho /= np.trace(rho, axis1=1, axis2=2).real[:, None, None]
        start = j * CHUNK_SIZE
        out[start:start + m] = rho
    return out[0] if size is None else out


def propose_simplex_product(gcp: Gcp, rng: np.random.Generator, count: int) -> np.ndarray:
    """Uniform points of the product of the per-basis simplices, as deviations (count, t, N).

    Each basis contributes d = a - 1/N with a uniform on the probability
    simplex; this is the box [-1/N, (N-1)/N]^N cut by the row-sum-zero plane.
    """
    t, N = gcp.t, gcp.dim
    a = rng.dirichlet(np.ones(N), size=(count, t))
    return a - 1.0 / N


def acceptance_rate(gcp: Gcp) -> float:
    """Volume of the polytope relative to the product of its simplices."""
    t, N = gcp.t, gcp.dim
    return factorial(N - 1) ** t / factorial(t * (N - 1))


def rejection_sample_gcp(gcp: Gcp, stream, size: int,
                         max_proposals: int = DEFAULT_MAX_PROPOSALS) -> tuple[np.ndarray, int]:
    """Hit-and-miss sampling of the polytope; returns (deviations, proposals used)."""
    stream = as_stream(stream)
    rate = acceptance_rate(gcp)
    batch = int(min(max(1024, 1.2 * size / rate), 1 << 18))
    kept, have, used, r = [], 0, 0, 0
    while have < size:
        if used + batch > max_proposals:
            batch = max_proposals - used
            if batch <= 0:
                raise RejectionBudgetExceeded(
                    f"{used} proposals produced {have} of {size} samples (acceptance ~{rate:.3g})")
        d = propose_simplex_product(gcp, stream.generator(r), batch)
        used += batch
        r += 1
        ok = d[gauge_from_deviations(d) <= 1.0]
        kept.append(ok)
        have += len(ok)
    return np.concatenate(kept)[:size], used


def uniform_in_gcp(gcp: Gcp, stream, size: int | None = None,
                   max_proposals: int = DEFAULT_MAX_PROPOSALS):
    """Uniform point(s) of the polytope: a DeviationTable, or a (size, t, N) array."""
    d, _ = rejection_sample_gcp(gcp, stream, 1 if size is None else size, max_proposals)
    if size is None:
        return DeviationTable(gcp.dim, d[0], 0.0)
    return d


def uniform_in_span_ball(gcp: Gcp, radius: float, stream, size: int | None = None):
    """Uniform point(s) of the ball of the given radius about rho* inside the MUB span."""
    if not radius > 0:
        raise BadRadius(f"radius must be positive, got {radius}")
    stream = as_stream(stream)
    D = gcp.intrinsic_dim
    n = 1 if size is None else size
    out = np.empty((n, gcp.t, gcp.dim))
    for j, m in chunks(n):
        rng = stream.generator(j)
        u = rng.standard_normal((m, D))
        u /= np.linalg.norm(u, axis=-1, keepdims=True)
        u *= radius * rng.random((m, 1)) ** (1.0 / D)
        start = j * CHUNK_SIZE
        out[start:start + m] = deviations_from_span(u, gcp.t, gcp.dim)
    if size is None:
        return DeviationTable(gcp.dim, out[0], 0.0)
    return out
