"""Generalized complementarity polytopes and the two ways of classifying points.

The polytope spanned by ``t`` MUBs is the free sum of ``t`` regular
simplices sitting in mutually orthogonal subspaces around rho*.  Its gauge
(Minkowski functional) has a closed form in deviation coordinates:

    gauge = sum_m N * max(0, -min_n d[m, n])

A point lies in the polytope iff it is in the MUB span and its gauge is at
most 1.  The information rule instead compares the total absolute
information over the ``t`` bases with 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bloch import (
    PSD_TOLERANCE,
    deviations,
    embed,
    hs_distance_sq,
    maximally_mixed,
    min_eigenvalues,
    residual_of,
    span_coordinates,
    state_to_json,
)
from .errors import OffSpan, OutsidePolytope, TooManyBases
from .info import information_from_deviations
from .mub import MubSet
from .streams import as_stream, chunks

BOUNDARY_TOLERANCE = 1e-9
REPORT_CHUNK = 4096


class Verdict(str, enum.Enum):
    INSIDE = "Inside"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True, eq=False)
class Gcp:
    """Polytope spanned by the first ``t`` bases of ``mubs``."""

    mubs: MubSet
    t: int

    @property
    def dim(self) -> int:
        return self.mubs.dim

    @property
    def projectors(self) -> np.ndarray:
        return self.mubs.projectors[: self.t]

    @property
    def bases(self) -> MubSet:
        return self.mubs.subset(range(self.t))

    @property
    def vertices(self) -> np.ndarray:
        N = self.dim
        return self.projectors.reshape(self.t * N, N, N)

    @property
    def intrinsic_dim(self) -> int:
        return self.t * (self.dim - 1)

    @property
    def ambient_dim(self) -> int:
        return self.dim**2 - 1


def build_gcp(mubs: MubSet, t: int | None = None) -> Gcp:
    t = mubs.t if t is None else t
    if t < 1:
        raise TooManyBases(f"t must be positive, got {t}")
    if t > mubs.t:
        raise TooManyBases(f"t={t} exceeds the {mubs.t} available bases")
    return Gcp(mubs, t)


def vertex_radii(gcp: Gcp) -> np.ndarray:
    """Distance of every vertex from rho*; equals the outsphere radius."""
    return np.sqrt(hs_distance_sq(gcp.vertices, maximally_mixed(gcp.dim)))


def gauge_per_basis(d) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    return d.shape[-1] * np.maximum(0.0, -d.min(axis=-1))


def gauge_from_deviations(d) -> np.ndarray:
    return gauge_per_basis(d).sum(axis=-1)


@dataclass(frozen=True)
class Gauge:
    value: float
    per_basis: tuple[float, ...]
    residual: float


def gauge(state, gcp: Gcp) -> Gauge:
    table = embed(state, gcp.bases)
    per = gauge_per_basis(table.d)
    return Gauge(float(per.sum()), tuple(float(x) for x in per), table.residual)


@dataclass(frozen=True)
class ClassificationReport:
    verdict: Verdict
    value: float
    margin: float
    residual: float
    tolerance: float
    min_eigenvalue: float

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "value": self.value,
            "margin": self.margin,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "min_eigenvalue": self.min_eigenvalue,
        }


def verdict_for(value, residual, tolerance: float = BOUNDARY_TOLERANCE):
    """Vectorised verdict rule shared by both classifiers; off-span points are Outside."""
    value = np.asarray(value, dtype=float)
    residual = np.asarray(residual, dtype=float)
    out = np.where(
        (residual > tolerance) | (value > 1 + tolerance),
        Verdict.OUTSIDE.value,
        np.where(np.abs(value - 1) <= tolerance, Verdict.BOUNDARY.value, Verdict.INSIDE.value),
    )
    return out


def _report(value: float, residual: float, tolerance: float, state) -> ClassificationReport:
    verdict = Verdict(str(verdict_for(value, residual, tolerance)))
    lam = float(min_eigenvalues(np.asarray(state)))
    return ClassificationReport(verdict, float(value), float(value - 1), float(residual), tolerance, lam)


def classify_membership(state, gcp: Gcp, tolerance: float = BOUNDARY_TOLERANCE) -> ClassificationReport:
    g = gauge(state, gcp)
    return _report(g.value, g.residual, tolerance, state)


def classify_information(state, gcp: Gcp, tolerance: float = BOUNDARY_TOLERANCE) -> ClassificationReport:
    table = embed(state, gcp.bases)
    total = float(information_from_deviations(table.d).sum())
    return _report(total, table.residual, tolerance, state)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Convex weights ``a[m, n]`` on the vertices and per-basis masses."""

    a: np.ndarray

    @property
    def basis_mass(self) -> np.ndarray:
        return self.a.sum(axis=-1)

    def point(self, gcp: Gcp) -> np.ndarray:
        return np.einsum("...mn,mnij->...ij", self.a, gcp.projectors)


def decompose(state, gcp: Gcp, tolerance: float = BOUNDARY_TOLERANCE) -> Decomposition:
    """Canonical convex weights: the slack 1 - gauge is shared equally between bases."""
    table = embed(state, gcp.bases)
    if table.residual > tolerance:
        raise OffSpan(f"point is {table.residual:.3g} away from the MUB span")
    per = gauge_per_basis(table.d)
    G = per.sum()
    if G > 1 + tolerance:
        raise OutsidePolytope(f"gauge {G:.12g} > 1")
    mass = per + (1 - G) / gcp.t
    a = table.d + mass[:, None] / gcp.dim
    # clip rounding noise at tolerance-level boundary points
    a = np.clip(a, 0.0, None)
    return Decomposition(a / a.sum())


SAMPLING_MODES = ("paper_facet", "single_vertex_mix")


def boundary_weights(gcp: Gcp, mode: str, rng: np.random.Generator, size: int) -> np.ndarray:
    """Vertex weights of boundary points, shape (size, t, N)."""
    t, N = gcp.t, gcp.dim
    if mode == "paper_facet":
        w = rng.dirichlet(np.ones(t * N), size=size).reshape(size, t, N)
        n_zero = rng.integers(1, N, size=(size, t))  # 1 .. N-1 excluded vertices per basis
        rank = np.argsort(rng.random((size, t, N)), axis=-1).argsort(axis=-1)
        w = np.where(rank < n_zero[..., None], 0.0, w)
        return w / w.sum(axis=(1, 2), keepdims=True)
    if mode == "single_vertex_mix":
        c = rng.dirichlet(np.ones(t), size=size)
        pick = rng.integers(0, N, size=(size, t))
        w = np.zeros((size, t, N))
        np.put_along_axis(w, pick[..., None], c[..., None], axis=-1)
        return w
    raise ValueError(f"unknown sampling mode {mode!r}; expected one of {SAMPLING_MODES}")


def sample_boundary_point(gcp: Gcp, mode: str, rng_seed) -> tuple[np.ndarray, Decomposition]:
    stream = as_stream(rng_seed)
    w = boundary_weights(gcp, mode, stream.generator(), 1)[0]
    dec = Decomposition(w)
    return dec.point(gcp), dec


def exact_vertex_mixture(weights, dim: int) -> tuple[Fraction, Fraction]:
    """(total information, gauge) of sum a[m][n] P[m, n] in exact rationals.

    Uses only the defining MUB relations: in basis m the outcome
    probabilities are a[m][n] + (1 - A_m)/N with A_m = sum_n a[m][n], so
    d[m][n] = a[m][n] - A_m / N.
    """
    N = Fraction(dim)
    info = Fraction(0)
    gauge_total = Fraction(0)
    for row in weights:
        row = [Fraction(x) for x in row]
        A = sum(row)
        d = [x - A / N for x in row]
        info += N / (2 * (N - 1)) * sum(abs(x) for x in d)
        gauge_total += N * max(Fraction(0), -min(d))
    return info, gauge_total


@dataclass(frozen=True)
class DiscrepancyReport:
    n_samples: int
    agree_fraction: float
    max_abs_info_minus_one_on_boundary: float
    mean_abs_info_minus_one_on_boundary: float
    witness: dict | None
    exact_witness: dict | None
    seed: int
    stream_id: int
    dim: int
    t: int
    tolerance: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _exact_witness(gcp: Gcp, tolerance: float) -> dict | None:
    """Equal mixture of two vertices of the first basis; a boundary point for N >= 3."""
    N = gcp.dim
    if N < 3:
        return None
    weights = [[Fraction(0)] * N for _ in range(gcp.t)]
    weights[0][0] = weights[0][1] = Fraction(1, 2)
    info_q, gauge_q = exact_vertex_mixture(weights, N)
    dec = Decomposition(np.array([[float(x) for x in row] for row in weights]))
    rho = dec.point(gcp)
    return {
        "description": "(P[0,0] + P[0,1]) / 2",
        "info_exact": str(info_q),
        "gauge_exact": str(gauge_q),
        "info": classify_information(rho, gcp, tolerance).value,
        "gauge": classify_membership(rho, gcp, tolerance).value,
        "state": state_to_json(rho),
    }


def theorem_report(gcp: Gcp, n_samples: int, rng_seed, tolerance: float = BOUNDARY_TOLERANCE) -> DiscrepancyReport:
    """Sample facet points and compare the gauge and information verdicts on them."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    stream = as_stream(rng_seed)
    agree = 0
    boundary_errs = []
    best = None
    offset = 0
    for j, size in chunks(n_samples, REPORT_CHUNK):
        w = boundary_weights(gcp, "paper_facet", stream.generator(j), size)
        rho = np.einsum("smn,mnij->sij", w, gcp.projectors)
        d = deviations(rho, gcp.bases)
        res = residual_of(rho, gcp.bases)
        g = gauge_from_deviations(d)
        info = information_from_deviations(d).sum(axis=-1)
        vg = verdict_for(g, res, tolerance)
        vi = verdict_for(info, res, tolerance)
        agree += int((vg == vi).sum())
        on_boundary = vg == Verdict.BOUNDARY.value
        errs = np.abs(info - 1)[on_boundary]
        boundary_errs.append(errs)
        if on_boundary.any():
            idx = np.flatnonzero(on_boundary)
            k = idx[np.argmin(info[idx])]
            if best is None or info[k] < best["info"]:
                best = {
                    "sample_index": offset + int(k),
                    "chunk": j,
                    "info": float(info[k]),
                    "gauge": float(g[k]),
                    "weights": w[k].tolist(),
                    "state": state_to_json(rho[k]),
                }
        offset += size
    errs = np.concatenate(boundary_errs)
    return DiscrepancyReport(
        n_samples=n_samples,
        agree_fraction=agree / n_samples,
        max_abs_info_minus_one_on_boundary=float(errs.max()) if errs.size else 0.0,
        mean_abs_info_minus_one_on_boundary=float(errs.mean()) if errs.size else 0.0,
        witness=best,
        exact_witness=_exact_witness(gcp, tolerance),
        seed=stream.seed,
        stream_id=stream.stream_id,
        dim=gcp.dim,
        t=gcp.t,
        tolerance=tolerance,
    )


def vertex_coordinates(gcp: Gcp) -> np.ndarray:
    """Cartesian coordinates of the vertices inside the span, shape (t * N, t * (N - 1))."""
    N, t = gcp.dim, gcp.t
    eye = np.eye(t * N).reshape(t * N, t, N)
    d = eye - eye.sum(axis=-1, keepdims=True) / N
    return span_coordinates(d)


def edges(gcp: Gcp) -> list[tuple[int, int]]:
    """Edges of the free sum: vertices of different simplices are always joined;
    vertices of one simplex only when that edge is a proper face (N >= 3) or t = 1."""
    N, t = gcp.dim, gcp.t
    out = []
    for i in range(t * N):
        for j in range(i + 1, t * N):
            if i // N != j // N or N >= 3 or t == 1:
                out.append((i, j))
    return out


def psd_mask(states, tolerance: float = PSD_TOLERANCE) -> np.ndarray:
    return min_eigenvalues(states) >= -tolerance
