"""Exact and Monte Carlo volumes of polytopes inside their MUB span.

All volumes are intrinsic: t(N-1)-dimensional, measured with the
Hilbert-Schmidt-derived metric in which MUB vertices sit at unit distance
within a basis.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import factorial, gamma, pi, sqrt

import numpy as np

from .bloch import PSD_TOLERANCE, min_eigenvalues, outsphere_radius, reconstruct_deviations
from .errors import BadDimension, BadRegion
from .gcp import Gcp, gauge_from_deviations
from .sampling import DEFAULT_MAX_PROPOSALS, rejection_sample_gcp, uniform_in_span_ball
from .streams import CHUNK_SIZE, SeededStream

REGIONS = ("span_ball", "gcp")
PREDICATES = ("in_gcp", "is_psd", "in_gcp_and_psd")
MIN_SAMPLES = 1000
_REGION_STREAM = {"span_ball": 1, "gcp": 2}


def simplex_volume(dim: int) -> float:
    """Volume of the regular (dim-1)-simplex with unit edges."""
    if dim < 2:
        raise BadDimension(f"dimension must be >= 2, got {dim}")
    k = dim - 1
    return sqrt(dim) / (factorial(k) * 2 ** (k / 2))


def gcp_volume_exact(gcp: Gcp) -> float:
    """Free sum of t orthogonal simplices: prod(vol_i) * prod(k_i!) / (sum k_i)!."""
    N, t = gcp.dim, gcp.t
    return simplex_volume(N) ** t * factorial(N - 1) ** t / factorial(t * (N - 1))


def ball_volume(dimension: int, radius: float) -> float:
    return pi ** (dimension / 2) / gamma(dimension / 2 + 1) * radius**dimension


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    std_error: float
    n_samples: int
    seed: int
    region: str
    predicate: str
    hit_fraction: float
    region_volume: float

    def to_dict(self) -> dict:
        return asdict(self)


def _predicate_mask(d: np.ndarray, gcp: Gcp, predicate: str) -> np.ndarray:
    mask = np.ones(len(d), dtype=bool)
    if predicate in ("in_gcp", "in_gcp_and_psd"):
        mask &= gauge_from_deviations(d) <= 1.0
    if predicate in ("is_psd", "in_gcp_and_psd"):
        psd = np.empty(len(d), dtype=bool)
        for start in range(0, len(d), CHUNK_SIZE):
            block = reconstruct_deviations(d[start:start + CHUNK_SIZE], gcp.mubs)
            psd[start:start + CHUNK_SIZE] = min_eigenvalues(block) >= -PSD_TOLERANCE
        mask &= psd
    return mask


def region_volume(gcp: Gcp, region: str) -> float:
    if region == "span_ball":
        return ball_volume(gcp.intrinsic_dim, outsphere_radius(gcp.dim))
    if region == "gcp":
        return gcp_volume_exact(gcp)
    raise BadRegion(f"unknown region {region!r}; expected one of {REGIONS}")


def mc_volume(gcp: Gcp, region: str, predicate: str, n: int, seed: int,
              max_proposals: int = DEFAULT_MAX_PROPOSALS) -> VolumeEstimate:
    """Hit-and-miss volume of {x in region : predicate(x)}.

    ``span_ball`` is the ball about rho* of outsphere radius inside the span;
    it contains the polytope and every state in the span.
    """
    if region not in REGIONS:
        raise BadRegion(f"unknown region {region!r}; expected one of {REGIONS}")
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}; expected one of {PREDICATES}")
    if n < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {n}")
    stream = SeededStream(seed, _REGION_STREAM[region])
    if region == "span_ball":
        d = uniform_in_span_ball(gcp, outsphere_radius(gcp.dim), stream, size=n)
    else:
        d, _ = rejection_sample_gcp(gcp, stream, n, max_proposals)
    hits = int(_predicate_mask(d, gcp, predicate).sum())
    f = hits / n
    vol = region_volume(gcp, region)
    return VolumeEstimate(
        value=f * vol,
        std_error=sqrt(f * (1 - f) / n) * vol,
        n_samples=n,
        seed=seed,
        region=region,
        predicate=predicate,
        hit_fraction=f,
        region_volume=vol,
    )


def volume_ratio_report(gcp: Gcp, n: int, seed: int,
                        max_proposals: int = DEFAULT_MAX_PROPOSALS) -> dict:
    """Exact polytope volume against Monte Carlo volumes of the state body in the span.

    Both ratios are emitted: the polytope against the states in the span
    ball, and the state fraction of the polytope.
    """
    exact = gcp_volume_exact(gcp)
    psd_gcp = mc_volume(gcp, "gcp", "is_psd", n, seed, max_proposals)
    psd_ball = mc_volume(gcp, "span_ball", "is_psd", n, seed)
    gcp_ball = mc_volume(gcp, "span_ball", "in_gcp", n, seed)
    ratio = exact / psd_ball.value if psd_ball.value > 0 else float("inf")
    ratio_se = ratio * psd_ball.std_error / psd_ball.value if psd_ball.value > 0 else float("nan")
    return {
        "dim": gcp.dim,
        "t": gcp.t,
        "intrinsic_dim": gcp.intrinsic_dim,
        "n": n,
        "seed": seed,
        "vol_gcp_exact": exact,
        "vol_gcp_mc": gcp_ball.value,
        "vol_gcp_mc_std_error": gcp_ball.std_error,
        "vol_psd_in_gcp": psd_gcp.value,
        "vol_psd_in_gcp_std_error": psd_gcp.std_error,
        "psd_fraction_of_gcp": psd_gcp.hit_fraction,
        "psd_fraction_of_gcp_std_error": psd_gcp.std_error / exact,
        "vol_psd_in_span_ball": psd_ball.value,
        "vol_psd_in_span_ball_std_error": psd_ball.std_error,
        "ratio_gcp_to_ball_psd": ratio,
        "ratio_gcp_to_ball_psd_std_error": ratio_se,
    }
