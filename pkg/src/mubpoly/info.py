"""Absolute-information and uncertainty functionals of outcome distributions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import deviations
from .errors import BadDistribution, BadExponent
from .mub import MubSet

NORMALIZATION_ATOL = 1e-9


def _validated(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise BadDistribution("need a 1-d probability vector with at least two outcomes")
    if (p < -NORMALIZATION_ATOL).any():
        raise BadDistribution("negative probability")
    s = p.sum()
    if abs(s - 1) > NORMALIZATION_ATOL:
        raise BadDistribution(f"probabilities sum to {s!r}")
    return np.clip(p, 0.0, None) / np.clip(p, 0.0, None).sum()


def information(p) -> float:
    """Normalised L1 distance of ``p`` from uniform: 0 for uniform, 1 for deterministic."""
    p = _validated(p)
    N = p.size
    return float(N / (2 * (N - 1)) * np.abs(p - 1 / N).sum())


def uncertainty(p) -> float:
    return 1.0 - information(p)


def alpha_normalization(dim: int, alpha: float) -> float:
    return 1.0 / (((dim - 1) / dim) ** alpha + (dim - 1) * (1 / dim) ** alpha)


def information_alpha(p, alpha: float = 1.0) -> float:
    """``sum |p_n - 1/N|^alpha``, rescaled so deterministic distributions score 1."""
    if alpha < 1:
        raise BadExponent(f"alpha must be >= 1, got {alpha}")
    p = _validated(p)
    N = p.size
    if alpha == 1:
        return information(p)
    return float(alpha_normalization(N, alpha) * (np.abs(p - 1 / N) ** alpha).sum())


def information_from_deviations(d, alpha: float = 1.0) -> np.ndarray:
    """Per-basis information for an array of deviations with shape (..., t, N)."""
    d = np.asarray(d, dtype=float)
    N = d.shape[-1]
    if alpha == 1:
        return N / (2 * (N - 1)) * np.abs(d).sum(axis=-1)
    return alpha_normalization(N, alpha) * (np.abs(d) ** alpha).sum(axis=-1)


def total_information_from_deviations(d) -> np.ndarray:
    return information_from_deviations(d).sum(axis=-1)


@dataclass(frozen=True)
class InfoProfile:
    per_basis: tuple[float, ...]
    total: float
    t: int
    alpha: float = 1.0


def per_basis_information(state, mubs: MubSet, alpha: float = 1.0) -> InfoProfile:
    if alpha < 1:
        raise BadExponent(f"alpha must be >= 1, got {alpha}")
    per = information_from_deviations(deviations(state, mubs), alpha)
    return InfoProfile(tuple(float(x) for x in per), float(per.sum()), mubs.t, alpha)


def total_information(state, mubs: MubSet) -> float:
    return float(total_information_from_deviations(deviations(state, mubs)))


def bz_information(state, mubs: MubSet) -> float:
    """Sum of squared deviations over every basis and outcome."""
    return float(np.sum(deviations(state, mubs) ** 2))


def bz_identity_gap(state, mubs: MubSet) -> float:
    """bz_information - (Tr rho^2 - 1/N); zero for complete MUB sets."""
    rho = np.asarray(state)
    purity = np.trace(rho @ rho).real
    return bz_information(rho, mubs) - (purity - 1 / mubs.dim)
