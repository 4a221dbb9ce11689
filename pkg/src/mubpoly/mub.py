"""Mutually unbiased bases: construction, verification and file I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path

import numpy as np

from .errors import EvenCharacteristic, ShapeMismatch, UnsupportedDimension
from .fields import FiniteField, build_field, is_prime

DEFAULT_TOLERANCE = 1e-10

# Generators of maximal commuting Pauli classes, one tuple per basis.  The
# common eigenprojectors of each tuple form one basis; outcome n has sign
# (-1)^bit_i(n) on generator i (bit 0 = first generator).
PAULI_TABLES: dict[int, list[tuple[str, ...]]] = {
    1: [("X",), ("Y",), ("Z",)],
    2: [
        ("XI", "IX"),
        ("XZ", "ZY"),
        ("YI", "IY"),
        ("YZ", "ZX"),
        ("ZI", "IZ"),
    ],
    3: [
        ("XII", "IXI", "IIX"),
        ("XIZ", "IYI", "ZIX"),
        ("XZI", "ZYI", "IIY"),
        ("XZZ", "ZXI", "ZIY"),
        ("YII", "IXZ", "IZY"),
        ("YIZ", "IYZ", "ZZY"),
        ("YZI", "ZYZ", "IZX"),
        ("YZZ", "ZXZ", "ZZX"),
        ("ZII", "IZI", "IIZ"),
    ],
}

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class MubVerificationReport:
    max_purity_error: float
    max_orthogonality_error: float
    max_unbiasedness_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.max_purity_error, self.max_orthogonality_error,
                   self.max_unbiasedness_error) <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "max_purity_error": self.max_purity_error,
            "max_orthogonality_error": self.max_orthogonality_error,
            "max_unbiasedness_error": self.max_unbiasedness_error,
            "pass": self.passed,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True, eq=False)
class MubSet:
    """An ordered list of ``t`` orthonormal bases in dimension ``dim``.

    ``projectors`` has shape ``(t, dim, dim, dim)``: ``projectors[m, n]`` is
    the rank-one projector onto outcome ``n`` of basis ``m``.
    """

    dim: int
    projectors: np.ndarray
    construction_tag: str = "user-supplied"
    report: MubVerificationReport | None = field(default=None, compare=False)

    def __post_init__(self):
        P = np.asarray(self.projectors, dtype=complex)
        if P.ndim != 4 or P.shape[1:] != (self.dim, self.dim, self.dim):
            raise ShapeMismatch(f"projector array of shape {P.shape} does not match dim={self.dim}")
        if not 1 <= P.shape[0] <= self.dim + 1:
            raise ShapeMismatch(f"{P.shape[0]} bases given; need 1 <= t <= {self.dim + 1}")
        P.setflags(write=False)
        object.__setattr__(self, "projectors", P)

    @property
    def t(self) -> int:
        return self.projectors.shape[0]

    def __len__(self) -> int:
        return self.t

    def subset(self, indices) -> MubSet:
        """A new set made of the bases at ``indices`` (in the given order)."""
        idx = list(indices)
        return MubSet(self.dim, self.projectors[idx], self.construction_tag)

    def vectors(self) -> np.ndarray:
        """Unit vectors spanning each projector, shape ``(t, dim, dim)``; phases are arbitrary."""
        P = self.projectors
        col = np.argmax(np.linalg.norm(P, axis=-2), axis=-1)
        v = np.take_along_axis(P, col[..., None, None], axis=-1)[..., 0]
        return v / np.linalg.norm(v, axis=-1, keepdims=True)


def projectors_from_vectors(bases) -> np.ndarray:
    """``bases[m][n]`` is a vector; returns normalized outer products."""
    V = np.asarray(bases, dtype=complex)
    if V.ndim != 3 or V.shape[1] != V.shape[2]:
        raise ShapeMismatch(f"expected (t, N, N) vector array, got {V.shape}")
    V = V / np.linalg.norm(V, axis=-1, keepdims=True)
    return np.einsum("mni,mnj->mnij", V, V.conj())


def wootters_fields_mub(field: FiniteField) -> MubSet:
    """Complete MUB set for odd prime-power N = p^k.

    Basis 0 is the computational basis.  Basis ``1 + a`` (a a field element)
    has vectors v_{a,b}(x) = exp(2 pi i tr(a x^2 + b x) / p) / sqrt(N).
    """
    p, N = field.p, field.order
    if p == 2:
        raise EvenCharacteristic("the quadratic-phase construction needs odd characteristic")
    tr_table = np.array([field.trace(x) for x in field.elements])
    sq = [field.mul(x, x) for x in field.elements]
    bases = [np.eye(N, dtype=complex)]
    for a in field.elements:
        basis = np.empty((N, N), dtype=complex)
        for b in field.elements:
            phase = [tr_table[field.add(field.mul(a, sq[x]), field.mul(b, x))] for x in field.elements]
            basis[b] = np.exp(2j * np.pi * np.array(phase) / p) / np.sqrt(N)
        bases.append(basis)
    return MubSet(N, projectors_from_vectors(bases), "wootters-fields")


def _pauli(label: str) -> np.ndarray:
    return reduce(np.kron, (_PAULI[c] for c in label))


def pauli_tabulated_mub(k: int) -> MubSet:
    """Complete MUB set for N = 2^k, k in {1, 2, 3}, from ``PAULI_TABLES``."""
    if k not in PAULI_TABLES:
        raise UnsupportedDimension(f"no tabulated MUB set for N = 2^{k}")
    N = 2**k
    eye = np.eye(N, dtype=complex)
    out = np.empty((N + 1, N, N, N), dtype=complex)
    for m, gens in enumerate(PAULI_TABLES[k]):
        ops = [_pauli(g) for g in gens]
        for n in range(N):
            proj = eye
            for i, op in enumerate(ops):
                sign = -1 if (n >> i) & 1 else 1
                proj = proj @ (eye + sign * op) / 2
            out[m, n] = proj
    return MubSet(N, out, "pauli-tabulated")


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n = p^k, or None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if n % p == 0:
            if not is_prime(p):
                return None
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (p, k) if n == 1 else None
    return None


def supported_dimensions() -> list[int]:
    return [n for n in range(2, 65) if _construction_for(n) is not None]


def _construction_for(n: int):
    pk = prime_power(n)
    if pk is None:
        return None
    p, k = pk
    if p == 2:
        return (lambda: pauli_tabulated_mub(k)) if k in PAULI_TABLES else None
    try:
        fld = build_field(p, k)
    except Exception:
        return None
    return lambda: wootters_fields_mub(fld)


def generate_mub(dim: int) -> MubSet:
    """Complete MUB set for any supported ``dim``, verified at the default tolerance."""
    make = _construction_for(dim)
    if make is None:
        raise UnsupportedDimension(f"unsupported dimension {dim}")
    mubs = make()
    report = verify_mub(mubs)
    return MubSet(mubs.dim, mubs.projectors, mubs.construction_tag, report)


def verify_mub(mubs: MubSet, tolerance: float = DEFAULT_TOLERANCE) -> MubVerificationReport:
    """Largest violations of Tr P^2 = 1, Tr P P' = 0 (same basis) and Tr P P' = 1/N (across bases)."""
    P = mubs.projectors
    N, t = mubs.dim, mubs.t
    flat = P.reshape(t * N, N * N)
    # projectors are Hermitian, so Tr(A B) = sum(conj(A) * B)
    gram = (flat.conj() @ flat.T).real
    basis_of = np.repeat(np.arange(t), N)
    same_basis = basis_of[:, None] == basis_of[None, :]
    diag = np.eye(t * N, dtype=bool)
    purity = np.abs(np.diag(gram) - 1).max()
    off = same_basis & ~diag
    ortho = np.abs(gram[off]).max() if off.any() else 0.0
    cross = ~same_basis
    unbiased = np.abs(gram[cross] - 1 / N).max() if cross.any() else 0.0
    return MubVerificationReport(float(purity), float(ortho), float(unbiased), tolerance)


def max_overlap_error(mubs: MubSet) -> float:
    """max | |<a|b>|^2 - 1/N | over vector pairs from distinct bases."""
    V = mubs.vectors()
    N, t = mubs.dim, mubs.t
    worst = 0.0
    for m in range(t):
        for m2 in range(m + 1, t):
            ov = np.abs(V[m].conj() @ V[m2].T) ** 2
            worst = max(worst, float(np.abs(ov - 1 / N).max()))
    return worst


def _encode_complex(arr) -> list:
    arr = np.asarray(arr)
    if arr.ndim == 0:
        return [float(arr.real), float(arr.imag)]
    return [_encode_complex(x) for x in arr]


def _decode_complex(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1] != 2:
        raise ShapeMismatch("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def mub_to_json(mubs: MubSet) -> dict:
    return {
        "dim": mubs.dim,
        "bases": _encode_complex(mubs.vectors()),
        "construction_tag": mubs.construction_tag,
    }


def mub_from_json(doc: dict, tolerance: float = DEFAULT_TOLERANCE) -> MubSet:
    """Parse the MUB file format; vectors are normalized and the set is verified."""
    try:
        dim = int(doc["dim"])
        vectors = _decode_complex(doc["bases"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeMismatch(f"malformed MUB document: {exc}") from exc
    if vectors.ndim != 3 or vectors.shape[1:] != (dim, dim):
        raise ShapeMismatch(f"bases of shape {vectors.shape[:-1] if vectors.ndim else ()} do not match dim={dim}")
    tag = doc.get("construction_tag", "user-supplied")
    mubs = MubSet(dim, projectors_from_vectors(vectors), tag)
    return MubSet(dim, mubs.projectors, tag, verify_mub(mubs, tolerance))


def save_mub(mubs: MubSet, path) -> None:
    Path(path).write_text(json.dumps(mub_to_json(mubs)))


def load_mub(path, tolerance: float = DEFAULT_TOLERANCE) -> MubSet:
    return mub_from_json(json.loads(Path(path).read_text()), tolerance)
