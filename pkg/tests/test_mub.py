import json

import numpy as np
import pytest

from mubpoly.errors import EvenCharacteristic, ShapeMismatch, UnsupportedDimension
from mubpoly.fields import build_field
from mubpoly.mub import (
    MubSet,
    generate_mub,
    load_mub,
    max_overlap_error,
    mub_from_json,
    mub_to_json,
    pauli_tabulated_mub,
    projectors_from_vectors,
    save_mub,
    verify_mub,
    wootters_fields_mub,
)

from .conftest import SIGMA, mub


def cross_overlaps(mubs):
    V = mubs.vectors()
    return np.array([
        np.abs(V[m].conj() @ V[m2].T) ** 2
        for m in range(mubs.t) for m2 in range(mubs.t) if m != m2
    ])


def test_gf3_overlaps():
    mubs = wootters_fields_mub(build_field(3))
    assert mubs.t == 4 and mubs.dim == 3
    np.testing.assert_allclose(cross_overlaps(mubs), 1 / 3, atol=1e-12)


def test_gf5_passes_verification():
    mubs = wootters_fields_mub(build_field(5))
    assert mubs.t == 6
    assert verify_mub(mubs, 1e-10).passed


def test_even_characteristic_rejected():
    with pytest.raises(EvenCharacteristic):
        wootters_fields_mub(build_field(2, 2))


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_prime_case_matches_textbook_formula(p):
    # |psi_{m,n}>_x = exp(2 pi i (m x^2 + n x) / p) / sqrt(p)
    x = np.arange(p)
    bases = [np.eye(p)]
    for m in range(p):
        bases.append(np.array([np.exp(2j * np.pi * ((m * x * x + n * x) % p) / p) for n in range(p)]) / np.sqrt(p))
    expected = projectors_from_vectors(bases)
    got = wootters_fields_mub(build_field(p)).projectors
    np.testing.assert_allclose(got, expected, atol=1e-12)


def test_qubit_table_is_pauli_eigenbases():
    mubs = pauli_tabulated_mub(1)
    for m, name in enumerate("xyz"):
        for n, sign in enumerate((1, -1)):
            np.testing.assert_allclose(mubs.projectors[m, n], (np.eye(2) + sign * SIGMA[name]) / 2, atol=1e-15)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pauli_tables_verify(k):
    mubs = pauli_tabulated_mub(k)
    assert mubs.t == 2**k + 1
    assert verify_mub(mubs, 1e-10).passed
    assert max_overlap_error(mubs) <= 1e-10


def test_pauli_k4_unsupported():
    with pytest.raises(UnsupportedDimension):
        pauli_tabulated_mub(4)


def test_verify_reports_exact_qubit_algebra():
    rep = verify_mub(pauli_tabulated_mub(1))
    assert rep.max_purity_error < 1e-14
    assert rep.max_orthogonality_error < 1e-14
    assert rep.max_unbiasedness_error < 1e-14
    assert rep.passed


def test_verify_flags_repeated_basis():
    N = 3
    comp = projectors_from_vectors([np.eye(N), np.eye(N)])
    rep = verify_mub(MubSet(N, comp))
    assert rep.max_unbiasedness_error == pytest.approx(1 - 1 / N)
    assert not rep.passed


def test_verify_is_phase_invariant():
    mubs = mub(5)
    V = mubs.vectors()
    phases = np.exp(1j * np.random.default_rng(3).uniform(0, 2 * np.pi, V.shape[:2]))
    rephased = MubSet(5, projectors_from_vectors(V * phases[..., None]))
    a, b = verify_mub(mubs), verify_mub(rephased)
    assert b.passed
    assert abs(a.max_unbiasedness_error - b.max_unbiasedness_error) < 1e-14


def test_shape_checks():
    with pytest.raises(ShapeMismatch):
        MubSet(3, np.zeros((2, 2, 2, 2)))
    with pytest.raises(ShapeMismatch):
        MubSet(2, np.zeros((4, 2, 2, 2)))


@pytest.mark.parametrize("n", [6, 10, 12, 16, 64])
def test_unsupported_dimensions(n):
    with pytest.raises(UnsupportedDimension):
        generate_mub(n)


def test_json_round_trip(tmp_path):
    mubs = mub(4)
    path = tmp_path / "m4.json"
    save_mub(mubs, path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"dim", "bases", "construction_tag"}
    assert len(doc["bases"]) == 5 and len(doc["bases"][0][0][0]) == 2
    back = load_mub(path)
    assert back.report.passed
    np.testing.assert_allclose(back.projectors, mubs.projectors, atol=1e-14)


def test_import_normalizes_vectors():
    doc = {
        "dim": 2,
        "bases": [[[[2, 0], [0, 0]], [[0, 0], [3, 0]]], [[[1, 0], [1, 0]], [[1, 0], [-1, 0]]]],
        "construction_tag": "user-supplied",
    }
    mubs = mub_from_json(doc)
    assert mubs.t == 2
    assert mubs.report.passed


def test_user_supplied_three_bases_in_dimension_six():
    # Fourier-type triple: computational, Fourier, and a chirp-phased Fourier basis
    N = 6
    x = np.arange(N)
    F = np.exp(2j * np.pi * np.outer(x, x) / N) / np.sqrt(N)
    chirp = np.exp(1j * np.pi * x * x / N)  # N-periodic for even N; Gauss sums of modulus sqrt(N)
    doc = mub_to_json(MubSet(N, projectors_from_vectors([np.eye(N), F, F * chirp[None, :]])))
    mubs = mub_from_json(doc)
    assert mubs.dim == 6 and mubs.t == 3
    assert mubs.report.passed
