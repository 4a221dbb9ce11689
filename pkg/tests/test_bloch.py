import numpy as np
import pytest

from mubpoly.bloch import (
    DeviationTable,
    deviation_table_from_csv,
    deviation_table_to_csv,
    embed,
    hs_distance,
    hs_distance_sq,
    is_density_matrix,
    load_state,
    maximally_mixed,
    outsphere_radius,
    reconstruct,
    save_state,
    scalar_product,
    span_coordinates,
    deviations_from_span,
)
from mubpoly.errors import BadDimension, NonZeroRowSum, ShapeMismatch
from mubpoly.sampling import haar_pure, hs_mixed

from .conftest import bloch_state, mub


def test_same_basis_projectors_at_unit_distance(qutrit_mubs):
    P = qutrit_mubs.projectors
    assert hs_distance(P[1, 0], P[1, 2]) == pytest.approx(1.0, abs=1e-12)
    assert hs_distance(P[0, 0], P[0, 0]) == 0.0


def test_qubit_pure_state_radius():
    assert hs_distance(bloch_state(0, 0, 1), maximally_mixed(2)) == pytest.approx(0.5, abs=1e-15)


def test_distance_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        hs_distance(np.eye(2) / 2, np.eye(3) / 3)


def test_scalar_product_examples(qutrit_mubs):
    P = qutrit_mubs.projectors
    assert abs(scalar_product(P[0, 1], P[2, 0])) < 1e-12
    assert scalar_product(P[3, 2], P[3, 2]) == pytest.approx(2 / 6, abs=1e-12)
    rho = hs_mixed(3, 5)
    assert abs(scalar_product(rho, maximally_mixed(3))) < 1e-15


def test_polarization_identity():
    rng = np.random.default_rng(11)
    for N in (2, 3, 5):
        a, b = hs_mixed(N, 1, size=20), hs_mixed(N, 2, size=20)
        # a, b need not be states for the identity; perturb off the state body
        a = a + 0.3 * (a - maximally_mixed(N)) * rng.random((20, 1, 1))
        rs = maximally_mixed(N)
        # (rho1, rho2) = [D^2(rho1 + rho2, rho*) - D^2(rho1 - rho2, rho*)] / 4 on centred vectors
        ca, cb = a - rs, b - rs
        polar = (hs_distance_sq(ca + cb + rs, rs) - hs_distance_sq(ca - cb + rs, rs)) / 4
        np.testing.assert_allclose(scalar_product(a, b), polar, atol=1e-12)


@pytest.mark.parametrize("N,expected", [(2, 0.5), (3, np.sqrt(1 / 3)), (4, np.sqrt(3 / 8))])
def test_outsphere_radius(N, expected):
    assert outsphere_radius(N) == pytest.approx(expected, abs=1e-15)


def test_outsphere_bad_dimension():
    with pytest.raises(BadDimension):
        outsphere_radius(1)


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_pure_states_on_outsphere(N):
    rho = haar_pure(N, 4, size=200)
    np.testing.assert_allclose(hs_distance_sq(rho, maximally_mixed(N)), (N - 1) / (2 * N), atol=1e-10)


def test_embed_maximally_mixed(qutrit_mubs):
    T = embed(maximally_mixed(3), qutrit_mubs)
    assert np.abs(T.d).max() < 1e-15 and T.residual < 1e-15


def test_embed_qubit_z_eigenstate(qubit_mubs):
    T = embed(qubit_mubs.projectors[2, 0], qubit_mubs)
    np.testing.assert_allclose(T.d, [[0, 0], [0, 0], [0.5, -0.5]], atol=1e-15)
    assert T.residual < 1e-10


def test_embed_residual_off_span(qubit_mubs):
    T = embed(bloch_state(0, 0, 0.6), qubit_mubs.subset([0, 1]))
    np.testing.assert_allclose(T.d, 0, atol=1e-15)
    assert T.residual == pytest.approx(0.3, abs=1e-12)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 7])
def test_parseval_on_complete_sets(N):
    mubs = mub(N)
    for rho in hs_mixed(N, 9, size=25):
        T = embed(rho, mubs)
        np.testing.assert_allclose(T.d.sum(axis=1), 0, atol=1e-12)
        assert T.span_norm_sq() == pytest.approx(hs_distance_sq(rho, maximally_mixed(N)), abs=1e-10)
        assert T.residual <= 1e-10
        assert T.d.min() >= -1 / N - 1e-12 and T.d.max() <= 1 - 1 / N + 1e-12


def test_reconstruct_examples(qubit_mubs, qutrit_mubs):
    zero = DeviationTable(3, np.zeros((4, 3)))
    np.testing.assert_allclose(reconstruct(zero, qutrit_mubs), maximally_mixed(3), atol=1e-15)
    table = DeviationTable(2, np.array([[0.25, -0.25], [0, 0], [0, 0]]))
    np.testing.assert_allclose(reconstruct(table, qubit_mubs), bloch_state(0.5, 0, 0), atol=1e-15)
    psi = haar_pure(3, 21)
    np.testing.assert_allclose(reconstruct(embed(psi, qutrit_mubs), qutrit_mubs), psi, atol=1e-10)


def test_reconstruct_rejects_bad_rows(qubit_mubs):
    with pytest.raises(NonZeroRowSum):
        reconstruct(DeviationTable(2, np.array([[0.25, 0.0]])), qubit_mubs)
    with pytest.raises(ShapeMismatch):
        reconstruct(DeviationTable(3, np.zeros((1, 3))), qubit_mubs)


@pytest.mark.parametrize("N,t", [(3, 2), (4, 3), (5, 6)])
def test_embed_of_reconstruct_is_identity(N, t):
    mubs = mub(N).subset(range(t))
    rng = np.random.default_rng(N * 10 + t)
    d = rng.normal(size=(t, N)) * 0.05
    d -= d.mean(axis=1, keepdims=True)
    back = embed(reconstruct(DeviationTable(N, d), mubs), mubs)
    np.testing.assert_allclose(back.d, d, atol=1e-10)
    assert back.residual <= 1e-10


def test_is_density_matrix(qutrit_mubs):
    ok, lam = is_density_matrix(maximally_mixed(4))
    assert ok and lam == pytest.approx(0.25)
    ok, lam = is_density_matrix(bloch_state(0, 0, 1.2))
    assert not ok and lam == pytest.approx(-0.1)
    ok, lam = is_density_matrix(qutrit_mubs.projectors[2, 1])
    assert ok and abs(lam) < 1e-12


def test_span_coordinates_are_isometric():
    rng = np.random.default_rng(2)
    d = rng.normal(size=(50, 4, 5))
    d -= d.mean(axis=-1, keepdims=True)
    u = span_coordinates(d)
    assert u.shape == (50, 16)
    np.testing.assert_allclose((u**2).sum(-1), 0.5 * (d**2).sum((-1, -2)), atol=1e-12)
    np.testing.assert_allclose(deviations_from_span(u, 4, 5), d, atol=1e-12)


def test_state_file_round_trip(tmp_path):
    rho = hs_mixed(3, 8)
    save_state(rho, tmp_path / "s.json")
    np.testing.assert_array_equal(load_state(tmp_path / "s.json"), rho)


def test_deviation_csv_round_trip(qutrit_mubs):
    T = embed(hs_mixed(3, 3), qutrit_mubs.subset([0, 1]))
    text = deviation_table_to_csv(T)
    assert text.splitlines()[0] == "basis,outcome,deviation"
    assert text.splitlines()[-1].startswith("residual,,")
    back = deviation_table_from_csv(text)
    np.testing.assert_array_equal(back.d, T.d)
    assert back.residual == T.residual


@pytest.mark.parametrize("N,t", [(2, 1), (3, 2), (5, 3)])
def test_pythagorean_split_on_partial_sets(N, t):
    mubs = mub(N).subset(range(t))
    for rho in hs_mixed(N, 31, size=20):
        T = embed(rho, mubs)
        total = hs_distance_sq(rho, maximally_mixed(N))
        assert T.residual**2 + T.span_norm_sq() == pytest.approx(total, abs=1e-12)
