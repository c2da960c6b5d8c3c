import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bshq.errors import BranchCutError
from bshq.grouprep import (
    Rotation,
    bch_truncated,
    group_rep,
    hat,
    killing_form,
    rho,
    sample_branch_pairs,
    so3_exp,
    so3_log,
    unhat,
    verify_homomorphism,
)
from bshq.opalg import dense_commutator, matrix_exp, matrix_log
from bshq.spin import build_spin_matrices

vec = st.lists(st.floats(-3, 3), min_size=3, max_size=3).map(np.array)


def test_hat_example():
    assert np.array_equal(hat([1, 2, 3]), [[0, -3, 2], [3, 0, -1], [-2, 1, 0]])
    assert np.array_equal(unhat(hat([1, 2, 3])), [1, 2, 3])


def test_unhat_rejects_non_skew():
    with pytest.raises(ValueError):
        unhat(np.eye(3))


@given(vec, vec)
def test_hat_intertwines_cross_and_bracket(x, y):
    assert np.allclose(hat(x) @ y, np.cross(x, y))
    assert np.allclose(dense_commutator(hat(x), hat(y)), hat(np.cross(x, y)), atol=1e-12)
    assert killing_form(hat(x), hat(y)) == pytest.approx(float(x @ y), abs=1e-12)


@given(vec, vec)
def test_adjoint_compatibility(x, y):
    R = so3_exp(x).matrix
    assert np.allclose(R @ hat(y) @ R.T, hat(R @ y), atol=1e-12)


def test_rodrigues_matches_expm():
    x = np.array([0.3, -1.1, 0.7])
    assert np.allclose(so3_exp(x).matrix, matrix_exp(hat(x)).real, atol=1e-14)
    assert np.allclose(so3_exp(np.zeros(3)).matrix, np.eye(3))


@given(st.floats(0, np.pi - 1e-5), vec)
def test_exp_log_roundtrip(theta, axis):
    if np.linalg.norm(axis) < 1e-3:
        return
    x = theta * axis / np.linalg.norm(axis)
    assert np.allclose(so3_log(so3_exp(x)), x, atol=1e-9)


def test_log_branch_cut():
    with pytest.raises(BranchCutError):
        so3_log(so3_exp([0, 0, np.pi]))
    with pytest.raises(BranchCutError):
        so3_log(so3_exp([0, 0, np.pi - 1e-8]))


def test_rotation_validation_and_inverse():
    with pytest.raises(ValueError):
        Rotation(np.diag([1.0, 1.0, -1.0]))
    g = so3_exp([0.2, 0.4, -0.1])
    assert np.allclose((g @ g.inverse()).matrix, np.eye(3))
    assert g.angle == pytest.approx(np.linalg.norm([0.2, 0.4, -0.1]))


@pytest.mark.parametrize("s", [0, 1, 2, 5])
def test_rho_brackets_real_so3(s):
    rep = build_spin_matrices(s, hbar=0.8)
    e = np.eye(3)
    for i in range(3):
        a, b, c = e[i], e[(i + 1) % 3], e[(i + 2) % 3]
        assert np.allclose(dense_commutator(rho(rep, a), rho(rep, b)), rho(rep, c), atol=1e-12)


@given(vec, vec)
def test_rho_is_lie_algebra_hom(x, y):
    rep = build_spin_matrices(2)
    lhs = dense_commutator(rho(rep, x), rho(rep, y))
    assert np.allclose(lhs, rho(rep, np.cross(x, y)), atol=1e-10)


def test_rho_skew_hermitian():
    rep = build_spin_matrices(3)
    m = rho(rep, [0.1, 2.0, -1.0])
    assert np.allclose(m, -m.conj().T)


def test_spin1_rep_equivalent_to_defining():
    rep = build_spin_matrices(1)
    rng = np.random.default_rng(3)
    for _ in range(5):
        x = rng.normal(size=3)
        u = matrix_exp(rho(rep, x))
        assert np.allclose(np.linalg.eigvals(u).prod(), 1.0)
        assert np.trace(u).real == pytest.approx(np.trace(so3_exp(x).matrix), abs=1e-12)


@pytest.mark.parametrize("s", [1, 2, 4])
def test_characters(s):
    rep = build_spin_matrices(s)
    for theta in (0.3, 1.7, 2.9):
        u = group_rep(rep, so3_exp([theta, 0, 0]))
        expected = sum(np.exp(1j * m * theta) for m in range(-s, s + 1))
        assert np.trace(u) == pytest.approx(expected, abs=1e-12)


def test_inverse_maps_to_adjoint():
    rep = build_spin_matrices(3)
    g = so3_exp([0.5, -1.0, 0.9])
    assert np.allclose(group_rep(rep, g.inverse()), group_rep(rep, g).conj().T, atol=1e-12)


def test_full_turn_is_identity_for_integer_spin():
    for s in range(0, 11):
        rep = build_spin_matrices(s)
        u = matrix_exp(rho(rep, 2 * np.pi * np.array([1.0, 2.0, 2.0]) / 3))
        assert np.linalg.norm(u - np.eye(rep.dim)) <= 1e-8


def test_full_turn_is_minus_identity_for_half_integer():
    rep = build_spin_matrices(0.5, allow_half_integer=True)
    u = matrix_exp(rho(rep, [0, 0, 2 * np.pi]))
    assert np.allclose(u, -np.eye(2))


def test_branch_pairs_avoid_cut():
    for g, h in sample_branch_pairs(np.random.default_rng(0), 20):
        assert max(g.angle, h.angle, (g @ h).angle) < np.pi - 1e-6


def test_verify_homomorphism_seeded():
    rep = build_spin_matrices(2)
    r1 = verify_homomorphism(rep, 30, seed=7)
    r2 = verify_homomorphism(rep, 30, seed=7)
    assert r1.passed and r1.to_dict() == r2.to_dict()
    assert r1.samples == 30 and r1.seed == 7


def test_bch_orders_commuting():
    X = np.diag([0.1, -0.2, 0.3])
    Y = np.diag([0.05, 0.0, 0.01])
    assert np.allclose(bch_truncated(X, Y), X + Y)
    assert np.allclose(bch_truncated(X, np.zeros_like(X)), X)


def test_bch_error_drops_with_order():
    rng = np.random.default_rng(11)
    X, Y = (0.05 * rng.normal(size=(4, 4)) for _ in range(2))
    exact = matrix_log(matrix_exp(X) @ matrix_exp(Y))
    errs = [np.linalg.norm(bch_truncated(X, Y, k) - exact) for k in (1, 2, 3, 4)]
    assert errs[0] > errs[1] > errs[2] > errs[3]


def test_bch_rejects_bad_input():
    with pytest.raises(ValueError):
        bch_truncated(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        bch_truncated(np.eye(2), np.eye(2), order=5)


def test_bch_of_equal_arguments():
    X = 0.1 * np.random.default_rng(1).normal(size=(3, 3))
    assert np.allclose(bch_truncated(X, X), 2 * X)


def test_rotation_just_short_of_full_turn():
    rep = build_spin_matrices(4)
    for eps in (1e-2, 1e-4):
        u = group_rep(rep, so3_exp([0, 0, 2 * np.pi - eps]))
        # diag(exp(-i m eps)) - I has norm ~ eps * sqrt(sum m^2)
        expected = eps * np.sqrt(4 * 5 * 9 / 3)
        assert np.linalg.norm(u - np.eye(rep.dim)) == pytest.approx(expected, rel=1e-3)


def test_characters_independent_of_axis():
    rep = build_spin_matrices(3)
    rng = np.random.default_rng(9)
    theta = 2.2
    expected = sum(np.exp(1j * m * theta) for m in range(-3, 4))
    for _ in range(5):
        axis = rng.normal(size=3)
        u = group_rep(rep, so3_exp(theta * axis / np.linalg.norm(axis)))
        assert abs(np.trace(u) - expected) <= 1e-8


def test_identity_pair_has_zero_residual():
    rep = build_spin_matrices(2)
    g = so3_exp(np.zeros(3))
    assert np.array_equal(group_rep(rep, g), np.eye(rep.dim))
    assert np.allclose(group_rep(rep, g @ g), group_rep(rep, g) @ group_rep(rep, g), atol=0)
