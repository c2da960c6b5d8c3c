import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from bshq.errors import DomainError, LatticeMismatchError
from bshq.lattice import window_lattice
from bshq.oscillator import OscillatorBasis, build_b
from bshq.opalg import (
    BandedOperator,
    frobenius_norm,
    is_hermitian,
    is_skew_hermitian,
    matrix_exp,
    matrix_log,
    op_add,
    op_adjoint,
    op_commutator,
    op_compose,
    op_scale,
    to_dense,
)
from bshq.spin import build_spin_matrices


def random_banded(lat, rng, nbands=3, reach=2):
    bands = {}
    for _ in range(nbands):
        s = tuple(int(x) for x in rng.integers(-reach, reach + 1, size=lat.n))
        bands[s] = rng.normal(size=lat.dim) + 1j * rng.normal(size=lat.dim)
    return BandedOperator(lat, bands)


lattices = st.sampled_from(
    [[(0, 7)], [(1, 16)], [(-2, 2), (0, 3)], [(0, 3), (0, 3)], [(0, 1), (0, 1), (0, 3)]]
)
seeds = st.integers(0, 2**32 - 1)


def test_identity_and_zero():
    lat = window_lattice([(0, 3)])
    a = random_banded(lat, np.random.default_rng(0))
    assert np.allclose(to_dense(op_add(a, BandedOperator.zero(lat))), to_dense(a))
    assert np.allclose(to_dense(op_scale(1, a)), to_dense(a))
    assert frobenius_norm(a + op_scale(-1, a)) == 0.0
    assert np.array_equal(to_dense(BandedOperator.identity(lat)), np.eye(4))


def test_out_of_window_amplitudes_are_zeroed():
    lat = window_lattice([(0, 3)])
    op = BandedOperator(lat, {(1,): np.ones(4)})
    assert op.bands[(1,)][-1] == 0


def test_compose_diagonals():
    lat = window_lattice([(0, 3)])
    d, e = np.array([1, 2, 3, 4.0]), np.array([5, 6, 7, 8.0])
    out = op_compose(BandedOperator.diagonal(lat, d), BandedOperator.diagonal(lat, e))
    assert np.array_equal(to_dense(out), np.diag(d * e))


def test_compose_identity():
    lat = window_lattice([(0, 5)])
    a = random_banded(lat, np.random.default_rng(1))
    assert np.allclose(to_dense(op_compose(BandedOperator.identity(lat), a)), to_dense(a))


def test_oscillator_b_then_bdagger():
    basis = OscillatorBasis(ground_index=0, top=12)
    b, bd = build_b(basis)
    m = np.arange(13)
    assert np.allclose(to_dense(op_compose(bd, b)), np.diag(2.0 * m), atol=1e-12)


def test_commutator_cases():
    lat = window_lattice([(0, 2)])
    d1 = BandedOperator.diagonal(lat, [1, 2, 3])
    d2 = BandedOperator.diagonal(lat, [4, 5, 6])
    assert frobenius_norm(op_commutator(d1, d2)) == 0
    a = random_banded(lat, np.random.default_rng(3))
    assert frobenius_norm(op_commutator(a, a)) < 1e-14


def test_oscillator_commutator_interior():
    basis = OscillatorBasis(ground_index=0, top=20)
    b, bd = build_b(basis)
    c = to_dense(op_commutator(b, bd))
    # boundary row m = N is truncated by b+
    assert np.allclose(np.diag(c)[:-1], 2.0, atol=1e-12)
    assert np.allclose(c - np.diag(np.diag(c)), 0)


def test_lattice_mismatch():
    a = BandedOperator.identity(window_lattice([(0, 2)]))
    b = BandedOperator.identity(window_lattice([(0, 3)]))
    with pytest.raises(LatticeMismatchError):
        op_add(a, b)


def test_adjoint_of_down_shift_is_up_shift():
    lat = window_lattice([(1, 4)])
    down = BandedOperator.shift(lat, (-1,))
    up = BandedOperator.shift(lat, (1,))
    assert np.array_equal(to_dense(op_adjoint(down)), to_dense(up))


def test_adjoint_of_diagonal_conjugates():
    lat = window_lattice([(0, 2)])
    d = np.array([1 + 2j, -1j, 3])
    assert np.array_equal(to_dense(op_adjoint(BandedOperator.diagonal(lat, d))), np.diag(d.conj()))


@given(lattices, seeds)
def test_adjoint_involution_and_product_reversal(ws, seed):
    lat = window_lattice(ws)
    rng = np.random.default_rng(seed)
    a, b = random_banded(lat, rng), random_banded(lat, rng)
    A, B = to_dense(a), to_dense(b)
    assert np.allclose(to_dense(op_adjoint(op_adjoint(a))), A)
    assert np.allclose(to_dense(op_adjoint(a)), A.conj().T)
    assert np.allclose(
        to_dense(op_adjoint(op_compose(a, b))), to_dense(op_compose(op_adjoint(b), op_adjoint(a)))
    )


@given(lattices, seeds)
def test_to_dense_is_homomorphism(ws, seed):
    lat = window_lattice(ws)
    rng = np.random.default_rng(seed)
    a, b = random_banded(lat, rng), random_banded(lat, rng)
    assert np.abs(to_dense(op_compose(a, b)) - to_dense(a) @ to_dense(b)).max() <= 1e-12


@given(lattices, seeds)
def test_apply_matches_dense(ws, seed):
    lat = window_lattice(ws)
    rng = np.random.default_rng(seed)
    a = random_banded(lat, rng)
    v = rng.normal(size=lat.dim) + 1j * rng.normal(size=lat.dim)
    assert np.allclose(a.apply(v), to_dense(a) @ v)


@given(st.sampled_from([[(0, 15)], [(0, 3), (0, 3)]]), seeds)
def test_commutator_antisymmetry_and_jacobi(ws, seed):
    lat = window_lattice(ws)
    rng = np.random.default_rng(seed)
    a, b, c = (random_banded(lat, rng) for _ in range(3))
    assert frobenius_norm(op_commutator(a, b) + op_commutator(b, a)) <= 1e-12
    jac = (
        op_commutator(a, op_commutator(b, c))
        + op_commutator(b, op_commutator(c, a))
        + op_commutator(c, op_commutator(a, b))
    )
    assert frobenius_norm(jac) <= 1e-10


def test_norm_and_hermitian_helpers():
    assert frobenius_norm(np.zeros((3, 3))) == 0
    assert is_hermitian(np.diag([1.0, -2.0, 3.0]))
    assert not is_hermitian(np.array([[0, 1], [0, 0]]))
    assert is_skew_hermitian(1j * np.diag([1.0, 2.0]))


def test_matrix_exp_zero():
    assert np.array_equal(matrix_exp(np.zeros((4, 4))), np.eye(4))


def test_full_turn_about_z_is_identity():
    for s in (1, 2, 5):
        rep = build_spin_matrices(s)
        # diagonal exponentiation: e^{-2 pi i m} = 1
        u = matrix_exp(2 * np.pi * rep.J3 / 1j)
        assert np.abs(u - np.eye(rep.dim)).max() < 1e-12


@given(st.integers(1, 12), seeds)
def test_skew_hermitian_exp_is_unitary(dim, seed):
    rng = np.random.default_rng(seed)
    h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    s = 3 * (h - h.conj().T)
    u = matrix_exp(s)
    assert frobenius_norm(u.conj().T @ u - np.eye(dim)) <= 1e-10 * dim
    assert np.allclose(u @ matrix_exp(-s), np.eye(dim), atol=1e-10)
    assert np.allclose(u, scipy.linalg.expm(s), atol=1e-9)


def test_general_matrix_falls_back_to_pade():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert np.allclose(matrix_exp(m), [[1, 1], [0, 1]])


def test_matrix_exp_rejects_nonfinite():
    with pytest.raises(DomainError):
        matrix_exp(np.array([[np.nan]]))


@given(st.integers(1, 8), seeds)
def test_matrix_log_inverts_exp_near_identity(dim, seed):
    rng = np.random.default_rng(seed)
    h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    s = h - h.conj().T
    s *= 1.0 / max(1.0, np.linalg.norm(s, 2))
    assert np.allclose(matrix_log(matrix_exp(s)), s, atol=1e-10)
