import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qlovasz import channels, certify, linalg
from qlovasz.errors import DimensionMismatch, NonHermitianError
from conftest import random_hermitian


def test_kron_examples():
    assert np.array_equal(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))
    m = linalg.kron(linalg.ketbra(0, 1, 3), linalg.ketbra(1, 2, 3))
    assert m[1, 5] == 1 and np.count_nonzero(m) == 1
    assert np.array_equal(linalg.kron(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]))


def test_partial_trace_examples(rng):
    a, b = random_hermitian(rng, 3), random_hermitian(rng, 3)
    ab = linalg.kron(a, b)
    assert np.allclose(linalg.partial_trace(ab, 3, 3, "B"), np.trace(b) * a, atol=1e-12)
    assert np.allclose(linalg.partial_trace(ab, 3, 3, "A"), np.trace(a) * b, atol=1e-12)
    phi = linalg.proj(linalg.max_entangled(3))
    assert np.allclose(linalg.partial_trace(phi, 3, 3, "A"), np.eye(3))
    J = channels.choi(channels.family_nalpha(0.4)).J
    assert np.allclose(linalg.partial_trace(J, 3, 3, "B"), np.eye(3), atol=1e-12)


def test_partial_trace_rectangular_factors(rng):
    a, b = random_hermitian(rng, 2), random_hermitian(rng, 4)
    assert np.allclose(linalg.partial_trace(np.kron(a, b), 2, 4, "A"), np.trace(a) * b)
    assert np.allclose(linalg.partial_trace(np.kron(a, b), 2, 4, "B"), np.trace(b) * a)


def test_partial_trace_rejects_bad_shape():
    with pytest.raises(DimensionMismatch):
        linalg.partial_trace(np.eye(8), 3, 3, "A")
    with pytest.raises(ValueError):
        linalg.partial_trace(np.eye(9), 3, 3, "C")


def test_hermitian_eig_examples():
    w, _ = linalg.hermitian_eig(np.diag([2.0, -1.0, 0.0]))
    assert np.allclose(w, [-1, 0, 2])
    w, _ = linalg.hermitian_eig(channels.choi(channels.family_nalpha(np.pi / 4)).J)
    assert np.allclose(w[-2:], [1.5, 1.5], atol=1e-12)
    assert np.allclose(w[:-2], 0, atol=1e-12)
    w, _ = linalg.hermitian_eig(linalg.proj(linalg.max_entangled(3)))
    assert abs(w[-1] - 3) < 1e-12 and np.allclose(w[:-1], 0, atol=1e-12)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        linalg.hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


def test_hs_inner_examples():
    assert linalg.hs_inner(np.eye(3), np.eye(3)) == 3
    e01 = linalg.ketbra(0, 1, 3)
    assert linalg.hs_inner(e01, e01) == 1
    F, M = certify.prop2_graph_bases(0.6)
    assert abs(linalg.hs_inner(F[0], M[4])) < 1e-14
    with pytest.raises(DimensionMismatch):
        linalg.hs_inner(np.eye(2), np.eye(3))


def test_operator_norm_examples():
    assert linalg.operator_norm(np.diag([1.0, -5.0, 2.0])) == pytest.approx(5)
    assert linalg.operator_norm(np.zeros((3, 3))) == 0
    Y = certify.prop2_dual_point(np.pi / 4)
    assert linalg.operator_norm(linalg.partial_trace(Y, 3, 3, "A")) == pytest.approx(4.5, abs=1e-12)


def test_is_hermitian_tolerance():
    m = np.array([[1.0, 2.0], [2.0 + 1e-13, 1.0]])
    assert linalg.is_hermitian(m)
    assert not linalg.is_hermitian(np.array([[1.0, 2.0], [2.1, 1.0]]))


small = st.integers(min_value=2, max_value=3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), small, small, small)
def test_kron_associative(seed, n1, n2, n3):
    r = np.random.default_rng(seed)
    a, b, c = (r.normal(size=(n, n)) + 1j * r.normal(size=(n, n)) for n in (n1, n2, n3))
    lhs = linalg.kron(linalg.kron(a, b), c)
    rhs = linalg.kron(a, linalg.kron(b, c))
    assert np.abs(lhs - rhs).max() <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), small, small)
def test_partial_trace_preserves_trace(seed, da, db):
    m = random_hermitian(np.random.default_rng(seed), da * db)
    for over in ("A", "B"):
        assert abs(np.trace(linalg.partial_trace(m, da, db, over)) - np.trace(m)) <= 1e-12 * (1 + np.abs(m).sum())


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 81))
def test_eig_reconstruction(seed, n):
    m = random_hermitian(np.random.default_rng(seed), n)
    w, v = linalg.hermitian_eig(m)
    assert np.all(np.diff(w) >= 0)
    resid = np.abs(v @ np.diag(w) @ v.conj().T - m).max()
    assert resid <= 1e-10 * np.abs(m).max()
    assert np.abs(v.conj().T @ v - np.eye(n)).max() <= 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_hs_inner_conjugate_symmetric(seed, n):
    r = np.random.default_rng(seed)
    a = r.normal(size=(n, n)) + 1j * r.normal(size=(n, n))
    b = r.normal(size=(n, n)) + 1j * r.normal(size=(n, n))
    assert abs(linalg.hs_inner(a, b) - np.conj(linalg.hs_inner(b, a))) <= 1e-14 * (1 + abs(linalg.hs_inner(a, b)))
    assert linalg.hs_inner(a, a).real > 0
