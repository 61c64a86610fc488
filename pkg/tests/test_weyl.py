"""Weyl operators: matrix conventions, exact symbolic algebra, group laws."""

import itertools

import numpy as np
import pytest

from stabkit import (
    PhaseVector,
    TauPhase,
    WeylOperator,
    boost,
    enumerate_lagrangians,
    shift,
    verify_commutation,
    verify_composition,
    weyl,
    weyl_basis,
)
from stabkit.errors import ResourceCapError
from stabkit.weyl import basis_weyl_operator, solve_in_basis, tau_order

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def pv(d, n, *coords):
    return PhaseVector(d, n, tuple(coords))


def all_points(d, n):
    return [PhaseVector(d, n, c) for c in itertools.product(range(d), repeat=2 * n)]


def test_tau_phase_values():
    assert TauPhase(2, 1).value() == pytest.approx(1j)
    assert TauPhase(2, 2).value() == pytest.approx(-1)
    assert abs(TauPhase(3, 3).value() - 1) < 1e-12  # tau^d = 1 for odd d
    assert tau_order(2) == 4 and tau_order(3) == 3
    prod = TauPhase(2, 3) * TauPhase(2, 3)
    assert prod.exponent == 2


def test_shift_boost_pauli():
    assert np.allclose(shift(1, 2), X)
    assert np.allclose(boost(1, 2), Z)
    assert np.allclose(shift(0, 2), np.eye(2))
    assert np.allclose(shift((0, 0), 2), np.eye(4))
    assert np.allclose(shift((1, 0), 2), np.kron(X, np.eye(2)))
    assert np.allclose(boost((0, 1), 2), np.kron(np.eye(2), Z))


def test_weyl_examples():
    assert np.allclose(weyl(pv(2, 1, 1, 1)), Y)
    assert np.allclose(weyl(pv(2, 1, 0, 0)), np.eye(2))
    assert np.allclose(weyl(pv(2, 2, 1, 0, 0, 1)), np.kron(Z, X))


def test_weyl_trace_identity():
    for d, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        dim = d**n
        for v in all_points(d, n):
            tr = np.trace(weyl(v))
            expected = dim if v.is_zero() else 0.0
            assert abs(tr - expected) <= 1e-12


def test_weyl_unitarity():
    for d, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        dim = d**n
        for v in all_points(d, n):
            w = weyl(v)
            assert np.max(np.abs(w @ w.conj().T - np.eye(dim))) <= 1e-12


def test_composition_commutation_examples():
    assert verify_composition(pv(2, 1, 1, 0), pv(2, 1, 0, 1))
    assert verify_commutation(pv(2, 1, 1, 0), pv(2, 1, 0, 1))
    u = pv(3, 1, 1, 2)
    assert verify_composition(u, u) and verify_commutation(u, u)


def test_composition_commutation_exhaustive():
    for d, n in [(2, 1), (2, 2), (3, 1)]:
        points = all_points(d, n)
        for u in points:
            for v in points:
                assert verify_composition(u, v)
                assert verify_commutation(u, v)


def test_symbolic_product_matches_matrix_product():
    for d, n in [(2, 1), (3, 1)]:
        points = all_points(d, n)
        for u in points:
            for v in points:
                sym = (WeylOperator.from_point(u) @ WeylOperator.from_point(v)).matrix()
                assert np.max(np.abs(sym - weyl(u) @ weyl(v))) <= 1e-12


def test_weyl_basis_identity_and_tensor_example():
    m_sub = next(iter(enumerate_lagrangians(2, 2)))
    basis = m_sub.generator_vectors()
    assert np.allclose(weyl_basis(basis, PhaseVector.zero(2, 2)), np.eye(4))
    q_basis = (pv(2, 2, 0, 0, 1, 0), pv(2, 2, 0, 0, 0, 1))
    assert np.allclose(weyl_basis(q_basis, pv(2, 2, 0, 0, 1, 1)), np.kron(X, X))


def test_weyl_basis_equals_weyl_for_odd_d():
    for m_sub in enumerate_lagrangians(3, 1):
        basis = m_sub.generator_vectors()
        for row in m_sub.vectors():
            m = PhaseVector(3, 1, row)
            assert np.max(np.abs(weyl_basis(basis, m) - weyl(m))) <= 1e-12
    m_sub = list(enumerate_lagrangians(3, 2))[5]
    basis = m_sub.generator_vectors()
    for row in m_sub.vectors():
        m = PhaseVector(3, 2, row)
        assert np.max(np.abs(weyl_basis(basis, m) - weyl(m))) <= 1e-12


def test_weyl_basis_group_law():
    # true representation on every Lagrangian, also at even d
    for d, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        for m_sub in enumerate_lagrangians(d, n):
            basis = m_sub.generator_vectors()
            coeff_space = list(itertools.product(range(d), repeat=n))
            ops = {c: basis_weyl_operator(basis, c) for c in coeff_space}
            for a in coeff_space:
                for b in coeff_space:
                    total = tuple((x + y) % d for x, y in zip(a, b))
                    assert ops[a] @ ops[b] == ops[total]  # exact symbolic identity
            mats = {c: op.matrix() for c, op in ops.items()}
            for a in coeff_space:
                for b in coeff_space:
                    total = tuple((x + y) % d for x, y in zip(a, b))
                    assert np.max(np.abs(mats[a] @ mats[b] - mats[total])) <= 1e-12


def test_solve_in_basis_errors():
    basis = (pv(2, 2, 1, 0, 0, 0), pv(2, 2, 0, 1, 0, 0))
    assert solve_in_basis(basis, pv(2, 2, 1, 1, 0, 0)) == (1, 1)
    with pytest.raises(ValueError):
        solve_in_basis(basis, pv(2, 2, 0, 0, 1, 0))
    dependent = (pv(2, 2, 1, 0, 0, 0), pv(2, 2, 1, 0, 0, 0))
    with pytest.raises(ValueError):
        solve_in_basis(dependent, pv(2, 2, 1, 0, 0, 0))


def test_matrix_cap():
    big = PhaseVector.zero(2, 13)  # D = 8192
    with pytest.raises(ResourceCapError):
        weyl(big)
    # symbolic algebra is unaffected by the cap
    op = WeylOperator.from_point(big) @ WeylOperator.from_point(big)
    assert op.point.is_zero()
