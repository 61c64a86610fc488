"""Stabilizer states: projectors, eigenvalue equations, exact overlaps."""

import random
from fractions import Fraction

import numpy as np
import pytest

from helpers import cached_states, single_qubit_rays
from stabkit import (
    PhaseVector,
    StabilizerState,
    compatible_bases,
    coset_representatives,
    enumerate_lagrangians,
    enumerate_states,
    intersect,
    is_transverse,
    overlap_exact,
    projector,
    stabilizer_basis,
    stabilizer_count,
    state_vector,
    symplectic_form,
    weyl_basis,
)
from stabkit.errors import ResourceCapError
from stabkit.stabilizer import _basis_weyl_terms
from stabkit.weyl import _omega_power


def pv(d, n, *coords):
    return PhaseVector(d, n, tuple(coords))


# ---------------------------------------------------------------------------
# projectors


def test_projector_boost_axis_example():
    m_sub = next(m for m in enumerate_lagrangians(2, 1) if m.generators == ((1, 0),))
    rho = projector(m_sub, PhaseVector.zero(2, 1))
    assert abs(np.trace(rho) - 1) <= 1e-10
    assert np.max(np.abs(rho @ rho - rho)) <= 1e-10
    # +1 eigenvector of the stabilizing boost operator
    vec = state_vector(StabilizerState(m_sub, PhaseVector.zero(2, 1)))
    z = np.diag([1, -1]).astype(complex)
    assert np.max(np.abs(z @ vec - vec)) <= 1e-10


def test_projector_properties_random_cosets():
    rng = random.Random(31)
    samples = []
    for d, n in [(2, 2), (3, 1)]:
        lags = list(enumerate_lagrangians(d, n))
        for _ in range(10):
            m_sub = rng.choice(lags)
            v = PhaseVector(d, n, tuple(rng.randrange(d) for _ in range(2 * n)))
            samples.append((m_sub, v))
    for m_sub, v in samples:
        rho = projector(m_sub, v)
        assert abs(np.trace(rho) - 1) <= 1e-10
        assert np.max(np.abs(rho @ rho - rho)) <= 1e-10
        assert np.max(np.abs(rho - rho.conj().T)) <= 1e-10


# ---------------------------------------------------------------------------
# state vectors


def test_single_qubit_states_are_the_six_rays():
    vectors = [vec for _, vec in cached_states(2, 1)]
    rays = single_qubit_rays()
    assert len(vectors) == 6
    matched = set()
    for vec in vectors:
        hits = [i for i, ray in enumerate(rays) if abs(abs(np.vdot(ray, vec)) - 1) <= 1e-10]
        assert len(hits) == 1
        matched.add(hits[0])
    assert matched == set(range(6))


def test_eigenvalue_equations():
    for d, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        for m_sub in enumerate_lagrangians(d, n):
            terms = _basis_weyl_terms(m_sub)
            for zeta, vec in stabilizer_basis(m_sub):
                for m_vec, mat in terms:
                    phase = _omega_power(d, symplectic_form(zeta, m_vec))
                    assert np.max(np.abs(phase * (mat @ vec) - vec)) <= 1e-10


def test_each_lagrangian_gives_an_orthonormal_basis():
    for d, n in [(2, 2), (3, 1)]:
        dim = d**n
        for m_sub in enumerate_lagrangians(d, n):
            stack = np.array([vec for _, vec in stabilizer_basis(m_sub)])
            gram = np.conj(stack) @ stack.T
            assert np.max(np.abs(gram - np.eye(dim))) <= 1e-10


def test_global_phase_convention():
    for _, vec in cached_states(2, 2):
        idx = next(i for i in range(len(vec)) if abs(vec[i]) > 0.5 * np.max(np.abs(vec)))
        assert vec[idx].real > 0
        assert abs(vec[idx].imag) <= 1e-12


# ---------------------------------------------------------------------------
# exact overlaps


def test_overlap_trivial_cases():
    states = [s for s, _ in cached_states(2, 1)]
    assert overlap_exact(states[0], states[0]) == 1
    same_m = [s for s in states if s.lagrangian == states[0].lagrangian]
    assert overlap_exact(same_m[0], same_m[1]) == 0
    transverse = next(
        s for s in states if is_transverse(s.lagrangian, states[0].lagrangian)
    )
    assert overlap_exact(states[0], transverse) == Fraction(1, 2)


def test_overlap_symmetry_and_values():
    pairs = cached_states(3, 1)
    for a, _ in pairs:
        for b, _ in pairs:
            ab = overlap_exact(a, b)
            assert ab == overlap_exact(b, a)
            k = intersect(a.lagrangian, b.lagrangian).dim
            assert ab in (Fraction(0), Fraction(1, 3 ** (1 - k)))


def test_overlap_exact_matches_realized_vectors():
    for d, n in [(2, 1), (3, 1), (2, 2)]:
        pairs = cached_states(d, n)
        for a, va in pairs:
            for b, vb in pairs:
                amp = np.vdot(va, vb)
                numeric = float(amp.real**2 + amp.imag**2)
                assert abs(numeric - float(overlap_exact(a, b))) <= 1e-10


def test_nonzero_overlap_count_per_lagrangian_pair():
    # For dim(M cap N) = k, exactly d^{n-k} of N's d^n states meet |M,0>.
    d, n = 2, 2
    pairs = cached_states(d, n)
    ref = pairs[0][0]
    assert ref.zeta.is_zero()
    by_lagrangian = {}
    for s, _ in pairs:
        by_lagrangian.setdefault(s.lagrangian, []).append(s)
    for n_sub, states in by_lagrangian.items():
        k = intersect(ref.lagrangian, n_sub).dim
        nonzero = sum(1 for s in states if overlap_exact(ref, s) != 0)
        assert nonzero == d ** (n - k)


# ---------------------------------------------------------------------------
# enumeration and identity


def test_enumerate_states_counts():
    assert len(list(enumerate_states(2, 1))) == 6
    assert len(list(enumerate_states(2, 2))) == 60
    assert len(list(enumerate_states(3, 1))) == 12
    assert len(list(enumerate_states(3, 2))) == stabilizer_count(3, 2) == 360


def test_enumerate_states_cap():
    with pytest.raises(ResourceCapError):
        enumerate_states(2, 9)


def test_states_are_distinct_rays():
    states = [s for s, _ in cached_states(2, 2)]
    assert len(set(states)) == len(states)
    for i, a in enumerate(states):
        for b in states[i + 1 :]:
            assert overlap_exact(a, b) != 1


def test_state_identity_is_structural():
    m_sub = next(iter(enumerate_lagrangians(2, 2)))
    reps = list(coset_representatives(m_sub))
    assert StabilizerState(m_sub, reps[1]) == StabilizerState(m_sub, reps[1])
    assert StabilizerState(m_sub, reps[0]) != StabilizerState(m_sub, reps[1])
    shifted = reps[1] + PhaseVector(2, 2, m_sub.generators[0])
    assert StabilizerState.from_coset(m_sub, shifted) == StabilizerState(m_sub, reps[1])
    with pytest.raises(ValueError):
        StabilizerState(m_sub, shifted)


def test_state_rejects_non_lagrangian():
    from stabkit import canonicalize

    line = canonicalize([pv(2, 2, 1, 0, 0, 0)])
    with pytest.raises(ValueError):
        StabilizerState(line, PhaseVector.zero(2, 2))


def test_state_json_roundtrip():
    state, vec = cached_states(2, 2)[7]
    obj = state.to_json_dict()
    assert StabilizerState.from_json_dict(obj) == state
    realized = state.to_json_dict(amplitudes=vec)
    assert len(realized["amplitudes"]) == 4
    assert all(len(pair) == 2 for pair in realized["amplitudes"])


# ---------------------------------------------------------------------------
# compatible bases


def test_compatible_bases_trivial_cases():
    lags = list(enumerate_lagrangians(2, 2))
    bm, bn = compatible_bases(lags[0], lags[0])
    assert bm == bn
    transverse = next(m for m in lags if is_transverse(m, lags[0]))
    bm, bn = compatible_bases(lags[0], transverse)
    assert len(bm) == len(bn) == 2


def test_compatible_bases_share_intersection_prefix():
    lags = list(enumerate_lagrangians(2, 2))
    m_sub = lags[0]
    n_sub = next(m for m in lags if intersect(m_sub, m).dim == 1)
    bm, bn = compatible_bases(m_sub, n_sub)
    k_sub = intersect(m_sub, n_sub)
    shared = bm[: k_sub.dim]
    assert shared == bn[: k_sub.dim]
    assert all(k_sub.contains(v) for v in shared)


def test_compatible_bases_trace_identity():
    # tr(w_{B_M}(m) w_{B_N}(-m')) = d^n delta_{m,m'}, scanned exhaustively
    for d, n, picker in [(2, 2, 1), (3, 1, 0)]:
        lags = list(enumerate_lagrangians(d, n))
        m_sub = lags[0]
        n_sub = next(m for m in lags if intersect(m_sub, m).dim == picker)
        bm, bn = compatible_bases(m_sub, n_sub)
        dim = d**n
        for m_row in m_sub.vectors():
            m_vec = PhaseVector(d, n, m_row)
            wm = weyl_basis(bm, m_vec)
            for n_row in n_sub.vectors():
                n_vec = PhaseVector(d, n, n_row)
                wn = weyl_basis(bn, -n_vec)
                expected = dim if m_vec == n_vec else 0.0
                assert abs(np.trace(wm @ wn) - expected) <= 1e-10
