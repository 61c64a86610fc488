"""Stabilizer states as (Lagrangian, coset) pairs.

A state |M, zeta> is identified by a Lagrangian subspace M of Z_d^{2n} and
the canonical representative zeta of a coset of V/M (zero on M's pivot
coordinates). Identity is structural: two states are equal iff their pairs
are. Hilbert-space vectors and projectors are derived artifacts, realized on
demand; the basis used for the basis-dependent Weyl operators is always M's
canonical generator list, so realizations are reproducible bit for bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .combinatorics import require_prime, stabilizer_count
from .errors import ResourceCapError
from .weyl import (
    DEFAULT_MATRIX_CAP,
    _omega_power,
    basis_weyl_operator,
    solve_in_basis,
    tau_order,
)
from .symplectic import (
    PhaseVector,
    Subspace,
    _complete_basis,
    canonical_coset_representative,
    coset_representatives,
    enumerate_lagrangians,
    intersect,
    is_lagrangian,
    symplectic_form,
)

DEFAULT_STATE_CAP = 10**6


@dataclass(frozen=True)
class StabilizerState:
    lagrangian: Subspace
    zeta: PhaseVector

    def __post_init__(self) -> None:
        if not is_lagrangian(self.lagrangian):
            raise ValueError("subspace is not Lagrangian")
        if (self.zeta.d, self.zeta.n) != (self.lagrangian.d, self.lagrangian.n):
            raise ValueError("coset representative lives in a different space")
        if canonical_coset_representative(self.lagrangian, self.zeta) != self.zeta:
            raise ValueError("coset representative is not canonical; use from_coset")

    @classmethod
    def from_coset(cls, lagrangian: Subspace, v: PhaseVector) -> "StabilizerState":
        return cls(lagrangian, canonical_coset_representative(lagrangian, v))

    @property
    def d(self) -> int:
        return self.lagrangian.d

    @property
    def n(self) -> int:
        return self.lagrangian.n

    @property
    def basis(self) -> tuple[PhaseVector, ...]:
        return self.lagrangian.generator_vectors()

    def to_json_dict(self, amplitudes: np.ndarray | None = None) -> dict:
        out = {
            "d": self.d,
            "n": self.n,
            "lagrangian": self.lagrangian.to_json_dict(),
            "zeta": list(self.zeta.coords),
        }
        if amplitudes is not None:
            out["amplitudes"] = [[float(a.real), float(a.imag)] for a in amplitudes]
        return out

    @classmethod
    def from_json_dict(cls, obj: dict) -> "StabilizerState":
        sub = Subspace.from_json_dict(obj["lagrangian"])
        return cls(sub, PhaseVector(obj["d"], obj["n"], tuple(obj["zeta"])))


def _basis_weyl_terms(m_sub: Subspace, *, cap: int = DEFAULT_MATRIX_CAP) -> list[tuple[PhaseVector, np.ndarray]]:
    """(m, w_B(m)) for every m in M, in lexicographic coefficient order."""
    basis = m_sub.generator_vectors()
    terms = []
    for coeffs in itertools.product(range(m_sub.d), repeat=m_sub.dim):
        op = basis_weyl_operator(basis, coeffs)
        terms.append((op.point, op.matrix(cap=cap)))
    return terms


def _group_projector(terms: Sequence[tuple[PhaseVector, np.ndarray]], v: PhaseVector, d: int, n: int) -> np.ndarray:
    dim = d**n
    rho = np.zeros((dim, dim), dtype=np.complex128)
    for m, mat in terms:
        rho += _omega_power(d, symplectic_form(v, m)) * mat
    return rho / d**n


def projector(m_sub: Subspace, v: PhaseVector, *, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """Rank-one projector d^{-n} sum_{m in M} omega^{[v,m]} w_B(m)."""
    if not is_lagrangian(m_sub):
        raise ValueError("projector needs a Lagrangian subspace")
    return _group_projector(_basis_weyl_terms(m_sub, cap=cap), v, m_sub.d, m_sub.n)


def _extract_unit_vector(rho: np.ndarray) -> np.ndarray:
    # Rank-one extraction without an eigensolver: the best column of |psi><psi|
    # is psi itself up to scale. Global phase: first significant amplitude in
    # lexicographic basis order made real positive.
    norms = np.linalg.norm(rho, axis=0)
    vec = rho[:, int(np.argmax(norms))]
    vec = vec / np.linalg.norm(vec)
    threshold = 0.5 * float(np.max(np.abs(vec)))
    idx = next(i for i in range(len(vec)) if abs(vec[i]) > threshold)
    pivot = vec[idx]
    return vec * (pivot.conjugate() / abs(pivot))


def state_vector(state: StabilizerState, *, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """Unit vector satisfying omega^{[zeta,m]} w_B(m) |psi> = |psi> for m in M."""
    return _extract_unit_vector(projector(state.lagrangian, state.zeta, cap=cap))


def stabilizer_basis(m_sub: Subspace, *, cap: int = DEFAULT_MATRIX_CAP) -> list[tuple[PhaseVector, np.ndarray]]:
    """The orthonormal basis of all d^n states of one Lagrangian.

    Shares the Weyl realizations across cosets; returned in enumeration order
    of the canonical coset representatives.
    """
    if not is_lagrangian(m_sub):
        raise ValueError("needs a Lagrangian subspace")
    terms = _basis_weyl_terms(m_sub, cap=cap)
    out = []
    for zeta in coset_representatives(m_sub):
        rho = _group_projector(terms, zeta, m_sub.d, m_sub.n)
        out.append((zeta, _extract_unit_vector(rho)))
    return out


def _alignment_data(m_sub: Subspace, n_sub: Subspace) -> tuple[Subspace, list[tuple[PhaseVector, int]]]:
    """Generators of K = M cap N with the exact phase mismatch of the two reps.

    w_{B_M} and w_{B_N} restricted to K agree only up to a character when d is
    even, because each state uses its own canonical basis. The mismatch on a
    generator g is tau^{delta} with delta = e_M(g) - e_N(g), computed
    symbolically, so the overlap condition below stays exact.
    """
    k_sub = intersect(m_sub, n_sub)
    basis_m = m_sub.generator_vectors()
    basis_n = n_sub.generator_vectors()
    order = tau_order(m_sub.d)
    gens = []
    for row in k_sub.generators:
        g = PhaseVector(m_sub.d, m_sub.n, row)
        e_m = basis_weyl_operator(basis_m, solve_in_basis(basis_m, g)).phase.exponent
        e_n = basis_weyl_operator(basis_n, solve_in_basis(basis_n, g)).phase.exponent
        gens.append((g, (e_m - e_n) % order))
    return k_sub, gens


def overlap_exact(a: StabilizerState, b: StabilizerState) -> Fraction:
    """|<M,zeta|N,iota>|^2 of the realized states, as an exact rational.

    Equals d^{-n} |K| with K = M cap N when omega^{[zeta-iota, g]} tau^{delta(g)}
    = 1 for every generator g of K, and 0 otherwise. delta is the exact
    alignment phase between the two canonical per-Lagrangian representations;
    it vanishes identically for odd d, for equal Lagrangians, and for
    transverse pairs, where the condition reduces to [zeta-iota, g] = 0.
    """
    if (a.d, a.n) != (b.d, b.n):
        raise ValueError("states live in different spaces")
    k_sub, gens = _alignment_data(a.lagrangian, b.lagrangian)
    diff = a.zeta - b.zeta
    order = tau_order(a.d)
    for g, delta in gens:
        if (2 * symplectic_form(diff, g) + delta) % order:
            return Fraction(0)
    return Fraction(a.d**k_sub.dim, a.d**a.n)


def enumerate_states(d: int, n: int, *, cap: int = DEFAULT_STATE_CAP) -> Iterator[StabilizerState]:
    """All S(d,n) stabilizer states: Lagrangians outer, coset reps inner."""
    require_prime(d)
    total = stabilizer_count(d, n)
    if total > cap:
        raise ResourceCapError(f"enumeration of {total} states exceeds cap {cap}")
    return (
        StabilizerState(m_sub, zeta)
        for m_sub in enumerate_lagrangians(d, n)
        for zeta in coset_representatives(m_sub)
    )


def realized_states(
    d: int, n: int, *, state_cap: int = DEFAULT_STATE_CAP, matrix_cap: int = DEFAULT_MATRIX_CAP
) -> list[tuple[StabilizerState, np.ndarray]]:
    """Every stabilizer state with its Hilbert-space vector, in enumeration order."""
    require_prime(d)
    total = stabilizer_count(d, n)
    if total > state_cap:
        raise ResourceCapError(f"realization of {total} states exceeds cap {state_cap}")
    out = []
    for m_sub in enumerate_lagrangians(d, n):
        for zeta, vec in stabilizer_basis(m_sub, cap=matrix_cap):
            out.append((StabilizerState(m_sub, zeta), vec))
    return out


def compatible_bases(m_sub: Subspace, n_sub: Subspace) -> tuple[tuple[PhaseVector, ...], tuple[PhaseVector, ...]]:
    """Bases of M and N extending a common basis of K = M cap N.

    With these, w_{B_M}(m) and w_{B_N}(m) agree on K and
    tr(w_{B_M}(m) w_{B_N}(-m')) = d^n delta_{m,m'}.
    """
    if not (is_lagrangian(m_sub) and is_lagrangian(n_sub)):
        raise ValueError("compatible bases need Lagrangian subspaces")
    k_sub = intersect(m_sub, n_sub)
    shared = list(k_sub.generators)
    rows_m = shared + _complete_basis(k_sub, m_sub)
    rows_n = shared + _complete_basis(k_sub, n_sub)
    n = m_sub.n
    to_vecs = lambda rows: tuple(PhaseVector(m_sub.d, n, r) for r in rows)
    return to_vecs(rows_m), to_vecs(rows_n)
