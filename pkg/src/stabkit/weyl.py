"""Weyl (generalized Pauli) operators: exact symbolic phases, dense matrices.

Phase conventions: tau = exp(i*pi*(d^2+1)/d) and omega = tau^2 = exp(2*pi*i/d).
tau has order 2d in even dimension and order d in odd dimension. All
arithmetic in the exponent of tau happens on the integer lifts 0..d-1 of
phase-space coordinates and is only then reduced modulo the order of tau;
exponents of omega are ordinary mod-d residues. This integer-lift rule is
what makes the even-d operators well defined and reproducible.

A symbolic operator is kept normal-ordered as tau^e * z(p) x(q), where z and
x are genuinely periodic mod d. Products reorder through

    x(q) z(p') = omega^{-q.p'} z(p') x(q),

so composition stays exact; matrices on C^{d^n} (computational basis
|q_1..q_n>, lexicographic, q_1 most significant) are realized on demand and
capped by DEFAULT_MATRIX_CAP.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import ResourceCapError
from .symplectic import PhaseVector, _rref, _solve_linear_system, symplectic_form, symplectic_form_lift

DEFAULT_MATRIX_CAP = 4096


def tau_order(d: int) -> int:
    return 2 * d if d % 2 == 0 else d


@dataclass(frozen=True)
class TauPhase:
    """A power of tau, tracked by its exponent modulo the order of tau."""

    d: int
    exponent: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", self.exponent % tau_order(self.d))

    def __mul__(self, other: "TauPhase") -> "TauPhase":
        if self.d != other.d:
            raise ValueError("phases for different d")
        return TauPhase(self.d, self.exponent + other.exponent)

    def value(self) -> complex:
        # exp(i*pi*(d^2+1)*e/d); reduce the angle first to keep precision.
        k = (self.exponent * (self.d * self.d + 1)) % (2 * self.d)
        return cmath.exp(1j * math.pi * k / self.d)


def _omega_power(d: int, k: int) -> complex:
    return cmath.exp(2j * math.pi * (k % d) / d)


def _register_matrix(d: int, p: int, q: int) -> np.ndarray:
    # z(p) x(q) on C^d: column x carries omega^{p*(x+q mod d)} at row x+q mod d.
    out = np.zeros((d, d), dtype=np.complex128)
    for x in range(d):
        r = (x + q) % d
        out[r, x] = _omega_power(d, p * r)
    return out


def _check_matrix_cap(d: int, n: int, cap: int) -> int:
    dim = d**n
    if dim > cap:
        raise ResourceCapError(f"matrix dimension {dim} exceeds cap {cap}")
    return dim


def _zx_matrix(d: int, pvec: Sequence[int], qvec: Sequence[int]) -> np.ndarray:
    mats = [_register_matrix(d, p % d, q % d) for p, q in zip(pvec, qvec)]
    return reduce(np.kron, mats)


@dataclass(frozen=True)
class WeylOperator:
    """Symbolic Weyl operator tau^e * z(p) x(q) with exact composition."""

    phase: TauPhase
    point: PhaseVector

    def __post_init__(self) -> None:
        if self.phase.d != self.point.d:
            raise ValueError("phase and point disagree on d")

    @classmethod
    def identity(cls, d: int, n: int) -> "WeylOperator":
        return cls(TauPhase(d, 0), PhaseVector.zero(d, n))

    @classmethod
    def from_point(cls, v: PhaseVector) -> "WeylOperator":
        # w(v) = tau^{-p.q} z(p) x(q), with p.q on the integer lifts.
        dot = sum(a * b for a, b in zip(v.p, v.q))
        return cls(TauPhase(v.d, -dot), v)

    def __matmul__(self, other: "WeylOperator") -> "WeylOperator":
        self.point._check_compatible(other.point)
        cross = sum(a * b for a, b in zip(self.point.q, other.point.p))
        phase = TauPhase(self.point.d, self.phase.exponent + other.phase.exponent - 2 * cross)
        return WeylOperator(phase, self.point + other.point)

    def pow(self, k: int) -> "WeylOperator":
        if k < 0:
            raise ValueError("negative powers not supported")
        out = WeylOperator.identity(self.point.d, self.point.n)
        for _ in range(k):
            out = out @ self
        return out

    def matrix(self, *, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
        _check_matrix_cap(self.point.d, self.point.n, cap)
        return self.phase.value() * _zx_matrix(self.point.d, self.point.p, self.point.q)


def _as_tuple(x: int | Sequence[int]) -> tuple[int, ...]:
    return (x,) if isinstance(x, int) else tuple(x)


def shift(q: int | Sequence[int], d: int, *, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """x(q)|x> = |x+q>, tensored over registers."""
    qt = _as_tuple(q)
    _check_matrix_cap(d, len(qt), cap)
    return _zx_matrix(d, (0,) * len(qt), qt)


def boost(p: int | Sequence[int], d: int, *, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """z(p)|x> = omega^{p.x}|x>, tensored over registers."""
    pt = _as_tuple(p)
    _check_matrix_cap(d, len(pt), cap)
    return _zx_matrix(d, pt, (0,) * len(pt))


def weyl(v: PhaseVector, *, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """Dense matrix of w(v) = tau^{-p.q} z(p) x(q)."""
    return WeylOperator.from_point(v).matrix(cap=cap)


def solve_in_basis(basis: Sequence[PhaseVector], target: PhaseVector) -> tuple[int, ...]:
    """Expansion coefficients of target in the given independent vectors.

    Raises ValueError when the vectors are dependent or target lies outside
    their span.
    """
    if not basis:
        if target.is_zero():
            return ()
        raise ValueError("target not in span of empty basis")
    for u in basis:
        target._check_compatible(u)
    d, w = target.d, 2 * target.n
    _, pivots = _rref([u.coords for u in basis], d)
    if len(pivots) != len(basis):
        raise ValueError("basis vectors are dependent")
    system = [[basis[c].coords[r] for c in range(len(basis))] for r in range(w)]
    sol = _solve_linear_system(system, [list(target.coords)], d, len(basis))[0]
    if sol is None:
        raise ValueError("target not in span of basis")
    return sol


def basis_weyl_operator(basis: Sequence[PhaseVector], coefficients: Sequence[int]) -> WeylOperator:
    """Symbolic product prod_i w(u_i)^{c_i} in basis order."""
    if len(basis) != len(coefficients):
        raise ValueError("coefficient count must match basis size")
    d, n = basis[0].d, basis[0].n
    out = WeylOperator.identity(d, n)
    for u, c in zip(basis, coefficients):
        out = out @ WeylOperator.from_point(u).pow(c % d)
    return out


def weyl_basis(basis: Sequence[PhaseVector], m: PhaseVector, *, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """Basis-dependent operator w_B(m) = prod_i w(u_i)^{m_i}.

    For a basis B of an isotropic subspace this is a true representation:
    w_B(m) w_B(m') = w_B(m+m'), also in even dimension where the plain Weyl
    map is only projective.
    """
    coeffs = solve_in_basis(basis, m)
    if not coeffs:
        return WeylOperator.identity(m.d, m.n).matrix(cap=cap)
    return basis_weyl_operator(basis, coeffs).matrix(cap=cap)


def _integer_sum_matrix(u: PhaseVector, v: PhaseVector) -> np.ndarray:
    # w extended to the integer sum u+v (entries 0..2d-2): the tau exponent
    # uses the unreduced dot product, the operators themselves are periodic.
    d = u.d
    sp = [a + b for a, b in zip(u.p, v.p)]
    sq = [a + b for a, b in zip(u.q, v.q)]
    phase = TauPhase(d, -sum(a * b for a, b in zip(sp, sq)))
    return phase.value() * _zx_matrix(d, sp, sq)


def verify_composition(u: PhaseVector, v: PhaseVector, *, tol: float = 1e-12, cap: int = DEFAULT_MATRIX_CAP) -> bool:
    """Check w(u) w(v) = tau^{[u,v]} w(u+v) as matrices.

    [u,v] is the integer-lift value and u+v on the right is the integer sum;
    both sides are then honest operator identities for every d.
    """
    lhs = weyl(u, cap=cap) @ weyl(v, cap=cap)
    rhs = TauPhase(u.d, symplectic_form_lift(u, v)).value() * _integer_sum_matrix(u, v)
    return bool(np.max(np.abs(lhs - rhs)) <= tol)


def verify_commutation(u: PhaseVector, v: PhaseVector, *, tol: float = 1e-12, cap: int = DEFAULT_MATRIX_CAP) -> bool:
    """Check w(u) w(v) = omega^{[u,v]} w(v) w(u) as matrices."""
    wu = weyl(u, cap=cap)
    wv = weyl(v, cap=cap)
    rhs = _omega_power(u.d, symplectic_form(u, v)) * (wv @ wu)
    return bool(np.max(np.abs(wu @ wv - rhs)) <= tol)
