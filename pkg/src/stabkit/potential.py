"""Frame potentials of the stabilizer-state ensemble, three ways.

Two exact engines return identical rationals by construction of the theory:

* a recursion over n with base case (d^{2-t}+1)/((d+1)d) and step factor
  (d^{k-(t-2)}+1)/(d(d^{k+1}+1)),
* the closed combinatorial sum S(d,n)^{-1} sum_{k=0..n} binom(n,k)_d *
  d^{(n-k)(n-k+3-2t)/2}.

Two floating-point engines recompute the same quantity from realized state
vectors: the full double sum over pairs, and the single fixed-reference sum
that orbit symmetry makes equivalent. Numeric summation uses a fixed
pairwise-tree order, so results are identical regardless of worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinatorics import gaussian_binomial, require_prime, stabilizer_count, welch_bound
from .errors import ResourceCapError
from .stabilizer import DEFAULT_STATE_CAP, realized_states
from .weyl import DEFAULT_MATRIX_CAP

DEFAULT_PAIR_CAP = 25_000_000

THREADS_ENV_VAR = "STABKIT_THREADS"


def resolve_threads(threads: int | None = None) -> int:
    """Explicit argument, else STABKIT_THREADS, else machine parallelism."""
    if threads is None:
        env = os.environ.get(THREADS_ENV_VAR)
        threads = int(env) if env else (os.cpu_count() or 1)
    if threads < 1:
        raise ValueError("thread count must be positive")
    return threads


def _validate(d: int, n: int, t: int) -> None:
    require_prime(d)
    if n < 1 or t < 1:
        raise ValueError("n and t must be positive")


def frame_potential_recursion(d: int, n: int, t: int) -> Fraction:
    """Exact frame potential via the recursion over the dimension exponent."""
    _validate(d, n, t)
    value = (Fraction(d) ** (2 - t) + 1) / ((d + 1) * d)
    for k in range(1, n):
        value *= (Fraction(d) ** (k - (t - 2)) + 1) / (d * (d ** (k + 1) + 1))
    return value


def frame_potential_combinatorial(d: int, n: int, t: int) -> Fraction:
    """Exact frame potential via the closed intersection-counting sum.

    The k index runs over 0..n inclusive: the k=0 term is required for the
    term count to add up to the total number of Lagrangians.
    """
    _validate(d, n, t)
    total = Fraction(0)
    for k in range(n + 1):
        e = (n - k) * (n - k + 3 - 2 * t)
        assert e % 2 == 0
        total += gaussian_binomial(n, k, d) * Fraction(d) ** (e // 2)
    return total / stabilizer_count(d, n)


def _pairwise_sum(values: Sequence[float]) -> float:
    """Fixed binary-tree reduction over the full ordered value list.

    The tree shape depends only on the list, never on how work was chunked,
    which is what makes the floating-point engines thread-count invariant.
    """
    vals = list(values)
    if not vals:
        return 0.0
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def _overlap_powers(stack: np.ndarray, ref: np.ndarray, t: int) -> list[float]:
    amps = stack @ np.conj(ref)
    return ((amps.real**2 + amps.imag**2) ** t).tolist()


def frame_potential_bruteforce(
    d: int,
    n: int,
    t: int,
    *,
    pair_cap: int = DEFAULT_PAIR_CAP,
    matrix_cap: int = DEFAULT_MATRIX_CAP,
    threads: int | None = None,
    vectors: Sequence[np.ndarray] | None = None,
) -> float:
    """S^{-2} sum_{i,j} |<x_i, x_j>|^{2t} from realized state vectors.

    ``vectors`` is a performance hook for sweeps over t: when given, it must
    hold the realized state vectors in enumeration order.
    """
    _validate(d, n, t)
    count = stabilizer_count(d, n)
    if count * count > pair_cap:
        raise ResourceCapError(
            f"brute force needs {count * count} state pairs, cap is {pair_cap};"
            " the fixed-state engine covers larger ensembles"
        )
    if vectors is None:
        vectors = [vec for _, vec in realized_states(d, n, state_cap=count, matrix_cap=matrix_cap)]
    stack = np.array(vectors)

    def row_total(i: int) -> float:
        return _pairwise_sum(_overlap_powers(stack, stack[i], t))

    with ThreadPoolExecutor(max_workers=resolve_threads(threads)) as pool:
        rows = list(pool.map(row_total, range(count)))
    return _pairwise_sum(rows) / (count * count)


def frame_potential_fixed_state(
    d: int,
    n: int,
    t: int,
    *,
    state_cap: int = DEFAULT_STATE_CAP,
    matrix_cap: int = DEFAULT_MATRIX_CAP,
    vectors: Sequence[np.ndarray] | None = None,
) -> float:
    """S^{-1} sum_i |<x_ref, x_i>|^{2t} with x_ref = |M_0, 0>.

    Orbit symmetry of the ensemble makes the single fixed-reference sum equal
    the full double sum; x_ref is the first enumerated state, whose coset
    representative is the zero vector. ``vectors``, when given, must hold the
    realized state vectors in enumeration order.
    """
    _validate(d, n, t)
    count = stabilizer_count(d, n)
    if count > state_cap:
        raise ResourceCapError(f"fixed-state sum over {count} states exceeds cap {state_cap}")
    if vectors is None:
        pairs = realized_states(d, n, state_cap=state_cap, matrix_cap=matrix_cap)
        assert pairs[0][0].zeta.is_zero()
        vectors = [vec for _, vec in pairs]
    stack = np.array(vectors)
    return _pairwise_sum(_overlap_powers(stack, stack[0], t)) / count


@dataclass(frozen=True)
class FramePotentialReport:
    """One (d, n, t) cell: exact values, optional numeric value, verdict."""

    d: int
    n: int
    t: int
    value_recursion: Fraction
    value_combinatorial: Fraction
    welch: Fraction
    is_t_design: bool
    value_bruteforce: float | None = None

    def __post_init__(self) -> None:
        if self.value_recursion != self.value_combinatorial:
            raise ValueError("exact engines disagree; report is inconsistent")
        if self.is_t_design != (self.value_combinatorial == self.welch):
            raise ValueError("design verdict contradicts the values")

    @property
    def dimension(self) -> int:
        return self.d**self.n

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "t": self.t,
            "D": self.dimension,
            "recursion": fraction_str(self.value_recursion),
            "combinatorial": fraction_str(self.value_combinatorial),
            "bruteforce": self.value_bruteforce,
            "welch": fraction_str(self.welch),
            "is_design": self.is_t_design,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "FramePotentialReport":
        return cls(
            d=obj["d"],
            n=obj["n"],
            t=obj["t"],
            value_recursion=parse_fraction(obj["recursion"]),
            value_combinatorial=parse_fraction(obj["combinatorial"]),
            welch=parse_fraction(obj["welch"]),
            is_t_design=obj["is_design"],
            value_bruteforce=obj["bruteforce"],
        )


def fraction_str(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def parse_fraction(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def frame_potential_report(d: int, n: int, t: int, *, bruteforce: float | None = None) -> FramePotentialReport:
    comb = frame_potential_combinatorial(d, n, t)
    bound = welch_bound(d**n, t)
    return FramePotentialReport(
        d=d,
        n=n,
        t=t,
        value_recursion=frame_potential_recursion(d, n, t),
        value_combinatorial=comb,
        welch=bound,
        is_t_design=comb == bound,
        value_bruteforce=bruteforce,
    )


def design_verdict(d: int, n: int, t_max: int) -> list[FramePotentialReport]:
    """Reports for t = 1..t_max with exact design verdicts."""
    if t_max < 1:
        raise ValueError("t_max must be positive")
    return [frame_potential_report(d, n, t) for t in range(1, t_max + 1)]
