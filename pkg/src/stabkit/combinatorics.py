"""Exact counting formulas: binomials, Gaussian binomials, Lagrangian and
stabilizer-state counts, Welch bounds.

Everything is computed on Python ints and ``fractions.Fraction``, so identity
tests (e.g. frame potential == Welch bound) are decided by exact equality,
never to a tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NonPrimeModulusError


def is_prime(n: int) -> bool:
    """Trial division; d is small by construction everywhere in this package."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(d: int) -> None:
    if not is_prime(d):
        raise NonPrimeModulusError(f"d must be prime, got {d}")


def binomial(n: int, k: int) -> int:
    """C(n, k); zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    return math.comb(n, k)


def gaussian_binomial(n: int, k: int, d: int) -> int:
    """Number of k-dimensional subspaces of Z_d^n.

    Computed as the interleaved product prod_{j=1..k} (d^(n-k+j)-1)/(d^j-1).
    Every partial product is itself a Gaussian binomial, so each division is
    exact on integers.
    """
    require_prime(d)
    if n < 0 or k < 0:
        raise ValueError("gaussian_binomial arguments must be non-negative")
    if k > n:
        return 0
    result = 1
    for j in range(1, k + 1):
        result, rem = divmod(result * (d ** (n - k + j) - 1), d**j - 1)
        assert rem == 0, "partial Gaussian binomial product must stay integral"
    return result


def gaussian_pascal_check(n: int, k: int, d: int) -> bool:
    """Whether binom(n,k)_d == d^k binom(n-1,k)_d + binom(n-1,k-1)_d.

    Exposed as a library-level oracle so the product formula can be checked
    against the recursion from the outside.
    """
    if n < 1:
        raise ValueError("pascal identity needs n >= 1")
    lower = gaussian_binomial(n - 1, k - 1, d) if k >= 1 else 0
    return gaussian_binomial(n, k, d) == d**k * gaussian_binomial(n - 1, k, d) + lower


def lagrangian_count(d: int, n: int) -> int:
    """Number of Lagrangian subspaces of Z_d^{2n}: prod_{j=1..n} (d^j + 1)."""
    require_prime(d)
    if n < 1:
        raise ValueError("n must be positive")
    out = 1
    for j in range(1, n + 1):
        out *= d**j + 1
    return out


def stabilizer_count(d: int, n: int) -> int:
    """S(d, n) = d^n * prod_{j=1..n} (d^j + 1)."""
    return d**n * lagrangian_count(d, n)


def transversal_count(d: int, n: int) -> int:
    """Number of Lagrangians transverse to a fixed one: d^{n(n+1)/2}."""
    if n < 1:
        raise ValueError("n must be positive")
    return d ** (n * (n + 1) // 2)


def kappa(d: int, n: int, k: int) -> int:
    """Number of Lagrangians meeting a fixed Lagrangian in dimension k.

    kappa(d, n, k) = binom(n,k)_d * d^{(n-k)(n-k+1)/2}.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    m = n - k
    return gaussian_binomial(n, k, d) * d ** (m * (m + 1) // 2)


def welch_bound(dimension: int, t: int) -> Fraction:
    """Universal frame-potential lower bound 1 / C(D+t-1, t)."""
    if dimension < 1 or t < 1:
        raise ValueError("dimension and t must be positive")
    return Fraction(1, math.comb(dimension + t - 1, t))
