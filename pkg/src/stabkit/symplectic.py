"""Linear and symplectic geometry over Z_d.

Phase-space vectors live in V = Z_d^{2n} with coordinates ordered
(p_1..p_n, q_1..q_n) and the standard symplectic form

    [u, v] = u_p . v_q - u_q . v_p   (mod d).

Subspaces are stored as generator matrices in reduced row echelon form over
Z_d. RREF is the unique canonical form, so structural equality of the
generator tuple is subspace equality, hashing is well defined, and every
enumeration below has a reproducible order (streams are plain generators and
may be sliced by index range for parallel consumption).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .combinatorics import gaussian_binomial, require_prime
from .errors import ResourceCapError

DEFAULT_ENUM_CAP = 10**7

Row = tuple[int, ...]


@dataclass(frozen=True)
class PhaseVector:
    """An element of Z_d^{2n}, split as (p_1..p_n, q_1..q_n)."""

    d: int
    n: int
    coords: Row

    def __post_init__(self) -> None:
        require_prime(self.d)
        if self.n < 1:
            raise ValueError("n must be positive")
        if len(self.coords) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(c % self.d for c in self.coords))

    @classmethod
    def zero(cls, d: int, n: int) -> "PhaseVector":
        return cls(d, n, (0,) * (2 * n))

    @property
    def p(self) -> Row:
        return self.coords[: self.n]

    @property
    def q(self) -> Row:
        return self.coords[self.n :]

    def _check_compatible(self, other: "PhaseVector") -> None:
        if (self.d, self.n) != (other.d, other.n):
            raise ValueError("phase vectors live in different spaces")

    def __add__(self, other: "PhaseVector") -> "PhaseVector":
        self._check_compatible(other)
        return PhaseVector(self.d, self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "PhaseVector") -> "PhaseVector":
        self._check_compatible(other)
        return PhaseVector(self.d, self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "PhaseVector":
        return PhaseVector(self.d, self.n, tuple(-a for a in self.coords))

    def scaled(self, c: int) -> "PhaseVector":
        return PhaseVector(self.d, self.n, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def symplectic_form(u: PhaseVector, v: PhaseVector) -> int:
    """[u, v] = u_p.v_q - u_q.v_p reduced mod d."""
    u._check_compatible(v)
    return symplectic_form_lift(u, v) % u.d


def symplectic_form_lift(u: PhaseVector, v: PhaseVector) -> int:
    """The integer value of u_p.v_q - u_q.v_p on the canonical lifts 0..d-1.

    Needed wherever arithmetic happens in the exponent of tau, which is not
    modular in even dimension.
    """
    u._check_compatible(v)
    return sum(a * b for a, b in zip(u.p, v.q)) - sum(a * b for a, b in zip(u.q, v.p))


# ---------------------------------------------------------------------------
# Exact row reduction


def _rref(rows: Iterable[Sequence[int]], d: int, limit: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Gauss-Jordan over Z_d. Returns (all rows, pivot columns).

    ``limit`` restricts pivot search to columns < limit; the remaining
    columns are still transformed, which is how augmented systems are solved.
    Rows beyond len(pivots) are zero in the pivot-eligible columns.
    """
    mat = [[c % d for c in row] for row in rows]
    if not mat:
        return [], []
    width = len(mat[0])
    if any(len(r) != width for r in mat):
        raise ValueError("ragged matrix")
    stop = width if limit is None else limit
    pivots: list[int] = []
    r = 0
    for c in range(stop):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], -1, d)
        mat[r] = [(x * inv) % d for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % d for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def _is_canonical(rows: Sequence[Row], d: int, width: int) -> bool:
    prev = -1
    pivots = []
    for row in rows:
        if len(row) != width or any(not 0 <= x < d for x in row):
            return False
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None or lead <= prev or row[lead] != 1:
            return False
        pivots.append(lead)
        prev = lead
    for i, c in enumerate(pivots):
        if any(rows[j][c] for j in range(len(rows)) if j != i):
            return False
    return True


def _nullspace(rows: Sequence[Sequence[int]], d: int, width: int) -> list[Row]:
    reduced, pivots = _rref(rows, d)
    reduced = reduced[: len(pivots)]
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-reduced[i][f]) % d
        basis.append(tuple(v))
    return basis


def _solve_linear_system(
    rows: Sequence[Sequence[int]], rhs_columns: Sequence[Sequence[int]], d: int, width: int
) -> list[Row | None]:
    """Particular solutions (free variables zero) of rows.x = rhs, per column.

    Returns None in a slot when that right-hand side is inconsistent.
    """
    nrows = len(rows)
    if any(len(col) != nrows for col in rhs_columns):
        raise ValueError("right-hand side length mismatch")
    aug = [list(rows[i]) + [col[i] for col in rhs_columns] for i in range(nrows)]
    reduced, pivots = _rref(aug, d, limit=width)
    rank = len(pivots)
    out: list[Row | None] = []
    for j in range(len(rhs_columns)):
        col = width + j
        if any(reduced[i][col] for i in range(rank, nrows)):
            out.append(None)
            continue
        x = [0] * width
        for i, c in enumerate(pivots):
            x[c] = reduced[i][col]
        out.append(tuple(x))
    return out


# ---------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Z_d^width held by its canonical RREF generator matrix.

    ``width`` is 2n for phase-space subspaces; plain configuration spaces
    Z_d^m are supported too (the subspace-counting oracle uses them).
    """

    d: int
    width: int
    generators: tuple[Row, ...]

    def __post_init__(self) -> None:
        require_prime(self.d)
        if self.width < 1:
            raise ValueError("ambient dimension must be positive")
        gens = tuple(tuple(row) for row in self.generators)
        object.__setattr__(self, "generators", gens)
        if not _is_canonical(gens, self.d, self.width):
            raise ValueError("generators are not in canonical reduced row echelon form")

    @classmethod
    def zero(cls, d: int, width: int) -> "Subspace":
        return cls(d, width, ())

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], *, d: int, width: int) -> "Subspace":
        reduced, pivots = _rref(rows, d)
        return cls(d, width, tuple(tuple(r) for r in reduced[: len(pivots)]))

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def n(self) -> int:
        if self.width % 2:
            raise ValueError("ambient dimension is odd; not a phase space")
        return self.width // 2

    @property
    def pivots(self) -> Row:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.generators)

    def reduce_coords(self, coords: Sequence[int]) -> Row:
        """Canonical coset representative of coords modulo this subspace."""
        v = [c % self.d for c in coords]
        if len(v) != self.width:
            raise ValueError("coordinate length mismatch")
        for row in self.generators:
            c = next(j for j, x in enumerate(row) if x)
            if v[c]:
                f = v[c]
                v = [(x - f * y) % self.d for x, y in zip(v, row)]
        return tuple(v)

    def contains_coords(self, coords: Sequence[int]) -> bool:
        return not any(self.reduce_coords(coords))

    def contains(self, v: PhaseVector) -> bool:
        if (v.d, 2 * v.n) != (self.d, self.width):
            raise ValueError("vector lives in a different space")
        return self.contains_coords(v.coords)

    def vectors(self) -> Iterator[Row]:
        """All d^dim elements, in lexicographic coefficient order."""
        for coeffs in itertools.product(range(self.d), repeat=self.dim):
            v = [0] * self.width
            for c, row in zip(coeffs, self.generators):
                if c:
                    v = [(x + c * y) % self.d for x, y in zip(v, row)]
            yield tuple(v)

    def generator_vectors(self) -> tuple[PhaseVector, ...]:
        n = self.n
        return tuple(PhaseVector(self.d, n, row) for row in self.generators)

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "dim": self.dim,
            "generators": [list(row) for row in self.generators],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Subspace":
        return cls(obj["d"], 2 * obj["n"], tuple(tuple(row) for row in obj["generators"]))


def canonicalize(rows: Iterable[PhaseVector], *, d: int | None = None, n: int | None = None) -> Subspace:
    """Span of the given phase vectors in canonical form; dependent rows drop out.

    d and n are only needed when rows is empty.
    """
    rows = list(rows)
    if rows:
        d, n = rows[0].d, rows[0].n
        for v in rows:
            rows[0]._check_compatible(v)
    if d is None or n is None:
        raise ValueError("empty row list needs explicit d and n")
    return Subspace.from_rows([v.coords for v in rows], d=d, width=2 * n)


def _form_row(coords: Sequence[int], n: int, d: int) -> Row:
    # Row a with a.x = [u, x]: coefficients (-u_q | u_p).
    return tuple((-coords[n + i]) % d for i in range(n)) + tuple(coords[:n])


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if (a.d, a.width) != (b.d, b.width):
        raise ValueError("subspaces live in different ambient spaces")


def is_isotropic(s: Subspace) -> bool:
    """Whether the symplectic form vanishes on s (pairwise generator check)."""
    gens = s.generator_vectors()
    return all(
        symplectic_form(gens[i], gens[j]) == 0 for i in range(len(gens)) for j in range(i + 1, len(gens))
    )


def is_lagrangian(s: Subspace) -> bool:
    return s.dim == s.n and is_isotropic(s)


def complement(s: Subspace) -> Subspace:
    """Symplectic complement {v : [v, g] = 0 for all g in s}."""
    n = s.n
    constraints = [_form_row(g, n, s.d) for g in s.generators]
    return Subspace.from_rows(_nullspace(constraints, s.d, s.width), d=s.d, width=s.width)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """A ∩ B via the Zassenhaus block trick."""
    _check_same_ambient(a, b)
    w = a.width
    rows = [list(g) + list(g) for g in a.generators] + [list(g) + [0] * w for g in b.generators]
    reduced, pivots = _rref(rows, a.d)
    inter = [row[w:] for row in reduced[: len(pivots)] if not any(row[:w])]
    return Subspace.from_rows(inter, d=a.d, width=w)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return Subspace.from_rows(list(a.generators) + list(b.generators), d=a.d, width=a.width)


def is_transverse(a: Subspace, b: Subspace) -> bool:
    """Whether A ⊕ B spans the ambient space (trivial intersection, full sum)."""
    _check_same_ambient(a, b)
    return a.dim + b.dim == a.width and intersect(a, b).dim == 0


# ---------------------------------------------------------------------------
# Enumeration


def enumerate_subspaces(d: int, ambient_dim: int, k: int, *, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Subspace]:
    """Every k-dimensional subspace of Z_d^ambient_dim exactly once.

    Order: pivot-column pattern (lexicographic), then free entries
    (lexicographic, row-major). The total equals binom(ambient_dim, k)_d.
    """
    require_prime(d)
    if not 0 <= k <= ambient_dim:
        raise ValueError(f"need 0 <= k <= ambient dimension, got k={k}, ambient={ambient_dim}")
    total = gaussian_binomial(ambient_dim, k, d)
    if total > cap:
        raise ResourceCapError(f"enumeration of {total} subspaces exceeds cap {cap}")
    return _iter_subspaces(d, ambient_dim, k)


def _iter_subspaces(d: int, m: int, k: int) -> Iterator[Subspace]:
    if k == 0:
        yield Subspace.zero(d, m)
        return
    for pivots in itertools.combinations(range(m), k):
        pivot_set = set(pivots)
        free_pos = [(i, j) for i in range(k) for j in range(pivots[i] + 1, m) if j not in pivot_set]
        base = [[0] * m for _ in range(k)]
        for i, c in enumerate(pivots):
            base[i][c] = 1
        for vals in itertools.product(range(d), repeat=len(free_pos)):
            rows = [row[:] for row in base]
            for (i, j), v in zip(free_pos, vals):
                rows[i][j] = v
            yield Subspace(d, m, tuple(tuple(r) for r in rows))


def enumerate_lagrangians(d: int, n: int, *, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Subspace]:
    """Every Lagrangian subspace of Z_d^{2n} exactly once.

    Implemented as a plain isotropy filter over all n-dimensional subspaces,
    deliberately not via the extension recursion, so the two can act as
    independent witnesses for each other. The cap guards the scan size
    binom(2n, n)_d, not just the Lagrangian count.
    """
    require_prime(d)
    if n < 1:
        raise ValueError("n must be positive")
    scan = gaussian_binomial(2 * n, n, d)
    if scan > cap:
        raise ResourceCapError(f"Lagrangian enumeration scans {scan} subspaces, cap is {cap}")
    return (s for s in _iter_subspaces(d, 2 * n, n) if is_isotropic(s))


def intersection_spectrum(m_sub: Subspace, *, cap: int = DEFAULT_ENUM_CAP) -> dict[int, int]:
    """Empirical kappa: counts of Lagrangians N by dim(M ∩ N), k = 0..n."""
    if not is_lagrangian(m_sub):
        raise ValueError("intersection spectrum needs a Lagrangian reference")
    n = m_sub.n
    counts = {k: 0 for k in range(n + 1)}
    for other in enumerate_lagrangians(m_sub.d, n, cap=cap):
        counts[intersect(m_sub, other).dim] += 1
    return counts


# ---------------------------------------------------------------------------
# Reduction and extension machinery


def _complete_basis(inner: Subspace, outer: Subspace) -> list[Row]:
    """Rows of outer's generators that extend a basis of inner to one of outer."""
    added: list[Row] = []
    rank = inner.dim
    for g in outer.generators:
        rows = list(inner.generators) + added + [g]
        reduced, pivots = _rref(rows, inner.d)
        if len(pivots) > rank + len(added):
            added.append(g)
    return added


@dataclass(frozen=True)
class ReducedSpace:
    """The quotient W / (W^⊥ ∩ W) with its induced non-degenerate form.

    ``representatives`` is a basis of coset representatives in the ambient
    space; ``gram[i][j]`` is the induced form on representative pairs.
    """

    source: Subspace
    radical: Subspace
    representatives: tuple[PhaseVector, ...]
    gram: tuple[Row, ...]

    def __post_init__(self) -> None:
        d = self.source.d
        _, pivots = _rref(self.gram, d)
        if len(pivots) != len(self.representatives):
            raise ValueError("induced form is degenerate")

    @property
    def dim(self) -> int:
        return len(self.representatives)


def symplectic_reduce(w: Subspace) -> ReducedSpace:
    """Linear symplectic reduction of w."""
    radical = intersect(w, complement(w))
    rep_rows = _complete_basis(radical, w)
    n = w.n
    reps = tuple(PhaseVector(w.d, n, row) for row in rep_rows)
    gram = tuple(tuple(symplectic_form(u, v) for v in reps) for u in reps)
    return ReducedSpace(source=w, radical=radical, representatives=reps, gram=gram)


def _dual_partners(k_sub: Subspace, a_rows: Sequence[Row]) -> list[Row]:
    """Vectors b_j in K^⊥ with [a_i, b_j] = δ_ij and [b_i, b_j] = 0.

    Together with K and the a_i this is a symplectic half-basis of the
    reduction K^⊥/K adapted to the Lagrangian containing the a_i.
    """
    d, w = k_sub.d, k_sub.width
    n = k_sub.n
    m = len(a_rows)
    constraints = [_form_row(g, n, d) for g in k_sub.generators] + [_form_row(a, n, d) for a in a_rows]
    k = k_sub.dim
    rhs = [[0] * k + [1 if i == j else 0 for i in range(m)] for j in range(m)]
    solved = _solve_linear_system(constraints, rhs, d, w)
    assert all(c is not None for c in solved), "dual-partner system must be solvable"
    cs = [list(c) for c in solved]  # type: ignore[union-attr]
    a_vecs = [PhaseVector(d, n, a) for a in a_rows]
    c_vecs = [PhaseVector(d, n, tuple(c)) for c in cs]
    s = [[symplectic_form(ci, cj) for cj in c_vecs] for ci in c_vecs]
    out = []
    for i in range(m):
        b = list(cs[i])
        for l in range(i + 1, m):
            if s[i][l]:
                b = [(x - s[i][l] * y) % d for x, y in zip(b, a_rows[l])]
        out.append(tuple(b))
    b_vecs = [PhaseVector(d, n, b) for b in out]
    assert all(
        symplectic_form(a_vecs[i], b_vecs[j]) == (1 if i == j else 0) for i in range(m) for j in range(m)
    )
    assert all(symplectic_form(b_vecs[i], b_vecs[j]) == 0 for i in range(m) for j in range(m))
    return out


def extensions_through(m_sub: Subspace, k_sub: Subspace, *, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Subspace]:
    """All Lagrangians N with M ∩ N = K, for K a subspace of the Lagrangian M.

    Constructed directly through the reduction K^⊥/K: Lagrangians meeting M
    exactly in K correspond one-to-one to symmetric (n-k)x(n-k) matrices over
    Z_d, giving d^{(n-k)(n-k+1)/2} of them. This is the formula-independent
    counterpart of the filter in enumerate_lagrangians.
    """
    if not is_lagrangian(m_sub):
        raise ValueError("extensions need a Lagrangian reference")
    _check_same_ambient(m_sub, k_sub)
    if not all(m_sub.contains_coords(g) for g in k_sub.generators):
        raise ValueError("K must be contained in M")
    m = m_sub.dim - k_sub.dim
    total = m_sub.d ** (m * (m + 1) // 2)
    if total > cap:
        raise ResourceCapError(f"extension enumeration of {total} Lagrangians exceeds cap {cap}")
    return _iter_extensions(m_sub, k_sub, m)


def _iter_extensions(m_sub: Subspace, k_sub: Subspace, m: int) -> Iterator[Subspace]:
    if m == 0:
        yield m_sub
        return
    d, w = m_sub.d, m_sub.width
    a_rows = _complete_basis(k_sub, m_sub)
    b_rows = _dual_partners(k_sub, a_rows)
    upper = [(i, j) for i in range(m) for j in range(i, m)]
    for vals in itertools.product(range(d), repeat=len(upper)):
        a_mat = [[0] * m for _ in range(m)]
        for (i, j), v in zip(upper, vals):
            a_mat[i][j] = v
            a_mat[j][i] = v
        gens = [list(g) for g in k_sub.generators]
        for j in range(m):
            row = list(b_rows[j])
            for i in range(m):
                if a_mat[j][i]:
                    row = [(x + a_mat[j][i] * y) % d for x, y in zip(row, a_rows[i])]
            gens.append(row)
        yield Subspace.from_rows(gens, d=d, width=w)


def coset_representatives(m_sub: Subspace) -> Iterator[PhaseVector]:
    """Canonical representatives of V/M: all vectors vanishing on M's pivots.

    Exactly d^n of them for Lagrangian M, in lexicographic order of the free
    coordinates; the class of 0 is represented by the zero vector.
    """
    n = m_sub.n
    pivot_set = set(m_sub.pivots)
    free = [c for c in range(m_sub.width) if c not in pivot_set]
    for vals in itertools.product(range(m_sub.d), repeat=len(free)):
        coords = [0] * m_sub.width
        for c, v in zip(free, vals):
            coords[c] = v
        yield PhaseVector(m_sub.d, n, tuple(coords))


def canonical_coset_representative(m_sub: Subspace, v: PhaseVector) -> PhaseVector:
    if (v.d, 2 * v.n) != (m_sub.d, m_sub.width):
        raise ValueError("vector lives in a different space")
    return PhaseVector(v.d, v.n, m_sub.reduce_coords(v.coords))


# ---------------------------------------------------------------------------
# Graph-state correspondence


def is_graph_lagrangian(n_sub: Subspace, m_sub: Subspace) -> bool:
    """Whether N is transverse to the reference Lagrangian M.

    Exactly the transverse Lagrangians admit a generator matrix (A | I) in a
    symplectic basis adapted to M, with A symmetric; see graph_adjacency.
    """
    return is_transverse(n_sub, m_sub)


def _matrix_inverse(rows: Sequence[Sequence[int]], d: int) -> list[Row] | None:
    m = len(rows)
    cols = [[1 if i == j else 0 for i in range(m)] for j in range(m)]
    solved = _solve_linear_system(rows, cols, d, m)
    if any(c is None for c in solved):
        return None
    # solver returns columns of the inverse
    return [tuple(solved[j][i] for j in range(m)) for i in range(m)]  # type: ignore[index]


def graph_adjacency(n_sub: Subspace, m_sub: Subspace) -> tuple[Row, ...]:
    """Symmetric matrix A with N = span{ b_j + sum_i A_ji a_i }.

    (a_i) are M's canonical generators and (b_j) their symplectic duals;
    raises ValueError when N is not transverse to M.
    """
    _check_same_ambient(n_sub, m_sub)
    if not (is_lagrangian(m_sub) and is_lagrangian(n_sub)):
        raise ValueError("graph adjacency needs Lagrangian subspaces")
    d, w, n = m_sub.d, m_sub.width, m_sub.n
    a_rows = list(m_sub.generators)
    b_rows = _dual_partners(Subspace.zero(d, w), a_rows)
    basis_matrix = [[(a_rows[c][r] if c < n else b_rows[c - n][r]) for c in range(w)] for r in range(w)]
    coords = _solve_linear_system(basis_matrix, [list(g) for g in n_sub.generators], d, w)
    assert all(c is not None for c in coords), "full symplectic basis must express every vector"
    alpha = [list(c[:n]) for c in coords]  # type: ignore[index]
    beta = [list(c[n:]) for c in coords]  # type: ignore[index]
    beta_inv = _matrix_inverse(beta, d)
    if beta_inv is None:
        raise ValueError("subspace is not transverse to the reference Lagrangian")
    adj = tuple(
        tuple(sum(beta_inv[j][r] * alpha[r][i] for r in range(n)) % d for i in range(n)) for j in range(n)
    )
    assert all(adj[i][j] == adj[j][i] for i in range(n) for j in range(n)), "adjacency must be symmetric"
    return adj
