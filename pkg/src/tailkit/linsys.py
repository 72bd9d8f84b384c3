"""Homogeneous integer systems A x = 0 and their solution hypergraphs.

All linear algebra is exact: determinants and ranks use fraction-free
(Bareiss) elimination over Python integers, and the per-point solve uses the
integer adjugate of a fixed nonsingular l x l block.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from pathlib import Path

import numpy as np

from . import config
from .errors import ConsistencyError, InfeasibleError, ValidationError
from .hypergraph import Hypergraph, expected_count


def bareiss_rank(rows):
    """Rank of an integer matrix via fraction-free elimination."""
    M = [list(map(int, r)) for r in rows]
    if not M or not M[0]:
        return 0
    n_rows, n_cols = len(M), len(M[0])
    rank, prev = 0, 1
    for col in range(n_cols):
        piv = next((i for i in range(rank, n_rows) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(rank + 1, n_rows):
            for j in range(col + 1, n_cols):
                M[i][j] = (M[i][j] * M[rank][col] - M[i][col] * M[rank][j]) // prev
            M[i][col] = 0
        prev = M[rank][col]
        rank += 1
        if rank == n_rows:
            break
    return rank


def bareiss_det(rows):
    """Determinant of a square integer matrix via fraction-free elimination."""
    M = [list(map(int, r)) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _adjugate(B):
    n = len(B)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(B) if r != i]
            adj[j][i] = (-1) ** (i + j) * bareiss_det(minor)
    return adj


@dataclass(frozen=True)
class LinearSystem:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.entries)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValidationError("matrix must be a nonempty rectangle")
        if len(rows) >= len(rows[0]):
            raise ValidationError(f"need l < k, got {len(rows)}x{len(rows[0])}")
        if bareiss_rank(rows) != len(rows):
            raise ValidationError("matrix does not have full row rank")
        object.__setattr__(self, "entries", rows)

    @property
    def l(self):
        return len(self.entries)

    @property
    def k(self):
        return len(self.entries[0])

    @property
    def q(self):
        return self.k - self.l

    def columns(self, cols):
        return [[row[c] for c in cols] for row in self.entries]

    def without_columns(self, J):
        keep = [c for c in range(self.k) if c not in set(J)]
        return self.columns(keep)


def parse_matrix(text):
    rows = [
        [int(tok) for tok in line.split()]
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows or len(rows[0]) != 2:
        raise ValueError("matrix file must start with a line 'l k'")
    (l, k), body = rows[0], rows[1:]
    if len(body) != l or any(len(r) != k for r in body):
        raise ValueError(f"expected {l} rows of {k} integers")
    return LinearSystem(tuple(map(tuple, body)))


def read_matrix(path):
    return parse_matrix(Path(path).read_text())


def check_full_rank_condition(A):
    """True iff every l x l column selection of A is nonsingular."""
    return all(bareiss_det(A.columns(cols)) != 0
               for cols in combinations(range(A.k), A.l))


def standard_system(name, k=3):
    if name == "schur":
        if k != 3:
            raise ValueError("the Schur system has k = 3")
        return LinearSystem(((1, 1, -1),))
    if name == "ap":
        if k < 3:
            raise ValueError("arithmetic progressions need k >= 3")
        rows = []
        for i in range(k - 2):
            row = [0] * k
            row[i], row[i + 1], row[i + 2] = 1, -2, 1
            rows.append(tuple(row))
        return LinearSystem(tuple(rows))
    raise ValueError(f"unknown system {name!r}")


def _require_valid(A):
    if not check_full_rank_condition(A):
        raise ValidationError("some l x l submatrix of A is singular")


@lru_cache(maxsize=128)
def _solution_sets(A, N, max_grid):
    _require_valid(A)
    l, k, q = A.l, A.k, A.q
    if N < k:
        return ()
    config.check_guard(N**q, max_grid, "free-coordinate grid N^q")
    pivot = A.columns(range(l))
    free = np.array(A.columns(range(l, k)), dtype=np.int64)
    det = bareiss_det(pivot)
    adj = np.array(_adjugate(pivot), dtype=np.int64)
    # pivot x_L = -free x_F  =>  det * x_L = -adj @ free @ x_F
    coef = -(adj @ free)
    bound = int(np.abs(coef).sum()) * N
    if bound >= 2**62:
        raise ValidationError("coefficients too large for the vectorized solve")
    found = set()
    axis = np.arange(1, N + 1, dtype=np.int64)
    # chunk over the first free coordinate to bound memory
    for first in range(1, N + 1):
        if q == 1:
            grid = np.array([[first]], dtype=np.int64)
        else:
            rest = np.stack(np.meshgrid(*([axis] * (q - 1)), indexing="ij"), -1)
            rest = rest.reshape(-1, q - 1)
            grid = np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest])
        numer = grid @ coef.T
        ok = np.all(numer % det == 0, axis=1)
        lead = numer[ok] // det
        sol = np.hstack([lead, grid[ok]])
        inrange = np.all((sol >= 1) & (sol <= N), axis=1)
        sol = np.sort(sol[inrange], axis=1)
        distinct = np.all(np.diff(sol, axis=1) != 0, axis=1)
        found.update(map(tuple, sol[distinct].tolist()))
    return tuple(sorted(found))


def enumerate_solution_sets(A, N, max_grid=None):
    """All k-sets {x_1..x_k} in [N] that are value sets of distinct-valued solutions."""
    limit = config.SOLUTION_GRID_MAX if max_grid is None else max_grid
    return _solution_sets(A, N, limit)


def solution_hypergraph(A, N, max_grid=None):
    return Hypergraph(N, A.k, enumerate_solution_sets(A, N, max_grid))


def solution_density(A, N):
    """a(N) = |H_A(N)| / N^q."""
    return len(enumerate_solution_sets(A, N)) / N**A.q


def prefix_certificate(A, N, p, t):
    """Smallest prefix [1..m] whose solution hypergraph holds at least t*mu edges."""
    H = solution_hypergraph(A, N)
    need = t * expected_count(H, p)
    if need > len(H):
        raise InfeasibleError(f"t*mu = {need} exceeds |H_A(N)| = {len(H)}")
    sizes = range(0, N + 1)
    m = bisect.bisect_left(sizes, True,
                           key=lambda m: len(enumerate_solution_sets(A, m)) >= need)
    if m > N:
        return None
    return frozenset(range(1, m + 1))


def density_floor(A, N):
    """min over k <= m <= N of a(m), the measured constant behind prefix sizes."""
    if N < A.k:
        raise ValidationError(f"need N >= k = {A.k}")
    return min(solution_density(A, m) for m in range(A.k, N + 1))


def analytic_prefix_size(a0, t, mu, q, N):
    """The closed-form prefix length min(ceil((t mu / a0)^(1/q)), N)."""
    return min(math.ceil((t * mu / a0) ** (1 / q)), N)


def theoretical_delta_bound(A, j, N):
    """sum over j-column sets J of N^(k - j - rank(A_J))."""
    _require_valid(A)
    if not 0 <= j <= A.k:
        raise ValueError(f"j must lie in [0, {A.k}]")
    total = 0
    for J in combinations(range(A.k), j):
        r = bareiss_rank(A.without_columns(J)) if j < A.k else 0
        if r != (A.l if j <= A.q else A.k - j):
            raise ConsistencyError(f"unexpected rank {r} after deleting columns {J}")
        total += N ** (A.k - j - r)
    return total


def brute_force_solution_sets(A, N):
    """Reference enumeration over all ordered k-tuples; for tests only."""
    found = set()
    for x in product(range(1, N + 1), repeat=A.k):
        if len(set(x)) != A.k:
            continue
        if all(sum(a * v for a, v in zip(row, x)) == 0 for row in A.entries):
            found.add(tuple(sorted(x)))
    return tuple(sorted(found))
