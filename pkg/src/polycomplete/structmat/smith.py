"""
Rank and invariant factors of polynomial matrices over F[s].

``rank`` runs fraction-free (Bareiss) elimination, so every intermediate entry
is a minor of the input and every division is exact. ``smith_form`` reduces
with elementary row and column operations, always pivoting on a nonzero entry
of minimal degree (ties broken row-major). ``determinantal_divisors`` is the
textbook definition, kept as an independent check of the elimination.
"""

from itertools import combinations

from loguru import logger
from sympy import Poly

from polycomplete.algebra.poly import (
    one_poly,
    poly_degree,
    poly_gcd,
    zero_poly,
)
from polycomplete.structmat.matrix import PolyMatrix


def _bareiss_rank(grid: list[list[Poly]], one: Poly) -> tuple[int, Poly]:
    """Rank of a mutable grid and the last pivot (a maximal nonzero minor)."""
    m = len(grid)
    n = len(grid[0]) if grid else 0
    rank = 0
    prev = one
    zero = one - one
    for col in range(n):
        pivot = next((i for i in range(rank, m) if not grid[i][col].is_zero), None)
        if pivot is None:
            continue
        grid[rank], grid[pivot] = grid[pivot], grid[rank]
        head = grid[rank]
        for i in range(rank + 1, m):
            row = grid[i]
            for j in range(col + 1, n):
                row[j] = (head[col] * row[j] - row[col] * head[j]).exquo(prev)
            row[col] = zero
        prev = head[col]
        rank += 1
        if rank == m:
            break
    return rank, prev


def rank(P: PolyMatrix) -> int:
    """Normal rank of ``P`` over the rational function field F(s)."""
    grid = [list(row) for row in P.entries]
    return _bareiss_rank(grid, one_poly(P.field))[0]


def determinant(block: list[list[Poly]], one: Poly) -> Poly:
    """Determinant of a square polynomial block by fraction-free elimination."""
    size = len(block)
    grid = [list(row) for row in block]
    sign = 1
    prev = one
    for k in range(size):
        pivot = next((i for i in range(k, size) if not grid[i][k].is_zero), None)
        if pivot is None:
            return one - one
        if pivot != k:
            grid[k], grid[pivot] = grid[pivot], grid[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                grid[i][j] = (grid[k][k] * grid[i][j] - grid[i][k] * grid[k][j]).exquo(prev)
        prev = grid[k][k]
    return prev if sign > 0 else -prev


def smith_form(P: PolyMatrix) -> tuple[Poly, ...]:
    """
    Invariant factors ``alpha_1 | ... | alpha_r`` of ``P``, all monic.

    Args:
        P: The polynomial matrix.

    Returns:
        A tuple of ``rank(P)`` monic polynomials forming a divisibility chain.
    """
    A = [list(row) for row in P.entries]
    m, n = P.rows, P.cols
    invariants: list[Poly] = []

    def min_degree_entry(cells):
        best = None
        for i, j in cells:
            entry = A[i][j]
            if entry.is_zero:
                continue
            if best is None or poly_degree(entry) < poly_degree(A[best[0]][best[1]]):
                best = (i, j)
        return best

    def move_to(t: int, pos: tuple[int, int]) -> None:
        i, j = pos
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]

    for t in range(min(m, n)):
        pos = min_degree_entry((i, j) for i in range(t, m) for j in range(t, n))
        if pos is None:
            break
        move_to(t, pos)

        while True:
            pivot = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t].is_zero:
                    continue
                q, rem = A[i][t].div(pivot)
                A[i] = [a - q * b for a, b in zip(A[i], A[t], strict=True)]
                clean = clean and rem.is_zero
            for j in range(t + 1, n):
                if A[t][j].is_zero:
                    continue
                q, rem = A[t][j].div(pivot)
                for row in A:
                    row[j] = row[j] - q * row[t]
                clean = clean and rem.is_zero

            if not clean:
                # a remainder of smaller degree appeared in row t or column t
                cells = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
                move_to(t, min_degree_entry(cells))
                continue

            offender = next(
                (
                    i
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if not A[i][j].rem(pivot).is_zero
                ),
                None,
            )
            if offender is None:
                break
            # pull the offending row into row t; its remainders lower the pivot degree
            A[t] = [a + b for a, b in zip(A[t], A[offender], strict=True)]

        logger.debug("Smith pivot {}: {}", t + 1, A[t][t].as_expr())
        invariants.append(A[t][t].monic())

    return tuple(invariants)


def determinantal_divisors(P: PolyMatrix) -> tuple[Poly, ...]:
    """Monic gcds ``D_1, ..., D_r`` of all k x k minors, for k up to the rank."""
    one = one_poly(P.field)
    divisors: list[Poly] = []
    for k in range(1, min(P.rows, P.cols) + 1):
        g = zero_poly(P.field)
        for rows in combinations(range(P.rows), k):
            for cols in combinations(range(P.cols), k):
                minor = determinant([[P.entries[i][j] for j in cols] for i in rows], one)
                if not minor.is_zero:
                    g = poly_gcd(g, minor)
        if g.is_zero:
            break
        divisors.append(g)
    return tuple(divisors)


def invariant_factors_from_divisors(P: PolyMatrix) -> tuple[Poly, ...]:
    """Invariant factors by the quotient rule ``alpha_k = D_k / D_{k-1}``."""
    divisors = (one_poly(P.field),) + determinantal_divisors(P)
    return tuple(
        divisors[k].exquo(divisors[k - 1]).monic() for k in range(1, len(divisors))
    )
