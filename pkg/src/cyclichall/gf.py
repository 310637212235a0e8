"""Dense linear algebra over prime fields F_p, sized for desk-scale counting.

Matrices are tuples of row tuples with entries reduced mod p.  Everything is
exact; p is assumed prime (callers pass actual primes).  The subspace
enumerator yields each subspace of F_p^d exactly once via reduced row
echelon forms.
"""

from __future__ import annotations

from itertools import combinations, product


def mat_zero(rows: int, cols: int):
    return tuple((0,) * cols for _ in range(rows))


def mat_identity(d: int):
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(A, B, p: int):
    """A (r x m) times B (m x c) mod p."""
    if A and B:
        assert len(A[0]) == len(B), "shape mismatch"
    cols = len(B[0]) if B else 0
    Bt = tuple(zip(*B)) if B else ()
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) % p for col in Bt) for row in A
    )


def mat_add(A, B, p: int):
    return tuple(
        tuple((a + b) % p for a, b in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def mat_scale(c: int, A, p: int):
    return tuple(tuple((c * a) % p for a in row) for row in A)


def rref(A, p: int):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in A]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(A, p: int) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A, p)[0])


def is_invertible(A, p: int) -> bool:
    d = len(A)
    return d == 0 or (len(A[0]) == d and rank(A, p) == d)


def nullspace(A, p: int):
    """Basis of the right kernel of A (rows are basis vectors)."""
    if not A:
        return ()
    ncols = len(A[0])
    R, pivots = rref(A, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-R[r][fc]) % p
        basis.append(tuple(v))
    return tuple(basis)


def in_rowspace(vec, R, pivots, p: int) -> bool:
    """Membership of vec in the row space given by an rref (R, pivots)."""
    v = list(vec)
    for r, pc in enumerate(pivots):
        if v[pc]:
            f = v[pc]
            v = [(x - f * y) % p for x, y in zip(v, R[r])]
    return not any(v)


def reduce_mod_rowspace(vec, R, pivots, p: int):
    """Normal form of vec modulo the row space: pivot coordinates cleared."""
    v = list(vec)
    for r, pc in enumerate(pivots):
        if v[pc]:
            f = v[pc]
            v = [(x - f * y) % p for x, y in zip(v, R[r])]
    return tuple(v)


def subspaces(d: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^d, one rref basis each.

    Yields (rows, pivots) pairs.  Free entries sit to the right of their
    pivot in non-pivot columns, so distinct fillings give distinct subspaces.
    """
    if k == 0:
        yield (), ()
        return
    if k > d:
        return
    for pivots in combinations(range(d), k):
        free_pos = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, d)
            if c not in pivots
        ]
        for filling in product(range(p), repeat=len(free_pos)):
            rows = [[0] * d for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), val in zip(free_pos, filling):
                rows[r][c] = val
            yield tuple(tuple(r) for r in rows), tuple(pivots)


def gaussian_binomial(d: int, k: int, q: int) -> int:
    """Number of k-subspaces of F_q^d."""
    if k < 0 or k > d:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def gl_order(m: int, q: int) -> int:
    """|GL_m(F_q)|."""
    out = 1
    for k in range(m):
        out *= q**m - q**k
    return out
