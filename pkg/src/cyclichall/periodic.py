"""Periodic integer matrices and vectors for the cyclic quiver with n vertices.

A periodic vector repeats a window of n integers; a periodic matrix
(a_{i,j})_{i,j in Z} satisfies a_{i+n,j+n} = a_{i,j} and has finitely many
nonzero entries in each row and column line.  We store one period: row
indices are normalised into [1, n], column indices run over Z.

The module supplies the combinatorial statistics attached to these objects:
the Euler form of the cyclic quiver, dimension vectors of upper-triangular
matrices (read as multisets of segment modules), row/column sums, the
quadrant partial order, the hook counts sigma_{i,j}, and the splitting of an
off-diagonal matrix into its upper and lower parts.
"""

from __future__ import annotations

from itertools import product


class PeriodicVec:
    """Z-periodic integer vector, stored as its window (entries 1..n)."""

    __slots__ = ("window",)

    def __init__(self, window):
        self.window = tuple(int(x) for x in window)
        if not self.window:
            raise ValueError("window must be nonempty")

    @property
    def n(self) -> int:
        return len(self.window)

    def __getitem__(self, i: int) -> int:
        return self.window[(i - 1) % len(self.window)]

    def __iter__(self):
        return iter(self.window)

    def __len__(self):
        return len(self.window)

    def __eq__(self, other):
        return isinstance(other, PeriodicVec) and self.window == other.window

    def __hash__(self):
        return hash(self.window)

    def __add__(self, other):
        return PeriodicVec(a + b for a, b in zip(self.window, other.window))

    def __sub__(self, other):
        return PeriodicVec(a - b for a, b in zip(self.window, other.window))

    def __neg__(self):
        return PeriodicVec(-a for a in self.window)

    def __mul__(self, k: int):
        return PeriodicVec(k * a for a in self.window)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.window)

    def is_nonneg(self) -> bool:
        return all(a >= 0 for a in self.window)

    def sigma(self) -> int:
        """Sum of one period."""
        return sum(self.window)

    def __repr__(self):
        return f"PeriodicVec{self.window}"


def zero_vec(n: int) -> PeriodicVec:
    return PeriodicVec((0,) * n)


def unit_vec(n: int, i: int) -> PeriodicVec:
    """The vector e_i (periodically extended)."""
    w = [0] * n
    w[(i - 1) % n] = 1
    return PeriodicVec(w)


def euler_form(lam: PeriodicVec, mu: PeriodicVec) -> int:
    """<lam, mu> = sum lam_i mu_i - sum lam_i mu_{i+1}, one period."""
    n = lam.n
    return sum(lam[i] * mu[i] - lam[i] * mu[i + 1] for i in range(1, n + 1))


def dot(lam: PeriodicVec, mu: PeriodicVec) -> int:
    return sum(a * b for a, b in zip(lam.window, mu.window))


class PeriodicMat:
    """Z x Z periodic integer matrix with finite support, one period stored.

    Entries are a map (i, j) -> a_{i,j} with i in [1, n]; the full matrix is
    recovered through a_{i+n, j+n} = a_{i,j}.  Instances are immutable and
    hashable, so they can serve as basis keys.
    """

    __slots__ = ("n", "entries", "_hash")

    def __init__(self, n: int, entries=None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        norm: dict[tuple[int, int], int] = {}
        if entries:
            for (i, j), a in entries.items() if isinstance(entries, dict) else entries:
                if a == 0:
                    continue
                r = (i - 1) % n + 1
                c = j - (i - r)
                norm[(r, c)] = norm.get((r, c), 0) + a
        self.entries = {k: a for k, a in sorted(norm.items()) if a != 0}
        self._hash = hash((n, tuple(self.entries.items())))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        r = (i - 1) % self.n + 1
        return self.entries.get((r, j - (i - r)), 0)

    def __eq__(self, other):
        return (
            isinstance(other, PeriodicMat)
            and self.n == other.n
            and self.entries == other.entries
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        # arbitrary deterministic order, used only for stable iteration
        return (self.n, sorted(self.entries.items())) < (
            other.n,
            sorted(other.entries.items()),
        )

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("period mismatch")
        out = dict(self.entries)
        for k, a in other.entries.items():
            out[k] = out.get(k, 0) + a
        return PeriodicMat(self.n, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, k: int):
        return PeriodicMat(self.n, {key: k * a for key, a in self.entries.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.entries

    def is_nonneg(self) -> bool:
        return all(a >= 0 for a in self.entries.values())

    def is_upper(self) -> bool:
        return all(i < j for (i, j) in self.entries)

    def is_lower(self) -> bool:
        return all(i > j for (i, j) in self.entries)

    def is_offdiag(self) -> bool:
        return all(i != j for (i, j) in self.entries)

    def spread(self) -> int:
        return max((abs(j - i) for (i, j) in self.entries), default=0)

    def sigma(self) -> int:
        """Total sum of one row period: sum_{1<=i<=n, j in Z} a_{i,j}."""
        return sum(self.entries.values())

    def key(self):
        """Canonical hashable key (n plus sorted entries)."""
        return (self.n, tuple(self.entries.items()))

    def __repr__(self):
        inner = ", ".join(f"({i},{j}):{a}" for (i, j), a in self.entries.items())
        return f"PeriodicMat(n={self.n}, {{{inner}}})"


def zero_mat(n: int) -> PeriodicMat:
    return PeriodicMat(n)


def E(n: int, i: int, j: int) -> PeriodicMat:
    """The periodic elementary matrix with 1 at (i + sn, j + sn)."""
    return PeriodicMat(n, {(i, j): 1})


def diag(lam: PeriodicVec) -> PeriodicMat:
    return PeriodicMat(lam.n, {(i, i): lam[i] for i in range(1, lam.n + 1)})


def from_diagonal_and_offdiag(off: PeriodicMat, lam: PeriodicVec) -> PeriodicMat:
    return off + diag(lam)


def diagonal_part(A: PeriodicMat) -> PeriodicVec:
    return PeriodicVec(tuple(A[(i, i)] for i in range(1, A.n + 1)))


def offdiag_part(A: PeriodicMat) -> PeriodicMat:
    return PeriodicMat(A.n, {(i, j): a for (i, j), a in A.entries.items() if i != j})


def semisimple_mat(lam: PeriodicVec) -> PeriodicMat:
    """sum_i lam_i E_{i,i+1}: the multiset of lam_i simple segments at i."""
    return PeriodicMat(lam.n, {(i, i + 1): lam[i] for i in range(1, lam.n + 1)})


def dim_vector(A: PeriodicMat) -> PeriodicVec:
    """Dimension vector of the segment multiset A (upper variant).

    Window entry at i counts segment copies (s, t) with s <= i < t, summed
    over all periodic translates.
    """
    if not A.is_upper():
        raise ValueError("dimension vector requires an upper-triangular matrix")
    n = A.n
    win = [0] * n
    for (s, t), a in A.entries.items():
        for i in range(1, n + 1):
            # translates (s + cn, t + cn) with s + cn <= i < t + cn
            count = (i - s) // n - (i - t) // n
            win[i - 1] += a * count
    return PeriodicVec(win)


def dim_total(A: PeriodicMat) -> int:
    """Total dimension of the segment multiset: sum a_{i,j} (j - i)."""
    if not A.is_upper():
        raise ValueError("total dimension requires an upper-triangular matrix")
    return sum(a * (j - i) for (i, j), a in A.entries.items())


def row_sums(A: PeriodicMat) -> PeriodicVec:
    return PeriodicVec(
        tuple(
            sum(a for (i, j), a in A.entries.items() if i == r)
            for r in range(1, A.n + 1)
        )
    )


def col_sums(A: PeriodicMat) -> PeriodicVec:
    win = [0] * A.n
    for (i, j), a in A.entries.items():
        win[(j - 1) % A.n] += a
    return PeriodicVec(win)


def ro_co(A: PeriodicMat) -> tuple[PeriodicVec, PeriodicVec]:
    return row_sums(A), col_sums(A)


def plus_degree(A: PeriodicMat) -> PeriodicVec:
    """Degree of the raising generator attached to A: ro(A) - co(A)."""
    return row_sums(A) - col_sums(A)


def sigma_hook(A: PeriodicMat, i: int, j: int) -> int:
    """Quadrant count sigma_{i,j}: entries with s<=i, t>=j (i<j) or s>=i, t<=j (i>j)."""
    if i == j:
        raise ValueError("sigma hook requires i != j")
    total = 0
    n = A.n
    if i < j:
        for (s, t), a in A.entries.items():
            # translates with s + cn <= i and t + cn >= j
            hi = (i - s) // n
            lo = -((t - j) // n)  # smallest c with t + cn >= j
            if hi >= lo:
                total += a * (hi - lo + 1)
    else:
        for (s, t), a in A.entries.items():
            # translates with s + cn >= i and t + cn <= j
            lo = -((s - i) // n)
            hi = (j - t) // n
            if hi >= lo:
                total += a * (hi - lo + 1)
    return total


def sigma_i(A: PeriodicMat, i: int) -> int:
    """sigma_i(A) = sum_{j<i} (a_{i,j} + a_{j,i}) over the full matrix."""
    n = A.n
    total = 0
    for (s, t), a in A.entries.items():
        if s == t:
            continue
        # translates with row s + cn == i (mod nothing: actual equality)
        if (i - s) % n == 0 and t + (i - s) < i:
            total += a
        # translates with column t + cn == i and row above
        if (i - t) % n == 0 and s + (i - t) < i:
            total += a
    return total


def sigma_i_vec(A: PeriodicMat) -> PeriodicVec:
    return PeriodicVec(tuple(sigma_i(A, i) for i in range(1, A.n + 1)))


LESS, EQUAL, GREATER, INCOMPARABLE = "less", "equal", "greater", "incomparable"


def order_compare(B: PeriodicMat, A: PeriodicMat) -> str:
    """Compare B against A in the quadrant order.

    Returns "less" when B strictly precedes A (all hooks <=, some strict),
    "equal", "greater", or "incomparable".  Hooks agree outside a window
    around the union of supports, so only finitely many pairs are inspected.
    """
    if B.n != A.n:
        raise ValueError("period mismatch")
    n = A.n
    reach = max(A.spread(), B.spread()) + n
    le, ge = True, True
    strict_lt = strict_gt = False
    for i in range(1, n + 1):
        for j in range(i - reach, i + reach + 1):
            if i == j:
                continue
            sb, sa = sigma_hook(B, i, j), sigma_hook(A, i, j)
            if sb < sa:
                ge = False
                strict_lt = True
            elif sb > sa:
                le = False
                strict_gt = True
    if le and ge:
        return EQUAL
    if le and strict_lt:
        return LESS
    if ge and strict_gt:
        return GREATER
    return INCOMPARABLE


def strictly_below(B: PeriodicMat, A: PeriodicMat) -> bool:
    return order_compare(B, A) == LESS


def m_st(n: int, s: int, t: int) -> int:
    """The winding count floor((t - s - 1)/n), with the diagonal set to 0."""
    if s == t:
        return 0
    if s > t:
        raise ValueError("requires s <= t")
    return (t - s - 1) // n


def segment_dim(n: int, s: int, t: int) -> PeriodicVec:
    """Dimension vector of the single segment (s, t), s < t."""
    win = [0] * n
    for u in range(s, t):
        win[(u - 1) % n] += 1
    return PeriodicVec(win)


def segment_dim_or_zero(n: int, s: int, t: int) -> PeriodicVec:
    """Like segment_dim, but the degenerate case s == t gives the zero vector."""
    if s == t:
        return zero_vec(n)
    return segment_dim(n, s, t)


def split_offdiag(A: PeriodicMat) -> tuple[PeriodicMat, PeriodicMat]:
    """Split an off-diagonal matrix into (upper, lower) parts."""
    if not A.is_offdiag():
        raise ValueError("matrix has diagonal entries")
    up = {k: a for k, a in A.entries.items() if k[0] < k[1]}
    lo = {k: a for k, a in A.entries.items() if k[0] > k[1]}
    return PeriodicMat(A.n, up), PeriodicMat(A.n, lo)


def transpose(A: PeriodicMat) -> PeriodicMat:
    return PeriodicMat(A.n, {(j, i): a for (i, j), a in A.entries.items()})


def k_tilde_reduce(nu: PeriodicVec) -> PeriodicVec:
    """Normalise a torus exponent using the relation K_1...K_n-cancellation: subtract nu_n * (1,...,1)."""
    last = nu[nu.n]
    return PeriodicVec(tuple(x - last for x in nu.window))


def compositions(n: int, total: int):
    """All vectors in N^n with entry sum `total`, lexicographic order."""
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(n - 1, total - first):
            yield (first,) + rest


def lambda_set(n: int, r: int) -> list[PeriodicVec]:
    """All nonnegative periodic vectors with period sum r."""
    return [PeriodicVec(w) for w in compositions(n, r)]


def vec_box(n: int, lo: int, hi: int):
    """All periodic vectors with window entries in [lo, hi]."""
    for w in product(range(lo, hi + 1), repeat=n):
        yield PeriodicVec(w)
