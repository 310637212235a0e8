"""Brute-force oracle for nilpotent representations of the cyclic quiver.

A representation over F_p assigns a vector space to each of the n vertices
and a matrix to each arrow i -> i+1.  Isomorphism classes are multisets of
segment modules, encoded as upper-triangular periodic matrices: the entry at
(i, j) is the multiplicity of the uniserial segment of length j - i whose
top sits at vertex i.

The oracle builds representations, recognises isomorphism types through
path-map ranks, counts submodules with prescribed sub/quotient types by
exhaustive enumeration of arrow-stable graded subspaces, counts graded
automorphisms, and interpolates the resulting counting functions to integer
polynomials in q with verification points beyond the fitted degree.
"""

from __future__ import annotations

from itertools import product

from . import cache as _cache
from .gf import (
    gl_order,
    in_rowspace,
    nullspace,
    rank,
    reduce_mod_rowspace,
    subspaces,
)
from .laurent import NonIntegerCoefficients, VerificationFailed, interpolate
from .periodic import (
    PeriodicMat,
    PeriodicVec,
    dim_total,
    dim_vector,
    segment_dim,
    zero_mat,
)

# Desk-scale guards: exhaustive counting is exponential in these.
MAX_COUNT_DIM = 6
MAX_COUNT_PRIME = 61
# Largest elementwise automorphism search, measured in (field size)^(End dim)
# times the cost of one invertibility test.
AUT_ELEMENTWISE_COST_CAP = 2_000_000

_PRIMES = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
]


class ScaleExceeded(RuntimeError):
    """Requested computation is beyond the configured desk-scale bounds."""


class NotNilpotent(ValueError):
    """Representation is not nilpotent (long path maps do not vanish)."""


class FieldDependentDimension(RuntimeError):
    """Hom-space dimensions disagreed between two primes (an engine bug)."""


def first_primes(k: int) -> list[int]:
    if k > len(_PRIMES):
        raise ScaleExceeded(f"prime table exhausted (need {k})")
    return _PRIMES[:k]


class FiniteFieldRep:
    """Graded representation over F_p: dims per vertex plus one matrix per arrow.

    maps[w] has shape dims[w+1] x dims[w] (vertex indices mod n, 0-based
    storage) and sends vertex w+1's space... coordinates act on the left:
    column index = source basis vector.
    """

    __slots__ = ("p", "dims", "maps")

    def __init__(self, p: int, dims, maps):
        self.p = p
        self.dims = tuple(dims)
        self.maps = tuple(tuple(tuple(r) for r in m) for m in maps)
        n = len(self.dims)
        for w in range(n):
            tgt = self.dims[(w + 1) % n]
            src = self.dims[w]
            m = self.maps[w]
            if len(m) != tgt or any(len(row) != src for row in m):
                raise ValueError("arrow matrix shape mismatch")

    @property
    def n(self) -> int:
        return len(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims)

    def apply(self, w: int, vec):
        """Image of a vertex-w vector under the arrow map out of w (1-based w)."""
        m = self.maps[(w - 1) % self.n]
        return tuple(sum(a * x for a, x in zip(row, vec)) % self.p for row in m)


def build_rep(A: PeriodicMat, p: int, max_dim: int | None = None) -> FiniteFieldRep:
    """Realise the segment multiset A over F_p in a fixed ordered basis."""
    if not (A.is_upper() and A.is_nonneg()):
        raise ValueError("segment multiset must be upper-triangular nonnegative")
    n = A.n
    total = dim_total(A)
    if total > (max_dim if max_dim is not None else MAX_COUNT_DIM + 2):
        raise ScaleExceeded(f"total dimension {total} beyond configured bound")
    # basis vectors are (s, t, copy, position); position u lives at vertex u mod n
    by_vertex: list[list[tuple]] = [[] for _ in range(n)]
    for (s, t), a in sorted(A.entries.items()):
        for c in range(a):
            for u in range(s, t):
                by_vertex[(u - 1) % n].append((s, t, c, u))
    index = {}
    for w in range(n):
        by_vertex[w].sort()
        for k, key in enumerate(by_vertex[w]):
            index[key] = k
    dims = [len(by_vertex[w]) for w in range(n)]
    maps = []
    for w in range(n):
        tgt = (w + 1) % n
        m = [[0] * dims[w] for _ in range(dims[tgt])]
        for key in by_vertex[w]:
            s, t, c, u = key
            if u + 1 < t:
                m[index[(s, t, c, u + 1)]][index[key]] = 1
        maps.append(m)
    return FiniteFieldRep(p, dims, maps)


def _path_ranks(rep: FiniteFieldRep, max_len: int):
    """rho[i][l] = rank of the length-l path map out of vertex i, l = 0..max_len."""
    n, p = rep.n, rep.p
    rho = []
    for i in range(1, n + 1):
        d = rep.dims[i - 1]
        vecs = [
            tuple(1 if k == j else 0 for k in range(d)) for j in range(d)
        ]
        row = [d]
        for l in range(1, max_len + 1):
            vertex = i + l - 1
            vecs = [rep.apply(vertex, v) for v in vecs]
            row.append(rank(tuple(vecs), p) if vecs else 0)
        rho.append(row)
    return rho


def iso_type(rep: FiniteFieldRep) -> PeriodicMat:
    """The unique segment multiset isomorphic to rep.

    Multiplicities are solved from path-map ranks; the solved form is
    a_{s, s+L} = (rho(s, L-1) - rho(s, L)) - (rho(s-1, L) - rho(s-1, L+1)).
    """
    n = rep.n
    D = rep.total_dim()
    if D == 0:
        return zero_mat(n)
    rho = _path_ranks(rep, D + 1)
    if any(rho[i][D] for i in range(n)):
        raise NotNilpotent("a length-D path map is nonzero")
    entries = {}
    for s in range(1, n + 1):
        prev = (s - 2) % n  # vertex s-1, 0-based
        for L in range(1, D + 1):
            a = (rho[s - 1][L - 1] - rho[s - 1][L]) - (rho[prev][L] - rho[prev][L + 1])
            if a < 0:
                raise NotNilpotent("rank profile is not a segment multiset")
            if a:
                entries[(s, s + L)] = a
    out = PeriodicMat(n, entries)
    if tuple(dim_vector(out)) != rep.dims:
        raise NotNilpotent("recognised type does not match graded dimensions")
    return out


_rep_isotype_memo: dict = {}


def _iso_type_cached(p: int, dims, maps) -> PeriodicMat:
    key = (p, tuple(dims), tuple(tuple(tuple(r) for r in m) for m in maps))
    hit = _rep_isotype_memo.get(key)
    if hit is None:
        hit = iso_type(FiniteFieldRep(p, key[1], key[2]))
        _rep_isotype_memo[key] = hit
    return hit


def _sub_quot_types(rep: FiniteFieldRep, U):
    """Iso types of the submodule spanned by U and of the quotient by it.

    U is a tuple of (rref rows, pivots) per vertex; assumed arrow-stable.
    """
    n, p = rep.n, rep.p
    sub_dims = [len(U[w][0]) for w in range(n)]
    quot_dims = [rep.dims[w] - sub_dims[w] for w in range(n)]
    sub_maps, quot_maps = [], []
    for w in range(n):
        tgt = (w + 1) % n
        rows_t, piv_t = U[tgt]
        m_sub = [[0] * sub_dims[w] for _ in range(sub_dims[tgt])]
        for col, u in enumerate(U[w][0]):
            img = rep.apply(w + 1, u)
            for r, pc in enumerate(piv_t):
                m_sub[r][col] = img[pc]
        sub_maps.append(m_sub)
        nonpiv_w = [c for c in range(rep.dims[w]) if c not in U[w][1]]
        nonpiv_t = [c for c in range(rep.dims[tgt]) if c not in piv_t]
        m_quot = [[0] * quot_dims[w] for _ in range(quot_dims[tgt])]
        for col, c in enumerate(nonpiv_w):
            e = tuple(1 if k == c else 0 for k in range(rep.dims[w]))
            img = reduce_mod_rowspace(rep.apply(w + 1, e), rows_t, piv_t, p)
            for r, cc in enumerate(nonpiv_t):
                m_quot[r][col] = img[cc]
        quot_maps.append(m_quot)
    return (
        _iso_type_cached(p, quot_dims, quot_maps),
        _iso_type_cached(p, sub_dims, sub_maps),
    )


_classify_memo: dict = {}


def classify_submodules(C: PeriodicMat, p: int, max_dim: int | None = None):
    """Count all arrow-stable graded subspaces of the realisation of C,
    binned by (quotient type, submodule type).

    Returns a dict {(quotient, sub): count}.  One enumeration serves every
    type pair, so callers fetch many counting values per pass.
    """
    memo_key = (C.key(), p)
    hit = _classify_memo.get(memo_key)
    if hit is not None:
        return hit
    bound = max_dim if max_dim is not None else MAX_COUNT_DIM
    if dim_total(C) > bound:
        raise ScaleExceeded(f"dim {dim_total(C)} > {bound} for submodule counting")
    if p > MAX_COUNT_PRIME:
        raise ScaleExceeded(f"prime {p} > {MAX_COUNT_PRIME} for submodule counting")
    rep = build_rep(C, p, max_dim=bound)
    n = rep.n
    counts: dict = {}
    per_vertex = [
        [list(subspaces(rep.dims[w], k, p)) for k in range(rep.dims[w] + 1)]
        for w in range(n)
    ]
    for ks in product(*(range(rep.dims[w] + 1) for w in range(n))):
        for U in product(*(per_vertex[w][ks[w]] for w in range(n))):
            stable = True
            for w in range(n):
                rows_t, piv_t = U[(w + 1) % n]
                for u in U[w][0]:
                    if not in_rowspace(rep.apply(w + 1, u), rows_t, piv_t, p):
                        stable = False
                        break
                if not stable:
                    break
            if not stable:
                continue
            key = _sub_quot_types(rep, U)
            counts[key] = counts.get(key, 0) + 1
    _classify_memo[memo_key] = counts
    return counts


def count_submodules(
    C: PeriodicMat, A: PeriodicMat, B: PeriodicMat, p: int, max_dim: int | None = None
) -> int:
    """Number of submodules of type B in the realisation of C with quotient of type A."""
    return classify_submodules(C, p, max_dim=max_dim).get((A, B), 0)


_isotype_memo: dict = {}


def enumerate_isotypes(n: int, d: PeriodicVec) -> tuple[PeriodicMat, ...]:
    """All segment multisets with dimension vector d, in a fixed order."""
    if not d.is_nonneg():
        return ()
    memo_key = (n, d.window)
    hit = _isotype_memo.get(memo_key)
    if hit is not None:
        return hit
    total = d.sigma()
    segs = [
        ((i, i + l), segment_dim(n, i, i + l))
        for i in range(1, n + 1)
        for l in range(1, total + 1)
    ]
    out: list[PeriodicMat] = []

    def recurse(idx: int, remaining: tuple, acc: list):
        if all(x == 0 for x in remaining):
            out.append(PeriodicMat(n, dict(acc)))
            return
        if idx == len(segs):
            return
        (key, sd) = segs[idx]
        cap = min(
            (rem // sdw for rem, sdw in zip(remaining, sd.window) if sdw),
            default=0,
        )
        for mult in range(cap, -1, -1):
            if mult:
                acc.append((key, mult))
            recurse(
                idx + 1,
                tuple(r - mult * sdw for r, sdw in zip(remaining, sd.window)),
                acc,
            )
            if mult:
                acc.pop()

    recurse(0, d.window, [])
    result = tuple(out)
    _isotype_memo[memo_key] = result
    return result


# ---------------------------------------------------------------------------
# Hom and End spaces


def _intertwiner_basis(A: PeriodicMat, B: PeriodicMat, p: int):
    """Basis of Hom(M(A), M(B)) over F_p as lists of per-vertex matrices."""
    ra, rb = build_rep(A, p), build_rep(B, p)
    n = ra.n
    da, db = ra.dims, rb.dims
    offsets, nv = [], 0
    for w in range(n):
        offsets.append(nv)
        nv += db[w] * da[w]
    if nv == 0:
        return [], (da, db)
    rows = []
    for w in range(n):
        tgt = (w + 1) % n
        # equation: x^B_w f_w - f_tgt x^A_w = 0, entries (r, c) r < db[tgt], c < da[w]
        for r in range(db[tgt]):
            for c in range(da[w]):
                row = [0] * nv
                for k in range(db[w]):
                    row[offsets[w] + k * da[w] + c] = (
                        row[offsets[w] + k * da[w] + c] + rb.maps[w][r][k]
                    ) % p
                for k in range(da[tgt]):
                    row[offsets[tgt] + r * da[tgt] + k] = (
                        row[offsets[tgt] + r * da[tgt] + k] - ra.maps[w][k][c]
                    ) % p
                if any(row):
                    rows.append(tuple(row))
    if not rows:
        basis_vecs = [
            tuple(1 if i == j else 0 for i in range(nv)) for j in range(nv)
        ]
    else:
        basis_vecs = list(nullspace(tuple(rows), p))
    mats = []
    for vec in basis_vecs:
        per_vertex = []
        for w in range(n):
            m = tuple(
                tuple(vec[offsets[w] + r * da[w] + c] for c in range(da[w]))
                for r in range(db[w])
            )
            per_vertex.append(m)
        mats.append(per_vertex)
    return mats, (da, db)


_dim_memo: dict = {}


def hom_dim(A: PeriodicMat, B: PeriodicMat) -> int:
    """dim Hom(M(A), M(B)), asserted equal over two primes."""
    memo_key = ("hom", A.key(), B.key())
    hit = _dim_memo.get(memo_key)
    if hit is not None:
        return hit
    d2 = len(_intertwiner_basis(A, B, 2)[0])
    d3 = len(_intertwiner_basis(A, B, 3)[0])
    if d2 != d3:
        raise FieldDependentDimension(f"hom dim {d2} at p=2 vs {d3} at p=3")
    _dim_memo[memo_key] = d2
    return d2


def end_dim(A: PeriodicMat) -> int:
    """dim End(M(A))."""
    return hom_dim(A, A)


def count_automorphisms(A: PeriodicMat, p: int) -> int:
    """|Aut(M(A))| over F_p.

    Small endomorphism algebras are counted by enumerating every element and
    testing invertibility.  Larger ones use the unit count of the
    endomorphism algebra: modulo its radical it is a product of matrix
    algebras M_{a}(F_p), one factor per distinct segment with multiplicity a,
    so |Aut| = p^(dim radical) * prod |GL_a(F_p)|.  The two routes are
    cross-checked wherever both run (see tests).
    """
    basis, (da, _) = _intertwiner_basis(A, A, p)
    e = len(basis)
    D = sum(da)
    if e == 0:
        return 1
    cost = (p**e) * (D**3 + e * D * D)
    if cost <= AUT_ELEMENTWISE_COST_CAP:
        return _count_aut_elementwise(A, p, basis, da)
    return _count_aut_structural(A, p, e)


def _invertible_mod(f, d: int, p: int) -> bool:
    if d == 1:
        return f[0][0] % p != 0
    if d == 2:
        return (f[0][0] * f[1][1] - f[0][1] * f[1][0]) % p != 0
    if d == 3:
        det = (
            f[0][0] * (f[1][1] * f[2][2] - f[1][2] * f[2][1])
            - f[0][1] * (f[1][0] * f[2][2] - f[1][2] * f[2][0])
            + f[0][2] * (f[1][0] * f[2][1] - f[1][1] * f[2][0])
        )
        return det % p != 0
    fm = tuple(tuple(x % p for x in row) for row in f)
    return rank(fm, p) == d


def _count_aut_elementwise(A: PeriodicMat, p: int, basis, dims) -> int:
    n = A.n
    count = 0
    for coeffs in product(range(p), repeat=len(basis)):
        ok = True
        for w in range(n):
            d = dims[w]
            if d == 0:
                continue
            f = [[0] * d for _ in range(d)]
            for c, bm in zip(coeffs, basis):
                if c:
                    mw = bm[w]
                    for r in range(d):
                        frow = f[r]
                        brow = mw[r]
                        for j in range(d):
                            frow[j] += c * brow[j]
            if not _invertible_mod(f, d, p):
                ok = False
                break
        if ok:
            count += 1
    return count


def _count_aut_structural(A: PeriodicMat, p: int, e: int) -> int:
    mults = list(A.entries.values())
    rad_dim = e - sum(m * m for m in mults)
    out = p**rad_dim
    for m in mults:
        out *= gl_order(m, p)
    return out


# ---------------------------------------------------------------------------
# Interpolated counting polynomials

_hall_memo: dict = {}
_aut_memo: dict = {}


def hall_polynomial(
    C: PeriodicMat, A: PeriodicMat, B: PeriodicMat, max_dim: int | None = None
) -> dict[int, int]:
    """The polynomial in q counting type-B submodules of C with quotient type A.

    Interpolated from prime samples and two extra verification primes; on a
    verification failure the degree bound is escalated once.  The bound is
    sum_i d(A)_i d(B)_i: the count is at most the product over vertices of
    the Gaussian binomial [d(C)_i choose d(B)_i], whose q-degree is that sum,
    and a polynomial bounded by another at every prime cannot exceed its
    degree.  Results are cached (in memory, and on disk when the AHS_CACHE
    environment variable points at a cache file).
    """
    memo_key = (C.key(), A.key(), B.key())
    hit = _hall_memo.get(memo_key)
    if hit is not None:
        return hit
    if dim_vector(A) + dim_vector(B) != dim_vector(C):
        _hall_memo[memo_key] = {}
        return {}
    cached = _cache.load_entry("hall", memo_key)
    if cached is not None:
        _hall_memo[memo_key] = cached
        return cached

    def attempt(bound):
        primes = first_primes(bound + 3)
        samples = [
            (p, count_submodules(C, A, B, p, max_dim=max_dim)) for p in primes
        ]
        return interpolate(samples, bound), primes

    bound = sum(a * b for a, b in zip(dim_vector(A).window, dim_vector(B).window))
    try:
        poly, primes = attempt(bound)
    except (VerificationFailed, NonIntegerCoefficients):
        bound = 2 * bound + 2
        poly, primes = attempt(bound)
    _hall_memo[memo_key] = poly
    _cache.store_entry(
        "hall",
        memo_key,
        poly,
        fit_primes=primes[: bound + 1],
        verify_primes=primes[bound + 1 :],
    )
    return poly


def aut_polynomial(A: PeriodicMat) -> dict[int, int]:
    """The polynomial in q giving the graded automorphism count of M(A)."""
    memo_key = (A.key(),)
    hit = _aut_memo.get(memo_key)
    if hit is not None:
        return hit
    if A.is_zero():
        _aut_memo[memo_key] = {0: 1}
        return {0: 1}
    cached = _cache.load_entry("aut", memo_key)
    if cached is not None:
        _aut_memo[memo_key] = cached
        return cached
    bound = dim_total(A) ** 2
    primes = first_primes(bound + 3)
    samples = [(p, count_automorphisms(A, p)) for p in primes]
    poly = interpolate(samples, bound)
    _aut_memo[memo_key] = poly
    _cache.store_entry(
        "aut",
        memo_key,
        poly,
        fit_primes=primes[: bound + 1],
        verify_primes=primes[bound + 1 :],
    )
    return poly


def clear_memos():
    """Drop all in-memory oracle caches (used by cache-management tooling)."""
    _classify_memo.clear()
    _isotype_memo.clear()
    _rep_isotype_memo.clear()
    _dim_memo.clear()
    _hall_memo.clear()
    _aut_memo.clear()
