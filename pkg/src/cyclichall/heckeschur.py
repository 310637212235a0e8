"""Affine q-Schur algebra via periodic permutations and Hecke double cosets.

The extended affine symmetric group on r letters consists of bijections w of
Z with w(i + r) = w(i) + r, stored as the window (w(1), ..., w(r)).  Its
Hecke algebra has basis T_w with T_s T_w = T_{sw} when the length goes up
and (v^2 - 1) T_w + v^2 T_{sw} otherwise; the length-zero rotation acts by
window shift.

For compositions lam, mu of r into n parts, parabolic double cosets
S_lam w S_mu are classified by nonnegative periodic matrices A with row
sums lam and column sums mu: the entry at (i, j) is the size of the
intersection of the i-th lam-block of Z with the w-image of the j-th
mu-block.  The algebra of interest is spanned by operators e_A acting on
x_mu H by the double-coset sum attached to A; the normalised basis is
[A] = v^(-d_A) e_A with

    d_A = sum over (i, j) with 1 <= i <= n and all (k, l), i >= k, j < l
          of a_{i,j} a_{k,l}.

This normalisation together with the Hecke quadratic convention is pinned
by the calibration tests: the diagonal idempotent laws, the weight
commutation law, triangularity with unit leading terms, and the
multiplicativity of the evaluation maps from the PBW engine all have to
hold at once (see tests/test_heckeschur.py).
"""

from __future__ import annotations

from itertools import permutations as iperms

from .double_hall import PBWElement, mono_degree
from .hall import tilde_exponent
from .laurent import LaurentPoly, RationalFn, specialize_v1
from .modified import BlockElement
from .periodic import (
    PeriodicMat,
    PeriodicVec,
    diag,
    diagonal_part,
    dot,
    lambda_set,
    offdiag_part,
    order_compare,
    plus_degree,
    row_sums,
    col_sums,
    split_offdiag,
    transpose,
    zero_mat,
    zero_vec,
    LESS,
)
from .quiver import ScaleExceeded

MAX_R = 4


class TriangularityViolation(RuntimeError):
    """The triangular expansion failed to be unitriangular."""


class AffinePerm:
    """Periodic bijection of Z with window (w(1), ..., w(r))."""

    __slots__ = ("window",)

    def __init__(self, window):
        self.window = tuple(window)
        r = len(self.window)
        if sorted(x % r for x in self.window) != list(range(r)):
            raise ValueError(f"window {window} residues are not a permutation")

    @property
    def r(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        r = len(self.window)
        return self.window[(i - 1) % r] + ((i - 1) // r) * r

    def __eq__(self, other):
        return isinstance(other, AffinePerm) and self.window == other.window

    def __hash__(self):
        return hash(self.window)

    def __repr__(self):
        return f"AffinePerm{self.window}"

    @staticmethod
    def identity(r: int) -> "AffinePerm":
        return AffinePerm(range(1, r + 1))

    def compose(self, other: "AffinePerm") -> "AffinePerm":
        """self after other: (self*other)(i) = self(other(i))."""
        return AffinePerm(tuple(self(other(i)) for i in range(1, self.r + 1)))

    def inverse(self) -> "AffinePerm":
        r = self.r
        win = [0] * r
        for i in range(1, r + 1):
            wi = self(i)
            res = (wi - 1) % r + 1
            win[res - 1] = i - (wi - res)
        return AffinePerm(win)

    def length(self) -> int:
        """Number of inversions (i, j), 1 <= i <= r, i < j, w(i) > w(j)."""
        r = self.r
        total = 0
        for i in range(1, r + 1):
            wi = self.window[i - 1]
            for j0 in range(1, r + 1):
                wj = self.window[j0 - 1]
                T = (wi - wj - 1) // r if wi > wj else -1
                if j0 > i:
                    total += max(0, T + 1)
                else:
                    total += max(0, T)
        return total

    def shift_index(self) -> int:
        r = self.r
        return (sum(self.window) - r * (r + 1) // 2) // r

    def times_s(self, c: int) -> "AffinePerm":
        """Right multiplication by the reflection swapping c and c+1 (periodic)."""
        r = self.r
        return AffinePerm(
            tuple(self(_s_apply(i, c, r)) for i in range(1, r + 1))
        )

    def times_rho(self, k: int) -> "AffinePerm":
        """Right multiplication by the rotation i -> i + k."""
        return AffinePerm(tuple(self(i + k) for i in range(1, self.r + 1)))

    def right_descents(self):
        r = self.r
        return [c for c in range(1, r + 1) if self(c) > self(c + 1)]

    def reduced_data(self):
        """(k, word) with self = rho^k * s_{word[-1]} * ... * s_{word[0]}.

        Stripping right descents one at a time reaches the rotation part;
        the word lists the stripped generators in stripping order.
        """
        k = self.shift_index()
        z = self.times_rho(0)  # copy
        # remove the rotation: rho^{-k} * self
        z = AffinePerm(tuple(x - k for x in self.window))
        word = []
        while True:
            ds = z.right_descents()
            if not ds:
                break
            c = ds[0]
            word.append(c)
            z = z.times_s(c)
        if z != AffinePerm.identity(self.r):
            raise AssertionError("descent stripping did not reach the identity")
        return k, word


def _s_apply(i: int, c: int, r: int) -> int:
    """Image of i under the periodic transposition swapping c, c+1."""
    m = (i - c) % r
    if m == 0:
        return i + 1
    if m == 1:
        return i - 1
    return i


def perm_length(w: AffinePerm) -> int:
    return w.length()


# ---------------------------------------------------------------------------
# Hecke algebra operations on dicts {AffinePerm: LaurentPoly}


def _hecke_times_s(terms: dict, c: int) -> dict:
    out: dict = {}
    vv = LaurentPoly({2: 1})
    vvm1 = LaurentPoly({2: 1, 0: -1})

    def bump(w, coeff):
        cur = out.get(w)
        cur = coeff if cur is None else cur + coeff
        if cur.is_zero():
            out.pop(w, None)
        else:
            out[w] = cur

    for w, coeff in terms.items():
        ws = w.times_s(c)
        if w(c) < w(c + 1):
            bump(ws, coeff)
        else:
            bump(w, coeff * vvm1)
            bump(ws, coeff * vv)
    return out


def _hecke_times_rho(terms: dict, k: int) -> dict:
    if k == 0:
        return dict(terms)
    return {w.times_rho(k): coeff for w, coeff in terms.items()}


def hecke_multiply_basis(terms: dict, u: AffinePerm) -> dict:
    """Product (sum of T_w's) * T_u."""
    k, word = u.reduced_data()
    out = _hecke_times_rho(terms, k)
    for c in reversed(word):
        out = _hecke_times_s(out, c)
    return out


def hecke_multiply(x: dict, y: dict) -> dict:
    out: dict = {}
    for u, cu in y.items():
        piece = hecke_multiply_basis(x, u)
        for w, c in piece.items():
            cur = out.get(w)
            cur = c * cu if cur is None else cur + c * cu
            if cur.is_zero():
                out.pop(w, None)
            else:
                out[w] = cur
    return out


class HeckeElement:
    """Finite sum of T_w's with Laurent coefficients."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms=None):
        self.r = r
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @staticmethod
    def basis(w: AffinePerm) -> "HeckeElement":
        return HeckeElement(w.r, {w: LaurentPoly.one()})

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return HeckeElement(self.r, hecke_multiply(self.terms, other.terms))

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, LaurentPoly.zero()) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return HeckeElement(self.r, out)

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"({c})T{w.window}" for w, c in self.terms.items()) or "0"


# ---------------------------------------------------------------------------
# Compositions, blocks, parabolic subgroups


def _block_starts(lam: PeriodicVec) -> list[int]:
    """Cumulative starts L(1..n+1) of the lam-blocks inside [1, r]."""
    starts = [0]
    for i in range(1, lam.n + 1):
        starts.append(starts[-1] + lam[i])
    return starts


def _lam_start(lam: PeriodicVec, i: int, r: int) -> int:
    """Start L(i) of block i, any i in Z."""
    i0 = (i - 1) % lam.n + 1
    cyc = (i - 1) // lam.n
    return _block_starts(lam)[i0 - 1] + cyc * r


def _block_of(lam: PeriodicVec, pos: int, r: int) -> int:
    """Block index i in Z with pos in (L(i), L(i) + lam_i]."""
    s = (pos - 1) // r
    base = pos - s * r
    starts = _block_starts(lam)
    for i in range(1, lam.n + 1):
        if starts[i - 1] < base <= starts[i]:
            return i + s * lam.n
    raise AssertionError("position outside blocks (zero-size block lookup)")


def parabolic_generators(lam: PeriodicVec, r: int) -> list[int]:
    starts = set(_block_starts(lam)[1:-1])
    return [c for c in range(1, r) if c not in starts]


_parabolic_memo: dict = {}


def parabolic_elements(lam: PeriodicVec, r: int) -> tuple:
    """All elements of the finite parabolic subgroup attached to lam."""
    memo_key = (lam.window, r)
    hit = _parabolic_memo.get(memo_key)
    if hit is not None:
        return hit
    gens = parabolic_generators(lam, r)
    seen = {AffinePerm.identity(r)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for c in gens:
                ws = w.times_s(c)
                if ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        frontier = nxt
    result = tuple(sorted(seen, key=lambda w: (w.length(), w.window)))
    _parabolic_memo[memo_key] = result
    return result


# ---------------------------------------------------------------------------
# Double cosets <-> matrices


def matrix_from_perm(lam: PeriodicVec, w: AffinePerm, mu: PeriodicVec) -> PeriodicMat:
    """Entry (i, j) counts positions of the j-th mu-block sent into the i-th lam-block."""
    n = lam.n
    r = w.r
    entries: dict = {}
    for p in range(1, r + 1):
        j = _block_of(mu, p, r)
        i = _block_of(lam, w(p), r)
        i0 = (i - 1) % n + 1
        key = (i0, j - (i - i0))
        entries[key] = entries.get(key, 0) + 1
    return PeriodicMat(n, entries)


def perm_from_matrix(A: PeriodicMat, r: int) -> AffinePerm:
    """The shortest permutation in the double coset classified by A.

    Maps each mu-block order-preservingly into the lam-blocks, filling each
    lam-block by increasing column index.
    """
    n = A.n
    lam, mu = row_sums(A), col_sums(A)
    if lam.sigma() != r:
        raise ValueError("matrix total does not match r")
    window = [0] * r
    for j0 in range(1, n + 1):
        # entries of the full matrix in column line j0, sorted by row
        col_entries = []
        for (i0, jj), a in A.entries.items():
            if (jj - j0) % n == 0:
                col_entries.append((i0 + (j0 - jj), a))
        col_entries.sort()
        pos = _lam_start(mu, j0, r)  # start of mu-block j0
        for i, a in col_entries:
            # offset inside lam-block i: entries of row line i left of column j0
            off = 0
            i0 = (i - 1) % n + 1
            for (ii, jj), b in A.entries.items():
                if ii == i0 and jj + (i - i0) < j0:
                    off += b
            start = _lam_start(lam, i, r) + off
            for t in range(a):
                p = pos + t + 1  # mu-blocks 1..n tile [1, r], so p is in range
                window[p - 1] = start + t + 1
            pos += a
    return AffinePerm(window)


def double_coset(lam: PeriodicVec, d: AffinePerm, mu: PeriodicVec) -> tuple:
    r = d.r
    out = set()
    for u in parabolic_elements(lam, r):
        ud = u.compose(d)
        for vv in parabolic_elements(mu, r):
            out.add(ud.compose(vv))
    return tuple(sorted(out, key=lambda w: (w.length(), w.window)))


def normalisation_exponent(A: PeriodicMat) -> int:
    """d_A: pairs of entries with (i, j) over one period, i >= k and j < l."""
    total = 0
    for (i, j), a in A.entries.items():
        for (k0, l0), b in A.entries.items():
            # translates (k0 + cn, l0 + cn) with k0 + cn <= i, l0 + cn > j
            hi = (i - k0) // A.n
            lo = -((l0 - j - 1) // A.n)
            if hi >= lo:
                total += a * b * (hi - lo + 1)
    return total


# ---------------------------------------------------------------------------
# The Schur algebra


VERIFY_EMULT = False

_emult_memo: dict = {}


def e_mult(A: PeriodicMat, B: PeriodicMat, r: int) -> dict[PeriodicMat, LaurentPoly]:
    """Structure constants of e_A e_B in the e basis (zero on block mismatch)."""
    if r > MAX_R:
        raise ScaleExceeded(f"r = {r} beyond configured bound {MAX_R}")
    memo_key = (A.key(), B.key(), r)
    hit = _emult_memo.get(memo_key)
    if hit is not None:
        return hit
    lam, mu = row_sums(A), col_sums(A)
    if mu != row_sums(B):
        _emult_memo[memo_key] = {}
        return {}
    nu = col_sums(B)
    dA = perm_from_matrix(A, r)
    dB = perm_from_matrix(B, r)
    yA = {w: LaurentPoly.one() for w in double_coset(lam, dA, mu)}
    coset = double_coset(mu, dB, nu)
    mu_set = set(parabolic_elements(mu, r))
    reps: list[AffinePerm] = []
    for w in coset:  # sorted by length, so the first member of a coset is minimal
        if not any(w.compose(rep.inverse()) in mu_set for rep in reps):
            reps.append(w)
    prod: dict = {}
    for rep in reps:
        piece = hecke_multiply_basis(yA, rep)
        for w, c in piece.items():
            cur = prod.get(w)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                prod.pop(w, None)
            else:
                prod[w] = cur
    # read coefficients at minimal double-coset representatives
    by_C: dict = {}
    for w in prod:
        C = matrix_from_perm(lam, w, nu)
        by_C.setdefault(C, []).append(w)
    out: dict = {}
    for C in by_C:
        dC = perm_from_matrix(C, r)
        coeff = prod.get(dC)
        if coeff is not None and not coeff.is_zero():
            out[C] = coeff
    if VERIFY_EMULT:
        recon: dict = {}
        for C, coeff in out.items():
            for w in double_coset(row_sums(C), perm_from_matrix(C, r), col_sums(C)):
                cur = recon.get(w, LaurentPoly.zero()) + coeff
                if cur.is_zero():
                    recon.pop(w, None)
                else:
                    recon[w] = cur
        if recon != prod:
            raise AssertionError(f"double-coset reconstruction failed for {A} * {B}")
    _emult_memo[memo_key] = out
    return out


_basis_memo: dict = {}


def basis_product(A: PeriodicMat, B: PeriodicMat, r: int) -> dict[PeriodicMat, LaurentPoly]:
    """[A] [B] = sum_C v^(d_C - d_A - d_B) gamma_C [C]."""
    memo_key = (A.key(), B.key(), r)
    hit = _basis_memo.get(memo_key)
    if hit is not None:
        return hit
    shift = -normalisation_exponent(A) - normalisation_exponent(B)
    out = {}
    for C, coeff in e_mult(A, B, r).items():
        out[C] = coeff * LaurentPoly.v_power(normalisation_exponent(C) + shift)
    _basis_memo[memo_key] = out
    return out


class SchurElement:
    """Finite combination of the normalised basis, all keys of total r."""

    __slots__ = ("n", "r", "terms")

    def __init__(self, n: int, r: int, terms=None):
        self.n = n
        self.r = r
        self.terms: dict[PeriodicMat, RationalFn] = {}
        if terms:
            for A, c in terms.items():
                c = RationalFn.coerce(c)
                if c.is_zero():
                    continue
                if not A.is_nonneg():
                    continue  # keys outside the index set are zero
                if A.sigma() != r:
                    raise ValueError(f"key {A} has total {A.sigma()} != r = {r}")
                self.terms[A] = c

    @staticmethod
    def basis(r: int, A: PeriodicMat) -> "SchurElement":
        return SchurElement(A.n, r, {A: RationalFn.one()})

    @staticmethod
    def zero(n: int, r: int) -> "SchurElement":
        return SchurElement(n, r)

    @staticmethod
    def diag_idempotent(lam: PeriodicVec, r: int) -> "SchurElement":
        if lam.sigma() != r or not lam.is_nonneg():
            return SchurElement(lam.n, r)
        return SchurElement.basis(r, diag(lam))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, SchurElement)
            and self.n == other.n
            and self.r == other.r
            and self.terms == other.terms
        )

    def __add__(self, other: "SchurElement") -> "SchurElement":
        out = dict(self.terms)
        for A, c in other.terms.items():
            s = out.get(A)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(A, None)
            else:
                out[A] = s
        res = SchurElement(self.n, self.r)
        res.terms = out
        return res

    def __sub__(self, other: "SchurElement") -> "SchurElement":
        return self + other.scale(-1)

    def scale(self, c) -> "SchurElement":
        c = RationalFn.coerce(c)
        if c.is_zero():
            return SchurElement(self.n, self.r)
        return SchurElement(
            self.n, self.r, {A: c * x for A, x in self.terms.items()}
        )

    def __mul__(self, other: "SchurElement") -> "SchurElement":
        return schur_multiply(self, other)

    def spread(self) -> int:
        return max((offdiag_part(A).spread() for A in self.terms), default=0)

    def specialize_v1(self):
        """Coefficients at v = 1, as a dict A -> Fraction."""
        return {A: specialize_v1(c) for A, c in self.terms.items()}

    def __repr__(self):
        if not self.terms:
            return "Schur(0)"
        return " + ".join(
            f"({c})[{dict(A.entries)}]" for A, c in self.terms.items()
        )


def schur_multiply(x: SchurElement, y: SchurElement) -> SchurElement:
    if x.r != y.r or x.n != y.n:
        raise ValueError("rank or period mismatch")
    out = SchurElement(x.n, x.r)
    for A, ca in x.terms.items():
        for B, cb in y.terms.items():
            for C, coeff in basis_product(A, B, x.r).items():
                key_coeff = out.terms.get(C)
                add = ca * cb * coeff
                key_coeff = add if key_coeff is None else key_coeff + add
                if key_coeff.is_zero():
                    out.terms.pop(C, None)
                else:
                    out.terms[C] = key_coeff
    return out


def a_jr(A: PeriodicMat, j: PeriodicVec, r: int) -> SchurElement:
    """The weighted diagonal sum attached to an off-diagonal matrix.

    sum over lam of v^(lam . j) [A + diag(lam)], lam running over the
    nonnegative window vectors with total r - sigma(A); zero when
    sigma(A) > r.
    """
    if not A.is_offdiag():
        raise ValueError("requires an off-diagonal matrix")
    n = A.n
    s = A.sigma()
    if s > r:
        return SchurElement.zero(n, r)
    out = SchurElement(n, r)
    for lam in lambda_set(n, r - s):
        out = out + SchurElement.basis(r, A + diag(lam)).scale(
            RationalFn.v_power(dot(lam, j))
        )
    return out


# ---------------------------------------------------------------------------
# Evaluation maps from the PBW engine and the block model


def zeta_r(x: PBWElement, r: int) -> SchurElement:
    """Monomial-wise evaluation: u~+_A -> A(0, r), K^j -> 0(j, r), u~-_B -> (tB)(0, r)."""
    n = x.n
    out = SchurElement(n, r)
    for (A, jw, B), c in x.terms.items():
        coeff = c * RationalFn.v_power(-tilde_exponent(A) - tilde_exponent(B))
        factors = []
        if not A.is_zero():
            factors.append(a_jr(A, zero_vec(n), r))
        j = PeriodicVec(jw)
        factors.append(a_jr(zero_mat(n), j, r))
        if not B.is_zero():
            factors.append(a_jr(transpose(B), zero_vec(n), r))
        acc = factors[0]
        for f in factors[1:]:
            acc = schur_multiply(acc, f)
        out = out + acc.scale(coeff)
    return out


def zeta_dot_r(x: BlockElement, r: int) -> SchurElement:
    """Block evaluation: u~+_A 1_lam u~-_B -> A(0,r) [diag lam] (tB)(0,r)."""
    n = x.n
    out = SchurElement(n, r)
    for (A, lamw, B), c in x.terms.items():
        lam = PeriodicVec(lamw)
        mid = SchurElement.diag_idempotent(lam, r)
        if mid.is_zero():
            continue
        acc = mid
        if not A.is_zero():
            acc = schur_multiply(a_jr(A, zero_vec(n), r), acc)
        if not B.is_zero():
            acc = schur_multiply(acc, a_jr(transpose(B), zero_vec(n), r))
        out = out + acc.scale(c)
    return out


# ---------------------------------------------------------------------------
# Triangularity


def triangular_expand(C: PeriodicMat, lam: PeriodicVec, r: int):
    """C+(0,r) [diag lam] C-(0,r) with its leading-term report.

    Returns (element, leading_key).  The expansion must contain the leading
    key (the off-diagonal C completed by a diagonal) with a unit monomial
    coefficient, and every other key must have strictly smaller
    off-diagonal part in the quadrant order; otherwise
    TriangularityViolation is raised.
    """
    if not C.is_offdiag():
        raise ValueError("requires an off-diagonal matrix")
    n = C.n
    Cp, Cm = split_offdiag(C)
    elem = schur_multiply(
        a_jr(Cp, zero_vec(n), r),
        schur_multiply(
            SchurElement.diag_idempotent(lam, r), a_jr(Cm, zero_vec(n), r)
        ),
    )
    lead_diag = lam - col_sums(Cp) - row_sums(Cm)
    leading = C + diag(lead_diag)
    if not lead_diag.is_nonneg():
        return elem, None
    coeff = elem.terms.get(leading)
    if coeff is None or not coeff.is_laurent() or not (
        coeff.num.is_monomial() and abs(coeff.num.leading_coeff()) == 1
    ):
        raise TriangularityViolation(
            f"leading key {leading} has non-unit coefficient {coeff}"
        )
    for X in elem.terms:
        if X == leading:
            continue
        if order_compare(offdiag_part(X), C) != LESS:
            raise TriangularityViolation(
                f"key {X} is not strictly below {C} in the quadrant order"
            )
    return elem, leading
