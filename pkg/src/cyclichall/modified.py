"""The idempotented algebra, its integral monomial basis, and completions.

Basis monomials are u~+_A 1_lam u~-_B with A, B segment multisets, lam the
middle weight, and the tilde generators the v-power renormalisations from
`hall.tilde_factor`.  A monomial's left block is lam + deg(u+_A) and its
right block is lam - deg(u-_B); products vanish unless inner blocks match.

Two independent product routes are implemented and asserted equal:

* lift both monomials to the PBW algebra, multiply there, project back;
* the straightening expansion u~-_B u~+_A = sum_C g_{A,B,C,j} u~+_{C+}
  u~-_{t(C-)} Ktilde^j, whose torus factors act on the middle idempotent as
  explicit v-powers (the f-coefficients), followed by one-sided products.

The f-coefficients must be Laurent polynomials over Z; a violation aborts.
Window truncations of completion elements sum u 1_lam over a finite box of
weights; membership of such a family in the integral completion is checked
coefficientwise (a necessary condition only, the window being finite).
"""

from __future__ import annotations

from itertools import product as iproduct

from .double_hall import (
    PBWElement,
    commute_minus_plus,
    kvec_inverse,
    mono_degree,
    pbw_product,
)
from .hall import tilde_exponent, tilde_minus_pair, tilde_plus_pair
from .laurent import LaurentPoly, RationalFn
from .periodic import (
    PeriodicMat,
    PeriodicVec,
    dim_vector,
    euler_form,
    dot,
    plus_degree,
    transpose,
    zero_mat,
    zero_vec,
)


class PathDisagreement(RuntimeError):
    """The two product routes disagreed; this signals an engine bug."""


class IntegralityViolation(RuntimeError):
    """A straightening coefficient left Z[v, v^-1]."""


class BlockElement:
    """Finite sum of monomials u~+_A 1_lam u~-_B."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict[tuple, RationalFn] = {}
        if terms:
            for key, c in terms.items():
                c = RationalFn.coerce(c)
                if not c.is_zero():
                    self.terms[key] = c

    @staticmethod
    def monomial(A: PeriodicMat, lam: PeriodicVec, B: PeriodicMat, coeff=1) -> "BlockElement":
        return BlockElement(A.n, {(A, lam.window, B): RationalFn.coerce(coeff)})

    @staticmethod
    def idempotent(n: int, lam: PeriodicVec) -> "BlockElement":
        z = zero_mat(n)
        return BlockElement.monomial(z, lam, z)

    @staticmethod
    def zero(n: int) -> "BlockElement":
        return BlockElement(n)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, BlockElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __add__(self, other: "BlockElement") -> "BlockElement":
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        res = BlockElement(self.n)
        res.terms = out
        return res

    def __sub__(self, other: "BlockElement") -> "BlockElement":
        return self + other.scale(-1)

    def scale(self, c) -> "BlockElement":
        c = RationalFn.coerce(c)
        if c.is_zero():
            return BlockElement(self.n)
        return BlockElement(self.n, {k: c * x for k, x in self.terms.items()})

    def __mul__(self, other: "BlockElement") -> "BlockElement":
        return block_product(self, other)

    def is_integral(self) -> bool:
        return all(c.is_laurent() for c in self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "Block(0)"
        bits = []
        for (A, lam, B), c in self.terms.items():
            bits.append(f"({c}) u~+{dict(A.entries)} 1_{lam} u~-{dict(B.entries)}")
        return " + ".join(bits)


def monomial_left_block(key) -> PeriodicVec:
    A, lamw, B = key
    return PeriodicVec(lamw) + plus_degree(A)


def monomial_right_block(key) -> PeriodicVec:
    A, lamw, B = key
    return PeriodicVec(lamw) + plus_degree(B)


def integrality_check(x: BlockElement) -> bool:
    """True iff every coefficient lies in Z[v, v^-1]."""
    return x.is_integral()


# ---------------------------------------------------------------------------
# Projection from the PBW algebra


def project_to_block(x: PBWElement, lam: PeriodicVec, mu: PeriodicVec) -> BlockElement:
    """Image of x in the (lam, mu) block, in the tilde basis.

    A monomial u+_A K^j u-_B survives exactly when its degree is lam - mu;
    the torus factor becomes the scalar v^((mu + deg u-_B) . j) and the
    plain generators are rescaled to tilde ones.
    """
    out = BlockElement(x.n)
    for (A, jw, B), c in x.terms.items():
        if mono_degree(A, B) != lam - mu:
            continue
        j = PeriodicVec(jw)
        weight = dot(mu - plus_degree(B), j)
        shift = weight - tilde_exponent(A) - tilde_exponent(B)
        key = (A, (lam - plus_degree(A)).window, B)
        add = c * RationalFn.v_power(shift)
        cur = out.terms.get(key)
        cur = add if cur is None else cur + add
        if cur.is_zero():
            out.terms.pop(key, None)
        else:
            out.terms[key] = cur
    return out


def pbw_lift(A: PeriodicMat, B: PeriodicMat) -> PBWElement:
    """The element u~+_A u~-_B of the big algebra."""
    shift = tilde_exponent(A) + tilde_exponent(B)
    return PBWElement.monomial(A, zero_vec(A.n), B, RationalFn.v_power(shift))


# ---------------------------------------------------------------------------
# The straightening expansion and its torus weights

_g_memo: dict = {}


def g_expansion(A: PeriodicMat, B: PeriodicMat):
    """Terms of u~-_B u~+_A as (C, j, coeff) with C off-diagonal and j_n = 0.

    Returned grouped by C: a dict C -> (Cplus, Yminus, [(j_window, coeff)])
    where Cplus is the upper part of C and Yminus = transpose of the lower
    part, both as segment multisets.
    """
    memo_key = (A.key(), B.key())
    hit = _g_memo.get(memo_key)
    if hit is not None:
        return hit
    n = A.n
    shift = tilde_exponent(A) + tilde_exponent(B)
    nf = commute_minus_plus(B, A)
    groups: dict = {}
    for (X, mw, Y), c in nf.terms.items():
        m = PeriodicVec(mw)
        j = kvec_inverse(m)
        push = euler_form(dim_vector(Y), m) if not Y.is_zero() else 0
        coeff = c * RationalFn.v_power(
            shift - tilde_exponent(X) - tilde_exponent(Y) - push
        )
        C = X + transpose(Y)
        entry = groups.get(C)
        if entry is None:
            entry = (X, Y, [])
            groups[C] = entry
        entry[2].append((j.window, coeff))
    _g_memo[memo_key] = groups
    return groups


def g_expansion_terms(A: PeriodicMat, B: PeriodicMat):
    """Flat view of the expansion: list of (C, j, coeff)."""
    out = []
    for C, (_, _, terms) in g_expansion(A, B).items():
        for jw, coeff in terms:
            out.append((C, PeriodicVec(jw), coeff))
    return out


def torus_weight(lam: PeriodicVec, jw) -> int:
    """(lam_1 - lam_2) j_1 + ... + (lam_{n-1} - lam_n) j_{n-1}."""
    n = lam.n
    return sum((lam[k] - lam[k + 1]) * jw[k - 1] for k in range(1, n))


def f_coefficient(
    A: PeriodicMat, B: PeriodicMat, C: PeriodicMat, lam: PeriodicVec
) -> RationalFn:
    """Weighted sum of the C-terms of the straightening expansion.

    These must be Laurent polynomials over Z; any denominator left after
    summing the torus weights is a build-stopping engine fault.
    """
    groups = g_expansion(A, B)
    entry = groups.get(C)
    if entry is None:
        return RationalFn.zero()
    total = RationalFn.zero()
    for jw, coeff in entry[2]:
        total = total + coeff * RationalFn.v_power(torus_weight(lam, jw))
    if not total.is_laurent():
        raise IntegralityViolation(
            f"f coefficient {total} for C={C} is not integral"
        )
    return total


# ---------------------------------------------------------------------------
# Block products, two routes

_core_memo: dict = {}


def _pbw_core(A2: PeriodicMat, B2: PeriodicMat, A1: PeriodicMat, B1: PeriodicMat) -> PBWElement:
    memo_key = (A2.key(), B2.key(), A1.key(), B1.key())
    hit = _core_memo.get(memo_key)
    if hit is None:
        hit = pbw_product(pbw_lift(A2, B2), pbw_lift(A1, B1))
        _core_memo[memo_key] = hit
    return hit


CHECK_BOTH_PATHS = True


def block_monomial_product(m2: tuple, m1: tuple, check: bool | None = None) -> BlockElement:
    """Product of two basis monomials, (A2, lam, B2) times (A1, mu, B1).

    Zero unless the right block of the first factor equals the left block of
    the second.  Computed through the straightening expansion; when checking
    is on (the default) the lift-multiply-project route is computed as well
    and any disagreement raises PathDisagreement.
    """
    if check is None:
        check = CHECK_BOTH_PATHS
    A2, lamw, B2 = m2
    A1, muw, B1 = m1
    n = A2.n
    lam, mu = PeriodicVec(lamw), PeriodicVec(muw)
    if lam + plus_degree(B2) != mu + plus_degree(A1):
        return BlockElement.zero(n)
    out = BlockElement(n)
    base = lam + plus_degree(A2)
    for C, (Cp, Y, terms) in g_expansion(A1, B2).items():
        f = RationalFn.zero()
        for jw, coeff in terms:
            f = f + coeff * RationalFn.v_power(torus_weight(mu, jw))
        if f.is_zero():
            continue
        if not f.is_laurent():
            raise IntegralityViolation(f"f coefficient {f} for C={C}")
        for P, cp in tilde_plus_pair(A2, Cp).items():
            kp = (base - plus_degree(P)).window
            fp = f * cp
            for Q, cq in tilde_minus_pair(Y, B1).items():
                key = (P, kp, Q)
                add = fp * cq
                cur = out.terms.get(key)
                cur = add if cur is None else cur + add
                if cur.is_zero():
                    out.terms.pop(key, None)
                else:
                    out.terms[key] = cur
    if check:
        lifted = _pbw_core(A2, B2, A1, B1)
        alt = project_to_block(lifted, base, mu + plus_degree(B1))
        if alt != out:
            raise PathDisagreement(
                f"straightening route {out} vs lift route {alt} "
                f"for {m2} * {m1}"
            )
    return out


def block_product(x: BlockElement, y: BlockElement, check: bool | None = None) -> BlockElement:
    out = BlockElement(x.n)
    for k2, c2 in x.terms.items():
        for k1, c1 in y.terms.items():
            piece = block_monomial_product(k2, k1, check=check)
            if not piece.is_zero():
                out = out + piece.scale(c2 * c1)
    return out


# ---------------------------------------------------------------------------
# Completion windows


def box_window(n: int, lo: int, hi: int) -> tuple:
    """The window [lo, hi]^n as a tuple of per-coordinate intervals."""
    return tuple((lo, hi) for _ in range(n))


def window_points(window: tuple):
    for w in iproduct(*(range(lo, hi + 1) for lo, hi in window)):
        yield PeriodicVec(w)


class WindowedFamily:
    """A truncation of a completion element: one block element per window weight.

    points[lam] is the component with right multiplier 1_lam; only weights
    inside the declared window are represented.
    """

    __slots__ = ("n", "window", "points")

    def __init__(self, n: int, window: tuple, points: dict):
        self.n = n
        self.window = window
        self.points = points

    def __getitem__(self, lam: PeriodicVec) -> BlockElement:
        return self.points.get(lam.window, BlockElement.zero(self.n))

    def coefficients(self):
        for lamw, elem in sorted(self.points.items()):
            for key, c in elem.terms.items():
                yield lamw, key, c


def completion_embed_on_window(u: PBWElement, window: tuple) -> WindowedFamily:
    """The family lam -> u 1_lam over the window.

    This is the window truncation of the canonical embedding of the big
    algebra into the completed idempotented algebra.
    """
    n = u.n
    points = {}
    for lam in window_points(window):
        total = BlockElement.zero(n)
        for key, c in u.terms.items():
            A, jw, B = key
            deg = mono_degree(A, B)
            mono = PBWElement(n, {key: c})
            total = total + project_to_block(mono, lam + deg, lam)
        if not total.is_zero():
            points[lam.window] = total
    return WindowedFamily(n, window, points)


def completion_integral_membership(f: WindowedFamily) -> bool:
    """Necessary condition for membership in the integral completion:
    every window coefficient is a Laurent polynomial over Z.

    The window is finite, so a True verdict certifies only the inspected
    weights; report the window alongside the verdict.
    """
    return all(c.is_laurent() for _, _, c in f.coefficients())


def family_product_on(
    fx: WindowedFamily, fy: WindowedFamily, target: tuple
) -> WindowedFamily:
    """Product of two window truncations, restricted to target weights.

    The right multiplier of every product term equals the right multiplier
    of the second factor's term, so the target component at lam collects
    fx[alpha] * fy[lam] over all alpha in fx's window.  Callers must size
    fx's window so that all contributing alpha are inside it.
    """
    n = fx.n
    points = {}
    for lam in window_points(target):
        acc = BlockElement.zero(n)
        ylam = fy[lam]
        if ylam.is_zero():
            continue
        for _, xelem in fx.points.items():
            acc = acc + block_product(xelem, ylam)
        if not acc.is_zero():
            points[lam.window] = acc
    return WindowedFamily(n, target, points)
