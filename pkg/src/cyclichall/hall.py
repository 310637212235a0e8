"""Twisted Hall products on the raising and lowering halves.

Products of basis elements indexed by segment multisets expand through the
counting polynomials of the oracle, twisted by a power of v given by the
Euler form of the dimension vectors:

    u+_A u+_B = sum_C v^<d(A), d(B)>  phi^C_{A,B} u+_C
    u-_A u-_B = sum_C v^<d(B), d(A)>  phi^C_{B,A} u-_C

The "tilde" renormalised generators differ from the plain ones by the
v-power v^(dim End M(A) - dim M(A)); the integral basis of the modified
algebra is built from them.
"""

from __future__ import annotations

from .laurent import LaurentPoly, RationalFn, qpoly_to_v2
from .periodic import PeriodicMat, dim_total, dim_vector, euler_form, zero_mat
from .quiver import aut_polynomial, end_dim, enumerate_isotypes, hall_polynomial

PLUS, MINUS = "+", "-"


def tilde_exponent(A: PeriodicMat) -> int:
    """Exponent of the renormalisation: dim End(M(A)) - dim M(A)."""
    return end_dim(A) - dim_total(A)


def tilde_factor(A: PeriodicMat) -> LaurentPoly:
    return LaurentPoly.v_power(tilde_exponent(A))


_pair_memo: dict = {}


def plus_pair(A: PeriodicMat, B: PeriodicMat) -> dict[PeriodicMat, LaurentPoly]:
    """Expansion of u+_A u+_B in the u+ basis (coefficients in Z[v, v^-1])."""
    memo_key = (A.key(), B.key())
    hit = _pair_memo.get(memo_key)
    if hit is not None:
        return hit
    if A.is_zero():
        out = {B: LaurentPoly.one()}
    elif B.is_zero():
        out = {A: LaurentPoly.one()}
    else:
        twist = LaurentPoly.v_power(euler_form(dim_vector(A), dim_vector(B)))
        out = {}
        for C in enumerate_isotypes(A.n, dim_vector(A) + dim_vector(B)):
            phi = hall_polynomial(C, A, B)
            if phi:
                out[C] = twist * qpoly_to_v2(phi)
    _pair_memo[memo_key] = out
    return out


def minus_pair(A: PeriodicMat, B: PeriodicMat) -> dict[PeriodicMat, LaurentPoly]:
    """Expansion of u-_A u-_B in the u- basis: the opposite twist and swapped
    counting indices, which is exactly the u+ expansion of the reversed pair."""
    return plus_pair(B, A)


def tilde_plus_pair(A: PeriodicMat, B: PeriodicMat) -> dict[PeriodicMat, LaurentPoly]:
    """Expansion of the renormalised product u~+_A u~+_B in the u~+ basis."""
    shift = tilde_exponent(A) + tilde_exponent(B)
    return {
        C: coeff * LaurentPoly.v_power(shift - tilde_exponent(C))
        for C, coeff in plus_pair(A, B).items()
    }


def tilde_minus_pair(A: PeriodicMat, B: PeriodicMat) -> dict[PeriodicMat, LaurentPoly]:
    shift = tilde_exponent(A) + tilde_exponent(B)
    return {
        C: coeff * LaurentPoly.v_power(shift - tilde_exponent(C))
        for C, coeff in minus_pair(A, B).items()
    }


class HallElement:
    """Finite linear combination of one half's basis elements."""

    __slots__ = ("sign", "terms")

    def __init__(self, sign: str, terms=None):
        if sign not in (PLUS, MINUS):
            raise ValueError("sign must be '+' or '-'")
        self.sign = sign
        self.terms: dict[PeriodicMat, RationalFn] = {}
        if terms:
            for A, c in terms.items():
                c = RationalFn.coerce(c)
                if not c.is_zero():
                    if not (A.is_upper() and A.is_nonneg()):
                        raise ValueError("keys must be segment multisets")
                    self.terms[A] = c

    @staticmethod
    def basis(sign: str, A: PeriodicMat) -> "HallElement":
        return HallElement(sign, {A: RationalFn.one()})

    @staticmethod
    def unit(sign: str, n: int) -> "HallElement":
        return HallElement.basis(sign, zero_mat(n))

    def __eq__(self, other):
        return (
            isinstance(other, HallElement)
            and self.sign == other.sign
            and self.terms == other.terms
        )

    def __add__(self, other):
        if self.sign != other.sign:
            raise ValueError("cannot add opposite halves")
        out = dict(self.terms)
        for A, c in other.terms.items():
            s = out.get(A, RationalFn.zero()) + c
            if s.is_zero():
                out.pop(A, None)
            else:
                out[A] = s
        return HallElement(self.sign, out)

    def scale(self, c) -> "HallElement":
        c = RationalFn.coerce(c)
        return HallElement(self.sign, {A: c * x for A, x in self.terms.items()})

    def __mul__(self, other: "HallElement") -> "HallElement":
        if self.sign != other.sign:
            raise ValueError("mixed-sign products live in the double algebra")
        pair = plus_pair if self.sign == PLUS else minus_pair
        out: dict[PeriodicMat, RationalFn] = {}
        for A, ca in self.terms.items():
            for B, cb in other.terms.items():
                for C, coeff in pair(A, B).items():
                    s = out.get(C, RationalFn.zero()) + ca * cb * coeff
                    if s.is_zero():
                        out.pop(C, None)
                    else:
                        out[C] = s
        return HallElement(self.sign, out)

    def __repr__(self):
        if not self.terms:
            return "HallElement(0)"
        bits = [f"({c})*u{self.sign}{dict(A.entries)}" for A, c in self.terms.items()]
        return " + ".join(bits)


def plus_product(x: HallElement, y: HallElement) -> HallElement:
    if x.sign != PLUS or y.sign != PLUS:
        raise ValueError("plus_product expects raising-half elements")
    return x * y


def minus_product(x: HallElement, y: HallElement) -> HallElement:
    if x.sign != MINUS or y.sign != MINUS:
        raise ValueError("minus_product expects lowering-half elements")
    return x * y
