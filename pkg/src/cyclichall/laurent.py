"""Exact arithmetic over Z[v, v^-1] and its fraction field.

Laurent polynomials are sparse maps exponent -> integer coefficient, with
arbitrary-precision integers throughout.  Rational functions are kept in a
canonical reduced form so that equality of values is equality of
representations:

* numerator and denominator are coprime in Q[v] after clearing powers of v,
* the denominator is an ordinary polynomial (lowest exponent 0) with positive
  leading coefficient,
* the integer contents of numerator and denominator are coprime.

Specialisations: `eval_at_prime_power` substitutes v^2 = q for elements of
Z[v^2, v^-2], and `specialize_v1` evaluates at v = 1.  Both are exact.
"""

from __future__ import annotations

from fractions import Fraction


class NotDivisible(ArithmeticError):
    """Raised when an exact division in Z[v, v^-1] leaves a remainder."""


class DenominatorVanishes(ZeroDivisionError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


class PoleAtOne(ZeroDivisionError):
    """Raised when specialising at v = 1 hits a pole."""


class VerificationFailed(ArithmeticError):
    """Raised when interpolation verification points do not match the fit."""


class NonIntegerCoefficients(ArithmeticError):
    """Raised when an interpolated polynomial is not defined over Z."""


class LaurentPoly:
    """Element of Z[v, v^-1] as a finitely supported exponent -> coefficient map."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.coeffs = {e: c for e, c in coeffs.items() if c != 0}

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def v_power(e: int, c: int = 1) -> "LaurentPoly":
        return LaurentPoly({e: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: 1}

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def as_int(self):
        """The constant value if self is a constant, else None."""
        if not self.coeffs:
            return 0
        if self.coeffs.keys() == {0}:
            return self.coeffs[0]
        return None

    def min_exp(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs.values():
            g = gcd(g, c)
        return g

    def leading_coeff(self) -> int:
        return self.coeffs[self.max_exp()] if self.coeffs else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        return res

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            ((e, c),) = self.coeffs.items()
            if c * c != 1:
                raise NotDivisible("negative power of a non-unit")
            return LaurentPoly({e * k: c if k % 2 else 1})
        out = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in Z[v, v^-1]; raises NotDivisible on a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        # reduce to ordinary polynomial division, remembering the v-shift
        sa, sb = self.min_exp(), other.min_exp()
        num = {e - sa: c for e, c in self.coeffs.items()}
        den = {e - sb: c for e, c in other.coeffs.items()}
        dden = max(den)
        lead = den[dden]
        quot: dict[int, int] = {}
        while num:
            dnum = max(num)
            if dnum < dden:
                raise NotDivisible("remainder is nonzero")
            c = num[dnum]
            if c % lead:
                raise NotDivisible("leading coefficient does not divide")
            q = c // lead
            quot[dnum - dden] = q
            for e, cd in den.items():
                ne = e + dnum - dden
                s = num.get(ne, 0) - q * cd
                if s:
                    num[ne] = s
                else:
                    num.pop(ne, None)
        return LaurentPoly({e + sa - sb: c for e, c in quot.items()})

    def eval_fraction(self, x: Fraction) -> Fraction:
        """Exact evaluation at v = x (x nonzero if negative exponents occur)."""
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += c * x**e
        return total

    def subs_v2(self, q: int) -> Fraction:
        """Exact evaluation with v^2 = q; requires all exponents even."""
        total = Fraction(0)
        for e, c in self.coeffs.items():
            if e % 2:
                raise ValueError("polynomial is not in Z[v^2, v^-2]")
            total += c * Fraction(q) ** (e // 2)
        return total

    def __repr__(self):
        return f"LaurentPoly({poly_str(self)})"

    def __str__(self):
        return poly_str(self)


def poly_str(p: LaurentPoly, var: str = "v") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for e in sorted(p.coeffs, reverse=True):
        c = p.coeffs[e]
        if e == 0:
            term = str(abs(c))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            term = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        parts.append(("- " if c < 0 else "+ ") + term)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _poly_gcd(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    """Primitive gcd in Z[v] of two ordinary polynomials (dict form, min exp 0)."""
    from math import gcd as igcd

    def content(p):
        g = 0
        for c in p.values():
            g = igcd(g, c)
        return g

    # monic Euclid over Q, then clear to a primitive integer polynomial
    fa = {e: Fraction(c) for e, c in a.items()}
    fb = {e: Fraction(c) for e, c in b.items()}
    while fb:
        da, db = max(fa), max(fb)
        if da < db:
            fa, fb = fb, fa
            continue
        lead = fb[db]
        while fa and max(fa) >= db:
            d = max(fa)
            q = fa[d] / lead
            for e, c in fb.items():
                ne = e + d - db
                s = fa.get(ne, Fraction(0)) - q * c
                if s:
                    fa[ne] = s
                else:
                    fa.pop(ne, None)
        fa, fb = fb, fa
    if not fa:
        return {}
    denoms = 1
    for c in fa.values():
        denoms = denoms * c.denominator // igcd(denoms, c.denominator)
    ip = {e: int(c * denoms) for e, c in fa.items()}
    g = content(ip)
    ip = {e: c // g for e, c in ip.items()}
    if ip[max(ip)] < 0:
        ip = {e: -c for e, c in ip.items()}
    return ip


class RationalFn:
    """Element of Q(v) as a reduced fraction of Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, _canonical: bool = False):
        if _canonical:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = LaurentPoly(), LaurentPoly.one()
            return
        from math import gcd as igcd

        if den.is_one():
            self.num, self.den = num, den
            return
        if den.is_monomial():
            ((e, c),) = den.coeffs.items()
            if c < 0:
                c = -c
                num = -num
            g = igcd(num.content(), c)
            self.num = LaurentPoly({ne - e: nc // g for ne, nc in num.coeffs.items()})
            self.den = LaurentPoly.const(c // g)
            return
        sa, sb = num.min_exp(), den.min_exp()
        pn = {e - sa: c for e, c in num.coeffs.items()}
        pd = {e - sb: c for e, c in den.coeffs.items()}
        g = _poly_gcd(pn, pd)
        if g and not (len(g) == 1 and g.get(0) == 1):
            gp = LaurentPoly(g)
            pn = LaurentPoly(pn).exact_div(gp).coeffs
            pd = LaurentPoly(pd).exact_div(gp).coeffs
        # clear the remaining v-power out of the denominator
        sd = min(pd)
        pd = {e - sd: c for e, c in pd.items()}
        cn = LaurentPoly(pn).content()
        cd = LaurentPoly(pd).content()
        cg = igcd(cn, cd)
        if cg > 1:
            pn = {e: c // cg for e, c in pn.items()}
            pd = {e: c // cg for e, c in pd.items()}
        if pd[max(pd)] < 0:
            pn = {e: -c for e, c in pn.items()}
            pd = {e: -c for e, c in pd.items()}
        self.num = LaurentPoly({e + sa - sb + sd: c for e, c in pn.items()})
        self.den = LaurentPoly(pd)

    @staticmethod
    def from_laurent(p: LaurentPoly) -> "RationalFn":
        return RationalFn(p, LaurentPoly.one(), _canonical=True)

    @staticmethod
    def zero() -> "RationalFn":
        return RationalFn.from_laurent(LaurentPoly())

    @staticmethod
    def one() -> "RationalFn":
        return RationalFn.from_laurent(LaurentPoly.one())

    @staticmethod
    def v_power(e: int, c: int = 1) -> "RationalFn":
        return RationalFn.from_laurent(LaurentPoly.v_power(e, c))

    @staticmethod
    def coerce(x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, LaurentPoly):
            return RationalFn.from_laurent(x)
        if isinstance(x, int):
            return RationalFn.from_laurent(LaurentPoly.const(x))
        if isinstance(x, Fraction):
            return RationalFn(
                LaurentPoly.const(x.numerator), LaurentPoly.const(x.denominator)
            )
        raise TypeError(f"cannot coerce {type(x)!r} to RationalFn")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        """True when self lies in Z[v, v^-1]."""
        return self.den.is_one()

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_one():
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.num

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly, Fraction)):
            other = RationalFn.coerce(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __neg__(self):
        return RationalFn(-self.num, self.den, _canonical=True)

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly, Fraction)):
            other = RationalFn.coerce(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, LaurentPoly, Fraction)):
            other = RationalFn.coerce(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly, Fraction)):
            other = RationalFn.coerce(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFn(self.num * other.num, self.den, _canonical=True)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, LaurentPoly, Fraction)):
            other = RationalFn.coerce(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __repr__(self):
        if self.den.is_one():
            return f"RationalFn({self.num})"
        return f"RationalFn(({self.num})/({self.den}))"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def eval_at_prime_power(x, q: int) -> Fraction:
    """Exact value of an element of Z[v^2, v^-2] (or a quotient) at v^2 = q.

    Raises DenominatorVanishes when q is a zero of the denominator, and
    ValueError when x involves odd powers of v.
    """
    if q <= 0:
        raise ValueError("evaluation point must be a positive integer")
    if isinstance(x, LaurentPoly):
        return x.subs_v2(q)
    x = RationalFn.coerce(x)
    den = x.den.subs_v2(q)
    if den == 0:
        raise DenominatorVanishes(f"denominator vanishes at v^2 = {q}")
    return x.num.subs_v2(q) / den


def specialize_v1(x) -> Fraction:
    """Exact value at v = 1; raises PoleAtOne on a genuine pole."""
    if isinstance(x, LaurentPoly):
        return x.eval_fraction(Fraction(1))
    x = RationalFn.coerce(x)
    den = x.den.eval_fraction(Fraction(1))
    if den == 0:
        raise PoleAtOne(f"{x} has a pole at v = 1")
    return x.num.eval_fraction(Fraction(1)) / den


def interpolate(samples, degree_bound: int) -> dict[int, int]:
    """Fit the unique integer polynomial in q through the leading samples.

    `samples` is a list of (q, value) pairs with distinct q.  The first
    `degree_bound + 1` samples determine the polynomial (Newton divided
    differences over Q); every remaining sample must match it exactly, else
    VerificationFailed.  Non-integer coefficients raise
    NonIntegerCoefficients.  Returns the polynomial as a sparse dict
    exponent -> coefficient in the variable q.
    """
    if len(samples) < degree_bound + 1:
        raise ValueError("not enough samples for the requested degree bound")
    qs = [s[0] for s in samples]
    if len(set(qs)) != len(qs):
        raise ValueError("sample points must be distinct")
    fit = samples[: degree_bound + 1]
    # Newton divided differences
    xs = [Fraction(p) for p, _ in fit]
    coef = [Fraction(val) for _, val in fit]
    m = len(fit)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand to monomial coefficients
    poly = [Fraction(0)] * m
    acc = [Fraction(1)]  # product (q - x_0)...(q - x_{k-1})
    for k in range(m):
        for e, c in enumerate(acc):
            poly[e] += coef[k] * c
        nxt = [Fraction(0)] * (len(acc) + 1)
        for e, c in enumerate(acc):
            nxt[e] -= xs[k] * c
            nxt[e + 1] += c
        acc = nxt
    if any(c.denominator != 1 for c in poly):
        raise NonIntegerCoefficients(f"fit through {fit} has non-integer coefficients")
    result = {e: int(c) for e, c in enumerate(poly) if c}

    def value_at(q):
        return sum(c * q**e for e, c in result.items())

    for q, val in samples:
        if value_at(q) != val:
            raise VerificationFailed(
                f"sample ({q}, {val}) disagrees with fit {result} -> {value_at(q)}"
            )
    return result


def qpoly_to_v2(p: dict[int, int]) -> LaurentPoly:
    """Reinterpret a polynomial in q as a Laurent polynomial via q = v^2."""
    return LaurentPoly({2 * e: c for e, c in p.items()})


def qpoly_eval(p: dict[int, int], q: int) -> int:
    return sum(c * q**e for e, c in p.items())


def qpoly_str(p: dict[int, int]) -> str:
    return poly_str(LaurentPoly(p), var="q")
