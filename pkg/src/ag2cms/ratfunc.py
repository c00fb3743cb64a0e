"""Normalized quotients of sparse polynomials: the coefficient field of all operators.

Canonical representative: the denominator is an ordinary polynomial (no
negative exponents, no monomial factor), integer-primitive, with positive
leading coefficient under grlex(m < t1 < t2); numerator and denominator are
coprime; zero is uniquely (0, 1).  Structural equality of canonical forms is
then equality of rational functions, which is what every identity check in
the verification suites ultimately relies on.
"""

from __future__ import annotations

from .errors import PoleError, SemanticsError
from .mpoly import MPoly, RATIONAL, TRIG, _extract_content
from .polygcd import divexact, poly_gcd
from .rational import Rat


def _is_unit(g: MPoly) -> bool:
    return len(g.terms) == 1 and g.terms.get((0, 0, 0)) == 1


class RatFunc:
    """Exact rational function in m and the two geometric variables."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MPoly, den: MPoly):
        canon = RatFunc.make(num, den)
        self.num = canon.num
        self.den = canon.den
        self._hash = None

    @classmethod
    def _create(cls, num: MPoly, den: MPoly) -> "RatFunc":
        """Trusted constructor: (num, den) must already be canonical."""
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def make(cls, num: MPoly, den: MPoly) -> "RatFunc":
        """Canonicalize num/den, cancelling the gcd and normalizing the denominator."""
        num._require_same(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            return cls._create(num, MPoly.const(1, num.sem))
        g = poly_gcd(num, den)
        if not _is_unit(g):
            num = divexact(num, g)
            den = divexact(den, g)
        return cls._coprime(num, den)

    @classmethod
    def _coprime(cls, num: MPoly, den: MPoly) -> "RatFunc":
        """Normalize num/den already known to be coprime."""
        s1 = den.min_exp(1)
        s2 = den.min_exp(2)
        if s1 or s2:
            num = num.mono_shift(-s1, -s2)
            den = den.mono_shift(-s1, -s2)
        content, iden = _extract_content(den.terms)
        den = MPoly._make(den.sem, {e: Rat(c) for e, c in iden.items()})
        if den.lead_coeff() < 0:
            den = -den
            content = -content
        if content != 1:
            num = num * (1 / content)
        return cls._create(num, den)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_poly(cls, p: MPoly) -> "RatFunc":
        return cls._create(p, MPoly.const(1, p.sem))

    @classmethod
    def const(cls, value, sem: str) -> "RatFunc":
        return cls.from_poly(MPoly.const(value, sem))

    @classmethod
    def zero(cls, sem: str) -> "RatFunc":
        return cls.from_poly(MPoly.zero(sem))

    @classmethod
    def one(cls, sem: str) -> "RatFunc":
        return cls.const(1, sem)

    @classmethod
    def var_m(cls, sem: str) -> "RatFunc":
        return cls.from_poly(MPoly.var_m(sem))

    # -- structure -----------------------------------------------------------

    @property
    def sem(self) -> str:
        return self.num.sem

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return (
                self.sem == other.sem
                and self.num.terms == other.num.terms
                and self.den.terms == other.den.terms
            )
        coerced = _coerce(other, self.sem)
        if coerced is None:
            return NotImplemented
        return self == coerced

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            self._hash = h
        return h

    def _require_same(self, other: "RatFunc"):
        if self.sem != other.sem:
            raise SemanticsError(f"mixed semantics: {self.sem} vs {other.sem}")

    # -- field arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other, self.sem)
            if other is None:
                return NotImplemented
        self._require_same(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den.terms == other.den.terms:
            num = self.num + other.num
            if num.is_zero:
                return RatFunc.zero(self.sem)
            g = poly_gcd(num, self.den)
            if _is_unit(g):
                return RatFunc._coprime(num, self.den)
            return RatFunc._coprime(divexact(num, g), divexact(self.den, g))
        g = poly_gcd(self.den, other.den)
        if _is_unit(g):
            num = self.num * other.den + other.num * self.den
            if num.is_zero:
                return RatFunc.zero(self.sem)
            return RatFunc._coprime(num, self.den * other.den)
        a_red = divexact(self.den, g)
        b_red = divexact(other.den, g)
        num = self.num * b_red + other.num * a_red
        if num.is_zero:
            return RatFunc.zero(self.sem)
        h = poly_gcd(num, g)
        den = a_red * other.den
        if not _is_unit(h):
            num = divexact(num, h)
            den = divexact(den, h)
        return RatFunc._coprime(num, den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._create(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other, self.sem)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other, self.sem)
            if other is None:
                return NotImplemented
        self._require_same(other)
        if self.is_zero or other.is_zero:
            return RatFunc.zero(self.sem)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        a_num = self.num if _is_unit(g1) else divexact(self.num, g1)
        b_den = other.den if _is_unit(g1) else divexact(other.den, g1)
        b_num = other.num if _is_unit(g2) else divexact(other.num, g2)
        a_den = self.den if _is_unit(g2) else divexact(self.den, g2)
        return RatFunc._coprime(a_num * b_num, a_den * b_den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc._coprime(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other, self.sem)
            if other is None:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        coerced = _coerce(other, self.sem)
        if coerced is None:
            return NotImplemented
        return coerced * self.inv()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inv() ** (-n)
        result = RatFunc.one(self.sem)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus, evaluation, substitution -----------------------------------

    def partial(self, var: int) -> "RatFunc":
        """Exact partial derivative d/dt_var (var is 1 or 2)."""
        return self._diff(lambda p: p.deriv(var))

    def y_partial(self, var: int) -> "RatFunc":
        """Derivative along the lattice coordinate: t*d/dt under trig, d/dt under rational."""
        if self.sem == TRIG:
            return self._diff(lambda p: p.theta(var))
        return self._diff(lambda p: p.deriv(var))

    def _diff(self, d) -> "RatFunc":
        dnum = d(self.num)
        dden = d(self.den)
        if dden.is_zero:
            if dnum.is_zero:
                return RatFunc.zero(self.sem)
            g = poly_gcd(dnum, self.den)
            if _is_unit(g):
                return RatFunc._coprime(dnum, self.den)
            return RatFunc._coprime(divexact(dnum, g), divexact(self.den, g))
        g = poly_gcd(self.den, dden)
        if _is_unit(g):
            return RatFunc.make(dnum * self.den - self.num * dden, self.den * self.den)
        q0 = divexact(self.den, g)
        return RatFunc.make(dnum * q0 - self.num * divexact(dden, g), self.den * q0)

    def eval_at(self, m0, t1, t2) -> Rat:
        """Exact value at a rational point; PoleError at denominator zeros."""
        dval = self.den.evaluate(m0, t1, t2)
        if not dval:
            raise PoleError(f"denominator vanishes at (m={m0}, {t1}, {t2})")
        return self.num.evaluate(m0, t1, t2) / dval

    def subst_m(self, m0) -> "RatFunc":
        return RatFunc.make(self.num.subst_m(m0), self.den.subst_m(m0))

    def map_exponents(self, mat) -> "RatFunc":
        return RatFunc.make(self.num.map_exponents(mat), self.den.map_exponents(mat))

    # -- rendering -------------------------------------------------------------

    def __str__(self) -> str:
        if self.den == MPoly.const(1, self.sem):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _coerce(value, sem: str) -> RatFunc | None:
    if isinstance(value, MPoly):
        return RatFunc.from_poly(value)
    try:
        return RatFunc.const(Rat(value), sem)
    except TypeError:
        return None
