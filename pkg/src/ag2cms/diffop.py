"""Differential operators in two derivative symbols with rational-function coefficients.

An operator is a finite association from derivative multi-indices (a, b) to
nonzero RatFunc coefficients, always kept in normal order: coefficients stand
to the left, derivatives to the right.  Under trig semantics the derivative
symbols are d/dy1, d/dy2 (realized on functions of z as z_i * d/dz_i); under
rational semantics they are d/dw1, d/dw2.

The zero operator is the empty association and reports order None.
"""

from __future__ import annotations

from math import comb

from .errors import SemanticsError
from .mpoly import MPoly, TRIG
from .ratfunc import RatFunc
from .rational import Rat


class DiffOp:
    __slots__ = ("sem", "coeffs", "_hash")

    def __init__(self, coeffs: dict, sem: str):
        clean = {}
        for (a, b), c in coeffs.items():
            if a < 0 or b < 0:
                raise ValueError(f"negative derivative index ({a}, {b})")
            if not isinstance(c, RatFunc):
                c = RatFunc.const(c, sem)
            if c.sem != sem:
                raise SemanticsError("coefficient semantics does not match operator tag")
            if not c.is_zero:
                clean[(a, b)] = c
        self.sem = sem
        self.coeffs = clean
        self._hash = None

    @classmethod
    def _make(cls, sem: str, coeffs: dict) -> "DiffOp":
        self = object.__new__(cls)
        self.sem = sem
        self.coeffs = coeffs
        self._hash = None
        return self

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, sem: str) -> "DiffOp":
        return cls._make(sem, {})

    @classmethod
    def identity(cls, sem: str) -> "DiffOp":
        return cls._make(sem, {(0, 0): RatFunc.one(sem)})

    @classmethod
    def mult(cls, f: RatFunc) -> "DiffOp":
        """Multiplication operator by the function f."""
        if f.is_zero:
            return cls.zero(f.sem)
        return cls._make(f.sem, {(0, 0): f})

    @classmethod
    def partial_y(cls, var: int, sem: str = TRIG) -> "DiffOp":
        """The derivative along lattice coordinate y_var (var is 1 or 2)."""
        key = (1, 0) if var == 1 else (0, 1)
        return cls._make(sem, {key: RatFunc.one(sem)})

    @classmethod
    def from_symbol(cls, c1: int, c2: int, sem: str) -> "DiffOp":
        """The constant-coefficient operator c1*d_y1 + c2*d_y2."""
        coeffs = {}
        if c1:
            coeffs[(1, 0)] = RatFunc.const(c1, sem)
        if c2:
            coeffs[(0, 1)] = RatFunc.const(c2, sem)
        return cls._make(sem, coeffs)

    # -- structure ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def order(self) -> int | None:
        """Total order, or None for the zero operator."""
        if not self.coeffs:
            return None
        return max(a + b for (a, b) in self.coeffs)

    def coefficient(self, a: int, b: int) -> RatFunc:
        return self.coeffs.get((a, b), RatFunc.zero(self.sem))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.sem == other.sem and self.coeffs == other.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.sem, tuple(sorted(self.coeffs.items()))))
            self._hash = h
        return h

    def _require_same(self, other: "DiffOp"):
        if self.sem != other.sem:
            raise SemanticsError(f"mixed semantics: {self.sem} vs {other.sem}")

    # -- linear arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._require_same(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            cur = out.get(k)
            if cur is None:
                out[k] = c
            else:
                s = cur + c
                if s.is_zero:
                    del out[k]
                else:
                    out[k] = s
        return DiffOp._make(self.sem, out)

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "DiffOp":
        return DiffOp._make(self.sem, {k: -c for k, c in self.coeffs.items()})

    def scale(self, f) -> "DiffOp":
        """Coefficient-wise multiplication by a function (left multiplication)."""
        if not isinstance(f, RatFunc):
            f = RatFunc.const(f, self.sem)
        if f.is_zero:
            return DiffOp.zero(self.sem)
        out = {}
        for k, c in self.coeffs.items():
            p = f * c
            if not p.is_zero:
                out[k] = p
        return DiffOp._make(self.sem, out)

    def __mul__(self, other):
        """Operator product: A * B composes; A * f right-multiplies by mult(f)."""
        if isinstance(other, DiffOp):
            return self.compose(other)
        if isinstance(other, RatFunc):
            return self.compose(DiffOp.mult(other))
        try:
            c = Rat(other)
        except TypeError:
            return NotImplemented
        return self.scale(RatFunc.const(c, self.sem))

    def __rmul__(self, other):
        """f * A is coefficient-wise scaling (mult(f) composed with A)."""
        if isinstance(other, (RatFunc, MPoly)):
            if isinstance(other, MPoly):
                other = RatFunc.from_poly(other)
            return self.scale(other)
        try:
            c = Rat(other)
        except TypeError:
            return NotImplemented
        return self.scale(RatFunc.const(c, self.sem))

    # -- composition and friends ------------------------------------------------------

    def compose(self, other: "DiffOp") -> "DiffOp":
        """Normal-ordered product self . other via the Leibniz expansion."""
        self._require_same(other)
        if not self.coeffs or not other.coeffs:
            return DiffOp.zero(self.sem)
        a1max = max(a for (a, _) in self.coeffs)
        a2max = max(b for (_, b) in self.coeffs)
        acc: dict = {}
        for kb, d in other.coeffs.items():
            table = _derivative_table(d, a1max, a2max)
            b1, b2 = kb
            for (a1, a2), c in self.coeffs.items():
                for i in range(a1 + 1):
                    row = table[a1 - i]
                    ci = comb(a1, i)
                    for j in range(a2 + 1):
                        dd = row[a2 - j]
                        if dd.is_zero:
                            continue
                        term = c * dd
                        w = ci * comb(a2, j)
                        if w != 1:
                            term = term * w
                        key = (i + b1, j + b2)
                        cur = acc.get(key)
                        acc[key] = term if cur is None else cur + term
        return DiffOp._make(self.sem, {k: v for k, v in acc.items() if not v.is_zero})

    def apply(self, g: RatFunc) -> RatFunc:
        """The operator acting on the function g."""
        if g.sem != self.sem:
            raise SemanticsError("function semantics does not match operator tag")
        if not self.coeffs:
            return RatFunc.zero(self.sem)
        a1max = max(a for (a, _) in self.coeffs)
        a2max = max(b for (_, b) in self.coeffs)
        table = _derivative_table(g, a1max, a2max)
        total = RatFunc.zero(self.sem)
        for (a, b), c in self.coeffs.items():
            dg = table[a][b]
            if not dg.is_zero:
                total = total + c * dg
        return total

    def adjoint(self) -> "DiffOp":
        """Formal adjoint for the translation-invariant measure: (f d^k)* = (-d)^k . f."""
        out = DiffOp.zero(self.sem)
        for (a, b), c in self.coeffs.items():
            sign = -1 if (a + b) % 2 else 1
            table = _derivative_table(c, a, b)
            terms: dict = {}
            for i in range(a + 1):
                for j in range(b + 1):
                    dd = table[a - i][b - j]
                    if dd.is_zero:
                        continue
                    w = comb(a, i) * comb(b, j) * sign
                    terms[(i, j)] = dd * w if w != 1 else dd
            out = out + DiffOp._make(self.sem, terms)
        return out

    def order_part(self, k: int) -> "DiffOp":
        """The sum of normal-ordered terms with total derivative order exactly k."""
        return DiffOp._make(
            self.sem, {kk: c for kk, c in self.coeffs.items() if kk[0] + kk[1] == k}
        )

    def substitute_m(self, m0) -> "DiffOp":
        out = {}
        for k, c in self.coeffs.items():
            cs = c.subst_m(m0)
            if not cs.is_zero:
                out[k] = cs
        return DiffOp._make(self.sem, out)

    # -- rendering ---------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        d1, d2 = ("dy1", "dy2") if self.sem == TRIG else ("dw1", "dw2")
        parts = []
        for (a, b) in sorted(self.coeffs, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.coeffs[(a, b)]
            sym = []
            if a:
                sym.append(d1 if a == 1 else f"{d1}^{a}")
            if b:
                sym.append(d2 if b == 1 else f"{d2}^{b}")
            body = " ".join(sym)
            parts.append(f"({c}) {body}".strip())
        return "  +  ".join(parts)

    def __repr__(self) -> str:
        n = len(self.coeffs)
        return f"DiffOp(order={self.order}, terms={n}, sem={self.sem})"


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    """The commutator a.b - b.a in normal-ordered form."""
    return a.compose(b) - b.compose(a)


def _derivative_table(g: RatFunc, n1: int, n2: int) -> list:
    """Grid of lattice derivatives d_y1^i d_y2^j g for i <= n1, j <= n2."""
    table = [[None] * (n2 + 1) for _ in range(n1 + 1)]
    table[0][0] = g
    for i in range(1, n1 + 1):
        table[i][0] = table[i - 1][0].y_partial(1)
    for i in range(n1 + 1):
        row = table[i]
        for j in range(1, n2 + 1):
            row[j] = row[j - 1].y_partial(2)
    return table
