"""Sparse exact polynomials in the coupling parameter and two geometric variables.

A polynomial is stored as a dict mapping exponent triples (em, e1, e2) to
nonzero rational coefficients.  em is the exponent of the coupling parameter m
and is always >= 0.  The meaning of the geometric variables depends on the
semantics tag:

  TRIG     t1, t2 are the exponentials z1 = e^{y1}, z2 = e^{y2} of the lattice
           coordinates; e1, e2 may be negative (Laurent).
  RATIONAL t1, t2 are the linear coordinates w1, w2; e1, e2 must be >= 0.

The zero polynomial is the empty dict.  Structural equality of canonical
dicts is polynomial equality; the graded-lexicographic order with m < t1 < t2
fixes leading terms for sign normalization.
"""

from __future__ import annotations

from .errors import DomainError, SemanticsError
from .rational import Int, Rat, ZERO

TRIG = "trig"
RATIONAL = "rational"

Exponent = tuple  # (em, e1, e2)

# Kronecker-substitution multiplication kicks in above this many term pairs.
_KRON_PAIR_THRESHOLD = 60_000
_KRON_MAX_BYTES = 256 * 1024 * 1024


def _grlex_key(exp: Exponent):
    em, e1, e2 = exp
    return (em + e1 + e2, e2, e1, em)


class MPoly:
    """Sparse multivariate polynomial over the rationals with a semantics tag."""

    __slots__ = ("sem", "terms", "_hash")

    def __init__(self, terms, sem: str):
        if sem not in (TRIG, RATIONAL):
            raise SemanticsError(f"unknown semantics tag: {sem!r}")
        clean = {}
        for exp, c in terms.items():
            c = Rat(c)
            if not c:
                continue
            em, e1, e2 = exp
            if em < 0:
                raise ValueError(f"negative exponent of m in {exp}")
            if sem == RATIONAL and (e1 < 0 or e2 < 0):
                raise ValueError(f"negative geometric exponent {exp} under rational semantics")
            clean[(em, e1, e2)] = c
        self.sem = sem
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, sem: str, terms: dict) -> "MPoly":
        """Internal constructor: terms must already be canonical (no zeros)."""
        self = object.__new__(cls)
        self.sem = sem
        self.terms = terms
        self._hash = None
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, sem: str) -> "MPoly":
        return cls._make(sem, {})

    @classmethod
    def const(cls, value, sem: str) -> "MPoly":
        v = Rat(value)
        return cls._make(sem, {(0, 0, 0): v} if v else {})

    @classmethod
    def var_m(cls, sem: str) -> "MPoly":
        return cls._make(sem, {(1, 0, 0): Rat(1)})

    @classmethod
    def monomial(cls, coeff, em: int, e1: int, e2: int, sem: str) -> "MPoly":
        return cls({(em, e1, e2): coeff}, sem)

    @classmethod
    def exponential(cls, c1: int, c2: int, sem: str = TRIG) -> "MPoly":
        """The monomial t1^c1 * t2^c2 (e^{c1*y1 + c2*y2} under trig semantics)."""
        return cls({(0, c1, c2): Rat(1)}, sem)

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.sem == other.sem and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.sem, tuple(sorted(self.terms.items()))))
            self._hash = h
        return h

    def _require_same(self, other: "MPoly"):
        if self.sem != other.sem:
            raise SemanticsError(f"mixed semantics: {self.sem} vs {other.sem}")

    def max_exp(self, var: int) -> int:
        """Largest exponent of variable var (0 = m, 1 = t1, 2 = t2); 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(e[var] for e in self.terms)

    def min_exp(self, var: int) -> int:
        if not self.terms:
            return 0
        return min(e[var] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(em + e1 + e2 for (em, e1, e2) in self.terms)

    def lead_key(self) -> Exponent:
        """Exponent of the leading term under grlex with m < t1 < t2."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def lead_coeff(self) -> Rat:
        return self.terms[self.lead_key()]

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "MPoly":
        return MPoly._make(self.sem, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = _coerce_const(other, self.sem)
            if other is None:
                return NotImplemented
        self._require_same(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly._make(self.sem, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = _coerce_const(other, self.sem)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                c = Rat(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MPoly.zero(self.sem)
            return MPoly._make(self.sem, {e: v * c for e, v in self.terms.items()})
        self._require_same(other)
        if not self.terms or not other.terms:
            return MPoly.zero(self.sem)
        return MPoly._make(self.sem, _mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(1, self.sem)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and substitution -----------------------------------------

    def deriv(self, var: int) -> "MPoly":
        """Ordinary partial derivative d/dt_var (var is 1 or 2); Laurent exponents allowed."""
        out = {}
        for (em, e1, e2), c in self.terms.items():
            if var == 1:
                if e1:
                    out[(em, e1 - 1, e2)] = c * e1
            else:
                if e2:
                    out[(em, e1, e2 - 1)] = c * e2
        return MPoly._make(self.sem, out)

    def theta(self, var: int) -> "MPoly":
        """The Euler derivative t*d/dt (the y-derivative under trig semantics)."""
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                out[e] = c * k
        return MPoly._make(self.sem, out)

    def evaluate(self, m0, t1, t2) -> Rat:
        """Exact value at the rational point (m0, t1, t2)."""
        m0, t1, t2 = Rat(m0), Rat(t1), Rat(t2)
        if self.sem == TRIG and (not t1 or not t2):
            raise DomainError("z variables must be nonzero under trig semantics")
        total = ZERO
        for (em, e1, e2), c in self.terms.items():
            total += c * m0**em * t1**e1 * t2**e2
        return total

    def subst_m(self, m0) -> "MPoly":
        """Specialize the coupling parameter to the rational m0."""
        m0 = Rat(m0)
        out = {}
        for (em, e1, e2), c in self.terms.items():
            v = c * m0**em
            if not v:
                continue
            key = (0, e1, e2)
            s = out.get(key)
            if s is None:
                out[key] = v
            else:
                s = s + v
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MPoly._make(self.sem, out)

    def map_exponents(self, mat) -> "MPoly":
        """Apply the integer substitution (e1, e2) -> (a*e1 + b*e2, c*e1 + d*e2).

        mat = (a, b, c, d).  Under trig semantics this realizes a monomial
        substitution z^e -> z^(M e), which is how the configuration rotations
        act on functions.
        """
        a, b, c, d = mat
        out = {}
        for (em, e1, e2), v in self.terms.items():
            key = (em, a * e1 + b * e2, c * e1 + d * e2)
            s = out.get(key)
            if s is None:
                out[key] = v
            else:
                s = s + v
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MPoly._make(self.sem, out)

    def mono_shift(self, s1: int, s2: int) -> "MPoly":
        """Multiply by the monomial t1^s1 * t2^s2."""
        if s1 == 0 and s2 == 0:
            return self
        return MPoly._make(
            self.sem, {(em, e1 + s1, e2 + s2): c for (em, e1, e2), c in self.terms.items()}
        )

    def shifted_ordinary(self) -> tuple["MPoly", int, int]:
        """Clear negative geometric exponents and strip any common monomial factor.

        Returns (p, s1, s2) with p ordinary, min geometric exponents 0, and
        self = p * t1^s1 * t2^s2.
        """
        if not self.terms:
            return self, 0, 0
        s1 = self.min_exp(1)
        s2 = self.min_exp(2)
        return self.mono_shift(-s1, -s2), s1, s2

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        v1, v2 = ("z1", "z2") if self.sem == TRIG else ("w1", "w2")
        parts = []
        for exp in sorted(self.terms, key=_grlex_key, reverse=True):
            em, e1, e2 = exp
            c = self.terms[exp]
            factors = []
            if em:
                factors.append("m" if em == 1 else f"m^{em}")
            if e1:
                factors.append(v1 if e1 == 1 else f"{v1}^{e1}")
            if e2:
                factors.append(v2 if e2 == 1 else f"{v2}^{e2}")
            body = "*".join(factors)
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MPoly({self}, {self.sem})"


# -- multiplication backends -----------------------------------------------


def _coerce_const(value, sem: str) -> "MPoly | None":
    try:
        return MPoly.const(Rat(value), sem)
    except TypeError:
        return None


def _mul_terms(da: dict, db: dict) -> dict:
    """Product of two canonical term dicts (either semantics)."""
    if len(da) > len(db):
        da, db = db, da
    pairs = len(da) * len(db)
    if pairs <= 400:
        return _mul_dict(da, db)
    # Contents out: integer coefficient loops are substantially faster.
    ca, ia = _extract_content(da)
    cb, ib = _extract_content(db)
    scale = ca * cb
    if pairs > _KRON_PAIR_THRESHOLD:
        prod = _kron_mul(ia, ib)
        if prod is None:
            prod = _mul_dict(ia, ib)
    else:
        prod = _mul_dict(ia, ib)
    return {e: scale * c for e, c in prod.items()}


def _mul_dict(da: dict, db: dict) -> dict:
    if len(da) > len(db):
        da, db = db, da
    out = {}
    get = out.get
    items_b = list(db.items())
    for (a0, a1, a2), va in da.items():
        for (b0, b1, b2), vb in items_b:
            key = (a0 + b0, a1 + b1, a2 + b2)
            cur = get(key)
            if cur is None:
                out[key] = va * vb
            else:
                out[key] = cur + va * vb
    return {e: c for e, c in out.items() if c}


def _extract_content(terms: dict) -> tuple[Rat, dict]:
    """Split into (rational content, integer-coefficient dict with content 1 up to sign)."""
    from .rational import int_gcd

    num_gcd = 0
    den_lcm = 1
    for c in terms.values():
        num_gcd = int_gcd(num_gcd, c.numerator)
        d = c.denominator
        den_lcm = den_lcm // int_gcd(den_lcm, d) * d
    content = Rat(num_gcd, den_lcm)
    inv = 1 / content
    return content, {e: Int(c * inv) for e, c in terms.items()}


def _kron_mul(da: dict, db: dict) -> dict | None:
    """Kronecker-substitution product of integer term dicts, or None if unprofitable.

    Both polynomials are packed into single big integers on the dense exponent
    grid of the product, multiplied with GMP, and the product is unpacked with
    balanced-digit decoding (coefficients may be negative).
    """
    lo = [0, 0, 0]
    span = [0, 0, 0]
    for var in (0, 1, 2):
        amin = min(e[var] for e in da)
        amax = max(e[var] for e in da)
        bmin = min(e[var] for e in db)
        bmax = max(e[var] for e in db)
        lo[var] = amin + bmin
        span[var] = (amax + bmax) - (amin + bmin) + 1
    nslots = span[0] * span[1] * span[2]
    max_a = max(abs(c) for c in da.values())
    max_b = max(abs(c) for c in db.values())
    bound = max_a * max_b * min(len(da), len(db))
    slot_bytes = (bound.bit_length() + 2 + 7) // 8
    if nslots * slot_bytes > _KRON_MAX_BYTES:
        return None

    s0, s1, s2 = span
    half = 1 << (8 * slot_bytes - 1)
    full = 1 << (8 * slot_bytes)

    def pack(terms: dict, base: tuple) -> int:
        pos = bytearray(nslots * slot_bytes)
        neg = bytearray(nslots * slot_bytes)
        b0, b1, b2 = base
        for (em, e1, e2), c in terms.items():
            idx = (em - b0) + s0 * ((e1 - b1) + s1 * (e2 - b2))
            off = idx * slot_bytes
            c = int(c)
            if c >= 0:
                pos[off : off + slot_bytes] = c.to_bytes(slot_bytes, "little")
            else:
                neg[off : off + slot_bytes] = (-c).to_bytes(slot_bytes, "little")
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    base_a = (min(e[0] for e in da), min(e[1] for e in da), min(e[2] for e in da))
    base_b = (min(e[0] for e in db), min(e[1] for e in db), min(e[2] for e in db))
    product = Int(pack(da, base_a)) * Int(pack(db, base_b))

    negative = product < 0
    if negative:
        product = -product
    raw = int(product).to_bytes(nslots * slot_bytes + slot_bytes, "little")
    out = {}
    carry = 0
    for idx in range(nslots):
        off = idx * slot_bytes
        digit = int.from_bytes(raw[off : off + slot_bytes], "little") + carry
        if digit >= half:
            digit -= full
            carry = 1
        else:
            carry = 0
        if digit:
            e2, r = divmod(idx, s0 * s1)
            e1, e0 = divmod(r, s0)
            c = Int(-digit) if negative else Int(digit)
            out[(e0 + lo[0], e1 + lo[1], e2 + lo[2])] = c
    return out
