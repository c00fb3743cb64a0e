"""Arbitrary-precision exact rationals.

gmpy2's mpq is used when available (it is markedly faster on the large
coefficient loads produced by operator composition); fractions.Fraction is a
drop-in fallback.  Both keep the canonical form gcd(|num|, den) = 1 with a
positive denominator, which is exactly the invariant the rest of the engine
relies on.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat
    from gmpy2 import mpz as Int
    from gmpy2 import gcd as int_gcd

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat
    from math import gcd as int_gcd

    Int = int
    HAVE_GMPY2 = False

RatLike = object  # ints and Rat are both accepted wherever RatLike appears

ZERO = Rat(0)
ONE = Rat(1)


def rat(p, q=1) -> Rat:
    """Build the rational p/q."""
    return Rat(p, q)


def parse_rational(text: str) -> Rat:
    """Parse 'P' or 'P/Q' with optional sign.  No floats are accepted."""
    s = text.strip()
    num, slash, den = s.partition("/")
    try:
        p = int(num, 10)
        q = int(den, 10) if slash else 1
    except ValueError:
        raise ValueError(f"malformed rational literal: {text!r}") from None
    if slash and q == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Rat(p, q)


def format_rational(r) -> str:
    """Render as 'P' for integers and 'P/Q' otherwise."""
    r = Rat(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"
