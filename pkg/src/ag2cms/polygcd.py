"""Exact division and greatest common divisors for MPoly.

The gcd kernel works on integer-primitive term dicts.  A heuristic
evaluation/interpolation gcd (evaluate one variable at a large integer,
recurse, reconstruct the candidate from balanced base-xi digits, verify by
exact division) is tried first; it almost always succeeds on the structured
denominators this engine produces and is far cheaper in Python than remainder
sequences.  A primitive polynomial-remainder-sequence gcd serves as the exact
fallback, and doubles as an independent implementation for cross-checking.
"""

from __future__ import annotations

import heapq
import random
from functools import lru_cache

from .errors import ExactDivisionError
from .mpoly import MPoly, _extract_content, _grlex_key
from .rational import Int, Rat, int_gcd

_HEURISTIC_TRIES = 6


class _HeuristicFailed(Exception):
    pass


# -- exact division ----------------------------------------------------------


def divexact(a: MPoly, b: MPoly) -> MPoly:
    """Exact quotient a / b; raises ExactDivisionError if b does not divide a.

    b must be nonzero.  Laurent inputs are handled by monomial bookkeeping:
    the quotient of the monomial parts is attached to the polynomial quotient.
    """
    a._require_same(b)
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero:
        return a
    ao, a1, a2 = a.shifted_ordinary()
    bo, b1, b2 = b.shifted_ordinary()
    ca, ia = _extract_content(ao.terms)
    cb, ib = _extract_content(bo.terms)
    q = _divexact_int(ia, ib)
    quot = MPoly._make(a.sem, {e: (ca / cb) * c for e, c in q.items()})
    return quot.mono_shift(a1 - b1, a2 - b2)


def divides(b: MPoly, a: MPoly) -> bool:
    """True iff b divides a exactly (both nonzero, ordinary or Laurent)."""
    try:
        divexact(a, b)
        return True
    except ExactDivisionError:
        return False


def _divexact_int(num: dict, den: dict) -> dict:
    """Exact quotient of ordinary integer term dicts; raises ExactDivisionError."""
    if len(den) == 1:
        (dk, dc), = den.items()
        out = {}
        for e, c in num.items():
            q, r = divmod(c, dc)
            e0, e1, e2 = e[0] - dk[0], e[1] - dk[1], e[2] - dk[2]
            if r or e0 < 0 or e1 < 0 or e2 < 0:
                raise ExactDivisionError("monomial does not divide")
            out[(e0, e1, e2)] = q
        return out
    for var in (0, 1, 2):
        if max(e[var] for e in num) < max(e[var] for e in den):
            raise ExactDivisionError("degree too small")
    dlead = max(den, key=_grlex_key)
    dcoeff = den[dlead]
    ditems = [(e, c) for e, c in den.items() if e != dlead]
    rem = dict(num)
    heap = [(_neg_key(e), e) for e in rem]
    heapq.heapify(heap)
    quotient: dict = {}
    while rem:
        # lazy-deletion heap: discard stale keys
        while heap:
            _, nk = heap[0]
            if nk in rem:
                break
            heapq.heappop(heap)
        if not heap:
            break
        nk = heap[0][1]
        nc = rem[nk]
        q0, q1, q2 = nk[0] - dlead[0], nk[1] - dlead[1], nk[2] - dlead[2]
        if q0 < 0 or q1 < 0 or q2 < 0:
            raise ExactDivisionError("leading monomial not divisible")
        qc, r = divmod(nc, dcoeff)
        if r:
            raise ExactDivisionError("leading coefficient not divisible")
        qk = (q0, q1, q2)
        quotient[qk] = qc
        del rem[nk]
        heapq.heappop(heap)
        for e, c in ditems:
            key = (e[0] + q0, e[1] + q1, e[2] + q2)
            cur = rem.get(key)
            if cur is None:
                rem[key] = -qc * c
                heapq.heappush(heap, (_neg_key(key), key))
            else:
                cur = cur - qc * c
                if cur:
                    rem[key] = cur
                else:
                    del rem[key]
    if rem:
        raise ExactDivisionError("nonzero remainder")
    return quotient


def _neg_key(e):
    s, a, b, c = _grlex_key(e)
    return (-s, -a, -b, -c)


# -- gcd ---------------------------------------------------------------------


@lru_cache(maxsize=8192)
def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """A gcd of a and b, positive leading coefficient, integer-primitive.

    Laurent inputs are first shifted by a monomial to ordinary polynomials;
    the result divides both shifted inputs exactly.  gcd(0, 0) = 0.
    """
    a._require_same(b)
    if a.is_zero and b.is_zero:
        return a
    if a.is_zero:
        return _normalized(b)
    if b.is_zero:
        return _normalized(a)
    ao = _shift_nonneg(a)
    bo = _shift_nonneg(b)
    # common monomial factor of the shifted inputs
    mono = tuple(min(ao.min_exp(v), bo.min_exp(v)) for v in (0, 1, 2))
    _, ia = _extract_content(ao.mono_shift(-ao.min_exp(1), -ao.min_exp(2)).terms)
    _, ib = _extract_content(bo.mono_shift(-bo.min_exp(1), -bo.min_exp(2)).terms)
    ia = _strip_m(ia)
    ib = _strip_m(ib)
    g = _gcd_int(ia, ib)
    poly = MPoly._make(a.sem, {e: Rat(c) for e, c in g.items()})
    if mono != (0, 0, 0):
        poly = MPoly._make(
            a.sem,
            {(e[0] + mono[0], e[1] + mono[1], e[2] + mono[2]): c for e, c in poly.terms.items()},
        )
    return poly


def _shift_nonneg(p: MPoly) -> MPoly:
    s1 = min(p.min_exp(1), 0)
    s2 = min(p.min_exp(2), 0)
    return p.mono_shift(-s1, -s2)


def _strip_m(terms: dict) -> dict:
    lo = min(e[0] for e in terms)
    if lo == 0:
        return terms
    return {(e[0] - lo, e[1], e[2]): c for e, c in terms.items()}


def _normalized(p: MPoly) -> MPoly:
    po = _shift_nonneg(p)
    _, ip = _extract_content(po.terms)
    if ip[max(ip, key=_grlex_key)] < 0:
        ip = {e: -c for e, c in ip.items()}
    return MPoly._make(p.sem, {e: Rat(c) for e, c in ip.items()})


def _gcd_int(f: dict, g: dict) -> dict:
    """Primitive gcd of integer-primitive term dicts (min exponents all 0).

    The heuristic may return a proper divisor of the gcd (its trial-division
    acceptance cannot see maximality), so verified factors are divided out and
    the loop continues until the cofactors are *certified* coprime by modular
    univariate projections; only if the heuristic stalls while the certificate
    still reports a common factor does the remainder-sequence fallback run.
    """
    total = None
    while True:
        if f == g:
            h = _positive_lead(dict(f))
        elif len(f) == 1 or len(g) == 1:
            break  # primitive monomial with zero min exponents is a unit
        else:
            active = [v for v in (0, 1, 2) if max(e[v] for e in f) or max(e[v] for e in g)]
            if not active:
                break
            active.sort(key=lambda v: max(max(e[v] for e in f), max(e[v] for e in g)))
            try:
                h = _heugcd(f, g, active)
            except _HeuristicFailed:
                h = None
            if h is not None and _is_unit_dict(h):
                if _certified_coprime(f, g):
                    break
                h = None
            if h is None:
                try:
                    h = _heugcd(f, g, active, tries=10, floor=1 << 96)
                except _HeuristicFailed:
                    h = None
                if h is not None and _is_unit_dict(h):
                    if _certified_coprime(f, g):
                        break
                    h = None
                if h is None:
                    h = _prs_gcd(f, g, active)
                    total = h if total is None else _mul_int(total, h)
                    break
        if _is_unit_dict(h):
            break
        total = h if total is None else _mul_int(total, h)
        f = _int_primitive(_divexact_int(f, h))
        g = _int_primitive(_divexact_int(g, h))
    if total is None:
        return {(0, 0, 0): Int(1)}
    return _positive_lead(total)


def _is_unit_dict(h: dict) -> bool:
    return len(h) == 1 and h.get((0, 0, 0)) in (1, -1)


_CERT_PRIME = (1 << 61) - 1


def _certified_coprime(f: dict, g: dict) -> bool:
    """Exact certificate that gcd(f, g) is constant.

    For each variable x: project the other variables to random residues mod a
    large prime.  If the projection preserves the leading x-coefficient of f
    and the univariate gcd mod p is constant, any common factor has x-degree 0
    (its leading coefficient divides the surviving one).  All variables
    certified constant forces the (primitive) gcd to be a unit.  Returns False
    when certification fails, which only ever costs an exact escalation.
    """
    rng = random.Random(0xA62)
    p = _CERT_PRIME
    for var in (0, 1, 2):
        df = max(e[var] for e in f)
        dg = max(e[var] for e in g)
        if df == 0 or dg == 0:
            continue
        certified = False
        for _ in range(4):
            pts = [rng.randrange(2, 1 << 30) for _ in range(3)]
            fa = _proj_univariate(f, var, pts, p)
            ga = _proj_univariate(g, var, pts, p)
            if fa is None or ga is None or len(fa) - 1 != df or len(ga) - 1 != dg:
                continue
            if _euclid_degree_modp(fa, ga, p) == 0:
                certified = True
                break
        if not certified:
            return False
    return True


def _proj_univariate(terms: dict, var: int, pts: list, p: int) -> list | None:
    """Coefficient list (ascending) of the image mod p with other vars at pts."""
    deg = max(e[var] for e in terms)
    coeffs = [0] * (deg + 1)
    pows = [{}, {}, {}]
    for e, c in terms.items():
        w = int(c) % p
        for v in (0, 1, 2):
            if v == var:
                continue
            k = e[v]
            pv = pows[v].get(k)
            if pv is None:
                pv = pow(pts[v], k, p)
                pows[v][k] = pv
            w = w * pv % p
        i = e[var]
        coeffs[i] = (coeffs[i] + w) % p
    if coeffs[deg] == 0:
        return None
    return coeffs


def _euclid_degree_modp(fa: list, ga: list, p: int) -> int:
    """Degree of gcd of the two mod-p coefficient lists (both nonzero)."""
    a, b = fa[:], ga[:]
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            factor = a[-1] * inv % p
            shift = len(a) - len(b)
            for i in range(len(b)):
                a[i + shift] = (a[i + shift] - factor * b[i]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _positive_lead(terms: dict) -> dict:
    if terms and terms[max(terms, key=_grlex_key)] < 0:
        return {e: -c for e, c in terms.items()}
    return terms


def _int_primitive(terms: dict) -> dict:
    g = 0
    for c in terms.values():
        g = int_gcd(g, c)
        if g == 1:
            return terms
    if g == 1 or g == 0:
        return terms
    return {e: c // g for e, c in terms.items()}


# -- heuristic gcd -----------------------------------------------------------


def _heugcd(f: dict, g: dict, variables: list, tries: int = _HEURISTIC_TRIES, floor: int = 1 << 33) -> dict:
    if not variables:
        return {(0, 0, 0): int_gcd(f[(0, 0, 0)], g[(0, 0, 0)])}
    var = variables[0]
    rest = variables[1:]
    nf = max(abs(c) for c in f.values())
    ng = max(abs(c) for c in g.values())
    # A large floor keeps the balanced digits of structured small-coefficient
    # gcds from aliasing into spurious partial divisors.
    xi = max(2 * min(nf, ng) + 29, Int(floor))
    for _ in range(tries):
        fe = _eval_var(f, var, xi)
        ge = _eval_var(g, var, xi)
        if fe and ge:
            if rest:
                try:
                    h = _heugcd(fe, ge, rest, tries=tries)
                except _HeuristicFailed:
                    h = None
            else:
                h = {(0, 0, 0): int_gcd(fe[(0, 0, 0)], ge[(0, 0, 0)])}
            if h:
                cand = _int_primitive(_interp_var(h, var, xi))
                if _divides_int(cand, f) and _divides_int(cand, g):
                    return cand
        xi = xi * xi // (xi.bit_length() * 3) + 37
    raise _HeuristicFailed


def _eval_var(terms: dict, var: int, xi) -> dict:
    xi = Int(xi)
    powers = {0: Int(1), 1: xi}
    out: dict = {}
    for e, c in terms.items():
        k = e[var]
        p = powers.get(k)
        if p is None:
            p = xi**k
            powers[k] = p
        key = list(e)
        key[var] = 0
        key = tuple(key)
        cur = out.get(key)
        out[key] = c * p if cur is None else cur + c * p
    return {e: c for e, c in out.items() if c}


def _interp_var(h: dict, var: int, xi) -> dict:
    out: dict = {}
    cur = h
    k = 0
    while cur:
        nxt: dict = {}
        for e, c in cur.items():
            r = c % xi
            if 2 * r > xi:
                r -= xi
            if r:
                key = list(e)
                key[var] = k
                out[tuple(key)] = r
            q = (c - r) // xi
            if q:
                nxt[e] = q
        cur = nxt
        k += 1
        if k > 100_000:  # cannot happen for genuine digit sequences
            raise _HeuristicFailed
    if not out:
        raise _HeuristicFailed
    return out


def _divides_int(d: dict, n: dict) -> bool:
    if len(d) == 1 and d.get((0, 0, 0)) in (1, -1):
        return True
    for var in (0, 1, 2):
        if max(e[var] for e in n) < max(e[var] for e in d):
            return False
    try:
        _divexact_int(n, d)
        return True
    except ExactDivisionError:
        return False


# -- primitive PRS fallback ----------------------------------------------------


def _prs_gcd(f: dict, g: dict, variables: list) -> dict:
    """Primitive polynomial remainder sequence gcd, recursing over variables."""
    if not variables:
        return {(0, 0, 0): int_gcd(f[(0, 0, 0)], g[(0, 0, 0)])}
    var = variables[-1]
    rest = variables[:-1]
    fc, fp = _content_in_var(f, var, rest)
    gc, gp = _content_in_var(g, var, rest)
    cont = _gcd_int(fc, gc)
    F, G = fp, gp
    if _deg(F, var) < _deg(G, var):
        F, G = G, F
    while True:
        R = _prem(F, G, var)
        if not R:
            base = _primitive_in_var(G, var, rest)
            break
        if _deg(R, var) == 0:
            base = {(0, 0, 0): Int(1)}
            break
        F, G = G, _primitive_in_var(R, var, rest)
    return _mul_int(cont, base)


def _deg(terms: dict, var: int) -> int:
    return max(e[var] for e in terms) if terms else -1


def _coeff_of(terms: dict, var: int, k: int) -> dict:
    out = {}
    for e, c in terms.items():
        if e[var] == k:
            key = list(e)
            key[var] = 0
            out[tuple(key)] = c
    return out


def _content_in_var(terms: dict, var: int, rest: list) -> tuple[dict, dict]:
    """(content, primitive part) of terms viewed as a polynomial in var."""
    coeffs = {}
    for e, c in terms.items():
        key = list(e)
        key[var] = 0
        coeffs.setdefault(e[var], {})[tuple(key)] = c
    cont = None
    for k in sorted(coeffs):
        cont = coeffs[k] if cont is None else _gcd_full(cont, coeffs[k])
        if len(cont) == 1 and cont.get((0, 0, 0)) in (1, -1):
            cont = {(0, 0, 0): Int(1)}
            break
    if cont == {(0, 0, 0): Int(1)}:
        return cont, dict(terms)
    prim = _divexact_shifted(terms, cont, var)
    return cont, prim


def _gcd_full(a: dict, b: dict) -> dict:
    """gcd of integer dicts that may carry content and monomial factors."""
    ia = _int_primitive(a)
    ib = _int_primitive(b)
    ca = _dict_content(a)
    cb = _dict_content(b)
    mono = tuple(min(min(e[v] for e in a), min(e[v] for e in b)) for v in (0, 1, 2))
    ia = _strip_mono(ia)
    ib = _strip_mono(ib)
    g = _gcd_int(ia, ib)
    c = int_gcd(ca, cb)
    out = {tuple(e[v] + mono[v] for v in (0, 1, 2)): cc * c for e, cc in g.items()}
    return out


def _dict_content(terms: dict):
    g = 0
    for c in terms.values():
        g = int_gcd(g, c)
        if g == 1:
            break
    return g if g else Int(1)


def _strip_mono(terms: dict) -> dict:
    lo = tuple(min(e[v] for e in terms) for v in (0, 1, 2))
    if lo == (0, 0, 0):
        return terms
    return {(e[0] - lo[0], e[1] - lo[1], e[2] - lo[2]): c for e, c in terms.items()}


def _divexact_shifted(terms: dict, d: dict, var: int) -> dict:
    """Divide each var-coefficient of terms by the var-free dict d."""
    out = {}
    coeffs: dict = {}
    for e, c in terms.items():
        key = list(e)
        key[var] = 0
        coeffs.setdefault(e[var], {})[tuple(key)] = c
    for k, grp in coeffs.items():
        q = _divexact_int(grp, d)
        for e, c in q.items():
            key = list(e)
            key[var] = k
            out[tuple(key)] = c
    return out


def _primitive_in_var(terms: dict, var: int, rest: list) -> dict:
    _, prim = _content_in_var(terms, var, rest)
    return prim


def _mul_int(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            cur = out.get(key)
            v = ca * cb
            out[key] = v if cur is None else cur + v
    return {e: c for e, c in out.items() if c}


def _prem(F: dict, G: dict, var: int) -> dict:
    """Pseudo-remainder of F by G with respect to var (integer dicts)."""
    dF = _deg(F, var)
    dG = _deg(G, var)
    lcG = _coeff_of(G, var, dG)
    R = dict(F)
    while R and _deg(R, var) >= dG:
        dR = _deg(R, var)
        lcR = _coeff_of(R, var, dR)
        # R <- lcG * R - lcR * x^(dR-dG) * G
        shifted = {}
        for e, c in G.items():
            key = list(e)
            key[var] = e[var] + dR - dG
            shifted[tuple(key)] = c
        R1 = _mul_int(_lift(lcG, var, 0), R)
        R2 = _mul_int(_lift(lcR, var, 0), shifted)
        R = _sub_int(R1, R2)
    return R


def _lift(coeff: dict, var: int, k: int) -> dict:
    out = {}
    for e, c in coeff.items():
        key = list(e)
        key[var] = k
        out[tuple(key)] = c
    return out


def _sub_int(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        cur = out.get(e)
        if cur is None:
            out[e] = -c
        else:
            cur = cur - c
            if cur:
                out[e] = cur
            else:
                del out[e]
    return out
