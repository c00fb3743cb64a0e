"""The AG2 configuration: vectors, pairings, derivatives, and symmetry substitutions.

Everything is expressed in lattice coordinates y1 = <beta1, x>, y2 = <beta2, x>
with the overall scale fixed to 1, so that the pairing of any configuration
vector with x is an integer linear form c1*y1 + c2*y2 and all hyperbolic
functions of pairings close into Laurent rational functions of z_i = e^{y_i}.

The same linear forms serve the rational degeneration, where w1, w2 replace
y1, y2 and pairings are the linear polynomials themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diffop import DiffOp
from .mpoly import MPoly, RATIONAL, TRIG
from .ratfunc import RatFunc
from .rational import Rat

VEC_IDS = (
    "beta1", "beta2", "beta3",
    "alpha1", "alpha2", "alpha3",
    "2beta1", "2beta2", "2beta3",
)


@dataclass(frozen=True)
class Vec2Form:
    """The pairing <gamma, x> as the integer form c1*y1 + c2*y2."""

    c1: int
    c2: int

    def __add__(self, other: "Vec2Form") -> "Vec2Form":
        return Vec2Form(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "Vec2Form") -> "Vec2Form":
        return Vec2Form(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "Vec2Form":
        return Vec2Form(-self.c1, -self.c2)

    def __mul__(self, k: int) -> "Vec2Form":
        return Vec2Form(self.c1 * k, self.c2 * k)

    __rmul__ = __mul__


_FORMS = {
    "beta1": Vec2Form(1, 0),
    "beta2": Vec2Form(0, 1),
    "beta3": Vec2Form(-1, 1),
    "alpha1": Vec2Form(-1, 2),
    "alpha2": Vec2Form(-2, 1),
    "alpha3": Vec2Form(1, 1),
    "2beta1": Vec2Form(2, 0),
    "2beta2": Vec2Form(0, 2),
    "2beta3": Vec2Form(-2, 2),
}

# Inner products of the six base vectors (scale 1); doubled vectors extend by
# bilinearity.  The verification tests recompute every entry from the forms.
_BASE_GRAM = {
    ("beta1", "beta1"): 2, ("beta1", "beta2"): 1, ("beta1", "beta3"): -1,
    ("beta2", "beta2"): 2, ("beta2", "beta3"): 1, ("beta3", "beta3"): 2,
    ("alpha1", "alpha1"): 6, ("alpha2", "alpha2"): 6, ("alpha3", "alpha3"): 6,
    ("alpha1", "alpha2"): 3, ("alpha1", "alpha3"): 3, ("alpha2", "alpha3"): -3,
    ("alpha1", "beta1"): 0, ("alpha1", "beta2"): 3, ("alpha1", "beta3"): 3,
    ("alpha2", "beta1"): -3, ("alpha2", "beta2"): 0, ("alpha2", "beta3"): 3,
    ("alpha3", "beta1"): 3, ("alpha3", "beta2"): 3, ("alpha3", "beta3"): 0,
}


def _build_gram() -> dict:
    table = {}
    for (a, b), v in _BASE_GRAM.items():
        table[(a, b)] = v
        table[(b, a)] = v
    for a in ("beta1", "beta2", "beta3", "alpha1", "alpha2", "alpha3"):
        for i in ("1", "2", "3"):
            b = "beta" + i
            table[(a, "2" + b)] = 2 * table[(a, b)]
            table[("2" + b, a)] = 2 * table[(a, b)]
    for i in ("1", "2", "3"):
        for j in ("1", "2", "3"):
            table[("2beta" + i, "2beta" + j)] = 4 * table[("beta" + i, "beta" + j)]
    return table


GRAM = _build_gram()


def linear_form(vec_id: str) -> Vec2Form:
    """The builtin pairing form of a configuration vector."""
    try:
        return _FORMS[vec_id]
    except KeyError:
        raise ValueError(f"unknown vector id: {vec_id!r}") from None


def inner(a: str, b: str) -> Rat:
    """Inner product of two configuration vectors by id."""
    if a not in _FORMS or b not in _FORMS:
        raise ValueError(f"unknown vector id in ({a!r}, {b!r})")
    return Rat(GRAM[(a, b)])


def inner_form(u: Vec2Form, v: Vec2Form) -> int:
    """Bilinear extension of the base Gram matrix [[2, 1], [1, 2]] to forms."""
    return 2 * u.c1 * v.c1 + u.c1 * v.c2 + u.c2 * v.c1 + 2 * u.c2 * v.c2


def dir_derivative(v: Vec2Form, sem: str = TRIG) -> DiffOp:
    """Directional derivative along the vector with pairing form v.

    Chain rule through the lattice coordinates gives
    d_gamma = <beta1, gamma> d_y1 + <beta2, gamma> d_y2.
    """
    return DiffOp.from_symbol(2 * v.c1 + v.c2, v.c1 + 2 * v.c2, sem)


def laplacian(sem: str = TRIG) -> DiffOp:
    """The plane Laplacian contracted through the lattice Gram matrix."""
    one = RatFunc.const(2, sem)
    return DiffOp({(2, 0): one, (0, 2): one, (1, 1): one}, sem)


HYPER_KINDS = ("sinh", "cosh", "coth", "tanh", "inv_sinh_sq", "inv_cosh_sq")


@lru_cache(maxsize=None)
def hyper(v: Vec2Form, kind: str) -> RatFunc:
    """The named hyperbolic function of the pairing c1*y1 + c2*y2, in z variables."""
    e = MPoly.exponential(v.c1, v.c2)
    e_inv = MPoly.exponential(-v.c1, -v.c2)
    half = Rat(1, 2)
    if kind == "sinh":
        return RatFunc.from_poly((e - e_inv) * half)
    if kind == "cosh":
        return RatFunc.from_poly((e + e_inv) * half)
    if kind == "coth":
        return RatFunc((e + e_inv), (e - e_inv))
    if kind == "tanh":
        return RatFunc((e - e_inv), (e + e_inv))
    if kind == "inv_sinh_sq":
        s = (e - e_inv) * half
        return RatFunc.from_poly(s * s).inv()
    if kind == "inv_cosh_sq":
        c = (e + e_inv) * half
        return RatFunc.from_poly(c * c).inv()
    raise ValueError(f"unknown hyperbolic kind: {kind!r}")


def pairing_poly(v: Vec2Form) -> RatFunc:
    """The linear polynomial c1*w1 + c2*w2 under rational semantics."""
    p = MPoly({(0, 1, 0): v.c1, (0, 0, 1): v.c2}, RATIONAL)
    return RatFunc.from_poly(p)


# -- symmetry substitutions ---------------------------------------------------

_ROTATE_IDS = {
    "cw": {
        "beta1": (-1, "beta3"), "beta2": (1, "beta1"), "beta3": (1, "beta2"),
        "alpha1": (1, "alpha3"), "alpha2": (1, "alpha1"), "alpha3": (-1, "alpha2"),
    },
    "ccw": {
        "beta1": (1, "beta2"), "beta2": (1, "beta3"), "beta3": (-1, "beta1"),
        "alpha1": (1, "alpha2"), "alpha2": (-1, "alpha3"), "alpha3": (1, "alpha1"),
    },
}
for _d, _m in _ROTATE_IDS.items():
    for _i in ("1", "2", "3"):
        _s, _t = _m["beta" + _i]
        _m["2beta" + _i] = (_s, "2" + _t)

# Monomial substitution on z-exponents induced by each rotation: the new
# exponent vector is (a*e1 + b*e2, c*e1 + d*e2) for matrix (a, b, c, d).
_EXP_MATS = {
    "cw": (1, 1, -1, 0),
    "ccw": (0, -1, 1, 1),
    "double": (2, 0, 0, 2),
}


def rotate_id(vec_id: str, direction: str) -> tuple[int, str]:
    """Image (sign, id) of a vector id under a symmetry substitution."""
    if direction == "double":
        if vec_id.startswith("beta"):
            return (1, "2" + vec_id)
        raise ValueError(f"doubling is only tabulated for the beta ids, got {vec_id!r}")
    try:
        return _ROTATE_IDS[direction][vec_id]
    except KeyError:
        raise ValueError(f"unknown rotation {direction!r} or id {vec_id!r}") from None


def rotate_form(v: Vec2Form, direction: str) -> Vec2Form:
    """Image of a pairing form under a symmetry substitution (doubling included)."""
    if direction == "double":
        return v * 2
    s1, i1 = _ROTATE_IDS[direction]["beta1"]
    s2, i2 = _ROTATE_IDS[direction]["beta2"]
    return v.c1 * s1 * _FORMS[i1] + v.c2 * s2 * _FORMS[i2]


def rotate_function(f: RatFunc, direction: str) -> RatFunc:
    """Image of a trig rational function under a symmetry substitution."""
    return f.map_exponents(_EXP_MATS[direction])


def rotate_variant(obj, direction: str):
    """Apply a symmetry substitution to a vector id, form, or built function."""
    if isinstance(obj, str):
        return rotate_id(obj, direction)
    if isinstance(obj, Vec2Form):
        return rotate_form(obj, direction)
    if isinstance(obj, RatFunc):
        return rotate_function(obj, direction)
    raise TypeError(f"cannot rotate object of type {type(obj).__name__}")
