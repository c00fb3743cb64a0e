"""Constructors for the Hamiltonians, the intertwiner coefficients, and the intertwiner.

All functions are built over the symbolic coupling parameter m, so every
identity verified downstream holds for all values of m at once.  Numeric
prefactors are derived from the Gram table rather than transcribed, so a slip
in any printed constant would be caught by the explicit-form cross-checks in
the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .diffop import DiffOp
from .geometry import Vec2Form, dir_derivative, hyper, inner, laplacian, linear_form
from .mpoly import TRIG
from .ratfunc import RatFunc

# Cyclic permutations (sigma(1), sigma(2), sigma(3)) of the alternating group,
# and the full symmetric group for the final zero-order cancellation.
A3 = ((1, 2, 3), (2, 3, 1), (3, 1, 2))
S3 = ((1, 2, 3), (2, 3, 1), (3, 1, 2), (1, 3, 2), (3, 2, 1), (2, 1, 3))

BETAS = ("beta1", "beta2", "beta3")
ALPHAS = ("alpha1", "alpha2", "alpha3")


@cache
def mvar() -> RatFunc:
    return RatFunc.var_m(TRIG)


def beta(i: int) -> Vec2Form:
    return linear_form(BETAS[i - 1])


def alpha(i: int) -> Vec2Form:
    return linear_form(ALPHAS[i - 1])


def dir_apply(v: Vec2Form, f: RatFunc) -> RatFunc:
    """The directional derivative of a function along the vector with form v."""
    return (2 * v.c1 + v.c2) * f.y_partial(1) + (v.c1 + 2 * v.c2) * f.y_partial(2)


def nabla_op(phi: RatFunc) -> DiffOp:
    """The first-order operator contracting the gradient of phi with the gradient.

    In lattice coordinates the Euclidean contraction picks up the Gram matrix:
    d_{grad phi} = sum_{j,k} <beta_j, beta_k> (d_yj phi) d_yk.
    """
    p1 = phi.y_partial(1)
    p2 = phi.y_partial(2)
    return DiffOp({(1, 0): 2 * p1 + p2, (0, 1): p1 + 2 * p2}, phi.sem)


def grad_pair(phi: RatFunc, psi: RatFunc) -> RatFunc:
    """The Euclidean inner product of the two gradients <grad phi, grad psi>."""
    p1, p2 = phi.y_partial(1), phi.y_partial(2)
    q1, q2 = psi.y_partial(1), psi.y_partial(2)
    return 2 * p1 * q1 + p1 * q2 + p2 * q1 + 2 * p2 * q2


@dataclass(frozen=True)
class Potentials:
    """The inverse-sinh-squared potential families attached to the configuration."""

    v: tuple          # long vectors, coupling m(m+1)
    u: tuple          # short vectors, coupling 3m(3m+1)
    u_tilde: tuple    # deformed short potentials including the doubled vectors
    u_hat: tuple      # the difference u_tilde - u


@cache
def potentials() -> Potentials:
    m = mvar()
    v = []
    u = []
    u_tilde = []
    u_hat = []
    for i in (1, 2, 3):
        a, b = alpha(i), beta(i)
        aa = inner(ALPHAS[i - 1], ALPHAS[i - 1])
        bb = inner(BETAS[i - 1], BETAS[i - 1])
        bb2 = inner("2" + BETAS[i - 1], "2" + BETAS[i - 1])
        inv_sa = hyper(a, "inv_sinh_sq")
        inv_sb = hyper(b, "inv_sinh_sq")
        inv_s2b = hyper(2 * b, "inv_sinh_sq")
        inv_cb = hyper(b, "inv_cosh_sq")
        v.append(m * (m + 1) * aa * inv_sa)
        u.append(3 * m * (3 * m + 1) * bb * inv_sb)
        u_tilde.append(9 * m * (m + 1) * bb * inv_sb + 2 * bb2 * inv_s2b)
        u_hat.append(2 * (3 * m + 1) * bb * inv_sb - 2 * bb * inv_cb)
    return Potentials(tuple(v), tuple(u), tuple(u_tilde), tuple(u_hat))


@cache
def u_tilde_alt() -> tuple:
    """The deformed short potentials in their sinh/cosh form (equivalent build)."""
    m = mvar()
    out = []
    for i in (1, 2, 3):
        b = beta(i)
        bb = inner(BETAS[i - 1], BETAS[i - 1])
        out.append(
            (3 * m + 1) * (3 * m + 2) * bb * hyper(b, "inv_sinh_sq")
            - 2 * bb * hyper(b, "inv_cosh_sq")
        )
    return tuple(out)


@cache
def xy_functions() -> tuple:
    """The inverse products of sinh over the short triple and its doubled triple."""
    x = (hyper(beta(1), "sinh") * hyper(beta(2), "sinh") * hyper(beta(3), "sinh")).inv()
    y = (
        hyper(2 * beta(1), "sinh") * hyper(2 * beta(2), "sinh") * hyper(2 * beta(3), "sinh")
    ).inv()
    return x, y


@cache
def f_coeffs() -> tuple:
    """Second-order coefficients of the intertwiner."""
    m = mvar()
    out = []
    for i in (1, 2, 3):
        b = beta(i)
        bb = inner(BETAS[i - 1], BETAS[i - 1])
        out.append(-(3 * m + 1) * bb * hyper(b, "coth") - bb * hyper(b, "tanh"))
    return tuple(out)


@cache
def f_coeffs_alt() -> tuple:
    """Equivalent form of the f coefficients through coth of the doubled vectors."""
    m = mvar()
    out = []
    for i in (1, 2, 3):
        b = beta(i)
        out.append(-2 * (3 * m * hyper(b, "coth") + 2 * hyper(2 * b, "coth")))
    return tuple(out)


@cache
def g_parts() -> tuple:
    """The three summands of each first-order coefficient g_i."""
    f = f_coeffs()
    pot = potentials()
    g1, g2, g3 = [], [], []
    for i in (1, 2, 3):
        others = [k for k in (1, 2, 3) if k != i]
        g1.append(f[others[0] - 1] * f[others[1] - 1])
        amul = 1
        bmul = 1
        for k in others:
            amul = amul * inner(ALPHAS[i - 1], BETAS[k - 1])
            bmul = bmul * inner(BETAS[i - 1], BETAS[k - 1])
        g2.append(-(amul / inner(ALPHAS[i - 1], ALPHAS[i - 1])) * pot.v[i - 1])
        g3.append(-(bmul / inner(BETAS[i - 1], BETAS[i - 1])) * pot.u[i - 1])
    return tuple(g1), tuple(g2), tuple(g3)


@cache
def g_coeffs() -> tuple:
    gI, gII, gIII = g_parts()
    return tuple(gI[i] + gII[i] + gIII[i] for i in range(3))


@cache
def h_parts() -> tuple:
    """The four summands of the zero-order coefficient h."""
    m = mvar()
    f = f_coeffs()
    _, gII, gIII = g_parts()
    x, y = xy_functions()
    h1 = f[0] * f[1] * f[2]
    h2 = sum((f[i] * (gII[i] + gIII[i]) for i in range(3)), RatFunc.zero(TRIG))
    h3 = sum((dir_apply(beta(i + 1), gIII[i]) for i in range(3)), RatFunc.zero(TRIG))
    norm_prod = inner("beta1", "beta1") * inner("beta2", "beta2") * inner("beta3", "beta3")
    h4 = -3 * m * (3 * m + 1) * norm_prod * x - 4 * (3 * m + 1) * norm_prod * y
    return h1, h2, h3, h4


@cache
def h_total() -> RatFunc:
    h1, h2, h3, h4 = h_parts()
    return h1 + h2 + h3 + h4


@cache
def beta_derivatives() -> tuple:
    return tuple(dir_derivative(beta(i)) for i in (1, 2, 3))


def intertwiner_from(f: tuple, g: tuple, h: RatFunc) -> DiffOp:
    """Assemble the third-order operator from given coefficient families."""
    db = beta_derivatives()
    op = db[0].compose(db[1]).compose(db[2])
    for s1, s2, s3 in A3:
        op = op + f[s1 - 1] * db[s2 - 1].compose(db[s3 - 1])
    for i in range(3):
        op = op + g[i] * db[i]
    return op + DiffOp.mult(h)


@cache
def intertwiner() -> DiffOp:
    """The third-order operator intertwining the two Hamiltonians."""
    return intertwiner_from(f_coeffs(), g_coeffs(), h_total())


@cache
def hamiltonians() -> tuple:
    """(H, H0): the deformed Hamiltonian and the plain G2 Hamiltonian."""
    pot = potentials()
    lap = laplacian(TRIG)
    total_def = sum(
        (pot.v[i] + pot.u_tilde[i] for i in range(3)), RatFunc.zero(TRIG)
    )
    total_plain = sum((pot.v[i] + pot.u[i] for i in range(3)), RatFunc.zero(TRIG))
    return (-lap) + DiffOp.mult(total_def), (-lap) + DiffOp.mult(total_plain)
