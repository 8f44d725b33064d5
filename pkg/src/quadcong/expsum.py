"""Complete exponential sums modulo p^n.

Two sums are evaluated both literally and in closed form:

* S_alpha(f; p^n), the sum of e_{p^n}(f(x)) over x = 1..p^n with x = alpha mod p,
  for a rational amplitude f (Cochrane's stationary-phase evaluation);
* E(k1, k2, z; p^n), the sum of e_{p^n}(z(k1 x + k2 y)) over all solutions
  (x, y) of q(x, y) = 0 mod p^n.

Closed forms that do not apply return an ``Unsupported`` value carrying the
reason; callers fall back to the literal sum.

The closed form for E attaches the quadratic character (-z sqrt(D) / p) to the
e(J + 2 sqrt(D)) branch and (z sqrt(D) / p) to the e(J - 2 sqrt(D)) branch, for
both r' = 0 and r' > 0.  This is what differentiating the amplitude at its
critical points gives (A(alpha) = +-4 z sqrt(D) / w^2), and it is what the
direct sums confirm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .charsum import csum, e_q, gauss_p
from .conic import BasePoint, ConicSolutionSet, TernaryForm
from .errors import IdentityMismatch, NotAdmissible, PoleModP
from .modarith import INFINITY, PrimePowerModulus, jacobi, principal_sqrt, sqrt_mod, val_p
from .polyrat import (
    IntPolynomial,
    RationalAmplitude,
    ord_p_poly,
    ord_p_rat,
    rat_derivative,
    rat_eval_mod,
    root_multiplicity_mod_p,
)


@dataclass(frozen=True)
class Unsupported:
    """A closed form is not applicable; evaluate the sum directly instead."""

    reason: str

    def __bool__(self):
        return False


def s_alpha_direct(f: RationalAmplitude, alpha: int, m: PrimePowerModulus) -> complex:
    """Literal sum of e_{p^n}(f(x)) over x = 1..p^n, x = alpha (mod p)."""
    p, q = m.p, m.q
    if f.denominator(alpha) % p == 0:
        raise PoleModP(f"denominator of f vanishes at {alpha} mod {p}")
    first = alpha % p or p
    return csum([e_q(rat_eval_mod(f, x, m), q) for x in range(first, q + 1, p)])


def full_sum_direct(f: RationalAmplitude, m: PrimePowerModulus) -> complex:
    """Sum of e_{p^n}(f(x)) over x = 1..p^n (denominator must be a unit everywhere)."""
    return csum([e_q(rat_eval_mod(f, x, m), m.q) for x in range(1, m.q + 1)])


@dataclass(frozen=True)
class CochraneInput:
    f: RationalAmplitude
    m: PrimePowerModulus
    alpha: int
    r: int | float

    @classmethod
    def build(cls, f: RationalAmplitude, alpha: int, m: PrimePowerModulus) -> "CochraneInput":
        if f.denominator(alpha) % m.p == 0:
            raise PoleModP(f"denominator of f vanishes at {alpha} mod {m.p}")
        return cls(f, m, alpha % m.p, ord_p_rat(rat_derivative(f), m.p))


def _lift_root(h: IntPolynomial, root: int, p: int, k: int) -> int:
    """Newton-lift a simple root of h mod p to a root mod p^k."""
    dh = h.derivative()
    x, precision = root % p, 1
    while precision < k:
        precision = min(2 * precision, k)
        mod = p**precision
        x = (x - h.eval_mod(x, mod) * pow(dh.eval_mod(x, mod), -1, mod)) % mod
    return x


def stationary_point(f: RationalAmplitude, alpha: int, m: PrimePowerModulus, digits: int | None = None):
    """(alpha*, r, h) where h = p^{-r} * numerator(f') and alpha* lifts alpha to a
    root of h mod p^digits (default ceil((n - r) / 2)).  Returns None unless alpha
    is a simple root of h mod p."""
    p = m.p
    fp = rat_derivative(f)
    r = ord_p_rat(fp, p)
    h = fp.numerator.exact_div(p ** ord_p_poly(fp.numerator, p))
    if root_multiplicity_mod_p(h, alpha, p) != 1:
        return None
    if digits is None:
        digits = -(-(m.n - r) // 2)
    return _lift_root(h, alpha, p, max(digits, 1)), r, h


def cochrane_eval(f: RationalAmplitude, alpha: int, m: PrimePowerModulus) -> complex | Unsupported:
    """Closed-form S_alpha(f; p^n) for r = ord_p(f') <= n - 2 and F2(alpha) a unit."""
    ci = CochraneInput.build(f, alpha, m)
    p, n, r = m.p, m.n, ci.r
    if n < 2:
        return Unsupported("n < 2")
    if r > n - 2:
        return Unsupported(f"ord_p(f') = {r} exceeds n - 2 = {n - 2}")
    fp = rat_derivative(f)
    G2 = fp.denominator
    h = fp.numerator.exact_div(p**r)
    if h.eval_mod(ci.alpha, p) != 0:
        return 0j
    if root_multiplicity_mod_p(h, ci.alpha, p) != 1:
        return Unsupported("repeated critical point")
    star, _, _ = stationary_point(f, ci.alpha, m)
    value = e_q(rat_eval_mod(f, star, m), m.q) * p ** ((n + r) / 2)
    if (n - r) % 2 == 0:
        return value
    g2 = G2.eval_mod(star, p)
    # A(alpha) = 2 p^{-r} f''(alpha*) = 2 (h' G2 - h G2') / G2^2
    A = 2 * (h.derivative().eval_mod(star, p) * g2 - h.eval_mod(star, p) * G2.derivative().eval_mod(star, p))
    A = A * pow(g2 * g2, -1, p) % p
    return value * jacobi(A, p) * gauss_p(p) / math.sqrt(p)


def s_alpha(f: RationalAmplitude, alpha: int, m: PrimePowerModulus) -> tuple[complex, str]:
    """S_alpha by closed form when possible, else directly; returns (value, method)."""
    value = cochrane_eval(f, alpha, m)
    if isinstance(value, Unsupported):
        return s_alpha_direct(f, alpha, m), "direct-fallback"
    return value, "cochrane"


@dataclass(frozen=True)
class ErrorSumContext:
    """Data of the sum E(k1, k2, z; p^n) for a fixed form and base point.

    r is the exponent of gcd(k1, k2, p^n), (l1, l2) = (k1, k2) / p^r.  rprime is the
    p-adic valuation of L = (aB - bA) l1 + aA l2 read modulo p^(n-r), which is
    all the sum can see; it is INFINITY when L = 0 mod p^(n-r).
    """

    Q: TernaryForm
    base: BasePoint
    k1: int
    k2: int
    z: int
    m: PrimePowerModulus
    r: int
    l1: int
    l2: int
    D: int
    J: int
    L: int
    rprime: int | float

    @classmethod
    def build(cls, Q: TernaryForm, base: BasePoint, k1: int, k2: int, z: int) -> "ErrorSumContext":
        m = base.modulus
        p, n = m.p, m.n
        if not Q.admissible(p):
            raise NotAdmissible(f"form {Q} is not admissible for p = {p}")
        if z % p == 0:
            raise ValueError("z must be a unit mod p")
        a, b, c, d, e, _ = Q.coeffs
        A, B = base.A, base.B
        if (a * B * B - b * A * B + c * A * A + Q.four_delta) % m.q:
            raise IdentityMismatch("aB^2 - bAB + cA^2 != -4 Delta mod p^n")
        r = min(val_p(k1, p), val_p(k2, p), n)
        l1, l2 = k1 // p**r, k2 // p**r
        D = (a * l2 * l2 - b * l1 * l2 + c * l1 * l1) * (a * B * B - b * A * B + c * A * A) % m.q
        J = l1 * (b * e - 2 * c * d) + l2 * (b * d - 2 * a * e)
        L = (a * B - b * A) * l1 + a * A * l2
        window = p ** (n - r)
        rprime = val_p(L % window, p) if r < n else INFINITY
        return cls(Q, base, k1, k2, z, m, r, l1, l2, D, J, L, rprime)

    def stratum_amplitude(self, s: int) -> RationalAmplitude:
        """f_s(t) = z (k1 x_s(t) + k2 y_s(t)) as an integer rational function of t."""
        a, b, c = self.Q.a, self.Q.b, self.Q.c
        A, B, alpha, beta = self.base.A, self.base.B, self.base.alpha, self.base.beta
        ps = self.m.p**s
        t = IntPolynomial.x()
        w = a * t * t + b * ps * t + c * ps * ps
        lin = A * t + B * ps
        num = self.z * (self.k1 * (alpha * w - t * lin) + self.k2 * (beta * w - ps * lin))
        return RationalAmplitude(num, w)


def error_sum_direct(ctx: ErrorSumContext, solutions: ConicSolutionSet) -> complex:
    q = ctx.m.q
    return csum([e_q(ctx.z * (ctx.k1 * x + ctx.k2 * y), q) for _, _, x, y in solutions])


def error_sum_formula(ctx: ErrorSumContext) -> complex | Unsupported:
    p, n, r = ctx.m.p, ctx.m.n, ctx.r
    if r > n - 2:
        return Unsupported(f"r = {r} exceeds n - 2")
    if ctx.rprime == INFINITY:
        return Unsupported("degenerate direction: (aB - bA) l1 + aA l2 = 0 mod p^(n-r)")
    Q, z = ctx.Q, ctx.z
    a, b, c = Q.a, Q.b, Q.c
    A, B = ctx.base.A, ctx.base.B
    depth = n - r
    window = p**depth
    rp = ctx.rprime
    sub = PrimePowerModulus(p, depth)
    if rp == 0:
        if jacobi(ctx.D, p) != 1:
            # non-residue: no critical point; D = 0 mod p: the double root is excluded
            return 0j
        root = principal_sqrt(ctx.D % window, sub)
    else:
        # r' < n - r, so a root mod p^(n-r) carries the sign fixed by
        # sqrt(D) = l2 B a - l1 A c (mod p^r')
        pin = (ctx.l2 * B * a - ctx.l1 * A * c) % p**rp
        roots = sqrt_mod(ctx.D % window, sub) or ()
        candidates = [x for x in roots if x % p**rp == pin]
        if len(candidates) != 1:
            return Unsupported("no unique pinned square root of D")
        root = candidates[0]
    inv_disc = pow(4 * a * c - b * b, -1, window)
    plus = e_q(z * inv_disc * (ctx.J + 2 * root), window)
    minus = e_q(z * inv_disc * (ctx.J - 2 * root), window)
    branch = 1 if rp <= n else 0
    sign = jacobi(-1, window)
    bracket = branch * plus + sign * minus
    return c_factor(z, root, depth, p) * p ** ((n + r) / 2) * bracket


def c_factor(z: int, root: int, depth: int, p: int) -> complex:
    """C_{n-r}(z, D): 1 for even n - r, (-z sqrt(D) / p) G_p / sqrt(p) for odd."""
    if depth % 2 == 0:
        return 1 + 0j
    return jacobi(-z * root, p) * gauss_p(p) / math.sqrt(p)


def error_sum(ctx: ErrorSumContext, solutions: ConicSolutionSet) -> tuple[complex, str]:
    value = error_sum_formula(ctx)
    if isinstance(value, Unsupported):
        return error_sum_direct(ctx, solutions), "direct-fallback"
    return value, "closed-form"


__all__ = [
    "Unsupported",
    "CochraneInput",
    "ErrorSumContext",
    "s_alpha_direct",
    "full_sum_direct",
    "cochrane_eval",
    "s_alpha",
    "stationary_point",
    "error_sum_direct",
    "error_sum_formula",
    "error_sum",
    "c_factor",
]
