"""Integer polynomials and rational amplitudes F1/F2 over Z.

p-adic orders are computed on the representation exactly as given: the
quotient rule is applied without cancelling common factors, because the
order of a rational function is defined on its chosen numerator and
denominator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError, PoleModP
from .modarith import INFINITY, PrimePowerModulus, val_p

MAX_DEGREE = 64


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients in increasing degree; the zero polynomial has no coefficients."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) - 1 > MAX_DEGREE:
            raise ValueError(f"degree {len(cs) - 1} exceeds cap {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial([u + v for u, v in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            for j, v in enumerate(other.coeffs):
                out[i + j] += u * v
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, modulus: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % modulus
        return acc

    def exact_div(self, d: int) -> "IntPolynomial":
        if any(c % d for c in self.coeffs):
            raise ValueError(f"{d} does not divide every coefficient")
        return IntPolynomial([c // d for c in self.coeffs])

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x" if i == 1 else f"{c}*x^{i}")
        return " + ".join(terms)


def _as_poly(v) -> IntPolynomial:
    if isinstance(v, IntPolynomial):
        return v
    if isinstance(v, int):
        return IntPolynomial.const(v)
    raise TypeError(f"cannot treat {type(v).__name__} as a polynomial")


@dataclass(frozen=True)
class RationalAmplitude:
    """f = numerator / denominator with integer polynomial parts."""

    numerator: IntPolynomial
    denominator: IntPolynomial = IntPolynomial.const(1)

    def __post_init__(self):
        object.__setattr__(self, "numerator", _as_poly(self.numerator))
        object.__setattr__(self, "denominator", _as_poly(self.denominator))
        if self.denominator.is_zero():
            raise ValueError("denominator must not be the zero polynomial")

    def __mul__(self, other: "RationalAmplitude") -> "RationalAmplitude":
        return RationalAmplitude(self.numerator * other.numerator, self.denominator * other.denominator)

    def __call__(self, x: float) -> float:
        return self.numerator(x) / self.denominator(x)

    def __str__(self):
        return f"({self.numerator}) / ({self.denominator})"


def poly_eval_mod(P: IntPolynomial, x: int, m: PrimePowerModulus) -> int:
    return P.eval_mod(x, m.q)


def rat_eval_mod(f: RationalAmplitude, x: int, m: PrimePowerModulus) -> int:
    den = f.denominator.eval_mod(x, m.q)
    if den % m.p == 0:
        raise PoleModP(f"denominator vanishes mod {m.p} at x = {x}")
    return f.numerator.eval_mod(x, m.q) * pow(den, -1, m.q) % m.q


def rat_derivative(f: RationalAmplitude) -> RationalAmplitude:
    F1, F2 = f.numerator, f.denominator
    return RationalAmplitude(F1.derivative() * F2 - F1 * F2.derivative(), F2 * F2)


def ord_p_poly(P: IntPolynomial, p: int) -> int | float:
    """min over coefficients of val_p; INFINITY for the zero polynomial."""
    return min((val_p(c, p) for c in P.coeffs if c), default=INFINITY)


def ord_p_rat(f: RationalAmplitude, p: int) -> int | float:
    top = ord_p_poly(f.numerator, p)
    if top == INFINITY:
        return INFINITY
    return top - ord_p_poly(f.denominator, p)


def _reduce_mod_p(P: IntPolynomial, p: int) -> list[int]:
    cs = [c % p for c in P.coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def root_multiplicity_mod_p(P: IntPolynomial, alpha: int, p: int) -> int:
    """Multiplicity of alpha as a root of P reduced mod p (P must be nonzero mod p)."""
    cs = _reduce_mod_p(P, p)
    if not cs:
        raise ValueError("polynomial vanishes identically mod p")
    alpha %= p
    mult = 0
    while len(cs) > 1:
        # synthetic division by (x - alpha)
        quotient = [0] * (len(cs) - 1)
        acc = 0
        for i in range(len(cs) - 1, 0, -1):
            acc = (acc * alpha + cs[i]) % p
            quotient[i - 1] = acc
        remainder = (acc * alpha + cs[0]) % p
        if remainder:
            break
        mult += 1
        cs = quotient
    return mult


def normalized_root_multiplicity(g: RationalAmplitude, alpha: int, p: int) -> int:
    """Multiplicity of alpha as a root mod p of g's numerator with its p-content removed."""
    if g.denominator(alpha) % p == 0:
        raise PoleModP(f"denominator vanishes mod {p} at {alpha}")
    e = ord_p_poly(g.numerator, p)
    if e == INFINITY:
        raise ValueError("zero function has no normalized roots")
    return root_multiplicity_mod_p(g.numerator.exact_div(p**e), alpha, p)


_TERM = re.compile(r"^([+-]?\d*)\s*(\*?\s*x(\s*\^\s*(\d+))?)?$")


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse ``c0 + c1*x + c2*x^2 + ...`` (integer coefficients, any term order).

    Accepted term shapes: ``7``, ``-3*x``, ``x``, ``-x^2``, ``4x^3``.  Terms are
    separated by ``+`` or ``-``; repeated powers are summed.
    """
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    coeffs: dict[int, int] = {}
    # split before every sign that is not the first character
    for raw in re.split(r"(?<=.)(?=[+-])", s):
        m = _TERM.match(raw)
        if not m or (m.group(1) in ("", "+", "-") and not m.group(2)):
            raise ParseError(f"cannot parse term {raw!r} in {text!r}")
        c_txt = m.group(1)
        c = -1 if c_txt == "-" else 1 if c_txt in ("", "+") else int(c_txt)
        if m.group(2) is None:
            deg = 0
        else:
            deg = int(m.group(4)) if m.group(4) else 1
        coeffs[deg] = coeffs.get(deg, 0) + c
    if max(coeffs) > MAX_DEGREE:
        raise ParseError(f"degree exceeds cap {MAX_DEGREE}")
    return IntPolynomial([coeffs.get(i, 0) for i in range(max(coeffs) + 1)])


def parse_rational(text: str) -> RationalAmplitude:
    """Parse ``P`` or ``(P)/(Q)``; parentheses are optional around a single polynomial."""
    s = text.strip()
    depth, split_at = 0, None
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            if split_at is not None:
                raise ParseError(f"more than one '/' in {text!r}")
            split_at = i
    parts = [s] if split_at is None else [s[:split_at], s[split_at + 1:]]
    polys = []
    for part in parts:
        part = part.strip()
        if part.startswith("(") and part.endswith(")"):
            part = part[1:-1]
        if "(" in part or ")" in part:
            raise ParseError(f"unbalanced parentheses in {text!r}")
        polys.append(parse_polynomial(part))
    if len(polys) == 1:
        return RationalAmplitude(polys[0])
    if polys[1].is_zero():
        raise ParseError("zero denominator")
    return RationalAmplitude(polys[0], polys[1])


def float_derivative(f: RationalAmplitude, x: float, h: float = 1e-5) -> float:
    """Central difference, used only as an independent check of rat_derivative."""
    return (f(x + h) - f(x - h)) / (2 * h)


__all__ = [
    "IntPolynomial",
    "RationalAmplitude",
    "poly_eval_mod",
    "rat_eval_mod",
    "rat_derivative",
    "ord_p_poly",
    "ord_p_rat",
    "normalized_root_multiplicity",
    "root_multiplicity_mod_p",
    "parse_polynomial",
    "parse_rational",
    "float_derivative",
]
