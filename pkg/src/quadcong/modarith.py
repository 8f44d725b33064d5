"""Exact arithmetic in Z/p^n for a fixed odd prime p.

Residues are plain Python ints kept in the canonical range [0, q).
``val_p`` follows the exponent convention: it returns the exponent e of the
largest power p^e dividing x.  Orders written as a power of p elsewhere are
translated to this exponent everywhere in the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NonUnit

INFINITY = math.inf

# Largest modulus accepted.  numpy-backed oracles form products of two
# residues with small coefficients, so q^2 must stay well inside int64.
MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimePowerModulus:
    """The ring Z/p^n for an odd prime p and exponent n >= 1."""

    p: int
    n: int
    q: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.n, int):
            raise TypeError("p and n must be integers")
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        q = self.p**self.n
        if q > MAX_MODULUS:
            raise ValueError(f"modulus {self.p}^{self.n} exceeds supported bound {MAX_MODULUS}")
        object.__setattr__(self, "q", q)

    def reduce(self, x: int) -> int:
        return x % self.q

    def lower(self, k: int) -> "PrimePowerModulus":
        """The same prime with exponent k."""
        return PrimePowerModulus(self.p, k)


def val_p(x: int, p: int) -> int | float:
    """Exponent of the largest power of p dividing x; INFINITY for x = 0."""
    if x == 0:
        return INFINITY
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def inv_mod(x: int, m: PrimePowerModulus) -> int:
    if x % m.p == 0:
        raise NonUnit(f"{x} is not a unit modulo {m.p}^{m.n}")
    return pow(x, -1, m.q)


def jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd m >= 1."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd m >= 1, got {m}")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def _sqrt_mod_prime(a: int, p: int) -> int:
    """Tonelli-Shanks; a must be a nonzero quadratic residue mod p."""
    a %= p
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    s, odd = 0, p - 1
    while odd % 2 == 0:
        odd //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    c = pow(z, odd, p)
    x = pow(a, (odd + 1) // 2, p)
    t = pow(a, odd, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (s - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        s = i
    return x


def hensel_sqrt(a: int, root: int, p: int, k: int) -> int:
    """Lift a unit square root of a mod p to a root mod p^k (Newton steps)."""
    precision = 1
    r = root % p
    while precision < k:
        precision = min(2 * precision, k)
        mod = p**precision
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return r % p**k


def sqrt_mod(a: int, m: PrimePowerModulus) -> tuple[int, int] | None:
    """Both square roots of a unit a modulo p^n, principal (smaller) root first.

    Returns None when a is a non-residue modulo p.
    """
    if a % m.p == 0:
        raise NonUnit(f"sqrt_mod only handles units; {m.p} divides {a}")
    if jacobi(a, m.p) != 1:
        return None
    r = hensel_sqrt(a, _sqrt_mod_prime(a, m.p), m.p, m.n)
    return tuple(sorted((r, m.q - r)))


def principal_sqrt(a: int, m: PrimePowerModulus) -> int | None:
    roots = sqrt_mod(a, m)
    return None if roots is None else roots[0]
