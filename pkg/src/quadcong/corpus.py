"""Fixed test corpus of ternary forms and seeded random case generators."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .conic import TernaryForm, find_base_point
from .modarith import PrimePowerModulus
from .polyrat import IntPolynomial, RationalAmplitude, ord_p_poly, rat_derivative, root_multiplicity_mod_p

CORPUS_PRIMES = (3, 5, 7, 11, 13)

# (a, b, c, d, e, f); small coefficients, several with mixed and linear terms
FORM_CORPUS = tuple(
    TernaryForm(*cs)
    for cs in [
        (1, 0, 1, 0, 0, 1),
        (1, 1, 1, 0, 0, 1),
        (1, 0, 1, 0, 0, -1),
        (1, 0, 2, 0, 0, 3),
        (2, 1, 3, 0, 0, -1),
        (1, 0, -2, 0, 0, 5),
        (1, 1, -1, 1, 0, 1),
        (3, 0, 1, 1, 1, 2),
        (1, 2, 3, 4, 5, 6),
        (2, -1, 2, 1, -1, 1),
        (1, 3, -1, 0, 2, -2),
        (4, 1, 1, -1, 0, 1),
        (1, 0, 1, 1, 1, 1),
        (2, 0, -1, 0, 1, 3),
        (1, -1, 4, 2, 0, -3),
        (5, 2, 1, 0, -1, 1),
        (1, 1, 2, -2, 1, 1),
        (3, -2, 2, 1, 1, -1),
        (1, 0, 3, -1, 2, 2),
        (2, 2, 5, 1, 0, -2),
        (1, 4, 1, 0, 0, 1),
        (6, 1, 1, 1, 1, 1),
        (1, -3, 5, 0, 1, -1),
        (2, 1, -2, 3, 1, 1),
        (1, 2, -5, 1, -1, 2),
        (7, 0, 1, 0, 3, 1),
        (1, 1, 1, 1, 1, -1),
        (3, 1, 4, -2, -1, 2),
        (1, -2, 6, 0, 4, 1),
        (2, 3, 4, 5, -3, 1),
    ]
)


def admissible_pairs(forms=FORM_CORPUS, primes=CORPUS_PRIMES, max_pairs: int = 10**7):
    """(form, PrimePowerModulus) for each admissible form and p^(2n) <= max_pairs."""
    for Q in forms:
        for p in primes:
            if not Q.admissible(p):
                continue
            n = 1
            while p ** (2 * n) <= max_pairs:
                yield Q, PrimePowerModulus(p, n)
                n += 1


@dataclass(frozen=True)
class AmplitudeCase:
    f: RationalAmplitude
    alpha: int
    m: PrimePowerModulus


def _random_poly(rng: random.Random, deg: int, scale: int = 1) -> IntPolynomial:
    return IntPolynomial([scale * rng.randint(-9, 9) for _ in range(deg + 1)])


def random_amplitude_cases(seed: int, count: int) -> list[AmplitudeCase]:
    """Rational amplitudes F1/F2 with deg <= 2, p in {3, 5, 7, 11}, 2 <= n <= 6, p^n <= 10^6.

    Half of the cases put alpha on a critical point mod p when one exists, and
    a quarter scale the numerator by p so that ord_p(f') >= 1.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice((3, 5, 7, 11))
        n = rng.choice([k for k in range(2, 7) if p**k <= 10**6])
        m = PrimePowerModulus(p, n)
        scale = p if rng.random() < 0.25 else 1
        num = _random_poly(rng, rng.randint(1, 2), scale)
        den = _random_poly(rng, rng.randint(0, 2))
        if den.is_zero() or num.degree < 1 and den.degree < 1:
            continue
        f = RationalAmplitude(num, den)
        units = [x for x in range(p) if den.eval_mod(x, p) != 0]
        if not units:
            continue
        alpha = rng.choice(units)
        if rng.random() < 0.5:
            fp = rat_derivative(f)
            k = ord_p_poly(fp.numerator, p)
            if k != float("inf"):
                h = fp.numerator.exact_div(p**k)
                crit = [x for x in units if root_multiplicity_mod_p(h, x, p) >= 1]
                if crit:
                    alpha = rng.choice(crit)
        out.append(AmplitudeCase(f, alpha, m))
    return out


@dataclass(frozen=True)
class ErrorSumCase:
    Q: TernaryForm
    m: PrimePowerModulus
    k1: int
    k2: int
    z: int


def random_error_sum_cases(seed: int, count: int, forms=FORM_CORPUS) -> list[ErrorSumCase]:
    """Frequencies (k1, k2) and units z over corpus forms, p in {3, 5, 7}, 2 <= n <= 5.

    A third of the cases share a common factor p^r, r >= 1; another third are
    steered towards directions with L = (aB - bA) l1 + aA l2 = 0 mod p, which
    is where r' >= 1 and the degenerate direction live.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice((3, 5, 7))
        n = rng.randint(2, 5)
        Q = rng.choice(forms)
        if not Q.admissible(p):
            continue
        m = PrimePowerModulus(p, n)
        mode = rng.randrange(3)
        r = rng.randint(1, n - 1) if mode == 1 else 0
        l1 = rng.randrange(m.q)
        l2 = rng.randrange(m.q)
        if mode == 2:
            base = find_base_point(Q.dehomogenize(), m)
            a, b = Q.a, Q.b
            coef1 = (a * base.B - b * base.A) % m.q
            coef2 = a * base.A % m.q
            if coef2 % p:
                # solve coef1 l1 + coef2 l2 = 0 mod p^j for a random depth j
                j = rng.randint(1, n)
                l2 = (-coef1 * l1 * pow(coef2, -1, p**j)) % p**j + p**j * rng.randrange(p ** (n - j))
        k1, k2 = l1 * p**r % m.q, l2 * p**r % m.q
        z = rng.randrange(1, m.q)
        while z % p == 0:
            z = rng.randrange(1, m.q)
        out.append(ErrorSumCase(Q, m, k1, k2, z))
    return out
