"""The dual ternary form Q' and primitive integer zeros of ternary forms.

Coefficients of any ternary form F are ordered like those of Q:
(M, N, O, P, Qc, R) for M l1^2 + N l1 l2 + O l2^2 + P l1 l3 + Qc l2 l3 + R l3^2.
The integral associated matrix halves the cross coefficients, so they must be
even.  Q' is built from 4 Delta (always an integer) and never touches a
fraction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .conic import TernaryForm, require_admissible
from .errors import BudgetExceeded, IdentityMismatch, NotAdmissible

TRIPLE_LOOP_MAX_B = 200
ZERO_COUNT_BUDGET = 10**9


def det3(m) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def two_by_two_minors(m) -> list[int]:
    rows = [(0, 1), (0, 2), (1, 2)]
    return [
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        for r0, r1 in rows
        for c0, c1 in rows
    ]


@dataclass(frozen=True)
class DualForm:
    M: int
    N: int
    O: int
    P: int
    Qc: int
    R: int
    detAssoc: int = field(init=False)
    minorGcd: int = field(init=False)

    def __post_init__(self):
        if self.N % 2 or self.P % 2 or self.Qc % 2:
            raise ValueError("cross coefficients must be even for an integral associated matrix")
        object.__setattr__(self, "detAssoc", det3(self.matrix()))
        if self.detAssoc == 0:
            raise ValueError("singular form: associated matrix has determinant 0")
        object.__setattr__(self, "minorGcd", minor_gcd(self))

    @property
    def coeffs(self) -> tuple[int, int, int, int, int, int]:
        return (self.M, self.N, self.O, self.P, self.Qc, self.R)

    def matrix(self) -> list[list[int]]:
        return [
            [self.M, self.N // 2, self.P // 2],
            [self.N // 2, self.O, self.Qc // 2],
            [self.P // 2, self.Qc // 2, self.R],
        ]

    def __call__(self, l1: int, l2: int, l3: int) -> int:
        return (
            self.M * l1 * l1 + self.N * l1 * l2 + self.O * l2 * l2
            + self.P * l1 * l3 + self.Qc * l2 * l3 + self.R * l3 * l3
        )

    def scaled(self, k: int) -> "DualForm":
        return DualForm(*(k * c for c in self.coeffs))


def dual_form(Q: TernaryForm) -> DualForm:
    """Q' built from Q, with det(Q') = 64 Delta^2 (4ac - b^2)^3 verified."""
    a, b, c, d, e, f = Q.coeffs
    fd = Q.four_delta  # 16 Delta = 4 * fd
    disc = 4 * a * c - b * b
    if a == 0 or fd == 0 or disc == 0:
        # a (4ac - b^2) Delta = 0 fails admissibility at every prime
        raise NotAdmissible(f"form {Q} has a (4ac - b^2) Delta = 0")
    u, v = b * e - 2 * c * d, b * d - 2 * a * e
    F = DualForm(
        M=4 * fd * a + u * u,
        N=-4 * fd * b + 2 * u * v,
        O=4 * fd * c + v * v,
        P=-2 * disc * u,
        Qc=-2 * disc * v,
        R=disc * disc,
    )
    expected = 4 * fd * fd * disc**3  # 64 Delta^2 = 4 (4 Delta)^2
    if F.detAssoc != expected:
        raise IdentityMismatch(f"det(Q') = {F.detAssoc}, expected 64 Delta^2 (4ac-b^2)^3 = {expected}")
    return F


def dual_form_admissible(Q: TernaryForm, p: int) -> DualForm:
    require_admissible(Q, p)
    return dual_form(Q)


def minor_gcd(F: DualForm) -> int:
    return reduce(math.gcd, (abs(x) for x in two_by_two_minors(F.matrix())), 0)


def tau(n: int) -> int:
    """Number of positive divisors of n."""
    if n < 1:
        raise ValueError("tau needs n >= 1")
    count, d = 0, 1
    while d * d <= n:
        if n % d == 0:
            count += 1 if d * d == n else 2
        d += 1
    return count


def _coeffs(F) -> tuple[int, ...]:
    return tuple(F.coeffs) if hasattr(F, "coeffs") else tuple(F)


def _count_triple(cs, B: int) -> int:
    M, N, O, P, Qc, R = cs
    r = np.arange(-B, B + 1, dtype=np.int64)
    Y, Z = r[:, None], r[None, :]
    yz = O * Y * Y + Qc * Y * Z + R * Z * Z
    g_yz = np.gcd(Y, Z)
    total = 0
    for x in range(-B, B + 1):
        vals = yz + (M * x) * x + (N * x) * Y + (P * x) * Z
        prim = np.gcd(g_yz, x) == 1
        total += int(np.count_nonzero((vals == 0) & prim))
    return total


def _count_quadratic(cs, B: int) -> int:
    """For each (x, y), solve F = 0 for the integer z with |z| <= B."""
    M, N, O, P, Qc, R = cs
    total = 0
    for x in range(-B, B + 1):
        for y in range(-B, B + 1):
            lin = P * x + Qc * y
            const = M * x * x + N * x * y + O * y * y
            if R == 0:
                if lin == 0:
                    zs = range(-B, B + 1) if const == 0 else ()
                elif const % lin == 0:
                    zs = (-const // lin,)
                else:
                    zs = ()
            else:
                disc = lin * lin - 4 * R * const
                if disc < 0:
                    continue
                s = math.isqrt(disc)
                if s * s != disc:
                    continue
                zs = {num // (2 * R) for num in (-lin + s, -lin - s) if num % (2 * R) == 0}
            for z in zs:
                if abs(z) <= B and math.gcd(math.gcd(x, y), z) == 1:
                    total += 1
    return total


def count_primitive_zeros(F, B: int, method: str | None = None, budget: int = ZERO_COUNT_BUDGET) -> int:
    """Number of (x, y, z) with F = 0, gcd(x, y, z) = 1, max(|x|, |y|, |z|) <= B.

    ``method`` is "triple" (vectorized box scan, default for B <= 200) or
    "quadratic" (solve for z over each (x, y)).
    """
    cs = _coeffs(F)
    if B < 0:
        raise ValueError("B must be nonnegative")
    if method is None:
        method = "triple" if B <= TRIPLE_LOOP_MAX_B else "quadratic"
    side = 2 * B + 1
    if method == "triple":
        if side**3 > budget:
            raise BudgetExceeded(f"{side**3} box points exceed budget {budget}")
        if max(abs(c) for c in cs) * 3 * B * B >= 2**62:
            return _count_quadratic(cs, B)
        return _count_triple(cs, B)
    if method == "quadratic":
        if side**2 > budget:
            raise BudgetExceeded(f"{side**2} (x, y) pairs exceed budget {budget}")
        return _count_quadratic(cs, B)
    raise ValueError(f"unknown method {method!r}")


def primitive_zeros(F, B: int) -> list[tuple[int, int, int]]:
    """Explicit list of the counted zeros (small B only)."""
    cs = _coeffs(F)
    M, N, O, P, Qc, R = cs
    out = []
    for x in range(-B, B + 1):
        for y in range(-B, B + 1):
            for z in range(-B, B + 1):
                if math.gcd(math.gcd(x, y), z) != 1:
                    continue
                if M * x * x + N * x * y + O * y * y + P * x * z + Qc * y * z + R * z * z == 0:
                    out.append((x, y, z))
    return out


def zero_bound(F: DualForm, B: int) -> float:
    """tau(|det|) (1 + B delta^(1/2) / |det|^(1/3)), without the implied constant."""
    det = abs(F.detAssoc)
    return tau(det) * (1 + B * math.sqrt(F.minorGcd) / det ** (1 / 3))


def bound_ratio(F: DualForm, B: int) -> float:
    return count_primitive_zeros(F, B) / zero_bound(F, B)


@dataclass
class SweepRow:
    B: int
    count: int
    bound: float
    ratio: float

    def as_dict(self) -> dict:
        return {"B": self.B, "count": self.count, "bound": self.bound, "ratio": self.ratio}


SWEEP_COLUMNS = ["B", "count", "bound", "ratio"]


def bound_sweep(F: DualForm, Bs) -> list[SweepRow]:
    rows = []
    for B in Bs:
        count = count_primitive_zeros(F, B)
        bound = zero_bound(F, B)
        rows.append(SweepRow(B, count, bound, count / bound))
    return rows
