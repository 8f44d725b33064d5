"""Ternary forms, their affine conics, and the stratified parametrization of
the solutions of q(x, y) = 0 mod p^n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, inf
from typing import Iterator

from .errors import CardinalityMismatch, NoSolutionModP, NotAdmissible, ParseError
from .modarith import PrimePowerModulus, inv_mod, is_prime, jacobi

INF_PARAM = inf  # the point at infinity of the slope parameter


@dataclass(frozen=True)
class AdmissibilityReport:
    p: int
    p_ok: bool
    gcd_a: int
    gcd_disc: int
    gcd_four_delta: int

    @property
    def accepted(self) -> bool:
        return self.p_ok and self.gcd_a == 1 and self.gcd_disc == 1 and self.gcd_four_delta == 1

    def failures(self) -> list[str]:
        out = []
        if not self.p_ok:
            out.append(f"p = {self.p} is not an odd prime")
        else:
            if self.gcd_a != 1:
                out.append(f"gcd(a, p) = {self.gcd_a}")
            if self.gcd_disc != 1:
                out.append(f"gcd(4ac - b^2, p) = {self.gcd_disc}")
            if self.gcd_four_delta != 1:
                out.append(f"gcd(4*Delta, p) = {self.gcd_four_delta}")
        return out


@dataclass(frozen=True)
class TernaryForm:
    """Q(x,y,z) = a x^2 + b xy + c y^2 + d xz + e yz + f z^2."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    @property
    def coeffs(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    @property
    def four_delta(self) -> int:
        """4 * det of the half-integral Gram matrix."""
        a, b, c, d, e, f = self.coeffs
        return 4 * a * c * f + b * e * d - a * e * e - c * d * d - f * b * b

    @property
    def disc2(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int, z: int) -> int:
        a, b, c, d, e, f = self.coeffs
        return a * x * x + b * x * y + c * y * y + d * x * z + e * y * z + f * z * z

    def admissibility(self, p: int) -> AdmissibilityReport:
        return validate(self, p)

    def admissible(self, p: int) -> bool:
        return validate(self, p).accepted

    def dehomogenize(self) -> "DehomogenizedForm":
        return DehomogenizedForm(*self.coeffs)

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        parts = text.replace(",", " ").split()
        if len(parts) != 6:
            raise ParseError(f"expected six integers 'a b c d e f', got {text!r}")
        try:
            return cls(*(int(s) for s in parts))
        except ValueError as exc:
            raise ParseError(f"non-integer coefficient in {text!r}") from exc

    def __str__(self):
        return " ".join(str(c) for c in self.coeffs)


def validate(Q: TernaryForm, p: int) -> AdmissibilityReport:
    p_ok = p >= 3 and is_prime(p)
    mod = p if p_ok else max(abs(p), 1)
    return AdmissibilityReport(
        p=p,
        p_ok=p_ok,
        gcd_a=gcd(Q.a, mod),
        gcd_disc=gcd(4 * Q.a * Q.c - Q.b * Q.b, mod),
        gcd_four_delta=gcd(Q.four_delta, mod),
    )


def require_admissible(Q: "TernaryForm | DehomogenizedForm", p: int) -> None:
    form = Q if isinstance(Q, TernaryForm) else Q.homogenize()
    report = validate(form, p)
    if not report.accepted:
        raise NotAdmissible("; ".join(report.failures()))


@dataclass(frozen=True)
class DehomogenizedForm:
    """q(x,y) = a x^2 + b xy + c y^2 + d x + e y + f, i.e. Q at z = 1."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f

    def qx(self, x: int, y: int) -> int:
        return 2 * self.a * x + self.b * y + self.d

    def qy(self, x: int, y: int) -> int:
        return self.b * x + 2 * self.c * y + self.e

    def homogenize(self) -> TernaryForm:
        return TernaryForm(self.a, self.b, self.c, self.d, self.e, self.f)

    @property
    def disc2(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


@dataclass(frozen=True)
class BasePoint:
    alpha: int
    beta: int
    A: int
    B: int
    modulus: PrimePowerModulus


def find_base_point(q: DehomogenizedForm, m: PrimePowerModulus) -> BasePoint:
    """Smallest solution mod p in lexicographic order, Hensel-lifted to p^n.

    At each lift the y-direction is used when q_y is a unit mod p, otherwise
    the x-direction.
    """
    require_admissible(q, m.p)
    p = m.p
    start = next(((x, y) for x in range(p) for y in range(p) if q(x, y) % p == 0), None)
    if start is None:
        raise NoSolutionModP(f"no solution of q(x, y) = 0 mod {p}")
    x, y = start
    pk = p
    for _ in range(1, m.n):
        residual = q(x, y) // pk % p
        gx, gy = q.qx(x, y) % p, q.qy(x, y) % p
        if gy:
            y += (-residual * pow(gy, -1, p) % p) * pk
        elif gx:
            x += (-residual * pow(gx, -1, p) % p) * pk
        else:
            raise AssertionError("singular point on an admissible conic")
        pk *= p
    x, y = x % m.q, y % m.q
    assert q(x, y) % m.q == 0
    return BasePoint(x, y, q.qx(x, y) % m.q, q.qy(x, y) % m.q, m)


def parametrize_point(q: DehomogenizedForm, base: BasePoint, t, m: PrimePowerModulus):
    """The second intersection of the line through the base point with slope t.

    Returns None when a t^2 + b t + c is not a unit mod p.
    """
    Q = m.q
    if t == INF_PARAM:
        return ((base.alpha - base.A * inv_mod(q.a, m)) % Q, base.beta)
    w = (q.a * t * t + q.b * t + q.c) % Q
    if w % m.p == 0:
        return None
    M = (base.A * t + base.B) * pow(w, -1, Q) % Q
    return ((base.alpha - t * M) % Q, (base.beta - M) % Q)


def stratum_admits(q: DehomogenizedForm, t: int, s: int, p: int) -> bool:
    if s == 0:
        return (q.a * t * t + q.b * t + q.c) % p != 0
    # for s >= 1 the condition a t^2 + b t p^s + c p^2s != 0 mod p is t != 0 mod p
    assert ((q.a * t * t + q.b * t * pow(p, s, p) + q.c * pow(p, 2 * s, p)) % p != 0) == (t % p != 0)
    return t % p != 0


def stratum_point(q: DehomogenizedForm, base: BasePoint, t: int, s: int, m: PrimePowerModulus) -> tuple[int, int]:
    Q = m.q
    ps = pow(m.p, s, Q)
    w = (q.a * t * t + q.b * t * ps + q.c * ps * ps) % Q
    k = (base.A * t + base.B * ps) * pow(w, -1, Q) % Q
    return ((base.alpha - t * k) % Q, (base.beta - ps * k) % Q)


def enumerate_stratum(q: DehomogenizedForm, base: BasePoint, s: int, m: PrimePowerModulus) -> list[tuple[int, int, int]]:
    """[(t, x, y)] for the admitted t = 1..p^(n-s), in increasing t."""
    if not 0 <= s <= m.n:
        raise ValueError(f"stratum {s} outside 0..{m.n}")
    out = []
    for t in range(1, m.p ** (m.n - s) + 1):
        if stratum_admits(q, t, s, m.p):
            out.append((t, *stratum_point(q, base, t, s, m)))
    return out


@dataclass
class ConicSolutionSet:
    entries: list[tuple[int, int, int, int]]  # (s, t, x, y)
    modulus: PrimePowerModulus
    base: BasePoint | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[int, int, int, int]]:
        return iter(self.entries)

    def points(self) -> set[tuple[int, int]]:
        return {(x, y) for _, _, x, y in self.entries}

    def stratum(self, s: int) -> list[tuple[int, int, int, int]]:
        return [entry for entry in self.entries if entry[0] == s]

    def xy_arrays(self):
        import numpy as np

        xs = np.fromiter((x for _, _, x, _ in self.entries), dtype=np.int64, count=len(self.entries))
        ys = np.fromiter((y for _, _, _, y in self.entries), dtype=np.int64, count=len(self.entries))
        return xs, ys


def count_solutions(q: DehomogenizedForm, m: PrimePowerModulus) -> int:
    require_admissible(q, m.p)
    return m.p ** (m.n - 1) * (m.p - jacobi(q.disc2, m.p))


def enumerate_all(q: DehomogenizedForm, m: PrimePowerModulus, base: BasePoint | None = None) -> ConicSolutionSet:
    require_admissible(q, m.p)
    if base is None:
        base = find_base_point(q, m)
    entries = [(s, t, x, y) for s in range(m.n + 1) for t, x, y in enumerate_stratum(q, base, s, m)]
    expected = count_solutions(q, m)
    distinct = {(x, y) for _, _, x, y in entries}
    if len(distinct) != len(entries) or len(entries) != expected:
        raise CardinalityMismatch(
            f"{len(entries)} entries, {len(distinct)} distinct, expected {expected} for p={m.p}, n={m.n}"
        )
    return ConicSolutionSet(entries, m, base)
