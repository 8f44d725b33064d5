"""Exhaustive oracles.  They share no code with the parametrization."""
from __future__ import annotations

import numpy as np

from .conic import DehomogenizedForm, TernaryForm
from .errors import BudgetExceeded
from .modarith import PrimePowerModulus

ORACLE_BUDGET = 10**7
_CHUNK = 1 << 22


def _rows(q: DehomogenizedForm, m: PrimePowerModulus, budget: int):
    Q = m.q
    if Q * Q > budget:
        raise BudgetExceeded(f"exhaustive scan of {Q * Q} pairs exceeds budget {budget}")
    xs = np.arange(Q, dtype=np.int64)
    ys = np.arange(Q, dtype=np.int64)
    x_part = (q.a * xs % Q * xs + q.d * xs + q.f) % Q
    y_part = (q.c * ys % Q * ys + q.e * ys) % Q
    step = max(1, _CHUNK // Q)
    for lo in range(0, Q, step):
        block = xs[lo:lo + step, None]
        vals = (x_part[lo:lo + step, None] + (q.b * block % Q) * ys[None, :] + y_part[None, :]) % Q
        yield lo, vals == 0


def exhaustive_solutions(q: DehomogenizedForm, m: PrimePowerModulus, budget: int = ORACLE_BUDGET) -> set[tuple[int, int]]:
    """All (x, y) mod p^n with q(x, y) = 0, by scanning every pair."""
    out = set()
    for lo, hit in _rows(q, m, budget):
        ix, iy = np.nonzero(hit)
        out.update(zip((ix + lo).tolist(), iy.tolist()))
    return out


def exhaustive_count(q: DehomogenizedForm, m: PrimePowerModulus, budget: int = ORACLE_BUDGET) -> int:
    return sum(int(np.count_nonzero(hit)) for _, hit in _rows(q, m, budget))


def projective_count_mod_p(Q: TernaryForm, p: int) -> int:
    """#{(x, y, z) mod p : Q = 0, z != 0}, vectorized over the whole cube."""
    r = np.arange(p, dtype=np.int64)
    x, y, z = r[:, None, None], r[None, :, None], r[None, None, 1:]
    a, b, c, d, e, f = Q.coeffs
    vals = (a * x * x + b * x * y + c * y * y + d * x * z + e * y * z + f * z * z) % p
    return int(np.count_nonzero(vals == 0))
