"""Smoothly weighted counts of solutions of Q(x, y, z) = 0 mod p^n.

T is the sum of Phi((x-x0)/N) Phi((y-y0)/N) Phi((z-z0)/N) over integer points
with Q = 0 mod q and p not dividing z.  It is computed two ways that share no
membership test:

* ``smooth_count_naive`` evaluates Q on every point of the truncated box;
* ``smooth_count_classes`` walks the conic classes (x~, y~) mod q and the
  progressions x = x~ z, y = y~ z (mod q) for each admissible z.

Phi is the Gaussian exp(-pi x^2), which is its own Fourier transform, so the
predicted main term C_p(Q) N^3 / q carries no transform error.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .conic import ConicSolutionSet, TernaryForm, enumerate_all, require_admissible
from .errors import BudgetExceeded, FormulaMismatch
from .modarith import PrimePowerModulus, jacobi

NAIVE_BUDGET = 10**10
CLASSES_BUDGET = 10**9
MIN_TRUNCATION = 6.0


class GaussianWeight:
    """Phi(x) = exp(-pi x^2); Phi-hat = Phi."""

    name = "gaussian"

    @staticmethod
    def phi(x):
        return np.exp(-np.pi * np.square(x))

    phi_hat = phi

    @staticmethod
    def tail_bound(radius: float) -> float:
        """Upper bound for the mass of Phi outside [-radius, radius], per axis."""
        return math.erfc(math.sqrt(math.pi) * radius)


def weight(x: float) -> float:
    return math.exp(-math.pi * x * x)


def weight_hat(x: float) -> float:
    return math.exp(-math.pi * x * x)


def poisson_gap(u: float, K: int = 8) -> float:
    """|sum_{|k|<=K} Phi(k+u) - sum_{|k|<=K} Phi-hat(k) e(ku)|, which Poisson summation makes ~0."""
    left = math.fsum(weight(k + u) for k in range(-K, K + 1))
    right = math.fsum(weight_hat(k) * math.cos(2 * math.pi * k * u) for k in range(-K, K + 1))
    # the imaginary parts cancel pairwise (k, -k)
    return abs(left - right)


def c_p(Q: TernaryForm, p: int) -> Fraction:
    """C_p(Q) = (p - s_p(Q))(p - 1) / p^2 with s_p(Q) = ((b^2 - 4ac)/p)."""
    require_admissible(Q, p)
    s = jacobi(Q.disc2, p)
    return Fraction((p - s) * (p - 1), p * p)


def exact_count_mod_p(Q: TernaryForm, p: int) -> int:
    """Brute-force count of (x, y, z) mod p with Q = 0 and z != 0, checked against (p-1)(p-s_p)."""
    require_admissible(Q, p)
    count = sum(1 for x in range(p) for y in range(p) for z in range(1, p) if Q(x, y, z) % p == 0)
    expected = (p - 1) * (p - jacobi(Q.disc2, p))
    if count != expected:
        raise FormulaMismatch(f"brute force {count} != (p-1)(p-s_p) = {expected}")
    return count


@dataclass(frozen=True)
class CountConfig:
    Q: TernaryForm
    m: PrimePowerModulus
    N: float
    center: tuple[int, int, int] = (0, 0, 0)
    truncation: float = MIN_TRUNCATION  # half-width of each window, in units of N

    def __post_init__(self):
        if self.N <= 0:
            raise ValueError("N must be positive")
        if self.truncation < MIN_TRUNCATION:
            raise ValueError(f"truncation must be at least {MIN_TRUNCATION} N")

    @property
    def radius(self) -> int:
        return int(math.floor(self.truncation * self.N))

    def axis(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Integer points of the k-th window and their weights."""
        c = self.center[k]
        pts = np.arange(c - self.radius, c + self.radius + 1, dtype=np.int64)
        return pts, GaussianWeight.phi((pts - c) / self.N)

    def windows(self):
        return tuple(self.axis(k) for k in range(3))

    def tail_bound(self) -> float:
        """Relative weight mass dropped by truncating all three windows."""
        return 3 * GaussianWeight.tail_bound(self.truncation)


Window = tuple[np.ndarray, np.ndarray]


def smooth_count_naive(cfg: CountConfig, windows: Sequence[Window] | None = None, budget: int = NAIVE_BUDGET) -> float:
    """Evaluate Q on every point of the box; x outer, y middle, z inner."""
    (xs, wx), (ys, wy), (zs, wz) = windows or cfg.windows()
    visits = len(xs) * len(ys) * len(zs)
    if visits > budget:
        raise BudgetExceeded(f"naive count needs {visits} visits, budget {budget}")
    a, b, c, d, e, f = cfg.Q.coeffs
    q, p = cfg.m.q, cfg.m.p
    keep = zs % p != 0
    zs, wz = zs[keep], wz[keep]
    Y = ys[:, None]
    Z = zs[None, :]
    yz_part = (c * Y * Y + e * Y * Z + f * Z * Z) % q
    planes = []
    for x, w in zip(xs.tolist(), wx.tolist()):
        vals = (yz_part + (b * x) * Y + (d * x) * Z + a * x * x) % q
        hits = (vals == 0).astype(np.float64)
        planes.append(w * float(wy @ (hits @ wz)))
    return math.fsum(planes)


def _residue_weights(pts: np.ndarray, w: np.ndarray, q: int) -> np.ndarray:
    out = np.zeros(q, dtype=np.float64)
    np.add.at(out, pts % q, w)
    return out


def classes_visits(cfg: CountConfig, solutions: ConicSolutionSet, windows: Sequence[Window] | None = None) -> int:
    """Predicted number of (z, class) visits of ``smooth_count_classes``."""
    (xs, _), (ys, _), (zs, _) = windows or cfg.windows()
    q, p = cfg.m.q, cfg.m.p
    n_z = int(np.count_nonzero(zs % p))
    support = min(len(ys), q)
    return int(n_z * support * len(solutions) / q) + n_z


def smooth_count_classes(
    cfg: CountConfig,
    solutions: ConicSolutionSet,
    windows: Sequence[Window] | None = None,
    budget: int = CLASSES_BUDGET,
) -> float:
    """T via the conic classes: sum over admissible z of Phi_z times
    sum over (x~, y~) in M of Sx[x~ z] Sy[y~ z], where Sx[r] is the weight mass of
    the progression x = r (mod q) inside the x-window.

    The inner sum only visits residues r with Sy[r] != 0, reaching the
    classes with y~ = r / z through an index of M sorted by y~.
    """
    (xs, wx), (ys, wy), (zs, wz) = windows or cfg.windows()
    visits = classes_visits(cfg, solutions, windows)
    if visits > budget:
        raise BudgetExceeded(f"class count needs ~{visits} visits, budget {budget}")
    q, p = cfg.m.q, cfg.m.p
    Sx = _residue_weights(xs, wx, q)
    Sy = _residue_weights(ys, wy, q)
    support = np.flatnonzero(Sy)
    sy = Sy[support]

    cx, cy = solutions.xy_arrays()
    order = np.argsort(cy, kind="stable")
    cx_sorted = cx[order]
    counts = np.bincount(cy, minlength=q)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))

    per_z = []
    for z, w in zip(zs.tolist(), wz.tolist()):
        if z % p == 0:
            continue
        zinv = pow(z, -1, q)
        fiber = support * zinv % q
        cnt = counts[fiber]
        total = int(cnt.sum())
        if total == 0:
            continue
        owner = np.repeat(np.arange(len(support)), cnt)
        offset = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        xt = cx_sorted[starts[fiber][owner] + offset]
        inner = float(sy[owner] @ Sx[xt * (z % q) % q])
        per_z.append(w * inner)
    return math.fsum(per_z)


def main_term(cfg: CountConfig) -> float:
    """Phi-hat(0)^3 C_p(Q) N^3 / q with Phi-hat(0) = 1."""
    return float(c_p(cfg.Q, cfg.m.p)) * cfg.N**3 / cfg.m.q


def box_scale(q: int, theta: float) -> int:
    """ceil(q^theta), treating values within 1e-9 of an integer as that integer."""
    val = q**theta
    nearest = round(val)
    if abs(val - nearest) < 1e-9 * max(1.0, val):
        return int(nearest)
    return int(math.ceil(val))


@dataclass
class SmoothCountReport:
    config: CountConfig
    T_classes: float
    T0: float
    T_naive: float | None = None
    seconds: float = 0.0
    tail_bound: float = field(init=False)

    def __post_init__(self):
        self.tail_bound = self.config.tail_bound()

    @property
    def ratio(self) -> float:
        return self.T_classes / self.T0


def smooth_count_report(cfg: CountConfig, solutions: ConicSolutionSet | None = None, naive: bool = False) -> SmoothCountReport:
    start = time.perf_counter()
    if solutions is None:
        solutions = enumerate_all(cfg.Q.dehomogenize(), cfg.m)
    T = smooth_count_classes(cfg, solutions)
    T_naive = smooth_count_naive(cfg) if naive else None
    if T_naive is not None and abs(T_naive - T) > 1e-6 * max(1.0, T):
        raise FormulaMismatch(f"naive {T_naive!r} and class {T!r} counts disagree")
    return SmoothCountReport(cfg, T, main_term(cfg), T_naive, time.perf_counter() - start)


@dataclass
class ExperimentRow:
    n: int
    q: int
    N: int
    theta: float
    T: float | None
    T0: float
    ratio: float | None
    method: str
    seconds: float

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "N": self.N,
            "theta": self.theta,
            "T": self.T,
            "T0": self.T0,
            "ratio": self.ratio,
            "method": self.method,
            "seconds": round(self.seconds, 3),
        }


CSV_COLUMNS = ["n", "q", "N", "theta", "T", "T0", "ratio", "method", "seconds"]


def run_asymptotic_experiment(
    Q: TernaryForm,
    p: int,
    n_list: Sequence[int],
    theta: float = 0.6,
    center: tuple[int, int, int] = (0, 0, 0),
    naive_budget: int = 3 * 10**8,
    budget: int = CLASSES_BUDGET,
) -> list[ExperimentRow]:
    """T / T0 for each exponent, with N = ceil(q^theta).

    Rows whose naive box fits ``naive_budget`` are cross-checked against the
    naive count.  Rows over ``budget`` are kept with method "skipped:budget".
    """
    if not 0.5 < theta <= 1.0:
        raise ValueError("theta must lie in (0.5, 1]")
    require_admissible(Q, p)
    rows = []
    for n in n_list:
        m = PrimePowerModulus(p, n)
        N = box_scale(m.q, theta)
        cfg = CountConfig(Q, m, N, center)
        T0 = main_term(cfg)
        start = time.perf_counter()
        solutions = enumerate_all(Q.dehomogenize(), m)
        try:
            T = smooth_count_classes(cfg, solutions, budget=budget)
        except BudgetExceeded:
            rows.append(ExperimentRow(n, m.q, N, theta, None, T0, None, "skipped:budget", 0.0))
            continue
        method = "classes"
        if (2 * cfg.radius + 1) ** 3 <= naive_budget:
            T_naive = smooth_count_naive(cfg)
            if abs(T_naive - T) > 1e-6 * max(1.0, T):
                raise FormulaMismatch(f"n={n}: naive {T_naive!r} vs classes {T!r}")
            method = "classes+naive"
        rows.append(ExperimentRow(n, m.q, N, theta, T, T0, T / T0, method, time.perf_counter() - start))
    return rows
