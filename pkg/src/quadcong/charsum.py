"""Additive characters e_q and quadratic Gauss sums.

Character sums are accumulated in ascending index order and combined with
``math.fsum`` on the real and imaginary parts separately, so a sum's value
does not depend on how the terms were batched.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .modarith import PrimePowerModulus

TWO_PI = 2.0 * math.pi


def e_q(z: int, q: int) -> complex:
    """exp(2 pi i z / q), reducing z mod q before the division."""
    if q < 1:
        raise ValueError("q must be positive")
    return cmath.exp(1j * TWO_PI * ((z % q) / q))


def e_q_array(z: np.ndarray, q: int) -> np.ndarray:
    """Vectorized e_q on an integer array."""
    frac = np.mod(z, q).astype(np.float64) / q
    return np.exp(1j * TWO_PI * frac)


def csum(values) -> complex:
    """Compensated sum of complex values, in the given order."""
    arr = np.asarray(values, dtype=np.complex128)
    return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))


def gauss_direct(q: int, shift: int = 0) -> complex:
    """G_q = sum_{x=1..q} e_q(x^2); ``shift`` moves the summation window to x=shift+1..shift+q."""
    if q < 1:
        raise ValueError("q must be positive")
    xs = np.arange(shift + 1, shift + q + 1, dtype=np.int64) % q
    return csum(e_q_array(xs * xs % q, q))


def gauss_p(p: int) -> complex:
    """Classical value of G_p for an odd prime p."""
    _check_gauss_convention(p)
    return _gauss_p_value(p)


def _gauss_p_value(p: int) -> complex:
    root = math.sqrt(p)
    return complex(root, 0.0) if p % 4 == 1 else complex(0.0, root)


@lru_cache(maxsize=None)
def _check_gauss_convention(p: int) -> None:
    direct = gauss_direct(p)
    if abs(direct - _gauss_p_value(p)) > 1e-8 * p:
        raise AssertionError(f"G_{p} convention check failed: direct sum {direct}")


def gauss_closed(m: PrimePowerModulus) -> complex:
    """G_{p^k} from its prime-power closed form."""
    p, k = m.p, m.n
    if k % 2 == 0:
        return complex(float(p ** (k // 2)), 0.0)
    return float(p ** ((k - 1) // 2)) * gauss_p(p)
