"""Rotation matrix elements d^J_{M,M'}(pi/2), exact and in bulk.

Quantum numbers are passed doubled (twoJ = 2J, twoM = 2M) so half-integer
spins stay in integer arithmetic.  Convention:

    d^J_{M,M'}(beta) = <J,M| exp(-i*beta*J_y) |J,M'>,

real, with Condon-Shortley phases for the |J,M> basis.

Two evaluation paths are provided:

* ``wigner_d_half_pi`` computes a single element exactly.  At beta = pi/2
  every term of the alternating sum carries the same power of 2, so the sum
  collapses to an integer combination of binomial coefficients that Python
  evaluates without rounding; only the final scaling is floating point.
  Naive floating-point summation loses all precision beyond J of about 15
  because the terms grow like 4^J while the result stays bounded.

* ``WignerTable`` fills the whole (2J+1)^2 table by a three-term recurrence.
  Column M' of the table is the eigenvector of the tridiagonal operator J_x
  with eigenvalue M', seeded at the top row M = J with an exactly known
  closed form and recursed downward into the oscillatory region; rows with
  M < 0 follow from a reflection symmetry specific to beta = pi/2.  Running
  the recurrence only from the decayed edge toward the bulk keeps every
  stored element at full relative accuracy.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Dict

import numpy as np

from .reservoir import ParameterError

__all__ = ["wigner_d_half_pi", "WignerTable", "get_table"]


def _validate_doubled(twoJ: int, twoM: int, twoMp: int) -> None:
    if twoJ < 0:
        raise ParameterError(f"twoJ must be non-negative, got {twoJ}")
    for name, tm in (("twoM", twoM), ("twoMp", twoMp)):
        if abs(tm) > twoJ:
            raise ParameterError(f"|{name}|={abs(tm)} exceeds twoJ={twoJ}")
        if (twoJ + tm) % 2:
            raise ParameterError(f"{name}={tm} has wrong parity for twoJ={twoJ}")


def wigner_d_half_pi(twoJ: int, twoM: int, twoMp: int) -> float:
    """Exact-to-rounding d^J_{M,M'}(pi/2) for doubled quantum numbers.

    The integer part of the sum is exact (arbitrary-precision binomials), so
    the result keeps full relative accuracy at any twoJ, including elements
    as small as 2^-J at the table corners.
    """
    _validate_doubled(twoJ, twoM, twoMp)
    jpm = (twoJ + twoMp) // 2   # j + m   (column index M' plays "m")
    jmm = (twoJ - twoMp) // 2
    jpmp = (twoJ + twoM) // 2   # j + m'  (row index M plays "m'")
    jmmp = (twoJ - twoM) // 2
    dm = (twoMp - twoM) // 2    # m - m'
    s_int = 0
    for k in range(max(0, dm), min(jpm, jmm + dm) + 1):
        s_int += (-1) ** k * math.comb(jpm, k) * math.comb(jmm, k - dm)
    if s_int == 0:
        return 0.0
    log_mag = (-0.5 * twoJ) * math.log(2.0) + math.log(abs(s_int)) + 0.5 * (
        math.lgamma(jpmp + 1) + math.lgamma(jmmp + 1)
        - math.lgamma(jpm + 1) - math.lgamma(jmm + 1))
    sign = (1.0 if s_int > 0 else -1.0) * (-1.0) ** ((twoM - twoMp) // 2)
    return sign * math.exp(log_mag)


@dataclass(frozen=True)
class WignerTable:
    """Dense table of d^J_{M,M'}(pi/2), addressed by doubled indices.

    ``values[i, k]`` holds the element with twoM = 2*i - twoJ (row) and
    twoMp = 2*k - twoJ (column).  Every column is an orthonormal eigenvector
    of J_x, so the table is orthogonal to working precision.
    """

    twoJ: int
    values: np.ndarray

    @classmethod
    def build(cls, twoJ: int) -> "WignerTable":
        if twoJ < 0:
            raise ParameterError(f"twoJ must be non-negative, got {twoJ}")
        n = twoJ + 1
        j = 0.5 * twoJ
        two_ms = np.arange(-twoJ, twoJ + 1, 2)
        ms = 0.5 * two_ms
        # top row (twoM = twoJ): (-1)^(j-m) 2^-j sqrt(C(2j, j+m)), exact form
        log_c = np.array([
            math.lgamma(twoJ + 1) - math.lgamma((twoJ + tm) // 2 + 1)
            - math.lgamma((twoJ - tm) // 2 + 1) for tm in two_ms])
        top = np.exp(0.5 * log_c - j * math.log(2.0))
        top *= np.where(((twoJ - two_ms) // 2) % 2 == 0, 1.0, -1.0)

        rows: Dict[int, np.ndarray] = {twoJ: top}

        def coupling(two_mp: int) -> float:
            mp = 0.5 * two_mp
            return 0.5 * math.sqrt((j - mp) * (j + mp + 1.0))

        if twoJ >= 1:
            rows[twoJ - 2] = ms * rows[twoJ] / coupling(twoJ - 2)
        two_mp = twoJ - 2
        lowest = twoJ % 2
        while two_mp - 2 >= lowest:
            rows[two_mp - 2] = (ms * rows[two_mp]
                                - coupling(two_mp) * rows[two_mp + 2]
                                ) / coupling(two_mp - 2)
            two_mp -= 2
        vals = np.zeros((n, n))
        for tm_row, data in rows.items():
            if tm_row >= lowest:
                vals[(tm_row + twoJ) // 2, :] = data
        # reflection: d_{-M,M'} = (-1)^((twoJ + twoMp)/2 + twoM) d_{M,M'}
        for tm_row in range(-twoJ, 0, 2):
            src = rows[-tm_row]
            expo = (twoJ + two_ms) // 2 + (-tm_row)
            signs = np.where(expo % 2 == 0, 1.0, -1.0)
            vals[(tm_row + twoJ) // 2, :] = signs * src
        vals.setflags(write=False)
        return cls(twoJ=twoJ, values=vals)

    def value(self, twoM: int, twoMp: int) -> float:
        _validate_doubled(self.twoJ, twoM, twoMp)
        return float(self.values[(twoM + self.twoJ) // 2,
                                 (twoMp + self.twoJ) // 2])

    def abs_squared(self) -> np.ndarray:
        return self.values ** 2


_TABLE_CACHE: Dict[int, WignerTable] = {}
_TABLE_LOCK = threading.Lock()


def get_table(twoJ: int) -> WignerTable:
    """Cached table; tables are immutable and shareable across threads."""
    tab = _TABLE_CACHE.get(twoJ)
    if tab is None:
        tab = WignerTable.build(twoJ)
        with _TABLE_LOCK:
            _TABLE_CACHE.setdefault(twoJ, tab)
    return tab
