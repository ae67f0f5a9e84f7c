"""Zolotarev's first problem for degree 7.

Given ``s0 > tan(pi/14)**2`` find the monic ``x**7 - 7 s0 x**6 + ...`` of least
sup-norm on [-1, 1].  The solution is ``Z_{7,t0} / b_7(t0)`` where ``t0`` is
the parameter with ``s(t0) = s0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from . import septic
from .errors import DomainError, RootFindingError
from .numerics import (
    DEFAULT_PRECISION,
    RealPolynomial,
    check_precision,
    refine_root_in_bracket,
    to_real,
)
from .paper_data import get_tables

log = logging.getLogger(__name__)

SCAN_POINTS = 64
# closest approach of the scan to either end of I7
SCAN_EDGE = mpf("1e-7")


def proper_threshold(precision: int = DEFAULT_PRECISION) -> mpf:
    """``tan(pi/14)**2``: the proper regime is ``s0`` above this value."""
    check_precision(precision)
    with mpmath.workdps(precision + 10):
        v = mpmath.tan(mpmath.pi / 14) ** 2
    with mpmath.workdps(precision):
        return +v


def scan_grid(precision: int = DEFAULT_PRECISION) -> list:
    """64 parameters across I7, geometrically refined towards both ends.

    Most points crowd towards -13, where ``s`` grows without bound; a smaller
    share approach theta, where ``s`` flattens out near the threshold.
    """
    work = precision + septic.EVAL_GUARD
    theta = septic.parameter_domain(precision).theta
    with mpmath.workdps(work):
        width = septic.RIGHT_END - theta
        n_right, n_left = 44, SCAN_POINTS - 44
        # distances from -13: width/2 ... SCAN_EDGE, geometric
        right = [width / 2 * (SCAN_EDGE / (width / 2)) ** (mpf(i) / (n_right - 1)) for i in range(n_right)]
        left = [width / 2 * (SCAN_EDGE / (width / 2)) ** (mpf(i) / n_left) for i in range(1, n_left + 1)]
        ts = [theta + d for d in left] + [septic.RIGHT_END - d for d in right]
        return sorted(ts)


def _bracket(f, grid, what):
    vals = [f(t) for t in grid]
    changes = [i for i in range(len(grid) - 1) if (vals[i] > 0) != (vals[i + 1] > 0)]
    log.debug("%s: %d sign change(s) on the scan grid", what, len(changes))
    if len(changes) > 1:
        raise RootFindingError(
            f"{what}: {len(changes)} sign changes on the scan grid; refusing to pick one "
            f"(at t = {[mpmath.nstr(grid[i], 10) for i in changes]})")
    if not changes:
        raise RootFindingError(f"{what}: no sign change on the scan grid; raise precision or check input")
    i = changes[0]
    return grid[i], grid[i + 1]


def solve_parameter(s0, precision: int = DEFAULT_PRECISION, *, tables=None) -> mpf:
    """The unique ``t0`` in I7 with ``s(t0) = s0``."""
    tables = tables or get_tables()
    work = precision + septic.EVAL_GUARD
    with mpmath.workdps(work):
        s0 = to_real(s0, work)
        thr = proper_threshold(work)
        if s0 <= thr:
            raise DomainError(
                f"s0 = {mpmath.nstr(s0, 15)} is not above tan(pi/14)^2 = {mpmath.nstr(thr, 12)}: "
                "improper regime, out of scope")

        def f(t):
            return septic.s_value(t, work, margin=0, tables=tables) - s0

        grid = scan_grid(precision)
        # s blows up at -13: extend the scan towards it for very large s0
        edge = SCAN_EDGE
        while f(grid[-1]) < 0 and edge > mpf(10) ** (-precision // 3):
            edge /= 1000
            grid.append(septic.RIGHT_END - edge)
        lo, hi = _bracket(f, grid, f"s(t) = {mpmath.nstr(s0, 12)}")
        t0 = refine_root_in_bracket(f, lo, hi, precision)
    return t0


@dataclass(frozen=True)
class ZfpSolution:
    s0: mpf
    t0: mpf
    monic: RealPolynomial
    L: mpf


def solve_zfp(s0, precision: int = DEFAULT_PRECISION, *, tables=None) -> ZfpSolution:
    """Extremal monic polynomial and least deviation for prescribed ``s0``."""
    t0 = solve_parameter(s0, precision, tables=tables)
    a = septic.monic_coefficients(t0, precision, margin=0, tables=tables)
    L = septic.least_deviation(t0, precision, margin=0, tables=tables)
    with mpmath.workdps(precision):
        return ZfpSolution(s0=to_real(s0, precision), t0=t0, monic=RealPolynomial(a), L=L)


def find_unit_leading_parameter(precision: int = DEFAULT_PRECISION, *, tables=None) -> mpf:
    """The parameter where ``b_7(t) = 1``, i.e. where monic and normalised coincide."""
    tables = tables or get_tables()
    work = precision + septic.EVAL_GUARD
    with mpmath.workdps(work):
        def f(t):
            return septic.normalized_coefficients(t, work, margin=0, tables=tables)[7] - 1

        lo, hi = _bracket(f, scan_grid(precision), "b_7(t) = 1")
        return refine_root_in_bracket(f, lo, hi, precision)
