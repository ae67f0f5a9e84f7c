"""Remez exchange oracle for the least deviation.

Best uniform approximation on [-1, 1] of ``f(x) = x**7 - 7 s0 x**6`` by
polynomials of degree <= 5.  The minimal error equals the least deviation of
the monic degree-7 problem with prescribed second coefficient, but is found
here without any use of the closed-form parametrisation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .errors import ConvergenceError
from .numerics import RealPolynomial, check_precision, refine_root_in_bracket, sign_changes

log = logging.getLogger(__name__)

DEGREE = 5
N_REF = DEGREE + 2
ORACLE_PRECISION = 40
EXTREMUM_GRID = 400


@dataclass(frozen=True)
class RemezState:
    reference: tuple
    coeffs: tuple
    levelled_error: mpf
    iteration: int


@dataclass(frozen=True)
class RemezResult:
    coeffs: tuple
    L: mpf
    reference: tuple
    iterations: int
    # (|levelled error|, max |f - p| on [-1, 1]) per iteration
    bounds: tuple

    def approximant(self) -> RealPolynomial:
        return RealPolynomial(self.coeffs)


def target(s0) -> RealPolynomial:
    """``x**7 - 7 s0 x**6``."""
    return RealPolynomial([0] * 6 + [-7 * mpf(s0), 1])


def chebyshev_reference(n: int = N_REF) -> list:
    """Extrema of ``T_{n-1}``, ascending."""
    return [-mpmath.cos(mpmath.pi * k / (n - 1)) for k in range(n)]


def _levelled_solve(f: RealPolynomial, ref):
    a = mpmath.matrix(N_REF, N_REF)
    rhs = mpmath.matrix(N_REF, 1)
    for i, x in enumerate(ref):
        for j in range(DEGREE + 1):
            a[i, j] = x**j
        a[i, DEGREE + 1] = (-1) ** i
        rhs[i] = f(x)
    sol = mpmath.lu_solve(a, rhs)
    return [sol[j] for j in range(DEGREE + 1)], sol[DEGREE + 1]


def _extrema_candidates(err: RealPolynomial):
    derr = err.derivative()
    grid = [mpf(-1) + mpf(2 * i) / EXTREMUM_GRID for i in range(EXTREMUM_GRID + 1)]
    pts = [mpf(-1)]
    prec = max(mpmath.mp.dps - 5, 30)
    for lo, hi in sign_changes(derr, grid):
        x = lo if lo == hi else refine_root_in_bracket(derr, lo, hi, prec)
        if -1 < x < 1:
            pts.append(x)
    pts.append(mpf(1))
    return sorted(set(pts))


def _alternating_subset(pts, err: RealPolynomial):
    """Collapse same-sign runs to their largest member, then trim to N_REF."""
    vals = [err(x) for x in pts]
    keep = []
    for x, v in zip(pts, vals):
        if v == 0:
            continue
        if keep and (keep[-1][1] > 0) == (v > 0):
            if abs(v) > abs(keep[-1][1]):
                keep[-1] = (x, v)
        else:
            keep.append((x, v))
    while len(keep) > N_REF:
        # drop whichever end is smaller; the global maximum always survives
        if abs(keep[0][1]) < abs(keep[-1][1]):
            keep.pop(0)
        else:
            keep.pop()
    return keep


def _single_exchange(ref, err: RealPolynomial, xmax):
    """Swap ``xmax`` into ``ref`` keeping sign alternation (classical one-point exchange)."""
    ref = list(ref)
    vmax = err(xmax)
    sgn = lambda v: v > 0  # noqa: E731
    if xmax < ref[0]:
        if sgn(err(ref[0])) == sgn(vmax):
            ref[0] = xmax
        else:
            ref = [xmax] + ref[:-1]
    elif xmax > ref[-1]:
        if sgn(err(ref[-1])) == sgn(vmax):
            ref[-1] = xmax
        else:
            ref = ref[1:] + [xmax]
    else:
        for i in range(len(ref) - 1):
            if ref[i] <= xmax <= ref[i + 1]:
                j = i if sgn(err(ref[i])) == sgn(vmax) else i + 1
                ref[j] = xmax
                break
    return ref


def remez_minimax(s0, max_iter: int = 60, tol=None, precision: int = ORACLE_PRECISION) -> RemezResult:
    """Minimax degree-5 approximation of ``x**7 - 7 s0 x**6`` on [-1, 1].

    Iterates until successive levelled errors agree and the de la
    Vallee Poussin bracket ``|E| <= L <= max|f - p|`` is narrower than
    ``tol`` (relative).
    """
    check_precision(precision)
    with mpmath.workdps(precision):
        s0 = mpf(s0)
        if s0 < 0:
            raise ValueError("s0 must be >= 0")
        tol = mpf(10) ** (-(precision - 10)) if tol is None else mpf(tol)
        f = target(s0)
        ref = chebyshev_reference()
        prev = None
        bounds = []
        state = None
        for it in range(1, max_iter + 1):
            coeffs, e = _levelled_solve(f, ref)
            err = f - RealPolynomial(coeffs)
            state = RemezState(tuple(ref), tuple(coeffs), e, it)
            cands = _extrema_candidates(err)
            upper = max(abs(err(x)) for x in cands)
            lower = abs(e)
            bounds.append((lower, upper))
            log.debug("remez it=%d |E|=%s max|err|=%s", it, mpmath.nstr(lower, 15), mpmath.nstr(upper, 15))
            if prev is not None and abs(lower - prev) <= tol * upper and upper - lower <= tol * upper:
                break
            prev = lower
            alt = _alternating_subset(cands, err)
            if len(alt) == N_REF:
                ref = [x for x, _ in alt]
            else:
                xmax = max(cands, key=lambda x: abs(err(x)))
                ref = _single_exchange(ref, err, xmax)
        else:
            raise ConvergenceError(f"Remez did not converge in {max_iter} iterations", state)
        L = abs(e)
        # de la Vallee Poussin: every lower bound sits below every upper bound
        for lo, hi in bounds:
            if not lo <= L * (1 + tol) or not L <= hi * (1 + tol):
                raise ConvergenceError("levelled error left the de la Vallee Poussin bracket", state)
        return RemezResult(coeffs=tuple(coeffs), L=L, reference=tuple(ref), iterations=it,
                           bounds=tuple(bounds))


def oracle_equioscillation(reference, f, p, tol) -> bool:
    """True iff ``f - p`` takes equal magnitude, alternating-sign values on ``reference``."""
    vals = [f(x) - p(x) for x in reference]
    mags = [abs(v) for v in vals]
    level = max(mags)
    if level == 0:
        return False
    if any(abs(m - level) > tol * level for m in mags):
        return False
    return all((a > 0) != (b > 0) for a, b in zip(vals, vals[1:]))
