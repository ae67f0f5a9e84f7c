"""Septic proper Zolotarev polynomials via the radical parametrisation in ``t``.

For ``t`` in ``I7 = (theta, -13)`` the normalised polynomial
``Z(x) = sum b_k x**k`` equioscillates between -1 and 1 on [-1, 1] and on a
band ``[alpha, beta]`` to the right of it.  The monic polynomial is
``Z / b_7`` with least deviation ``L = 1 / b_7``.

All functions accept ``t`` as int, str, Fraction or mpf and return mpf values
rounded to ``precision`` decimal digits.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mpf

from .errors import DomainError, RootFindingError
from .numerics import (
    DEFAULT_PRECISION,
    RealPolynomial,
    check_precision,
    kth_real_root,
    refine_root_in_bracket,
    sign_changes,
    sqrt_checked,
    to_real,
)
from .paper_data import get_tables, common_prefactors

RIGHT_END = -13
BOUNDARY_MARGIN = mpf("1e-8")
# extra digits used while evaluating the high degree coefficient polynomials
EVAL_GUARD = 30
DERIVATIVE_GRID = 512


def _work(precision):
    return check_precision(precision) + EVAL_GUARD


def _round(x, precision):
    with mpmath.workdps(precision):
        return +x


@dataclass(frozen=True)
class ParameterDomain:
    theta: mpf
    right: int = RIGHT_END

    def contains(self, t) -> bool:
        t = mpf(t)
        return self.theta < t < self.right

    def check(self, t, margin=BOUNDARY_MARGIN) -> None:
        t = mpf(t)
        if not self.contains(t):
            raise DomainError(
                f"t must lie strictly inside (theta, -13) = ({mpmath.nstr(self.theta, 12)}, -13); "
                f"got {mpmath.nstr(t, 15)}"
            )
        if margin and (t - self.theta < margin or self.right - t < margin):
            raise DomainError(
                f"t = {mpmath.nstr(t, 15)} is within {mpmath.nstr(margin, 3)} of the boundary of "
                "(theta, -13); pass margin=0 to allow it"
            )


@lru_cache(maxsize=8)
def parameter_domain(precision: int = DEFAULT_PRECISION) -> ParameterDomain:
    """``I7`` with ``theta`` = smallest real root of ``x**3 + 27x**2 - 93x - 1847``."""
    theta = kth_real_root(get_tables()["theta_minpoly"], 1, precision + EVAL_GUARD)
    return ParameterDomain(theta=theta)


@contextmanager
def _at(t, precision, margin):
    """Validate ``t`` and enter a working precision adequate for it.

    The radicand numerators cancel like ``(13 + t)**4`` as ``t -> -13``, so
    four extra digits are carried per decade of closeness to -13.
    """
    work = _work(precision)
    with mpmath.workdps(work):
        tt = to_real(t, work)
        parameter_domain(precision).check(tt, margin)
        extra = _closeness_digits(tt, 4)
    with mpmath.workdps(work + extra):
        yield tt


def _closeness_digits(t, per_decade):
    d = RIGHT_END - t
    return int(per_decade * -mpmath.log10(d)) + 2 if d < 1 else 0


def _omega(t):
    return sqrt_checked(3 * (506 + 75 * t - t**3), "omega radicand 3(506 + 75t - t^3)")


def omega(t, precision: int = DEFAULT_PRECISION) -> mpf:
    """``sqrt(3 (506 + 75 t - t**3))``; defined wherever the radicand is >= 0."""
    work = _work(precision)
    with mpmath.workdps(work):
        return _round(_omega(to_real(t, work)), precision)


def _normalized(t, tables):
    pre = common_prefactors()
    w = _omega(t)
    q = pre.q(t)
    b = []
    for k in range(8):
        v = tables[f"p{k}1"](t) + w * tables[f"p{k}2"](t)
        if k % 2 == 0:
            b.append(v / q)
        else:
            b.append(pre.odd_signs[k] * sqrt_checked(v, f"radicand p{k}1 + omega p{k}2") / q)
    return b


def normalized_coefficients(t, precision: int = DEFAULT_PRECISION, *, margin=BOUNDARY_MARGIN,
                            tables=None) -> list:
    """Coefficients ``b_0..b_7`` of the normalised polynomial ``Z_{7,t}``."""
    tables = tables or get_tables()
    with _at(t, precision, margin) as tt:
        b = _normalized(tt, tables)
    return [_round(v, precision) for v in b]


def monic_coefficients(t, precision: int = DEFAULT_PRECISION, *, margin=BOUNDARY_MARGIN,
                       tables=None) -> list:
    """``a_k = b_k / b_7``; the last entry is exactly 1."""
    tables = tables or get_tables()
    with _at(t, precision, margin) as tt:
        b = _normalized(tt, tables)
        a = [v / b[7] for v in b[:7]]
    return [_round(v, precision) for v in a] + [mpf(1)]


def least_deviation(t, precision: int = DEFAULT_PRECISION, *, margin=BOUNDARY_MARGIN,
                    tables=None) -> mpf:
    tables = tables or get_tables()
    with _at(t, precision, margin) as tt:
        b = _normalized(tt, tables)
        return _round(1 / b[7], precision)


@dataclass(frozen=True)
class Band:
    alpha: mpf
    beta: mpf
    gamma: mpf
    s: mpf


def _band(t, tables):
    w = _omega(t)
    q5 = tables["q5"](t)
    alpha = sqrt_checked((tables["pa1"](t) + w * tables["pa2"](t)) / q5, "alpha^2")
    beta = sqrt_checked((tables["pb1"](t) + w * tables["pb2"](t)) / q5, "beta^2")
    s = sqrt_checked((tables["ps1"](t) + w * tables["ps2"](t)) / q5, "(7s)^2") / 7
    return Band(alpha, beta, (alpha + beta) / 2 - s, s)


def critical_band(t, precision: int = DEFAULT_PRECISION, *, margin=BOUNDARY_MARGIN,
                  tables=None) -> Band:
    """``alpha``, ``beta``, ``gamma = (alpha + beta)/2 - s`` and ``s`` at ``t``."""
    tables = tables or get_tables()
    with _at(t, precision, margin) as tt:
        bd = _band(tt, tables)
    return Band(*(_round(v, precision) for v in (bd.alpha, bd.beta, bd.gamma, bd.s)))


def s_value(t, precision: int = DEFAULT_PRECISION, *, margin=BOUNDARY_MARGIN, tables=None) -> mpf:
    """Only ``s(t)``; cheaper than :func:`critical_band`."""
    tables = tables or get_tables()
    with _at(t, precision, margin) as tt:
        w = _omega(tt)
        v = (tables["ps1"](tt) + w * tables["ps2"](tt)) / tables["q5"](tt)
        return _round(sqrt_checked(v, "(7s)^2") / 7, precision)


def direct_a3_a5(t, precision: int = DEFAULT_PRECISION, *, margin=BOUNDARY_MARGIN,
                 tables=None) -> tuple:
    """``a_3``, ``a_5`` from their own rational expressions in ``t`` and omega.

    Independent of the coefficient formulas behind :func:`monic_coefficients`.
    """
    tables = tables or get_tables()
    with _at(t, precision, margin) as tt:
        w = _omega(tt)
        a3 = (tables["r31"](tt) + w * tables["r32"](tt)) / tables["q3"](tt)
        a5 = (tables["r51"](tt) + w * tables["r52"](tt)) / tables["q5"](tt)
    return _round(a3, precision), _round(a5, precision)


def _z2_z4(t, tables):
    # the inner radicand vanishes as t -> -13; costs about 10 digits per decade
    with mpmath.workdps(mpmath.mp.dps + _closeness_digits(t, 6)):
        return _z2_z4_raw(t, tables)


def _z2_z4_raw(t, tables):
    w = _omega(t)
    u = (1 + t) ** 2
    base = (t - 11) * tables["p9"](t) - 16 * w * u * tables["p6"](t)
    inner = sqrt_checked(3 * (11 - t) * (tables["p12x"](t) - 2 * w * tables["p10"](t)), "z2/z4 inner radicand")
    shift = 8 * u * (13 + t) * inner
    q5 = tables["q5"](t)
    z2 = -sqrt_checked((base + shift) / q5, "z2^2")
    z4 = sqrt_checked((base - shift) / q5, "z4^2")
    return z2, z4


def _critical_points(b, precision):
    """The five roots of Z' in (-1, 1), bracketed on a uniform grid."""
    dz = RealPolynomial(b).derivative()
    n = DERIVATIVE_GRID
    grid = [mpf(-1) + mpf(2 * i) / n for i in range(n + 1)]
    brackets = sign_changes(dz, grid)
    if len(brackets) != 5:
        raise RootFindingError(
            f"expected 5 sign changes of Z' on (-1, 1), found {len(brackets)}; "
            "t is invalid or precision too low")
    return [lo if lo == hi else refine_root_in_bracket(dz, lo, hi, precision) for lo, hi in brackets]


def equioscillation_points(t, precision: int = DEFAULT_PRECISION, *, margin=BOUNDARY_MARGIN,
                           tables=None) -> list:
    """``[z_0, ..., z_6]`` with ``z_0 = -1`` and ``z_6 = 1``.

    ``z_2`` and ``z_4`` use their nested-radical closed forms; ``z_1``,
    ``z_3``, ``z_5`` are the odd-numbered critical points of ``Z`` on (-1, 1).
    """
    tables = tables or get_tables()
    with _at(t, precision, margin) as tt:
        b = _normalized(tt, tables)
        crit = _critical_points(b, _work(precision))
        z2, z4 = _z2_z4(tt, tables)
        z = [mpf(-1), crit[0], z2, crit[2], z4, crit[4], mpf(1)]
    return [_round(v, precision) for v in z]


def critical_points_numeric(t, precision: int = DEFAULT_PRECISION, *, margin=BOUNDARY_MARGIN,
                            tables=None) -> list:
    """All five interior critical points of ``Z`` found numerically."""
    tables = tables or get_tables()
    with _at(t, precision, margin) as tt:
        b = _normalized(tt, tables)
        crit = _critical_points(b, _work(precision))
    return [_round(v, precision) for v in crit]


def limit_polynomial(end: str, precision: int = DEFAULT_PRECISION) -> RealPolynomial:
    """Boundary limits of ``Z_{7,t}``.

    ``"lower"`` (t -> -13): ``-T_6(x)``.  ``"upper"`` (t -> theta):
    ``T_7((1 + x) cos(pi/14)**2 - 1)`` expanded in powers of ``x``.
    """
    check_precision(precision)
    with mpmath.workdps(precision):
        if end == "lower":
            return RealPolynomial([1, 0, -18, 0, 48, 0, -32])
        if end == "upper":
            c = mpmath.cos(mpmath.pi / 14) ** 2
            y = RealPolynomial([c - 1, c])
            return RealPolynomial([0, -7, 0, 56, 0, -112, 0, 64]).compose(y)
    raise ValueError(f"end must be 'lower' or 'upper', got {end!r}")


@dataclass(frozen=True)
class ZolotarevSeptic:
    """Everything known about ``Z_{7,t}`` at one parameter value."""

    t: mpf
    precision: int
    omega: mpf
    b: tuple
    a: tuple
    L: mpf
    alpha: mpf
    beta: mpf
    gamma: mpf
    s: mpf
    z: tuple

    @property
    def normalized(self) -> RealPolynomial:
        with mpmath.workdps(self.precision):
            return RealPolynomial(self.b)

    @property
    def monic(self) -> RealPolynomial:
        with mpmath.workdps(self.precision):
            return RealPolynomial(self.a)


def construct(t, precision: int = DEFAULT_PRECISION, *, margin=BOUNDARY_MARGIN,
              tables=None) -> ZolotarevSeptic:
    """Evaluate the full record at ``t``."""
    tables = tables or get_tables()
    with _at(t, precision, margin) as tt:
        w = _omega(tt)
        b = _normalized(tt, tables)
        a = [v / b[7] for v in b[:7]] + [mpf(1)]
        bd = _band(tt, tables)
        crit = _critical_points(b, _work(precision))
        z2, z4 = _z2_z4(tt, tables)
        z = [mpf(-1), crit[0], z2, crit[2], z4, crit[4], mpf(1)]
        r = lambda v: _round(v, precision)  # noqa: E731
        return ZolotarevSeptic(
            t=r(tt), precision=precision, omega=r(w),
            b=tuple(map(r, b)), a=tuple(map(r, a)), L=r(1 / b[7]),
            alpha=r(bd.alpha), beta=r(bd.beta), gamma=r(bd.gamma), s=r(bd.s),
            z=tuple(map(r, z)),
        )


def boundary_distance(end: str, offset, precision: int = DEFAULT_PRECISION, *, tables=None) -> mpf:
    """Max-norm distance between the coefficients of ``Z_{7,t}`` and its boundary limit.

    ``t = -13 - offset`` for ``end="lower"``, ``t = theta + offset`` for ``"upper"``.
    """
    theta = parameter_domain(precision).theta
    with mpmath.workdps(_work(precision)):
        offset = mpf(offset)
        t = RIGHT_END - offset if end == "lower" else theta + offset
        b = normalized_coefficients(t, precision, margin=0, tables=tables)
        lim = list(limit_polynomial(end, precision).coeffs)
        lim += [mpf(0)] * (8 - len(lim))
        return _round(max(abs(x - y) for x, y in zip(b, lim)), precision)
