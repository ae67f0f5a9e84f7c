"""High precision real arithmetic, dense polynomials and real root isolation.

Real numbers are :class:`mpmath.mpf` values.  Every public function takes an
explicit ``precision`` in decimal digits and performs its work inside
``mpmath.workdps(precision)``; callers doing further arithmetic on returned
values should do so under the same (or higher) working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import mpmath
from mpmath import mpf

from .errors import RootFindingError, ValidityError

BigReal = mpf

DEFAULT_PRECISION = 60
MIN_PRECISION = 30
# extra digits carried internally by root refinement
GUARD_DIGITS = 10


def check_precision(precision: int) -> int:
    if int(precision) != precision or precision < MIN_PRECISION:
        raise ValueError(f"precision must be an integer >= {MIN_PRECISION}, got {precision!r}")
    return int(precision)


def to_real(x, precision: int = DEFAULT_PRECISION) -> mpf:
    """Convert ints, Fractions, decimal strings or mpf to an mpf at ``precision``."""
    with mpmath.workdps(precision):
        if isinstance(x, Fraction):
            return mpf(x.numerator) / x.denominator
        return mpf(x)


def sqrt_checked(x: mpf, what: str = "radicand") -> mpf:
    """Square root that refuses negative arguments instead of going complex."""
    if x < 0:
        raise ValidityError(f"negative {what}: {mpmath.nstr(x, 15)}")
    return mpmath.sqrt(x)


def _strip(coeffs):
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial with exact integer coefficients, index = degree."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence[int] = (0,)):
        c = _strip(coeffs) or [0]
        for v in c:
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"IntPolynomial coefficients must be int, got {type(v).__name__}")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_factors(cls, scale: int, factors: Sequence[tuple["IntPolynomial", int]]) -> "IntPolynomial":
        out = cls([scale])
        for base, mult in factors:
            out = out * base ** mult
        return out

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial([u + v for u, v in zip(a, b)])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([k * c for k, c in enumerate(self.coeffs)][1:] or [0])

    def to_real(self, precision: int = DEFAULT_PRECISION) -> "RealPolynomial":
        with mpmath.workdps(precision):
            return RealPolynomial([mpf(c) for c in self.coeffs])


@dataclass(frozen=True)
class RealPolynomial:
    """Dense polynomial with mpf coefficients, index = degree.

    Arithmetic happens at whatever mpmath working precision is active.
    """

    coeffs: tuple

    def __init__(self, coeffs: Sequence = (0,)):
        c = _strip([mpf(v) for v in coeffs]) or [mpf(0)]
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return -1 if (len(self.coeffs) == 1 and self.coeffs[0] == 0) else len(self.coeffs) - 1

    def __call__(self, x):
        acc = mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RealPolynomial") -> "RealPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (mpf(0),) * (n - len(self.coeffs))
        b = other.coeffs + (mpf(0),) * (n - len(other.coeffs))
        return RealPolynomial([u + v for u, v in zip(a, b)])

    def __neg__(self) -> "RealPolynomial":
        return RealPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "RealPolynomial") -> "RealPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RealPolynomial":
        if not isinstance(other, RealPolynomial):
            return RealPolynomial([c * other for c in self.coeffs])
        out = [mpf(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RealPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "RealPolynomial":
        return RealPolynomial([k * c for k, c in enumerate(self.coeffs)][1:] or [0])

    def compose(self, inner: "RealPolynomial") -> "RealPolynomial":
        """Return ``self(inner(x))``."""
        acc = RealPolynomial([0])
        for c in reversed(self.coeffs):
            acc = acc * inner + RealPolynomial([c])
        return acc


Polynomial = Union[IntPolynomial, RealPolynomial]


def eval_poly(p: Polynomial, x, precision: int = DEFAULT_PRECISION):
    """Horner evaluation; exact (returns int/Fraction) for integer data."""
    check_precision(precision)
    if isinstance(p, IntPolynomial) and isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return p(x)
    with mpmath.workdps(precision):
        xr = to_real(x, precision)
        acc = mpf(0)
        for c in reversed(p.coeffs):
            acc = acc * xr + c
        return +acc


# ---------------------------------------------------------------------------
# Sturm sequences.  Integer polynomials are handled in exact rational
# arithmetic; real polynomials in mpf with a relative zero threshold.

def _poly_rem(a, b, is_zero):
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b) and not (len(a) == 1 and is_zero(a[0], a)):
        q = a[-1] / lb
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
        while len(a) > 1 and is_zero(a[-1], a):
            a.pop()
    return a


def _exact_zero(c, _row):
    return c == 0


def _make_float_zero(eps):
    def is_zero(c, row):
        scale = max(abs(v) for v in row) or 1
        return abs(c) <= eps * scale
    return is_zero


def _sturm_chain(coeffs, is_zero):
    p0 = list(coeffs)
    p1 = [k * c for k, c in enumerate(p0)][1:]
    chain = [p0, p1]
    while len(chain[-1]) > 1:
        r = _poly_rem(chain[-2], chain[-1], is_zero)
        if len(r) == 1 and is_zero(r[0], r):
            break
        chain.append([-c for c in r])
    return chain


def _horner(c, x):
    acc = 0 * x
    for v in reversed(c):
        acc = acc * x + v
    return acc


def _variations(chain, x):
    signs = []
    for c in chain:
        v = _horner(c, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _squarefree(chain):
    """p / gcd(p, p') from a Sturm chain (the last member is the gcd up to scale)."""
    g = chain[-1]
    p = chain[0]
    if len(g) == 1:
        return p
    # exact division p / g
    a = list(p)
    out = [0 * a[0]] * (len(a) - len(g) + 1)
    for shift in range(len(out) - 1, -1, -1):
        q = a[shift + len(g) - 1] / g[-1]
        out[shift] = q
        for i, c in enumerate(g):
            a[shift + i] -= q * c
    return out


def _cauchy_bound(coeffs):
    lead = abs(coeffs[-1])
    return 1 + max(abs(c) for c in coeffs[:-1]) / lead


class _SturmData:
    def __init__(self, p: Polynomial, precision: int):
        if isinstance(p, IntPolynomial):
            if p.degree < 1:
                raise RootFindingError("constant polynomial has no isolated roots")
            self.coeffs = [Fraction(c) for c in p.coeffs]
            self.sqf = _squarefree(_sturm_chain(self.coeffs, _exact_zero))
            self.chain = _sturm_chain(self.sqf, _exact_zero)
            self.exact = True
            self.bound = Fraction(_cauchy_bound(self.coeffs)).limit_denominator(1) + 1
        else:
            if p.degree < 1:
                raise RootFindingError("constant polynomial has no isolated roots")
            self.coeffs = list(p.coeffs)
            eps = mpmath.mpf(10) ** (-(precision // 2))
            zero = _make_float_zero(eps)
            self.sqf = _squarefree(_sturm_chain(self.coeffs, zero))
            self.chain = _sturm_chain(self.sqf, zero)
            self.exact = False
            self.bound = mpmath.ceil(_cauchy_bound(self.coeffs)) + 1
        self.v_lo = _variations(self.chain, -self.bound)
        self.total = self.v_lo - _variations(self.chain, self.bound)

    def count_le(self, x) -> int:
        return self.v_lo - _variations(self.chain, x)

    def mid(self, a, b):
        return (a + b) / 2


def to_fraction(x) -> Fraction:
    """Exact rational value of an int, Fraction or (binary) mpf."""
    if isinstance(x, mpf):
        if not mpmath.isfinite(x):
            raise ValueError(f"cannot convert {x} to a fraction")
        sign, man, exp, _ = x._mpf_
        return (-1) ** sign * Fraction(int(man)) * Fraction(2) ** exp
    return Fraction(x)


def count_real_roots(p: Polynomial, lo=None, hi=None, precision: int = DEFAULT_PRECISION) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (whole line by default).

    For an :class:`IntPolynomial` the count is exact; mpf endpoints are taken
    at their exact binary value.
    """
    with mpmath.workdps(precision + GUARD_DIGITS):
        s = _SturmData(p, precision + GUARD_DIGITS)
        if lo is None and hi is None:
            return s.total
        a = -s.bound if lo is None else (to_fraction(lo) if s.exact else mpf(lo))
        b = s.bound if hi is None else (to_fraction(hi) if s.exact else mpf(hi))
        return s.count_le(b) - s.count_le(a)


def _isolate(s: _SturmData, k: int):
    # invariant: count_le(lo) < k <= count_le(hi)
    lo, hi = -s.bound, s.bound
    while True:
        isolated = s.count_le(hi) - s.count_le(lo) == 1
        if isolated and _horner(s.sqf, hi) == 0:
            return hi, hi
        if isolated and _horner(s.sqf, lo) != 0:
            return lo, hi
        m = s.mid(lo, hi)
        if s.count_le(m) >= k:
            hi = m
        else:
            lo = m


def kth_real_root(p: Polynomial, k: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """Return the ``k``-th smallest distinct real root of ``p`` (1-based).

    The root is isolated with a Sturm sequence and then refined by
    :func:`refine_root_in_bracket` on the square-free part.
    """
    check_precision(precision)
    if k < 1:
        raise ValueError("root index k must be >= 1")
    work = precision + GUARD_DIGITS
    with mpmath.workdps(work):
        s = _SturmData(p, work)
        if s.total < k:
            raise RootFindingError(f"polynomial has only {s.total} real roots, root #{k} requested")
        lo, hi = _isolate(s, k)
        if lo == hi:
            return to_real(lo, precision)
        sqf = [mpf(c.numerator) / c.denominator for c in s.sqf] if s.exact else s.sqf
        f = lambda x: _horner(sqf, x)  # noqa: E731
        return refine_root_in_bracket(f, to_real(lo, work), to_real(hi, work), precision)


def real_roots(p: Polynomial, precision: int = DEFAULT_PRECISION) -> list:
    """All distinct real roots in increasing order."""
    n = count_real_roots(p, precision=precision)
    return [kth_real_root(p, k, precision) for k in range(1, n + 1)]


def refine_root_in_bracket(
    f: Callable[[mpf], mpf],
    lo,
    hi,
    precision: int = DEFAULT_PRECISION,
    max_iter: int | None = None,
) -> mpf:
    """Root of ``f`` in ``[lo, hi]`` given a sign change.

    Illinois-type false position, with a plain bisection step whenever the
    bracket fails to halve.  Stops when the bracket is below
    ``10**-precision`` relative to ``max(1, |x|)``.
    """
    check_precision(precision)
    work = precision + GUARD_DIGITS
    with mpmath.workdps(work):
        a, b = mpf(lo), mpf(hi)
        if a > b:
            a, b = b, a
        fa, fb = f(a), f(b)
        if fa == 0:
            return to_real(a, precision)
        if fb == 0:
            return to_real(b, precision)
        if (fa > 0) == (fb > 0):
            raise RootFindingError(
                f"no sign change on [{mpmath.nstr(a, 12)}, {mpmath.nstr(b, 12)}]"
            )
        tol = mpf(10) ** (-precision - 2)
        if max_iter is None:
            max_iter = int(8 * work) + 200
        side = 0
        for _ in range(max_iter):
            width = b - a
            if width <= tol * max(1, abs(a), abs(b)):
                break
            c = b - fb * (b - a) / (fb - fa)
            if not (a < c < b):
                c = (a + b) / 2
            fc = f(c)
            if fc == 0:
                return to_real(c, precision)
            if (fc > 0) == (fb > 0):
                b, fb = c, fc
                if side == 1:
                    fa /= 2
                side = 1
            else:
                a, fa = c, fc
                if side == -1:
                    fb /= 2
                side = -1
            if b - a > width / 2:
                m = (a + b) / 2
                fm = f(m)
                if fm == 0:
                    return to_real(m, precision)
                if (fm > 0) == (fb > 0):
                    b, fb = m, fm
                else:
                    a, fa = m, fm
                side = 0
        else:
            raise RootFindingError("bracket refinement did not reach the requested precision")
        x = (a + b) / 2
        return to_real(x, precision)


def sign_changes(f: Callable[[mpf], mpf], grid: Sequence) -> list:
    """Adjacent grid intervals ``(x_i, x_{i+1})`` over which ``f`` changes sign.

    An exact zero at a grid node is reported as the degenerate pair (x, x).
    """
    out = []
    vals = [f(x) for x in grid]
    for i in range(len(grid) - 1):
        if vals[i] == 0:
            out.append((grid[i], grid[i]))
        elif vals[i + 1] != 0 and (vals[i] > 0) != (vals[i + 1] > 0):
            out.append((grid[i], grid[i + 1]))
    if vals and vals[-1] == 0:
        out.append((grid[-1], grid[-1]))
    return out
