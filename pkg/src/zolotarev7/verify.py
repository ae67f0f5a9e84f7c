"""Residual checks for the identities satisfied by ``Z_{7,t}``.

* the Abel-Pell differential equation,
* the Peherstorfer-Schiefermayr power-sum system,
* the band curve ``H7(alpha, beta) = 0`` and ``Q3(alpha, t) = 0``,
* alternation at the equioscillation points and the sup-norm bound.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import mpmath
from mpmath import mpf

from . import septic
from .numerics import DEFAULT_PRECISION, RealPolynomial, check_precision, count_real_roots
from .paper_data import get_tables, common_prefactors

log = logging.getLogger(__name__)

GAMMA_EXCLUSION = mpf("1e-6")
SUP_SAMPLES = 2001


def default_tolerance(precision: int) -> mpf:
    """``10**(5 - 0.6 * precision)``."""
    with mpmath.workdps(precision):
        return mpf(10) ** (5 - mpf(3) / 5 * precision)


def abel_pell_grid(alpha, beta, n: int = 101) -> list:
    """``n`` points: 80% uniform on [-1, 1], the rest uniform on [alpha, beta]."""
    n_band = max(2, n // 5)
    n_main = n - n_band
    main = [mpf(-1) + mpf(2 * i) / (n_main - 1) for i in range(n_main)]
    band = [alpha + (beta - alpha) * mpf(i) / (n_band - 1) for i in range(n_band)]
    return main + band


def _abel_pell_terms(z: RealPolynomial, alpha, beta, gamma, xs):
    dz = z.derivative()
    out = []
    for x in xs:
        if abs(x - gamma) < GAMMA_EXCLUSION:
            log.info("Abel-Pell: skipping x = %s, too close to gamma", mpmath.nstr(x, 12))
            continue
        lhs = (1 - x**2) * (x - alpha) * (x - beta) * dz(x) ** 2 / (49 * (x - gamma) ** 2) + z(x) ** 2
        out.append(abs(lhs - 1))
    return out


def abel_pell_residual(t, xs=None, precision: int = DEFAULT_PRECISION, *, tables=None) -> mpf:
    """``max |(1-x^2)(x-alpha)(x-beta) Z'(x)^2 / (49 (x-gamma)^2) + Z(x)^2 - 1|``."""
    r = septic.construct(t, precision, tables=tables)
    with mpmath.workdps(precision):
        pts = abel_pell_grid(r.alpha, r.beta) if xs is None else [mpf(x) for x in xs]
        res = _abel_pell_terms(r.normalized, r.alpha, r.beta, r.gamma, pts)
        return max(res) if res else mpf(0)


def _ps(r):
    z1, z2, z3, z4, z5 = r.z[1:6]
    out = [r.alpha + r.beta + 2 * (z1 + z2 + z3 + z4 + z5) - 14 * r.s]
    for k in range(1, 7):
        out.append((-1) ** k + 2 * (-z1**k + z2**k - z3**k + z4**k - z5**k) + 1 + r.alpha**k - r.beta**k)
    return [abs(v) for v in out]


def ps_residuals(t, precision: int = DEFAULT_PRECISION, *, tables=None) -> list:
    """Seven absolute residuals: the linear equation, then the power sums k = 1..6."""
    r = septic.construct(t, precision, tables=tables)
    with mpmath.workdps(precision):
        return _ps(r)


def _relative(terms):
    total = mpmath.fsum(terms)
    scale = max(abs(v) for v in terms)
    return abs(total) / scale if scale else abs(total)


def h7_value(alpha, beta, *, tables=None):
    tables = tables or get_tables()
    return mpmath.fsum(s(beta) * alpha**j for j, s in enumerate(tables["H7"]))


def h7_residual(alpha, beta, precision: int = DEFAULT_PRECISION, *, tables=None) -> mpf:
    """``|H7(alpha, beta)|`` divided by the largest monomial term."""
    tables = tables or get_tables()
    with mpmath.workdps(precision):
        alpha, beta = mpf(alpha), mpf(beta)
        terms = [c * beta**i * alpha**j
                 for j, s in enumerate(tables["H7"]) for i, c in enumerate(s.coeffs) if c]
        return _relative(terms)


def q3_residual(alpha, t, precision: int = DEFAULT_PRECISION, *, tables=None) -> mpf:
    """Relative residual of ``Q3(alpha, t)``, a quadratic in ``alpha**2``."""
    tables = tables or get_tables()
    with mpmath.workdps(precision):
        alpha, t = mpf(alpha), mpf(t)
        terms = [c * t**i * alpha ** (2 * j)
                 for j, s in enumerate(tables["Q3"]) for i, c in enumerate(s.coeffs) if c]
        return _relative(terms)


@dataclass(frozen=True)
class VerificationReport:
    t: mpf
    precision: int
    tolerance: mpf
    abel_pell_max_residual: mpf
    ps_residuals: tuple
    h7_residual: mpf
    q3_residual: mpf
    dual_path_a3_a5: mpf
    equioscillation_values: tuple
    equioscillation_ok: tuple
    supnorm_excess: mpf
    band_ok: bool
    failures: tuple = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        s = lambda v: mpmath.nstr(v, self.precision, strip_zeros=False)  # noqa: E731
        d = {
            "t": s(self.t),
            "precision": str(self.precision),
            "tolerance": mpmath.nstr(self.tolerance, 5),
            "abel_pell_max_residual": mpmath.nstr(self.abel_pell_max_residual, 5),
        }
        for i, v in enumerate(self.ps_residuals):
            d[f"ps_residual_{i}"] = mpmath.nstr(v, 5)
        d["h7_residual"] = mpmath.nstr(self.h7_residual, 5)
        d["q3_residual"] = mpmath.nstr(self.q3_residual, 5)
        d["dual_path_a3_a5"] = mpmath.nstr(self.dual_path_a3_a5, 5)
        for i, ok in enumerate(self.equioscillation_ok):
            d[f"equioscillation_z{i}"] = "ok" if ok else "FAIL"
        d["supnorm_excess"] = mpmath.nstr(self.supnorm_excess, 5)
        d["band_ok"] = "ok" if self.band_ok else "FAIL"
        d["failures"] = ",".join(self.failures) or "none"
        d["passed"] = "true" if self.passed else "false"
        return d


def full_report(t, precision: int = DEFAULT_PRECISION, *, tolerance=None, tables=None) -> VerificationReport:
    """Run every check at ``t``; deterministic for identical inputs."""
    check_precision(precision)
    tables = tables or get_tables()
    r = septic.construct(t, precision, tables=tables)
    a3, a5 = septic.direct_a3_a5(t, precision, tables=tables)
    with mpmath.workdps(precision):
        tol = default_tolerance(precision) if tolerance is None else mpf(tolerance)
        z = r.normalized
        dz = z.derivative()
        ap = _abel_pell_terms(z, r.alpha, r.beta, r.gamma, abel_pell_grid(r.alpha, r.beta))
        ap_max = max(ap)
        ps = _ps(r)
        h7 = h7_residual(r.alpha, r.beta, precision, tables=tables)
        q3 = q3_residual(r.alpha, r.t, precision, tables=tables)
        dual = max(abs(a3 - r.a[3]) / abs(a3), abs(a5 - r.a[5]) / abs(a5))

        targets = [(-1) ** (i + 1) for i in range(7)]  # -1, +1, ..., -1
        values = tuple(z(x) for x in r.z)
        eq_ok = []
        for i, (x, v, want) in enumerate(zip(r.z, values, targets)):
            ok = abs(v - want) < tol
            if 0 < i < 6:
                ok = ok and abs(dz(x)) < tol * 1000
            eq_ok.append(ok)
        eq_ok[0] = eq_ok[0] and all(a < b for a, b in zip(r.z, r.z[1:]))

        sup = max(abs(z(mpf(-1) + mpf(2 * i) / (SUP_SAMPLES - 1))) for i in range(SUP_SAMPLES))
        excess = max(mpf(0), sup - 1)
        band_ok = (1 < r.gamma < r.alpha < r.beta and abs(z(r.alpha) + 1) < tol
                   and abs(z(r.beta) - 1) < tol and abs(dz(r.gamma)) < tol * 1000)

        failures = []
        if ap_max >= tol:
            failures.append("abel_pell")
        failures += [f"ps_{i}" for i, v in enumerate(ps) if v >= tol]
        if h7 >= tol:
            failures.append("h7")
        if q3 >= tol:
            failures.append("q3")
        if dual >= tol:
            failures.append("dual_path_a3_a5")
        failures += [f"equioscillation_z{i}" for i, ok in enumerate(eq_ok) if not ok]
        if excess >= tol:
            failures.append("supnorm")
        if not band_ok:
            failures.append("band")

        return VerificationReport(
            t=r.t, precision=precision, tolerance=tol, abel_pell_max_residual=ap_max,
            ps_residuals=tuple(ps), h7_residual=h7, q3_residual=q3, dual_path_a3_a5=dual,
            equioscillation_values=values, equioscillation_ok=tuple(eq_ok),
            supnorm_excess=excess, band_ok=band_ok, failures=tuple(failures),
        )


@dataclass(frozen=True)
class SignCertificate:
    k: int
    roots_inside: int  # roots of the norm polynomial in the open interval I7
    sign: int  # sign of p_k1 + omega p_k2 at t = -21

    @property
    def constant(self) -> bool:
        return self.roots_inside == 0


def sign_certificates(*, tables=None) -> list:
    """Exact proof that no ``p_k1 + omega p_k2`` changes sign on I7.

    ``p_k1 + omega p_k2`` can only vanish where the integer polynomial
    ``N_k = p_k1**2 - omega**2 p_k2**2`` does.  Sturm counting in rational
    arithmetic gives the number of roots of ``N_k`` in ``(theta, -13)``;
    when it is zero the sign seen at one interior point holds throughout.
    For odd ``k`` this is positivity of the radicand, for even ``k`` the
    sign of ``b_k``.
    """
    tables = tables or get_tables()
    w2 = common_prefactors().omega_radicand
    theta = septic.parameter_domain(DEFAULT_PRECISION).theta
    out = []
    for k in range(8):
        p1, p2 = tables[f"p{k}1"], tables[f"p{k}2"]
        norm = p1**2 - w2 * p2**2
        inside = count_real_roots(norm, theta, septic.RIGHT_END)
        if norm(septic.RIGHT_END) == 0:
            inside -= 1  # the count covers (theta, -13]
        with mpmath.workdps(DEFAULT_PRECISION):
            t = mpf(-21)
            v = p1(t) + mpmath.sqrt(w2(t)) * p2(t)
        out.append(SignCertificate(k=k, roots_inside=inside, sign=1 if v > 0 else -1))
    return out
