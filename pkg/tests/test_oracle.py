import mpmath
import pytest

from zolotarev7 import oracle, septic, zfp
from zolotarev7.errors import ConvergenceError


def test_chebyshev_sanity():
    r = oracle.remez_minimax(0)
    assert abs(r.L - mpmath.mpf(1) / 64) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("s0", ["0.08", "1", "5"])
def test_matches_closed_form(s0):
    r = oracle.remez_minimax(s0)
    sol = zfp.solve_zfp(s0)
    assert abs(r.L - sol.L) / sol.L < mpmath.mpf(10) ** -30
    z = septic.equioscillation_points(sol.t0, margin=0)
    assert max(abs(x - y) for x, y in zip(r.reference, z)) < mpmath.mpf(10) ** -20


def test_alternation_and_bracket():
    r = oracle.remez_minimax("0.5")
    with mpmath.workdps(oracle.ORACLE_PRECISION):
        f = oracle.target("0.5")
        assert oracle.oracle_equioscillation(r.reference, f, r.approximant(), mpmath.mpf(10) ** -25)
        for lo, hi in r.bounds:
            assert lo <= r.L * (1 + mpmath.mpf(10) ** -30) <= hi * (1 + mpmath.mpf(10) ** -29)


def test_non_convergence_raises():
    with pytest.raises(ConvergenceError) as exc:
        oracle.remez_minimax("2", max_iter=1)
    assert exc.value.state is not None


def test_equioscillation_rejects_non_alternating():
    f = oracle.target(0)
    p = oracle.target(0)
    assert not oracle.oracle_equioscillation(oracle.chebyshev_reference(), f, p, mpmath.mpf("1e-10"))
