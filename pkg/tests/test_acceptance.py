"""Acceptance criteria 1-9.

Each test records one ``PASS``/``FAIL`` line; the lines are printed in the
pytest terminal summary, or directly when the file is run as a script.
"""

import random
import sys
import time
from pathlib import Path

import mpmath
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from corrupt import coefficient_lines  # noqa: E402

from zolotarev7 import known_values as K  # noqa: E402
from zolotarev7 import oracle, septic, verify, zfp  # noqa: E402
from zolotarev7.cli import main, parse_structured  # noqa: E402
from zolotarev7.paper_data import default_data_path, reference_fingerprints, table_fingerprint  # noqa: E402

P = 60


def record(n: int, title: str, ok: bool, detail: str = ""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def cli(*argv):
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(list(argv))
    return code, buf.getvalue()


def test_criterion_1_example_coefficients():
    start = time.perf_counter()
    code, out = cli("construct", "--t", "-21")
    elapsed = time.perf_counter() - start
    doc = parse_structured(out)
    ok = code == 0 and all(K.agrees(mpmath.mpf(doc[f"b{k}"]), v) for k, v in enumerate(K.B_AT_MINUS_21))
    record(1, "t=-21 coefficients b0..b7 to >= 10 digits, < 1 s", ok and elapsed < 1, f"{elapsed:.2f}s")


def test_criterion_2_example_band():
    r = septic.construct(-21, P)
    pairs = [(r.L, K.L_AT_MINUS_21), (r.s, K.S_AT_MINUS_21), (r.alpha, K.ALPHA_AT_MINUS_21),
             (r.beta, K.BETA_AT_MINUS_21), (r.gamma, K.GAMMA_AT_MINUS_21)]
    record(2, "t=-21 L, s, alpha, beta, gamma to >= 10 digits", all(K.agrees(x, v) for x, v in pairs))


def test_criterion_3_example_zfp():
    start = time.perf_counter()
    code, out = cli("construct", "--s", "2")
    elapsed = time.perf_counter() - start
    doc = parse_structured(out)
    with mpmath.workdps(P):
        a = [mpmath.mpf(doc[f"a{k}"]) for k in range(8)]
        ok = (code == 0 and K.agrees(mpmath.mpf(doc["t"]), K.T0_FOR_S0_2)
              and all(K.agrees(x, v) for x, v in zip(a, K.A_FOR_S0_2))
              and abs(a[6] + 14) < mpmath.mpf("1e-10")
              and K.agrees(mpmath.mpf(doc["L"]), K.L_FOR_S0_2))
    record(3, "s0=2 gives t0, monic coefficients (a6=-14), L; < 5 s", ok and elapsed < 5, f"{elapsed:.2f}s")


def test_criterion_4_z_points(tables):
    r = septic.construct(-21, P)
    printed = all(K.agrees(x, v) for x, v in zip(r.z[1:6], K.Z_AT_MINUS_21))
    crit = septic.critical_points_numeric(-21, P)
    r0, r1 = tables["u3"]
    with mpmath.workdps(P):
        closed_vs_numeric = max(abs(crit[1] - r.z[2]), abs(crit[3] - r.z[4]))
        r6 = mpmath.sqrt(6)
        c = [r0.coeffs[k] + r6 * (r1.coeffs[k] if k <= r1.degree else 0) for k in range(4)]
        tau = sorted(mpmath.re(x) for x in mpmath.polyroots(c[::-1], maxsteps=200, extraprec=200))
        want = [-mpmath.sqrt(tau[2]), -mpmath.sqrt(tau[0]), mpmath.sqrt(tau[1])]
        root_err = max(abs(x - y) for x, y in zip([r.z[1], r.z[3], r.z[5]], want))
    ok = printed and closed_vs_numeric < mpmath.mpf("1e-40") and root_err < mpmath.mpf("1e-40")
    record(4, "z1..z5 at t=-21; closed-form z2/z4 and Root[u3] z1/z3/z5 agree", ok,
           f"closed-form gap {mpmath.nstr(closed_vs_numeric, 3)}, u3 gap {mpmath.nstr(root_err, 3)}")


def test_criterion_5_unit_leading():
    tu = zfp.find_unit_leading_parameter(P)
    record(5, "unit leading coefficient at t = -13.0058608055 to >= 8 digits",
           abs(tu - mpmath.mpf(K.T_UNIT_LEADING)) < mpmath.mpf("1e-8"), mpmath.nstr(tu, 15))


def _sample_parameters(n=20, seed=7):
    dom = septic.parameter_domain(P)
    rng = random.Random(seed)
    with mpmath.workdps(P):
        width = dom.right - dom.theta
        ts = [dom.theta + width * mpmath.mpf(rng.uniform(0.001, 0.999)) for _ in range(n - 4)]
        ts += [dom.theta + mpmath.mpf("1e-4"), dom.theta + mpmath.mpf("1e-2"),
               mpmath.mpf(-13) - mpmath.mpf("1e-2"), mpmath.mpf(-13) - mpmath.mpf("1e-4")]
    return ts


def test_criterion_6_identity_suite(tables):
    start = time.perf_counter()
    worst = {"abel_pell": 0, "ps": 0, "h7_q3": 0, "dual": 0, "ends": 0}
    for t in _sample_parameters():
        r = septic.construct(t, P, tables=tables)
        a3, a5 = septic.direct_a3_a5(t, P, tables=tables)
        with mpmath.workdps(P):
            z = r.normalized
            worst["abel_pell"] = max(worst["abel_pell"], verify.abel_pell_residual(t, None, P, tables=tables))
            worst["ps"] = max([worst["ps"]] + verify.ps_residuals(t, P, tables=tables))
            worst["h7_q3"] = max(worst["h7_q3"], verify.h7_residual(r.alpha, r.beta, P, tables=tables),
                                 verify.q3_residual(r.alpha, r.t, P, tables=tables))
            worst["dual"] = max(worst["dual"], abs(a3 - r.a[3]) / abs(a3), abs(a5 - r.a[5]) / abs(a5))
            worst["ends"] = max(worst["ends"], abs(z(-1) + 1), abs(z(1) + 1), abs(z(r.alpha) + 1),
                                abs(z(r.beta) - 1))
    elapsed = time.perf_counter() - start
    limits = {"abel_pell": "1e-30", "ps": "1e-25", "h7_q3": "1e-25", "dual": "1e-40", "ends": "1e-30"}
    ok = all(worst[k] < mpmath.mpf(v) for k, v in limits.items()) and elapsed < 120
    detail = ", ".join(f"{k} {mpmath.nstr(worst[k], 2)}" for k in limits) + f", {elapsed:.1f}s"
    record(6, "identity suite on 20 parameters at 60 digits", ok, detail)


def test_criterion_7_oracle():
    start = time.perf_counter()
    worst_L = worst_z = mpmath.mpf(0)
    for s0 in ("0.06", "0.1", "0.5", "1", "2", "5"):
        orc = oracle.remez_minimax(s0)
        sol = zfp.solve_zfp(s0, P)
        z = septic.equioscillation_points(sol.t0, P, margin=0)
        with mpmath.workdps(P):
            worst_L = max(worst_L, abs(orc.L - sol.L) / sol.L)
            worst_z = max(worst_z, max(abs(x - y) for x, y in zip(orc.reference, z)))
    cheb = oracle.remez_minimax(0).L
    with mpmath.workdps(P):
        cheb_err = abs(cheb - mpmath.mpf(1) / 64)
    elapsed = time.perf_counter() - start
    ok = (worst_L < mpmath.mpf("1e-8") and worst_z < mpmath.mpf("1e-6")
          and cheb_err < mpmath.mpf("1e-10") and elapsed < 60)
    record(7, "Remez oracle matches L and z-points; s0=0 gives 2^-6", ok,
           f"L rel {mpmath.nstr(worst_L, 2)}, z {mpmath.nstr(worst_z, 2)}, "
           f"s0=0 {mpmath.nstr(cheb_err, 2)}, {elapsed:.1f}s")


def test_criterion_8_limits():
    res = {}
    for end in ("lower", "upper"):
        res[end] = [septic.boundary_distance(end, mpmath.mpf(10) ** -k, P) for k in (2, 4, 6)]
    ok = all(d[0] > d[1] > d[2] for d in res.values())
    detail = "; ".join(f"{e}: " + ", ".join(mpmath.nstr(v, 3) for v in d) for e, d in res.items())
    record(8, "coefficient distance to -T6 / expanded T7 decreases for k=2,4,6", ok, detail)


def test_criterion_9_data_integrity(tmp_path):
    fp_ok = table_fingerprint(septic.get_tables()) == reference_fingerprints()
    text = default_data_path().read_text()
    lines = text.splitlines()
    missed = []
    targets = coefficient_lines(text)
    path = tmp_path / "corrupt.txt"
    for i in targets:
        bad = list(lines)
        bad[i] = str(int(bad[i]) + 1)
        path.write_text("\n".join(bad) + "\n")
        code, _ = cli("selfcheck", "--data", str(path))
        if code != 5:
            missed.append(i + 1)
    record(9, "fingerprints pass; every single-coefficient corruption gives selfcheck exit 5",
           fp_ok and not missed, f"{len(targets)} corruptions, {len(missed)} missed")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
