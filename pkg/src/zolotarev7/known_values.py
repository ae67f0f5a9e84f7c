"""Reference decimals for the worked cases (t = -21, s0 = 2, b_7 = 1).

Used by ``selfcheck`` and the test suite.
"""

T_EXAMPLE = -21

# normalised coefficients b_0..b_7 at t = -21
B_AT_MINUS_21 = (
    "0.5718985919", "-5.2731972200", "-11.6235640503", "36.4042451538",
    "33.3438497337", "-64.5264455703", "-23.2921842753", "33.39539763",
)

L_AT_MINUS_21 = "0.0299442459"
S_AT_MINUS_21 = "0.0996381277"
ALPHA_AT_MINUS_21 = "1.1970302256"
BETA_AT_MINUS_21 = "1.2384903969"
GAMMA_AT_MINUS_21 = "1.1181221834"

# interior equioscillation points z_1..z_5 at t = -21
Z_AT_MINUS_21 = ("-0.8914485687", "-0.5873784916", "-0.1483533115", "0.3375968260", "0.7692901289")

S0_EXAMPLE = 2
T0_FOR_S0_2 = "-13.0305732483"
# monic coefficients a_0..a_7 for s0 = 2
A_FOR_S0_2 = (
    "0.4369440905", "-0.1873410678", "-7.8705484829", "1.1870230011",
    "20.9955470665", "-1.9996819333", "-14", "1",
)
L_FOR_S0_2 = "0.4380573257"

T_UNIT_LEADING = "-13.0058608055"
THETA = "-27.963755"
PROPER_THRESHOLD = "0.0520950836"


def digits_after_point(value: str) -> int:
    return len(value.split(".")[1]) if "." in value else 0


def agrees(x, value: str) -> bool:
    """``|x - value| < 10**-d`` with ``d`` the number of printed decimals.

    Covers truncated as well as rounded decimals.  An integer string ("-14")
    demands agreement to 10 decimals.
    """
    import mpmath

    with mpmath.workdps(60):
        d = digits_after_point(value) or 10
        return abs(mpmath.mpf(x) - mpmath.mpf(value)) < mpmath.mpf(10) ** -d
