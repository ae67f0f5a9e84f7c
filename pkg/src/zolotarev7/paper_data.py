"""Integer coefficient tables for the septic parametrisation.

The tables live in a plain text file (``data/tables.txt``), one record per
symbol::

    symbol p61
    var t
    scale -1             # optional printed factorisation:
    factor 2 1           #   factor <multiplicity> <degree>, then coefficients
    -11
    1
    ...
    poly 15              # expanded polynomial, coefficients in increasing degree
    ...
    end

Bivariate objects use ``outer <name>`` and ``slice <index> <degree>`` blocks
instead of ``poly``: ``H7`` is sliced by powers of alpha (polynomials in
beta), ``Q3`` by powers of alpha**2 (polynomials in t) and ``u3`` into its
rational part (slice 0) and its sqrt(6) part (slice 1).

Every load checks the symbol list, the degrees, the printed factorisations
against the expansions and the fingerprints in ``data/fingerprints.txt``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import DataIntegrityError
from .numerics import IntPolynomial

DATA_ENV_VAR = "ZOLOTAREV7_DATA"

COEFFICIENT_SYMBOLS = (
    "p01", "p02", "p21", "p22", "p41", "p42", "p61", "p62",
    "p11", "p12", "p31", "p32", "p51", "p52", "p71", "p72",
)
SYMBOLS = COEFFICIENT_SYMBOLS + (
    "r31", "r32", "q3", "r51", "r52", "q5",
    "pa1", "pa2", "pb1", "pb2", "ps1", "ps2",
    "p6", "p9", "p10", "p12x", "u12", "u3", "theta_minpoly", "H7", "Q3",
)

# degree of every slice as printed (factorisations multiplied out)
EXPECTED_DEGREES = {
    "p01": (15,), "p02": (13,), "p21": (15,), "p22": (13,),
    "p41": (15,), "p42": (13,), "p61": (15,), "p62": (13,),
    "p11": (30,), "p12": (28,), "p31": (30,), "p32": (28,),
    "p51": (30,), "p52": (28,), "p71": (30,), "p72": (28,),
    "r31": (18,), "r32": (15,), "q3": (18,), "r51": (10,), "r52": (8,), "q5": (10,),
    "pa1": (10,), "pa2": (8,), "pb1": (10,), "pb2": (5,), "ps1": (10,), "ps2": (8,),
    "p6": (6,), "p9": (9,), "p10": (10,), "p12x": (12,), "u12": (12,),
    "u3": (3, 2), "theta_minpoly": (3,),
    "H7": tuple(range(12, -1, -1)), "Q3": (12, 12, 12),
}

# points at which fingerprints are taken
FINGERPRINT_T = 2
FINGERPRINT_H7 = (2, 3)  # (alpha, beta)
FINGERPRINT_Q3 = (2, 2)  # (alpha, t)


@dataclass(frozen=True)
class TableEntry:
    name: str
    var: str
    slices: tuple
    outer: str | None = None
    scale: int | None = None
    factors: tuple = ()

    @property
    def poly(self) -> IntPolynomial:
        if self.outer is not None:
            raise TypeError(f"{self.name} is sliced; use .slices")
        return self.slices[0]


@dataclass(frozen=True)
class CoefficientTable:
    """Immutable symbol -> polynomial map.

    ``table[name]`` is an :class:`IntPolynomial` for univariate entries and a
    tuple of slices for ``H7``, ``Q3`` and ``u3``.
    """

    entries: dict = field(default_factory=dict)

    def __getitem__(self, name):
        e = self.entries[name]
        return e.slices if e.outer is not None else e.slices[0]

    def __contains__(self, name):
        return name in self.entries

    def entry(self, name) -> TableEntry:
        return self.entries[name]

    @property
    def symbols(self):
        return tuple(self.entries)


@dataclass(frozen=True)
class CommonPrefactors:
    q: IntPolynomial
    omega_radicand: IntPolynomial
    odd_signs: dict


def common_prefactors() -> CommonPrefactors:
    """Common denominator ``q = 2**14 3**3 (1+t)**12`` and the radicand of omega."""
    q = IntPolynomial([2**14 * 3**3]) * IntPolynomial([1, 1]) ** 12
    omega_radicand = IntPolynomial([3 * 506, 3 * 75, 0, -3])
    return CommonPrefactors(q=q, omega_radicand=omega_radicand,
                              odd_signs={1: -1, 3: 1, 5: -1, 7: 1})


# ---------------------------------------------------------------------------
# parsing / serialisation

def _int(tok, sym, lineno):
    try:
        return int(tok)
    except ValueError:
        raise DataIntegrityError(f"{sym}: malformed integer {tok!r} on line {lineno}", sym) from None


def parse_tables(text: str) -> dict:
    """Parse the table format into ``{name: TableEntry}`` without validation."""
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    out = {}
    pos = 0

    def take_coeffs(n, sym):
        nonlocal pos
        if pos + n > len(lines):
            raise DataIntegrityError(f"{sym}: truncated coefficient list", sym)
        vals = [_int(ln, sym, i) for i, ln in lines[pos:pos + n]]
        pos += n
        return vals

    while pos < len(lines):
        lineno, ln = lines[pos]
        head = ln.split()
        if head[0] != "symbol" or len(head) != 2:
            raise DataIntegrityError(f"expected 'symbol <name>' on line {lineno}, got {ln!r}")
        sym = head[1]
        pos += 1
        var, outer, scale = None, None, None
        factors, slices = [], {}
        while True:
            if pos >= len(lines):
                raise DataIntegrityError(f"{sym}: missing 'end'", sym)
            lineno, ln = lines[pos]
            tok = ln.split()
            pos += 1
            kw = tok[0]
            if kw == "end":
                break
            if kw == "var":
                var = tok[1]
            elif kw == "outer":
                outer = tok[1]
            elif kw == "scale":
                scale = _int(tok[1], sym, lineno)
            elif kw == "factor":
                mult, deg = _int(tok[1], sym, lineno), _int(tok[2], sym, lineno)
                factors.append((IntPolynomial(take_coeffs(deg + 1, sym)), mult))
            elif kw == "poly":
                deg = _int(tok[1], sym, lineno)
                slices[0] = IntPolynomial(take_coeffs(deg + 1, sym))
            elif kw == "slice":
                idx, deg = _int(tok[1], sym, lineno), _int(tok[2], sym, lineno)
                slices[idx] = IntPolynomial(take_coeffs(deg + 1, sym))
            else:
                raise DataIntegrityError(f"{sym}: unknown keyword {kw!r} on line {lineno}", sym)
        if sym in out:
            raise DataIntegrityError(f"{sym}: duplicate record", sym)
        if not slices or sorted(slices) != list(range(len(slices))):
            raise DataIntegrityError(f"{sym}: missing or non-contiguous slices", sym)
        out[sym] = TableEntry(
            name=sym, var=var or "t", outer=outer, scale=scale, factors=tuple(factors),
            slices=tuple(slices[i] for i in range(len(slices))),
        )
    return out


def _coeff_lines(p: IntPolynomial):
    return [str(c) for c in p.coeffs]


def dump_tables(table: CoefficientTable) -> str:
    """Serialise a table back to the text format (round-trips exactly)."""
    lines = []
    for e in table.entries.values():
        lines += [f"symbol {e.name}", f"var {e.var}"]
        if e.outer is not None:
            lines.append(f"outer {e.outer}")
            for i, s in enumerate(e.slices):
                lines.append(f"slice {i} {s.degree if not s.is_zero() else 0}")
                lines += _coeff_lines(s)
        else:
            if e.scale is not None:
                lines.append(f"scale {e.scale}")
            for base, mult in e.factors:
                lines.append(f"factor {mult} {base.degree}")
                lines += _coeff_lines(base)
            lines.append(f"poly {e.poly.degree}")
            lines += _coeff_lines(e.poly)
        lines += ["end", ""]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# integrity

def table_fingerprint(table: CoefficientTable) -> dict:
    """Exact integer value of each entry at the fingerprint points.

    ``u3`` contributes two values, ``u3.0`` (rational part) and ``u3.1``
    (sqrt(6) part).
    """
    out = {}
    for name, e in table.entries.items():
        if name == "H7":
            al, be = FINGERPRINT_H7
            out[name] = sum(s(be) * al**j for j, s in enumerate(e.slices))
        elif name == "Q3":
            al, t = FINGERPRINT_Q3
            out[name] = sum(s(t) * al**(2 * j) for j, s in enumerate(e.slices))
        elif name == "u3":
            out["u3.0"] = e.slices[0](FINGERPRINT_T)
            out["u3.1"] = e.slices[1](FINGERPRINT_T)
        else:
            out[name] = e.poly(FINGERPRINT_T)
    return out


def reference_fingerprints() -> dict:
    text = resources.files("zolotarev7").joinpath("data/fingerprints.txt").read_text()
    ref = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            k, v = ln.split()
            ref[k] = int(v)
    return ref


def check_integrity(entries: dict, reference: dict | None = None) -> None:
    """Raise :class:`DataIntegrityError` naming the first symbol that fails."""
    for sym in SYMBOLS:
        if sym not in entries:
            raise DataIntegrityError(f"{sym}: symbol missing from data file", sym)
    for sym, e in entries.items():
        if sym not in EXPECTED_DEGREES:
            raise DataIntegrityError(f"{sym}: unexpected symbol", sym)
        degs = tuple(s.degree for s in e.slices)
        if degs != EXPECTED_DEGREES[sym]:
            raise DataIntegrityError(
                f"{sym}: degrees {degs} differ from printed degrees {EXPECTED_DEGREES[sym]}", sym)
        if e.factors or e.scale is not None:
            prod = IntPolynomial.from_factors(1 if e.scale is None else e.scale, e.factors)
            if prod != e.poly:
                raise DataIntegrityError(f"{sym}: expanded polynomial differs from its factorisation", sym)
    ref = reference_fingerprints() if reference is None else reference
    got = table_fingerprint(CoefficientTable(dict(entries)))
    for k, v in got.items():
        if k not in ref:
            raise DataIntegrityError(f"{k}: no reference fingerprint", k.split(".")[0])
        if ref[k] != v:
            raise DataIntegrityError(f"{k}: fingerprint mismatch ({v} != {ref[k]})", k.split(".")[0])


def default_data_path() -> Path:
    env = os.environ.get(DATA_ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("zolotarev7").joinpath("data/tables.txt")))


def load_tables(path=None) -> CoefficientTable:
    """Load and validate a coefficient table (bundled file by default)."""
    p = default_data_path() if path is None else Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise DataIntegrityError(f"cannot read data file {p}: {exc}") from exc
    entries = parse_tables(text)
    check_integrity(entries)
    return CoefficientTable(entries)


@lru_cache(maxsize=4)
def _cached(path_str: str) -> CoefficientTable:
    return load_tables(path_str)


def get_tables(path=None) -> CoefficientTable:
    """Cached :func:`load_tables`; the default honours ``ZOLOTAREV7_DATA``."""
    return _cached(str(default_data_path() if path is None else Path(path)))
