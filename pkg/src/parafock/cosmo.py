"""Order-of-magnitude cosmology: ur counts, energies, photon numbers, entropy, Lambda.

Quantities are :class:`Magnitude` values, a 3-significant-figure decimal
mantissa times an exact power of ten, with a small multiplicative unit
algebra (base symbols with rational powers).  Only a handful of unit
symbols occur, so prefixed units are converted through a fixed table.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from decimal import Context, Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

SIG_FIGS = 3
_CTX = Context(prec=SIG_FIGS, rounding=ROUND_HALF_EVEN)
_WORK_PREC = 40
_QUANTUM = Decimal(1).scaleb(1 - SIG_FIGS)


class UnitMismatch(ValueError):
    pass


class ConstantsError(ValueError):
    pass


# prefixed symbol -> (base symbol, decade shift)
_PREFIXED = {
    "GeV": ("eV", 9),
    "MeV": ("eV", 6),
    "keV": ("eV", 3),
    "meV": ("eV", -3),
    "km": ("cm", 5),
    "m": ("cm", 2),
    "mm": ("cm", -1),
    "nm": ("cm", -7),
    "kg": ("g", 3),
}

_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^\(?(-?\d+(?:/\d+)?)\)?)?$")


@dataclass(frozen=True)
class Unit:
    """Product of base symbols raised to rational powers; empty means dimensionless."""

    powers: tuple[tuple[str, Fraction], ...] = ()

    @staticmethod
    def _make(d: dict[str, Fraction]) -> "Unit":
        return Unit(tuple(sorted((k, v) for k, v in d.items() if v)))

    @staticmethod
    def parse(text: str) -> tuple["Unit", int]:
        """Parse ``"eV*cm"``, ``"cm^-2"``, ``"g/cm^3"``, ``"1"``; returns (unit, decade shift)."""
        text = text.strip()
        if text in ("", "1"):
            return Unit(), 0
        d: dict[str, Fraction] = {}
        shift = 0
        sign = 1
        for tok in re.split(r"(\*|/|\s+)", text):
            tok = tok.strip()
            if not tok or tok == "*":
                continue
            if tok == "/":
                sign = -1
                continue
            m = _FACTOR.match(tok)
            if not m:
                raise UnitMismatch(f"cannot parse unit factor {tok!r}")
            sym, pw = m.group(1), Fraction(m.group(2) or 1) * sign
            if sym in _PREFIXED:
                sym, dec = _PREFIXED[sym]
                shift += dec * pw
            d[sym] = d.get(sym, Fraction(0)) + pw
        if Fraction(shift).denominator != 1:
            raise UnitMismatch(f"fractional decade shift in {text!r}")
        return Unit._make(d), int(shift)

    def __mul__(self, other: "Unit") -> "Unit":
        d = dict(self.powers)
        for k, v in other.powers:
            d[k] = d.get(k, Fraction(0)) + v
        return Unit._make(d)

    def __pow__(self, q) -> "Unit":
        q = Fraction(q)
        return Unit._make({k: v * q for k, v in self.powers})

    def inverse(self) -> "Unit":
        return self ** -1

    @property
    def dimensionless(self) -> bool:
        return not self.powers

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        parts = []
        for k, v in self.powers:
            parts.append(k if v == 1 else f"{k}^{v}")
        return "*".join(parts)


@dataclass(frozen=True)
class Magnitude:
    """sign * mantissa * 10**exponent [unit], mantissa in [1, 10) or exactly 0."""

    mantissa: Decimal
    exponent: int
    unit: Unit = Unit()

    @staticmethod
    def _from_decimal(x: Decimal, extra_exp: int, unit: Unit) -> "Magnitude":
        x = _CTX.plus(x)
        if x.is_zero():
            return Magnitude(Decimal(0), 0, unit)
        adj = x.adjusted()
        m = _CTX.plus(x.scaleb(-adj))
        # rounding can push 9.995 up to 10.0
        if abs(m) >= 10:
            m = _CTX.plus(m.scaleb(-1))
            adj += 1
        return Magnitude(m.quantize(_QUANTUM), adj + extra_exp, unit)

    @classmethod
    def of(cls, mantissa, exponent: int = 0, unit: str | Unit = "1") -> "Magnitude":
        if isinstance(mantissa, float):
            raise TypeError("pass mantissas as str, int or Decimal")
        if isinstance(unit, str):
            u, shift = Unit.parse(unit)
        else:
            u, shift = unit, 0
        return cls._from_decimal(Decimal(mantissa), exponent + shift, u)

    @property
    def is_zero(self) -> bool:
        return self.mantissa.is_zero()

    @property
    def sign(self) -> int:
        return 0 if self.is_zero else (1 if self.mantissa > 0 else -1)

    def __mul__(self, other) -> "Magnitude":
        if not isinstance(other, Magnitude):
            other = Magnitude.of(other)
        with localcontext() as c:
            c.prec = _WORK_PREC
            x = self.mantissa * other.mantissa
        if x.is_zero():
            return Magnitude(Decimal(0), 0, self.unit * other.unit)
        return Magnitude._from_decimal(x, self.exponent + other.exponent, self.unit * other.unit)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Magnitude":
        if not isinstance(other, Magnitude):
            other = Magnitude.of(other)
        if other.is_zero:
            raise ZeroDivisionError("division by a zero Magnitude")
        with localcontext() as c:
            c.prec = _WORK_PREC
            x = self.mantissa / other.mantissa
        return Magnitude._from_decimal(x, self.exponent - other.exponent, self.unit * other.unit.inverse())

    def __pow__(self, q) -> "Magnitude":
        q = Fraction(q)
        if self.is_zero:
            if q <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return Magnitude(Decimal(0), 0, self.unit**q)
        if self.mantissa < 0 and q.denominator != 1:
            raise ValueError("fractional power of a negative Magnitude")
        # exponent * q split into an exact integer part and a remainder folded
        # into the mantissa
        e = self.exponent * q
        e_int = e.numerator // e.denominator
        rest = e - e_int
        with localcontext() as c:
            c.prec = _WORK_PREC
            qd = Decimal(q.numerator) / Decimal(q.denominator)
            x = abs(self.mantissa) ** qd
            if rest:
                x *= Decimal(10) ** (Decimal(rest.numerator) / Decimal(rest.denominator))
            if self.mantissa < 0 and q.numerator % 2:
                x = -x
        return Magnitude._from_decimal(x, e_int, self.unit**q)

    def __add__(self, other: "Magnitude") -> "Magnitude":
        if self.unit != other.unit:
            raise UnitMismatch(f"cannot add {self.unit} and {other.unit}")
        with localcontext() as c:
            c.prec = _WORK_PREC
            x = self.to_decimal() + other.to_decimal()
        return Magnitude._from_decimal(x, 0, self.unit)

    def __sub__(self, other: "Magnitude") -> "Magnitude":
        return self + other * Magnitude.of(-1)

    def to_decimal(self) -> Decimal:
        return self.mantissa.scaleb(self.exponent)

    def log10(self) -> Decimal:
        if self.sign <= 0:
            raise ValueError("log10 of a non-positive Magnitude")
        with localcontext() as c:
            c.prec = 12
            return (self.mantissa.log10() + self.exponent).quantize(Decimal("0.001"))

    def require_unit(self, unit: str | Unit, what: str = "quantity") -> None:
        u = Unit.parse(unit)[0] if isinstance(unit, str) else unit
        if self.unit != u:
            raise UnitMismatch(f"{what} must be in {u}, got {self.unit}")

    def __str__(self) -> str:
        u = "" if self.unit.dimensionless else f" {self.unit}"
        return f"{self.mantissa}e{self.exponent}{u}"

    def to_json(self) -> dict[str, Any]:
        return {"mantissa": str(self.mantissa), "exponent": self.exponent, "unit": str(self.unit)}


# ---------------------------------------------------------------------------
# constants

REQUIRED_CONSTANTS = {
    "cosmic_radius": "cm",
    "proton_compton_wavelength": "cm",
    "proton_electron_mass_ratio": "1",
    "proton_energy": "eV",
    "universe_mass": "g",
    "proton_mass": "g",
    "planck_mass": "g",
    "hc": "eV*cm",
    "planck_length": "cm",
}


@dataclass(frozen=True)
class CosmoConstants:
    values: dict[str, Magnitude]

    def __getitem__(self, name: str) -> Magnitude:
        return self.values[name]

    def replace(self, **changes: Magnitude) -> "CosmoConstants":
        return CosmoConstants({**self.values, **changes})

    @classmethod
    def from_entries(cls, entries: list[dict[str, Any]]) -> "CosmoConstants":
        values: dict[str, Magnitude] = {}
        for e in entries:
            try:
                name, mant, exp, unit = e["name"], e["mantissa"], e["exponent"], e["unit"]
            except (KeyError, TypeError) as exc:
                raise ConstantsError(f"constant entry needs name, mantissa, exponent, unit: {e!r}") from exc
            if isinstance(mant, float) or not isinstance(exp, int):
                raise ConstantsError(f"{name}: mantissa must be a string or int, exponent an int")
            try:
                m = Magnitude.of(str(mant), exp, unit)
            except (ArithmeticError, ValueError) as exc:
                raise ConstantsError(f"{name}: {exc}") from exc
            if m.sign <= 0:
                raise ConstantsError(f"{name} must be positive")
            values[name] = m
        missing = sorted(set(REQUIRED_CONSTANTS) - set(values))
        if missing:
            raise ConstantsError(f"missing constants: {', '.join(missing)}")
        for name, unit in REQUIRED_CONSTANTS.items():
            try:
                values[name].require_unit(unit, name)
            except UnitMismatch as exc:
                raise ConstantsError(str(exc)) from exc
        return cls(values)

    @classmethod
    def load(cls, path: str | Path | None = None) -> "CosmoConstants":
        if path is None:
            text = resources.files("parafock").joinpath("data/default_constants.json").read_text("utf-8")
        else:
            try:
                text = Path(path).read_text("utf-8")
            except OSError as exc:
                raise ConstantsError(f"cannot read constants file: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConstantsError(f"constants file is not valid JSON: {exc}") from exc
        entries = doc["constants"] if isinstance(doc, dict) and "constants" in doc else doc
        if not isinstance(entries, list):
            raise ConstantsError("constants file must hold a list of entries")
        return cls.from_entries(entries)


def default_constants() -> CosmoConstants:
    return CosmoConstants.load()


# ---------------------------------------------------------------------------
# estimates

_CM = Unit.parse("cm")[0]
_EV = Unit.parse("eV")[0]


def ur_count(R: Magnitude, lam: Magnitude) -> Magnitude:
    """n = R / lambda."""
    if R.unit != lam.unit:
        raise UnitMismatch(f"R in {R.unit} but lambda in {lam.unit}")
    return R / lam


def electron_ur_count(n_p: Magnitude, mass_ratio: Magnitude) -> Magnitude:
    """n_e = R / lambda_e = n_p / (m_p / m_e)."""
    return n_p / mass_ratio


def total_urs(R: Magnitude, lam_p: Magnitude) -> Magnitude:
    """N = R^3 / lambda_p^3."""
    return ur_count(R, lam_p) ** 3


def uncertainty_size(E: Magnitude, hc: Magnitude) -> Magnitude:
    """Delta x ~ hc / E."""
    E.require_unit(_EV, "energy")
    return hc / E


def ur_energy(R: Magnitude, hc: Magnitude) -> Magnitude:
    """E_0 ~ hc / R, in eV when hc is in eV*cm and R in cm."""
    R.require_unit(_CM, "R")
    return hc / R


def photon_numbers(N: Magnitude) -> dict[str, Magnitude]:
    n_ph = N ** Fraction(1, 4)
    z_ph = N / n_ph
    return {"n_ph": n_ph, "z_ph": z_ph}


def bekenstein_delta(M: Magnitude, m: Magnitude, m0: Magnitude) -> Magnitude:
    """Delta S = 8 pi M m in units of m0^2 (returned dimensionless)."""
    for x, what in ((M, "M"), (m, "m"), (m0, "m0")):
        x.require_unit("g", what)
    if m.is_zero:
        return Magnitude.of(0)
    eight_pi = Magnitude.of("25.1327412287")
    return eight_pi * M * m / (m0 * m0)


def bekenstein_delta_expanded(M: Magnitude, m: Magnitude, m0: Magnitude) -> Magnitude:
    """4 pi ((M+m)^2 - M^2) = 4 pi (2 M m + m^2), keeping the m^2 term.

    The square difference is expanded algebraically first; subtracting two
    3-figure squares directly would cancel to nothing.
    """
    for x, what in ((M, "M"), (m, "m"), (m0, "m0")):
        x.require_unit("g", what)
    if m.is_zero:
        return Magnitude.of(0)
    four_pi = Magnitude.of("12.5663706144")
    diff = Magnitude.of(2) * M * m + m * m
    return four_pi * diff / (m0 * m0)


def lambda_estimate(R: Magnitude) -> Magnitude:
    """Lambda ~ 1 / R^2 with R in cm."""
    R.require_unit(_CM, "R")
    return R ** -2


def lambda_planck(R: Magnitude, l_planck: Magnitude) -> Magnitude:
    """The same scaling in Planck units: (l_P / R)^2, dimensionless."""
    R.require_unit(_CM, "R")
    return (l_planck / R) ** 2


# ---------------------------------------------------------------------------
# table

TOLERANCE = 1


@dataclass
class CosmoRow:
    quantity: str
    computed: Magnitude
    stated_exponent: int | None
    tolerance: int = TOLERANCE
    flag_only: bool = False
    note: str = ""

    @property
    def decade_difference(self) -> int | None:
        if self.stated_exponent is None:
            return None
        return self.computed.exponent - self.stated_exponent

    @property
    def log10_gap(self) -> Decimal | None:
        if self.stated_exponent is None or self.computed.sign <= 0:
            return None
        return self.computed.log10() - self.stated_exponent

    @property
    def within(self) -> bool:
        d = self.decade_difference
        return d is None or abs(d) <= self.tolerance

    @property
    def status(self) -> str:
        if self.within:
            return "PASS"
        return "FLAGGED" if self.flag_only else "FAIL"

    def to_dict(self) -> dict[str, Any]:
        gap = self.log10_gap
        return {
            "quantity": self.quantity,
            "computed": self.computed.to_json(),
            "paper_value": None if self.stated_exponent is None else f"1e{self.stated_exponent}",
            "decade_difference": self.decade_difference,
            "log10_gap": None if gap is None else str(gap),
            "tolerance": self.tolerance,
            "status": self.status,
            "note": self.note,
        }


def compute_all(c: CosmoConstants) -> dict[str, Magnitude]:
    R, lam_p, hc = c["cosmic_radius"], c["proton_compton_wavelength"], c["hc"]
    n_p = ur_count(R, lam_p)
    N = total_urs(R, lam_p)
    z_p = N / n_p
    E0 = ur_energy(R, hc)
    ph = photon_numbers(N)
    return {
        "n_p": n_p,
        "n_e": electron_ur_count(n_p, c["proton_electron_mass_ratio"]),
        "N": N,
        "z_p": z_p,
        "E0": E0,
        "U": N * E0,
        "U_nucleons": z_p * c["proton_energy"],
        "n_ph": ph["n_ph"],
        "z_ph": ph["z_ph"],
        "photon_baryon_ratio": ph["z_ph"] / z_p,
        "delta_S_max": bekenstein_delta(c["universe_mass"], c["proton_mass"], c["planck_mass"]),
        "Lambda_planck_units": lambda_planck(R, c["planck_length"]),
        "Lambda_cm": lambda_estimate(R),
        "dx_proton": uncertainty_size(c["proton_energy"], hc),
    }


# quantity -> (stated exponent, flag only, note)
STATED_EXPONENTS: dict[str, tuple[int, bool, str]] = {
    "n_p": (40, False, ""),
    "n_e": (38, True, "R/lambda_e with the proton/electron mass ratio"),
    "N": (120, False, ""),
    "z_p": (80, False, ""),
    "E0": (-32, False, "eV"),
    "U": (88, False, "N*E0, eV"),
    "U_nucleons": (88, False, "z_p*E_p, eV"),
    "n_ph": (30, False, ""),
    "z_ph": (90, False, ""),
    "photon_baryon_ratio": (10, False, ""),
    "delta_S_max": (41, False, "units of m0^2, includes the 8*pi factor"),
    "Lambda_planck_units": (-120, False, "(l_P/R)^2"),
    "Lambda_cm": (-120, True, "1/R^2 in cm^-2"),
}


def cosmo_table(c: CosmoConstants | None = None) -> list[CosmoRow]:
    c = c or default_constants()
    values = compute_all(c)
    rows = []
    for name, (exp, flag, note) in STATED_EXPONENTS.items():
        rows.append(CosmoRow(name, values[name], exp, flag_only=flag, note=note))
    return rows


def table_passed(rows: list[CosmoRow]) -> bool:
    return all(r.status != "FAIL" for r in rows)
