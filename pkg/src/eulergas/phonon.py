"""Debye phonon gas and the quartz-resonator flicker-floor prediction.

Average sound velocity, Debye frequency/temperature, the Debye integral with
a series cross-check, lattice specific heat in both models (the
divisor-series model carries a zeta(3) factor), canonical energy
fluctuations, and the 1/nu frequency-noise floor

    A_ph = 9 h c_ph^3 / (4 pi^3 k T),      h_-1 = A_ph / (4 Q^4 V),

with the resonator spectrum S_omega(nu)/omega^2 = h_-1/nu on the caller
side.  A_ph is defined so that S_u/u^2 = A_ph/(V nu); its numeric value is
quoted bare, with the m^3 bookkeeping carried by V (see the unit audit in
the tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .arith import DEFAULT_POLICY, PrecisionPolicy, riemann_zeta
from .errors import DomainError
from .radiation import PhysicalConstants, load_key_value_file

__all__ = [
    "SolidSpec", "ResonatorSpec",
    "debye_velocity", "debye_frequency", "debye_temperature",
    "debye_function", "debye_function_series",
    "DebyeModel", "specific_heat", "energy_fluctuation",
    "FlickerResult", "flicker_floor",
    "load_resonator_preset", "PRESET_NAMES",
]


def debye_velocity(c_transverse: float, c_longitudinal: float) -> float:
    """Average wave velocity from 3/c_ph^3 = 2/c_t^3 + 1/c_l^3."""
    if not (c_transverse > 0.0 and c_longitudinal > 0.0):
        raise DomainError("sound velocities must be > 0")
    return (3.0 / (2.0 / c_transverse ** 3 + 1.0 / c_longitudinal ** 3)) ** (1.0 / 3.0)


@dataclass(frozen=True)
class SolidSpec:
    """Isotropic solid: atom count, volume, temperature and sound speed.

    Give either c_ph directly or both c_transverse and c_longitudinal, in
    which case c_ph is derived.
    """

    n_atoms: float
    volume: float
    temperature: float
    c_ph: float | None = None
    c_transverse: float | None = None
    c_longitudinal: float | None = None

    def __post_init__(self) -> None:
        for name in ("n_atoms", "volume", "temperature"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be > 0")
        if self.c_ph is None:
            if self.c_transverse is None or self.c_longitudinal is None:
                raise DomainError("give c_ph or both c_transverse and c_longitudinal")
            object.__setattr__(self, "c_ph",
                               debye_velocity(self.c_transverse, self.c_longitudinal))
        if not self.c_ph > 0.0:
            raise DomainError("c_ph must be > 0")


@dataclass(frozen=True)
class ResonatorSpec:
    q_factor: float
    carrier: float        # Hz
    active_volume: float  # m^3
    temperature: float    # K
    c_ph: float           # m/s

    def __post_init__(self) -> None:
        for name in ("q_factor", "carrier", "active_volume", "temperature", "c_ph"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be > 0")


def debye_frequency(solid: SolidSpec) -> float:
    """Maximal vibrational frequency nu_m = (3 N0 c_ph^3 / (4 pi V))^{1/3}."""
    return (3.0 * solid.n_atoms * solid.c_ph ** 3
            / (4.0 * math.pi * solid.volume)) ** (1.0 / 3.0)


def debye_temperature(solid: SolidSpec, constants: PhysicalConstants) -> float:
    """theta_D = h nu_m / k."""
    return constants.h * debye_frequency(solid) / constants.k


def debye_function(x_m: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """D(x_m) = (3/x_m^3) * integral_0^{x_m} x^3/(e^x - 1) dx by quadrature.

    The integrand is continued through its removable zero at 0 as
    x^2 * (x/(e^x - 1)).
    """
    if not x_m > 0.0:
        raise DomainError(f"need x_m > 0, got {x_m}")

    def integrand(x: float) -> float:
        if x == 0.0:
            return 0.0
        if x > 700.0:
            return 0.0
        return x ** 3 / math.expm1(x)

    upper = min(x_m, 720.0)
    rel = max(policy.rel_tol, 1e-12)
    value, _ = integrate.quad(integrand, 0.0, upper, epsabs=1e-300,
                              epsrel=rel, limit=200)
    return 3.0 * value / x_m ** 3


def debye_function_series(x_m: float,
                          policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """Independent route for D(x_m) via termwise e^{-nx} integration:

        integral_0^{a} x^3/(e^x-1) dx
          = pi^4/15 - sum_n e^{-na}(a^3/n + 3a^2/n^2 + 6a/n^3 + 6/n^4),

    where pi^4/15 = Gamma(4) zeta(4) is the complete integral, so only the
    exponentially decaying part needs truncation.

    Cancellation against pi^4/15 limits this route to absolute accuracy
    ~1 ulp of pi^4/15, so it is a cross-check for x_m of order 0.1 and up;
    use the quadrature route at small x_m.
    """
    if not x_m > 0.0:
        raise DomainError(f"need x_m > 0, got {x_m}")
    a = x_m
    n_terms = max(32, min(int(47.0 / a) + 8, policy.max_terms))
    ns = np.arange(1.0, n_terms + 1.0)
    with np.errstate(under="ignore"):
        decay = np.exp(-np.minimum(a * ns, 745.0))
    total = math.pi ** 4 / 15.0 - float(
        np.sum(decay * (a ** 3 / ns + 3.0 * a ** 2 / ns ** 2
                        + 6.0 * a / ns ** 3 + 6.0 / ns ** 4)))
    return 3.0 * total / a ** 3


class DebyeModel(Enum):
    CONVENTIONAL = "conventional"
    GENERAL = "general"


def specific_heat(solid: SolidSpec, constants: PhysicalConstants,
                  model: DebyeModel,
                  policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """Constant-volume lattice specific heat in J/K for the solid's N0 atoms.

    From E(T) = 3 N0 k T D(x_m) by analytic differentiation:

        C_v = 3 N0 k [ 4 D(x_m) - 3 x_m/(e^{x_m} - 1) ],  x_m = theta_D/T.

    The GENERAL model multiplies by zeta(3).  Divide by 3*N0*k for the
    Dulong-Petit ratio.
    """
    x_m = debye_temperature(solid, constants) / solid.temperature
    bose = x_m / math.expm1(x_m) if x_m < 700.0 else 0.0
    ratio = 4.0 * debye_function(x_m, policy) - 3.0 * bose
    cv = 3.0 * solid.n_atoms * constants.k * ratio
    if model is DebyeModel.CONVENTIONAL:
        return cv
    if model is DebyeModel.GENERAL:
        return cv * riemann_zeta(3.0, policy)
    raise DomainError(f"unknown Debye model {model!r}")


def energy_fluctuation(solid: SolidSpec, constants: PhysicalConstants,
                       policy: PrecisionPolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """(epsilon^2, relative): canonical variance k T^2 C_v in J^2, and the
    relative fluctuation scale (2/(3 N0))^{1/2}, which is independent of T
    in the Dulong-Petit regime."""
    cv = specific_heat(solid, constants, DebyeModel.CONVENTIONAL, policy)
    eps_sq = constants.k * solid.temperature ** 2 * cv
    relative = math.sqrt(2.0 / (3.0 * solid.n_atoms))
    return eps_sq, relative


class FlickerResult(NamedTuple):
    a_ph: float       # 9 h c_ph^3 / (4 pi^3 k T); S_u/u^2 = a_ph/(V nu)
    h_minus_1: float  # a_ph / (4 Q^4 V), dimensionless


def flicker_floor(resonator: ResonatorSpec,
                  constants: PhysicalConstants) -> FlickerResult:
    """Flicker-noise floor of a resonator: S_omega(nu)/omega^2 = h_-1/nu."""
    a_ph = (9.0 * constants.h * resonator.c_ph ** 3
            / (4.0 * math.pi ** 3 * constants.k * resonator.temperature))
    h_m1 = a_ph / (4.0 * resonator.q_factor ** 4 * resonator.active_volume)
    return FlickerResult(a_ph, h_m1)


PRESET_NAMES = ("p5-5mhz",)


def load_resonator_preset(name_or_path: str | Path) -> tuple[ResonatorSpec, dict[str, float]]:
    """Resonator spec plus reference values from a packaged preset or a file.

    Preset files are `key = value` with keys c_ph, q_factor, carrier,
    active_volume, temperature and optional reference_* entries, which are
    returned separately for comparison columns.
    """
    name = str(name_or_path)
    if name in PRESET_NAMES:
        ref = resources.files("eulergas").joinpath(f"data/presets/{name}.cfg")
        with resources.as_file(ref) as path:
            values = load_key_value_file(path)
    else:
        path = Path(name_or_path)
        if not path.exists():
            raise DomainError(
                f"unknown preset {name!r} (packaged: {', '.join(PRESET_NAMES)})")
        values = load_key_value_file(path)
    required = {"c_ph", "q_factor", "carrier", "active_volume", "temperature"}
    missing = required - set(values)
    if missing:
        raise DomainError(f"preset missing keys: {sorted(missing)}")
    spec = ResonatorSpec(q_factor=values["q_factor"], carrier=values["carrier"],
                         active_volume=values["active_volume"],
                         temperature=values["temperature"], c_ph=values["c_ph"])
    references = {k: v for k, v in values.items() if k.startswith("reference_")}
    return spec, references
