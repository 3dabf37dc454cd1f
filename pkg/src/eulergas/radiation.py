"""Black-body radiation in the conventional and divisor-series models.

Integrated quantities (Stefan-Boltzmann constant, photon density), spectral
emissivity in four model variants, the spontaneous/stimulated coefficient
ratio, and fractional energy-fluctuation spectra.  The density of states is
the cubic-cavity D(nu) = 8 pi V nu^2 / c^3 with the polarization factor 2
already embedded; it is never applied twice.

Pinned SI constants live in a packaged data file and can be overridden from
a `key = value` config file (keys h, k, c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from .arith import DEFAULT_POLICY, PrecisionPolicy, riemann_zeta
from .errors import DomainError, PrecisionError
from .thermo import internal_energy

__all__ = [
    "PhysicalConstants", "CavitySpec", "load_key_value_file",
    "mode_x", "density_of_states",
    "stefan_boltzmann", "PhotonModel", "photon_density",
    "planck_spectral_density", "EmissivityModel", "emissivity",
    "EinsteinModel", "einstein_AB",
    "NoiseModel", "fluctuation_spectrum", "einstein_fluctuation_from_u",
    "SpectralPoint", "spectral_point",
]


def load_key_value_file(path: str | Path) -> dict[str, float]:
    """Parse a `key = value` file with '#' comments into floats."""
    out: dict[str, float] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"bad config line (expected key = value): {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            out[key] = float(value)
        except ValueError as exc:
            raise DomainError(f"bad numeric value in config: {raw!r}") from exc
    return out


@dataclass(frozen=True)
class PhysicalConstants:
    """Pinned h (J s), k (J/K), c (m/s); sole source of dimensional numbers."""

    h: float
    k: float
    c: float

    def __post_init__(self) -> None:
        for name in ("h", "k", "c"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"constant {name} must be > 0")

    @classmethod
    def si(cls) -> "PhysicalConstants":
        ref = resources.files("eulergas").joinpath("data/constants_si.cfg")
        with resources.as_file(ref) as path:
            values = load_key_value_file(path)
        return cls(h=values["h"], k=values["k"], c=values["c"])

    @classmethod
    def from_file(cls, path: str | Path) -> "PhysicalConstants":
        """SI defaults overlaid with any of h, k, c found in the file."""
        base = cls.si()
        values = load_key_value_file(path)
        unknown = set(values) - {"h", "k", "c"}
        if unknown:
            raise DomainError(f"unknown constants keys: {sorted(unknown)}")
        return cls(h=values.get("h", base.h), k=values.get("k", base.k),
                   c=values.get("c", base.c))


@dataclass(frozen=True)
class CavitySpec:
    volume: float       # m^3
    temperature: float  # K

    def __post_init__(self) -> None:
        if not self.volume > 0.0:
            raise DomainError(f"volume must be > 0, got {self.volume}")
        if not self.temperature > 0.0:
            raise DomainError(f"temperature must be > 0, got {self.temperature}")


def mode_x(nu: float, temperature: float, constants: PhysicalConstants) -> float:
    """Dimensionless mode variable x = h*nu/kT."""
    if not nu > 0.0:
        raise DomainError(f"need nu > 0, got {nu}")
    if not temperature > 0.0:
        raise DomainError(f"need T > 0, got {temperature}")
    return constants.h * nu / (constants.k * temperature)


def density_of_states(nu: float, volume: float, constants: PhysicalConstants) -> float:
    """D(nu) = 8 pi V nu^2 / c^3 (two polarizations included)."""
    return 8.0 * math.pi * volume * nu * nu / constants.c ** 3


def stefan_boltzmann(constants: PhysicalConstants,
                     policy: PrecisionPolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """(sigma_SB, excess) with sigma_SB = 2 pi^5 k^4 / (15 c^2 h^3).

    excess is the multiplicative correction zeta(3) the divisor-series model
    applies to the integrated free energy.
    """
    sigma = (2.0 * math.pi ** 5 * constants.k ** 4
             / (15.0 * constants.c ** 2 * constants.h ** 3))
    return sigma, riemann_zeta(3.0, policy)


class PhotonModel(Enum):
    CONVENTIONAL = "conventional"
    GENERAL = "general"


def photon_density(cavity: CavitySpec, constants: PhysicalConstants,
                   model: PhotonModel,
                   policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """Photons per unit volume: 8 pi (kT/ch)^3 * 2 zeta(3), times zeta(3)
    again in the general model."""
    scale = 8.0 * math.pi * (constants.k * cavity.temperature
                             / (constants.c * constants.h)) ** 3
    z3 = riemann_zeta(3.0, policy)
    if model is PhotonModel.CONVENTIONAL:
        return scale * 2.0 * z3
    if model is PhotonModel.GENERAL:
        return scale * 2.0 * z3 * z3
    raise DomainError(f"unknown photon model {model!r}")


def planck_spectral_density(nu: float, cavity: CavitySpec,
                            constants: PhysicalConstants) -> float:
    """Conventional spectral energy density u(nu, T) in J/Hz:
    (8 pi h V / c^3) nu^3 / (e^x - 1)."""
    x = mode_x(nu, cavity.temperature, constants)
    return (8.0 * math.pi * constants.h * cavity.volume / constants.c ** 3
            * nu ** 3 / math.expm1(x))


class EmissivityModel(Enum):
    PLANCK = "planck"
    RAYLEIGH_JEANS = "rayleigh-jeans"
    GENERAL = "general"
    GENERAL_LOW_FREQ = "general-lf"


def emissivity(nu: float, cavity: CavitySpec, constants: PhysicalConstants,
               model: EmissivityModel,
               policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """Spectral emissivity e_b(nu, T) in W m^-2 Hz^-1.

    PLANCK:          (2 pi h / c^2) nu^3 / (e^x - 1)
    RAYLEIGH_JEANS:  2 pi k nu^2 T / c^2
    GENERAL:         (2 pi h / c^2) nu^3 sum sigma_1(n) e^{-nx}
    GENERAL_LOW_FREQ:(pi^3/3) (k^2/(c^2 h)) nu T^2

    GENERAL_LOW_FREQ / RAYLEIGH_JEANS equals pi^2/(6x).
    """
    t = cavity.temperature
    x = mode_x(nu, t, constants)
    c2 = constants.c ** 2
    if model is EmissivityModel.PLANCK:
        return 2.0 * math.pi * constants.h / c2 * nu ** 3 / math.expm1(x)
    if model is EmissivityModel.RAYLEIGH_JEANS:
        return 2.0 * math.pi * constants.k / c2 * nu ** 2 * t
    if model is EmissivityModel.GENERAL:
        try:
            series = internal_energy(x, policy) / x
        except PrecisionError as exc:
            raise PrecisionError(
                f"general emissivity series unavailable at x={x:g}; "
                "use GENERAL_LOW_FREQ in the small-x regime",
                exc.terms_attempted) from exc
        return 2.0 * math.pi * constants.h / c2 * nu ** 3 * series
    if model is EmissivityModel.GENERAL_LOW_FREQ:
        return (math.pi ** 3 / 3.0) * constants.k ** 2 / (c2 * constants.h) * nu * t * t
    raise DomainError(f"unknown emissivity model {model!r}")


class EinsteinModel(Enum):
    CONVENTIONAL = "conventional"
    GENERAL_LOW_FREQ = "general-lf"


def einstein_AB(nu: float, constants: PhysicalConstants, temperature: float,
                model: EinsteinModel) -> float:
    """Spontaneous-to-stimulated coefficient ratio A/B.

    CONVENTIONAL: 8 pi h / lambda^3 with lambda = c/nu.
    GENERAL_LOW_FREQ: 4 pi^3 k T / (3 c lambda^2); the two differ by the
    factor pi^2/(6x) exactly.
    """
    if not nu > 0.0:
        raise DomainError(f"need nu > 0, got {nu}")
    if not temperature > 0.0:
        raise DomainError(f"need T > 0, got {temperature}")
    lam = constants.c / nu
    if model is EinsteinModel.CONVENTIONAL:
        return 8.0 * math.pi * constants.h / lam ** 3
    if model is EinsteinModel.GENERAL_LOW_FREQ:
        return 4.0 * math.pi ** 3 * constants.k * temperature / (3.0 * constants.c * lam ** 2)
    raise DomainError(f"unknown Einstein model {model!r}")


class NoiseModel(Enum):
    EINSTEIN_FULL = "einstein"
    RAYLEIGH_JEANS = "rj"
    GENERAL_LOW_FREQ = "general-lf"


def einstein_fluctuation_from_u(nu: float, u: float, cavity: CavitySpec,
                                constants: PhysicalConstants) -> float:
    """Full fluctuation law S_u/u^2 = h nu / u + c^3/(8 pi nu^2 V) for a
    given spectral energy density u (J/Hz).

    The wave term reproduces the Rayleigh-Jeans spectrum identically; the
    shot term dominates in the Wien regime.
    """
    if not u > 0.0:
        raise DomainError(f"need u > 0, got {u}")
    return (constants.h * nu / u
            + constants.c ** 3 / (8.0 * math.pi * nu ** 2 * cavity.volume))


def fluctuation_spectrum(nu: float, cavity: CavitySpec,
                         constants: PhysicalConstants, model: NoiseModel,
                         policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """Fractional energy-noise spectral density S_u/u^2.

    RAYLEIGH_JEANS:   c^3/(8 pi V) * 1/nu^2        (random-walk 1/nu^2)
    GENERAL_LOW_FREQ: (3/2) h c^3/(pi^3 V) * 1/(kT nu)   (1/nu)
    EINSTEIN_FULL:    h nu/u + c^3/(8 pi nu^2 V) with the conventional u

    GENERAL_LOW_FREQ / RAYLEIGH_JEANS equals 12 x / pi^2.
    """
    if not nu > 0.0:
        raise DomainError(f"need nu > 0, got {nu}")
    v = cavity.volume
    if model is NoiseModel.RAYLEIGH_JEANS:
        return constants.c ** 3 / (8.0 * math.pi * v * nu ** 2)
    if model is NoiseModel.GENERAL_LOW_FREQ:
        return (1.5 * constants.h * constants.c ** 3
                / (math.pi ** 3 * v * constants.k * cavity.temperature * nu))
    if model is NoiseModel.EINSTEIN_FULL:
        u = planck_spectral_density(nu, cavity, constants)
        return einstein_fluctuation_from_u(nu, u, cavity, constants)
    raise DomainError(f"unknown noise model {model!r}")


@dataclass(frozen=True)
class SpectralPoint:
    """One frequency sample with both models side by side."""

    nu: float
    u_conventional: float
    u_general: float
    e_b_planck: float
    e_b_general: float
    frac_noise_rj: float
    frac_noise_general_lf: float


def spectral_point(nu: float, cavity: CavitySpec, constants: PhysicalConstants,
                   policy: PrecisionPolicy = DEFAULT_POLICY) -> SpectralPoint:
    """Assemble the standard comparison row at one frequency."""
    u_conv = planck_spectral_density(nu, cavity, constants)
    e_general = emissivity(nu, cavity, constants, EmissivityModel.GENERAL, policy)
    # u_general = (4V/c) e_b by the emissivity definition e_b = (c/4V) u
    u_general = 4.0 * cavity.volume / constants.c * e_general
    return SpectralPoint(
        nu=nu,
        u_conventional=u_conv,
        u_general=u_general,
        e_b_planck=emissivity(nu, cavity, constants, EmissivityModel.PLANCK, policy),
        e_b_general=e_general,
        frac_noise_rj=fluctuation_spectrum(nu, cavity, constants,
                                           NoiseModel.RAYLEIGH_JEANS, policy),
        frac_noise_general_lf=fluctuation_spectrum(nu, cavity, constants,
                                                   NoiseModel.GENERAL_LOW_FREQ,
                                                   policy),
    )
