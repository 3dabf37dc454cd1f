"""Partition arithmetic and divisor-series statistical mechanics.

Exact and asymptotic partition counts, per-mode thermodynamics of the
equally-spaced-level boson gas, black-body and Debye-solid corrections, and
the 1/f flicker floor of a quartz resonator, with Farey/Ford/Dedekind
geometry kept exact throughout.
"""

from .arith import (DEFAULT_POLICY, DedekindConvention, DedekindValue,
                    FordCircle, PrecisionPolicy, TangencyPoint, dedekind_sum,
                    divisor_sigma, divisors, euler_gamma, farey_sequence,
                    ford_circle, ford_tangency, gamma_fn, kloosterman_A,
                    partition_count_oracle, reduced_fraction, riemann_zeta)
from .errors import ConvergenceError, DomainError, PrecisionError
from .modular import (EtaTransform, RademacherResult, asymptotic_p, eta,
                      eta_transform, eisenstein_g2, functional_equation_rhs,
                      leading_term_p, partition_generating, rademacher_p)
from .phonon import (DebyeModel, FlickerResult, ResonatorSpec, SolidSpec,
                     debye_frequency, debye_function, debye_temperature,
                     debye_velocity, energy_fluctuation, flicker_floor,
                     load_resonator_preset, specific_heat)
from .radiation import (CavitySpec, EinsteinModel, EmissivityModel,
                        NoiseModel, PhotonModel, PhysicalConstants,
                        einstein_AB, emissivity, fluctuation_spectrum,
                        mode_x, photon_density, stefan_boltzmann)
from .thermo import (MellinKind, PlanckVariant, ThermoPerMode, entropy,
                     free_energy, free_energy_lowfreq, internal_energy,
                     internal_energy_lowfreq, mellin_check, occupation,
                     occupation_lowfreq, per_mode_energy_fluctuation,
                     planck_factor, thermo_per_mode)

__version__ = "0.1.0"
