"""Per-mode thermodynamics of the equally-spaced-level boson gas.

Exact divisor-sum series for the free energy, occupation number, internal
energy and entropy at x = h*nu/kT, their low-frequency closed forms, the
per-mode energy fluctuation, the two conventional per-mode comparators, and
the Mellin-transform cross-checks

    integral (-ln Z) x^{s-1} dx      = Gamma(s) zeta(s) zeta(s+1)
    integral  N(x)   x^{s-1} dx      = Gamma(s) zeta(s)^2
    integral (E/kTx) x^{s-1} dx      = Gamma(s) zeta(s) zeta(s-1)

Series share one exponential grid per x and truncate when the next term and
its geometric tail bound both drop below rel_tol of the partial sum.  Below
x = 1e-6 the exact series are refused (term counts explode); the low
frequency forms are the supported path there.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import integrate

from .arith import (DEFAULT_POLICY, PrecisionPolicy, euler_gamma, gamma_fn,
                    riemann_zeta, sigma_table)
from .errors import DomainError, PrecisionError

__all__ = [
    "ThermoPerMode", "thermo_per_mode",
    "free_energy", "free_energy_log_form", "free_energy_lowfreq",
    "occupation", "occupation_bose", "occupation_lowfreq",
    "internal_energy", "internal_energy_bose", "internal_energy_lowfreq",
    "entropy", "entropy_lowfreq",
    "per_mode_energy_fluctuation",
    "PlanckVariant", "planck_factor",
    "MellinKind", "mellin_check",
    "neg_log_partition", "occupation_integrand", "energy_series_integrand",
]

SERIES_X_FLOOR = 1e-6    # exact series refused below this x
LOWFREQ_SWITCH = 1e-3    # integrands switch to closed forms below this x


def _require_x(x: float) -> float:
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"need x > 0, got {x}")
    return x


def _require_series_x(x: float, policy: PrecisionPolicy) -> float:
    x = _require_x(x)
    if x < SERIES_X_FLOOR:
        raise PrecisionError(
            f"exact series refused for x < {SERIES_X_FLOOR:g} (got {x:g}); "
            "use the low-frequency forms there", 0)
    estimate = int(47.0 / x) + 8
    if estimate > policy.max_terms:
        raise PrecisionError(
            f"series at x={x:g} needs about {estimate} terms, "
            f"budget is {policy.max_terms}", estimate)
    return x


@dataclass(frozen=True)
class ThermoPerMode:
    """All four per-mode quantities from one shared truncation.

    s_over_k equals e_over_kT - f_over_kT exactly by construction;
    tail_bound is the recorded geometric bound on the dropped tail of the
    heaviest series.
    """

    f_over_kT: float
    n_occ: float
    e_over_kT: float
    s_over_k: float
    terms_used: int
    tail_bound: float


_weights_lock = threading.Lock()
_weights_cache: dict[str, np.ndarray] = {}
_weights_len = 0


def _sigma_arrays(n_max: int) -> dict[str, np.ndarray]:
    """Float views of the sigma tables for vectorized series evaluation."""
    global _weights_len, _weights_cache
    if _weights_len >= n_max + 1:
        return _weights_cache
    s0, s1 = sigma_table(n_max)
    with _weights_lock:
        if _weights_len >= n_max + 1:
            return _weights_cache
        ns = np.arange(len(s0), dtype=np.float64)
        ns[0] = 1.0  # avoid 0/0 at the unused index
        a1 = np.asarray(s1, dtype=np.float64)
        _weights_cache = {
            "n": ns,
            "sigma0": np.asarray(s0, dtype=np.float64),
            "sigma1": a1,
            "sigma_m1": a1 / ns,
            "n_sigma1": a1 * np.arange(len(s0), dtype=np.float64),
        }
        _weights_len = len(s0)
    return _weights_cache


@dataclass(frozen=True)
class _ModeSums:
    f: float          # -sum sigma_{-1}(n) e^{-nx}
    n_occ: float      # sum sigma_0(n) e^{-nx}
    e: float          # x * sum sigma_1(n) e^{-nx}
    s_series: float   # literal termwise sum sigma_1(n)(x + 1/n) e^{-nx}
    fluct: float      # x^2 * sum n*sigma_1(n) e^{-nx}
    terms: int
    tail: float


@lru_cache(maxsize=4096)
def _mode_sums(x: float, policy: PrecisionPolicy) -> _ModeSums:
    """Evaluate all divisor series at x on one exponential grid.

    Doubles the term count until, for every series, the next term and its
    geometric tail bound term/(1 - e^{-x}) are below rel_tol of that
    series' partial sum.
    """
    x = _require_series_x(x, policy)
    rel = policy.rel_tol
    decay = math.exp(-x)
    n_terms = max(16, min(int(47.0 / x) + 8, policy.max_terms))
    while True:
        w = _sigma_arrays(n_terms + 1)
        ns = np.arange(1, n_terms + 1, dtype=np.float64)
        ex = np.exp(-x * ns)
        sm1 = w["sigma_m1"][1:n_terms + 1]
        s0 = w["sigma0"][1:n_terms + 1]
        s1 = w["sigma1"][1:n_terms + 1]
        ns1 = w["n_sigma1"][1:n_terms + 1]

        f_sum = float(np.dot(sm1, ex))
        n_sum = float(np.dot(s0, ex))
        e_sum = float(np.dot(s1, ex))
        s_sum = float(np.dot(s1 * (x + 1.0 / ns), ex))
        fl_sum = float(np.dot(ns1, ex))

        # next-term estimates: last sieved weight times the next exponential,
        # with slack for the local fluctuation of the divisor weights
        nxt = 4.0 * math.exp(-x * (n_terms + 1))
        checks = (
            (sm1[-1] * nxt, abs(f_sum)),
            (s0[-1] * nxt, abs(n_sum)),
            (s1[-1] * nxt, abs(e_sum)),
            (ns1[-1] * nxt, abs(fl_sum)),
        )
        geom = decay / (1.0 - decay)
        ok = True
        tail = 0.0
        for nxt_term, scale in checks:
            bound = float(nxt_term) * geom if nxt_term else 0.0
            tail = max(tail, bound)
            floor = max(float(scale), 1e-300)
            if nxt_term > rel * floor or bound > rel * floor:
                ok = False
        if ok:
            return _ModeSums(-f_sum, n_sum, x * e_sum, s_sum, x * x * fl_sum,
                             n_terms, tail)
        if n_terms >= policy.max_terms:
            raise PrecisionError(
                f"divisor series at x={x:g} still unconverged after "
                f"{n_terms} terms", n_terms)
        n_terms = min(2 * n_terms, policy.max_terms)


def thermo_per_mode(x: float,
                    policy: PrecisionPolicy = DEFAULT_POLICY) -> ThermoPerMode:
    """F/kT, N, E/kT and S/k at one x from a single truncation."""
    ms = _mode_sums(x, policy)
    return ThermoPerMode(ms.f, ms.n_occ, ms.e, ms.e - ms.f, ms.terms, ms.tail)


def free_energy(x: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """F/kT = -sum sigma_{-1}(n) e^{-nx}  (negative for all x > 0)."""
    return _mode_sums(x, policy).f


def free_energy_log_form(x: float,
                         policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """Independent route: F/kT = sum ln(1 - e^{-nx})."""
    x = _require_series_x(x, policy)
    n_terms = max(16, min(int(47.0 / x) + 8, policy.max_terms))
    while True:
        ns = np.arange(1, n_terms + 1, dtype=np.float64)
        total = float(np.sum(np.log1p(-np.exp(-x * ns))))
        nxt = math.exp(-x * (n_terms + 1))
        if nxt <= policy.rel_tol * max(abs(total), 1e-300) * (1.0 - math.exp(-x)):
            return total
        if n_terms >= policy.max_terms:
            raise PrecisionError(
                f"log-form series at x={x:g} unconverged after {n_terms} terms",
                n_terms)
        n_terms = min(2 * n_terms, policy.max_terms)


def free_energy_lowfreq(x: float) -> float:
    """Low-frequency closed form -pi^2/(6x) - (1/2) ln(x/2pi) + x/24."""
    x = _require_x(x)
    return -math.pi ** 2 / (6.0 * x) - 0.5 * math.log(x / (2.0 * math.pi)) + x / 24.0


def occupation(x: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """N = sum sigma_0(n) e^{-nx}."""
    return _mode_sums(x, policy).n_occ


def occupation_bose(x: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """Independent route: N = sum 1/(e^{nx} - 1)."""
    x = _require_series_x(x, policy)
    n_terms = max(16, min(int(47.0 / x) + 8, policy.max_terms))
    ns = np.arange(1, n_terms + 1, dtype=np.float64)
    return float(np.sum(1.0 / np.expm1(x * ns)))


def occupation_lowfreq(x: float) -> float:
    """Low-frequency closed form (-ln x + gamma)/x."""
    x = _require_x(x)
    return (-math.log(x) + euler_gamma()) / x


def internal_energy(x: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """E/kT = x * sum sigma_1(n) e^{-nx}."""
    return _mode_sums(x, policy).e


def internal_energy_bose(x: float,
                         policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """Independent route: E/kT = x * sum n/(e^{nx} - 1)."""
    x = _require_series_x(x, policy)
    n_terms = max(16, min(int(47.0 / x) + 8, policy.max_terms))
    ns = np.arange(1, n_terms + 1, dtype=np.float64)
    return x * float(np.sum(ns / np.expm1(x * ns)))


def internal_energy_lowfreq(x: float) -> float:
    """Low-frequency closed form pi^2/(6x) - 1/2 + x/24."""
    x = _require_x(x)
    return math.pi ** 2 / (6.0 * x) - 0.5 + x / 24.0


def entropy(x: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """S/k = sum sigma_1(n)(x + 1/n) e^{-nx}.

    The identity value (E - F)/kT comes from the same truncation; the two
    must agree to rel_tol or the evaluation is rejected.
    """
    ms = _mode_sums(x, policy)
    identity = ms.e - ms.f
    if abs(ms.s_series - identity) > policy.rel_tol * max(abs(ms.s_series), 1.0):
        raise PrecisionError(
            f"entropy identity violated at x={x:g}: series {ms.s_series!r} vs "
            f"identity {identity!r}", ms.terms)
    return ms.s_series


def entropy_lowfreq(x: float) -> float:
    """Low-frequency closed form pi^2/(3x) + (1/2) ln(x/2pi) - 1/2."""
    x = _require_x(x)
    return math.pi ** 2 / (3.0 * x) + 0.5 * math.log(x / (2.0 * math.pi)) - 0.5


def per_mode_energy_fluctuation(x: float,
                                policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """Energy variance per mode in (kT)^2 units: x^2 sum n sigma_1(n) e^{-nx}.

    Equals kT^2 dE/dT at fixed h*nu; the test suite checks that against a
    central finite difference.
    """
    return _mode_sums(x, policy).fluct


class PlanckVariant(Enum):
    PLANCK = "planck"           # x/(e^x - 1)
    ZERO_POINT = "zero-point"   # x*coth(x/2)


def planck_factor(x: float, variant: PlanckVariant) -> float:
    """Conventional per-mode energy factors in kT units."""
    x = _require_x(x)
    if variant is PlanckVariant.PLANCK:
        return x / math.expm1(x)
    if variant is PlanckVariant.ZERO_POINT:
        return x / math.tanh(0.5 * x)
    raise DomainError(f"unknown Planck variant {variant!r}")


# ---------------------------------------------------------------------------
# Mellin-transform checks
# ---------------------------------------------------------------------------

def neg_log_partition(x: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """-ln Z(x) = -F/kT on all of x > 0.

    Below the switch point the closed form is used; its error there is of
    order e^{-4 pi^2 / x}, far below double rounding.
    """
    x = _require_x(x)
    if x < LOWFREQ_SWITCH:
        return -free_energy_lowfreq(x)
    if x > 745.0:
        return 0.0  # e^{-x} underflows; the sum is zero to double precision
    return -free_energy(x, policy)


def occupation_integrand(x: float,
                         policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """N(x) on all of x > 0, switching to the closed form at small x."""
    x = _require_x(x)
    if x < LOWFREQ_SWITCH:
        return occupation_lowfreq(x)
    if x > 745.0:
        return 0.0
    return occupation(x, policy)


def energy_series_integrand(x: float,
                            policy: PrecisionPolicy = DEFAULT_POLICY) -> float:
    """sum sigma_1(n) e^{-nx} = (E/kT)/x on all of x > 0."""
    x = _require_x(x)
    if x < LOWFREQ_SWITCH:
        return internal_energy_lowfreq(x) / x
    if x > 745.0:
        return 0.0
    return internal_energy(x, policy) / x


class MellinKind(Enum):
    FREE_ENERGY = "free-energy"
    OCCUPATION = "occupation"
    ENERGY = "energy"


def _mellin_head(kind: MellinKind, s: float, c: float) -> float:
    """Closed-form integral of the low-frequency integrand over [0, c].

    The free-energy and energy forms are exact up to e^{-4 pi^2 / c}; the
    occupation form drops a bounded O(1) correction whose head contribution
    is O(c^s), below 1e-6 relative at c = 1e-3.
    """
    pi2_6 = math.pi ** 2 / 6.0
    if kind is MellinKind.FREE_ENERGY:
        return (pi2_6 * c ** (s - 1.0) / (s - 1.0)
                + 0.5 * c ** s * (math.log(c / (2.0 * math.pi)) / s - 1.0 / s ** 2)
                - c ** (s + 1.0) / (24.0 * (s + 1.0)))
    if kind is MellinKind.OCCUPATION:
        g = euler_gamma()
        return c ** (s - 1.0) * ((g - math.log(c)) / (s - 1.0)
                                 + 1.0 / (s - 1.0) ** 2)
    if kind is MellinKind.ENERGY:
        return (pi2_6 * c ** (s - 2.0) / (s - 2.0)
                - 0.5 * c ** (s - 1.0) / (s - 1.0)
                + c ** s / (24.0 * s))
    raise DomainError(f"unknown Mellin kind {kind!r}")


def mellin_check(s: float, kind: MellinKind,
                 policy: PrecisionPolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """Quadrature of the Mellin integral against its Gamma*zeta closed form.

    Returns (integral, closed_form) for the caller to compare.  The integral
    is split at x = 1, with the tail mapped through u = 1/x and the head on
    [0, c] integrated in closed low-frequency form.
    """
    if kind in (MellinKind.FREE_ENERGY, MellinKind.OCCUPATION):
        if s <= 1.0:
            raise DomainError(f"{kind.value} Mellin check needs s > 1, got {s}")
    elif kind is MellinKind.ENERGY:
        if s <= 2.0:
            raise DomainError(f"energy Mellin check needs s > 2, got {s}")
    else:
        raise DomainError(f"unknown Mellin kind {kind!r}")

    base = {MellinKind.FREE_ENERGY: neg_log_partition,
            MellinKind.OCCUPATION: occupation_integrand,
            MellinKind.ENERGY: energy_series_integrand}[kind]

    def fx(x: float) -> float:
        return base(x, policy) * x ** (s - 1.0)

    def tail(u: float) -> float:
        if u <= 0.0:
            return 0.0
        return base(1.0 / u, policy) * u ** (-s - 1.0)

    c = LOWFREQ_SWITCH
    head = _mellin_head(kind, s, c)
    rel = max(policy.rel_tol, 1e-11)
    mid, _ = integrate.quad(fx, c, 1.0, epsabs=1e-15, epsrel=rel, limit=200)
    top, _ = integrate.quad(tail, 0.0, 1.0, epsabs=1e-15, epsrel=rel, limit=200)

    if kind is MellinKind.FREE_ENERGY:
        closed = gamma_fn(s, policy) * riemann_zeta(s, policy) * riemann_zeta(s + 1.0, policy)
    elif kind is MellinKind.OCCUPATION:
        closed = gamma_fn(s, policy) * riemann_zeta(s, policy) ** 2
    else:
        closed = gamma_fn(s, policy) * riemann_zeta(s, policy) * riemann_zeta(s - 1.0, policy)
    return head + mid + top, closed
