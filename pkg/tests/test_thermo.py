import math
import time

import numpy as np
import pytest

from eulergas.errors import DomainError, PrecisionError
from eulergas.thermo import (MellinKind, PlanckVariant, entropy,
                             entropy_lowfreq, free_energy,
                             free_energy_log_form, free_energy_lowfreq,
                             internal_energy, internal_energy_bose,
                             internal_energy_lowfreq, mellin_check,
                             occupation, occupation_bose, occupation_lowfreq,
                             per_mode_energy_fluctuation, planck_factor,
                             thermo_per_mode)

X_GRID = np.geomspace(1e-3, 20.0, 50)


# ---------------------------------------------------------------------------
# dual routes and the thermodynamic identity
# ---------------------------------------------------------------------------

def test_dual_route_agreement_on_grid():
    for x in X_GRID:
        x = float(x)
        f_sigma, f_log = free_energy(x), free_energy_log_form(x)
        assert abs(f_sigma - f_log) <= 1e-12 * max(abs(f_sigma), 1e-30)
        n_sigma, n_bose = occupation(x), occupation_bose(x)
        assert abs(n_sigma - n_bose) <= 1e-12 * max(abs(n_sigma), 1e-30)
        e_sigma, e_bose = internal_energy(x), internal_energy_bose(x)
        assert abs(e_sigma - e_bose) <= 1e-12 * max(abs(e_sigma), 1e-30)


def test_identity_s_equals_e_minus_f_on_grid():
    for x in X_GRID:
        x = float(x)
        tm = thermo_per_mode(x)
        assert tm.s_over_k == tm.e_over_kT - tm.f_over_kT  # by construction
        s_series = entropy(x)
        assert abs(s_series - tm.s_over_k) <= 1e-12 * max(abs(s_series), 1.0)


def test_per_mode_fields_are_positive_where_required():
    for x in (0.01, 0.5, 3.0):
        tm = thermo_per_mode(x)
        assert tm.n_occ > 0.0 and tm.e_over_kT > 0.0
        assert tm.f_over_kT < 0.0
        assert tm.terms_used > 0 and tm.tail_bound >= 0.0


# ---------------------------------------------------------------------------
# low-frequency forms and their error envelopes
# ---------------------------------------------------------------------------

def dual_scale_f_error(x):
    # exact gap: F_exact - F_lowfreq = sum_l ln(1 - e^{-4 pi^2 l / x})
    q = math.exp(-4.0 * math.pi ** 2 / x)
    return math.fsum(math.log1p(-q ** l) for l in range(1, 40))


def dual_scale_e_error(x):
    # exact gap from x * d/dx of the free-energy error term:
    # E_exact - E_lowfreq = -(4 pi^2 / x) sum sigma_1(m) e^{-4pi^2 m/x}
    from eulergas.arith import sigma_table
    _, s1 = sigma_table(64)
    q = math.exp(-4.0 * math.pi ** 2 / x)
    return -(4.0 * math.pi ** 2 / x) * math.fsum(s1[m] * q ** m for m in range(1, 40))


def test_free_energy_lowfreq_formula_literal():
    x = 0.1
    inline = -math.pi ** 2 / 0.6 - 0.5 * math.log(0.1 / (2 * math.pi)) + 0.1 / 24
    assert free_energy_lowfreq(x) == pytest.approx(inline, rel=1e-15)


@pytest.mark.parametrize("x", [2.0, 3.0, 5.0])
def test_free_energy_gap_equals_dual_scale_error(x):
    gap = free_energy(x) - free_energy_lowfreq(x)
    assert abs(gap - dual_scale_f_error(x)) <= 1e-12 * abs(free_energy(x)) + 1e-15


def test_free_energy_gap_below_rounding_at_x_1():
    # the true gap at x = 1 is ~7e-18, unresolvable in doubles; the observed
    # difference is pure rounding noise
    assert abs(free_energy(1.0) - free_energy_lowfreq(1.0)) < 5e-15


def test_free_energy_gap_shrinks_toward_small_x():
    gaps = [abs(free_energy(x) - free_energy_lowfreq(x))
            for x in (5.0, 3.0, 2.0, 1.5)]
    assert gaps[0] > gaps[1] > gaps[2] > gaps[3]


@pytest.mark.parametrize("x", [2.0, 3.0, 5.0])
def test_internal_energy_gap_equals_dual_scale_error(x):
    gap = internal_energy(x) - internal_energy_lowfreq(x)
    want = dual_scale_e_error(x)
    assert abs(gap - want) <= 1e-10 * max(abs(want), 1e-12) + 1e-14


@pytest.mark.parametrize("x", [2.0, 3.0])
def test_entropy_gap_equals_dual_scale_error(x):
    gap = entropy(x) - entropy_lowfreq(x)
    want = dual_scale_e_error(x) - dual_scale_f_error(x)
    assert abs(gap - want) <= 1e-10 * max(abs(want), 1e-12) + 1e-13


def test_occupation_lowfreq_value_and_gap():
    # closed form at x = 0.01: (4.60517 + 0.57722)/0.01
    lf = occupation_lowfreq(0.01)
    assert lf == pytest.approx((-math.log(0.01) + 0.5772156649015329) / 0.01,
                               rel=1e-12)
    assert lf == pytest.approx(518.24, abs=0.01)
    exact = occupation(0.01)
    assert abs(exact - lf) / exact < 0.02


def test_occupation_relative_gap_shrinks_toward_small_x():
    rels = [abs(occupation(x) - occupation_lowfreq(x)) / occupation(x)
            for x in (1.0, 0.3, 0.1, 0.03, 0.01)]
    assert all(a > b for a, b in zip(rels, rels[1:]))


def test_internal_energy_value_at_one():
    # series against the closed form; the dual-scale gap there is ~3e-16
    inline = math.pi ** 2 / 6.0 - 0.5 + 1.0 / 24.0
    assert internal_energy_lowfreq(1.0) == pytest.approx(inline, rel=1e-15)
    assert inline == pytest.approx(1.1866, abs=1e-4)
    assert abs(internal_energy(1.0) - inline) <= 1e-10


def test_internal_energy_lowfreq_at_tenth():
    inline = math.pi ** 2 / 0.6 - 0.5 + 0.1 / 24.0
    assert internal_energy_lowfreq(0.1) == pytest.approx(inline, rel=1e-15)
    assert inline == pytest.approx(15.953, abs=1e-3)


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

def test_high_frequency_single_term_limits():
    x = 30.0
    assert abs(free_energy(x) / (-math.exp(-x)) - 1.0) < 1e-11
    assert abs(occupation(x) / math.exp(-x) - 1.0) < 1e-11
    assert abs(internal_energy(x) / (x * math.exp(-x)) - 1.0) < 1e-11
    assert abs(entropy(x) / ((x + 1.0) * math.exp(-x)) - 1.0) < 1e-11
    assert abs(per_mode_energy_fluctuation(x) / (x * x * math.exp(-x)) - 1.0) < 1e-11


def test_occupation_example_at_five():
    # direct Bose summation oracle
    direct = math.fsum(1.0 / math.expm1(5.0 * n) for n in range(1, 40))
    got = occupation(5.0)
    assert abs(got - direct) <= 1e-14
    # the first term alone is 6.7379e-3; the full sum sits 9.1e-5 above it
    assert got == pytest.approx(6.7379e-3, abs=1e-4)


def test_asymptotic_balance_at_small_x():
    # E ~ -F and S ~ 2E as x -> 0, with the misfit shrinking
    for x, tol in ((0.01, 0.05), (0.001, 0.02)):
        f, e, s = free_energy(x), internal_energy(x), entropy(x)
        assert abs(e + f) / abs(e) < tol
        assert abs(s - 2.0 * e) / abs(s) < tol


def test_crossover_to_planck_at_high_frequency():
    for x in (15.0, 18.0, 20.0):
        gap = internal_energy(x) - planck_factor(x, PlanckVariant.PLANCK)
        n2 = 2.0 * x * math.exp(-2.0 * x)
        assert abs(gap - n2) <= 1e-6 * x * math.exp(-x)


# ---------------------------------------------------------------------------
# fluctuation
# ---------------------------------------------------------------------------

def test_fluctuation_matches_temperature_derivative():
    # epsilon^2/(kT)^2 = d/dT [T * e(1/T)] at T = 1/x in h*nu/k = 1 units
    for x in (0.5, 1.0, 2.0):
        t0 = 1.0 / x
        h = 1e-5 * t0

        def phi(t):
            return t * internal_energy(1.0 / t)

        fd = (phi(t0 + h) - phi(t0 - h)) / (2.0 * h)
        got = per_mode_energy_fluctuation(x)
        assert abs(got - fd) <= 1e-6 * abs(fd)


def test_fluctuation_monotone_on_sampled_grid():
    values = [per_mode_energy_fluctuation(x) for x in (0.1, 0.5, 1.0, 2.0)]
    assert all(v > 0 for v in values)
    assert all(a > b for a, b in zip(values, values[1:]))


# ---------------------------------------------------------------------------
# conventional comparators
# ---------------------------------------------------------------------------

def test_planck_factor_values():
    assert abs(planck_factor(1e-9, PlanckVariant.PLANCK) - 1.0) <= 1e-9
    assert planck_factor(1.0, PlanckVariant.PLANCK) == pytest.approx(
        1.0 / (math.e - 1.0), rel=1e-14)
    want = 2.0 * math.cosh(1.0) / math.sinh(1.0)
    assert planck_factor(2.0, PlanckVariant.ZERO_POINT) == pytest.approx(
        want, rel=1e-14)


def test_zero_point_identity():
    # x*coth(x/2) = x + 2*x/(e^x - 1) exactly
    for x in (0.1, 1.0, 5.0, 20.0):
        zp = planck_factor(x, PlanckVariant.ZERO_POINT)
        assert zp == pytest.approx(x + 2.0 * planck_factor(x, PlanckVariant.PLANCK),
                                   rel=1e-13)


def test_planck_factor_domain():
    with pytest.raises(DomainError):
        planck_factor(0.0, PlanckVariant.PLANCK)


# ---------------------------------------------------------------------------
# Mellin checks
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("s,kind", [
    (2.0, MellinKind.FREE_ENERGY),
    (2.0, MellinKind.OCCUPATION),
    (3.0, MellinKind.ENERGY),
])
def test_mellin_integral_matches_closed_form(s, kind):
    start = time.monotonic()
    integral, closed = mellin_check(s, kind)
    elapsed = time.monotonic() - start
    assert abs(integral - closed) <= 1e-6 * abs(closed)
    assert elapsed < 1.0


def test_mellin_reference_values():
    integral, closed = mellin_check(2.0, MellinKind.FREE_ENERGY)
    assert closed == pytest.approx(1.9773, abs=1e-4)
    integral, closed = mellin_check(2.0, MellinKind.OCCUPATION)
    assert closed == pytest.approx(2.7058, abs=1e-4)


def test_mellin_domain_errors():
    with pytest.raises(DomainError):
        mellin_check(1.0, MellinKind.FREE_ENERGY)
    with pytest.raises(DomainError):
        mellin_check(2.0, MellinKind.ENERGY)


# ---------------------------------------------------------------------------
# guards
# ---------------------------------------------------------------------------

def test_small_x_guard_names_threshold():
    with pytest.raises(PrecisionError, match="1e-06"):
        free_energy(1e-7)


def test_domain_errors():
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            internal_energy(bad)
        with pytest.raises(DomainError):
            free_energy_lowfreq(bad)
