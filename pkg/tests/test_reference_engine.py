"""Tests for the Riemann-Siegel and Euler-Maclaurin reference engines.

Frozen values were computed with mpmath at 50 significant digits
(mp.siegelz / mp.zeta); live-oracle spot checks re-derive a few at run time.
"""

import math

import mpmath
import numpy as np
import pytest

from zsections.errors import ConvergenceError, DomainError
from zsections.reference_engine import (
    HAZARD_COS_EPS,
    RS_ERR_CONST,
    _psi,
    z_euler_maclaurin,
    z_riemann_siegel,
)
from zsections.sections_engine import section
from zsections.special_functions import TWO_PI

# mpmath, 50 digits
ZETA_HALF = -1.4603545088095868128894991525152980124672293310126
Z_100 = 2.6926970566644634749953798286850324206190216376727
Z_412_5 = -1.1982415653385019964726015904350613455779200028923
Z_1000 = 0.99779463752158661398600268518815709241023297073357
Z_3000 = 3.5596854630161092963170767845329033242290271795365


class TestEulerMaclaurin:
    def test_value_at_origin_is_zeta_half(self):
        ref = z_euler_maclaurin(0.0)
        assert abs(ref.z - ZETA_HALF) <= 1e-12
        assert ref.method == "EM_ORACLE"

    def test_frozen_values(self):
        assert abs(z_euler_maclaurin(100.0).z - Z_100) <= 1e-11
        assert abs(z_euler_maclaurin(412.5).z - Z_412_5) <= 1e-10
        assert abs(z_euler_maclaurin(1000.0).z - Z_1000) <= 1e-10
        assert abs(z_euler_maclaurin(3000.0).z - Z_3000) <= 1e-9

    def test_live_oracle_spot_checks(self):
        mpmath.mp.dps = 30
        rng = np.random.default_rng(314159)
        for _ in range(10):
            t = rng.uniform(1.0, 2000.0)
            want = float(mpmath.siegelz(t))
            got = z_euler_maclaurin(t).z
            assert abs(got - want) <= 1e-9, f"EM off at t={t}: {got} vs {want}"

    def test_imaginary_residual_diagnostic(self):
        """The e^{i theta} rotation must land on the real axis."""
        rng = np.random.default_rng(11)
        worst = 0.0
        for t in rng.uniform(1.0, 2000.0, size=100):
            worst = max(worst, z_euler_maclaurin(float(t)).im_residual)
        assert worst <= 1e-8, f"worst imaginary residual {worst:.3e}"

    def test_convergence_guard(self):
        # Minimal term count with a single Bernoulli correction leaves a
        # last term around 1e-3 at t = 3000: the guard must fire.
        with pytest.raises(ConvergenceError):
            z_euler_maclaurin(3000.0, terms=3000, correction_order=1)

    def test_defaults_converge_up_to_5000(self):
        for t in (0.0, 14.13, 500.0, 2718.28, 5000.0):
            ref = z_euler_maclaurin(t)
            assert math.isfinite(ref.z)
            assert ref.err_estimate <= 1e-11, f"loose tail at t={t}: {ref.err_estimate}"

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            z_euler_maclaurin(-3.0)
        with pytest.raises(DomainError):
            z_euler_maclaurin(100.0, terms=49)
        with pytest.raises(DomainError):
            z_euler_maclaurin(1000.0, terms=600)  # below ceil(t)
        with pytest.raises(DomainError):
            z_euler_maclaurin(100.0, correction_order=0)
        with pytest.raises(DomainError):
            z_euler_maclaurin(100.0, correction_order=11)


class TestRiemannSiegel:
    def test_correction_term_at_exact_square_height(self):
        # t = 2 pi 4: p = 0, cutoff 2, correction -(1/sqrt(2)) cos(pi/8).
        t = TWO_PI * 4.0
        ref = z_riemann_siegel(t)
        corr = ref.z - 2.0 * section(t, 2)
        want = -math.cos(math.pi / 8.0) / math.sqrt(2.0)
        assert abs(corr - want) <= 1e-12, f"correction {corr} vs {want}"
        assert not ref.hazard
        assert ref.err_estimate == RS_ERR_CONST * t**-0.75

    def test_frozen_values(self):
        # Measured RS1 agreement is ~0.01 t^(-3/4); assert a 0.5 t^(-3/4)
        # envelope, well inside the documented 10 t^(-3/4) bound.
        assert abs(z_riemann_siegel(100.0).z - Z_100) <= 0.5 * 100.0**-0.75
        assert abs(z_riemann_siegel(1000.0).z - Z_1000) <= 0.5 * 1000.0**-0.75
        assert abs(z_riemann_siegel(3000.0).z - Z_3000) <= 0.5 * 3000.0**-0.75

    def test_cross_method_agreement(self):
        rng = np.random.default_rng(55)
        for t in rng.uniform(50.0, 5000.0, size=40):
            rs = z_riemann_siegel(float(t))
            em = z_euler_maclaurin(float(t))
            bound = RS_ERR_CONST * float(t)**-0.75
            assert abs(rs.z - em.z) <= bound, f"cross-method gap at t={t}"

    def test_correction_sign_flips_with_cutoff_parity(self):
        # Same fractional part p = 0.3 at successive cutoffs: the remainder
        # sign must alternate exactly.
        signs = []
        for n in range(2, 10):
            t = TWO_PI * (n + 0.3) ** 2
            corr = z_riemann_siegel(t).z - 2.0 * section(t, n)
            signs.append(math.copysign(1.0, corr))
        for a, b in zip(signs, signs[1:]):
            assert a == -b, f"parity flip violated: {signs}"

    def test_hazard_flag_near_removable_points(self):
        for base in (0.25, 0.75):
            a = 3.0 + base + 1e-10
            t = TWO_PI * a * a
            ref = z_riemann_siegel(t)
            assert ref.hazard, f"guard did not trigger at p near {base}"
            em = z_euler_maclaurin(t)
            assert abs(ref.z - em.z) <= ref.err_estimate

        assert not z_riemann_siegel(412.5).hazard

    def test_taylor_patch_is_continuous(self):
        # Just outside the guard window the direct quotient must agree with
        # the expansion used inside it.
        for base, orient in ((0.25, +1.0), (0.25, -1.0), (0.75, +1.0), (0.75, -1.0)):
            p = base + orient * 1e-7
            direct, hazard = _psi(p)
            assert not hazard
            d = (p - 0.25) if p < 0.5 else (0.75 - p)
            c0, c1, c2, c3, c4 = 0.5, -1.0, math.pi**2 / 4, -math.pi**2 / 6, \
                5 * math.pi**4 / 48 - math.pi**2
            taylor = c0 + d * (c1 + d * (c2 + d * (c3 + d * c4)))
            assert abs(direct - taylor) <= 1e-8, f"patch seam at p={p}"

    def test_hazard_window_width(self):
        assert _psi(0.25 + 1e-7)[1] is False
        assert _psi(0.25 + 1e-10)[1] is True
        assert HAZARD_COS_EPS == 1e-8

    def test_domain_error_below_two_pi(self):
        with pytest.raises(DomainError):
            z_riemann_siegel(6.0)
