import math

import numpy as np
from pytest import approx, mark, raises
from scipy.integrate import quad

from fracfront.errors import DomainError, Unsupported
from fracfront.kernels import (
    BoundEnvelope,
    FracParams,
    cauchy_density,
    classical_solution,
    f_bound,
    gaussian_density,
    higher_order_kernel_1d,
    stable_envelope,
)
from fracfront.logvalue import LogValue


class TestFracParams:
    def test_valid(self):
        p = FracParams(0.5, 1.5, 2)
        assert (p.alpha, p.rho, p.dim) == (0.5, 1.5, 2)

    @mark.parametrize(
        "alpha,rho,dim",
        [(0.0, 1.0, 1), (1.1, 1.0, 1), (0.5, 0.0, 1), (0.5, -1.0, 1), (0.5, 1.0, 0)],
    )
    def test_invalid(self, alpha, rho, dim):
        with raises(DomainError):
            FracParams(alpha, rho, dim)


class TestGaussian:
    def test_closed_form_point(self):
        lv = gaussian_density(1.0, 0.0, 1)
        assert lv.to_float() == approx(1.0 / math.sqrt(4.0 * math.pi), rel=1e-14)

    @mark.parametrize("t,d", [(0.5, 1), (2.0, 1), (1.0, 2), (3.0, 3)])
    def test_unit_mass(self, t, d):
        # Radial integral: surface area of S^{d-1} times r^{d-1} weight.
        area = 2.0 * math.pi ** (0.5 * d) / math.gamma(0.5 * d)
        mass, _ = quad(
            lambda r: area * r ** (d - 1) * gaussian_density(t, r, d).to_float(),
            0.0,
            np.inf,
        )
        assert mass == approx(1.0, rel=1e-9)

    def test_domain_errors(self):
        with raises(DomainError):
            gaussian_density(0.0, 1.0)
        with raises(DomainError):
            gaussian_density(1.0, -1.0)


class TestCauchy:
    def test_closed_form_point(self):
        assert cauchy_density(2.0, 0.0, 1).to_float() == approx(
            1.0 / (2.0 * math.pi), rel=1e-14
        )

    @mark.parametrize("t,d", [(0.5, 1), (1.0, 1), (1.0, 2)])
    def test_unit_mass(self, t, d):
        area = 2.0 * math.pi ** (0.5 * d) / math.gamma(0.5 * d)
        mass, _ = quad(
            lambda r: area * r ** (d - 1) * cauchy_density(t, r, d).to_float(),
            0.0,
            np.inf,
        )
        assert mass == approx(1.0, rel=1e-9)

    def test_huge_radius_stays_finite(self):
        lv = cauchy_density(1.0, 1e200, 1)
        assert lv.sign == 1
        assert lv.log_abs == approx(math.log(1.0 / math.pi) - 2.0 * math.log(1e200))


class TestStableEnvelope:
    def test_order_and_cauchy_bracketing(self):
        # For rho = 1/2 the envelope shape equals the Poisson kernel up to
        # the constant 1/pi, so constants straddling 1/pi must bracket it.
        for t, r in ((0.5, 0.0), (1.0, 2.0), (3.0, 10.0)):
            env = stable_envelope(0.5, t, r, 1, c1=0.31, c2=0.33)
            true = cauchy_density(t, r, 1)
            assert env.lower <= true <= env.upper

    def test_rejects_rho_outside_unit_interval(self):
        with raises(DomainError):
            stable_envelope(1.0, 1.0, 1.0, 1)
        with raises(DomainError):
            stable_envelope(1.5, 1.0, 1.0, 1)

    def test_envelope_ordering_enforced(self):
        with raises(DomainError):
            BoundEnvelope(LogValue.from_float(2.0), LogValue.from_float(1.0))


class TestHigherOrderKernel:
    @mark.parametrize("t", [0.5, 1.0, 4.0])
    @mark.parametrize("x", [0.0, 0.7, 2.0, 5.0])
    def test_rho_one_reduces_to_gaussian(self, t, x):
        k = higher_order_kernel_1d(1.0, t, x)
        g = gaussian_density(t, x, 1)
        assert k.sign == g.sign
        assert k.to_float() == approx(g.to_float(), rel=1e-8)

    def test_sign_change_for_rho_above_one(self):
        signs = {higher_order_kernel_1d(1.5, 1.0, x).sign for x in np.linspace(0, 8, 33)}
        assert 1 in signs and -1 in signs

    def test_self_similar_scaling(self):
        # k(t, x) = t^{-1/(2 rho)} F(t^{-1/(2 rho)} x): compare t = 1 vs 16.
        rho, t = 1.5, 16.0
        scale = t ** (-1.0 / (2.0 * rho))
        for x in (0.5, 1.3, 3.0):
            a = higher_order_kernel_1d(rho, t, x).to_float()
            b = scale * higher_order_kernel_1d(rho, 1.0, scale * x).to_float()
            assert a == approx(b, rel=1e-9, abs=1e-12)

    def test_unit_mass(self):
        mass, _ = quad(
            lambda x: higher_order_kernel_1d(1.5, 1.0, x).to_float(),
            0.0,
            60.0,
            limit=400,
        )
        assert 2.0 * mass == approx(1.0, abs=1e-5)

    def test_domain_errors(self):
        with raises(DomainError):
            higher_order_kernel_1d(0.9, 1.0, 1.0)
        with raises(DomainError):
            higher_order_kernel_1d(1.5, 0.0, 1.0)


class TestFBound:
    def test_domain_errors(self):
        with raises(DomainError):
            f_bound(1.0, 1.0, 2.0, 1.0)
        with raises(DomainError):
            f_bound(1.5, 1.0, 0.5, 1.0)
        with raises(DomainError):
            f_bound(1.5, 1.0, 2.0, 0.0)

    def test_dominates_transform_for_rho_two(self):
        # Fit (k, omega) on |y| <= 3, then verify dominance further out.
        rho = 2.0
        p = 2.0 * rho / (2.0 * rho - 1.0)
        fit_y = np.linspace(0.25, 3.0, 12)
        fit_f = np.array(
            [abs(higher_order_kernel_1d(rho, 1.0, y).to_float()) for y in fit_y]
        )
        # Slope of log|F| against y^p gives omega; intercept gives log K.
        slope, intercept = np.polyfit(fit_y ** p, np.log(fit_f), 1)
        omega = -0.8 * slope
        k_const = max(2.0, 4.0 * math.exp(intercept))
        for y in np.linspace(3.0, 6.0, 13):
            f = abs(higher_order_kernel_1d(rho, 1.0, float(y)).to_float())
            assert f <= f_bound(rho, float(y), k_const, omega)


class TestClassicalSolution:
    def test_gaussian_case_exact(self):
        lv = classical_solution(FracParams(1.0, 1.0, 1), 1.0, 0.0)
        assert lv.log_abs == approx(1.0 - 0.5 * math.log(4.0 * math.pi), abs=1e-14)

    def test_cauchy_case_exact(self):
        lv = classical_solution(FracParams(1.0, 0.5, 1), 1.0, 0.0)
        assert lv.log_abs == approx(1.0 + math.log(1.0 / math.pi), abs=1e-14)

    def test_higher_order_case(self):
        lv = classical_solution(FracParams(1.0, 2.0, 1), 2.0, 1.0)
        want = higher_order_kernel_1d(2.0, 2.0, 1.0)
        assert lv.log_abs == approx(want.log_abs + 2.0, abs=1e-12)

    def test_stable_case_returns_envelope(self):
        out = classical_solution(FracParams(1.0, 0.3, 2), 1.0, 1.0)
        assert isinstance(out, BoundEnvelope)
        assert out.lower <= out.upper

    def test_rejects_fractional_alpha(self):
        with raises(DomainError):
            classical_solution(FracParams(0.5, 1.0, 1), 1.0, 0.0)

    def test_rejects_higher_order_in_higher_dimension(self):
        with raises((DomainError, Unsupported)):
            classical_solution(FracParams(1.0, 1.5, 2), 1.0, 0.0)
