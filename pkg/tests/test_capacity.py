import math

import numpy as np
import pytest

from lsmimo_secrecy.capacity import (
    closed_form_csoc,
    csoc_derivative,
    csoc_terms,
    max_csoc,
    max_csoc_two_log,
    optimal_power,
    optimal_power_from_params,
    positivity,
    saturation_ceiling,
    stationary_points,
    uncorrected_large_array_csoc,
)
from lsmimo_secrecy.errors import DegenerateSourceError, InfeasibleSecrecyError
from lsmimo_secrecy.system_model import DerivedParams, derive_params

# Frozen from tests/_oracle.py (40-digit mpmath)
R_L_REF = 0.05116855762208990409
P_STAR_REF = 1.554078462886098009
CSOC_AT_1_5541 = 39317.77307038555906
CSOC_MAX_REF = 39317.77307066407117
CEILING_REF = 42885.98623629952984
CSOC_MAX_PS_1E8 = 42884.77596725748659
NEGATIVE_R_L_1_2 = {0.1: -2362.180083063652, 1: -2367.814207401274,
                    10: -1322.490788343290, 100: -242.4283757250743}

REF = DerivedParams(a=90.0, b=1000.0, r_l=R_L_REF)
W = 1.0e4


class TestClosedForm:
    def test_reference_value(self):
        assert closed_form_csoc(REF, W, 1.5541) == pytest.approx(CSOC_AT_1_5541, rel=1e-13)

    @pytest.mark.parametrize("a,b,p", [(90, 1000, 1.0), (3, 0.5, 100.0), (1e3, 1e6, 1e-3)])
    def test_r_l_one_is_zero(self, a, b, p):
        assert closed_form_csoc(DerivedParams(a, b, 1.0), W, p) == 0.0

    def test_zero_power_is_zero(self):
        assert closed_form_csoc(REF, W, 0.0) == 0.0

    def test_extended_precision_input(self):
        value = closed_form_csoc(REF, W, np.longdouble(1.5541))
        assert isinstance(value, np.longdouble)
        assert float(value) == pytest.approx(CSOC_AT_1_5541, rel=1e-14)

    def test_array_input(self):
        p = np.array([0.0, 1.5541, 10.0])
        out = closed_form_csoc(REF, W, p)
        assert out.shape == (3,)
        assert out[1] == pytest.approx(CSOC_AT_1_5541, rel=1e-13)

    def test_matches_literal_two_log_form(self, feasible_sets):
        for params in feasible_sets:
            d = derive_params(params)
            for p in optimal_power(d) * np.array([1e-3, 0.3, 1.0, 5.0, 1e3]):
                c_d, c_e = csoc_terms(d, params.w, p)
                assert closed_form_csoc(d, params.w, p) == pytest.approx(
                    c_d - c_e, rel=1e-9, abs=1e-12 * c_d)

    def test_positivity_examples(self):
        assert positivity(DerivedParams(1, 1, 0.5))
        assert not positivity(DerivedParams(1, 1, 1.0))
        assert not positivity(DerivedParams(1, 1, 1.2))

    @pytest.mark.parametrize("p", [0.1, 1, 10, 100])
    def test_negative_beyond_unit_r_l(self, p):
        d = DerivedParams(90.0, 1000.0, 1.2)
        value = closed_form_csoc(d, W, p)
        assert value < 0
        assert value == pytest.approx(NEGATIVE_R_L_1_2[p], rel=1e-12)

    def test_positive_everywhere_when_feasible(self, feasible_sets):
        for params in feasible_sets[:50]:
            d = derive_params(params)
            grid = optimal_power(d) * np.logspace(-8, 8, 200)
            assert np.all(closed_form_csoc(d, params.w, grid) > 0)

    def test_boundary_vanishing(self, feasible_sets):
        for params in feasible_sets:
            d = derive_params(params)
            p_star = optimal_power(d)
            assert abs(closed_form_csoc(d, params.w, 1e-9 * p_star)) < 1e-3 * params.w
            assert abs(closed_form_csoc(d, params.w, 1e9 * p_star)) < 1e-3 * params.w


class TestDerivative:
    def test_zero_at_optimum(self, feasible_sets):
        for params in feasible_sets:
            d = derive_params(params)
            p_star = optimal_power(d)
            scale = params.w / math.log(2) * d.b * (d.b + 1) * d.a / (
                (p_star * d.a + d.b + 1) ** 2 + p_star * d.a * d.b * (p_star * d.a + d.b + 1))
            assert abs(csoc_derivative(d, params.w, p_star)) <= 1e-9 * scale

    def test_sign_around_optimum(self, feasible_sets):
        for params in feasible_sets:
            d = derive_params(params)
            p_star = optimal_power(d)
            assert csoc_derivative(d, params.w, p_star / 2) > 0
            assert csoc_derivative(d, params.w, p_star * 2) < 0

    def test_matches_central_difference(self, feasible_sets):
        rng = np.random.default_rng(99)
        for params in feasible_sets[:100]:
            d = derive_params(params)
            p_star = optimal_power(d)
            # Keep away from the stationary point, where the derivative itself is ~0
            # and a relative comparison is meaningless.
            while True:
                log_ratio = rng.uniform(math.log(1e-3), math.log(1e3))
                if abs(log_ratio) > 0.05:
                    break
            p = p_star * math.exp(log_ratio)
            h = 1e-6 * p
            fd = (closed_form_csoc(d, params.w, p + h) - closed_form_csoc(d, params.w, p - h)) / (2 * h)
            assert csoc_derivative(d, params.w, p) == pytest.approx(fd, rel=1e-6)

    def test_negative_root_is_rejected(self, feasible_sets):
        for params in feasible_sets:
            pos, neg = stationary_points(derive_params(params))
            assert neg < 0 < pos and neg == -pos


class TestOptimalPower:
    def test_reference(self):
        assert optimal_power(REF) == pytest.approx(P_STAR_REF, rel=1e-13)

    def test_quadrupled_noise_term_doubles_power(self):
        # B + 1 -> 4(B + 1)
        scaled = DerivedParams(REF.a, 4 * (REF.b + 1) - 1, REF.r_l)
        assert optimal_power(scaled) == pytest.approx(2 * optimal_power(REF), rel=1e-13)

    def test_two_forms_agree(self, feasible_sets):
        for params in feasible_sets:
            p1 = optimal_power(derive_params(params))
            p2 = optimal_power_from_params(params)
            assert abs(p1 - p2) <= 1e-12 * p1

    def test_increasing_in_epsilon(self, reference):
        powers = [optimal_power(derive_params(reference.replace(epsilon=e)))
                  for e in (0.001, 0.01, 0.05, 0.1)]
        assert np.all(np.diff(powers) > 0)

    @pytest.mark.parametrize("r_l", [1.0, 1.5])
    def test_infeasible(self, r_l):
        with pytest.raises(InfeasibleSecrecyError):
            optimal_power(DerivedParams(90.0, 1000.0, r_l))

    def test_zero_source_power(self):
        with pytest.raises(DegenerateSourceError):
            optimal_power(DerivedParams(90.0, 0.0, 0.2))


class TestMaxCapacity:
    def test_reference(self, reference):
        res = max_csoc(reference)
        assert res.p_r_star == pytest.approx(P_STAR_REF, rel=1e-13)
        assert res.c_soc_max == pytest.approx(CSOC_MAX_REF, rel=1e-12)
        assert res.ceiling == pytest.approx(CEILING_REF, rel=1e-13)
        assert 0 < res.c_soc_max < res.ceiling

    def test_two_log_cross_check(self, feasible_sets):
        for params in feasible_sets:
            res = max_csoc(params)
            assert max_csoc_two_log(derive_params(params), params.w) == pytest.approx(
                res.c_soc_max, rel=1e-9)
            assert res.c_soc_max < res.ceiling

    def test_decreasing_in_eavesdropper_path_loss(self, reference):
        values = [max_csoc(reference.replace(alpha_re=a)).c_soc_max for a in (1, 2, 3, 4)]
        assert np.all(np.diff(values) < 0)

    def test_infeasible_reports_antenna_bound(self, reference):
        with pytest.raises(InfeasibleSecrecyError) as info:
            max_csoc(reference.replace(n_r=5))
        assert info.value.threshold == pytest.approx(5.116855762208990, rel=1e-12)
        assert "5.117" in str(info.value)


class TestCeiling:
    def test_examples(self):
        assert saturation_ceiling(DerivedParams(1, 1, 0.5), 1.0) == pytest.approx(1.0, rel=1e-15)
        assert saturation_ceiling(DerivedParams(1, 1, 1 - 1e-12), 1.0) == pytest.approx(0.0, abs=1e-11)
        assert saturation_ceiling(REF, W) == pytest.approx(CEILING_REF, rel=1e-13)

    def test_infeasible(self):
        with pytest.raises(InfeasibleSecrecyError):
            saturation_ceiling(DerivedParams(1, 1, 1.0), 1.0)

    def test_large_source_power_reaches_ceiling(self, reference):
        res = max_csoc(reference.replace(p_s=1e8))
        assert res.c_soc_max == pytest.approx(CSOC_MAX_PS_1E8, rel=1e-10)
        assert res.c_soc_max >= 0.99 * res.ceiling

    def test_reciprocal_form_of_maximum(self, feasible_sets):
        # max capacity written in 1/B: W log2(1 + 1/(1/B + sqrt(r(1/B + 1/B^2)))) - (r -> 1/r)
        for params in feasible_sets[:50]:
            d = derive_params(params)
            u = 1 / d.b + 1 / d.b ** 2
            alt = params.w * (math.log2(1 + 1 / (1 / d.b + math.sqrt(d.r_l * u)))
                              - math.log2(1 + 1 / (1 / d.b + math.sqrt(u / d.r_l))))
            assert max_csoc(params).c_soc_max == pytest.approx(alt, rel=1e-8)


class TestMonotonicity:
    GRIDS = {
        "p_s": [0.1, 1, 10, 100, 1e3, 1e4, 1e5],
        "alpha_sr": [0.1, 0.3, 1, 2, 5, 10, 30],
        "alpha_rd": [0.5, 0.8, 1, 2, 4, 8, 16],
        "alpha_re": [0.25, 0.5, 1, 1.5, 2, 3, 4],
        "epsilon": [0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2],
        "rho": [0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
        "n_r": [50, 64, 100, 128, 256, 512, 1024],
    }
    POWER = {"p_s": 1, "alpha_sr": 1, "epsilon": 1, "rho": -1, "alpha_rd": -1, "alpha_re": -1}
    CAPACITY = {"p_s": 1, "alpha_sr": 1, "alpha_rd": 1, "epsilon": 1, "n_r": 1, "rho": 1, "alpha_re": -1}

    @pytest.mark.parametrize("name,direction", sorted(POWER.items()))
    def test_optimal_power(self, reference, name, direction):
        vals = [max_csoc(reference.replace(**{name: v})).p_r_star for v in self.GRIDS[name]]
        assert np.all(direction * np.diff(vals) > 0)

    @pytest.mark.parametrize("name,direction", sorted(CAPACITY.items()))
    def test_max_capacity(self, reference, name, direction):
        vals = [max_csoc(reference.replace(**{name: v})).c_soc_max for v in self.GRIDS[name]]
        assert np.all(direction * np.diff(vals) > 0)


class TestUncorrectedForm:
    def test_legitimate_term_agrees_but_total_differs(self, reference):
        d = derive_params(reference)
        p = 1.5541
        c_d, _ = csoc_terms(d, reference.w, p)
        legit_only = reference.w * math.log2(
            1 + p * 90 * 1000 / (p * 90 + 1000 + 1))
        assert c_d == pytest.approx(legit_only, rel=1e-14)
        assert uncorrected_large_array_csoc(reference, p) != pytest.approx(
            closed_form_csoc(d, reference.w, p), rel=1e-3)
