import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special, stats

from censmean import (
    CensoringDesign,
    DegenerateDesignError,
    DomainError,
    Family,
    InfiniteMeanError,
    ModelSpec,
    censoring_quantities,
    gamma2_for,
    pareto_pair_curves,
    quantile,
    sample,
    stute_applicable,
    survival,
    true_mean,
)

GRID_MODELS = [ModelSpec(f, g) for f in Family for g in (0.3, 0.4, 0.5)]


class TestSurvival:
    def test_pareto_power_law(self):
        assert survival(ModelSpec("pareto", 0.5), 4.0) == pytest.approx(4.0**-2, abs=1e-15)

    def test_frechet_limits(self):
        m = ModelSpec("frechet", 0.5)
        assert survival(m, 1e12) == pytest.approx(0.0, abs=1e-5)
        assert survival(m, 0.0) == pytest.approx(1.0, abs=1e-15)
        assert survival(m, 1e-12) == pytest.approx(1.0, abs=1e-15)

    def test_burr_hand_value(self):
        # (1 + 1**4)**(-0.25/0.5) = 2**(-1/2)
        m = ModelSpec("burr", 0.5, eta=0.25)
        assert survival(m, 1.0) == pytest.approx(math.sqrt(0.5), abs=1e-12)

    def test_below_support_rejected(self):
        with pytest.raises(DomainError):
            survival(ModelSpec("pareto", 0.5), 0.5)
        with pytest.raises(DomainError):
            survival(ModelSpec("frechet", 0.5), -0.1)

    @pytest.mark.parametrize("model", GRID_MODELS, ids=str)
    def test_nonincreasing_into_unit_interval(self, model):
        xs = np.linspace(model.lower_support, 50.0, 400)
        values = survival(model, xs)
        assert np.all(values >= 0.0) and np.all(values <= 1.0)
        assert np.all(np.diff(values) <= 1e-15)


class TestQuantile:
    def test_pareto_median(self):
        assert quantile(ModelSpec("pareto", 1.0), 0.5) == pytest.approx(2.0, abs=1e-15)

    def test_frechet_unit_point(self):
        assert quantile(ModelSpec("frechet", 0.5), math.exp(-1)) == pytest.approx(1.0, abs=1e-12)

    def test_burr_round_trip_of_survival_example(self):
        m = ModelSpec("burr", 0.5, eta=0.25)
        u = 1.0 - survival(m, 1.0)
        assert quantile(m, u) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("u", [0.0, 1.0, -0.2, 1.3])
    def test_domain_rejected(self, u):
        with pytest.raises(DomainError):
            quantile(ModelSpec("pareto", 0.5), u)

    @pytest.mark.parametrize("model", GRID_MODELS, ids=str)
    def test_round_trip_on_grid(self, model):
        us = np.linspace(0.001, 0.999, 1000)
        back = 1.0 - survival(model, quantile(model, us))
        assert np.max(np.abs(back - us)) < 1e-12


class _ForcedStream:
    """Stand-in random stream that always yields 0.5."""

    def random(self, n):
        return np.full(n, 0.5)


class TestSample:
    def test_forced_uniform_hits_quantile(self):
        values = sample(ModelSpec("pareto", 1.0), 1, _ForcedStream())
        assert values.tolist() == [2.0]

    def test_size_zero_rejected(self):
        with pytest.raises(DomainError):
            sample(ModelSpec("pareto", 1.0), 0, np.random.default_rng(0))

    def test_frechet_ks_statistic(self):
        m = ModelSpec("frechet", 0.3)
        values = sample(m, 10_000, np.random.default_rng(42))
        result = stats.kstest(values, lambda x: 1.0 - survival(m, x))
        assert result.statistic < 0.02

    def test_frechet_empirical_mean_matches_gamma_function(self):
        m = ModelSpec("frechet", 0.3)
        values = sample(m, 1_000_000, np.random.default_rng(7))
        assert np.mean(values) == pytest.approx(1.298, abs=0.01)

    def test_deterministic_given_stream(self):
        m = ModelSpec("burr", 0.4)
        a = sample(m, 100, np.random.default_rng(3))
        b = sample(m, 100, np.random.default_rng(3))
        np.testing.assert_array_equal(a, b)


class TestTrueMean:
    @pytest.mark.parametrize(
        "family,gamma,expected",
        [
            ("frechet", 0.3, 1.298),
            ("frechet", 0.4, 1.489),
            ("frechet", 0.5, 1.772),
            ("burr", 0.3, 1.228),
            ("burr", 0.4, 1.498),
            ("burr", 0.5, 1.854),
        ],
    )
    def test_reference_values_to_3_decimals(self, family, gamma, expected):
        assert true_mean(ModelSpec(family, gamma, eta=0.25)) == pytest.approx(expected, abs=5e-4)

    def test_pareto_half(self):
        assert true_mean(ModelSpec("pareto", 0.5)) == pytest.approx(2.0, abs=1e-15)

    def test_frechet_is_gamma_function(self):
        assert true_mean(ModelSpec("frechet", 0.4)) == pytest.approx(special.gamma(0.6), abs=1e-14)

    @pytest.mark.parametrize("model", GRID_MODELS, ids=str)
    def test_agrees_with_numeric_integration(self, model):
        # the mean is the integral of the survival function over the support
        tail, _ = integrate.quad(
            lambda x: survival(model, x), model.lower_support, np.inf, limit=200
        )
        exact = true_mean(model)
        assert abs(exact - (tail + model.lower_support)) / exact < 1e-6

    @pytest.mark.parametrize("gamma", [1.0, 1.5])
    def test_infinite_mean_rejected(self, gamma):
        with pytest.raises(InfiniteMeanError):
            true_mean(ModelSpec("pareto", gamma))


class TestCensoringDesign:
    def test_symmetric_design(self):
        p, gamma = censoring_quantities(CensoringDesign(0.5, 0.5))
        assert p == pytest.approx(0.5, abs=1e-15)
        assert gamma == pytest.approx(0.25, abs=1e-15)

    def test_inverse_solve(self):
        assert gamma2_for(0.3, 0.4) == pytest.approx(0.2, abs=1e-15)

    def test_aids_study_values(self):
        p, _ = censoring_quantities(CensoringDesign(0.14, 0.05))
        assert p == pytest.approx(0.263, abs=5e-4)

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_degenerate_p_rejected(self, p):
        with pytest.raises(DegenerateDesignError):
            gamma2_for(0.3, p)

    @given(
        g1=st.floats(0.01, 5.0, allow_nan=False),
        g2=st.floats(0.01, 5.0, allow_nan=False),
    )
    def test_observed_index_below_both(self, g1, g2):
        d = CensoringDesign(g1, g2)
        assert 0.0 < d.p < 1.0
        assert d.gamma < min(g1, g2)


class TestStuteApplicable:
    def test_aids_study_inside_failure_region(self):
        assert stute_applicable(CensoringDesign(0.14, 0.05)) is False

    def test_light_censored_tail_outside(self):
        # 0.5/(1+1) = 0.25 > 0.1
        assert stute_applicable(CensoringDesign(0.1, 0.5)) is True

    def test_near_one_always_inside(self):
        for g2 in (0.01, 0.5, 10.0):
            assert stute_applicable(CensoringDesign(0.99, g2)) is False

    def test_infinite_mean_rejected(self):
        with pytest.raises(InfiniteMeanError):
            stute_applicable(CensoringDesign(1.0, 0.5))

    @given(g2=st.floats(0.05, 3.0), a=st.floats(0.02, 0.97), b=st.floats(0.001, 0.02))
    @settings(max_examples=200)
    def test_monotone_in_gamma1(self, g2, a, b):
        # once the region is entered it is never left as gamma1 grows toward 1
        larger = min(a + b, 0.999)
        if not stute_applicable(CensoringDesign(a, g2)):
            assert not stute_applicable(CensoringDesign(larger, g2))


class TestParetoPairCurves:
    def test_support_edge(self):
        c = pareto_pair_curves(CensoringDesign(1.0, 1.0), 1.0)
        assert c.z_survival == 1.0
        assert c.censored_subcdf == 0.0
        assert c.uncensored_subcdf == 0.0
        assert c.exp_transform == 1.0

    def test_hand_values_at_4(self):
        # gamma = 0.5 so the observed survival is 4**(-2)
        c = pareto_pair_curves(CensoringDesign(1.0, 1.0), 4.0)
        assert c.z_survival == pytest.approx(0.0625, abs=1e-15)
        assert c.censored_subcdf == pytest.approx(0.46875, abs=1e-15)
        assert c.uncensored_subcdf == pytest.approx(0.46875, abs=1e-15)
        assert c.exp_transform == pytest.approx(4.0, abs=1e-15)

    def test_subcdf_ratio_is_index_ratio(self):
        d = CensoringDesign(0.3, 0.7)
        xs = np.linspace(1.01, 100.0, 50)
        c = pareto_pair_curves(d, xs)
        np.testing.assert_allclose(c.censored_subcdf / c.uncensored_subcdf, d.gamma1 / d.gamma2)

    def test_product_law_and_completeness(self):
        d = CensoringDesign(0.4, 0.6)
        xs = np.geomspace(1.0, 1e4, 60)
        c = pareto_pair_curves(d, xs)
        fx = survival(ModelSpec("pareto", d.gamma1), xs)
        gx = survival(ModelSpec("pareto", d.gamma2), xs)
        np.testing.assert_allclose(fx * gx, c.z_survival, atol=1e-14)
        np.testing.assert_allclose(
            c.censored_subcdf + c.uncensored_subcdf, 1.0 - c.z_survival, atol=1e-14
        )

    def test_below_one_rejected(self):
        with pytest.raises(DomainError):
            pareto_pair_curves(CensoringDesign(1.0, 1.0), 0.9)
