import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from censmean import (
    CensoredSample,
    DomainError,
    censor,
    km_curve,
    km_mean,
    km_survival_product,
    km_weights,
)

FOUR_POINT = CensoredSample(
    np.array([1.0, 2.0, 3.0, 4.0]), np.array([True, False, True, True])
)


def brute_force_weights(z, delta):
    """Difference the product-over-jumps cdf definition, index by index.

    Independent oracle: recomputes each running product from scratch with
    scalar pow, no recursion reuse.
    """
    n = len(z)

    def prod_upto(m):
        value = 1.0
        for j in range(1, m + 1):
            value *= ((n - j) / (n - j + 1)) ** int(delta[j - 1])
        return value

    return np.array([prod_upto(i - 1) - prod_upto(i) for i in range(1, n + 1)])


def random_censored_sample(rng, n):
    x = rng.pareto(2.0, n) + 1.0
    y = rng.pareto(1.5, n) + 1.0
    return censor(x, y)


class TestKmWeights:
    def test_no_censoring_is_empirical_cdf(self):
        s = CensoredSample(np.arange(1.0, 5.0), np.ones(4, dtype=bool))
        assert km_weights(s).tolist() == [0.25, 0.25, 0.25, 0.25]

    def test_hand_example(self):
        np.testing.assert_allclose(
            km_weights(FOUR_POINT), [0.25, 0.0, 0.375, 0.375], atol=1e-15
        )

    def test_all_censored_gives_zero_mass(self):
        s = CensoredSample(np.arange(1.0, 6.0), np.zeros(5, dtype=bool))
        assert km_weights(s).tolist() == [0.0] * 5

    def test_censored_points_carry_no_mass(self):
        rng = np.random.default_rng(2)
        s = random_censored_sample(rng, 200)
        w = km_weights(s)
        assert np.all(w[~s.delta] == 0.0)
        assert np.all(w >= 0.0)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            n = int(rng.integers(2, 51))
            s = random_censored_sample(rng, n)
            np.testing.assert_allclose(
                km_weights(s), brute_force_weights(s.z, s.delta), atol=1e-12
            )

    def test_total_mass_complements_final_product(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = int(rng.integers(2, 40))
            s = random_censored_sample(rng, n)
            total = km_weights(s).sum()
            final = 1.0
            for j in range(1, n + 1):
                final *= ((n - j) / (n - j + 1)) ** int(s.delta[j - 1])
            assert total == pytest.approx(1.0 - final, abs=1e-12)


class TestKmSurvivalProduct:
    def test_no_censoring_telescopes_exactly(self):
        s = CensoredSample(np.arange(1.0, 11.0), np.ones(10, dtype=bool))
        for m in range(1, 10):
            assert km_survival_product(s, m) == (10 - m) / 10

    def test_hand_example(self):
        assert km_survival_product(FOUR_POINT, 3) == pytest.approx(0.375, abs=1e-15)

    def test_all_censored_is_one(self):
        s = CensoredSample(np.arange(1.0, 6.0), np.zeros(5, dtype=bool))
        for m in range(1, 5):
            assert km_survival_product(s, m) == 1.0

    @pytest.mark.parametrize("m", [0, 4, 5])
    def test_out_of_range(self, m):
        with pytest.raises(DomainError):
            km_survival_product(FOUR_POINT, m)

    def test_log_space_path_agrees(self):
        # long samples switch to a log-space running product
        rng = np.random.default_rng(4)
        n = 10_050
        s = random_censored_sample(rng, n)
        small = CensoredSample(s.z[:5000], s.delta[:5000])
        direct = 1.0
        for j in range(1, 3001):
            direct *= ((n - j) / (n - j + 1)) ** int(s.delta[j - 1])
        assert km_survival_product(s, 3000) == pytest.approx(direct, rel=1e-10)
        assert km_weights(s).shape == (n,)
        assert small.n == 5000


class TestKmMean:
    def test_no_censoring_is_arithmetic_mean(self):
        rng = np.random.default_rng(6)
        z = np.sort(rng.uniform(0.5, 9.0, 31))
        s = CensoredSample(z, np.ones(31, dtype=bool))
        assert km_mean(s) == np.mean(z)

    def test_hand_example(self):
        assert km_mean(FOUR_POINT) == pytest.approx(2.875, abs=1e-15)

    def test_all_censored_warns_and_returns_zero(self):
        s = CensoredSample(np.arange(1.0, 4.0), np.zeros(3, dtype=bool))
        with pytest.warns(RuntimeWarning):
            assert km_mean(s) == 0.0

    @given(c=st.floats(0.01, 100.0), seed=st.integers(0, 1000))
    @settings(max_examples=50, deadline=None)
    def test_scale_equivariance(self, c, seed):
        rng = np.random.default_rng(seed)
        s = random_censored_sample(rng, 25)
        scaled = CensoredSample(c * s.z, s.delta)
        assert km_mean(scaled) == pytest.approx(c * km_mean(s), rel=1e-12)


class TestKmCurve:
    def test_survival_nonincreasing_in_unit_interval(self):
        rng = np.random.default_rng(9)
        s = random_censored_sample(rng, 150)
        curve = km_curve(s)
        assert np.all(np.diff(curve.survival_at_jump) <= 1e-15)
        assert np.all(curve.survival_at_jump >= 0.0)
        assert np.all(curve.survival_at_jump <= 1.0)

    def test_cdf_accumulates_weights_then_jumps_to_one(self):
        rng = np.random.default_rng(12)
        s = random_censored_sample(rng, 60)
        curve = km_curve(s)
        w = km_weights(s)
        mid = 0.5 * (s.z[29] + s.z[30])
        assert curve.cdf_at(mid) == pytest.approx(w[:30].sum(), abs=1e-12)
        assert curve.cdf_at(s.z[-1]) == 1.0
        assert curve.cdf_at(s.z[-1] * 2) == 1.0
        assert curve.cdf_at(s.z[0] * 0.5) == 0.0

    def test_sum_definition_matches_product_definition(self):
        rng = np.random.default_rng(13)
        s = random_censored_sample(rng, 80)
        curve = km_curve(s)
        for m in (1, 10, 40, 79):
            assert curve.survival_at(s.z[m - 1]) == pytest.approx(
                km_survival_product(s, m), abs=1e-12
            )
