"""Evidence-model primitives: separation, ROC geometry, density ratio.

Reference values marked as frozen were produced by the quadrature and
trapezoid oracles in raglight.oracle and pasted here verbatim, so the
fast erfc-based paths are checked against an independently computed
number, not against themselves.
"""

import math

import pytest
from scipy.special import ndtri

from raglight.errors import DegenerateModelError, ValidationError
from raglight.oracle import quadrature_normal_cdf, trapezoid_auc
from raglight.signal_model import (
    DEGENERATE_SEPARATION,
    GaussianSignalModel,
    OperatingPoint,
    auc,
    discriminability,
    likelihood_ratio,
    normal_cdf,
    normal_sf,
    roc_point,
)

SYMMETRIC = GaussianSignalModel(theta0=0.0, theta1=2.0, sigma=1.0)
UNIT = GaussianSignalModel(theta0=0.0, theta1=1.0, sigma=1.0)
COINCIDENT = GaussianSignalModel(theta0=1.0, theta1=1.0, sigma=2.0)


class TestModelValidation:
    def test_sigma_must_be_positive(self):
        with pytest.raises(ValidationError, match="sigma must be positive"):
            GaussianSignalModel(theta0=0.0, theta1=1.0, sigma=0.0)
        with pytest.raises(ValidationError):
            GaussianSignalModel(theta0=0.0, theta1=1.0, sigma=-1.0)

    def test_theta_order_enforced(self):
        with pytest.raises(ValidationError, match="theta1 must be >="):
            GaussianSignalModel(theta0=1.0, theta1=0.0, sigma=1.0)

    def test_nonfinite_fields_rejected(self):
        with pytest.raises(ValidationError):
            GaussianSignalModel(theta0=math.nan, theta1=1.0, sigma=1.0)
        with pytest.raises(ValidationError):
            GaussianSignalModel(theta0=0.0, theta1=math.inf, sigma=1.0)

    def test_integer_fields_coerced_to_float(self):
        model = GaussianSignalModel(theta0=0, theta1=2, sigma=1)
        assert isinstance(model.theta1, float)
        assert discriminability(model) == 2.0


class TestOperatingPointValidation:
    def test_unit_square_enforced(self):
        with pytest.raises(ValidationError, match="fpr"):
            OperatingPoint(fpr=1.2, tpr=0.5)
        with pytest.raises(ValidationError, match="tpr"):
            OperatingPoint(fpr=0.5, tpr=-0.1)

    def test_corners_allowed(self):
        assert OperatingPoint(0.0, 0.0).tpr == 0.0
        assert OperatingPoint(1.0, 1.0).fpr == 1.0

    def test_below_diagonal_allowed(self):
        # fixed external procedures may perform worse than chance
        point = OperatingPoint(fpr=0.9, tpr=0.1)
        assert point.fpr > point.tpr


class TestDiscriminability:
    def test_unit_sigma(self):
        assert discriminability(SYMMETRIC) == 2.0

    def test_sigma_scales(self):
        assert discriminability(GaussianSignalModel(0.0, 3.0, 2.0)) == 1.5

    def test_coincident_is_zero(self):
        assert discriminability(COINCIDENT) == 0.0


class TestNormalCdf:
    def test_zero(self):
        assert normal_cdf(0.0) == 0.5
        assert normal_sf(0.0) == 0.5

    def test_against_quadrature_oracle(self):
        # frozen: quadrature_normal_cdf(1.0), quadrature_normal_cdf(-1.0)
        assert normal_cdf(1.0) == pytest.approx(0.841344746068543, abs=1e-12)
        assert normal_cdf(-1.0) == pytest.approx(0.1586552539314571, abs=1e-12)

    @pytest.mark.parametrize("z", [-8.0, -3.7, -1.0, -0.2, 0.4, 2.3, 5.0, 8.0])
    def test_quadrature_sweep(self, z):
        assert normal_cdf(z) == pytest.approx(quadrature_normal_cdf(z), abs=1e-12)

    @pytest.mark.parametrize("z", [-6.0, -2.5, 0.0, 0.7, 3.14, 6.0])
    def test_sf_mirrors_cdf(self, z):
        assert normal_sf(z) == normal_cdf(-z)

    @pytest.mark.parametrize("z", [-7.0, -1.3, 0.0, 0.9, 4.2])
    def test_complement_near_exact(self, z):
        assert normal_cdf(z) + normal_sf(z) == pytest.approx(1.0, abs=1e-15)

    def test_deep_tail_keeps_relative_precision(self):
        # literal 1 - Phi(30) would be 0; the sf must stay positive
        assert 0.0 < normal_sf(30.0) < 1e-190

    def test_nonfinite_rejected(self):
        with pytest.raises(ValidationError):
            normal_cdf(math.nan)
        with pytest.raises(ValidationError):
            normal_sf(math.inf)


class TestAuc:
    def test_chance_level(self):
        assert auc(COINCIDENT) == 0.5

    def test_unit_separation(self):
        # frozen: trapezoid_auc on d=1 gives 0.7602499380991257 (1e-9 grid bias)
        assert auc(UNIT) == pytest.approx(0.7602499389065233, abs=1e-12)

    @pytest.mark.parametrize(
        "model",
        [UNIT, SYMMETRIC, GaussianSignalModel(-1.0, 0.5, 0.7)],
    )
    def test_against_trapezoid_oracle(self, model):
        assert auc(model) == pytest.approx(trapezoid_auc(model), abs=1e-6)

    def test_trapezoid_oracle_on_coincident(self):
        assert trapezoid_auc(COINCIDENT) == pytest.approx(0.5, abs=1e-6)

    def test_monotone_in_separation(self):
        aucs = [
            auc(GaussianSignalModel(0.0, d, 1.0))
            for d in (0.0, 0.25, 0.5, 1.0, 2.0, 4.0)
        ]
        assert all(a < b for a, b in zip(aucs, aucs[1:]))
        assert aucs[0] == 0.5


class TestRocPoint:
    def test_symmetric_midpoint(self):
        # frozen: quadrature values for Phi(-1) and Phi(1)
        point = roc_point(SYMMETRIC, 1.0)
        assert point.fpr == pytest.approx(0.1586552539314571, abs=1e-12)
        assert point.tpr == pytest.approx(0.841344746068543, abs=1e-12)

    def test_cutoff_at_benign_mean(self):
        assert roc_point(SYMMETRIC, 0.0).fpr == 0.5

    def test_extreme_cutoffs_reach_corners(self):
        low = roc_point(SYMMETRIC, -40.0)
        high = roc_point(SYMMETRIC, 42.0)
        assert low.fpr == pytest.approx(1.0, abs=1e-300)
        assert low.tpr == pytest.approx(1.0, abs=1e-300)
        assert high.fpr == pytest.approx(0.0, abs=1e-300)
        assert high.tpr == pytest.approx(0.0, abs=1e-300)

    def test_curve_above_diagonal(self):
        for cutoff in [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0]:
            point = roc_point(SYMMETRIC, cutoff)
            assert point.tpr > point.fpr

    def test_nonfinite_cutoff_rejected(self):
        with pytest.raises(ValidationError, match="cutoff"):
            roc_point(SYMMETRIC, math.inf)

    def test_affine_rescaling_exact_for_pure_scaling(self):
        # b a power of two and a = 0 keeps every z-score bit-identical
        scaled = GaussianSignalModel(0.0, 8.0, 4.0)
        for cutoff in [-1.0, 0.3, 1.0, 1.7, 2.5]:
            original = roc_point(SYMMETRIC, cutoff)
            moved = roc_point(scaled, 4.0 * cutoff)
            assert moved.fpr == original.fpr
            assert moved.tpr == original.tpr

    def test_affine_rescaling_general(self):
        a, b = 3.7, 0.61
        scaled = GaussianSignalModel(a + b * 0.0, a + b * 2.0, b * 1.0)
        for cutoff in [-1.0, 0.3, 1.0, 1.7, 2.5]:
            original = roc_point(SYMMETRIC, cutoff)
            moved = roc_point(scaled, a + b * cutoff)
            assert moved.fpr == pytest.approx(original.fpr, rel=1e-12, abs=1e-300)
            assert moved.tpr == pytest.approx(original.tpr, rel=1e-12, abs=1e-300)


class TestLikelihoodRatio:
    def test_unity_at_midpoint(self):
        assert likelihood_ratio(SYMMETRIC, 1.0) == 1.0

    def test_value_at_harmful_mean(self):
        # l(theta1) = exp(d^2 / 2)
        assert likelihood_ratio(SYMMETRIC, 2.0) == pytest.approx(
            math.exp(2.0), rel=1e-15
        )

    def test_strictly_increasing(self):
        cutoffs = [i * 0.07 - 3.0 for i in range(100)]
        ratios = [likelihood_ratio(UNIT, c) for c in cutoffs]
        assert all(a < b for a, b in zip(ratios, ratios[1:]))

    def test_overflow_maps_to_inf(self):
        big = likelihood_ratio(GaussianSignalModel(0.0, 100.0, 1.0), 1e6)
        assert big == math.inf

    def test_coincident_model_refused(self):
        with pytest.raises(DegenerateModelError):
            likelihood_ratio(COINCIDENT, 0.0)

    def test_nonfinite_cutoff_rejected(self):
        with pytest.raises(ValidationError):
            likelihood_ratio(UNIT, math.nan)

    def test_slope_matches_density_ratio(self):
        # the ROC tangent slope dtpr/dfpr at a cutoff equals l(cutoff)
        h = 1e-5
        for cutoff in [-1.0, 0.0, 0.7, 1.3, 2.2]:
            hi = roc_point(SYMMETRIC, cutoff + h)
            lo = roc_point(SYMMETRIC, cutoff - h)
            slope = (hi.tpr - lo.tpr) / (hi.fpr - lo.fpr)
            assert slope == pytest.approx(
                likelihood_ratio(SYMMETRIC, cutoff), rel=1e-4
            )


class TestConcavity:
    def test_chord_slopes_decrease(self):
        # sample 1000 increasing fpr values well inside (0, 1)
        fprs = [0.001 + i * (0.998 / 999) for i in range(1000)]
        cutoffs = [-float(ndtri(f)) for f in fprs]  # theta0=0, sigma=1
        points = [roc_point(UNIT, c) for c in cutoffs]
        slopes = []
        for a, b in zip(points, points[1:]):
            slopes.append((b.tpr - a.tpr) / (b.fpr - a.fpr))
        assert all(s1 > s2 for s1, s2 in zip(slopes, slopes[1:]))

    def test_degenerate_threshold_constant(self):
        assert DEGENERATE_SEPARATION == 1e-12
