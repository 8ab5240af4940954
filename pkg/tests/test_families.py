import math

import numpy as np
import pytest
from scipy import stats

from betaline import harness, sampling
from betaline.core import ONE_BELOW, TINY, UniformTriple, UnsupportedParameterError
from betaline.families import (
    BetaShapePair,
    DirichletParams,
    GammaShape,
    NumericError,
    beta_from_parts,
    sample_beta_general,
    sample_dirichlet,
    sample_gamma,
)
from betaline.streams import UniformStream

THREE = sampling.THREE_UNIFORM
N = 2 * 10**5


class TestValidation:
    @pytest.mark.parametrize("c", [0.0, 1.0, 1.5, -0.1])
    def test_gamma_shape(self, c):
        with pytest.raises(UnsupportedParameterError):
            GammaShape(c)

    @pytest.mark.parametrize("scale", [0.0, -1.0, math.inf, math.nan])
    def test_gamma_scale(self, scale):
        with pytest.raises(UnsupportedParameterError):
            GammaShape(0.5, scale)

    def test_beta_pair_outside_family(self):
        with pytest.raises(UnsupportedParameterError, match=r"min\(a, b\) < 1"):
            BetaShapePair(1.5, 2.0)
        with pytest.raises(UnsupportedParameterError):
            BetaShapePair(0.0, 0.5)

    @pytest.mark.parametrize("alphas", [[0.5], [0.5, 1.0], [0.2, -0.1, 0.3]])
    def test_dirichlet_params(self, alphas):
        with pytest.raises(UnsupportedParameterError):
            DirichletParams(alphas)

    def test_dirichlet_block_length(self):
        with pytest.raises(ValueError):
            sample_dirichlet(DirichletParams([0.5, 0.5]), [0.5] * 7)


class TestScalar:
    def test_gamma_is_exponential_times_beta(self):
        u = UniformTriple(0.5, 0.5, 0.5)
        # a = 1/2 and u1 == u2 give B = 1/2
        assert sample_gamma(GammaShape(0.5, 2.0), u, math.exp(-1.0)) == pytest.approx(1.0, rel=1e-15)

    def test_beta_from_parts_reduces_to_v_when_b_sym_is_one(self):
        v = 1 - 0.3 ** (1 / 2.0)
        assert beta_from_parts(ONE_BELOW, 0.3, 2.0) == pytest.approx(v, rel=1e-12)

    def test_beta_from_parts_extremes(self):
        # V -> 1 sends the result to 1; V -> 0 gives about B V
        assert beta_from_parts(0.25, 1e-300, 0.5) == ONE_BELOW
        v = -math.expm1(math.log1p(-1e-10) / 2.0)
        assert beta_from_parts(0.25, 1 - 1e-10, 2.0) == pytest.approx(0.25 * v, rel=1e-9)

    def test_reflection_branch(self):
        u = UniformTriple(0.2, 0.7, 0.4)
        x = sample_beta_general(BetaShapePair(1.5, 0.5), u, 0.6)
        y = sample_beta_general(BetaShapePair(0.5, 1.5), u, 0.6)
        assert x == pytest.approx(1 - y, abs=1e-16)

    def test_dirichlet_sums_to_one(self):
        block = UniformStream(3).uniforms(12).tolist()
        v = sample_dirichlet(DirichletParams([0.2, 0.5, 0.8]), block)
        assert len(v) == 3
        assert math.fsum(v) == pytest.approx(1.0, abs=1e-15)
        assert all(0 < x < 1 for x in v)

    def test_scalar_matches_batch(self):
        u = UniformStream(9, 4).block(50, 4)
        g = sampling.gamma(0.3, 50, 1.5, seed=9, variant=THREE, stream_id=4).values
        b = sampling.beta(0.3, 2.0, 50, seed=9, variant=THREE, stream_id=4).values
        d = sampling.dirichlet([0.3, 0.6], 25, seed=9, variant=THREE, stream_id=4).values
        for i in range(50):
            trip, u4 = UniformTriple(*u[i, :3].tolist()), float(u[i, 3])
            assert g[i] == pytest.approx(sample_gamma(GammaShape(0.3, 1.5), trip, u4), rel=1e-12)
            assert b[i] == pytest.approx(sample_beta_general(BetaShapePair(0.3, 2.0), trip, u4), rel=1e-12)
        for i in range(25):
            row = u[2 * i : 2 * i + 2].ravel().tolist()
            np.testing.assert_allclose(d[i], sample_dirichlet(DirichletParams([0.3, 0.6]), row).components, rtol=1e-12)


@pytest.mark.parametrize("variant", sampling.VARIANTS)
class TestDistributions:
    @pytest.mark.parametrize("c", [0.1, 0.5, 0.9])
    def test_gamma_moments_and_ks(self, variant, c):
        x = sampling.gamma(c, N, seed=17, variant=variant, stream_id=1).values
        z_mean, z_var = harness.mean_variance_z(x, c, c)
        assert abs(z_mean) <= 4 and abs(z_var) <= 4
        assert harness.ks_test(x, lambda t: stats.gamma.cdf(t, c)).passed

    def test_gamma_scale(self, variant):
        x = sampling.gamma(0.4, N, scale=3.0, seed=17, variant=variant, stream_id=2).values
        z_mean, z_var = harness.mean_variance_z(x, 1.2, 3.6)
        assert abs(z_mean) <= 4 and abs(z_var) <= 4

    @pytest.mark.parametrize("a,b", [(0.3, 2.0), (1.5, 0.5), (0.5, 0.5), (0.2, 0.7)])
    def test_beta(self, variant, a, b):
        x = sampling.beta(a, b, N, seed=23, variant=variant, stream_id=3).values
        assert np.all((x >= TINY) & (x <= ONE_BELOW))
        var = a * b / ((a + b) ** 2 * (a + b + 1))
        z_mean, z_var = harness.mean_variance_z(x, a / (a + b), var)
        assert abs(z_mean) <= 4 and abs(z_var) <= 4
        assert harness.ks_test(x, lambda t: stats.beta.cdf(t, a, b)).passed

    def test_dirichlet(self, variant):
        alphas = [0.2, 0.5, 0.8]
        x = sampling.dirichlet(alphas, N, seed=29, variant=variant, stream_id=5).values
        assert x.shape == (N, 3)
        np.testing.assert_allclose(x.sum(axis=1), 1.0, atol=1e-14)
        total = sum(alphas)
        for i, c in enumerate(alphas):
            assert abs(harness.mean_z(x[:, i], c / total)) <= 4
            assert harness.ks_test(x[:, i], lambda t, c=c: stats.beta.cdf(t, c, total - c)).passed


def test_dirichlet_underflow_raises():
    # tiny concentrations make Gamma coordinates underflow to exactly zero
    with pytest.raises(NumericError):
        sampling.dirichlet([1e-3, 1e-3], 10**4, seed=1)


def test_determinism_and_prefix():
    a = sampling.gamma(0.3, 1000, seed=5).values
    b = sampling.gamma(0.3, 100, seed=5).values
    assert np.array_equal(a[:100], b)
    assert np.array_equal(a, sampling.gamma(0.3, 1000, seed=5).values)
