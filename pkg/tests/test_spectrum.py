import math

import mpmath as mp
import numpy as np
import pytest

import oracles
from hyperdecay import (
    ModelSpec,
    SpectrumEval,
    acvf,
    acvf_constant_from_sdf,
    acvf_from_sdf,
    asymptotic_constant,
    origin_constant,
    sdf,
)
from hyperdecay.errors import DomainError
from hyperdecay.spectrum import frequency_grid, kolmogorov_variance


def test_fracnoise_density():
    lam = np.array([0.01, 1.0, math.pi])
    expected = (2 * np.sin(lam / 2)) ** (-0.6) / (2 * math.pi)
    np.testing.assert_allclose(sdf(ModelSpec.fracnoise(0.3), lam), expected, rtol=1e-15)


def test_farma_density():
    spec = ModelSpec.farma(0.1, ar=[0.5], ma=[0.2], sigma2=2.0)
    lam = 0.7
    z = complex(math.cos(lam), -math.sin(lam))
    expected = 2.0 / (2 * math.pi) * abs(1 - 0.2 * z) ** 2 / abs(1 - 0.5 * z) ** 2 * (2 * math.sin(lam / 2)) ** -0.2
    assert sdf(spec, lam) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("h", [0.2, 0.5, 0.8])
def test_fgn_density_against_series(h):
    def ref(lam):
        lam = mp.mpf(lam)
        s = 2 * mp.mpf(h) + 1
        a = lam / (2 * mp.pi)
        tail = lam ** (-s) + (2 * mp.pi) ** (-s) * (mp.zeta(s, 1 + a) + mp.zeta(s, 1 - a))
        return mp.sin(mp.pi * h) * mp.gamma(2 * h + 1) / (2 * mp.pi) * 4 * mp.sin(lam / 2) ** 2 * tail

    for lam in (1e-3, 0.5, 3.0):
        assert sdf(ModelSpec.fgn(h), lam) == pytest.approx(float(ref(lam)), rel=1e-12)
    # H = 1/2 is white noise.
    if h == 0.5:
        assert sdf(ModelSpec.fgn(h), 1.3) == pytest.approx(1 / (2 * math.pi), rel=1e-12)


def test_domain():
    with pytest.raises(DomainError):
        sdf(ModelSpec.fracnoise(0.1), 0.0)
    with pytest.raises(DomainError):
        sdf(ModelSpec.fracnoise(0.1), [1.0, 4.0])


def test_grids():
    g = frequency_grid("log", 5, 1e-4)
    assert g[0] == pytest.approx(1e-4) and g[-1] == pytest.approx(math.pi)
    lin = frequency_grid("linear", 4)
    assert lin[0] > 0 and lin[-1] == pytest.approx(math.pi)


@pytest.mark.parametrize("spec", [ModelSpec.fracnoise(0.3), ModelSpec.farma(-0.2, ar=[0.4]), ModelSpec.fgn(0.75)])
def test_origin_behaviour(spec):
    ev = SpectrumEval.of(spec)
    lam = 1e-7
    assert ev(lam) / (ev.c_f * lam ** ev.origin_exponent) == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("spec", [
    ModelSpec.fracnoise(0.4), ModelSpec.fracnoise(-0.4),
    ModelSpec.farma(0.3, ar=[0.5]), ModelSpec.farma(-0.1, ma=[0.6]), ModelSpec.fgn(0.85),
])
def test_inversion_round_trip(spec):
    g = acvf(spec, 30).values
    for k in (0, 1, 5, 30):
        assert acvf_from_sdf(spec, k, tol=1e-9) == pytest.approx(g[k], abs=1e-9)


@pytest.mark.parametrize("d", [-0.45, -0.3, -0.1])
def test_constant_from_density_matches_closed_form(d):
    spec = ModelSpec.fracnoise(d)
    c_f, _ = origin_constant(spec)
    assert acvf_constant_from_sdf(1 - 2 * d, c_f) == pytest.approx(asymptotic_constant(spec), rel=1e-12)


def test_constant_from_density_domain():
    with pytest.raises(DomainError):
        acvf_constant_from_sdf(0.5, 1.0)


def test_kolmogorov():
    assert kolmogorov_variance(ModelSpec.farma(0.2, ar=[0.5], ma=[0.3], sigma2=1.5)) == pytest.approx(1.5, rel=1e-10)
    assert kolmogorov_variance(ModelSpec.fgn(0.5)) == pytest.approx(1.0, rel=1e-10)
