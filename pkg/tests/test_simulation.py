import numpy as np
import pytest

from hyperdecay import ModelSpec, SimConfig, acvf, sample_acvf, simulate, simulate_replicates
from hyperdecay.errors import LagTooLarge, MethodCapExceeded, ParameterOutOfRange
from hyperdecay.rng import raw_uint64, standard_normals, uniforms
from hyperdecay.simulation import block_means


def test_rng_stream_properties():
    a = raw_uint64(1, 0, 8)
    assert np.array_equal(a, raw_uint64(1, 0, 8))
    assert not np.array_equal(a, raw_uint64(1, 1, 8))
    assert not np.array_equal(a, raw_uint64(2, 0, 8))
    u = uniforms(3, 0, 100_000)
    assert u.min() > 0 and u.max() < 1
    z = standard_normals(3, 0, 200_000)
    assert abs(z.mean()) < 0.01 and abs(z.var() - 1) < 0.01


def test_rng_uniform_mapping():
    bits = raw_uint64(9, 4, 5)
    expected = ((bits >> np.uint64(11)).astype(float) + 0.5) * 2.0 ** -53
    np.testing.assert_array_equal(uniforms(9, 4, 5), expected)


def test_rng_prefix_consistency():
    long = standard_normals(11, 2, 1000)
    assert np.array_equal(long[:10], standard_normals(11, 2, 10))


def test_methods_agree():
    # Both methods factor Γ(n) triangularly, so they map the same normals to the same path.
    spec = ModelSpec.fracnoise(0.3)
    a = simulate(spec, SimConfig(300, seed=4, method="dl"))
    b = simulate(spec, SimConfig(300, seed=4, method="dense"))
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-10)


def test_bit_exact_per_seed():
    spec = ModelSpec.fgn(0.8)
    a = simulate(spec, SimConfig(500, seed=12))
    assert a.tobytes() == simulate(spec, SimConfig(500, seed=12)).tobytes()
    assert a.tobytes() != simulate(spec, SimConfig(500, seed=13)).tobytes()


def test_replicates_use_consecutive_streams():
    spec = ModelSpec.fracnoise(-0.2)
    reps = simulate_replicates(spec, SimConfig(50, seed=2, stream=3), 3)
    np.testing.assert_array_equal(reps[1], simulate(spec, SimConfig(50, seed=2, stream=4)))
    dense = simulate_replicates(spec, SimConfig(50, seed=2, stream=3, method="dense"), 3)
    np.testing.assert_allclose(dense, reps, atol=1e-11)


def test_config_checks():
    with pytest.raises(MethodCapExceeded):
        SimConfig(5001, method="dense")
    with pytest.raises(ParameterOutOfRange):
        SimConfig(0)
    with pytest.raises(ValueError):
        SimConfig(10, method="fft")


def test_sample_acvf():
    x = np.array([1.0, -2.0, 3.0, 0.5])
    g = sample_acvf(x, 2)
    assert g.tolist() == pytest.approx([(1 + 4 + 9 + 0.25) / 4, (-2 - 6 + 1.5) / 4, (3 - 1) / 4])
    big = np.random.default_rng(0).standard_normal(200_000)
    direct = np.array([big[: big.size - k] @ big[k:] for k in range(31)]) / big.size
    np.testing.assert_allclose(sample_acvf(big, 30), direct, atol=1e-12)
    assert sample_acvf(np.zeros(5), 2).tolist() == [0, 0, 0]
    with pytest.raises(LagTooLarge):
        sample_acvf(x, 4)


def test_block_means():
    assert block_means([1, 2, 3, 4, 5], 2).tolist() == [1.5, 3.5]


def test_sample_variance_matches_theory_dense():
    spec = ModelSpec.farma(0.1, ar=[0.5])
    reps = simulate_replicates(spec, SimConfig(20, seed=1, method="dense"), 4000)
    g0 = acvf(spec, 0).values[0]
    se = g0 * np.sqrt(2 / 4000)
    assert abs(reps[:, 10].var() - g0) < 4 * se
