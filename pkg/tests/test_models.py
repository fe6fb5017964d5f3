import json

import pytest
from hypothesis import given, strategies as st

from hyperdecay import ModelKind, ModelSpec, Persistence, decay_class, validate
from hyperdecay.errors import (
    DegenerateMemory,
    NonInvertible,
    NonStationary,
    ParameterOutOfRange,
)
from hyperdecay.models import alpha_of, min_root_modulus


def test_constructors_and_alpha():
    assert alpha_of(ModelSpec.fracnoise(0.3)) == pytest.approx(0.4)
    assert alpha_of(ModelSpec.fgn(0.8)) == pytest.approx(0.4)
    assert ModelSpec.farma(0.1, ar=[0.5], ma=[0.2]).n_params == 4
    assert ModelSpec.fgn(0.7).n_params == 2


def test_polynomial_sign_convention():
    spec = ModelSpec.farma(0.1, ar=[0.5, -0.2], ma=[0.3])
    assert spec.ar_poly.tolist() == [1.0, -0.5, 0.2]
    assert spec.ma_poly.tolist() == [1.0, -0.3]


@pytest.mark.parametrize("d", [0.5, -0.5, 0.7, float("nan")])
def test_rejects_memory_parameter(d):
    with pytest.raises(ParameterOutOfRange):
        validate(ModelSpec.fracnoise(d))


@pytest.mark.parametrize("h", [0.0, 1.0, -0.2])
def test_rejects_hurst(h):
    with pytest.raises(ParameterOutOfRange):
        validate(ModelSpec.fgn(h))


def test_rejects_sigma2():
    with pytest.raises(ParameterOutOfRange):
        validate(ModelSpec.fracnoise(0.1, sigma2=0.0))


def test_root_conditions():
    with pytest.raises(NonStationary):
        validate(ModelSpec.farma(0.1, ar=[1.0]))
    with pytest.raises(NonInvertible):
        validate(ModelSpec.farma(0.1, ma=[-1.2]))
    assert min_root_modulus([1.0, -0.5]) == pytest.approx(2.0)


def test_decay_class_signs():
    assert decay_class(ModelSpec.fracnoise(0.2)).persistence is Persistence.STRONGLY_PERSISTENT
    anti = decay_class(ModelSpec.fracnoise(-0.2))
    assert anti.persistence is Persistence.ANTIPERSISTENT and anti.c_gamma_sign == -1
    assert decay_class(ModelSpec.fgn(0.3)).c_gamma_sign == -1


def test_white_noise_validates_but_has_no_decay_class():
    validate(ModelSpec.fracnoise(0.0))
    validate(ModelSpec.fgn(0.5))
    with pytest.raises(DegenerateMemory):
        decay_class(ModelSpec.fracnoise(0.0))
    with pytest.raises(DegenerateMemory):
        decay_class(ModelSpec.fgn(0.5))


def test_json_keys():
    obj = json.loads(ModelSpec.fgn(0.7, 2.0).to_json())
    assert obj == {"kind": "fgn", "H": 0.7, "sigma2": 2.0}
    obj = json.loads(ModelSpec.farma(0.2, ar=[0.5]).to_json())
    assert obj == {"kind": "farma", "d": 0.2, "ar": [0.5], "ma": [], "sigma2": 1.0}


@pytest.mark.parametrize("text", ['{"d": 0.1}', '{"kind": "arima", "d": 0.1}', '{"kind": "fgn"}', "[1]"])
def test_from_json_rejects_malformed(text):
    with pytest.raises(ValueError):
        ModelSpec.from_json(text)


@given(
    st.floats(-0.49, 0.49),
    st.lists(st.floats(-0.6, 0.6), max_size=2),
    st.lists(st.floats(-0.6, 0.6), max_size=2),
    st.floats(0.01, 100.0),
)
def test_json_round_trip(d, ar, ma, sigma2):
    spec = ModelSpec.farma(d, ar, ma, sigma2)
    back = ModelSpec.from_json(spec.to_json())
    assert back == spec
    assert back.kind is ModelKind.FARMA


def test_root_modulus_with_tiny_coefficient():
    assert min_root_modulus([1.0, -2.2e-311]) == float("inf")
    assert min_root_modulus([1.0, 0.2, -0.3]) == pytest.approx(1.5225881209433403, rel=1e-14)
