import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathloss_fit import (
    FSPL_1M_1GHZ,
    AbgModel,
    CiModel,
    Sample,
    abg_path_loss,
    ci_as_abg,
    ci_path_loss,
    fspl_1m,
)
from pathloss_fit.model import model_from_dict, model_to_dict

freq = st.floats(0.5, 100.0)
dist = st.floats(1.0, 5000.0)
ple = st.floats(-2.0, 8.0)


@pytest.mark.parametrize("f, expected", [(1.0, 32.4478), (2.0, 38.4684), (28.0, 61.3910)])
def test_fspl_1m_examples(f, expected):
    # 28 GHz example in the reference table is the sum of rounded terms
    assert fspl_1m(f) == pytest.approx(expected, abs=1e-4)


def test_fspl_matches_friis_form():
    lam = 299792458.0 / 28e9
    assert fspl_1m(28.0) == pytest.approx(20 * math.log10(4 * math.pi / lam), rel=1e-14)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
def test_fspl_domain_error(bad):
    with pytest.raises(ValueError):
        fspl_1m(bad)


def test_fspl_vectorized():
    out = fspl_1m(np.array([1.0, 2.0]))
    assert out.shape == (2,)
    assert out[1] - out[0] == pytest.approx(20 * math.log10(2), abs=1e-12)


def test_ci_examples():
    assert ci_path_loss(CiModel(3.3), 1.0, 1.0) == pytest.approx(32.4478, abs=5e-5)
    assert ci_path_loss(CiModel(2.67), 28.0, 100.0) == pytest.approx(114.791, abs=5e-4)
    assert ci_path_loss(CiModel(2.0), 2.0, 10.0) == pytest.approx(58.4684, abs=5e-5)


def test_abg_examples():
    paper = AbgModel(2.62, 34.90, 1.90)
    assert abg_path_loss(paper, 1.0, 1.0) == pytest.approx(34.90, abs=1e-12)
    assert abg_path_loss(paper, 10.0, 100.0) == pytest.approx(106.30, abs=1e-9)
    friis = AbgModel(2.0, FSPL_1M_1GHZ, 2.0)
    assert abg_path_loss(friis, 5.6, 321.0) == pytest.approx(fspl_1m(5.6) + 20 * math.log10(321.0), abs=1e-9)


@pytest.mark.parametrize("f, d", [(0.0, 10.0), (1.0, 0.0), (-2.0, 1.0), (1.0, -3.0)])
def test_model_domain_errors(f, d):
    with pytest.raises(ValueError):
        ci_path_loss(CiModel(2.0), f, d)
    with pytest.raises(ValueError):
        abg_path_loss(AbgModel(2.0, 30.0, 2.0), f, d)


def test_ci_as_abg_examples():
    assert ci_as_abg(CiModel(2.0)) == AbgModel(2.0, FSPL_1M_1GHZ, 2.0)
    m = ci_as_abg(CiModel(2.67))
    assert abg_path_loss(m, 28.0, 100.0) == pytest.approx(114.791, abs=5e-4)
    flat = ci_as_abg(CiModel(0.0))
    assert abg_path_loss(flat, 10.0, 5.0) == abg_path_loss(flat, 10.0, 500.0)


@given(freq, ple)
def test_anchor_identity(f, n):
    assert ci_path_loss(CiModel(n), f, 1.0) == fspl_1m(f)


@given(freq)
def test_frequency_squared_law(f):
    assert fspl_1m(2 * f) - fspl_1m(f) == pytest.approx(20 * math.log10(2), rel=1e-12)


@given(freq, dist, ple)
def test_embedding(f, d, n):
    m = CiModel(n)
    assert abs(abg_path_loss(ci_as_abg(m), f, d) - ci_path_loss(m, f, d)) < 1e-9


@given(freq, dist, dist, st.floats(0.1, 6.0))
def test_ci_monotone_in_distance(f, d1, d2, n):
    if d1 == d2:
        return
    lo, hi = sorted((d1, d2))
    assert ci_path_loss(CiModel(n), f, lo) < ci_path_loss(CiModel(n), f, hi)


@given(freq, freq, dist, st.floats(0.1, 4.0))
def test_abg_monotone_in_frequency(f1, f2, d, g):
    if f1 == f2:
        return
    lo, hi = sorted((f1, f2))
    m = AbgModel(2.5, 30.0, g)
    assert abg_path_loss(m, lo, d) < abg_path_loss(m, hi, d)


def test_models_are_callable_and_immutable():
    m = CiModel(2.5)
    assert m(1.0, 10.0) == ci_path_loss(m, 1.0, 10.0)
    with pytest.raises(AttributeError):
        m.ple = 3.0


def test_nonfinite_parameters_rejected():
    with pytest.raises(ValueError):
        CiModel(float("nan"))
    with pytest.raises(ValueError):
        AbgModel(2.0, float("inf"), 2.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(frequency_ghz=0.0, distance_m=1.0, path_loss_db=1.0, environment="a"),
        dict(frequency_ghz=1.0, distance_m=0.0, path_loss_db=1.0, environment="a"),
        dict(frequency_ghz=1.0, distance_m=1.0, path_loss_db=float("nan"), environment="a"),
        dict(frequency_ghz=1.0, distance_m=1.0, path_loss_db=1.0, environment=""),
        dict(frequency_ghz=1.0, distance_m=1.0, path_loss_db=1.0, environment="a", tx_height_class="mid"),
        dict(frequency_ghz=1.0, distance_m=1.0, path_loss_db=1.0, environment="a", link_state="nlos"),
    ],
)
def test_sample_invariants(kwargs):
    with pytest.raises(ValueError):
        Sample(**kwargs)


def test_model_dict_round_trip():
    for m in (CiModel(2.4), AbgModel(2.62, 34.9, 1.9)):
        assert model_from_dict(model_to_dict(m)) == m
    assert model_from_dict({"n": 2.0}) == CiModel(2.0)
    assert model_from_dict({"alpha": 1, "beta": 2, "gamma": 3}) == AbgModel(1.0, 2.0, 3.0)
    with pytest.raises(ValueError):
        model_from_dict({"n": 2.0, "alpha": 1.0})
