import pytest

from gic.errors import NonPositive, NonWeakRegime
from gic.model import (ChannelParams, ExtendedRateVector, PowerSplit,
                       RateVector, make_split, rate_vector, validate_params)


def test_validate_params_accepts_weak_regime():
    cp = validate_params(0.25, 0.5, 2.0, 3.0)
    assert cp == ChannelParams(a=0.25, b=0.5, p1=2.0, p2=3.0, sigma2=1.0)


def test_validate_params_default_sigma2_is_one():
    assert validate_params(0.1, 0.1, 1.0, 1.0).sigma2 == 1.0


def test_interference_free_gains_accepted():
    cp = validate_params(0.0, 0.0, 1.0, 1.0)
    assert cp.a == 0.0 and cp.b == 0.0


@pytest.mark.parametrize("a,b", [(1.0, 0.5), (0.5, 1.0), (1.2, 0.2),
                                 (-0.1, 0.5), (0.5, -0.1)])
def test_validate_params_rejects_non_weak_gains(a, b):
    with pytest.raises(NonWeakRegime):
        validate_params(a, b, 1.0, 1.0)


@pytest.mark.parametrize("p1,p2,s2", [(0.0, 1.0, 1.0), (1.0, -1.0, 1.0),
                                      (1.0, 1.0, 0.0)])
def test_validate_params_rejects_nonpositive(p1, p2, s2):
    with pytest.raises(NonPositive):
        validate_params(0.5, 0.5, p1, p2, s2)


def test_validate_params_never_clamps():
    with pytest.raises(NonWeakRegime):
        validate_params(0.999999999, 1.0, 1.0, 1.0)


def test_make_split_remainder_goes_public():
    cp = validate_params(0.25, 0.25, 2.0, 3.0)
    ps = make_split(cp, 0.5, 1.0)
    assert ps == PowerSplit(pu1=1.5, pv1=0.5, pu2=2.0, pv2=1.0)
    ps.check_budgets(cp)


def test_make_split_rejects_out_of_range_private_power():
    cp = validate_params(0.25, 0.25, 2.0, 2.0)
    with pytest.raises(ValueError):
        make_split(cp, 2.5, 0.0)
    with pytest.raises(ValueError):
        make_split(cp, 0.0, -0.1)


def test_check_budgets_rejects_mismatched_split():
    cp = validate_params(0.25, 0.25, 2.0, 2.0)
    with pytest.raises(ValueError):
        PowerSplit(pu1=1.0, pv1=1.1, pu2=1.0, pv2=1.0).check_budgets(cp)


def test_rate_vector_defaults_to_message_labels():
    r = rate_vector([0.1, 0.2, 0.3, 0.4])
    assert r.labels == ("U1", "V1", "U2", "V2")
    assert r.rate("U2") == 0.3
    assert len(r) == 4


def test_rate_vector_rejects_negative_rates():
    with pytest.raises(ValueError):
        rate_vector([0.1, -0.2])


def test_rate_vector_rejects_duplicate_labels():
    with pytest.raises(ValueError):
        RateVector(labels=("A", "A"), rates=(0.1, 0.2))


def test_rate_vector_rejects_length_mismatch():
    with pytest.raises(ValueError):
        RateVector(labels=("A", "B"), rates=(0.1,))


def test_extended_rate_vector_rejects_negative_dummy():
    base = rate_vector([0.1, 0.1, 0.1, 0.1])
    with pytest.raises(ValueError):
        ExtendedRateVector(base=base, dummy_v2_at_y1=-0.1, dummy_v1_at_y2=0.0)
