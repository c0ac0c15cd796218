import math

import numpy as np
import pytest

from gic.errors import OverlappingSets
from gic.gaussian_mac import (DUMMY_INDEX, HK_LABELS, Y1, Y2,
                              build_overline_mac, dummy_rates, gaussian_rank,
                              hk_mac, mac_sum_rate, received_powers)
from gic.model import make_split, validate_params
from gic.polymatroid import project_above, validate_polymatroid


@pytest.fixture
def instance():
    cp = validate_params(0.3, 0.6, 1.5, 2.5, 1.0)
    ps = make_split(cp, 0.5, 1.0)
    return cp, ps


def test_received_powers_apply_cross_gains(instance):
    cp, ps = instance
    rp1 = received_powers(cp, ps, Y1)
    assert rp1.powers == (1.0, 0.5, 0.3 * 1.5, 0.3 * 1.0)
    rp2 = received_powers(cp, ps, Y2)
    assert rp2.powers == (0.6 * 1.0, 0.6 * 0.5, 1.5, 1.0)
    assert rp1.noise == rp2.noise == 1.0


def test_received_powers_unknown_receiver(instance):
    cp, ps = instance
    with pytest.raises(ValueError):
        received_powers(cp, ps, "Y3")


def test_gaussian_rank_closed_form(instance):
    cp, ps = instance
    rp = received_powers(cp, ps, Y1)
    got = gaussian_rank(rp, (0, 1), (3,))
    want = 0.5 * math.log2(1.0 + 1.5 / (1.0 + 0.3))
    assert got == pytest.approx(want, abs=1e-15)


def test_gaussian_rank_rejects_overlap(instance):
    cp, ps = instance
    rp = received_powers(cp, ps, Y1)
    with pytest.raises(OverlappingSets):
        gaussian_rank(rp, (0, 1), (1, 2))


def test_overline_mac_is_polymatroid(instance):
    cp, ps = instance
    for receiver in (Y1, Y2):
        p = build_overline_mac(cp, ps, receiver)
        assert p.m == 4
        assert validate_polymatroid(p)


def test_overline_mac_full_rank_is_receiver_sum_rate(instance):
    cp, ps = instance
    assert build_overline_mac(cp, ps, Y1).full_rank() == pytest.approx(
        mac_sum_rate(cp, Y1), abs=1e-12)
    assert build_overline_mac(cp, ps, Y2).full_rank() == pytest.approx(
        mac_sum_rate(cp, Y2), abs=1e-12)


def test_dummy_rates_closed_form(instance):
    cp, ps = instance
    d1, d2 = dummy_rates(cp, ps)
    assert d1 == pytest.approx(0.5 * math.log2(1.0 + 0.3 * 1.0), abs=1e-15)
    assert d2 == pytest.approx(0.5 * math.log2(1.0 + 0.6 * 0.5), abs=1e-15)


def test_dummy_rate_equals_bottom_of_stack_rank(instance):
    cp, ps = instance
    d1, d2 = dummy_rates(cp, ps)
    big1 = build_overline_mac(cp, ps, Y1)
    big2 = build_overline_mac(cp, ps, Y2)
    assert d1 == pytest.approx(big1.rank([DUMMY_INDEX[Y1]]), abs=1e-15)
    assert d2 == pytest.approx(big2.rank([DUMMY_INDEX[Y2]]), abs=1e-15)


def test_hk_mac_labels_and_axioms(instance):
    cp, ps = instance
    for receiver in (Y1, Y2):
        p = hk_mac(cp, ps, receiver)
        assert p.labels == HK_LABELS[receiver]
        assert validate_polymatroid(p)


def test_projection_identity_random_instances():
    rng = np.random.default_rng(23)
    for _ in range(50):
        cp = validate_params(float(rng.uniform(0.05, 0.95)),
                             float(rng.uniform(0.05, 0.95)),
                             float(rng.uniform(0.5, 4.0)),
                             float(rng.uniform(0.5, 4.0)))
        ps = make_split(cp, float(rng.uniform(0.0, cp.p1)),
                        float(rng.uniform(0.0, cp.p2)))
        for receiver in (Y1, Y2):
            direct = hk_mac(cp, ps, receiver)
            proj = project_above(build_overline_mac(cp, ps, receiver),
                                 [DUMMY_INDEX[receiver]])
            for mask in range(1, 8):
                assert abs(direct.rank_mask(mask)
                           - proj.rank_mask(mask)) < 1e-12


def test_zero_private_power_makes_hk_mac_interference_free():
    cp = validate_params(0.4, 0.4, 2.0, 2.0)
    ps = make_split(cp, 1.0, 0.0)      # pv2 = 0: no dummy noise at Y1
    p = hk_mac(cp, ps, Y1)
    assert p.full_rank() == pytest.approx(
        0.5 * math.log2(1.0 + (1.0 + 1.0 + 0.4 * 2.0) / 1.0), abs=1e-12)
