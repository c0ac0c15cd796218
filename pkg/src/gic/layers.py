"""Delta-layer discretization of both transmitters.

Each transmit signal is cut into layers of power delta (the last layer
absorbs any remainder) and every layer appears in both receiver stacks,
scaled by the relevant cross gain. Stack order at each receiver, bottom
(decoded last) to top: the other user's private layers (the dummy band),
the own private layers, then the public band with user 1 below user 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .errors import BadDelta
from .model import (ChannelParams, ExtendedRateVector, PowerSplit, RateVector,
                    rate_vector)
from .gaussian_mac import Y1, Y2

DUMMY = "dummy-private"
PRIVATE = "private"
PUBLIC = "public"


@dataclass(frozen=True)
class Layer:
    """One infinitesimal code-book as seen at a single receiver."""

    layer_id: int
    message: str          # U1 | V1 | U2 | V2
    owner: int            # 1 | 2
    kind: str             # dummy-private | private | public (at this receiver)
    tx_power: float
    rx_power: float
    rate: float           # bits/use at this receiver given the power below


@dataclass(frozen=True)
class LayerStack:
    receiver: str
    delta: float
    layers: Tuple[Layer, ...]


def _layer_powers(total: float, delta: float) -> List[float]:
    """Cut a power budget into round(total/delta) layers; last gets the rest."""
    if total <= 0.0:
        return []
    n = max(1, round(total / delta))
    powers = [delta] * (n - 1)
    powers.append(total - delta * (n - 1))
    if powers[-1] <= 0.0:
        powers = [delta] * (n - 2) + [total - delta * (n - 2)]
    return powers


def build_stacks(cp: ChannelParams, ps: PowerSplit,
                 delta: float) -> Tuple[LayerStack, LayerStack]:
    """Both receiver stacks for one split at layer power delta."""
    if delta <= 0.0:
        raise BadDelta(f"delta must be positive (got {delta})")
    for name, power in (("pv1", ps.pv1), ("pv2", ps.pv2),
                        ("pu1", ps.pu1), ("pu2", ps.pu2)):
        if power > 0.0 and delta > power * (1.0 + 1e-12):
            raise BadDelta(f"delta {delta} exceeds nonzero band power {name}={power}")
    bands = {
        "V1": (1, _layer_powers(ps.pv1, delta)),
        "V2": (2, _layer_powers(ps.pv2, delta)),
        "U1": (1, _layer_powers(ps.pu1, delta)),
        "U2": (2, _layer_powers(ps.pu2, delta)),
    }
    # Global transmit-layer ids, shared between the two stacks.
    ids: Dict[str, List[int]] = {}
    next_id = 0
    for msg in ("V1", "V2", "U1", "U2"):
        ids[msg] = list(range(next_id, next_id + len(bands[msg][1])))
        next_id += len(bands[msg][1])

    def stack_for(receiver: str) -> LayerStack:
        if receiver == Y1:
            order = ["V2", "V1", "U1", "U2"]
            gain = {"V1": 1.0, "U1": 1.0, "V2": cp.a, "U2": cp.a}
            kind = {"V2": DUMMY, "V1": PRIVATE, "U1": PUBLIC, "U2": PUBLIC}
        else:
            order = ["V1", "V2", "U1", "U2"]
            gain = {"V1": cp.b, "U1": cp.b, "V2": 1.0, "U2": 1.0}
            kind = {"V1": DUMMY, "V2": PRIVATE, "U1": PUBLIC, "U2": PUBLIC}
        layers = []
        below = 0.0
        for msg in order:
            owner, powers = bands[msg]
            for lid, p in zip(ids[msg], powers):
                rx = gain[msg] * p
                rate = 0.5 * math.log2(1.0 + rx / (cp.sigma2 + below))
                layers.append(Layer(layer_id=lid, message=msg, owner=owner,
                                    kind=kind[msg], tx_power=p, rx_power=rx,
                                    rate=rate))
                below += rx
        return LayerStack(receiver=receiver, delta=delta, layers=tuple(layers))

    return stack_for(Y1), stack_for(Y2)


def aggregate_rates(stacks: Tuple[LayerStack, LayerStack]
                    ) -> ExtendedRateVector:
    """Per-message aggregated rates under the stack orders.

    Private layers take their rate at the owner's receiver; public layers
    take min(rate at Y1, rate at Y2); dummy aggregates sum the cross-receiver
    rates of the opposite private layers.
    """
    s1, s2 = stacks
    rate1 = {l.layer_id: l.rate for l in s1.layers}
    rate2 = {l.layer_id: l.rate for l in s2.layers}
    agg = {"U1": 0.0, "V1": 0.0, "U2": 0.0, "V2": 0.0}
    dummy_y1 = 0.0
    dummy_y2 = 0.0
    for l in s1.layers:
        if l.message == "V1":
            agg["V1"] += rate1[l.layer_id]
            dummy_y2 += rate2[l.layer_id]
        elif l.message == "V2":
            agg["V2"] += rate2[l.layer_id]
            dummy_y1 += rate1[l.layer_id]
        else:
            agg[l.message] += min(rate1[l.layer_id], rate2[l.layer_id])
    base = rate_vector([agg["U1"], agg["V1"], agg["U2"], agg["V2"]])
    return ExtendedRateVector(base=base, dummy_v2_at_y1=dummy_y1,
                              dummy_v1_at_y2=dummy_y2)


def closed_form_rates(cp: ChannelParams, ps: PowerSplit) -> ExtendedRateVector:
    """Limit values of the aggregated layer rates (delta -> 0).

    Private and dummy bands telescope to single log terms; each public band
    takes the smaller of its two per-receiver increments (in the weak regime
    the binding receiver never changes within a band, so the min applies to
    the whole band).
    """
    s2, a, b = cp.sigma2, cp.a, cp.b
    n1 = s2 + a * ps.pv2                      # noise below V1 band at Y1
    n2 = s2 + b * ps.pv1                      # noise below V2 band at Y2
    r_v1 = 0.5 * math.log2(1.0 + ps.pv1 / n1)
    r_v2 = 0.5 * math.log2(1.0 + ps.pv2 / n2)
    u1_y1 = 0.5 * math.log2(1.0 + ps.pu1 / (n1 + ps.pv1))
    u1_y2 = 0.5 * math.log2(1.0 + b * ps.pu1 / (n2 + ps.pv2))
    u2_y1 = 0.5 * math.log2(1.0 + a * ps.pu2 / (n1 + ps.pv1 + ps.pu1))
    u2_y2 = 0.5 * math.log2(1.0 + ps.pu2 / (n2 + ps.pv2 + b * ps.pu1))
    base = rate_vector([min(u1_y1, u1_y2), r_v1, min(u2_y1, u2_y2), r_v2])
    dummy_y1 = 0.5 * math.log2(1.0 + a * ps.pv2 / s2)
    dummy_y2 = 0.5 * math.log2(1.0 + b * ps.pv1 / s2)
    return ExtendedRateVector(base=base, dummy_v2_at_y1=dummy_y1,
                              dummy_v1_at_y2=dummy_y2)


def _max_abs_error(agg: ExtendedRateVector, ref: ExtendedRateVector) -> dict:
    errs = {
        "r_u1": abs(agg.base.rates[0] - ref.base.rates[0]),
        "r_v1": abs(agg.base.rates[1] - ref.base.rates[1]),
        "r_u2": abs(agg.base.rates[2] - ref.base.rates[2]),
        "r_v2": abs(agg.base.rates[3] - ref.base.rates[3]),
        "dummy_y1": abs(agg.dummy_v2_at_y1 - ref.dummy_v2_at_y1),
        "dummy_y2": abs(agg.dummy_v1_at_y2 - ref.dummy_v1_at_y2),
    }
    errs["max_abs_error"] = max(errs.values())
    return errs


# Aggregates that telescope exactly sit at float noise; below this floor a
# delta halving is not expected to shrink the error further.
EXACT_FLOOR = 1e-10


def convergence_test(cp: ChannelParams, ps: PowerSplit,
                     delta_list: Sequence[float]) -> List[dict]:
    """Aggregated-vs-closed-form error per delta.

    delta_list must be strictly decreasing. Each row holds the per-message
    absolute errors and their maximum; consecutive rows either improve by
    the first-order factor or sit below the exactness floor.
    """
    if any(d2 >= d1 for d1, d2 in zip(delta_list, delta_list[1:])):
        raise ValueError("delta_list must be strictly decreasing")
    ref = closed_form_rates(cp, ps)
    rows = []
    for delta in delta_list:
        agg = aggregate_rates(build_stacks(cp, ps, delta))
        row = {"delta": float(delta)}
        row.update(_max_abs_error(agg, ref))
        rows.append(row)
    return rows
