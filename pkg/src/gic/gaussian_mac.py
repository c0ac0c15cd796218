"""Closed-form Gaussian rank functions for the two 4-input MACs.

Receiver Y1 sees (U1, V1, U2, V2) at powers (pu1, pv1, a*pu2, a*pv2) and
receiver Y2 sees them at (b*pu1, b*pv1, pu2, pv2), both over AWGN of
variance sigma2. All code-books are Gaussian, so consistency of densities
holds by construction and no density objects exist at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

from .errors import OverlappingSets
from .model import U1, V1, U2, V2, MESSAGES, ChannelParams, PowerSplit
from .polymatroid import Polymatroid

Y1 = "Y1"
Y2 = "Y2"

# Dummy private message at each receiver: the other user's private message.
DUMMY_INDEX = {Y1: V2, Y2: V1}

# Non-dummy message labels per receiver, in the order used by the HK
# polytope rows.
HK_LABELS = {Y1: ("U1", "V1", "U2"), Y2: ("U1", "U2", "V2")}


@dataclass(frozen=True)
class ReceiverPowers:
    """Per-message received power (U1, V1, U2, V2) and noise at one receiver."""

    receiver: str
    powers: Tuple[float, float, float, float]
    noise: float


def received_powers(cp: ChannelParams, ps: PowerSplit,
                    receiver: str) -> ReceiverPowers:
    """Apply the cross gains to obtain received powers at Y1 or Y2."""
    if receiver == Y1:
        powers = (ps.pu1, ps.pv1, cp.a * ps.pu2, cp.a * ps.pv2)
    elif receiver == Y2:
        powers = (cp.b * ps.pu1, cp.b * ps.pv1, ps.pu2, ps.pv2)
    else:
        raise ValueError(f"unknown receiver {receiver!r}")
    return ReceiverPowers(receiver=receiver, powers=powers, noise=cp.sigma2)


def gaussian_rank(rp: ReceiverPowers, decoded: Iterable[int],
                  as_noise: Iterable[int] = ()) -> float:
    """0.5 log2(1 + P(decoded) / (noise + P(as_noise))) in bits per use."""
    dec = frozenset(decoded)
    noi = frozenset(as_noise)
    if dec & noi:
        raise OverlappingSets(f"decoded {sorted(dec)} overlaps as_noise {sorted(noi)}")
    p_sig = sum(rp.powers[i] for i in dec)
    p_noi = rp.noise + sum(rp.powers[i] for i in noi)
    return 0.5 * math.log2(1.0 + p_sig / p_noi)


def build_overline_mac(cp: ChannelParams, ps: PowerSplit,
                       receiver: str) -> Polymatroid:
    """The 4-input MAC polymatroid at one receiver (all messages decodable)."""
    rp = received_powers(cp, ps, receiver)

    def rank_fn(mask: int) -> float:
        return gaussian_rank(rp, (i for i in range(4) if mask >> i & 1))

    return Polymatroid(MESSAGES, rank_fn)


def dummy_rates(cp: ChannelParams, ps: PowerSplit) -> Tuple[float, float]:
    """Bottom-of-stack rates of the two dummy private messages.

    Returns (rate of dummy V2 at Y1, rate of dummy V1 at Y2), i.e. the
    mutual informations I(sqrt(a) V2; Y1 | U1,U2,V1) and
    I(sqrt(b) V1; Y2 | U1,U2,V2).
    """
    r1 = 0.5 * math.log2(1.0 + cp.a * ps.pv2 / cp.sigma2)
    r2 = 0.5 * math.log2(1.0 + cp.b * ps.pv1 / cp.sigma2)
    return r1, r2


def hk_mac(cp: ChannelParams, ps: PowerSplit, receiver: str) -> Polymatroid:
    """Three-message polymatroid with the opposite private message as noise.

    Identical to projecting the 4-input MAC above its dummy private message;
    the rank is written directly in closed form so the projection identity
    can be checked against it.
    """
    rp = received_powers(cp, ps, receiver)
    dummy = DUMMY_INDEX[receiver]
    kept = [i for i in range(4) if i != dummy]
    labels = tuple(MESSAGES[i] for i in kept)
    assert labels == HK_LABELS[receiver]

    def rank_fn(mask: int) -> float:
        decoded = [kept[j] for j in range(3) if mask >> j & 1]
        return gaussian_rank(rp, decoded, (dummy,))

    return Polymatroid(labels, rank_fn)


def mac_sum_rate(cp: ChannelParams, receiver: str) -> float:
    """Total received-power sum rate 0.5 log2(1 + (P_own + g*P_cross)/sigma2)."""
    if receiver == Y1:
        total = cp.p1 + cp.a * cp.p2
    elif receiver == Y2:
        total = cp.b * cp.p1 + cp.p2
    else:
        raise ValueError(f"unknown receiver {receiver!r}")
    return 0.5 * math.log2(1.0 + total / cp.sigma2)
