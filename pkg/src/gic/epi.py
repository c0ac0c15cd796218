"""Entropy-power-inequality utilities in consistent bits.

Entropy power N(X) = 2^(2 h(X)) / (2 pi e); for independent A and unit
Gaussian G, N(A + G) >= N(A) + N(G). The bounds below are for h(A + G)
with G ~ N(0, 1); both sides coincide exactly when A is Gaussian whose
power matches its entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import MissingPower
from .model import ChannelParams, PowerSplit
from .gaussian_mac import Y1, Y2

TWO_PI_E = 2.0 * math.pi * math.e


@dataclass(frozen=True)
class EpiQuery:
    """Differential entropy of A in bits, with an optional power limit."""

    h_a: float
    p_a: Optional[float] = None

    def __post_init__(self):
        if self.p_a is not None:
            # Gaussian needs the least power for a given entropy.
            if gaussian_equiv_power(self.h_a) > self.p_a + 1e-12:
                raise ValueError(
                    f"entropy {self.h_a} bits is unreachable at power {self.p_a}")


def gaussian_entropy(power: float) -> float:
    """h of a Gaussian with the given power, in bits."""
    return 0.5 * math.log2(TWO_PI_E * power)


def gaussian_equiv_power(h_a: float) -> float:
    """Power of the Gaussian whose entropy is h_a: 2^(2 h_a) / (2 pi e)."""
    return 2.0 ** (2.0 * h_a) / TWO_PI_E


def epi_bounds(q: EpiQuery) -> Tuple[float, Optional[float]]:
    """(lower, upper) bounds in bits on h(A + G) with G ~ N(0,1).

    lower = 0.5 log2(2^(2 h_a) + 2 pi e); upper = 0.5 log2(2 pi e (p_a + 1))
    and is absent when the query carries no power. Equality holds exactly
    when p_a equals the Gaussian-equivalent power of h_a.
    """
    lower = 0.5 * math.log2(2.0 ** (2.0 * q.h_a) + TWO_PI_E)
    if q.p_a is None:
        return lower, None
    upper = 0.5 * math.log2(TWO_PI_E * (q.p_a + 1.0))
    return lower, upper


def epi_upper(q: EpiQuery) -> float:
    """Upper bound only; raises MissingPower when p_a is absent."""
    if q.p_a is None:
        raise MissingPower("upper entropy bound requires the power of A")
    return epi_bounds(q)[1]


def interference_entropy_floor(cp: ChannelParams, ps: PowerSplit,
                               receiver: str) -> float:
    """Lower bound (bits) on h(interference + noise) at one receiver.

    Evaluated at the Gaussian interference entropy for the received private
    power of the other user, where the EPI lower bound is tight:
    0.5 log2(2 pi e (sigma2 + g * pv_other)).
    """
    if receiver == Y1:
        p_int = cp.a * ps.pv2
    elif receiver == Y2:
        p_int = cp.b * ps.pv1
    else:
        raise ValueError(f"unknown receiver {receiver!r}")
    return 0.5 * math.log2(TWO_PI_E * (cp.sigma2 + p_int))
