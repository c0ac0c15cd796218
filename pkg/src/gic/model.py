"""Core domain types for the 2-user weak Gaussian interference channel.

All rates are in bits per channel use and all logarithms are base 2.
Message indexing convention used throughout the package:
0 = U1 (public, user 1), 1 = V1 (private, user 1),
2 = U2 (public, user 2), 3 = V2 (private, user 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import NonPositive, NonWeakRegime

MESSAGES = ("U1", "V1", "U2", "V2")

U1, V1, U2, V2 = 0, 1, 2, 3

# Relative tolerance on the per-user power budget split (L8-L9 style sums).
SPLIT_RTOL = 1e-12


@dataclass(frozen=True)
class ChannelParams:
    """Physical channel instance: cross power gains, budgets, noise variance.

    a is the power gain X2 -> Y1, b is the power gain X1 -> Y2. The weak
    regime (a < 1 and b < 1) is enforced by :func:`validate_params`.
    """

    a: float
    b: float
    p1: float
    p2: float
    sigma2: float = 1.0


def validate_params(a: float, b: float, p1: float, p2: float,
                    sigma2: float = 1.0) -> ChannelParams:
    """Validate raw channel parameters; never clamps.

    Raises NonWeakRegime when a >= 1 or b >= 1, NonPositive when a power
    budget or the noise variance is <= 0. a = 0 or b = 0 is accepted as the
    interference-free degenerate case.
    """
    if not (0.0 <= a < 1.0) or not (0.0 <= b < 1.0):
        raise NonWeakRegime(f"cross gains must satisfy 0 <= a,b < 1 (got a={a}, b={b})")
    if p1 <= 0.0 or p2 <= 0.0:
        raise NonPositive(f"power budgets must be positive (got p1={p1}, p2={p2})")
    if sigma2 <= 0.0:
        raise NonPositive(f"noise variance must be positive (got sigma2={sigma2})")
    return ChannelParams(a=a, b=b, p1=p1, p2=p2, sigma2=sigma2)


@dataclass(frozen=True)
class PowerSplit:
    """Private/public transmit power allocation at both users."""

    pu1: float
    pv1: float
    pu2: float
    pv2: float

    def check_budgets(self, cp: ChannelParams) -> None:
        """Verify pu + pv equals the budget within SPLIT_RTOL relative."""
        for total, budget, user in ((self.pu1 + self.pv1, cp.p1, 1),
                                    (self.pu2 + self.pv2, cp.p2, 2)):
            if abs(total - budget) > SPLIT_RTOL * max(budget, 1.0):
                raise ValueError(
                    f"user {user} split {total!r} does not match budget {budget!r}")


def make_split(cp: ChannelParams, pv1: float, pv2: float) -> PowerSplit:
    """Build a PowerSplit from private powers; public gets the remainder."""
    if not (0.0 <= pv1 <= cp.p1) or not (0.0 <= pv2 <= cp.p2):
        raise ValueError(f"private powers out of range: pv1={pv1}, pv2={pv2}")
    return PowerSplit(pu1=cp.p1 - pv1, pv1=pv1, pu2=cp.p2 - pv2, pv2=pv2)


@dataclass(frozen=True)
class RateVector:
    """Nonnegative per-message rates with their labels."""

    labels: Tuple[str, ...]
    rates: Tuple[float, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.rates):
            raise ValueError("labels and rates must have the same length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate message labels")
        if any(r < 0.0 for r in self.rates):
            raise ValueError("rates must be nonnegative")

    def __len__(self) -> int:
        return len(self.rates)

    def rate(self, label: str) -> float:
        return self.rates[self.labels.index(label)]


def rate_vector(rates: Sequence[float],
                labels: Optional[Sequence[str]] = None) -> RateVector:
    """Convenience constructor; defaults to the global message labels."""
    if labels is None:
        labels = MESSAGES[:len(rates)]
    return RateVector(labels=tuple(labels), rates=tuple(float(r) for r in rates))


@dataclass(frozen=True)
class ExtendedRateVector:
    """Four non-redundant message rates plus the two dummy private rates."""

    base: RateVector
    dummy_v2_at_y1: float
    dummy_v1_at_y2: float

    def __post_init__(self):
        if self.dummy_v2_at_y1 < 0.0 or self.dummy_v1_at_y2 < 0.0:
            raise ValueError("dummy rates must be nonnegative")
