"""Generic polymatroid engine.

Rank functions are memoized over subset bitmasks; the ground set is capped
at 12 elements so that exhaustive subset checks stay trivial. Corner points,
greedy weighted-sum-rate maximization, projections/contractions and the
nested-projection decomposition all operate on the bitmask representation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch, TooLarge
from .model import RateVector

MAX_GROUND = 12

# Tolerances: axiom checks at 1e-12, rate-sum membership at 1e-9 (headroom
# for accumulated double-precision log arithmetic).
AXIOM_TOL = 1e-12
MEMBERSHIP_TOL = 1e-9


class Polymatroid:
    """Ground set of m messages plus a memoized rank oracle over bitmasks."""

    def __init__(self, labels: Sequence[str],
                 rank_fn: Callable[[int], float]):
        if not 1 <= len(labels) <= MAX_GROUND and len(labels) != 0:
            raise TooLarge(f"ground set size {len(labels)} exceeds cap {MAX_GROUND}")
        self.labels = tuple(labels)
        self.m = len(labels)
        self._rank_fn = rank_fn
        self._memo: dict[int, float] = {}

    def rank_mask(self, mask: int) -> float:
        if mask not in self._memo:
            self._memo[mask] = float(self._rank_fn(mask))
        return self._memo[mask]

    def rank(self, subset: Iterable[int]) -> float:
        mask = 0
        for i in subset:
            mask |= 1 << i
        return self.rank_mask(mask)

    def full_rank(self) -> float:
        return self.rank_mask((1 << self.m) - 1)

    @classmethod
    def from_table(cls, labels: Sequence[str],
                   table: Sequence[float]) -> "Polymatroid":
        vals = [float(v) for v in table]
        return cls(labels, lambda mask: vals[mask])


@dataclass(frozen=True)
class DecodingOrder:
    """Permutation of 0..m-1 listed bottom (decoded last) to top."""

    order: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError(f"not a permutation: {self.order}")


@dataclass(frozen=True)
class PowerVectorSimplex:
    """Bounded region {p >= 0 : coeffs @ p <= rhs} with nonnegative coeffs.

    Carried as data; only the per-user budget form is exercised elsewhere.
    """

    coeffs: Tuple[Tuple[float, ...], ...]
    rhs: Tuple[float, ...]

    def __post_init__(self):
        for row in self.coeffs:
            if any(c < 0.0 for c in row):
                raise ValueError("simplex coefficients must be nonnegative")
        if any(r < 0.0 for r in self.rhs):
            raise ValueError("simplex right-hand sides must be nonnegative")
        # Boundedness: every coordinate must appear in some constraint.
        m = len(self.coeffs[0]) if self.coeffs else 0
        for j in range(m):
            if all(row[j] == 0.0 for row in self.coeffs):
                raise ValueError(f"coordinate {j} is unbounded")

    def contains(self, p: Sequence[float], tol: float = 1e-12) -> bool:
        if any(v < -tol for v in p):
            return False
        return all(sum(c * v for c, v in zip(row, p)) <= r + tol
                   for row, r in zip(self.coeffs, self.rhs))


def budget_simplex(budgets: Sequence[float]) -> PowerVectorSimplex:
    """The box simplex 0 <= p_i <= budget_i as one constraint per axis."""
    m = len(budgets)
    rows = tuple(tuple(1.0 if j == i else 0.0 for j in range(m)) for i in range(m))
    return PowerVectorSimplex(coeffs=rows, rhs=tuple(float(b) for b in budgets))


def _iter_masks(m: int):
    return range(1, 1 << m)


def membership(p: Polymatroid, r: RateVector,
               tol: float = MEMBERSHIP_TOL) -> Tuple[bool, List[Tuple[str, ...]]]:
    """Check sum_{i in S} r_i <= f(S) + tol for every nonempty S.

    Returns (ok, violated) where violated lists every offending subset as a
    tuple of labels.
    """
    if len(r) != p.m:
        raise DimensionMismatch(f"rate vector has {len(r)} entries, ground set {p.m}")
    rates = r.rates
    violated = []
    for mask in _iter_masks(p.m):
        s = sum(rates[i] for i in range(p.m) if mask >> i & 1)
        if s > p.rank_mask(mask) + tol:
            violated.append(tuple(p.labels[i] for i in range(p.m) if mask >> i & 1))
    return (not violated, violated)


def validate_polymatroid(p: Polymatroid, tol: float = AXIOM_TOL) -> bool:
    """Exhaustively check normalization, monotonicity and submodularity."""
    if p.m > MAX_GROUND:
        raise TooLarge(f"ground set size {p.m} exceeds cap {MAX_GROUND}")
    if abs(p.rank_mask(0)) > tol:
        return False
    full = 1 << p.m
    for mask in range(full):
        f_s = p.rank_mask(mask)
        for i in range(p.m):
            if mask >> i & 1:
                continue
            # Monotone in each element.
            if p.rank_mask(mask | 1 << i) < f_s - tol:
                return False
            # Local submodularity f(S+i)+f(S+j) >= f(S+i+j)+f(S) suffices.
            for j in range(i + 1, p.m):
                if mask >> j & 1:
                    continue
                lhs = p.rank_mask(mask | 1 << i) + p.rank_mask(mask | 1 << j)
                rhs = p.rank_mask(mask | 1 << i | 1 << j) + f_s
                if lhs < rhs - tol:
                    return False
    return True


def corner_point(p: Polymatroid, ord: DecodingOrder) -> RateVector:
    """Successive-decoding corner point: telescoping rank differences.

    ord lists messages bottom (decoded last) to top; coordinates sum to
    f(ground set) exactly by telescoping.
    """
    if len(ord.order) != p.m:
        raise DimensionMismatch("order length does not match ground set")
    rates = [0.0] * p.m
    mask = 0
    prev = 0.0
    for k in ord.order:
        mask |= 1 << k
        cur = p.rank_mask(mask)
        rates[k] = max(cur - prev, 0.0)
        prev = cur
    return RateVector(labels=p.labels, rates=tuple(rates))


def max_weighted_sum(p: Polymatroid,
                     w: Sequence[float]) -> Tuple[RateVector, DecodingOrder]:
    """Greedy maximization of w . r over the polymatroid.

    The optimal order sorts weights descending from bottom to top (largest
    weight decoded last); ties break by ascending message index.
    """
    if len(w) != p.m:
        raise DimensionMismatch("weight vector length does not match ground set")
    if any(x < 0.0 for x in w):
        raise ValueError("weights must be nonnegative")
    order = DecodingOrder(tuple(sorted(range(p.m), key=lambda i: (-w[i], i))))
    return corner_point(p, order), order


def project_above(p: Polymatroid, bottom: Iterable[int]) -> Polymatroid:
    """Contract the bottom set B: f_T(S) = f(S u B) - f(B) over T = ground\\B.

    For Gaussian ranks this equals treating B as additional noise ("Map").
    """
    bmask = 0
    for i in bottom:
        bmask |= 1 << i
    kept = [i for i in range(p.m) if not bmask >> i & 1]
    labels = tuple(p.labels[i] for i in kept)
    base = p.rank_mask(bmask)

    def rank_fn(mask: int) -> float:
        orig = bmask
        for j, i in enumerate(kept):
            if mask >> j & 1:
                orig |= 1 << i
        return p.rank_mask(orig) - base

    return Polymatroid(labels, rank_fn)


def restrict_below(p: Polymatroid, bottom: Iterable[int]) -> Polymatroid:
    """Restrict to the bottom set B: f_B(S) = f(S) for S subseteq B ("maP")."""
    bset = sorted(set(bottom))
    labels = tuple(p.labels[i] for i in bset)

    def rank_fn(mask: int) -> float:
        orig = 0
        for j, i in enumerate(bset):
            if mask >> j & 1:
                orig |= 1 << i
        return p.rank_mask(orig)

    return Polymatroid(labels, rank_fn)


def nested_cuts(p: Polymatroid,
                axis: int) -> List[Tuple[int, Polymatroid, float]]:
    """Cuts of the region orthogonal to one message's rate axis.

    For each position k of the axis message in a successive-decoding stack
    (all other messages kept in ascending index order), returns the cut of
    the region at the axis rate of that position,
    f_k(S) = min(f(S), f(S u {axis}) - t_k) with t_k the axis rate over the
    k messages below it. The child at k = 0 (axis at the bottom, max axis
    rate) is the interior region, equal to projecting above the axis; the
    child at k = m-1 is the exterior one, equal to the plain restriction.
    The axis rates decrease in k, so the children are nested ascending.
    """
    if p.m < 2:
        raise DimensionMismatch("nested cuts need at least two messages")
    others = [i for i in range(p.m) if i != axis]
    labels = tuple(p.labels[i] for i in others)
    amask = 1 << axis
    cuts = []
    for k in range(p.m):
        below_mask = 0
        for i in others[:k]:
            below_mask |= 1 << i
        axis_rate = p.rank_mask(below_mask | amask) - p.rank_mask(below_mask)

        def rank_fn(mask: int, t=axis_rate) -> float:
            orig = 0
            for j, i in enumerate(others):
                if mask >> j & 1:
                    orig |= 1 << i
            return min(p.rank_mask(orig), p.rank_mask(orig | amask) - t)

        cuts.append((k, Polymatroid(labels, rank_fn), axis_rate))
    return cuts


def brute_force_max_weighted_sum(p: Polymatroid,
                                 w: Sequence[float]) -> float:
    """Reference maximum of w . r over all m! corner points."""
    best = -np.inf
    for perm in itertools.permutations(range(p.m)):
        r = corner_point(p, DecodingOrder(perm))
        best = max(best, sum(wi * ri for wi, ri in zip(w, r.rates)))
    return best
