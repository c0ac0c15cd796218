"""The 4-variable Han-Kobayashi polytope and its exact LP machinery.

Coordinates are (R_U1, R_V1, R_U2, R_V2). The polytope is the intersection
of the two 3-message receiver polymatroids lifted to four dimensions: 7 sum
constraints from Y1, 7 from Y2, plus 4 nonnegativity rows. The coefficient
matrix is the same for every channel instance, so the 4x4 bases of the
vertex enumeration (and their inverses) are computed once at import time;
only right-hand sides change. All basis determinants are integers, so there
are no near-singular bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import NotOnFacet, SliceMismatch
from .model import (MESSAGES, ChannelParams, PowerSplit, RateVector,
                    rate_vector)
from .gaussian_mac import (DUMMY_INDEX, HK_LABELS, Y1, Y2, build_overline_mac,
                           dummy_rates, hk_mac)
from .polymatroid import DecodingOrder, corner_point

# Subsets (as index tuples into the 4 coordinates) for the 14 HK rows, in
# the order HK1p..HK7p then HK8p..HK14p. Y1 rows range over (U1, V1, U2),
# Y2 rows over (U1, U2, V2).
_Y1_SUBSETS = [(0,), (2,), (1,), (0, 2), (0, 1), (1, 2), (0, 1, 2)]
_Y2_SUBSETS = [(0,), (2,), (3,), (0, 2), (2, 3), (0, 3), (0, 2, 3)]

ROW_NAMES = tuple(f"HK{k}" for k in range(1, 15)) + tuple(
    f"{m}>=0" for m in MESSAGES)

Y1_SUM_ROW = 6    # HK7p: R_U1 + R_V1 + R_U2 sum constraint
Y2_SUM_ROW = 13   # HK14p: R_U1 + R_U2 + R_V2 sum constraint

FEAS_TOL = 1e-9
DEDUP_TOL = 1e-8


def _build_matrix() -> np.ndarray:
    rows = []
    for subset in _Y1_SUBSETS + _Y2_SUBSETS:
        row = np.zeros(4)
        row[list(subset)] = 1.0
        rows.append(row)
    for i in range(4):
        row = np.zeros(4)
        row[i] = -1.0
        rows.append(row)
    return np.array(rows)


A_MATRIX = _build_matrix()


def _build_bases() -> Tuple[np.ndarray, np.ndarray]:
    combos, invs = [], []
    for combo in itertools.combinations(range(len(A_MATRIX)), 4):
        sub = A_MATRIX[list(combo)]
        det = round(np.linalg.det(sub))
        if det != 0:
            combos.append(combo)
            invs.append(np.linalg.inv(sub))
    return np.array(combos), np.array(invs)


BASIS_COMBOS, BASIS_INVS = _build_bases()


@dataclass(frozen=True)
class RatePolytope:
    """18 halfspaces A r <= b over (R_U1, R_V1, R_U2, R_V2)."""

    halfspaces: np.ndarray   # (18, 4), fixed
    rhs: np.ndarray          # (18,)
    names: Tuple[str, ...] = ROW_NAMES

    def contains(self, r: Sequence[float], tol: float = FEAS_TOL) -> bool:
        return bool(np.all(self.halfspaces @ np.asarray(r) <= self.rhs + tol))


@dataclass(frozen=True)
class WsrSolution:
    """Weighted sum-rate optimum over the HK polytope."""

    mu: float
    rates: RateVector
    objective: float
    tight: Tuple[str, ...]
    dominant: str            # "Y1" | "Y2" | "both"


def hk_rhs(cp: ChannelParams, ps: PowerSplit) -> np.ndarray:
    """Right-hand sides of the 18 rows for one power split."""
    g1 = hk_mac(cp, ps, Y1)
    g2 = hk_mac(cp, ps, Y2)
    b = np.zeros(18)
    for k, subset in enumerate(_Y1_SUBSETS):
        b[k] = g1.rank(HK_LABELS[Y1].index(MESSAGES[i]) for i in subset)
    for k, subset in enumerate(_Y2_SUBSETS):
        b[7 + k] = g2.rank(HK_LABELS[Y2].index(MESSAGES[i]) for i in subset)
    return b


def hk_rhs_batch(cp: ChannelParams, pv1: np.ndarray,
                 pv2: np.ndarray) -> np.ndarray:
    """Vectorized rhs for many splits given by private powers (K,) -> (K,18)."""
    pv1 = np.asarray(pv1, dtype=float)
    pv2 = np.asarray(pv2, dtype=float)
    pu1 = cp.p1 - pv1
    pu2 = cp.p2 - pv2
    out = np.zeros((len(pv1), 18))
    # Y1: powers (pu1, pv1, a*pu2), noise sigma2 + a*pv2.
    noise1 = cp.sigma2 + cp.a * pv2
    pow1 = {0: pu1, 1: pv1, 2: cp.a * pu2}
    for k, subset in enumerate(_Y1_SUBSETS):
        sig = sum(pow1[i] for i in subset)
        out[:, k] = 0.5 * np.log2(1.0 + sig / noise1)
    # Y2: powers (b*pu1, pu2, pv2), noise sigma2 + b*pv1.
    noise2 = cp.sigma2 + cp.b * pv1
    pow2 = {0: cp.b * pu1, 2: pu2, 3: pv2}
    for k, subset in enumerate(_Y2_SUBSETS):
        sig = sum(pow2[i] for i in subset)
        out[:, 7 + k] = 0.5 * np.log2(1.0 + sig / noise2)
    return out


def build_polytope(cp: ChannelParams, ps: PowerSplit) -> RatePolytope:
    """HK polytope of one validated instance and power split."""
    ps.check_budgets(cp)
    return RatePolytope(halfspaces=A_MATRIX, rhs=hk_rhs(cp, ps))


def enumerate_vertices(rp: RatePolytope) -> List[RateVector]:
    """All basic feasible points of the polytope, deduplicated.

    Every invertible 4-subset of halfspaces is solved; the solution is kept
    when it satisfies all 18 rows within FEAS_TOL, and duplicates closer
    than DEDUP_TOL (Euclidean) are merged.
    """
    if len(rp.rhs) > 24:
        raise ValueError("vertex enumeration supports at most 24 halfspaces")
    pts = _candidate_points(rp.rhs)
    feas = np.all(pts @ rp.halfspaces.T <= rp.rhs + FEAS_TOL, axis=1)
    pts = pts[feas]
    kept: List[np.ndarray] = []
    for x in pts:
        if not any(np.linalg.norm(x - y) <= DEDUP_TOL for y in kept):
            kept.append(x)
    return [rate_vector(np.maximum(x, 0.0)) for x in kept]


def _candidate_points(b: np.ndarray) -> np.ndarray:
    """(N,4) basic points, one per precomputed invertible basis."""
    sel = b[BASIS_COMBOS]                       # (N, 4)
    return np.einsum("nij,nj->ni", BASIS_INVS, sel)


def batch_max_objective(b_batch: np.ndarray, mu: float,
                        chunk: int = 0) -> np.ndarray:
    """Best achievable R_U1+R_V1+mu(R_U2+R_V2) for each rhs row.

    b_batch is (K, 18); returns (K,) objectives. Used as the fast inner
    solver of the outer power-split search.
    """
    w = np.array([1.0, 1.0, mu, mu])
    return batch_max_objective_multi(b_batch, [w], chunk)[0]


def batch_max_objective_multi(b_batch: np.ndarray,
                              weights: Sequence[np.ndarray],
                              chunk: int = 0) -> np.ndarray:
    """Batched LP maxima for several weight vectors over the same rhs batch.

    Returns an array of shape (len(weights), K). The candidate vertices per
    rhs do not depend on the weights, so they are computed once per chunk.
    """
    b_batch = np.atleast_2d(np.asarray(b_batch, dtype=float))
    K = b_batch.shape[0]
    W = np.array(weights)                        # (L, 4)
    if chunk <= 0:
        # Keep the (L, chunk, N) objective block near 64 MB.
        chunk = max(1, min(256, 2 ** 23 // (len(W) * len(BASIS_COMBOS))))
    out = np.full((len(weights), K), -np.inf)
    for lo in range(0, K, chunk):
        b = b_batch[lo:lo + chunk]               # (k, 18)
        sel = b[:, BASIS_COMBOS]                 # (k, N, 4)
        X = np.einsum("nij,knj->kni", BASIS_INVS, sel)   # (k, N, 4)
        viol = np.einsum("kni,mi->knm", X, A_MATRIX) > b[:, None, :] + FEAS_TOL
        feas = ~np.any(viol, axis=2)             # (k, N)
        obj = np.einsum("kni,li->lkn", X, W)     # (L, k, N)
        obj = np.where(feas[None], obj, -np.inf)
        out[:, lo:lo + b.shape[0]] = obj.max(axis=2)
    return out


def max_wsr_over_polytope(rp: RatePolytope, mu: float) -> WsrSolution:
    """Exact weighted sum-rate maximum via vertex enumeration.

    Ties in the objective prefer points on a receiver sum-rate facet, then
    larger private rates, then larger total rate, then lexicographic order;
    this keeps outputs deterministic and aligned with the corner-point
    structure of the region.
    """
    if mu < 0.0:
        raise ValueError("mu must be nonnegative")
    w = np.array([1.0, 1.0, mu, mu])
    pts = _candidate_points(rp.rhs)
    feas = np.all(pts @ rp.halfspaces.T <= rp.rhs + FEAS_TOL, axis=1)
    pts = pts[feas]
    objs = pts @ w
    best = objs.max()
    cand = pts[objs >= best - 1e-12]

    def tie_key(x):
        res = rp.rhs - rp.halfspaces @ x
        sum_active = min(res[Y1_SUM_ROW], res[Y2_SUM_ROW]) <= FEAS_TOL
        return (sum_active, x[1] + x[3], x.sum(), tuple(x))

    x = max((c for c in cand), key=tie_key)
    res = rp.rhs - rp.halfspaces @ x
    tight = tuple(rp.names[i] for i in range(len(res)) if res[i] <= FEAS_TOL)
    y1_active = res[Y1_SUM_ROW] <= FEAS_TOL
    y2_active = res[Y2_SUM_ROW] <= FEAS_TOL
    if y1_active and y2_active:
        dominant = "both"
    elif y1_active:
        dominant = Y1
    elif y2_active:
        dominant = Y2
    else:
        raise AssertionError(
            "no receiver sum constraint active at the optimum")
    x = np.maximum(x, 0.0)
    objective = float(x[0] + x[1] + mu * (x[2] + x[3]))
    return WsrSolution(mu=mu, rates=rate_vector(x), objective=objective,
                       tight=tight, dominant=dominant)


def p0_slice_check(cp: ChannelParams, ps: PowerSplit,
                   tol: float = 1e-9) -> dict:
    """Verify the dummy-rate slice of the 4-input MACs equals the HK rows.

    Builds both 4-input polymatroids, fixes the dummy rate of each at its
    bottom-of-stack value, slices the region at that value, and compares the
    induced constraint on every non-dummy subset against the HK polytope rhs.
    Returns a report with per-constraint residuals; raises SliceMismatch if
    any residual exceeds tol.
    """
    d1, d2 = dummy_rates(cp, ps)
    hk = hk_rhs(cp, ps)
    residuals = {}
    for receiver, dummy_val, offset, subsets in (
            (Y1, d1, 0, _Y1_SUBSETS), (Y2, d2, 7, _Y2_SUBSETS)):
        big = build_overline_mac(cp, ps, receiver)
        dummy = DUMMY_INDEX[receiver]
        for k, subset in enumerate(subsets):
            # Slice at r_dummy = dummy_val: the sum over S is capped both by
            # f(S) and by f(S u {dummy}) - dummy_val.
            sliced = min(big.rank(subset),
                         big.rank(subset + (dummy,)) - dummy_val)
            residuals[ROW_NAMES[offset + k]] = abs(sliced - hk[offset + k])
    worst = max(residuals.values())
    if worst > tol:
        raise SliceMismatch(f"slice residual {worst} exceeds {tol}")
    return {"residuals": residuals, "max_residual": worst,
            "dummy_rates": (d1, d2)}


def slice_polytope(cp: ChannelParams, ps: PowerSplit) -> RatePolytope:
    """HK-shaped polytope built from the sliced 4-input MACs (upper-bound route)."""
    d1, d2 = dummy_rates(cp, ps)
    b = np.zeros(18)
    for receiver, dummy_val, offset, subsets in (
            (Y1, d1, 0, _Y1_SUBSETS), (Y2, d2, 7, _Y2_SUBSETS)):
        big = build_overline_mac(cp, ps, receiver)
        dummy = DUMMY_INDEX[receiver]
        for k, subset in enumerate(subsets):
            b[offset + k] = min(big.rank(subset),
                                big.rank(subset + (dummy,)) - dummy_val)
    return RatePolytope(halfspaces=A_MATRIX, rhs=b)


def time_sharing_decomposition(
        cp: ChannelParams, ps: PowerSplit, sol: WsrSolution,
        tol: float = 1e-8) -> Tuple[RateVector, RateVector, float]:
    """Express a sum-rate-facet optimum as time-sharing of two corner points.

    Works on the dominant receiver's 3-message polymatroid (Y1 when both sum
    constraints are active). Returns (A, B, lam) with lam*A + (1-lam)*B
    reproducing the restriction of sol.rates within tol; lam is 1 when the
    optimum is itself a corner point.
    """
    receiver = Y1 if sol.dominant in (Y1, "both") else Y2
    poly = hk_mac(cp, ps, receiver)
    coords = [MESSAGES.index(lbl) for lbl in HK_LABELS[receiver]]
    point = np.array([sol.rates.rates[i] for i in coords])
    if abs(point.sum() - poly.full_rank()) > 1e-9:
        raise NotOnFacet(
            f"solution sum {point.sum()} is off the {receiver} sum-rate facet")
    corners = [corner_point(poly, DecodingOrder(perm))
               for perm in itertools.permutations(range(3))]
    arrays = [np.array(c.rates) for c in corners]
    for c, arr in zip(corners, arrays):
        if np.linalg.norm(arr - point) <= tol:
            return c, c, 1.0
    best = None
    for (ca, va), (cb, vb) in itertools.combinations(zip(corners, arrays), 2):
        d = va - vb
        denom = d @ d
        if denom <= 1e-30:
            continue
        lam = float(np.clip((point - vb) @ d / denom, 0.0, 1.0))
        resid = float(np.linalg.norm(lam * va + (1.0 - lam) * vb - point))
        if best is None or resid < best[0]:
            best = (resid, ca, cb, lam)
    if best is None or best[0] > tol:
        raise NotOnFacet(
            f"no corner pair reproduces the facet point (residual "
            f"{best[0] if best else 'n/a'})")
    return best[1], best[2], best[3]
