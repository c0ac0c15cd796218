"""Outer optimization over power splits.

The split space is two-dimensional (private powers pv1, pv2; public powers
are the budget remainders), and the objective is piecewise-smooth in it, so
the search is derivative-free: a coarse grid followed by successive grid
halving around the incumbent. Grids run from full-private downward so that
objective ties resolve toward all-private splits, which keeps the nested
optimality re-solve exact when the optimum sits on the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import hk_region
from .gaussian_mac import Y1, Y2, dummy_rates
from .model import ChannelParams, PowerSplit, make_split, validate_params
from .hk_region import WsrSolution, build_polytope, max_wsr_over_polytope

DEFAULT_COARSE = 64
DEFAULT_REFINE_ROUNDS = 8
ALL_PRIVATE_GRID = 256
GOLDEN_TOL = 1e-10

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def default_mu_grid() -> List[float]:
    """Logarithmic grid 2^-4 .. 2^4, 33 points."""
    return [float(2.0 ** e) for e in np.linspace(-4.0, 4.0, 33)]


@dataclass(frozen=True)
class AllPrivateSolution:
    mu: float
    used_powers: Tuple[float, float]
    rates: Tuple[float, float]
    objective: float


@dataclass(frozen=True)
class SaturationResult:
    mu: float
    p_hat_1: float
    p_hat_2: float
    r_sat_1: float
    r_sat_2: float
    residual_public_power: float
    tolerance: float
    ok: bool


@dataclass(frozen=True)
class BoundaryPoint:
    mu: float
    r1: float
    r2: float
    message_rates: Tuple[float, float, float, float]
    split: PowerSplit
    dominant: str
    tight: Tuple[str, ...]
    objective: float


def _all_private_objective(cp: ChannelParams, mu: float,
                           q1, q2):
    """R1 + mu R2 with both users all-private at powers (q1, q2)."""
    r1 = 0.5 * np.log2(1.0 + q1 / (cp.sigma2 + cp.a * q2))
    r2 = 0.5 * np.log2(1.0 + q2 / (cp.sigma2 + cp.b * q1))
    return r1 + mu * r2


def _golden_section(fn, lo: float, hi: float, tol: float = GOLDEN_TOL) -> float:
    """Maximize a 1-d function on [lo, hi] by golden-section search."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
    # Include the interval endpoints: boundary optima are common here.
    cands = [(fn(lo), lo), (fn(hi), hi), (fc, c), (fd, d)]
    return max(cands)[1]


def all_private_optimum(cp: ChannelParams, mu: float,
                        grid: int = ALL_PRIVATE_GRID) -> AllPrivateSolution:
    """Maximize R1 + mu R2 with private messages only.

    Dense grid over used powers (q1, q2) followed by coordinate-wise
    golden-section refinement to 1e-10 in power. At least one transmitter
    always ends up at full power.
    """
    if mu < 0.0:
        raise ValueError("mu must be nonnegative")
    q1g = np.linspace(cp.p1, 0.0, grid)
    q2g = np.linspace(cp.p2, 0.0, grid)
    Q1, Q2 = np.meshgrid(q1g, q2g, indexing="ij")
    obj = _all_private_objective(cp, mu, Q1, Q2)
    i, j = np.unravel_index(np.argmax(obj), obj.shape)
    q1, q2 = float(q1g[i]), float(q2g[j])
    for _ in range(64):
        new_q1 = _golden_section(
            lambda x: _all_private_objective(cp, mu, x, q2), 0.0, cp.p1)
        new_q2 = _golden_section(
            lambda x: _all_private_objective(cp, mu, new_q1, x), 0.0, cp.p2)
        moved = max(abs(new_q1 - q1), abs(new_q2 - q2))
        q1, q2 = new_q1, new_q2
        if moved < GOLDEN_TOL:
            break
    r1 = 0.5 * math.log2(1.0 + q1 / (cp.sigma2 + cp.a * q2))
    r2 = 0.5 * math.log2(1.0 + q2 / (cp.sigma2 + cp.b * q1))
    assert max(q1 / cp.p1, q2 / cp.p2) >= 1.0 - 1e-6, \
        "all-private optimum left both transmitters below full power"
    return AllPrivateSolution(mu=mu, used_powers=(q1, q2), rates=(r1, r2),
                              objective=r1 + mu * r2)


def _seed_splits(cp: ChannelParams, mu: float) -> List[Tuple[float, float]]:
    """Candidate private powers that guarantee the feasibility chain.

    Seeding the all-private optimum's used powers as private powers makes
    the full-HK objective provably >= the all-private objective.
    """
    ap = all_private_optimum(cp, mu)
    q1, q2 = ap.used_powers
    return [(q1, q2), (cp.p1, cp.p2)]


def _grid_axis(budget: float, n: int) -> np.ndarray:
    return np.linspace(budget, 0.0, n)


def _local_axis(center: float, half: float, budget: float,
                n: int = 9) -> np.ndarray:
    lo = max(center - half, 0.0)
    hi = min(center + half, budget)
    return np.linspace(hi, lo, n)


def grid_resolution(cp: ChannelParams, coarse: int = DEFAULT_COARSE,
                    rounds: int = DEFAULT_REFINE_ROUNDS) -> float:
    """Final resolution of the outer split search, in power units."""
    return max(cp.p1, cp.p2) / (coarse - 1) / 2 ** rounds


def max_wsr(cp: ChannelParams, mu: float, coarse: int = DEFAULT_COARSE,
            refine_rounds: int = DEFAULT_REFINE_ROUNDS,
            extra_splits: Optional[Sequence[Tuple[float, float]]] = None,
            ) -> Tuple[WsrSolution, PowerSplit]:
    """Best power split and inner LP solution for one weight mu.

    Coarse grid over (pv1, pv2), then successive grid halving around the
    incumbent; the inner solve is the exact vertex-enumeration LP.
    """
    if mu < 0.0:
        raise ValueError("mu must be nonnegative")
    cands = [np.array(s) for s in (extra_splits or [])]
    cands.extend(np.array(s) for s in _seed_splits(cp, mu))
    pv1g = _grid_axis(cp.p1, coarse)
    pv2g = _grid_axis(cp.p2, coarse)
    P1, P2 = np.meshgrid(pv1g, pv2g, indexing="ij")
    flat = np.column_stack([P1.ravel(), P2.ravel()])
    points = np.vstack([flat] + [c[None] for c in cands])
    objs = hk_region.batch_max_objective(
        hk_rhs_for(cp, points), mu)
    inc = points[int(np.argmax(objs))]
    half1 = cp.p1 / (coarse - 1)
    half2 = cp.p2 / (coarse - 1)
    best_obj = float(np.max(objs))
    for _ in range(refine_rounds):
        ax1 = _local_axis(inc[0], half1, cp.p1)
        ax2 = _local_axis(inc[1], half2, cp.p2)
        L1, L2 = np.meshgrid(ax1, ax2, indexing="ij")
        local = np.column_stack([L1.ravel(), L2.ravel()])
        lobjs = hk_region.batch_max_objective(hk_rhs_for(cp, local), mu)
        if float(np.max(lobjs)) > best_obj + 0.0:
            best_obj = float(np.max(lobjs))
            inc = local[int(np.argmax(lobjs))]
        half1 /= 2.0
        half2 /= 2.0
    split = make_split(cp, float(inc[0]), float(inc[1]))
    sol = max_wsr_over_polytope(build_polytope(cp, split), mu)
    return sol, split


def hk_rhs_for(cp: ChannelParams, points: np.ndarray) -> np.ndarray:
    """rhs batch for (K,2) private-power points."""
    return hk_region.hk_rhs_batch(cp, points[:, 0], points[:, 1])


def saturation_levels(cp: ChannelParams, mu: float,
                      coarse: int = DEFAULT_COARSE,
                      refine_rounds: int = DEFAULT_REFINE_ROUNDS,
                      ) -> SaturationResult:
    """Saturation private powers and the nested-optimality re-solve.

    p_hat are the private powers of the full optimum; re-solving with
    budgets shrunk to p_hat must allocate (almost) zero public power. The
    residual is reported rather than raised unless it exceeds 10x the outer
    grid resolution.
    """
    _, split = max_wsr(cp, mu, coarse, refine_rounds)
    p_hat_1, p_hat_2 = split.pv1, split.pv2
    # Zero saturation power degenerates the budget; a vanishing floor keeps
    # the shrunken instance valid without affecting the residual.
    floor = 1e-12
    shrunk = validate_params(cp.a, cp.b, max(p_hat_1, floor),
                             max(p_hat_2, floor), cp.sigma2)
    _, re_split = max_wsr(shrunk, mu, coarse, refine_rounds)
    residual = re_split.pu1 + re_split.pu2
    res = grid_resolution(cp, coarse, refine_rounds)
    ok = bool(residual <= 10.0 * res)
    r_sat_1, r_sat_2 = dummy_rates(cp, split)
    return SaturationResult(mu=mu, p_hat_1=p_hat_1, p_hat_2=p_hat_2,
                            r_sat_1=r_sat_1, r_sat_2=r_sat_2,
                            residual_public_power=residual,
                            tolerance=res, ok=ok)


def trace_boundary(cp: ChannelParams, mu_list: Sequence[float],
                   coarse: int = DEFAULT_COARSE,
                   refine_rounds: int = DEFAULT_REFINE_ROUNDS,
                   ) -> List[BoundaryPoint]:
    """Lower/upper boundary sweep: per-mu weighted sum-rate optima.

    All mu values select their optimum from a shared candidate split pool
    (base grid plus every mu's refined incumbent and seeds), with objective
    ties broken toward larger R2. Optimizing over a common finite set keeps
    the supporting-line monotonicity of (R1 down, R2 up) exact.
    """
    mu_arr = list(mu_list)
    if any(m < 0.0 for m in mu_arr):
        raise ValueError("mu values must be nonnegative")
    if any(b <= a for a, b in zip(mu_arr, mu_arr[1:])):
        raise ValueError("mu_list must be strictly increasing")
    # First pass: per-mu incumbents feed a shared pool.
    pool: List[Tuple[float, float]] = []
    for mu in mu_arr:
        _, split = max_wsr(cp, mu, coarse, refine_rounds)
        pool.append((split.pv1, split.pv2))
        pool.extend(_seed_splits(cp, mu))
    pv1g = _grid_axis(cp.p1, coarse)
    pv2g = _grid_axis(cp.p2, coarse)
    P1, P2 = np.meshgrid(pv1g, pv2g, indexing="ij")
    points = np.vstack([np.column_stack([P1.ravel(), P2.ravel()]),
                        np.array(pool)])
    rhs = hk_rhs_for(cp, points)
    # For each mu, an epsilon-perturbed weight breaks split ties toward the
    # R2-maximal optimum, which keeps the sweep monotone across mu.
    eps = 1e-7
    weights = [np.array([1.0, 1.0, mu, mu]) for mu in mu_arr]
    weights += [np.array([1.0, 1.0, mu + eps, mu + eps]) for mu in mu_arr]
    objs = hk_region.batch_max_objective_multi(rhs, weights)   # (2L, K)
    L = len(mu_arr)
    out: List[BoundaryPoint] = []
    for li, mu in enumerate(mu_arr):
        best = float(np.max(objs[li]))
        near = objs[li] >= best - 1e-12
        perturbed = np.where(near, objs[L + li], -np.inf)
        idx = int(np.argmax(perturbed))
        split = make_split(cp, float(points[idx, 0]), float(points[idx, 1]))
        sol = _solve_prefer_r2(cp, split, mu)
        out.append(BoundaryPoint(
            mu=mu, r1=sol.rates.rates[0] + sol.rates.rates[1],
            r2=sol.rates.rates[2] + sol.rates.rates[3],
            message_rates=tuple(sol.rates.rates),
            split=split, dominant=sol.dominant, tight=sol.tight,
            objective=sol.objective))
    return out


def _solve_prefer_r2(cp: ChannelParams, split: PowerSplit,
                     mu: float) -> WsrSolution:
    """Exact LP solve whose objective ties prefer the largest R2.

    The generic tie-break in max_wsr_over_polytope targets the time-sharing
    structure; boundary tracing needs the R2-maximal optimum instead so the
    sweep stays monotone. The returned solution still carries tight set and
    dominance from the selected point.
    """
    rp = build_polytope(cp, split)
    sol = max_wsr_over_polytope(rp, mu)
    verts = hk_region.enumerate_vertices(rp)
    w = np.array([1.0, 1.0, mu, mu])
    best = sol.objective
    chosen = sol
    for v in verts:
        x = np.array(v.rates)
        if x @ w < best - 1e-12:
            continue
        r2 = x[2] + x[3]
        cur = chosen.rates.rates
        if r2 > cur[2] + cur[3] + 1e-12:
            res = rp.rhs - rp.halfspaces @ x
            y1a = res[hk_region.Y1_SUM_ROW] <= hk_region.FEAS_TOL
            y2a = res[hk_region.Y2_SUM_ROW] <= hk_region.FEAS_TOL
            if not (y1a or y2a):
                continue
            dominant = "both" if (y1a and y2a) else (Y1 if y1a else Y2)
            tight = tuple(rp.names[i] for i in range(len(res))
                          if res[i] <= hk_region.FEAS_TOL)
            chosen = WsrSolution(mu=mu, rates=v, objective=float(x @ w),
                                 tight=tight, dominant=dominant)
    return chosen


def single_mac_bound(cp: ChannelParams, ps: PowerSplit, mu: float,
                     receiver: str) -> float:
    """Upper bound on R1 + mu R2 from one receiver's total sum rate.

    The receiver's 3-message sum constraint plus the other user's private
    single-rate constraint give
    max(1, mu) * (EQN - dummy) + w_other * f_other({V_other}),
    where EQN is the full 4-input sum rate at that receiver.
    """
    d1, d2 = dummy_rates(cp, ps)
    from .gaussian_mac import gaussian_rank, received_powers
    from .model import V1 as IV1, V2 as IV2
    if receiver == Y1:
        eqn = 0.5 * math.log2(1.0 + (ps.pu1 + ps.pv1 + cp.a * (ps.pu2 + ps.pv2))
                              / cp.sigma2)
        other = gaussian_rank(received_powers(cp, ps, Y2), (IV2,), (IV1,))
        return max(1.0, mu) * (eqn - d1) + mu * other
    eqn = 0.5 * math.log2(1.0 + (cp.b * (ps.pu1 + ps.pv1) + ps.pu2 + ps.pv2)
                          / cp.sigma2)
    other = gaussian_rank(received_powers(cp, ps, Y1), (IV1,), (IV2,))
    return max(1.0, mu) * (eqn - d2) + other


def all_private_vs_full(cp: ChannelParams, mu_list: Sequence[float],
                        coarse: int = DEFAULT_COARSE,
                        refine_rounds: int = DEFAULT_REFINE_ROUNDS,
                        agree_tol: float = 1e-6) -> List[dict]:
    """Per-mu comparison of the all-private and full-HK optima."""
    rows = []
    for mu in mu_list:
        ap = all_private_optimum(cp, mu)
        sol, split = max_wsr(cp, mu, coarse, refine_rounds)
        rows.append({
            "mu": mu,
            "all_private": ap.objective,
            "full_hk": sol.objective,
            "gap": sol.objective - ap.objective,
            "agree": sol.objective - ap.objective <= agree_tol,
        })
    return rows
