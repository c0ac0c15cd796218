"""Seeded property-check suite over random weak-interference instances.

Backs the `validate` CLI subcommand and the /validate endpoint: polymatroid
axioms, corner-point telescoping, the projection identity between the HK
and 4-input MAC formulations, the P0/HK coincidence, EPI coincidence and
the all-private full-power property. Deterministic for a fixed seed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List

import numpy as np

from . import epi, hk_region, optimizer, polymatroid
from .gaussian_mac import Y1, Y2, build_overline_mac, hk_mac
from .model import ChannelParams, PowerSplit, make_split, validate_params
from .polymatroid import DecodingOrder, corner_point, membership


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def random_instance(rng: np.random.Generator) -> tuple[ChannelParams, PowerSplit]:
    cp = validate_params(a=float(rng.uniform(0.05, 0.95)),
                         b=float(rng.uniform(0.05, 0.95)),
                         p1=float(rng.uniform(0.5, 4.0)),
                         p2=float(rng.uniform(0.5, 4.0)))
    ps = make_split(cp, float(rng.uniform(0.0, cp.p1)),
                    float(rng.uniform(0.0, cp.p2)))
    return cp, ps


def check_polymatroid_axioms(rng, instances: int = 50,
                             inject_fault: bool = False) -> CheckResult:
    worst = "ok"
    for k in range(instances):
        cp, ps = random_instance(rng)
        for receiver in (Y1, Y2):
            for poly in (build_overline_mac(cp, ps, receiver),
                         hk_mac(cp, ps, receiver)):
                if inject_fault and k == 0:
                    full = (1 << poly.m) - 1
                    poly._memo[full] = poly.rank_mask(full) - 0.5
                if not polymatroid.validate_polymatroid(poly):
                    return CheckResult("polymatroid-axioms", False,
                                       f"axiom violation at instance {k}")
    return CheckResult("polymatroid-axioms", True, worst)


def check_corner_points(rng, instances: int = 20) -> CheckResult:
    for k in range(instances):
        cp, ps = random_instance(rng)
        for receiver in (Y1, Y2):
            poly = build_overline_mac(cp, ps, receiver)
            total = poly.full_rank()
            for perm in itertools.permutations(range(4)):
                r = corner_point(poly, DecodingOrder(perm))
                ok, _ = membership(poly, r)
                if not ok or abs(sum(r.rates) - total) > 1e-12:
                    return CheckResult("corner-points", False,
                                       f"order {perm} fails at instance {k}")
    return CheckResult("corner-points", True, "ok")


def check_projection_identity(rng, instances: int = 50) -> CheckResult:
    worst = 0.0
    for _ in range(instances):
        cp, ps = random_instance(rng)
        for receiver in (Y1, Y2):
            small = hk_mac(cp, ps, receiver)
            big = build_overline_mac(cp, ps, receiver)
            from .gaussian_mac import DUMMY_INDEX
            proj = polymatroid.project_above(big, [DUMMY_INDEX[receiver]])
            for mask in range(1, 8):
                worst = max(worst, abs(small.rank_mask(mask)
                                       - proj.rank_mask(mask)))
    ok = worst < 1e-12
    return CheckResult("projection-identity", ok, f"max residual {worst:.3e}")


def check_p0_coincidence(rng, instances: int = 50) -> CheckResult:
    worst_res = 0.0
    worst_lp = 0.0
    for _ in range(instances):
        cp, ps = random_instance(rng)
        report = hk_region.p0_slice_check(cp, ps)
        worst_res = max(worst_res, report["max_residual"])
    # LP coincidence on fresh instances with random mu. Random splits are
    # generally not on a sum-rate facet, so compare raw LP maxima rather
    # than dominance-tagged solutions.
    for _ in range(instances):
        cp, ps = random_instance(rng)
        mu = float(2.0 ** rng.uniform(-3, 3))
        hk_obj = hk_region.batch_max_objective(
            hk_region.build_polytope(cp, ps).rhs[None], mu)[0]
        slice_obj = hk_region.batch_max_objective(
            hk_region.slice_polytope(cp, ps).rhs[None], mu)[0]
        worst_lp = max(worst_lp, abs(hk_obj - slice_obj))
    ok = bool(worst_res < 1e-9 and worst_lp < 1e-10)
    return CheckResult("p0-hk-coincidence", ok,
                       f"slice residual {worst_res:.3e}, LP gap {worst_lp:.3e}")


def check_epi_coincidence() -> CheckResult:
    worst = 0.0
    for power in (0.25, 1.0, 4.0, 100.0):
        h = epi.gaussian_entropy(power)
        worst = max(worst, abs(epi.gaussian_equiv_power(h) - power) / power)
        lo, hi = epi.epi_bounds(epi.EpiQuery(h_a=h, p_a=power))
        worst = max(worst, abs(lo - hi))
        lo2, hi2 = epi.epi_bounds(epi.EpiQuery(h_a=h, p_a=power + 1e-6))
        if not lo2 < hi2:
            return CheckResult("epi-coincidence", False,
                               f"inflated power not strict at P={power}")
    ok = worst < 1e-12
    return CheckResult("epi-coincidence", ok, f"max deviation {worst:.3e}")


def check_full_power(rng, instances: int = 15) -> CheckResult:
    for _ in range(instances):
        cp, _ = random_instance(rng)
        mu = float(2.0 ** rng.uniform(-2, 2))
        sol = optimizer.all_private_optimum(cp, mu)
        q1, q2 = sol.used_powers
        if max(q1 / cp.p1, q2 / cp.p2) < 1.0 - 1e-6:
            return CheckResult("all-private-full-power", False,
                               f"q=({q1}, {q2}) below budget at mu={mu}")
    return CheckResult("all-private-full-power", True, "ok")


def run_suite(seed: int = 0, inject_fault: bool = False) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    return [
        check_polymatroid_axioms(rng, inject_fault=inject_fault),
        check_corner_points(rng),
        check_projection_identity(rng),
        check_p0_coincidence(rng),
        check_epi_coincidence(),
        check_full_power(rng),
    ]


def format_report(results: List[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name:<28} {r.detail}")
    summary = "all checks passed" if all(r.passed for r in results) \
        else "some checks FAILED"
    lines.append(summary)
    return "\n".join(lines) + "\n"
