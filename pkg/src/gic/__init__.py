"""Achievable-rate regions for the 2-user weak Gaussian interference channel.

Library layout:

- :mod:`gic.model`         channel parameters, power splits, rate vectors
- :mod:`gic.polymatroid`   rank oracles, corner points, projections, cuts
- :mod:`gic.gaussian_mac`  per-receiver Gaussian MAC polymatroids
- :mod:`gic.hk_region`     Han-Kobayashi polytope and exact LP machinery
- :mod:`gic.optimizer`     power-split search, boundary trace, saturation
- :mod:`gic.layers`        delta-layer discretization and its limit
- :mod:`gic.epi`           entropy-power-inequality bounds
- :mod:`gic.validation`    seeded cross-validation property suite
- :mod:`gic.service`       FastAPI wrapper; :mod:`gic.cli` the thin client
"""

from .errors import (BadDelta, DimensionMismatch, GicError, MissingPower,
                     NonPositive, NonWeakRegime, NotOnFacet, OverlappingSets,
                     SliceMismatch, TooLarge, VerificationFailed)
from .model import (MESSAGES, ChannelParams, ExtendedRateVector, PowerSplit,
                    RateVector, make_split, rate_vector, validate_params)
from .polymatroid import (DecodingOrder, Polymatroid, corner_point,
                          max_weighted_sum, membership, nested_cuts,
                          project_above, restrict_below,
                          validate_polymatroid)
from .gaussian_mac import (Y1, Y2, build_overline_mac, dummy_rates, hk_mac,
                           mac_sum_rate, received_powers)
from .hk_region import (RatePolytope, WsrSolution, build_polytope,
                        enumerate_vertices, hk_rhs, max_wsr_over_polytope,
                        p0_slice_check, time_sharing_decomposition)
from .optimizer import (AllPrivateSolution, BoundaryPoint, SaturationResult,
                        all_private_optimum, all_private_vs_full,
                        default_mu_grid, max_wsr, saturation_levels,
                        single_mac_bound, trace_boundary)
from .layers import (LayerStack, aggregate_rates, build_stacks,
                     closed_form_rates, convergence_test)
from .epi import (EpiQuery, epi_bounds, epi_upper, gaussian_entropy,
                  gaussian_equiv_power, interference_entropy_floor)
from .validation import run_suite

__version__ = "0.1.0"
