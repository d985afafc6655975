"""Multi-family polynomial partitioning.

Degree schedules, discrete ham-sandwich cuts in lifted monomial coordinates,
per-sign-pattern cell counts, and the exact Dickson-polynomial obstruction
over the two-element field.
"""

from ._core import (
    DEFAULT_TAU,
    __version__,
    bisect_exact,
    bisect_search,
    cell_bound_constant,
    compute_delta,
    compute_schedule,
    count_cells,
    crossing_count,
    dickson_product,
    dickson_symmetric,
    evaluate,
    monomial_basis,
    obstruction_check,
    partition_points,
    search_phi_zero,
    sign_region,
    veronese_lift,
)

__all__ = [
    "DEFAULT_TAU",
    "__version__",
    "bisect_exact",
    "bisect_search",
    "cell_bound_constant",
    "compute_delta",
    "compute_schedule",
    "count_cells",
    "crossing_count",
    "dickson_product",
    "dickson_symmetric",
    "evaluate",
    "monomial_basis",
    "obstruction_check",
    "partition_points",
    "search_phi_zero",
    "sign_region",
    "veronese_lift",
]
