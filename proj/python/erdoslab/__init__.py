"""Python bindings for the erdoslab C++ core.

Everything here is a thin wrapper: values are computed by the compiled
extension and returned as plain Python objects or small result records.
"""

from ._erdoslab import (
    ArithFn,
    BpVariant,
    BudgetError,
    ConstantKind,
    SeriesKind,
    all_constants,
    constant,
    ctau_empirical,
    ctau_lower_c1,
    ctau_lower_c3,
    ctau_monte_carlo,
    density_scan,
    dickman_rho,
    diff_histogram,
    equal_density,
    equidist_defect,
    factor,
    llt_deviation,
    linear_profile,
    m_measure,
    moment_check,
    neighbor_covariance,
    nu_match_upper,
    omega_barriers,
    pair_density,
    run_cli,
    scan_grid,
    series,
    check_series_identity,
    sieve_window,
    smooth_density,
    sum_pmf,
    tau_k2_scan,
    two_point_correlation,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
