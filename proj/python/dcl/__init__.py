"""Stabilizer-circuit and domain-wall engines for boundary-dissipated qudit chains."""

from ._dcl import (  # noqa: F401
    DclConfigError,
    DclIoError,
    DclNumericsError,
    StabilizerState,
    annealed_mi,
    annealed_mi_curve,
    branch_point_w1,
    critical_p,
    crossing_point,
    dp_kink_pc,
    excursion_length,
    finite_rate_mi,
    finite_rate_thresholds,
    fit_collapse,
    free_energy,
    laplace_za,
    laplace_zf,
    run_clifford,
    survival_probability,
    thermalization_time,
    __version__,
)
