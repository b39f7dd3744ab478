"""Python bindings for the ptlab C++ core."""

from ._core import (
    PtlabError,
    bound_states,
    critical_w,
    defectiveness_at,
    dieudonne_residual,
    eigenvalues,
    hamiltonian,
    hamiltonian_from_json,
    kep_locate,
    metric_spectral,
    presets,
    pseudometric_tau,
    recurrent_metric,
    sylvester_nullspace_dimension,
    xi_optimize,
)

__all__ = [
    "PtlabError",
    "bound_states",
    "critical_w",
    "defectiveness_at",
    "dieudonne_residual",
    "eigenvalues",
    "hamiltonian",
    "hamiltonian_from_json",
    "kep_locate",
    "metric_spectral",
    "presets",
    "pseudometric_tau",
    "recurrent_metric",
    "sylvester_nullspace_dimension",
    "xi_optimize",
]
