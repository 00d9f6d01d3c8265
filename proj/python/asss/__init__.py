"""Python access to the ASSS solvers, bench harness and spectra."""

from ._asss import (
    AsssError,
    ConfigError,
    bench,
    mass_matrix,
    mesh_info,
    methods,
    spectra,
    stiffness_matrix,
)

__all__ = [
    "AsssError",
    "ConfigError",
    "bench",
    "mass_matrix",
    "mesh_info",
    "methods",
    "spectra",
    "stiffness_matrix",
]
