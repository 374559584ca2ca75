"""D2Q37 lattice Boltzmann layout benchmark."""

from ._core import (
    NPOP,
    Model,
    Simulation,
    collide_gflops,
    mlups,
    model,
    propagate_gbps,
    run_validation,
    __version__,
)

__all__ = [
    "NPOP",
    "Model",
    "Simulation",
    "collide_gflops",
    "mlups",
    "model",
    "propagate_gbps",
    "run_validation",
    "__version__",
]
