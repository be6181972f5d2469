"""Miller-Good semiclassical quantization for symmetric double wells."""

__version__ = "0.1.0"

from .doublewell import ZSolution, eta_integral, ground_energy, lambda_max, solve_z, sweep
from .exactsolver import EigenResult, ground_state, spectrum
from .mgcore import (
    AuxiliaryProblem,
    CoordinateTransform,
    MappingTable,
    mapping_s0,
    mg_quantize,
    mg_quantize_transformed,
    wavefunction,
)
from .potential import OscillatorParams, Potential1D, evaluate, to_dimensionless, turning_points, u_min

__all__ = [
    "AuxiliaryProblem", "CoordinateTransform", "EigenResult", "MappingTable", "OscillatorParams",
    "Potential1D", "ZSolution", "eta_integral", "evaluate", "ground_energy", "ground_state",
    "lambda_max", "mapping_s0", "mg_quantize", "mg_quantize_transformed", "solve_z", "spectrum",
    "sweep", "to_dimensionless", "turning_points", "u_min", "wavefunction",
]
