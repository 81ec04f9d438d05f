"""Numerical toolbox for one-shot channel capacities: channel
construction from Stinespring isometries, coherent/private information
maximization, entanglement-assisted protocol simulation, and closed-form
capacity bound arithmetic."""

from .channels import (
    FlaggedChannel,
    StinespringChannel,
    apply,
    apply_complement,
    choi,
    complement,
    direct_sum,
    make_erasure,
    make_platypus,
    make_rocket_flagged,
    make_rocket_instance,
    tensor,
)
from .info import (
    Ensemble,
    coherent_information,
    coherent_information_flagged,
    holevo_information,
    private_information_value,
    q1_max_tot,
)
from .optimize import (
    OptimizeResult,
    OptimizerConfig,
    gradient_selfcheck,
    maximize_coherent_information,
    maximize_private_information,
)
from .parser import build, parse_channel_spec

__all__ = [
    "FlaggedChannel",
    "StinespringChannel",
    "apply",
    "apply_complement",
    "choi",
    "complement",
    "direct_sum",
    "make_erasure",
    "make_platypus",
    "make_rocket_flagged",
    "make_rocket_instance",
    "tensor",
    "Ensemble",
    "coherent_information",
    "coherent_information_flagged",
    "holevo_information",
    "private_information_value",
    "q1_max_tot",
    "OptimizeResult",
    "OptimizerConfig",
    "gradient_selfcheck",
    "maximize_coherent_information",
    "maximize_private_information",
    "build",
    "parse_channel_spec",
]

__version__ = "0.1.0"
