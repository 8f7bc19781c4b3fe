"""Effective conductivity and interior fields of radially symmetric assemblages.

The library computes exact effective conductivities of two- and
three-dimensional radially symmetric composite structures (coated disks,
radial laminates, spiral annuli, spoke wheels and stars, 3D hubs and spiky
balls), resolves their interior potentials and currents mode by mode, and
verifies every closed form against independent numeric oracles. A spiral
annulus rotates the field seen by its core without disturbing anything
outside; `rotation_angle` and the `optimize` module quantify and maximize
that rotation.

Modules:
  geometry       assemblage types, validation, JSON wire format
  closed_form    exact effective conductivities and rotation formulas
  field_solver   interior potential/current, interface matching
  oracle         independent ODE and finite-difference checks
  optimize       rotation maximization and parameter sweeps
  svgplot        dependency-free SVG field plots
  cli            command-line front end
"""

__version__ = "0.1.0"

from .closed_form import (
    RotationResult,
    formula_name,
    harmonic_decomposition,
    interior_amplitude,
    max_rotation,
    max_rotation_laminate,
    optimal_phi,
    radius_for_rotation,
    rotation_angle,
    sigma_star,
)
from .field_solver import (
    FieldSolution,
    eval_current,
    eval_potential,
    nucleus_field,
    solve,
)
from .geometry import (
    ASSEMBLAGE_TYPES,
    Assemblage,
    BasicSpiral,
    CoatedCircles,
    Hub,
    InvalidAssemblage,
    LaminateSpec,
    OrangeWithCore,
    OrangeWithShell,
    Schulgasser,
    SpikyBall,
    SpiralMaterial,
    SpiralWithCore,
    SpiralWithShell,
    Star,
    Wheel,
    assemblage_from_dict,
    assemblage_from_json,
    assemblage_to_dict,
    assemblage_to_json,
    laminate_eigen,
    require_valid,
    spiral_tensor,
    validate,
)
from .optimize import (
    SweepSpec,
    maximize_rotation_numeric,
    maximize_rotation_over_fractions,
    sweep,
    sweep_csv,
)
from .oracle import verify

__all__ = [
    "__version__",
    "ASSEMBLAGE_TYPES",
    "Assemblage",
    "BasicSpiral",
    "CoatedCircles",
    "FieldSolution",
    "Hub",
    "InvalidAssemblage",
    "LaminateSpec",
    "OrangeWithCore",
    "OrangeWithShell",
    "RotationResult",
    "Schulgasser",
    "SpikyBall",
    "SpiralMaterial",
    "SpiralWithCore",
    "SpiralWithShell",
    "Star",
    "SweepSpec",
    "Wheel",
    "assemblage_from_dict",
    "assemblage_from_json",
    "assemblage_to_dict",
    "assemblage_to_json",
    "eval_current",
    "eval_potential",
    "formula_name",
    "harmonic_decomposition",
    "interior_amplitude",
    "laminate_eigen",
    "max_rotation",
    "max_rotation_laminate",
    "maximize_rotation_numeric",
    "maximize_rotation_over_fractions",
    "nucleus_field",
    "optimal_phi",
    "radius_for_rotation",
    "require_valid",
    "rotation_angle",
    "sigma_star",
    "solve",
    "spiral_tensor",
    "sweep",
    "sweep_csv",
    "validate",
    "verify",
]
