"""Lower-bound constructions: blow-ups, iterated blow-ups, G_t and the geometric parity construction."""

from .evaluator import DensityValue, blowup_density, iterated_density, pattern_density
from .families import gt_edge_density, gt_kminus_density, gt_pattern, pattern_from_graph, pattern_hom_exists
from .geometric import Arrangement, GeometricDistribution, geometric_exact, geometric_sample
from .library import named_pattern
from .optimize import OptimizationError, optimize_weights
from .pattern import Pattern, PatternError, complement_pattern, format_pattern, parse_pattern
from .realize import build_blowup

__all__ = [
    "Arrangement", "DensityValue", "GeometricDistribution", "OptimizationError", "Pattern",
    "PatternError", "blowup_density", "build_blowup", "complement_pattern", "format_pattern",
    "geometric_exact", "geometric_sample", "gt_edge_density", "gt_kminus_density", "gt_pattern",
    "iterated_density", "named_pattern", "optimize_weights", "parse_pattern", "pattern_density",
    "pattern_from_graph", "pattern_hom_exists",
]
