"""Minimal rational curves on smooth complete toric varieties, read off their fans."""
from .analysis import (AnalysisReport, BoundsReport, ConjectureReport, DegNClassification,
                       DegNKind, check_bounds, check_conjecture, classify_degree_n, summarize)
from .curves import (MinimalComponent, PrimitiveCollection, WallCurve, ample_divisor,
                     is_fano, is_projective, minimal_components, primitive_collections,
                     primitive_relation, pseudo_index, wall_curves)
from .errors import *  # noqa: F401,F403
from .fan import (BUILTINS, Fan, ValidationReport, Wall, build_fan, builtin_fan, is_cone,
                  locate_point, picard_number, product, star_subdivide, validate_fan)
from .fanfile import FanDocument, parse_fan, read_fan, serialize_fan, to_document, write_fan

__version__ = "0.1.0"
