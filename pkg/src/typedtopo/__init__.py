"""Typed topological structures of planar point sets on a polar quotient grid."""

from .components import (
    Branch,
    ComponentInterval,
    Hole,
    adjacency,
    boundary_points,
    branch_boundaries,
    build_branches,
    components_by_track,
    components_on_track,
    find_anomalies,
    find_holes,
    hull_boundary,
)
from .errors import (
    CurveEvaluationError,
    DatasetParseError,
    DomainError,
    ScaleUndefined,
    TransformUndefined,
    TranslationUndefined,
    TypeIIViolation,
)
from .grid import (
    ORIGIN,
    AreaRef,
    GridParams,
    HRef,
    decode,
    dividing_point,
    encode,
    metric,
    min_sectors,
    pad,
    representative,
    track_sequence,
)
from .locator import ImplicitCurve, locate, map_curve, map_dataset
from .pseudotree import PseudoTree, build_pseudotree, find_cycles
from .report import RunConfig, parse_dataset, run_pipeline
from .shapes import classify_line, decompose_polyline, directions
from .svg import render_svg
from .transforms import TransformSpec, rotate, rotate_inverse, scale, translate
from .typed_core import (
    FinitePointSpace,
    TypeTag,
    connected_components,
    direct_closure,
    is_type_q_connected,
    trail,
)

__version__ = "0.1.0"
