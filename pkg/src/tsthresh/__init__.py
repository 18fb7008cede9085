"""Gray-level thresholding by maximum Tsallis entropy.

Picks optimal thresholds for 2..5 classes by maximizing the pseudo-additive
total entropy of the renormalized class distributions, sweeps the entropic
index q across (0, 1), and localizes the abrupt threshold jumps some images
exhibit at a critical q.
"""

__version__ = "0.1.0"

from .entropy import (
    ClassDecomposition,
    EntropicIndex,
    InvalidPartitionError,
    class_bounds,
    class_entropy,
    decompose,
    shannon_entropy,
    total_entropy,
    tsallis_entropy,
)
from .histogram import LEVELS, GrayDistribution, Histogram, histogram_of, normalize
from .image_io import GrayImage, ImageFormatError, read_image, write_image
from .optimizer import (
    MAX_CLASSES,
    InfeasiblePartitionError,
    OptimizationResult,
    ThresholdSet,
    entropy_landscape,
    optimize,
)
from .segmenter import LevelMap, apply_thresholds, default_level_map
from .transition import (
    CurveRow,
    GradualDrift,
    SweepConfig,
    ThresholdCurve,
    Transition,
    TransitionReport,
    curve_to_csv,
    detect_transitions,
    find_transitions,
    q_grid,
    refine_transition,
    report_to_csv,
    sweep,
)

__all__ = [
    "__version__",
    "LEVELS",
    "MAX_CLASSES",
    "GrayImage",
    "ImageFormatError",
    "read_image",
    "write_image",
    "Histogram",
    "GrayDistribution",
    "histogram_of",
    "normalize",
    "EntropicIndex",
    "InvalidPartitionError",
    "ClassDecomposition",
    "tsallis_entropy",
    "shannon_entropy",
    "class_entropy",
    "total_entropy",
    "class_bounds",
    "decompose",
    "ThresholdSet",
    "OptimizationResult",
    "InfeasiblePartitionError",
    "optimize",
    "entropy_landscape",
    "SweepConfig",
    "CurveRow",
    "ThresholdCurve",
    "Transition",
    "GradualDrift",
    "TransitionReport",
    "q_grid",
    "sweep",
    "detect_transitions",
    "refine_transition",
    "find_transitions",
    "curve_to_csv",
    "report_to_csv",
    "LevelMap",
    "default_level_map",
    "apply_thresholds",
]
