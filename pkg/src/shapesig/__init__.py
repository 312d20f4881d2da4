"""Fourier boundary signatures for shape retrieval."""

from .contour import (
    BoundingRect,
    binarize,
    bounding_rect,
    centroid,
    largest_component,
    perimeter,
    resample,
    shoelace_area,
    trace_boundary,
)
from .errors import (
    DegenerateDescriptor,
    DegenerateShape,
    DimensionMismatch,
    EmptyDataset,
    EmptyImage,
    EmptyShape,
    FormatError,
    InvalidCounts,
    InvalidSampleCount,
    InvalidStep,
    KindMismatch,
    MissingRelevant,
    ShapeSigError,
    UnbalancedClasses,
)
from .evaluation import EvalReport, PrPoint, evaluate, export_report, pr_curve, precision, recall
from .index import FeatureIndex, RankedResult, build_index, build_many, class_of, load, query, save
from .pipeline import ExtractConfig, extract_from_image, extract_from_mask, load_image, shape_frame
from .signatures import (
    KINDS,
    SignatureParams,
    af_signature,
    arc_signature,
    cc_signature,
    cld_signature,
    fsd_signature,
    pc_signature,
    tar_signature,
)
from .spectral import dft, fd_normalize, fsd_descriptor

__version__ = "0.1.0"
