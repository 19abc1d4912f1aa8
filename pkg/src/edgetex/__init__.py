"""Edge-crossing texture density statistics for image regions."""

from edgetex.beta_stats import (
    BetaParams,
    Histogram,
    SampleStats,
    Texture,
    beta_pdf,
    build_histogram,
    classify_texture,
    fit_beta_mom,
    sample_stats,
    scatter_params,
    shift_from_unit,
    shift_to_unit,
)
from edgetex.edge_map import EdgeMap, GrayImage, Roi, compute_gradient, edge_map_for_roi, threshold_edges
from edgetex.errors import (
    ConstantSampleError,
    DegenerateRoiError,
    EdgetexError,
    InfeasibleMomentsError,
    IngestionError,
    ParseError,
    PoleError,
    RangeError,
    SpecError,
)
from edgetex.excess_graph import ExcessResult, SegmentExcess, graph_excess, segment_excess, trace_segment
from edgetex.pipeline import RoiRecord, RunConfig, RunReport, analyze_roi, process_sequence
from edgetex.roi_filter import RoiFilter, TrackState, keep_roi, update_track
from edgetex.sampler import PointSet, derive_seed, sample_edge_points
from edgetex.synth import SynthSpec, gen_image, gen_mask

__version__ = "0.1.0"
