"""Per-ROI analysis, sequence processing and run reports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Mapping, Sequence

from edgetex.beta_stats import (
    DEFAULT_BETA_THRESHOLD,
    DEFAULT_BINS,
    PE_SHIFT,
    BetaParams,
    Histogram,
    build_histogram,
    fit_beta_mom,
    scatter_params,
    shift_to_unit,
)
from edgetex.edge_map import DEFAULT_T_GRAD, GrayImage, Roi, edge_map_for_roi
from edgetex.errors import EdgetexError, IngestionError, RangeError, StatisticsError
from edgetex.excess_graph import CROSSING_MODES, graph_excess
from edgetex.roi_filter import DEFAULT_T_PE, RoiFilter, parse_averaging
from edgetex.sampler import DEFAULT_N_POINTS, derive_seed, sample_edge_points

GROUPINGS = ("per_track", "global")


@dataclass(frozen=True)
class RoiRecord:
    frame: int
    track_id: str
    x: int
    y: int
    w: int
    h: int

    def to_roi(self) -> Roi:
        return Roi(self.x, self.y, self.w, self.h, id=self.track_id, frame=self.frame)


@dataclass(frozen=True)
class RunConfig:
    t_grad: float = DEFAULT_T_GRAD
    n_points: int = DEFAULT_N_POINTS
    t_pe: float = DEFAULT_T_PE
    beta_threshold: float = DEFAULT_BETA_THRESHOLD
    bins: int = DEFAULT_BINS
    seed: int = 0
    grouping: str = "per_track"
    averaging: str = "cumulative"
    crossing: str = "length"

    def __post_init__(self):
        if self.t_grad < 0 or self.t_pe <= 0 or self.beta_threshold <= 0:
            raise ValueError("thresholds must be positive (t_grad may be 0)")
        if self.n_points < 2:
            raise ValueError(f"n_points must be at least 2, got {self.n_points}")
        if self.bins < 1:
            raise ValueError(f"bins must be at least 1, got {self.bins}")
        if self.grouping not in GROUPINGS:
            raise ValueError(f"grouping must be one of {GROUPINGS}")
        if self.crossing not in CROSSING_MODES:
            raise ValueError(f"crossing must be one of {CROSSING_MODES}")
        parse_averaging(self.averaging)


@dataclass(frozen=True)
class Diagnostics:
    L: float
    E_L: float
    n_points_used: int
    n_edge_pixels: int
    seed: int
    no_edges: bool


def analyze_roi(image: GrayImage, roi: Roi, config: RunConfig = RunConfig(),
                seed: int | None = None) -> tuple[float, Diagnostics]:
    """Gradient -> threshold -> sample -> graph excess for one ROI.

    ``seed`` defaults to the one derived from ``(config.seed, roi.frame, roi.id)``.
    """
    edges = edge_map_for_roi(image, roi, config.t_grad)
    if seed is None:
        seed = derive_seed(config.seed, roi.frame, roi.id)
    points = sample_edge_points(edges, config.n_points, seed)
    result = graph_excess(edges, points, crossing=config.crossing)
    n_edge = int(edges.mask.sum())
    return result.pe, Diagnostics(
        L=result.L, E_L=result.E_L, n_points_used=len(points),
        n_edge_pixels=n_edge, seed=points.seed, no_edges=n_edge == 0,
    )


@dataclass(frozen=True)
class ReportRow:
    frame: int
    track_id: str
    pe: float
    L: float
    E_L: float
    n_points_used: int
    no_edges: bool
    running_mean: float
    count: int
    kept: bool


@dataclass(frozen=True)
class GroupFit:
    group: str
    n_samples: int
    params: BetaParams | None
    error: str | None = None


@dataclass
class RunReport:
    config: RunConfig
    rows: list[ReportRow] = field(default_factory=list)
    fits: list[GroupFit] = field(default_factory=list)
    histogram: Histogram | None = None

    @property
    def scatter(self):
        ok = [(f.group, f.params) for f in self.fits if f.params is not None]
        return scatter_params(ok, self.config.beta_threshold)

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "rows": [asdict(r) for r in self.rows],
            "fits": [
                {"group": f.group, "n_samples": f.n_samples,
                 "alpha": f.params.alpha if f.params else None,
                 "beta": f.params.beta if f.params else None,
                 "support_shift": f.params.support_shift if f.params else None,
                 "error": f.error}
                for f in self.fits
            ],
            "histogram": None if self.histogram is None else {
                "bin_edges": list(self.histogram.bin_edges),
                "counts": list(self.histogram.counts),
            },
            "scatter": [
                {"id": s.id, "alpha": s.alpha, "beta": s.beta, "class": s.texture.value}
                for s in self.scatter
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def rows_csv(self) -> str:
        return _csv([f.name for f in ReportRow.__dataclass_fields__.values()],
                    [list(asdict(r).values()) for r in self.rows])

    def scatter_csv(self) -> str:
        return _csv(["id", "alpha", "beta", "class"],
                    [[s.id, s.alpha, s.beta, s.texture.value] for s in self.scatter])

    def histogram_csv(self) -> str:
        h = self.histogram
        rows = [] if h is None else [
            [h.bin_edges[k], h.bin_edges[k + 1], c] for k, c in enumerate(h.counts)
        ]
        return _csv(["lo", "hi", "count"], rows)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def fit_groups(groups: Mapping[str, Sequence[float]]) -> list[GroupFit]:
    """Beta fit per group over PE values shifted to [0, 1]; failures are recorded, not raised."""
    fits = []
    for key in sorted(groups):
        values = groups[key]
        try:
            params = fit_beta_mom(shift_to_unit(values), support_shift=PE_SHIFT)
            fits.append(GroupFit(key, len(values), params))
        except (StatisticsError, RangeError, ValueError) as exc:
            fits.append(GroupFit(key, len(values), None, f"{type(exc).__name__}: {exc}"))
    return fits


def process_sequence(images, rois: Sequence[RoiRecord], config: RunConfig = RunConfig()) -> RunReport:
    """Run every ROI record, update track states in frame order, fit and histogram.

    ``images`` is a sequence indexed by frame or a mapping ``frame -> GrayImage``;
    a mapping's values may also be zero-argument callables (lazy loaders).
    Every record yields one row, kept or not.
    """
    ordered = sorted(rois, key=lambda r: (r.frame, r.track_id, r.x, r.y, r.w, r.h))
    filt = RoiFilter(config.t_pe, parse_averaging(config.averaging))
    rows = []
    cache: dict[int, GrayImage] = {}
    for rec in ordered:
        image = cache.get(rec.frame)
        if image is None:
            image = _load_frame(images, rec.frame)
            cache.clear()
            cache[rec.frame] = image
        try:
            pe, diag = analyze_roi(image, rec.to_roi(), config)
        except EdgetexError as exc:
            raise type(exc)(f"frame {rec.frame}, track {rec.track_id}: {exc}") from None
        state = filt.observe(rec.track_id, pe)
        rows.append(ReportRow(
            frame=rec.frame, track_id=rec.track_id, pe=pe, L=diag.L, E_L=diag.E_L,
            n_points_used=diag.n_points_used, no_edges=diag.no_edges,
            running_mean=state.mean_pe, count=state.count, kept=state.kept,
        ))
    groups: dict[str, list[float]] = {}
    for row in rows:
        key = row.track_id if config.grouping == "per_track" else "all"
        groups.setdefault(key, []).append(row.pe)
    return RunReport(
        config=config,
        rows=rows,
        fits=fit_groups(groups),
        histogram=build_histogram([r.pe for r in rows], config.bins),
    )


def _load_frame(images, frame: int) -> GrayImage:
    if frame < 0:
        raise IngestionError(f"frame {frame} is missing")
    try:
        item = images[frame]
    except (IndexError, KeyError):
        raise IngestionError(f"frame {frame} is missing") from None
    if callable(item):
        try:
            item = item()
        except OSError as exc:
            raise IngestionError(f"frame {frame}: {exc}") from exc
    if not isinstance(item, GrayImage):
        raise IngestionError(f"frame {frame}: expected a GrayImage, got {type(item).__name__}")
    return item
