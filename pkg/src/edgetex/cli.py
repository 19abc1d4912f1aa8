"""Command line entry point: ``edgetex {analyze,run,fit,synth,plot}``.

Exit codes: 0 success, 1 bad input, 2 statistics that no Beta can match.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from edgetex import io as eio
from edgetex.beta_stats import classify_texture
from edgetex.edge_map import Roi
from edgetex.errors import EdgetexError, StatisticsError
from edgetex.pipeline import RunConfig, analyze_roi, fit_groups, process_sequence
from edgetex.synth import KINDS, SynthSpec, gen_image, gen_mask

log = logging.getLogger("edgetex")

EXIT_OK, EXIT_INPUT, EXIT_STATS = 0, 1, 2


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    d = RunConfig()
    p.add_argument("--t-grad", type=float, default=d.t_grad, help="gradient magnitude threshold (default %(default)s)")
    p.add_argument("--n-points", type=int, default=d.n_points, help="points sampled per ROI (default %(default)s)")
    p.add_argument("--t-pe", type=float, default=d.t_pe, help="reject tracks whose mean PE reaches this (default %(default)s)")
    p.add_argument("--beta-threshold", type=float, default=d.beta_threshold)
    p.add_argument("--bins", type=int, default=d.bins)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--grouping", choices=("per_track", "global"), default=d.grouping)
    p.add_argument("--averaging", default=d.averaging, help="'cumulative' or 'ema:<weight>'")
    p.add_argument("--crossing", choices=("length", "count", "transitions"), default=d.crossing)


def _config(args) -> RunConfig:
    return RunConfig(
        t_grad=args.t_grad, n_points=args.n_points, t_pe=args.t_pe,
        beta_threshold=args.beta_threshold, bins=args.bins, seed=args.seed,
        grouping=args.grouping, averaging=args.averaging, crossing=args.crossing,
    )


def _parse_box(text: str):
    try:
        x, y, w, h = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,w,h, got {text!r}") from None
    return x, y, w, h


def cmd_analyze(args) -> int:
    image = eio.read_image(args.image)
    box = args.roi or (0, 0, image.width, image.height)
    roi = Roi(*box, id=args.track_id, frame=args.frame)
    pe, diag = analyze_roi(image, roi, _config(args))
    print(json.dumps({"pe": pe, **asdict(diag)}, sort_keys=True))
    return EXIT_OK


def cmd_run(args) -> int:
    config = _config(args)
    rois = eio.read_rois(args.rois)
    paths = eio.resolve_frames(args.frames, sorted({r.frame for r in rois}))
    loaders = {i: (lambda p=p: eio.read_image(p)) for i, p in paths.items()}
    report = process_sequence(loaders, rois, config)
    out = Path(args.out)
    out.write_text(report.to_json())
    if args.csv_prefix:
        prefix = str(args.csv_prefix)
        Path(prefix + "_rows.csv").write_text(report.rows_csv())
        Path(prefix + "_scatter.csv").write_text(report.scatter_csv())
        Path(prefix + "_histogram.csv").write_text(report.histogram_csv())
    kept = sum(r.kept for r in report.rows)
    log.info("%d rows (%d kept), %d fits -> %s", len(report.rows), kept, len(report.fits), out)
    return EXIT_OK


def cmd_fit(args) -> int:
    groups = eio.read_pe_table(args.table, args.column, args.group_column)
    fits = fit_groups(groups)
    out = []
    for f in fits:
        entry = {"group": f.group, "n_samples": f.n_samples, "error": f.error}
        if f.params is not None:
            entry.update(alpha=f.params.alpha, beta=f.params.beta,
                         support_shift=f.params.support_shift)
            entry["class"] = classify_texture(f.params, args.beta_threshold).value
        out.append(entry)
    print(json.dumps(out, indent=2, sort_keys=True))
    failed = [f for f in fits if f.params is None]
    if failed:
        for f in failed:
            log.error("group %s: %s", f.group, f.error)
        if any(f.error.startswith(("InfeasibleMomentsError", "ConstantSampleError")) for f in failed):
            return EXIT_STATS
        return EXIT_INPUT
    return EXIT_OK


def cmd_synth(args) -> int:
    spec = SynthSpec(kind=args.kind, width=args.width, height=args.height, density=args.density,
                     period=args.period, seed=args.seed, level=args.level, t_grad=args.t_grad)
    if args.mask:
        from edgetex.edge_map import GrayImage

        mask = gen_mask(spec).mask
        image = GrayImage((mask * 255).astype("uint8"))
    else:
        image = gen_image(spec)
    eio.write_pgm(args.out, image)
    return EXIT_OK


def cmd_plot(args) -> int:
    from edgetex.plot import plot_report

    try:
        report = json.loads(Path(args.report).read_text())
    except OSError as exc:
        raise eio.IngestionError(f"cannot read report {args.report}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise eio.ParseError(f"{args.report}: invalid JSON ({exc.msg})") from None
    plot_report(report, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgetex", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="edge excess of one image region")
    p.add_argument("image")
    p.add_argument("--roi", type=_parse_box, help="x,y,w,h (default: whole image)")
    p.add_argument("--track-id", default="0")
    p.add_argument("--frame", type=int, default=0)
    _add_config_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("run", help="process an image sequence with an ROI track file")
    p.add_argument("--frames", required=True, help="directory of frames or pattern with {frame}")
    p.add_argument("--rois", required=True, help="ROI file (.jsonl or .csv)")
    p.add_argument("--out", required=True, help="JSON report path")
    p.add_argument("--csv-prefix", help="also write <prefix>_rows/_scatter/_histogram.csv")
    _add_config_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("fit", help="Beta fit of PE values from a CSV")
    p.add_argument("table")
    p.add_argument("--column", default="pe")
    p.add_argument("--group-column")
    p.add_argument("--beta-threshold", type=float, default=RunConfig().beta_threshold)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("synth", help="write a synthetic PGM image or mask")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--width", type=int, default=200)
    p.add_argument("--height", type=int, default=200)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--period", type=int, default=8)
    p.add_argument("--level", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-grad", type=float, default=RunConfig().t_grad)
    p.add_argument("--mask", action="store_true", help="write the edge mask (0/255) instead of the image")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("plot", help="render a report's histogram and scatter as SVG")
    p.add_argument("report")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except StatisticsError as exc:
        log.error("%s", exc)
        return EXIT_STATS
    except (EdgetexError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
