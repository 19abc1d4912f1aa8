"""File formats: PGM/PNG images, ROI track files, PE tables."""

from __future__ import annotations

import csv
import json
import re
from pathlib import Path

import numpy as np

from edgetex.edge_map import GrayImage
from edgetex.errors import IngestionError, ParseError

ROI_FIELDS = ("frame", "track_id", "x", "y", "w", "h")

_PGM_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n?)*(\S+)")


def _pgm_header(raw: bytes):
    tokens = []
    pos = 0
    while len(tokens) < 4:
        m = _PGM_TOKEN.match(raw, pos)
        if m is None:
            raise ParseError("truncated PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens, pos


def decode_pgm(raw: bytes) -> GrayImage:
    """Decode P2 (ASCII) or P5 (binary) PGM; values are rescaled to 0..255 when maxval differs."""
    tokens, pos = _pgm_header(raw)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise ParseError(f"not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError:
        raise ParseError("non-integer PGM header field") from None
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise ParseError(f"bad PGM header {width}x{height} maxval={maxval}")
    count = width * height
    if magic == b"P5":
        body = raw[pos + 1:]
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        if len(body) < count * dtype.itemsize:
            raise ParseError("truncated PGM pixel data")
        values = np.frombuffer(body, dtype=dtype, count=count).astype(np.int64)
    else:
        try:
            values = np.array(raw[pos:].split()[:count], dtype=np.int64)
        except ValueError:
            raise ParseError("non-integer PGM sample") from None
        if values.size < count:
            raise ParseError("truncated PGM pixel data")
    if values.max(initial=0) > maxval:
        raise ParseError("PGM sample exceeds maxval")
    if maxval != 255:
        values = (values * 255 + maxval // 2) // maxval
    return GrayImage(values.reshape(height, width).astype(np.uint8))


def encode_pgm(image: GrayImage) -> bytes:
    header = f"P5\n{image.width} {image.height}\n255\n".encode()
    return header + np.ascontiguousarray(image.data, dtype=np.uint8).tobytes()


def write_pgm(path, image: GrayImage) -> None:
    Path(path).write_bytes(encode_pgm(image))


def read_image(path) -> GrayImage:
    """PGM natively; anything Pillow reads (PNG, color) via ITU-R 601 luma, ``L = 0.299R + 0.587G + 0.114B``."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise IngestionError(f"cannot read image {path}: {exc.strerror}") from exc
    if raw[:2] in (b"P2", b"P5"):
        try:
            return decode_pgm(raw)
        except ParseError as exc:
            raise ParseError(f"{path}: {exc}") from None
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as im:
            return GrayImage(np.asarray(im.convert("L")))
    except UnidentifiedImageError:
        raise ParseError(f"{path}: unsupported image format") from None


def resolve_frames(frames, frame_ids) -> dict[int, Path]:
    """Map frame indices to files.

    ``frames`` is either a ``str.format`` pattern with a ``{frame}`` field
    (``seq/f_{frame:04d}.pgm``) or a directory whose image files, sorted by
    name, are frames 0, 1, 2, ...
    """
    frames = str(frames)
    if "{" in frames:
        return {i: Path(frames.format(frame=i)) for i in frame_ids}
    directory = Path(frames)
    if not directory.is_dir():
        raise IngestionError(f"frame directory {directory} does not exist")
    files = sorted(p for p in directory.iterdir() if p.suffix.lower() in (".pgm", ".png"))
    return {i: files[i] if 0 <= i < len(files) else directory / f"<frame {i}>" for i in frame_ids}


def _roi_from_mapping(row, line):
    from edgetex.pipeline import RoiRecord

    missing = [k for k in ROI_FIELDS if k not in row or row[k] in (None, "")]
    if missing:
        raise ParseError(f"missing field(s) {', '.join(missing)}", line)
    try:
        return RoiRecord(
            frame=int(row["frame"]),
            track_id=str(row["track_id"]),
            x=int(row["x"]), y=int(row["y"]), w=int(row["w"]), h=int(row["h"]),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad ROI value: {exc}", line) from None


def parse_rois(text: str, fmt: str = "jsonl"):
    records = []
    if fmt == "jsonl":
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", line_no) from None
            if not isinstance(row, dict):
                raise ParseError("expected a JSON object", line_no)
            records.append(_roi_from_mapping(row, line_no))
    elif fmt == "csv":
        reader = csv.DictReader(text.splitlines())
        for row in reader:
            records.append(_roi_from_mapping(row, reader.line_num))
    else:
        raise ValueError(f"unknown ROI format {fmt!r}")
    return records


def read_rois(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise IngestionError(f"cannot read ROI file {path}: {exc.strerror}") from exc
    fmt = "csv" if path.suffix.lower() == ".csv" else "jsonl"
    return parse_rois(text, fmt)


def write_rois(path, records) -> None:
    lines = [json.dumps({k: getattr(r, k) for k in ROI_FIELDS}) for r in records]
    Path(path).write_text("".join(line + "\n" for line in lines))


def read_pe_table(path, column: str = "pe", group_column: str | None = None) -> dict[str, list[float]]:
    """PE values from a CSV with a header row, grouped by ``group_column`` (one group ``"all"`` if None)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise IngestionError(f"cannot read PE table {path}: {exc.strerror}") from exc
    reader = csv.DictReader(text.splitlines())
    if reader.fieldnames is None or column not in reader.fieldnames:
        raise ParseError(f"{path}: no {column!r} column")
    if group_column is not None and group_column not in reader.fieldnames:
        raise ParseError(f"{path}: no {group_column!r} column")
    groups: dict[str, list[float]] = {}
    for row in reader:
        try:
            value = float(row[column])
        except (TypeError, ValueError):
            raise ParseError(f"bad {column} value {row[column]!r}", reader.line_num) from None
        key = "all" if group_column is None else row[group_column]
        groups.setdefault(key, []).append(value)
    return groups
