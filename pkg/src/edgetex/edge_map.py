"""Sobel gradient magnitudes and thresholded edge masks over ROI crops."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from edgetex.errors import DegenerateRoiError, RangeError

DEFAULT_T_GRAD = 48.0


@dataclass(frozen=True)
class GrayImage:
    """8-bit luminance raster stored as a ``(height, width)`` uint8 array."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D raster, got shape {data.shape}")
        if data.dtype != np.uint8:
            if data.size and (data.min() < 0 or data.max() > 255):
                raise RangeError("luminance values must lie in [0, 255]")
            data = data.astype(np.uint8)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, width: int, height: int, values) -> "GrayImage":
        values = np.asarray(values)
        if values.size != width * height:
            raise ValueError(f"{values.size} values for a {width}x{height} image")
        return cls(values.reshape(height, width))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class Roi:
    x: int
    y: int
    w: int
    h: int
    id: str = "0"
    frame: int = 0

    @classmethod
    def full(cls, image: GrayImage, id: str = "0", frame: int = 0) -> "Roi":
        return cls(0, 0, image.width, image.height, id, frame)

    def check(self, image: GrayImage) -> None:
        if self.w < 3 or self.h < 3:
            raise DegenerateRoiError(f"roi {self.id!r} is {self.w}x{self.h}; need at least 3x3")
        if self.x < 0 or self.y < 0 or self.x + self.w > image.width or self.y + self.h > image.height:
            raise DegenerateRoiError(
                f"roi {self.id!r} ({self.x},{self.y},{self.w},{self.h}) leaves the "
                f"{image.width}x{image.height} image"
            )


@dataclass(frozen=True, eq=False)
class EdgeMap:
    magnitude: np.ndarray
    mask: np.ndarray
    threshold: float

    @property
    def width(self) -> int:
        return self.mask.shape[1]

    @property
    def height(self) -> int:
        return self.mask.shape[0]

    @classmethod
    def from_mask(cls, mask) -> "EdgeMap":
        """Wrap a ready-made boolean mask (magnitude 1 on, 0 off, threshold 0)."""
        mask = np.asarray(mask, dtype=bool)
        if mask.ndim != 2:
            raise ValueError("mask must be 2-D")
        return threshold_edges(mask.astype(np.float64), 0.0)


def sobel_magnitude(pixels: np.ndarray) -> np.ndarray:
    """L2 magnitude of the 3x3 Sobel response; the 1-pixel frame stays zero."""
    a = np.asarray(pixels, dtype=np.float64)
    out = np.zeros_like(a)
    if a.shape[0] < 3 or a.shape[1] < 3:
        return out
    tl, tc, tr = a[:-2, :-2], a[:-2, 1:-1], a[:-2, 2:]
    ml, mr = a[1:-1, :-2], a[1:-1, 2:]
    bl, bc, br = a[2:, :-2], a[2:, 1:-1], a[2:, 2:]
    gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl)
    gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr)
    out[1:-1, 1:-1] = np.sqrt(gx * gx + gy * gy)
    return out


def compute_gradient(image: GrayImage, roi: Roi | None = None) -> np.ndarray:
    """Gradient magnitude raster of the ROI crop, shape ``(roi.h, roi.w)``."""
    if roi is None:
        roi = Roi.full(image)
    roi.check(image)
    crop = image.data[roi.y : roi.y + roi.h, roi.x : roi.x + roi.w]
    return sobel_magnitude(crop)


def threshold_edges(magnitude, t_grad: float = DEFAULT_T_GRAD) -> EdgeMap:
    if t_grad < 0:
        raise RangeError(f"t_grad must be non-negative, got {t_grad}")
    magnitude = np.array(magnitude, dtype=np.float64)
    if magnitude.ndim != 2:
        raise ValueError("magnitude raster must be 2-D")
    mask = magnitude > t_grad
    magnitude.setflags(write=False)
    mask.setflags(write=False)
    return EdgeMap(magnitude=magnitude, mask=mask, threshold=float(t_grad))


def edge_map_for_roi(image: GrayImage, roi: Roi, t_grad: float = DEFAULT_T_GRAD) -> EdgeMap:
    return threshold_edges(compute_gradient(image, roi), t_grad)
