"""Synthetic masks and images with known edge statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from edgetex.edge_map import DEFAULT_T_GRAD, EdgeMap, GrayImage, sobel_magnitude
from edgetex.errors import SpecError

KINDS = ("bernoulli_mask", "stripes", "blank", "step")


@dataclass(frozen=True)
class SynthSpec:
    """Parameters for one synthetic raster.

    ``density`` is the Bernoulli edge probability; ``period`` the stripe
    period in pixels; ``level`` the bright gray value of step/stripe images.
    ``t_grad`` is only used by ``gen_image`` for Bernoulli noise, whose
    amplitude is calibrated so the thresholded Sobel mask has edge density
    close to ``density``.
    """

    kind: str
    width: int
    height: int
    density: float = 0.5
    period: int = 8
    seed: int = 0
    level: int = 100
    t_grad: float = DEFAULT_T_GRAD

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise SpecError(f"unknown kind {self.kind!r}; choose from {KINDS}")
        if self.width < 1 or self.height < 1:
            raise SpecError(f"bad size {self.width}x{self.height}")
        if self.kind == "bernoulli_mask" and not 0.0 <= self.density <= 1.0:
            raise SpecError(f"density must lie in [0, 1], got {self.density}")
        if self.kind == "stripes" and self.period < 2:
            raise SpecError(f"stripe period must be at least 2, got {self.period}")
        if self.kind in ("step", "stripes") and not 0 < self.level <= 255:
            raise SpecError(f"level must lie in (0, 255], got {self.level}")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _stripe_columns(spec: SynthSpec) -> np.ndarray:
    return (np.arange(spec.width) % spec.period) < spec.period // 2


def gen_mask(spec: SynthSpec) -> EdgeMap:
    spec.validate()
    shape = (spec.height, spec.width)
    if spec.kind == "blank":
        mask = np.zeros(shape, dtype=bool)
    elif spec.kind == "bernoulli_mask":
        mask = _rng(spec.seed).random(shape) < spec.density
    elif spec.kind == "stripes":
        mask = np.broadcast_to(_stripe_columns(spec), shape).copy()
    else:
        # what the Sobel operator marks on the step image: both boundary columns, interior rows
        mask = np.zeros(shape, dtype=bool)
        c = spec.width // 2
        mask[1:-1, max(c - 1, 1):min(c + 1, spec.width - 1)] = True
    return EdgeMap.from_mask(mask)


def _calibrated_noise(spec: SynthSpec) -> np.ndarray:
    shape = (spec.height, spec.width)
    if spec.density == 0.0:
        return np.full(shape, 128, dtype=np.uint8)
    u = _rng(spec.seed).random(shape) - 0.5
    mags = sobel_magnitude(u)[1:-1, 1:-1].ravel()
    if mags.size == 0:
        raise SpecError("noise image needs at least 3x3 pixels")
    q = np.quantile(mags, 1.0 - spec.density)
    scale = spec.t_grad / q if q > 0 else np.inf
    if not scale <= 254.0:
        raise SpecError(f"edge density {spec.density} is not reachable at t_grad={spec.t_grad} with 8-bit noise")
    return np.clip(np.rint(128.0 + scale * u), 0, 255).astype(np.uint8)


def gen_image(spec: SynthSpec) -> GrayImage:
    spec.validate()
    shape = (spec.height, spec.width)
    if spec.kind == "blank":
        data = np.full(shape, 128, dtype=np.uint8)
    elif spec.kind == "step":
        data = np.zeros(shape, dtype=np.uint8)
        data[:, spec.width // 2:] = spec.level
    elif spec.kind == "stripes":
        row = np.where(_stripe_columns(spec), spec.level, 0).astype(np.uint8)
        data = np.broadcast_to(row, shape).copy()
    else:
        data = _calibrated_noise(spec)
    return GrayImage(data)
