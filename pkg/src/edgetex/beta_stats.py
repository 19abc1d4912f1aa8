"""Method-of-moments Beta fits, densities, histograms and the beta-threshold texture rule."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from edgetex.errors import ConstantSampleError, InfeasibleMomentsError, PoleError, RangeError

PE_SHIFT = 1.0
DEFAULT_BINS = 32
DEFAULT_BETA_THRESHOLD = 1.5


class Texture(str, enum.Enum):
    HIGH = "HighTexture"
    LOW = "LowTexture"


@dataclass(frozen=True)
class BetaParams:
    alpha: float
    beta: float
    support_shift: float = 0.0

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise RangeError(f"Beta shapes must be positive, got alpha={self.alpha}, beta={self.beta}")

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    @property
    def variance(self) -> float:
        s = self.alpha + self.beta
        return self.alpha * self.beta / (s * s * (s + 1.0))


@dataclass(frozen=True)
class SampleStats:
    mean: float
    variance: float
    count: int


@dataclass(frozen=True)
class Histogram:
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]


def _check_pe(values: np.ndarray) -> None:
    if values.size and (np.isnan(values).any() or values.min() < 1.0 or values.max() > 2.0):
        raise RangeError("edge excess values must lie in [1, 2]")


def shift_to_unit(pe_values: Iterable[float]) -> list[float]:
    values = np.asarray(list(pe_values), dtype=np.float64)
    _check_pe(values)
    return (values - PE_SHIFT).tolist()


def shift_from_unit(unit_values: Iterable[float]) -> list[float]:
    values = np.asarray(list(unit_values), dtype=np.float64)
    if values.size and (np.isnan(values).any() or values.min() < 0.0 or values.max() > 1.0):
        raise RangeError("unit values must lie in [0, 1]")
    return (values + PE_SHIFT).tolist()


def sample_stats(samples: Sequence[float]) -> SampleStats:
    """Mean and population variance (the moments a Beta fit has to match)."""
    x = np.asarray(samples, dtype=np.float64)
    if x.size < 2:
        raise ValueError(f"need at least 2 samples, got {x.size}")
    mu = math.fsum(x.tolist()) / x.size
    var = math.fsum(((x - mu) ** 2).tolist()) / x.size
    return SampleStats(mean=mu, variance=var, count=int(x.size))


def fit_beta_mom(samples: Sequence[float], support_shift: float = 0.0) -> BetaParams:
    """Moment-matched Beta(alpha, beta) for samples on (0, 1).

    ``alpha = mu * (mu * (1 - mu) / var - 1)`` and ``beta = alpha * (1/mu - 1)``.
    """
    st = sample_stats(samples)
    mu, var = st.mean, st.variance
    if not 0.0 < mu < 1.0:
        raise RangeError(f"sample mean {mu} is outside (0, 1)")
    if var == 0.0 or min(samples) == max(samples):
        raise ConstantSampleError("samples are constant; variance is zero")
    if var >= mu * (1.0 - mu):
        raise InfeasibleMomentsError(
            f"variance {var:.6g} >= mu(1-mu) = {mu * (1 - mu):.6g}; no Beta distribution matches"
        )
    alpha = mu * (mu * (1.0 - mu) / var - 1.0)
    beta = alpha * (1.0 / mu - 1.0)
    return BetaParams(alpha=alpha, beta=beta, support_shift=support_shift)


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_pdf(params: BetaParams, p: float) -> float:
    a, b = params.alpha, params.beta
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"p={p} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        shape = a if p == 0.0 else b
        if shape < 1.0:
            raise PoleError(f"density has a pole at p={p} for alpha={a}, beta={b}")
        if shape > 1.0:
            return 0.0
        # shape == 1: the finite limit 1 / B(a, b) times the other factor at the endpoint
        return math.exp(-_log_beta(a, b))
    logp = (a - 1.0) * math.log(p) + (b - 1.0) * math.log1p(-p) - _log_beta(a, b)
    return math.exp(logp)


def beta_pdf_array(params: BetaParams, p) -> np.ndarray:
    """Vectorized density on the open interval (0, 1)."""
    p = np.asarray(p, dtype=np.float64)
    a, b = params.alpha, params.beta
    return np.exp((a - 1.0) * np.log(p) + (b - 1.0) * np.log1p(-p) - _log_beta(a, b))


def build_histogram(pe_values: Iterable[float], bins: int = DEFAULT_BINS) -> Histogram:
    """Uniform bins over [1, 2]; the last bin includes 2.0."""
    if bins < 1:
        raise ValueError(f"bins must be at least 1, got {bins}")
    values = np.asarray(list(pe_values), dtype=np.float64)
    _check_pe(values)
    counts, edges = np.histogram(values, bins=bins, range=(1.0, 2.0))
    return Histogram(bin_edges=tuple(edges.tolist()), counts=tuple(int(c) for c in counts))


def classify_texture(params: BetaParams, beta_threshold: float = DEFAULT_BETA_THRESHOLD) -> Texture:
    return Texture.HIGH if params.beta < beta_threshold else Texture.LOW


@dataclass(frozen=True)
class ScatterRow:
    id: str
    alpha: float
    beta: float
    texture: Texture


def scatter_params(fits, beta_threshold: float = DEFAULT_BETA_THRESHOLD) -> list[ScatterRow]:
    return [
        ScatterRow(id=str(key), alpha=params.alpha, beta=params.beta,
                   texture=classify_texture(params, beta_threshold))
        for key, params in fits
    ]
