"""Per-track recursive averages of the edge excess and the keep/reject rule."""

from __future__ import annotations

from dataclasses import dataclass, replace

from edgetex.errors import RangeError

DEFAULT_T_PE = 1.9


@dataclass(frozen=True)
class TrackState:
    track_id: str
    mean_pe: float
    count: int
    kept: bool


def parse_averaging(spec: str) -> float | None:
    """``"cumulative"`` -> None, ``"ema:0.2"`` / ``"ema(0.2)"`` -> 0.2."""
    spec = spec.strip()
    if spec == "cumulative":
        return None
    if spec.startswith("ema"):
        body = spec[3:].strip("():= ")
        try:
            decay = float(body)
        except ValueError:
            raise ValueError(f"bad EMA weight in {spec!r}") from None
        if not 0.0 < decay <= 1.0:
            raise ValueError(f"EMA weight must lie in (0, 1], got {decay}")
        return decay
    raise ValueError(f"unknown averaging {spec!r}; use 'cumulative' or 'ema:<weight>'")


def keep_roi(state: TrackState, t_pe: float = DEFAULT_T_PE) -> bool:
    if state.count < 1:
        raise ValueError("track has no observations")
    return state.mean_pe < t_pe


def update_track(state: TrackState | None, pe: float, track_id: str | None = None,
                 t_pe: float = DEFAULT_T_PE, ema: float | None = None) -> TrackState:
    """Fold one observation into the running mean.

    Cumulative mean ``m_i = m_{i-1} + (pe - m_{i-1}) / i`` unless ``ema`` is
    given, in which case ``m_i = m_{i-1} + ema * (pe - m_{i-1})``.  The
    verdict is refreshed on every update.
    """
    if not 1.0 <= pe <= 2.0:
        raise RangeError(f"pe={pe} outside [1, 2]")
    if state is None:
        if track_id is None:
            raise ValueError("track_id is required to start a track")
        return TrackState(track_id=str(track_id), mean_pe=float(pe), count=1, kept=pe < t_pe)
    count = state.count + 1
    gain = ema if ema is not None else 1.0 / count
    mean = state.mean_pe + (pe - state.mean_pe) * gain
    mean = min(max(mean, 1.0), 2.0)
    new = replace(state, mean_pe=mean, count=count)
    return replace(new, kept=keep_roi(new, t_pe))


class RoiFilter:
    """Track states keyed by track id; tracks never share state."""

    def __init__(self, t_pe: float = DEFAULT_T_PE, ema: float | None = None):
        self.t_pe = t_pe
        self.ema = ema
        self.states: dict[str, TrackState] = {}

    def observe(self, track_id, pe: float) -> TrackState:
        key = str(track_id)
        state = update_track(self.states.get(key), pe, track_id=key, t_pe=self.t_pe, ema=self.ema)
        self.states[key] = state
        return state
