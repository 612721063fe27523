"""Keyframe sampling and trajectory-trail geometry.

Sampling anchors at frame 0 with stride L = floor(total_frames / num_samples),
so the trail window behind each sampled frame (the L original frames before
it) tiles the timeline exactly: consecutive keyframes carry adjacent trails
with no gap and no overlap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .trackmodel import Track, VideoMeta


@dataclass(frozen=True)
class SamplePlan:
    total_frames: int
    num_samples: int
    interval: int
    indices: tuple[int, ...]


@dataclass(frozen=True)
class Trail:
    """Past box centers of one track, covering original frames t-L .. t-1."""

    track_id: int
    frame: int
    points: tuple[tuple[float, float], ...]


def adaptive_trail_length(meta: VideoMeta, num_samples: int) -> int:
    """Trail length equal to the sampling interval, clamped to >= 1."""
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    return max(1, meta.total_frames // num_samples)


def make_sample_plan(meta: VideoMeta, num_samples: int = 16) -> SamplePlan:
    """Uniformly sample num_samples frame indices 0, L, 2L, ... (L = interval)."""
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    if num_samples > meta.total_frames:
        raise ValueError(
            f"too few frames: cannot sample {num_samples} of {meta.total_frames}"
        )
    interval = meta.total_frames // num_samples
    indices = tuple(range(0, num_samples * interval, interval))
    return SamplePlan(
        total_frames=meta.total_frames,
        num_samples=num_samples,
        interval=interval,
        indices=indices,
    )


def build_trail(track: Track, frame: int, length: int) -> Trail:
    """Collect box centers over original frames max(0, frame-length) .. frame-1.

    Frames where the track has no box are skipped, so the polyline connects
    across occlusion gaps. The window never includes the current frame or any
    later one; an empty result is valid (frame 0, or absent throughout).
    """
    if length < 1:
        raise ValueError(f"trail length must be >= 1, got {length}")
    lo = max(0, frame - length)
    points = tuple(
        track.boxes[f].center() for f in range(lo, frame) if f in track.boxes
    )
    return Trail(track_id=track.track_id, frame=frame, points=points)


def trail_window(frame: int, length: int) -> tuple[int, int]:
    """Half-open range of original frames a trail at `frame` covers."""
    return (max(0, frame - length), frame)
