"""Core data model for videos, tracks and boxes, plus annotation file I/O.

Boxes use a half-open pixel convention: a box (x1, y1, x2, y2) covers pixel
columns x1..x2-1 and rows y1..y2-1, so area = (x2-x1)*(y2-y1) with no off-by-one
ambiguity. Frame indices are 0-based everywhere inside the library; external
formats (MOT CSV, the text-coordinate serializer) convert at the boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np


class TrackParseError(ValueError):
    """Raised when input bytes cannot be decoded as the expected format."""


class TrackValidationError(ValueError):
    """Raised when decoded input violates the track data model."""


@dataclass(frozen=True)
class VideoMeta:
    """Dimensions and length of the source video. fps is metadata only."""

    width: int
    height: int
    total_frames: int
    fps: float | None = None

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise TrackValidationError(
                f"video dimensions must be positive, got {self.width}x{self.height}"
            )
        if self.total_frames < 1:
            raise TrackValidationError(f"total_frames must be >= 1, got {self.total_frames}")
        if self.fps is not None and self.fps <= 0:
            raise TrackValidationError(f"fps must be positive, got {self.fps}")


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned pixel box, half-open on both axes."""

    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self) -> None:
        if self.x1 < 0 or self.y1 < 0:
            raise TrackValidationError(f"negative coordinate in box {self.as_tuple()}")
        if self.x1 >= self.x2 or self.y1 >= self.y2:
            raise TrackValidationError(f"degenerate box {self.as_tuple()}")

    @property
    def width(self) -> int:
        return self.x2 - self.x1

    @property
    def height(self) -> int:
        return self.y2 - self.y1

    @property
    def area(self) -> int:
        return self.width * self.height

    def center(self) -> tuple[float, float]:
        """Sub-pixel box center; exact in binary floats (integer halves)."""
        return ((self.x1 + self.x2) / 2, (self.y1 + self.y2) / 2)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.x1, self.y1, self.x2, self.y2)

    def clip(self, meta: VideoMeta) -> "BoundingBox | None":
        """Intersect with the frame rectangle; None if nothing remains."""
        x1, y1 = max(self.x1, 0), max(self.y1, 0)
        x2, y2 = min(self.x2, meta.width), min(self.y2, meta.height)
        if x1 >= x2 or y1 >= y2:
            return None
        return BoundingBox(x1, y1, x2, y2)


@dataclass(frozen=True)
class Track:
    """One object's identity and per-frame boxes. Absent frame = not visible."""

    track_id: int
    label: str
    boxes: dict[int, BoundingBox]
    confidence: float | None = None

    def __post_init__(self) -> None:
        if self.track_id < 0:
            raise TrackValidationError(f"track_id must be non-negative, got {self.track_id}")
        if self.confidence is not None and not 0.0 <= self.confidence <= 1.0:
            raise TrackValidationError(
                f"track {self.track_id}: confidence {self.confidence} outside [0, 1]"
            )

    @property
    def first_frame(self) -> int:
        """Earliest frame with a box; -1 for an (invalid) empty track."""
        return min(self.boxes, default=-1)


@dataclass(frozen=True)
class TrackSet:
    """All tracks of one video, in first-appearance order (ties by track_id)."""

    meta: VideoMeta
    tracks: tuple[Track, ...]

    def __len__(self) -> int:
        return len(self.tracks)

    def visible_at(self, frame: int) -> list[Track]:
        return [t for t in self.tracks if frame in t.boxes]


@dataclass(eq=False)
class Mask:
    """Binary segmentation mask for one frame; bits is a (height, width) bool grid."""

    width: int
    height: int
    bits: np.ndarray

    def __post_init__(self) -> None:
        self.bits = np.asarray(self.bits, dtype=bool)
        if self.bits.shape != (self.height, self.width):
            raise TrackValidationError(
                f"mask bits shape {self.bits.shape} does not match "
                f"{self.height}x{self.width}"
            )

    @classmethod
    def from_array(cls, bits: np.ndarray) -> "Mask":
        bits = np.asarray(bits, dtype=bool)
        return cls(width=bits.shape[1], height=bits.shape[0], bits=bits)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str
    track_id: int | None = None
    frame: int | None = None

    def __str__(self) -> str:
        where = "" if self.track_id is None else f" [track {self.track_id}"
        if where and self.frame is not None:
            where += f", frame {self.frame}"
        if where:
            where += "]"
        return f"{self.severity}: {self.message}{where}"


def order_tracks(tracks: Iterable[Track]) -> tuple[Track, ...]:
    """Normalize track order: first appearance, ties broken by track_id."""
    return tuple(sorted(tracks, key=lambda t: (t.first_frame, t.track_id)))


def validate_tracks(ts: TrackSet) -> list[Diagnostic]:
    """Check every data-model invariant; an empty result means fully valid.

    Structural violations (duplicate ids, empty tracks, frames outside the
    video, boxes fully outside the frame) are errors. Boxes that merely
    overshoot the right/bottom edges are clippable and only warned about,
    since real tracker output frequently overshoots.
    """
    diags: list[Diagnostic] = []
    seen_ids: set[int] = set()
    for track in ts.tracks:
        if track.track_id in seen_ids:
            diags.append(Diagnostic("error", f"duplicate track_id {track.track_id}", track.track_id))
        seen_ids.add(track.track_id)
        if not track.boxes:
            diags.append(Diagnostic("error", "track has no frame entries", track.track_id))
        for frame, box in sorted(track.boxes.items()):
            if frame < 0 or frame >= ts.meta.total_frames:
                diags.append(
                    Diagnostic(
                        "error",
                        f"frame index {frame} outside [0, {ts.meta.total_frames})",
                        track.track_id,
                        frame,
                    )
                )
            if box.x1 >= ts.meta.width or box.y1 >= ts.meta.height:
                diags.append(
                    Diagnostic(
                        "error",
                        f"box {box.as_tuple()} lies fully outside the {ts.meta.width}x"
                        f"{ts.meta.height} frame",
                        track.track_id,
                        frame,
                    )
                )
            elif box.x2 > ts.meta.width or box.y2 > ts.meta.height:
                diags.append(
                    Diagnostic(
                        "warning",
                        f"clippable out-of-bounds box {box.as_tuple()} in {ts.meta.width}x"
                        f"{ts.meta.height} frame",
                        track.track_id,
                        frame,
                    )
                )
    return diags


def _require(obj: dict, key: str, ctx: str):
    if key not in obj:
        raise TrackValidationError(f"missing field {key!r} in {ctx}")
    return obj[key]


def _int_value(value, what: str, ctx: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TrackValidationError(f"{what} must be an integer in {ctx}, got {value!r}")
    return value


def _box_from_json(values, ctx: str) -> BoundingBox:
    if not isinstance(values, list) or len(values) != 4:
        raise TrackValidationError(f"box must be a 4-element array in {ctx}, got {values!r}")
    coords = [_int_value(v, "box coordinate", ctx) for v in values]
    try:
        return BoundingBox(*coords)
    except TrackValidationError as exc:
        raise TrackValidationError(f"{exc} in {ctx}") from None


def parse_tracks_json(data: bytes, *, strict: bool = True) -> TrackSet:
    """Parse the canonical track JSON schema into a TrackSet.

    With strict=True (the default) any error-severity diagnostic raises
    TrackValidationError; strict=False returns the (possibly invalid)
    TrackSet so callers can report diagnostics themselves.
    """
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise TrackParseError(f"malformed JSON at byte {exc.pos}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise TrackValidationError("top-level JSON value must be an object")

    meta_obj = _require(obj, "meta", "top-level object")
    if not isinstance(meta_obj, dict):
        raise TrackValidationError("'meta' must be an object")
    fps = meta_obj.get("fps")
    if fps is not None and (isinstance(fps, bool) or not isinstance(fps, (int, float))):
        raise TrackValidationError(f"fps must be a number or null, got {fps!r}")
    meta = VideoMeta(
        width=_int_value(_require(meta_obj, "width", "meta"), "width", "meta"),
        height=_int_value(_require(meta_obj, "height", "meta"), "height", "meta"),
        total_frames=_int_value(
            _require(meta_obj, "total_frames", "meta"), "total_frames", "meta"
        ),
        fps=fps,
    )

    tracks_obj = _require(obj, "tracks", "top-level object")
    if not isinstance(tracks_obj, list):
        raise TrackValidationError("'tracks' must be an array")

    tracks: list[Track] = []
    for i, entry in enumerate(tracks_obj):
        ctx = f"tracks[{i}]"
        if not isinstance(entry, dict):
            raise TrackValidationError(f"{ctx} must be an object")
        track_id = _int_value(_require(entry, "id", ctx), "id", ctx)
        ctx = f"track {track_id}"
        label = _require(entry, "label", ctx)
        if not isinstance(label, str):
            raise TrackValidationError(f"label must be a string in {ctx}")
        boxes_obj = _require(entry, "boxes", ctx)
        if not isinstance(boxes_obj, dict):
            raise TrackValidationError(f"'boxes' must be an object in {ctx}")
        boxes: dict[int, BoundingBox] = {}
        for key, values in boxes_obj.items():
            try:
                frame = int(key)
            except ValueError:
                raise TrackValidationError(f"non-integer frame key {key!r} in {ctx}") from None
            boxes[frame] = _box_from_json(values, f"{ctx} frame {frame}")
        confidence = entry.get("confidence")
        if confidence is not None and not isinstance(confidence, (int, float)):
            raise TrackValidationError(f"confidence must be a number in {ctx}")
        try:
            tracks.append(
                Track(track_id=track_id, label=label, boxes=boxes, confidence=confidence)
            )
        except TrackValidationError as exc:
            raise TrackValidationError(f"{exc} in {ctx}") from None

    ts = TrackSet(meta=meta, tracks=order_tracks(tracks))
    if strict:
        errors = [d for d in validate_tracks(ts) if d.severity == "error"]
        if errors:
            raise TrackValidationError(str(errors[0]))
    return ts


def parse_tracks_mot(data: bytes, meta: VideoMeta) -> TrackSet:
    """Parse MOT challenge CSV (frame,id,x,y,w,h,conf,...) into a TrackSet.

    MOT frames are 1-based and become 0-based; (x,y,w,h) becomes a half-open
    box (x, y, x+w, y+h), which makes the conversion lossless for integer
    input. MOT carries no class, so labels default to "object". A track's
    confidence is taken from its earliest row; values outside [0,1] (MOT
    writes -1 for unset) are treated as absent.
    """
    per_id: dict[int, dict[int, BoundingBox]] = {}
    per_id_conf: dict[int, dict[int, float | None]] = {}
    text = data.decode("utf-8", errors="replace")
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) < 7:
            raise TrackParseError(
                f"line {line_no}: expected at least 7 comma-separated fields, got {len(parts)}"
            )

        def intfield(idx: int, what: str) -> int:
            value = parts[idx]
            try:
                return int(value)
            except ValueError:
                pass
            try:
                f = float(value)
            except ValueError:
                raise TrackParseError(f"line {line_no}: non-numeric {what} {value!r}") from None
            if not f.is_integer():
                raise TrackParseError(f"line {line_no}: non-integer {what} {value!r}")
            return int(f)

        frame1 = intfield(0, "frame")
        track_id = intfield(1, "id")
        x, y, w, h = (intfield(i, n) for i, n in ((2, "x"), (3, "y"), (4, "w"), (5, "h")))
        try:
            conf: float | None = float(parts[6])
        except ValueError:
            raise TrackParseError(f"line {line_no}: non-numeric conf {parts[6]!r}") from None
        if conf is not None and not 0.0 <= conf <= 1.0:
            conf = None

        if frame1 < 1 or frame1 > meta.total_frames:
            raise TrackValidationError(
                f"line {line_no}: frame {frame1} outside [1, {meta.total_frames}]"
            )
        frame = frame1 - 1
        try:
            box = BoundingBox(x, y, x + w, y + h)
        except TrackValidationError as exc:
            raise TrackValidationError(f"line {line_no}: {exc} for track {track_id}") from None
        frames = per_id.setdefault(track_id, {})
        if frame in frames:
            raise TrackValidationError(
                f"line {line_no}: duplicate entry for track {track_id} frame {frame1}"
            )
        frames[frame] = box
        per_id_conf.setdefault(track_id, {})[frame] = conf

    tracks = []
    for track_id, boxes in per_id.items():
        confs = per_id_conf[track_id]
        tracks.append(
            Track(
                track_id=track_id,
                label="object",
                boxes=boxes,
                confidence=confs[min(confs)],
            )
        )
    return TrackSet(meta=meta, tracks=order_tracks(tracks))


def tracks_to_json(ts: TrackSet) -> bytes:
    """Serialize to the canonical JSON form (a fixed point of parse + serialize)."""
    obj = {
        "meta": {
            "width": ts.meta.width,
            "height": ts.meta.height,
            "total_frames": ts.meta.total_frames,
            "fps": ts.meta.fps,
        },
        "tracks": [
            {
                "id": t.track_id,
                "label": t.label,
                "confidence": t.confidence,
                "boxes": {str(f): list(t.boxes[f].as_tuple()) for f in sorted(t.boxes)},
            }
            for t in ts.tracks
        ],
    }
    return (json.dumps(obj, indent=2) + "\n").encode("utf-8")
