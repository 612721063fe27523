"""Non-neural post-processing for detect-then-track pipelines.

Boundary semantics: confidence filtering keeps scores >= threshold, while
NMS and duplicate suppression discard strictly above the IoU threshold.
NMS suppresses only within the same class label; cross-class overlap is
legitimate and kept.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trackmodel import BoundingBox, Mask, TrackSet


@dataclass(frozen=True)
class Detection:
    box: BoundingBox
    label: str
    confidence: float
    frame: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")


@dataclass(frozen=True)
class PostprocessConfig:
    confidence_threshold: float = 0.3
    nms_iou: float = 0.5
    dedup_iou: float = 0.5

    def __post_init__(self) -> None:
        for name in ("confidence_threshold", "nms_iou", "dedup_iou"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} {value} outside [0, 1]")


def iou(a: BoundingBox, b: BoundingBox) -> float:
    """Intersection over union under the half-open convention; 0 when disjoint."""
    iw = min(a.x2, b.x2) - max(a.x1, b.x1)
    ih = min(a.y2, b.y2) - max(a.y1, b.y1)
    if iw <= 0 or ih <= 0:
        return 0.0
    inter = iw * ih
    return inter / (a.area + b.area - inter)


def filter_confidence(dets: list[Detection], threshold: float) -> list[Detection]:
    """Keep detections with confidence >= threshold, order preserved."""
    return [d for d in dets if d.confidence >= threshold]


def nms(dets: list[Detection], threshold: float) -> list[Detection]:
    """Greedy class-wise non-maximum suppression.

    Candidates are visited by descending confidence, ties broken by input
    position, then smaller x1, then smaller y1, so the result is fully
    deterministic. A candidate is kept iff its IoU with every already-kept
    detection of the same label is <= threshold; output keeps visit order.
    """
    order = sorted(
        range(len(dets)),
        key=lambda i: (-dets[i].confidence, i, dets[i].box.x1, dets[i].box.y1),
    )
    kept: list[Detection] = []
    for i in order:
        cand = dets[i]
        if all(
            iou(cand.box, k.box) <= threshold for k in kept if k.label == cand.label
        ):
            kept.append(cand)
    return kept


def box_from_mask(m: Mask) -> BoundingBox:
    """Tightest axis-aligned box enclosing all set mask bits.

    An empty mask raises ValueError("empty mask"): it signals a vanished or
    fully occluded object, and the caller records the frame as absent.
    """
    ys, xs = np.nonzero(m.bits)
    if ys.size == 0:
        raise ValueError("empty mask")
    return BoundingBox(int(xs.min()), int(ys.min()), int(xs.max()) + 1, int(ys.max()) + 1)


def merge_new_detections(
    ts: TrackSet, frame: int, dets: list[Detection], cfg: PostprocessConfig
) -> list[Detection]:
    """Return the detections that should seed new tracks at this frame.

    A detection is a duplicate (and dropped) iff its IoU with some existing
    track's box at this frame exceeds cfg.dedup_iou. Tracks not visible at
    the frame are skipped. ts is not mutated.
    """
    existing = [t.boxes[frame] for t in ts.tracks if frame in t.boxes]
    return [
        d for d in dets if all(iou(d.box, b) <= cfg.dedup_iou for b in existing)
    ]
