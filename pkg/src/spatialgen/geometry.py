"""Geometry values flowing through the generator pipeline.

Every generated geometry is an axis-aligned box.  Point datasets are
boxes with zero extents; the stream-level ``point_form`` flag tells
serializers to write them as points instead of degenerate rectangles.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple


class Point2(NamedTuple):
    """A 2-D coordinate pair."""

    x: float
    y: float


class BoxGeom(NamedTuple):
    """Axis-aligned rectangle: lower-left corner plus non-negative extents."""

    x: float
    y: float
    w: float
    h: float

    @property
    def xmax(self) -> float:
        return self.x + self.w

    @property
    def ymax(self) -> float:
        return self.y + self.h

    @property
    def center(self) -> Point2:
        return Point2(self.x + self.w / 2.0, self.y + self.h / 2.0)

    def is_point(self) -> bool:
        return self.w == 0.0 and self.h == 0.0


class GeometryStream:
    """Ordered, lazily produced sequence of boxes with dataset metadata.

    Single consumer: iterate it once.  ``count`` is the exact number of
    geometries the stream will yield (known up front, so writers can
    stream without buffering).  ``point_form`` is True when every box has
    zero extents by construction and the dataset should serialize as
    points.
    """

    def __init__(self, boxes: Iterable[BoxGeom], count: int, point_form: bool = False):
        self._boxes = iter(boxes)
        self.count = count
        self.point_form = point_form

    def __iter__(self) -> Iterator[BoxGeom]:
        return self._boxes
