"""Affine post-transformation of generated geometries.

A transform is the top two rows (a1..a6) of a homogeneous 3x3 matrix:

    x' = a1*x + a2*y + a3
    y' = a4*x + a5*y + a6

Output boxes stay axis-aligned: a box is transformed by mapping two
opposite corners and re-normalizing, so under rotation or reflection the
result is the axis-aligned box spanned by the mapped corners, never a
tilted rectangle.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .geometry import BoxGeom, GeometryStream, Point2


@dataclass(frozen=True)
class AffineMatrix2D:
    """Row-major affine coefficients; defaults form the identity."""

    a1: float = 1.0
    a2: float = 0.0
    a3: float = 0.0
    a4: float = 0.0
    a5: float = 1.0
    a6: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))

    @classmethod
    def identity(cls) -> "AffineMatrix2D":
        return cls()

    def is_identity(self) -> bool:
        return self.as_tuple() == (1.0, 0.0, 0.0, 0.0, 1.0, 0.0)

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.a1, self.a2, self.a3, self.a4, self.a5, self.a6)

    def apply_point(self, p: Point2) -> Point2:
        return Point2(
            self.a1 * p.x + self.a2 * p.y + self.a3,
            self.a4 * p.x + self.a5 * p.y + self.a6,
        )

    def apply_box(self, b: BoxGeom) -> BoxGeom:
        # The identity must pass geometries through bit-identical, so it
        # short-circuits: round-tripping corners through x + w would
        # perturb extents by an ulp.
        if self.is_identity():
            return b
        x1, y1 = self.apply_point(Point2(b.x, b.y))
        x2, y2 = self.apply_point(Point2(b.x + b.w, b.y + b.h))
        # corner order can flip under reflection; re-normalize
        return BoxGeom(min(x1, x2), min(y1, y2), abs(x2 - x1), abs(y2 - y1))


IDENTITY = AffineMatrix2D()


def transform_stream(matrix: AffineMatrix2D, stream: GeometryStream) -> GeometryStream:
    """Apply ``matrix`` to every box of ``stream``, preserving metadata."""
    if matrix.is_identity():
        return stream
    boxes = (matrix.apply_box(b) for b in stream)
    return GeometryStream(boxes, count=stream.count, point_form=stream.point_form)
