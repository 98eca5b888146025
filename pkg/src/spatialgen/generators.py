"""The six dataset distributions and the box-emission driver.

Five distributions (uniform, diagonal, gaussian, sierpinski, bit) are
point processes: each geometry starts from a generated point, points
falling outside the closed unit square are rejected and regenerated, and
every accepted point becomes a box of uniformly drawn width and height
centered on it.  The sixth (parcel) tiles the unit square by recursive
binary splitting and emits the tiles directly.

Draw order is part of the output contract.  Point distributions consume,
per accepted geometry: the point's own draws (x first, then y), then one
draw for width, then one for height.  A rejected point consumes only its
coordinate draws.  Parcel consumes one draw per split, then two dither
draws per box, in queue order.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, Optional

from .errors import ParameterError
from .geometry import BoxGeom, GeometryStream, Point2
from .rng import RngState

MAX_DIGITS = 52  # beyond this, bit fractions stop being exactly representable

_SQRT2 = math.sqrt(2.0)

# chaos-game anchor vertices of the unit-edge triangle
_TRI_V0 = Point2(0.0, 0.0)
_TRI_V1 = Point2(1.0, 0.0)
_TRI_V2 = Point2(0.5, math.sqrt(3.0) / 2.0)

# how many boxes the uniform fast path materializes per draw block
_UNIFORM_BATCH = 2048


class Distribution(IntEnum):
    """Distribution identifiers; values double as descriptor ids."""

    UNIFORM = 1
    DIAGONAL = 2
    GAUSSIAN = 3
    SIERPINSKI = 4
    BIT = 5
    PARCEL = 6


def _check_range(label: str, value: float, lo: float, hi: float) -> None:
    if not lo <= value <= hi:
        raise ParameterError(
            f"{label} must be in [{_fmt(lo)}, {_fmt(hi)}], got {value}", field=label
        )


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(v)


@dataclass(frozen=True)
class GenParams:
    """Validated generation parameters.  Ranges are enforced on construction.

    Every distribution reads ``card`` and ``dim``; the rest are
    distribution-specific and ignored elsewhere (``max_width`` and
    ``max_height`` by the point distributions, ``perc``/``buf`` by
    diagonal, ``bit_prob``/``digits`` by bit, ``split_range``/``dither``
    by parcel).
    """

    card: int
    dim: int = 2
    max_width: float = 0.0
    max_height: float = 0.0
    perc: float = 0.0
    buf: float = 0.0
    bit_prob: float = 0.5
    digits: int = 10
    split_range: float = 0.25
    dither: float = 0.0

    def __post_init__(self):
        if not isinstance(self.card, int) or self.card < 1:
            raise ParameterError(
                f"card must be a positive integer, got {self.card!r}", field="card"
            )
        if self.dim != 2:
            raise ParameterError(
                f"dim must be 2 (only planar datasets are supported), got {self.dim!r}",
                field="dim",
            )
        _check_range("maxW", self.max_width, 0.0, 1.0)
        _check_range("maxH", self.max_height, 0.0, 1.0)
        _check_range("perc", self.perc, 0.0, 1.0)
        _check_range("buf", self.buf, 0.0, 1.0)
        _check_range("p", self.bit_prob, 0.0, 1.0)
        if not isinstance(self.digits, int) or not 1 <= self.digits <= MAX_DIGITS:
            raise ParameterError(
                f"digits must be an integer in [1, {MAX_DIGITS}], got {self.digits!r}",
                field="digits",
            )
        _check_range("r", self.split_range, 0.0, 0.5)
        _check_range("dither", self.dither, 0.0, 1.0)


# --- point generation --------------------------------------------------


def gen_point_uniform(rng: RngState) -> Point2:
    """Point uniform over the unit square; two draws (x, then y)."""
    return Point2(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0))


def gen_point_diagonal(rng: RngState, perc: float, buf: float) -> Point2:
    """Point on or near the main diagonal.

    With probability ``perc`` the point lies exactly on the diagonal
    (x == y, one shared uniform draw).  Otherwise an anchor c is drawn on
    the diagonal and displaced perpendicular to it by a centered gaussian
    offset with sigma = buf/5, putting about 99.98% of the off-diagonal
    mass inside a band of total width ``buf``.
    """
    _check_range("buf", buf, 0.0, 1.0)
    if rng.bernoulli(perc) == 1:
        v = rng.uniform(0.0, 1.0)
        return Point2(v, v)
    c = rng.uniform(0.0, 1.0)
    d = rng.normal(0.0, buf / 5.0)
    off = d / _SQRT2
    return Point2(c + off, c - off)


def gen_point_gaussian(rng: RngState) -> Point2:
    """Point with independent N(0.5, 0.1) coordinates; four draws."""
    return Point2(rng.normal(0.5, 0.1), rng.normal(0.5, 0.1))


def gen_point_sierpinski(rng: RngState, prev: Optional[Point2], i: int) -> Point2:
    """Next chaos-game point of the Sierpinski triangle.

    The first three points (i = 0, 1, 2) are the triangle's vertices.
    Afterwards each point is the midpoint between ``prev`` and a vertex
    picked by a five-sided dice roll: 1-2 the origin vertex, 3-4 the
    right vertex, 5 the apex (probabilities 2/5, 2/5, 1/5).
    """
    if i == 0:
        return _TRI_V0
    if i == 1:
        return _TRI_V1
    if i == 2:
        return _TRI_V2
    k = rng.dice5()
    v = _TRI_V0 if k <= 2 else (_TRI_V1 if k <= 4 else _TRI_V2)
    return Point2((prev.x + v.x) / 2.0, (prev.y + v.y) / 2.0)


def gen_bit_coordinate(rng: RngState, prob: float, digits: int) -> float:
    """One coordinate with independently set binary fraction digits.

    Bit i (i = 1..digits) is set with probability ``prob`` and
    contributes 2**-i.  Consumes exactly ``digits`` draws.  The result
    is an exact dyadic fraction: scaling by 2**digits yields an integer.
    """
    if not isinstance(digits, int) or not 1 <= digits <= MAX_DIGITS:
        raise ParameterError(
            f"digits must be an integer in [1, {MAX_DIGITS}], got {digits!r}", field="digits"
        )
    value = 0.0
    weight = 0.5
    for _ in range(digits):
        if rng.bernoulli(prob) == 1:
            value += weight
        weight *= 0.5
    return value


def gen_point_bit(rng: RngState, prob: float, digits: int) -> Point2:
    """Point with independent bit-fraction coordinates (x first)."""
    x = gen_bit_coordinate(rng, prob, digits)
    y = gen_bit_coordinate(rng, prob, digits)
    return Point2(x, y)


# --- box-emission driver ------------------------------------------------


def _inside_unit_square(p: Point2) -> bool:
    return 0.0 <= p.x <= 1.0 and 0.0 <= p.y <= 1.0


def _drive_uniform(params: GenParams, rng: RngState) -> Iterator[BoxGeom]:
    # Uniform points always land inside the unit square, so the
    # rejection loop degenerates and draws can be taken four at a time
    # per box (x, y, w, h) in blocks.  Values and stream position match
    # the scalar path exactly.
    maxw, maxh = params.max_width, params.max_height
    remaining = params.card
    while remaining > 0:
        k = min(remaining, _UNIFORM_BATCH)
        u = rng.take_units(4 * k)
        for j in range(0, 4 * k, 4):
            w = maxw * u[j + 2]
            h = maxh * u[j + 3]
            yield BoxGeom(u[j] - w / 2.0, u[j + 1] - h / 2.0, w, h)
        remaining -= k


def _drive_points(
    params: GenParams, distribution: Distribution, rng: RngState
) -> Iterator[BoxGeom]:
    if distribution is Distribution.UNIFORM:
        yield from _drive_uniform(params, rng)
        return
    card = params.card
    maxw, maxh = params.max_width, params.max_height
    prev: Optional[Point2] = None
    i = 0
    while i < card:
        if distribution is Distribution.DIAGONAL:
            p = gen_point_diagonal(rng, params.perc, params.buf)
        elif distribution is Distribution.GAUSSIAN:
            p = gen_point_gaussian(rng)
        elif distribution is Distribution.SIERPINSKI:
            p = gen_point_sierpinski(rng, prev, i)
        else:
            p = gen_point_bit(rng, params.bit_prob, params.digits)
        if not _inside_unit_square(p):
            continue  # rejected points consume only their own draws
        prev = p
        w = rng.uniform(0.0, maxw)
        h = rng.uniform(0.0, maxh)
        yield BoxGeom(p.x - w / 2.0, p.y - h / 2.0, w, h)
        i += 1


def generate_point_dataset(
    params: GenParams, distribution: Distribution, rng: RngState
) -> GeometryStream:
    """Stream ``params.card`` boxes of a point distribution.

    The stream is lazy: geometries are produced as consumed, so
    cardinality does not bound memory.  ``point_form`` is set when both
    extents are pinned to zero.
    """
    if distribution is Distribution.PARCEL:
        raise ParameterError("parcel is not a point distribution; use generate_parcel")
    point_form = params.max_width == 0.0 and params.max_height == 0.0
    boxes = _drive_points(params, distribution, rng)
    return GeometryStream(boxes, count=params.card, point_form=point_form)


def generate_parcel(
    card: int, split_range: float, dither: float, rng: RngState
) -> GeometryStream:
    """Tile the unit square into ``card`` boxes by recursive splitting.

    Starting from the unit square, the front of a FIFO queue is split
    along its longer axis (ties split the height) at a fraction drawn
    from U(split_range, 1 - split_range) until ``card`` tiles exist; one
    draw per split.  Each tile is then shrunk by two dither draws, width
    and height each scaled by (1 - U(0, dither)) with the lower-left
    corner kept, so tiles never overlap but can open gaps.  The dither
    draws are consumed even when ``dither`` is zero, keeping the stream
    position independent of the dither setting.
    """
    if not isinstance(card, int) or card < 1:
        raise ParameterError(f"card must be a positive integer, got {card!r}", field="card")
    _check_range("r", split_range, 0.0, 0.5)
    _check_range("dither", dither, 0.0, 1.0)

    tiles: deque[BoxGeom] = deque((BoxGeom(0.0, 0.0, 1.0, 1.0),))
    while len(tiles) < card:
        b = tiles.popleft()
        frac = rng.uniform(split_range, 1.0 - split_range)
        if b.w > b.h:
            cut = b.w * frac
            tiles.append(BoxGeom(b.x, b.y, cut, b.h))
            tiles.append(BoxGeom(b.x + cut, b.y, b.w - cut, b.h))
        else:
            cut = b.h * frac
            tiles.append(BoxGeom(b.x, b.y, b.w, cut))
            tiles.append(BoxGeom(b.x, b.y + cut, b.w, b.h - cut))

    def dithered() -> Iterator[BoxGeom]:
        for t in tiles:
            w = t.w * (1.0 - rng.uniform(0.0, dither))
            h = t.h * (1.0 - rng.uniform(0.0, dither))
            yield BoxGeom(t.x, t.y, w, h)

    return GeometryStream(dithered(), count=card, point_form=False)
