"""Streaming serializers for the three output formats.

Output is byte-stable: fixed headers, "\\n" line endings, and canonical
number rendering, so one (descriptor, seed) pair always produces the
same file.  Writers consume their stream in bounded chunks; memory does
not grow with dataset size.

Number canon: the shortest decimal that round-trips to the same double,
with integral values written without a decimal point ("1", not "1.0").
"""

from __future__ import annotations

from enum import Enum
from typing import IO, Iterable, Iterator

from .geometry import BoxGeom, GeometryStream

_CHUNK_ROWS = 10_000


class OutputFormat(str, Enum):
    CSV = "csv"
    WKT = "wkt"
    GEOJSON = "geojson"

    @property
    def media_type(self) -> str:
        if self is OutputFormat.CSV:
            return "text/csv"
        if self is OutputFormat.WKT:
            return "text/plain"
        return "application/geo+json"

    @property
    def file_extension(self) -> str:
        return self.value


def format_number(value: float) -> str:
    """Canonical decimal rendering of a coordinate or parameter."""
    try:
        integral = value.is_integer()
    except AttributeError:  # plain int, common in hand-built geometries
        return str(value)
    if integral and abs(value) < 1e16:
        return str(int(value))  # also normalizes -0.0 to "0"
    return repr(value)


class _Counted:
    """Iterator pass-through that counts the items it yields."""

    def __init__(self, items: Iterable):
        self._items = iter(items)
        self.count = 0

    def __iter__(self):
        return self

    def __next__(self):
        item = next(self._items)
        self.count += 1
        return item


# --- CSV ----------------------------------------------------------------


def iter_csv(boxes: Iterable[BoxGeom], point_form: bool = False) -> Iterator[str]:
    """CSV text in chunks: header row, then one row per geometry.

    Box schema is id,xmin,ymin,xmax,ymax; point-form datasets use id,x,y.
    ids are sequential from 1 in stream order.
    """
    rows: list[str] = []
    i = 0
    if point_form:
        yield "id,x,y\n"
        for b in boxes:
            i += 1
            rows.append(f"{i},{format_number(b.x)},{format_number(b.y)}\n")
            if len(rows) >= _CHUNK_ROWS:
                yield "".join(rows)
                rows.clear()
    else:
        yield "id,xmin,ymin,xmax,ymax\n"
        for b in boxes:
            i += 1
            rows.append(
                f"{i},{format_number(b.x)},{format_number(b.y)},"
                f"{format_number(b.x + b.w)},{format_number(b.y + b.h)}\n"
            )
            if len(rows) >= _CHUNK_ROWS:
                yield "".join(rows)
                rows.clear()
    if rows:
        yield "".join(rows)


# --- WKT ----------------------------------------------------------------


def wkt_geometry(b: BoxGeom) -> str:
    """WKT for one geometry: POINT for zero extents, else a closed
    counter-clockwise POLYGON ring from the lower-left corner."""
    if b.w == 0.0 and b.h == 0.0:
        return f"POINT ({format_number(b.x)} {format_number(b.y)})"
    x1, y1 = format_number(b.x), format_number(b.y)
    x2, y2 = format_number(b.x + b.w), format_number(b.y + b.h)
    return (
        f"POLYGON (({x1} {y1}, {x2} {y1}, {x2} {y2}, {x1} {y2}, {x1} {y1}))"
    )


def iter_wkt(boxes: Iterable[BoxGeom]) -> Iterator[str]:
    """WKT text in chunks, one geometry per line, no header."""
    rows: list[str] = []
    for b in boxes:
        rows.append(wkt_geometry(b) + "\n")
        if len(rows) >= _CHUNK_ROWS:
            yield "".join(rows)
            rows.clear()
    if rows:
        yield "".join(rows)


# --- GeoJSON ------------------------------------------------------------


def geojson_feature(b: BoxGeom, feature_id: int) -> str:
    """One compact GeoJSON Feature: Point for zero extents, else the
    box's closed counter-clockwise Polygon ring."""
    if b.w == 0.0 and b.h == 0.0:
        geometry = (
            f'{{"type":"Point","coordinates":'
            f"[{format_number(b.x)},{format_number(b.y)}]}}"
        )
    else:
        x1, y1 = format_number(b.x), format_number(b.y)
        x2, y2 = format_number(b.x + b.w), format_number(b.y + b.h)
        geometry = (
            f'{{"type":"Polygon","coordinates":[[[{x1},{y1}],[{x2},{y1}],'
            f"[{x2},{y2}],[{x1},{y2}],[{x1},{y1}]]]}}"
        )
    return (
        f'{{"type":"Feature","properties":{{"id":{feature_id}}},"geometry":{geometry}}}'
    )


def iter_geojson(boxes: Iterable[BoxGeom]) -> Iterator[str]:
    """A FeatureCollection in chunks; features are numbered from 1."""
    yield '{"type":"FeatureCollection","features":['
    parts: list[str] = []
    i = 0
    for b in boxes:
        i += 1
        feature = geojson_feature(b, i)
        parts.append(feature if i == 1 else "," + feature)
        if len(parts) >= _CHUNK_ROWS:
            yield "".join(parts)
            parts.clear()
    if parts:
        yield "".join(parts)
    yield "]}\n"


# --- dispatch -----------------------------------------------------------


def iter_dataset(stream: GeometryStream, fmt: OutputFormat) -> Iterator[str]:
    """Serialized text chunks for ``stream`` in the requested format."""
    if fmt is OutputFormat.CSV:
        return iter_csv(stream, stream.point_form)
    if fmt is OutputFormat.WKT:
        return iter_wkt(stream)
    return iter_geojson(stream)


def _write(chunks: Iterator[str], sink: IO[str]) -> None:
    for chunk in chunks:
        sink.write(chunk)


def write_csv(stream, sink: IO[str]) -> int:
    """Write CSV to ``sink``; returns the number of geometries written."""
    counted = _Counted(stream)
    _write(iter_csv(counted, getattr(stream, "point_form", False)), sink)
    return counted.count


def write_wkt(stream, sink: IO[str]) -> int:
    """Write WKT lines to ``sink``; returns the geometry count."""
    counted = _Counted(stream)
    _write(iter_wkt(counted), sink)
    return counted.count


def write_geojson(stream, sink: IO[str]) -> int:
    """Write a FeatureCollection to ``sink``; returns the feature count."""
    counted = _Counted(stream)
    _write(iter_geojson(counted), sink)
    return counted.count


def write_dataset(stream: GeometryStream, sink: IO[str], fmt: OutputFormat) -> int:
    """Write ``stream`` to ``sink`` in ``fmt``; returns the geometry count."""
    if fmt is OutputFormat.CSV:
        return write_csv(stream, sink)
    if fmt is OutputFormat.WKT:
        return write_wkt(stream, sink)
    return write_geojson(stream, sink)
