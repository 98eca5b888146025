"""HTTP service: streamed dataset downloads, bounded previews, permalinks.

All endpoints are stateless; a permalink token encodes its whole payload
(canonical descriptors plus seed) with a short integrity digest, so
tokens survive service restarts and tampering is detected without any
storage.

Validation failures return 400 with a JSON body {"code", "message",
"position"?}; ``position`` is the 1-based descriptor field index when
the problem is tied to one field.
"""

from __future__ import annotations

import base64
import binascii
import hashlib
import itertools
import json
import os
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response, StreamingResponse
from pydantic import BaseModel

from .descriptor import combine, format_descriptor, parse_descriptor
from .errors import DescriptorError, ParameterError
from .formats import OutputFormat, geojson_feature, iter_dataset
from .rng import check_seed

PREVIEW_CAP = 10_000


class PermalinkRequest(BaseModel):
    descriptors: list[str]
    seed: int = 0


def encode_permalink(descriptors: list[str], seed: int) -> str:
    """Self-contained permalink token for a descriptor set and seed.

    base64url(compact JSON payload, padding stripped) + "." + the first
    8 hex chars of the payload's SHA-256.  The digest only guards
    against corruption and tampering; there is no secret involved.
    """
    payload = json.dumps(
        {"descriptors": list(descriptors), "seed": seed},
        separators=(",", ":"),
        sort_keys=True,
    ).encode("utf-8")
    body = base64.urlsafe_b64encode(payload).decode("ascii").rstrip("=")
    return body + "." + hashlib.sha256(payload).hexdigest()[:8]


def decode_permalink(token: str) -> tuple[list[str], int]:
    """Decode and fully validate a permalink token.

    Raises DescriptorError for anything that is not a well-formed,
    untampered token whose descriptors still parse.
    """
    body, dot, digest = token.rpartition(".")
    if not dot or not body:
        raise DescriptorError("malformed permalink token")
    try:
        payload = base64.urlsafe_b64decode(body + "=" * (-len(body) % 4))
    except (ValueError, binascii.Error):
        raise DescriptorError("malformed permalink token") from None
    if hashlib.sha256(payload).hexdigest()[:8] != digest:
        raise DescriptorError("permalink token failed its integrity check")
    try:
        obj = json.loads(payload)
    except ValueError:
        raise DescriptorError("malformed permalink payload") from None
    if (
        not isinstance(obj, dict)
        or not isinstance(obj.get("descriptors"), list)
        or not all(isinstance(t, str) for t in obj["descriptors"])
        or not isinstance(obj.get("seed"), int)
        or isinstance(obj.get("seed"), bool)
    ):
        raise DescriptorError("malformed permalink payload")
    descriptors: list[str] = obj["descriptors"]
    if not descriptors:
        raise DescriptorError("permalink contains no descriptors")
    for text in descriptors:
        parse_descriptor(text)
    check_seed(obj["seed"])
    return descriptors, obj["seed"]


def _error_body(e: ParameterError) -> dict:
    body = {"code": e.code, "message": str(e)}
    position = getattr(e, "position", None)
    if position is not None:
        body["position"] = position
    return body


def create_app(ui_dir: Optional[str] = None) -> FastAPI:
    """Build the service application.

    ``ui_dir`` optionally names a directory of static files (a built web
    UI) served at the root path; API routes always take precedence.
    """
    app = FastAPI(title="spatialgen", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ParameterError)
    async def parameter_error_handler(request: Request, e: ParameterError):
        return JSONResponse(status_code=400, content=_error_body(e))

    @app.exception_handler(RequestValidationError)
    async def request_validation_handler(request: Request, e: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "bad-request", "message": str(e.errors()[:1])},
        )

    def _parse_all(descriptor: Optional[list[str]]):
        if not descriptor:
            raise DescriptorError("missing required parameter: descriptor")
        return [parse_descriptor(text) for text in descriptor]

    @app.get("/api/generate")
    def generate(
        descriptor: Optional[list[str]] = Query(default=None),
        seed: int = 0,
        format: str = "csv",
    ):
        try:
            fmt = OutputFormat(format)
        except ValueError:
            raise ParameterError(
                f"format must be one of csv, wkt, geojson; got {format!r}"
            ) from None
        parts = _parse_all(descriptor)
        stream = combine(parts, seed=seed)
        chunks = iter_dataset(stream, fmt)
        return StreamingResponse(
            chunks,
            media_type=fmt.media_type,
            headers={
                "Content-Disposition": f'attachment; filename="dataset.{fmt.file_extension}"'
            },
        )

    @app.get("/api/preview")
    def preview(
        descriptor: Optional[list[str]] = Query(default=None),
        seed: int = 0,
        limit: int = 1000,
    ):
        if limit < 0:
            raise ParameterError(f"limit must be non-negative, got {limit}")
        effective = min(limit, PREVIEW_CAP)
        parts = _parse_all(descriptor)
        stream = combine(parts, seed=seed)
        total = stream.count
        features = [
            geojson_feature(b, i + 1)
            for i, b in enumerate(itertools.islice(iter(stream), effective))
        ]
        metadata = (
            f'{{"total":{total},"returned":{len(features)},'
            f'"limit":{effective},"clamped":{"true" if limit > PREVIEW_CAP else "false"}}}'
        )
        body = (
            f'{{"type":"FeatureCollection","metadata":{metadata},'
            f'"features":[{",".join(features)}]}}'
        )
        return Response(content=body, media_type="application/geo+json")

    @app.post("/api/permalink")
    def make_permalink(payload: PermalinkRequest):
        if not payload.descriptors:
            raise DescriptorError("permalink needs at least one descriptor")
        check_seed(payload.seed)
        canonical = [format_descriptor(parse_descriptor(t)) for t in payload.descriptors]
        return {"token": encode_permalink(canonical, payload.seed)}

    @app.get("/api/permalink/{token}")
    def resolve_permalink(token: str):
        descriptors, seed = decode_permalink(token)
        return {"descriptors": descriptors, "seed": seed}

    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


app = create_app()
