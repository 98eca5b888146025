"""Command-line interface: generate datasets or run the HTTP service.

Exit codes: 0 on success, 2 for usage and validation problems (bad
descriptors, bad parameters), 1 for I/O failures while writing output.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .descriptor import combine, parse_descriptor
from .errors import DescriptorError, ParameterError
from .formats import OutputFormat, write_dataset

DEFAULT_PORT = 8000
PORT_ENV_VAR = "SPATIALGEN_PORT"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spatialgen",
        description="Generate deterministic synthetic spatial datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser(
        "generate",
        help="generate a dataset and write it to a file or stdout",
        description=(
            "Generate one dataset from one or more descriptors.  Each descriptor"
            " is a line like 'uniform,1000,2,0.02,0.02,1,0,0,0,1,0'; several"
            " descriptors form a compound dataset, concatenated in order."
        ),
    )
    gen.add_argument(
        "descriptors",
        nargs="*",
        metavar="DESCRIPTOR",
        help="dataset descriptor text (may be repeated)",
    )
    gen.add_argument(
        "-d",
        "--descriptor",
        action="append",
        default=[],
        metavar="DESCRIPTOR",
        help="additional descriptor (may be repeated)",
    )
    gen.add_argument(
        "--seed", type=int, default=0, help="dataset seed (default 0)"
    )
    gen.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.CSV.value,
        help="output format (default csv)",
    )
    gen.add_argument(
        "-o",
        "--output",
        default=None,
        metavar="PATH",
        help="output file (default: stdout)",
    )

    srv = sub.add_parser(
        "serve",
        help="run the HTTP service",
        description="Serve the dataset API (and optionally a static UI) over HTTP.",
    )
    srv.add_argument(
        "--host", default="127.0.0.1", help="bind address (default 127.0.0.1)"
    )
    srv.add_argument(
        "--port",
        type=int,
        default=None,
        help=f"port (default: ${PORT_ENV_VAR} or {DEFAULT_PORT})",
    )
    srv.add_argument(
        "--ui",
        default=None,
        metavar="DIR",
        help="directory of static UI files to serve at /",
    )
    return parser


def _cmd_generate(args: argparse.Namespace) -> int:
    texts = list(args.descriptors) + list(args.descriptor)
    if not texts:
        print("error: no descriptors given", file=sys.stderr)
        return 2
    try:
        parts = [parse_descriptor(t) for t in texts]
        stream = combine(parts, seed=args.seed)
    except DescriptorError as e:
        at = f" (field {e.position})" if e.position is not None else ""
        print(f"error: {e}{at}", file=sys.stderr)
        return 2
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    fmt = OutputFormat(args.format)
    try:
        if args.output is None or args.output == "-":
            write_dataset(stream, sys.stdout, fmt)
        else:
            with open(args.output, "w", encoding="utf-8", newline="") as sink:
                write_dataset(stream, sink, fmt)
    except OSError as e:
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return 1
    return 0


def resolve_port(explicit: Optional[int]) -> int:
    """Pick the serve port: --port wins, then $SPATIALGEN_PORT, then 8000."""
    if explicit is not None:
        return explicit
    raw = os.environ.get(PORT_ENV_VAR)
    if raw is None:
        return DEFAULT_PORT
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(
            f"{PORT_ENV_VAR} must be an integer, got {raw!r}"
        ) from None


def _cmd_serve(args: argparse.Namespace) -> int:
    # imported here so `generate` works without the service dependencies
    import uvicorn

    from .service import create_app

    try:
        port = resolve_port(args.port)
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    app = create_app(ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=port)
    return 0


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments and run; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse exits 2 on usage errors, 0 on --help
        return int(e.code or 0)
    if args.command == "generate":
        return _cmd_generate(args)
    return _cmd_serve(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
