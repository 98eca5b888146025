"""Deterministic generator for synthetic 2-D spatial datasets.

Six seeded distributions (uniform, diagonal, gaussian, sierpinski, bit,
parcel) produce boxes or points in the unit square, optionally pushed
through an affine transform and combined into compound datasets.  Equal
descriptors and seeds yield byte-identical CSV, WKT or GeoJSON output on
any platform.
"""

from .descriptor import (
    DatasetDescriptor,
    combine,
    format_descriptor,
    generate_dataset,
    parse_descriptor,
)
from .errors import DescriptorError, ParameterError
from .formats import (
    OutputFormat,
    format_number,
    write_csv,
    write_dataset,
    write_geojson,
    write_wkt,
)
from .generators import (
    Distribution,
    GenParams,
    gen_bit_coordinate,
    gen_point_bit,
    gen_point_diagonal,
    gen_point_gaussian,
    gen_point_sierpinski,
    gen_point_uniform,
    generate_parcel,
    generate_point_dataset,
)
from .geometry import BoxGeom, GeometryStream, Point2
from .rng import RngState, derive_seed
from .transform import IDENTITY, AffineMatrix2D, transform_stream

__version__ = "0.1.0"

__all__ = [
    "AffineMatrix2D",
    "BoxGeom",
    "DatasetDescriptor",
    "DescriptorError",
    "Distribution",
    "GenParams",
    "GeometryStream",
    "IDENTITY",
    "OutputFormat",
    "ParameterError",
    "Point2",
    "RngState",
    "__version__",
    "combine",
    "derive_seed",
    "format_descriptor",
    "format_number",
    "gen_bit_coordinate",
    "gen_point_bit",
    "gen_point_diagonal",
    "gen_point_gaussian",
    "gen_point_sierpinski",
    "gen_point_uniform",
    "generate_dataset",
    "generate_parcel",
    "generate_point_dataset",
    "parse_descriptor",
    "transform_stream",
    "write_csv",
    "write_dataset",
    "write_geojson",
    "write_wkt",
]
